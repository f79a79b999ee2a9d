//! The `.iwdb` class database: a versioned JSON document holding the class
//! records of one size and weight, validated on load.
//!
//! Layout:
//!
//! ```text
//! { "header":  { "format": "iwdb", "version": 1, "size", "weight", "entry_cap",
//!                "tool_version", "complete": { "primitive", "certified", "symmetric" } },
//!   "classes": [ { "name", "representative": [[..]], "aut": { "rows", "cols",
//!                  "generators": [ { "left": { "perm", "signs" }, "right": .. } ],
//!                  "order": "<decimal>" }, "cardinality": "<decimal>", "primitive",
//!                  "symmetric_class", "th_partner" } ],
//!   "symmetric": [ { "parent", "taut_order", "transpose_witness", "symmetric_reps",
//!                    "symmetric_saut", "antisymmetric_reps", "antisymmetric_saut" } ] }
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::counting::class_cardinality;
use crate::error::{Error, Result};
use crate::matrix::gram_check;
use crate::structure::{is_primitive, ClassRecord};
use crate::symmetry::{Sign, SymClassRecord};

pub const FORMAT_NAME: &str = "iwdb";
pub const FORMAT_VERSION: u32 = 1;
pub const EXTENSION: &str = "iwdb";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Completeness {
    /// Every primitive class of this size is present.
    pub primitive: bool,
    /// Every group passed the certification test.
    pub certified: bool,
    /// Symmetric data is present for every class.
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DbHeader {
    pub format: String,
    pub version: u32,
    pub size: usize,
    pub weight: u64,
    pub entry_cap: Option<u64>,
    pub tool_version: String,
    pub complete: Completeness,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassDatabase {
    pub header: DbHeader,
    pub classes: Vec<ClassRecord>,
    #[serde(default)]
    pub symmetric: Vec<SymClassRecord>,
}

impl ClassDatabase {
    pub fn new(size: usize, weight: u64, entry_cap: Option<u64>) -> Self {
        ClassDatabase {
            header: DbHeader {
                format: FORMAT_NAME.into(),
                version: FORMAT_VERSION,
                size,
                weight,
                entry_cap,
                tool_version: env!("CARGO_PKG_VERSION").into(),
                complete: Completeness::default(),
            },
            classes: Vec::new(),
            symmetric: Vec::new(),
        }
    }

    /// Conventional file name, e.g. `iw6_25.iwdb`.
    pub fn file_name(size: usize, weight: u64) -> String {
        format!("iw{size}_{weight}.{EXTENSION}")
    }

    pub fn path_in(dir: &Path, size: usize, weight: u64) -> PathBuf {
        dir.join(Self::file_name(size, weight))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s)?;
        let header = v.get("header").ok_or_else(|| Error::Schema("missing header".into()))?;
        let format = header.get("format").and_then(|f| f.as_str());
        if format != Some(FORMAT_NAME) {
            return Err(Error::Schema(format!("format {format:?} is not {FORMAT_NAME:?}")));
        }
        let version = header.get("version").and_then(|f| f.as_u64());
        if version != Some(FORMAT_VERSION as u64) {
            return Err(Error::Schema(format!("version {version:?} is not {FORMAT_VERSION}")));
        }
        let db: ClassDatabase = serde_json::from_value(v).map_err(|e| Error::Schema(e.to_string()))?;
        db.validate()?;
        Ok(db)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Structural invariants checked on every load.
    pub fn validate(&self) -> Result<()> {
        let h = &self.header;
        let k = i64::try_from(h.weight).map_err(|_| Error::Schema("weight out of range".into()))?;
        for c in &self.classes {
            let bad = |what: &str| Err(Error::Schema(format!("class {}: {what}", c.name)));
            let a = &c.representative;
            if a.rows() != h.size || !a.is_square() {
                return bad("representative has the wrong shape");
            }
            if !gram_check(a, k) {
                return bad("representative fails the Gram check");
            }
            if let Some(cap) = h.entry_cap {
                if a.max_abs() as u64 > cap {
                    return bad("entry above the cap");
                }
            }
            if !c.aut.fixes(a) {
                return bad("a stored generator does not fix the representative");
            }
            if class_cardinality(&c.aut.order, h.size)? != c.cardinality {
                return bad("cardinality disagrees with the group order");
            }
            if is_primitive(a)? != c.primitive {
                return bad("primitive flag disagrees with the support graph");
            }
            if c.symmetric_class == c.th_partner.is_some() {
                return bad("symmetric flag and transpose partner disagree");
            }
            if let Some(p) = &c.th_partner {
                if !self.classes.iter().any(|d| d.name == *p && d.th_partner.as_deref() == Some(c.name.as_str())) {
                    return bad("transpose partner missing or not reciprocal");
                }
            }
        }
        if !self.symmetric.is_empty() {
            if self.symmetric.len() != self.classes.len() {
                return Err(Error::Schema("symmetric data does not align with the classes".into()));
            }
            for (s, c) in self.symmetric.iter().zip(&self.classes) {
                let bad = |what: &str| Err(Error::Schema(format!("symmetric data of {}: {what}", c.name)));
                if s.parent != c.name {
                    return bad("parent name differs");
                }
                for sign in [Sign::Symmetric, Sign::Antisymmetric] {
                    let (reps, orders) = s.reps(sign);
                    if reps.len() != orders.len() {
                        return bad("representatives and group orders differ in number");
                    }
                    if reps.iter().any(|r| !sign.holds(r) || r.rows() != h.size || !gram_check(r, k)) {
                        return bad("representative lacks its symmetry or fails the Gram check");
                    }
                }
                if let Some(w) = &s.transpose_witness {
                    if w.apply(&c.representative)? != c.representative.transpose() {
                        return bad("transpose witness is wrong");
                    }
                } else if c.symmetric_class {
                    return bad("symmetric class without transpose witness");
                }
            }
        }
        Ok(())
    }
}
