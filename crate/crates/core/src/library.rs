//! Per-size primitive data: building it from the search, and storing it as a
//! directory of `.iwdb` files.

use std::path::Path;

use rayon::prelude::*;

use crate::config::EngineConfig;
use crate::db::{ClassDatabase, Completeness};
use crate::error::{Error, Result};
use crate::search::classify_piw;
use crate::structure::{primitive_records, PrimitiveLibrary};
use crate::symmetry::{classify_record, SymClassRecord};

/// Primitive classes of every size through `primitives.complete_through`,
/// with the symmetric data of each class at the same index.
#[derive(Clone, Debug, Default)]
pub struct Library {
    pub primitives: PrimitiveLibrary,
    pub symmetric: Vec<SymClassRecord>,
    pub entry_cap: Option<u64>,
}

/// Classifies the primitive classes of one size, with symmetric data when
/// `with_symmetric` is set.
pub fn build_size(size: usize, weight: u64, config: &EngineConfig, with_symmetric: bool) -> Result<ClassDatabase> {
    config.validate()?;
    let reps = classify_piw(size, size, weight, &config.search())?;
    let classes = primitive_records(&reps, config.tuple_length)?;
    let mut db = ClassDatabase::new(size, weight, config.entry_cap);
    if with_symmetric {
        db.symmetric = classes
            .par_iter()
            .map(|c| classify_record(c, config.stream_bound))
            .collect::<Result<_>>()?;
    }
    db.classes = classes;
    db.header.complete = Completeness { primitive: true, certified: true, symmetric: with_symmetric };
    db.validate()?;
    Ok(db)
}

impl Library {
    /// Builds every size from 1 through `max_size`.
    pub fn build(max_size: usize, weight: u64, config: &EngineConfig, with_symmetric: bool) -> Result<Self> {
        let dbs = (1..=max_size)
            .map(|s| build_size(s, weight, config, with_symmetric))
            .collect::<Result<Vec<_>>>()?;
        Self::from_databases(weight, dbs)
    }

    /// Joins per-size databases. Sizes must run 1, 2, … without gaps; the
    /// library is complete through the last size whose primitive flag is set
    /// and whose predecessors are all complete.
    pub fn from_databases(weight: u64, dbs: Vec<ClassDatabase>) -> Result<Self> {
        let mut lib = Library {
            primitives: PrimitiveLibrary { weight, complete_through: 0, classes: Vec::new() },
            symmetric: Vec::new(),
            entry_cap: dbs.first().and_then(|d| d.header.entry_cap),
        };
        let mut symmetric_complete = true;
        for (i, db) in dbs.into_iter().enumerate() {
            let h = &db.header;
            if h.size != i + 1 || h.weight != weight {
                return Err(Error::Schema(format!("expected size {} weight {weight}, found size {} weight {}", i + 1, h.size, h.weight)));
            }
            if h.entry_cap != lib.entry_cap {
                return Err(Error::Schema("databases disagree on the entry cap".into()));
            }
            if lib.primitives.complete_through == i && h.complete.primitive {
                lib.primitives.complete_through = i + 1;
            }
            symmetric_complete &= h.complete.symmetric;
            lib.primitives.classes.extend(db.classes);
            lib.symmetric.extend(db.symmetric);
        }
        if !symmetric_complete {
            lib.symmetric.clear();
        }
        Ok(lib)
    }

    pub fn has_symmetric(&self) -> bool {
        !self.primitives.classes.is_empty() && self.symmetric.len() == self.primitives.classes.len()
    }

    pub fn require_symmetric(&self) -> Result<&[SymClassRecord]> {
        if self.has_symmetric() {
            Ok(&self.symmetric)
        } else {
            Err(Error::Incomplete("library lacks symmetric data".into()))
        }
    }

    /// The classes whose entries all lie in {-1, 0, 1}. Closed under
    /// transposition, so partner links stay intact.
    pub fn weighing_only(&self) -> Library {
        let keep: Vec<usize> =
            (0..self.primitives.classes.len()).filter(|&i| self.primitives.classes[i].representative.max_abs() <= 1).collect();
        Library {
            primitives: PrimitiveLibrary {
                weight: self.primitives.weight,
                complete_through: self.primitives.complete_through,
                classes: keep.iter().map(|&i| self.primitives.classes[i].clone()).collect(),
            },
            symmetric: if self.has_symmetric() { keep.iter().map(|&i| self.symmetric[i].clone()).collect() } else { Vec::new() },
            entry_cap: Some(1),
        }
    }

    /// Splits back into one database per size.
    pub fn to_databases(&self) -> Vec<ClassDatabase> {
        let top = self.primitives.classes.iter().map(|c| c.size()).max().unwrap_or(0).max(self.primitives.complete_through);
        let sym = self.has_symmetric();
        (1..=top)
            .map(|s| {
                let mut db = ClassDatabase::new(s, self.primitives.weight, self.entry_cap);
                for (i, c) in self.primitives.of_size(s) {
                    db.classes.push(c.clone());
                    if sym {
                        db.symmetric.push(self.symmetric[i].clone());
                    }
                }
                db.header.complete = Completeness {
                    primitive: s <= self.primitives.complete_through,
                    certified: true,
                    symmetric: sym,
                };
                db
            })
            .collect()
    }

    pub fn save_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for db in self.to_databases() {
            db.save(&ClassDatabase::path_in(dir, db.header.size, db.header.weight))?;
        }
        Ok(())
    }

    /// Loads `iw1_k.iwdb`, `iw2_k.iwdb`, … until the first missing size.
    pub fn load_dir(dir: &Path, weight: u64) -> Result<Self> {
        let mut dbs = Vec::new();
        loop {
            let path = ClassDatabase::path_in(dir, dbs.len() + 1, weight);
            if !path.exists() {
                break;
            }
            dbs.push(ClassDatabase::load(&path)?);
        }
        if dbs.is_empty() {
            return Err(Error::Incomplete(format!("no {} in {}", ClassDatabase::file_name(1, weight), dir.display())));
        }
        Self::from_databases(weight, dbs)
    }
}
