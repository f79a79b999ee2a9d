//! Symmetric and anti-symmetric members of a Hadamard class, their
//! classification up to `A ↦ M·A·Mᵀ` (SH-equivalence), and the assembly of
//! imprimitive symmetric classifications from primitive data.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::autiso::{find_isomorphism, AutGroup};
use crate::counting::{factorial, sym_class_cardinality, SymmetricCounts};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::monomial::{HadamardPair, SignedPerm};
use crate::structure::{multisets, ClassRecord, Component, Decomposition, PrimitiveLibrary};

/// Symmetric (`+1`) or anti-symmetric (`-1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Symmetric,
    Antisymmetric,
}

impl Sign {
    pub fn holds(self, a: &IntMatrix) -> bool {
        match self {
            Sign::Symmetric => a.is_symmetric(),
            Sign::Antisymmetric => a.is_antisymmetric(),
        }
    }

    fn value(self) -> i64 {
        match self {
            Sign::Symmetric => 1,
            Sign::Antisymmetric => -1,
        }
    }
}

/// An element of `TAut(A)`: `(L, R)` acts by `X ↦ L·X·Rᵀ`; with
/// `transposed` it acts by `X ↦ L·Xᵀ·Rᵀ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TElement {
    pub pair: HadamardPair,
    pub transposed: bool,
}

impl TElement {
    pub fn plain(pair: HadamardPair) -> Self {
        TElement { pair, transposed: false }
    }

    pub fn apply(&self, x: &IntMatrix) -> Result<IntMatrix> {
        if self.transposed {
            self.pair.apply(&x.transpose())
        } else {
            self.pair.apply(x)
        }
    }

    /// `self · other`: `other` acts first.
    pub fn compose(&self, other: &TElement) -> TElement {
        let (l1, r1) = (&self.pair.left, &self.pair.right);
        let (l2, r2) = (&other.pair.left, &other.pair.right);
        let pair = if self.transposed {
            // L₁·(L₂ X^{(ᵀ)} R₂ᵀ)ᵀ·R₁ᵀ = (L₁R₂)·X^{(ᵀ)ᵀ}·(R₁L₂)ᵀ
            HadamardPair::new(l1.compose(r2), r1.compose(l2))
        } else {
            HadamardPair::new(l1.compose(l2), r1.compose(r2))
        };
        TElement { pair, transposed: self.transposed != other.transposed }
    }

    pub fn inverse(&self) -> TElement {
        let pair = if self.transposed {
            HadamardPair::new(self.pair.right.inverse(), self.pair.left.inverse())
        } else {
            self.pair.inverse()
        };
        TElement { pair, transposed: self.transposed }
    }
}

/// `Aut(A)` extended by the transpose coset when `A` is equivalent to `Aᵀ`.
#[derive(Clone, Debug)]
pub struct TAutGroup {
    pub aut: AutGroup,
    /// `(L, R)` with `L·A·Rᵀ = Aᵀ`.
    pub witness: Option<HadamardPair>,
}

impl TAutGroup {
    pub fn order(&self) -> BigUint {
        if self.witness.is_some() {
            &self.aut.order * BigUint::from(2u32)
        } else {
            self.aut.order.clone()
        }
    }

    /// A transposing element fixing `A`, if the coset exists.
    pub fn transpose_element(&self) -> Option<TElement> {
        self.witness.as_ref().map(|w| TElement { pair: w.inverse(), transposed: true })
    }

    pub fn contains(&self, a: &IntMatrix, e: &TElement) -> bool {
        if e.transposed {
            self.witness.is_some() && e.apply(a).is_ok_and(|b| b == *a)
        } else {
            self.aut.contains(&e.pair)
        }
    }

    /// Visits `Aut(A)` and then its transpose coset.
    pub fn for_each_element(&self, bound: u64, mut f: impl FnMut(&TElement) -> bool) -> Result<()> {
        let t = self.transpose_element();
        let mut go = true;
        self.aut.for_each_element(bound, |g| {
            go = f(&TElement::plain(g.clone()));
            go
        })?;
        if let (true, Some(t)) = (go, t) {
            self.aut.for_each_element(bound, |g| f(&t.compose(&TElement::plain(g.clone()))))?;
        }
        Ok(())
    }
}

pub fn taut_group(a: &IntMatrix, g: &AutGroup) -> Result<TAutGroup> {
    let witness = if a.is_square() { find_isomorphism(a, &a.transpose())? } else { None };
    Ok(TAutGroup { aut: g.clone(), witness })
}

/// `Aut(h·A)` from `Aut(A)`: conjugation by `h`.
pub fn conjugate_group(g: &AutGroup, h: &HadamardPair, image: &IntMatrix) -> Result<AutGroup> {
    let hi = h.inverse();
    let gens = g.generators.iter().map(|x| h.compose(x).compose(&hi)).collect();
    let out = AutGroup::from_generators(image, gens)?;
    if out.order != g.order {
        return Err(Error::Consistency("conjugate group has a different order".into()));
    }
    Ok(out)
}

/// An (anti-)symmetric member `M·a` of the class of `a`, with `M`.
pub fn find_symmetric_member(a: &IntMatrix, g: &AutGroup, sign: Sign, bound: u64) -> Result<Option<(IntMatrix, SignedPerm)>> {
    if !a.is_square() {
        return Err(Error::Dimension("symmetric members need a square matrix".into()));
    }
    let n = a.rows();
    if sign == Sign::Antisymmetric && n % 2 == 1 {
        return Ok(None);
    }
    if sign.holds(a) {
        return Ok(Some((a.clone(), SignedPerm::identity(n))));
    }
    let Some(w) = find_isomorphism(a, &a.transpose())? else {
        return Ok(None);
    };
    let (l, r) = (&w.left, &w.right);
    let mut found: Option<SignedPerm> = None;
    g.for_each_element(bound, |p| {
        let mut m = l.compose(&p.left.inverse());
        if sign == Sign::Antisymmetric {
            m = m.negated();
        }
        if m.compose(r) == p.right {
            found = Some(m);
            false
        } else {
            true
        }
    })?;
    match found {
        None => Ok(None),
        Some(m) => {
            let s = m.apply_rows(a);
            if !sign.holds(&s) {
                return Err(Error::Consistency("constructed member lacks the requested symmetry".into()));
            }
            Ok(Some((s, m)))
        }
    }
}

/// SH-classes inside the class of an (anti-)symmetric matrix.
///
/// Members of the class with the same symmetry are `M·S` for
/// `M ∈ 𝓜 = {M : (Mᵀ, M) ∈ Aut(S)}`; `Aut(S)` acts on `𝓜` by
/// `M ↦ Q·M·Pᵀ` and the SH-classes are its orbits, with
/// `|SAut(M·S)| = |Aut(S)| / |orbit|`.
#[derive(Clone, Debug)]
pub struct SymClasses {
    pub base: IntMatrix,
    pub sign: Sign,
    pub aut: AutGroup,
    /// Subclass representatives `M·S`, ascending.
    pub reps: Vec<IntMatrix>,
    pub transforms: Vec<SignedPerm>,
    pub saut_orders: Vec<BigUint>,
    orbit_of: HashMap<SignedPerm, usize>,
}

impl SymClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the subclass containing the (anti-)symmetric matrix `s`, or
    /// `None` when `s` is outside the class.
    pub fn locate(&self, s: &IntMatrix) -> Result<Option<usize>> {
        if !self.sign.holds(s) {
            return Err(Error::InvalidArgument("matrix lacks the symmetry of this classification".into()));
        }
        if s.rows() != self.base.rows() || s.cols() != self.base.cols() {
            return Ok(None);
        }
        let Some(h) = find_isomorphism(&self.base, s)? else {
            return Ok(None);
        };
        // s = L·S·Rᵀ = R·(Rᵀ·L·S)·Rᵀ
        let m = h.right.inverse().compose(&h.left);
        match self.orbit_of.get(&m) {
            Some(&i) => Ok(Some(i)),
            None => Err(Error::Consistency("transform of a member is not in the orbit table".into())),
        }
    }

    /// SH-equivalence of two members: a `T` with `T·a·Tᵀ = b`, if any.
    pub fn sh_witness(&self, a: &IntMatrix, b: &IntMatrix) -> Result<Option<SignedPerm>> {
        let (Some(i), Some(j)) = (self.locate(a)?, self.locate(b)?) else {
            return Ok(None);
        };
        if i != j {
            return Ok(None);
        }
        let ha = find_isomorphism(&self.base, a)?.expect("located");
        let hb = find_isomorphism(&self.base, b)?.expect("located");
        let ma = ha.right.inverse().compose(&ha.left);
        let mb = hb.right.inverse().compose(&hb.left);
        // find (P, Q) ∈ Aut(S) with Q·ma·Pᵀ = mb, then b = T·a·Tᵀ for T = Rb·Q·Raᵀ
        let mut t: Option<SignedPerm> = None;
        self.aut.for_each_element(u64::MAX, |p| {
            if p.right.compose(&ma).compose(&p.left.inverse()) == mb {
                t = Some(hb.right.compose(&p.right).compose(&ha.right.inverse()));
                false
            } else {
                true
            }
        })?;
        Ok(t)
    }
}

/// SH-classification of the members of `[s]` with the symmetry of `s`.
pub fn sym_classes(s: &IntMatrix, g: &AutGroup, sign: Sign, bound: u64) -> Result<SymClasses> {
    if !sign.holds(s) {
        return Err(Error::InvalidArgument("sym_classes needs a matrix with the requested symmetry".into()));
    }
    let mut members: Vec<SignedPerm> = Vec::new();
    g.for_each_element(bound, |p| {
        if p.left == p.right.inverse() {
            members.push(p.right.clone());
        }
        true
    })?;
    let index: HashMap<SignedPerm, usize> = members.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut orbit_id = vec![usize::MAX; members.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..members.len() {
        if orbit_id[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_id[start] = id;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let m = &members[orbit[head]];
            head += 1;
            for gen in &g.generators {
                let image = gen.right.compose(m).compose(&gen.left.inverse());
                let Some(&j) = index.get(&image) else {
                    return Err(Error::Consistency("group action leaves the transform set".into()));
                };
                if orbit_id[j] == usize::MAX {
                    orbit_id[j] = id;
                    orbit.push(j);
                }
            }
        }
        orbits.push(orbit);
    }
    let order = g.order.clone();
    let mut classes: Vec<(IntMatrix, SignedPerm, BigUint, usize)> = Vec::with_capacity(orbits.len());
    for (id, orbit) in orbits.iter().enumerate() {
        let (rep, m) = orbit
            .iter()
            .map(|&i| (members[i].apply_rows(s), members[i].clone()))
            .min()
            .expect("orbits are non-empty");
        let len = BigUint::from(orbit.len());
        if &order % &len != BigUint::from(0u32) {
            return Err(Error::Consistency("orbit length does not divide the group order".into()));
        }
        classes.push((rep, m, &order / &len, id));
    }
    classes.sort_by(|a, b| a.0.cmp(&b.0));
    let mut rank = vec![0; classes.len()];
    for (r, c) in classes.iter().enumerate() {
        rank[c.3] = r;
    }
    let orbit_of = members.into_iter().enumerate().map(|(i, m)| (m, rank[orbit_id[i]])).collect();
    let mut reps = Vec::new();
    let mut transforms = Vec::new();
    let mut saut_orders = Vec::new();
    for (rep, m, o, _) in classes {
        reps.push(rep);
        transforms.push(m);
        saut_orders.push(o);
    }
    Ok(SymClasses { base: s.clone(), sign, aut: g.clone(), reps, transforms, saut_orders, orbit_of })
}

/// Classifies the (anti-)symmetric members of an arbitrary class: locates a
/// member, moves the group onto it, and runs [`sym_classes`].
pub fn classify_members(a: &IntMatrix, g: &AutGroup, sign: Sign, bound: u64) -> Result<Option<SymClasses>> {
    let Some((s, m)) = find_symmetric_member(a, g, sign, bound)? else {
        return Ok(None);
    };
    let h = HadamardPair::new(m, SignedPerm::identity(a.cols()));
    let gs = conjugate_group(g, &h, &s)?;
    sym_classes(&s, &gs, sign, bound).map(Some)
}

/// Symmetric data of one class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymClassRecord {
    /// Name of the class.
    pub parent: String,
    #[serde(with = "crate::bigstr")]
    pub taut_order: BigUint,
    /// `(L, R)` with `L·A·Rᵀ = Aᵀ` for the class representative.
    pub transpose_witness: Option<HadamardPair>,
    pub symmetric_reps: Vec<IntMatrix>,
    #[serde(with = "crate::bigstr::vec")]
    pub symmetric_saut: Vec<BigUint>,
    pub antisymmetric_reps: Vec<IntMatrix>,
    #[serde(with = "crate::bigstr::vec")]
    pub antisymmetric_saut: Vec<BigUint>,
}

impl SymClassRecord {
    pub fn reps(&self, sign: Sign) -> (&[IntMatrix], &[BigUint]) {
        match sign {
            Sign::Symmetric => (&self.symmetric_reps, &self.symmetric_saut),
            Sign::Antisymmetric => (&self.antisymmetric_reps, &self.antisymmetric_saut),
        }
    }

    /// Number of (anti-)symmetric matrices in the class.
    pub fn member_count(&self, sign: Sign, n: usize) -> Result<BigUint> {
        self.reps(sign).1.iter().map(|o| sym_class_cardinality(o, n)).sum()
    }
}

/// Symmetric and anti-symmetric classification of one class record.
pub fn classify_record(rec: &ClassRecord, bound: u64) -> Result<SymClassRecord> {
    let a = &rec.representative;
    let t = taut_group(a, &rec.aut)?;
    if t.witness.is_some() != rec.symmetric_class {
        return Err(Error::Consistency(format!("transpose test disagrees with the record of {}", rec.name)));
    }
    let mut out = SymClassRecord {
        parent: rec.name.clone(),
        taut_order: t.order(),
        transpose_witness: t.witness.clone(),
        symmetric_reps: Vec::new(),
        symmetric_saut: Vec::new(),
        antisymmetric_reps: Vec::new(),
        antisymmetric_saut: Vec::new(),
    };
    if t.witness.is_none() {
        return Ok(out);
    }
    if let Some(c) = classify_members(a, &rec.aut, Sign::Symmetric, bound)? {
        out.symmetric_reps = c.reps;
        out.symmetric_saut = c.saut_orders;
    }
    if let Some(c) = classify_members(a, &rec.aut, Sign::Antisymmetric, bound)? {
        out.antisymmetric_reps = c.reps;
        out.antisymmetric_saut = c.saut_orders;
    }
    Ok(out)
}

/// `[[0, X], [±Xᵀ, 0]]`.
pub fn double_block(x: &IntMatrix, sign: Sign) -> IntMatrix {
    let n = x.rows();
    let mut out = IntMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, n + j, x.get(i, j));
            out.set(n + j, i, sign.value() * x.get(i, j));
        }
    }
    out
}

/// A block of an assembled (anti-)symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymBlock {
    /// Subclass `subclass` of primitive class `class`.
    Single { class: usize, subclass: usize },
    /// `[[0, X], [±Xᵀ, 0]]` for the transpose-class of `class`.
    Double { class: usize },
}

/// One SH-class of (anti-)symmetric matrices of the assembled size.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AssembledSymClass {
    /// Signature of the H-class containing it.
    pub parent: String,
    /// Blocks with multiplicities.
    pub blocks: Vec<(SymBlock, usize)>,
    pub representative: IntMatrix,
    #[serde(with = "crate::bigstr")]
    pub saut_order: BigUint,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymmetricClassification {
    pub size: usize,
    pub sign: Sign,
    pub classes: Vec<AssembledSymClass>,
    /// Number of (anti-)symmetric matrices of this size.
    #[serde(with = "crate::bigstr")]
    pub total: BigUint,
}

impl SymmetricClassification {
    /// Subclass counts per parent H-class, by parent signature.
    pub fn per_parent(&self) -> BTreeMap<String, Vec<BigUint>> {
        let mut out: BTreeMap<String, Vec<BigUint>> = BTreeMap::new();
        for c in &self.classes {
            out.entry(c.parent.clone()).or_default().push(c.saut_order.clone());
        }
        out
    }
}

fn check_aligned(library: &PrimitiveLibrary, sym: &[SymClassRecord]) -> Result<()> {
    if sym.len() != library.classes.len() || sym.iter().zip(&library.classes).any(|(s, c)| s.parent != c.name) {
        return Err(Error::Incomplete("symmetric data does not cover the primitive library".into()));
    }
    Ok(())
}

/// Every (anti-)symmetric SH-class of size `n`, built from primitive blocks:
/// single blocks are primitive SH-classes, double blocks are `S_X` for one
/// `X` per primitive transpose-class. Block groups multiply as wreath
/// products.
pub fn assemble_symmetric_classification(
    library: &PrimitiveLibrary,
    sym: &[SymClassRecord],
    n: usize,
    sign: Sign,
) -> Result<SymmetricClassification> {
    library.check_complete(n)?;
    check_aligned(library, sym)?;
    let lib = &library.classes;
    let mut blocks: Vec<(SymBlock, usize, BigUint)> = Vec::new();
    for (i, (c, s)) in lib.iter().zip(sym).enumerate() {
        let (reps, saut) = s.reps(sign);
        for (j, o) in saut.iter().enumerate().take(reps.len()) {
            blocks.push((SymBlock::Single { class: i, subclass: j }, c.size(), o.clone()));
        }
    }
    for (i, (c, s)) in lib.iter().zip(sym).enumerate() {
        if c.th_partner.as_ref().is_none_or(|p| c.name < *p) {
            blocks.push((SymBlock::Double { class: i }, 2 * c.size(), s.taut_order.clone()));
        }
    }
    let sizes: Vec<usize> = blocks.iter().map(|b| b.1).collect();
    let mut classes = Vec::new();
    let mut total = BigUint::from(0u32);
    for set in multisets(&sizes, n) {
        let mut saut = BigUint::one();
        let mut owned: Vec<IntMatrix> = Vec::new();
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        for &(b, r) in &set {
            saut *= blocks[b].2.pow(r as u32) * factorial(r);
            match &blocks[b].0 {
                SymBlock::Single { class, .. } => *parent.entry(*class).or_default() += r,
                SymBlock::Double { class } => {
                    *parent.entry(*class).or_default() += r;
                    *parent.entry(library.partner_index(*class)?).or_default() += r;
                    owned.push(double_block(&lib[*class].representative, sign));
                }
            }
        }
        let mut parts: Vec<&IntMatrix> = Vec::new();
        let mut owned_iter = owned.iter();
        for &(b, r) in &set {
            let m: &IntMatrix = match &blocks[b].0 {
                SymBlock::Single { class, subclass } => &sym[*class].reps(sign).0[*subclass],
                SymBlock::Double { .. } => owned_iter.next().expect("one double block per entry"),
            };
            for _ in 0..r {
                parts.push(m);
            }
        }
        let representative = IntMatrix::block_sum(&parts);
        if !sign.holds(&representative) {
            return Err(Error::Consistency("assembled block sum lacks the requested symmetry".into()));
        }
        let d = Decomposition {
            components: parent
                .into_iter()
                .map(|(index, multiplicity)| {
                    let c = &lib[index];
                    Component { index, name: c.name.clone(), size: c.size(), aut_order: c.aut.order.clone(), multiplicity }
                })
                .collect(),
        };
        total += sym_class_cardinality(&saut, n)?;
        classes.push(AssembledSymClass {
            parent: d.signature(),
            blocks: set.iter().map(|&(b, r)| (blocks[b].0.clone(), r)).collect(),
            representative,
            saut_order: saut,
        });
    }
    Ok(SymmetricClassification { size: n, sign, classes, total })
}

/// Generating-function input for [`crate::counting::count_sym_iw`].
pub fn symmetric_counts(library: &PrimitiveLibrary, sym: &[SymClassRecord], sign: Sign) -> Result<SymmetricCounts> {
    check_aligned(library, sym)?;
    let mut out = SymmetricCounts { complete_through: library.complete_through, ..Default::default() };
    for (c, s) in library.classes.iter().zip(sym) {
        for o in s.reps(sign).1 {
            out.single_blocks.push((c.size(), o.clone()));
        }
        if c.th_partner.as_ref().is_none_or(|p| c.name < *p) {
            out.double_blocks.push((c.size(), s.taut_order.clone()));
        }
    }
    Ok(out)
}
