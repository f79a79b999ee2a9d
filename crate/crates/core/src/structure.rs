//! Primitive decomposition, automorphism groups of block sums, and the full
//! H/TH classification assembled from primitive lists.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::autiso::{aut_group, find_isomorphism, new_aut, AutGroup, NewAut};
use crate::canon::{code_invariant, CodeInvariant};
use crate::counting::{class_cardinality, factorial, PrimitiveCounts};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::monomial::{HadamardPair, SignedPerm};

/// One Hadamard class of square matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassRecord {
    pub name: String,
    pub representative: IntMatrix,
    pub aut: AutGroup,
    #[serde(with = "crate::bigstr")]
    pub cardinality: BigUint,
    pub primitive: bool,
    /// The class contains the transpose of its members.
    pub symmetric_class: bool,
    /// Name of the transpose class when it differs.
    pub th_partner: Option<String>,
}

impl ClassRecord {
    pub fn new(
        name: impl Into<String>,
        representative: IntMatrix,
        aut: AutGroup,
        symmetric_class: bool,
        th_partner: Option<String>,
    ) -> Result<Self> {
        if !representative.is_square() {
            return Err(Error::Dimension("class records hold square matrices".into()));
        }
        let cardinality = class_cardinality(&aut.order, representative.rows())?;
        let primitive = support_components(&representative)?.len() == 1;
        Ok(ClassRecord { name: name.into(), representative, aut, cardinality, primitive, symmetric_class, th_partner })
    }

    pub fn size(&self) -> usize {
        self.representative.rows()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components of the bipartite support graph, as (rows, columns),
/// ordered by their least row (row-free components last, by least column).
pub fn support_components(a: &IntMatrix) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let (m, n) = (a.rows(), a.cols());
    let mut parent: Vec<usize> = (0..m + n).collect();
    for i in 0..m {
        for j in 0..n {
            if a.get(i, j) != 0 {
                let (x, y) = (find(&mut parent, i), find(&mut parent, m + j));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
    }
    let mut comps: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for v in 0..m + n {
        let r = find(&mut parent, v);
        let e = comps.entry(r).or_default();
        if v < m {
            e.0.push(v);
        } else {
            e.1.push(v - m);
        }
    }
    let out: Vec<(Vec<usize>, Vec<usize>)> = comps.into_values().collect();
    if a.is_square() && is_scaled_orthogonal(a) && out.iter().any(|(r, c)| r.len() != c.len()) {
        return Err(Error::Consistency("support component of an invertible matrix is not square".into()));
    }
    Ok(out)
}

fn is_scaled_orthogonal(a: &IntMatrix) -> bool {
    let g = a.gram();
    let k = g.get(0, 0);
    k > 0 && g == IntMatrix::scalar(a.rows(), k)
}

pub fn is_primitive(a: &IntMatrix) -> Result<bool> {
    Ok(support_components(a)?.len() == 1)
}

/// The primitive classes of every size up to `complete_through`, in library
/// order (by size, then serial).
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PrimitiveLibrary {
    pub weight: u64,
    pub complete_through: usize,
    pub classes: Vec<ClassRecord>,
}

impl PrimitiveLibrary {
    pub fn of_size(&self, s: usize) -> impl Iterator<Item = (usize, &ClassRecord)> {
        self.classes.iter().enumerate().filter(move |(_, c)| c.size() == s)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    /// Index of the transpose class of entry `i`.
    pub fn partner_index(&self, i: usize) -> Result<usize> {
        match &self.classes[i].th_partner {
            None => Ok(i),
            Some(p) => self
                .position(p)
                .ok_or_else(|| Error::Incomplete(format!("transpose partner {p} of {} is missing", self.classes[i].name))),
        }
    }

    /// `(size, |Aut|)` for every H-class, for the counting module.
    pub fn counts(&self) -> PrimitiveCounts {
        PrimitiveCounts {
            complete_through: self.complete_through,
            entries: self.classes.iter().map(|c| (c.size(), c.aut.order.clone())).collect(),
        }
    }

    /// Letters `A, B, …` for the sizes that have primitive classes, ascending.
    pub fn size_letters(&self) -> BTreeMap<usize, char> {
        let mut sizes: Vec<usize> = self.classes.iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        sizes.dedup();
        sizes.into_iter().zip('A'..='Z').collect()
    }

    pub fn check_complete(&self, n: usize) -> Result<()> {
        if n > self.complete_through {
            return Err(Error::Incomplete(format!(
                "primitive library is complete through size {}, size {n} requested",
                self.complete_through
            )));
        }
        Ok(())
    }
}

/// Finds library classes of a matrix by code invariant, then isomorphism.
pub struct PrimitiveIndex<'a> {
    library: &'a [ClassRecord],
    buckets: HashMap<(usize, CodeInvariant), Vec<usize>>,
}

impl<'a> PrimitiveIndex<'a> {
    pub fn new(library: &'a [ClassRecord]) -> Result<Self> {
        let invs: Vec<CodeInvariant> = library
            .par_iter()
            .map(|c| code_invariant(&c.representative, c.size().min(4)))
            .collect::<Result<_>>()?;
        let mut buckets: HashMap<(usize, CodeInvariant), Vec<usize>> = HashMap::new();
        for (i, inv) in invs.into_iter().enumerate() {
            buckets.entry((library[i].size(), inv)).or_default().push(i);
        }
        Ok(PrimitiveIndex { library, buckets })
    }

    /// The library entry equivalent to `a`, with a pair mapping the entry's
    /// representative onto `a`.
    pub fn locate(&self, a: &IntMatrix) -> Result<Option<(usize, HadamardPair)>> {
        if !a.is_square() {
            return Ok(None);
        }
        let inv = code_invariant(a, a.rows().min(4))?;
        let Some(idx) = self.buckets.get(&(a.rows(), inv)) else {
            return Ok(None);
        };
        for &i in idx {
            if let Some(p) = find_isomorphism(&self.library[i].representative, a)? {
                return Ok(Some((i, p)));
            }
        }
        Ok(None)
    }

    pub fn decompose(&self, a: &IntMatrix) -> Result<Decomposition> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for (rows, cols) in support_components(a)? {
            let block = a.submatrix(&rows, &cols);
            match self.locate(&block)? {
                Some((i, _)) => *counts.entry(i).or_default() += 1,
                None => return Err(Error::UnknownPrimitive { block }),
            }
        }
        let components = counts
            .into_iter()
            .map(|(index, multiplicity)| {
                let c = &self.library[index];
                Component { index, name: c.name.clone(), size: c.size(), aut_order: c.aut.order.clone(), multiplicity }
            })
            .collect();
        Ok(Decomposition { components })
    }
}

/// A primitive class occurring `multiplicity` times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    /// Position in the library.
    pub index: usize,
    pub name: String,
    pub size: usize,
    #[serde(with = "crate::bigstr")]
    pub aut_order: BigUint,
    pub multiplicity: usize,
}

/// Multiset of primitive classes, ordered by library position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub components: Vec<Component>,
}

impl Decomposition {
    pub fn size(&self) -> usize {
        self.components.iter().map(|c| c.size * c.multiplicity).sum()
    }

    /// E.g. `3*1.1+4.1`.
    pub fn signature(&self) -> String {
        self.components
            .iter()
            .map(|c| if c.multiplicity == 1 { c.name.clone() } else { format!("{}*{}", c.multiplicity, c.name) })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Block sizes as letters, e.g. `3A+C`, largest multiplicity grouping by size.
    pub fn shape(&self, letters: &BTreeMap<usize, char>) -> String {
        let mut by_size: BTreeMap<usize, usize> = BTreeMap::new();
        for c in &self.components {
            *by_size.entry(c.size).or_default() += c.multiplicity;
        }
        by_size
            .into_iter()
            .map(|(s, r)| {
                let l = letters.get(&s).copied().unwrap_or('?');
                if r == 1 {
                    l.to_string()
                } else {
                    format!("{r}{l}")
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Block sizes in descending order, one entry per block.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.components.iter().flat_map(|c| std::iter::repeat_n(c.size, c.multiplicity)).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// Primitive decomposition of `a` against a list of primitive classes.
pub fn primitive_decompose(a: &IntMatrix, library: &[ClassRecord]) -> Result<Decomposition> {
    PrimitiveIndex::new(library)?.decompose(a)
}

/// `∏ |Aut(A_t)|^{r_t}·r_t!`.
pub fn assembled_aut_order(d: &Decomposition) -> BigUint {
    d.components.iter().fold(BigUint::one(), |acc, c| acc * c.aut_order.pow(c.multiplicity as u32) * factorial(c.multiplicity))
}

/// Embeds a pair acting on a block at `offset` into size `n`.
fn embed_pair(p: &HadamardPair, offset: usize, n: usize) -> HadamardPair {
    let embed = |s: &SignedPerm| {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut signs = vec![1i8; n];
        for i in 0..s.len() {
            perm[offset + i] = offset + s.image(i);
        }
        for t in 0..s.len() {
            signs[offset + t] = s.sign_at(t);
        }
        SignedPerm::new(perm, signs).expect("embedding of a signed permutation")
    };
    HadamardPair::new(embed(&p.left), embed(&p.right))
}

/// Swaps the blocks of length `len` at offsets `a` and `b` on both sides.
fn block_swap(a: usize, b: usize, len: usize, n: usize) -> HadamardPair {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in 0..len {
        perm[a + i] = b + i;
        perm[b + i] = a + i;
    }
    let s = SignedPerm::from_perm(perm).expect("block swap is a permutation");
    HadamardPair::new(s.clone(), s)
}

/// Block-diagonal sum of the components (library order) with generators of
/// its automorphism group: the blocks' own generators plus swaps of equal
/// neighbouring blocks.
pub fn assemble_block_sum(d: &Decomposition, library: &[ClassRecord]) -> Result<(IntMatrix, AutGroup)> {
    let n = d.size();
    let mut blocks: Vec<&IntMatrix> = Vec::new();
    let mut gens: Vec<HadamardPair> = Vec::new();
    let mut offset = 0;
    for c in &d.components {
        let rec = &library[c.index];
        let s = rec.size();
        for r in 0..c.multiplicity {
            blocks.push(&rec.representative);
            for g in &rec.aut.generators {
                gens.push(embed_pair(g, offset, n));
            }
            if r + 1 < c.multiplicity {
                gens.push(block_swap(offset, offset + s, s, n));
            }
            offset += s;
        }
    }
    let rep = IntMatrix::block_sum(&blocks);
    let aut = AutGroup::from_generators(&rep, gens)?;
    let expected = assembled_aut_order(d);
    if aut.order != expected {
        return Err(Error::Consistency(format!(
            "block sum group has order {} but the wreath formula gives {expected}",
            aut.order
        )));
    }
    Ok((rep, aut))
}

/// Every H-class of a size, assembled from primitive classes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FullClassification {
    pub size: usize,
    pub weight: u64,
    pub records: Vec<ClassRecord>,
    pub decompositions: Vec<Decomposition>,
    pub h_count: usize,
    pub th_count: usize,
}

/// One row of the decomposition-type table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeRow {
    pub shape: String,
    pub th_count: usize,
    pub h_count: usize,
}

impl FullClassification {
    pub fn total_cardinality(&self) -> BigUint {
        self.records.iter().map(|r| r.cardinality.clone()).sum()
    }

    /// Cardinality of the classes with a single block.
    pub fn primitive_cardinality(&self) -> BigUint {
        self.records.iter().filter(|r| r.primitive).map(|r| r.cardinality.clone()).sum()
    }

    /// Counts per decomposition type, ordered by descending block sizes.
    pub fn shape_table(&self, letters: &BTreeMap<usize, char>) -> Vec<ShapeRow> {
        let mut rows: BTreeMap<Vec<usize>, ShapeRow> = BTreeMap::new();
        for (rec, d) in self.records.iter().zip(&self.decompositions) {
            let row = rows.entry(d.block_sizes()).or_insert_with(|| ShapeRow { shape: d.shape(letters), th_count: 0, h_count: 0 });
            row.h_count += 1;
            // one TH-class per transpose pair, counted at its lexically smaller name
            if rec.th_partner.as_ref().is_none_or(|p| rec.name < *p) {
                row.th_count += 1;
            }
        }
        rows.into_values().collect()
    }
}

/// Multisets of library entries whose sizes add up to `n`, as (index, count)
/// lists in library order.
pub(crate) fn multisets(sizes: &[usize], n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(sizes: &[usize], i: usize, rest: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if i == sizes.len() {
            return;
        }
        go(sizes, i + 1, rest, cur, out);
        let s = sizes[i];
        let mut r = 1;
        while r * s <= rest {
            cur.push((i, r));
            go(sizes, i + 1, rest - r * s, cur, out);
            cur.pop();
            r += 1;
        }
    }
    let mut out = Vec::new();
    go(sizes, 0, n, &mut Vec::new(), &mut out);
    out
}

/// All H-classes of size `n`: one record per multiset of primitive classes
/// with sizes summing to `n`; the TH-count merges each class with the class
/// of its transpose.
pub fn assemble_full_classification(library: &PrimitiveLibrary, n: usize) -> Result<FullClassification> {
    library.check_complete(n)?;
    let lib = &library.classes;
    let sizes: Vec<usize> = lib.iter().map(|c| c.size()).collect();
    let partner: Vec<usize> = (0..lib.len()).map(|i| library.partner_index(i)).collect::<Result<_>>()?;
    let mut sets = multisets(&sizes, n);
    // reverse-lexicographic enumeration puts large blocks first; list small-block classes first instead
    sets.reverse();
    let decompositions: Vec<Decomposition> = sets
        .iter()
        .map(|set| Decomposition {
            components: set
                .iter()
                .map(|&(index, multiplicity)| {
                    let c = &lib[index];
                    Component { index, name: c.name.clone(), size: c.size(), aut_order: c.aut.order.clone(), multiplicity }
                })
                .collect(),
        })
        .collect();
    let transposed = |d: &Decomposition| -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = d.components.iter().map(|c| (partner[c.index], c.multiplicity)).collect();
        v.sort_unstable();
        v
    };
    let key_of: HashMap<Vec<(usize, usize)>, usize> = decompositions
        .iter()
        .enumerate()
        .map(|(i, d)| (d.components.iter().map(|c| (c.index, c.multiplicity)).collect(), i))
        .collect();
    let records: Vec<ClassRecord> = decompositions
        .par_iter()
        .map(|d| {
            let (rep, aut) = assemble_block_sum(d, lib)?;
            let t = key_of[&transposed(d)];
            let own = d.signature();
            let partner_name = decompositions[t].signature();
            let symmetric = partner_name == own;
            ClassRecord::new(own, rep, aut, symmetric, (!symmetric).then_some(partner_name))
        })
        .collect::<Result<_>>()?;
    let h_count = records.len();
    let th_count = records.iter().filter(|r| r.th_partner.as_ref().is_none_or(|p| r.name < *p)).count();
    Ok(FullClassification { size: n, weight: library.weight, records, decompositions, h_count, th_count })
}

/// Turns the H-class representatives of one size into named primitive
/// records: imprimitive classes are dropped, automorphism groups are computed
/// and certified with tuples of length `tuple_length`, and transpose classes
/// are paired. Serials follow the input order; the second member of a
/// transpose pair gets the suffix `T`.
pub fn primitive_records(reps: &[IntMatrix], tuple_length: usize) -> Result<Vec<ClassRecord>> {
    let prim: Vec<&IntMatrix> = reps
        .iter()
        .filter_map(|a| match is_primitive(a) {
            Ok(true) => Some(Ok(a)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    if prim.iter().any(|a| !a.is_square()) {
        return Err(Error::Dimension("primitive records hold square matrices".into()));
    }
    let auts: Vec<AutGroup> = prim
        .par_iter()
        .map(|a| {
            let g = aut_group(a)?;
            match new_aut(a, &g, tuple_length.min(a.rows()))? {
                NewAut::Verified => Ok(g),
                NewAut::Found(p) => Err(Error::Consistency(format!(
                    "automorphism {p:?} missing from the computed group of order {}",
                    g.order
                ))),
            }
        })
        .collect::<Result<_>>()?;
    // transpose partner of each class, found through a provisional index
    let provisional: Vec<ClassRecord> = prim
        .iter()
        .zip(&auts)
        .enumerate()
        .map(|(i, (a, g))| ClassRecord::new(i.to_string(), (*a).clone(), g.clone(), false, None))
        .collect::<Result<_>>()?;
    let index = PrimitiveIndex::new(&provisional)?;
    let partner: Vec<usize> = prim
        .par_iter()
        .map(|a| match index.locate(&a.transpose())? {
            Some((j, _)) => Ok(j),
            None => Err(Error::Consistency("transpose of a class matches no class of the same size".into())),
        })
        .collect::<Result<_>>()?;
    let size = prim.first().map_or(0, |a| a.rows());
    let mut names: Vec<Option<String>> = vec![None; prim.len()];
    let mut serial = 0;
    for i in 0..prim.len() {
        if names[i].is_some() {
            continue;
        }
        serial += 1;
        names[i] = Some(format!("{size}.{serial}"));
        let j = partner[i];
        if j != i {
            if partner[j] != i {
                return Err(Error::Consistency("transpose pairing is not an involution".into()));
            }
            names[j] = Some(format!("{size}.{serial}T"));
        }
    }
    let names: Vec<String> = names.into_iter().map(|n| n.expect("every class named")).collect();
    prim.into_iter()
        .zip(auts)
        .enumerate()
        .map(|(i, (a, g))| {
            let j = partner[i];
            ClassRecord::new(names[i].clone(), a.clone(), g, i == j, (i != j).then(|| names[j].clone()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autiso::DEFAULT_TUPLE_LENGTH;
    use crate::monomial::for_each_monomial;
    use crate::search::{classify_piw, SearchConfig};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn b1() -> IntMatrix {
        m(&[&[3, 4], &[4, -3]])
    }

    fn library_through(n: usize) -> PrimitiveLibrary {
        let mut classes = Vec::new();
        for s in 1..=n {
            let reps = classify_piw(s, s, 25, &SearchConfig::default()).unwrap();
            classes.extend(primitive_records(&reps, DEFAULT_TUPLE_LENGTH).unwrap());
        }
        PrimitiveLibrary { weight: 25, complete_through: n, classes }
    }

    /// |Aut| by checking every pair of monomials.
    fn brute_aut_order(a: &IntMatrix) -> usize {
        let n = a.rows();
        let mut count = 0;
        for_each_monomial(n, |l| {
            let la = l.apply_rows(a);
            for_each_monomial(n, |r| {
                if r.apply_cols(&la) == *a {
                    count += 1;
                }
            });
        });
        count
    }

    #[test]
    fn components_of_block_sums() {
        let a = IntMatrix::block_sum(&[&m(&[&[5]]), &b1()]);
        let c = support_components(&a).unwrap();
        assert_eq!(c, vec![(vec![0], vec![0]), (vec![1, 2], vec![1, 2])]);
        assert_eq!(support_components(&b1()).unwrap().len(), 1);
        let bad = m(&[&[5, 0], &[0, 0]]);
        assert_eq!(support_components(&bad).unwrap().len(), 3);
    }

    #[test]
    fn wreath_orders_match_brute_force() {
        let lib = library_through(2);
        let five = &lib.classes[0];
        let b = &lib.classes[1];
        let comp = |c: &ClassRecord, i: usize, r: usize| Component {
            index: i,
            name: c.name.clone(),
            size: c.size(),
            aut_order: c.aut.order.clone(),
            multiplicity: r,
        };
        let d = Decomposition { components: vec![comp(five, 0, 2)] };
        assert_eq!(assembled_aut_order(&d), BigUint::from(8u32));
        let (rep, aut) = assemble_block_sum(&d, &lib.classes).unwrap();
        assert_eq!(BigUint::from(brute_aut_order(&rep)), aut.order);
        let d = Decomposition { components: vec![comp(five, 0, 1), comp(b, 1, 1)] };
        assert_eq!(assembled_aut_order(&d), BigUint::from(8u32));
        let (rep, aut) = assemble_block_sum(&d, &lib.classes).unwrap();
        assert_eq!(BigUint::from(brute_aut_order(&rep)), aut.order);
    }

    #[test]
    fn decomposition_of_direct_sums() {
        let lib = library_through(2);
        let a = IntMatrix::block_sum(&[&m(&[&[-5]]), &b1(), &m(&[&[5]])]);
        let d = primitive_decompose(&a, &lib.classes).unwrap();
        assert_eq!(d.signature(), "2*1.1+2.1");
        assert_eq!(d.size(), 4);
        let single = primitive_decompose(&b1(), &lib.classes).unwrap();
        assert_eq!(single.signature(), "2.1");
        let unknown = m(&[&[3, 0, 0, 0], &[0, 3, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 3]]);
        assert!(matches!(primitive_decompose(&unknown, &lib.classes), Err(Error::UnknownPrimitive { .. })));
    }

    #[test]
    fn small_full_classifications() {
        let lib = library_through(4);
        assert_eq!(lib.classes.iter().map(|c| c.name.as_str()).collect::<Vec<_>>(), ["1.1", "2.1", "4.1", "4.2"]);
        let counts: Vec<usize> = (1..=4).map(|s| lib.of_size(s).count()).collect();
        assert_eq!(counts, [1, 1, 0, 2]);
        let full2 = assemble_full_classification(&lib, 2).unwrap();
        assert_eq!((full2.h_count, full2.th_count), (2, 2));
        let full4 = assemble_full_classification(&lib, 4).unwrap();
        assert_eq!((full4.h_count, full4.th_count), (5, 5));
        let total: BigUint = full4.total_cardinality();
        assert_eq!(total, BigUint::from(37248u32));
        let letters = lib.size_letters();
        let shapes: Vec<(String, usize)> = full4.shape_table(&letters).into_iter().map(|r| (r.shape, r.h_count)).collect();
        assert_eq!(shapes, [("4A".to_string(), 1), ("2A+B".to_string(), 1), ("2B".to_string(), 1), ("C".to_string(), 2)]);
        // every assembled representative decomposes back to its multiset
        let index = PrimitiveIndex::new(&lib.classes).unwrap();
        for (r, d) in full4.records.iter().zip(&full4.decompositions) {
            assert_eq!(&index.decompose(&r.representative).unwrap(), d);
        }
        assert!(matches!(assemble_full_classification(&lib, 5), Err(Error::Incomplete(_))));
    }

    #[test]
    fn assembled_counts_agree_with_search() {
        let lib = library_through(5);
        for n in 1..=5 {
            let full = assemble_full_classification(&lib, n).unwrap();
            let searched = classify_piw(n, n, 25, &SearchConfig::default()).unwrap();
            assert_eq!(full.h_count, searched.len(), "n={n}");
            let index = PrimitiveIndex::new(&lib.classes).unwrap();
            let mut sigs: Vec<String> = searched.iter().map(|a| index.decompose(a).unwrap().signature()).collect();
            sigs.sort();
            let mut want: Vec<String> = full.decompositions.iter().map(|d| d.signature()).collect();
            want.sort();
            assert_eq!(sigs, want, "n={n}");
        }
    }
}
