//! Automorphism groups and isomorphisms of integer matrices.
//!
//! A matrix `A` is encoded by its extended matrix `E(A)`, where each entry
//! `a` becomes the 2×2 block `a·I` (for `a ≥ 0`) or `|a|·(J − I)` (for
//! `a < 0`). Signed permutations of rows and columns of `A` then become
//! plain permutations of the doubled index sets that commute with the
//! pairing `{2i, 2i+1}`. The pairing is built into the graph as extra edges,
//! so every graph automorphism found decodes to a Hadamard pair.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{neg_ord_with_transform, IntMatrix};
use crate::monomial::{HadamardPair, SignedPerm};
use crate::perm_group::{Perm, PermGroupBSGS};
use crate::refine::{automorphisms, isomorphism, LabeledGraph};

/// Default cap on the number of group elements visited by streaming.
pub const DEFAULT_STREAM_BOUND: u64 = 10_000_000;

/// Default tuple length for [`new_aut`].
pub const DEFAULT_TUPLE_LENGTH: usize = 2;

/// Largest tuple length accepted by [`new_aut`].
pub const MAX_TUPLE_LENGTH: usize = 4;

/// `E(A)`: every entry replaced by its 2×2 block.
pub fn extend(a: &IntMatrix) -> IntMatrix {
    let (m, n) = (a.rows(), a.cols());
    let mut e = IntMatrix::zeros(2 * m, 2 * n);
    for i in 0..m {
        for j in 0..n {
            let v = a.get(i, j);
            if v >= 0 {
                e.set(2 * i, 2 * j, v);
                e.set(2 * i + 1, 2 * j + 1, v);
            } else {
                e.set(2 * i, 2 * j + 1, -v);
                e.set(2 * i + 1, 2 * j, -v);
            }
        }
    }
    e
}

/// Directed bipartite graph with adjacency `[[0, W], [0, 0]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedBipartiteGraph {
    pub left_count: usize,
    pub right_count: usize,
    /// `(left vertex, right vertex, weight ≠ 0)`.
    pub edges: Vec<(usize, usize, i64)>,
}

impl WeightedBipartiteGraph {
    pub fn from_weights(w: &IntMatrix) -> Self {
        let mut edges = Vec::new();
        for i in 0..w.rows() {
            for j in 0..w.cols() {
                if w.get(i, j) != 0 {
                    edges.push((i, j, w.get(i, j)));
                }
            }
        }
        WeightedBipartiteGraph { left_count: w.rows(), right_count: w.cols(), edges }
    }

    /// The graph of `E(A)`.
    pub fn of_matrix(a: &IntMatrix) -> Self {
        Self::from_weights(&extend(a))
    }

    fn labeled(&self, couples: bool) -> LabeledGraph {
        let l = self.left_count;
        let mut colours = vec![0u32; l];
        colours.extend(std::iter::repeat_n(1u32, self.right_count));
        let mut g = LabeledGraph::new(colours);
        for &(u, w, x) in &self.edges {
            g.add_edge(u, l + w, x);
        }
        if couples {
            // weights are never 0, so label 0 marks the pairing
            for v in (0..l).step_by(2).chain((l..l + self.right_count).step_by(2)) {
                g.add_edge(v, v + 1, 0);
                g.add_edge(v + 1, v, 0);
            }
        }
        g.finalize();
        g
    }
}

/// Side-preserving automorphisms of the graph, with no pairing constraint.
pub fn graph_automorphisms(g: &WeightedBipartiteGraph) -> PermGroupBSGS {
    let lg = g.labeled(false);
    let a = automorphisms(&lg);
    PermGroupBSGS::with_base(lg.order(), &a.base, &a.generators)
}

fn matrix_graph(a: &IntMatrix) -> LabeledGraph {
    WeightedBipartiteGraph::of_matrix(a).labeled(true)
}

/// `Aut(A)` as Hadamard pairs, with a permutation BSGS on the `2(m+n)`
/// doubled rows and columns.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "AutGroupRepr", into = "AutGroupRepr")]
pub struct AutGroup {
    pub rows: usize,
    pub cols: usize,
    pub generators: Vec<HadamardPair>,
    pub order: BigUint,
    pub bsgs: PermGroupBSGS,
}

/// Stored form: generators plus the order as a decimal string.
#[derive(Serialize, Deserialize)]
struct AutGroupRepr {
    rows: usize,
    cols: usize,
    generators: Vec<HadamardPair>,
    order: String,
}

impl From<AutGroup> for AutGroupRepr {
    fn from(g: AutGroup) -> Self {
        AutGroupRepr { rows: g.rows, cols: g.cols, generators: g.generators, order: g.order.to_string() }
    }
}

impl TryFrom<AutGroupRepr> for AutGroup {
    type Error = Error;

    fn try_from(r: AutGroupRepr) -> Result<Self> {
        let stored: BigUint =
            r.order.parse().map_err(|_| Error::Schema(format!("group order {:?} is not a decimal integer", r.order)))?;
        let g = AutGroup::from_pairs(r.rows, r.cols, r.generators)?;
        if g.order != stored {
            return Err(Error::Schema(format!("stored group order {stored} but generators give {}", g.order)));
        }
        Ok(g)
    }
}

impl AutGroup {
    /// The group generated by `gens` without reference to a matrix.
    pub fn from_pairs(rows: usize, cols: usize, gens: Vec<HadamardPair>) -> Result<Self> {
        if gens.iter().any(|g| g.left.len() != rows || g.right.len() != cols) {
            return Err(Error::Dimension(format!("generator sizes differ from {rows}x{cols}")));
        }
        let pts: Vec<Perm> = gens.iter().map(|g| Perm(g.to_points())).collect();
        let bsgs = PermGroupBSGS::from_generators(2 * (rows + cols), &pts);
        Ok(AutGroup { rows, cols, generators: gens, order: bsgs.order(), bsgs })
    }

    /// True iff every generator fixes `a`.
    pub fn fixes(&self, a: &IntMatrix) -> bool {
        a.rows() == self.rows
            && a.cols() == self.cols
            && self.generators.iter().all(|g| g.apply(a).is_ok_and(|b| b == *a))
    }

    /// The subgroup generated by `gens`; each generator must fix `a`.
    pub fn from_generators(a: &IntMatrix, gens: Vec<HadamardPair>) -> Result<Self> {
        for g in &gens {
            if g.apply(a)? != *a {
                return Err(Error::Consistency("generator does not fix the matrix".into()));
            }
        }
        AutGroup::from_pairs(a.rows(), a.cols(), gens)
    }

    pub fn trivial(a: &IntMatrix) -> Self {
        AutGroup::from_generators(a, Vec::new()).expect("no generators to check")
    }

    pub fn contains(&self, p: &HadamardPair) -> bool {
        p.left.len() == self.rows && p.right.len() == self.cols && self.bsgs.contains(&Perm(p.to_points()))
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    /// Visits every element (stops when `f` returns `false`); errors when the
    /// order exceeds `bound`.
    pub fn for_each_element(&self, bound: u64, mut f: impl FnMut(&HadamardPair) -> bool) -> Result<()> {
        if self.order > BigUint::from(bound) {
            return Err(Error::Capacity(format!("group of order {} exceeds the streaming bound {bound}", self.order)));
        }
        let m = self.rows;
        self.bsgs.for_each_element(|p| {
            let pair = HadamardPair::from_points(&p.0, m).expect("group elements respect the pairing");
            f(&pair)
        });
        Ok(())
    }

    pub fn elements(&self, bound: u64) -> Result<Vec<HadamardPair>> {
        let mut out = Vec::new();
        self.for_each_element(bound, |p| {
            out.push(p.clone());
            true
        })?;
        Ok(out)
    }

    /// True iff all generators commute.
    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..].iter().all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// A subgroup extended by one more element.
    pub fn with_generator(&self, a: &IntMatrix, g: HadamardPair) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(g);
        AutGroup::from_generators(a, gens)
    }
}

/// Computes `Aut(A)`.
pub fn aut_group(a: &IntMatrix) -> Result<AutGroup> {
    let g = matrix_graph(a);
    let res = automorphisms(&g);
    let m = a.rows();
    let mut gens = Vec::with_capacity(res.generators.len());
    for p in &res.generators {
        let pair = HadamardPair::from_points(&p.0, m)
            .map_err(|e| Error::Consistency(format!("graph automorphism does not decode: {e}")))?;
        if pair.apply(a)? != *a {
            return Err(Error::Consistency("decoded automorphism does not fix the matrix".into()));
        }
        gens.push(pair);
    }
    let pts: Vec<Perm> = gens.iter().map(|g| Perm(g.to_points())).collect();
    let bsgs = PermGroupBSGS::with_base(g.order(), &res.base, &pts);
    let from_search: BigUint = res.orbit_lengths.iter().fold(BigUint::from(1u32), |x, &o| x * BigUint::from(o));
    let order = bsgs.order();
    if order != from_search {
        return Err(Error::Consistency(format!(
            "search order {from_search} differs from Schreier-Sims order {order}"
        )));
    }
    Ok(AutGroup { rows: m, cols: a.cols(), generators: gens, order, bsgs })
}

/// A pair `(L, R)` with `L·a·Rᵀ = b`, if the matrices are Hadamard equivalent.
pub fn find_isomorphism(a: &IntMatrix, b: &IntMatrix) -> Result<Option<HadamardPair>> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Dimension(format!(
            "cannot compare {}x{} with {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let Some(p) = isomorphism(&matrix_graph(a), &matrix_graph(b)) else {
        return Ok(None);
    };
    let pair = HadamardPair::from_points(&p.0, a.rows())
        .map_err(|e| Error::Consistency(format!("graph isomorphism does not decode: {e}")))?;
    if pair.apply(a)? != *b {
        return Err(Error::Consistency("decoded isomorphism does not map the matrices".into()));
    }
    Ok(Some(pair))
}

/// Outcome of [`new_aut`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NewAut {
    /// No automorphism outside the given group exists.
    Verified,
    /// An automorphism outside the given group.
    Found(HadamardPair),
}

/// How the column normalizer of the target tuple is obtained in [`new_aut`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalizerReading {
    /// Each tuple gets its own normalizing column action.
    #[default]
    Distinct,
    /// The normalizer of the first tuple is reused for the target tuple and a
    /// sign pattern is skipped unless it already normalizes it. Incomplete;
    /// kept for comparison.
    Shared,
}

/// True iff `L·x = y` for some monomial `L`; rows are compared after
/// normalizing each nonzero row to begin with a negative entry.
pub fn row_equivalent(x: &IntMatrix, y: &IntMatrix) -> bool {
    if x.rows() != y.rows() || x.cols() != y.cols() {
        return false;
    }
    let norm = |m: &IntMatrix| {
        let mut rows: Vec<Vec<i64>> = (0..m.rows()).map(|i| normalize_row(m.row(i))).collect();
        rows.sort_unstable();
        rows
    };
    norm(x) == norm(y)
}

fn normalize_row(r: &[i64]) -> Vec<i64> {
    match r.iter().find(|&&v| v != 0) {
        Some(&v) if v > 0 => r.iter().map(|x| -x).collect(),
        _ => r.to_vec(),
    }
}

/// The `L` with `L·x = y` when `x` has pairwise non-proportional nonzero rows.
fn row_match(x: &IntMatrix, y: &IntMatrix) -> Option<SignedPerm> {
    let m = x.rows();
    let mut index: HashMap<Vec<i64>, (usize, i8)> = HashMap::with_capacity(m);
    for i in 0..m {
        let r = y.row(i);
        let nr = normalize_row(r);
        let s = if nr.as_slice() == r { 1 } else { -1 };
        if index.insert(nr, (i, s)).is_some() {
            return None;
        }
    }
    let mut perm = vec![0; m];
    let mut signs = vec![1i8; m];
    let mut used = vec![false; m];
    for i in 0..m {
        let r = x.row(i);
        let nr = normalize_row(r);
        let s = if nr.as_slice() == r { 1 } else { -1 };
        let &(t, st) = index.get(&nr)?;
        if std::mem::replace(&mut used[t], true) {
            return None;
        }
        perm[i] = t;
        signs[t] = s * st;
    }
    Some(SignedPerm::from_parts_unchecked(perm, signs))
}

/// All elements of the monomial group on `k` points.
fn monomials(k: usize, signed: bool) -> Vec<SignedPerm> {
    let mut out = Vec::new();
    if signed {
        crate::monomial::for_each_monomial(k, |p| out.push(p.clone()));
    } else {
        let mut perm: Vec<usize> = (0..k).collect();
        loop {
            out.push(SignedPerm::from_perm(perm.clone()).expect("permutation"));
            if !crate::monomial::next_permutation(&mut perm) {
                break;
            }
        }
    }
    out
}

/// Embeds per-block monomials on the column blocks into one monomial of size `n`.
fn assemble_blocks(n: usize, blocks: &[Vec<usize>], choice: &[&SignedPerm]) -> SignedPerm {
    let mut perm = vec![0; n];
    let mut signs = vec![1i8; n];
    for (blk, g) in blocks.iter().zip(choice) {
        for (a, &col) in blk.iter().enumerate() {
            let t = blk[g.image(a)];
            perm[col] = t;
            signs[t] = g.sign_at(g.image(a));
        }
    }
    SignedPerm::from_parts_unchecked(perm, signs)
}

/// Searches for an automorphism of `a` outside `g`, working through the
/// orbits of `g` on ordered `r`-tuples of distinct rows.
pub fn new_aut(a: &IntMatrix, g: &AutGroup, r: usize) -> Result<NewAut> {
    new_aut_with(a, g, r, NormalizerReading::Distinct)
}

pub fn new_aut_with(a: &IntMatrix, g: &AutGroup, r: usize, reading: NormalizerReading) -> Result<NewAut> {
    let (m, n) = (a.rows(), a.cols());
    if g.rows != m || g.cols != n {
        return Err(Error::Dimension("group and matrix shapes differ".into()));
    }
    for gen in &g.generators {
        if gen.apply(a)? != *a {
            return Err(Error::Consistency("generator does not fix the matrix".into()));
        }
    }
    if r == 0 || r > m {
        return Err(Error::InvalidArgument(format!("tuple length {r} outside 1..={m}")));
    }
    if r > MAX_TUPLE_LENGTH {
        return Err(Error::Capacity(format!("tuple length {r} exceeds {MAX_TUPLE_LENGTH}")));
    }
    let tuples = ordered_tuples(m, r);
    let code = |t: &[usize]| t.iter().fold(0usize, |acc, &x| acc * m + x);
    let pos: HashMap<usize, usize> = tuples.iter().enumerate().map(|(i, t)| (code(t), i)).collect();
    let mut parent: Vec<usize> = (0..tuples.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for gen in &g.generators {
        for (i, t) in tuples.iter().enumerate() {
            let img: Vec<usize> = t.iter().map(|&x| gen.left.image(x)).collect();
            let j = pos[&code(&img)];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    // tuples are in lexicographic order, so each orbit's root is its least tuple
    let mut basepoints: Vec<usize> = (0..tuples.len()).filter(|&i| find(&mut parent, i) == i).collect();
    basepoints.sort_unstable();
    let x1 = &tuples[basepoints[0]];
    // x_1 against itself: every stabilizer element must be compared with G
    let mut found = None;
    for_each_tuple_map(a, x1, x1, reading, |pair| {
        if g.contains(&pair) {
            true
        } else {
            found = Some(pair);
            false
        }
    })?;
    if let Some(p) = found {
        return Ok(NewAut::Found(p));
    }
    // other orbits: any element mapping x_1 to x_j lies outside G
    for &bj in &basepoints[1..] {
        let mut found = None;
        for_each_tuple_map(a, x1, &tuples[bj], reading, |pair| {
            found = Some(pair);
            false
        })?;
        if let Some(p) = found {
            return Ok(NewAut::Found(p));
        }
    }
    Ok(NewAut::Verified)
}

/// Calls `f` on automorphisms `(L, R)` whose row part sends the tuple `x1`
/// to `xj` entrywise, over all sign patterns. Under the distinct reading
/// every such automorphism is visited. Stops when `f` returns `false`.
fn for_each_tuple_map(
    a: &IntMatrix,
    x1: &[usize],
    xj: &[usize],
    reading: NormalizerReading,
    mut f: impl FnMut(HadamardPair) -> bool,
) -> Result<()> {
    let r = x1.len();
    let b1 = a.select_rows(x1);
    let bj = a.select_rows(xj);
    let (nj, rj) = neg_ord_with_transform(&bj);
    let mut go_on = true;
    for mask in 0u32..(1 << r) {
        let svec: Vec<i8> = (0..r).map(|t| if mask >> t & 1 == 1 { -1 } else { 1 }).collect();
        let s = SignedPerm::from_signs(svec).expect("signs");
        let (n1, r1) = neg_ord_with_transform(&s.apply_rows(&b1));
        if n1 != nj {
            continue;
        }
        let rj = match reading {
            NormalizerReading::Distinct => rj.clone(),
            NormalizerReading::Shared => {
                if r1.apply_cols(&bj) != nj {
                    continue;
                }
                r1.clone()
            }
        };
        for_each_column_candidate(a, &nj, &r1, &rj, |pair| {
            debug_assert!((0..r).all(|t| pair.left.image(x1[t]) == xj[t]));
            go_on = f(pair);
            go_on
        })?;
        if !go_on {
            break;
        }
    }
    Ok(())
}

/// All ordered tuples of `r` distinct indices below `m`, lexicographic.
fn ordered_tuples(m: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn go(m: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in 0..m {
            if !cur.contains(&x) {
                cur.push(x);
                go(m, r, cur, out);
                cur.pop();
            }
        }
    }
    go(m, r, &mut cur, &mut out);
    out
}

/// Column blocks of equal columns of `nrm` and the candidate monomials on
/// each block that survive the per-block row-equivalence test.
fn pruned_blocks(a1: &IntMatrix, aj: &IntMatrix, nrm: &IntMatrix) -> Option<(Vec<Vec<usize>>, Vec<Vec<SignedPerm>>)> {
    let n = nrm.cols();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for c in 0..n {
        match blocks.last_mut() {
            Some(b) if nrm.column(b[0]) == nrm.column(c) => b.push(c),
            _ => blocks.push(vec![c]),
        }
    }
    let rows: Vec<usize> = (0..a1.rows()).collect();
    let mut prunes = Vec::with_capacity(blocks.len());
    for blk in &blocks {
        let zero = nrm.column(blk[0]).iter().all(|&x| x == 0);
        let sub1 = a1.submatrix(&rows, blk);
        let subj = aj.submatrix(&rows, blk);
        // candidate Q restricted to the block must satisfy L·(sub1·Q) = subj
        let keep: Vec<SignedPerm> = monomials(blk.len(), zero)
            .into_iter()
            .filter(|q| row_equivalent(&q.inverse().apply_cols(&sub1), &subj))
            .collect();
        if keep.is_empty() {
            return None;
        }
        prunes.push(keep);
    }
    Some((blocks, prunes))
}

/// Calls `f` for every automorphism whose column part is
/// `Rⱼᵀ·Qᵀ·R₁` for `Q` in the column stabilizer of `nrm`; stops when `f`
/// returns `false`.
fn for_each_column_candidate(
    a: &IntMatrix,
    nrm: &IntMatrix,
    r1: &SignedPerm,
    rj: &SignedPerm,
    mut f: impl FnMut(HadamardPair) -> bool,
) -> Result<()> {
    let n = a.cols();
    // A₁ = A·R₁ᵀ and Aⱼ = A·Rⱼᵀ; need L·A₁·Q = Aⱼ
    let a1 = r1.apply_cols(a);
    let aj = rj.apply_cols(a);
    let Some((blocks, prunes)) = pruned_blocks(&a1, &aj, nrm) else {
        return Ok(());
    };
    let mut idx = vec![0usize; blocks.len()];
    loop {
        let choice: Vec<&SignedPerm> = idx.iter().zip(&prunes).map(|(&i, p)| &p[i]).collect();
        let q = assemble_blocks(n, &blocks, &choice);
        let a1q = q.inverse().apply_cols(&a1);
        if let Some(l) = row_match(&a1q, &aj) {
            // L·A·R₁ᵀ·Q = A·Rⱼᵀ, so L·A·(R₁ᵀ·Q·Rⱼ) = A and R = Rⱼᵀ·Qᵀ·R₁
            let right = rj.inverse().compose(&q.inverse()).compose(r1);
            let pair = HadamardPair::new(l, right);
            if pair.apply(a)? != *a {
                return Err(Error::Consistency("assembled pair does not fix the matrix".into()));
            }
            if !f(pair) {
                return Ok(());
            }
        }
        let mut t = blocks.len();
        loop {
            if t == 0 {
                return Ok(());
            }
            t -= 1;
            idx[t] += 1;
            if idx[t] < prunes[t].len() {
                break;
            }
            idx[t] = 0;
        }
    }
}

/// Repeats [`new_aut`] from `start`, adding each new element, until the
/// group is certified complete.
pub fn certify(a: &IntMatrix, start: &AutGroup, r: usize) -> Result<(AutGroup, usize)> {
    let mut g = start.clone();
    let mut added = 0;
    loop {
        match new_aut(a, &g, r)? {
            NewAut::Verified => return Ok((g, added)),
            NewAut::Found(p) => {
                if g.contains(&p) {
                    return Err(Error::Consistency("new element already in the group".into()));
                }
                g = g.with_generator(a, p)?;
                added += 1;
            }
        }
    }
}
