//! Individualization-refinement for vertex-coloured directed graphs with
//! integer edge labels: automorphism groups and isomorphisms.
//!
//! Refinement replaces each colour by the rank of
//! `(colour, sorted multiset of (label, direction, neighbour colour))` until
//! the number of colours stops growing. Ranks depend only on these keys, so
//! the whole process commutes with graph isomorphisms, and the hash of the
//! final keys serves as the node invariant used for pruning.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::perm_group::Perm;

#[derive(Clone, Debug)]
pub struct LabeledGraph {
    colours: Vec<u32>,
    out: Vec<Vec<(usize, i64)>>,
    inc: Vec<Vec<(usize, i64)>>,
}

impl LabeledGraph {
    /// Graph on `colours.len()` vertices with the given initial colouring.
    pub fn new(colours: Vec<u32>) -> Self {
        let n = colours.len();
        LabeledGraph { colours, out: vec![Vec::new(); n], inc: vec![Vec::new(); n] }
    }

    pub fn order(&self) -> usize {
        self.colours.len()
    }

    pub fn add_edge(&mut self, u: usize, w: usize, label: i64) {
        self.out[u].push((w, label));
        self.inc[w].push((u, label));
    }

    pub fn finalize(&mut self) {
        for l in self.out.iter_mut().chain(self.inc.iter_mut()) {
            l.sort_unstable();
        }
    }

    /// True iff `p` maps this graph onto `other` preserving colours and labelled edges.
    pub fn is_isomorphism(&self, other: &LabeledGraph, p: &Perm) -> bool {
        let n = self.order();
        if other.order() != n || p.degree() != n {
            return false;
        }
        for v in 0..n {
            let pv = p.apply(v);
            if self.colours[v] != other.colours[pv] || self.out[v].len() != other.out[pv].len() {
                return false;
            }
            let mut mapped: Vec<(usize, i64)> = self.out[v].iter().map(|&(w, l)| (p.apply(w), l)).collect();
            mapped.sort_unstable();
            if mapped != other.out[pv] {
                return false;
            }
        }
        true
    }

    fn initial(&self) -> Vec<u32> {
        rank_keys(&self.colours)
    }

    /// Equitable refinement of `colours` and its invariant.
    fn refine(&self, mut colours: Vec<u32>) -> (Vec<u32>, u64) {
        let n = self.order();
        let mut count = distinct(&colours);
        loop {
            let keys: Vec<(u32, Vec<(i64, u8, u32)>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(i64, u8, u32)> = self.out[v]
                        .iter()
                        .map(|&(w, l)| (l, 0u8, colours[w]))
                        .chain(self.inc[v].iter().map(|&(u, l)| (l, 1u8, colours[u])))
                        .collect();
                    nb.sort_unstable();
                    (colours[v], nb)
                })
                .collect();
            let next = rank_keys(&keys);
            let c = distinct(&next);
            if c == count {
                let mut sorted = keys;
                sorted.sort_unstable();
                let mut h = DefaultHasher::new();
                sorted.hash(&mut h);
                return (next, h.finish());
            }
            colours = next;
            count = c;
        }
    }
}

fn distinct(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn rank_keys<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut uniq: Vec<K> = keys.to_vec();
    uniq.sort();
    uniq.dedup();
    keys.iter().map(|k| uniq.binary_search(k).expect("key present") as u32).collect()
}

/// Vertices of the first smallest cell with more than one vertex.
fn target_cell(colours: &[u32]) -> Option<Vec<usize>> {
    let n = colours.len();
    let mut size = vec![0usize; n];
    for &c in colours {
        size[c as usize] += 1;
    }
    let best = (0..n).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c))?;
    Some((0..n).filter(|&v| colours[v] as usize == best).collect())
}

fn individualize(colours: &[u32], v: usize) -> Vec<u32> {
    let keys: Vec<(u32, bool)> = colours.iter().enumerate().map(|(u, &c)| (c, u != v)).collect();
    rank_keys(&keys)
}

struct FirstPath {
    /// Colourings along the path; the last one is discrete.
    nodes: Vec<Vec<u32>>,
    traces: Vec<u64>,
    cells: Vec<Vec<usize>>,
    base: Vec<usize>,
}

impl FirstPath {
    fn new(g: &LabeledGraph) -> Self {
        let (c, t) = g.refine(g.initial());
        let mut nodes = vec![c];
        let mut traces = vec![t];
        let mut cells = Vec::new();
        let mut base = Vec::new();
        while let Some(cell) = target_cell(nodes.last().expect("nonempty")) {
            let b = cell[0];
            let (c, t) = g.refine(individualize(nodes.last().expect("nonempty"), b));
            nodes.push(c);
            traces.push(t);
            cells.push(cell);
            base.push(b);
        }
        FirstPath { nodes, traces, cells, base }
    }

    fn leaf(&self) -> &[u32] {
        self.nodes.last().expect("nonempty")
    }
}

/// `σ(v)` = vertex of the second leaf carrying the colour of `v` in the first.
fn leaf_map(first: &[u32], second: &[u32]) -> Perm {
    let n = first.len();
    let mut by_colour = vec![0usize; n];
    for (v, &c) in second.iter().enumerate() {
        by_colour[c as usize] = v;
    }
    Perm(first.iter().map(|&c| by_colour[c as usize]).collect())
}

/// Searches the subtree below `colours` (at `level`) of `h` for a leaf
/// matching the first path of `g` and inducing an isomorphism `g → h`.
fn search(g: &LabeledGraph, h: &LabeledGraph, fp: &FirstPath, colours: &[u32], level: usize) -> Option<Perm> {
    if level == fp.cells.len() {
        let p = leaf_map(fp.leaf(), colours);
        return g.is_isomorphism(h, &p).then_some(p);
    }
    let cell = target_cell(colours)?;
    if cell.len() != fp.cells[level].len() {
        return None;
    }
    for v in cell {
        let (c, t) = h.refine(individualize(colours, v));
        if t != fp.traces[level + 1] {
            continue;
        }
        if let Some(p) = search(g, h, fp, &c, level + 1) {
            return Some(p);
        }
    }
    None
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let nxt = self.0[y];
            self.0[y] = r;
            y = nxt;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Automorphism group of a graph as generators plus base data.
#[derive(Clone, Debug)]
pub struct GraphAutomorphisms {
    pub generators: Vec<Perm>,
    /// Individualized vertices of the first path.
    pub base: Vec<usize>,
    /// Orbit length of each base point under the stabilizer of the earlier ones.
    pub orbit_lengths: Vec<usize>,
}

pub fn automorphisms(g: &LabeledGraph) -> GraphAutomorphisms {
    let n = g.order();
    let fp = FirstPath::new(g);
    let depth = fp.cells.len();
    let mut gens: Vec<Perm> = Vec::new();
    let mut uf = UnionFind((0..n).collect());
    let mut orbit_lengths = vec![1usize; depth];
    for level in (0..depth).rev() {
        let b = fp.base[level];
        let mut failed: Vec<usize> = Vec::new();
        for &v in &fp.cells[level] {
            if uf.find(v) == uf.find(b) {
                continue;
            }
            if failed.iter().any(|&f| uf.find(f) == uf.find(v)) {
                continue;
            }
            let (c, t) = g.refine(individualize(&fp.nodes[level], v));
            let found = if t == fp.traces[level + 1] { search(g, g, &fp, &c, level + 1) } else { None };
            match found {
                Some(p) => {
                    for x in 0..n {
                        uf.union(x, p.apply(x));
                    }
                    gens.push(p);
                }
                None => failed.push(v),
            }
        }
        let rb = uf.find(b);
        orbit_lengths[level] = fp.cells[level].iter().filter(|&&v| uf.find(v) == rb).count();
    }
    GraphAutomorphisms { generators: gens, base: fp.base, orbit_lengths }
}

/// An isomorphism `g → h` if one exists.
pub fn isomorphism(g: &LabeledGraph, h: &LabeledGraph) -> Option<Perm> {
    if g.order() != h.order() {
        return None;
    }
    let fp = FirstPath::new(g);
    let (c, t) = h.refine(h.initial());
    if t != fp.traces[0] {
        return None;
    }
    search(g, h, &fp, &c, 0)
}
