//! Permutation groups given by generators: deterministic Schreier–Sims with
//! exact order, membership by sifting and element streaming.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// A permutation of `0..n`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&y| self.0[y]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0.iter().all(|&x| x < seen.len() && !std::mem::replace(&mut seen[x], true))
    }
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Perm>,
    /// `transversal[x]` maps the base point to `x`, for `x` in its orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[point] = Some(Perm::identity(degree));
        Level { point, gens: Vec::new(), transversal, orbit: vec![point] }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.point] = Some(Perm::identity(degree));
        self.orbit = vec![self.point];
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            head += 1;
            for g in &self.gens {
                let y = g.apply(x);
                if self.transversal[y].is_none() {
                    let t = g.compose(self.transversal[x].as_ref().expect("orbit point has a transversal"));
                    self.transversal[y] = Some(t);
                    self.orbit.push(y);
                }
            }
        }
    }
}

/// Base and strong generating set of a permutation group.
#[derive(Clone, Debug)]
pub struct PermGroupBSGS {
    degree: usize,
    levels: Vec<Level>,
    generators: Vec<Perm>,
}

impl PermGroupBSGS {
    pub fn trivial(degree: usize) -> Self {
        PermGroupBSGS { degree, levels: Vec::new(), generators: Vec::new() }
    }

    pub fn from_generators(degree: usize, gens: &[Perm]) -> Self {
        Self::with_base(degree, &[], gens)
    }

    /// Builds the group with `base_prefix` as the start of its base.
    pub fn with_base(degree: usize, base_prefix: &[usize], gens: &[Perm]) -> Self {
        let mut g = PermGroupBSGS::trivial(degree);
        for &b in base_prefix {
            g.levels.push(Level::new(b, degree));
        }
        for p in gens {
            assert_eq!(p.degree(), degree, "generator degree mismatch");
            g.generators.push(p.clone());
            if !p.is_identity() {
                g.insert(p.clone());
            }
        }
        g.complete();
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Fundamental orbit lengths along the base.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Orbit of `x` under the whole group.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut out = vec![x];
        let mut head = 0;
        while head < out.len() {
            let y = out[head];
            head += 1;
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    out.push(z);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Sifts `g` from `level`; returns the residue and the level where it stopped.
    fn sift_from(&self, mut g: Perm, level: usize) -> (Perm, usize) {
        for (i, l) in self.levels.iter().enumerate().skip(level) {
            let x = g.apply(l.point);
            match &l.transversal[x] {
                Some(t) => g = t.inverse().compose(&g),
                None => return (g, i),
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift_from(g.clone(), 0).0.is_identity()
    }

    /// Adds a non-identity element that sifted to `level`.
    fn add_at(&mut self, g: Perm, level: usize) {
        if level == self.levels.len() {
            let moved = (0..self.degree).find(|&x| g.apply(x) != x).expect("non-identity residue");
            self.levels.push(Level::new(moved, self.degree));
        }
        for l in self.levels.iter_mut().take(level + 1) {
            l.gens.push(g.clone());
        }
        for l in self.levels.iter_mut().take(level + 1) {
            l.rebuild_orbit();
        }
    }

    fn insert(&mut self, g: Perm) {
        let (r, lvl) = self.sift_from(g, 0);
        if !r.is_identity() {
            self.add_at(r, lvl);
        }
    }

    /// Closes under Schreier generators, deepest level first.
    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let lv = i - 1;
            let mut added = None;
            'scan: for xi in 0..self.levels[lv].orbit.len() {
                let x = self.levels[lv].orbit[xi];
                for gi in 0..self.levels[lv].gens.len() {
                    let l = &self.levels[lv];
                    let g = &l.gens[gi];
                    let ux = l.transversal[x].as_ref().expect("orbit point");
                    let y = g.apply(x);
                    let uy = l.transversal[y].as_ref().expect("orbit is closed");
                    let s = uy.inverse().compose(&g.compose(ux));
                    if s.is_identity() {
                        continue;
                    }
                    let (r, stop) = self.sift_from(s, lv + 1);
                    if !r.is_identity() {
                        added = Some((r, stop));
                        break 'scan;
                    }
                }
            }
            match added {
                Some((r, stop)) => {
                    self.add_at(r, stop);
                    i = stop + 1;
                }
                None => i -= 1,
            }
        }
    }

    /// Visits every element once. Stops early when `f` returns `false`.
    pub fn for_each_element(&self, mut f: impl FnMut(&Perm) -> bool) {
        let depth = self.levels.len();
        if depth == 0 {
            f(&Perm::identity(self.degree));
            return;
        }
        let mut idx = vec![0usize; depth];
        // prefix[i] = u_0(x_0)∘…∘u_{i-1}(x_{i-1})
        let mut prefix: Vec<Perm> = vec![Perm::identity(self.degree); depth + 1];
        let rep = |lv: usize, k: usize| self.levels[lv].transversal[self.levels[lv].orbit[k]].as_ref().expect("orbit point");
        for lv in 0..depth {
            prefix[lv + 1] = prefix[lv].compose(rep(lv, 0));
        }
        loop {
            if !f(&prefix[depth]) {
                return;
            }
            let mut lv = depth;
            loop {
                if lv == 0 {
                    return;
                }
                lv -= 1;
                idx[lv] += 1;
                if idx[lv] < self.levels[lv].orbit.len() {
                    break;
                }
                idx[lv] = 0;
            }
            for l in lv..depth {
                prefix[l + 1] = prefix[l].compose(rep(l, idx[l]));
            }
        }
    }

    pub fn elements(&self) -> Vec<Perm> {
        let mut out = Vec::new();
        self.for_each_element(|g| {
            out.push(g.clone());
            true
        });
        out
    }
}
