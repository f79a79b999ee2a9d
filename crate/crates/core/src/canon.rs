//! Row-lex minimum representatives of Hadamard classes and the code invariant.
//!
//! The minimum of `[A]` is `min over L ∈ Mon(m) of neg_ord(L·A)`. The first
//! `p` rows of `neg_ord(L·A)` depend only on the first `p` rows of `L·A`, so
//! the left actions are enumerated row by row and a branch is abandoned as
//! soon as its normalized prefix exceeds the incumbent.

use std::cmp::Ordering;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{neg_ord, IntMatrix};
use crate::monomial::{HadamardPair, SignedPerm};

/// Largest row count accepted by [`minclass`] and [`is_minimum`] by default.
pub const DEFAULT_EXHAUSTION_BOUND: usize = 8;

/// Column normal form of a partial row sequence, maintained incrementally.
#[derive(Clone)]
struct ColState {
    /// Columns in normalized order.
    order: Vec<usize>,
    /// Start index of each run of columns whose normalized prefixes agree.
    blocks: Vec<usize>,
    /// Column sign, `0` while the column has only seen zeros.
    sign: Vec<i64>,
}

impl ColState {
    fn new(n: usize) -> Self {
        ColState { order: (0..n).collect(), blocks: vec![0], sign: vec![0; n] }
    }

    /// Appends `s·row`; writes the new normalized row into `out`.
    fn push(&self, row: &[i64], s: i64, out: &mut Vec<i64>) -> ColState {
        let n = self.order.len();
        let mut sign = self.sign.clone();
        let val = |c: usize, sign: &mut Vec<i64>| {
            let v = s * row[c];
            if sign[c] == 0 && v != 0 {
                sign[c] = if v > 0 { -1 } else { 1 };
            }
            v * if sign[c] == 0 { 1 } else { sign[c] }
        };
        let mut vals = vec![0i64; n];
        for c in 0..n {
            vals[c] = val(c, &mut sign);
        }
        let mut order = self.order.clone();
        let mut blocks = Vec::with_capacity(n);
        let mut ends = self.blocks[1..].to_vec();
        ends.push(n);
        for (b, &start) in self.blocks.iter().enumerate() {
            let end = ends[b];
            let seg = &mut order[start..end];
            seg.sort_by_key(|&c| vals[c]);
            blocks.push(start);
            for t in start + 1..end {
                if vals[order[t]] != vals[order[t - 1]] {
                    blocks.push(t);
                }
            }
        }
        out.clear();
        out.extend(order.iter().map(|&c| vals[c]));
        ColState { order, blocks, sign }
    }
}

struct Search<'a> {
    a: &'a IntMatrix,
    /// Stop at the first prefix strictly below `best` instead of minimizing.
    test: bool,
    best: Vec<i64>,
    best_path: Vec<(usize, i64)>,
    best_cols: Option<ColState>,
    found_smaller: bool,
    path: Vec<(usize, i64)>,
    cur: Vec<i64>,
    used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn run(&mut self, state: &ColState) {
        let m = self.a.rows();
        let n = self.a.cols();
        let p = self.path.len();
        if p == m {
            if self.cur < self.best {
                self.best.clone_from(&self.cur);
                self.best_path.clone_from(&self.path);
                self.best_cols = Some(state.clone());
            }
            return;
        }
        let mut children: Vec<(Vec<i64>, usize, i64, ColState)> = Vec::new();
        let mut buf = Vec::with_capacity(n);
        for i in 0..m {
            if self.used[i] {
                continue;
            }
            let row = self.a.row(i);
            let zero = row.iter().all(|&x| x == 0);
            for s in [1i64, -1] {
                if zero && s == -1 {
                    continue;
                }
                let st = state.push(row, s, &mut buf);
                children.push((buf.clone(), i, s, st));
            }
        }
        children.sort_by(|x, y| x.0.cmp(&y.0));
        for (row, i, s, st) in children {
            self.cur.truncate(p * n);
            self.cur.extend_from_slice(&row);
            match self.cur[..].cmp(&self.best[..(p + 1) * n]) {
                Ordering::Greater => break,
                Ordering::Less => {
                    if self.test {
                        self.found_smaller = true;
                        return;
                    }
                }
                Ordering::Equal => {}
            }
            self.used[i] = true;
            self.path.push((i, s));
            self.run(&st);
            self.path.pop();
            self.used[i] = false;
            if self.found_smaller {
                return;
            }
        }
        self.cur.truncate(p * n);
    }
}

fn check_bound(a: &IntMatrix, bound: usize) -> Result<()> {
    if a.rows() > bound {
        return Err(Error::Capacity(format!(
            "{} rows exceed the exhaustion bound {bound}; test minimality inside the search instead",
            a.rows()
        )));
    }
    Ok(())
}

/// The row-lex minimum of the Hadamard class of `a`, with a pair `(L, R)`
/// such that `L·a·Rᵀ` equals it.
pub fn minclass_with_witness_bounded(a: &IntMatrix, bound: usize) -> Result<(IntMatrix, HadamardPair)> {
    check_bound(a, bound)?;
    let (m, n) = (a.rows(), a.cols());
    let mut s = Search {
        a,
        test: false,
        best: vec![i64::MAX; m * n],
        best_path: Vec::new(),
        best_cols: None,
        found_smaller: false,
        path: Vec::with_capacity(m),
        cur: Vec::with_capacity(m * n),
        used: vec![false; m],
    };
    s.run(&ColState::new(n));
    let cols = s.best_cols.expect("at least one leaf is visited");
    let mut lperm = vec![0; m];
    let mut lsigns = vec![1i8; m];
    for (t, &(i, sg)) in s.best_path.iter().enumerate() {
        lperm[i] = t;
        lsigns[t] = sg as i8;
    }
    let mut rperm = vec![0; n];
    let mut rsigns = vec![1i8; n];
    for (t, &c) in cols.order.iter().enumerate() {
        rperm[c] = t;
        rsigns[t] = if cols.sign[c] == -1 { -1 } else { 1 };
    }
    let pair = HadamardPair::new(
        SignedPerm::from_parts_unchecked(lperm, lsigns),
        SignedPerm::from_parts_unchecked(rperm, rsigns),
    );
    let min = IntMatrix::new(m, n, s.best)?;
    debug_assert_eq!(pair.apply(a)?, min);
    Ok((min, pair))
}

pub fn minclass_with_witness(a: &IntMatrix) -> Result<(IntMatrix, HadamardPair)> {
    minclass_with_witness_bounded(a, DEFAULT_EXHAUSTION_BOUND)
}

pub fn minclass_bounded(a: &IntMatrix, bound: usize) -> Result<IntMatrix> {
    Ok(minclass_with_witness_bounded(a, bound)?.0)
}

/// `Min(a)`, the row-lex least member of the Hadamard class of `a`.
pub fn minclass(a: &IntMatrix) -> Result<IntMatrix> {
    minclass_bounded(a, DEFAULT_EXHAUSTION_BOUND)
}

pub fn is_minimum_bounded(a: &IntMatrix, bound: usize) -> Result<bool> {
    check_bound(a, bound)?;
    if neg_ord(a) != *a {
        return Ok(false);
    }
    let (m, n) = (a.rows(), a.cols());
    let mut s = Search {
        a,
        test: true,
        best: a.as_slice().to_vec(),
        best_path: Vec::new(),
        best_cols: None,
        found_smaller: false,
        path: Vec::with_capacity(m),
        cur: Vec::with_capacity(m * n),
        used: vec![false; m],
    };
    s.run(&ColState::new(n));
    Ok(!s.found_smaller)
}

/// True iff `a = minclass(a)`.
pub fn is_minimum(a: &IntMatrix) -> Result<bool> {
    is_minimum_bounded(a, DEFAULT_EXHAUSTION_BOUND)
}

/// Multiset of codes of the minimized `d`-row submatrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CodeInvariant {
    pub d: usize,
    /// Sorted ascending.
    pub codes: Vec<BigUint>,
}

/// Base-`(2L+1)` encoding of the entries read row-major, first entry most
/// significant, each digit offset by `L`.
pub fn code(m: &IntMatrix, l: i64) -> BigUint {
    let base = BigUint::from((2 * l + 1) as u64);
    let mut acc = BigUint::from(0u32);
    for &x in m.as_slice() {
        debug_assert!(x.abs() <= l);
        acc = acc * &base + BigUint::from((x + l) as u64);
    }
    acc
}

pub fn code_invariant(m: &IntMatrix, d: usize) -> Result<CodeInvariant> {
    code_invariant_bounded(m, d, DEFAULT_EXHAUSTION_BOUND)
}

pub fn code_invariant_bounded(m: &IntMatrix, d: usize, bound: usize) -> Result<CodeInvariant> {
    if d > m.rows() {
        return Err(Error::InvalidArgument(format!("depth {d} exceeds {} rows", m.rows())));
    }
    if d > bound {
        return Err(Error::Capacity(format!("depth {d} exceeds the exhaustion bound {bound}")));
    }
    let l = m.max_abs();
    let mut codes = Vec::new();
    for subset in combinations(m.rows(), d) {
        let sub = m.select_rows(&subset);
        codes.push(code(&minclass_bounded(&sub, bound)?, l));
    }
    codes.sort();
    Ok(CodeInvariant { d, codes })
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Every nonzero row and every nonzero column begins with a negative entry,
/// and the columns are non-decreasing.
pub fn has_minimum_shape(a: &IntMatrix) -> bool {
    let rows_ok = (0..a.rows()).all(|i| a.row(i).iter().find(|&&x| x != 0).is_none_or(|&x| x < 0));
    let cols: Vec<Vec<i64>> = (0..a.cols()).map(|j| a.column(j)).collect();
    let cols_ok = cols.iter().all(|c| c.iter().find(|&&x| x != 0).is_none_or(|&x| x < 0));
    rows_ok && cols_ok && cols.windows(2).all(|w| w[0] <= w[1])
}
