//! Representations of an integer as a sum of a fixed number of squares.

use serde::{Deserialize, Serialize};

/// One representation `n = Σ mult·s²` with `Σ mult = r`, stored as
/// `(s, mult)` terms with strictly decreasing `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SquaresRep {
    pub terms: Vec<(u64, usize)>,
}

impl SquaresRep {
    /// Number of squares, `Σ mult`.
    pub fn len(&self) -> usize {
        self.terms.iter().map(|t| t.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total(&self) -> u64 {
        self.terms.iter().map(|&(s, m)| s * s * m as u64).sum()
    }

    /// Square roots with multiplicity, largest first.
    pub fn roots(&self) -> Vec<u64> {
        self.terms.iter().flat_map(|&(s, m)| std::iter::repeat_n(s, m)).collect()
    }
}

/// All representations of `n` as a sum of `r` nonnegative squares whose roots
/// are at most `maxsq` (unbounded when `None`).
///
/// The order is that of the recursion: smallest leading root first, then
/// increasing multiplicity of the leading root.
pub fn nsoks(n: u64, r: usize, maxsq: Option<u64>) -> Vec<SquaresRep> {
    assert!(r >= 1, "nsoks needs r >= 1");
    let maxsq = maxsq.unwrap_or_else(|| isqrt(n).max(1));
    assert!(maxsq >= 1, "nsoks needs maxsq >= 1");
    let mut out = Vec::new();
    let mut stack = Vec::new();
    rec(n, r, maxsq, &mut stack, &mut out);
    out
}

/// Convenience count without keeping the list.
pub fn nsoks_count(n: u64, r: usize, maxsq: Option<u64>) -> usize {
    nsoks(n, r, maxsq).len()
}

fn emit(stack: &[(u64, usize)], tail: &[(u64, usize)], out: &mut Vec<SquaresRep>) {
    let mut terms: Vec<(u64, usize)> = stack.to_vec();
    terms.extend(tail.iter().copied().filter(|t| t.1 > 0));
    out.push(SquaresRep { terms });
}

// `stack` holds the larger roots chosen so far, in decreasing order.
fn rec(n: u64, r: usize, maxsq: u64, stack: &mut Vec<(u64, usize)>, out: &mut Vec<SquaresRep>) {
    if n == 0 {
        emit(stack, &[(0, r)], out);
        return;
    }
    if maxsq == 0 {
        return;
    }
    if maxsq == 1 {
        if n <= r as u64 {
            emit(stack, &[(1, n as usize), (0, r - n as usize)], out);
        }
        return;
    }
    let lo = ceil_sqrt_div(n, r as u64);
    let hi = isqrt(n).min(maxsq);
    for s in lo..=hi {
        let sq = s * s;
        for i in 1..=(n / sq) as usize {
            let rest = n - sq * i as u64;
            if i == r {
                if rest == 0 {
                    emit(stack, &[(s, r)], out);
                }
                break;
            }
            stack.push((s, i));
            rec(rest, r - i, s - 1, stack, out);
            stack.pop();
        }
    }
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Least `s` with `r·s² ≥ n`.
fn ceil_sqrt_div(n: u64, r: u64) -> u64 {
    let mut s = isqrt(n / r);
    while r * s * s < n {
        s += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Non-increasing root sequences by plain nested recursion.
    fn brute(n: u64, r: usize, maxsq: u64) -> BTreeSet<Vec<u64>> {
        fn go(n: u64, r: usize, cap: u64, cur: &mut Vec<u64>, out: &mut BTreeSet<Vec<u64>>) {
            if r == 0 {
                if n == 0 {
                    out.insert(cur.clone());
                }
                return;
            }
            for s in 0..=cap {
                if s * s > n {
                    break;
                }
                cur.push(s);
                go(n - s * s, r - 1, s, cur, out);
                cur.pop();
            }
        }
        let mut out = BTreeSet::new();
        go(n, r, maxsq, &mut Vec::new(), &mut out);
        out
    }

    fn check_invariants(n: u64, r: usize, reps: &[SquaresRep]) {
        for rep in reps {
            assert_eq!(rep.len(), r);
            assert_eq!(rep.total(), n);
            assert!(rep.terms.windows(2).all(|w| w[0].0 > w[1].0), "{rep:?}");
            assert!(rep.terms.iter().all(|t| t.1 > 0));
        }
    }

    #[test]
    fn examples() {
        let r = nsoks(25, 4, None);
        assert_eq!(r.len(), 3);
        let got: BTreeSet<Vec<u64>> = r.iter().map(|x| x.roots()).collect();
        let want: BTreeSet<Vec<u64>> = [vec![5, 0, 0, 0], vec![4, 3, 0, 0], vec![4, 2, 2, 1]].into_iter().collect();
        assert_eq!(got, want);
        assert_eq!(nsoks(0, 3, None), vec![SquaresRep { terms: vec![(0, 3)] }]);
        assert!(nsoks(25, 4, Some(1)).is_empty());
        assert_eq!(nsoks(4, 4, Some(1)), vec![SquaresRep { terms: vec![(1, 4)] }]);
    }

    #[test]
    fn agrees_with_brute_force() {
        for n in 0..=120u64 {
            for r in 1..=8usize {
                let reps = nsoks(n, r, None);
                check_invariants(n, r, &reps);
                let got: Vec<Vec<u64>> = reps.iter().map(|x| x.roots()).collect();
                let set: BTreeSet<Vec<u64>> = got.iter().cloned().collect();
                assert_eq!(set.len(), got.len(), "duplicates for ({n},{r})");
                assert_eq!(set, brute(n, r, isqrt(n)), "mismatch for ({n},{r})");
            }
        }
    }

    #[test]
    fn bounded_results_are_monotone() {
        for n in [25u64, 50, 99] {
            for r in 1..=6 {
                for m in 1..isqrt(n) {
                    let small: BTreeSet<_> = nsoks(n, r, Some(m)).into_iter().collect();
                    let big: BTreeSet<_> = nsoks(n, r, Some(m + 1)).into_iter().collect();
                    assert!(small.is_subset(&big));
                    let want = brute(n, r, m);
                    assert_eq!(small.iter().map(|x| x.roots()).collect::<BTreeSet<_>>(), want);
                }
            }
        }
    }

    #[test]
    fn two_hundred_golden() {
        assert_eq!(nsoks(200, 200, None).len(), 27482);
    }
}
