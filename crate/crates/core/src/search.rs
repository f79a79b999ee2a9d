//! Orderly generation of Hadamard-class representatives of `PIW(m, n, k)`.
//!
//! Rows are added in increasing row-lex order. While the prefix has at most
//! `mindepth` rows every new prefix must be a class minimum; deeper prefixes
//! are only required to keep the Gram condition, which yields a superset that
//! [`dedup_classes`] reduces to one representative per class.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{code_invariant, is_minimum, minclass, CodeInvariant, DEFAULT_EXHAUSTION_BOUND};
use crate::error::{Error, Result};
use crate::matrix::{dot, IntMatrix};
use crate::nsoks::{nsoks, SquaresRep};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
#[derive(Default)]
pub struct SearchConfig {
    /// Prefixes up to this many rows are tested for minimality; `None` means `min(m, 4)`.
    pub mindepth: Option<usize>,
    /// Largest allowed absolute entry.
    pub entry_cap: Option<u64>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}


pub const DEFAULT_MINDEPTH: usize = 4;

/// Every distinct vector of length `n` whose entries, up to order and sign,
/// are the roots of one of the representations. Sorted row-lex ascending.
pub fn signed_perms_of_reps(soks: &[SquaresRep], n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for rep in soks {
        assert_eq!(rep.len(), n, "representation length differs from the row length");
        let mut vals: Vec<i64> = rep.roots().into_iter().map(|s| s as i64).collect();
        vals.sort_unstable();
        loop {
            push_signings(&vals, &mut out);
            if !next_multiset_permutation(&mut vals) {
                break;
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn push_signings(vals: &[i64], out: &mut Vec<Vec<i64>>) {
    let nz: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] != 0).collect();
    for mask in 0u64..(1u64 << nz.len()) {
        let mut v = vals.to_vec();
        for (b, &i) in nz.iter().enumerate() {
            if mask >> b & 1 == 1 {
                v[i] = -v[i];
            }
        }
        out.push(v);
    }
}

fn next_multiset_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Minimum of a single row: entries negated to be non-positive and sorted.
fn min_row(v: &[i64]) -> Vec<i64> {
    let mut r: Vec<i64> = v.iter().map(|x| -x.abs()).collect();
    r.sort_unstable();
    r
}

struct Ctx<'a> {
    m: usize,
    k: i64,
    mindepth: usize,
    rows: &'a [Vec<i64>],
}

impl Ctx<'_> {
    fn prefix_matrix(&self, path: &[usize]) -> IntMatrix {
        let rows: Vec<&[i64]> = path.iter().map(|&i| self.rows[i].as_slice()).collect();
        IntMatrix::from_rows(&rows).expect("rows share one length")
    }

    /// Extends `path` by `w`, returning the child's candidate list when the
    /// child survives.
    fn child(&self, path: &[usize], colnorm: &[i64], cands: &[usize], t: usize) -> Option<(Vec<usize>, Vec<i64>)> {
        let w = cands[t];
        let wr = &self.rows[w];
        let p = path.len() + 1;
        let mut cn = colnorm.to_vec();
        for (c, x) in cn.iter_mut().zip(wr) {
            *c += x * x;
        }
        if p <= self.mindepth && p > 1 {
            let mut ext = path.to_vec();
            ext.push(w);
            if !is_minimum(&self.prefix_matrix(&ext)).expect("mindepth is within the exhaustion bound") {
                return None;
            }
        }
        let need = self.m - p;
        let next: Vec<usize> = if need == 0 {
            Vec::new()
        } else {
            cands[t + 1..]
                .iter()
                .copied()
                .filter(|&u| {
                    let ur = &self.rows[u];
                    dot(ur, wr) == 0 && ur.iter().zip(&cn).all(|(x, c)| c + x * x <= self.k)
                })
                .collect()
        };
        if next.len() < need {
            return None;
        }
        Some((next, cn))
    }

    fn dfs(&self, path: &mut Vec<usize>, colnorm: &[i64], cands: &[usize], out: &mut Vec<IntMatrix>) {
        if path.len() == self.m {
            out.push(self.prefix_matrix(path));
            return;
        }
        let need = self.m - path.len();
        for t in 0..cands.len() {
            if cands.len() - t < need {
                break;
            }
            if let Some((next, cn)) = self.child(path, colnorm, cands, t) {
                path.push(cands[t]);
                self.dfs(path, &cn, &next, out);
                path.pop();
            }
        }
    }
}

/// Hadamard-class representatives of `PIW(m, n, k)`.
///
/// With `mindepth = m` the result is exactly the list of class minima, sorted.
/// With a smaller `mindepth` it contains every class minimum and possibly
/// further members of the same classes.
pub fn rep_piw(m: usize, n: usize, k: u64, config: &SearchConfig) -> Result<Vec<IntMatrix>> {
    if m == 0 || n == 0 || m > n || k == 0 {
        return Err(Error::InvalidArgument(format!("need 1 <= m <= n and k >= 1, got ({m}, {n}, {k})")));
    }
    let mindepth = config.mindepth.unwrap_or(m.min(DEFAULT_MINDEPTH));
    if mindepth > m {
        return Err(Error::InvalidArgument(format!("mindepth {mindepth} exceeds {m} rows")));
    }
    if mindepth > DEFAULT_EXHAUSTION_BOUND {
        return Err(Error::Capacity(format!("mindepth {mindepth} exceeds the exhaustion bound")));
    }
    let run = || rep_piw_inner(m, n, k, mindepth, config.entry_cap);
    match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn rep_piw_inner(m: usize, n: usize, k: u64, mindepth: usize, entry_cap: Option<u64>) -> Result<Vec<IntMatrix>> {
    if entry_cap == Some(0) {
        return Ok(Vec::new());
    }
    let soks = nsoks(k, n, entry_cap);
    let rows = signed_perms_of_reps(&soks, n);
    let mut firsts: Vec<usize> = soks
        .iter()
        .map(|rep| {
            let v: Vec<i64> = rep.roots().into_iter().map(|s| s as i64).collect();
            let r = min_row(&v);
            rows.binary_search(&r).expect("minimum row is a signed permutation of its representation")
        })
        .collect();
    firsts.sort_unstable();
    let ctx = Ctx { m, k: k as i64, mindepth, rows: &rows };

    // Split work at the second row so that large first-row subtrees spread out.
    let mut tasks: Vec<(Vec<usize>, Vec<i64>, Vec<usize>)> = Vec::new();
    let mut done: Vec<IntMatrix> = Vec::new();
    for &v in &firsts {
        let vr = &rows[v];
        let colnorm: Vec<i64> = vr.iter().map(|x| x * x).collect();
        if m == 1 {
            done.push(ctx.prefix_matrix(&[v]));
            continue;
        }
        let cands: Vec<usize> = (v + 1..rows.len())
            .filter(|&u| dot(&rows[u], vr) == 0 && rows[u].iter().zip(&colnorm).all(|(x, c)| c + x * x <= ctx.k))
            .collect();
        if cands.len() < m - 1 {
            continue;
        }
        tasks.push((vec![v], colnorm, cands));
    }
    let mut second: Vec<(Vec<usize>, Vec<i64>, Vec<usize>)> = tasks
        .par_iter()
        .flat_map_iter(|(path, cn, cands)| {
            (0..cands.len())
                .filter_map(|t| {
                    ctx.child(path, cn, cands, t).map(|(next, cn2)| {
                        let mut p2 = path.clone();
                        p2.push(cands[t]);
                        (p2, cn2, next)
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    second.sort_by(|a, b| a.0.cmp(&b.0));
    let found: Vec<IntMatrix> = second
        .par_iter()
        .flat_map_iter(|(path, cn, cands)| {
            let mut out = Vec::new();
            let mut p = path.clone();
            ctx.dfs(&mut p, cn, cands, &mut out);
            out
        })
        .collect();
    done.extend(found);
    done.sort();
    Ok(done)
}

/// One Hadamard class found by [`dedup_classes`].
#[derive(Clone, Debug)]
pub struct ClassSeed {
    pub representative: IntMatrix,
    /// Number of input matrices that fell into this class.
    pub members: usize,
    pub invariant: CodeInvariant,
}

/// Partitions `candidates` into Hadamard classes. Candidates are bucketed by
/// their code invariant and compared with `find_isomorphism` inside each
/// bucket; the representative is the class minimum when the row count is
/// within the exhaustion bound, otherwise the least candidate seen.
pub fn dedup_classes(candidates: &[IntMatrix]) -> Result<Vec<ClassSeed>> {
    use std::collections::BTreeMap;
    let Some(first) = candidates.first() else {
        return Ok(Vec::new());
    };
    let (m, n) = (first.rows(), first.cols());
    if candidates.iter().any(|c| c.rows() != m || c.cols() != n) {
        return Err(Error::Dimension("candidates differ in shape".into()));
    }
    let d = m.min(DEFAULT_MINDEPTH);
    let invs: Vec<CodeInvariant> = candidates.par_iter().map(|c| code_invariant(c, d)).collect::<Result<_>>()?;
    let mut buckets: BTreeMap<CodeInvariant, Vec<usize>> = BTreeMap::new();
    for (i, inv) in invs.into_iter().enumerate() {
        buckets.entry(inv).or_default().push(i);
    }
    let buckets: Vec<(CodeInvariant, Vec<usize>)> = buckets.into_iter().collect();
    let per_bucket: Vec<Vec<ClassSeed>> = buckets
        .into_par_iter()
        .map(|(inv, idx)| -> Result<Vec<ClassSeed>> {
            let mut seeds: Vec<(IntMatrix, usize)> = Vec::new();
            for i in idx {
                let c = &candidates[i];
                let mut hit = false;
                for s in seeds.iter_mut() {
                    if crate::autiso::find_isomorphism(&s.0, c)?.is_some() {
                        s.1 += 1;
                        if *c < s.0 {
                            s.0 = c.clone();
                        }
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    seeds.push((c.clone(), 1));
                }
            }
            seeds
                .into_iter()
                .map(|(rep, members)| {
                    let representative = if m <= DEFAULT_EXHAUSTION_BOUND { minclass(&rep)? } else { rep };
                    Ok(ClassSeed { representative, members, invariant: inv.clone() })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<ClassSeed> = per_bucket.into_iter().flatten().collect();
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}

/// Class representatives of `PIW(m, n, k)`: [`rep_piw`] followed by
/// [`dedup_classes`] unless every prefix was already tested.
pub fn classify_piw(m: usize, n: usize, k: u64, config: &SearchConfig) -> Result<Vec<IntMatrix>> {
    let reps = rep_piw(m, n, k, config)?;
    let mindepth = config.mindepth.unwrap_or(m.min(DEFAULT_MINDEPTH));
    if mindepth == m {
        return Ok(reps);
    }
    Ok(dedup_classes(&reps)?.into_iter().map(|s| s.representative).collect())
}
