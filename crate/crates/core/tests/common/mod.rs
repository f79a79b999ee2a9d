#![allow(dead_code)]

use std::sync::OnceLock;

use iwmat::canon::code_invariant;
use iwmat::config::EngineConfig;
use iwmat::library::Library;
use iwmat::IntMatrix;

pub const WEIGHT: u64 = 25;
pub const TOP: usize = 7;

/// Primitive data for sizes 1..=7, built once per test binary.
pub fn library() -> &'static Library {
    static LIB: OnceLock<Library> = OnceLock::new();
    LIB.get_or_init(|| Library::build(TOP, WEIGHT, &EngineConfig::default(), true).expect("library build"))
}

/// Published representatives, one per primitive TH-class, with their class names.
pub fn published_reps() -> Vec<(String, IntMatrix)> {
    let text = include_str!("../data/primitive_reps_25.txt");
    let mut out = Vec::new();
    for block in text.split("\n\n").filter(|b| !b.trim().is_empty()) {
        let (head, body) = block.trim().split_once('\n').expect("name line");
        let name = head.strip_prefix("class ").expect("class header").to_string();
        out.push((name, IntMatrix::parse_text(body).expect("matrix")));
    }
    out
}

/// Published per-class data: name, |Aut|, class cardinality, and the
/// symmetric automorphism orders of its SH-subclasses.
pub const PUBLISHED_CLASSES: &[(&str, u64, u64, &[u64])] = &[
    ("1.1", 2, 2, &[2]),
    ("2.1", 4, 16, &[2, 2]),
    ("4.1", 16, 9216, &[8, 8, 8, 8, 4]),
    ("4.2", 8, 18432, &[2]),
    ("5.1", 8, 1843200, &[4, 4, 4, 4]),
    ("5.2", 240, 61440, &[240, 240, 24, 24, 16, 16]),
    ("6.1", 12, 176947200, &[4, 4]),
    ("6.2", 12, 176947200, &[2, 6]),
    ("6.3", 4, 530841600, &[2]),
    ("6.4", 32, 66355200, &[8, 16, 16, 16, 16, 16, 16, 32, 32, 32, 32]),
    ("6.5", 24, 88473600, &[4, 4, 12, 12]),
    ("6.6", 16, 132710400, &[8, 8, 8, 8, 4]),
    ("6.7", 24, 88473600, &[4, 4, 12, 12]),
    ("6.8", 8, 265420800, &[]),
    ("6.9", 16, 132710400, &[]),
    ("6.10", 144, 14745600, &[8, 24, 24, 72, 12]),
    ("6.11", 12, 176947200, &[6]),
    ("6.12", 48, 44236800, &[8, 24, 4]),
    ("6.13", 12, 176947200, &[]),
    ("7.1", 8, 52022476800, &[4, 4, 4, 4]),
    ("7.2", 4, 104044953600, &[4, 4, 4, 4]),
    ("7.3", 24, 17340825600, &[8, 8, 8, 8, 24, 24, 24, 24]),
    ("7.4", 48, 8670412800, &[16, 16, 16, 16, 48, 48, 48, 48]),
    ("7.5", 6, 69363302400, &[2, 2]),
    ("7.6", 2, 208089907200, &[]),
    ("7.7", 4, 104044953600, &[4, 4, 4, 4]),
    ("7.8", 2, 208089907200, &[2, 2]),
    ("7.9", 1440, 289013760, &[32, 32, 96, 96, 96, 96, 1440, 1440]),
    ("7.10", 16, 26011238400, &[8, 8, 8, 8, 8, 8, 8, 8]),
    ("7.11", 8, 52022476800, &[4, 4, 4, 4]),
    ("7.12", 240, 1734082560, &[16, 16, 24, 24, 240, 240]),
    ("7.13", 24, 17340825600, &[8, 8, 8, 8, 24, 24, 24, 24]),
    ("7.14", 4, 104044953600, &[4, 4, 4, 4]),
    ("7.15", 2, 208089907200, &[2, 2]),
    ("7.16", 6, 69363302400, &[2, 2]),
    ("7.17", 8, 52022476800, &[4, 4, 4, 4]),
    ("7.18", 8, 52022476800, &[]),
    ("7.19", 48, 8670412800, &[8, 8, 16, 16, 48, 48]),
];

/// Index into `library().primitives.classes` of the class containing `a`,
/// matched by code invariant and confirmed by an explicit equivalence.
pub fn match_class(a: &IntMatrix) -> Option<usize> {
    let lib = library();
    let d = a.rows().min(4);
    let want = code_invariant(a, d).ok()?;
    lib.primitives.classes.iter().position(|c| {
        c.size() == a.rows()
            && code_invariant(&c.representative, d).ok().as_ref() == Some(&want)
            && iwmat::autiso::find_isomorphism(&c.representative, a).ok().flatten().is_some()
    })
}

/// Direct count of symmetric (`sign = 1`) or antisymmetric (`sign = -1`)
/// n×n integer matrices with `A·Aᵀ = k·I`, filling rows one at a time.
pub fn brute_symmetric_count(n: usize, k: i64, sign: i64) -> u64 {
    fn vectors(len: usize, norm: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            if norm == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut x = 0;
        while (x + 1) * (x + 1) <= norm {
            x += 1;
        }
        for v in -x..=x {
            cur.push(v);
            vectors(len, norm - v * v, cur, out);
            cur.pop();
        }
    }
    fn go(n: usize, k: i64, sign: i64, rows: &mut Vec<Vec<i64>>, tails: &[Vec<Vec<Vec<i64>>>]) -> u64 {
        let i = rows.len();
        if i == n {
            return 1;
        }
        let head: Vec<i64> = (0..i).map(|j| sign * rows[j][i]).collect();
        let used: i64 = head.iter().map(|v| v * v).sum();
        if used > k {
            return 0;
        }
        let mut total = 0;
        for tail in &tails[n - i][(k - used) as usize] {
            if sign < 0 && tail[0] != 0 {
                continue;
            }
            let row: Vec<i64> = head.iter().chain(tail).copied().collect();
            if rows.iter().all(|r| r.iter().zip(&row).map(|(a, b)| a * b).sum::<i64>() == 0) {
                rows.push(row);
                total += go(n, k, sign, rows, tails);
                rows.pop();
            }
        }
        total
    }
    let tails: Vec<Vec<Vec<Vec<i64>>>> = (0..=n)
        .map(|len| {
            (0..=k)
                .map(|norm| {
                    let mut out = Vec::new();
                    vectors(len, norm, &mut Vec::new(), &mut out);
                    out
                })
                .collect()
        })
        .collect();
    go(n, k, sign, &mut Vec::new(), &tails)
}
