//! End-to-end acceptance checks, one test per criterion. Each test prints a
//! single `criterion N ...: PASS` or `FAIL` line listing every mismatch.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use common::{library, published_reps, PUBLISHED_CLASSES, TOP, WEIGHT};
use iwmat::autiso::{new_aut, NewAut, DEFAULT_STREAM_BOUND, DEFAULT_TUPLE_LENGTH};
use iwmat::canon::{code_invariant, has_minimum_shape, is_minimum, minclass};
use iwmat::config::EngineConfig;
use iwmat::counting::{count_iw, count_sym_iw, iw_series, monomial_group_order};
use iwmat::library::Library;
use iwmat::matrix::gram_check;
use iwmat::nsoks::{nsoks, SquaresRep};
use iwmat::projective::{projective_weighing, verify_projective_symmetric_count, ProjectiveSpace};
use iwmat::search::{classify_piw, SearchConfig};
use iwmat::structure::assemble_full_classification;
use iwmat::symmetry::{find_symmetric_member, symmetric_counts, Sign};
use iwmat::{HadamardPair, IntMatrix, SignedPerm};

fn verdict(n: u32, title: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {n} ({title}): PASS");
    } else {
        println!("criterion {n} ({title}): FAIL");
        for f in failures {
            println!("    {f}");
        }
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:#?}");
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn random_pair(rng: &mut StdRng, m: usize, n: usize) -> HadamardPair {
    let mut side = |k: usize| {
        let mut p: Vec<usize> = (0..k).collect();
        p.shuffle(rng);
        let s: Vec<i8> = (0..k).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
        SignedPerm::new(p, s).unwrap()
    };
    let l = side(m);
    HadamardPair::new(l, side(n))
}

/// Multisets `s₁ ≥ s₂ ≥ … ≥ s_r ≥ 0` with `Σ sᵢ² = n`, by descending choice.
fn squares_oracle(n: u64, r: usize) -> BTreeSet<Vec<u64>> {
    fn go(left: u64, slots: usize, cap: u64, cur: &mut Vec<u64>, out: &mut BTreeSet<Vec<u64>>) {
        if slots == 0 {
            if left == 0 {
                out.insert(cur.clone());
            }
            return;
        }
        for s in (0..=cap).rev() {
            if s * s > left {
                continue;
            }
            cur.push(s);
            go(left - s * s, slots - 1, s, cur, out);
            cur.pop();
        }
    }
    let mut out = BTreeSet::new();
    let cap = (0..).take_while(|s: &u64| s * s <= n).last().unwrap();
    go(n, r, cap, &mut Vec::new(), &mut out);
    out
}

#[test]
fn criterion_01_sums_of_squares() {
    let mut f = Vec::new();
    let t = Instant::now();
    let reps = nsoks(200, 200, None);
    let dt = t.elapsed();
    check(&mut f, reps.len() == 27482, || format!("nsoks(200, 200) gave {} representations", reps.len()));
    check(&mut f, dt.as_secs_f64() < 5.0, || format!("nsoks(200, 200) took {dt:?}"));
    for n in 0..=120u64 {
        for r in 1..=8usize {
            let got: BTreeSet<Vec<u64>> = nsoks(n, r, None).iter().map(SquaresRep::roots).collect();
            if got != squares_oracle(n, r) {
                f.push(format!("nsoks({n}, {r}) differs from enumeration"));
            }
        }
    }
    verdict(1, "sums of squares", &f);
}

#[test]
fn criterion_02_small_brute_force() {
    let mut f = Vec::new();
    let t = Instant::now();
    let small = Library::build(2, WEIGHT, &EngineConfig::default(), false).unwrap();
    for n in 1..=2usize {
        let mut members = Vec::new();
        let cells = n * n;
        let mut digits = vec![-5i64; cells];
        loop {
            let a = IntMatrix::new(n, n, digits.clone()).unwrap();
            if gram_check(&a, 25) {
                members.push(a);
            }
            let mut i = 0;
            while i < cells && digits[i] == 5 {
                digits[i] = -5;
                i += 1;
            }
            if i == cells {
                break;
            }
            digits[i] += 1;
        }
        let buckets: BTreeSet<IntMatrix> = members.iter().map(|a| minclass(a).unwrap()).collect();
        let reps: BTreeSet<IntMatrix> = classify_piw(n, n, 25, &SearchConfig::default()).unwrap().into_iter().collect();
        let counted = count_iw(&small.primitives.counts(), n).unwrap();
        let want = [(2usize, 1usize), (24, 2)][n - 1];
        check(&mut f, members.len() == want.0, || format!("IW({n},25) brute force gave {}", members.len()));
        check(&mut f, buckets.len() == want.1, || format!("IW({n},25) has {} minclass buckets", buckets.len()));
        check(&mut f, buckets == reps, || format!("search representatives differ from minclass buckets at n = {n}"));
        check(&mut f, counted == big(members.len() as u64), || format!("count_iw({n}) = {counted}"));
    }
    let dt = t.elapsed();
    check(&mut f, dt.as_secs_f64() < 1.0, || format!("took {dt:?}"));
    verdict(2, "brute-force equivalence at sizes 1 and 2", &f);
}

#[test]
fn criterion_03_primitive_classification() {
    let mut f = Vec::new();
    let lib = library();
    let want = [1usize, 1, 0, 2, 2, 13, 19];
    for (s, &w) in (1..=TOP).zip(&want) {
        let th = lib.primitives.of_size(s).filter(|(_, c)| c.th_partner.as_ref().is_none_or(|p| c.name < *p)).count();
        check(&mut f, th == w, || format!("size {s}: {th} primitive TH-classes, expected {w}"));
    }
    // published matrices map one-to-one onto TH-classes
    let mut seen = BTreeSet::new();
    let mut non_symmetric = BTreeSet::new();
    for (name, a) in published_reps() {
        match common::match_class(&a) {
            None => f.push(format!("published {name} matches no computed class")),
            Some(i) => {
                let c = &lib.primitives.classes[i];
                let key = c.th_partner.clone().filter(|p| *p < c.name).unwrap_or_else(|| c.name.clone());
                check(&mut f, seen.insert(key.clone()), || format!("published {name} repeats TH-class {key}"));
                if !c.symmetric_class {
                    non_symmetric.insert(name);
                }
            }
        }
    }
    let expected: BTreeSet<String> = ["6.8", "6.9", "6.13", "7.6", "7.18"].iter().map(|s| s.to_string()).collect();
    check(&mut f, non_symmetric == expected, || format!("non-symmetric classes {non_symmetric:?}"));
    verdict(3, "primitive TH-classes through size 7", &f);
}

#[test]
fn criterion_04_automorphism_data() {
    let mut f = Vec::new();
    let lib = library();
    let published: BTreeMap<&str, (u64, u64)> = PUBLISHED_CLASSES.iter().map(|&(n, a, c, _)| (n, (a, c))).collect();
    for (name, a) in published_reps() {
        let Some(i) = common::match_class(&a) else {
            f.push(format!("{name}: no computed class"));
            continue;
        };
        let c = &lib.primitives.classes[i];
        let (aut, card) = published[name.as_str()];
        check(&mut f, c.aut.order == big(aut) && c.cardinality == big(card), || {
            format!("{name} (computed {}): |Aut| {} cardinality {}, expected {aut} {card}", c.name, c.aut.order, c.cardinality)
        });
    }
    for c in &lib.primitives.classes {
        let r = DEFAULT_TUPLE_LENGTH.min(c.size());
        check(&mut f, new_aut(&c.representative, &c.aut, r).unwrap() == NewAut::Verified, || format!("{} not certified", c.name));
    }
    verdict(4, "automorphism orders and class cardinalities", &f);
}

#[test]
fn criterion_05_full_classification() {
    let mut f = Vec::new();
    let lib = library();
    let t = Instant::now();
    let full = assemble_full_classification(&lib.primitives, 7).unwrap();
    let dt = t.elapsed();
    let rows: Vec<(String, usize, usize)> =
        full.shape_table(&lib.primitives.size_letters()).into_iter().map(|r| (r.shape, r.th_count, r.h_count)).collect();
    let want: Vec<(String, usize, usize)> = [
        ("7A", 1, 1),
        ("5A+B", 1, 1),
        ("3A+2B", 1, 1),
        ("A+3B", 1, 1),
        ("3A+C", 2, 2),
        ("A+B+C", 2, 2),
        ("2A+D", 2, 2),
        ("B+D", 2, 2),
        ("A+E", 13, 16),
        ("F", 19, 21),
    ]
    .iter()
    .map(|&(s, t, h)| (s.to_string(), t, h))
    .collect();
    check(&mut f, (full.h_count, full.th_count) == (49, 44), || format!("{} H / {} TH classes", full.h_count, full.th_count));
    check(&mut f, rows == want, || format!("shape table {rows:?}"));
    check(&mut f, dt.as_secs_f64() < 1.0, || format!("assembly took {dt:?}"));
    verdict(5, "full classification of IW(7,25)", &f);
}

#[test]
fn criterion_06_symmetric_classification() {
    let mut f = Vec::new();
    let lib = library();
    let published: BTreeMap<&str, &[u64]> = PUBLISHED_CLASSES.iter().map(|&(n, _, _, s)| (n, s)).collect();
    for (name, a) in published_reps() {
        let Some(i) = common::match_class(&a) else {
            f.push(format!("{name}: no computed class"));
            continue;
        };
        let mut got: Vec<BigUint> = lib.symmetric[i].symmetric_saut.clone();
        got.sort();
        let mut want: Vec<BigUint> = published[name.as_str()].iter().map(|&x| big(x)).collect();
        want.sort();
        check(&mut f, got == want, || {
            format!(
                "{name} (computed {}): SAut orders {:?}, published {:?}",
                lib.primitives.classes[i].name,
                got.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                want.iter().map(|x| x.to_string()).collect::<Vec<_>>()
            )
        });
    }
    verdict(6, "symmetric subclasses per primitive class", &f);
}

#[test]
fn criterion_07_counting() {
    let mut f = Vec::new();
    let lib = library();
    let counts = lib.primitives.counts();
    let sym = |sign, n| count_sym_iw(&symmetric_counts(&lib.primitives, &lib.symmetric, sign).unwrap(), n).unwrap();
    let z = iw_series(&counts, 4).unwrap();
    let want = [(1, 1), (1, 2), (3, 8), (7, 48), (97, 384)];
    for (i, &(p, q)) in want.iter().enumerate() {
        let c = BigRational::new(p.into(), q.into());
        check(&mut f, z.coeff(i) == c, || format!("[t^{i}] = {}, expected {c}", z.coeff(i)));
    }
    let expect = |f: &mut Vec<String>, what: &str, got: BigUint, want: u64| {
        check(f, got == big(want), || format!("{what} = {got}, expected {want}"));
    };
    expect(&mut f, "|IW(4,25)|", count_iw(&counts, 4).unwrap(), 37248);
    expect(&mut f, "|SIW(4,25)|", sym(Sign::Symmetric, 4), 769);
    expect(&mut f, "|AIW(4,25)|", sym(Sign::Antisymmetric, 4), 60);
    expect(&mut f, "|IW(7,25)|", count_iw(&counts, 7).unwrap(), 1_915_159_357_440);
    expect(&mut f, "|SIW(7,25)|", sym(Sign::Symmetric, 7), 14_813_808);
    expect(&mut f, "|AIW(7,25)|", sym(Sign::Antisymmetric, 7), 0);
    let full = assemble_full_classification(&lib.primitives, 7).unwrap();
    let ratio = (full.primitive_cardinality() * big(1_000_000) / full.total_cardinality()).to_f64().unwrap() / 1e6;
    check(&mut f, (ratio - 0.848).abs() <= 0.0005, || format!("primitive fraction {ratio}"));
    verdict(7, "counting", &f);
}

#[test]
fn criterion_08_orbit_stabilizer() {
    let mut f = Vec::new();
    let lib = library();
    for n in 1..=TOP {
        let full = assemble_full_classification(&lib.primitives, n).unwrap();
        let group = monomial_group_order(n).pow(2);
        for c in &full.records {
            check(&mut f, &c.cardinality * &c.aut.order == group, || format!("size {n} class {}: |class|·|Aut| ≠ |Mon|²", c.name));
        }
        let total = count_iw(&lib.primitives.counts(), n).unwrap();
        check(&mut f, full.total_cardinality() == total, || format!("size {n}: Σ|class| = {} but count = {total}", full.total_cardinality()));
    }
    verdict(8, "orbit-stabilizer consistency", &f);
}

#[test]
fn criterion_09_projective_plane() {
    let mut f = Vec::new();
    let t = Instant::now();
    let space = ProjectiveSpace::new(2, 3).unwrap();
    let pw = projective_weighing(&space);
    check(&mut f, pw.rows() == 13 && pw.is_symmetric() && gram_check(&pw, 9) && pw.max_abs() == 1, || "PW is not a symmetric W(13,9)".into());
    let c = verify_projective_symmetric_count(&space, false, DEFAULT_STREAM_BOUND).unwrap();
    check(&mut f, c.aut_order == big(11232), || format!("|Aut(PW)| = {}", c.aut_order));
    check(&mut f, c.computed == 2 && c.predicted == 2, || format!("{} SH-classes, predicted {}", c.computed, c.predicted));
    let dt = t.elapsed();
    check(&mut f, dt.as_secs() < 600, || format!("took {dt:?}"));
    verdict(9, "projective plane over F3", &f);
}

fn is_power_of_two_or_zero(x: usize) -> bool {
    x & x.wrapping_sub(1) == 0
}

#[test]
fn criterion_10_properties() {
    let mut f = Vec::new();
    let lib = library();
    let mut rng = StdRng::seed_from_u64(0x1f25);
    for (i, c) in lib.primitives.classes.iter().enumerate() {
        let a = &c.representative;
        let n = a.rows();
        let name = &c.name;
        check(&mut f, minclass(a).unwrap() == *a, || format!("{name}: representative is not its own minimum"));
        for _ in 0..4 {
            let b = random_pair(&mut rng, n, n).apply(a).unwrap();
            check(&mut f, minclass(&b).unwrap() == *a, || format!("{name}: minclass not invariant"));
            if n >= 4 {
                check(&mut f, code_invariant(&b, 4).unwrap() == code_invariant(a, 4).unwrap(), || format!("{name}: code invariant moved"));
            }
        }
        check(&mut f, has_minimum_shape(a), || format!("{name}: minimum lacks sign and column order shape"));
        for p in 1..=n {
            check(&mut f, is_minimum(&a.prefix(p)).unwrap(), || format!("{name}: prefix of {p} rows is not minimal"));
        }
        let s = &lib.symmetric[i];
        if c.aut.is_abelian() {
            for sign in [Sign::Symmetric, Sign::Antisymmetric] {
                let k = s.reps(sign).0.len();
                check(&mut f, is_power_of_two_or_zero(k), || format!("{name}: abelian group with {k} {sign:?} subclasses"));
            }
        }
        if n % 2 == 1 {
            check(&mut f, s.antisymmetric_reps.is_empty(), || format!("{name}: antisymmetric member at odd size"));
            let none = find_symmetric_member(a, &c.aut, Sign::Antisymmetric, DEFAULT_STREAM_BOUND).unwrap().is_none();
            check(&mut f, none, || format!("{name}: antisymmetric search succeeded at odd size"));
        }
    }
    for n in 4..=TOP {
        let invs: Vec<_> = lib.primitives.of_size(n).map(|(_, c)| code_invariant(&c.representative, 4).unwrap()).collect();
        let distinct: BTreeSet<_> = invs.iter().collect();
        check(&mut f, distinct.len() == invs.len(), || format!("size {n}: code invariants collide across classes"));
    }
    verdict(10, "structural properties", &f);
}
