//! Independent checks of the symmetric data: totals against row-by-row
//! enumeration, and subclass distinctness against explicit conjugation orbits.

mod common;

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use common::{brute_symmetric_count, library};
use iwmat::autiso::find_isomorphism;
use iwmat::counting::{count_sym_iw, factorial};
use iwmat::symmetry::{symmetric_counts, Sign};
use iwmat::IntMatrix;

fn engine_count(sign: Sign, n: usize) -> BigUint {
    let lib = library();
    count_sym_iw(&symmetric_counts(&lib.primitives, &lib.symmetric, sign).unwrap(), n).unwrap()
}

#[test]
fn symmetric_totals_match_enumeration() {
    for n in 1..=6 {
        assert_eq!(engine_count(Sign::Symmetric, n), BigUint::from(brute_symmetric_count(n, 25, 1)), "symmetric, n = {n}");
        assert_eq!(engine_count(Sign::Antisymmetric, n), BigUint::from(brute_symmetric_count(n, 25, -1)), "antisymmetric, n = {n}");
    }
}

#[test]
fn known_small_totals() {
    let sym: Vec<u64> = (1..=6).map(|n| engine_count(Sign::Symmetric, n).to_u64().unwrap()).collect();
    assert_eq!(sym, [2, 14, 68, 1084, 13784, 491048]);
    let anti: Vec<u64> = (1..=6).map(|n| engine_count(Sign::Antisymmetric, n).to_u64().unwrap()).collect();
    assert_eq!(anti, [0, 2, 0, 60, 0, 15000]);
}

/// `T·X·Tᵀ` for the signed permutation with `perm[i] = target`.
fn conjugate(x: &IntMatrix, perm: &[usize], signs: &[i64]) -> IntMatrix {
    let n = x.rows();
    let mut y = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            y.set(perm[i], perm[j], signs[i] * signs[j] * x.get(i, j));
        }
    }
    y
}

/// Orbit of `x` under conjugation by all signed permutations, generated by a
/// transposition, an n-cycle and one sign change.
fn conjugation_orbit(x: &IntMatrix) -> HashSet<IntMatrix> {
    let n = x.rows();
    let id: Vec<usize> = (0..n).collect();
    let ones = vec![1i64; n];
    let mut gens = vec![(id.clone(), {
        let mut s = ones.clone();
        s[0] = -1;
        s
    })];
    if n > 1 {
        let mut swap = id.clone();
        swap.swap(0, 1);
        gens.push((swap, ones.clone()));
        gens.push(((0..n).map(|i| (i + 1) % n).collect(), ones.clone()));
    }
    let mut seen = HashSet::from([x.clone()]);
    let mut queue = vec![x.clone()];
    while let Some(y) = queue.pop() {
        for (p, s) in &gens {
            let z = conjugate(&y, p, s);
            if seen.insert(z.clone()) {
                queue.push(z);
            }
        }
    }
    seen
}

#[test]
fn subclasses_are_distinct_conjugation_orbits() {
    let lib = library();
    for (c, s) in lib.primitives.classes.iter().zip(&lib.symmetric) {
        if c.size() > 6 && c.name != "7.4" {
            continue;
        }
        let n = c.size();
        let group = BigUint::from(2u32).pow(n as u32) * factorial(n);
        for sign in [Sign::Symmetric, Sign::Antisymmetric] {
            let (reps, orders) = s.reps(sign);
            let mut covered: HashSet<IntMatrix> = HashSet::new();
            for (r, o) in reps.iter().zip(orders) {
                assert!(sign.holds(r));
                assert!(find_isomorphism(&c.representative, r).unwrap().is_some(), "{} rep outside its class", c.name);
                assert!(!covered.contains(r), "{}: two {sign:?} representatives are conjugate", c.name);
                let orbit = conjugation_orbit(r);
                assert_eq!(BigUint::from(orbit.len()), &group / o, "{}: orbit size against |SAut|", c.name);
                covered.extend(orbit);
            }
        }
    }
}
