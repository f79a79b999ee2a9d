//! Strategies shared by the unit-level property tests.

use proptest::prelude::*;

use crate::matrix::IntMatrix;
use crate::monomial::{HadamardPair, SignedPerm};

pub fn arb_signed_perm(n: usize) -> impl Strategy<Value = SignedPerm> {
    (
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], n),
    )
        .prop_map(|(p, s)| SignedPerm::new(p, s).unwrap())
}

pub fn arb_pair(m: usize, n: usize) -> impl Strategy<Value = HadamardPair> {
    (arb_signed_perm(m), arb_signed_perm(n)).prop_map(|(l, r)| HadamardPair::new(l, r))
}

pub fn arb_matrix(m: usize, n: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-bound..=bound, m * n).prop_map(move |d| IntMatrix::new(m, n, d).unwrap())
}
