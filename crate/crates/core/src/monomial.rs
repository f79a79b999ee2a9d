//! Signed permutations (monomial matrices over {0, ±1}) and the pairs of them
//! that act on matrices by `A ↦ L·A·Rᵀ`.
//!
//! Convention: a [`SignedPerm`] sends index `i` to `perm[i]` and multiplies by
//! `signs[perm[i]]`, so the sign is stored at the target. As a matrix,
//! `P[perm[i]][i] = signs[perm[i]]`. Composition `p.compose(q)` is the matrix
//! product `P·Q`, i.e. `q` acts first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawSignedPerm")]
pub struct SignedPerm {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

#[derive(Deserialize)]
struct RawSignedPerm {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl TryFrom<RawSignedPerm> for SignedPerm {
    type Error = Error;

    fn try_from(r: RawSignedPerm) -> Result<Self> {
        SignedPerm::new(r.perm, r.signs)
    }
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { perm: (0..n).collect(), signs: vec![1; n] }
    }

    /// `-I`.
    pub fn negation(n: usize) -> Self {
        SignedPerm { perm: (0..n).collect(), signs: vec![-1; n] }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::Dimension(format!("{} signs for {n} points", signs.len())));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument("signs must be +1 or -1".into()));
        }
        Ok(SignedPerm { perm, signs })
    }

    pub(crate) fn from_parts_unchecked(perm: Vec<usize>, signs: Vec<i8>) -> Self {
        debug_assert!(SignedPerm::new(perm.clone(), signs.clone()).is_ok());
        SignedPerm { perm, signs }
    }

    /// Unsigned permutation matrix sending `i` to `perm[i]`.
    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        SignedPerm::new(perm, vec![1; n])
    }

    /// Diagonal sign matrix.
    pub fn from_signs(signs: Vec<i8>) -> Result<Self> {
        SignedPerm::new((0..signs.len()).collect(), signs)
    }

    /// Reads a monomial matrix.
    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension("monomial matrix must be square".into()));
        }
        let n = m.rows();
        let mut perm = vec![usize::MAX; n];
        let mut signs = vec![0i8; n];
        for j in 0..n {
            for i in 0..n {
                match m.get(i, j) {
                    0 => {}
                    v @ (1 | -1) if perm[j] == usize::MAX => {
                        perm[j] = i;
                        signs[i] = v as i8;
                    }
                    _ => return Err(Error::InvalidArgument("not a monomial {0,±1} matrix".into())),
                }
            }
        }
        if perm.contains(&usize::MAX) {
            return Err(Error::InvalidArgument("not a monomial {0,±1} matrix".into()));
        }
        SignedPerm::new(perm, signs)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.perm.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    /// Sign applied to the entry that lands on `target`.
    #[inline]
    pub fn sign_at(&self, target: usize) -> i8 {
        self.signs[target]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p == i) && self.signs.iter().all(|&s| s == 1)
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        assert_eq!(self.len(), other.len(), "composing signed permutations of different sizes");
        let n = self.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1i8; n];
        for x in 0..n {
            let y = other.perm[x];
            let z = self.perm[y];
            perm[x] = z;
            signs[z] = self.signs[z] * other.signs[y];
        }
        SignedPerm { perm, signs }
    }

    pub fn inverse(&self) -> SignedPerm {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            let t = self.perm[i];
            perm[t] = i;
            signs[i] = self.signs[t];
        }
        SignedPerm { perm, signs }
    }

    /// `-self`.
    pub fn negated(&self) -> SignedPerm {
        SignedPerm { perm: self.perm.clone(), signs: self.signs.iter().map(|s| -s).collect() }
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let n = self.len();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            let t = self.perm[i];
            m.set(t, i, self.signs[t] as i64);
        }
        m
    }

    /// `P·v`.
    pub fn apply_vec(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (i, &x) in v.iter().enumerate() {
            let t = self.perm[i];
            out[t] = x * self.signs[t] as i64;
        }
        out
    }

    /// `P·A`.
    pub fn apply_rows(&self, a: &IntMatrix) -> IntMatrix {
        assert_eq!(self.len(), a.rows(), "row action size mismatch");
        let mut out = IntMatrix::zeros(a.rows(), a.cols());
        for i in 0..a.rows() {
            let t = self.perm[i];
            let s = self.signs[t] as i64;
            for j in 0..a.cols() {
                out.set(t, j, a.get(i, j) * s);
            }
        }
        out
    }

    /// `A·Pᵀ`.
    pub fn apply_cols(&self, a: &IntMatrix) -> IntMatrix {
        assert_eq!(self.len(), a.cols(), "column action size mismatch");
        let mut out = IntMatrix::zeros(a.rows(), a.cols());
        for j in 0..a.cols() {
            let t = self.perm[j];
            let s = self.signs[t] as i64;
            for i in 0..a.rows() {
                out.set(i, t, a.get(i, j) * s);
            }
        }
        out
    }

    /// Image as a permutation of `2n` points: `2i ↦ 2π(i) + [sign < 0]`,
    /// `2i+1 ↦ 2π(i) + [sign > 0]`.
    pub fn to_doubled(&self) -> Vec<usize> {
        let n = self.len();
        let mut out = vec![0; 2 * n];
        for i in 0..n {
            let t = self.perm[i];
            let neg = usize::from(self.signs[t] < 0);
            out[2 * i] = 2 * t + neg;
            out[2 * i + 1] = 2 * t + 1 - neg;
        }
        out
    }

    /// Inverse of [`to_doubled`](Self::to_doubled); fails when the permutation
    /// does not respect the pairing `{2i, 2i+1}`.
    pub fn from_doubled(img: &[usize]) -> Result<Self> {
        if !img.len().is_multiple_of(2) {
            return Err(Error::Dimension("doubled permutation of odd degree".into()));
        }
        let n = img.len() / 2;
        let mut perm = vec![0; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            let (a, b) = (img[2 * i], img[2 * i + 1]);
            if a / 2 != b / 2 || a == b || a >= 2 * n {
                return Err(Error::InvalidArgument("permutation does not commute with the pairing".into()));
            }
            perm[i] = a / 2;
            signs[a / 2] = if a % 2 == 0 { 1 } else { -1 };
        }
        SignedPerm::new(perm, signs)
    }
}

/// The pair `(L, R)` acting by `A ↦ L·A·Rᵀ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct HadamardPair {
    pub left: SignedPerm,
    pub right: SignedPerm,
}

impl HadamardPair {
    pub fn new(left: SignedPerm, right: SignedPerm) -> Self {
        HadamardPair { left, right }
    }

    pub fn identity(m: usize, n: usize) -> Self {
        HadamardPair { left: SignedPerm::identity(m), right: SignedPerm::identity(n) }
    }

    pub fn is_identity(&self) -> bool {
        self.left.is_identity() && self.right.is_identity()
    }

    /// `L·A·Rᵀ`.
    pub fn apply(&self, a: &IntMatrix) -> Result<IntMatrix> {
        if self.left.len() != a.rows() || self.right.len() != a.cols() {
            return Err(Error::Dimension(format!(
                "pair of sizes ({}, {}) on a {}x{} matrix",
                self.left.len(),
                self.right.len(),
                a.rows(),
                a.cols()
            )));
        }
        Ok(self.right.apply_cols(&self.left.apply_rows(a)))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &HadamardPair) -> HadamardPair {
        HadamardPair { left: self.left.compose(&other.left), right: self.right.compose(&other.right) }
    }

    pub fn inverse(&self) -> HadamardPair {
        HadamardPair { left: self.left.inverse(), right: self.right.inverse() }
    }

    /// Permutation of `2(m+n)` points: doubled rows, then doubled columns.
    pub fn to_points(&self) -> Vec<usize> {
        let off = 2 * self.left.len();
        let mut v = self.left.to_doubled();
        v.extend(self.right.to_doubled().into_iter().map(|x| x + off));
        v
    }

    pub fn from_points(img: &[usize], m: usize) -> Result<Self> {
        let off = 2 * m;
        if img.len() < off {
            return Err(Error::Dimension("point image shorter than the row part".into()));
        }
        let left = SignedPerm::from_doubled(&img[..off])?;
        let right_img: Vec<usize> = img[off..]
            .iter()
            .map(|&x| x.checked_sub(off).ok_or_else(|| Error::InvalidArgument("pair mixes rows and columns".into())))
            .collect::<Result<_>>()?;
        let right = SignedPerm::from_doubled(&right_img)?;
        Ok(HadamardPair { left, right })
    }
}

/// Generates every element of `Mon(n)` via a callback; `2ⁿ·n!` calls.
pub fn for_each_monomial(n: usize, mut f: impl FnMut(&SignedPerm)) {
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        for mask in 0u64..(1u64 << n) {
            let signs = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            f(&SignedPerm { perm: perm.clone(), signs });
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
}

/// Advances to the next permutation in lexicographic order; false after the last.
pub fn next_permutation(v: &mut [usize]) -> bool {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::arb_signed_perm;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn apply_pair_examples() {
        let a = m(&[&[-4, -3], &[-3, 4]]);
        assert_eq!(HadamardPair::identity(2, 2).apply(&a).unwrap(), a);
        let neg = HadamardPair::new(SignedPerm::from_signs(vec![-1]).unwrap(), SignedPerm::identity(1));
        assert_eq!(neg.apply(&m(&[&[5]])).unwrap(), m(&[&[-5]]));
        let swap = SignedPerm::from_perm(vec![1, 0]).unwrap();
        let p = HadamardPair::new(swap.clone(), swap);
        assert_eq!(p.apply(&a).unwrap(), m(&[&[4, -3], &[-3, -4]]));
        assert!(p.apply(&m(&[&[1]])).is_err());
    }

    #[test]
    fn matrix_forms_agree() {
        let p = SignedPerm::new(vec![2, 0, 1], vec![1, -1, -1]).unwrap();
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let pm = p.to_matrix();
        assert_eq!(p.apply_rows(&a), pm.mul(&a).unwrap());
        assert_eq!(p.apply_cols(&a), a.mul(&pm.transpose()).unwrap());
        assert_eq!(SignedPerm::from_matrix(&pm).unwrap(), p);
        assert_eq!(p.inverse().to_matrix(), pm.transpose());
    }

    #[test]
    fn monomial_enumeration_size() {
        let mut c = 0;
        for_each_monomial(3, |_| c += 1);
        assert_eq!(c, 48);
    }

    proptest! {
        #[test]
        fn compose_is_matrix_product(p in arb_signed_perm(5), q in arb_signed_perm(5)) {
            let pq = p.compose(&q);
            prop_assert_eq!(pq.to_matrix(), p.to_matrix().mul(&q.to_matrix()).unwrap());
            prop_assert!(p.compose(&p.inverse()).is_identity());
        }

        #[test]
        fn pair_action_is_group_action(
            l1 in arb_signed_perm(3), r1 in arb_signed_perm(4),
            l2 in arb_signed_perm(3), r2 in arb_signed_perm(4),
            data in proptest::collection::vec(-5i64..=5, 12),
        ) {
            let a = IntMatrix::new(3, 4, data).unwrap();
            let p1 = HadamardPair::new(l1, r1);
            let p2 = HadamardPair::new(l2, r2);
            let lhs = p2.apply(&p1.apply(&a).unwrap()).unwrap();
            prop_assert_eq!(lhs, p2.compose(&p1).apply(&a).unwrap());
            prop_assert_eq!(p1.inverse().apply(&p1.apply(&a).unwrap()).unwrap(), a.clone());
            prop_assert_eq!(p1.apply(&a).unwrap().gram(), p1.left.apply_cols(&p1.left.apply_rows(&a.gram())));
        }

        #[test]
        fn doubled_round_trip(p in arb_signed_perm(6)) {
            prop_assert_eq!(SignedPerm::from_doubled(&p.to_doubled()).unwrap(), p.clone());
            let pair = HadamardPair::new(p.clone(), p.inverse());
            prop_assert_eq!(HadamardPair::from_points(&pair.to_points(), 6).unwrap(), pair);
        }
    }
}
