//! Exact cardinalities of `IW(n, k)`, `SIW(n, k)` and `AIW(n, k)` from
//! primitive classification data, via exponential generating functions.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A power series truncated after `t^N`, with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn zero(degree: usize) -> Self {
        RationalSeries { coeffs: vec![BigRational::zero(); degree + 1] }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Coefficients `c_0..c_N`; an empty list is the zero series of degree 0.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        RationalSeries { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[t^i]`, zero beyond the truncation.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Adds `c·t^i`; terms past the truncation are dropped.
    pub fn add_term(&mut self, i: usize, c: BigRational) {
        if let Some(x) = self.coeffs.get_mut(i) {
            *x += c;
        }
    }

    pub fn add(&self, other: &RationalSeries) -> RationalSeries {
        let n = self.degree().min(other.degree());
        RationalSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect() }
    }

    pub fn neg(&self) -> RationalSeries {
        RationalSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Product truncated at the smaller degree.
    pub fn mul(&self, other: &RationalSeries) -> RationalSeries {
        let n = self.degree().min(other.degree());
        let mut out = Self::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                out.coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        out
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag} t")?,
                _ => write!(f, "{mag} t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.degree() + 1)
    }
}

/// `exp(s)` by the recurrence `m·f_m = Σ_{j=1}^{m} j·s_j·f_{m-j}`.
pub fn series_exp(s: &RationalSeries) -> Result<RationalSeries> {
    if !s.coeffs[0].is_zero() {
        return Err(Error::InvalidArgument("exp needs a series without constant term".into()));
    }
    let n = s.degree();
    let mut f = RationalSeries::one(n);
    for m in 1..=n {
        let mut acc = BigRational::zero();
        for j in 1..=m {
            if !s.coeffs[j].is_zero() {
                acc += &s.coeffs[j] * &f.coeffs[m - j] * BigRational::from_integer(BigInt::from(j));
            }
        }
        f.coeffs[m] = acc / BigRational::from_integer(BigInt::from(m));
    }
    Ok(f)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// `|Mon(n)| = 2^n·n!`.
pub fn monomial_group_order(n: usize) -> BigUint {
    (BigUint::one() << n) * factorial(n)
}

/// `|[A]| = 2^{2n}·n!² / |Aut(A)|` for a class of `n×n` matrices.
pub fn class_cardinality(aut_order: &BigUint, n: usize) -> Result<BigUint> {
    let g = monomial_group_order(n);
    divide_exact(&(&g * &g), aut_order)
}

/// Number of members of one SH-class: `2^n·n! / |SAut(S)|`.
pub fn sym_class_cardinality(saut_order: &BigUint, n: usize) -> Result<BigUint> {
    divide_exact(&monomial_group_order(n), saut_order)
}

fn divide_exact(num: &BigUint, den: &BigUint) -> Result<BigUint> {
    if den.is_zero() || !(num % den).is_zero() {
        return Err(Error::Consistency(format!("group order {den} does not divide {num}")));
    }
    Ok(num / den)
}

/// Primitive `(size, group order)` pairs, known complete for every size up to
/// `complete_through`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimitiveCounts {
    pub complete_through: usize,
    pub entries: Vec<(usize, BigUint)>,
}

/// Input of [`count_sym_iw`]: one `(size, |TAut|)` per primitive TH-class
/// (double blocks `S_X`, entering at `t^{2·size}`), and one `(size, |SAut|)`
/// per primitive SH-class of the requested sign.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymmetricCounts {
    pub complete_through: usize,
    pub double_blocks: Vec<(usize, BigUint)>,
    pub single_blocks: Vec<(usize, BigUint)>,
}

fn check_complete(complete_through: usize, n: usize) -> Result<()> {
    if n > complete_through {
        return Err(Error::Incomplete(format!(
            "primitive data is complete through size {complete_through}, size {n} requested"
        )));
    }
    Ok(())
}

fn recip(order: &BigUint) -> Result<BigRational> {
    if order.is_zero() {
        return Err(Error::InvalidArgument("group order 0".into()));
    }
    Ok(BigRational::new(BigInt::one(), BigInt::from(order.clone())))
}

/// `Σ t^m / |Aut|` over the primitive data, truncated at `n`.
pub fn primitive_series(data: &PrimitiveCounts, n: usize) -> Result<RationalSeries> {
    let mut s = RationalSeries::zero(n);
    for (m, order) in &data.entries {
        if *m == 0 {
            return Err(Error::InvalidArgument("primitive of size 0".into()));
        }
        s.add_term(*m, recip(order)?);
    }
    Ok(s)
}

/// `exp` of [`primitive_series`]: `[t^n]` is `|IW(n,k)| / (2^{2n}·n!²)`.
pub fn iw_series(data: &PrimitiveCounts, n: usize) -> Result<RationalSeries> {
    check_complete(data.complete_through, n)?;
    series_exp(&primitive_series(data, n)?)
}

/// `|IW(n, k)|`.
pub fn count_iw(data: &PrimitiveCounts, n: usize) -> Result<BigUint> {
    let z = iw_series(data, n)?;
    let g = monomial_group_order(n);
    rational_to_count(&(z.coeff(n) * BigRational::from_integer(BigInt::from(&g * &g))))
}

pub fn symmetric_primitive_series(data: &SymmetricCounts, n: usize) -> Result<RationalSeries> {
    let mut s = RationalSeries::zero(n);
    for (m, order) in &data.single_blocks {
        if *m == 0 {
            return Err(Error::InvalidArgument("primitive of size 0".into()));
        }
        s.add_term(*m, recip(order)?);
    }
    for (m, order) in &data.double_blocks {
        if *m == 0 {
            return Err(Error::InvalidArgument("primitive of size 0".into()));
        }
        s.add_term(2 * m, recip(order)?);
    }
    Ok(s)
}

/// `|SIW(n, k)|` or `|AIW(n, k)|`, according to which single blocks are given.
pub fn count_sym_iw(data: &SymmetricCounts, n: usize) -> Result<BigUint> {
    check_complete(data.complete_through, n)?;
    let z = series_exp(&symmetric_primitive_series(data, n)?)?;
    rational_to_count(&(z.coeff(n) * BigRational::from_integer(BigInt::from(monomial_group_order(n)))))
}

fn rational_to_count(x: &BigRational) -> Result<BigUint> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::Consistency(format!("count {x} is not a non-negative integer")));
    }
    Ok(x.to_integer().to_biguint().expect("non-negative"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn counts(n: usize, e: &[(usize, u64)]) -> PrimitiveCounts {
        PrimitiveCounts { complete_through: n, entries: e.iter().map(|&(m, o)| (m, BigUint::from(o))).collect() }
    }

    #[test]
    fn exp_of_zero_and_of_t() {
        let e = series_exp(&RationalSeries::zero(5)).unwrap();
        assert_eq!(e, RationalSeries::one(5));
        let mut t = RationalSeries::zero(6);
        t.add_term(1, q(1, 1));
        let e = series_exp(&t).unwrap();
        for m in 0..=6 {
            let f = factorial(m);
            assert_eq!(e.coeff(m), BigRational::new(BigInt::one(), BigInt::from(f)));
        }
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert!(series_exp(&RationalSeries::one(3)).is_err());
    }

    #[test]
    fn weight_25_series_through_t4() {
        let s = primitive_series(&counts(4, &[(1, 2), (2, 4), (4, 8), (4, 16)]), 4).unwrap();
        let z = series_exp(&s).unwrap();
        let want = [q(1, 1), q(1, 2), q(3, 8), q(7, 48), q(97, 384)];
        assert_eq!(z.coeffs(), &want);
        assert_eq!(count_iw(&counts(4, &[(1, 2), (2, 4), (4, 8), (4, 16)]), 4).unwrap(), BigUint::from(37248u32));
    }

    #[test]
    fn small_counts() {
        let data = counts(2, &[(1, 2), (2, 4)]);
        assert_eq!(count_iw(&data, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(count_iw(&data, 2).unwrap(), BigUint::from(24u32));
        assert!(matches!(count_iw(&data, 3), Err(Error::Incomplete(_))));
    }

    #[test]
    fn class_cardinalities() {
        assert_eq!(class_cardinality(&BigUint::from(16u32), 4).unwrap(), BigUint::from(9216u32));
        assert_eq!(class_cardinality(&BigUint::from(240u32), 5).unwrap(), BigUint::from(61440u32));
        assert_eq!(class_cardinality(&BigUint::from(12u32), 6).unwrap(), BigUint::from(176_947_200u64));
        assert!(matches!(class_cardinality(&BigUint::from(7u32), 4), Err(Error::Consistency(_))));
    }

    #[test]
    fn antisymmetric_weight_25_through_4() {
        // no primitive antisymmetric blocks: only [5]-pairs (TAut 4) and B₁-pairs (TAut 8)
        let data = SymmetricCounts {
            complete_through: 4,
            double_blocks: vec![(1, BigUint::from(4u32)), (2, BigUint::from(8u32))],
            single_blocks: vec![],
        };
        assert_eq!(count_sym_iw(&data, 4).unwrap(), BigUint::from(60u32));
        assert_eq!(count_sym_iw(&data, 3).unwrap(), BigUint::from(0u32));
        assert_eq!(count_sym_iw(&data, 2).unwrap(), BigUint::from(2u32));
    }

    fn arb_series() -> impl Strategy<Value = RationalSeries> {
        prop::collection::vec((-5i64..=5, 1i64..=6), 6).prop_map(|v| {
            let mut c: Vec<BigRational> = v.into_iter().map(|(n, d)| q(n, d)).collect();
            c[0] = BigRational::zero();
            RationalSeries::from_coeffs(c)
        })
    }

    proptest! {
        #[test]
        fn exp_of_negation_is_inverse(s in arb_series()) {
            let prod = series_exp(&s).unwrap().mul(&series_exp(&s.neg()).unwrap());
            prop_assert_eq!(prod, RationalSeries::one(s.degree()));
        }

        #[test]
        fn exp_turns_sums_into_products(a in arb_series(), b in arb_series()) {
            let lhs = series_exp(&a.add(&b)).unwrap();
            let rhs = series_exp(&a).unwrap().mul(&series_exp(&b).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
