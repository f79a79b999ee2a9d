//! Incidence and weighing matrices of projective spaces over prime fields, and
//! a check of their symmetric classification against the closed formula.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::autiso::aut_group;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::symmetry::{sym_classes, Sign};

/// `ℙ^d(F_p)` with points normalized so the first nonzero coordinate is 1,
/// listed in lexicographic order. Hyperplanes reuse the same list through
/// the standard dot product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveSpace {
    pub d: usize,
    pub p: u64,
    pub points: Vec<Vec<u64>>,
    residues: Vec<bool>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|i| i * i <= p).all(|i| !p.is_multiple_of(i))
}

impl ProjectiveSpace {
    pub fn new(d: usize, p: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument("projective dimension must be at least 2".into()));
        }
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
        }
        let size = Self::size_for(d, p).ok_or_else(|| Error::Capacity("projective space too large".into()))?;
        if size > 1 << 16 {
            return Err(Error::Capacity(format!("{size} points")));
        }
        let mut points = Vec::with_capacity(size);
        // lead position, then the free coordinates after it in lexicographic order
        for lead in 0..=d {
            let free = d - lead;
            let total = p.pow(free as u32);
            for code in 0..total {
                let mut v = vec![0u64; d + 1];
                v[lead] = 1;
                let mut c = code;
                for j in (lead + 1..=d).rev() {
                    v[j] = c % p;
                    c /= p;
                }
                points.push(v);
            }
        }
        points.sort();
        let mut residues = vec![false; p as usize];
        for x in 1..p {
            residues[((x * x) % p) as usize] = true;
        }
        Ok(ProjectiveSpace { d, p, points, residues })
    }

    /// `(p^{d+1} − 1)/(p − 1)`.
    pub fn size_for(d: usize, p: u64) -> Option<usize> {
        let top = p.checked_pow(d as u32 + 1)?;
        usize::try_from((top - 1) / (p - 1)).ok()
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    fn form(&self, a: usize, b: usize) -> u64 {
        self.points[a].iter().zip(&self.points[b]).map(|(x, y)| x * y % self.p).sum::<u64>() % self.p
    }

    /// Legendre symbol of `x`: 0, 1 or −1.
    pub fn quadratic_character(&self, x: u64) -> i64 {
        let x = x % self.p;
        if x == 0 {
            0
        } else if self.residues[x as usize] {
            1
        } else {
            -1
        }
    }

    /// `|GL(d+1, p)|`.
    pub fn gl_order(&self) -> BigUint {
        let n = self.d as u32 + 1;
        let q = BigUint::from(self.p);
        (0..n).fold(BigUint::one(), |acc, i| acc * (q.pow(n) - q.pow(i)))
    }

    /// `|GL(d+1, p)| / |(F_p^×)²|`, the predicted order of `Aut(PW)`.
    pub fn predicted_weighing_aut_order(&self) -> BigUint {
        self.gl_order() / BigUint::from((self.p - 1) / 2)
    }
}

/// `PI[a][H] = 1` iff the point lies on the hyperplane.
pub fn projective_incidence(space: &ProjectiveSpace) -> IntMatrix {
    let n = space.size();
    let mut m = IntMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            if space.form(a, b) == 0 {
                m.set(a, b, 1);
            }
        }
    }
    m
}

/// `PW[a][H]` is the quadratic character of `[v, w]`.
pub fn projective_weighing(space: &ProjectiveSpace) -> IntMatrix {
    let n = space.size();
    let mut m = IntMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            m.set(a, b, space.quadratic_character(space.form(a, b)));
        }
    }
    m
}

/// Outcome of [`verify_projective_symmetric_count`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveCheck {
    pub incidence: bool,
    pub computed: usize,
    pub predicted: usize,
    #[serde(with = "crate::bigstr")]
    pub aut_order: BigUint,
    /// Expected `|Aut|`: `|GL|/|squares|` for the weighing matrix, `2·|PGL|` for the incidence matrix.
    #[serde(with = "crate::bigstr")]
    pub predicted_aut_order: BigUint,
    /// For the weighing matrix: whether `−PW` is SH-equivalent to `PW`.
    pub negation_equivalent: Option<bool>,
}

impl ProjectiveCheck {
    pub fn holds(&self) -> bool {
        self.computed == self.predicted && self.aut_order == self.predicted_aut_order
    }
}

/// Predicted number of symmetric SH-classes (prime fields only).
pub fn predicted_symmetric_count(space: &ProjectiveSpace, incidence: bool) -> usize {
    let d_odd = space.d % 2 == 1;
    if incidence {
        2 + usize::from(d_odd)
    } else {
        2 + usize::from(d_odd && space.p % 4 == 1)
    }
}

/// Classifies the symmetric members of `[PW]` (or `[PI]`) and compares with
/// the predicted counts and group order.
pub fn verify_projective_symmetric_count(space: &ProjectiveSpace, incidence: bool, bound: u64) -> Result<ProjectiveCheck> {
    let a = if incidence { projective_incidence(space) } else { projective_weighing(space) };
    if !a.is_symmetric() {
        return Err(Error::Consistency("projective matrix in standard form is not symmetric".into()));
    }
    let g = aut_group(&a)?;
    let classes = sym_classes(&a, &g, Sign::Symmetric, bound)?;
    let predicted_aut_order = if incidence {
        let scalars = BigUint::from(space.p - 1);
        BigUint::from(2u32) * space.gl_order() / scalars
    } else {
        space.predicted_weighing_aut_order()
    };
    let negation_equivalent = if incidence {
        None
    } else {
        let i = classes.locate(&a)?;
        let j = classes.locate(&a.negated())?;
        match (i, j) {
            (Some(i), Some(j)) => Some(i == j),
            _ => return Err(Error::Consistency("PW or −PW not located in its own class".into())),
        }
    };
    Ok(ProjectiveCheck {
        incidence,
        computed: classes.len(),
        predicted: predicted_symmetric_count(space, incidence),
        aut_order: g.order,
        predicted_aut_order,
        negation_equivalent,
    })
}
