//! Dense univariate polynomials over ℚ: Euclidean gcd, squarefree parts and
//! root counting over ℂ.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rational, Poly};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<BigRational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn one() -> Self {
        UniPoly(vec![BigRational::one()])
    }

    /// Read `p` as a polynomial in variable `i`; every other variable must be
    /// absent from the support.
    pub fn from_poly(p: &Poly, i: usize) -> Option<Self> {
        let mut coeffs = Vec::new();
        for (m, c) in p.terms() {
            if m.exponents().iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            let e = m.exponents()[i] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigRational::zero());
            }
            coeffs[e] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => UniPoly::zero(),
            Some(l) => {
                let l = l.clone();
                UniPoly(self.0.iter().map(|c| c / &l).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rational(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.lead().unwrap().clone();
        let mut rem = self.0.clone();
        let mut quot = vec![BigRational::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Multiplicity of `0` as a root and the cofactor.
    pub fn strip_zero_root(&self) -> (usize, UniPoly) {
        let k = self.0.iter().take_while(|c| c.is_zero()).count();
        (k, UniPoly(self.0[k.min(self.0.len())..].to_vec()))
    }

    /// Number of distinct nonzero complex roots.
    pub fn distinct_nonzero_roots(&self) -> usize {
        let (_, rest) = self.strip_zero_root();
        rest.squarefree_part().degree().unwrap_or(0)
    }
}
