//! Exact sparse multivariate polynomials over the rationals.
//!
//! A [`Poly`] stores a map from exponent vectors to nonzero rational
//! coefficients together with an ordered list of variable names. Variables are
//! positional: two polynomials over different name lists but with the same
//! terms compare equal, which lets chart substitutions reuse names freely.

mod parse;
pub mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use parse::{identifiers, parse_poly, ParseError};

/// Extended value: a finite quantity or `Infinity` (the order/weight of zero).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation<T> {
    Finite(T),
    Infinity,
}

impl<T> Valuation<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinity)
    }
}

impl<T: fmt::Display> fmt::Display for Valuation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "infinity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable arity mismatch: expected {expected}, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("exponent of {var} is not divisible by {divisor} in term {term}")]
    NonIntegralExponent { var: String, divisor: u32, term: String },
    #[error("{poly} is not divisible by {divisor}")]
    InexactDivision { poly: String, divisor: String },
    #[error("variable {0} still occurs and cannot be dropped")]
    VariableInUse(String),
}

/// Exponent vector, one entry per ambient variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Weighted degree `Σ wᵢ eᵢ`.
    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0.iter().zip(weights).map(|(&e, &w)| u64::from(e) * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Graded lexicographic comparison: total degree first, then lex with the
    /// first variable largest.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }

    /// Every monomial in `arity` variables of total degree exactly `d`, in
    /// descending lex order.
    pub fn all_of_degree(arity: usize, d: u32) -> Vec<Monomial> {
        fn rec(arity: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == arity {
                prefix.push(d);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e);
                rec(arity, d - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if arity == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(arity, d, &mut Vec::with_capacity(arity), &mut out);
        out
    }

    /// Every monomial of total degree `< bound`.
    pub fn all_below(arity: usize, bound: u32) -> Vec<Monomial> {
        (0..bound).flat_map(|d| Monomial::all_of_degree(arity, d)).collect()
    }

    pub fn render(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(vars)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Exact sparse multivariate polynomial over ℚ.
#[derive(Clone, Debug)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.vars.len() == other.vars.len() && self.terms == other.terms
    }
}

impl Eq for Poly {}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Variable names from a slice of string-likes.
pub fn var_names<S: AsRef<str>>(names: &[S]) -> Vec<String> {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

impl Poly {
    pub fn zero(vars: Vec<String>) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: BigRational) -> Self {
        let mut p = Poly::zero(vars);
        let one = Monomial::one(p.arity());
        p.add_term(one, c);
        p
    }

    pub fn one(vars: Vec<String>) -> Self {
        Poly::constant(vars, BigRational::one())
    }

    pub fn var(vars: Vec<String>, i: usize) -> Self {
        let m = Monomial::var(vars.len(), i);
        Poly::monomial(vars, m, BigRational::one())
    }

    pub fn monomial(vars: Vec<String>, m: Monomial, c: BigRational) -> Self {
        let mut p = Poly::zero(vars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Poly::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Parse with the given variable names (see the grammar in [`parse_poly`]).
    pub fn parse<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Self, ParseError> {
        parse_poly(text, &var_names(vars))
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        assert_eq!(m.arity(), self.arity(), "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn with_vars(mut self, vars: Vec<String>) -> Result<Self, PolyError> {
        if vars.len() != self.arity() {
            return Err(PolyError::Arity {
                expected: self.arity(),
                found: vars.len(),
            });
        }
        self.vars = vars;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coeff(&self, exponents: &[u32]) -> BigRational {
        self.coefficient(&Monomial::new(exponents.to_vec()))
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::one(self.arity()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Multiplicity at the origin: the least total degree of a term.
    pub fn order(&self) -> Valuation<u32> {
        match self.terms.keys().map(Monomial::degree).min() {
            Some(d) => Valuation::Finite(d),
            None => Valuation::Infinity,
        }
    }

    /// Terms of total degree `≤ k`.
    pub fn jet(&self, k: u32) -> Poly {
        self.filter(|m| m.degree() <= k)
    }

    /// Terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Poly {
        self.filter(|m| m.degree() == k)
    }

    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.0.clone();
            ex[i] -= 1;
            out.add_term(Monomial(ex), c * rational(i64::from(e)));
        }
        out
    }

    /// One formal partial derivative per variable, in variable order.
    pub fn partials(&self) -> Vec<Poly> {
        (0..self.arity()).map(|i| self.partial(i)).collect()
    }

    /// `min { Σ bⱼ iⱼ / r }` over the support; infinity for zero.
    pub fn weight(&self, numerators: &[u64], denominator: u64) -> Valuation<BigRational> {
        assert_eq!(numerators.len(), self.arity(), "weight arity");
        match self.terms.keys().map(|m| m.weighted_degree(numerators)).min() {
            Some(w) => Valuation::Finite(BigRational::new(BigInt::from(w), BigInt::from(denominator))),
            None => Valuation::Infinity,
        }
    }

    /// Set of weighted degrees occurring in the support.
    pub fn weighted_degrees(&self, weights: &[u64]) -> Vec<u64> {
        let mut ds: Vec<u64> = self.terms.keys().map(|m| m.weighted_degree(weights)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn is_weighted_homogeneous(&self, weights: &[u64], degree: u64) -> bool {
        self.terms.keys().all(|m| m.weighted_degree(weights) == degree)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars.clone());
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.vars.clone());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Product truncated to total degree `≤ max_degree`.
    pub fn mul_truncated(&self, other: &Poly, max_degree: u32) -> Poly {
        let mut out = Poly::zero(self.vars.clone());
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            if d1 > max_degree {
                continue;
            }
            for (m2, c2) in &other.terms {
                if d1 + m2.degree() > max_degree {
                    continue;
                }
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Ring homomorphism sending variable `i` to `images[i]`. The images share
    /// a target variable list, which becomes the variable list of the result.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, PolyError> {
        self.substitute_impl(images, None)
    }

    /// [`Poly::substitute`] with every intermediate product truncated at total
    /// degree `max_degree`.
    pub fn substitute_truncated(&self, images: &[Poly], max_degree: u32) -> Result<Poly, PolyError> {
        self.substitute_impl(images, Some(max_degree))
    }

    fn substitute_impl(&self, images: &[Poly], cap: Option<u32>) -> Result<Poly, PolyError> {
        if images.len() != self.arity() {
            return Err(PolyError::Arity {
                expected: self.arity(),
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => self.vars.clone(),
        };
        if let Some(bad) = images.iter().find(|p| p.arity() != target.len()) {
            return Err(PolyError::Arity {
                expected: target.len(),
                found: bad.arity(),
            });
        }
        let mul = |a: &Poly, b: &Poly| match cap {
            Some(d) => a.mul_truncated(b, d),
            None => a * b,
        };
        // Cache powers of each image.
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(target.clone()), p.clone()])
            .collect();
        let mut out = Poly::zero(target.clone());
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = mul(powers[i].last().unwrap(), &images[i]);
                    powers[i].push(next);
                }
                term = mul(&term, &powers[i][e as usize]);
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Exact division by `x_i^k`.
    pub fn div_var_power(&self, i: usize, k: u32) -> Result<Poly, PolyError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[i] < k {
                return Err(PolyError::InexactDivision {
                    poly: self.to_string(),
                    divisor: format!("{}^{}", self.vars[i], k),
                });
            }
            let mut ex = m.0.clone();
            ex[i] -= k;
            terms.insert(Monomial(ex), c.clone());
        }
        Ok(Poly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Divide every exponent of `x_i` by `divisor`; fails when some exponent is
    /// not a multiple.
    pub fn rescale_exponent(&self, i: usize, divisor: u32) -> Result<Poly, PolyError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[i] % divisor != 0 {
                return Err(PolyError::NonIntegralExponent {
                    var: self.vars[i].clone(),
                    divisor,
                    term: m.render(&self.vars),
                });
            }
            let mut ex = m.0.clone();
            ex[i] /= divisor;
            terms.insert(Monomial(ex), c.clone());
        }
        Ok(Poly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Multiply every exponent of `x_i` by `factor`.
    pub fn inflate_exponent(&self, i: usize, factor: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut ex = m.0.clone();
                    ex[i] *= factor;
                    (Monomial(ex), c.clone())
                })
                .collect(),
        }
    }

    /// Substitute `x_i = value` keeping the variable list.
    pub fn set_var(&self, i: usize, value: &BigRational) -> Poly {
        let mut out = Poly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut ex = m.0.clone();
            ex[i] = 0;
            let factor = if e == 0 {
                BigRational::one()
            } else {
                num_traits::pow(value.clone(), e as usize)
            };
            out.add_term(Monomial(ex), c * factor);
        }
        out
    }

    /// Keep only the listed variables (in the given order). Every dropped
    /// variable must be absent from the support.
    pub fn project(&self, keep: &[usize]) -> Result<Poly, PolyError> {
        for (i, v) in self.vars.iter().enumerate() {
            if !keep.contains(&i) && self.terms.keys().any(|m| m.0[i] > 0) {
                return Err(PolyError::VariableInUse(v.clone()));
            }
        }
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        Ok(Poly {
            vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone()))
                .collect(),
        })
    }

    /// Re-embed into a larger variable list: variable `i` goes to position
    /// `positions[i]` of `vars`.
    pub fn embed(&self, vars: Vec<String>, positions: &[usize]) -> Poly {
        let n = vars.len();
        Poly {
            vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut ex = vec![0; n];
                    for (i, &p) in positions.iter().enumerate() {
                        ex[p] += m.0[i];
                    }
                    (Monomial(ex), c.clone())
                })
                .collect(),
        }
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, x) in m.0.iter().zip(point) {
                if *e > 0 {
                    t *= num_traits::pow(x.clone(), *e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Terms in canonical rendering order: descending graded lex.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grlex_cmp(a.0));
        v
    }
}

fn render_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{}", render_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", m.render(&self.vars))?;
            } else {
                write!(f, "{}*{}", render_rational(&abs), m.render(&self.vars))?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.arity(), rhs.arity(), "poly arity");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.arity(), rhs.arity(), "poly arity");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.arity(), rhs.arity(), "poly arity");
        let mut out = Poly::zero(self.vars.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigRational::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
