//! Cyclic quotient singularities `1/r(a₁,…,aₙ)`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::poly::{Monomial, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("expected {expected} weights, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("malformed quotient type '{0}': expected 1/r(a1,...,an)")]
    Syntax(String),
    #[error("normal form and age criterion disagree on terminality of {0}")]
    TerminalityMismatch(QuotientType),
}

/// `1/r(a₁,…,aₙ)`: the generator acts by `xᵢ ↦ ζ_r^{aᵢ} xᵢ`. Weights are kept
/// reduced to `[0, r)`; `r = 1` is a smooth germ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientType {
    order: u64,
    weights: Vec<u64>,
}

/// Eigenweight of a semi-invariant, an element of `ℤ/r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub value: u64,
    pub modulus: u64,
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl QuotientType {
    pub fn new(order: u64, weights: &[i64]) -> Result<Self, CycloError> {
        if order == 0 {
            return Err(CycloError::ZeroOrder);
        }
        let r = order as i64;
        Ok(QuotientType {
            order,
            weights: weights.iter().map(|a| a.rem_euclid(r) as u64).collect(),
        })
    }

    pub fn smooth(n: usize) -> Self {
        QuotientType {
            order: 1,
            weights: vec![0; n],
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn is_smooth(&self) -> bool {
        self.order == 1
    }

    /// Every weight is a unit mod `r`, so the origin is the only fixed point.
    pub fn is_isolated(&self) -> bool {
        self.weights.iter().all(|&a| a.gcd(&self.order) == 1)
    }

    fn check_arity(&self, n: usize) -> Result<(), CycloError> {
        if self.arity() != n {
            return Err(CycloError::Arity {
                expected: self.arity(),
                found: n,
            });
        }
        Ok(())
    }

    pub fn character(&self, value: u64) -> Character {
        Character {
            value: value % self.order,
            modulus: self.order,
        }
    }
}

impl fmt::Display for QuotientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "1/{}({})", self.order, ws.join(","))
    }
}

impl FromStr for QuotientType {
    type Err = CycloError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CycloError::Syntax(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = compact.strip_prefix("1/").ok_or_else(bad)?;
        let open = rest.find('(').ok_or_else(bad)?;
        let inner = rest[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let order: u64 = rest[..open].parse().map_err(|_| bad())?;
        let weights = inner
            .split(',')
            .map(|w| w.parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        QuotientType::new(order, &weights)
    }
}

/// `Σ aᵢ·iᵢ mod r`.
pub fn monomial_character(m: &Monomial, q: &QuotientType) -> Character {
    assert_eq!(m.arity(), q.arity(), "monomial and group arity differ");
    let r = u128::from(q.order);
    let v = m
        .exponents()
        .iter()
        .zip(&q.weights)
        .map(|(&e, &a)| u128::from(e) * u128::from(a) % r)
        .sum::<u128>()
        % r;
    q.character(v as u64)
}

/// Common character of every term, if there is one. The zero polynomial is
/// semi-invariant of every character; it is reported as character `0`.
pub fn semi_invariant_character(f: &Poly, q: &QuotientType) -> Result<Option<Character>, CycloError> {
    q.check_arity(f.arity())?;
    let mut chars = f.terms().map(|(m, _)| monomial_character(m, q));
    let first = match chars.next() {
        Some(c) => c,
        None => return Ok(Some(q.character(0))),
    };
    if chars.all(|c| c == first) {
        Ok(Some(first))
    } else {
        Ok(None)
    }
}

/// Lexicographically least ascending weight tuple over all unit multiples.
pub fn normalize_type(q: &QuotientType) -> QuotientType {
    let r = q.order;
    let best = (1..=r)
        .filter(|u| u.gcd(&r) == 1)
        .map(|u| {
            let mut ws: Vec<u64> = q.weights.iter().map(|a| a * u % r).collect();
            ws.sort_unstable();
            ws
        })
        .min()
        .unwrap_or_else(|| q.weights.clone());
    QuotientType {
        order: r,
        weights: best,
    }
}

/// Age of `g^k`: `Σ {k aᵢ / r}` scaled by `r` (an integer).
pub fn scaled_age(q: &QuotientType, k: u64) -> u64 {
    q.weights.iter().map(|a| a * k % q.order).sum()
}

/// Every nontrivial group element has age `> 1`.
pub fn age_criterion(q: &QuotientType) -> bool {
    (1..q.order).all(|k| scaled_age(q, k) > q.order)
}

/// Whether a 3-dimensional type is equivalent to `1/r(1,a,r−a)` with `a`
/// coprime to `r`; the answer is cross-checked against the age criterion.
pub fn is_terminal_3fold(q: &QuotientType) -> Result<bool, CycloError> {
    if q.arity() != 3 {
        return Err(CycloError::Arity {
            expected: 3,
            found: q.arity(),
        });
    }
    let r = q.order as i64;
    let target = normalize_type(q);
    let by_form = (1..=r).filter(|a| a.gcd(&r) == 1).any(|a| {
        let model = QuotientType::new(q.order, &[1, a, r - a]).expect("positive order");
        normalize_type(&model) == target
    });
    if q.is_isolated() && by_form != age_criterion(q) {
        return Err(CycloError::TerminalityMismatch(q.clone()));
    }
    Ok(by_form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt(s: &str) -> QuotientType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let q = qt("1/4(1,3,2,1)");
        assert_eq!(q.order(), 4);
        assert_eq!(q.weights(), &[1, 3, 2, 1]);
        assert_eq!(q.to_string(), "1/4(1,3,2,1)");
        assert_eq!(qt("1/3(-1, 4, 2)").weights(), &[2, 1, 2]);
        assert!("1/0(1)".parse::<QuotientType>().is_err());
        assert!("2/3(1,1)".parse::<QuotientType>().is_err());
        assert!("1/3(1,a)".parse::<QuotientType>().is_err());
    }

    #[test]
    fn characters() {
        let m = Monomial::new(vec![1, 1, 1]);
        assert_eq!(monomial_character(&m, &qt("1/2(1,1,1)")).value, 1);
        assert_eq!(monomial_character(&m, &QuotientType::smooth(3)).value, 0);
        let x = Monomial::var(4, 0);
        assert_eq!(monomial_character(&x, &qt("1/4(1,3,2,1)")).value, 1);
    }

    #[test]
    fn semi_invariants() {
        let f = Poly::parse("x^2+y^2+z^3+u^2", &["x", "y", "z", "u"]).unwrap();
        let c = semi_invariant_character(&f, &qt("1/4(1,3,2,1)")).unwrap();
        assert_eq!(c.map(|c| c.value), Some(2));
        let v = ["x", "y", "z"];
        let cubic = Poly::parse("x^3+y^3+z^3", &v).unwrap();
        let half = qt("1/2(1,1,1)");
        assert_eq!(
            semi_invariant_character(&cubic, &half).unwrap().map(|c| c.value),
            Some(1)
        );
        let mixed = Poly::parse("x+y^2", &v).unwrap();
        assert_eq!(semi_invariant_character(&mixed, &half).unwrap(), None);
        let zero = Poly::parse("0", &v).unwrap();
        assert_eq!(
            semi_invariant_character(&zero, &half).unwrap().map(|c| c.value),
            Some(0)
        );
        assert!(semi_invariant_character(&cubic, &qt("1/2(1,1)")).is_err());
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_type(&qt("1/3(2,1,2)")), qt("1/3(1,1,2)"));
        assert_eq!(normalize_type(&qt("1/2(1,1,1)")), qt("1/2(1,1,1)"));
        assert_eq!(normalize_type(&qt("1/3(1,2,1)")), qt("1/3(1,1,2)"));
        let a = normalize_type(&qt("1/7(1,5,5)"));
        let b = normalize_type(&qt("1/7(1,3,4)"));
        assert_ne!(a, b);
        assert_eq!(a, qt("1/7(1,1,3)"));
        assert_eq!(b, qt("1/7(1,2,6)"));
        assert_eq!(normalize_type(&QuotientType::smooth(3)), QuotientType::smooth(3));
    }

    #[test]
    fn terminality() {
        assert!(is_terminal_3fold(&qt("1/2(1,1,1)")).unwrap());
        assert!(is_terminal_3fold(&qt("1/5(1,2,3)")).unwrap());
        assert!(is_terminal_3fold(&qt("1/7(1,3,4)")).unwrap());
        assert!(!is_terminal_3fold(&qt("1/2(1,1,0)")).unwrap());
        assert!(!is_terminal_3fold(&qt("1/7(1,5,5)")).unwrap());
        assert!(!is_terminal_3fold(&qt("1/3(1,1,1)")).unwrap());
        assert!(is_terminal_3fold(&QuotientType::smooth(3)).unwrap());
        assert!(matches!(
            is_terminal_3fold(&qt("1/4(1,3,2,1)")),
            Err(CycloError::Arity { .. })
        ));
    }

    #[test]
    fn isolation() {
        assert!(qt("1/5(1,2,3)").is_isolated());
        assert!(!qt("1/2(1,1,0,1)").is_isolated());
        assert!(!qt("1/4(1,3,2,1)").is_isolated());
    }
}
