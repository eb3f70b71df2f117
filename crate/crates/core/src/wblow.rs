//! Weighted blow-ups of `ℂⁿ/ℤ_r` at the origin.
//!
//! The blow-up with weight `v = (b₁,…,bₙ)/r` is covered by `n` affine charts.
//! Chart `i` is `ℂⁿ/ℤ_{bᵢ}(−b₁,…,r,…,−bₙ)` and maps down by
//! `xⱼ ↦ xⱼ·xᵢ^{bⱼ/r}`, `xᵢ ↦ xᵢ^{bᵢ/r}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cyclo::{semi_invariant_character, CycloError, QuotientType};
use crate::poly::{Monomial, Poly, PolyError, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WblowError {
    #[error("malformed weight vector '{0}': expected 1/r(b1,...,bn) or (b1,...,bn)")]
    Syntax(String),
    #[error("weights must be positive: {0}")]
    NonPositive(WeightVector),
    #[error("weight {weights} has denominator {found} but the group order is {expected}")]
    Denominator {
        weights: WeightVector,
        expected: u64,
        found: u64,
    },
    #[error("weight {weights} has {found} entries, the germ has {expected} variables")]
    Arity {
        weights: WeightVector,
        expected: usize,
        found: usize,
    },
    #[error("{weights} is not a vector of the lattice of {quotient}")]
    NotInLattice {
        weights: WeightVector,
        quotient: QuotientType,
    },
    #[error("{weights} is not primitive: it is divisible by {divisor} in the lattice of {quotient}")]
    NotPrimitive {
        weights: WeightVector,
        quotient: QuotientType,
        divisor: u64,
    },
    #[error("chart index {index} out of range for {arity} variables")]
    ChartIndex { index: usize, arity: usize },
    #[error("the zero polynomial has no strict transform")]
    ZeroPolynomial,
    #[error("{poly} is not semi-invariant under {quotient}")]
    NotSemiInvariant { poly: String, quotient: QuotientType },
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error("strict transform failed: {0}")]
    Inexact(#[from] PolyError),
}

impl WblowError {
    /// Failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, WblowError::Inexact(_)) || matches!(self, WblowError::Cyclo(CycloError::TerminalityMismatch(_)))
    }
}

/// Blow-up weight `(b₁,…,bₙ)/r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    numerators: Vec<u64>,
    denominator: u64,
}

impl WeightVector {
    pub fn new(numerators: Vec<u64>, denominator: u64) -> Result<Self, WblowError> {
        let v = WeightVector {
            numerators,
            denominator,
        };
        if v.denominator == 0 || v.numerators.is_empty() || v.numerators.contains(&0) {
            return Err(WblowError::NonPositive(v));
        }
        Ok(v)
    }

    /// Integral weight on a smooth germ.
    pub fn integral(numerators: &[u64]) -> Result<Self, WblowError> {
        WeightVector::new(numerators.to_vec(), 1)
    }

    pub fn numerators(&self) -> &[u64] {
        &self.numerators
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn arity(&self) -> usize {
        self.numerators.len()
    }

    pub fn sum(&self) -> u64 {
        self.numerators.iter().sum()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.numerators.iter().map(u64::to_string).collect();
        if self.denominator == 1 {
            write!(f, "({})", ws.join(","))
        } else {
            write!(f, "1/{}({})", self.denominator, ws.join(","))
        }
    }
}

impl FromStr for WeightVector {
    type Err = WblowError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WblowError::Syntax(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (den, body) = match compact.strip_prefix("1/") {
            Some(rest) => {
                let open = rest.find('(').ok_or_else(bad)?;
                (rest[..open].parse::<u64>().map_err(|_| bad())?, &rest[open..])
            }
            None => (1, compact.as_str()),
        };
        let inner = match body.strip_prefix('(') {
            Some(b) => b.strip_suffix(')').ok_or_else(bad)?,
            None if den == 1 => body,
            None => return Err(bad()),
        };
        let nums = inner
            .split(',')
            .map(|w| w.parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        WeightVector::new(nums, den)
    }
}

/// Whether `b/(d·r)` lies in `ℤⁿ + ℤ·a/r`, i.e. `b ≡ d·k·a (mod d·r)` for
/// some `k`.
fn in_lattice_scaled(q: &QuotientType, b: &[u64], d: u64) -> bool {
    let m = d * q.order();
    (0..q.order()).any(|k| b.iter().zip(q.weights()).all(|(&bi, &ai)| (bi % m) == (d * k * ai) % m))
}

/// `v ∈ N = ℤⁿ + ℤ·a/r`.
pub fn in_lattice(q: &QuotientType, v: &WeightVector) -> bool {
    v.arity() == q.arity() && v.denominator == q.order() && in_lattice_scaled(q, &v.numerators, 1)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `d` with `v/d ∈ N`, if any.
fn lattice_divisor(q: &QuotientType, v: &WeightVector) -> Option<u64> {
    let g = v.numerators.iter().fold(0u64, |g, &b| g.gcd(&b));
    prime_factors(g).into_iter().find(|&d| {
        let reduced: Vec<u64> = v.numerators.iter().map(|b| b / d).collect();
        in_lattice_scaled(q, &reduced, 1)
    })
}

/// No integer `d ≥ 2` has `v/d ∈ N`.
pub fn check_primitive(q: &QuotientType, v: &WeightVector) -> bool {
    lattice_divisor(q, v).is_none()
}

fn validate(q: &QuotientType, v: &WeightVector) -> Result<(), WblowError> {
    if v.arity() != q.arity() {
        return Err(WblowError::Arity {
            weights: v.clone(),
            expected: q.arity(),
            found: v.arity(),
        });
    }
    if v.denominator != q.order() {
        return Err(WblowError::Denominator {
            weights: v.clone(),
            expected: q.order(),
            found: v.denominator,
        });
    }
    if !in_lattice(q, v) {
        return Err(WblowError::NotInLattice {
            weights: v.clone(),
            quotient: q.clone(),
        });
    }
    if let Some(divisor) = lattice_divisor(q, v) {
        return Err(WblowError::NotPrimitive {
            weights: v.clone(),
            quotient: q.clone(),
            divisor,
        });
    }
    Ok(())
}

/// Chart map data: chart coordinate `j` appears downstairs with the chart
/// variable raised to `exponents[j] / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartMap {
    pub index: usize,
    pub exponents: Vec<u64>,
    pub denominator: u64,
}

impl ChartMap {
    /// Image of each downstairs coordinate, e.g. `x*y^(1/4)`.
    pub fn render(&self, vars: &[String]) -> Vec<String> {
        let xi = &vars[self.index];
        let power = |e: u64| {
            let q = BigRational::new(BigInt::from(e), BigInt::from(self.denominator));
            if q.is_integer() {
                if e == self.denominator {
                    xi.clone()
                } else {
                    format!("{xi}^{}", q.numer())
                }
            } else {
                format!("{xi}^({}/{})", q.numer(), q.denom())
            }
        };
        vars.iter()
            .enumerate()
            .map(|(j, v)| {
                if j == self.index {
                    power(self.exponents[j])
                } else {
                    format!("{v}*{}", power(self.exponents[j]))
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub index: usize,
    pub quotient: QuotientType,
    pub map: ChartMap,
}

/// Discrepancy data for a divisor `(f = 0)` under one weighted blow-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyReport {
    pub canonical: BigRational,
    pub divisor_weight: BigRational,
    pub pair: BigRational,
    pub integral: bool,
}

/// The chart cover of the `v`-blow-up of `ℂⁿ/ℤ_r`.
pub fn charts(q: &QuotientType, v: &WeightVector) -> Result<Vec<Chart>, WblowError> {
    validate(q, v)?;
    let r = q.order() as i64;
    let n = v.arity();
    (0..n)
        .map(|i| {
            let bi = v.numerators[i];
            let weights: Vec<i64> = (0..n)
                .map(|j| if j == i { r } else { -(v.numerators[j] as i64) })
                .collect();
            Ok(Chart {
                index: i,
                quotient: QuotientType::new(bi, &weights)?,
                map: ChartMap {
                    index: i,
                    exponents: v.numerators.clone(),
                    denominator: v.denominator,
                },
            })
        })
        .collect()
}

/// `(Σ bᵢ − r)/r`.
pub fn canonical_discrepancy(q: &QuotientType, v: &WeightVector) -> Result<BigRational, WblowError> {
    validate(q, v)?;
    Ok(frac(v.sum() as i64 - v.denominator as i64, v.denominator))
}

fn frac(n: i64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn finite_weight(f: &Poly, v: &WeightVector) -> Result<BigRational, WblowError> {
    match f.weight(&v.numerators, v.denominator) {
        Valuation::Finite(w) => Ok(w),
        Valuation::Infinity => Err(WblowError::ZeroPolynomial),
    }
}

/// Terms of `f` of minimal `v`-weight; it cuts out the exceptional divisor of
/// the strict transform inside `ℙ(b₁,…,bₙ)`.
pub fn initial_form(f: &Poly, v: &WeightVector) -> Poly {
    match f.weighted_degrees(&v.numerators).first() {
        Some(&w0) => f.filter(|m| m.weighted_degree(&v.numerators) == w0),
        None => f.clone(),
    }
}

/// Chart-`i` equation of the strict transform of `(f = 0)` together with
/// `wt_v(f)`.
pub fn strict_transform(f: &Poly, v: &WeightVector, i: usize) -> Result<(Poly, BigRational), WblowError> {
    let n = f.arity();
    if v.arity() != n {
        return Err(WblowError::Arity {
            weights: v.clone(),
            expected: n,
            found: v.arity(),
        });
    }
    if i >= n {
        return Err(WblowError::ChartIndex { index: i, arity: n });
    }
    let wt = finite_weight(f, v)?;
    let vars = f.vars().to_vec();
    // Work with xᵢ standing for xᵢ^{1/r}, then undo the scaling.
    let images: Vec<Poly> = (0..n)
        .map(|j| {
            let mut e = vec![0u32; n];
            e[i] = v.numerators[j] as u32;
            if j != i {
                e[j] += 1;
            }
            Poly::monomial(vars.clone(), Monomial::new(e), BigRational::from_integer(1.into()))
        })
        .collect();
    let pulled = f.substitute(&images)?;
    let shift = f
        .terms()
        .map(|(m, _)| m.weighted_degree(&v.numerators))
        .min()
        .expect("nonzero polynomial");
    let strict = pulled
        .div_var_power(i, shift as u32)?
        .rescale_exponent(i, v.denominator as u32)?;
    Ok((strict, wt))
}

/// Strict transforms of `f` in every chart.
pub fn strict_transforms(f: &Poly, v: &WeightVector) -> Result<Vec<Poly>, WblowError> {
    (0..f.arity())
        .map(|i| strict_transform(f, v, i).map(|(p, _)| p))
        .collect()
}

/// `a(E, U, D)` for `D = (f = 0)` on `U = ℂⁿ/ℤ_r`.
pub fn pair_discrepancy(q: &QuotientType, f: &Poly, v: &WeightVector) -> Result<DiscrepancyReport, WblowError> {
    let canonical = canonical_discrepancy(q, v)?;
    require_semi_invariant(q, f)?;
    let divisor_weight = finite_weight(f, v)?;
    let pair = &canonical - &divisor_weight;
    Ok(DiscrepancyReport {
        integral: pair.is_integer(),
        canonical,
        divisor_weight,
        pair,
    })
}

fn require_semi_invariant(q: &QuotientType, f: &Poly) -> Result<(), WblowError> {
    if semi_invariant_character(f, q)?.is_none() {
        return Err(WblowError::NotSemiInvariant {
            poly: f.to_string(),
            quotient: q.clone(),
        });
    }
    Ok(())
}

/// Discrepancies on a hypersurface quotient `U = (h = 0)/ℤ_r` whose blow-up is
/// the strict transform of `h` under the ambient `v`-blow-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceDiscrepancy {
    pub ambient_canonical: BigRational,
    pub hypersurface_weight: BigRational,
    /// `a(E, U)` by adjunction: ambient canonical minus `wt_v(h)`.
    pub canonical: BigRational,
    pub divisor_weight: Option<BigRational>,
    /// `a(E, U, D)` when a divisor `D = (g = 0)` on `U` is given.
    pub pair: Option<BigRational>,
    pub integral: bool,
}

pub fn hypersurface_discrepancy(
    q: &QuotientType,
    h: &Poly,
    divisor: Option<&Poly>,
    v: &WeightVector,
) -> Result<HypersurfaceDiscrepancy, WblowError> {
    let ambient_canonical = canonical_discrepancy(q, v)?;
    require_semi_invariant(q, h)?;
    let hypersurface_weight = finite_weight(h, v)?;
    let canonical = &ambient_canonical - &hypersurface_weight;
    let (divisor_weight, pair) = match divisor {
        Some(g) => {
            require_semi_invariant(q, g)?;
            let w = finite_weight(g, v)?;
            let pair = &canonical - &w;
            (Some(w), Some(pair))
        }
        None => (None, None),
    };
    let integral = pair.as_ref().unwrap_or(&canonical).is_integer();
    Ok(HypersurfaceDiscrepancy {
        ambient_canonical,
        hypersurface_weight,
        canonical,
        divisor_weight,
        pair,
        integral,
    })
}

pub fn is_nonpositive_integer(q: &BigRational) -> bool {
    q.is_integer() && *q <= BigRational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ratio, rational};

    fn qt(s: &str) -> QuotientType {
        s.parse().unwrap()
    }

    fn wv(s: &str) -> WeightVector {
        s.parse().unwrap()
    }

    const XYZU: [&str; 4] = ["x", "y", "z", "u"];
    const XYZ: [&str; 3] = ["x", "y", "z"];

    #[test]
    fn weight_vector_syntax() {
        let v = wv("1/4(1,3,2,1)");
        assert_eq!((v.numerators(), v.denominator()), (&[1, 3, 2, 1][..], 4));
        assert_eq!(wv("(3,2,1)").denominator(), 1);
        assert_eq!(wv("3,2,1"), wv("(3,2,1)"));
        assert_eq!(wv("(3,2,1)").to_string(), "(3,2,1)");
        assert!("1/4(1,0,2)".parse::<WeightVector>().is_err());
        assert!("1/4 1,2".parse::<WeightVector>().is_err());
    }

    #[test]
    fn primitivity() {
        assert!(check_primitive(&qt("1/4(1,3,2,1)"), &wv("1/4(1,3,2,1)")));
        assert!(!check_primitive(&QuotientType::smooth(3), &wv("(2,2,2)")));
        assert!(check_primitive(&qt("1/2(1,1,1)"), &wv("1/2(1,1,1)")));
        // (2,2,2)/2 = (1,1,1) is in Z^3 but is not primitive there
        assert!(!check_primitive(&qt("1/2(1,1,1)"), &wv("1/2(2,2,2)")));
        assert!(check_primitive(&QuotientType::smooth(3), &wv("(3,2,1)")));
    }

    #[test]
    fn primitivity_matches_brute_force() {
        // v/d ∈ N  ⇔  exists integer m, k with d·(b/r) ... enumerate over small vectors
        let q = qt("1/6(1,2,3)");
        for b0 in 1..13u64 {
            for b1 in 1..13u64 {
                for b2 in 1..13u64 {
                    let v = WeightVector::new(vec![b0, b1, b2], 6).unwrap();
                    let member =
                        |c: &[u64]| (0..6u64).any(|k| c.iter().zip([1u64, 2, 3]).all(|(ci, a)| ci % 6 == k * a % 6));
                    if !member(&[b0, b1, b2]) {
                        continue;
                    }
                    let brute = (2..=12u64)
                        .any(|d| [b0, b1, b2].iter().all(|b| b % d == 0) && member(&[b0 / d, b1 / d, b2 / d]));
                    assert_eq!(check_primitive(&q, &v), !brute, "{v}");
                }
            }
        }
    }

    #[test]
    fn chart_types_of_the_quartic_cover() {
        let cs = charts(&qt("1/4(1,3,2,1)"), &wv("1/4(1,3,2,1)")).unwrap();
        let types: Vec<String> = cs.iter().map(|c| c.quotient.to_string()).collect();
        assert_eq!(types, ["1/1(0,0,0,0)", "1/3(2,1,1,2)", "1/2(1,1,0,1)", "1/1(0,0,0,0)"]);
        let vars = crate::poly::var_names(&XYZU);
        assert_eq!(
            cs[1].map.render(&vars),
            ["x*y^(1/4)", "y^(3/4)", "z*y^(1/2)", "u*y^(1/4)"]
        );
    }

    #[test]
    fn charts_reject_bad_weights() {
        let q = qt("1/4(1,3,2,1)");
        assert!(matches!(
            charts(&q, &wv("1/4(1,1,1,1)")),
            Err(WblowError::NotInLattice { .. })
        ));
        assert!(matches!(
            charts(&q, &wv("1/2(1,1,1,1)")),
            Err(WblowError::Denominator { .. })
        ));
        assert!(matches!(
            charts(&q, &wv("1/4(2,6,4,2)")),
            Err(WblowError::NotPrimitive { .. })
        ));
        assert!(matches!(charts(&q, &wv("1/4(1,3,2)")), Err(WblowError::Arity { .. })));
    }

    #[test]
    fn canonical_discrepancies() {
        assert_eq!(
            canonical_discrepancy(&qt("1/4(1,3,2,1)"), &wv("1/4(1,3,2,1)")).unwrap(),
            ratio(3, 4)
        );
        let smooth = QuotientType::smooth(3);
        assert_eq!(canonical_discrepancy(&smooth, &wv("(1,1,1)")).unwrap(), rational(2));
        assert_eq!(canonical_discrepancy(&smooth, &wv("(3,2,1)")).unwrap(), rational(5));
    }

    #[test]
    fn strict_transforms_of_the_quartic_cover() {
        let f = Poly::parse("x^2+y^2+z^3+u^2", &XYZU).unwrap();
        let v = wv("1/4(1,3,2,1)");
        let expected = [
            "1+x*(y^2+z^3)+u^2",
            "x^2+y*(1+z^3)+u^2",
            "x^2+z*(1+y^2)+u^2",
            "x^2+u*(y^2+z^3)+1",
        ];
        for (i, e) in expected.iter().enumerate() {
            let (g, w) = strict_transform(&f, &v, i).unwrap();
            assert_eq!(g, Poly::parse(e, &XYZU).unwrap(), "chart {i}");
            assert_eq!(w, ratio(1, 2));
        }
        assert_eq!(initial_form(&f, &v), Poly::parse("x^2+u^2", &XYZU).unwrap());
    }

    #[test]
    fn hyperplane_transform_is_a_unit() {
        let f = Poly::parse("x", &XYZ).unwrap();
        let (g, w) = strict_transform(&f, &wv("(1,1,1)"), 0).unwrap();
        assert_eq!(g, Poly::parse("1", &XYZ).unwrap());
        assert_eq!(w, rational(1));
    }

    #[test]
    fn non_semi_invariant_exponents_are_rejected() {
        let f = Poly::parse("x+y^2", &XYZ).unwrap();
        assert!(strict_transform(&f, &wv("1/2(1,1,1)"), 0).unwrap_err().is_internal());
        assert!(matches!(
            pair_discrepancy(&qt("1/2(1,1,1)"), &f, &wv("1/2(1,1,1)")),
            Err(WblowError::NotSemiInvariant { .. })
        ));
    }

    #[test]
    fn pair_discrepancies() {
        let f = Poly::parse("x^3+y^3+z^3", &XYZ).unwrap();
        let rep = pair_discrepancy(&qt("1/2(1,1,1)"), &f, &wv("1/2(1,1,1)")).unwrap();
        assert_eq!(
            (rep.canonical.clone(), rep.divisor_weight.clone()),
            (ratio(1, 2), ratio(3, 2))
        );
        assert_eq!(rep.pair, rational(-1));
        assert!(rep.integral);

        let smooth = QuotientType::smooth(3);
        let g = Poly::parse("x^2+y^3+y*z^4", &XYZ).unwrap();
        assert_eq!(
            pair_discrepancy(&smooth, &g, &wv("(3,2,1)")).unwrap().pair,
            rational(-1)
        );
        let h = Poly::parse("x^2+y^4+z^5", &XYZ).unwrap();
        assert_eq!(
            pair_discrepancy(&smooth, &h, &wv("(2,1,1)")).unwrap().pair,
            rational(-1)
        );
    }

    #[test]
    fn hypersurface_quotient_discrepancies() {
        let q = qt("1/4(1,3,2,1)");
        let v = wv("1/4(1,3,2,1)");
        let h = Poly::parse("x^2+y^2+z^3+u^2", &XYZU).unwrap();
        let rep = hypersurface_discrepancy(&q, &h, None, &v).unwrap();
        assert_eq!(rep.ambient_canonical, ratio(3, 4));
        assert_eq!(rep.hypersurface_weight, ratio(1, 2));
        assert_eq!(rep.canonical, ratio(1, 4));
        assert!(!rep.integral);
        let d = Poly::parse("y*z", &XYZU).unwrap();
        let rep = hypersurface_discrepancy(&q, &h, Some(&d), &v).unwrap();
        assert_eq!(rep.pair, Some(rational(-1)));
        assert!(rep.integral);
    }
}
