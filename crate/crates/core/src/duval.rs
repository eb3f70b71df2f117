//! Du Val classification of surface germs `(f = 0) ⊂ ℂ³`.
//!
//! Double points are split as `x² + g(y, z)` up to a truncation degree `N` and
//! classified from low jets of `g`. Indices of `A` and `D` come from the Milnor
//! number, which is also used to cross-check every `E` verdict. Germs that are
//! not Du Val get a weighted blow-up with discrepancy `≤ −1`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclo::QuotientType;
use crate::locdef::{milnor_number, LocdefError, Truncation};
use crate::poly::{rational, var_names, Monomial, Poly, Valuation};
use crate::wblow::{pair_discrepancy, WblowError, WeightVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DuvalError {
    #[error("expected a germ in {expected} variables, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("the germ {0} does not vanish at the origin")]
    NotAtOrigin(String),
    #[error("the germ {0} has zero quadratic part but order 2")]
    RankZero(String),
    #[error("the germ {germ} does not have an isolated singularity (Milnor number unstable up to degree {cap})")]
    NonIsolated { germ: String, cap: u32 },
    #[error("truncation degree {given} is too small to decide; retry with at least {needed}")]
    TruncationTooSmall { needed: u32, given: u32 },
    #[error("inconsistent classification of {germ}: {detail}")]
    Inconsistent { germ: String, detail: String },
    #[error(transparent)]
    Blowup(#[from] WblowError),
}

impl DuvalError {
    pub fn is_internal(&self) -> bool {
        match self {
            DuvalError::RankZero(_) | DuvalError::Inconsistent { .. } => true,
            DuvalError::Blowup(e) => e.is_internal(),
            _ => false,
        }
    }
}

fn from_locdef(e: LocdefError, germ: &Poly) -> DuvalError {
    match e {
        LocdefError::NotIsolated { cap, .. } => DuvalError::NonIsolated {
            germ: germ.to_string(),
            cap,
        },
        other => DuvalError::Inconsistent {
            germ: germ.to_string(),
            detail: other.to_string(),
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdeFamily {
    A,
    D,
    E6,
    E7,
    E8,
}

impl AdeFamily {
    pub fn name(self) -> &'static str {
        match self {
            AdeFamily::A => "A",
            AdeFamily::D => "D",
            AdeFamily::E6 => "E6",
            AdeFamily::E7 => "E7",
            AdeFamily::E8 => "E8",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Smooth,
    DuVal { family: AdeFamily, index: Option<usize> },
    NotDuVal,
}

impl Verdict {
    /// Milnor number implied by the verdict, where it is determined.
    pub fn milnor(&self) -> Option<usize> {
        match self {
            Verdict::Smooth => Some(0),
            Verdict::DuVal { family, index } => match family {
                AdeFamily::A | AdeFamily::D => *index,
                AdeFamily::E6 => Some(6),
                AdeFamily::E7 => Some(7),
                AdeFamily::E8 => Some(8),
            },
            Verdict::NotDuVal => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Smooth => write!(f, "smooth"),
            Verdict::DuVal { family, index: Some(k) } => write!(f, "{}{k}", family.name()),
            Verdict::DuVal { family, index: None } => write!(f, "{}", family.name()),
            Verdict::NotDuVal => write!(f, "not Du Val"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Linear,
    Permutation,
    Shear,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::Linear => "linear",
            StepKind::Permutation => "permutation",
            StepKind::Shear => "shear",
        }
    }
}

/// One substitution `xᵢ ↦ images[i]`, applied to the current equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub kind: StepKind,
    pub images: Vec<Poly>,
}

impl Step {
    /// `var -> image` for every variable that actually moves.
    pub fn render(&self) -> Vec<String> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, p)| **p != Poly::var(p.vars().to_vec(), *i))
            .map(|(i, p)| format!("{} -> {}", p.vars()[i], p))
            .collect()
    }
}

/// Substitutions in the order they were applied.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoordinateChange {
    pub steps: Vec<Step>,
}

impl CoordinateChange {
    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    fn push(&mut self, step: Step, truncate: u32) {
        if step.render().is_empty() {
            return;
        }
        if step.kind == StepKind::Shear {
            if let Some(last) = self.steps.last_mut() {
                if last.kind == StepKind::Shear {
                    let images = last
                        .images
                        .iter()
                        .map(|p| p.substitute_truncated(&step.images, truncate).expect("matching arity"))
                        .collect();
                    last.images = images;
                    return;
                }
            }
        }
        self.steps.push(step);
    }

    /// Apply every step to `f`, truncating at total degree `n`.
    pub fn apply(&self, f: &Poly, n: u32) -> Poly {
        self.steps.iter().fold(f.jet(n), |acc, s| {
            acc.substitute_truncated(&s.images, n).expect("matching arity")
        })
    }
}

/// Suggested weighted blow-up, valid in the coordinates of `normal_form`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recommendation {
    pub weights: WeightVector,
    pub discrepancy: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub verdict: Verdict,
    pub recommendation: Option<Recommendation>,
    pub normalization: CoordinateChange,
    pub milnor: Option<usize>,
    /// Equation in the final coordinates, truncated at degree `N`.
    pub normal_form: Poly,
}

fn check_arity(f: &Poly, n: usize) -> Result<(), DuvalError> {
    if f.arity() != n {
        return Err(DuvalError::Arity {
            expected: n,
            found: f.arity(),
        });
    }
    Ok(())
}

fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = &m[i][c] / &m[r][c];
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= &factor * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of the quadratic part of `f`.
pub fn hessian_rank(f: &Poly) -> usize {
    let n = f.arity();
    let q = f.homogeneous_part(2);
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for (mono, c) in q.terms() {
        let idx: Vec<usize> = mono
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] += c * rational(2);
        } else {
            m[i][j] += c;
            m[j][i] += c;
        }
    }
    rank(m)
}

fn var(vars: &[String], i: usize) -> Poly {
    Poly::var(vars.to_vec(), i)
}

/// Linear form `ℓ` with `c = unit·ℓ³`, normalized so its first nonzero
/// coefficient is 1; `None` when the binary cubic is not a cube.
pub fn perfect_cube_root(c: &Poly) -> Option<Poly> {
    assert_eq!(c.arity(), 2, "binary cubic expected");
    if c.is_zero() || !c.terms().all(|(m, _)| m.degree() == 3) {
        return None;
    }
    let vars = c.vars().to_vec();
    let a0 = c.coeff(&[3, 0]);
    let (unit, ell) = if !a0.is_zero() {
        let t = c.coeff(&[2, 1]) / (rational(3) * &a0);
        let ell = &var(&vars, 0) + &var(&vars, 1).scale(&t);
        (a0, ell)
    } else {
        (c.coeff(&[0, 3]), var(&vars, 1))
    };
    (ell.pow(3).scale(&unit) == *c).then_some(ell)
}

/// Result of the splitting lemma: `f ∘ φ ≡ unit·(x² + g(y, z))` up to a unit
/// factor on `x²` and terms of degree `> N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    /// Residual in the last two variables, truncated at degree `N`.
    pub g: Poly,
    pub unit: BigRational,
    pub change: CoordinateChange,
}

/// Bring an order-2 germ into the form `x² + g(y, z)` modulo degree `N + 1`.
pub fn truncated_split(f: &Poly, n: u32) -> Result<Split, DuvalError> {
    check_arity(f, 3)?;
    let vars = f.vars().to_vec();
    let mut change = CoordinateChange::default();
    let mut cur = f.jet(n);
    let q = cur.homogeneous_part(2);
    if q.is_zero() {
        return Err(DuvalError::RankZero(f.to_string()));
    }
    let square = |p: &Poly, i: usize| {
        let mut e = vec![0; 3];
        e[i] = 2;
        p.coeff(&e)
    };
    let mut pivot = (0..3).find(|&i| !square(&q, i).is_zero());
    if pivot.is_none() {
        // only mixed terms: x_i -> x_i + x_j creates a square
        let (m, _) = q.terms().next().expect("nonzero quadratic part");
        let idx: Vec<usize> = (0..3).filter(|&i| m.exponents()[i] > 0).collect();
        let (i, j) = (idx[0], idx[1]);
        let images: Vec<Poly> = (0..3)
            .map(|k| {
                if k == i {
                    &var(&vars, i) + &var(&vars, j)
                } else {
                    var(&vars, k)
                }
            })
            .collect();
        cur = cur.substitute_truncated(&images, n)?;
        change.push(
            Step {
                kind: StepKind::Linear,
                images,
            },
            n,
        );
        pivot = Some(j);
    }
    let i = pivot.expect("square term");
    if i != 0 {
        let images: Vec<Poly> = (0..3)
            .map(|k| {
                var(
                    &vars,
                    if k == 0 {
                        i
                    } else if k == i {
                        0
                    } else {
                        k
                    },
                )
            })
            .collect();
        cur = cur.substitute_truncated(&images, n)?;
        change.push(
            Step {
                kind: StepKind::Permutation,
                images,
            },
            n,
        );
    }
    let c = cur.coeff(&[2, 0, 0]);
    let two_c = rational(2) * &c;
    loop {
        let linear = x_coefficient(&cur, 1);
        if linear.is_zero() {
            break;
        }
        let shift = linear.scale(&(-BigRational::one() / &two_c));
        let images = vec![&var(&vars, 0) + &shift, var(&vars, 1), var(&vars, 2)];
        cur = cur.substitute_truncated(&images, n)?;
        change.push(
            Step {
                kind: StepKind::Shear,
                images,
            },
            n,
        );
    }
    let g = cur
        .filter(|m| m.exponents()[0] == 0)
        .scale(&(BigRational::one() / &c))
        .project(&[1, 2])?;
    Ok(Split { g, unit: c, change })
}

impl From<crate::poly::PolyError> for DuvalError {
    fn from(e: crate::poly::PolyError) -> Self {
        DuvalError::Blowup(WblowError::Inexact(e))
    }
}

/// Coefficient of `x₀^k` as a polynomial in the remaining variables (kept in
/// the same ring).
fn x_coefficient(p: &Poly, k: u32) -> Poly {
    coefficient_of(p, 0, k)
}

fn coefficient_of(p: &Poly, i: usize, k: u32) -> Poly {
    Poly::from_terms(
        p.vars().to_vec(),
        p.terms().filter(|(m, _)| m.exponents()[i] == k).map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e[i] = 0;
            (Monomial::new(e), c.clone())
        }),
    )
}

const CUBE_JET: u32 = 6;

fn recommend(normal_form: &Poly, weights: &[u64]) -> Result<Recommendation, DuvalError> {
    let v = WeightVector::integral(weights)?;
    let rep = pair_discrepancy(&QuotientType::smooth(3), normal_form, &v)?;
    if !(rep.integral && rep.pair <= rational(-1)) {
        return Err(DuvalError::Inconsistent {
            germ: normal_form.to_string(),
            detail: format!("blow-up {v} has discrepancy {} > -1", rep.pair),
        });
    }
    Ok(Recommendation {
        weights: v,
        discrepancy: rep.pair,
    })
}

fn fresh_name(taken: &[String]) -> String {
    ["x", "w", "s", "t"]
        .iter()
        .map(|s| s.to_string())
        .find(|s| !taken.contains(s))
        .unwrap_or_else(|| format!("x{}", taken.len()))
}

/// Classify `x² + g(y, z)` for a binary germ `g` of order at least 2.
pub fn classify_double_point(g: &Poly, trunc: Truncation) -> Result<SingularityReport, DuvalError> {
    check_arity(g, 2)?;
    let mut vars = vec![fresh_name(g.vars())];
    vars.extend(g.vars().iter().cloned());
    let f = &Poly::var(vars.clone(), 0).pow(2) + &g.embed(vars.clone(), &[1, 2]);
    let mu = milnor_number(&f, trunc.cap).map_err(|e| from_locdef(e, &f))?;
    classify_split(f.jet(trunc.degree), mu, trunc.degree, CoordinateChange::default())
}

/// `f = x² + g(y, z)` (truncated at `n`); `mu` is the Milnor number of the
/// original germ.
fn classify_split(f: Poly, mu: usize, n: u32, mut change: CoordinateChange) -> Result<SingularityReport, DuvalError> {
    let g = f.filter(|m| m.exponents()[0] == 0);
    let ord = g.order();
    let report = |verdict, recommendation, change, normal_form| SingularityReport {
        verdict,
        recommendation,
        normalization: change,
        milnor: Some(mu),
        normal_form,
    };
    match ord {
        Valuation::Finite(2) => {
            let verdict = Verdict::DuVal {
                family: AdeFamily::A,
                index: Some(mu),
            };
            Ok(report(verdict, None, change, f))
        }
        Valuation::Finite(3) => {
            let vars = f.vars().to_vec();
            let cubic = g.homogeneous_part(3).project(&[1, 2])?;
            let Some(ell) = perfect_cube_root(&cubic) else {
                if mu < 4 {
                    return Err(DuvalError::Inconsistent {
                        germ: f.to_string(),
                        detail: format!("D-type cubic with Milnor number {mu}"),
                    });
                }
                let verdict = Verdict::DuVal {
                    family: AdeFamily::D,
                    index: Some(mu),
                };
                return Ok(report(verdict, None, change, f));
            };
            if n < CUBE_JET {
                return Err(DuvalError::TruncationTooSmall {
                    needed: CUBE_JET,
                    given: n,
                });
            }
            // new coordinates (Y, Z) with Y = ℓ
            let a = ell.coeff(&[1, 0]);
            let images = if a.is_zero() {
                vec![var(&vars, 0), var(&vars, 2), var(&vars, 1)]
            } else {
                let b = ell.coeff(&[0, 1]);
                let y = &var(&vars, 1) - &var(&vars, 2).scale(&b);
                vec![var(&vars, 0), y.scale(&(BigRational::one() / &a)), var(&vars, 2)]
            };
            let mut cur = f.substitute_truncated(&images, n)?;
            change.push(
                Step {
                    kind: StepKind::Linear,
                    images,
                },
                n,
            );
            let u = cur.coeff(&[0, 3, 0]);
            loop {
                let p = coefficient_of(&cur.filter(|m| m.exponents()[0] == 0), 1, 2);
                if p.is_zero() {
                    break;
                }
                let shift = p.scale(&(-BigRational::one() / (rational(3) * &u)));
                let images = vec![var(&vars, 0), &var(&vars, 1) + &shift, var(&vars, 2)];
                cur = cur.substitute_truncated(&images, n)?;
                change.push(
                    Step {
                        kind: StepKind::Shear,
                        images,
                    },
                    n,
                );
            }
            let alpha = cur.coeff(&[0, 0, 4]);
            let beta = cur.coeff(&[0, 1, 3]);
            let gamma = cur.coeff(&[0, 0, 5]);
            let (verdict, expected) = if !alpha.is_zero() {
                (
                    Verdict::DuVal {
                        family: AdeFamily::E6,
                        index: None,
                    },
                    Some(6),
                )
            } else if !beta.is_zero() {
                (
                    Verdict::DuVal {
                        family: AdeFamily::E7,
                        index: None,
                    },
                    Some(7),
                )
            } else if !gamma.is_zero() {
                (
                    Verdict::DuVal {
                        family: AdeFamily::E8,
                        index: None,
                    },
                    Some(8),
                )
            } else {
                (Verdict::NotDuVal, None)
            };
            match expected {
                Some(e) if e != mu => Err(DuvalError::Inconsistent {
                    germ: cur.to_string(),
                    detail: format!("{verdict} verdict but Milnor number {mu}"),
                }),
                Some(_) => Ok(report(verdict, None, change, cur)),
                None => {
                    let rec = recommend(&cur, &[3, 2, 1])?;
                    Ok(report(verdict, Some(rec), change, cur))
                }
            }
        }
        // order ≥ 4, or no terms up to degree N (hence order > N ≥ 4)
        _ => {
            let rec = recommend(&f, &[2, 1, 1])?;
            Ok(report(Verdict::NotDuVal, Some(rec), change, f))
        }
    }
}

/// Classify a surface germ `(f = 0) ⊂ ℂ³` at the origin.
pub fn classify_germ(f: &Poly, trunc: Truncation) -> Result<SingularityReport, DuvalError> {
    check_arity(f, 3)?;
    if !f.constant_term().is_zero() {
        return Err(DuvalError::NotAtOrigin(f.to_string()));
    }
    let order = match f.order() {
        Valuation::Finite(d) => d,
        Valuation::Infinity => {
            return Err(DuvalError::NonIsolated {
                germ: f.to_string(),
                cap: trunc.cap,
            })
        }
    };
    if order <= 1 {
        return Ok(SingularityReport {
            verdict: Verdict::Smooth,
            recommendation: None,
            normalization: CoordinateChange::default(),
            milnor: Some(0),
            normal_form: f.clone(),
        });
    }
    if trunc.degree < 3 {
        return Err(DuvalError::TruncationTooSmall {
            needed: 3,
            given: trunc.degree,
        });
    }
    let mu = milnor_number(f, trunc.cap).map_err(|e| from_locdef(e, f))?;
    if order >= 3 {
        let rec = recommend(f, &[1, 1, 1])?;
        if rec.discrepancy != rational(2 - order as i64) {
            return Err(DuvalError::Inconsistent {
                germ: f.to_string(),
                detail: format!("origin blow-up discrepancy {}", rec.discrepancy),
            });
        }
        return Ok(SingularityReport {
            verdict: Verdict::NotDuVal,
            recommendation: Some(rec),
            normalization: CoordinateChange::default(),
            milnor: Some(mu),
            normal_form: f.clone(),
        });
    }
    if hessian_rank(f) == 3 {
        if mu != 1 {
            return Err(DuvalError::Inconsistent {
                germ: f.to_string(),
                detail: format!("nondegenerate quadratic part but Milnor number {mu}"),
            });
        }
        return Ok(SingularityReport {
            verdict: Verdict::DuVal {
                family: AdeFamily::A,
                index: Some(1),
            },
            recommendation: None,
            normalization: CoordinateChange::default(),
            milnor: Some(1),
            normal_form: f.clone(),
        });
    }
    let split = truncated_split(f, trunc.degree)?;
    let vars = f.vars().to_vec();
    let normal = &Poly::var(vars.clone(), 0).pow(2) + &split.g.embed(vars, &[1, 2]);
    classify_split(normal, mu, trunc.degree, split.change)
}

/// Parse a germ in `x, y, z`.
pub fn germ(text: &str) -> Result<Poly, crate::poly::ParseError> {
    Poly::parse(text, &var_names(&["x", "y", "z"]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        germ(s).unwrap()
    }

    fn yz(s: &str) -> Poly {
        Poly::parse(s, &["y", "z"]).unwrap()
    }

    fn verdict(s: &str) -> Verdict {
        classify_germ(&p(s), Truncation::default()).unwrap().verdict
    }

    fn du_val(family: AdeFamily, index: Option<usize>) -> Verdict {
        Verdict::DuVal { family, index }
    }

    #[test]
    fn smooth_and_ordinary_points() {
        assert_eq!(verdict("x+y^2"), Verdict::Smooth);
        assert_eq!(verdict("x^2+y^2+z^2"), du_val(AdeFamily::A, Some(1)));
        assert_eq!(verdict("x*y+z^2"), du_val(AdeFamily::A, Some(1)));
    }

    #[test]
    fn triple_points_blow_up_at_the_origin() {
        let rep = classify_germ(&p("x^3+y^3+z^3"), Truncation::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::NotDuVal);
        let rec = rep.recommendation.unwrap();
        assert_eq!(rec.weights.numerators(), &[1, 1, 1]);
        assert_eq!(rec.discrepancy, rational(-1));
        let rep = classify_germ(&p("x^4+y^4+z^5"), Truncation::default()).unwrap();
        assert_eq!(rep.recommendation.unwrap().discrepancy, rational(-2));
    }

    #[test]
    fn completing_the_square() {
        assert_eq!(verdict("x^2+2*x*y+y^2+y^3+z^4"), du_val(AdeFamily::E6, None));
        assert_eq!(verdict("x^2+y^3+z^4"), du_val(AdeFamily::E6, None));
    }

    #[test]
    fn split_examples() {
        let s = truncated_split(&p("x^2+y^3+z^4"), 12).unwrap();
        assert_eq!(s.g, yz("y^3+z^4"));
        assert!(s.change.is_identity());

        let s = truncated_split(&p("x^2+x*z^3+y^3"), 12).unwrap();
        assert_eq!(s.g, yz("y^3-1/4*z^6"));
        assert_eq!(s.change.steps.len(), 1);
        assert_eq!(s.change.steps[0].render(), ["x -> -1/2*z^3+x"]);

        let f = p("(x+y^2)^2+z^5-y^4");
        let s = truncated_split(&f, 12).unwrap();
        assert_eq!(s.g, yz("z^5-y^4"));
        // the recorded change brings f to x^2 + g exactly
        let back = s.change.apply(&f, 12);
        assert_eq!(back, &p("x^2") + &s.g.embed(f.vars().to_vec(), &[1, 2]));
    }

    #[test]
    fn split_creates_a_square_from_mixed_terms() {
        let f = p("y*z+x^3");
        let s = truncated_split(&f, 12).unwrap();
        assert_eq!(s.g.order(), Valuation::Finite(2));
        assert!(truncated_split(&p("x^3+y^3"), 12).is_err());
    }

    #[test]
    fn double_point_tree() {
        let t = Truncation::default();
        let cls = |s: &str| classify_double_point(&yz(s), t).unwrap();
        assert_eq!(cls("y^3+z^4").verdict, du_val(AdeFamily::E6, None));
        assert_eq!(cls("y^3+y*z^3").verdict, du_val(AdeFamily::E7, None));
        assert_eq!(cls("y^3+z^5").verdict, du_val(AdeFamily::E8, None));
        assert_eq!(cls("y*(z^2+y^2)").verdict, du_val(AdeFamily::D, Some(4)));
        assert_eq!(cls("y^2+z^5").verdict, du_val(AdeFamily::A, Some(4)));
        let rep = cls("y^3+y*z^4+z^6");
        assert_eq!(rep.verdict, Verdict::NotDuVal);
        let rec = rep.recommendation.unwrap();
        assert_eq!(
            (rec.weights.numerators(), rec.discrepancy),
            (&[3u64, 2, 1][..], rational(-1))
        );
        let rep = cls("y^4+z^5");
        let rec = rep.recommendation.unwrap();
        assert_eq!(
            (rec.weights.numerators(), rec.discrepancy),
            (&[2u64, 1, 1][..], rational(-1))
        );
    }

    #[test]
    fn cube_in_skew_coordinates() {
        // (y+z)^3 + z^4 is E6 after Y = y + z
        assert_eq!(verdict("x^2+(y+z)^3+z^4"), du_val(AdeFamily::E6, None));
        // y^2 z^2 is sheared away into y z^4, leaving the 5-jet to decide
        assert_eq!(verdict("x^2+y^3+y^2*z^2+z^5"), du_val(AdeFamily::E8, None));
        assert_eq!(verdict("x^2+y^3+y^2*z^2+z^6"), Verdict::NotDuVal);
        assert_eq!(verdict("x^2+z^3+y^5"), du_val(AdeFamily::E8, None));
    }

    #[test]
    fn cube_roots() {
        assert_eq!(perfect_cube_root(&yz("y^3+3*y^2*z+3*y*z^2+z^3")), Some(yz("y+z")));
        assert_eq!(perfect_cube_root(&yz("y^3+z^3")), None);
        assert_eq!(perfect_cube_root(&yz("8*y^3")), Some(yz("y")));
        assert_eq!(perfect_cube_root(&yz("-2*z^3")), Some(yz("z")));
        assert_eq!(perfect_cube_root(&yz("y*z^2")), None);
        assert_eq!(perfect_cube_root(&yz("(2*y-3*z)^3")), Some(yz("y-3/2*z")));
    }

    #[test]
    fn non_isolated_germs_are_rejected() {
        assert!(matches!(
            classify_germ(&p("x^2+y^2*z"), Truncation::default()),
            Err(DuvalError::NonIsolated { .. })
        ));
        assert!(matches!(
            classify_germ(&p("1+x"), Truncation::default()),
            Err(DuvalError::NotAtOrigin(_))
        ));
    }

    #[test]
    fn small_truncation_is_reported() {
        let t = Truncation { degree: 4, cap: 24 };
        assert!(matches!(
            classify_germ(&p("x^2+y^3+z^4"), t),
            Err(DuvalError::TruncationTooSmall { needed: 6, given: 4 })
        ));
    }

    #[test]
    fn hessian_ranks() {
        assert_eq!(hessian_rank(&p("x^2+y^2+z^2")), 3);
        assert_eq!(hessian_rank(&p("x*y")), 2);
        assert_eq!(hessian_rank(&p("(x+y)^2+z^3")), 1);
    }
}
