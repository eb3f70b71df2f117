//! Weighted projective hypersurfaces `X_d ⊂ ℙ(w₀,…,wₙ)`.
//!
//! Singularities are searched for on coordinate points and on the
//! one-dimensional coordinate strata only; deeper strata are not examined.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclo::{is_terminal_3fold, normalize_type, QuotientType};
use crate::poly::univariate::UniPoly;
use crate::poly::{Monomial, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WpsError {
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("{weights} weights but the equation has {vars} variables")]
    Arity { weights: usize, vars: usize },
    #[error("term {term} has weighted degree {found}, expected {expected}")]
    NotHomogeneous { term: String, found: u64, expected: u64 },
    #[error("the equation is zero")]
    ZeroEquation,
    #[error("stratum ({0}, {1}) is not a pair of distinct coordinates")]
    BadStratum(usize, usize),
    #[error("elephant extraction unsupported: {0}")]
    ElephantUnsupported(String),
    #[error("inconsistent root count on stratum ({i}, {j}): {roots} roots do not split into orbits of size {orbit}")]
    OrbitCount {
        i: usize,
        j: usize,
        roots: usize,
        orbit: u64,
    },
}

impl WpsError {
    pub fn is_internal(&self) -> bool {
        matches!(self, WpsError::OrbitCount { .. })
    }
}

/// Every `n`-element subset of the `n + 1` weights has gcd 1.
pub fn wellformed(weights: &[u64]) -> bool {
    (0..weights.len()).all(|skip| {
        weights
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .fold(0u64, |g, (_, &w)| g.gcd(&w))
            == 1
    })
}

/// `Σ wᵢ − Σ dⱼ`.
pub fn anticanonical_degree(weights: &[u64], degrees: &[u64]) -> i64 {
    weights.iter().sum::<u64>() as i64 - degrees.iter().sum::<u64>() as i64
}

/// Monomials of weighted degree `k` (none when `k < 0`), descending lex.
pub fn weighted_monomials(weights: &[u64], k: i64) -> Vec<Monomial> {
    fn rec(weights: &[u64], left: u64, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let i = prefix.len();
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::new(prefix.clone()));
            }
            return;
        }
        for e in (0..=left / weights[i]).rev() {
            prefix.push(e as u32);
            rec(weights, left - e * weights[i], prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 0 && !weights.is_empty() {
        rec(weights, k as u64, &mut Vec::new(), &mut out);
    }
    out
}

/// Anticanonical degree and section basis of a (complete intersection)
/// `X_{d₁,…} ⊂ ℙ(w)`.
pub fn anticanonical(weights: &[u64], degrees: &[u64]) -> (i64, Vec<Monomial>) {
    let k = anticanonical_degree(weights, degrees);
    (k, weighted_monomials(weights, k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpsHypersurface {
    weights: Vec<u64>,
    degree: u64,
    equation: Poly,
}

impl WpsHypersurface {
    pub fn new(weights: Vec<u64>, degree: u64, equation: Poly) -> Result<Self, WpsError> {
        if weights.contains(&0) {
            return Err(WpsError::NonPositiveWeight);
        }
        if weights.len() != equation.arity() {
            return Err(WpsError::Arity {
                weights: weights.len(),
                vars: equation.arity(),
            });
        }
        if equation.is_zero() {
            return Err(WpsError::ZeroEquation);
        }
        if let Some((m, _)) = equation.terms().find(|(m, _)| m.weighted_degree(&weights) != degree) {
            return Err(WpsError::NotHomogeneous {
                term: m.render(equation.vars()),
                found: m.weighted_degree(&weights),
                expected: degree,
            });
        }
        Ok(WpsHypersurface {
            weights,
            degree,
            equation,
        })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn equation(&self) -> &Poly {
        &self.equation
    }

    pub fn vars(&self) -> &[String] {
        self.equation.vars()
    }

    fn n(&self) -> usize {
        self.weights.len()
    }
}

/// A cyclic quotient type together with its normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalQuotient {
    pub raw: QuotientType,
    pub normalized: QuotientType,
    /// Terminality of a 3-dimensional type; `None` in other dimensions.
    pub terminal: Option<bool>,
}

impl LocalQuotient {
    fn of(raw: QuotientType) -> Self {
        let normalized = normalize_type(&raw);
        let terminal = is_terminal_3fold(&raw).ok();
        LocalQuotient {
            raw,
            normalized,
            terminal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexKind {
    OffX,
    QuasiSmooth {
        eliminated: usize,
        quotient: LocalQuotient,
    },
    NonQuasiSmooth {
        /// `F(xᵢ = 1)` in the remaining variables.
        chart_equation: Poly,
        /// `ℤ_{wᵢ}` acting on the remaining variables.
        action: QuotientType,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexReport {
    pub index: usize,
    pub kind: VertexKind,
}

impl VertexReport {
    pub fn on_x(&self) -> bool {
        !matches!(self.kind, VertexKind::OffX)
    }

    /// Normalized type when the vertex is a genuine cyclic quotient point.
    pub fn quotient_singularity(&self) -> Option<&QuotientType> {
        match &self.kind {
            VertexKind::QuasiSmooth { quotient, .. } if !quotient.raw.is_smooth() => Some(&quotient.normalized),
            _ => None,
        }
    }
}

pub fn vertex_report(x: &WpsHypersurface, i: usize) -> VertexReport {
    let w = &x.weights;
    let f = &x.equation;
    let n = x.n();
    let pure = x.degree.is_multiple_of(w[i]) && {
        let mut e = vec![0u32; n];
        e[i] = (x.degree / w[i]) as u32;
        !f.coeff(&e).is_zero()
    };
    if pure {
        return VertexReport {
            index: i,
            kind: VertexKind::OffX,
        };
    }
    let linear = (0..n).filter(|&j| j != i).find(|&j| {
        f.terms().any(|(m, _)| {
            let e = m.exponents();
            e[j] == 1 && e.iter().enumerate().all(|(k, &ek)| k == i || k == j || ek == 0)
        })
    });
    let others = |skip: &[usize]| -> Vec<usize> { (0..n).filter(|k| !skip.contains(k)).collect() };
    let kind = match linear {
        Some(j) => {
            let ws: Vec<i64> = others(&[i, j]).iter().map(|&k| w[k] as i64).collect();
            let raw = QuotientType::new(w[i], &ws).expect("positive weight");
            VertexKind::QuasiSmooth {
                eliminated: j,
                quotient: LocalQuotient::of(raw),
            }
        }
        None => {
            let keep = others(&[i]);
            let chart_equation = f
                .set_var(i, &BigRational::one())
                .project(&keep)
                .expect("variable set to a constant");
            let ws: Vec<i64> = keep.iter().map(|&k| w[k] as i64).collect();
            VertexKind::NonQuasiSmooth {
                chart_equation,
                action: QuotientType::new(w[i], &ws).expect("positive weight"),
            }
        }
    };
    VertexReport { index: i, kind }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointKind {
    /// Quasi-smooth point with nontrivial stabilizer.
    Quotient(LocalQuotient),
    NonQuasiSmooth,
}

/// A set of points of `X` on a stratum, off its two vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointClass {
    pub count: usize,
    pub stabilizer: u64,
    pub kind: PointKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumReport {
    pub pair: (usize, usize),
    pub stabilizer: u64,
    /// The whole stratum lies in `X`.
    pub contained: bool,
    /// The whole stratum is singular on `X` (a curve of singularities).
    pub singular_curve: bool,
    /// `F` restricted to the stratum.
    pub restriction: Poly,
    pub classes: Vec<PointClass>,
    /// Vertices of the stratum lying on `X` where `X` is not quasi-smooth.
    pub flagged_vertices: Vec<usize>,
}

fn restrict(p: &Poly, keep: &[usize]) -> Poly {
    p.filter(|m| {
        m.exponents()
            .iter()
            .enumerate()
            .all(|(k, &e)| e == 0 || keep.contains(&k))
    })
}

/// `h(1, t)` for a polynomial supported on variables `i` and `j`.
fn dehomogenize(p: &Poly, i: usize, j: usize) -> UniPoly {
    let q = p.set_var(i, &BigRational::one());
    UniPoly::from_poly(&q, j).expect("supported on the stratum")
}

fn common(polys: &[UniPoly]) -> UniPoly {
    polys.iter().fold(UniPoly::zero(), |g, p| g.gcd(p))
}

pub fn stratum_report(x: &WpsHypersurface, i: usize, j: usize) -> Result<StratumReport, WpsError> {
    let n = x.n();
    if i == j || i >= n || j >= n {
        return Err(WpsError::BadStratum(i, j));
    }
    let (i, j) = (i.min(j), i.max(j));
    let w = &x.weights;
    let g = w[i].gcd(&w[j]);
    let orbit = w[i] / g;
    let keep = [i, j];
    let f_s = restrict(&x.equation, &keep);
    let partials: Vec<Poly> = x.equation.partials().iter().map(|p| restrict(p, &keep)).collect();
    let dehom: Vec<UniPoly> = partials.iter().map(|p| dehomogenize(p, i, j)).collect();
    let orbits = |roots: usize| -> Result<usize, WpsError> {
        if !(roots as u64).is_multiple_of(orbit) {
            return Err(WpsError::OrbitCount { i, j, roots, orbit });
        }
        Ok(roots / orbit as usize)
    };
    let off_stratum: Vec<usize> = (0..n).filter(|k| !keep.contains(k)).collect();
    let transverse = |skip: Option<usize>| {
        let ws: Vec<i64> = std::iter::once(0)
            .filter(|_| skip.is_some())
            .chain(off_stratum.iter().filter(|&&k| Some(k) != skip).map(|&k| w[k] as i64))
            .collect();
        LocalQuotient::of(QuotientType::new(g, &ws).expect("positive gcd"))
    };
    let mut classes = Vec::new();
    let contained = f_s.is_zero();
    let mut singular_curve = false;
    if !contained {
        let r = dehomogenize(&f_s, i, j).strip_zero_root().1.squarefree_part();
        let total = orbits(r.distinct_nonzero_roots())?;
        let on_stratum_partials = common(&[r.clone(), dehom[i].clone(), dehom[j].clone()]);
        let mut all = vec![r.clone()];
        all.extend(dehom.iter().cloned());
        let non_qs = orbits(common(&all).distinct_nonzero_roots())?;
        let transverse_only = orbits(on_stratum_partials.distinct_nonzero_roots())? - non_qs;
        let stratum_transverse = total - non_qs - transverse_only;
        if g > 1 && stratum_transverse > 0 {
            classes.push(PointClass {
                count: stratum_transverse,
                stabilizer: g,
                kind: PointKind::Quotient(transverse(None)),
            });
        }
        if g > 1 && transverse_only > 0 {
            // first off-stratum variable whose partial is generically nonzero
            let k = off_stratum
                .iter()
                .copied()
                .find(|&k| {
                    common(&[on_stratum_partials.clone(), dehom[k].clone()]).distinct_nonzero_roots()
                        < on_stratum_partials.distinct_nonzero_roots()
                })
                .expect("some partial is nonzero at quasi-smooth points");
            classes.push(PointClass {
                count: transverse_only,
                stabilizer: g,
                kind: PointKind::Quotient(transverse(Some(k))),
            });
        }
        if non_qs > 0 {
            classes.push(PointClass {
                count: non_qs,
                stabilizer: g,
                kind: PointKind::NonQuasiSmooth,
            });
        }
    } else if g > 1 || partials.iter().all(Poly::is_zero) {
        singular_curve = true;
    } else {
        let nonzero: Vec<UniPoly> = dehom.iter().filter(|p| !p.is_zero()).cloned().collect();
        let non_qs = orbits(common(&nonzero).distinct_nonzero_roots())?;
        if non_qs > 0 {
            classes.push(PointClass {
                count: non_qs,
                stabilizer: g,
                kind: PointKind::NonQuasiSmooth,
            });
        }
    }
    let flagged_vertices = keep
        .iter()
        .copied()
        .filter(|&v| {
            let mut point = vec![BigRational::zero(); n];
            point[v] = BigRational::one();
            x.equation.eval(&point).is_zero() && x.equation.partials().iter().all(|p| p.eval(&point).is_zero())
        })
        .collect();
    Ok(StratumReport {
        pair: (i, j),
        stabilizer: g,
        contained,
        singular_curve,
        restriction: f_s,
        classes,
        flagged_vertices,
    })
}

/// `D = X ∩ (xᵢ = 0)` when `|−K_X|` is spanned by the single coordinate `xᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elephant {
    pub section: usize,
    pub equation: Poly,
    pub weights: Vec<u64>,
}

pub fn elephant_equation(x: &WpsHypersurface) -> Result<Elephant, WpsError> {
    let (k, sections) = anticanonical(&x.weights, &[x.degree]);
    if sections.len() != 1 {
        return Err(WpsError::ElephantUnsupported(format!(
            "h0(-K) = {} in degree {k}; a unique section is required",
            sections.len()
        )));
    }
    let s = &sections[0];
    if s.degree() != 1 {
        return Err(WpsError::ElephantUnsupported(format!(
            "the unique section {} is not a coordinate",
            s.render(x.vars())
        )));
    }
    let i = s.exponents().iter().position(|&e| e == 1).expect("degree one");
    let keep: Vec<usize> = (0..x.n()).filter(|&k| k != i).collect();
    let equation = x
        .equation
        .set_var(i, &BigRational::zero())
        .project(&keep)
        .expect("variable set to zero");
    let weights: Vec<u64> = keep.iter().map(|&k| x.weights[k]).collect();
    assert!(
        equation.is_weighted_homogeneous(&weights, x.degree),
        "elephant equation must stay homogeneous"
    );
    Ok(Elephant {
        section: i,
        equation,
        weights,
    })
}

pub const LIMITATIONS: [&str; 2] = [
    "singularities are searched on coordinate points and 1-dimensional coordinate strata only",
    "non-quasi-smooth points are reported by local model; they are not classified",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpsAnalysis {
    pub hypersurface: WpsHypersurface,
    pub wellformed: bool,
    pub vertices: Vec<VertexReport>,
    pub strata: Vec<StratumReport>,
    pub anticanonical_degree: i64,
    pub sections: Vec<Monomial>,
    pub elephant: Result<Elephant, WpsError>,
}

impl WpsAnalysis {
    /// Normalized quotient types with multiplicity (vertices and strata).
    pub fn quotient_singularities(&self) -> BTreeMap<QuotientType, usize> {
        let mut out = BTreeMap::new();
        for v in &self.vertices {
            if let Some(q) = v.quotient_singularity() {
                *out.entry(q.clone()).or_insert(0) += 1;
            }
        }
        for s in &self.strata {
            for c in &s.classes {
                if let PointKind::Quotient(q) = &c.kind {
                    *out.entry(q.normalized.clone()).or_insert(0) += c.count;
                }
            }
        }
        out
    }

    /// Non-quasi-smooth vertices plus non-quasi-smooth stratum points.
    pub fn non_quasi_smooth_count(&self) -> usize {
        let vertices = self
            .vertices
            .iter()
            .filter(|v| matches!(v.kind, VertexKind::NonQuasiSmooth { .. }))
            .count();
        let strata: usize = self
            .strata
            .iter()
            .flat_map(|s| &s.classes)
            .filter(|c| c.kind == PointKind::NonQuasiSmooth)
            .map(|c| c.count)
            .sum();
        vertices + strata
    }

    pub fn singular_curves(&self) -> Vec<(usize, usize)> {
        self.strata
            .iter()
            .filter(|s| s.singular_curve)
            .map(|s| s.pair)
            .collect()
    }
}

pub fn analyze(x: &WpsHypersurface) -> Result<WpsAnalysis, WpsError> {
    let n = x.n();
    let vertices = (0..n).map(|i| vertex_report(x, i)).collect();
    let mut strata = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            strata.push(stratum_report(x, i, j)?);
        }
    }
    let (anticanonical_degree, sections) = anticanonical(&x.weights, &[x.degree]);
    Ok(WpsAnalysis {
        hypersurface: x.clone(),
        wellformed: wellformed(&x.weights),
        vertices,
        strata,
        anticanonical_degree,
        sections,
        elephant: elephant_equation(x),
    })
}
