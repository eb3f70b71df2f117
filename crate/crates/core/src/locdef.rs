//! Truncated local algebras `𝒪/(I + 𝔪^N)` of hypersurface germs at the origin.
//!
//! Everything is finite-dimensional linear algebra on the monomials of degree
//! `< N`. If the dimension does not change from `N` to `N + 1` then
//! `𝔪^N ⊂ I + 𝔪^{N+1}`, hence `𝔪^N ⊂ I` by Nakayama, and the truncated value is
//! the true colength.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::cyclo::{monomial_character, semi_invariant_character, Character, CycloError, QuotientType};
use crate::linalg::{row_of, Column, Echelon};
use crate::poly::{Monomial, Poly};

/// Truncation settings: `degree` drives jet-level work (splitting lemma),
/// `cap` bounds the search for a stable colength.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub degree: u32,
    pub cap: u32,
}

impl Truncation {
    pub const DEFAULT_DEGREE: u32 = 12;
    pub const DEFAULT_CAP: u32 = 24;

    /// Degree `n` with the cap raised to at least `2n`.
    pub fn with_degree(n: u32) -> Self {
        Truncation {
            degree: n,
            cap: Self::DEFAULT_CAP.max(2 * n),
        }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            degree: Self::DEFAULT_DEGREE,
            cap: Self::DEFAULT_CAP,
        }
    }
}

impl FromStr for Truncation {
    type Err = String;

    /// `"N"` or `"N,cap"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| format!("invalid truncation '{s}': expected N or N,cap with positive integers"))
        };
        match s.split_once(',') {
            None => Ok(Truncation::with_degree(parse(s)?)),
            Some((n, cap)) => {
                let (n, cap) = (parse(n)?, parse(cap)?);
                if cap < n {
                    return Err(format!("invalid truncation '{s}': cap {cap} is below degree {n}"));
                }
                Ok(Truncation { degree: n, cap })
            }
        }
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.degree, self.cap)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocdefError {
    #[error("the germ {germ} has no isolated critical point (no stable colength up to degree {cap})")]
    NotIsolated { germ: String, cap: u32 },
    #[error("{poly} is not semi-invariant under {quotient}")]
    NotSemiInvariant { poly: String, quotient: QuotientType },
    #[error("truncation degree must be at least 1")]
    ZeroTruncation,
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdealTag {
    /// `J_f`, the Milnor algebra.
    Jacobian,
    /// `(f) + J_f`, the Tjurina algebra.
    Tjurina,
}

impl IdealTag {
    pub fn name(self) -> &'static str {
        match self {
            IdealTag::Jacobian => "jacobian",
            IdealTag::Tjurina => "tjurina",
        }
    }
}

impl FromStr for IdealTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jacobian" => Ok(IdealTag::Jacobian),
            "tjurina" => Ok(IdealTag::Tjurina),
            _ => Err(format!("unknown ideal '{s}': expected jacobian or tjurina")),
        }
    }
}

/// Monomial basis of `𝒪/(I + 𝔪^N)`.
#[derive(Clone, Debug)]
pub struct TruncatedQuotient {
    pub germ: Poly,
    pub truncation: u32,
    pub ideal: IdealTag,
    pub basis: Vec<Monomial>,
    echelon: Echelon,
}

impl TruncatedQuotient {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Normal form of `g` modulo `I + 𝔪^N`, as a polynomial in basis monomials.
    pub fn normal_form(&self, g: &Poly) -> Poly {
        let reduced = self.echelon.reduce(row_of(&g.jet(self.truncation - 1)));
        Poly::from_terms(g.vars().to_vec(), reduced.into_iter().map(|(c, v)| (c.monomial(), v)))
    }
}

fn generators(f: &Poly, tag: IdealTag) -> Vec<Poly> {
    let mut gens: Vec<Poly> = f.partials().into_iter().filter(|p| !p.is_zero()).collect();
    if tag == IdealTag::Tjurina && !f.is_zero() {
        gens.push(f.clone());
    }
    gens
}

/// Echelon form of the span of `jet_{N−1}(m·g)` over generators `g` and
/// monomials `m` of degree `< N`.
fn ideal_echelon(gens: &[Poly], arity: usize, n: u32) -> Echelon {
    let mut e = Echelon::new();
    let gens: Vec<(Poly, u32)> = gens
        .iter()
        .map(|g| g.jet(n - 1))
        .filter_map(|g| g.order().finite().copied().map(|d| (g, d)))
        .collect();
    // short high-order rows first
    let mut rows: Vec<(u32, &Monomial, &Poly)> = Vec::new();
    let monomials = Monomial::all_below(arity, n);
    for (g, low) in &gens {
        for m in monomials.iter().filter(|m| m.degree() + low < n) {
            rows.push((m.degree() + low, m, g));
        }
    }
    rows.sort_by_key(|r| std::cmp::Reverse(r.0));
    for (_, m, g) in rows {
        e.insert(row_of(&g.mul_monomial(m).jet(n - 1)));
    }
    e
}

fn basis_of(e: &Echelon, arity: usize, n: u32) -> Vec<Monomial> {
    Monomial::all_below(arity, n)
        .into_iter()
        .filter(|m| !e.is_pivot(&Column::of(m)))
        .collect()
}

pub fn quotient(f: &Poly, tag: IdealTag, n: u32) -> Result<TruncatedQuotient, LocdefError> {
    if n == 0 {
        return Err(LocdefError::ZeroTruncation);
    }
    let echelon = ideal_echelon(&generators(f, tag), f.arity(), n);
    let basis = basis_of(&echelon, f.arity(), n);
    Ok(TruncatedQuotient {
        germ: f.clone(),
        truncation: n,
        ideal: tag,
        basis,
        echelon,
    })
}

/// `dim 𝒪/(I + 𝔪^N)` and its monomial basis.
pub fn quotient_dim(f: &Poly, tag: IdealTag, n: u32) -> Result<(usize, Vec<Monomial>), LocdefError> {
    let q = quotient(f, tag, n)?;
    Ok((q.dimension(), q.basis))
}

/// Smallest `N ≤ cap` with `dim(N) = dim(N+1)`, together with that
/// dimension.
pub fn stable_truncation(f: &Poly, tag: IdealTag, cap: u32) -> Result<(u32, usize), LocdefError> {
    let mut prev = quotient_dim(f, tag, 1)?.0;
    for n in 1..cap {
        let next = quotient_dim(f, tag, n + 1)?.0;
        if next == prev {
            return Ok((n, prev));
        }
        prev = next;
    }
    Err(LocdefError::NotIsolated {
        germ: f.to_string(),
        cap,
    })
}

/// The Milnor number `dim 𝒪/J_f`.
pub fn milnor_number(f: &Poly, cap: u32) -> Result<usize, LocdefError> {
    stable_truncation(f, IdealTag::Jacobian, cap).map(|(_, d)| d)
}

/// The Tjurina number `dim 𝒪/((f) + J_f)`.
pub fn tjurina_number(f: &Poly, cap: u32) -> Result<usize, LocdefError> {
    stable_truncation(f, IdealTag::Tjurina, cap).map(|(_, d)| d)
}

pub fn is_isolated(f: &Poly, cap: u32) -> bool {
    milnor_number(f, cap).is_ok()
}

/// One character eigenspace of the local algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T1EigenReport {
    pub character: Character,
    pub basis: Vec<Monomial>,
    pub dimension: usize,
}

fn require_character(f: &Poly, q: &QuotientType) -> Result<Character, LocdefError> {
    semi_invariant_character(f, q)?.ok_or_else(|| LocdefError::NotSemiInvariant {
        poly: f.to_string(),
        quotient: q.clone(),
    })
}

/// Basis monomials of `𝒪/(I + 𝔪^N)` sharing the character of `f`.
pub fn t1_eigenpart(f: &Poly, q: &QuotientType, tag: IdealTag, n: u32) -> Result<T1EigenReport, LocdefError> {
    let character = require_character(f, q)?;
    let (_, basis) = quotient_dim(f, tag, n)?;
    let basis: Vec<Monomial> = basis
        .into_iter()
        .filter(|m| monomial_character(m, q) == character)
        .collect();
    Ok(T1EigenReport {
        character,
        dimension: basis.len(),
        basis,
    })
}

/// [`t1_eigenpart`] at the first stable truncation, so the basis covers the
/// whole (finite) local algebra.
pub fn t1_eigenpart_stable(
    f: &Poly,
    q: &QuotientType,
    tag: IdealTag,
    cap: u32,
) -> Result<(u32, T1EigenReport), LocdefError> {
    require_character(f, q)?;
    let (n, _) = stable_truncation(f, tag, cap)?;
    Ok((n, t1_eigenpart(f, q, tag, n)?))
}

/// Basis monomials of `𝒪/(I + 𝔪^N)` grouped by character.
pub fn character_table(
    f: &Poly,
    q: &QuotientType,
    tag: IdealTag,
    n: u32,
) -> Result<BTreeMap<u64, Vec<Monomial>>, LocdefError> {
    if q.arity() != f.arity() {
        return Err(CycloError::Arity {
            expected: q.arity(),
            found: f.arity(),
        }
        .into());
    }
    let (_, basis) = quotient_dim(f, tag, n)?;
    let mut table: BTreeMap<u64, Vec<Monomial>> = (0..q.order()).map(|c| (c, Vec::new())).collect();
    for m in basis {
        table.entry(monomial_character(&m, q).value).or_default().push(m);
    }
    Ok(table)
}

/// Whether the class of `g` in `𝒪/(J_f + 𝔪^N)` comes from `𝔪²`.
pub fn in_m2_image(f: &Poly, g: &Poly, n: u32) -> Result<bool, LocdefError> {
    if n == 0 {
        return Err(LocdefError::ZeroTruncation);
    }
    let arity = f.arity();
    let mut e = ideal_echelon(&generators(f, IdealTag::Jacobian), arity, n);
    for d in 2..n {
        for m in Monomial::all_of_degree(arity, d) {
            e.insert(row_of(&Poly::monomial(f.vars().to_vec(), m, crate::poly::rational(1))));
        }
    }
    Ok(e.contains(row_of(&g.jet(n - 1))))
}
