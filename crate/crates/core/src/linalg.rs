//! Sparse row echelon forms over ℚ indexed by monomials.
//!
//! Columns are ordered by total degree and then lexicographically; a row's
//! pivot is its smallest column, as for a local degree ordering. Non-pivot
//! monomials then form the usual standard basis of a local algebra.

use std::collections::BTreeMap;
use std::ops::Bound;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::{Monomial, Poly};

/// Column key: `(total degree, exponents)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Column {
    degree: u32,
    exponents: Vec<u32>,
}

impl Column {
    pub fn of(m: &Monomial) -> Self {
        Column {
            degree: m.degree(),
            exponents: m.exponents().to_vec(),
        }
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::new(self.exponents.clone())
    }
}

pub type Row = BTreeMap<Column, BigRational>;

pub fn row_of(p: &Poly) -> Row {
    p.terms().map(|(m, c)| (Column::of(m), c.clone())).collect()
}

/// Incrementally built echelon basis of a row space.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<Column, Row>,
}

fn axpy(target: &mut Row, scale: &BigRational, source: &Row) {
    for (k, v) in source {
        let delta = scale * v;
        match target.get_mut(k) {
            Some(t) => {
                *t += delta;
                if t.is_zero() {
                    target.remove(k);
                }
            }
            None => {
                target.insert(k.clone(), delta);
            }
        }
    }
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_pivot(&self, c: &Column) -> bool {
        self.pivots.contains_key(c)
    }

    /// Add a row; returns whether the rank grew.
    pub fn insert(&mut self, mut row: Row) -> bool {
        loop {
            let lead = match row.keys().next() {
                Some(k) => k.clone(),
                None => return false,
            };
            match self.pivots.get(&lead) {
                Some(p) => {
                    let scale = -row[&lead].clone();
                    axpy(&mut row, &scale, p);
                }
                None => {
                    let inv = BigRational::one() / &row[&lead];
                    if !inv.is_one() {
                        for v in row.values_mut() {
                            *v *= &inv;
                        }
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Unique representative of `row` modulo the row space, supported on
    /// non-pivot columns.
    pub fn reduce(&self, mut row: Row) -> Row {
        let mut lower: Bound<Column> = Bound::Unbounded;
        loop {
            let next = row
                .range((lower.clone(), Bound::Unbounded))
                .map(|(k, _)| k)
                .find(|k| self.pivots.contains_key(*k))
                .cloned();
            match next {
                Some(k) => {
                    let scale = -row[&k].clone();
                    axpy(&mut row, &scale, &self.pivots[&k]);
                    lower = Bound::Excluded(k);
                }
                None => return row,
            }
        }
    }

    pub fn contains(&self, row: Row) -> bool {
        self.reduce(row).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(row_of(&p("x+y"))));
        assert!(e.insert(row_of(&p("x-y"))));
        assert!(!e.insert(row_of(&p("3*x"))));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(row_of(&p("y"))));
        assert!(!e.contains(row_of(&p("1"))));
    }

    #[test]
    fn reduction_is_canonical() {
        let mut e = Echelon::new();
        e.insert(row_of(&p("x^2-y")));
        e.insert(row_of(&p("x*y-1")));
        let a = e.reduce(row_of(&p("x^2+x*y")));
        let b = e.reduce(row_of(&p("y+1")));
        assert_eq!(a, b);
        assert!(a.keys().all(|k| !e.is_pivot(k)));
    }
}
