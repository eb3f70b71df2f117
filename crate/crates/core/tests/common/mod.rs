//! Helpers shared by the integration suites.
#![allow(dead_code)]

use elephantine::poly::{rational, Monomial, Poly};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vars(n: usize) -> Vec<String> {
    ["x", "y", "z", "u"][..n].iter().map(|s| s.to_string()).collect()
}

pub fn p(s: &str) -> Poly {
    Poly::parse(s, &vars(3)).unwrap()
}

fn nonzero_coeff(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let c = rng.gen_range(-5i64..=5);
        if c != 0 {
            return rational(c);
        }
    }
}

pub fn random_monomial(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> Monomial {
    let mut e = vec![0u32; n];
    for _ in 0..degree {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(e)
}

/// Random polynomial with terms of total degree in `lo..=hi` and at least
/// one term of degree exactly `lo`.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, lo: u32, hi: u32, terms: usize) -> Poly {
    let vs = vars(n);
    let mut f = Poly::monomial(vs.clone(), random_monomial(rng, n, lo), nonzero_coeff(rng));
    for _ in 1..terms {
        let d = rng.gen_range(lo..=hi);
        let t = Poly::monomial(vs.clone(), random_monomial(rng, n, d), nonzero_coeff(rng));
        let g = &f + &t;
        if g.homogeneous_part(lo).is_zero() {
            continue;
        }
        f = g;
    }
    f
}

/// Random unimodular integer 2×2 matrix with small entries.
pub fn unimodular(rng: &mut ChaCha8Rng) -> [[i64; 2]; 2] {
    let mut m = [[1, 0], [0, 1]];
    for _ in 0..rng.gen_range(1..4) {
        let k = rng.gen_range(-2i64..=2);
        let e = if rng.gen_bool(0.5) {
            [[1, k], [0, 1]]
        } else {
            [[1, 0], [k, 1]]
        };
        m = [
            [
                m[0][0] * e[0][0] + m[0][1] * e[1][0],
                m[0][0] * e[0][1] + m[0][1] * e[1][1],
            ],
            [
                m[1][0] * e[0][0] + m[1][1] * e[1][0],
                m[1][0] * e[0][1] + m[1][1] * e[1][1],
            ],
        ];
    }
    if rng.gen_bool(0.5) {
        m.swap(0, 1);
    }
    m
}

/// `y ↦ a·y + b·z`, `z ↦ c·y + d·z`, `x` fixed.
pub fn yz_change(f: &Poly, m: [[i64; 2]; 2]) -> Poly {
    let vs = f.vars().to_vec();
    let lin =
        |a: i64, b: i64| &Poly::var(vs.clone(), 1).scale(&rational(a)) + &Poly::var(vs.clone(), 2).scale(&rational(b));
    let images = vec![Poly::var(vs.clone(), 0), lin(m[0][0], m[0][1]), lin(m[1][0], m[1][1])];
    f.substitute(&images).unwrap()
}

/// Quasi-homogeneous weights `w` with `Σ eᵢⱼ wⱼ = 1` for an invertible
/// square exponent matrix, by Gauss–Jordan elimination.
pub fn qh_weights(exponents: &[Vec<u32>]) -> Option<Vec<BigRational>> {
    let n = exponents.len();
    let mut m: Vec<Vec<BigRational>> = exponents
        .iter()
        .map(|row| {
            let mut r: Vec<BigRational> = row.iter().map(|&e| rational(e as i64)).collect();
            r.push(BigRational::one());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = BigRational::one() / &m[c][c];
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let k = m[i][c].clone();
                let pivot = m[c].clone();
                for (a, b) in m[i].iter_mut().zip(&pivot) {
                    *a -= &k * b;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Milnor number `Π (1/wᵢ − 1)` of an isolated quasi-homogeneous germ.
pub fn milnor_orlik(weights: &[BigRational]) -> BigRational {
    weights
        .iter()
        .map(|w| BigRational::one() / w - BigRational::one())
        .fold(BigRational::one(), |a, b| a * b)
}
