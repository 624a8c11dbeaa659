//! Verification configuration and seeded random sections.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::symalg::{ratio, KVector, Poly, Rational, Variance};

pub const DEFAULT_SEED: u64 = 0x5EED_2010;

/// Knobs shared by every verifier.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    /// Maximal total degree of monomial coefficients in exhaustive checks
    /// and of random polynomial coefficients.
    pub degree: u32,
    pub seed: u64,
    /// Number of random polynomial sections (or tuples) per identity.
    pub random_cases: usize,
    /// Points for pointwise nondegeneracy checks; empty means the origin.
    pub samples: Vec<Vec<Rational>>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { degree: 2, seed: DEFAULT_SEED, random_cases: 3, samples: Vec::new() }
    }
}

impl CheckConfig {
    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    pub fn sample_points(&self, nvars: usize) -> Vec<Vec<Rational>> {
        if self.samples.is_empty() {
            vec![vec![ratio(0, 1); nvars]]
        } else {
            self.samples.clone()
        }
    }
}

/// All exponent vectors in `nvars` variables with total degree ≤ `degree`.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, degree, &mut vec![0; nvars], &mut out);
    out.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    out
}

pub fn monomial_polys(nvars: usize, degree: u32) -> Vec<Poly> {
    monomials(nvars, degree)
        .into_iter()
        .map(|e| Poly::monomial(e, ratio(1, 1)))
        .collect()
}

/// A sparse random polynomial with small rational coefficients.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, degree: u32) -> Poly {
    let nterms = rng.gen_range(1..=3);
    let mut p = Poly::zero(nvars);
    for _ in 0..nterms {
        let mut e = vec![0u32; nvars];
        let d = rng.gen_range(0..=degree);
        for _ in 0..d {
            if nvars > 0 {
                e[rng.gen_range(0..nvars)] += 1;
            }
        }
        let num = rng.gen_range(-4i64..=4);
        let den = rng.gen_range(1i64..=3);
        p += &Poly::monomial(e, ratio(num, den));
    }
    p
}

pub fn random_kvector<R: Rng>(
    rng: &mut R,
    rank: usize,
    nvars: usize,
    degree: usize,
    variance: Variance,
    poly_degree: u32,
) -> KVector {
    let mut k = KVector::zero(rank, nvars, degree, variance);
    if degree > rank {
        return k;
    }
    for idx in subsets(rank, degree) {
        if degree > 0 && rng.gen_bool(0.35) {
            continue;
        }
        k.insert(&idx, random_poly(rng, nvars, poly_degree));
    }
    k
}

/// Strictly increasing k-tuples from `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}
