//! (1,1)-tensors acting on the frame.

use super::kvector::{KVector, Variance};
use super::poly::{Poly, Rational};
use crate::error::{Error, Result};

/// `N e_j = Σ_i m[i][j] e_i`; the dual action is the transpose,
/// `N* e^i = Σ_j m[i][j] e^j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EndoTensor {
    nvars: usize,
    m: Vec<Vec<Poly>>,
}

impl EndoTensor {
    pub fn new(nvars: usize, m: Vec<Vec<Poly>>) -> Result<Self> {
        let r = m.len();
        for row in &m {
            if row.len() != r {
                return Err(Error::RankMismatch { expected: r, got: row.len() });
            }
            for f in row {
                if f.nvars() != nvars {
                    return Err(Error::BaseMismatch { expected: nvars, got: f.nvars() });
                }
            }
        }
        Ok(EndoTensor { nvars, m })
    }

    pub fn zero(rank: usize, nvars: usize) -> Self {
        EndoTensor { nvars, m: vec![vec![Poly::zero(nvars); rank]; rank] }
    }

    pub fn identity(rank: usize, nvars: usize) -> Self {
        Self::scalar(rank, nvars, Poly::one(nvars))
    }

    pub fn scalar(rank: usize, nvars: usize, f: Poly) -> Self {
        let mut n = Self::zero(rank, nvars);
        for i in 0..rank {
            n.m[i][i] = f.clone();
        }
        n
    }

    pub fn from_ints(nvars: usize, rows: &[&[i64]]) -> Self {
        let m = rows
            .iter()
            .map(|r| r.iter().map(|&c| Poly::from_int(nvars, c)).collect())
            .collect();
        EndoTensor::new(nvars, m).expect("square integer matrix")
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.m[i][j]
    }
    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.m
    }
    pub fn set(&mut self, i: usize, j: usize, f: Poly) {
        self.m[i][j] = f;
    }

    /// `N X` for a degree-1 multivector.
    pub fn apply(&self, x: &KVector) -> KVector {
        assert_eq!(x.degree(), 1);
        assert_eq!(x.variance(), Variance::Multivector);
        let c = x.components();
        let r = self.rank();
        let out = (0..r)
            .map(|i| {
                let mut acc = Poly::zero(self.nvars);
                for (j, cj) in c.iter().enumerate() {
                    acc += &(&self.m[i][j] * cj);
                }
                acc
            })
            .collect();
        KVector::from_components(r, self.nvars, out, Variance::Multivector)
    }

    /// `N* ξ` for a 1-form.
    pub fn apply_dual(&self, xi: &KVector) -> KVector {
        assert_eq!(xi.degree(), 1);
        assert_eq!(xi.variance(), Variance::Form);
        let c = xi.components();
        let r = self.rank();
        let out = (0..r)
            .map(|l| {
                let mut acc = Poly::zero(self.nvars);
                for (i, ci) in c.iter().enumerate() {
                    acc += &(ci * &self.m[i][l]);
                }
                acc
            })
            .collect();
        KVector::from_components(r, self.nvars, out, Variance::Form)
    }

    pub fn transpose(&self) -> EndoTensor {
        let r = self.rank();
        let m = (0..r).map(|i| (0..r).map(|j| self.m[j][i].clone()).collect()).collect();
        EndoTensor { nvars: self.nvars, m }
    }

    pub fn compose(&self, other: &EndoTensor) -> EndoTensor {
        mat_mul(&self.m, &other.m).into_endo(self.nvars)
    }

    pub fn add(&self, other: &EndoTensor) -> EndoTensor {
        let m = self
            .m
            .iter()
            .zip(&other.m)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        EndoTensor { nvars: self.nvars, m }
    }

    pub fn scale(&self, f: &Poly) -> EndoTensor {
        let m = self.m.iter().map(|r| r.iter().map(|x| x * f).collect()).collect();
        EndoTensor { nvars: self.nvars, m }
    }

    pub fn neg(&self) -> EndoTensor {
        self.scale(&Poly::from_int(self.nvars, -1))
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(Poly::is_zero)
    }

    pub fn eval_at(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        self.m.iter().map(|r| r.iter().map(|f| f.eval(point)).collect()).collect()
    }
}

struct Mat(Vec<Vec<Poly>>);

impl Mat {
    fn into_endo(self, nvars: usize) -> EndoTensor {
        EndoTensor { nvars, m: self.0 }
    }
}

fn mat_mul(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Mat {
    let n = a.len();
    let nvars = a.first().and_then(|r| r.first()).map(Poly::nvars).unwrap_or(0);
    let mut out = vec![vec![Poly::zero(nvars); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] += &(&a[i][k] * &b[k][j]);
            }
        }
    }
    Mat(out)
}

/// Determinant of a square polynomial matrix by cofactor expansion
/// (ranks here are at most 6 or so).
pub fn det(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(nvars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, f)| f.clone()).collect())
            .collect();
        let term = &m[0][j] * &det(&minor, nvars);
        if j % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

/// Inverse of a polynomial matrix whose determinant is a nonzero constant.
pub fn inverse_constant_det(m: &[Vec<Poly>], nvars: usize) -> Result<Vec<Vec<Poly>>> {
    let n = m.len();
    let d = det(m, nvars);
    let c = match d.as_constant() {
        Some(c) if !num_traits::Zero::is_zero(&c) => c,
        Some(_) => return Err(Error::NotInvertible("determinant is zero".into())),
        None => return Err(Error::NotInvertible("non-constant determinant".into())),
    };
    let inv_c = <Rational as num_traits::One>::one() / c;
    let mut out = vec![vec![Poly::zero(nvars); n]; n];
    for i in 0..n {
        for j in 0..n {
            // adj[i][j] = (-1)^{i+j} det(minor without row j, col i)
            let minor: Vec<Vec<Poly>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != j)
                .map(|(_, row)| row.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, f)| f.clone()).collect())
                .collect();
            let cof = det(&minor, nvars).scale(&inv_c);
            out[i][j] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    Ok(out)
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(mut m: Vec<Vec<Rational>>) -> usize {
    use num_traits::Zero;
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let piv = m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &piv;
                for k in c..cols {
                    let v = &m[rank][k] * &f;
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}
