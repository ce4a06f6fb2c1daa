use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::linalg::{zero_vector, LinearMap, Vector};

/// Structure constants of one bilinear product: `e_i * e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductTensor {
    dim: usize,
    coeffs: Vec<Scalar>,
}

impl ProductTensor {
    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(ProductTensor {
            dim,
            coeffs: vec![Scalar::zero(); dim * dim * dim],
        })
    }

    /// Builds a tensor from a nested `[i][j][k]` array.
    pub fn from_nested(c: &[Vec<Vec<Scalar>>]) -> Result<Self> {
        let mut t = ProductTensor::zeros(c.len())?;
        let n = t.dim;
        for (i, plane) in c.iter().enumerate() {
            check_len(n, plane.len())?;
            for (j, row) in plane.iter().enumerate() {
                check_len(n, row.len())?;
                for (k, x) in row.iter().enumerate() {
                    t.set(i, j, k, x.clone());
                }
            }
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.coeffs[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        let at = self.idx(i, j, k);
        self.coeffs[at] = c;
    }

    /// Coefficient vector of `e_i * e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = self.idx(i, j, 0);
        &self.coeffs[start..start + self.dim]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Nonzero entries as `(i, j, k, c)`, 0-based, in index order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let n = self.dim;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(at, c)| (at / (n * n), (at / n) % n, at % n, c))
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        check_len(self.dim, x.len())?;
        check_len(self.dim, y.len())?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim;
        let mut out = zero_vector(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let row = self.basis_product(i, j);
                if row.iter().all(Scalar::is_zero) {
                    continue;
                }
                let f = xi * yj;
                for (o, c) in out.iter_mut().zip(row) {
                    if !c.is_zero() {
                        *o += &(&f * c);
                    }
                }
            }
        }
        out
    }

    /// `e_i * v`.
    pub(crate) fn left_mul_basis(&self, i: usize, v: &[Scalar]) -> Vector {
        let n = self.dim;
        let mut out = zero_vector(n);
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(self.basis_product(i, j)) {
                if !c.is_zero() {
                    *o += &(vj * c);
                }
            }
        }
        out
    }

    /// `v * e_j`.
    pub(crate) fn right_mul_basis(&self, v: &[Scalar], j: usize) -> Vector {
        let n = self.dim;
        let mut out = zero_vector(n);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(self.basis_product(i, j)) {
                if !c.is_zero() {
                    *o += &(vi * c);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ProductTensor) -> Result<ProductTensor> {
        check_len(self.dim, other.dim)?;
        Ok(ProductTensor {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, f: &Scalar) -> ProductTensor {
        ProductTensor {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    /// Structure constants in the basis `{p(e_i)}`: `t'(x, y) = p^-1 t(p x, p y)`.
    pub fn change_basis(&self, p: &LinearMap) -> Result<ProductTensor> {
        check_len(self.dim, p.dim)?;
        let inv = p.inverse()?;
        let n = self.dim;
        let cols: Vec<Vector> = (0..n).map(|j| p.column(j)).collect();
        let mut out = ProductTensor::zeros(n)?;
        for i in 0..n {
            for j in 0..n {
                let v = inv.apply(&self.mul_unchecked(&cols[i], &cols[j]));
                for (k, c) in v.into_iter().enumerate() {
                    out.set(i, j, k, c);
                }
            }
        }
        Ok(out)
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
