//! Dense linear algebra over `Q(i)`: row reduction, rank, null spaces and
//! invertible maps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Reduced row-echelon form. Returns the nonzero rows and their pivot columns;
/// pivots are strictly increasing and every pivot entry is 1.
pub fn rref(mut rows: Vec<Vector>) -> (Vec<Vector>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vector>) -> usize {
    rref(rows).0.len()
}

/// Basis of `{x : A x = 0}` for the matrix given by `rows` with `ncols` columns.
pub fn nullspace(rows: Vec<Vector>, ncols: usize) -> Vec<Vector> {
    if rows.is_empty() {
        return (0..ncols).map(|i| unit_vector(ncols, i)).collect();
    }
    let (red, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zero_vector(ncols);
            v[f] = Scalar::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// An `n x n` matrix acting on column vectors; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearMap {
    pub dim: usize,
    /// Row-major entries.
    pub matrix: Vec<Vector>,
}

impl LinearMap {
    pub fn new(matrix: Vec<Vector>) -> Result<Self> {
        let dim = matrix.len();
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(bad) = matrix.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(LinearMap { dim, matrix })
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap {
            dim,
            matrix: (0..dim).map(|i| unit_vector(dim, i)).collect(),
        }
    }

    /// Builds the map from the images of the basis vectors.
    pub fn from_columns(columns: &[Vector]) -> Result<Self> {
        let n = columns.len();
        let mut matrix = vec![zero_vector(n); n];
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                matrix[i][j] = x.clone();
            }
        }
        LinearMap::new(matrix)
    }

    pub fn column(&self, j: usize) -> Vector {
        self.matrix.iter().map(|r| r[j].clone()).collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.apply(&other.column(j))).collect();
        LinearMap::from_columns(&cols)
    }

    pub fn determinant(&self) -> Scalar {
        let n = self.dim;
        let mut m = self.matrix.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det = &det * &m[c][c];
            let inv = m[c][c].inv().expect("pivot is nonzero");
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] * &inv;
                for k in c..n {
                    let t = &f * &m[c][k];
                    m[r][k] -= &t;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        let n = self.dim;
        let rows: Vec<Vector> = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend(unit_vector(n, i));
                row
            })
            .collect();
        let (red, pivots) = rref(rows);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMap);
        }
        LinearMap::new(red.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Matrix entries in the textual scalar form, row-major.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<LinearMap> {
        let matrix = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vector>>())
            .collect::<Result<Vec<_>>>()?;
        LinearMap::new(matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from(x)).collect()
    }

    #[test]
    fn rref_and_rank() {
        let (red, piv) = rref(vec![v(&[0, 2, 4]), v(&[1, 1, 1]), v(&[1, 2, 3])]);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(red, vec![v(&[1, 0, -1]), v(&[0, 1, 2])]);
        assert_eq!(rank(vec![v(&[0, 0]), v(&[0, 0])]), 0);
    }

    #[test]
    fn nullspace_of_rank_two() {
        let ns = nullspace(vec![v(&[1, 1, 1]), v(&[0, 1, 2])], 3);
        assert_eq!(ns, vec![v(&[1, -2, 1])]);
        assert_eq!(nullspace(vec![], 2).len(), 2);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = LinearMap::new(vec![v(&[1, 2]), v(&[3, 4])]).unwrap();
        assert_eq!(m.determinant(), Scalar::from(-2));
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv).unwrap(), LinearMap::identity(2));
        let singular = LinearMap::new(vec![v(&[1, 2]), v(&[2, 4])]).unwrap();
        assert!(matches!(singular.inverse(), Err(Error::SingularMap)));
        assert!(singular.determinant().is_zero());
    }

    #[test]
    fn columns_are_images() {
        let m = LinearMap::from_columns(&[v(&[1, 0]), v(&[5, 1])]).unwrap();
        assert_eq!(m.apply(&v(&[0, 1])), v(&[5, 1]));
        assert_eq!(m.column(1), v(&[5, 1]));
    }
}
