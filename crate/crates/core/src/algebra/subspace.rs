use std::fmt;

use crate::error::Result;
use crate::scalar::Scalar;

use super::linalg::{is_zero_vector, rref, unit_vector, Vector};
use super::tensor::check_len;

/// A subspace stored as its reduced row-echelon basis, so equal subspaces
/// compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    dim_ambient: usize,
    vectors: Vec<Vector>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn span(dim_ambient: usize, vectors: Vec<Vector>) -> Result<Self> {
        for v in &vectors {
            check_len(dim_ambient, v.len())?;
        }
        let (vectors, pivots) = rref(vectors);
        Ok(SubspaceBasis {
            dim_ambient,
            vectors,
            pivots,
        })
    }

    pub fn zero(dim_ambient: usize) -> Self {
        SubspaceBasis {
            dim_ambient,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(dim_ambient: usize) -> Self {
        Self::standard(dim_ambient, &(0..dim_ambient).collect::<Vec<_>>())
    }

    /// Span of the given standard basis vectors (0-based indices).
    pub fn standard(dim_ambient: usize, indices: &[usize]) -> Self {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        SubspaceBasis {
            dim_ambient,
            vectors: idx.iter().map(|&i| unit_vector(dim_ambient, i)).collect(),
            pivots: idx,
        }
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.vectors.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.dim_ambient && is_zero_vector(&self.reduce(v))
    }

    /// Indices of the standard basis vectors complementing this subspace.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.dim_ambient)
            .filter(|i| !self.pivots.contains(i))
            .collect()
    }

    /// If the subspace is spanned by standard basis vectors, their 1-based labels.
    pub fn standard_labels(&self) -> Option<Vec<usize>> {
        let ok = self
            .vectors
            .iter()
            .zip(&self.pivots)
            .all(|(v, &p)| v.iter().enumerate().all(|(k, x)| (k == p) || x.is_zero()));
        ok.then(|| self.pivots.iter().map(|p| p + 1).collect())
    }
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `<e_3,e_4>` for standard spans, otherwise the echelon rows.
impl fmt::Display for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(labels) = self.standard_labels() {
            let names: Vec<String> = labels.iter().map(|l| format!("e_{l}")).collect();
            return write!(f, "<{}>", names.join(","));
        }
        let rows: Vec<String> = self
            .vectors
            .iter()
            .map(|v| {
                let xs: Vec<String> = v.iter().map(ToString::to_string).collect();
                format!("({})", xs.join(", "))
            })
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from(x)).collect()
    }

    #[test]
    fn span_is_canonical() {
        let a = SubspaceBasis::span(3, vec![v(&[0, 1, 1]), v(&[0, 2, 0])]).unwrap();
        let b = SubspaceBasis::standard(3, &[2, 1]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "<e_2,e_3>");
        assert_eq!(a.complement_indices(), vec![0]);
    }

    #[test]
    fn membership() {
        let s = SubspaceBasis::span(3, vec![v(&[1, 1, 0])]).unwrap();
        assert!(s.contains(&v(&[2, 2, 0])));
        assert!(!s.contains(&v(&[1, 0, 0])));
        assert_eq!(s.standard_labels(), None);
        assert!(SubspaceBasis::zero(2).contains(&v(&[0, 0])));
    }
}
