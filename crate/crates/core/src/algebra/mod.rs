//! Structure constants, the associated sum product, subspaces, centers,
//! quotients and the power filtration.

mod json;
pub mod linalg;
mod subspace;
mod tensor;

pub use json::{AlgebraJson, EntryJson};
pub use linalg::{LinearMap, Vector};
pub use subspace::SubspaceBasis;
pub use tensor::ProductTensor;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use linalg::{nullspace, unit_vector};
use tensor::check_len;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocAlgebra {
    pub mul: ProductTensor,
}

impl AssocAlgebra {
    pub fn new(mul: ProductTensor) -> Self {
        AssocAlgebra { mul }
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Ok(AssocAlgebra::new(ProductTensor::zeros(dim)?))
    }

    pub fn dim(&self) -> usize {
        self.mul.dim()
    }

    pub fn change_basis(&self, p: &LinearMap) -> Result<Self> {
        Ok(AssocAlgebra::new(apply_basis_change(&self.mul, p)?))
    }
}

/// A pair of products `x > y` (`rprod`) and `x < y` (`lprod`) on one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdAlgebra {
    pub rprod: ProductTensor,
    pub lprod: ProductTensor,
}

impl AdAlgebra {
    pub fn new(rprod: ProductTensor, lprod: ProductTensor) -> Result<Self> {
        check_len(rprod.dim(), lprod.dim())?;
        Ok(AdAlgebra { rprod, lprod })
    }

    pub fn trivial(dim: usize) -> Result<Self> {
        let z = ProductTensor::zeros(dim)?;
        Ok(AdAlgebra {
            rprod: z.clone(),
            lprod: z,
        })
    }

    pub fn dim(&self) -> usize {
        self.rprod.dim()
    }

    pub fn products(&self) -> [&ProductTensor; 2] {
        [&self.rprod, &self.lprod]
    }

    /// Both products rewritten in the basis `{p(e_i)}`.
    pub fn change_basis(&self, p: &LinearMap) -> Result<Self> {
        AdAlgebra::new(
            apply_basis_change(&self.rprod, p)?,
            apply_basis_change(&self.lprod, p)?,
        )
    }
}

/// A catalogued algebra of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    Assoc(AssocAlgebra),
    Ad(AdAlgebra),
}

impl Algebra {
    pub fn dim(&self) -> usize {
        match self {
            Algebra::Assoc(a) => a.dim(),
            Algebra::Ad(d) => d.dim(),
        }
    }

    pub fn as_assoc(&self) -> Option<&AssocAlgebra> {
        match self {
            Algebra::Assoc(a) => Some(a),
            Algebra::Ad(_) => None,
        }
    }

    pub fn as_ad(&self) -> Option<&AdAlgebra> {
        match self {
            Algebra::Ad(d) => Some(d),
            Algebra::Assoc(_) => None,
        }
    }
}

pub fn multiply(t: &ProductTensor, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
    t.multiply(x, y)
}

/// `x . y = x > y + x < y`.
pub fn sum_product(d: &AdAlgebra) -> AssocAlgebra {
    AssocAlgebra::new(d.rprod.add(&d.lprod).expect("products share a dimension"))
}

pub fn apply_basis_change(t: &ProductTensor, p: &LinearMap) -> Result<ProductTensor> {
    t.change_basis(p)
}

/// Span of all `u * v` with `u` in `left` and `v` in `right`.
pub fn product_space(t: &ProductTensor, left: &SubspaceBasis, right: &SubspaceBasis) -> SubspaceBasis {
    let mut vectors = Vec::new();
    for u in left.vectors() {
        for v in right.vectors() {
            vectors.push(t.mul_unchecked(u, v));
        }
    }
    SubspaceBasis::span(t.dim(), vectors).expect("products have the ambient dimension")
}

/// `[A^1, A^2, ...]` with `A^m = sum_k A^k A^(m-k)`. Stops after the zero
/// subspace, when the chain stalls, or after `max_steps` terms.
pub fn power_filtration(a: &AssocAlgebra, max_steps: usize) -> Vec<SubspaceBasis> {
    let n = a.dim();
    let mut powers = vec![SubspaceBasis::full(n)];
    while powers.len() < max_steps {
        let m = powers.len() + 1;
        let mut vectors = Vec::new();
        for k in 1..m {
            vectors.extend(product_space(&a.mul, &powers[k - 1], &powers[m - k - 1]).vectors().to_vec());
        }
        let next = SubspaceBasis::span(n, vectors).expect("ambient dimension");
        let stalled = next.dim() == powers[powers.len() - 1].dim();
        let done = next.is_zero();
        powers.push(next);
        if done || stalled {
            break;
        }
    }
    powers
}

/// Smallest `i` with `A^i = 0`, or `None` when the filtration does not reach zero.
pub fn nilpotency_index(a: &AssocAlgebra) -> Option<usize> {
    let powers = power_filtration(a, a.dim() + 2);
    powers.last().filter(|s| s.is_zero()).map(|_| powers.len())
}

/// Which sides an annihilator condition applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `x * y = 0` for all `y`.
    Left,
    /// `y * x = 0` for all `y`.
    Right,
    Both,
}

/// Joint annihilator of the given products.
pub fn annihilator(products: &[&ProductTensor], side: Side) -> SubspaceBasis {
    let n = products[0].dim();
    let mut rows = Vec::new();
    for t in products {
        for j in 0..n {
            for k in 0..n {
                if side != Side::Right {
                    rows.push((0..n).map(|i| t.get(i, j, k).clone()).collect());
                }
                if side != Side::Left {
                    rows.push((0..n).map(|i| t.get(j, i, k).clone()).collect());
                }
            }
        }
    }
    rows.retain(|r: &Vector| !linalg::is_zero_vector(r));
    SubspaceBasis::span(n, nullspace(rows, n)).expect("ambient dimension")
}

pub fn center_assoc(a: &AssocAlgebra) -> SubspaceBasis {
    annihilator(&[&a.mul], Side::Both)
}

pub fn center_ad(d: &AdAlgebra) -> SubspaceBasis {
    annihilator(&d.products(), Side::Both)
}

pub fn is_ideal(d: &AdAlgebra, s: &SubspaceBasis) -> Result<bool> {
    let n = d.dim();
    check_len(n, s.dim_ambient())?;
    for t in d.products() {
        for i in 0..n {
            for y in s.vectors() {
                if !s.contains(&t.left_mul_basis(i, y)) || !s.contains(&t.right_mul_basis(y, i)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Induced products on `A / s`, written on the standard basis vectors that
/// are not pivots of `s`, in index order.
pub fn quotient_by_ideal(d: &AdAlgebra, s: &SubspaceBasis) -> Result<AdAlgebra> {
    if !is_ideal(d, s)? {
        return Err(Error::NotAnIdeal);
    }
    let comp = s.complement_indices();
    let m = comp.len();
    let quotient = |t: &ProductTensor| -> Result<ProductTensor> {
        let mut q = ProductTensor::zeros(m)?;
        for (a, &i) in comp.iter().enumerate() {
            for (b, &j) in comp.iter().enumerate() {
                let r = s.reduce(t.basis_product(i, j));
                for (c, &k) in comp.iter().enumerate() {
                    q.set(a, b, c, r[k].clone());
                }
            }
        }
        Ok(q)
    };
    AdAlgebra::new(quotient(&d.rprod)?, quotient(&d.lprod)?)
}

/// Standard basis vector `e_i` (0-based) of length `n`.
pub fn basis_vector(n: usize, i: usize) -> Vector {
    unit_vector(n, i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tensor(n: usize, entries: &[(usize, usize, usize, i64)]) -> ProductTensor {
        let mut t = ProductTensor::zeros(n).unwrap();
        for &(i, j, k, c) in entries {
            t.set(i - 1, j - 1, k - 1, Scalar::from(c));
        }
        t
    }

    // e1e1=e2, e1e2=e3, e2e1=e3
    fn filiform3() -> AssocAlgebra {
        AssocAlgebra::new(tensor(3, &[(1, 1, 2, 1), (1, 2, 3, 1), (2, 1, 3, 1)]))
    }

    #[test]
    fn filtration_of_filiform() {
        let dims: Vec<_> = power_filtration(&filiform3(), 5).iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![3, 2, 1, 0]);
        assert_eq!(nilpotency_index(&filiform3()), Some(4));
    }

    #[test]
    fn zero_algebra() {
        let z = AssocAlgebra::zero(3).unwrap();
        let dims: Vec<_> = power_filtration(&z, 5).iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![3, 0]);
        assert_eq!(nilpotency_index(&z), Some(2));
        assert_eq!(center_assoc(&z), SubspaceBasis::full(3));
    }

    #[test]
    fn non_nilpotent_is_detected() {
        let idem = AssocAlgebra::new(tensor(1, &[(1, 1, 1, 1)]));
        assert_eq!(nilpotency_index(&idem), None);
    }

    #[test]
    fn ideal_and_quotient() {
        // e1>e2 = e4, e3>e1 = e4
        let d = AdAlgebra::new(
            tensor(4, &[(1, 2, 4, 1), (3, 1, 4, 1)]),
            ProductTensor::zeros(4).unwrap(),
        )
        .unwrap();
        let c = center_ad(&d);
        assert_eq!(c, SubspaceBasis::standard(4, &[3]));
        assert!(is_ideal(&d, &c).unwrap());
        assert!(!is_ideal(&d, &SubspaceBasis::standard(4, &[0])).unwrap());
        let q = quotient_by_ideal(&d, &c).unwrap();
        assert_eq!(q, AdAlgebra::trivial(3).unwrap());
        assert!(matches!(
            quotient_by_ideal(&d, &SubspaceBasis::standard(4, &[0])),
            Err(Error::NotAnIdeal)
        ));
        assert_eq!(quotient_by_ideal(&d, &SubspaceBasis::zero(4)).unwrap(), d);
    }
}
