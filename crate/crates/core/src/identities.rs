//! Residual checks for associativity, the seven anti-dendriform identities
//! and 2-nilpotency, evaluated on every basis triple.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::linalg::is_zero_vector;
use crate::algebra::{sum_product, AdAlgebra, AssocAlgebra, ProductTensor, Vector};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityId {
    Assoc,
    Id1,
    Id2,
    Id3,
    Id4,
    Id5,
    Id6,
    Id7,
    Twonilp,
}

impl IdentityId {
    pub const AD: [IdentityId; 7] = [
        IdentityId::Id1,
        IdentityId::Id2,
        IdentityId::Id3,
        IdentityId::Id4,
        IdentityId::Id5,
        IdentityId::Id6,
        IdentityId::Id7,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::Assoc => "assoc",
            IdentityId::Id1 => "id1",
            IdentityId::Id2 => "id2",
            IdentityId::Id3 => "id3",
            IdentityId::Id4 => "id4",
            IdentityId::Id5 => "id5",
            IdentityId::Id6 => "id6",
            IdentityId::Id7 => "id7",
            IdentityId::Twonilp => "twonilp",
        }
    }

    /// The law as an equation, with `.` the sum product.
    pub fn law(self) -> &'static str {
        match self {
            IdentityId::Assoc => "(x.y).z = x.(y.z)",
            IdentityId::Id1 => "(x>y)<z = x>(y<z)",
            IdentityId::Id2 => "x>(y>z) = -(x.y)>z",
            IdentityId::Id3 => "x>(y>z) = -x<(y.z)",
            IdentityId::Id4 => "x>(y>z) = (x<y)<z",
            IdentityId::Id5 => "(x.y)>z = x<(y.z)",
            IdentityId::Id6 => "-(x.y)>z = (x<y)<z",
            IdentityId::Id7 => "-x<(y.z) = (x<y)<z",
            IdentityId::Twonilp => "(x*y)*z = x*(y*z) = 0",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A nonzero residual `lhs - rhs` at a basis triple (1-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub id: IdentityId,
    pub triple: [usize; 3],
    pub residual: Vector,
}

/// Residuals `lhs - rhs` of id1..id7 at the basis triple `(e_i, e_j, e_k)`, 0-based.
pub fn ad_residuals(d: &AdAlgebra, i: usize, j: usize, k: usize) -> [Vector; 7] {
    let r = &d.rprod;
    let l = &d.lprod;
    let s = r.add(l).expect("products share a dimension");
    let sub = |a: Vector, b: Vector| -> Vector { a.iter().zip(&b).map(|(x, y)| x - y).collect() };
    let neg = |a: Vector| -> Vector { a.iter().map(|x| -x).collect() };

    let r_jk = r.basis_product(j, k);
    let l_jk = l.basis_product(j, k);
    let s_jk = s.basis_product(j, k);
    let r_ij = r.basis_product(i, j);
    let l_ij = l.basis_product(i, j);
    let s_ij = s.basis_product(i, j);

    let x_r_yrz = r.left_mul_basis(i, r_jk);
    let x_l_ysz = l.left_mul_basis(i, s_jk);
    let xsy_r_z = r.right_mul_basis(s_ij, k);
    let xly_l_z = l.right_mul_basis(l_ij, k);

    [
        sub(l.right_mul_basis(r_ij, k), r.left_mul_basis(i, l_jk)),
        sub(x_r_yrz.clone(), neg(xsy_r_z.clone())),
        sub(x_r_yrz.clone(), neg(x_l_ysz.clone())),
        sub(x_r_yrz, xly_l_z.clone()),
        sub(xsy_r_z.clone(), x_l_ysz.clone()),
        sub(neg(xsy_r_z), xly_l_z.clone()),
        sub(neg(x_l_ysz), xly_l_z),
    ]
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
}

pub fn check_associative(a: &AssocAlgebra) -> Vec<Violation> {
    let t = &a.mul;
    triples(a.dim())
        .filter_map(|(i, j, k)| {
            let lhs = t.right_mul_basis(t.basis_product(i, j), k);
            let rhs = t.left_mul_basis(i, t.basis_product(j, k));
            let residual: Vector = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
            violation(IdentityId::Assoc, (i, j, k), residual)
        })
        .collect()
}

/// Violations ordered by identity, then by triple.
pub fn check_anti_dendriform(d: &AdAlgebra) -> Vec<Violation> {
    let mut out: Vec<Violation> = triples(d.dim())
        .flat_map(|(i, j, k)| {
            ad_residuals(d, i, j, k)
                .into_iter()
                .zip(IdentityId::AD)
                .filter_map(move |(res, id)| violation(id, (i, j, k), res))
        })
        .collect();
    out.sort_by_key(|v| (v.id, v.triple));
    out
}

fn violation(id: IdentityId, (i, j, k): (usize, usize, usize), residual: Vector) -> Option<Violation> {
    (!is_zero_vector(&residual)).then(|| Violation {
        id,
        triple: [i + 1, j + 1, k + 1],
        residual,
    })
}

fn all_triples_vanish(outer: &ProductTensor, inner: &ProductTensor) -> bool {
    let n = outer.dim();
    triples(n).all(|(i, j, k)| {
        is_zero_vector(&outer.right_mul_basis(inner.basis_product(i, j), k))
            && is_zero_vector(&outer.left_mul_basis(i, inner.basis_product(j, k)))
    })
}

pub fn check_2nilpotent_assoc(a: &AssocAlgebra) -> bool {
    all_triples_vanish(&a.mul, &a.mul)
}

/// All eight mixed triple products over both products vanish.
pub fn check_2nilpotent_ad(d: &AdAlgebra) -> bool {
    d.products()
        .iter()
        .all(|outer| d.products().iter().all(|inner| all_triples_vanish(outer, inner)))
}

/// Convenience: the sum product is associative.
pub fn sum_is_associative(d: &AdAlgebra) -> bool {
    check_associative(&sum_product(d)).is_empty()
}

/// Renders a residual vector as `c_1 e_1 + ...`.
pub fn render_vector(v: &[Scalar]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            if c.is_one() {
                format!("e_{}", k + 1)
            } else {
                format!("({c})e_{}", k + 1)
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tensor(n: usize, entries: &[(usize, usize, usize, i64)]) -> ProductTensor {
        let mut t = ProductTensor::zeros(n).unwrap();
        for &(i, j, k, c) in entries {
            t.set(i - 1, j - 1, k - 1, Scalar::from(c));
        }
        t
    }

    #[test]
    fn missing_product_breaks_associativity() {
        let a = AssocAlgebra::new(tensor(3, &[(1, 1, 2, 1), (2, 1, 3, 1)]));
        let v = check_associative(&a);
        assert_eq!(v[0].triple, [1, 1, 1]);
        assert_eq!(v[0].id, IdentityId::Assoc);
    }

    #[test]
    fn sign_paired_square_is_anti_dendriform() {
        let d = AdAlgebra::new(tensor(3, &[(1, 1, 3, 1)]), tensor(3, &[(1, 1, 3, -1)])).unwrap();
        assert!(check_anti_dendriform(&d).is_empty());
        assert!(check_2nilpotent_ad(&d));
    }

    #[test]
    fn violation_json_shape() {
        let v = Violation {
            id: IdentityId::Id4,
            triple: [2, 1, 3],
            residual: vec![Scalar::zero(), Scalar::one()],
        };
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"{"id":"id4","triple":[2,1,3],"residual":[["0","1","0","1"],["1","1","0","1"]]}"#
        );
    }

    fn small_tensor(n: usize) -> impl Strategy<Value = ProductTensor> {
        proptest::collection::vec(-2i64..=2, n * n * n).prop_map(move |cs| {
            let mut t = ProductTensor::zeros(n).unwrap();
            for (at, c) in cs.into_iter().enumerate() {
                t.set(at / (n * n), (at / n) % n, at % n, Scalar::from(c));
            }
            t
        })
    }

    proptest! {
        // id7 residual is the sum of the id5 and id6 residuals, so id5 and id6 imply id7.
        #[test]
        fn id7_is_id5_plus_id6(r in small_tensor(3), l in small_tensor(3), i in 0usize..3, j in 0usize..3, k in 0usize..3) {
            let d = AdAlgebra::new(r, l).unwrap();
            let res = ad_residuals(&d, i, j, k);
            let sum: Vector = res[4].iter().zip(&res[5]).map(|(a, b)| a + b).collect();
            prop_assert_eq!(&res[6], &sum);
        }
    }
}
