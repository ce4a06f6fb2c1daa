//! Isomorphism witnesses, basis-independent fingerprints, and bounded witness
//! search over automorphism grids.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::rank;
use crate::algebra::{
    annihilator, center_ad, center_assoc, power_filtration, sum_product, AdAlgebra, LinearMap, ProductTensor, Side,
    Vector,
};
use crate::catalog::{format_params, AutomorphismFamily, Catalog, Constraint, Params};
use crate::error::{Error, Result};
use crate::identities::check_2nilpotent_ad;
use crate::scalar::Scalar;

/// Ranks attached to one product `mu * (x > y) + nu * (x < y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PencilInvariants {
    pub mu: i64,
    pub nu: i64,
    pub image: usize,
    pub sym_image: usize,
    pub antisym_image: usize,
    pub left_ann: usize,
    pub right_ann: usize,
    pub ann: usize,
    pub sym_radical: usize,
    pub antisym_radical: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dim: usize,
    /// Filtration dimensions of the sum product.
    pub power_dims: Vec<usize>,
    pub dim_center_ad: usize,
    pub dim_center_assoc: usize,
    pub dim_image_r: usize,
    pub dim_image_l: usize,
    pub two_nilpotent: bool,
    pub pencils: Vec<PencilInvariants>,
    /// Span dimensions of `(x op1 y) op2 z` and `x op1 (y op2 z)` for
    /// `(op1, op2)` in `>>, ><, <>, <<`.
    pub triple_ranks: Vec<usize>,
}

const PENCILS: [(i64, i64); 6] = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1)];

fn image_rank(vectors: Vec<Vector>) -> usize {
    rank(vectors)
}

fn pencil(d: &AdAlgebra, mu: i64, nu: i64) -> PencilInvariants {
    let t = d
        .rprod
        .scale(&Scalar::from(mu))
        .add(&d.lprod.scale(&Scalar::from(nu)))
        .expect("same dimension");
    let n = t.dim();
    let sym = t.add(&transpose(&t)).expect("same dimension");
    let anti = t.add(&transpose(&t).scale(&Scalar::from(-1))).expect("same dimension");
    let all = |t: &ProductTensor| -> Vec<Vector> {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| t.basis_product(i, j).to_vec())
            .collect()
    };
    PencilInvariants {
        mu,
        nu,
        image: image_rank(all(&t)),
        sym_image: image_rank(all(&sym)),
        antisym_image: image_rank(all(&anti)),
        left_ann: annihilator(&[&t], Side::Left).dim(),
        right_ann: annihilator(&[&t], Side::Right).dim(),
        ann: annihilator(&[&t], Side::Both).dim(),
        sym_radical: annihilator(&[&sym], Side::Left).dim(),
        antisym_radical: annihilator(&[&anti], Side::Left).dim(),
    }
}

fn transpose(t: &ProductTensor) -> ProductTensor {
    let n = t.dim();
    let mut out = ProductTensor::zeros(n).expect("positive dimension");
    for (i, j, k, c) in t.nonzero_entries() {
        out.set(j, i, k, c.clone());
    }
    out
}

fn triple_ranks(d: &AdAlgebra) -> Vec<usize> {
    let n = d.dim();
    let ops = d.products();
    let mut out = Vec::new();
    for a in ops {
        for b in ops {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        left.push(b.right_mul_basis(a.basis_product(i, j), k));
                        right.push(a.left_mul_basis(i, b.basis_product(j, k)));
                    }
                }
            }
            out.push(image_rank(left));
            out.push(image_rank(right));
        }
    }
    out
}

pub fn fingerprint(d: &AdAlgebra) -> Fingerprint {
    let sum = sum_product(d);
    let n = d.dim();
    let pencils: Vec<PencilInvariants> = PENCILS.iter().map(|&(m, v)| pencil(d, m, v)).collect();
    Fingerprint {
        dim: n,
        power_dims: power_filtration(&sum, n + 2).iter().map(|s| s.dim()).collect(),
        dim_center_ad: center_ad(d).dim(),
        dim_center_assoc: center_assoc(&sum).dim(),
        dim_image_r: pencils[0].image,
        dim_image_l: pencils[1].image,
        two_nilpotent: check_2nilpotent_ad(d),
        triple_ranks: triple_ranks(d),
        pencils,
    }
}

/// True iff `p(x >1 y) = p(x) >2 p(y)` and likewise for `<`, on all basis pairs.
pub fn verify_iso_witness(d1: &AdAlgebra, d2: &AdAlgebra, p: &LinearMap) -> Result<bool> {
    let n = d1.dim();
    for found in [d2.dim(), p.dim] {
        if found != n {
            return Err(Error::DimensionMismatch { expected: n, found });
        }
    }
    if !p.is_invertible() {
        return Ok(false);
    }
    Ok(intertwines(d1, d2, p))
}

fn intertwines(d1: &AdAlgebra, d2: &AdAlgebra, p: &LinearMap) -> bool {
    let n = d1.dim();
    let cols: Vec<Vector> = (0..n).map(|j| p.column(j)).collect();
    for (t1, t2) in d1.products().into_iter().zip(d2.products()) {
        for i in 0..n {
            for j in 0..n {
                let lhs = p.apply(t1.basis_product(i, j));
                let rhs = t2.multiply(&cols[i], &cols[j]).expect("same dimension");
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Where to look for a witness.
#[derive(Clone, Debug)]
pub enum Strategy {
    /// The automorphism families of a catalogued associative algebra, with the
    /// base parameters fixed.
    AutFamilyGrid { base: String, base_params: Params },
    /// Permutation x diagonal x elementary shear matrices with grid entries.
    StructuredGrid,
}

/// Grid for automorphism and structured-search entries: 1, -1, 2, 1/2, i, -i.
pub fn witness_grid() -> Vec<Scalar> {
    vec![
        Scalar::one(),
        Scalar::from(-1),
        Scalar::from(2),
        Scalar::ratio(1, 2),
        Scalar::i(),
        -Scalar::i(),
    ]
}

pub const DEFAULT_BUDGET: usize = 100_000;

/// Result of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// First witness in grid order, with its candidate index.
    Found { map: LinearMap, index: usize },
    /// The whole grid was examined; not a proof of non-isomorphism.
    NotFound { examined: usize },
    /// The grid is larger than the budget; only the first `budget` candidates were examined.
    BudgetExhausted { examined: usize, grid_size: usize },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&LinearMap> {
        match self {
            SearchOutcome::Found { map, .. } => Some(map),
            _ => None,
        }
    }
}

fn first_in_order(total: usize, budget: usize, candidate: impl Fn(usize) -> Option<LinearMap> + Sync) -> SearchOutcome {
    let limit = total.min(budget);
    match (0..limit).into_par_iter().find_map_first(|k| candidate(k).map(|m| (k, m))) {
        Some((index, map)) => SearchOutcome::Found { map, index },
        None if limit < total => SearchOutcome::BudgetExhausted {
            examined: limit,
            grid_size: total,
        },
        None => SearchOutcome::NotFound { examined: total },
    }
}

/// Searches for `p` with `p(x *1 y) = p(x) *2 p(y)` for both products. Both
/// algebras must have the same sum product in the same basis.
pub fn search_witness(
    catalog: &Catalog,
    d1: &AdAlgebra,
    d2: &AdAlgebra,
    strategy: &Strategy,
    budget: usize,
) -> Result<SearchOutcome> {
    if d1.dim() != d2.dim() {
        return Err(Error::DimensionMismatch {
            expected: d1.dim(),
            found: d2.dim(),
        });
    }
    if sum_product(d1) != sum_product(d2) {
        return Err(Error::PrereqFailed(
            "the sum products differ, so no automorphism of a common sum algebra can relate them".into(),
        ));
    }
    match strategy {
        Strategy::StructuredGrid => {
            let grid = StructuredGrid::new(d1.dim());
            Ok(first_in_order(grid.len(), budget, |k| {
                let p = grid.candidate(k);
                intertwines(d1, d2, &p).then_some(p)
            }))
        }
        Strategy::AutFamilyGrid { base, base_params } => {
            let grids: Vec<FamilyGrid> = catalog
                .automorphism_families(base)
                .into_iter()
                .map(|f| FamilyGrid::new(f, base_params))
                .collect();
            if grids.is_empty() {
                return Err(Error::PrereqFailed(format!("{base} has no automorphism families")));
            }
            let offsets: Vec<usize> = grids
                .iter()
                .scan(0, |acc, g| {
                    let start = *acc;
                    *acc += g.len();
                    Some(start)
                })
                .collect();
            let total: usize = grids.iter().map(FamilyGrid::len).sum();
            Ok(first_in_order(total, budget, |k| {
                let f = offsets.partition_point(|&o| o <= k) - 1;
                let params = grids[f].params_at(k - offsets[f]);
                // Intertwining both products implies intertwining the sum, so the
                // automorphism check is implied by the witness check.
                let p = catalog.family_map_unverified(grids[f].family, &params).ok()?;
                intertwines(d1, d2, &p).then_some(p)
            }))
        }
    }
}

/// Odometer over the grid values of each family parameter, last parameter fastest.
struct FamilyGrid<'a> {
    family: &'a AutomorphismFamily,
    base_params: Params,
    names: Vec<String>,
    values: Vec<Vec<Scalar>>,
}

impl<'a> FamilyGrid<'a> {
    fn new(family: &'a AutomorphismFamily, base_params: &Params) -> Self {
        let grid = witness_grid();
        let mut names = Vec::new();
        let mut values = Vec::new();
        for p in &family.params {
            names.push(p.name.clone());
            values.push(match &p.constraint {
                Constraint::In(xs) => xs.clone(),
                Constraint::Nonzero => grid.clone(),
                // Zero first, so the identity is the first candidate of a
                // family whose identity sits at a = 1 and the rest 0.
                _ => std::iter::once(Scalar::zero()).chain(grid.iter().cloned()).collect(),
            });
        }
        FamilyGrid {
            family,
            base_params: base_params.clone(),
            names,
            values,
        }
    }

    fn len(&self) -> usize {
        self.values.iter().map(Vec::len).product()
    }

    fn params_at(&self, mut k: usize) -> Params {
        let mut p = self.base_params.clone();
        for (name, vals) in self.names.iter().zip(&self.values).rev() {
            p.insert(name.clone(), vals[k % vals.len()].clone());
            k /= vals.len();
        }
        p
    }
}

/// Candidates `Perm * Diag * Shear` in the order: permutations
/// (lexicographic), diagonal entries (odometer, last fastest), then no shear
/// followed by `e_j -> e_j + s e_i` for `i != j` and grid values `s`.
pub struct StructuredGrid {
    n: usize,
    perms: Vec<Vec<usize>>,
    grid: Vec<Scalar>,
}

impl StructuredGrid {
    pub fn new(n: usize) -> Self {
        StructuredGrid {
            n,
            perms: permutations(n),
            grid: witness_grid(),
        }
    }

    fn diag_count(&self) -> usize {
        self.grid.len().pow(self.n as u32)
    }

    fn shear_count(&self) -> usize {
        1 + self.n * (self.n - 1) * self.grid.len()
    }

    pub fn len(&self) -> usize {
        self.perms.len() * self.diag_count() * self.shear_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn candidate(&self, k: usize) -> LinearMap {
        let n = self.n;
        let g = self.grid.len();
        let shear = k % self.shear_count();
        let rest = k / self.shear_count();
        let mut diag_idx = rest % self.diag_count();
        let perm = &self.perms[rest / self.diag_count()];

        let mut diag = vec![Scalar::zero(); n];
        for slot in diag.iter_mut().rev() {
            *slot = self.grid[diag_idx % g].clone();
            diag_idx /= g;
        }
        // Shear S: S(e_j) = e_j + s e_i.
        let mut s = LinearMap::identity(n);
        if shear > 0 {
            let t = shear - 1;
            let (pair, v) = (t / g, t % g);
            let i = pair / (n - 1);
            let mut j = pair % (n - 1);
            if j >= i {
                j += 1;
            }
            s.matrix[i][j] = self.grid[v].clone();
        }
        // (Perm * Diag)(e_c) = diag[c] e_perm[c]; then multiply by S.
        let mut m = vec![vec![Scalar::zero(); n]; n];
        for c in 0..n {
            for r in 0..n {
                let x = &s.matrix[r][c];
                if !x.is_zero() {
                    m[perm[r]][c] = &diag[r] * x;
                }
            }
        }
        LinearMap::new(m).expect("square")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

/// A catalog family at a parameter point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraRef {
    pub id: String,
    #[serde(with = "params_as_strings")]
    pub params: Params,
}

impl AlgebraRef {
    pub fn new(id: &str, params: Params) -> Self {
        AlgebraRef {
            id: id.to_string(),
            params,
        }
    }

    /// Boundary points of a coincidence may sit outside the family's
    /// constraints, so the table is built without enforcing them.
    pub fn instantiate(&self, catalog: &Catalog) -> Result<AdAlgebra> {
        match catalog.instantiate_unchecked(&self.id, &self.params)? {
            crate::algebra::Algebra::Ad(d) => Ok(d),
            _ => Err(Error::parse(self.id.clone(), "not an anti-dendriform family")),
        }
    }
}

impl std::fmt::Display for AlgebraRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.params.is_empty() {
            f.write_str(&self.id)
        } else {
            write!(f, "{}({})", self.id, format_params(&self.params))
        }
    }
}

mod params_as_strings {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &Params, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<&String, String> = p.iter().map(|(k, v)| (k, v.to_string())).collect();
        m.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Params, D::Error> {
        let m = BTreeMap::<String, String>::deserialize(d)?;
        m.into_iter()
            .map(|(k, v)| v.parse().map(|v| (k, v)).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    pub map: LinearMap,
}

#[derive(Serialize, Deserialize)]
struct WitnessFile {
    source: AlgebraRef,
    target: AlgebraRef,
    matrix: Vec<Vec<String>>,
}

impl IsoWitness {
    pub fn to_json(&self) -> String {
        let f = WitnessFile {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.map.to_strings(),
        };
        serde_json::to_string_pretty(&f).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: WitnessFile = serde_json::from_str(text)?;
        Ok(IsoWitness {
            source: f.source,
            target: f.target,
            map: LinearMap::from_strings(&f.matrix)?,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Rebuilds both tables from the catalog and checks the map.
    pub fn verify(&self, catalog: &Catalog) -> Result<bool> {
        let d1 = self.source.instantiate(catalog)?;
        let d2 = self.target.instantiate(catalog)?;
        verify_iso_witness(&d1, &d2, &self.map)
    }
}
