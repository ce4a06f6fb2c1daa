//! Incompatible-coefficient probes for four-dimensional extensions of
//! three-dimensional anti-dendriform algebras that admit no structure.
//!
//! The extension template lifts a quotient `Q` on `<e_1,e_2,e_3>` to the
//! base associative algebra `A`:
//!
//! ```text
//! e_i > e_j = (e_i >_Q e_j) + (A_ij4 + a_ij) e_4
//! e_i < e_j = (e_i <_Q e_j) - a_ij e_4        (i, j <= 3)
//! ```
//!
//! with every other product zero, so the sum product is `A` for any choice
//! of the free coefficients `a_ij`. Each probe evaluates one identity at two
//! triples and solves the `e_4` coefficient of the residual for one chosen
//! `a_ij`, with the remaining slots held at generic values.

use crate::algebra::{AdAlgebra, ProductTensor};
use crate::catalog::{format_params, parse_params, Catalog, Params};
use crate::error::{Error, Result};
use crate::identities::{ad_residuals, IdentityId};
use crate::scalar::Scalar;

use super::report::{Check, SuiteReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeCase {
    pub base: &'static str,
    pub base_params: &'static str,
    pub quotient: &'static str,
    pub quotient_params: &'static str,
    pub identity: IdentityId,
    /// Free coefficient `a_ij`, 1-based.
    pub target: (usize, usize),
    /// Triples (1-based) with the value each forces on the target.
    pub triples: [([usize; 3], i64); 2],
}

impl ProbeCase {
    pub fn id(&self) -> String {
        format!("{}/{}", self.base, self.quotient)
    }
}

const fn case(
    base: &'static str,
    base_params: &'static str,
    quotient: &'static str,
    quotient_params: &'static str,
    identity: IdentityId,
    target: (usize, usize),
    triples: [([usize; 3], i64); 2],
) -> ProbeCase {
    ProbeCase {
        base,
        base_params,
        quotient,
        quotient_params,
        identity,
        target,
        triples,
    }
}

use IdentityId::{Id3, Id4};

const CASES: [ProbeCase; 18] = [
    case("As4.6", "", "AD3.4", "", Id4, (3, 3), [([2, 1, 3], 0), ([3, 1, 2], -1)]),
    case("As4.6", "", "AD3.5", "", Id4, (3, 3), [([1, 1, 3], 0), ([3, 1, 1], -1)]),
    case("As4.6", "", "AD3.6", "", Id4, (3, 3), [([1, 2, 3], 0), ([3, 1, 2], -1)]),
    case("As4.6", "", "AD3.7", "lambda=2/3", Id4, (3, 3), [([1, 1, 3], 0), ([3, 1, 1], -1)]),
    case("As4.8", "", "AD3.19", "", Id3, (1, 3), [([1, 1, 1], 0), ([1, 2, 1], -1)]),
    case("As4.8", "", "AD3.21", "alpha=3", Id3, (1, 3), [([1, 1, 1], 0), ([1, 1, 2], -1)]),
    case("As4.9", "", "AD3.19", "", Id3, (1, 3), [([1, 1, 1], 0), ([1, 2, 1], 1)]),
    case("As4.9", "", "AD3.21", "alpha=3", Id3, (1, 3), [([1, 1, 1], 0), ([1, 1, 2], 1)]),
    case("As4.10", "", "AD3.4", "", Id4, (3, 3), [([1, 2, 3], 0), ([3, 1, 2], -1)]),
    case("As4.10", "", "AD3.5", "", Id4, (3, 3), [([1, 1, 3], 0), ([3, 1, 1], -1)]),
    case("As4.10", "", "AD3.6", "", Id4, (3, 3), [([1, 2, 3], 0), ([3, 1, 2], -1)]),
    case("As4.10", "", "AD3.7", "lambda=2/3", Id4, (3, 3), [([1, 1, 3], 0), ([3, 1, 1], -1)]),
    case("As4.13", "", "AD3.19", "", Id3, (1, 3), [([1, 1, 1], 0), ([1, 2, 1], 1)]),
    case("As4.13", "", "AD3.21", "alpha=3", Id3, (1, 3), [([1, 1, 1], 0), ([1, 1, 2], 1)]),
    case("As4.15", "alpha=5/2", "AD3.4", "", Id4, (3, 3), [([2, 1, 3], 0), ([3, 1, 2], -1)]),
    case("As4.15", "alpha=5/2", "AD3.5", "", Id4, (3, 3), [([1, 1, 3], 0), ([3, 1, 1], -1)]),
    case("As4.15", "alpha=5/2", "AD3.6", "", Id4, (3, 3), [([1, 2, 3], 0), ([3, 1, 2], -1)]),
    case("As4.15", "alpha=5/2", "AD3.7", "lambda=2/3", Id4, (3, 3), [([1, 1, 3], 0), ([3, 1, 1], -1)]),
];

pub fn probe_cases() -> Vec<ProbeCase> {
    CASES.to_vec()
}

pub fn probe_case(id: &str) -> Result<ProbeCase> {
    CASES
        .iter()
        .find(|c| c.id() == id)
        .cloned()
        .ok_or_else(|| Error::UnknownCase(id.to_string()))
}

/// Two unrelated generic assignments for the free slots.
fn slot_value(variant: usize, i: usize, j: usize) -> Scalar {
    let (i, j) = (i as i64, j as i64);
    match variant {
        0 => Scalar::ratio(7 * i + 3 * j + 1, 11),
        _ => Scalar::ratio(5 * i * j + 2 * i + 13, 17),
    }
}

struct Template {
    quotient: AdAlgebra,
    base: ProductTensor,
}

impl Template {
    fn build(&self, slots: &[[Scalar; 3]; 3]) -> Result<AdAlgebra> {
        let mut r = ProductTensor::zeros(4)?;
        let mut l = ProductTensor::zeros(4)?;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    r.set(i, j, k, self.quotient.rprod.get(i, j, k).clone());
                    l.set(i, j, k, self.quotient.lprod.get(i, j, k).clone());
                }
                r.set(i, j, 3, self.base.get(i, j, 3) + &slots[i][j]);
                l.set(i, j, 3, -&slots[i][j]);
            }
        }
        AdAlgebra::new(r, l)
    }
}

/// The value of the target slot that zeroes the `e_4` residual coefficient,
/// or a description of why there is none.
fn solve_slot(
    tpl: &Template,
    case: &ProbeCase,
    triple: [usize; 3],
    variant: usize,
) -> Result<std::result::Result<Scalar, String>> {
    let pos = IdentityId::AD.iter().position(|x| *x == case.identity).expect("anti-dendriform identity");
    let (ti, tj) = (case.target.0 - 1, case.target.1 - 1);
    let mut values = Vec::with_capacity(3);
    for t in 0..3 {
        let mut slots: [[Scalar; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| slot_value(variant, i + 1, j + 1)));
        slots[ti][tj] = Scalar::from(t);
        let d = tpl.build(&slots)?;
        let res = ad_residuals(&d, triple[0] - 1, triple[1] - 1, triple[2] - 1);
        values.push(res[pos][3].clone());
    }
    let slope = &values[1] - &values[0];
    if &values[2] - &values[1] != slope {
        return Ok(Err("residual is not affine in the target".into()));
    }
    if slope.is_zero() {
        return Ok(Err(format!("residual does not involve the target (constant {})", values[0])));
    }
    Ok(Ok(-(&values[0] / &slope)))
}

pub(super) fn run_case(cat: &Catalog, case: &ProbeCase, suite: &str) -> Result<SuiteReport> {
    let base_params = parse_params(case.base_params)?;
    let quotient_params = parse_params(case.quotient_params)?;
    let tpl = Template {
        quotient: cat.instantiate_ad(case.quotient, &quotient_params)?,
        base: cat.instantiate_assoc(case.base, &base_params)?.mul,
    };
    let mut report = SuiteReport::new(suite, 0, 2);
    report.record_point(case.base, &base_params);
    report.record_point(case.quotient, &quotient_params);
    let (ti, tj) = case.target;
    let anchor = format!(
        "no extension of {} with associated algebra {}",
        label(case.quotient, &quotient_params),
        label(case.base, &base_params)
    );
    let claim = format!(
        "{} at the two triples forces incompatible values of a_{ti}{tj} for {}",
        case.identity,
        case.id()
    );
    let mut found = Vec::new();
    let mut problem = None;
    for (triple, expected) in case.triples {
        let mut per_variant = Vec::new();
        for variant in 0..2 {
            match solve_slot(&tpl, case, triple, variant)? {
                Ok(v) => per_variant.push(v),
                Err(why) => problem = problem.or(Some(format!("(e_{},e_{},e_{}): {why}", triple[0], triple[1], triple[2]))),
            }
        }
        if per_variant.len() == 2 {
            if per_variant[0] != per_variant[1] {
                problem = problem.or(Some(format!(
                    "(e_{},e_{},e_{}): solution depends on the other slots ({} vs {})",
                    triple[0], triple[1], triple[2], per_variant[0], per_variant[1]
                )));
            } else if per_variant[0] != Scalar::from(expected) {
                problem = problem.or(Some(format!(
                    "(e_{},e_{},e_{}): forces a_{ti}{tj} = {}, expected {expected}",
                    triple[0], triple[1], triple[2], per_variant[0]
                )));
            }
            found.push((triple, per_variant[0].clone()));
        }
    }
    let repro = format!("adw probe {}", case.id());
    let check = Check::new(suite, claim, anchor);
    report.push(match problem {
        Some(why) => check.fail(why, repro),
        None if found[0].1 == found[1].1 => check.fail("both triples force the same value", repro),
        None => check.evidence(
            found
                .iter()
                .map(|(t, v)| format!("(e_{},e_{},e_{}) forces a_{ti}{tj} = {v}", t[0], t[1], t[2]))
                .collect::<Vec<_>>()
                .join("; "),
        ),
    });
    Ok(report)
}

fn label(id: &str, p: &Params) -> String {
    if p.is_empty() {
        id.to_string()
    } else {
        format!("{id}({})", format_params(p))
    }
}
