//! Deterministic parameter sampling.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;

use super::{AutomorphismFamily, Constraint, ParamSpec, Params};

/// Base sampling grid: 0, 1, -1, 2, 1/2, i.
pub fn base_grid() -> Vec<Scalar> {
    vec![
        Scalar::zero(),
        Scalar::one(),
        Scalar::from(-1),
        Scalar::from(2),
        Scalar::ratio(1, 2),
        Scalar::i(),
    ]
}

fn push_unique(out: &mut Vec<Scalar>, v: Scalar) {
    if !out.contains(&v) {
        out.push(v);
    }
}

/// Admissible grid values of one parameter. A `!= v` constraint also
/// contributes `v + 1, v - 1, 2v, v/2`.
pub fn param_values(spec: &ParamSpec) -> Vec<Scalar> {
    let mut out = Vec::new();
    match &spec.constraint {
        Constraint::In(xs) => {
            for x in xs {
                push_unique(&mut out, x.clone());
            }
        }
        c => {
            for v in base_grid() {
                if c.admits(&v) {
                    push_unique(&mut out, v);
                }
            }
            if let Constraint::NotEqual(v) = c {
                let one = Scalar::one();
                let two = Scalar::from(2);
                for w in [v + &one, v - &one, v * &two, v / &two] {
                    if c.admits(&w) {
                        push_unique(&mut out, w);
                    }
                }
            }
        }
    }
    out
}

fn fnv(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3))
}

/// Point `k` of the walk over the per-parameter value lists. Seed 0 is the
/// diagonal walk (parameter `j` takes value `(k + j) mod len`), sheared by
/// `j` after every full lap so equal-length lists do not cycle; other seeds
/// draw indices from a ChaCha stream keyed by the seed and `salt`.
fn walk(specs: &[&ParamSpec], values: &[Vec<Scalar>], k: usize, rng: Option<&mut ChaCha8Rng>) -> Params {
    let mut p = Params::new();
    match rng {
        None => {
            for (j, (s, vals)) in specs.iter().zip(values).enumerate() {
                let n = vals.len();
                p.insert(s.name.clone(), vals[(k + j + j * (k / n)) % n].clone());
            }
        }
        Some(rng) => {
            for (s, vals) in specs.iter().zip(values) {
                p.insert(s.name.clone(), vals[rng.gen_range(0..vals.len())].clone());
            }
        }
    }
    p
}

fn distinct_points(
    specs: &[&ParamSpec],
    seed: u64,
    salt: &str,
    wanted: usize,
    mut accept: impl FnMut(&Params) -> bool,
) -> Vec<Params> {
    let values: Vec<Vec<Scalar>> = specs.iter().map(|s| param_values(s)).collect();
    if values.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let total: usize = values.iter().map(Vec::len).fold(1, |a, b| a.saturating_mul(b));
    let wanted = wanted.min(total);
    let mut rng = (seed != 0).then(|| ChaCha8Rng::seed_from_u64(seed ^ fnv(salt)));
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let attempts = 64 * wanted.max(1) + total.min(4096);
    for k in 0..attempts {
        if out.len() >= wanted {
            break;
        }
        let p = walk(specs, &values, k, rng.as_mut());
        let key = super::format_params(&p);
        if seen.insert(key) && accept(&p) {
            out.push(p);
        }
    }
    out
}

/// Up to `samples` distinct admissible points for the given parameters.
/// Parameter-free families have exactly one point.
pub fn sample_points(params: &[ParamSpec], seed: u64, samples: usize, salt: &str) -> Vec<Params> {
    let specs: Vec<&ParamSpec> = params.iter().collect();
    distinct_points(&specs, seed, salt, samples.max(1), |_| true)
}

/// Up to `count` distinct points of an automorphism family (base parameters
/// included) that satisfy its extra nonzero conditions.
pub fn automorphism_points(fam: &AutomorphismFamily, seed: u64, count: usize) -> Vec<Params> {
    let specs: Vec<&ParamSpec> = fam.all_params().collect();
    distinct_points(&specs, seed, &fam.label(), count, |p| {
        let env: HashMap<&str, &Scalar> = p.iter().map(|(k, v)| (k.as_str(), v)).collect();
        fam.nonzero
            .iter()
            .all(|c| c.eval(&env).is_ok_and(|v| !v.is_zero()))
    })
}

/// A fixed value unlikely to sit on any special locus.
pub fn generic_value(spec: &ParamSpec) -> Scalar {
    let v = match spec.name.as_str() {
        "alpha" => Scalar::from(3),
        "beta" => Scalar::ratio(5, 7),
        "gamma" => Scalar::from(-2),
        "lambda" => Scalar::ratio(7, 3),
        "delta" => Scalar::one(),
        _ => Scalar::ratio(11, 13),
    };
    if spec.constraint.admits(&v) {
        v
    } else {
        param_values(spec).into_iter().next_back().unwrap_or(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(name: &str, c: Constraint) -> ParamSpec {
        ParamSpec {
            name: name.to_string(),
            constraint: c,
        }
    }

    #[test]
    fn boundary_values_are_added() {
        let vals = param_values(&spec("alpha", Constraint::NotEqual(Scalar::one())));
        assert!(!vals.contains(&Scalar::one()));
        assert!(vals.contains(&Scalar::from(2)));
        assert!(vals.contains(&Scalar::ratio(1, 2)));
        assert!(vals.contains(&Scalar::zero()));
    }

    #[test]
    fn diagonal_walk_gives_distinct_points() {
        let ps = [spec("alpha", Constraint::Any), spec("beta", Constraint::Any)];
        let pts = sample_points(&ps, 0, 5, "x");
        assert_eq!(pts.len(), 5);
        assert_eq!(pts[0]["alpha"], Scalar::zero());
        assert_eq!(pts[0]["beta"], Scalar::one());
        assert_eq!(sample_points(&[], 0, 5, "x").len(), 1);
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let ps = [spec("alpha", Constraint::Any), spec("beta", Constraint::Nonzero)];
        let a = sample_points(&ps, 7, 5, "AD3.8");
        assert_eq!(a, sample_points(&ps, 7, 5, "AD3.8"));
        assert!(a.iter().all(|p| !p["beta"].is_zero()));
    }

    #[test]
    fn small_sets_cap_the_count() {
        let ps = [spec("delta", Constraint::In(vec![Scalar::zero(), Scalar::one()]))];
        assert_eq!(sample_points(&ps, 0, 5, "x").len(), 2);
    }
}
