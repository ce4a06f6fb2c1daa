use crate::catalog::{parse_params, Catalog};
use crate::error::Result;
use crate::iso::{search_witness, AlgebraRef, IsoWitness, SearchOutcome, Strategy, DEFAULT_BUDGET};

use super::report::{Check, SuiteReport};

/// One isomorphism between catalogued families at concrete parameters.
#[derive(Clone, Debug)]
pub struct Coincidence {
    /// Stem of the persisted witness file.
    pub file: &'static str,
    /// The general statement this point instantiates.
    pub claim: &'static str,
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    pub strategy: Strategy,
    /// Persisted witness text.
    pub golden: &'static str,
}

fn at(id: &str, params: &str) -> AlgebraRef {
    AlgebraRef::new(id, parse_params(params).expect("valid parameter literal"))
}

macro_rules! golden {
    ($name:literal) => {
        ($name, include_str!(concat!("../../witnesses/", $name, ".json")))
    };
}

pub fn coincidences() -> Vec<Coincidence> {
    let swap = "AD3.8(alpha,beta) is isomorphic to AD3.8(-beta,-alpha)";
    let sign = "AD3.15(alpha,beta,gamma,0) is isomorphic to AD3.15(alpha,-beta,-gamma,0)";
    let structured = |g: (&'static str, &'static str), claim, s, t| Coincidence {
        file: g.0,
        claim,
        source: s,
        target: t,
        strategy: Strategy::StructuredGrid,
        golden: g.1,
    };
    vec![
        structured(
            golden!("ad3-8-swap-1"),
            swap,
            at("AD3.8", "alpha=1,beta=0"),
            at("AD3.8", "alpha=0,beta=-1"),
        ),
        structured(
            golden!("ad3-8-swap-2"),
            swap,
            at("AD3.8", "alpha=1,beta=1"),
            at("AD3.8", "alpha=-1,beta=-1"),
        ),
        structured(
            golden!("ad3-8-swap-3"),
            swap,
            at("AD3.8", "alpha=0,beta=i"),
            at("AD3.8", "alpha=-i,beta=0"),
        ),
        structured(
            golden!("ad3-15-sign-1"),
            sign,
            at("AD3.15", "alpha=1,beta=1,gamma=1,lambda=0"),
            at("AD3.15", "alpha=1,beta=-1,gamma=-1,lambda=0"),
        ),
        structured(
            golden!("ad3-15-sign-2"),
            sign,
            at("AD3.15", "alpha=2,beta=-1,gamma=1/2,lambda=0"),
            at("AD3.15", "alpha=2,beta=1,gamma=-1/2,lambda=0"),
        ),
        structured(
            golden!("ad3-15-sign-3"),
            sign,
            at("AD3.15", "alpha=i,beta=2,gamma=1,lambda=0"),
            at("AD3.15", "alpha=i,beta=-2,gamma=-1,lambda=0"),
        ),
        structured(
            golden!("ad3-21-ad3-20"),
            "AD3.21(-1) is isomorphic to AD3.20(0)",
            at("AD3.21", "alpha=-1"),
            at("AD3.20", "alpha=0"),
        ),
        {
            let g = golden!("ad4-38-ad4-39");
            Coincidence {
                file: g.0,
                claim: "AD4.38(0) equals AD4.39(0,-1/2)",
                source: at("AD4.38", "alpha=0"),
                target: at("AD4.39", "alpha=0,beta=-1/2"),
                strategy: Strategy::AutFamilyGrid {
                    base: "As4.14".into(),
                    base_params: Default::default(),
                },
                golden: g.1,
            }
        },
    ]
}

impl Coincidence {
    /// Runs the grid search from scratch.
    pub fn search(&self, catalog: &Catalog) -> Result<SearchOutcome> {
        let d1 = self.source.instantiate(catalog)?;
        let d2 = self.target.instantiate(catalog)?;
        search_witness(catalog, &d1, &d2, &self.strategy, DEFAULT_BUDGET)
    }

    /// Searches and packages the first witness, if any.
    pub fn generate(&self, catalog: &Catalog) -> Result<Option<IsoWitness>> {
        Ok(self.search(catalog)?.witness().map(|m| IsoWitness {
            source: self.source.clone(),
            target: self.target.clone(),
            map: m.clone(),
        }))
    }
}

pub(super) fn run(cat: &Catalog, seed: u64, samples: usize) -> SuiteReport {
    let suite = "coincidences";
    let mut r = SuiteReport::new(suite, seed, samples);
    for c in coincidences() {
        r.record_point(&c.source.id, &c.source.params);
        r.record_point(&c.target.id, &c.target.params);
        let claim = format!("{} is isomorphic to {}", c.source, c.target);
        let check = Check::new(suite, claim, c.claim);
        let repro = format!("adw iso verify crates/core/witnesses/{}.json", c.file);
        let w = match IsoWitness::from_json(c.golden) {
            Ok(w) => w,
            Err(e) => {
                r.push(check.fail(format!("witness file unreadable: {e}"), repro));
                continue;
            }
        };
        if w.source != c.source || w.target != c.target {
            r.push(check.fail(format!("witness relates {} and {}", w.source, w.target), repro));
            continue;
        }
        r.push(match w.verify(cat) {
            Ok(true) => check.pass(format!("persisted witness {} re-verifies", c.file)),
            Ok(false) => check.fail("persisted map does not intertwine the products", repro),
            Err(e) => check.fail(e.to_string(), repro),
        });
    }
    r
}
