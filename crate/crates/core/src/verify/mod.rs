//! Claim-by-claim certification of the catalog, grouped into suites.

mod coincidences;
mod probe;
mod report;
mod suites;

use std::time::Instant;

use crate::catalog::Catalog;
use crate::error::Result;

pub use coincidences::{coincidences, Coincidence};
pub use probe::{probe_case, probe_cases, ProbeCase};
pub use report::{Check, CheckBuilder, SampledPoint, Status, SuiteReport, Summary};
pub use suites::{generic_params, group_anchor, AD4_GROUPS};

/// Suite ids accepted by [`run_suite`], in the order `all` runs them.
pub const SUITES: [&str; 14] = [
    "as3",
    "ad3",
    "as4",
    "ad4-thm1",
    "ad4-thm2",
    "ad4-thm3",
    "ad4-thm4",
    "ad4-thm5",
    "ad4-thm6",
    "ad4-thm7",
    "ad4-thm8",
    "nonisomorphism",
    "coincidences",
    "nonexistence-preconditions",
];

/// Runs one suite (or `all`) against the builtin catalog. Reports are
/// deterministic in `(suite_id, seed, samples)`.
pub fn run_suite(suite_id: &str, seed: u64, samples: usize) -> Result<SuiteReport> {
    run_suite_with(Catalog::builtin(), suite_id, seed, samples)
}

pub fn run_suite_with(cat: &Catalog, suite_id: &str, seed: u64, samples: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let ctx = suites::Ctx { cat, seed, samples };
    let mut report = match suite_id {
        "all" => {
            let mut all = SuiteReport::new("all", seed, samples);
            for s in SUITES {
                all.extend(run_suite_with(cat, s, seed, samples)?);
            }
            all
        }
        "as3" => suites::as3(&ctx),
        "ad3" => suites::ad3(&ctx),
        "as4" => suites::as4(&ctx),
        "nonisomorphism" => suites::nonisomorphism(&ctx),
        "coincidences" => coincidences::run(cat, seed, samples),
        "nonexistence-preconditions" => suites::nonexistence(&ctx)?,
        other => {
            let n: usize = other
                .strip_prefix("ad4-thm")
                .and_then(|n| n.parse().ok())
                .filter(|n| (1..=8).contains(n))
                .ok_or_else(|| suites::unknown(other))?;
            suites::ad4_group(&ctx, other, AD4_GROUPS[n - 1])
        }
    };
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Re-derives the incompatible coefficient values of one curated case,
/// named like `As4.6/AD3.4`.
pub fn run_contradiction_probe(case_id: &str) -> Result<SuiteReport> {
    let start = Instant::now();
    let case = probe_case(case_id)?;
    let mut r = probe::run_case(Catalog::builtin(), &case, "probe")?;
    r.elapsed = start.elapsed();
    Ok(r)
}
