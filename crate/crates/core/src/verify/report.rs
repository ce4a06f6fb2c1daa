use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::catalog::Params;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Supporting evidence for a claim that is not decided here.
    EvidenceOnly,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::EvidenceOnly => "evidence-only",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub claim: String,
    pub anchor: String,
    pub status: Status,
    pub detail: String,
    /// Command line reproducing a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
}

#[allow(clippy::new_ret_no_self)]
impl Check {
    pub fn new(suite: &str, claim: impl Into<String>, anchor: impl Into<String>) -> CheckBuilder {
        CheckBuilder {
            suite: suite.to_string(),
            claim: claim.into(),
            anchor: anchor.into(),
        }
    }
}

pub struct CheckBuilder {
    suite: String,
    claim: String,
    anchor: String,
}

impl CheckBuilder {
    fn finish(self, status: Status, detail: String, repro: Option<String>) -> Check {
        Check {
            suite: self.suite,
            claim: self.claim,
            anchor: self.anchor,
            status,
            detail,
            repro,
        }
    }

    pub fn pass(self, detail: impl Into<String>) -> Check {
        self.finish(Status::Pass, detail.into(), None)
    }

    pub fn fail(self, detail: impl Into<String>, repro: impl Into<String>) -> Check {
        self.finish(Status::Fail, detail.into(), Some(repro.into()))
    }

    pub fn evidence(self, detail: impl Into<String>) -> Check {
        self.finish(Status::EvidenceOnly, detail.into(), None)
    }

    /// Pass when `failure` is `None`, otherwise fail with its detail and repro.
    pub fn outcome(self, ok_detail: impl Into<String>, failure: Option<(String, String)>) -> Check {
        match failure {
            None => self.pass(ok_detail),
            Some((detail, repro)) => self.fail(detail, repro),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledPoint {
    pub id: String,
    pub params: BTreeMap<String, String>,
}

impl SampledPoint {
    pub fn new(id: &str, params: &Params) -> Self {
        SampledPoint {
            id: id.to_string(),
            params: params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub evidence_only: usize,
}

/// Outcome of one suite. `elapsed` is not serialized so that reports for the
/// same inputs are byte-identical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite_id: String,
    pub seed: u64,
    pub samples: usize,
    pub summary: Summary,
    pub checks: Vec<Check>,
    pub sampled_params: Vec<SampledPoint>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn new(suite_id: &str, seed: u64, samples: usize) -> Self {
        SuiteReport {
            suite_id: suite_id.to_string(),
            seed,
            samples,
            summary: Summary::default(),
            checks: Vec::new(),
            sampled_params: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn push(&mut self, c: Check) {
        match c.status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::EvidenceOnly => self.summary.evidence_only += 1,
        }
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: SuiteReport) {
        for c in other.checks {
            self.push(c);
        }
        self.sampled_params.extend(other.sampled_params);
    }

    pub fn record_point(&mut self, id: &str, params: &Params) {
        self.sampled_params.push(SampledPoint::new(id, params));
    }

    /// No check failed.
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let w_status = self.checks.iter().map(|c| c.status.as_str().len()).max().unwrap_or(6).max(6);
        let w_suite = self.checks.iter().map(|c| c.suite.len()).max().unwrap_or(5).max(5);
        let w_claim = self
            .checks
            .iter()
            .map(|c| c.claim.chars().count())
            .max()
            .unwrap_or(5)
            .clamp(5, 72);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {} (seed {}, samples {})",
            self.suite_id, self.seed, self.samples
        );
        let _ = writeln!(out, "{:<w_status$}  {:<w_suite$}  {:<w_claim$}  detail", "status", "suite", "claim");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<w_status$}  {:<w_suite$}  {:<w_claim$}  {}",
                c.status.as_str(),
                c.suite,
                c.claim,
                c.detail
            );
            if let Some(r) = &c.repro {
                let _ = writeln!(out, "{:w_status$}  reproduce: {r}", "");
            }
        }
        let _ = writeln!(
            out,
            "{} pass, {} fail, {} evidence-only ({:.2?})",
            self.summary.pass, self.summary.fail, self.summary.evidence_only, self.elapsed
        );
        out
    }
}
