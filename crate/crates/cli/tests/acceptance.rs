//! End-to-end acceptance criteria, run in order by a custom harness that
//! prints one `criterion N ...: PASS|FAIL` line each and exits non-zero if
//! any criterion fails.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write;
use std::process::Command;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use adw_core::algebra::center_assoc;
use adw_core::catalog::{param_values, Catalog, EntryFilter, Kind, Params};
use adw_core::verify::{coincidences, probe_cases, run_contradiction_probe, run_suite, Check, Status, SuiteReport};
use adw_core::SubspaceBasis;

const SEED: u64 = 0;
const SAMPLES: usize = 5;
const AD4_SUITES: [&str; 8] = [
    "ad4-thm1", "ad4-thm2", "ad4-thm3", "ad4-thm4", "ad4-thm5", "ad4-thm6", "ad4-thm7", "ad4-thm8",
];

type Slot = Arc<OnceLock<(Arc<SuiteReport>, Duration)>>;

/// Each suite runs once per test binary, whichever criterion asks first.
fn suite(name: &str) -> (Arc<SuiteReport>, Duration) {
    static CACHE: OnceLock<Mutex<HashMap<String, Slot>>> = OnceLock::new();
    let slot = CACHE
        .get_or_init(Default::default)
        .lock()
        .unwrap()
        .entry(name.to_string())
        .or_default()
        .clone();
    slot.get_or_init(|| {
        let start = Instant::now();
        let r = run_suite(name, SEED, SAMPLES).expect("known suite");
        (Arc::new(r), start.elapsed())
    })
    .clone()
}

fn report(n: usize, name: &str, outcome: Result<String, String>) -> bool {
    let line = match &outcome {
        Ok(d) => format!("criterion {n:>2} {name}: PASS ({d})\n"),
        Err(d) => format!("criterion {n:>2} {name}: FAIL ({d})\n"),
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    outcome.is_ok()
}

fn rows<'a>(reports: &'a [Arc<SuiteReport>], claim_has: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
    reports.iter().flat_map(|r| r.checks.iter()).filter(move |c| c.claim.contains(claim_has))
}

fn failures<'a>(it: impl Iterator<Item = &'a Check>) -> (usize, Vec<String>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for c in it {
        n += 1;
        if c.status != Status::Pass {
            bad.push(format!("{}: {}", c.claim, c.detail));
        }
    }
    (n, bad)
}

fn ad_reports() -> (Vec<Arc<SuiteReport>>, Duration) {
    let mut out = Vec::new();
    let mut total = Duration::ZERO;
    for s in std::iter::once("ad3").chain(AD4_SUITES) {
        let (r, t) = suite(s);
        out.push(r);
        total += t;
    }
    (out, total)
}

/// Distinct admissible grid points of a family, capped at the sample count.
fn expected_points(cat: &Catalog, id: &str) -> usize {
    let e = cat.entry(id).unwrap();
    let total = e.params.iter().map(|p| param_values(p).len()).product::<usize>();
    total.min(SAMPLES)
}

fn criterion_01_identity_certification() -> bool {
    let cat = Catalog::builtin();
    let (reports, elapsed) = ad_reports();
    let outcome = (|| {
        let ad = |dim| {
            cat.list_entries(&EntryFilter {
                dim: Some(dim),
                kind: Some(Kind::Ad),
                ..Default::default()
            })
        };
        let (n3, n4) = (ad(3).len(), ad(4).len());
        if (n3, n4) != (23, 47) {
            return Err(format!("catalog has {n3} + {n4} anti-dendriform families, expected 23 + 47"));
        }
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for r in &reports {
            for p in &r.sampled_params {
                *counts.entry(p.id.as_str()).or_default() += 1;
            }
        }
        let thin: Vec<String> = ad(3)
            .into_iter()
            .chain(ad(4))
            .filter(|e| counts.get(e.id.as_str()).copied().unwrap_or(0) < expected_points(cat, &e.id))
            .map(|e| e.id.clone())
            .collect();
        if !thin.is_empty() {
            return Err(format!("too few sampled points for {}", thin.join(", ")));
        }
        let (n, bad) = failures(rows(&reports, "satisfies the seven identities"));
        if n < 70 {
            return Err(format!("only {n} identity rows"));
        }
        if !bad.is_empty() {
            return Err(format!("{} of {n} families violate the identities; {}", bad.len(), bad.join("; ")));
        }
        if elapsed > Duration::from_secs(30) {
            return Err(format!("took {elapsed:.1?}, budget 30s"));
        }
        Ok(format!("{n} families, zero violations, {elapsed:.2?}"))
    })();
    report(1, "identity certification", outcome)
}

fn criterion_02_associated_algebra_equality() -> bool {
    let (reports, _) = ad_reports();
    let (n, bad) = failures(rows(&reports, " sums to "));
    let outcome = if n < 70 {
        Err(format!("only {n} sum rows"))
    } else if bad.is_empty() {
        Ok(format!("{n} families tensor-identical at every sampled point"))
    } else {
        Err(bad.join("; "))
    };
    report(2, "associated-algebra equality", outcome)
}

fn criterion_03_centers() -> bool {
    let cat = Catalog::builtin();
    let (as4, _) = suite("as4");
    let (ad, _) = ad_reports();
    let outcome = (|| {
        let alpha: Params = [("alpha".to_string(), 3.into())].into();
        let spot = [
            ("As4.12", alpha, SubspaceBasis::standard(4, &[2, 3])),
            ("As4.13", Params::new(), SubspaceBasis::standard(4, &[3])),
        ];
        for (id, p, want) in spot {
            let got = center_assoc(&cat.instantiate_assoc(id, &p).map_err(|e| e.to_string())?);
            if got != want {
                return Err(format!("{id} has center {got}, expected {want}"));
            }
        }
        let (n_as, bad_as) = failures(rows(std::slice::from_ref(&as4), " has center "));
        let (n_ad, bad_ad) = failures(rows(&ad, " has center <e_4>"));
        if n_as != 15 || n_ad < 47 {
            return Err(format!("{n_as} associative and {n_ad} anti-dendriform center rows"));
        }
        let bad: Vec<String> = bad_as.into_iter().chain(bad_ad).collect();
        if !bad.is_empty() {
            return Err(bad.join("; "));
        }
        Ok(format!("{n_as} associative and {n_ad} anti-dendriform centers agree"))
    })();
    report(3, "centers", outcome)
}

fn criterion_04_nilpotency() -> bool {
    let (as3, _) = suite("as3");
    let (as4, _) = suite("as4");
    let reports = [as3, as4];
    let (n, mut bad) = failures(rows(&reports, "is nilpotent of index at most"));
    let (exact, bad_exact) = failures(rows(&reports, "has nilpotency index exactly"));
    bad.extend(bad_exact);
    let outcome = if n != 21 || exact != 2 {
        Err(format!("{n} bound rows and {exact} exact-index rows"))
    } else if bad.is_empty() {
        Ok(format!("{n} associative families bounded; As3.6 index 4, As4.16 index 5"))
    } else {
        Err(bad.join("; "))
    };
    report(4, "nilpotency", outcome)
}

fn criterion_05_quotient_claims() -> bool {
    let (reports, _) = ad_reports();
    let (n, bad) = failures(rows(&reports, " / <e_4> is "));
    let outcome = if n < 47 {
        Err(format!("only {n} quotient rows"))
    } else if bad.is_empty() {
        Ok(format!("{n} quotients anti-dendriform and tensor-identical to the named family"))
    } else {
        Err(bad.join("; "))
    };
    report(5, "quotient claims", outcome)
}

fn criterion_06_coincidence_witnesses() -> bool {
    let cat = Catalog::builtin();
    let (r, _) = suite("coincidences");
    let outcome = (|| {
        let (n, bad) = failures(r.checks.iter());
        if !bad.is_empty() {
            return Err(bad.join("; "));
        }
        let cs = coincidences();
        let claims: BTreeSet<&str> = cs.iter().map(|c| c.claim).collect();
        if n != 8 || claims.len() != 4 {
            return Err(format!("{n} witnesses for {} claims", claims.len()));
        }
        let mut slowest = Duration::ZERO;
        for c in &cs {
            let start = Instant::now();
            let w = c.generate(cat).map_err(|e| e.to_string())?;
            let t = start.elapsed();
            slowest = slowest.max(t);
            match w {
                Some(w) if w.to_json() == c.golden => {}
                Some(_) => return Err(format!("{}: search result differs from the persisted witness", c.file)),
                None => return Err(format!("{}: search finds no witness", c.file)),
            }
            if t > Duration::from_secs(60) {
                return Err(format!("{}: search took {t:.1?}", c.file));
            }
        }
        Ok(format!("{n} persisted witnesses for 4 claims re-verify; slowest regeneration {slowest:.2?}"))
    })();
    report(6, "coincidence witnesses", outcome)
}

fn criterion_07_automorphism_fidelity() -> bool {
    let cat = Catalog::builtin();
    let (r, _) = suite("as4");
    let outcome = (|| {
        let certified: Vec<String> = cat
            .all_automorphism_families()
            .iter()
            .filter(|f| !f.printed)
            .map(|f| f.label())
            .collect();
        let (n, bad) = failures(rows(std::slice::from_ref(&r), "consists of automorphisms"));
        if n != certified.len() {
            return Err(format!("{n} rows for {} families", certified.len()));
        }
        if !bad.is_empty() {
            return Err(bad.join("; "));
        }
        for label in &certified {
            let k = r.sampled_params.iter().filter(|p| &p.id == label).count();
            if k < 10 {
                return Err(format!("{label} checked at {k} points"));
            }
        }
        Ok(format!("{n} families, each at >= 10 grid points"))
    })();
    report(7, "automorphism table fidelity", outcome)
}

fn criterion_08_nonisomorphism_evidence() -> bool {
    let (r, _) = suite("nonisomorphism");
    let pairs: Vec<&Check> = r.checks.iter().filter(|c| c.claim.ends_with("are not isomorphic")).collect();
    let separated = pairs.iter().filter(|c| c.status == Status::Pass).count();
    let grid_only = pairs
        .iter()
        .filter(|c| c.status == Status::EvidenceOnly && c.detail.contains("no witness among all"))
        .count();
    let bad: Vec<String> = pairs
        .iter()
        .filter(|c| c.status == Status::Fail || (c.status == Status::EvidenceOnly && !c.detail.contains("no witness among all")))
        .map(|c| format!("{}: {}", c.claim, c.detail))
        .collect();
    let share = separated as f64 / pairs.len().max(1) as f64;
    let outcome = if pairs.is_empty() {
        Err("no pairs examined".into())
    } else if !bad.is_empty() {
        Err(bad.join("; "))
    } else if share < 0.9 {
        Err(format!("only {separated}/{} pairs separated by fingerprint", pairs.len()))
    } else {
        Ok(format!(
            "{separated}/{} separated by fingerprint ({:.1}%), {grid_only} survive the exhaustive grid, 0 cross-witnesses",
            pairs.len(),
            100.0 * share
        ))
    };
    report(8, "non-isomorphism evidence", outcome)
}

fn criterion_09_contradiction_probes() -> bool {
    let required = ["As4.6", "As4.8", "As4.9", "As4.10", "As4.13", "As4.15"];
    let outcome = (|| {
        let mut covered = BTreeSet::new();
        let cases = probe_cases();
        for case in &cases {
            let r = run_contradiction_probe(&case.id()).map_err(|e| e.to_string())?;
            let c = &r.checks[0];
            if c.status != Status::EvidenceOnly {
                return Err(format!("{}: {}", case.id(), c.detail));
            }
            covered.insert(case.base);
        }
        let missing: Vec<&str> = required.iter().copied().filter(|b| !covered.contains(b)).collect();
        if !missing.is_empty() {
            return Err(format!("no case for {}", missing.join(", ")));
        }
        Ok(format!("{} cases over {} associated algebras reproduce their conflicting values", cases.len(), covered.len()))
    })();
    report(9, "contradiction probes", outcome)
}

fn criterion_10_determinism() -> bool {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_adw"))
            .args(["verify", "all", "--seed", "0", "--samples", "5", "--format", "json"])
            .output()
            .expect("adw runs")
    };
    let (a, b) = (run(), run());
    let outcome = if a.stdout.is_empty() {
        Err(format!("no report; stderr: {}", String::from_utf8_lossy(&a.stderr)))
    } else if a.stdout == b.stdout {
        Ok(format!("two runs byte-identical, {} bytes", a.stdout.len()))
    } else {
        Err("reports differ".into())
    };
    report(10, "determinism", outcome)
}

fn main() -> std::process::ExitCode {
    let criteria: [fn() -> bool; 10] = [
        criterion_01_identity_certification,
        criterion_02_associated_algebra_equality,
        criterion_03_centers,
        criterion_04_nilpotency,
        criterion_05_quotient_claims,
        criterion_06_coincidence_witnesses,
        criterion_07_automorphism_fidelity,
        criterion_08_nonisomorphism_evidence,
        criterion_09_contradiction_probes,
        criterion_10_determinism,
    ];
    let failed = criteria.iter().filter(|c| !c()).count();
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
