use rayon::prelude::*;
use serde_json::Value;

use crate::algebra::{center_ad, center_assoc, is_ideal, nilpotency_index, quotient_by_ideal, sum_product, AdAlgebra};
use crate::catalog::{
    automorphism_points, format_params, generic_value, sample_points, Catalog, CatalogEntry, EntryFilter, Kind, Params,
};
use crate::error::{Error, Result};
use crate::identities::{check_anti_dendriform, check_associative, render_vector, Violation};
use crate::iso::{fingerprint, search_witness, SearchOutcome, Strategy, DEFAULT_BUDGET};

use super::report::{Check, SuiteReport};

/// Associated algebra of each group of four-dimensional families, in suite order.
pub const AD4_GROUPS: [&str; 8] = ["As4.3", "As4.6", "As4.8", "As4.9", "As4.10", "As4.13", "As4.14", "As4.15"];

pub(super) struct Ctx<'a> {
    pub cat: &'a Catalog,
    pub seed: u64,
    pub samples: usize,
}

impl Ctx<'_> {
    pub fn points(&self, e: &CatalogEntry) -> Vec<Params> {
        sample_points(&e.params, self.seed, self.samples, &e.id)
    }
}

pub fn generic_params(e: &CatalogEntry) -> Params {
    e.params.iter().map(|p| (p.name.clone(), generic_value(p))).collect()
}

fn at(id: &str, p: &Params) -> String {
    if p.is_empty() {
        id.to_string()
    } else {
        format!("{id}({})", format_params(p))
    }
}

fn repro(cmd: &str, id: &str, p: &Params) -> String {
    if p.is_empty() {
        format!("adw {cmd} {id}")
    } else {
        format!("adw {cmd} {id} --params {}", format_params(p))
    }
}

fn first_violation(v: &[Violation]) -> String {
    let f = &v[0];
    format!(
        "{} violations; first {} at (e_{},e_{},e_{}): residual {}",
        v.len(),
        f.id,
        f.triple[0],
        f.triple[1],
        f.triple[2],
        render_vector(&f.residual)
    )
}

fn record_points(report: &mut SuiteReport, e: &CatalogEntry, pts: &[Params]) {
    for p in pts {
        report.record_point(&e.id, p);
    }
}

/// Runs `f` over the entries in parallel and appends rows in entry order.
fn per_entry<F>(ctx: &Ctx, report: &mut SuiteReport, entries: &[&CatalogEntry], f: F)
where
    F: Fn(&CatalogEntry, &[Params]) -> Vec<Check> + Sync,
{
    let rows: Vec<(Vec<Params>, Vec<Check>)> = entries
        .par_iter()
        .map(|e| {
            let pts = ctx.points(e);
            let rows = f(e, &pts);
            (pts, rows)
        })
        .collect();
    for (e, (pts, rows)) in entries.iter().zip(rows) {
        record_points(report, e, &pts);
        for r in rows {
            report.push(r);
        }
    }
}

fn assoc_rows(ctx: &Ctx, suite: &str, e: &CatalogEntry, pts: &[Params], anchor: &str) -> Vec<Check> {
    let mut fail = None;
    let mut worst = 0;
    let mut nil_fail = None;
    for p in pts {
        let a = match ctx.cat.instantiate_assoc(&e.id, p) {
            Ok(a) => a,
            Err(err) => {
                fail = Some((format!("{} does not instantiate: {err}", at(&e.id, p)), repro("show", &e.id, p)));
                break;
            }
        };
        let v = check_associative(&a);
        if fail.is_none() && !v.is_empty() {
            fail = Some((format!("{}: {}", at(&e.id, p), first_violation(&v)), repro("check", &e.id, p)));
        }
        match nilpotency_index(&a) {
            Some(k) if k <= e.dim + 1 => worst = worst.max(k),
            other => {
                if nil_fail.is_none() {
                    nil_fail = Some((
                        format!("{}: nilpotency index {:?} exceeds {}", at(&e.id, p), other, e.dim + 1),
                        repro("show", &e.id, p),
                    ));
                }
            }
        }
    }
    vec![
        Check::new(suite, format!("{} is associative", e.id), anchor)
            .outcome(format!("0 violations at {}", n_points(pts.len())), fail),
        Check::new(suite, format!("{} is nilpotent of index at most {}", e.id, e.dim + 1), anchor)
            .outcome(format!("largest index {worst} over {}", n_points(pts.len())), nil_fail),
    ]
}

fn exact_index_row(ctx: &Ctx, suite: &str, id: &str, expected: usize, anchor: &str) -> Check {
    let claim = format!("{id} has nilpotency index exactly {expected}");
    let p = Params::new();
    match ctx.cat.instantiate_assoc(id, &p).map(|a| nilpotency_index(&a)) {
        Ok(Some(k)) if k == expected => Check::new(suite, claim, anchor).pass(format!("index {k}")),
        Ok(k) => Check::new(suite, claim, anchor).fail(format!("index {k:?}"), repro("show", id, &p)),
        Err(e) => Check::new(suite, claim, anchor).fail(e.to_string(), repro("show", id, &p)),
    }
}

pub(super) fn as3(ctx: &Ctx) -> SuiteReport {
    let suite = "as3";
    let anchor = "three-dimensional nilpotent associative algebras";
    let mut r = SuiteReport::new(suite, ctx.seed, ctx.samples);
    let entries = ctx.cat.list_entries(&EntryFilter {
        dim: Some(3),
        kind: Some(Kind::Assoc),
        ..Default::default()
    });
    r.push(count_row(suite, "three-dimensional associative families", entries.len(), 6, anchor));
    per_entry(ctx, &mut r, &entries, |e, pts| assoc_rows(ctx, suite, e, pts, anchor));
    r.push(exact_index_row(ctx, suite, "As3.6", 4, anchor));
    r
}

fn count_row(suite: &str, what: &str, found: usize, expected: usize, anchor: &str) -> Check {
    let claim = format!("{expected} {what}");
    if found == expected {
        Check::new(suite, claim, anchor).pass(format!("{found} entries"))
    } else {
        Check::new(suite, claim, anchor).fail(format!("{found} entries"), "adw list")
    }
}

/// Identity and sum-equality rows for one anti-dendriform entry.
fn ad_rows(ctx: &Ctx, suite: &str, e: &CatalogEntry, pts: &[Params], anchor: &str) -> Vec<Check> {
    let mut id_fail = None;
    let mut sum_fail = None;
    let assoc = e.assoc.as_ref().expect("ad entries name their associated algebra");
    for p in pts {
        let d = match ctx.cat.instantiate_ad(&e.id, p) {
            Ok(d) => d,
            Err(err) => {
                id_fail = Some((format!("{} does not instantiate: {err}", at(&e.id, p)), repro("show", &e.id, p)));
                break;
            }
        };
        let v = check_anti_dendriform(&d);
        if id_fail.is_none() && !v.is_empty() {
            id_fail = Some((format!("{}: {}", at(&e.id, p), first_violation(&v)), repro("check", &e.id, p)));
        }
        if sum_fail.is_none() {
            let claimed = ctx.cat.instantiate_ref(assoc, p).map(|a| a.as_assoc().cloned());
            match claimed {
                Ok(Some(a)) if a == sum_product(&d) => {}
                Ok(_) => {
                    sum_fail = Some((
                        format!("{}: sum product differs from {assoc}", at(&e.id, p)),
                        repro("sum", &e.id, p),
                    ))
                }
                Err(err) => sum_fail = Some((format!("{}: {err}", at(&e.id, p)), repro("sum", &e.id, p))),
            }
        }
    }
    vec![
        Check::new(suite, format!("{} satisfies the seven identities", e.id), anchor)
            .outcome(format!("0 violations at {}", n_points(pts.len())), id_fail),
        Check::new(suite, format!("{} sums to {assoc}", e.id), "associated associative algebra")
            .outcome(format!("tensor-identical at {}", n_points(pts.len())), sum_fail),
    ]
}

pub(super) fn ad3(ctx: &Ctx) -> SuiteReport {
    let suite = "ad3";
    let anchor = "three-dimensional anti-dendriform algebras";
    let mut r = SuiteReport::new(suite, ctx.seed, ctx.samples);
    let entries = ctx.cat.list_entries(&EntryFilter {
        dim: Some(3),
        kind: Some(Kind::Ad),
        ..Default::default()
    });
    r.push(count_row(suite, "three-dimensional anti-dendriform families", entries.len(), 23, anchor));
    per_entry(ctx, &mut r, &entries, |e, pts| ad_rows(ctx, suite, e, pts, anchor));
    r
}

fn center_row(ctx: &Ctx, suite: &str, e: &CatalogEntry, pts: &[Params], anchor: &str) -> Check {
    let claim = e.claimed_center().expect("four-dimensional entries carry a center");
    let title = format!("{} has center {claim}", e.id);
    for p in pts {
        let computed = match ctx.cat.instantiate(&e.id, p) {
            Ok(crate::algebra::Algebra::Assoc(a)) => center_assoc(&a),
            Ok(crate::algebra::Algebra::Ad(d)) => center_ad(&d),
            Err(err) => return Check::new(suite, title, anchor).fail(err.to_string(), repro("center", &e.id, p)),
        };
        if computed != claim {
            return Check::new(suite, title, anchor).fail(
                format!("{}: computed center {computed}", at(&e.id, p)),
                repro("center", &e.id, p),
            );
        }
    }
    Check::new(suite, title, anchor).pass(format!("echelon bases agree at {}", n_points(pts.len())))
}

fn automorphism_rows(ctx: &Ctx, suite: &str, base: &str) -> (Vec<Check>, Vec<(String, Params)>) {
    let anchor = "automorphisms of the four-dimensional associative algebras";
    let wanted = ctx.samples.max(10);
    let mut rows = Vec::new();
    let mut used = Vec::new();
    for fam in ctx.cat.all_automorphism_families().iter().filter(|f| f.base == base) {
        let pts = automorphism_points(fam, ctx.seed, wanted);
        let mut failure: Option<(String, String)> = None;
        let mut failures = 0;
        for p in &pts {
            used.push((fam.label(), p.clone()));
            if let Err(err) = ctx.cat.instantiate_family_map(fam, p) {
                failures += 1;
                if failure.is_none() {
                    let cmd = format!(
                        "adw automorphism {base} {}{} --params {}",
                        fam.which,
                        if fam.printed { " --printed" } else { "" },
                        format_params(p)
                    );
                    failure = Some((format!("{}: {err}", format_params(p)), cmd));
                }
            }
        }
        if fam.printed {
            let claim = format!("tabulated form of {} #{} fails the product check", base, fam.which);
            rows.push(match failure {
                Some((detail, _)) => Check::new(suite, claim, anchor)
                    .pass(format!("rejected at {failures}/{} points; first {detail}", pts.len())),
                None => Check::new(suite, claim, anchor).fail(
                    format!("accepted at all {} points", pts.len()),
                    format!("adw verify {suite}"),
                ),
            });
            continue;
        }
        let claim = format!("{} #{} consists of automorphisms", base, fam.which);
        if pts.len() < 10 && failure.is_none() {
            failure = Some((format!("only {} grid points", pts.len()), format!("adw verify {suite}")));
        }
        rows.push(Check::new(suite, claim, anchor).outcome(format!("verified at {}", n_points(pts.len())), failure));
    }
    (rows, used)
}

pub(super) fn as4(ctx: &Ctx) -> SuiteReport {
    let suite = "as4";
    let anchor = "four-dimensional nilpotent associative algebras";
    let mut r = SuiteReport::new(suite, ctx.seed, ctx.samples);
    let entries = ctx.cat.list_entries(&EntryFilter {
        dim: Some(4),
        kind: Some(Kind::Assoc),
        ..Default::default()
    });
    r.push(count_row(suite, "four-dimensional associative families", entries.len(), 15, anchor));
    // (entry points, rows, automorphism points by family label)
    type EntryRows = (Vec<Params>, Vec<Check>, Vec<(String, Params)>);
    let rows: Vec<EntryRows> = entries
        .par_iter()
        .map(|e| {
            let pts = ctx.points(e);
            let mut rows = assoc_rows(ctx, suite, e, &pts, anchor);
            rows.push(center_row(ctx, suite, e, &pts, anchor));
            let (aut, used) = automorphism_rows(ctx, suite, &e.id);
            rows.extend(aut);
            (pts, rows, used)
        })
        .collect();
    for (e, (pts, rows, used)) in entries.iter().zip(rows) {
        record_points(&mut r, e, &pts);
        for (label, p) in used {
            r.record_point(&label, &p);
        }
        for c in rows {
            r.push(c);
        }
    }
    r.push(exact_index_row(ctx, suite, "As4.16", 5, anchor));
    r
}

fn quotient_row(ctx: &Ctx, suite: &str, e: &CatalogEntry, pts: &[Params], anchor: &str) -> Check {
    let Some(q) = &e.quotient else {
        return Check::new(suite, format!("{} has a quotient claim", e.id), anchor)
            .fail("no quotient family recorded", format!("adw show {}", e.id));
    };
    let title = format!("{} / <e_4> is {q}", e.id);
    let check = |p: &Params| -> Result<Option<String>> {
        let d = ctx.cat.instantiate_ad(&e.id, p)?;
        let ideal = crate::algebra::SubspaceBasis::standard(e.dim, &[e.dim - 1]);
        if !is_ideal(&d, &ideal)? {
            return Ok(Some("<e_4> is not an ideal".into()));
        }
        let quotient = quotient_by_ideal(&d, &ideal)?;
        let v = check_anti_dendriform(&quotient);
        if !v.is_empty() {
            return Ok(Some(format!("quotient: {}", first_violation(&v))));
        }
        let claimed = ctx.cat.instantiate_ref(q, p)?;
        if claimed.as_ad() != Some(&quotient) {
            return Ok(Some(format!("quotient differs from {q}")));
        }
        Ok(None)
    };
    for p in pts {
        match check(p) {
            Ok(None) => {}
            Ok(Some(why)) => {
                return Check::new(suite, title, anchor).fail(format!("{}: {why}", at(&e.id, p)), repro("show", &e.id, p))
            }
            Err(err) => return Check::new(suite, title, anchor).fail(err.to_string(), repro("show", &e.id, p)),
        }
    }
    Check::new(suite, title, anchor).pass(format!("tensor-identical at {}", n_points(pts.len())))
}

pub fn group_anchor(base: &str) -> String {
    format!("anti-dendriform structures with associated algebra {base}")
}

pub(super) fn ad4_group(ctx: &Ctx, suite: &str, base: &str) -> SuiteReport {
    let anchor = group_anchor(base);
    let mut r = SuiteReport::new(suite, ctx.seed, ctx.samples);
    let entries = ctx.cat.list_entries(&EntryFilter {
        dim: Some(4),
        kind: Some(Kind::Ad),
        base: Some(base.to_string()),
        include_aliases: true,
    });
    if entries.is_empty() {
        r.push(Check::new(suite, format!("families over {base} are catalogued"), &anchor).fail("none found", "adw list"));
    }
    per_entry(ctx, &mut r, &entries, |e, pts| {
        let mut rows = ad_rows(ctx, suite, e, pts, &anchor);
        let generic = [generic_params(e)];
        rows.push(center_row(ctx, suite, e, &generic, &anchor));
        let mut qpts = generic.to_vec();
        qpts.extend(pts.iter().cloned());
        rows.push(quotient_row(ctx, suite, e, &qpts, &anchor));
        rows
    });
    r
}

/// Name of the first fingerprint component where the two differ.
fn first_difference(a: &Value, b: &Value) -> String {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            for (k, v) in x {
                if y.get(k) != Some(v) {
                    let inner = first_difference(v, &y[k]);
                    return if inner.is_empty() { k.clone() } else { format!("{k}.{inner}") };
                }
            }
            String::new()
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            for (n, (u, v)) in x.iter().zip(y).enumerate() {
                if u != v {
                    let inner = first_difference(u, v);
                    return if inner.is_empty() { n.to_string() } else { format!("{n}.{inner}") };
                }
            }
            String::new()
        }
        _ => String::new(),
    }
}

pub(super) fn nonisomorphism(ctx: &Ctx) -> SuiteReport {
    let suite = "nonisomorphism";
    let mut r = SuiteReport::new(suite, ctx.seed, ctx.samples);
    let mut pairs = 0;
    let mut separated = 0;
    let mut found = 0;
    for base in AD4_GROUPS {
        let anchor = group_anchor(base);
        let entries = ctx.cat.list_entries(&EntryFilter {
            dim: Some(4),
            kind: Some(Kind::Ad),
            base: Some(base.to_string()),
            include_aliases: false,
        });
        let inst: Vec<(Params, Result<AdAlgebra>)> = entries
            .iter()
            .map(|e| {
                let p = generic_params(e);
                let d = ctx.cat.instantiate_ad(&e.id, &p);
                (p, d)
            })
            .collect();
        for (e, (p, _)) in entries.iter().zip(&inst) {
            r.record_point(&e.id, p);
        }
        let fps: Vec<Option<Value>> = inst
            .par_iter()
            .map(|(_, d)| d.as_ref().ok().map(|d| serde_json::to_value(fingerprint(d)).expect("serializable")))
            .collect();
        let mut todo = Vec::new();
        for a in 0..entries.len() {
            for b in a + 1..entries.len() {
                todo.push((a, b));
            }
        }
        let rows: Vec<(bool, bool, Check)> = todo
            .par_iter()
            .map(|&(a, b)| {
                let (ea, eb) = (entries[a], entries[b]);
                let claim = format!("{} and {} are not isomorphic", at(&ea.id, &inst[a].0), at(&eb.id, &inst[b].0));
                let (Some(fa), Some(fb)) = (&fps[a], &fps[b]) else {
                    return (false, false, Check::new(suite, claim, &anchor).fail("instantiation failed", "adw list"));
                };
                if fa != fb {
                    let detail = format!("fingerprints differ in {}", first_difference(fa, fb));
                    return (true, false, Check::new(suite, claim, &anchor).pass(detail));
                }
                let (da, db) = (inst[a].1.as_ref().unwrap(), inst[b].1.as_ref().unwrap());
                let base_params = ctx
                    .cat
                    .ref_params(ea.assoc.as_ref().expect("ad entry"), &inst[a].0)
                    .unwrap_or_default();
                let strategy = Strategy::AutFamilyGrid {
                    base: base.to_string(),
                    base_params,
                };
                let check = Check::new(suite, claim, &anchor);
                match search_witness(ctx.cat, da, db, &strategy, DEFAULT_BUDGET) {
                    Ok(SearchOutcome::NotFound { examined }) => (
                        false,
                        false,
                        check.evidence(format!(
                            "fingerprints agree; no witness among all {examined} automorphism-grid candidates (not a proof)"
                        )),
                    ),
                    Ok(SearchOutcome::BudgetExhausted { examined, grid_size }) => (
                        false,
                        false,
                        check.evidence(format!(
                            "fingerprints agree; no witness among the first {examined} of {grid_size} candidates (not a proof)"
                        )),
                    ),
                    Ok(SearchOutcome::Found { index, .. }) => (
                        false,
                        true,
                        check.fail(
                            format!("automorphism-grid witness found at candidate {index}"),
                            format!(
                                "adw iso {} {} --src-params {} --dst-params {} --search",
                                ea.id,
                                eb.id,
                                format_params(&inst[a].0),
                                format_params(&inst[b].0)
                            ),
                        ),
                    ),
                    Err(err) => (false, false, check.evidence(format!("fingerprints agree; search not applicable: {err}"))),
                }
            })
            .collect();
        for (sep, hit, c) in rows {
            pairs += 1;
            separated += usize::from(sep);
            found += usize::from(hit);
            r.push(c);
        }
    }
    let share = if pairs == 0 { 0.0 } else { separated as f64 / pairs as f64 };
    let claim = "distinct families over the same associative algebra are pairwise non-isomorphic";
    let detail = format!(
        "{separated}/{pairs} pairs ({:.1}%) separated by fingerprint; {found} cross-witnesses found",
        100.0 * share
    );
    let anchor = "four-dimensional anti-dendriform classification";
    r.push(if share >= 0.9 && found == 0 {
        Check::new(suite, claim, anchor).evidence(detail)
    } else {
        Check::new(suite, claim, anchor).fail(detail, "adw verify nonisomorphism")
    });
    r
}

pub(super) fn nonexistence(ctx: &Ctx) -> Result<SuiteReport> {
    let suite = "nonexistence-preconditions";
    let anchor = "no compatible structure on the null-filiform algebra";
    let mut r = SuiteReport::new(suite, ctx.seed, ctx.samples);
    let e = ctx.cat.entry("As4.16")?;
    r.record_point(&e.id, &Params::new());
    r.push(exact_index_row(ctx, suite, "As4.16", e.dim + 1, anchor));
    r.push(Check::new(suite, "As4.16 admits no compatible anti-dendriform structure", anchor).evidence(
        "only the maximal-nilpotency precondition (index = dim + 1) is certified; nonexistence itself is not checked",
    ));
    for case in super::probe::probe_cases() {
        let rep = super::probe::run_case(ctx.cat, &case, suite)?;
        r.extend(rep);
    }
    Ok(r)
}

pub(super) fn unknown(suite: &str) -> Error {
    Error::UnknownSuite(suite.to_string())
}

fn n_points(n: usize) -> String {
    if n == 1 {
        "1 point".into()
    } else {
        format!("{n} points")
    }
}
