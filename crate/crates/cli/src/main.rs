mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use adw_core::algebra::{center_ad, center_assoc, sum_product, Algebra};
use adw_core::catalog::{format_params, parse_params, Catalog, EntryFilter, Kind, Params};
use adw_core::identities::{check_anti_dendriform, check_associative, Violation};
use adw_core::iso::{search_witness, AlgebraRef, IsoWitness, SearchOutcome, Strategy, DEFAULT_BUDGET};
use adw_core::verify::{probe_cases, run_contradiction_probe, run_suite, Status, SuiteReport};
use adw_core::Error;
use clap::{Parser, Subcommand, ValueEnum};

/// Exact-arithmetic checks for small anti-dendriform and nilpotent associative algebras.
#[derive(Parser, Debug)]
#[command(name = "adw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalogued families.
    List {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Associated algebra, e.g. As4.6.
        #[arg(long)]
        base: Option<String>,
        /// Include variant readings of other entries.
        #[arg(long)]
        aliases: bool,
    },
    /// Print a family's product table.
    Show {
        id: String,
        #[arg(long, value_parser = params_arg)]
        params: Option<Params>,
        /// Use the originally tabulated rows where a row was corrected.
        #[arg(long)]
        printed: bool,
    },
    /// Print the sum product and compare it with the associated algebra.
    Sum {
        id: String,
        #[arg(long, value_parser = params_arg, default_value = "")]
        params: Params,
    },
    /// Compute the center and compare it with the catalogued one.
    Center {
        id: String,
        #[arg(long, value_parser = params_arg, default_value = "")]
        params: Params,
    },
    /// Check the defining identities.
    Check {
        id: String,
        #[arg(long, value_parser = params_arg, default_value = "")]
        params: Params,
    },
    /// Verify or search for an isomorphism. `adw iso verify FILE` re-checks a witness file.
    Iso {
        src: String,
        dst: String,
        #[arg(long, value_parser = params_arg, default_value = "")]
        src_params: Params,
        #[arg(long, value_parser = params_arg, default_value = "")]
        dst_params: Params,
        #[arg(long, conflicts_with = "search")]
        witness: Option<PathBuf>,
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Write a found witness here.
        #[arg(long, requires = "search")]
        out: Option<PathBuf>,
    },
    /// Instantiate and check one automorphism family of an associative algebra.
    Automorphism {
        base: String,
        which: usize,
        #[arg(long, value_parser = params_arg, default_value = "")]
        params: Params,
        #[arg(long)]
        printed: bool,
    },
    /// Run a verification suite (or `all`).
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-derive the incompatible coefficients of a nonexistence case (`list` to enumerate).
    Probe {
        case: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dump the catalog.
    Export {
        #[arg(long, value_enum, default_value_t = ExportFormat::Json)]
        format: ExportFormat,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Assoc,
    Ad,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
    Json,
}

fn params_arg(s: &str) -> Result<Params, String> {
    parse_params(s).map_err(|e| e.to_string())
}

/// 1 for a mathematical rejection, 2 for anything the caller got wrong.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SingularMap
        | Error::NotAnIdeal
        | Error::NotAutomorphism { .. }
        | Error::PrereqFailed(_)
        | Error::DivisionByZero
        | Error::DimensionMismatch { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("ADW_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cmd: Command) -> adw_core::Result<bool> {
    let cat = Catalog::builtin();
    match cmd {
        Command::List {
            dim,
            kind,
            base,
            aliases,
        } => {
            let filter = EntryFilter {
                dim,
                kind: kind.map(|k| match k {
                    KindArg::Assoc => Kind::Assoc,
                    KindArg::Ad => Kind::Ad,
                }),
                base,
                include_aliases: aliases,
            };
            for e in cat.list_entries(&filter) {
                let params: Vec<String> = e
                    .params
                    .iter()
                    .map(|p| render::greek(&format!("{} {}", p.name, p.constraint)))
                    .collect();
                let assoc = e.assoc.as_ref().map(|a| format!("  -> {}", render::greek(&a.to_string())));
                println!(
                    "{:<8} {:<5} dim {}  [{}]{}",
                    e.id,
                    e.kind.as_str(),
                    e.dim,
                    params.join(", "),
                    assoc.unwrap_or_default()
                );
            }
            Ok(true)
        }
        Command::Show { id, params, printed } => {
            let e = cat.entry(&id)?;
            let header = match &params {
                Some(p) if !p.is_empty() => format!("{id}({})", render::params(p)),
                _ => id.clone(),
            };
            println!("{header}  {} algebra of dimension {}", e.kind.as_str(), e.dim);
            if let Some(a) = &e.assoc {
                println!("associated algebra: {}", render::greek(&a.to_string()));
            }
            if let Some(q) = &e.quotient {
                println!("quotient by the center: {}", render::greek(&q.to_string()));
            }
            if let Some(c) = e.claimed_center() {
                println!("center: {c}");
            }
            for p in &e.params {
                println!("parameter {}: {}", render::greek(&p.name), render::greek(&p.constraint.to_string()));
            }
            let rows = match params {
                Some(p) => {
                    let a = if printed {
                        cat.instantiate_printed(&id, &p)?
                    } else {
                        cat.instantiate(&id, &p)?
                    };
                    render::algebra_rows(&a)
                }
                None if printed => return Err(Error::parse("--printed", "needs --params")),
                None => render::entry_rows(e),
            };
            for r in rows {
                println!("{r}");
            }
            for n in &e.notes {
                println!("note: {n}");
            }
            Ok(true)
        }
        Command::Sum { id, params } => {
            let e = cat.entry(&id)?;
            let d = cat.instantiate_ad(&id, &params)?;
            let s = sum_product(&d);
            println!("{}", render::algebra_rows(&Algebra::Assoc(s.clone()))[0]);
            let assoc = e.assoc.as_ref().expect("anti-dendriform entries name their sum");
            let claimed = cat.instantiate_ref(assoc, &params)?;
            let ok = claimed.as_assoc() == Some(&s);
            let target = format!("{}({})", assoc.id, format_params(&cat.ref_params(assoc, &params)?));
            println!("{} {target}", if ok { "matches" } else { "differs from" });
            Ok(ok)
        }
        Command::Center { id, params } => {
            let e = cat.entry(&id)?;
            let computed = match cat.instantiate(&id, &params)? {
                Algebra::Assoc(a) => center_assoc(&a),
                Algebra::Ad(d) => center_ad(&d),
            };
            println!("center: {computed} (dimension {})", computed.dim());
            match e.claimed_center() {
                Some(c) => {
                    let ok = c == computed;
                    println!("catalogued: {c} ({})", if ok { "agrees" } else { "disagrees" });
                    Ok(ok)
                }
                None => Ok(true),
            }
        }
        Command::Check { id, params } => {
            let v = match cat.instantiate(&id, &params)? {
                Algebra::Assoc(a) => check_associative(&a),
                Algebra::Ad(d) => check_anti_dendriform(&d),
            };
            print_violations(&v);
            Ok(v.is_empty())
        }
        Command::Iso {
            src,
            dst,
            src_params,
            dst_params,
            witness,
            search,
            budget,
            out,
        } => {
            if src == "verify" {
                let w = IsoWitness::load(std::path::Path::new(&dst))?;
                let ok = w.verify(cat)?;
                println!("{} -> {}: {}", w.source, w.target, if ok { "verified" } else { "rejected" });
                return Ok(ok);
            }
            let a = AlgebraRef::new(&src, src_params);
            let b = AlgebraRef::new(&dst, dst_params);
            let (d1, d2) = (a.instantiate(cat)?, b.instantiate(cat)?);
            if let Some(path) = witness {
                let w = IsoWitness::load(&path)?;
                let ok = adw_core::iso::verify_iso_witness(&d1, &d2, &w.map)?;
                println!("{a} -> {b}: {}", if ok { "verified" } else { "rejected" });
                return Ok(ok);
            }
            if !search {
                return Err(Error::parse("iso", "give --witness FILE or --search"));
            }
            let strategy = if d1.dim() == 3 {
                Strategy::StructuredGrid
            } else {
                let assoc = cat.entry(&src)?.assoc.clone().ok_or_else(|| Error::parse(src.clone(), "no associated algebra"))?;
                Strategy::AutFamilyGrid {
                    base: assoc.id.clone(),
                    base_params: cat.ref_params(&assoc, &a.params)?,
                }
            };
            match search_witness(cat, &d1, &d2, &strategy, budget)? {
                SearchOutcome::Found { map, index } => {
                    println!("witness at candidate {index}:\n{}", render::matrix(&map));
                    if let Some(path) = out {
                        let w = IsoWitness { source: a, target: b, map };
                        std::fs::write(&path, w.to_json())?;
                        println!("written to {}", path.display());
                    }
                    Ok(true)
                }
                SearchOutcome::NotFound { examined } => {
                    println!("no witness among {examined} candidates (not a proof of non-isomorphism)");
                    Ok(false)
                }
                SearchOutcome::BudgetExhausted { examined, grid_size } => {
                    println!("no witness among the first {examined} of {grid_size} candidates");
                    Ok(false)
                }
            }
        }
        Command::Automorphism {
            base,
            which,
            params,
            printed,
        } => {
            let fam = cat.automorphism_family(&base, which, printed)?;
            let m = cat.family_map_unverified(fam, &params)?;
            println!("{}:\n{}", fam.label(), render::matrix(&m));
            match cat.instantiate_family_map(fam, &params) {
                Ok(_) => {
                    println!("preserves the product");
                    Ok(true)
                }
                Err(Error::NotAutomorphism { detail, .. }) => {
                    println!("not an automorphism: {detail}");
                    Ok(false)
                }
                Err(e) => Err(e),
            }
        }
        Command::Verify {
            suite,
            seed,
            samples,
            format,
        } => {
            let r = run_suite(&suite, seed, samples)?;
            print_report(&r, format);
            Ok(r.passed())
        }
        Command::Probe { case, format } => {
            if case == "list" {
                for c in probe_cases() {
                    println!("{}", c.id());
                }
                return Ok(true);
            }
            let r = run_contradiction_probe(&case)?;
            print_report(&r, format);
            Ok(r.checks.iter().all(|c| c.status == Status::EvidenceOnly))
        }
        Command::Export { format: ExportFormat::Json } => {
            println!("{}", serde_json::to_string_pretty(&cat.export_json())?);
            Ok(true)
        }
    }
}

fn print_violations(v: &[Violation]) {
    if v.is_empty() {
        println!("all identities hold");
        return;
    }
    println!("{} violations", v.len());
    for x in v {
        println!(
            "{} at (e_{},e_{},e_{}): residual {}",
            x.id,
            x.triple[0],
            x.triple[1],
            x.triple[2],
            render::scalars(&x.residual)
        );
    }
}

fn print_report(r: &SuiteReport, format: Format) {
    match format {
        Format::Text => print!("{}", r.to_text()),
        Format::Json => print!("{}", r.to_json()),
    }
}
