//! `qet`: verification, distances, constructions, search and simulation
//! for stabilizer codes.
//!
//! Exit codes: 0 success or passing verdict, 1 failing verdict or check,
//! 2 usage and input errors, 3 when `--exact` was requested and only a
//! bound was obtained.

mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qet_core::catalog::{self, NAMES};
use qet_core::classical::{asymmetric_distances, classical_distance, css_build};
use qet_core::pauli::errors_up_to_weight;
use qet_core::qet::{
    build_recovery, check_qet, deff_lower_bound, effective_distance, relabel_search, AdmissibleSet,
};
use qet_core::report::{Outcome, Report};
use qet_core::search::{run_checkpointed, run_search_with, SearchMode, SearchSpec};
use qet_core::sim::{exact_class_distribution, run_trials, total_variation};
use qet_core::stabilizer::{
    code_distance, min_weight_excluding, min_weight_in_class, render_code, DistanceResult,
    LogicalClass, Purity,
};
use qet_core::transforms::concatenate;

#[derive(Parser)]
#[command(
    name = "qet",
    version,
    about = "Stabilizer codes and quantum error transmutation"
)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit machine-readable JSON instead of `key = value` text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Named codes.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Transmutation or ordinary error-correction check.
    Verify(VerifyArgs),
    /// Minimum weight of nontrivial logicals, optionally per class or purity.
    Distance(DistanceArgs),
    /// Effective distance for an admissible set.
    Deff(DeffArgs),
    /// CSS codes from classical codes.
    #[command(subcommand)]
    Css(CssCmd),
    /// Classical linear codes.
    #[command(subcommand)]
    Classical(ClassicalCmd),
    /// Translation-invariant unit cells.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Concatenation with a single-qubit inner code.
    Concat(ConcatArgs),
    /// Search over standard-form codes.
    Search(SearchArgs),
    /// Monte Carlo recovery under a Pauli channel.
    Simulate(SimulateArgs),
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    /// Writes a catalog code in the code file format.
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verifies the expected properties of every entry.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Qec,
    Qet,
}

#[derive(Args)]
struct VerifyArgs {
    kind: VerifyKind,
    #[arg(long)]
    code: String,
    /// File, literal such as `ZI,IZ`, or `default` for the catalog set.
    #[arg(long)]
    admissible: Option<String>,
    #[arg(long, default_value_t = 1)]
    max_weight: usize,
    /// Search symplectic relabelings of the logical basis.
    #[arg(long)]
    relabel: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PurityArg {
    X,
    Z,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long)]
    code: String,
    /// Restrict to one logical class, e.g. `ZI` or `Z1Z2`.
    #[arg(long)]
    class: Option<String>,
    #[arg(long, value_enum)]
    pure: Option<PurityArg>,
    #[arg(long)]
    cap: usize,
    /// Exit 3 when the cap is reached.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct DeffArgs {
    #[arg(long)]
    code: String,
    #[arg(long)]
    admissible: String,
    /// Largest error weight checked.
    #[arg(long)]
    cap: usize,
    /// Also scan for the lightest inadmissible logical up to this weight.
    #[arg(long)]
    scan: Option<usize>,
    #[arg(long)]
    exact: bool,
}

#[derive(Subcommand)]
enum CssCmd {
    /// Z checks from the parity check of C1, X checks from that of C2.
    Build {
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long, default_value_t = 6)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ClassicalCmd {
    Distance {
        /// `cyclic:N:POLY`, `shifts:N:POLY:COUNT`, `dual:LIN` or a file.
        code: String,
        #[arg(long, default_value_t = 8)]
        cap: usize,
        #[arg(long)]
        exact: bool,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Checks the polynomial relations of a unit cell.
    Check {
        #[arg(long)]
        cell: String,
    },
    /// Instantiates a unit cell on a torus.
    Torus {
        #[arg(long)]
        cell: String,
        /// Torus size `A,B`.
        #[arg(long = "L", value_delimiter = ',', num_args = 1..=2)]
        size: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ConcatArgs {
    #[arg(long)]
    outer: String,
    #[arg(long)]
    inner: String,
    /// Admissible set of the outer code, carried to the result.
    #[arg(long)]
    admissible: Option<String>,
    /// Scan the result for inadmissible logicals up to this weight.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchModeArg {
    Random,
    Exhaustive,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Target admissible pattern (file or literal).
    #[arg(long)]
    pattern: String,
    #[arg(long, value_enum, default_value = "random")]
    mode: SearchModeArg,
    /// Random mode seed; generated and printed when absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Trials (random) or indices (exhaustive); exhaustive defaults to the
    /// whole space.
    #[arg(long)]
    budget: Option<u64>,
    /// First index for exhaustive mode.
    #[arg(long, default_value_t = 0)]
    start: u64,
    #[arg(long, default_value_t = 1)]
    error_weight: usize,
    /// Skip the requirement that every weight-1 error is detected.
    #[arg(long)]
    no_detect: bool,
    #[arg(long)]
    max_hits: Option<usize>,
    /// Resumable exhaustive scan state.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    code: String,
    #[arg(long)]
    admissible: String,
    /// `depolarizing:P`, `single`, or a file of `PAULI PROBABILITY` lines.
    #[arg(long, default_value = "single")]
    model: String,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    /// Generated and printed when absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Weight of the verified error set.
    #[arg(long, default_value_t = 1)]
    max_weight: usize,
}

/// Verdict of a command, mapped to the exit code.
enum Status {
    Ok,
    Fail,
    Bound,
}

fn emit(report: &Report, json: bool) -> Result<()> {
    if json {
        println!("{}", report.to_json()?);
    } else {
        print!("{report}");
    }
    Ok(())
}

fn fresh_seed() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0)
}

fn bound_status(d: &DistanceResult, exact: bool) -> Status {
    if exact && !d.is_exact() {
        Status::Bound
    } else {
        Status::Ok
    }
}

fn write_or_print(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Accepts `ZI` as well as `Z1Z2`-style products of indexed letters.
fn parse_class(s: &str, k: usize) -> Result<LogicalClass> {
    if let Ok(c) = LogicalClass::parse(s, k) {
        return Ok(c);
    }
    let mut class = LogicalClass::zero(k);
    let mut chars = s.chars().peekable();
    while let Some(l) = chars.next() {
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|c| c.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        let i: usize = digits.parse().with_context(|| format!("bad class {s:?}"))?;
        if i == 0 || i > k {
            bail!("logical index {i} out of range in {s:?}");
        }
        let x = LogicalClass::x(k, i - 1);
        let z = LogicalClass::z(k, i - 1);
        let term = match l {
            'X' => x,
            'Z' => z,
            'Y' => x.xor(&z),
            _ => bail!("bad class {s:?}"),
        };
        class = class.xor(&term);
    }
    Ok(class)
}

fn catalog_cmd(cmd: CatalogCmd, json: bool) -> Result<Status> {
    match cmd {
        CatalogCmd::List => {
            for (name, about) in NAMES {
                println!("{name:<14} {about}");
            }
            Ok(Status::Ok)
        }
        CatalogCmd::Emit { name, out } => {
            let entry = catalog::by_name(&name)?;
            let mut text = render_code(&entry.code);
            if let Some(m) = entry.admissible {
                let classes: Vec<String> = m
                    .classes()
                    .filter(|c| !c.is_zero())
                    .map(|c| c.to_string())
                    .collect();
                if classes.len() <= 16 {
                    text = format!("# admissible: {}\n{text}", classes.join(","));
                }
            }
            write_or_print(out.as_ref(), &text)?;
            Ok(Status::Ok)
        }
        CatalogCmd::Selftest => {
            let lines = catalog::selftest();
            if json {
                println!("{}", serde_json::to_string_pretty(&lines)?);
            } else {
                for l in &lines {
                    println!("{l}");
                }
            }
            Ok(if lines.iter().all(|l| l.pass) {
                Status::Ok
            } else {
                Status::Fail
            })
        }
    }
}

fn verify(a: VerifyArgs, json: bool) -> Result<Status> {
    let code = input::code(&a.code)?;
    let m = match (a.kind, &a.admissible) {
        (VerifyKind::Qec, _) => AdmissibleSet::trivial(code.k()),
        (VerifyKind::Qet, Some(arg)) => input::admissible(arg, &a.code, code.k())?,
        (VerifyKind::Qet, None) => bail!("verify qet needs --admissible"),
    };
    let errors = errors_up_to_weight(code.n(), a.max_weight);
    let (verdict, relabeled) = if a.relabel {
        match relabel_search(&code, &m, &errors)? {
            Some((c, v, _)) => (v, Some(c)),
            None => (check_qet(&code, &m, &errors)?, None),
        }
    } else {
        (check_qet(&code, &m, &errors)?, None)
    };
    let report = Report::from_verdict(&verdict)
        .note("admissible", &m)
        .note("errors", errors.len())
        .note("max_weight", a.max_weight);
    let report = match &relabeled {
        Some(c) => {
            let xs: Vec<String> = c.logical_x().iter().map(|p| p.to_string()).collect();
            let zs: Vec<String> = c.logical_z().iter().map(|p| p.to_string()).collect();
            report
                .note("relabeled_x", xs.join(" "))
                .note("relabeled_z", zs.join(" "))
        }
        None => report,
    };
    emit(&report, json)?;
    Ok(if report.verdict == Some(Outcome::Pass) {
        Status::Ok
    } else {
        Status::Fail
    })
}

fn distance(a: DistanceArgs, json: bool) -> Result<Status> {
    let code = input::code(&a.code)?;
    let purity = match a.pure {
        None => Purity::Any,
        Some(PurityArg::X) => Purity::X,
        Some(PurityArg::Z) => Purity::Z,
    };
    let d = match &a.class {
        Some(c) => min_weight_in_class(&code, &parse_class(c, code.k())?, purity, a.cap),
        None if purity == Purity::Any => code_distance(&code, a.cap),
        None => min_weight_excluding(&code, &[LogicalClass::zero(code.k())], purity, a.cap),
    };
    emit(&Report::from_distance(&d), json)?;
    Ok(bound_status(&d, a.exact))
}

fn deff(a: DeffArgs, json: bool) -> Result<Status> {
    let code = input::code(&a.code)?;
    let m = input::admissible(&a.admissible, &a.code, code.k())?;
    let d = effective_distance(&code, &m, a.cap)?;
    let mut report = Report::from_effective_distance(&d).note("admissible", &m);
    if let Some(cap) = a.scan {
        report = report.note("excluded_min_weight", deff_lower_bound(&code, &m, cap)?);
    }
    emit(&report, json)?;
    Ok(bound_status(&d, a.exact))
}

fn css(cmd: CssCmd, json: bool) -> Result<Status> {
    let CssCmd::Build { c1, c2, cap, out } = cmd;
    let built = css_build(&input::classical(&c1)?, &input::classical(&c2)?)?;
    let (dx, dz) = asymmetric_distances(&built.code, cap)?;
    if let Some(path) = &out {
        write_or_print(Some(path), &render_code(&built.code))?;
    } else if !json {
        print!("{}", render_code(&built.code));
    }
    let report = Report {
        cap: Some(cap),
        ..Default::default()
    }
    .note("n", built.code.n())
    .note("k", built.code.k())
    .note("d_x", dx)
    .note("d_z", dz);
    emit(&report, json)?;
    Ok(Status::Ok)
}

fn classical_cmd(cmd: ClassicalCmd, json: bool) -> Result<Status> {
    let ClassicalCmd::Distance { code, cap, exact } = cmd;
    let c = input::classical(&code)?;
    let d = classical_distance(&c, cap);
    let mut report = Report {
        d: Some(d.bound),
        cap: Some(cap),
        ..Default::default()
    }
    .note("n", c.n())
    .note("k", c.k())
    .note("exhaustive", d.exhaustive);
    if let Some(w) = &d.witness {
        report.witness = vec![w.to_string()];
    }
    emit(&report, json)?;
    Ok(if exact && !d.bound.is_exact() {
        Status::Bound
    } else {
        Status::Ok
    })
}

fn lattice(cmd: LatticeCmd, json: bool) -> Result<Status> {
    match cmd {
        LatticeCmd::Check { cell } => {
            let cell = input::cell(&cell)?;
            let diag = cell.validate();
            let mut report = Report {
                verdict: Some(if diag.is_ok() {
                    Outcome::Pass
                } else {
                    Outcome::Fail
                }),
                ..Default::default()
            };
            for (i, issue) in diag.issues.iter().enumerate() {
                report = report.note(
                    &format!("issue_{i}"),
                    format!(
                        "{}: expected {}, found {}",
                        issue.relation, issue.expected, issue.found
                    ),
                );
            }
            emit(&report, json)?;
            Ok(if diag.is_ok() {
                Status::Ok
            } else {
                Status::Fail
            })
        }
        LatticeCmd::Torus { cell, size, out } => {
            let (lx, ly) = match size.as_slice() {
                [a] => (*a, *a),
                [a, b] => (*a, *b),
                _ => bail!("--L takes A or A,B"),
            };
            let torus = input::cell(&cell)?.instantiate(lx, ly)?;
            if out.is_some() || !json {
                write_or_print(out.as_ref(), &render_code(&torus.code))?;
            }
            let report = Report::default()
                .note("n", torus.code.n())
                .note("k", torus.code.k())
                .note("generators", torus.code.num_generators())
                .note("dropped", torus.dropped.len())
                .note("cell_basis", torus.cell_basis);
            emit(&report, json)?;
            Ok(Status::Ok)
        }
    }
}

fn concat(a: ConcatArgs, json: bool) -> Result<Status> {
    let outer = input::code(&a.outer)?;
    let inner = input::code(&a.inner)?;
    let m = a
        .admissible
        .as_deref()
        .map(|s| input::admissible(s, &a.outer, outer.k()))
        .transpose()?;
    let c = concatenate(&outer, &inner, m.as_ref())?;
    if a.out.is_some() || !json {
        write_or_print(a.out.as_ref(), &render_code(&c.result))?;
    }
    let mut report = Report::default()
        .note("n", c.result.n())
        .note("k", c.result.k());
    if let Some(cap) = a.cap {
        let d = c.excluded_min_weight(cap);
        report.d_eff = Some(d.bound);
        report.cap = Some(cap);
        report.witness = d.witness.iter().map(|p| p.to_string()).collect();
    }
    emit(&report, json)?;
    Ok(Status::Ok)
}

fn search(a: SearchArgs, json: bool) -> Result<Status> {
    let admissible = input::admissible(&a.pattern, "", a.k)?;
    let (mode, seed) = match a.mode {
        SearchModeArg::Random => {
            let seed = a.seed.unwrap_or_else(fresh_seed);
            (
                SearchMode::Random {
                    seed,
                    trials: a.budget.unwrap_or(10_000),
                },
                Some(seed),
            )
        }
        SearchModeArg::Exhaustive => (
            SearchMode::Exhaustive {
                start: a.start,
                limit: a.budget,
            },
            None,
        ),
    };
    let spec = SearchSpec {
        n: a.n,
        k: a.k,
        admissible,
        error_weight: a.error_weight,
        require_detection: !a.no_detect,
        mode,
        max_hits: a.max_hits,
    };
    let result = match &a.checkpoint {
        Some(path) => run_checkpointed(&spec, path)?,
        None => run_search_with(&spec, &mut |examined, hits, _| {
            if !json {
                eprint!("\rexamined {examined}, hits {hits}");
            }
        })?,
    };
    if !json && a.checkpoint.is_none() {
        eprintln!();
    }
    let mut report = Report {
        seed,
        ..Default::default()
    }
    .note("hits", result.hits.len())
    .note("examined", result.examined)
    .note("next_index", result.next_index)
    .note("complete", result.complete);
    if let Some(space) = result.space {
        report = report.note("space", space);
    }
    if json {
        let doc = serde_json::json!({ "report": report, "hits": result.hits });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        print!("{report}");
        for hit in &result.hits {
            println!("# hit index {} (r = {})", hit.index, hit.r);
            print!("{}", render_code(&hit.code));
        }
    }
    Ok(Status::Ok)
}

fn simulate(a: SimulateArgs, json: bool) -> Result<Status> {
    let code = input::code(&a.code)?;
    let m = input::admissible(&a.admissible, &a.code, code.k())?;
    let errors = errors_up_to_weight(code.n(), a.max_weight);
    let verdict = check_qet(&code, &m, &errors)?;
    if !verdict.pass {
        emit(&Report::from_verdict(&verdict), json)?;
        return Ok(Status::Fail);
    }
    let table = build_recovery(&code, &m, &verdict, None)?;
    let model = input::channel(&a.model, code.n())?;
    let seed = a.seed.unwrap_or_else(fresh_seed);
    let trials = run_trials(&code, &m, &table, &model, a.trials, seed)?;
    let exact = exact_class_distribution(&code, &table, &model)?;
    let tv = total_variation(&trials, &exact);
    if json {
        let doc = serde_json::json!({ "trials": trials, "exact": exact, "total_variation": tv });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        print!("{trials}");
        for (class, mass) in &exact.masses {
            println!("exact {class} = {mass}");
        }
        println!("total_variation = {tv}");
    }
    Ok(if trials.violations == 0 {
        Status::Ok
    } else {
        Status::Fail
    })
}

fn run(cli: Cli) -> Result<Status> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring threads")?;
    }
    let json = cli.json;
    match cli.command {
        Command::Catalog(c) => catalog_cmd(c, json),
        Command::Verify(a) => verify(a, json),
        Command::Distance(a) => distance(a, json),
        Command::Deff(a) => deff(a, json),
        Command::Css(c) => css(c, json),
        Command::Classical(c) => classical_cmd(c, json),
        Command::Lattice(c) => lattice(c, json),
        Command::Concat(a) => concat(a, json),
        Command::Search(a) => search(a, json),
        Command::Simulate(a) => simulate(a, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Ok(Status::Bound) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_forms_agree() {
        assert_eq!(
            parse_class("Z1Z2", 2).unwrap(),
            LogicalClass::parse("ZZ", 2).unwrap()
        );
        assert_eq!(
            parse_class("Y2", 2).unwrap(),
            LogicalClass::parse("IY", 2).unwrap()
        );
        assert!(parse_class("Z3", 2).is_err());
        assert!(parse_class("Q1", 2).is_err());
    }
}
