//! `crnhill`: command-line front end for the analyses in `crnhill-core`.
//!
//! Exit codes: 0 on success, 1 when an analysis ran but its hypotheses failed
//! (or nothing was found), 2 on input or usage errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use crnhill_core::io::{read_model, serialize_model, Model};
use crnhill_core::kinetics::Kinetics;
use crnhill_core::numerics::{find_complex_balanced, find_equilibria, SearchConfig};
use crnhill_core::pyk::canonical_poly_pl;
use crnhill_core::report::{build_report, render_certificate, render_pyk, render_text, ReportOptions};
use crnhill_core::structural::{
    acr_certificate, acr_via_decomposition, bcr_certificate, ccb_certificate, multistat_sign_check, verify_decomposition,
    Certificate, Evidence,
};
use crnhill_core::transforms::{cf_rm_plus, star_msc};
use crnhill_core::Error;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "crnhill", version, about = "Structural and numerical analysis of reaction networks with Hill-type kinetics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    StarMsc,
    CfRmPlus,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SetChoice {
    /// Positive equilibria.
    E,
    /// Complex-balanced equilibria.
    Z,
}

/// Options shared by subcommands that run the equilibrium search.
#[derive(Debug, clap::Args)]
struct SearchArgs {
    /// Seed box for every species, as LO:HI.
    #[arg(long = "box", value_name = "LO:HI", value_parser = parse_box)]
    seed_box: Option<(f64, f64)>,
    /// Grid points per axis.
    #[arg(long)]
    grid: Option<usize>,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        let mut cfg = SearchConfig::default();
        if let Some(b) = self.seed_box {
            cfg.default_box = b;
        }
        if let Some(g) = self.grid {
            cfg.grid = g;
        }
        cfg
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report: network indices, kinetics classes, SF-pairs, certificates and equilibria.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Skip the equilibrium search.
        #[arg(long)]
        no_numerics: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Print the associated poly-PL kinetics and its canonical slices.
    Pyk {
        file: PathBuf,
        /// Use the LCM-style denominator for quotient kinetics.
        #[arg(long)]
        reduce: bool,
    },
    /// Write a dynamically equivalent transformed model.
    Transform {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Absolute concentration robustness certificate for one species.
    Acr {
        file: PathBuf,
        #[arg(long)]
        species: String,
        #[arg(long)]
        assert_pl_equilibrated: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Balanced concentration robustness certificate for one species.
    Bcr {
        file: PathBuf,
        #[arg(long)]
        species: String,
        #[arg(long)]
        assert_pl_complex_balanced: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Sign-vector test for multiple complex-balanced equilibria.
    Multistat {
        file: PathBuf,
        /// Largest species count for the exhaustive pattern scan.
        #[arg(long, default_value_t = crnhill_core::structural::SIGN_CHECK_DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Multistart search for positive or complex-balanced equilibria.
    Equilibria {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "e")]
        kind: SetChoice,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check a reaction partition; with --species, try the decomposition route to ACR.
    Decomp {
        file: PathBuf,
        /// One block per line, reaction ids separated by whitespace.
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        species: Option<String>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Search rate constants that make X0 complex balanced.
    Ccb {
        file: PathBuf,
        #[arg(long, value_name = "X0,...", value_delimiter = ',', required = true)]
        at: Vec<f64>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_box(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err("bounds must satisfy 0 < LO <= HI".into());
    }
    Ok((lo, hi))
}

/// Either an input problem (exit 2) or an analysis whose preconditions do not hold (exit 1).
enum Failure {
    Input(String),
    Analysis(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotWeaklyReversible
            | Error::NotComplexFactorizable
            | Error::NotComplexBalanced(_)
            | Error::DimensionCapExceeded { .. }
            | Error::NonCanonicalKinetics
            | Error::Unsupported(_) => Failure::Analysis(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Writes to stdout. A closed pipe ends the process quietly.
fn emit(text: &str) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_all(text.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {e}");
        std::process::exit(2);
    }
}

macro_rules! out {
    ($($arg:tt)*) => { emit(&format!($($arg)*)) };
}

macro_rules! outln {
    ($($arg:tt)*) => { emit(&format!("{}\n", format_args!($($arg)*))) };
}

type Outcome = Result<bool, Failure>;

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))?;
    outln!("{text}");
    Ok(())
}

fn print_certificate(c: &Certificate, json: bool) -> Outcome {
    if json {
        print_json(c)?;
    } else {
        let mut out = String::new();
        render_certificate(&mut out, c);
        out!("{out}");
    }
    Ok(c.established)
}

fn read_partition(path: &Path, model: &Model) -> Result<Vec<Vec<usize>>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read `{}`: {e}", path.display())))?;
    let mut blocks = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let block = line
            .split_whitespace()
            .map(|id| model.network.reaction_index(id.trim_end_matches(',')))
            .collect::<Result<Vec<_>, _>>()?;
        blocks.push(block);
    }
    Ok(blocks)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze { file, json, no_numerics, search } => {
            let model = read_model(&file)?;
            let opts = ReportOptions { search: (!no_numerics).then(|| search.config()) };
            let report = build_report(&model, &opts)?;
            if json {
                print_json(&report)?;
            } else {
                out!("{}", render_text(&report));
            }
            Ok(true)
        }
        Command::Pyk { file, reduce } => {
            let model = read_model(&file)?;
            out!("{}", render_pyk(&model, reduce)?);
            Ok(true)
        }
        Command::Transform { file, method, out } => {
            let model = read_model(&file)?;
            let transformed = match method {
                Method::StarMsc => {
                    let t = star_msc(&model.network, &canonical_poly_pl(&model.kinetics)?)?;
                    Model { network: t.network, kinetics: Kinetics::PowerLaw(t.kinetics) }
                }
                Method::CfRmPlus => {
                    let t = cf_rm_plus(&model.network, &model.kinetics)?;
                    Model { network: t.network, kinetics: t.kinetics }
                }
            };
            let text = serialize_model(&transformed);
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure::Input(format!("cannot write `{}`: {e}", path.display())))?,
                None => out!("{text}"),
            }
            Ok(true)
        }
        Command::Acr { file, species, assert_pl_equilibrated, json, search } => {
            let model = read_model(&file)?;
            let ev = Evidence { assert_pl: assert_pl_equilibrated, search: search.config() };
            print_certificate(&acr_certificate(&model.network, &model.kinetics, &species, &ev)?, json)
        }
        Command::Bcr { file, species, assert_pl_complex_balanced, json, search } => {
            let model = read_model(&file)?;
            let ev = Evidence { assert_pl: assert_pl_complex_balanced, search: search.config() };
            print_certificate(&bcr_certificate(&model.network, &model.kinetics, &species, &ev)?, json)
        }
        Command::Multistat { file, cap, json } => {
            let model = read_model(&file)?;
            let report = multistat_sign_check(&model.network, &model.kinetics, cap)?;
            if json {
                print_json(&report)?;
            } else {
                let patterns: Vec<String> = report
                    .intersection
                    .iter()
                    .map(|s| s.iter().map(|v| ['-', '0', '+'][(v + 1) as usize]).collect())
                    .collect();
                outln!("sign vectors of S: {}", report.stoichiometric_count);
                outln!("sign vectors of the kinetic complement: {}", report.complement_count);
                outln!("common sign vectors: {}", patterns.join(" "));
                outln!("nontrivial intersection: {}", report.nontrivial);
            }
            Ok(true)
        }
        Command::Equilibria { file, kind, json, search } => {
            let model = read_model(&file)?;
            let cfg = search.config();
            let set = match kind {
                SetChoice::E => find_equilibria(&model.network, &model.kinetics, &cfg)?,
                SetChoice::Z => find_complex_balanced(&model.network, &model.kinetics, &cfg)?,
            };
            if json {
                print_json(&set)?;
            } else {
                outln!("{}: {} points", set.kind.label(), set.points.len());
                for p in &set.points {
                    let xs: Vec<String> = p.x.iter().map(|v| format!("{v:.10e}")).collect();
                    outln!("  [{}] residual {:.3e}", xs.join(", "), p.residual);
                }
            }
            Ok(!set.points.is_empty())
        }
        Command::Decomp { file, partition, species, json, search } => {
            let model = read_model(&file)?;
            let blocks = read_partition(&partition, &model)?;
            match species {
                Some(x) => {
                    let ev = Evidence { assert_pl: false, search: search.config() };
                    let c = acr_via_decomposition(&model.network, &model.kinetics, &x, &blocks, &ev)?;
                    print_certificate(&c, json)
                }
                None => {
                    let d = verify_decomposition(&model.network, &blocks)?;
                    if json {
                        print_json(&d)?;
                    } else {
                        for (i, b) in d.blocks.iter().enumerate() {
                            outln!("block {}: n={} l={} s={} delta={}", i + 1, b.n, b.l, b.s, b.delta);
                        }
                        outln!("delta={} sum of block deficiencies={}", d.delta, d.sum_delta);
                        outln!("independent: {}", d.independent);
                        outln!("incidence-independent: {}", d.incidence_independent);
                        outln!("bi-independent: {}", d.bi_independent);
                    }
                    Ok(true)
                }
            }
        }
        Command::Ccb { file, at, json } => {
            let model = read_model(&file)?;
            print_certificate(&ccb_certificate(&model.network, &model.kinetics, &at)?, json)
        }
    }
}

fn configure_threads() {
    let Ok(v) = std::env::var("CRNHILL_THREADS") else {
        return;
    };
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("warning: ignoring CRNHILL_THREADS={v}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Analysis(msg)) => {
            eprintln!("analysis not applicable: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
