//! Command-line surface of the stabcoh engine.
//!
//! Exit status: 0 on success or a passing verification, 1 when a
//! verification suite fails, 2 on input errors (unreadable or malformed
//! files, invalid factorizations, window violations).

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use stabcoh_core::cohomology::{
    gamma_stab_max_with, top_local_cohomology_with, GradedModuleView, ViewOpts,
};
use stabcoh_core::verify::{additivity_pair, run_suite, InstanceSpec, Recipe, Suite, VerifyReport};
use stabcoh_core::{Exec, MatrixFactorization};

/// Default cap on the number of degrees in one window.
const DEFAULT_MAX_WIDTH: i64 = 512;

#[derive(Parser)]
#[command(
    name = "stabcoh",
    about = "Stable local cohomology of MCM modules over graded hypersurfaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct WindowArgs {
    /// Low end of the internal-degree window (default -2n - 10).
    #[arg(long, allow_hyphen_values = true)]
    from: Option<i64>,
    /// High end of the internal-degree window (default 0).
    #[arg(long, allow_hyphen_values = true)]
    to: Option<i64>,
    /// Maximum admissible window width in degrees.
    #[arg(long, default_value_t = DEFAULT_MAX_WIDTH)]
    max_width: i64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ObjectKind {
    /// The MCM module coker(A) on the polynomial side.
    Coker,
    /// Stable local cohomology at the maximal ideal.
    Slc,
    /// Classical top local cohomology.
    Toplc,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural invariants of a factorization file.
    Validate { file: PathBuf },
    /// Graded dimensions of a chosen object over a window.
    Hilbert {
        file: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
        /// Which graded module to tabulate.
        #[arg(long, value_enum, default_value = "coker")]
        object: ObjectKind,
        #[arg(long)]
        json: bool,
    },
    /// Stable local cohomology at the maximal ideal (parity kernel formula).
    Slc {
        file: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
        /// Also print the slice bases per degree.
        #[arg(long)]
        basis: bool,
        #[arg(long)]
        json: bool,
    },
    /// Classical top local cohomology H^d_m as a cokernel on E_R.
    Toplc {
        file: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        basis: bool,
        #[arg(long)]
        json: bool,
    },
    /// Eliminate unit entries and print the minimal factorization.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run a named verification suite against one or two files.
    Verify {
        /// One factorization file, or two for the additivity suite.
        files: Vec<PathBuf>,
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        window: WindowArgs,
        /// Seed recorded with the run (generated auxiliaries derive from it).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Independent duality-oracle cross-check of the kernel dimensions.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn load(file: &PathBuf) -> Result<MatrixFactorization> {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("cannot read {}", file.display()))?;
    let mf = stabcoh_core::parse_mf(&text)
        .map_err(|e| anyhow!("{}: {e}", file.display()))?;
    Ok(mf)
}

fn resolve_window(mf: &MatrixFactorization, args: &WindowArgs) -> Result<(i64, i64)> {
    let n = mf.nvars() as i64;
    let lo = args.from.unwrap_or(-2 * n - 10);
    let hi = args.to.unwrap_or(0);
    if lo > hi {
        bail!("window low end {lo} exceeds high end {hi}");
    }
    let width = hi - lo + 1;
    if width > args.max_width {
        bail!("window width {width} exceeds the cap {}; raise --max-width", args.max_width);
    }
    Ok((lo, hi))
}

#[derive(Serialize)]
struct ViewOut {
    construction: String,
    window: (i64, i64),
    twist_offset: i64,
    rows: Vec<(i64, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bases: Option<BTreeMap<i64, Vec<String>>>,
}

fn view_output(view: &GradedModuleView, vars: &[String]) -> ViewOut {
    let bases = view.slices.as_ref().map(|slices| {
        slices
            .iter()
            .map(|(j, slice)| (*j, slice.vector_strings(vars)))
            .collect()
    });
    ViewOut {
        construction: view.construction.clone(),
        window: view.window,
        twist_offset: view.twist_offset,
        rows: view.hilbert.rows(),
        bases,
    }
}

fn print_view(out: &ViewOut, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string(out)?);
        return Ok(());
    }
    println!("{} over [{}, {}] (twist offset {}):", out.construction, out.window.0, out.window.1, out.twist_offset);
    println!("{:>8}  {:>5}", "degree", "dim");
    for (j, d) in &out.rows {
        println!("{j:>8}  {d:>5}");
        if let Some(bases) = &out.bases {
            if let Some(rows) = bases.get(j) {
                for row in rows {
                    println!("{:>8}  basis: {row}", "");
                }
            }
        }
    }
    Ok(())
}

fn print_report(report: &VerifyReport, json: bool) -> Result<ExitCode> {
    if json {
        println!("{}", serde_json::to_string(report)?);
    } else {
        print!("{report}");
        println!("  ({} ms)", report.wall_time_ms);
    }
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { file } => {
            let mf = load(&file)?;
            let report = mf.validate();
            println!("{report}");
            if report.is_valid() {
                Ok(ExitCode::SUCCESS)
            } else {
                // Invalid input is an input error, not a verification
                // failure.
                Ok(ExitCode::from(2))
            }
        }
        Command::Hilbert { file, window, object, json } => {
            let mf = load(&file)?;
            let (lo, hi) = resolve_window(&mf, &window)?;
            let opts = ViewOpts { with_bases: false, exec: Exec::default() };
            let view = match object {
                ObjectKind::Coker => {
                    let hilbert = mf.cokernel_hilbert(lo, hi)?;
                    GradedModuleView {
                        construction: "cokernel_hilbert".to_string(),
                        window: (lo, hi),
                        hilbert,
                        twist_offset: 0,
                        minimal: mf.is_minimal(),
                        slices: None,
                    }
                }
                ObjectKind::Slc => gamma_stab_max_with(&mf, lo, hi, opts)?,
                ObjectKind::Toplc => top_local_cohomology_with(&mf, lo, hi, opts)?,
            };
            print_view(&view_output(&view, &mf.vars), json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Slc { file, window, basis, json } => {
            let mf = load(&file)?;
            let (lo, hi) = resolve_window(&mf, &window)?;
            let opts = ViewOpts { with_bases: basis, exec: Exec::default() };
            let view = gamma_stab_max_with(&mf, lo, hi, opts)?;
            print_view(&view_output(&view, &mf.vars), json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Toplc { file, window, basis, json } => {
            let mf = load(&file)?;
            let (lo, hi) = resolve_window(&mf, &window)?;
            let opts = ViewOpts { with_bases: basis, exec: Exec::default() };
            let view = top_local_cohomology_with(&mf, lo, hi, opts)?;
            print_view(&view_output(&view, &mf.vars), json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { file, json } => {
            let mf = load(&file)?;
            let reduced = mf.reduce()?;
            let document = reduced.render();
            if json {
                #[derive(Serialize)]
                struct ReduceOut {
                    size_before: usize,
                    size_after: usize,
                    minimal: bool,
                    document: String,
                }
                println!(
                    "{}",
                    serde_json::to_string(&ReduceOut {
                        size_before: mf.size(),
                        size_after: reduced.size(),
                        minimal: reduced.is_minimal(),
                        document,
                    })?
                );
            } else {
                print!("{document}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { files, suite, window, seed, json } => {
            let suite: Suite = suite.parse()?;
            match files.as_slice() {
                [single] => {
                    let mf = load(single)?;
                    let (lo, hi) = resolve_window(&mf, &window)?;
                    let spec = InstanceSpec {
                        recipe: Recipe::File(single.display().to_string()),
                        field: mf.field,
                        seed,
                    };
                    let report = run_suite(suite, &spec, lo, hi, Exec::default())?;
                    print_report(&report, json)
                }
                [left, right] => {
                    if suite != Suite::Additivity {
                        bail!("suite {} takes exactly one input file", suite.name());
                    }
                    let l = load(left)?;
                    let r = load(right)?;
                    let (lo, hi) = resolve_window(&l, &window)?;
                    let report = additivity_pair(&l, &r, lo, hi, Exec::default())?;
                    print_report(&report, json)
                }
                _ => bail!("verify takes one input file (two for the additivity suite)"),
            }
        }
        Command::Oracle { file, window, seed, json } => {
            let mf = load(&file)?;
            let (lo, hi) = resolve_window(&mf, &window)?;
            let spec = InstanceSpec {
                recipe: Recipe::File(file.display().to_string()),
                field: mf.field,
                seed,
            };
            let report = run_suite(Suite::DualityOracle, &spec, lo, hi, Exec::default())?;
            print_report(&report, json)
        }
    }
}
