mod algebra;
mod branecmd;
mod dimercmd;
mod fail;
mod partition;
mod report;
mod scalars;
mod settle;

use clap::{Parser, Subcommand};
use exactmat::{Complex64, GaussRat};
use fail::{CmdResult, Failure};
use report::{render, RunMeta};
use scalars::Mode;
use std::path::PathBuf;
use std::process::ExitCode;

/// Builds and inspects noncommutative settlements: box partitions,
/// clutched vector-bundle data, fiber algebras, dimer models and
/// D0-brane dynamics on the settled geometry.
#[derive(Parser)]
#[command(name = "forge", version)]
struct Cli {
    /// Tolerance for approximate comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Seed for randomized searches and initializations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Exact rational arithmetic (the default).
    #[arg(long, global = true, conflicts_with = "float")]
    exact: bool,

    /// Floating-point arithmetic.
    #[arg(long, global = true)]
    float: bool,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Partition a covered base box into labeled cells.
    Partition { input: PathBuf },
    /// Grow a settlement from seed bundles over a covering.
    Grow { input: PathBuf },
    /// Settlement validation and fibers.
    #[command(subcommand)]
    Settle(SettleCmd),
    /// Finite-dimensional algebra analysis.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Dimer model analysis.
    #[command(subcommand)]
    Dimer(DimerCmd),
    /// Run 1-D cluster scattering against a block target.
    Scatter {
        config: PathBuf,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Append one JSON event per line here.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Lattice energy of a matrix-valued map.
    Energy {
        map: PathBuf,
        gauge: PathBuf,
        lattice: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        tension: f64,
    },
    /// Gradient-descent energy minimization.
    EnergyMin {
        map: PathBuf,
        gauge: PathBuf,
        lattice: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        tension: f64,
        /// Commutator penalty coefficient.
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        /// Ignore the map file's matrices and start from a seeded
        /// random Hermitian configuration of the same shape.
        #[arg(long)]
        random_init: bool,
        #[arg(long, default_value_t = 0.5)]
        init_scale: f64,
    },
}

#[derive(Subcommand)]
enum SettleCmd {
    /// Validate structure and clutching path consistency.
    Check { input: PathBuf },
    /// Decorated fiber and endomorphism algebra at a point.
    Fiber {
        input: PathBuf,
        /// Comma-separated coordinates, rational or decimal.
        #[arg(long, value_delimiter = ',', required = true)]
        point: Vec<String>,
        /// Also write the fiber algebra here in exchange format.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Analyze an algebra given by structure constants.
    Analyze { input: PathBuf },
    /// Apical algebra of the conifold wall.
    Conifold,
    /// Apical algebra of a cyclic quotient wall.
    Cyclic {
        /// Number of coordinates.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Order of the cyclic group.
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Action weights, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,1")]
        weights: Vec<i64>,
        /// Optional degree cap for the monomial quotient.
        #[arg(long)]
        cap: Option<u32>,
    },
}

#[derive(Subcommand)]
enum DimerCmd {
    /// Quiver, superpotential, matchings, cone and center of a dimer.
    Analyze {
        input: PathBuf,
        /// Consistency-check search depth.
        #[arg(long, default_value_t = 3)]
        depth: u32,
        /// Degree cap for the center presentation.
        #[arg(long, default_value_t = 6)]
        cap: u32,
    },
}

fn dispatch(cli: &Cli, meta: &RunMeta) -> (&'static str, CmdResult) {
    let mode = meta.mode;
    match &cli.cmd {
        Cmd::Partition { input } => (partition::SCHEMA, partition::run(input, meta)),
        Cmd::Grow { input } => (
            settle::SCHEMA_SETTLEMENT,
            match mode {
                Mode::Exact => settle::grow_cmd::<GaussRat>(input, meta),
                Mode::Float => settle::grow_cmd::<Complex64>(input, meta),
            },
        ),
        Cmd::Settle(SettleCmd::Check { input }) => (
            settle::SCHEMA_CHECK,
            match mode {
                Mode::Exact => settle::check::<GaussRat>(input, meta),
                Mode::Float => settle::check::<Complex64>(input, meta),
            },
        ),
        Cmd::Settle(SettleCmd::Fiber { input, point, emit }) => (
            settle::SCHEMA_FIBER,
            match mode {
                Mode::Exact => settle::fiber::<GaussRat>(input, point, emit.as_deref(), meta),
                Mode::Float => settle::fiber::<Complex64>(input, point, emit.as_deref(), meta),
            },
        ),
        Cmd::Algebra(AlgebraCmd::Analyze { input }) => (
            algebra::SCHEMA_ANALYSIS,
            match mode {
                Mode::Exact => algebra::analyze::<GaussRat>(input, meta),
                Mode::Float => algebra::analyze::<Complex64>(input, meta),
            },
        ),
        Cmd::Algebra(AlgebraCmd::Conifold) => (
            algebra::SCHEMA_ANALYSIS,
            match mode {
                Mode::Exact => algebra::conifold::<GaussRat>(meta),
                Mode::Float => algebra::conifold::<Complex64>(meta),
            },
        ),
        Cmd::Algebra(AlgebraCmd::Cyclic { n, m, weights, cap }) => (
            algebra::SCHEMA_ANALYSIS,
            match mode {
                Mode::Exact => algebra::cyclic::<GaussRat>(*n, *m, weights, *cap, meta),
                Mode::Float => algebra::cyclic::<Complex64>(*n, *m, weights, *cap, meta),
            },
        ),
        Cmd::Dimer(DimerCmd::Analyze { input, depth, cap }) => (
            dimercmd::SCHEMA,
            dimercmd::analyze(input, *depth, *cap, meta),
        ),
        Cmd::Scatter { config, steps, log } => (
            branecmd::SCHEMA_SCATTER,
            branecmd::scatter(config, *steps, log.as_deref(), meta),
        ),
        Cmd::Energy {
            map,
            gauge,
            lattice,
            tension,
        } => (
            branecmd::SCHEMA_ENERGY,
            branecmd::energy_cmd(map, gauge, lattice, *tension, meta),
        ),
        Cmd::EnergyMin {
            map,
            gauge,
            lattice,
            tension,
            kappa,
            step,
            max_iter,
            random_init,
            init_scale,
        } => (
            branecmd::SCHEMA_ENERGY_MIN,
            branecmd::energy_min(
                map,
                gauge,
                lattice,
                *tension,
                *kappa,
                *step,
                *max_iter,
                *random_init,
                *init_scale,
                meta,
            ),
        ),
    }
}

/// Wraps a bare violation list into a full report carrying the failed
/// command's schema header.
fn finalize_failure(schema: &str, meta: &RunMeta, f: Failure) -> Failure {
    match f {
        Failure::Validation(v) if v.is_array() => {
            let mut m = report::header(schema, meta);
            m.insert("status".into(), serde_json::Value::String("fail".into()));
            m.insert("violations".into(), v);
            Failure::Validation(serde_json::Value::Object(m))
        }
        other => other,
    }
}

fn emit(out: &Option<PathBuf>, v: &serde_json::Value) -> Result<(), String> {
    let text = render(v);
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    if let Ok(s) = std::env::var("FORGE_MAX_THREADS") {
        if let Ok(n) = s.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }

    let cli = Cli::parse();
    let mode = if cli.float { Mode::Float } else { Mode::Exact };
    let meta = RunMeta {
        mode,
        seed: cli.seed,
        tol: cli.tol,
    };

    let (schema, outcome) = dispatch(&cli, &meta);
    match outcome.map_err(|f| finalize_failure(schema, &meta, f)) {
        Ok(value) => match emit(&cli.out, &value) {
            Ok(()) => ExitCode::SUCCESS,
            Err(msg) => {
                eprintln!("forge: {msg}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Validation(value)) => {
            if let Err(msg) = emit(&cli.out, &value) {
                eprintln!("forge: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("forge: {msg}");
            ExitCode::from(2)
        }
    }
}
