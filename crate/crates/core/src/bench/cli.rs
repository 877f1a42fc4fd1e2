use std::ffi::OsString;
use std::fmt::Display;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::amg::{build_restriction_with, mis2_with};
use crate::bench::model::{model_csv, model_sweep, ModelSweep};
use crate::bench::report::{PhaseReport, RunMeta};
use crate::engine::Split3DEngine;
use crate::error::{Error, Result};
use crate::gen::{er_generate, rmat_generate, RmatParams};
use crate::grid::{CostParams, GridShape};
use crate::kernels::{flops_count, spa_spgemm};
use crate::matrix::{random_symmetric_permute, read_matrix_market, CscMatrix, DcscMatrix, TripleList};
use crate::semiring::{Numeric, PlusTimes, WireScalar};
use crate::spgemm3d::{Blocking, Split3DConfig, Split3DRun};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "spgemm-bench",
    about = "Run and instrument distributed sparse matrix products",
    args_conflicts_with_subcommands = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate the analytic communication cost over a (p, c, b) sweep.
    Model(ModelArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    G500,
    Ssca,
    Er,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    /// A·A
    Square,
    /// Rᵀ·A
    Rta,
    /// Rᵀ·A·R
    Rtar,
    /// A·R
    Ar,
}

#[derive(Args, Debug, Clone)]
pub struct MatrixArgs {
    /// Synthetic input (default g500 when no --input is given).
    #[arg(long, value_enum, conflicts_with = "input")]
    pub gen: Option<GenKind>,
    /// Generated matrices are 2^scale square.
    #[arg(long, default_value_t = 10)]
    pub scale: u32,
    /// Matrix Market file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Apply a random symmetric permutation first.
    #[arg(long)]
    pub permute: bool,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long, value_enum, default_value = "square")]
    pub op: Op,
    /// Process grid as PRxPCxC.
    #[arg(long, default_value = "1x1x1")]
    pub grid: String,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Blocking parameter, or "full".
    #[arg(long, default_value = "full")]
    pub block: String,
    /// Compare against the serial SPA product.
    #[arg(long)]
    pub verify: bool,
    /// Phase report destination; printed to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Integer arithmetic, for exact comparisons.
    #[arg(long)]
    pub int_values: bool,
    /// Reduce C^int before the fiber exchange.
    #[arg(long)]
    pub pre_reduce: bool,
    /// Symmetrize the pattern for MIS-2 instead of rejecting it.
    #[arg(long)]
    pub symmetrize: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Overrides for the measured A·A statistics.
    #[arg(long)]
    pub nnz_a: Option<f64>,
    #[arg(long)]
    pub nnz_b: Option<f64>,
    #[arg(long)]
    pub flops: Option<f64>,
    #[arg(long)]
    pub n: Option<f64>,
    #[arg(long, value_delimiter = ',', default_value = "16,64,256,1024")]
    pub p: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1,4,16")]
    pub c: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "64,256,1024")]
    pub b: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Entry point of the `spgemm-bench` binary; returns the exit code.
pub fn main_with_args<I, A>(args: I) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Some(Command::Model(m)) => model_report(&m).map(|()| true),
        None => run(&cli.run),
    };
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VERIFY,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Parse { .. } => EXIT_IO,
        _ => EXIT_CONFIG,
    }
}

fn load(m: &MatrixArgs) -> Result<(TripleList<f64>, String)> {
    let (t, name) = match &m.input {
        Some(path) => (read_matrix_market(path)?, path.display().to_string()),
        None => {
            let kind = m.gen.unwrap_or(GenKind::G500);
            let t = match kind {
                GenKind::G500 => rmat_generate(&RmatParams::g500(m.scale, m.seed))?,
                GenKind::Ssca => rmat_generate(&RmatParams::ssca(m.scale, m.seed))?,
                GenKind::Er => er_generate(1usize << m.scale, 16.0, m.seed)?,
            };
            let name = format!("{}-s{}", format!("{kind:?}").to_lowercase(), m.scale);
            (t, name)
        }
    };
    let t = t.sum_duplicates_with(|a, b| a + b);
    let t = if m.permute {
        random_symmetric_permute(&t, m.seed)?
    } else {
        t
    };
    Ok((t, name))
}

/// Executes one `run` invocation. `Ok(false)` means verification failed.
pub fn run(args: &RunArgs) -> Result<bool> {
    let (a, name) = load(&args.matrix)?;
    if args.int_values {
        if let Some(t) = a.iter().find(|t| t.value.fract() != 0.0) {
            return Err(Error::config(format!(
                "--int-values needs integral entries, found {} at ({}, {})",
                t.value, t.row, t.col
            )));
        }
        execute(args, a.map_values(|v| v as i64), name)
    } else {
        execute(args, a, name)
    }
}

trait BenchScalar: Numeric + WireScalar + Display {
    fn close(a: Self, b: Self) -> bool;
}

impl BenchScalar for i64 {
    fn close(a: i64, b: i64) -> bool {
        a == b
    }
}

impl BenchScalar for f64 {
    fn close(a: f64, b: f64) -> bool {
        a == b || (a - b).abs() <= 1e-9 * a.abs().max(b.abs())
    }
}

fn blocking(s: &str) -> Result<Blocking> {
    if s.eq_ignore_ascii_case("full") {
        return Ok(Blocking::Full);
    }
    s.parse()
        .map(Blocking::Width)
        .map_err(|_| Error::config(format!("--block expects a positive integer or 'full', got '{s}'")))
}

fn execute<T: BenchScalar>(args: &RunArgs, a: TripleList<T>, name: String) -> Result<bool> {
    let shape = GridShape::parse(&args.grid)?;
    let cfg = Split3DConfig::new(shape, blocking(&args.block)?, args.threads, PlusTimes::<T>::new())?
        .with_pre_reduce(args.pre_reduce);
    let engine = Split3DEngine { cfg };
    let mut report = PhaseReport::new(RunMeta {
        p: shape.size(),
        c: shape.pl,
        b: args.block.clone(),
        t: args.threads,
        matrix: name,
        op: format!("{:?}", args.op).to_lowercase(),
        seed: args.matrix.seed,
    });
    let mut ok = true;
    let mut multiply = |x: &TripleList<T>, y: &TripleList<T>, label: &str| -> Result<TripleList<T>> {
        let run = engine.run(x, y)?;
        report.add_run(&run);
        let c = run.gather()?;
        print_summary(label, x, y, &c, &run);
        if args.verify {
            let matches = verify(x, y, &c)?;
            println!("verify {label}: {}", if matches { "ok" } else { "MISMATCH" });
            ok &= matches;
        }
        Ok(c)
    };
    match args.op {
        Op::Square => {
            multiply(&a, &a, "A*A")?;
        }
        op => {
            let r = restriction::<T>(&a, args)?;
            println!("nnz(R)={}", r.nnz());
            match op {
                Op::Ar => {
                    multiply(&a, &r, "A*R")?;
                }
                Op::Rta => {
                    multiply(&r.transpose(), &a, "RT*A")?;
                }
                _ => {
                    let rta = multiply(&r.transpose(), &a, "RT*A")?;
                    let rtar = multiply(&rta, &r, "RT*A*R")?;
                    println!("nnz(R)={} nnz(RTA)={} nnz(RTAR)={}", r.nnz(), rta.nnz(), rtar.nnz());
                }
            }
        }
    }
    match &args.out {
        Some(path) => report.write_csv(path)?,
        None => print!("{}", report.to_csv()),
    }
    Ok(ok)
}

fn restriction<T: BenchScalar>(a: &TripleList<T>, args: &RunArgs) -> Result<TripleList<T>> {
    let d = DcscMatrix::from_triples(a)?;
    let seed = args.matrix.seed;
    let set = mis2_with(&d, seed, args.symmetrize)?;
    Ok(build_restriction_with(&d, &set, seed, args.symmetrize)?
        .to_triples()
        .map_values(|_| T::ONE))
}

fn print_summary<T: BenchScalar>(
    label: &str,
    x: &TripleList<T>,
    y: &TripleList<T>,
    c: &TripleList<T>,
    run: &Split3DRun<T>,
) {
    let ratio = if c.nnz() == 0 {
        1.0
    } else {
        run.cint_nnz() as f64 / c.nnz() as f64
    };
    println!(
        "{label}: nnz(A)={} nnz(B)={} nnz(C)={} flops={} nnz(Cint)={} expansion={ratio:.4}",
        x.nnz(),
        y.nnz(),
        c.nnz(),
        run.flops(),
        run.cint_nnz()
    );
}

fn verify<T: BenchScalar>(x: &TripleList<T>, y: &TripleList<T>, c: &TripleList<T>) -> Result<bool> {
    let oracle = spa_spgemm(
        &CscMatrix::from_triples(x)?,
        &CscMatrix::from_triples(y)?,
        &PlusTimes::new(),
    )?;
    Ok(oracle.shape() == c.shape()
        && oracle.nnz() == c.nnz()
        && oracle
            .iter()
            .zip(c.iter())
            .all(|(o, t)| o.key() == t.key() && T::close(o.value, t.value)))
}

/// Executes a `model` invocation, writing the sweep CSV.
pub fn model_report(m: &ModelArgs) -> Result<()> {
    let measured = if m.nnz_a.is_some() && m.flops.is_some() && m.n.is_some() {
        None
    } else {
        let (a, _) = load(&m.matrix)?;
        let d = DcscMatrix::from_triples(&a)?;
        Some((a.nnz() as f64, flops_count(&d, &d)? as f64, a.ncols() as f64))
    };
    let (nnz, flops, n) = measured.unwrap_or_default();
    let nnz_a = m.nnz_a.unwrap_or(nnz);
    let sweep = ModelSweep {
        nnz_a,
        nnz_b: m.nnz_b.unwrap_or(if measured.is_some() { nnz } else { nnz_a }),
        flops: m.flops.unwrap_or(flops),
        n: m.n.unwrap_or(n),
        params: CostParams::new(m.alpha, m.beta)?,
        p: m.p.clone(),
        c: m.c.clone(),
        b: m.b.clone(),
    };
    let csv = model_csv(&model_sweep(&sweep)?);
    match &m.out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}
