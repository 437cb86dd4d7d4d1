//! Command-line front end: `measure`, `sweep` and `select`.
//!
//! All arithmetic lives in the library modules; this module only parses
//! flags, reads and writes files, and maps errors to exit codes.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dataset::{self, Dataset, LabelColumn};
use crate::error::{Error, Result};
use crate::hybrid::HybridState;
use crate::measures::{self, MarginConvention};
use crate::neighbors::KdIndex;
use crate::select::{self, Criterion, HybridMode, SearchOptions};
use crate::synth::{self, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "separability",
    version,
    about = "Class separability measures for labeled numeric data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Separability index, hypothesis margin and single-shot hybrid of a CSV dataset.
    Measure(MeasureArgs),
    /// Two-Gaussian center-distance sweep, written as CSV.
    Sweep(SweepArgs),
    /// Feature-subset search maximizing a separability criterion.
    Select(SelectArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// `last` or a zero-based column index.
    #[arg(long, default_value = "last")]
    pub label_column: LabelColumn,
    /// The first row is a header.
    #[arg(long)]
    pub header: bool,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Write per-instance near-hit, near-miss and margin to this CSV.
    #[arg(long)]
    pub margins_out: Option<PathBuf>,
    /// Report the mean margin instead of the sum.
    #[arg(long)]
    pub hm_mean: bool,
    /// Halve each margin in the reported value.
    #[arg(long)]
    pub hm_half: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = SweepConfig::default().n_per_class)]
    pub n_per_class: usize,
    #[arg(long, default_value_t = SweepConfig::default().dims)]
    pub dims: usize,
    #[arg(long, default_value_t = SweepConfig::default().sigma)]
    pub sigma: f64,
    #[arg(long, default_value_t = SweepConfig::default().start_distance)]
    pub start: f64,
    #[arg(long, default_value_t = SweepConfig::default().step, allow_negative_numbers = true)]
    pub step: f64,
    #[arg(long, default_value_t = SweepConfig::default().n_steps)]
    pub steps: usize,
    #[arg(long, default_value_t = SweepConfig::default().seed)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Strategy {
    Exhaustive,
    Greedy,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CriterionArg {
    Si,
    Hybrid,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub strategy: Strategy,
    #[arg(long, value_enum, default_value = "si")]
    pub criterion: CriterionArg,
    #[arg(long)]
    pub max_dim: Option<usize>,
    /// Thread one hybrid state through the whole search (order-dependent).
    #[arg(long)]
    pub shared_hybrid_state: bool,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render();
            let _ = if e.use_stderr() {
                write!(stderr, "{rendered}")
            } else {
                write!(stdout, "{rendered}")
            };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Measure(args) => cmd_measure(args, stdout),
        Command::Sweep(args) => cmd_sweep(args, stdout),
        Command::Select(args) => cmd_select(args, stdout),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::InvalidConfig(_) => EXIT_USAGE,
                ref e if e.is_data_error() => EXIT_DATA,
                _ => EXIT_COMPUTE,
            }
        }
    }
}

fn load(input: &InputArgs) -> Result<Dataset> {
    dataset::load_csv(&input.input, input.header, input.label_column)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn cmd_measure(args: &MeasureArgs, stdout: &mut dyn Write) -> Result<()> {
    let ds = load(&args.input)?;
    let index = KdIndex::build(&ds);
    let si = measures::si_from(&index)?;
    let margins = match measures::instance_margins(&index) {
        Ok(m) => Some(m),
        Err(Error::SingletonClass { .. } | Error::SingleClass) if args.margins_out.is_none() => {
            None
        }
        Err(e) => return Err(e),
    };
    let hm = margins.as_deref().map(measures::total_margin);
    let hybrid = match hm {
        Some(hm) => HybridState::new().step(si, hm)?.hybrid,
        None => 100.0 * si.fraction(),
    };
    let convention = MarginConvention {
        mean: args.hm_mean,
        half: args.hm_half,
    };

    let mut report = String::new();
    report.push_str(&format!("n={}\n", si.n));
    report.push_str(&format!("si_hits={}\n", si.hits));
    report.push_str(&format!("si={}\n", si.fraction()));
    match hm {
        Some(hm) => report.push_str(&format!("hm={}\n", convention.apply(hm, si.n))),
        None => report.push_str("hm=NA\n"),
    }
    let name = match (convention.half, convention.mean) {
        (false, false) => "sum",
        (false, true) => "mean",
        (true, false) => "half_sum",
        (true, true) => "half_mean",
    };
    report.push_str(&format!("hm_convention={name}\n"));
    for (label, count) in ds.class_counts() {
        report.push_str(&format!("class[{label}]={count}\n"));
    }
    report.push_str(&format!("hybrid={hybrid}\n"));
    stdout
        .write_all(report.as_bytes())
        .map_err(io_err(Path::new("<stdout>")))?;

    if let (Some(path), Some(margins)) = (&args.margins_out, &margins) {
        let mut out = create(path)?;
        let write = |out: &mut BufWriter<File>| -> std::io::Result<()> {
            writeln!(
                out,
                "index,label,near_hit,hit_distance,near_miss,miss_distance,margin"
            )?;
            for (i, m) in margins.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    i,
                    ds.label(i),
                    m.hit.index,
                    m.hit.distance,
                    m.miss.index,
                    m.miss.distance,
                    m.margin()
                )?;
            }
            out.flush()
        };
        write(&mut out).map_err(io_err(path))?;
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> Result<()> {
    let cfg = SweepConfig {
        n_per_class: args.n_per_class,
        dims: args.dims,
        sigma: args.sigma,
        start_distance: args.start,
        step: args.step,
        n_steps: args.steps,
        seed: args.seed,
    };
    cfg.validate()?;
    let records = synth::separation_sweep(&cfg)?;
    let mut out = create(&args.out)?;
    synth::write_sweep_csv(&records, &mut out).map_err(io_err(&args.out))?;

    let first_full = records
        .iter()
        .find(|r| r.si_hits == r.n)
        .map_or("none".to_string(), |r| r.distance.to_string());
    let last = records.last().expect("n_steps >= 1");
    writeln!(
        stdout,
        "records={}\nfirst_full_separation={}\nfinal_hybrid={}",
        records.len(),
        first_full,
        last.hybrid
    )
    .map_err(io_err(Path::new("<stdout>")))
}

fn cmd_select(args: &SelectArgs, stdout: &mut dyn Write) -> Result<()> {
    let ds = load(&args.input)?;
    let options = SearchOptions {
        criterion: match args.criterion {
            CriterionArg::Si => Criterion::Si,
            CriterionArg::Hybrid => Criterion::Hybrid,
        },
        max_dim: args.max_dim,
        hybrid_mode: if args.shared_hybrid_state {
            HybridMode::Shared
        } else {
            HybridMode::FreshPerSubset
        },
    };
    let result = match args.strategy {
        Strategy::Exhaustive => select::exhaustive_search(&ds, options)?,
        Strategy::Greedy => select::greedy_forward_search(&ds, options)?,
    };
    let mut out = create(&args.out)?;
    select::write_selection_csv(&result, &mut out).map_err(io_err(&args.out))?;

    let degraded = result.trace.iter().filter(|e| e.hm_unavailable).count();
    let mut summary = format!(
        "best_subset={}\nbest_score={}\nevaluations={}\n",
        result.best_subset,
        result.best_score,
        result.trace.len()
    );
    if degraded > 0 {
        summary.push_str(&format!("hm_unavailable={degraded}\n"));
    }
    stdout
        .write_all(summary.as_bytes())
        .map_err(io_err(Path::new("<stdout>")))
}
