use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use lenscert_core::certify::{
    certify, exact_report, plot, plot_csv, table, CertifyOptions, ExactMode, FaultInjection, TableFormat, Verdict,
    DEFAULT_MAX_N, LONG_RUN_MAX_N,
};
use lenscert_core::geom::{PairSelection, PrecisionPolicy};

#[derive(Parser)]
#[command(name = "lenscert", version, about = "Certified bounds comparing Lawson-cone competitors with the planar lens")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pairs {
    Default,
    Primary,
    All,
}

impl From<Pairs> for PairSelection {
    fn from(p: Pairs) -> Self {
        match p {
            Pairs::Default => PairSelection::Default,
            Pairs::Primary => PairSelection::Primary,
            Pairs::All => PairSelection::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Lens,
    Simons,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    CollapseSpecfun,
    ForceEqual,
}

#[derive(Subcommand)]
enum Command {
    /// Prove M(k,l) < Lambda_plane(n) for every n in the range.
    Certify {
        /// Dimension range, `A..B` (inclusive) or a single `N`.
        #[arg(long, value_parser = parse_range)]
        n: (u32, u32),
        #[arg(long, value_enum, default_value = "default")]
        pairs: Pairs,
        /// Target width of every enclosure.
        #[arg(long, default_value_t = 1e-12)]
        width: f64,
        #[arg(long, default_value_t = 128)]
        prec_start: u32,
        #[arg(long, default_value_t = 1 << 16)]
        prec_max: u32,
        /// Allow dimensions up to 2700.
        #[arg(long)]
        long_run: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
    /// Certified decimal table of Lambda_plane(n) and M(k,l).
    Table {
        #[arg(long, value_parser = parse_range)]
        n: (u32, u32),
        #[arg(long, default_value_t = 8)]
        digits: u32,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certified gap Lambda_plane(n) - M per dimension, as CSV plus metadata.
    Plot {
        #[arg(long, value_parser = parse_range)]
        n: (u32, u32),
        #[arg(long, value_enum, default_value = "default")]
        pairs: Pairs,
        #[arg(long, default_value_t = 1e-12)]
        width: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact symbolic components with a numeric cross-check.
    Exact {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 256)]
        prec: u32,
    },
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let bad = || format!("expected `A..B` or `N`, got `{s}`");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok((a, b))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Certify { n, pairs, width, prec_start, prec_max, long_run, out, inject_fault } => {
            if !(width > 0.0) {
                bail!("--width must be positive");
            }
            let opts = CertifyOptions {
                pairs: pairs.into(),
                target_width: width,
                policy: PrecisionPolicy { start: prec_start, max: prec_max },
                max_n: if long_run { LONG_RUN_MAX_N } else { DEFAULT_MAX_N },
                fault: inject_fault.map(|f| match f {
                    Fault::CollapseSpecfun => FaultInjection::CollapseSpecfun,
                    Fault::ForceEqual => FaultInjection::ForceMEqualsLambda,
                }),
                ..CertifyOptions::default()
            };
            let set = certify(n.0, n.1, &opts)?;
            write(&out, &(serde_json::to_string_pretty(&set)? + "\n"))?;
            for c in &set.certificates {
                let worst = c.entries.iter().map(|e| format!("({},{})", e.k, e.l)).collect::<Vec<_>>().join(" ");
                println!("n={:<4} {:?}  bits={:<5} pairs {}", c.n, c.verdict, c.precision_bits, worst);
            }
            let verdict = set.verdict();
            println!("overall: {verdict:?}");
            Ok(match verdict {
                Verdict::Proven => ExitCode::SUCCESS,
                Verdict::Undecided => ExitCode::from(2),
                Verdict::Failed => ExitCode::FAILURE,
            })
        }
        Command::Table { n, digits, format, out } => {
            let rows = table(n.0, n.1, digits, PrecisionPolicy::default())?;
            let fmt = match format {
                Format::Csv => TableFormat::Csv,
                Format::Json => TableFormat::Json,
                Format::Markdown => TableFormat::Markdown,
            };
            let text = fmt.render(&rows);
            match out {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Plot { n, pairs, width, out } => {
            let (rows, meta) = plot(n.0, n.1, &pairs.into(), width, PrecisionPolicy::default())?;
            write(&out, &plot_csv(&rows)?)?;
            let meta_path = out.with_extension("meta.json");
            write(&meta_path, &(serde_json::to_string_pretty(&meta)? + "\n"))?;
            println!("wrote {} rows to {} ({})", rows.len(), out.display(), meta_path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Exact { n, mode, prec } => {
            let mode = match mode {
                Mode::Lens => ExactMode::Lens,
                Mode::Simons => ExactMode::Simons,
            };
            let report = exact_report(n, mode, prec)?;
            print!("{report}");
            Ok(if report.cross_check { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
