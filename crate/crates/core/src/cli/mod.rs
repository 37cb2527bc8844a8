//! The `torus-moduli` command line tool.
//!
//! Exit status: 0 success, 2 usage/parse/I/O error, 3 domain error in some
//! record, 4 ambiguous classification. With several failing records the
//! first one in input order decides between 3 and 4.

pub mod input;
pub mod plot;
pub mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::Value;

use crate::atlas::{draw_sample, enumerate_finite, random_conjugator, seeded_rng};
use crate::canonical::{reconstruct, PairSector};
use crate::error::ModuliError;
use crate::sl2::ToleranceConfig;
use input::{float_matrix, Mode, PairDocument, PairRecord};
use plot::{build_figure, FigureName};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_AMBIGUOUS: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

#[derive(Debug, Parser)]
#[command(name = "torus-moduli", version, about = "Commuting SL(2,R) pairs up to simultaneous conjugation")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Relative tolerance on det U = 1.
    #[arg(long, global = true)]
    pub det_tol: Option<f64>,
    /// Width of the parabolic band and of the scalar test.
    #[arg(long, global = true)]
    pub class_tol: Option<f64>,
    /// Relative tolerance on the commutator.
    #[arg(long, global = true)]
    pub comm_tol: Option<f64>,
    /// Tolerance for comparing and validating canonical parameters.
    #[arg(long, global = true)]
    pub param_tol: Option<f64>,
    /// Arithmetic for records that do not set their own mode.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Float)]
    pub mode: Mode,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output if absent (plots need a path).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral types and coarse combination of every record.
    Classify { input: PathBuf },
    /// Canonical form and witness of every record.
    Canon { input: PathBuf },
    /// Equivalence verdict for every comparison.
    Equiv { input: PathBuf },
    /// A pair document of samples from one sector.
    Sample {
        #[arg(long, value_parser = parse_sector)]
        sector: PairSector,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Disguise each canonical pair by a random conjugation.
        #[arg(long)]
        conjugate: bool,
    },
    /// SVG figure and companion CSV of embedded points.
    Plot {
        #[arg(value_enum)]
        figure: FigureName,
        /// Grid points per continuous parameter and cell.
        #[arg(long, default_value_t = 24)]
        resolution: usize,
    },
}

fn parse_sector(s: &str) -> Result<PairSector, String> {
    s.parse::<PairSector>().map_err(|e| e.to_string())
}

impl GlobalArgs {
    pub fn tolerances(&self) -> Result<ToleranceConfig, CliError> {
        let d = ToleranceConfig::default();
        ToleranceConfig::new(
            self.det_tol.unwrap_or(d.det_tol),
            self.class_tol.unwrap_or(d.class_tol),
            self.comm_tol.unwrap_or(d.comm_tol),
            self.param_tol.unwrap_or(d.param_tol),
        )
        .ok_or_else(|| CliError::Usage("tolerances must be finite and positive".into()))
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, bytes).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => io::stdout().write_all(bytes).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn exit_for(first_error: Option<&ModuliError>) -> i32 {
    match first_error {
        None => EXIT_OK,
        Some(e) if e.is_ambiguous() => EXIT_AMBIGUOUS,
        Some(_) => EXIT_DOMAIN,
    }
}

/// Writes JSON lines and returns the exit status they imply.
fn emit_lines(lines: Vec<(Value, Option<ModuliError>)>, out: Option<&Path>) -> Result<i32, CliError> {
    let mut buf = Vec::new();
    for (v, _) in &lines {
        buf.extend_from_slice(v.to_string().as_bytes());
        buf.push(b'\n');
    }
    write_output(out, &buf)?;
    Ok(exit_for(lines.iter().find_map(|(_, e)| e.as_ref())))
}

fn origin(path: &Path) -> String {
    path.display().to_string()
}

/// A pair document of `count` samples; finite sectors give their distinct
/// classes, at most `count` of them.
pub fn sample_document(sector: PairSector, count: usize, seed: u64, conjugate: bool) -> PairDocument {
    let mut rng = seeded_rng(seed);
    let pairs: Vec<_> = match enumerate_finite(sector) {
        Some(all) => all
            .into_iter()
            .take(count)
            .map(|params| {
                let p = reconstruct(&params).expect("finite sectors have no range conditions");
                if conjugate {
                    p.conjugate_by(&random_conjugator(&mut rng))
                } else {
                    p
                }
            })
            .collect(),
        None => (0..count).map(|_| draw_sample(sector, &mut rng, conjugate).pair).collect(),
    };
    PairDocument {
        records: pairs
            .iter()
            .enumerate()
            .map(|(i, p)| PairRecord {
                id: format!("{sector}-{i}"),
                mode: Some(Mode::Float),
                u1: float_matrix(p.first().mat()),
                u2: float_matrix(p.second().mat()),
            })
            .collect(),
    }
}

fn csv_path(svg: &Path) -> PathBuf {
    svg.with_extension("csv")
}

pub fn run(cli: &Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    let cfg = g.tolerances()?;
    let out = g.out.as_deref();
    match &cli.command {
        Command::Classify { input } => {
            let recs = input::parse_pairs(&read_input(input)?, &origin(input), g.mode)?;
            let lines = recs
                .par_iter()
                .map(|(id, p)| report::classify_line(id, p, &cfg))
                .collect();
            emit_lines(lines, out)
        }
        Command::Canon { input } => {
            let recs = input::parse_pairs(&read_input(input)?, &origin(input), g.mode)?;
            let lines = recs.par_iter().map(|(id, p)| report::canon_line(id, p, &cfg)).collect();
            emit_lines(lines, out)
        }
        Command::Equiv { input } => {
            let recs = input::parse_comparisons(&read_input(input)?, &origin(input), g.mode)?;
            let lines = recs
                .par_iter()
                .map(|(id, l, r)| report::equiv_line(id, l, r, &cfg))
                .collect();
            emit_lines(lines, out)
        }
        Command::Sample {
            sector,
            count,
            conjugate,
        } => {
            let doc = sample_document(*sector, *count, g.seed, *conjugate);
            let mut text = serde_json::to_string_pretty(&doc).expect("documents serialize");
            text.push('\n');
            write_output(out, text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Plot { figure, resolution } => {
            let svg_path = out
                .map(Path::to_path_buf)
                .unwrap_or_else(|| PathBuf::from(format!("figure-{}.svg", figure.as_str())));
            let fig = build_figure(*figure, *resolution);
            let csv = fig
                .to_csv()
                .map_err(|e| CliError::Parse(format!("csv: {e}")))?;
            write_output(Some(&svg_path), fig.to_svg().as_bytes())?;
            write_output(Some(&csv_path(&svg_path)), &csv)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args`, runs, and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_PARSE
        }
    }
}

pub fn main() -> i32 {
    main_with_args(std::env::args_os())
}
