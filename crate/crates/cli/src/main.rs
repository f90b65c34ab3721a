//! `pidc`: descriptor expansions, shared information and decompositions of
//! discrete distributions given as tab-separated tables.

mod report;
mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pidc::corpus::example_by_name;
use pidc::descriptor::DEFAULT_MAX_ALPHABET;
use pidc::expansion::expand;
use pidc::lattice::Antichain;
use pidc::multiple::multiple_information_with;
use pidc::pid::{decompose_two_sources_with, shared_info_with, SearchConfig};
use pidc::{Descriptor, JointDistribution, SourceSet};
use serde::Serialize;
use thiserror::Error;

use report::{DecomposeReport, ExpandReport, Render, ValueReport};
use table::Table;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] pidc::Error),
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 for bad input, 2 when a size limit is hit.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource_limit() => 2,
            _ => 1,
        }
    }
}

const AFTER_HELP: &str = "\
Input is a tab-separated table with a header row. The probability column is
`--prob`, else the column named `p`, else the last column. The target is
`--target`, else the last remaining column; all other columns are sources.
Blank lines and lines starting with `#` are ignored.

Exit status: 0 on success, 1 on invalid input, 2 when a size limit is exceeded.";

#[derive(Debug, Parser)]
#[command(name = "pidc", version, about, after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expand I(A; Y) along a descriptor, term by term.
    ///
    /// Terms whose feature has zero probability are left out.
    Expand {
        #[command(flatten)]
        input: Input,
        /// Descriptor file, or inline levels separated by `;`
        /// (e.g. `y1,y2|y3,y4; y1,y2,y3,y4`). Defaults to the one-step descriptor.
        #[arg(long)]
        descriptor: Option<String>,
        /// Source set A, e.g. `{1,2}`. Defaults to all sources jointly.
        #[arg(long)]
        source: Option<String>,
        #[command(flatten)]
        run: Run,
    },
    /// Redundant, unique and synergistic information of two sources.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        run: Run,
    },
    /// Shared information of a collection of source sets.
    Shared {
        #[command(flatten)]
        input: Input,
        /// Collection such as `{1}{2}{3}`. Defaults to all singletons.
        #[arg(long)]
        collection: Option<String>,
        #[command(flatten)]
        run: Run,
    },
    /// Multiple information of all non-probability columns.
    Multi {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        run: Run,
    },
}

#[derive(Debug, Args)]
struct Input {
    /// Tab-separated distribution file.
    #[arg(required_unless_present = "example", conflicts_with = "example")]
    file: Option<PathBuf>,
    /// Use a built-in example instead of a file (e.g. `And`, `RdnUnqXor`).
    #[arg(long)]
    example: Option<String>,
    /// Target column name.
    #[arg(long, conflicts_with = "example")]
    target: Option<String>,
    /// Probability column name.
    #[arg(long, conflicts_with = "example")]
    prob: Option<String>,
    /// Rescale masses that do not sum to 1.
    #[arg(long)]
    renormalize: bool,
}

#[derive(Debug, Args)]
struct Run {
    /// Print JSON with full precision.
    #[arg(long)]
    json: bool,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Largest target support searched over descriptors.
    #[arg(long, env = "PIDC_MAX_ALPHABET", default_value_t = DEFAULT_MAX_ALPHABET)]
    max_alphabet: usize,
}

impl Run {
    fn setup(&self) -> Result<SearchConfig, CliError> {
        if let Some(n) = self.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n as usize)
                .build_global()
                .map_err(|e| CliError::Input(format!("cannot start {n} threads: {e}")))?;
        }
        Ok(SearchConfig::default().with_max_alphabet(self.max_alphabet))
    }

    fn emit<R: Serialize + Render>(&self, report: &R) -> Result<(), CliError> {
        if self.json {
            let s = serde_json::to_string_pretty(report)
                .map_err(|e| CliError::Input(format!("cannot serialize report: {e}")))?;
            println!("{s}");
        } else {
            print!("{}", report.render());
        }
        Ok(())
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

impl Input {
    /// `joint`: every column but the probability is a variable.
    fn load(&self, joint: bool) -> Result<JointDistribution, CliError> {
        if let Some(name) = &self.example {
            return Ok(example_by_name(name)?.distribution);
        }
        let path = self
            .file
            .as_deref()
            .expect("clap requires a file or an example");
        let table = Table::parse(&read(path)?)?;
        if joint {
            if self.target.is_some() {
                return Err(CliError::Input("`multi` takes no target column".into()));
            }
            let layout = table.layout(None, self.prob.as_deref(), false)?;
            table.joint(&layout, self.renormalize)
        } else {
            let layout = table.layout(self.target.as_deref(), self.prob.as_deref(), true)?;
            table.distribution(&layout, self.renormalize)
        }
    }
}

fn descriptor_for(d: &JointDistribution, arg: Option<&str>) -> Result<Descriptor, CliError> {
    match arg {
        None => Ok(Descriptor::shannon(d.target_len())?),
        Some(s) => {
            let path = Path::new(s);
            let text = if path.is_file() {
                read(path)?
            } else {
                s.to_owned()
            };
            Ok(Descriptor::parse_for(&text, d.target_alphabet())?)
        }
    }
}

fn source_for(d: &JointDistribution, arg: Option<&str>) -> Result<SourceSet, CliError> {
    let s = match arg {
        None => SourceSet::all(d.n_sources()),
        Some(text) if text.trim_start().starts_with('{') => text.parse()?,
        Some(text) => format!("{{{text}}}").parse()?,
    };
    if s.span() > d.n_sources() {
        return Err(CliError::Input(format!(
            "source {s} refers past the {} sources",
            d.n_sources()
        )));
    }
    Ok(s)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Expand {
            input,
            descriptor,
            source,
            run,
        } => {
            run.setup()?;
            let d = input.load(false)?;
            let desc = descriptor_for(&d, descriptor.as_deref())?;
            let a = source_for(&d, source.as_deref())?;
            let e = expand(&d, a, &desc)?;
            run.emit(&ExpandReport::new(&d, a.to_string(), &desc, &e))
        }
        Command::Decompose { input, run } => {
            let config = run.setup()?;
            let d = input.load(false)?;
            let r = decompose_two_sources_with(&d, &config)?;
            run.emit(&DecomposeReport::new(&d, &r))
        }
        Command::Shared {
            input,
            collection,
            run,
        } => {
            let config = run.setup()?;
            let d = input.load(false)?;
            let a = match collection {
                Some(s) => s.parse::<Antichain>()?,
                None => Antichain::singletons(d.n_sources()),
            };
            if a.span() > d.n_sources() {
                return Err(CliError::Input(format!(
                    "collection {a} refers past the {} sources",
                    d.n_sources()
                )));
            }
            let o = shared_info_with(&d, &a, &config)?;
            run.emit(&ValueReport::new(&d, a.to_string(), &o))
        }
        Command::Multi { input, run } => {
            let config = run.setup()?;
            let d = input.load(true)?;
            let o = multiple_information_with(&d, &config)?;
            let of = d.source_names().join(",");
            run.emit(&ValueReport::new(&d.with_joint_target(), of, &o))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
