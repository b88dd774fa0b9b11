mod commands;
mod config;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tutte_core::complex::DEFAULT_EDGE_BOUND;
use tutte_core::theorems::corpus::CORPUS_SEED;
use tutte_core::CheckKind;

use config::{parse_checks, parse_max_edges, resolve_system, Format, RunConfig, UsageError};

const EXIT_USAGE: u8 = 2;

/// Bigraded cohomology of multigraphs and Tutte polynomial checks.
#[derive(Parser)]
#[command(name = "tuttehom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the cohomology table and graded Euler characteristic.
    Homology {
        /// Graph file, or <family>:<n>.
        graph: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print T, T-hat and check that T is recovered from T-hat.
    Tutte {
        graph: String,
        #[arg(long)]
        json: bool,
    },
    /// Run theorem checks on graphs or the built-in corpus.
    Verify {
        graphs: Vec<String>,
        #[command(flatten)]
        common: Common,
        /// Comma-separated checks (default: all).
        #[arg(long, value_parser = parse_checks)]
        checks: Option<::std::vec::Vec<CheckKind>>,
        /// Add the built-in corpus.
        #[arg(long)]
        corpus: bool,
        #[arg(long, default_value_t = CORPUS_SEED)]
        seed: u64,
    },
    /// List the graph family generators.
    Families {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Common {
    /// default, chromatic, zero-b0 or custom:<path>.
    #[arg(long, default_value = "default")]
    system: String,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = DEFAULT_EDGE_BOUND, value_parser = parse_max_edges)]
    max_edges: usize,
    /// Worker threads for batch checks.
    #[arg(long)]
    jobs: Option<usize>,
}

fn format(json: bool) -> Format {
    if json {
        Format::Json
    } else {
        Format::Text
    }
}

fn with_common(common: &Common, inputs: Vec<String>) -> Result<RunConfig, UsageError> {
    if let Some(jobs) = common.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| UsageError(e.to_string()))?;
    }
    Ok(RunConfig {
        inputs,
        system: resolve_system(&common.system)?,
        format: format(common.json),
        max_edges: common.max_edges,
        ..RunConfig::default()
    })
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, UsageError> {
    match cli.command {
        Command::Homology { graph, common } => commands::homology_cmd(&with_common(&common, vec![graph])?, out),
        Command::Tutte { graph, json } => {
            let cfg = RunConfig {
                inputs: vec![graph],
                format: format(json),
                ..RunConfig::default()
            };
            commands::tutte_cmd(&cfg, out)
        }
        Command::Verify {
            graphs,
            common,
            checks,
            corpus,
            seed,
        } => {
            let mut cfg = with_common(&common, graphs)?;
            cfg.checks = checks.unwrap_or_else(|| CheckKind::ALL.to_vec());
            cfg.corpus = corpus;
            cfg.seed = seed;
            commands::verify_cmd(&cfg, out)
        }
        Command::Families { json } => {
            let cfg = RunConfig {
                format: format(json),
                ..RunConfig::default()
            };
            commands::families_cmd(&cfg, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
