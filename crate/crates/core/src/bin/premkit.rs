use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use premkit::report::{self, BraidFlags, FoldMapFlags, ReportError, Request, DEFAULT_CAP};
use premkit::theta::DEFAULT_REPRESENTATIVE_BOUND;
use serde_json::Value;

/// Obstructions to lifting generic maps to projected embeddings.
///
/// Prints a JSON report on standard output and a short summary on standard
/// error. The exit code is 0 whenever the analysis ran, whatever it found.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// Truncation level for nilpotent quotients.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a braid given as a JSON list of signed generators, e.g. "[1,2,-1,-2]".
    Braid {
        braid: String,
        /// Number of strands; defaults to one more than the largest generator.
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long)]
        permutation: bool,
        #[arg(long)]
        linking: bool,
        #[arg(long)]
        trivial: bool,
        #[arg(long)]
        hb_trivial: bool,
        #[arg(long)]
        humphries: bool,
        /// Report the image in the level-n quotient.
        #[arg(long, value_name = "N")]
        level: Option<usize>,
    },
    /// Analyse a loop in a fold-map model.
    Foldmap {
        arrangement: PathBuf,
        #[arg(value_name = "LOOP")]
        path: PathBuf,
        #[arg(long)]
        pullback: bool,
        #[arg(long)]
        monodromy: bool,
        #[arg(long)]
        winding: bool,
        #[arg(long)]
        alternation: bool,
    },
    /// Canonicalise a signed sum of double cosets.
    Theta {
        input: PathBuf,
        /// Length bound for the representative search.
        #[arg(long, default_value_t = DEFAULT_REPRESENTATIVE_BOUND)]
        bound: usize,
    },
    /// 2-prem verdict from a torsion order and a one-based permutation, e.g. "[2,1]".
    Verdict { torsion: u64, permutation: String },
    /// Rerun the bundled worked examples.
    Selftest,
}

fn read_json(path: &Path) -> Result<Value, ReportError> {
    let text = std::fs::read_to_string(path).map_err(|e| ReportError::Parse {
        what: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| ReportError::Parse {
        what: path.display().to_string(),
        message: e.to_string(),
    })
}

fn parse_permutation(text: &str) -> Result<Vec<usize>, ReportError> {
    let trimmed = text.trim();
    let json = if trimmed.starts_with('[') {
        trimmed.to_string()
    } else {
        format!("[{trimmed}]")
    };
    serde_json::from_str(&json).map_err(|e| ReportError::Parse {
        what: "permutation".into(),
        message: e.to_string(),
    })
}

fn request(cli: Cli) -> Result<Request, ReportError> {
    Ok(match cli.command {
        Command::Braid {
            braid,
            strands,
            permutation,
            linking,
            trivial,
            hb_trivial,
            humphries,
            level,
        } => Request::Braid {
            braid: report::parse_braid(&braid)?,
            strands,
            flags: BraidFlags {
                permutation,
                linking,
                trivial,
                hb_trivial,
                humphries,
                level,
            },
            cap: cli.cap,
        },
        Command::Foldmap {
            arrangement,
            path,
            pullback,
            monodromy,
            winding,
            alternation,
        } => Request::Foldmap {
            arrangement: read_json(&arrangement)?,
            path: read_json(&path)?,
            flags: FoldMapFlags {
                pullback,
                monodromy,
                winding,
                alternation,
            },
        },
        Command::Theta { input, bound } => Request::Theta {
            input: read_json(&input)?,
            bound,
        },
        Command::Verdict {
            torsion,
            permutation,
        } => Request::Verdict {
            torsion,
            permutation: parse_permutation(&permutation)?,
        },
        Command::Selftest => Request::Selftest,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match request(cli).and_then(|r| report::run(&r)) {
        Ok(rep) => {
            println!("{}", rep.to_json());
            for line in &rep.summary {
                eprintln!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
