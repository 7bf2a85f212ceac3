use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chase_core::dsl::{self, RunOptions, EXIT_INPUT};
use chase_core::formulas::schemas::{tab_axioms, tcat_axioms, Budget};

#[derive(Parser)]
#[command(name = "chase", version, about = "Commutative diagram merging: parse, decide, evaluate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Tcat,
    Tab,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and report errors only.
    Check { file: PathBuf },
    /// Run every query in a document.
    Run {
        file: PathBuf,
        /// Print witnesses with arrow labels.
        #[arg(long)]
        witness: bool,
        /// Cross-check decisions against the naive closure.
        #[arg(long)]
        oracle: bool,
        /// Evaluation cap; beats CHASE_CAP.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Print the axiom instances of a theory within a budget.
    Axioms {
        theory: TheoryArg,
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        max_arrows: usize,
        #[arg(long)]
        max_path_len: usize,
    },
    /// Print the dual document.
    Dual { file: PathBuf },
}

fn load(file: &Path) -> Result<dsl::Document, ExitCode> {
    let text = std::fs::read_to_string(file).map_err(|e| {
        eprintln!("error: {}: {e}", file.display());
        ExitCode::from(EXIT_INPUT as u8)
    })?;
    dsl::parse(&text).map_err(|e| {
        eprintln!("{}: {e}", file.display());
        ExitCode::from(EXIT_INPUT as u8)
    })
}

fn env_cap() -> Result<Option<usize>, String> {
    match std::env::var("CHASE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("CHASE_CAP must be a non-negative integer, got `{v}`")),
        Err(_) => Ok(None),
    }
}

/// Writes to stdout; a closed pipe ends output quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { file } => match load(&file) {
            Ok(doc) => {
                emit(&format!("ok: {} declarations, {} queries\n", doc.decls.len(), doc.queries().count()));
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
        Command::Run {
            file,
            witness,
            oracle,
            cap,
        } => {
            let doc = match load(&file) {
                Ok(d) => d,
                Err(code) => return code,
            };
            let cap = match cap.map(Ok).or_else(|| env_cap().transpose()) {
                Some(Ok(c)) => c,
                Some(Err(msg)) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(EXIT_INPUT as u8);
                }
                None => RunOptions::default().cap,
            };
            let opts = RunOptions { witness, oracle, cap };
            let dir = file.parent().map(Path::to_path_buf).unwrap_or_default();
            let loader = |name: &str| std::fs::read_to_string(dir.join(name)).map_err(|e| format!("{name}: {e}"));
            let report = dsl::run(&doc, &opts, &loader);
            emit(&report.text());
            ExitCode::from(report.exit_code as u8)
        }
        Command::Axioms {
            theory,
            max_vertices,
            max_arrows,
            max_path_len,
        } => {
            let budget = Budget {
                max_vertices,
                max_arrows,
                max_path_len,
            };
            let th = match theory {
                TheoryArg::Tcat => tcat_axioms(budget),
                TheoryArg::Tab => tab_axioms(budget),
            };
            let mut text = format!("# {} budget {max_vertices} {max_arrows} {max_path_len}: {} instances\n", th.name, th.len());
            for a in &th.axioms {
                if a.params.is_empty() {
                    text += &format!("{}: {}\n", a.schema, a.formula);
                } else {
                    text += &format!("{}({}): {}\n", a.schema, a.params, a.formula);
                }
            }
            emit(&text);
            ExitCode::SUCCESS
        }
        Command::Dual { file } => match load(&file) {
            Ok(doc) => {
                emit(&dsl::dual_document(&doc).to_string());
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
    }
}
