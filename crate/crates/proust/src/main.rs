use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Parser, Subcommand};
use proust_core::syntax::Printer;
use proust_core::GlobalEnv;

mod repl;
mod serve;

/// A nano proof assistant: propositions are types, proofs are terms.
#[derive(Parser, Debug)]
#[command(name = "proust", version)]
struct Cli {
    /// Print `\`, `forall`, `/\` ... instead of Unicode glyphs.
    #[arg(long, global = true)]
    ascii: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Interactive session reading command forms from stdin.
    Repl,
    /// Run a `.pr` script; exits nonzero if any command fails.
    Check { file: PathBuf },
    /// Serve the JSON protocol over HTTP (or stdio with --stdio).
    Serve {
        #[arg(long, default_value_t = 7777)]
        port: u16,
        /// Persist each session as `<dir>/<session>.pr`.
        #[arg(long)]
        save: Option<PathBuf>,
        /// Static files (the browser UI) served at `/`.
        #[arg(long)]
        assets: Option<PathBuf>,
        /// Line-delimited JSON on stdin/stdout instead of HTTP.
        #[arg(long)]
        stdio: bool,
    },
    /// Decide a propositional formula by truth tables.
    Taut { formula: String },
}

const STACK_SIZE: usize = 256 << 20;

fn base_env() -> Result<GlobalEnv> {
    let env = GlobalEnv::new();
    match std::env::var("PROUST_STEP_BUDGET") {
        Ok(v) => {
            let n: u64 = v
                .trim()
                .parse()
                .with_context(|| format!("PROUST_STEP_BUDGET must be a number, got {v:?}"))?;
            Ok(env.with_step_budget(n))
        }
        Err(_) => Ok(env),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let printer = Printer::new(cli.ascii);
    let env = base_env()?;
    match cli.command {
        Cmd::Repl => repl::interactive(env, printer),
        Cmd::Check { file } => repl::check_file(env, printer, &file),
        Cmd::Serve {
            port,
            save,
            assets,
            stdio,
        } => {
            let mut store = proust_core::protocol::Store::new(env);
            if let Some(dir) = save {
                store = store
                    .with_save_dir(&dir)
                    .with_context(|| format!("cannot use {} as save directory", dir.display()))?;
            }
            if stdio {
                serve::stdio(store)
            } else {
                serve::http(store, port, assets, STACK_SIZE)
            }
        }
        Cmd::Taut { formula } => repl::taut(&formula, printer),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // Deeply nested terms recurse deeply; give the checker room.
    let worker = std::thread::Builder::new()
        .stack_size(STACK_SIZE)
        .spawn(move || run(cli))
        .expect("spawn main thread");
    match worker.join() {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("proust: {e:#}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(101),
    }
}
