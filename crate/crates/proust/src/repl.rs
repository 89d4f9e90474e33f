use std::io::{self, BufRead, IsTerminal, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use proust_core::script::{open_depth, Runner};
use proust_core::semantics;
use proust_core::syntax::Printer;
use proust_core::GlobalEnv;

const PROMPT: &str = "> ";

pub fn interactive(env: GlobalEnv, printer: Printer) -> Result<ExitCode> {
    let stdin = io::stdin();
    let tty = stdin.is_terminal();
    let mut out = io::stdout().lock();
    let mut runner = Runner::new(env, printer);
    let mut pending = String::new();
    if tty {
        write!(out, "{PROMPT}")?;
        out.flush()?;
    }
    for line in stdin.lock().lines() {
        let line = line?;
        if pending.is_empty() && matches!(line.trim(), ":quit" | ":q") {
            return Ok(ExitCode::SUCCESS);
        }
        pending.push_str(&line);
        pending.push('\n');
        if open_depth(&pending) > 0 {
            continue;
        }
        let src = std::mem::take(&mut pending);
        match runner.run_script(&src) {
            Ok(steps) => {
                for step in steps {
                    writeln!(out, "{}", step.output())?;
                }
            }
            Err(e) => writeln!(out, "error: {e}")?,
        }
        if tty {
            write!(out, "{PROMPT}")?;
        }
        out.flush()?;
    }
    if !pending.trim().is_empty() {
        writeln!(out, "error: unbalanced parentheses at end of input")?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn check_file(env: GlobalEnv, printer: Printer, path: &Path) -> Result<ExitCode> {
    let src = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let mut runner = Runner::new(env, printer);
    let steps = runner
        .run_script(&src)
        .with_context(|| format!("{} is not a well-formed script", path.display()))?;
    let mut failures = 0;
    let mut out = io::stdout().lock();
    for step in &steps {
        match &step.result {
            Ok(text) => writeln!(out, "{text}")?,
            Err(e) => {
                failures += 1;
                writeln!(out, "error: {e}")?;
                eprintln!("{}: {} failed: {e}", path.display(), step.input);
            }
        }
    }
    if failures == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{failures} of {} command(s) failed", steps.len());
        Ok(ExitCode::FAILURE)
    }
}

pub fn taut(formula: &str, printer: Printer) -> Result<ExitCode> {
    let report = semantics::taut(formula)?;
    let shown = printer.print(&report.formula.to_expr());
    match report.countermodel {
        None => {
            println!("{shown} is a tautology");
            Ok(ExitCode::SUCCESS)
        }
        Some(v) => {
            let cm: Vec<String> = v.iter().map(|(a, b)| format!("{a} = {b}")).collect();
            println!("{shown} is not a tautology; countermodel: {}", cm.join(", "));
            Ok(ExitCode::FAILURE)
        }
    }
}
