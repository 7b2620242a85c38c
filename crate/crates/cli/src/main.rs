mod args;
mod commands;
mod config;
mod selftest;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cmpl_core::Error;

use args::{Cli, Command, Common};

pub(crate) fn split(c: &Command) -> (&'static str, &Common) {
    match c {
        Command::Cmpl(a) => ("cmpl", a),
        Command::Cmspl(a) => ("cmspl", a),
        Command::LogCoeffs(a) => ("log-coeffs", a),
        Command::LogEval(a) => ("log-eval", a),
        Command::Continue(a) => ("continue", a),
        Command::Torsion(a) => ("torsion", a),
        Command::Check(a) => ("check", a),
        Command::Euler(a) => ("euler", a),
        Command::Zeta(a) => ("zeta", a),
        Command::TmoduleShow(a) => ("tmodule-show", a),
        Command::Selftest(a) => ("selftest", a),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(commands::exit_code(e) as u8)
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| Error::InvalidInput(format!("writing {}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            writeln!(so, "{text}").map_err(|e| Error::InvalidInput(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    // `cmpl eval <kind> …` is the same as `cmpl <kind> …`
    let mut argv: Vec<String> = std::env::args().collect();
    if argv.get(1).map(String::as_str) == Some("eval") {
        argv.remove(1);
    }
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (name, common) = split(&cli.command);
    let mut common = common.clone();
    if let Some(path) = common.config.clone() {
        if let Err(e) = config::load(&path).and_then(|m| common.merge(&m)) {
            return fail(&e);
        }
    }
    if name == "selftest" {
        let res = selftest::run(
            common.filter.as_deref(),
            common.fixtures.as_deref(),
            common.seed.unwrap_or(0),
            common.jobs,
        );
        return match res {
            Ok(outcomes) => {
                let table = selftest::table(&outcomes);
                if let Err(e) = emit(table.trim_end(), common.out.as_deref()) {
                    return fail(&e);
                }
                if outcomes.iter().any(|o| o.error.is_some()) {
                    ExitCode::from(1)
                } else {
                    ExitCode::SUCCESS
                }
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        };
    }
    match commands::run(name, &common) {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
            match emit(&text, common.out.as_deref()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(&e),
            }
        }
        Err(e) => fail(&e),
    }
}
