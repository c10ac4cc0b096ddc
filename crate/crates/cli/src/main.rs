mod cli;
mod config;
mod run;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;
use tycat_core::Error;

use cli::{Cli, Command, TyCmd, WittCmd};
use run::{Ctx, Failure};

const EXIT_MISMATCH: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_PARSE: u8 = 4;

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. } | Error::OrderCapExceeded { .. } | Error::ClosureCapExceeded { .. }) => EXIT_CAP,
        Some(
            Error::Parse { .. }
            | Error::InvalidGroup(_)
            | Error::InvalidElement(_)
            | Error::InvalidHom(_)
            | Error::InvalidForm(_)
            | Error::Degree(_),
        ) => EXIT_PARSE,
        Some(Error::Certificate(_)) => EXIT_MISMATCH,
        _ => 1,
    }
}

fn scenario(c: &Command) -> &'static str {
    match c {
        Command::Witt(WittCmd::Order(_)) => "witt-order",
        Command::Witt(WittCmd::Equal { .. }) => "witt-equal",
        Command::Witt(WittCmd::Classify { .. }) => "witt-classify",
        Command::Witt(WittCmd::Group(_)) => "witt-group",
        Command::Witt(WittCmd::Show(_)) => "witt-show",
        Command::Cohomology(_) => "cohomology",
        Command::Ty(TyCmd::Classify(_)) | Command::TyClassify(_) => "ty-classify",
        Command::Ty(TyCmd::Forms(_)) | Command::TyForms(_) => "ty-forms",
        Command::FusionTable(_) => "fusion-table",
        Command::VerifyAll => "verify-all",
        Command::CheckCert { .. } => "check-cert",
    }
}

/// Runs the command; returns the report and the exit status it implies.
fn dispatch(cli: &Cli, settings: &config::Settings) -> anyhow::Result<(run::RunReport, u8)> {
    let mut ctx = Ctx::new(settings);
    let mut worst = 0;
    let result = match &cli.command {
        Command::Witt(WittCmd::Order(a)) => run::witt_order(&mut ctx, a)?,
        Command::Witt(WittCmd::Equal {
            left,
            right,
            mod_witt,
        }) => run::witt_equal(&mut ctx, left, right, *mod_witt)?,
        Command::Witt(WittCmd::Classify { items }) => run::witt_classify(&mut ctx, items)?,
        Command::Witt(WittCmd::Group(a)) => run::witt_group(&mut ctx, a)?,
        Command::Witt(WittCmd::Show(a)) => run::witt_show(&mut ctx, a)?,
        Command::Cohomology(a) => run::cohomology(&mut ctx, a)?,
        Command::Ty(TyCmd::Classify(a)) | Command::TyClassify(a) => run::ty_classify(&mut ctx, a)?,
        Command::Ty(TyCmd::Forms(a)) | Command::TyForms(a) => run::ty_forms(&mut ctx, a)?,
        Command::FusionTable(a) => run::fusion_table(&mut ctx, a)?,
        Command::VerifyAll => {
            let (v, failures) = run::verify_all(&mut ctx)?;
            for f in &failures {
                let code = match f {
                    Failure::Criterion => EXIT_MISMATCH,
                    Failure::Error(e) => exit_code(&anyhow::Error::new(e.clone())),
                };
                worst = worst.max(code);
            }
            v
        }
        Command::CheckCert { file } => run::check_cert(&mut ctx, file)?,
    };
    let report = ctx.finish(scenario(&cli.command), result);
    if !report.mismatches.is_empty() {
        worst = worst.max(EXIT_MISMATCH);
    }
    Ok((report, worst))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    let json_requested = cli.global.json;
    let outcome = config::resolve(&cli.global)
        .map_err(anyhow::Error::from)
        .and_then(|s| dispatch(&cli, &s).map(|r| (r, s.json)));
    match outcome {
        Ok(((report, code), json)) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", report.text);
                for m in &report.mismatches {
                    println!("MISMATCH {m}");
                }
            }
            ExitCode::from(code)
        }
        Err(e) => {
            let code = exit_code(&e);
            if json_requested {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"error": e.to_string(), "exit": code}))
                        .expect("error serializes")
                );
            }
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
