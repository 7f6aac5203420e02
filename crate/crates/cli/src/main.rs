mod commands;
mod config;
mod formats;
mod output;

use std::process::ExitCode;

use anyhow::{ensure, Result};
use clap::Parser;
use scatpoly::FieldCtx;

use config::{Cli, Command};
use output::{emit, Header};

/// Exit statuses: 0 all checks passed, 1 a check failed, 2 invalid input,
/// 3 a budget was exceeded, 4 anything else.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<scatpoly::Error>() {
        Some(scatpoly::Error::Resource(_)) => 3,
        Some(scatpoly::Error::SelfCheck(_)) => 1,
        Some(_) => 2,
        None if e.downcast_ref::<std::io::Error>().is_some() => 4,
        None => 2,
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let cmd = &cli.command;
    let fa = cmd.field();
    ensure!(fa.t >= 1, "t must be positive");
    let field = FieldCtx::new(fa.p, fa.eps, 2 * fa.t)?;
    let t = fa.t as usize;
    let r = cmd.run();
    rayon::ThreadPoolBuilder::new().num_threads(r.workers.max(1)).build_global()?;
    let report = match cmd {
        Command::SweepM { j, m_index, .. } => commands::sweep_m(&field, t, *j, *m_index, r.budget)?,
        Command::Stabilizer { poly, .. } => {
            let (g, params) = commands::select_poly(&field, t, poly)?;
            commands::stabilizer(&field, &g, params)?
        }
        Command::Equiv { families, .. } => {
            ensure!(families.len() == 2, "equiv takes exactly two --family arguments, got {}", families.len());
            let f = families[0].build(&field)?;
            let g = families[1].build(&field)?;
            commands::equiv(&field, &f, &g, r.budget)?
        }
        Command::RankSpectrum { poly, .. } => {
            let (g, _) = commands::select_poly(&field, t, poly)?;
            commands::rank_spectrum(&field, &g, r.budget)?
        }
        Command::Weights { poly, .. } => {
            let (g, _) = commands::select_poly(&field, t, poly)?;
            commands::weights(&field, &g, r.budget)?
        }
        Command::Witness { .. } => commands::witness(&field, t)?,
        Command::FieldInfo { .. } => commands::field_info(&field)?,
    };
    let header = Header {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        field: formats::field_descriptor(&field),
        config: cmd.echo(),
    };
    emit(&report.render(&header, r.format)?, r.out.as_deref())?;
    for f in &report.failures {
        eprintln!("check failed: {f}");
    }
    Ok(report.ok())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
