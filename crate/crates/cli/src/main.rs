//! `hdo`: sweeps, convergence studies and bound checks for D-dimensional oscillator states.

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{CommandFactory, Parser};
use hdo_core::QuadratureSpec;

use args::{Cli, Command, OutputArgs};
use commands::Context;
use table::Provenance;

const TOL_ENV: &str = "OSC_DEFAULT_TOL";

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments: exit 2.
    Usage(String),
    /// Quadrature failure or non-finite result: exit 3.
    Numeric(String),
    Io(io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "invalid arguments: {m}"),
            CliError::Numeric(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

fn resolve_tol(arg: Option<f64>) -> Result<f64, CliError> {
    if let Some(t) = arg {
        return Ok(t);
    }
    match std::env::var(TOL_ENV) {
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .map_err(|e| CliError::Usage(format!("{TOL_ENV}=`{v}`: {e}"))),
        Err(_) => Ok(QuadratureSpec::default().target_rel_tol),
    }
}

fn context(o: &OutputArgs) -> Result<(Context, f64), CliError> {
    let tol = resolve_tol(o.tol)?;
    let spec = QuadratureSpec::with_tol(tol);
    spec.validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if o.parallelism == 0 {
        return Err(CliError::Usage("--parallelism must be >= 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(o.parallelism)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    Ok((Context { spec, pool }, tol))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (name, output) = (cli.command.name(), cli.command.output());
    let (ctx, tol) = context(output)?;
    let table = match &cli.command {
        Command::Moments(a) => commands::moments(a, &ctx),
        Command::Renyi(a) => commands::renyi(a, &ctx),
        Command::Shannon(a) => commands::shannon_cmd(a, &ctx),
        Command::Asym(a) => commands::asym(a, &ctx),
        Command::Sums(a) => commands::sums(a, &ctx),
        Command::Converge(a) => commands::converge(a, &ctx),
    }?;
    table.check_finite()?;
    let prov = Provenance {
        program: "hdo".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: name.into(),
        args: std::env::args().skip(1).collect(),
        tol,
        parallelism: output.parallelism,
    };
    let mut sink: Box<dyn Write> = match &output.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(CliError::Io)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    table
        .write(&mut *sink, output.format, &prov)
        .map_err(CliError::Io)?;
    sink.flush().map_err(CliError::Io)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hdo: {e}");
            if matches!(e, CliError::Usage(_)) {
                let mut cmd = Cli::command();
                cmd.build();
                if let Some(sub) = cmd.find_subcommand_mut(cli.command.name()) {
                    eprintln!("\n{}", sub.render_usage());
                }
            }
            ExitCode::from(e.code())
        }
    }
}
