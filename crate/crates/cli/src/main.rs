mod args;
mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use args::{Cli, Command, Format, Output};

fn emit(v: &Value, out: &Output) -> std::io::Result<()> {
    let text = match out.format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Text => render::to_text(v),
    };
    match &out.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn run(cli: Cli) -> Result<(), ExitCode> {
    let (result, output) = match cli.command {
        Command::Kernel { d, beta, inner, x, y, oracle, res, tol, output } => (
            commands::kernel(d, beta, inner, x.as_deref(), y.as_deref(), oracle, res, tol),
            output,
        ),
        Command::Wce { source, beta, quadrature, t_nodes, output } => {
            (commands::wce(&source, beta, quadrature, t_nodes), output)
        }
        Command::Invariance { source, beta, res, t_nodes, output } => {
            (commands::invariance(&source, beta, res, t_nodes), output)
        }
        Command::Design { source, t_max, tol, output } => (commands::design(&source, t_max, tol), output),
        Command::Expand { d, beta, k, output } => (commands::expand(d, beta, k), output),
        Command::Mean { d, beta, output } => (commands::mean(d, beta), output),
        Command::Gen { source, out } => {
            let written = commands::load_source(&source).and_then(|ps| match &out {
                Some(path) => sphkern::spheregeom::save_pointset(&ps, path),
                None => {
                    print!("{}", sphkern::spheregeom::write_pointset(&ps));
                    Ok(())
                }
            });
            return written.map_err(fail);
        }
    };
    let value = result.map_err(fail)?;
    emit(&value, &output).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}

fn fail(e: sphkern::Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_numerical() { 1 } else { 2 })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
