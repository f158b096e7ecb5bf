//! `polarity-lab`: verification runs, Santaló solving, double-polar orbits and
//! figures for polarities with respect to a simplex.
//!
//! Exit status: 0 success, 1 verification failure, 2 parse or input error,
//! 3 solver failure.

mod error;
mod figure;
mod report;
mod scene;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::CliError;
use crate::figure::Which;
use crate::report::Output;
use crate::scene::{Mode, Scene};

#[derive(Parser, Debug)]
#[command(name = "polarity-lab", version, about = "Polarities with respect to a simplex")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Scene file; defaults to the standard triangle.
    #[arg(long, global = true)]
    scene: Option<PathBuf>,
    /// Number of random points for `verify`.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Output file; defaults to standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overrides the scene's MODE line.
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the four polars agree on random generic points.
    Verify,
    /// Draw an SVG figure of a planar construction.
    Figure {
        #[arg(long, value_enum, default_value_t = Which::Harmonic)]
        which: Which,
    },
    /// Locate the Santaló point of a polytope.
    Santalo {
        /// POLYTOPE name; defaults to the first one.
        #[arg(long)]
        body: Option<String>,
        /// Starting point, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
    },
    /// Iterate the double polar map and print a CSV of the orbit.
    Orbit {
        #[arg(long)]
        body: Option<String>,
        /// Starting point, comma separated; defaults to the centroid.
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
}

fn load(path: Option<&PathBuf>) -> Result<Scene, CliError> {
    match path {
        None => Ok(Scene::default()),
        Some(p) => std::fs::read_to_string(p)
            .map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?
            .parse(),
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let scene = load(cli.scene.as_ref())?;
    let mode = cli.mode.unwrap_or(scene.mode);
    match &cli.command {
        Command::Verify => report::verify(&scene, cli.samples, cli.seed, mode),
        Command::Figure { which } => Ok(Output {
            text: figure::figure(&scene, *which)?,
            code: 0,
            note: None,
        }),
        Command::Santalo { body, start } => report::santalo(&scene, body.as_deref(), start.as_deref(), mode),
        Command::Orbit { body, start, steps } => {
            report::orbit(&scene, body.as_deref(), start.as_deref(), *steps, mode)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("polarity-lab: {e}");
            if let CliError::Solver { log, .. } = &e {
                eprint!("{log}");
            }
            return e.exit_code();
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &output.text) {
                eprintln!("polarity-lab: {}: {e}", path.display());
                return ExitCode::from(error::EXIT_PARSE);
            }
        }
        None => print!("{}", output.text),
    }
    if let Some(note) = &output.note {
        eprintln!("polarity-lab: {note}");
    }
    ExitCode::from(output.code)
}
