//! `ncmseg`: batch fluid segmentation of OCT B-scans.
//!
//! Exit codes: 0 success, 1 usage/configuration error, 2 I/O or dataset
//! error, 3 numeric failure.

mod commands;
mod config;
mod error;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "ncmseg",
    version,
    about = "Neutrosophic c-means fluid segmentation for OCT B-scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Segment one B-scan into a fluid mask.
    Segment(commands::SegmentArgs),
    /// Segment a whole dataset and score it against an expert.
    Evaluate(commands::EvaluateArgs),
    /// Write the truth/indeterminacy/falsity maps of an image.
    Transform(commands::TransformArgs),
    /// Generate a synthetic B-scan with its ground-truth mask.
    Phantom(commands::PhantomArgs),
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let outcome = match &cli.command {
        Command::Segment(a) => commands::segment(a),
        Command::Evaluate(a) => commands::evaluate(a),
        Command::Transform(a) => commands::transform(a),
        Command::Phantom(a) => commands::phantom(a),
    };
    if let Err(e) = outcome {
        eprintln!("ncmseg: {e}");
        std::process::exit(e.exit_code());
    }
}
