use std::path::PathBuf;
use std::process::ExitCode;

use ambientforge::suites::Suite;
use ambientforge::{exit, run, Format, VerifyArgs};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "ambientforge", version, about = "Exact verification of the ambient G2 construction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        /// Suite to run; may instead come from the config.
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        /// Series order for fg-series.
        #[arg(long)]
        order: Option<usize>,
        /// Covariant derivative depth for holonomy.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report format [default: json]
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT_ERROR } else { exit::PASS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let Command::Verify { suite, order, depth, config, out, format } = cli.command;
    ExitCode::from(run(&VerifyArgs { suite, order, depth, config, out, format }) as u8)
}
