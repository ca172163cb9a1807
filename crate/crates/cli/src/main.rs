use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qpsurf_cli::{cmd_check, cmd_fuzz, cmd_river, cmd_validate, parse_document, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Parser)]
#[command(name = "qpsurf", about = "Exact checkers for surface divisor bounds")]
struct Cli {
    /// Report rendering: human text or line-delimited records.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every lattice and configuration invariant of a document.
    Validate { file: PathBuf },
    /// Check a bound: the dispatched one (auto) or a named one.
    Check {
        file: PathBuf,
        /// auto, conjecture, 2.1, 3.1, 4.5, 4.6, 4.9, 4.11, 4.22, 4.26,
        /// 4.27 or 5.5
        #[arg(long, default_value = "auto")]
        theorem: String,
    },
    /// Build the river over a base point and verify the identity on it.
    River {
        file: PathBuf,
        /// Base point to build the river over.
        #[arg(long)]
        point: String,
        /// Include a DOT rendering of the river.
        #[arg(long)]
        dot: bool,
    },
    /// Verify the river identity on seeded random blow-up plans.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        seeds: u64,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        /// Test-mode off-by-one injected into theta (mutation sentinel).
        #[arg(long, hide = true, default_value_t = 0)]
        theta_bias: i64,
    },
}

fn load(file: &PathBuf) -> Result<qpsurf_cli::InputDocument, Report> {
    let text = std::fs::read_to_string(file).map_err(|e| {
        let mut r = Report::new();
        r.exit_code = 2;
        r.push(
            qpsurf_cli::Record::new("error")
                .field("message", format!("cannot read {}: {e}", file.display())),
        );
        r
    })?;
    parse_document(&text).map_err(|e| {
        let mut r = Report::new();
        r.exit_code = 2;
        r.push(
            qpsurf_cli::Record::new("error")
                .field("file", file.display())
                .field("line", e.line)
                .field("message", &e.message),
        );
        r
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match &cli.command {
        Command::Validate { file } => load(file).map(|doc| cmd_validate(&doc)),
        Command::Check { file, theorem } => load(file).map(|doc| cmd_check(&doc, theorem)),
        Command::River { file, point, dot } => {
            load(file).map(|doc| cmd_river(&doc, point, *dot))
        }
        Command::Fuzz {
            seeds,
            depth,
            theta_bias,
        } => {
            let start = std::env::var("QPSURF_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
                .unwrap_or(0);
            Ok(cmd_fuzz(*seeds, *depth, *theta_bias, start))
        }
    };
    let report = match report {
        Ok(r) => r,
        Err(r) => r,
    };
    match cli.format {
        Format::Text => print!("{}", report.render_text()),
        Format::Machine => print!("{}", report.render_machine()),
    }
    ExitCode::from(report.exit_code as u8)
}
