use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hirzebruch_verify::cli::{cmd_bundle, cmd_formula, cmd_ledger, cmd_quadric, cmd_scroll};

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Parser)]
#[command(
    version,
    about = "Exact checks of section-ring, linear-system, bundle and ledger computations"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Audit the minimal-dimension formulas cell by cell.
    Formula {
        #[arg(long)]
        a_max: u32,
        #[arg(long)]
        b_max: u32,
        #[arg(long)]
        c_max: u32,
        /// Also run the exhaustive oracle where the section space is small.
        #[arg(long)]
        brute_force: bool,
    },
    /// Hypersurface containing a quadric surface.
    Quadric {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
    },
    /// Hypersurface containing a rational normal scroll.
    Scroll {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Cohomology and deformation ampleness of a bundle on a tree of lines.
    Bundle { file: PathBuf },
    /// Degree bookkeeping schedule.
    Ledger { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let report = match cli.command {
        Command::Formula {
            a_max,
            b_max,
            c_max,
            brute_force,
        } => cmd_formula(a_max, b_max, c_max, brute_force),
        Command::Quadric { d, n } => cmd_quadric(d, n),
        Command::Scroll { d, k, n } => cmd_scroll(d, k, n),
        Command::Bundle { file } => cmd_bundle(&file),
        Command::Ledger { file } => cmd_ledger(&file),
    };
    let rendered = match cli.format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_json(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(report.exit_status as u8)
}
