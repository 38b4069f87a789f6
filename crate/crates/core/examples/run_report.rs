//! Produces the structured report of a subcommand from library code.

use hirzebruch_verify::cli::cmd_quadric;

fn main() {
    let report = cmd_quadric(3, 8);
    print!("{}", report.to_json());
    std::process::exit(report.exit_status);
}
