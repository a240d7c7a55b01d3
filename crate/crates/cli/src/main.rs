//! Command-line interface for completeness analysis of constant-Christoffel
//! planar affine models.
//!
//! Exit codes: 0 on success, 1 on input errors (bad flags, malformed model
//! documents, domain violations), 2 on numeric or internal-consistency
//! failures (including sweep disagreements).

mod commands;
mod emit;
mod error;
mod model;
mod opts;
mod report;
mod svg;

use std::process::ExitCode;

use error::{CliError, CliResult};

const USAGE: &str = "\
usage: typea <command> [args]

commands:
  classify <MODEL>        completeness verdict as JSON
  log-geodesics <MODEL>   nonzero solutions of the log-geodesic system
  ricci <MODEL>           Ricci tensor, derivative, rank/signature, invariants
  normalize <MODEL>       shear to a linearly isomorphic all-nonzero table
  integrate <MODEL>       geodesic integration to CSV or JSON
  flow <MODEL>            phase-field grid CSV (optional SVG with flow curves)
  moduli                  boundary curves and delta segment of the invariant plane
  sweep                   random-model agreement check: classifier vs integration

MODEL is a JSON document path, '-' for stdin, or builtin:<name> with
name one of m1, m2, m3, m-plus:<delta>, m-minus:<delta>
(integrate also accepts builtin:m3-tilde).

common flags: --tol T, --output PATH; see the project README for the rest.
";

fn dispatch(command: &str, rest: &[String]) -> CliResult<()> {
    match command {
        "classify" => commands::classify::run(rest),
        "log-geodesics" => commands::log_geodesics::run(rest),
        "ricci" => commands::ricci::run(rest),
        "normalize" => commands::normalize::run(rest),
        "integrate" => commands::integrate::run(rest),
        "flow" => commands::flow::run(rest),
        "moduli" => commands::moduli::run(rest),
        "sweep" => commands::sweep::run(rest),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            Ok(())
        }
        other => Err(CliError::Input(format!(
            "unknown command {other:?}\n{USAGE}"
        ))),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some((command, rest)) = args.split_first() else {
        eprint!("{USAGE}");
        return ExitCode::from(1);
    };
    match dispatch(command, rest) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("typea: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
