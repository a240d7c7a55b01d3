use typea_core::{invariants_sigma_psi, ricci_report};

use crate::emit::{to_pretty_json, write_text};
use crate::error::{CliError, CliResult};
use crate::model::load_constant;
use crate::opts::Flags;
use crate::report::RicciJson;

pub fn run(args: &[String]) -> CliResult<()> {
    let flags = Flags::parse(args, &["tol", "output"])?;
    let [model_arg] = flags.positional() else {
        return Err(CliError::Input(
            "usage: typea ricci <MODEL> [--tol T] [--output PATH]".into(),
        ));
    };
    let tol = flags.get_f64("tol", typea_core::DEFAULT_RANK_TOL)?;
    let (symbols, _) = load_constant(model_arg)?;
    let report = ricci_report(&symbols, tol);
    let sigma_psi = if report.rank == 2 {
        Some(invariants_sigma_psi(&symbols, tol)?)
    } else {
        None
    };
    let text = to_pretty_json(&RicciJson::new(&report, sigma_psi))?;
    write_text(flags.get("output"), &text)
}
