use typea_core::{log_geodesic_solutions, WITNESS_TOL};

use crate::emit::{to_pretty_json, write_text};
use crate::error::{CliError, CliResult};
use crate::model::load_constant;
use crate::opts::Flags;
use crate::report::WitnessJson;

pub fn run(args: &[String]) -> CliResult<()> {
    let flags = Flags::parse(args, &["tol", "output"])?;
    let [model_arg] = flags.positional() else {
        return Err(CliError::Input(
            "usage: typea log-geodesics <MODEL> [--tol T] [--output PATH]".into(),
        ));
    };
    let tol = flags.get_f64("tol", WITNESS_TOL)?;
    let (symbols, _) = load_constant(model_arg)?;
    let solutions = log_geodesic_solutions(&symbols, tol);
    let rows: Vec<WitnessJson> = solutions.iter().map(WitnessJson::from).collect();
    let text = to_pretty_json(&rows)?;
    write_text(flags.get("output"), &text)
}
