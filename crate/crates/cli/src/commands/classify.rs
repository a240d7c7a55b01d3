use typea_core::classify;

use crate::emit::{to_pretty_json, write_text};
use crate::error::{CliError, CliResult};
use crate::model::load_constant;
use crate::opts::Flags;
use crate::report::VerdictJson;

pub fn run(args: &[String]) -> CliResult<()> {
    let flags = Flags::parse(args, &["tol", "output"])?;
    let [model_arg] = flags.positional() else {
        return Err(CliError::Input(
            "usage: typea classify <MODEL> [--tol T] [--output PATH]".into(),
        ));
    };
    let tol = flags.get_f64("tol", typea_core::DEFAULT_RANK_TOL)?;
    let (symbols, _) = load_constant(model_arg)?;
    let verdict = classify(&symbols, tol)?;
    let text = to_pretty_json(&VerdictJson::from_verdict(&verdict))?;
    write_text(flags.get("output"), &text)
}
