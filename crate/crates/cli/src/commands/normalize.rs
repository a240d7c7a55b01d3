use typea_core::normalize_generic;

use crate::emit::{to_pretty_json, write_text};
use crate::error::{CliError, CliResult};
use crate::model::{load_constant, ModelDocument};
use crate::opts::Flags;
use crate::report::NormalizeJson;

pub fn run(args: &[String]) -> CliResult<()> {
    let flags = Flags::parse(args, &["seed", "output"])?;
    let [model_arg] = flags.positional() else {
        return Err(CliError::Input(
            "usage: typea normalize <MODEL> [--seed N] [--output PATH]".into(),
        ));
    };
    let seed = flags.get_u64("seed", 0)?;
    let (symbols, name) = load_constant(model_arg)?;
    let (moved, map) = normalize_generic(&symbols, seed)?;
    let out = NormalizeJson {
        model: ModelDocument::from_symbols(&moved, name),
        transform: [[map.t11, map.t12], [map.t21, map.t22]],
        min_abs_entry: moved.min_abs(),
        max_abs_entry: moved.max_abs(),
    };
    let text = to_pretty_json(&out)?;
    write_text(flags.get("output"), &text)
}
