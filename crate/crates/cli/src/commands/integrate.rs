use typea_core::{integrate, GeodesicState, OdeOptions};

use crate::emit::{to_pretty_json, write_text};
use crate::error::{CliError, CliResult};
use crate::model::load_kind;
use crate::opts::Flags;
use crate::report::{escape_value, termination_str, TrajectoryJson};

pub fn run(args: &[String]) -> CliResult<()> {
    let flags = Flags::parse(
        args,
        &["x0", "v0", "t0", "t1", "tol", "format", "output"],
    )?;
    let [model_arg] = flags.positional() else {
        return Err(CliError::Input(
            "usage: typea integrate <MODEL> --x0 A,B --v0 C,D --t0 T0 --t1 T1 \
             [--tol T] [--format csv|json] [--output PATH]"
                .into(),
        ));
    };
    let (kind, _) = load_kind(model_arg)?;
    let x0 = flags
        .get_pair("x0")?
        .ok_or_else(|| CliError::Input("--x0 A,B is required".into()))?;
    let v0 = flags
        .get_pair("v0")?
        .ok_or_else(|| CliError::Input("--v0 C,D is required".into()))?;
    let t0 = flags.get_f64("t0", 0.0)?;
    let t1 = flags
        .get_f64("t1", f64::NAN)
        .and_then(|v| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(CliError::Input("--t1 is required".into()))
            }
        })?;
    let tol = flags.get_f64("tol", 1e-10)?;
    let opts = OdeOptions {
        rel_tol: tol,
        abs_tol: tol,
        ..OdeOptions::default()
    };
    let s0 = GeodesicState { x: x0, v: v0 };
    let traj = integrate(&kind, &s0, (t0, t1), &opts)?;

    let text = match flags.get("format").unwrap_or("csv") {
        "json" => to_pretty_json(&TrajectoryJson::new(&traj))?,
        "csv" => {
            let mut out = String::from("t,x1,x2,v1,v2\n");
            for s in &traj.samples {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    s.t, s.x[0], s.x[1], s.v[0], s.v[1]
                ));
            }
            let escape = match escape_value(&traj.termination) {
                Some(e) => format!("{e}"),
                None => "none".to_string(),
            };
            out.push_str(&format!(
                "# termination={} escape={}\n",
                termination_str(&traj.termination),
                escape
            ));
            out
        }
        other => {
            return Err(CliError::Input(format!(
                "unknown format {other:?}; use csv or json"
            )))
        }
    };
    write_text(flags.get("output"), &text)
}
