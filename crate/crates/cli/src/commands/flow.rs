use typea_core::{field_grid, flow_integrate, OdeOptions, Window};

use crate::emit::write_text;
use crate::error::{CliError, CliResult};
use crate::model::load_constant;
use crate::opts::Flags;
use crate::svg::flow_svg;

/// Flow-curve seeds used for the figure when no seed file is given: a
/// deterministic ring plus points near the vertical axis of fixed points.
fn default_seeds(window: &Window) -> Vec<[f64; 2]> {
    let r = 0.45 * (window.u_max - window.u_min).min(window.v_max - window.v_min);
    let cx = 0.5 * (window.u_min + window.u_max);
    let cy = 0.5 * (window.v_min + window.v_max);
    let mut seeds = Vec::new();
    for k in 0..12 {
        let theta = std::f64::consts::PI * k as f64 / 6.0;
        seeds.push([cx + r * theta.cos(), cy + r * theta.sin()]);
    }
    seeds
}

fn parse_seed_file(path: &str) -> CliResult<Vec<[f64; 2]>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read seed file {path:?}: {e}")))?;
    let mut seeds = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 2 {
            return Err(CliError::Input(format!(
                "seed file {path:?} line {}: expected \"u,v\"",
                lineno + 1
            )));
        }
        let u: f64 = parts[0].trim().parse().map_err(|_| {
            CliError::Input(format!("seed file {path:?} line {}: bad number", lineno + 1))
        })?;
        let v: f64 = parts[1].trim().parse().map_err(|_| {
            CliError::Input(format!("seed file {path:?} line {}: bad number", lineno + 1))
        })?;
        seeds.push([u, v]);
    }
    Ok(seeds)
}

pub fn run(args: &[String]) -> CliResult<()> {
    let flags = Flags::parse(
        args,
        &["window", "grid-n", "curves", "svg", "t-max", "tol", "output"],
    )?;
    let [model_arg] = flags.positional() else {
        return Err(CliError::Input(
            "usage: typea flow <MODEL> [--window UMIN:UMAX:VMIN:VMAX] [--grid-n N] \
             [--curves FILE] [--svg PATH] [--t-max T] [--output PATH]"
                .into(),
        ));
    };
    let (symbols, _) = load_constant(model_arg)?;
    let w = flags.get_window("window", [-2.0, 2.0, -2.0, 2.0])?;
    let window = Window {
        u_min: w[0],
        u_max: w[1],
        v_min: w[2],
        v_max: w[3],
    };
    let n = flags.get_usize("grid-n", 21)?;
    let t_max = flags.get_f64("t-max", 10.0)?;
    if t_max <= 0.0 {
        return Err(CliError::Input("--t-max must be positive".into()));
    }
    let tol = flags.get_f64("tol", 1e-10)?;

    let grid = field_grid(&symbols, &window, n)?;

    let mut csv = String::from("u,v,du,dv\n");
    for s in &grid {
        csv.push_str(&format!("{},{},{},{}\n", s.u, s.v, s.du, s.dv));
    }
    write_text(flags.get("output"), &csv)?;

    if let Some(svg_path) = flags.get("svg") {
        let seeds = match flags.get("curves") {
            Some(path) => parse_seed_file(path)?,
            None => default_seeds(&window),
        };
        let opts = OdeOptions {
            rel_tol: tol,
            abs_tol: tol,
            ..OdeOptions::default()
        };
        let mut curves = Vec::with_capacity(seeds.len());
        for seed in seeds {
            // Both time directions, stitched through the seed point.
            let backward = flow_integrate(&symbols, seed, (0.0, -t_max), &opts)?;
            let forward = flow_integrate(&symbols, seed, (0.0, t_max), &opts)?;
            let mut pts: Vec<[f64; 2]> = backward
                .samples
                .iter()
                .rev()
                .map(|(_, p)| *p)
                .collect();
            pts.extend(forward.samples.iter().skip(1).map(|(_, p)| *p));
            // Clip wildly escaping points so the figure frame stays useful.
            let big = 10.0 * (window.u_max - window.u_min).abs().max(1.0);
            pts.retain(|p| p[0].abs() <= big && p[1].abs() <= big);
            curves.push(pts);
        }
        write_text(Some(svg_path), &flow_svg(&grid, &curves, &window))?;
    }
    Ok(())
}
