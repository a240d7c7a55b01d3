use crate::emit::write_text;
use crate::error::{CliError, CliResult};
use crate::opts::Flags;
use crate::svg::moduli_svg;

/// Boundary curves of the indefinite-signature moduli region:
/// `sigma_pm(t) = (±4t^2 ± 1/t^2 + 2, 4t^4 ± 4t^2 + 2)` for `t > 0`.
fn sigma_plus(t: f64) -> [f64; 2] {
    [
        4.0 * t * t + 1.0 / (t * t) + 2.0,
        4.0 * t.powi(4) + 4.0 * t * t + 2.0,
    ]
}

fn sigma_minus(t: f64) -> [f64; 2] {
    [
        -4.0 * t * t - 1.0 / (t * t) + 2.0,
        4.0 * t.powi(4) - 4.0 * t * t + 2.0,
    ]
}

/// The complete indefinite family traces the segment
/// `(Sigma, Psi) = (-3 + 2 delta^2, 2)`.
fn delta_segment(delta: f64) -> [f64; 2] {
    [-3.0 + 2.0 * delta * delta, 2.0]
}

pub fn run(args: &[String]) -> CliResult<()> {
    let flags = Flags::parse(args, &["t-range", "delta-range", "n", "svg", "output"])?;
    if !flags.positional().is_empty() {
        return Err(CliError::Input(
            "usage: typea moduli [--t-range A:B] [--delta-range A:B] [--n N] \
             [--svg PATH] [--output PATH]"
                .into(),
        ));
    }
    let (t0, t1) = flags.get_range("t-range", (0.5, 2.0))?;
    let (d0, d1) = flags.get_range("delta-range", (0.0, 2.0))?;
    let n = flags.get_usize("n", 101)?;
    if t0 <= 0.0 || t1 <= 0.0 || t1 <= t0 {
        return Err(CliError::Input(format!(
            "--t-range must satisfy 0 < A < B, got {t0}:{t1}"
        )));
    }
    if d0 < 0.0 || d1 <= d0 {
        return Err(CliError::Input(format!(
            "--delta-range must satisfy 0 <= A < B, got {d0}:{d1}"
        )));
    }
    if n < 2 {
        return Err(CliError::Input("--n must be at least 2".into()));
    }

    let sample = |lo: f64, hi: f64, k: usize| lo + (hi - lo) * k as f64 / (n - 1) as f64;
    let plus: Vec<(f64, [f64; 2])> = (0..n)
        .map(|k| {
            let t = sample(t0, t1, k);
            (t, sigma_plus(t))
        })
        .collect();
    let minus: Vec<(f64, [f64; 2])> = (0..n)
        .map(|k| {
            let t = sample(t0, t1, k);
            (t, sigma_minus(t))
        })
        .collect();
    let segment: Vec<(f64, [f64; 2])> = (0..n)
        .map(|k| {
            let d = sample(d0, d1, k);
            (d, delta_segment(d))
        })
        .collect();

    let mut csv = String::new();
    csv.push_str("# boundary curves: sigma = +/-4t^2 +/- 1/t^2 + 2, psi = 4t^4 +/- 4t^2 + 2\n");
    csv.push_str("# delta segment: (sigma, psi) = (-3 + 2*delta^2, 2)\n");
    csv.push_str("branch,t,sigma,psi\n");
    for (t, p) in &plus {
        csv.push_str(&format!("plus,{},{},{}\n", t, p[0], p[1]));
    }
    for (t, p) in &minus {
        csv.push_str(&format!("minus,{},{},{}\n", t, p[0], p[1]));
    }
    for (d, p) in &segment {
        csv.push_str(&format!("delta,{},{},{}\n", d, p[0], p[1]));
    }
    write_text(flags.get("output"), &csv)?;

    if let Some(svg_path) = flags.get("svg") {
        let plus_pts: Vec<[f64; 2]> = plus.iter().map(|(_, p)| *p).collect();
        let minus_pts: Vec<[f64; 2]> = minus.iter().map(|(_, p)| *p).collect();
        let seg_pts: Vec<[f64; 2]> = segment.iter().map(|(_, p)| *p).collect();
        write_text(Some(svg_path), &moduli_svg(&plus_pts, &minus_pts, &seg_pts))?;
    }
    Ok(())
}
