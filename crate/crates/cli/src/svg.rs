//! Deterministic SVG renderings: a fixed 800x800 canvas, fixed-precision
//! coordinates, and strictly input-ordered elements, so identical inputs
//! produce identical bytes. CSV remains the contract-bearing format; these
//! are companion figures.

use typea_core::{FieldSample, Window};

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 50.0;

const CURVE_COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let sx = (x - self.x_min) / (self.x_max - self.x_min);
        let sy = (y - self.y_min) / (self.y_max - self.y_min);
        (
            MARGIN + sx * (CANVAS - 2.0 * MARGIN),
            CANVAS - MARGIN - sy * (CANVAS - 2.0 * MARGIN),
        )
    }
}

fn header(out: &mut String) {
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{c}\" height=\"{c}\" viewBox=\"0 0 {c} {c}\">\n\
         <rect width=\"{c}\" height=\"{c}\" fill=\"white\"/>\n",
        c = CANVAS
    ));
}

fn axes(out: &mut String, frame: &Frame) {
    if frame.x_min < 0.0 && frame.x_max > 0.0 {
        let (x0, _) = frame.map(0.0, 0.0);
        out.push_str(&format!(
            "<line x1=\"{x0:.2}\" y1=\"{MARGIN:.2}\" x2=\"{x0:.2}\" y2=\"{:.2}\" \
             stroke=\"#cccccc\" stroke-width=\"1\"/>\n",
            CANVAS - MARGIN
        ));
    }
    if frame.y_min < 0.0 && frame.y_max > 0.0 {
        let (_, y0) = frame.map(0.0, 0.0);
        out.push_str(&format!(
            "<line x1=\"{MARGIN:.2}\" y1=\"{y0:.2}\" x2=\"{:.2}\" y2=\"{y0:.2}\" \
             stroke=\"#cccccc\" stroke-width=\"1\"/>\n",
            CANVAS - MARGIN
        ));
    }
}

fn polyline(out: &mut String, frame: &Frame, points: &[[f64; 2]], color: &str, width: f64) {
    if points.len() < 2 {
        return;
    }
    out.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"{width}\" points=\""
    ));
    for p in points {
        let (x, y) = frame.map(p[0], p[1]);
        out.push_str(&format!("{x:.2},{y:.2} "));
    }
    out.push_str("\"/>\n");
}

/// Field arrows plus overlaid flow curves.
pub fn flow_svg(grid: &[FieldSample], curves: &[Vec<[f64; 2]>], window: &Window) -> String {
    let frame = Frame {
        x_min: window.u_min,
        x_max: window.u_max,
        y_min: window.v_min,
        y_max: window.v_max,
    };
    let mut out = String::new();
    header(&mut out);
    axes(&mut out, &frame);

    let max_mag = grid
        .iter()
        .map(|s| (s.du * s.du + s.dv * s.dv).sqrt())
        .fold(0.0f64, f64::max);
    // Arrow length scales with the square root of relative magnitude, capped
    // near one grid cell.
    let n_side = (grid.len() as f64).sqrt().max(2.0);
    let cell = (CANVAS - 2.0 * MARGIN) / (n_side - 1.0);
    for s in grid {
        let mag = (s.du * s.du + s.dv * s.dv).sqrt();
        let (x, y) = frame.map(s.u, s.v);
        if mag == 0.0 || max_mag == 0.0 {
            out.push_str(&format!(
                "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"1.6\" fill=\"#444444\"/>\n"
            ));
            continue;
        }
        let len = 0.8 * cell * (mag / max_mag).sqrt();
        let (ux, uy) = (s.du / mag, -s.dv / mag);
        let (x2, y2) = (x + len * ux, y + len * uy);
        let (hx, hy) = (-ux, -uy);
        let head = 0.3 * len;
        out.push_str(&format!(
            "<path d=\"M {x:.2} {y:.2} L {x2:.2} {y2:.2} \
             M {x2:.2} {y2:.2} L {:.2} {:.2} M {x2:.2} {y2:.2} L {:.2} {:.2}\" \
             stroke=\"#888888\" stroke-width=\"1\" fill=\"none\"/>\n",
            x2 + head * (hx * 0.866 - hy * 0.5),
            y2 + head * (hy * 0.866 + hx * 0.5),
            x2 + head * (hx * 0.866 + hy * 0.5),
            y2 + head * (hy * 0.866 - hx * 0.5),
        ));
    }

    for (i, curve) in curves.iter().enumerate() {
        polyline(
            &mut out,
            &frame,
            curve,
            CURVE_COLORS[i % CURVE_COLORS.len()],
            1.8,
        );
    }
    out.push_str("</svg>\n");
    out
}

/// The invariant-plane figure: the two boundary curves and the segment of
/// complete indefinite models.
pub fn moduli_svg(
    plus: &[[f64; 2]],
    minus: &[[f64; 2]],
    segment: &[[f64; 2]],
) -> String {
    let all = plus.iter().chain(minus.iter()).chain(segment.iter());
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for p in all {
        x_min = x_min.min(p[0]);
        x_max = x_max.max(p[0]);
        y_min = y_min.min(p[1]);
        y_max = y_max.max(p[1]);
    }
    let pad_x = 0.05 * (x_max - x_min).max(1.0);
    let pad_y = 0.05 * (y_max - y_min).max(1.0);
    let frame = Frame {
        x_min: x_min - pad_x,
        x_max: x_max + pad_x,
        y_min: y_min - pad_y,
        y_max: y_max + pad_y,
    };
    let mut out = String::new();
    header(&mut out);
    axes(&mut out, &frame);
    polyline(&mut out, &frame, plus, CURVE_COLORS[0], 1.8);
    polyline(&mut out, &frame, minus, CURVE_COLORS[1], 1.8);
    polyline(&mut out, &frame, segment, "#000000", 4.0);
    out.push_str("</svg>\n");
    out
}
