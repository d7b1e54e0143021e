//! Static SVG rendering of atlas sweeps and obstruction-curve overlays.
//!
//! Output is deterministic (fixed float formatting, stable ordering) so
//! repeated runs produce byte-identical files.

use std::fmt::Write as _;

use gaborframe_core::atlas::{AtlasCell, RegionLabel};
use gaborframe_core::obstructions::ObstructionCurve;
use gaborframe_core::rat::{to_f64, Rat};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 540.0;
const MARGIN: f64 = 48.0;

fn color(label: &RegionLabel) -> &'static str {
    match label {
        RegionLabel::NotFrameAGeN => "#7f1d1d",
        RegionLabel::NotFrameAbGe1 => "#b91c1c",
        RegionLabel::NotFrameBInteger => "#f87171",
        RegionLabel::FrameBSmall => "#14532d",
        RegionLabel::FrameRegionB => "#16a34a",
        RegionLabel::FramePropIvK { .. } => "#4ade80",
        RegionLabel::FramePropV { .. } => "#2dd4bf",
        RegionLabel::FramePropVi { .. } => "#0ea5e9",
        RegionLabel::FrameOversampling { .. } => "#a3e635",
        RegionLabel::ConditionalOnStrip { .. } => "#eab308",
        RegionLabel::Unknown => "#d1d5db",
    }
}

struct Frame {
    a_min: f64,
    a_max: f64,
    b_min: f64,
    b_max: f64,
}

impl Frame {
    fn x(&self, a: f64) -> f64 {
        MARGIN + (a - self.a_min) / (self.a_max - self.a_min) * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, b: f64) -> f64 {
        // SVG y axis points down.
        HEIGHT - MARGIN - (b - self.b_min) / (self.b_max - self.b_min) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(out, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
}

fn axes(out: &mut String, f: &Frame) {
    let _ = writeln!(
        out,
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>",
        MARGIN,
        MARGIN,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">a: {:.3} .. {:.3}</text>",
        MARGIN,
        HEIGHT - MARGIN / 3.0,
        f.a_min,
        f.a_max
    );
    let _ = writeln!(
        out,
        "<text x=\"6\" y=\"{:.2}\" font-size=\"12\" transform=\"rotate(-90 12 {:.2})\">b: {:.3} .. {:.3}</text>",
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        f.b_min,
        f.b_max
    );
}

/// Render an atlas sweep as colored cells.
pub fn atlas_svg(cells: &[AtlasCell], a_range: (&Rat, &Rat), b_range: (&Rat, &Rat), res: u32) -> String {
    let f = Frame {
        a_min: to_f64(a_range.0),
        a_max: to_f64(a_range.1),
        b_min: to_f64(b_range.0),
        b_max: to_f64(b_range.1),
    };
    let mut out = String::new();
    header(&mut out);
    let cell_w = (WIDTH - 2.0 * MARGIN) / res as f64;
    let cell_h = (HEIGHT - 2.0 * MARGIN) / res as f64;
    for cell in cells {
        let cx = f.x(to_f64(&cell.a));
        let cy = f.y(to_f64(&cell.b));
        let _ = writeln!(
            out,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>",
            cx - cell_w / 2.0,
            cy - cell_h / 2.0,
            cell_w,
            cell_h,
            color(&cell.label)
        );
    }
    axes(&mut out, &f);
    out.push_str("</svg>\n");
    out
}

/// Render obstruction curves over the region rectangle
/// `[alpha, 2 alpha] x ]0, b_max]`.
pub fn curves_svg(curves: &[ObstructionCurve], alpha: &Rat, b_max: f64) -> String {
    let f = Frame {
        a_min: to_f64(alpha),
        a_max: 2.0 * to_f64(alpha),
        b_min: 0.0,
        b_max,
    };
    let mut out = String::new();
    header(&mut out);
    for c in curves {
        let lo = c.domain.lo.to_f64();
        let hi = c.domain.hi.to_f64();
        if hi <= lo {
            continue;
        }
        let n = c.n_eff() as f64;
        let delta = c.delta.to_f64();
        let mut path = String::new();
        let samples = 96;
        for i in 0..=samples {
            let a = lo + (hi - lo) * i as f64 / samples as f64;
            let b = n / (delta + (n + 1.0) * a);
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(path, "{}{:.2} {:.2} ", cmd, f.x(a), f.y(b));
        }
        let stroke = if c.blowup_possible { "#b91c1c" } else { "#9ca3af" };
        let _ = writeln!(
            out,
            "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>",
            path.trim_end(),
            stroke
        );
    }
    axes(&mut out, &f);
    out.push_str("</svg>\n");
    out
}
