//! File formats: the window JSON document, dual case-tree JSON export,
//! CSV emitters for curves and atlases, and the machine-readable reports.
//!
//! All numbers in the window format are exact rational strings `"p/q"`
//! (plain integers allowed); decimals are accepted on input and converted
//! exactly. Writers emit canonical lowest-terms strings so a document
//! round-trips byte-identically.

use std::io::Write;

use gaborframe_core::algebraic::ExactReal;
use gaborframe_core::analysis::{Condition, Failure, FrameDecision, Side, Verdict};
use gaborframe_core::atlas::AtlasCell;
use gaborframe_core::dual::{CaseValue, DualWindow};
use gaborframe_core::obstructions::{CurveKind, ObstructionCurve};
use gaborframe_core::poly::Poly;
use gaborframe_core::rat::{format_rational, parse_rational, to_f64, Rat};
use gaborframe_core::window::{make_piecewise, Piece, Window};

use serde::{Deserialize, Serialize};

/// Schema tag carried by every JSON report.
pub const SCHEMA: &str = "gaborframe/v1";

/// Errors from reading or writing interchange files.
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational literal: {0}")]
    Rational(String),
    #[error("invalid window: {0}")]
    Window(String),
}

/// On-disk window document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowFile {
    pub alpha: String,
    pub pieces: Vec<PieceFile>,
}

/// One polynomial piece: closed interval plus ascending coefficients.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PieceFile {
    pub interval: [String; 2],
    pub coeffs: Vec<String>,
}

fn parse(s: &str) -> Result<Rat, IoError> {
    parse_rational(s).map_err(|e| IoError::Rational(e.input))
}

/// Parse and validate a window document.
pub fn window_from_json(text: &str) -> Result<Window, IoError> {
    let file: WindowFile = serde_json::from_str(text)?;
    let alpha = parse(&file.alpha)?;
    let mut pieces = Vec::with_capacity(file.pieces.len());
    for p in &file.pieces {
        let lo = parse(&p.interval[0])?;
        let hi = parse(&p.interval[1])?;
        let mut coeffs = Vec::with_capacity(p.coeffs.len());
        for c in &p.coeffs {
            coeffs.push(parse(c)?);
        }
        pieces.push(Piece {
            lo,
            hi,
            poly: Poly::from_coeffs(coeffs),
        });
    }
    make_piecewise(alpha, pieces).map_err(|e| IoError::Window(e.to_string()))
}

/// Serialize a window to the document format (canonical rational strings).
pub fn window_to_json(w: &Window) -> String {
    let file = WindowFile {
        alpha: format_rational(w.alpha()),
        pieces: w
            .pieces()
            .iter()
            .map(|p| PieceFile {
                interval: [format_rational(&p.lo), format_rational(&p.hi)],
                coeffs: p.poly.coeffs().iter().map(format_rational).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("window serialization")
}

/// Exact value rendering: canonical rational string, or a tilde-prefixed
/// decimal for algebraic values.
pub fn format_exact(x: &ExactReal) -> String {
    match x.as_rational() {
        Some(r) => format_rational(r),
        None => format!("~{:.15}", x.to_f64()),
    }
}

/// Frame-check report (JSON).
#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub schema: &'static str,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_of_scope_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_condition: Option<String>,
    pub positivity_fast_path: bool,
    pub witnesses: Vec<WitnessReport>,
    pub failures: Vec<FailureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atlas_label: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct WitnessReport {
    pub side: String,
    pub n: u32,
    pub zero: String,
    pub one_sided: bool,
}

#[derive(Debug, Serialize)]
pub struct FailureReport {
    pub condition: String,
    pub detail: String,
}

pub fn check_report(decision: &FrameDecision, atlas_label: Option<String>) -> CheckReport {
    let (verdict, reason) = match &decision.verdict {
        Verdict::Frame => ("Frame".to_string(), None),
        Verdict::NotFrame => ("NotFrame".to_string(), None),
        Verdict::OutOfScope(r) => ("OutOfScope".to_string(), Some(r.to_string())),
    };
    CheckReport {
        schema: SCHEMA,
        verdict,
        out_of_scope_reason: reason,
        m: decision.params.as_ref().map(|p| p.m),
        kappa: decision.params.as_ref().map(|p| p.kappa),
        failed_condition: decision.failed_condition().map(|c| c.to_string()),
        positivity_fast_path: decision.positivity_fast_path,
        witnesses: decision
            .witnesses
            .iter()
            .map(|w| WitnessReport {
                side: match w.side {
                    Side::Plus => "plus".to_string(),
                    Side::Minus => "minus".to_string(),
                },
                n: w.n,
                zero: format_exact(&w.zero),
                one_sided: w.one_sided,
            })
            .collect(),
        failures: decision
            .failures
            .iter()
            .map(|f| FailureReport {
                condition: f.condition().to_string(),
                detail: failure_detail(f),
            })
            .collect(),
        atlas_label,
    }
}

fn failure_detail(f: &Failure) -> String {
    match f {
        Failure::PairedZeros { x, x_plus_a } => {
            format!("g vanishes at both {} and {}", format_exact(x), format_exact(x_plus_a))
        }
        Failure::ShiftHitsZero { witness, hit } => format!(
            "witness (n={}, y={}) shifts onto the zero {}",
            witness.n,
            format_exact(&witness.zero),
            format_exact(hit)
        ),
        Failure::WitnessCollision { plus, minus, point } => format!(
            "shifted witnesses (n+={}, y+={}) and (n-={}, y-={}) collide at {}",
            plus.n,
            format_exact(&plus.zero),
            minus.n,
            format_exact(&minus.zero),
            format_exact(point)
        ),
    }
}

/// `failed_condition` helper for text output.
pub fn condition_name(c: Condition) -> &'static str {
    match c {
        Condition::I => "i",
        Condition::II => "ii",
        Condition::III => "iii",
        Condition::IV => "iv",
    }
}

/// Dual case-tree JSON export with exact rational breakpoints.
#[derive(Debug, Serialize)]
pub struct DualCasesFile {
    pub schema: &'static str,
    pub alpha: String,
    pub a: String,
    pub b: String,
    pub m: u32,
    pub kappa: u32,
    pub epsilon: String,
    /// Certified lower bound for |g| on the b/g balls.
    pub delta: String,
    pub support_radius: String,
    /// Rigorous sup bound for |h| on the base interval.
    pub base_bound: String,
    /// Densely sampled overall sup of |h|.
    pub sup_sampled: f64,
    pub base: BaseCasesFile,
    pub bands: Vec<BandFile>,
}

#[derive(Debug, Serialize)]
pub struct BaseCasesFile {
    /// Sorted case breakpoints of `[-alpha, alpha]`.
    pub points: Vec<String>,
    /// Value exactly at each breakpoint: "zero" or "b_over_g".
    pub at_point: Vec<&'static str>,
    /// Value on each open interval between breakpoints.
    pub between: Vec<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct BandFile {
    pub n: i32,
    pub interval: [String; 2],
    /// Points where the recursion denominator vanishes (value 0 there).
    pub singular: Vec<String>,
}

pub fn dual_cases_file(h: &DualWindow) -> DualCasesFile {
    let p = h.params();
    let case_name = |c: &CaseValue| match c {
        CaseValue::Zero => "zero",
        CaseValue::BOverG => "b_over_g",
    };
    DualCasesFile {
        schema: SCHEMA,
        alpha: format_rational(&p.alpha),
        a: format_rational(&p.a),
        b: format_rational(&p.b),
        m: p.m,
        kappa: p.kappa,
        epsilon: format_rational(&h.balls().epsilon),
        delta: format_rational(&h.balls().delta),
        support_radius: format_rational(&h.support_radius()),
        base_bound: format_rational(h.base_bound()),
        sup_sampled: h.sup_sampled(),
        base: BaseCasesFile {
            points: h.base_partition().points.iter().map(format_rational).collect(),
            at_point: h.base_partition().at_point.iter().map(case_name).collect(),
            between: h.base_partition().between.iter().map(case_name).collect(),
        },
        bands: h
            .bands()
            .iter()
            .map(|band| BandFile {
                n: band.n,
                interval: [format_rational(&band.lo), format_rational(&band.hi)],
                singular: band.singular.iter().map(format_exact).collect(),
            })
            .collect(),
    }
}

/// Uniform dual samples as CSV rows `(x, h)`.
pub fn write_dual_samples(
    out: &mut dyn Write,
    h: &DualWindow,
    grid: usize,
) -> Result<(), IoError> {
    writeln!(out, "x,h")?;
    let radius = h.support_radius();
    let lo = -radius.clone();
    let width = &radius + &radius;
    let grid = grid.max(2);
    for k in 0..=grid {
        let x = &lo + &(&width * &gaborframe_core::rat::rat(k as i64, grid as i64));
        writeln!(out, "{:.12e},{:.12e}", to_f64(&x), to_f64(&h.eval(&x)))?;
    }
    Ok(())
}

fn kind_rank(kind: CurveKind) -> u8 {
    match kind {
        CurveKind::PlusShift => 0,
        CurveKind::MinusShift => 1,
        CurveKind::Combined => 2,
    }
}

/// Obstruction curves as CSV. The `b(a)` hyperbola is reported through its
/// exact coefficients: `b = num / (den_const + den_lin * a)`.
pub fn write_curves_csv(out: &mut dyn Write, curves: &[ObstructionCurve]) -> Result<(), IoError> {
    writeln!(
        out,
        "kind,y_plus,y_minus,n_minus,n_plus,a_min,a_min_closed,a_max,a_max_closed,num,den_const,den_lin,blowup_possible"
    )?;
    let mut sorted: Vec<&ObstructionCurve> = curves.iter().collect();
    sorted.sort_by(|x, y| {
        kind_rank(x.kind)
            .cmp(&kind_rank(y.kind))
            .then_with(|| x.y_plus.cmp(&y.y_plus))
            .then_with(|| x.y_minus.cmp(&y.y_minus))
            .then_with(|| (x.n_minus, x.n_plus).cmp(&(y.n_minus, y.n_plus)))
    });
    for c in sorted {
        let n_eff = c.n_eff();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            c.kind,
            format_exact(&c.y_plus),
            format_exact(&c.y_minus),
            c.n_minus,
            c.n_plus,
            format_exact(&c.domain.lo),
            c.domain.lo_closed,
            format_exact(&c.domain.hi),
            c.domain.hi_closed,
            n_eff,
            format_exact(&c.delta),
            n_eff + 1,
            c.blowup_possible
        )?;
    }
    Ok(())
}

/// Atlas cells as CSV rows `(a, b, label, evidence)`.
pub fn write_atlas_csv(out: &mut dyn Write, cells: &[AtlasCell]) -> Result<(), IoError> {
    writeln!(out, "a,b,label,evidence")?;
    for cell in cells {
        writeln!(
            out,
            "{},{},{},{}",
            format_rational(&cell.a),
            format_rational(&cell.b),
            cell.label.tag(),
            cell.label.evidence()
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use gaborframe_core::rat::{rat, rat_int};
    use gaborframe_core::{candidate_curves, construct_dual, make_bspline};

    const EXAMPLE: &str = r#"{
        "alpha": "9/10",
        "pieces": [
            { "interval": ["-9/10", "9/10"],
              "coeffs": ["81/500", "-81/100", "-1/5", "1"] }
        ]
    }"#;

    #[test]
    fn window_round_trip_is_exact() {
        let w = window_from_json(EXAMPLE).unwrap();
        assert_eq!(w.alpha(), &rat(9, 10));
        assert_eq!(w.zero_catalog().len(), 3);
        let text = window_to_json(&w);
        let w2 = window_from_json(&text).unwrap();
        assert_eq!(w2.pieces()[0].poly.coeffs(), w.pieces()[0].poly.coeffs());
        // Canonical text is a fixed point.
        assert_eq!(window_to_json(&w2), text);
    }

    #[test]
    fn decimal_and_integer_literals_convert_exactly() {
        let text = r#"{"alpha": "1", "pieces": [
            {"interval": ["-1", "0"], "coeffs": ["1", "1"]},
            {"interval": ["0", "1.0"], "coeffs": ["1", "-1"]}
        ]}"#;
        let w = window_from_json(text).unwrap();
        assert_eq!(w.eval(&rat(1, 2)), rat(1, 2));
    }

    #[test]
    fn invalid_windows_are_rejected_with_reason() {
        let text = r#"{"alpha": "1", "pieces": [
            {"interval": ["-1", "1"], "coeffs": ["1"]}
        ]}"#;
        match window_from_json(text) {
            Err(IoError::Window(msg)) => assert!(msg.contains("vanish")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            window_from_json("{\"alpha\": \"x\", \"pieces\": []}"),
            Err(IoError::Rational(_))
        ));
    }

    #[test]
    fn dual_cases_export_has_exact_breakpoints() {
        let w = window_from_json(EXAMPLE).unwrap();
        let h = construct_dual(&w, &rat_int(1), &rat(3, 5)).unwrap();
        let file = dual_cases_file(&h);
        assert_eq!(file.m, 2);
        assert_eq!(file.kappa, 1);
        assert_eq!(file.support_radius, "2");
        // Breakpoints parse back exactly.
        for p in &file.base.points {
            parse_rational(p).unwrap();
        }
        assert_eq!(file.bands.len(), 2);
        let json = serde_json::to_string(&file).unwrap();
        assert!(json.contains("\"schema\":\"gaborframe/v1\""));
    }

    #[test]
    fn curves_csv_is_deterministic() {
        // Two interior zeros so the curve list is nonempty.
        let text = r#"{"alpha": "9/10", "pieces": [
            {"interval": ["-9/10", "9/10"],
             "coeffs": ["27/1250", "27/500", "-251/300", "-1/15", "1"]}
        ]}"#;
        let w = window_from_json(text).unwrap();
        assert_eq!(w.zero_catalog().len(), 4);
        let curves = candidate_curves(&w, 2);
        let mut buf1 = Vec::new();
        write_curves_csv(&mut buf1, &curves).unwrap();
        let mut buf2 = Vec::new();
        write_curves_csv(&mut buf2, &curves).unwrap();
        assert_eq!(buf1, buf2);
        let text = String::from_utf8(buf1).unwrap();
        assert!(text.starts_with("kind,"));
        assert!(text.contains("plus-shift,1/5,-2/15,0,1,9/10,true,31/30,true,1,-1/3,2,true"));
    }

    #[test]
    fn check_report_serializes() {
        let w = make_bspline(2).unwrap();
        let d = gaborframe_core::check_frame(&w, &rat(6, 5), &rat(7, 10)).unwrap();
        let report = check_report(&d, Some("Frame_RegionB".to_string()));
        let json = serde_json::to_string_pretty(&report).unwrap();
        assert!(json.contains("\"verdict\": \"Frame\""));
        assert!(json.contains("Frame_RegionB"));
    }
}
