//! Serialized forms of a [`PageCurveResult`]: CSV, JSON and a static SVG plot.
//!
//! All emitters are pure functions of the result, so identical results give
//! byte-identical output.

use std::fmt::Write as _;

use crate::lab::PageCurveResult;
use crate::Result;

pub const CSV_HEADER: &str =
    "n_a,mean_entropy,entropy_se,mean_purity,purity_se,lubkin_purity,semiclassical_entropy";

pub const X_LABEL: &str = "Logarithm of Subsystem Dimension";
pub const Y_LABEL: &str = "Subsystem Entropy";

/// One header row and one row per subsystem size. Floats use the shortest
/// representation that round-trips.
pub fn to_csv(result: &PageCurveResult) -> String {
    let mut out = String::with_capacity(64 * (result.points.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in &result.points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            p.n_a,
            p.mean_entropy.mean,
            p.mean_entropy.std_error,
            p.mean_purity.mean,
            p.mean_purity.std_error,
            p.analytic_purity,
            p.semiclassical_entropy
        );
    }
    out
}

/// Full result, configuration and seed included.
pub fn to_json(result: &PageCurveResult) -> Result<String> {
    let mut s = serde_json::to_string_pretty(result)?;
    s.push('\n');
    Ok(s)
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;

/// Self-contained SVG: estimated curve with ±1 SE bars, the semiclassical
/// line, and the entropy `-log E tr ρ_A²` implied by the expected purity.
pub fn to_svg(result: &PageCurveResult) -> String {
    let n = result.config.n_qubits as f64;
    let base = result.config.log_base;
    let y_max = (n * base.log2_unit()).max(f64::MIN_POSITIVE);
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + plot_w * x / n;
    let py = |y: f64| TOP + plot_h * (1.0 - y / y_max);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="28" text-anchor="middle" font-size="16">Page Curve</text>"#,
        WIDTH / 2.0
    );

    // grid and ticks
    for k in 0..=result.config.n_qubits {
        let x = px(k as f64);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#ddd"/>"##,
            TOP,
            TOP + plot_h
        );
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{k}</text>"#,
            TOP + plot_h + 18.0
        );
    }
    for k in 0..=4 {
        let v = y_max * k as f64 / 4.0;
        let y = py(v);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/>"##,
            LEFT + plot_w
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v:.3}</text>"#,
            LEFT - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{X_LABEL}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 20.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{Y_LABEL} ({})</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        match base {
            crate::entropy::LogBase::Two => "bits",
            crate::entropy::LogBase::E => "nats",
        }
    );

    let polyline = |pts: Vec<(f64, f64)>, style: &str| {
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y))).collect();
        format!(r#"<polyline fill="none" {style} points="{}"/>"#, coords.join(" "))
    };
    let points = &result.points;
    let _ = writeln!(
        s,
        "{}",
        polyline(
            points.iter().map(|p| (p.n_a as f64, p.semiclassical_entropy)).collect(),
            r##"stroke="#1f4fd1" stroke-width="2""##
        )
    );
    let _ = writeln!(
        s,
        "{}",
        polyline(
            points.iter().map(|p| (p.n_a as f64, -base.log(p.analytic_purity))).collect(),
            r##"stroke="#2a9d3a" stroke-width="1.5" stroke-dasharray="3,3""##
        )
    );
    let _ = writeln!(
        s,
        "{}",
        polyline(
            points.iter().map(|p| (p.n_a as f64, p.mean_entropy.mean)).collect(),
            r##"stroke="#d12f1f" stroke-width="2" stroke-dasharray="6,4""##
        )
    );
    for p in points {
        let x = px(p.n_a as f64);
        let (m, se) = (p.mean_entropy.mean, p.mean_entropy.std_error);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#d12f1f"/>"##,
            py(m - se),
            py(m + se)
        );
        let _ = writeln!(s, r##"<circle cx="{x:.2}" cy="{:.2}" r="3" fill="#d12f1f"/>"##, py(m));
    }

    let legend = [
        ("#1f4fd1", "Semiclassical Curve"),
        ("#d12f1f", "Page Curve (Monte Carlo, ±1 SE)"),
        ("#2a9d3a", "−log of expected purity"),
    ];
    for (i, (color, label)) in legend.iter().enumerate() {
        let y = TOP + 16.0 + 18.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="2"/>"#,
            LEFT + 12.0,
            LEFT + 36.0
        );
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{label}</text>"#, LEFT + 42.0, y + 4.0);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::{estimate_page_curve, PageCurveConfig};

    fn small() -> PageCurveResult {
        estimate_page_curve(&PageCurveConfig::new(3, 100, 4).workers(1)).unwrap()
    }

    #[test]
    fn csv_shape() {
        let csv = to_csv(&small());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("0,0,0,1,0,1,0"));
        assert!(lines.iter().all(|l| l.split(',').count() == 7));
    }

    #[test]
    fn json_round_trips() {
        let r = small();
        let json = to_json(&r).unwrap();
        let back: PageCurveResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back.points, r.points);
        assert!(json.contains("\"seed\": 4"));
        assert!(!json.contains("workers"));
    }

    #[test]
    fn svg_is_self_contained() {
        let svg = to_svg(&small());
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains(X_LABEL) && svg.contains(Y_LABEL));
        assert!(!svg.contains("href") && !svg.contains("url("));
    }
}
