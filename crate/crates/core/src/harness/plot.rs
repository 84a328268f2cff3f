use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::sweep::RunRecord;
use crate::error::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 60.0;

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    if hi - lo < 1e-12 {
        (lo - 1.0, hi + 1.0)
    } else {
        (lo, hi)
    }
}

/// One scatter-plus-line chart. `points` must be sorted by x.
fn svg(points: &[(f64, f64)], title: &str, y_label: &str) -> String {
    let (x0, x1) = span(points.iter().map(|p| p.0));
    let (y0, y1) = span(points.iter().map(|p| p.1));
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="16">{title}</text>"#,
        WIDTH / 2.0
    );
    // axes
    let _ = writeln!(
        s,
        r#"<line x1="{MARGIN}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/>"#,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    let _ = writeln!(
        s,
        r#"<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{b}" stroke="black"/>"#,
        b = HEIGHT - MARGIN
    );
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(
            s,
            r##"<line x1="{MARGIN}" y1="{z:.3}" x2="{r}" y2="{z:.3}" stroke="#999" stroke-dasharray="4 3"/>"##,
            z = py(0.0),
            r = WIDTH - MARGIN
        );
    }
    for (v, x) in [(x0, px(x0)), (x1, px(x1))] {
        let _ = writeln!(
            s,
            r#"<text x="{x:.3}" y="{}" text-anchor="middle" font-size="11">{v:.1}</text>"#,
            HEIGHT - MARGIN + 16.0
        );
    }
    for (v, y) in [(y0, py(y0)), (y1, py(y1))] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{y:.3}" text-anchor="end" font-size="11">{v:.3}</text>"#,
            MARGIN - 6.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="13">error angle N (degrees)</text>"#,
        WIDTH / 2.0,
        HEIGHT - 16.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{c}" text-anchor="middle" font-size="13" transform="rotate(-90 16 {c})">{y_label}</text>"#,
        c = HEIGHT / 2.0
    );

    let mut d = String::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        let _ = write!(
            d,
            "{}{:.3},{:.3} ",
            if i == 0 { 'M' } else { 'L' },
            px(x),
            py(y)
        );
    }
    let _ = writeln!(
        s,
        r##"<path d="{}" fill="none" stroke="#1f77b4"/>"##,
        d.trim_end()
    );
    for &(x, y) in points {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.3}" cy="{:.3}" r="3" fill="#1f77b4"/>"##,
            px(x),
            py(y)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Writes `accuracy_deviation.svg` and `iteration_deviation.svg` into `dir`.
pub fn emit_plots(records: &[RunRecord], dir: &Path) -> Result<[PathBuf; 2]> {
    if records.is_empty() {
        return Err(Error::Validation("no records to plot".into()));
    }
    let mut sorted: Vec<&RunRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.epsilon_degrees.total_cmp(&b.epsilon_degrees));

    let acc: Vec<(f64, f64)> = sorted
        .iter()
        .map(|r| (r.epsilon_degrees, r.accuracy_deviation))
        .collect();
    let it: Vec<(f64, f64)> = sorted
        .iter()
        .map(|r| (r.epsilon_degrees, 100.0 * r.iteration_deviation))
        .collect();

    let acc_path = dir.join("accuracy_deviation.svg");
    let it_path = dir.join("iteration_deviation.svg");
    fs::write(
        &acc_path,
        svg(
            &acc,
            "Accuracy deviation",
            "accuracy deviation (percentage points)",
        ),
    )
    .map_err(|e| Error::io(&acc_path, e))?;
    fs::write(
        &it_path,
        svg(&it, "Iteration deviation", "iteration deviation (%)"),
    )
    .map_err(|e| Error::io(&it_path, e))?;
    Ok([acc_path, it_path])
}
