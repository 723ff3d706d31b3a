//! A minimal line chart: one polyline, two axes and a dashed reference line.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

pub fn line_chart(title: &str, points: &[(f64, f64)], reference: Option<f64>) -> String {
    let xs = points.iter().map(|p| p.0);
    let ys = points
        .iter()
        .map(|p| p.1)
        .chain(reference)
        .filter(|y| y.is_finite());
    let (x0, x1) = bounds(xs);
    let (y0, y1) = bounds(ys);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#, WIDTH / 2.0, escape(title)).unwrap();
    let (left, bottom, right, top) = (MARGIN, HEIGHT - MARGIN, WIDTH - MARGIN, MARGIN);
    writeln!(
        s,
        r#"<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<line x1="{left}" y1="{bottom}" x2="{left}" y2="{top}" stroke="black"/>"#
    )
    .unwrap();
    for (v, anchor, x, y) in [
        (x0, "start", left, bottom + 16.0),
        (x1, "end", right, bottom + 16.0),
    ] {
        writeln!(s, r#"<text x="{x}" y="{y}" text-anchor="{anchor}" font-family="sans-serif" font-size="11">{}</text>"#, tick(v)).unwrap();
    }
    for (v, y) in [(y0, bottom), (y1, top)] {
        writeln!(s, r#"<text x="{}" y="{y:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{}</text>"#, left - 4.0, tick(v)).unwrap();
    }
    if let Some(r) = reference.filter(|r| r.is_finite()) {
        let y = sy(r);
        writeln!(s, r#"<line x1="{left}" y1="{y:.2}" x2="{right}" y2="{y:.2}" stroke="red" stroke-dasharray="6 4"/>"#).unwrap();
    }
    let coords: Vec<String> = points
        .iter()
        .filter(|p| p.0.is_finite() && p.1.is_finite())
        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
        .collect();
    writeln!(
        s,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
        coords.join(" ")
    )
    .unwrap();
    s.push_str("</svg>\n");
    s
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn tick(v: f64) -> String {
    format!("{v:.4}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_structure() {
        let svg = line_chart(
            "alpha <est>",
            &[(2.0, -3.0), (3.0, -3.5), (4.0, -3.8)],
            Some(-4.0),
        );
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains("alpha &lt;est&gt;"));
        let empty = line_chart("", &[], None);
        assert!(empty.contains(r#"points="""#));
    }
}
