//! Static scatter of eigenvalues against the bands of `E`.

use std::fmt::Write;

use jacobi_lt::eigensolver::{EigenvalueRecord, Method};
use jacobi_lt::FiniteGapSet;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 40.0;

pub fn scatter(set: &FiniteGapSet, records: &[EigenvalueRecord], title: &str) -> String {
    let mut x0 = set.lo() - 0.5;
    let mut x1 = set.hi() + 0.5;
    let mut y1: f64 = 1.0;
    for r in records {
        x0 = x0.min(r.z.re);
        x1 = x1.max(r.z.re);
        y1 = y1.max(r.z.im.abs());
    }
    let pad = 0.05 * (x1 - x0);
    let (x0, x1, y1) = (x0 - pad, x1 + pad, 1.1 * y1);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT / 2.0 - y / y1 * (HEIGHT / 2.0 - MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">{}</text>"#, escape(title));
    let _ = writeln!(
        s,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-width="1"/>"##,
        sx(x0),
        sy(0.0),
        sx(x1),
        sy(0.0)
    );
    for b in set.bands() {
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1f4e9c" stroke-width="5"/>"##,
            sx(b.lo),
            sy(0.0),
            sx(b.hi),
            sy(0.0)
        );
    }
    for e in set.edges() {
        let _ = writeln!(
            s,
            r##"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" stroke="#1f4e9c" stroke-width="1.5"/>"##,
            sx(e),
            sy(0.0) - 9.0,
            sy(0.0) + 9.0
        );
    }
    for r in records {
        let (fill, stroke) = match r.method {
            Method::Determinant => ("#c0392b", "#c0392b"),
            Method::Truncation => ("none", "#27ae60"),
        };
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="{}" fill="{fill}" stroke="{stroke}" stroke-width="1.5"/>"#,
            sx(r.z.re),
            sy(r.z.im),
            3 + r.multiplicity
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
