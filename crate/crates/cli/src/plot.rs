//! Minimal SVG line plots: per-n means with ±σ bars and fitted curves.

use crate::fit::FitResult;
use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 420.0;
const MARGIN: f64 = 56.0;
const COLORS: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    "#393b79", "#637939",
];

/// A plotted quantity: its label and fit.
#[derive(Debug, Clone, Copy)]
pub struct Series<'a> {
    pub label: &'a str,
    pub fit: &'a FitResult,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render(title: &str, series: &[Series]) -> String {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for s in series {
        for p in &s.fit.per_n {
            xs.push(p.n as f64);
            ys.push(p.mean - p.std);
            ys.push(p.mean + p.std);
        }
    }
    let lo = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (mut x0, mut x1) = (lo(&xs), hi(&xs));
    let (mut y0, mut y1) = (lo(&ys), hi(&ys));
    if !(x1 > x0) {
        x0 -= 1.0;
        x1 += 1.0;
    }
    if !(y1 > y0) {
        y0 -= 1.0;
        y1 += 1.0;
    }
    let pad = 0.05 * (y1 - y0);
    let (y0, y1) = (y0 - pad, y1 + pad);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="20" text-anchor="middle">{}</text>"#, W / 2.0, escape(title));
    let _ = writeln!(
        out,
        r#"<path d="M{m} {t} V{b} H{r}" fill="none" stroke="black"/>"#,
        m = MARGIN,
        t = MARGIN,
        b = H - MARGIN,
        r = W - MARGIN
    );
    for k in 0..=4 {
        let x = x0 + (x1 - x0) * k as f64 / 4.0;
        let y = y0 + (y1 - y0) * k as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{:.0}</text>"#,
            sx(x),
            H - MARGIN + 16.0,
            x
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{:.3}</text>"#,
            MARGIN - 4.0,
            sy(y) + 4.0,
            y
        );
    }
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">n</text>"#, W / 2.0, H - 12.0);

    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let f = s.fit;
        // fitted curve sampled in √n
        let mut d = String::new();
        for k in 0..=40 {
            let x = x0 + (x1 - x0) * k as f64 / 40.0;
            let y = f.a1 * x.sqrt() + f.a0;
            let _ = write!(d, "{}{:.2} {:.2} ", if k == 0 { "M" } else { "L" }, sx(x), sy(y));
        }
        let _ = writeln!(
            out,
            r#"<path d="{}" fill="none" stroke="{color}" stroke-dasharray="4 3"/>"#,
            d.trim_end()
        );
        for p in &f.per_n {
            let (x, m) = (sx(p.n as f64), sy(p.mean));
            let _ = writeln!(
                out,
                r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="{color}"/>"#,
                sy(p.mean - p.std),
                sy(p.mean + p.std)
            );
            let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{m:.2}" r="3" fill="{color}"/>"#);
        }
        let ly = MARGIN + 16.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{ly:.1}" fill="{color}">{} a1 = {:.5}</text>"#,
            MARGIN + 10.0,
            escape(s.label),
            f.a1
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::fit_samples;

    #[test]
    fn well_formed() {
        let f = fit_samples(&[(100, vec![6.0, 7.0]), (400, vec![13.0, 12.5]), (900, vec![19.0])]).unwrap();
        let svg = render("emst <square>", &[Series { label: "emst", fit: &f }]);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains("&lt;square&gt;"));
        assert!(!svg.contains("NaN"));
    }
}
