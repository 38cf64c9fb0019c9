//! A plain SVG step plot of a feature counting function.

use std::fmt::Write;

use num_traits::ToPrimitive;
use pnoise_core::exactalg::Rational;
use pnoise_core::fcf::{FeatureCountingFunction, StepStart};

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 300.0;
const MARGIN: f64 = 40.0;

fn to_f64(q: Rational) -> f64 {
    q.numer().to_f64().unwrap_or(0.0) / q.denom().to_f64().unwrap_or(1.0)
}

/// Draws `f` on `[0, t_max]`, where `t_max` is a little past the last step.
/// Tick labels are the step starts, in lowest terms.
pub fn fcf_svg(f: &FeatureCountingFunction, title: &str) -> String {
    let steps = f.steps();
    let last = steps.last().map_or(Rational::from_integer(0), |s| s.0.value());
    let t_max = if last > Rational::from_integer(0) { last * Rational::new(5, 4) } else { Rational::from_integer(1) };
    let y_max = steps.iter().map(|s| s.1).max().unwrap_or(0).max(1);
    let sx = |t: Rational| MARGIN + (WIDTH - 2.0 * MARGIN) * to_f64(t) / to_f64(t_max);
    let sy = |v: usize| HEIGHT - MARGIN - (HEIGHT - 2.0 * MARGIN) * v as f64 / y_max as f64;

    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="11">"#).unwrap();
    writeln!(out, r#"<text x="{}" y="16" text-anchor="middle">{}</text>"#, WIDTH / 2.0, escape(title)).unwrap();
    let (x0, y0) = (MARGIN, HEIGHT - MARGIN);
    writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{}" y2="{y0}" stroke="black"/>"#, WIDTH - MARGIN).unwrap();
    writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN}" stroke="black"/>"#).unwrap();
    for v in 0..=y_max {
        writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{v}</text>"#, x0 - 6.0, sy(v) + 4.0).unwrap();
    }
    for (i, (start, v)) in steps.iter().enumerate() {
        let a = start.value();
        let b = steps.get(i + 1).map_or(t_max, |s| s.0.value());
        let (xa, xb, y) = (sx(a), sx(b), sy(*v));
        writeln!(out, r#"<line x1="{xa:.2}" y1="{y:.2}" x2="{xb:.2}" y2="{y:.2}" stroke="steelblue" stroke-width="2"/>"#).unwrap();
        let fill = match start {
            StepStart::Closed(_) => "steelblue",
            StepStart::Open(_) => "white",
        };
        writeln!(out, r#"<circle cx="{xa:.2}" cy="{y:.2}" r="3" fill="{fill}" stroke="steelblue"/>"#).unwrap();
        writeln!(out, r#"<text x="{xa:.2}" y="{}" text-anchor="middle">{a}</text>"#, y0 + 16.0).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use pnoise_core::exactalg::rat;

    #[test]
    fn ticks_in_lowest_terms() {
        let f = FeatureCountingFunction::new(vec![(StepStart::Closed(rat(0, 1)), 2), (StepStart::Open(rat(2, 4)), 1)]).unwrap();
        let svg = fcf_svg(&f, "a < b");
        assert!(svg.contains(">1/2</text>"));
        assert!(svg.contains("a &lt; b"));
        assert!(svg.contains(r#"fill="white""#));
    }
}
