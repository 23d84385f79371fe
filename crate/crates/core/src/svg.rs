//! Plain SVG overlay of a rescaled diagram on the limit curve.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::asymptotics::limit_process_mean;
use crate::diagram::{lskv_profile, rescale_to_unit};
use crate::error::Result;
use crate::partition::Partition;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const S_RANGE: (f64, f64) = (-3.0, 3.0);
const Y_RANGE: (f64, f64) = (0.0, 3.2);
const CURVE_SAMPLES: usize = 400;

fn to_px(s: f64, y: f64) -> (f64, f64) {
    let px = (s - S_RANGE.0) / (S_RANGE.1 - S_RANGE.0) * WIDTH;
    let py = HEIGHT - (y - Y_RANGE.0) / (Y_RANGE.1 - Y_RANGE.0) * HEIGHT;
    (px, py)
}

fn polyline(points: impl Iterator<Item = (f64, f64)>, style: &str) -> String {
    let coords: Vec<String> = points
        .map(|(s, y)| {
            let (x, y) = to_px(s, y);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    format!("<polyline fill=\"none\" {style} points=\"{}\"/>\n", coords.join(" "))
}

/// SVG with the profile of `λ*` (black), the limit curve `Ω` (red) and the
/// predicted mean `Ω + (2/√n)·(1/2 − 2 sin θ/π)`, `s = 2cos θ` (blue, dashed).
/// `comment` is embedded verbatim in an XML comment.
pub fn overlay_svg(shape: &Partition, comment: &str) -> Result<String> {
    let profile = rescale_to_unit(shape)?;
    let n = shape.size() as f64;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    )
    .expect("string write");
    writeln!(out, "<!--\n{}\n-->", comment.replace("--", "- -")).expect("string write");
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    let mut pts = vec![(S_RANGE.0, profile.eval(S_RANGE.0))];
    pts.extend(profile.breakpoints().into_iter().map(|s| (s, profile.eval(s))));
    pts.push((S_RANGE.1, profile.eval(S_RANGE.1)));
    out.push_str(&polyline(pts.into_iter(), "stroke=\"black\" stroke-width=\"1.5\""));

    let omega = (0..=CURVE_SAMPLES).map(|i| {
        let s = S_RANGE.0 + (S_RANGE.1 - S_RANGE.0) * i as f64 / CURVE_SAMPLES as f64;
        (s, lskv_profile(s))
    });
    out.push_str(&polyline(omega, "stroke=\"red\" stroke-width=\"1\""));

    let band = (0..=CURVE_SAMPLES).map(|i| {
        let theta = PI * i as f64 / CURVE_SAMPLES as f64;
        let s = 2.0 * theta.cos();
        (s, lskv_profile(s) + 2.0 / n.sqrt() * limit_process_mean(theta))
    });
    out.push_str(&polyline(band, "stroke=\"blue\" stroke-width=\"1\" stroke-dasharray=\"4 3\""));
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_three_curves() {
        let svg = overlay_svg(&"3,2,1".parse().unwrap(), "seed: 1 -- test").unwrap();
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert!(svg.contains("seed: 1 - - test"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
