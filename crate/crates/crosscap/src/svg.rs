//! Schematic SVG rendering of cross-cap drawings.
//!
//! `v2` sits on the left and `v1` on the right, with the cross-caps in a row
//! between them. Each cross-cap is a disk whose boundary carries the `2m`
//! strand endpoints at evenly spaced angles, in the stored
//! counter-clockwise order; a transit is the diameter joining its two ends.
//! Segments between consecutive stops are cubic curves, so the picture is a
//! faithful record of the rotation system rather than a crossing-free
//! embedding.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::drawing::{CrossCapDrawing, Side, TransitEnd};
use crate::error::DrawingError;

const GAP: f64 = 130.0;
const MARGIN: f64 = 70.0;
const HEIGHT: f64 = 380.0;
const CAP_R: f64 = 34.0;
const VERTEX_R: f64 = 9.0;
const PORT_R: f64 = 26.0;

#[derive(Clone, Copy)]
struct Stop {
    x: f64,
    y: f64,
    /// Unit vector pointing away from the centre the stop belongs to.
    dx: f64,
    dy: f64,
}

impl Stop {
    fn on_circle(cx: f64, cy: f64, r: f64, angle: f64) -> Self {
        // Screen y grows downwards, so counter-clockwise uses -sin.
        let (dx, dy) = (angle.cos(), -angle.sin());
        Self {
            x: cx + r * dx,
            y: cy + r * dy,
            dx,
            dy,
        }
    }
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
    "#7f7f7f", "#bcbd22",
];

fn colour(k: usize) -> &'static str {
    PALETTE[k % PALETTE.len()]
}

fn curve(out: &mut String, a: Stop, b: Stop, stroke: &str) {
    let pull = (0.3 * (b.x - a.x).hypot(b.y - a.y)).clamp(20.0, 45.0);
    let _ = writeln!(
        out,
        r#"  <path d="M {:.1} {:.1} C {:.1} {:.1} {:.1} {:.1} {:.1} {:.1}" fill="none" stroke="{stroke}" stroke-width="2"/>"#,
        a.x,
        a.y,
        a.x + pull * a.dx,
        a.y + pull * a.dy,
        b.x + pull * b.dx,
        b.y + pull * b.dy,
        b.x,
        b.y
    );
}

impl CrossCapDrawing {
    /// Renders a valid drawing. Output depends only on the drawing.
    pub fn to_svg(&self) -> Result<String, DrawingError> {
        let report = self.validate();
        if let Some(v) = report.violations.first() {
            return Err(DrawingError::Invalid(format!("{v:?}")));
        }
        let g = self.crosscaps;
        let width = 2.0 * MARGIN + GAP * (g as f64 + 1.0);
        let cy = HEIGHT / 2.0;
        let v2x = MARGIN;
        let v1x = width - MARGIN;
        let cap_x = |c: usize| MARGIN + GAP * (c as f64 + 1.0);

        // Ports fan out over 240 degrees facing the rest of the picture.
        let port = |cx: f64, rot: &[u32], e: u32, facing: f64| {
            let k = rot.iter().position(|&x| x == e).expect("edge in rotation");
            let m = rot.len() as f64;
            let angle = facing - 2.0 * PI / 3.0 + (4.0 * PI / 3.0) * (k as f64 + 0.5) / m;
            Stop::on_circle(cx, cy, PORT_R, angle)
        };
        let end_stop = |c: usize, t: TransitEnd| {
            let order = &self.crosscap_orders[c];
            let k = order.iter().position(|&x| x == t).expect("transit listed");
            Stop::on_circle(
                cap_x(c),
                cy,
                CAP_R,
                2.0 * PI * k as f64 / order.len() as f64,
            )
        };

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{HEIGHT:.0}" viewBox="0 0 {width:.0} {HEIGHT:.0}">"#
        );
        let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
        for c in 0..g {
            let _ = writeln!(
                out,
                r##"  <circle cx="{:.1}" cy="{cy:.1}" r="{CAP_R:.1}" fill="#f2f2f2" stroke="#555" stroke-dasharray="4 3"/>"##,
                cap_x(c)
            );
            let _ = writeln!(
                out,
                r##"  <text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle" fill="#555">c{c}</text>"##,
                cap_x(c),
                cy + CAP_R + 18.0
            );
        }
        for (k, (&e, word)) in self.words.iter().enumerate() {
            let stroke = colour(k);
            let mut at = port(v2x, &self.v2, e, 0.0);
            let _ = writeln!(
                out,
                r#"  <line x1="{v2x:.1}" y1="{cy:.1}" x2="{:.1}" y2="{:.1}" stroke="{stroke}" stroke-width="2"/>"#,
                at.x, at.y
            );
            let label = Stop::on_circle(v2x, cy, PORT_R + 14.0, {
                let p = port(v2x, &self.v2, e, 0.0);
                (-p.dy).atan2(p.dx)
            });
            let _ = writeln!(
                out,
                r#"  <text x="{:.1}" y="{:.1}" font-size="11" text-anchor="middle" fill="{stroke}">{e}</text>"#,
                label.x,
                label.y + 4.0
            );
            for (occ, &c) in word.iter().enumerate() {
                let inn = end_stop(c, TransitEnd::new(e, occ, Side::In));
                let outp = end_stop(c, TransitEnd::new(e, occ, Side::Out));
                curve(&mut out, at, inn, stroke);
                let _ = writeln!(
                    out,
                    r#"  <line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="{stroke}" stroke-width="2"/>"#,
                    inn.x, inn.y, outp.x, outp.y
                );
                at = outp;
            }
            let fin = port(v1x, &self.v1, e, PI);
            curve(&mut out, at, fin, stroke);
            let _ = writeln!(
                out,
                r#"  <line x1="{:.1}" y1="{:.1}" x2="{v1x:.1}" y2="{cy:.1}" stroke="{stroke}" stroke-width="2"/>"#,
                fin.x, fin.y
            );
        }
        for (x, name) in [(v2x, "v2"), (v1x, "v1")] {
            let _ = writeln!(
                out,
                r#"  <circle cx="{x:.1}" cy="{cy:.1}" r="{VERTEX_R:.1}" fill="black"/>"#
            );
            let _ = writeln!(
                out,
                r#"  <text x="{x:.1}" y="{:.1}" font-size="14" text-anchor="middle">{name}</text>"#,
                cy - PORT_R - 24.0
            );
        }
        out.push_str("</svg>\n");
        Ok(out)
    }
}
