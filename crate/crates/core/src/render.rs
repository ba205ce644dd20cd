//! SVG chord diagrams of circular embeddings.
//!
//! Vertices sit on a circle in spine order, starting at the top and going
//! clockwise. Each edge is drawn as the circular arc through its endpoints
//! that meets the circle at right angles, colored by page.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::book::BookEmbedding;
use crate::graph::Graph;

const PALETTE: [&str; 5] = ["red", "green", "blue", "orange", "violet"];

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub radius: f64,
    pub margin: f64,
    pub vertex_radius: f64,
    pub stroke_width: f64,
    pub labels: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { radius: 200.0, margin: 40.0, vertex_radius: 4.0, stroke_width: 2.0, labels: true }
    }
}

/// Color of a page: the fixed palette first, then evenly spread hues.
pub fn page_color(page: usize) -> String {
    match PALETTE.get(page) {
        Some(c) => (*c).to_string(),
        None => format!("hsl({},70%,45%)", (page * 47) % 360),
    }
}

fn f(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

pub fn render_svg(g: &Graph, emb: &BookEmbedding, spec: &RenderSpec) -> String {
    let n = emb.spine().len();
    let r = spec.radius;
    let c = r + spec.margin;
    let size = 2.0 * c;
    let angle = |i: usize| -PI / 2.0 + 2.0 * PI * i as f64 / n.max(1) as f64;
    let point = |i: usize| (c + r * angle(i).cos(), c + r * angle(i).sin());
    let pos = emb.positions();

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        f(size)
    );
    let _ = writeln!(
        out,
        r#"<circle cx="{0}" cy="{0}" r="{1}" fill="none" stroke="lightgray" stroke-width="1"/>"#,
        f(c),
        f(r)
    );
    let _ = writeln!(out, r#"<g fill="none" stroke-width="{}">"#, f(spec.stroke_width));
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        // Start at the endpoint from which the other lies clockwise within
        // half a turn.
        let (mut a, mut b) = (pos[u], pos[v]);
        let mut steps = (b + n - a) % n;
        if 2 * steps > n {
            std::mem::swap(&mut a, &mut b);
            steps = n - steps;
        }
        let (ax, ay) = point(a);
        let (bx, by) = point(b);
        let color = page_color(emb.page_of(e));
        let d = if 2 * steps == n {
            format!("M {} {} L {} {}", f(ax), f(ay), f(bx), f(by))
        } else {
            let theta = 2.0 * PI * steps as f64 / n as f64;
            let rr = r * (theta / 2.0).tan();
            format!("M {} {} A {} {} 0 0 0 {} {}", f(ax), f(ay), f(rr), f(rr), f(bx), f(by))
        };
        let _ = writeln!(out, r#"<path d="{d}" stroke="{color}" data-edge="{u} {v}" data-page="{}"/>"#, emb.page_of(e));
    }
    out.push_str("</g>\n");
    out.push_str("<g fill=\"black\">\n");
    for (i, &v) in emb.spine().iter().enumerate() {
        let (x, y) = point(i);
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{}"/>"#, f(x), f(y), f(spec.vertex_radius));
        if spec.labels {
            let (lx, ly) = (c + (r + 16.0) * angle(i).cos(), c + (r + 16.0) * angle(i).sin());
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
                f(lx),
                f(ly),
                escape(&g.label(v))
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
