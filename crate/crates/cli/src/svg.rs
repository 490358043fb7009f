//! Minimal SVG figures in tropical coordinates. Output is a pure function of
//! its inputs: no timestamps, fixed number formatting.

use std::fmt::Write as _;

use logflex::curve::TropicalCurve;

const WIDTH: f64 = 640.0;

/// Axis-aligned window in tropical coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    /// Bounding box of `points`, padded by 20% of its extent on each side.
    /// Degenerate extents are padded by one unit.
    pub fn around(points: &[[f64; 2]]) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            x0 = x0.min(p[0]);
            x1 = x1.max(p[0]);
            y0 = y0.min(p[1]);
            y1 = y1.max(p[1]);
        }
        if points.is_empty() {
            (x0, x1, y0, y1) = (0.0, 0.0, 0.0, 0.0);
        }
        let pad = |lo: f64, hi: f64| if hi > lo { 0.2 * (hi - lo) } else { 1.0 };
        let (px, py) = (pad(x0, x1), pad(y0, y1));
        Self { x0: x0 - px, x1: x1 + px, y0: y0 - py, y1: y1 + py }
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        (self.x0..=self.x1).contains(&p[0]) && (self.y0..=self.y1).contains(&p[1])
    }

    /// Largest `s ≥ 0` with `p + s·d` inside the window, for `p` inside.
    fn exit_parameter(&self, p: [f64; 2], d: [f64; 2]) -> f64 {
        let axis = |v: f64, dv: f64, lo: f64, hi: f64| {
            if dv > 0.0 {
                (hi - v) / dv
            } else if dv < 0.0 {
                (lo - v) / dv
            } else {
                f64::INFINITY
            }
        };
        axis(p[0], d[0], self.x0, self.x1).min(axis(p[1], d[1], self.y0, self.y1)).max(0.0)
    }
}

pub struct Figure {
    window: Window,
    scale: f64,
    body: String,
}

impl Figure {
    pub fn new(window: Window) -> Self {
        Self { scale: WIDTH / (window.x1 - window.x0), window, body: String::new() }
    }

    fn px(&self, p: [f64; 2]) -> (f64, f64) {
        ((p[0] - self.window.x0) * self.scale, (self.window.y1 - p[1]) * self.scale)
    }

    fn line(&mut self, a: [f64; 2], b: [f64; 2], width: f64, class: &str) {
        let ((x1, y1), (x2, y2)) = (self.px(a), self.px(b));
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke-width="{width:.1}"/>"#
        );
    }

    /// Bounded edges and rays, with stroke width growing with the weight.
    pub fn curve(&mut self, c: &TropicalCurve) {
        self.body.push_str("<g stroke=\"#1f3b73\" stroke-linecap=\"round\">\n");
        let verts: Vec<[f64; 2]> = c.vertices.iter().map(|v| v.to_f64()).collect();
        for e in &c.edges {
            self.line(verts[e.endpoints[0]], verts[e.endpoints[1]], 1.5 * e.weight as f64, "edge");
        }
        for r in &c.rays {
            let v = verts[r.vertex];
            let d = [r.direction.dj as f64, r.direction.dk as f64];
            let s = self.window.exit_parameter(v, d);
            self.line(v, [v[0] + s * d[0], v[1] + s * d[1]], 1.5 * r.weight as f64, "ray");
        }
        self.body.push_str("</g>\n");
    }

    /// Filled disks of radius `r` (tropical units).
    pub fn disks(&mut self, centers: &[[f64; 2]], r: f64, fill: &str) {
        let _ = writeln!(self.body, r#"<g fill="{fill}" fill-opacity="0.35" stroke="{fill}">"#);
        let rad = r * self.scale;
        for &c in centers {
            let (x, y) = self.px(c);
            let _ = writeln!(self.body, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{rad:.2}"/>"#);
        }
        self.body.push_str("</g>\n");
    }

    pub fn crosses(&mut self, points: &[[f64; 2]], color: &str) {
        let _ = writeln!(self.body, r#"<g stroke="{color}" stroke-width="1.5">"#);
        for &p in points.iter().filter(|p| self.window.contains(**p)) {
            let (x, y) = self.px(p);
            let _ = writeln!(self.body, r#"<path d="M{:.2},{:.2}l8,8m0,-8l-8,8"/>"#, x - 4.0, y - 4.0);
        }
        self.body.push_str("</g>\n");
    }

    /// A point cloud drawn as one path of round dots.
    pub fn cloud(&mut self, points: &[[f64; 2]], color: &str) {
        if points.is_empty() {
            return;
        }
        let _ = write!(self.body, r#"<path stroke="{color}" stroke-width="1.2" stroke-linecap="round" d=""#);
        for &p in points.iter().filter(|p| self.window.contains(**p)) {
            let (x, y) = self.px(p);
            let _ = write!(self.body, "M{x:.1},{y:.1}h0");
        }
        self.body.push_str("\"/>\n");
    }

    pub fn render(&self) -> String {
        let w = WIDTH;
        let h = (self.window.y1 - self.window.y0) * self.scale;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.2} {h:.2}">"#
        );
        out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_pads_by_a_fifth() {
        let w = Window::around(&[[0.0, 0.0], [10.0, 5.0]]);
        assert_eq!(w, Window { x0: -2.0, x1: 12.0, y0: -1.0, y1: 6.0 });
        let single = Window::around(&[[1.0, 2.0]]);
        assert_eq!(single, Window { x0: 0.0, x1: 2.0, y0: 1.0, y1: 3.0 });
    }

    #[test]
    fn rays_stop_at_the_window() {
        let w = Window { x0: -1.0, x1: 1.0, y0: -1.0, y1: 1.0 };
        assert_eq!(w.exit_parameter([0.0, 0.0], [1.0, 1.0]), 1.0);
        assert_eq!(w.exit_parameter([0.5, 0.0], [-1.0, 0.0]), 1.5);
        assert_eq!(w.exit_parameter([0.0, 0.0], [0.0, -2.0]), 0.5);
    }
}
