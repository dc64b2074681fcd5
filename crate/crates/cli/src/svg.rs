//! Minimal self-contained SVG writer. World y points up; the document is
//! written with y negated so plots are not upside down.

use std::fmt::Write;

use sat_pursuit::Point2F64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Solid,
    Dashed,
}

#[derive(Debug, Clone)]
enum Shape {
    Path {
        points: Vec<Point2F64>,
        closed: bool,
        color: &'static str,
        line: Line,
    },
    Circle {
        center: Point2F64,
        radius: f64,
        color: &'static str,
        line: Line,
    },
    Marker {
        at: Point2F64,
        color: &'static str,
        label: String,
    },
}

#[derive(Debug, Clone, Default)]
pub struct Svg {
    shapes: Vec<Shape>,
    min: Option<Point2F64>,
    max: Option<Point2F64>,
}

/// Fraction of the content extent added on every side.
const MARGIN: f64 = 0.1;

impl Svg {
    pub fn new() -> Self {
        Self::default()
    }

    fn include(&mut self, p: Point2F64) {
        let (lo, hi) = match (self.min, self.max) {
            (Some(lo), Some(hi)) => (
                Point2F64::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point2F64::new(hi.x.max(p.x), hi.y.max(p.y)),
            ),
            _ => (p, p),
        };
        self.min = Some(lo);
        self.max = Some(hi);
    }

    pub fn polyline(&mut self, points: Vec<Point2F64>, color: &'static str, line: Line) {
        self.path(points, false, color, line);
    }

    pub fn polygon(&mut self, points: Vec<Point2F64>, color: &'static str, line: Line) {
        self.path(points, true, color, line);
    }

    fn path(&mut self, points: Vec<Point2F64>, closed: bool, color: &'static str, line: Line) {
        if points.is_empty() {
            return;
        }
        points.iter().for_each(|&p| self.include(p));
        self.shapes.push(Shape::Path {
            points,
            closed,
            color,
            line,
        });
    }

    pub fn circle(&mut self, center: Point2F64, radius: f64, color: &'static str, line: Line) {
        self.include(Point2F64::new(center.x - radius, center.y - radius));
        self.include(Point2F64::new(center.x + radius, center.y + radius));
        self.shapes.push(Shape::Circle {
            center,
            radius,
            color,
            line,
        });
    }

    pub fn marker(&mut self, at: Point2F64, color: &'static str, label: impl Into<String>) {
        self.include(at);
        self.shapes.push(Shape::Marker {
            at,
            color,
            label: label.into(),
        });
    }

    /// `(min_x, min_y, width, height)` in document coordinates.
    pub fn view_box(&self) -> (f64, f64, f64, f64) {
        let (lo, hi) = match (self.min, self.max) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return (-1.0, -1.0, 2.0, 2.0),
        };
        let w = (hi.x - lo.x).max(1e-9);
        let h = (hi.y - lo.y).max(1e-9);
        (
            lo.x - MARGIN * w,
            -hi.y - MARGIN * h,
            w * (1.0 + 2.0 * MARGIN),
            h * (1.0 + 2.0 * MARGIN),
        )
    }

    pub fn render(&self) -> String {
        let (x, y, w, h) = self.view_box();
        let stroke = 0.003 * w.max(h);
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x:.6} {y:.6} {w:.6} {h:.6}" width="800" height="{:.0}">"#,
            800.0 * h / w
        );
        let _ = writeln!(
            out,
            r#"<rect x="{x:.6}" y="{y:.6}" width="{w:.6}" height="{h:.6}" fill="white"/>"#
        );
        let dash = |line: Line| match line {
            Line::Solid => String::new(),
            Line::Dashed => format!(
                r#" stroke-dasharray="{:.6} {:.6}""#,
                4.0 * stroke,
                3.0 * stroke
            ),
        };
        for shape in &self.shapes {
            match shape {
                Shape::Path {
                    points,
                    closed,
                    color,
                    line,
                } => {
                    let pts = points
                        .iter()
                        .map(|p| format!("{:.6},{:.6}", p.x, -p.y))
                        .collect::<Vec<_>>()
                        .join(" ");
                    let tag = if *closed { "polygon" } else { "polyline" };
                    let _ = writeln!(
                        out,
                        r#"<{tag} points="{pts}" fill="none" stroke="{color}" stroke-width="{stroke:.6}"{}/>"#,
                        dash(*line)
                    );
                }
                Shape::Circle {
                    center,
                    radius,
                    color,
                    line,
                } => {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{:.6}" cy="{:.6}" r="{radius:.6}" fill="none" stroke="{color}" stroke-width="{stroke:.6}"{}/>"#,
                        center.x,
                        -center.y,
                        dash(*line)
                    );
                }
                Shape::Marker { at, color, label } => {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="{color}"/>"#,
                        at.x,
                        -at.y,
                        2.0 * stroke
                    );
                    if !label.is_empty() {
                        let _ = writeln!(
                            out,
                            r#"<text x="{:.6}" y="{:.6}" font-size="{:.6}" font-family="sans-serif" fill="{color}">{label}</text>"#,
                            at.x + 3.0 * stroke,
                            -at.y - 3.0 * stroke,
                            12.0 * stroke
                        );
                    }
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn view_box_has_ten_percent_margin() {
        let mut s = Svg::new();
        s.polyline(
            vec![Point2F64::new(0.0, 0.0), Point2F64::new(10.0, 5.0)],
            "black",
            Line::Solid,
        );
        let (x, y, w, h) = s.view_box();
        assert!((x + 1.0).abs() < 1e-12 && (w - 12.0).abs() < 1e-12);
        assert!((y + 5.5).abs() < 1e-12 && (h - 6.0).abs() < 1e-12);
    }

    #[test]
    fn circle_extends_bounds() {
        let mut s = Svg::new();
        s.circle(Point2F64::new(1.0, 1.0), 2.0, "red", Line::Dashed);
        let (_, _, w, h) = s.view_box();
        assert!((w - 4.8).abs() < 1e-12 && (h - 4.8).abs() < 1e-12);
        let doc = s.render();
        assert!(doc.starts_with("<svg") && doc.trim_end().ends_with("</svg>"));
        assert!(doc.contains("stroke-dasharray"));
    }
}
