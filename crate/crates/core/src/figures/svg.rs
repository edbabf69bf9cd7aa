use std::fmt::Write;

use super::model::{FigureModel, Point};
use super::{Canvas, DECIMALS};
use crate::exact::Rational;

const LEFT: i64 = 48;
const RIGHT: i64 = 16;
const TOP: i64 = 40;
const BOTTOM: i64 = 40;

/// Rendered SVG text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvgDocument {
    text: String,
}

impl SvgDocument {
    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

struct Transform {
    x0: Rational,
    y1: Rational,
    sx: Rational,
    sy: Rational,
}

impl Transform {
    fn new(m: &FigureModel, c: Canvas) -> Self {
        let w = &m.window;
        let plot_w = Rational::int(c.width as i64 - LEFT - RIGHT);
        let plot_h = Rational::int(c.height as i64 - TOP - BOTTOM);
        Transform {
            x0: w.x0.clone(),
            y1: w.y1.clone(),
            sx: plot_w / (&w.x1 - &w.x0),
            sy: plot_h / (&w.y1 - &w.y0),
        }
    }

    fn x(&self, x: &Rational) -> Rational {
        Rational::int(LEFT) + (x - &self.x0) * &self.sx
    }

    fn y(&self, y: &Rational) -> Rational {
        Rational::int(TOP) + (&self.y1 - y) * &self.sy
    }

    fn point(&self, p: &Point) -> String {
        format!("{},{}", num(&self.x(&p.0)), num(&self.y(&p.1)))
    }

    fn points(&self, ps: &[Point]) -> String {
        ps.iter().map(|p| self.point(p)).collect::<Vec<_>>().join(" ")
    }
}

fn num(x: &Rational) -> String {
    x.to_decimal(DECIMALS)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn style(class: &str) -> &'static str {
    if class.contains("shade") {
        r##"fill="#c8c8c8" stroke="none""##
    } else if class.contains("upper") {
        r##"fill="#e45756" fill-opacity="0.35" stroke="#a02c2c""##
    } else if class.contains("lower") {
        r##"fill="#4c78a8" fill-opacity="0.35" stroke="#1f4e79""##
    } else {
        r##"fill="none" stroke="#666666" stroke-dasharray="4 3""##
    }
}

pub(super) fn serialize(m: &FigureModel, c: Canvas) -> SvgDocument {
    let t = Transform::new(m, c);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = c.width,
        h = c.height
    );
    let _ = writeln!(s, "<title>{}</title>", escape(&format!("{}: {}", m.kind, m.caption)));
    let _ = writeln!(
        s,
        r#"<rect class="background" x="0" y="0" width="{}" height="{}" fill="white"/>"#,
        c.width, c.height
    );
    for shape in &m.shapes {
        let _ = writeln!(
            s,
            r#"<polygon class="{}" points="{}" {}/>"#,
            shape.class,
            t.points(&shape.outline),
            style(shape.class)
        );
    }
    let w = &m.window;
    let origin = (w.x0.clone(), w.y0.clone());
    let _ = writeln!(
        s,
        r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        num(&t.x(&origin.0)),
        num(&t.y(&origin.1)),
        num(&t.x(&w.x1)),
        num(&t.y(&origin.1))
    );
    let _ = writeln!(
        s,
        r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        num(&t.x(&origin.0)),
        num(&t.y(&origin.1)),
        num(&t.x(&origin.0)),
        num(&t.y(&w.y1))
    );
    let _ = writeln!(
        s,
        r#"<polyline class="curve" points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        t.points(&m.curve)
    );
    if !m.aux_curve.is_empty() {
        let _ = writeln!(
            s,
            r##"<polyline class="curve aux" points="{}" fill="none" stroke="#1f4e79" stroke-dasharray="6 3"/>"##,
            t.points(&m.aux_curve)
        );
    }
    for l in &m.labels {
        let _ = writeln!(
            s,
            r#"<text class="tick" x="{}" y="{}" font-size="11" text-anchor="middle">{}</text>"#,
            num(&t.x(&l.at.0)),
            num(&(t.y(&l.at.1) + Rational::int(16))),
            escape(&l.text)
        );
    }
    let _ = writeln!(
        s,
        r#"<text class="label" x="{}" y="{}" font-size="10" text-anchor="start">y = 1/x</text>"#,
        LEFT + 8,
        TOP - 4
    );
    let _ = writeln!(
        s,
        r#"<text class="caption" x="{}" y="24" font-size="14" text-anchor="middle">{}</text>"#,
        c.width / 2,
        escape(&m.caption)
    );
    s.push_str("</svg>\n");
    SvgDocument { text: s }
}
