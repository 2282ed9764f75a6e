//! SVG 1.1 pictures of two-dimensional areas, drawn inside a bounded ambient
//! rectangle. One coordinate unit is 40 user units and the y axis points up.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::area::CubicalArea;
use crate::cube::Cube;
use crate::interval::{Endpoint, Rational};

pub const UNIT: f64 = 40.0;
const MARGIN: f64 = 30.0;
pub const FORBIDDEN_FILL: &str = "#d3d3d3";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SvgError {
    #[error("pictures are two-dimensional, got dimension {0}")]
    NotPlanar(usize),
    #[error("the ambient rectangle must be bounded")]
    Unbounded,
}

enum Layer {
    Fill(CubicalArea, String),
    Stroke(CubicalArea, String),
    Points(Vec<Vec<Rational>>),
}

pub struct Figure {
    x: (f64, f64),
    y: (f64, f64),
    labels: Option<(String, String)>,
    layers: Vec<Layer>,
}

fn bound(e: &Endpoint) -> Option<f64> {
    e.value().and_then(ToPrimitive::to_f64)
}

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

impl Figure {
    pub fn new(ambient: &Cube) -> Result<Self, SvgError> {
        if ambient.dim() != 2 {
            return Err(SvgError::NotPlanar(ambient.dim()));
        }
        let range = |axis: usize| -> Result<(f64, f64), SvgError> {
            let iv = ambient.factor(axis);
            Ok((
                bound(iv.lo()).ok_or(SvgError::Unbounded)?,
                bound(iv.hi()).ok_or(SvgError::Unbounded)?,
            ))
        };
        Ok(Figure {
            x: range(0)?,
            y: range(1)?,
            labels: None,
            layers: Vec::new(),
        })
    }

    fn check(area: &CubicalArea) -> Result<(), SvgError> {
        if area.dim() == 2 {
            Ok(())
        } else {
            Err(SvgError::NotPlanar(area.dim()))
        }
    }

    pub fn fill(mut self, area: &CubicalArea, color: &str) -> Result<Self, SvgError> {
        Self::check(area)?;
        self.layers.push(Layer::Fill(area.clone(), color.to_string()));
        Ok(self)
    }

    pub fn stroke(mut self, area: &CubicalArea, color: &str) -> Result<Self, SvgError> {
        Self::check(area)?;
        self.layers.push(Layer::Stroke(area.clone(), color.to_string()));
        Ok(self)
    }

    pub fn points(mut self, points: &[Vec<Rational>]) -> Self {
        self.layers
            .push(Layer::Points(points.iter().filter(|p| p.len() == 2).cloned().collect()));
        self
    }

    pub fn labels(mut self, x: &str, y: &str) -> Self {
        self.labels = Some((x.to_string(), y.to_string()));
        self
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x.0) * UNIT
    }

    fn py(&self, y: f64) -> f64 {
        MARGIN + (self.y.1 - y) * UNIT
    }

    /// The cube clamped to the ambient rectangle, in pixels.
    fn rect(&self, c: &Cube) -> Option<(f64, f64, f64, f64)> {
        let clamp = |e: &Endpoint, (lo, hi): (f64, f64), default: f64| bound(e).unwrap_or(default).clamp(lo, hi);
        let (x0, x1) = (
            clamp(c.factor(0).lo(), self.x, self.x.0),
            clamp(c.factor(0).hi(), self.x, self.x.1),
        );
        let (y0, y1) = (
            clamp(c.factor(1).lo(), self.y, self.y.0),
            clamp(c.factor(1).hi(), self.y, self.y.1),
        );
        (x0 <= x1 && y0 <= y1).then(|| (self.px(x0), self.py(y1), (x1 - x0) * UNIT, (y1 - y0) * UNIT))
    }

    pub fn render(&self) -> String {
        let width = 2.0 * MARGIN + (self.x.1 - self.x.0) * UNIT;
        let height = 2.0 * MARGIN + (self.y.1 - self.y.0) * UNIT;
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
            w = num(width),
            h = num(height)
        )
        .unwrap();
        let (ax, ay) = (self.px(self.x.0), self.py(self.y.1));
        writeln!(
            out,
            "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>",
            num(ax),
            num(ay),
            num((self.x.1 - self.x.0) * UNIT),
            num((self.y.1 - self.y.0) * UNIT)
        )
        .unwrap();
        for layer in &self.layers {
            match layer {
                Layer::Fill(area, color) => {
                    writeln!(out, "  <g fill=\"{color}\" stroke=\"none\">").unwrap();
                    self.rects(&mut out, area);
                    out.push_str("  </g>\n");
                }
                Layer::Stroke(area, color) => {
                    writeln!(out, "  <g fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\">").unwrap();
                    self.rects(&mut out, area);
                    out.push_str("  </g>\n");
                }
                Layer::Points(points) => {
                    out.push_str("  <g fill=\"black\">\n");
                    for p in points {
                        let (x, y) = (p[0].to_f64().unwrap_or(0.0), p[1].to_f64().unwrap_or(0.0));
                        writeln!(
                            out,
                            "    <circle cx=\"{}\" cy=\"{}\" r=\"4\"/>",
                            num(self.px(x)),
                            num(self.py(y))
                        )
                        .unwrap();
                    }
                    out.push_str("  </g>\n");
                }
            }
        }
        if let Some((lx, ly)) = &self.labels {
            self.axes(&mut out, lx, ly);
        }
        out.push_str("</svg>\n");
        out
    }

    fn rects(&self, out: &mut String, area: &CubicalArea) {
        for c in area.cubes() {
            if let Some((x, y, w, h)) = self.rect(c) {
                writeln!(
                    out,
                    "    <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
                    num(x),
                    num(y),
                    num(w),
                    num(h)
                )
                .unwrap();
            }
        }
    }

    /// Integer ticks along both axes and the axis names.
    fn axes(&self, out: &mut String, lx: &str, ly: &str) {
        out.push_str("  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n");
        let base = self.py(self.y.0);
        for k in self.x.0.ceil() as i64..=self.x.1.floor() as i64 {
            writeln!(
                out,
                "    <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{k}</text>",
                num(self.px(k as f64)),
                num(base + 14.0)
            )
            .unwrap();
        }
        let left = self.px(self.x.0);
        for k in self.y.0.ceil() as i64..=self.y.1.floor() as i64 {
            writeln!(
                out,
                "    <text x=\"{}\" y=\"{}\" text-anchor=\"end\">{k}</text>",
                num(left - 5.0),
                num(self.py(k as f64) + 4.0)
            )
            .unwrap();
        }
        writeln!(
            out,
            "    <text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>",
            num(self.px(self.x.1)),
            num(base + 26.0),
            escape(lx)
        )
        .unwrap();
        writeln!(
            out,
            "    <text x=\"{}\" y=\"{}\" text-anchor=\"start\">{}</text>",
            num(left + 4.0),
            num(self.py(self.y.1) - 8.0),
            escape(ly)
        )
        .unwrap();
        out.push_str("  </g>\n");
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;
    use crate::pv::{ambient, forbidden_region, model, parse};

    #[test]
    fn swiss_flag_picture() {
        let prog = parse("T1 = Pa.Pb.Vb.Va\nT2 = Pb.Pa.Va.Vb").unwrap();
        let amb = ambient(&prog).unwrap();
        let svg = Figure::new(&amb)
            .unwrap()
            .fill(&forbidden_region(&prog).unwrap(), FORBIDDEN_FILL)
            .unwrap()
            .stroke(&model(&prog).unwrap(), "black")
            .unwrap()
            .points(&[vec![rat(2), rat(2)]])
            .labels("T1", "T2")
            .render();
        // 5 units plus margins
        assert!(svg.contains("width=\"260\" height=\"260\""));
        // (1,4)x(2,3): left edge at x=1, top edge at y=3
        assert!(svg.contains("<rect x=\"70\" y=\"110\" width=\"120\" height=\"40\"/>"));
        assert!(svg.contains("<circle cx=\"110\" cy=\"150\" r=\"4\"/>"));
        assert_eq!(svg.matches("<rect").count(), 1 + 2 + model(&prog).unwrap().len());
    }

    #[test]
    fn rejects_other_dimensions() {
        assert_eq!(Figure::new(&Cube::full(2)).err(), Some(SvgError::Unbounded));
        let three = Cube::new(vec![crate::interval::Interval::closed(rat(0), rat(1)).unwrap(); 3]).unwrap();
        assert_eq!(Figure::new(&three).err(), Some(SvgError::NotPlanar(3)));
    }
}
