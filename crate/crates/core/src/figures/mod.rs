//! Deterministic SVG renderings of the area arguments.
//!
//! Geometry is built in exact rationals first ([`model`]), checked against
//! the curve `y = 1/x`, and only then formatted with [`DECIMALS`] digits.

mod model;
mod svg;

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::Rational;

pub use model::{model, FigureModel, OverlayRole, Shape, Window};
pub use svg::SvgDocument;

/// Points on the curve polyline, uniform in `x` across the window.
pub const CURVE_SAMPLES: usize = 256;
/// Digits after the decimal point in coordinates, rounded half to even.
pub const DECIMALS: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FigureKind {
    BoundTrapezoidUpper,
    BoundMidpointLower,
    BoundChordUpper,
    BoundChordLower,
    GeometricRectangles,
    PowerInequality,
    PartitionLowerE,
    PartitionUpperE,
    GammaShadedArea,
    GammaShiftedArea,
}

impl FigureKind {
    pub const ALL: [FigureKind; 10] = [
        FigureKind::BoundTrapezoidUpper,
        FigureKind::BoundMidpointLower,
        FigureKind::BoundChordUpper,
        FigureKind::BoundChordLower,
        FigureKind::GeometricRectangles,
        FigureKind::PowerInequality,
        FigureKind::PartitionLowerE,
        FigureKind::PartitionUpperE,
        FigureKind::GammaShadedArea,
        FigureKind::GammaShiftedArea,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            FigureKind::BoundTrapezoidUpper => "trapezoid-upper",
            FigureKind::BoundMidpointLower => "midpoint-lower",
            FigureKind::BoundChordUpper => "chord-upper",
            FigureKind::BoundChordLower => "chord-lower",
            FigureKind::GeometricRectangles => "geometric",
            FigureKind::PowerInequality => "power",
            FigureKind::PartitionLowerE => "partition-lower-e",
            FigureKind::PartitionUpperE => "partition-upper-e",
            FigureKind::GammaShadedArea => "gamma-shaded",
            FigureKind::GammaShiftedArea => "gamma-shifted",
        }
    }
}

impl fmt::Display for FigureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for FigureKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FigureKind::ALL
            .into_iter()
            .find(|k| k.slug() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "unknown figure kind".to_string(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Canvas {
    pub width: u32,
    pub height: u32,
}

impl Default for Canvas {
    fn default() -> Self {
        Canvas {
            width: 640,
            height: 480,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FigureSpec {
    pub kind: FigureKind,
    pub params: BTreeMap<String, Rational>,
    pub canvas: Canvas,
}

impl FigureSpec {
    /// A spec with the kind's default parameters.
    pub fn new(kind: FigureKind) -> Self {
        let p: &[(&str, Rational)] = match kind {
            FigureKind::BoundTrapezoidUpper | FigureKind::BoundMidpointLower => &[
                ("a", Rational::int(1)),
                ("b", Rational::int(2)),
                ("pieces", Rational::int(1)),
            ],
            FigureKind::BoundChordUpper | FigureKind::BoundChordLower => {
                &[("a", Rational::int(2)), ("b", Rational::int(3))]
            }
            FigureKind::GeometricRectangles => &[("r", Rational::int(2)), ("m", Rational::int(4))],
            FigureKind::PowerInequality => &[("a", Rational::int(3)), ("b", Rational::int(4))],
            FigureKind::PartitionLowerE | FigureKind::PartitionUpperE => &[],
            FigureKind::GammaShadedArea | FigureKind::GammaShiftedArea => &[("n", Rational::int(5))],
        };
        FigureSpec {
            kind,
            params: p.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            canvas: Canvas::default(),
        }
    }

    pub fn with_param(mut self, name: &str, value: Rational) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    /// The spec behind `figNN.svg`, or `None` for numbers without a file.
    pub fn numbered(number: u32) -> Option<Self> {
        let (kind, extra): (FigureKind, &[(&str, i64)]) = match number {
            1 => (FigureKind::BoundTrapezoidUpper, &[]),
            2 => (FigureKind::BoundMidpointLower, &[("a", 4), ("b", 6)]),
            5 => (FigureKind::GeometricRectangles, &[]),
            6 => (FigureKind::PowerInequality, &[]),
            9 => (FigureKind::PartitionLowerE, &[]),
            10 => (FigureKind::PartitionUpperE, &[]),
            11 => (FigureKind::GammaShadedArea, &[]),
            12 => (FigureKind::GammaShiftedArea, &[]),
            13 => (FigureKind::BoundChordLower, &[]),
            14 => (FigureKind::BoundChordUpper, &[]),
            15 => (FigureKind::BoundTrapezoidUpper, &[("a", 1), ("b", 5), ("pieces", 4)]),
            _ => return None,
        };
        Some(
            extra
                .iter()
                .fold(FigureSpec::new(kind), |s, &(k, v)| s.with_param(k, Rational::int(v))),
        )
    }

    /// Accepts `figNN`, `figNN.svg`, `NN` or a kind name such as
    /// `partition-lower-e`.
    pub fn by_name(name: &str) -> Result<Self> {
        let stem = name.strip_suffix(".svg").unwrap_or(name);
        let digits = stem.strip_prefix("fig").unwrap_or(stem);
        if let Ok(n) = digits.parse::<u32>() {
            return FigureSpec::numbered(n).ok_or_else(|| Error::Parse {
                input: name.to_string(),
                reason: format!("no figure file for number {n}"),
            });
        }
        Ok(FigureSpec::new(stem.parse()?))
    }
}

/// File numbers written by [`render_all`].
pub const FIGURE_NUMBERS: [u32; 11] = [1, 2, 5, 6, 9, 10, 11, 12, 13, 14, 15];

pub fn file_name(number: u32) -> String {
    format!("fig{number:02}.svg")
}

pub fn render(spec: &FigureSpec) -> Result<SvgDocument> {
    let m = model(spec)?;
    m.check_soundness()?;
    Ok(svg::serialize(&m, spec.canvas))
}

/// Writes every numbered figure into `out_dir` and returns the file names in
/// order.
pub fn render_all(out_dir: &Path) -> Result<Vec<String>> {
    let mut names = Vec::with_capacity(FIGURE_NUMBERS.len());
    for n in FIGURE_NUMBERS {
        let spec = FigureSpec::numbered(n).expect("numbered figure");
        let doc = render(&spec)?;
        let name = file_name(n);
        let path = out_dir.join(&name);
        fs::write(&path, doc.as_str()).map_err(|source| Error::Write { path, source })?;
        names.push(name);
    }
    Ok(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn overlays(n: u32) -> usize {
        model(&FigureSpec::numbered(n).unwrap()).unwrap().overlay_count()
    }

    #[test]
    fn overlay_counts() {
        assert_eq!(overlays(9), 3);
        assert_eq!(overlays(10), 6);
        assert_eq!(overlays(5), 4);
        assert_eq!(overlays(15), 4);
        assert_eq!(overlays(11), 4);
        assert_eq!(overlays(12), 5);
    }

    #[test]
    fn every_figure_is_sound_and_stable() {
        for n in FIGURE_NUMBERS {
            let spec = FigureSpec::numbered(n).unwrap();
            let a = render(&spec).unwrap();
            assert_eq!(a, render(&spec).unwrap());
            assert!(a.as_str().starts_with("<?xml"));
        }
    }

    #[test]
    fn captions_carry_exact_sums() {
        let m = model(&FigureSpec::numbered(9).unwrap()).unwrap();
        assert!(m.caption.ends_with("2/5 + 2/5 + 1/5 = 1"), "{}", m.caption);
        let m = model(&FigureSpec::numbered(10).unwrap()).unwrap();
        assert!(m.caption.ends_with("= 629/630 < 1"), "{}", m.caption);
    }

    #[test]
    fn names() {
        for s in ["fig09", "fig09.svg", "9", "partition-lower-e"] {
            assert_eq!(FigureSpec::by_name(s).unwrap().kind, FigureKind::PartitionLowerE);
        }
        assert!(FigureSpec::by_name("fig07").is_err());
        assert!(FigureSpec::by_name("nope").is_err());
    }

    #[test]
    fn bad_params() {
        let spec = FigureSpec::new(FigureKind::GeometricRectangles).with_param("r", Rational::one());
        assert!(matches!(render(&spec), Err(Error::Domain(_))));
        let spec = FigureSpec::new(FigureKind::BoundChordUpper).with_param("b", Rational::int(1));
        assert!(matches!(render(&spec), Err(Error::Domain(_))));
    }

    #[test]
    fn unsound_overlay_is_caught() {
        let mut m = model(&FigureSpec::new(FigureKind::BoundChordLower)).unwrap();
        m.shapes[0].role = OverlayRole::Upper;
        assert!(m.check_soundness().is_err());
    }
}
