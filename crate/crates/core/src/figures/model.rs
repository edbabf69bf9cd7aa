use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{FigureKind, FigureSpec, CURVE_SAMPLES};
use crate::cert::{E_LOWER_SPLITS, E_UPPER_SPLITS};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::ln::{ln_enclosure, BoundMethod, Partition};

pub type Point = (Rational, Rational);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlayRole {
    /// On or below `y = 1/x`.
    Lower,
    /// On or above `y = 1/x`.
    Upper,
    Neutral,
}

/// A closed polygon. `top` is the edge compared against the curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub role: OverlayRole,
    pub class: &'static str,
    pub outline: Vec<Point>,
    pub top: Vec<Point>,
}

impl Shape {
    pub fn is_overlay(&self) -> bool {
        self.class.split_whitespace().any(|c| c == "overlay")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label {
    pub at: Point,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FigureModel {
    pub kind: FigureKind,
    pub caption: String,
    pub window: Window,
    pub curve: Vec<Point>,
    /// A second curve drawn for reference only.
    pub aux_curve: Vec<Point>,
    pub shapes: Vec<Shape>,
    pub labels: Vec<Label>,
}

impl FigureModel {
    pub fn overlays(&self) -> impl Iterator<Item = &Shape> {
        self.shapes.iter().filter(|s| s.is_overlay())
    }

    pub fn overlay_count(&self) -> usize {
        self.overlays().count()
    }

    /// Every lower top edge lies on or below `1/x` and every upper one on or
    /// above it, at the edge vertices and at each curve sample in between.
    pub fn check_soundness(&self) -> Result<()> {
        for (i, s) in self.shapes.iter().enumerate() {
            if s.role == OverlayRole::Neutral {
                continue;
            }
            for w in s.top.windows(2) {
                let ((px, py), (qx, qy)) = (&w[0], &w[1]);
                if px == qx {
                    continue;
                }
                let inner = self.curve.iter().map(|(x, _)| x).filter(|x| *x > px && *x < qx);
                for x in [px, qx].into_iter().chain(inner) {
                    if !x.is_positive() {
                        continue;
                    }
                    let y = py + (qy - py) * (x - px) / (qx - px);
                    let c = x.recip_unchecked();
                    let ok = match s.role {
                        OverlayRole::Lower => y <= c,
                        OverlayRole::Upper => y >= c,
                        OverlayRole::Neutral => true,
                    };
                    if !ok {
                        return Err(Error::domain(format!(
                            "shape {i} ({:?}) crosses the curve at x = {x}",
                            s.role
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn param(spec: &FigureSpec, name: &str) -> Result<Rational> {
    spec.params
        .get(name)
        .cloned()
        .ok_or_else(|| Error::domain(format!("{} figure needs parameter {name}", spec.kind)))
}

fn count_param(spec: &FigureSpec, name: &str, min: u64) -> Result<u64> {
    let v = param(spec, name)?;
    match v.numer().to_u64() {
        Some(n) if v.is_integer() && n >= min && n <= 10_000 => Ok(n),
        _ => Err(Error::domain(format!(
            "{name} must be an integer in [{min}, 10000], got {v}"
        ))),
    }
}

fn ordered_pair(spec: &FigureSpec) -> Result<(Rational, Rational)> {
    let (a, b) = (param(spec, "a")?, param(spec, "b")?);
    if !a.is_positive() || b <= a {
        return Err(Error::domain(format!("figure needs 0 < a < b, got a = {a}, b = {b}")));
    }
    Ok((a, b))
}

fn int(n: u64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// `[0, 1.1 b] x [0, 1.1 / a]`.
fn window(a: &Rational, b: &Rational) -> Window {
    let grow = Rational::frac(11, 10);
    Window {
        x0: Rational::zero(),
        x1: b * &grow,
        y0: Rational::zero(),
        y1: a.recip_unchecked() * grow,
    }
}

/// Samples of `y = f(x)` uniform in `x` from where the curve enters the
/// window to its right edge.
fn sample(w: &Window, f: impl Fn(&Rational) -> Rational) -> Vec<Point> {
    let start = w.y1.recip_unchecked();
    let step = (&w.x1 - &start) / int(CURVE_SAMPLES as u64 - 1);
    (0..CURVE_SAMPLES)
        .map(|i| {
            let x = &start + &step * int(i as u64);
            let y = f(&x);
            (x, y)
        })
        .collect()
}

fn hyperbola(x: &Rational) -> Rational {
    x.recip_unchecked()
}

/// The curve from `lo` to `hi`, through the samples strictly between.
fn curve_between(samples: &[Point], lo: &Rational, hi: &Rational) -> Vec<Point> {
    let mut v = vec![(lo.clone(), hyperbola(lo))];
    v.extend(samples.iter().filter(|(x, _)| x > lo && x < hi).cloned());
    v.push((hi.clone(), hyperbola(hi)));
    v
}

fn rect(
    x0: &Rational,
    x1: &Rational,
    bottom: &Rational,
    top: &Rational,
    role: OverlayRole,
    class: &'static str,
) -> Shape {
    Shape {
        role,
        class,
        outline: vec![
            (x0.clone(), bottom.clone()),
            (x0.clone(), top.clone()),
            (x1.clone(), top.clone()),
            (x1.clone(), bottom.clone()),
        ],
        top: vec![(x0.clone(), top.clone()), (x1.clone(), top.clone())],
    }
}

/// Trapezoid under the chord from `(a, 1/a)` to `(b, 1/b)`.
fn secant_trapezoid(a: &Rational, b: &Rational) -> Shape {
    let top = vec![(a.clone(), hyperbola(a)), (b.clone(), hyperbola(b))];
    let mut outline = vec![(a.clone(), Rational::zero())];
    outline.extend(top.iter().cloned());
    outline.push((b.clone(), Rational::zero()));
    Shape {
        role: OverlayRole::Upper,
        class: "overlay upper",
        outline,
        top,
    }
}

/// Trapezoid under the tangent at the midpoint of `[a, b]`.
fn tangent_trapezoid(a: &Rational, b: &Rational) -> Shape {
    let m = (a + b).half();
    let m2 = &m * &m;
    let t = |x: &Rational| (&m + &m - x) / &m2;
    let top = vec![(a.clone(), t(a)), (b.clone(), t(b))];
    let mut outline = vec![(a.clone(), Rational::zero())];
    outline.extend(top.iter().cloned());
    outline.push((b.clone(), Rational::zero()));
    Shape {
        role: OverlayRole::Lower,
        class: "overlay lower",
        outline,
        top,
    }
}

fn tick(x: &Rational) -> Label {
    Label {
        at: (x.clone(), Rational::zero()),
        text: x.to_string(),
    }
}

fn uniform(a: &Rational, b: &Rational, pieces: u64) -> Vec<Rational> {
    let step = (b - a) / int(pieces);
    (0..=pieces).map(|i| a + &step * int(i)).collect()
}

fn join_terms(p: &Partition, method: BoundMethod) -> (String, Rational) {
    let terms = p.terms(method);
    let text = terms
        .iter()
        .map(|t| t.value.to_string())
        .collect::<Vec<_>>()
        .join(" + ");
    (text, p.sum(method))
}

/// Exact geometry for a figure spec.
pub fn model(spec: &FigureSpec) -> Result<FigureModel> {
    let zero = Rational::zero();
    let one = Rational::one();
    let mut aux_curve = Vec::new();
    let (window, shapes, caption, ticks) = match spec.kind {
        FigureKind::BoundTrapezoidUpper | FigureKind::BoundMidpointLower => {
            let (a, b) = ordered_pair(spec)?;
            let pieces = count_param(spec, "pieces", 1)?;
            let pts = uniform(&a, &b, pieces);
            let p = Partition::new(pts.clone())?;
            let (shapes, method, rel): (Vec<Shape>, _, _) = if spec.kind == FigureKind::BoundTrapezoidUpper {
                (
                    p.segments().map(|(x, y)| secant_trapezoid(x, y)).collect(),
                    BoundMethod::TrapezoidUpper,
                    "<",
                )
            } else {
                (
                    p.segments().map(|(x, y)| tangent_trapezoid(x, y)).collect(),
                    BoundMethod::MidpointLower,
                    ">",
                )
            };
            let caption = format!("ln({b}) - ln({a}) {rel} {}", p.sum(method));
            (window(&a, &b), shapes, caption, pts)
        }
        FigureKind::BoundChordUpper | FigureKind::BoundChordLower => {
            let (a, b) = ordered_pair(spec)?;
            let (shape, rel, value) = if spec.kind == FigureKind::BoundChordUpper {
                let h = a.recip_unchecked();
                (
                    rect(&a, &b, &zero, &h, OverlayRole::Upper, "overlay upper"),
                    "<",
                    (&b - &a) / &a,
                )
            } else {
                let h = b.recip_unchecked();
                (
                    rect(&a, &b, &zero, &h, OverlayRole::Lower, "overlay lower"),
                    ">",
                    (&b - &a) / &b,
                )
            };
            let caption = format!("ln({b}) - ln({a}) {rel} {value}");
            (window(&a, &b), vec![shape], caption, vec![a, b])
        }
        FigureKind::GeometricRectangles => {
            let r = param(spec, "r")?;
            if r <= one {
                return Err(Error::domain(format!("geometric figure needs r > 1, got {r}")));
            }
            let m = count_param(spec, "m", 0)?;
            let inv = r.recip_unchecked();
            let mut shapes = vec![
                rect(&zero, &one, &zero, &one, OverlayRole::Neutral, "region"),
                rect(&zero, &one, &inv, &one, OverlayRole::Lower, "band lower"),
                rect(&one, &r, &zero, &inv, OverlayRole::Lower, "band lower"),
            ];
            let mut h = inv.clone();
            for _ in 0..m {
                let next = &h * &inv;
                shapes.push(rect(&one, &r, &next, &h, OverlayRole::Lower, "overlay lower"));
                h = next;
            }
            let caption = format!(
                "1 - 1/{r} = ({r} - 1)/{r}; 1 + 1/r + 1/r^2 + ... = {}",
                &r / &(&r - &one)
            );
            (window(&one, &r), shapes, caption, vec![inv, one.clone(), r.clone()])
        }
        FigureKind::PowerInequality => {
            let (a, b) = ordered_pair(spec)?;
            if a <= one {
                return Err(Error::domain(format!("power figure needs a > 1, got {a}")));
            }
            let w = window(&a, &b);
            let ln_a = ln_enclosure(&a, &Rational::ten_pow_neg(6))?.midpoint();
            aux_curve = sample(&w, |x| (x * &ln_a).recip_unchecked());
            let h = a.recip_unchecked();
            let caption = format!("ln({b})/ln({a}) - 1 < {b}/{a} - 1 = {}", &b / &a - &one);
            (
                w,
                vec![rect(&a, &b, &zero, &h, OverlayRole::Upper, "overlay upper")],
                caption,
                vec![a, b],
            )
        }
        FigureKind::PartitionLowerE | FigureKind::PartitionUpperE => {
            let lower = spec.kind == FigureKind::PartitionLowerE;
            let pts: &[i64] = if lower { &E_UPPER_SPLITS } else { &E_LOWER_SPLITS };
            let p = Partition::from_integers(pts)?;
            let (shapes, method): (Vec<Shape>, _) = if lower {
                (
                    p.segments().map(|(x, y)| tangent_trapezoid(x, y)).collect(),
                    BoundMethod::MidpointLower,
                )
            } else {
                (
                    p.segments().map(|(x, y)| secant_trapezoid(x, y)).collect(),
                    BoundMethod::TrapezoidUpper,
                )
            };
            let (terms, sum) = join_terms(&p, method);
            let caption = if lower {
                format!("ln({}/{}) > {terms} = {sum}", p.last(), p.first())
            } else {
                format!("ln({}/{}) < {terms} = {sum} < 1", p.last(), p.first())
            };
            (window(p.first(), p.last()), shapes, caption, p.points().to_vec())
        }
        FigureKind::GammaShadedArea => {
            let n = count_param(spec, "n", 2)?;
            let nr = int(n);
            let shapes: Vec<Shape> = (1..n)
                .map(|k| {
                    rect(
                        &int(k),
                        &int(k + 1),
                        &zero,
                        &int(k + 1).recip_unchecked(),
                        OverlayRole::Lower,
                        "overlay lower",
                    )
                })
                .collect();
            let caption = format!("ln {n} - 1/2 - ... - 1/{n} = 1 - gamma_{n}");
            (window(&one, &nr), shapes, caption, (1..=n).map(int).collect())
        }
        FigureKind::GammaShiftedArea => {
            let n = count_param(spec, "n", 1)?;
            let shapes: Vec<Shape> = (1..=n)
                .map(|k| {
                    rect(
                        &int(k),
                        &int(k + 1),
                        &zero,
                        &int(k).recip_unchecked(),
                        OverlayRole::Upper,
                        "overlay upper",
                    )
                })
                .collect();
            let caption = format!("A_{n} = 1 + 1/2 + ... + 1/{n} - ln({})", n + 1);
            (
                window(&one, &int(n + 1)),
                shapes,
                caption,
                (1..=n + 1).map(int).collect(),
            )
        }
    };
    let curve = sample(&window, hyperbola);
    let mut shapes = shapes;
    match spec.kind {
        FigureKind::GammaShadedArea => {
            let n = count_param(spec, "n", 2)?;
            let mut outline = curve_between(&curve, &one, &int(n));
            for k in (1..n).rev() {
                let h = int(k + 1).recip_unchecked();
                outline.push((int(k), h));
                outline.push((int(k), int(k).recip_unchecked()));
            }
            outline.pop();
            shapes.insert(0, shade(outline));
        }
        FigureKind::GammaShiftedArea => {
            let n = count_param(spec, "n", 1)?;
            let mut outline = Vec::new();
            for k in 1..=n {
                let h = int(k).recip_unchecked();
                outline.push((int(k), h.clone()));
                outline.push((int(k + 1), h));
            }
            let mut back = curve_between(&curve, &one, &int(n + 1));
            back.reverse();
            outline.extend(back);
            shapes.insert(0, shade(outline));
        }
        FigureKind::PowerInequality => {
            let (a, b) = ordered_pair(spec)?;
            let mut outline = vec![(a.clone(), zero.clone())];
            outline.extend(aux_curve.iter().filter(|(x, _)| x >= &a && x <= &b).cloned());
            outline.push((b.clone(), zero.clone()));
            shapes.insert(0, shade(outline));
        }
        _ => {}
    }
    Ok(FigureModel {
        kind: spec.kind,
        caption,
        window,
        curve,
        aux_curve,
        shapes,
        labels: ticks.iter().map(tick).collect(),
    })
}

fn shade(outline: Vec<Point>) -> Shape {
    Shape {
        role: OverlayRole::Neutral,
        class: "shade",
        outline,
        top: Vec::new(),
    }
}
