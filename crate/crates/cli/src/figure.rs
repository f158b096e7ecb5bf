//! Deterministic SVG 1.1 figures: the harmonic polar, the straightedge
//! construction of a fourth harmonic, and the polar conic of a point.

use std::fmt::Write;

use polarity_core::algebraic::{conic_polar_point, is_tangent_at, kth_polar, SymmetricForm};
use polarity_core::frame::{adapted_basis, ProjFrame};
use polarity_core::harmonic::{harmonic_trace, ruler_trace, ConstructionTrace, Element, StepKind};
use polarity_core::linalg::{self, Matrix};
use polarity_core::{AffineChart, Error, ProjHyperplane, ProjPoint, Rational, Scalar, Simplex};

use crate::error::CliError;
use crate::scene::Scene;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Harmonic,
    Ruler,
    Circumconic,
}

const SIZE: f64 = 640.0;
const MARGIN: f64 = 48.0;

/// Projective map to the drawing plane: `(Mx)_0 / (Mx)_2, (Mx)_1 / (Mx)_2`.
struct View {
    matrix: Matrix<f64>,
}

impl View {
    fn from_chart(chart: &AffineChart) -> Self {
        Self {
            matrix: chart
                .matrix()
                .iter()
                .map(|r| r.iter().map(Scalar::to_f64).collect())
                .collect(),
        }
    }

    fn image(&self, v: &[f64]) -> Option<(f64, f64)> {
        let w = linalg::mat_vec(&self.matrix, v);
        let scale = v.iter().map(|x| x * x).sum::<f64>().sqrt()
            * self.matrix[2].iter().map(|x| x * x).sum::<f64>().sqrt();
        if w[2].abs() <= 1e-9 * scale {
            return None;
        }
        Some((w[0] / w[2], w[1] / w[2]))
    }

    fn point(&self, p: &ProjPoint) -> Option<(f64, f64)> {
        self.image(p.to_float().coords())
    }

    /// `(a, b, c)` with the line `a x + b y + c = 0` in the drawing plane.
    fn line(&self, h: &ProjHyperplane) -> Option<(f64, f64, f64)> {
        let inv = linalg::inverse(&self.matrix)?;
        let l = linalg::mat_vec(&linalg::transpose(&inv), h.to_float().coeffs());
        let n = (l[0] * l[0] + l[1] * l[1]).sqrt();
        if n <= 1e-12 * l[2].abs() {
            return None;
        }
        Some((l[0], l[1], l[2]))
    }

    /// Whether every point is comfortably away from the line at infinity.
    fn sees(&self, points: &[ProjPoint]) -> bool {
        let row = &self.matrix[2];
        let rn = row.iter().map(|x| x * x).sum::<f64>().sqrt();
        points.iter().all(|p| {
            let v = p.to_float().coords().to_vec();
            let vn = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            linalg::dot(row, &v).abs() > 1e-3 * rn * vn
        })
    }
}

struct PointMark {
    label: String,
    coords: String,
    at: Option<(f64, f64)>,
}

struct LineMark {
    label: String,
    coords: String,
    fig: Option<u8>,
    class: &'static str,
    eq: Option<(f64, f64, f64)>,
}

#[derive(Default)]
struct Drawing {
    title: String,
    trace: String,
    notes: Vec<String>,
    points: Vec<PointMark>,
    lines: Vec<LineMark>,
    curves: Vec<(String, Vec<(f64, f64)>)>,
}

fn round(x: f64) -> String {
    format!("{:.3}", (x * 1000.0).round() / 1000.0 + 0.0)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Segment of `a x + b y + c = 0` inside the box, if any.
fn clip(eq: (f64, f64, f64), lo: (f64, f64), hi: (f64, f64)) -> Option<((f64, f64), (f64, f64))> {
    let (a, b, c) = eq;
    let mut hits: Vec<(f64, f64)> = Vec::new();
    if b.abs() > 1e-12 {
        for x in [lo.0, hi.0] {
            let y = -(a * x + c) / b;
            if y >= lo.1 - 1e-9 && y <= hi.1 + 1e-9 {
                hits.push((x, y));
            }
        }
    }
    if a.abs() > 1e-12 {
        for y in [lo.1, hi.1] {
            let x = -(b * y + c) / a;
            if x >= lo.0 - 1e-9 && x <= hi.0 + 1e-9 {
                hits.push((x, y));
            }
        }
    }
    // Extreme hits along the line direction.
    let dir = (-b, a);
    let key = |p: &(f64, f64)| p.0 * dir.0 + p.1 * dir.1;
    let first = hits.iter().copied().min_by(|p, q| key(p).total_cmp(&key(q)))?;
    let last = hits.iter().copied().max_by(|p, q| key(p).total_cmp(&key(q)))?;
    ((first.0 - last.0).abs() + (first.1 - last.1).abs() > 1e-9).then_some((first, last))
}

impl Drawing {
    fn render(&self) -> String {
        let mut pts: Vec<(f64, f64)> = self.points.iter().filter_map(|p| p.at).collect();
        pts.extend(self.curves.iter().flat_map(|(_, c)| c.iter().copied()));
        let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
        for (x, y) in &pts {
            lo = (lo.0.min(*x), lo.1.min(*y));
            hi = (hi.0.max(*x), hi.1.max(*y));
        }
        if pts.is_empty() {
            lo = (-1.0, -1.0);
            hi = (1.0, 1.0);
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let pad = 0.15 * span;
        let (cx, cy) = ((lo.0 + hi.0) / 2.0, (lo.1 + hi.1) / 2.0);
        let half = span / 2.0 + pad;
        let lo = (cx - half, cy - half);
        let hi = (cx + half, cy + half);
        let k = (SIZE - 2.0 * MARGIN) / (2.0 * half);
        let px = |p: (f64, f64)| {
            (
                round(MARGIN + (p.0 - lo.0) * k),
                round(SIZE - MARGIN - (p.1 - lo.1) * k),
            )
        };

        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(s, "<title>{}</title>", escape(&self.title));
        if !self.notes.is_empty() {
            let _ = writeln!(s, "<desc>");
            for n in &self.notes {
                let _ = writeln!(s, "{}", escape(n));
            }
            let _ = writeln!(s, "</desc>");
        }
        let _ = writeln!(s, "<metadata id=\"trace\">\n{}</metadata>", escape(&self.trace));
        let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);

        let _ = writeln!(s, r##"<g id="curves" fill="none" stroke="#1f5fa8" stroke-width="1.5">"##);
        for (label, curve) in &self.curves {
            let path: Vec<String> = curve
                .iter()
                .map(|p| {
                    let (x, y) = px(*p);
                    format!("{x},{y}")
                })
                .collect();
            let _ = writeln!(s, r#"<polygon id="{}" points="{}"/>"#, escape(label), path.join(" "));
        }
        let _ = writeln!(s, "</g>");

        let _ = writeln!(s, r#"<g id="lines" stroke="black" stroke-width="1" font-family="sans-serif" font-size="13">"#);
        for l in &self.lines {
            let Some((a, b)) = l.eq.and_then(|eq| clip(eq, lo, hi)) else {
                continue;
            };
            let ((x1, y1), (x2, y2)) = (px(a), px(b));
            let fig = l.fig.map(|f| format!(r#" data-fig="{f}""#)).unwrap_or_default();
            let _ = writeln!(
                s,
                r#"<line id="{}" class="{}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" data-coords="{}"{fig}/>"#,
                escape(&l.label),
                l.class,
                l.coords
            );
            if let Some(f) = l.fig {
                let t = (a.0 * 0.8 + b.0 * 0.2, a.1 * 0.8 + b.1 * 0.2);
                let (tx, ty) = px(t);
                let _ = writeln!(s, r##"<text x="{tx}" y="{ty}" stroke="none" fill="#b22222">{f}</text>"##);
            }
        }
        let _ = writeln!(s, "</g>");

        let _ = writeln!(s, r#"<g id="points" font-family="sans-serif" font-size="13">"#);
        for p in &self.points {
            let Some(at) = p.at else {
                continue;
            };
            let (x, y) = px(at);
            let _ = writeln!(
                s,
                r#"<circle id="{}" cx="{x}" cy="{y}" r="3" data-coords="{}"/>"#,
                escape(&p.label),
                p.coords
            );
            let (tx, ty) = px(at);
            let _ = writeln!(
                s,
                r#"<text x="{tx}" y="{ty}" dx="5" dy="-5">{}</text>"#,
                escape(&p.label)
            );
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, "</svg>");
        s
    }

    fn add_trace(&mut self, trace: &ConstructionTrace, view: &View) -> Result<(), CliError> {
        self.trace = trace.to_string();
        for ((label, el), step) in trace.replay()?.into_iter().zip(trace.steps()) {
            match el {
                Element::Point(p) => {
                    let at = view.point(&p);
                    if at.is_none() {
                        self.notes.push(format!("{label} {p} is at infinity"));
                    }
                    self.points.push(PointMark {
                        label,
                        coords: p.to_string(),
                        at,
                    })
                }
                Element::Line(h) => {
                    let eq = view.line(&h);
                    if eq.is_none() {
                        self.notes.push(format!("{label} {h} is the line at infinity"));
                    }
                    let class = if label == trace.result_label() { "result" } else { "construction" };
                    self.lines.push(LineMark {
                        label,
                        coords: h.to_string(),
                        fig: step.figure_line,
                        class,
                        eq,
                    })
                }
            }
        }
        Ok(())
    }
}

fn pt(c: &[i64]) -> ProjPoint {
    ProjPoint::from_ints(c).expect("nonzero")
}

/// First chart, from a fixed list, in which all points are finite.
fn pick_view(points: &[ProjPoint]) -> View {
    let candidates: [&[i64]; 6] = [&[0, 0, 1], &[1, 2, 4], &[3, 1, 2], &[2, 5, 3], &[1, 1, 1], &[5, 7, 11]];
    let views: Vec<View> = candidates
        .iter()
        .map(|c| View::from_chart(&AffineChart::sending_to_infinity(&ProjHyperplane::from_ints(c).expect("nonzero"))))
        .collect();
    let fallback = views.len() - 1;
    let i = views.iter().position(|v| v.sees(points)).unwrap_or(fallback);
    views.into_iter().nth(i).expect("nonempty")
}

fn simplex_and_point(scene: &Scene) -> (Simplex, ProjPoint) {
    let simplex = scene
        .simplex
        .as_ref()
        .map(|(_, s)| s.clone())
        .unwrap_or_else(|| Simplex::standard(2));
    let p = scene.point("p").cloned().unwrap_or_else(|| pt(&[1, 1, 1]));
    (simplex, p)
}

fn harmonic(scene: &Scene) -> Result<Drawing, CliError> {
    let (simplex, p) = simplex_and_point(scene);
    let trace = harmonic_trace(&p, &simplex)?;
    let points: Vec<ProjPoint> = trace
        .replay()?
        .into_iter()
        .filter_map(|(_, e)| match e {
            Element::Point(q) => Some(q),
            Element::Line(_) => None,
        })
        .collect();
    let view = pick_view(&points);
    let mut d = Drawing {
        title: format!("harmonic polar of {p}"),
        ..Drawing::default()
    };
    d.notes.push("u'_i are the points v1, v2, v3 on the polar".into());
    d.add_trace(&trace, &view)?;
    Ok(d)
}

fn ruler(scene: &Scene) -> Result<Drawing, CliError> {
    let get = |name: &str, default: &[i64]| scene.point(name).cloned().unwrap_or_else(|| pt(default));
    let a = get("a", &[0, 0, 1]);
    let b = get("b", &[4, 0, 1]);
    let c = get("c", &[1, 0, 1]);
    let m = get("m", &[1, 3, 1]);
    let n = get("n", &[2, 3, 2]);
    let trace = ruler_trace(&a, &b, &c, &m, &n)?;
    let view = pick_view(&[a, b, c, m, n]);
    let mut d = Drawing {
        title: "fourth harmonic with a straightedge".into(),
        ..Drawing::default()
    };
    d.notes.push("lines 1 to 4 drawn in the order 4, 1, 3, 2 give the reverse construction".into());
    d.add_trace(&trace, &view)?;
    let picks = trace.steps().iter().filter(|s| matches!(s.kind, StepKind::Pick(_))).count();
    d.notes.push(format!("{picks} given points, result d"));
    Ok(d)
}

/// Chart mapping the vertices to an equilateral triangle centred at the
/// origin and `p` to its centre.
fn equilateral_view(simplex: &Simplex, p: &ProjPoint) -> Result<View, CliError> {
    let frame = ProjFrame::from_vertices(simplex.vertices(), p.clone())?;
    let basis: Matrix<f64> = adapted_basis(&frame)?
        .matrix()
        .iter()
        .map(|r| r.iter().map(Scalar::to_f64).collect())
        .collect();
    let inv = linalg::inverse(&basis).ok_or(Error::NotAFrame)?;
    let corners: Vec<(f64, f64)> = (0..3)
        .map(|i| {
            let t = std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::PI * i as f64 / 3.0;
            (t.cos(), t.sin())
        })
        .collect();
    let place: Matrix<f64> = vec![
        corners.iter().map(|c| c.0).collect(),
        corners.iter().map(|c| c.1).collect(),
        vec![1.0; 3],
    ];
    Ok(View {
        matrix: linalg::mat_mul(&place, &inv),
    })
}

/// Samples a conic through `start` by sweeping lines through `start`.
fn conic_curve(q: &Matrix<f64>, start: &[f64], view: &View, samples: usize) -> Vec<(f64, f64)> {
    let Some(inv) = linalg::inverse(&view.matrix) else {
        return Vec::new();
    };
    let form = |u: &[f64], v: &[f64]| linalg::dot(u, &linalg::mat_vec(q, v));
    (0..samples)
        .filter_map(|k| {
            let t = std::f64::consts::PI * k as f64 / samples as f64;
            let w = linalg::mat_vec(&inv, &[t.cos(), t.sin(), 0.0]);
            let qw = form(&w, &w);
            if qw.abs() < 1e-12 {
                return None;
            }
            let s = -2.0 * form(start, &w) / qw;
            let x: Vec<f64> = start.iter().zip(&w).map(|(a, b)| a + s * b).collect();
            view.image(&x)
        })
        .collect()
}

fn circumconic(scene: &Scene) -> Result<Drawing, CliError> {
    let (simplex, p) = simplex_and_point(scene);
    let trace = harmonic_trace(&p, &simplex)?;
    let view = equilateral_view(&simplex, &p)?;
    let conic: SymmetricForm<Rational> = kth_polar(&p, &SymmetricForm::simplex_form(&simplex), 1)?;
    let mut d = Drawing {
        title: format!("polar conic of {p}"),
        ..Drawing::default()
    };
    d.add_trace(&trace, &view)?;
    let q: Matrix<f64> = conic
        .quadratic_matrix()
        .expect("degree two")
        .iter()
        .map(|r| r.iter().map(Scalar::to_f64).collect())
        .collect();
    let start = simplex.vertices()[0].to_float().coords().to_vec();
    d.curves.push(("conic".into(), conic_curve(&q, &start, &view, 180)));
    for (i, v) in simplex.vertices().iter().enumerate() {
        let t = conic_polar_point(&conic, v)?;
        let tangent = is_tangent_at(&conic, v, &t)?;
        d.notes.push(format!(
            "t{} {t} is tangent to the conic at p{}: {}",
            i + 1,
            i + 1,
            if tangent { "yes" } else { "no" }
        ));
        d.lines.push(LineMark {
            label: format!("t{}", i + 1),
            coords: t.to_string(),
            fig: None,
            class: "tangent",
            eq: view.line(&t),
        });
    }
    Ok(d)
}

pub fn figure(scene: &Scene, which: Which) -> Result<String, CliError> {
    if scene.dim != 2 {
        return Err(Error::UnsupportedDimension(scene.dim).into());
    }
    let d = match which {
        Which::Harmonic => harmonic(scene)?,
        Which::Ruler => ruler(scene)?,
        Which::Circumconic => circumconic(scene)?,
    };
    Ok(d.render())
}
