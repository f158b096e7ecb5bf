//! Text and CSV reports of the verify, santalo and orbit commands.

use std::fmt::Write;

use polarity_core::convex::{double_polar_orbit, santalo_point, santalo_point_from, Orbit};
use polarity_core::polars::{HyperplanePolars, PointPolars};
use polarity_core::sampling::Sampler;
use polarity_core::scalar::{format_rational, parse_rational};
use polarity_core::{ConvexPolytope, ProjHyperplane, ProjPoint, Rational, Scalar, Simplex};

use crate::error::{CliError, EXIT_SOLVER, EXIT_VERIFY_FAILED};
use crate::scene::{Mode, Scene};

/// Result of a command: the text to emit, its exit status, and a diagnostic for stderr.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: u8,
    pub note: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Self {
            text,
            code: 0,
            note: None,
        }
    }
}

pub fn real(x: f64) -> String {
    // Avoids printing `-0.000000000000`.
    format!("{:.12}", x + 0.0)
}

pub fn coords(x: &[f64]) -> String {
    x.iter().map(|v| real(*v)).collect::<Vec<_>>().join(" ")
}

fn rational_coords(x: &[Rational]) -> String {
    x.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

#[derive(Default)]
struct Tally {
    names: Vec<&'static str>,
    agree: Vec<usize>,
    total: usize,
    errors: Vec<String>,
}

impl Tally {
    fn add(&mut self, pairs: Vec<(&'static str, bool)>) {
        if self.names.is_empty() {
            self.names = pairs.iter().map(|(n, _)| *n).collect();
            self.agree = vec![0; pairs.len()];
        }
        for (slot, (_, ok)) in self.agree.iter_mut().zip(pairs) {
            *slot += usize::from(ok);
        }
        self.total += 1;
    }

    fn passed(&self) -> bool {
        self.errors.is_empty() && self.agree.iter().all(|&a| a == self.total)
    }

    fn write(&self, out: &mut String, what: &str) {
        for (name, agree) in self.names.iter().zip(&self.agree) {
            let _ = writeln!(out, "{what} {name} {agree}/{}", self.total);
        }
        for e in &self.errors {
            let _ = writeln!(out, "{what} error: {e}");
        }
    }
}

fn tally_points<S: Scalar>(simplex: &Simplex<S>, points: &[ProjPoint<S>]) -> Tally {
    let mut t = Tally::default();
    for p in points {
        match PointPolars::compute(p, simplex) {
            Ok(polars) => t.add(polars.pairs()),
            Err(e) => t.errors.push(format!("{p}: {e}")),
        }
    }
    t
}

fn tally_hyperplanes<S: Scalar>(simplex: &Simplex<S>, hyperplanes: &[ProjHyperplane<S>]) -> Tally {
    let mut t = Tally::default();
    for h in hyperplanes {
        match HyperplanePolars::compute(h, simplex) {
            Ok(polars) => t.add(polars.pairs()),
            Err(e) => t.errors.push(format!("{h}: {e}")),
        }
    }
    t
}

/// Compares the four polars of the scene's generic points and of `samples`
/// random generic points, then of the scene's generic hyperplanes.
pub fn verify(scene: &Scene, samples: usize, seed: u64, mode: Mode) -> Result<Output, CliError> {
    let (name, simplex) = scene
        .simplex
        .as_ref()
        .ok_or_else(|| CliError::Input("scene has no SIMPLEX".into()))?;
    let mut sampler = Sampler::new(seed);
    let mut points = Vec::new();
    for (_, p) in &scene.points {
        if simplex.is_generic_point(p) {
            points.push(p.clone());
        } else {
            sampler.reject();
        }
    }
    let from_scene = points.len();
    points.extend((0..samples).map(|_| sampler.generic_point(simplex)));
    let point_rejections = sampler.rejections();

    let mut hyperplanes = Vec::new();
    let mut hyperplane_rejections = 0;
    for (_, h) in &scene.hyperplanes {
        if simplex.is_generic_hyperplane(h) {
            hyperplanes.push(h.clone());
        } else {
            hyperplane_rejections += 1;
        }
    }

    let (pt, ht) = match mode {
        Mode::Exact => (tally_points(simplex, &points), tally_hyperplanes(simplex, &hyperplanes)),
        Mode::Float => {
            let s = simplex.to_float();
            let p: Vec<_> = points.iter().map(ProjPoint::to_float).collect();
            let h: Vec<_> = hyperplanes.iter().map(ProjHyperplane::to_float).collect();
            (tally_points(&s, &p), tally_hyperplanes(&s, &h))
        }
    };

    let mut out = String::new();
    let _ = writeln!(out, "simplex {name} in P^{} ({mode}, seed {seed})", simplex.dim());
    let _ = writeln!(
        out,
        "points: {samples} sampled, {from_scene} from scene, {point_rejections} rejected"
    );
    pt.write(&mut out, "point");
    if !scene.hyperplanes.is_empty() {
        let _ = writeln!(
            out,
            "hyperplanes: {} from scene, {hyperplane_rejections} rejected",
            hyperplanes.len()
        );
        ht.write(&mut out, "hyperplane");
    }
    let passed = pt.passed() && ht.passed();
    let _ = writeln!(
        out,
        "result: {}",
        if passed { "all polarities agree" } else { "MISMATCH" }
    );
    Ok(Output {
        text: out,
        code: if passed { 0 } else { EXIT_VERIFY_FAILED },
        note: None,
    })
}

fn body<'a>(scene: &'a Scene, name: Option<&str>, mode: Mode) -> Result<(&'a str, &'a ConvexPolytope), CliError> {
    let (n, k) = scene.polytope(name).ok_or_else(|| {
        CliError::Input(match name {
            Some(name) => format!("no POLYTOPE named {name}"),
            None => "scene has no POLYTOPE".into(),
        })
    })?;
    if mode == Mode::Exact && !k.is_simplex() {
        return Err(CliError::Input(format!(
            "{n} is not a simplex; rerun with --mode float"
        )));
    }
    Ok((n, k))
}

fn parse_start(text: &str, dim: usize) -> Result<Vec<Rational>, CliError> {
    let v = text
        .split(',')
        .map(|t| parse_rational(t).map_err(|e| CliError::Input(format!("--start: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != dim {
        return Err(CliError::Input(format!("--start needs {dim} coordinates")));
    }
    Ok(v)
}

fn to_f64(v: &[Rational]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

pub fn santalo(scene: &Scene, name: Option<&str>, start: Option<&str>, mode: Mode) -> Result<Output, CliError> {
    let (n, k) = body(scene, name, mode)?;
    let kf = k.to_float();
    let report = match start {
        Some(s) => santalo_point_from(&kf, &to_f64(&parse_start(s, k.dim())?)),
        None => santalo_point(&kf),
    }
    .map_err(CliError::solver)?;
    let mut out = String::new();
    let _ = writeln!(out, "body {n} ({} vertices, dim {})", k.vertices().len(), k.dim());
    let _ = writeln!(out, "santalo point: {}", coords(&report.point));
    let _ = writeln!(out, "gradient norm: {:.3e}", report.gradient_norm);
    let _ = writeln!(out, "iterations: {}", report.iterations);
    let _ = writeln!(out, "centroid: {}", rational_coords(&k.centroid()));
    Ok(Output::ok(out))
}

fn orbit_csv<S: Scalar>(orbit: &Orbit<S>, dim: usize) -> String {
    let mut out = String::from("step,");
    if dim == 2 {
        out.push_str("x,y");
    } else {
        let cols: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
        out.push_str(&cols.join(","));
    }
    out.push_str(",displacement\n");
    for (step, (x, d)) in orbit.points.iter().zip(&orbit.displacements).enumerate() {
        let xs: Vec<String> = x.iter().map(|v| real(v.to_f64())).collect();
        let _ = writeln!(out, "{step},{},{d:.6e}", xs.join(","));
    }
    out
}

pub fn orbit(
    scene: &Scene,
    name: Option<&str>,
    start: Option<&str>,
    steps: usize,
    mode: Mode,
) -> Result<Output, CliError> {
    let (_, k) = body(scene, name, mode)?;
    let x0 = match start {
        Some(s) => parse_start(s, k.dim())?,
        None => k.centroid(),
    };
    if !k.is_interior(&x0) {
        return Err(CliError::Input("--start is not interior to the body".into()));
    }
    let (text, stopped) = match mode {
        Mode::Exact => {
            let o = double_polar_orbit(&x0, k, steps)?;
            (orbit_csv(&o, k.dim()), o.stopped)
        }
        Mode::Float => {
            let o = double_polar_orbit(&to_f64(&x0), &k.to_float(), steps)?;
            (orbit_csv(&o, k.dim()), o.stopped)
        }
    };
    Ok(match stopped {
        None => Output::ok(text),
        Some(e) => Output {
            text,
            code: EXIT_SOLVER,
            note: Some(format!("orbit stopped: {e}")),
        },
    })
}
