//! Line-oriented scene files.
//!
//! ```text
//! # comment
//! DIM 2
//! MODE exact
//! POINT p1 1 0 0
//! POINT q 1/2 3/4          # n coordinates: an affine point of the standard chart
//! HYPERPLANE h 6 3 2
//! POLYTOPE K (0,0) (2,0) (2,1) (0,2)
//! SIMPLEX T p1 p2 p3
//! ```

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use polarity_core::scalar::parse_rational;
use polarity_core::{ConvexPolytope, ProjHyperplane, ProjPoint, Rational, Simplex};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Scene {
    pub dim: usize,
    pub mode: Mode,
    pub points: Vec<(String, ProjPoint)>,
    pub hyperplanes: Vec<(String, ProjHyperplane)>,
    pub polytopes: Vec<(String, ConvexPolytope)>,
    pub simplex: Option<(String, Simplex)>,
}

impl Default for Scene {
    /// The standard triangle in `P^2`.
    fn default() -> Self {
        Self {
            dim: 2,
            mode: Mode::Exact,
            points: Vec::new(),
            hyperplanes: Vec::new(),
            polytopes: Vec::new(),
            simplex: Some(("T".into(), Simplex::standard(2))),
        }
    }
}

impl Scene {
    pub fn point(&self, name: &str) -> Option<&ProjPoint> {
        self.points.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn polytope(&self, name: Option<&str>) -> Option<&(String, ConvexPolytope)> {
        match name {
            Some(name) => self.polytopes.iter().find(|(n, _)| n == name),
            None => self.polytopes.first(),
        }
    }
}

struct Parser {
    scene: Scene,
    dim: Option<usize>,
    mode_seen: bool,
    names: HashSet<String>,
    line: usize,
}

impl Parser {
    fn err(&self, message: impl Into<String>) -> CliError {
        CliError::Parse {
            line: self.line,
            message: message.into(),
        }
    }

    /// Elements fix the dimension to 2 when no `DIM` line came first.
    fn dim(&mut self) -> usize {
        *self.dim.get_or_insert(2)
    }

    fn claim(&mut self, name: &str) -> Result<(), CliError> {
        if !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
            return Err(self.err(format!("invalid name {name:?}")));
        }
        if !self.names.insert(name.to_string()) {
            return Err(self.err(format!("name {name} is already defined")));
        }
        Ok(())
    }

    fn rationals(&self, toks: &[&str]) -> Result<Vec<Rational>, CliError> {
        toks.iter()
            .map(|t| parse_rational(t).map_err(|e| self.err(e.to_string())))
            .collect()
    }

    fn directive(&mut self, toks: &[&str]) -> Result<(), CliError> {
        match toks[0] {
            "DIM" => {
                if toks.len() != 2 {
                    return Err(self.err("expected DIM n"));
                }
                if self.dim.is_some() {
                    return Err(self.err("DIM must come once, before any element"));
                }
                let n: usize = toks[1]
                    .parse()
                    .map_err(|_| self.err(format!("bad dimension {:?}", toks[1])))?;
                if n < 1 {
                    return Err(self.err("dimension must be at least 1"));
                }
                self.dim = Some(n);
            }
            "MODE" => {
                if self.mode_seen {
                    return Err(self.err("MODE given twice"));
                }
                self.scene.mode = match toks.get(1..) {
                    Some(["exact"]) => Mode::Exact,
                    Some(["float"]) => Mode::Float,
                    _ => return Err(self.err("expected MODE exact|float")),
                };
                self.mode_seen = true;
            }
            "POINT" => {
                let n = self.dim();
                if toks.len() < 2 {
                    return Err(self.err("expected POINT name coords…"));
                }
                let mut coords = self.rationals(&toks[2..])?;
                if coords.len() == n {
                    coords.push(Rational::from_integer(1.into()));
                } else if coords.len() != n + 1 {
                    return Err(self.err(format!(
                        "POINT needs {n} or {} coordinates, got {}",
                        n + 1,
                        coords.len()
                    )));
                }
                let p = ProjPoint::new(coords).map_err(|e| self.err(e.to_string()))?;
                self.claim(toks[1])?;
                self.scene.points.push((toks[1].to_string(), p));
            }
            "HYPERPLANE" => {
                let n = self.dim();
                if toks.len() != n + 3 {
                    return Err(self.err(format!("HYPERPLANE needs a name and {} coefficients", n + 1)));
                }
                let coeffs = self.rationals(&toks[2..])?;
                let h = ProjHyperplane::new(coeffs).map_err(|e| self.err(e.to_string()))?;
                self.claim(toks[1])?;
                self.scene.hyperplanes.push((toks[1].to_string(), h));
            }
            "POLYTOPE" => {
                let n = self.dim();
                if toks.len() < 2 {
                    return Err(self.err("expected POLYTOPE name (x,y) …"));
                }
                let mut vertices = Vec::new();
                for t in &toks[2..] {
                    let inner = t
                        .strip_prefix('(')
                        .and_then(|t| t.strip_suffix(')'))
                        .ok_or_else(|| self.err(format!("expected a parenthesized vertex, got {t:?}")))?;
                    let v = self.rationals(&inner.split(',').collect::<Vec<_>>())?;
                    if v.len() != n {
                        return Err(self.err(format!("vertex {t} does not have {n} coordinates")));
                    }
                    vertices.push(v);
                }
                let k = ConvexPolytope::from_points(vertices).map_err(|e| self.err(e.to_string()))?;
                self.claim(toks[1])?;
                self.scene.polytopes.push((toks[1].to_string(), k));
            }
            "SIMPLEX" => {
                let n = self.dim();
                if self.scene.simplex.is_some() {
                    return Err(self.err("only one SIMPLEX per scene"));
                }
                if toks.len() != n + 3 {
                    return Err(self.err(format!("SIMPLEX needs a name and {} point names", n + 1)));
                }
                let vertices = toks[2..]
                    .iter()
                    .map(|v| {
                        self.scene
                            .point(v)
                            .cloned()
                            .ok_or_else(|| self.err(format!("unknown point {v}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let s = Simplex::new(vertices).map_err(|e| self.err(e.to_string()))?;
                self.claim(toks[1])?;
                self.scene.simplex = Some((toks[1].to_string(), s));
            }
            other => return Err(self.err(format!("unknown directive {other}"))),
        }
        Ok(())
    }
}

impl FromStr for Scene {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        let mut parser = Parser {
            scene: Scene {
                simplex: None,
                ..Scene::default()
            },
            dim: None,
            mode_seen: false,
            names: HashSet::new(),
            line: 0,
        };
        for (i, raw) in text.lines().enumerate() {
            parser.line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            // Vertices may be written `( 1, 2 )`; glue each parenthesized group into one token.
            let glued = glue_parentheses(content);
            let toks: Vec<&str> = glued.split_whitespace().collect();
            if !toks.is_empty() {
                parser.directive(&toks)?;
            }
        }
        parser.scene.dim = parser.dim.unwrap_or(2);
        Ok(parser.scene)
    }
}

fn glue_parentheses(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut depth = 0usize;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            c if c.is_whitespace() && depth > 0 => continue,
            _ => {}
        }
        out.push(c);
    }
    out
}
