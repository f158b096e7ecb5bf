//! Fourth harmonics, the harmonic polarity, and ruler constructions.
//!
//! In the plane, the harmonic polar of a generic point `p` with respect to a
//! triangle is the line through the fourth harmonics `u'_i` of the triples
//! `(p_j, p_k, u_i)`, where `u_i = (p_i p) ∩ (p_j p_k)`. In higher dimension
//! two constructions are provided: a recursion through the faces (the primary
//! path) and one through the edges `(p_i p_j)`, used as a cross-check.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::projective::{
    are_collinear, join_all, line_coordinates, meet, meet_line_hyperplane, rank_of, span,
    Homogeneous, ProjHyperplane, ProjPoint, Simplex,
};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// The point `d` with `cross_ratio(a, b, c, d) = −1`: if `c = αa + βb` then
/// `d = αa − βb`.
pub fn fourth_harmonic<H: Homogeneous>(a: &H, b: &H, c: &H) -> Result<H> {
    let (alpha, beta) = line_coordinates(a, b, c).map_err(|e| match e {
        Error::DegenerateQuadruple => Error::DegenerateTriple,
        other => other,
    })?;
    let scale = crate::scalar::magnitude(c.coords());
    if alpha.is_negligible(scale) || beta.is_negligible(scale) {
        return Err(Error::DegenerateTriple);
    }
    let coords = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| alpha.clone() * x.clone() - beta.clone() * y.clone())
        .collect();
    H::from_coords(coords)
}

/// The planar harmonic construction for a generic point.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneHarmonic<S = Rational> {
    /// `u_i = (p_i p) ∩ (p_j p_k)`.
    pub u: Vec<ProjPoint<S>>,
    /// `u'_i`, fourth harmonic of `(p_j, p_k, u_i)` with `j < k`.
    pub u_prime: Vec<ProjPoint<S>>,
    pub polar: ProjHyperplane<S>,
}

/// Indices `(j, k)`, `j < k`, completing `i` to a permutation of `{0, 1, 2}`.
pub fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// The construction of `p#` in the plane, keeping the intermediate points.
pub fn plane_harmonic<S: Scalar>(p: &ProjPoint<S>, simplex: &Simplex<S>) -> Result<PlaneHarmonic<S>> {
    if simplex.dim() != 2 {
        return Err(Error::UnsupportedDimension(simplex.dim()));
    }
    if !simplex.is_generic_point(p) {
        return Err(Error::NotGeneric);
    }
    let v = simplex.vertices();
    let mut u = Vec::with_capacity(3);
    let mut u_prime = Vec::with_capacity(3);
    for i in 0..3 {
        let (j, k) = others(i);
        let ui = meet_line_hyperplane(&v[i], p, &simplex.face(i))?;
        u_prime.push(fourth_harmonic(&v[j], &v[k], &ui)?);
        u.push(ui);
    }
    if !are_collinear(&u_prime) {
        return Err(Error::ConcurrencyFailure);
    }
    let polar = span(&u_prime[..2])?;
    Ok(PlaneHarmonic { u, u_prime, polar })
}

/// Points spanning the harmonic polar of `u` inside the span of `vertices`,
/// by recursion on the faces: `u_i` is the trace of the line `(v_i u)` on the
/// face opposite `v_i`, whose polar inside that face is computed recursively.
fn recursive_polar_span<H: Homogeneous>(vertices: &[H], u: &H) -> Result<Vec<H>> {
    if vertices.len() == 2 {
        return Ok(vec![fourth_harmonic(&vertices[0], &vertices[1], u)?]);
    }
    let cols: Matrix<H::Scalar> = vertices.iter().map(|v| v.coords().to_vec()).collect();
    let c = linalg::solve_consistent(&linalg::transpose(&cols), u.coords())
        .ok_or(Error::NotGeneric)?;
    let mut collected: Vec<H> = Vec::new();
    for i in 0..vertices.len() {
        let face: Vec<H> = vertices
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let coeffs: Vec<H::Scalar> = c
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, x)| x.clone())
            .collect();
        let face_cols: Matrix<H::Scalar> = face.iter().map(|v| v.coords().to_vec()).collect();
        let ui = H::from_coords(linalg::mat_vec(&linalg::transpose(&face_cols), &coeffs))?;
        collected.extend(recursive_polar_span(&face, &ui)?);
    }
    let target = vertices.len() - 1;
    independent_subset(&collected, target).ok_or(Error::ConcurrencyFailure)
}

/// Greedy independent subset of exactly `target` elements spanning the family.
fn independent_subset<H: Homogeneous>(items: &[H], target: usize) -> Option<Vec<H>> {
    if rank_of(items) != target {
        return None;
    }
    let mut chosen: Vec<H> = Vec::new();
    for it in items {
        chosen.push(it.clone());
        if rank_of(&chosen) < chosen.len() {
            chosen.pop();
        }
        if chosen.len() == target {
            break;
        }
    }
    Some(chosen)
}

fn harmonic_polar_recursive<H: Homogeneous>(x: &H, vertices: &[H]) -> Result<H::Dual> {
    let spanning = recursive_polar_span(vertices, x)?;
    join_all(&spanning).map_err(|_| Error::ConcurrencyFailure)
}

/// `p#` by recursion on the faces of the simplex.
pub fn harmonic_polar_point<S: Scalar>(
    p: &ProjPoint<S>,
    simplex: &Simplex<S>,
) -> Result<ProjHyperplane<S>> {
    if !simplex.is_generic_point(p) {
        return Err(Error::NotGeneric);
    }
    harmonic_polar_recursive(p, simplex.vertices())
}

/// `p#` through the edges: `v_ij = (p_i p_j) ∩ ⟨p_l (l ≠ i, j), p⟩` and the
/// fourth harmonics of `(p_i, p_j, v_ij)`.
pub fn harmonic_polar_point_by_edges<S: Scalar>(
    p: &ProjPoint<S>,
    simplex: &Simplex<S>,
) -> Result<ProjHyperplane<S>> {
    if !simplex.is_generic_point(p) {
        return Err(Error::NotGeneric);
    }
    let v = simplex.vertices();
    let mut harmonics = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let mut gens: Vec<ProjPoint<S>> = (0..v.len())
                .filter(|&l| l != i && l != j)
                .map(|l| v[l].clone())
                .collect();
            gens.push(p.clone());
            let through = span(&gens)?;
            let vij = meet_line_hyperplane(&v[i], &v[j], &through)?;
            harmonics.push(fourth_harmonic(&v[i], &v[j], &vij)?);
        }
    }
    let spanning = independent_subset(&harmonics, simplex.dim()).ok_or(Error::ConcurrencyFailure)?;
    span(&spanning)
}

/// `D#`. In the plane: `u'_i = D ∩ D_i`, `u_i` the fourth harmonic of
/// `(p_j, p_k, u'_i)`, and the lines `(p_i u_i)` meet at `D#`. In higher
/// dimension the face recursion is run in the dual space.
pub fn harmonic_polar_hyperplane<S: Scalar>(
    h: &ProjHyperplane<S>,
    simplex: &Simplex<S>,
) -> Result<ProjPoint<S>> {
    if !simplex.is_generic_hyperplane(h) {
        return Err(Error::NotGeneric);
    }
    if simplex.dim() != 2 {
        return harmonic_polar_recursive(h, &simplex.faces());
    }
    let v = simplex.vertices();
    let mut lines = Vec::with_capacity(3);
    for i in 0..3 {
        let (j, k) = others(i);
        let side = simplex.face(i);
        let u_prime = meet(&[h.clone(), side])?;
        let u = fourth_harmonic(&v[j], &v[k], &u_prime)?;
        lines.push(span(&[v[i].clone(), u])?);
    }
    let point = meet(&lines[..2])?;
    if !lines[2].contains(&point) {
        return Err(Error::ConcurrencyFailure);
    }
    Ok(point)
}

/// A planar element produced by a construction step.
#[derive(Clone, Debug, PartialEq)]
pub enum Element<S = Rational> {
    Point(ProjPoint<S>),
    Line(ProjHyperplane<S>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum StepKind<S = Rational> {
    /// A given or freely chosen point.
    Pick(ProjPoint<S>),
    /// Line through two labelled points.
    Join(String, String),
    /// Intersection of two labelled lines.
    Meet(String, String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step<S = Rational> {
    pub label: String,
    pub kind: StepKind<S>,
    /// Line number in the figure of the ruler construction, when it has one.
    pub figure_line: Option<u8>,
}

/// A straightedge construction: picks, joins and meets, in order.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionTrace<S = Rational> {
    steps: Vec<Step<S>>,
    result: String,
}

impl<S: Scalar> ConstructionTrace<S> {
    /// Validates label references and builds the trace.
    pub fn new(steps: Vec<Step<S>>, result: impl Into<String>) -> Result<Self> {
        let result = result.into();
        let mut defined: HashMap<&str, bool> = HashMap::new();
        for s in &steps {
            let (is_point, refs) = match &s.kind {
                StepKind::Pick(_) => (true, vec![]),
                StepKind::Join(a, b) => (false, vec![(a, true), (b, true)]),
                StepKind::Meet(a, b) => (true, vec![(a, false), (b, false)]),
            };
            for (r, want_point) in refs {
                match defined.get(r.as_str()) {
                    Some(&p) if p == want_point => {}
                    Some(_) => return Err(Error::BadTrace(format!("{r} has the wrong kind"))),
                    None => return Err(Error::BadTrace(format!("{r} used before definition"))),
                }
            }
            if defined.insert(&s.label, is_point).is_some() {
                return Err(Error::BadTrace(format!("{} defined twice", s.label)));
            }
        }
        if !defined.contains_key(result.as_str()) {
            return Err(Error::BadTrace(format!("result {result} is undefined")));
        }
        Ok(Self { steps, result })
    }

    pub fn steps(&self) -> &[Step<S>] {
        &self.steps
    }

    pub fn result_label(&self) -> &str {
        &self.result
    }

    /// Replays every step with exact joins and meets.
    pub fn replay(&self) -> Result<Vec<(String, Element<S>)>> {
        let mut env: HashMap<String, Element<S>> = HashMap::new();
        let mut out = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            let el = match &s.kind {
                StepKind::Pick(p) => Element::Point(p.clone()),
                StepKind::Join(a, b) => match (&env[a], &env[b]) {
                    (Element::Point(x), Element::Point(y)) => {
                        Element::Line(span(&[x.clone(), y.clone()])?)
                    }
                    _ => return Err(Error::BadTrace(format!("join of non-points in {}", s.label))),
                },
                StepKind::Meet(a, b) => match (&env[a], &env[b]) {
                    (Element::Line(x), Element::Line(y)) => {
                        Element::Point(meet(&[x.clone(), y.clone()])?)
                    }
                    _ => return Err(Error::BadTrace(format!("meet of non-lines in {}", s.label))),
                },
            };
            env.insert(s.label.clone(), el.clone());
            out.push((s.label.clone(), el));
        }
        Ok(out)
    }

    /// The element labelled by the result of the trace.
    pub fn replay_result(&self) -> Result<Element<S>> {
        let all = self.replay()?;
        Ok(all
            .into_iter()
            .find(|(l, _)| *l == self.result)
            .map(|(_, e)| e)
            .expect("validated at construction"))
    }
}

fn pick<S>(label: &str, p: &ProjPoint<S>) -> Step<S>
where
    S: Clone,
{
    Step {
        label: label.into(),
        kind: StepKind::Pick(p.clone()),
        figure_line: None,
    }
}

fn join<S>(label: &str, a: &str, b: &str, figure_line: Option<u8>) -> Step<S> {
    Step {
        label: label.into(),
        kind: StepKind::Join(a.into(), b.into()),
        figure_line,
    }
}

fn meet_step<S>(label: &str, a: &str, b: &str) -> Step<S> {
    Step {
        label: label.into(),
        kind: StepKind::Meet(a.into(), b.into()),
        figure_line: None,
    }
}

/// Complete-quadrangle construction of the fourth harmonic of `(a, b, c)`.
///
/// `m` is any point off `(a b)` and `n` any other point of `(c m)`. With
/// `x = (a n) ∩ (b m)` and `y = (a m) ∩ (b n)`, the result is `(x y) ∩ (a b)`.
/// The four lines through `a` or `b` carry the figure numbers 1 to 4; drawing
/// them in the order 4, 1, 3, 2 performs the reverse construction.
pub fn ruler_trace<S: Scalar>(
    a: &ProjPoint<S>,
    b: &ProjPoint<S>,
    c: &ProjPoint<S>,
    m: &ProjPoint<S>,
    n: &ProjPoint<S>,
) -> Result<ConstructionTrace<S>> {
    if a.dim() != 2 {
        return Err(Error::UnsupportedDimension(a.dim()));
    }
    // Validates (a, b, c).
    fourth_harmonic(a, b, c)?;
    let base = span(&[a.clone(), b.clone()])?;
    if base.contains(m) {
        return Err(Error::BadAuxiliary);
    }
    let dashed = span(&[c.clone(), m.clone()]).map_err(|_| Error::BadAuxiliary)?;
    if !dashed.contains(n) || n == c || n == m {
        return Err(Error::BadAuxiliary);
    }
    let steps = vec![
        pick("a", a),
        pick("b", b),
        pick("c", c),
        pick("m", m),
        join("base", "a", "b", None),
        join("dashed", "c", "m", None),
        pick("n", n),
        join("line1", "a", "m", Some(1)),
        join("line2", "b", "n", Some(2)),
        meet_step("y", "line1", "line2"),
        join("line3", "a", "n", Some(3)),
        join("line4", "b", "m", Some(4)),
        meet_step("x", "line3", "line4"),
        join("diagonal", "x", "y", None),
        meet_step("d", "diagonal", "base"),
    ];
    ConstructionTrace::new(steps, "d")
}

/// Straightedge construction of `p#` in the plane, using `p_i` and `p` as the
/// auxiliary points of each quadrangle so that `u'_i = (p_j p_k) ∩ (u_j u_k)`.
pub fn harmonic_trace<S: Scalar>(
    p: &ProjPoint<S>,
    simplex: &Simplex<S>,
) -> Result<ConstructionTrace<S>> {
    if simplex.dim() != 2 {
        return Err(Error::UnsupportedDimension(simplex.dim()));
    }
    if !simplex.is_generic_point(p) {
        return Err(Error::NotGeneric);
    }
    let v = simplex.vertices();
    let mut steps = vec![
        pick("p1", &v[0]),
        pick("p2", &v[1]),
        pick("p3", &v[2]),
        pick("p", p),
    ];
    for i in 0..3 {
        let (j, k) = others(i);
        let side = format!("D{}", i + 1);
        steps.push(join(&side, &format!("p{}", j + 1), &format!("p{}", k + 1), None));
    }
    for i in 0..3 {
        let cevian = format!("c{}", i + 1);
        steps.push(join(&cevian, &format!("p{}", i + 1), "p", None));
        steps.push(meet_step(&format!("u{}", i + 1), &cevian, &format!("D{}", i + 1)));
    }
    for i in 0..3 {
        let (j, k) = others(i);
        let l = format!("e{}", i + 1);
        steps.push(join(&l, &format!("u{}", j + 1), &format!("u{}", k + 1), None));
        steps.push(meet_step(&format!("v{}", i + 1), &l, &format!("D{}", i + 1)));
    }
    steps.push(join("polar", "v1", "v2", None));
    ConstructionTrace::new(steps, "polar")
}

/// Line-oriented text form: `STEP <k> <kind> <label> <args…> [fig=<n>]`,
/// then `RESULT <label>`.
impl fmt::Display for ConstructionTrace<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.steps.iter().enumerate() {
            write!(f, "STEP {} ", k + 1)?;
            match &s.kind {
                StepKind::Pick(p) => {
                    write!(f, "pick {}", s.label)?;
                    for c in p.coords() {
                        write!(f, " {}", format_rational(c))?;
                    }
                }
                StepKind::Join(a, b) => write!(f, "join {} {a} {b}", s.label)?,
                StepKind::Meet(a, b) => write!(f, "meet {} {a} {b}", s.label)?,
            }
            if let Some(n) = s.figure_line {
                write!(f, " fig={n}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "RESULT {}", self.result)
    }
}

impl std::str::FromStr for ConstructionTrace<Rational> {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        let mut result = None;
        for (ln, line) in text.lines().enumerate() {
            let bad = |m: &str| Error::Parse(format!("line {}: {m}", ln + 1));
            let mut toks: Vec<&str> = line.split_whitespace().collect();
            match toks.first().copied() {
                None => continue,
                Some("RESULT") if toks.len() == 2 => {
                    result = Some(toks[1].to_string());
                    continue;
                }
                Some("STEP") if toks.len() >= 4 => {}
                _ => return Err(bad("expected STEP or RESULT")),
            }
            let expected: usize = toks[1].parse().map_err(|_| bad("bad step number"))?;
            if expected != steps.len() + 1 {
                return Err(bad("steps out of order"));
            }
            let mut figure_line = None;
            if let Some(last) = toks.last() {
                if let Some(n) = last.strip_prefix("fig=") {
                    figure_line = Some(n.parse().map_err(|_| bad("bad figure number"))?);
                    toks.pop();
                }
            }
            let label = toks[3].to_string();
            let kind = match (toks[2], &toks[4..]) {
                ("pick", coords) => {
                    let c = coords
                        .iter()
                        .map(|t| parse_rational(t))
                        .collect::<Result<Vec<_>>>()?;
                    StepKind::Pick(ProjPoint::new(c)?)
                }
                ("join", [a, b]) => StepKind::Join(a.to_string(), b.to_string()),
                ("meet", [a, b]) => StepKind::Meet(a.to_string(), b.to_string()),
                _ => return Err(bad("unknown step")),
            };
            steps.push(Step {
                label,
                kind,
                figure_line,
            });
        }
        let result = result.ok_or_else(|| Error::Parse("missing RESULT line".into()))?;
        ConstructionTrace::new(steps, result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::frame_polar_point;
    use crate::projective::{cross_ratio, LineValue};
    use crate::scalar::int;

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::from_ints(c).unwrap()
    }

    fn hp(c: &[i64]) -> ProjHyperplane {
        ProjHyperplane::from_ints(c).unwrap()
    }

    fn on_line(t: i64) -> ProjPoint {
        pt(&[t, 1])
    }

    #[test]
    fn fourth_harmonic_examples() {
        let inf = pt(&[1, 0]);
        assert_eq!(fourth_harmonic(&inf, &on_line(0), &on_line(1)).unwrap(), on_line(-1));
        assert_eq!(fourth_harmonic(&on_line(0), &on_line(2), &on_line(1)).unwrap(), inf);
        assert_eq!(fourth_harmonic(&on_line(0), &inf, &on_line(1)).unwrap(), on_line(-1));
        let d = fourth_harmonic(&on_line(3), &on_line(7), &on_line(4)).unwrap();
        assert_eq!(
            cross_ratio(&on_line(3), &on_line(7), &on_line(4), &d).unwrap(),
            LineValue::Finite(int(-1))
        );
        assert_eq!(
            fourth_harmonic(&on_line(3), &on_line(3), &on_line(4)),
            Err(Error::DegenerateTriple)
        );
        assert_eq!(
            fourth_harmonic(&on_line(3), &on_line(5), &on_line(3)),
            Err(Error::DegenerateTriple)
        );
        assert_eq!(
            fourth_harmonic(&pt(&[1, 0, 0]), &pt(&[0, 1, 0]), &pt(&[0, 0, 1])),
            Err(Error::NotCollinear)
        );
    }

    #[test]
    fn plane_harmonic_at_barycenter() {
        let s = Simplex::standard(2);
        let h = plane_harmonic(&pt(&[1, 1, 1]), &s).unwrap();
        assert_eq!(h.u_prime, vec![pt(&[0, -1, 1]), pt(&[-1, 0, 1]), pt(&[-1, 1, 0])]);
        assert_eq!(h.polar, hp(&[1, 1, 1]));
    }

    #[test]
    fn harmonic_polar_examples() {
        let s = Simplex::standard(2);
        assert_eq!(harmonic_polar_point(&pt(&[1, 2, 3]), &s).unwrap(), hp(&[6, 3, 2]));
        assert_eq!(harmonic_polar_hyperplane(&hp(&[6, 3, 2]), &s).unwrap(), pt(&[1, 2, 3]));
        assert_eq!(harmonic_polar_hyperplane(&hp(&[1, 1, 1]), &s).unwrap(), pt(&[1, 1, 1]));
        let s3 = Simplex::standard(3);
        let p = pt(&[1, 1, 1, 1]);
        assert_eq!(harmonic_polar_point(&p, &s3).unwrap(), hp(&[1, 1, 1, 1]));
        assert_eq!(harmonic_polar_point_by_edges(&p, &s3).unwrap(), hp(&[1, 1, 1, 1]));
        assert_eq!(
            harmonic_polar_point(&pt(&[1, 0, 3]), &s),
            Err(Error::NotGeneric)
        );
    }

    #[test]
    fn both_constructions_match_frame_polarity_in_dimension_four() {
        let s = Simplex::new(vec![
            pt(&[1, 2, 0, 0, 1]),
            pt(&[0, 1, 3, 0, 0]),
            pt(&[2, 0, 1, 1, 0]),
            pt(&[0, 0, 0, 1, 5]),
            pt(&[1, 1, 1, 1, 1]),
        ])
        .unwrap();
        let p = pt(&[3, -2, 5, 7, 1]);
        let expected = frame_polar_point(&p, &s).unwrap();
        assert_eq!(harmonic_polar_point(&p, &s).unwrap(), expected);
        assert_eq!(harmonic_polar_point_by_edges(&p, &s).unwrap(), expected);
    }

    #[test]
    fn ruler_trace_examples() {
        let a = pt(&[0, 0, 1]);
        let b = pt(&[2, 0, 1]);
        let c = pt(&[1, 0, 1]);
        let m = pt(&[3, 5, 1]);
        let n = pt(&[4, 5, 2]); // midpoint of c and m
        let t = ruler_trace(&a, &b, &c, &m, &n).unwrap();
        assert_eq!(t.replay_result().unwrap(), Element::Point(pt(&[1, 0, 0])));

        // a = ∞, b = 0, c = 1 on the x-axis
        let inf = pt(&[1, 0, 0]);
        let zero = pt(&[0, 0, 1]);
        let one = pt(&[1, 0, 1]);
        let m = pt(&[0, 1, 1]);
        for n in [pt(&[2, -1, 1]), pt(&[1, 1, 2])] {
            let t = ruler_trace(&inf, &zero, &one, &m, &n).unwrap();
            assert_eq!(t.replay_result().unwrap(), Element::Point(pt(&[-1, 0, 1])));
        }
        let figure: Vec<u8> = t_lines(&ruler_trace(&inf, &zero, &one, &m, &pt(&[1, 1, 2])).unwrap());
        assert_eq!(figure, vec![1, 2, 3, 4]);
    }

    fn t_lines(t: &ConstructionTrace) -> Vec<u8> {
        t.steps().iter().filter_map(|s| s.figure_line).collect()
    }

    #[test]
    fn ruler_trace_rejects_bad_auxiliaries() {
        let a = pt(&[0, 0, 1]);
        let b = pt(&[2, 0, 1]);
        let c = pt(&[1, 0, 1]);
        assert_eq!(
            ruler_trace(&a, &b, &c, &pt(&[5, 0, 1]), &pt(&[0, 1, 0])),
            Err(Error::BadAuxiliary)
        );
        let m = pt(&[3, 5, 1]);
        assert_eq!(ruler_trace(&a, &b, &c, &m, &pt(&[0, 1, 1])), Err(Error::BadAuxiliary));
        assert_eq!(ruler_trace(&a, &b, &c, &m, &m), Err(Error::BadAuxiliary));
        assert_eq!(ruler_trace(&a, &b, &c, &m, &c), Err(Error::BadAuxiliary));
    }

    #[test]
    fn harmonic_trace_reproduces_polar() {
        let s = Simplex::standard(2);
        let p = pt(&[2, -3, 5]);
        let t = harmonic_trace(&p, &s).unwrap();
        let expected = plane_harmonic(&p, &s).unwrap();
        assert_eq!(t.replay_result().unwrap(), Element::Line(expected.polar));
        let replayed = t.replay().unwrap();
        for (i, up) in expected.u_prime.iter().enumerate() {
            let label = format!("v{}", i + 1);
            let el = &replayed.iter().find(|(l, _)| *l == label).unwrap().1;
            assert_eq!(el, &Element::Point(up.clone()));
        }
    }

    #[test]
    fn trace_text_round_trip() {
        let s = Simplex::standard(2);
        let t = harmonic_trace(&pt(&[1, 2, 3]), &s).unwrap();
        let text = t.to_string();
        assert!(text.starts_with("STEP 1 pick p1 1 0 0\n"));
        let back: ConstructionTrace = text.parse().unwrap();
        assert_eq!(back, t);

        let r = ruler_trace(&pt(&[0, 0, 1]), &pt(&[2, 0, 1]), &pt(&[1, 0, 1]), &pt(&[3, 5, 1]), &pt(&[4, 5, 2]))
            .unwrap();
        assert!(r.to_string().contains("join line1 a m fig=1"));
        assert_eq!(r.to_string().parse::<ConstructionTrace>().unwrap(), r);
    }

    #[test]
    fn malformed_traces_are_rejected() {
        assert!(matches!(
            "STEP 1 join l a b\nRESULT l".parse::<ConstructionTrace>(),
            Err(Error::BadTrace(_))
        ));
        assert!(matches!(
            "STEP 1 pick a 1 0 0\nSTEP 2 pick b 0 1 0\nSTEP 3 meet x a b\nRESULT x"
                .parse::<ConstructionTrace>(),
            Err(Error::BadTrace(_))
        ));
        assert!("STEP 2 pick a 1 0 0\nRESULT a".parse::<ConstructionTrace>().is_err());
        assert!("STEP 1 pick a 1 0 0".parse::<ConstructionTrace>().is_err());
    }
}
