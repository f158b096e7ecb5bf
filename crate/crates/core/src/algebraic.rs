//! Homogeneous forms, their polar multilinear forms, and the polarities they
//! induce.
//!
//! A form of degree `d` is stored sparsely as a map from exponent multi-indices
//! to coefficients. The polar form `ψ` is never materialized as a tensor: its
//! values and contractions are computed from the multinomial expansion of each
//! monomial.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::projective::{ProjHyperplane, ProjPoint, Simplex};
use crate::scalar::{magnitude, Scalar};

/// Exponent vector of a monomial.
pub type MultiIndex = Vec<u32>;

/// Homogeneous polynomial of degree `d` in `nvars` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricForm<S> {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, S>,
}

/// How many times the polar form is contracted with the same vector before
/// testing for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolarKernelLevel {
    /// `ψ(u, ·, …, ·) = 0`.
    First,
    /// `ψ(u, u, ·, …, ·) = 0`.
    Second,
    /// `ψ(u, u, u, …) = 0`; for a cubic this is the isotropic cone.
    Third,
}

impl PolarKernelLevel {
    pub fn contractions(self) -> usize {
        match self {
            PolarKernelLevel::First => 1,
            PolarKernelLevel::Second => 2,
            PolarKernelLevel::Third => 3,
        }
    }
}

fn factorial<S: Scalar>(n: u32) -> S {
    (1..=n as i64).fold(S::one(), |acc, k| acc * S::from_i64(k))
}

fn multi_factorial<S: Scalar>(alpha: &[u32]) -> S {
    alpha.iter().fold(S::one(), |acc, &a| acc * factorial::<S>(a))
}

fn power<S: Scalar>(x: &S, e: u32) -> S {
    (0..e).fold(S::one(), |acc, _| acc * x.clone())
}

fn monomial_value<S: Scalar>(alpha: &[u32], u: &[S]) -> S {
    alpha
        .iter()
        .zip(u)
        .fold(S::one(), |acc, (&a, x)| acc * power(x, a))
}

/// All `β ≤ α` (componentwise) with `|β| = k`.
fn sub_indices(alpha: &[u32], k: u32) -> Vec<MultiIndex> {
    fn go(alpha: &[u32], k: u32, i: usize, cur: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if i == alpha.len() {
            if k == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for b in 0..=alpha[i].min(k) {
            cur.push(b);
            go(alpha, k - b, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(alpha, k, 0, &mut Vec::new(), &mut out);
    out
}

impl<S: Scalar> SymmetricForm<S> {
    pub fn new(
        nvars: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (MultiIndex, S)>,
    ) -> Result<Self> {
        let mut form = Self {
            nvars,
            degree,
            terms: BTreeMap::new(),
        };
        for (alpha, c) in terms {
            if alpha.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: alpha.len(),
                });
            }
            let d: u32 = alpha.iter().sum();
            if d as usize != degree {
                return Err(Error::DimensionMismatch {
                    expected: degree,
                    got: d as usize,
                });
            }
            form.add_term(alpha, c);
        }
        Ok(form)
    }

    pub fn zero(nvars: usize, degree: usize) -> Self {
        Self {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The linear form `Σ a_i x_i`.
    pub fn linear(coeffs: &[S]) -> Self {
        let n = coeffs.len();
        let terms = coeffs.iter().enumerate().map(|(i, c)| {
            let mut alpha = vec![0; n];
            alpha[i] = 1;
            (alpha, c.clone())
        });
        Self::new(n, 1, terms).expect("well-formed")
    }

    /// Product of the face forms of a simplex; its zero set is the union of the faces.
    pub fn simplex_form(simplex: &Simplex<S>) -> Self {
        let n = simplex.dim() + 1;
        simplex
            .faces()
            .iter()
            .fold(Self::new(n, 0, [(vec![0; n], S::one())]).expect("constant"), |acc, f| {
                acc.product(&Self::linear(f.coeffs()))
            })
    }

    fn add_term(&mut self, alpha: MultiIndex, c: S) {
        let entry = self.terms.entry(alpha).or_insert_with(S::zero);
        *entry = entry.clone() + c;
        // Exact zeros are dropped so that `is_zero` is a map-emptiness test.
        self.terms.retain(|_, v| !(S::EXACT && v.is_zero()));
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, S> {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &[u32]) -> S {
        self.terms.get(alpha).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        let scale = self
            .terms
            .values()
            .fold(0.0f64, |m, c| m.max(c.to_f64().abs()));
        self.terms.values().all(|c| c.is_negligible(scale.max(1.0)))
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let alpha = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(alpha, x.clone() * y.clone());
            }
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| (a.clone(), c.clone() * s.clone()));
        Self::new(self.nvars, self.degree, terms).expect("same shape")
    }

    pub fn evaluate(&self, u: &[S]) -> S {
        self.terms
            .iter()
            .fold(S::zero(), |acc, (a, c)| acc + c.clone() * monomial_value(a, u))
    }

    fn check_vector(&self, u: &[S]) -> Result<()> {
        if u.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: u.len(),
            });
        }
        Ok(())
    }

    /// Value of the polar form `ψ(u_1, …, u_d)`.
    pub fn polarize_eval(&self, vectors: &[Vec<S>]) -> Result<S> {
        if vectors.len() != self.degree {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                got: vectors.len(),
            });
        }
        for v in vectors {
            self.check_vector(v)?;
        }
        let d_fact = factorial::<S>(self.degree as u32);
        let mut total = S::zero();
        for (alpha, c) in &self.terms {
            // Sum over the distinct assignments of slots to variables with
            // multiplicities alpha, weighted by α!/d!.
            let mut remaining = alpha.clone();
            let sum = assignments(vectors, 0, &mut remaining);
            total = total + c.clone() * multi_factorial::<S>(alpha) / d_fact.clone() * sum;
        }
        Ok(total)
    }

    /// The form `w ↦ ψ(u, …, u, w, …, w)` with `k` slots filled by `u`.
    pub fn contract(&self, u: &[S], k: usize) -> Result<Self> {
        self.check_vector(u)?;
        if k == 0 || k > self.degree {
            return Err(Error::ContractionOutOfRange {
                k,
                degree: self.degree,
            });
        }
        let d = self.degree as u32;
        let k32 = k as u32;
        let weight = factorial::<S>(k32) * factorial::<S>(d - k32) / factorial::<S>(d);
        let mut out = Self::zero(self.nvars, self.degree - k);
        for (alpha, c) in &self.terms {
            let alpha_fact = multi_factorial::<S>(alpha);
            for beta in sub_indices(alpha, k32) {
                let gamma: MultiIndex = alpha.iter().zip(&beta).map(|(a, b)| a - b).collect();
                let coef = c.clone() * alpha_fact.clone() * weight.clone()
                    / (multi_factorial::<S>(&beta) * multi_factorial::<S>(&gamma))
                    * monomial_value(&beta, u);
                out.add_term(gamma, coef);
            }
        }
        Ok(out)
    }

    /// Whether `u` annihilates the polar form after `level` contractions.
    pub fn kernel_member(&self, u: &[S], level: PolarKernelLevel) -> Result<bool> {
        self.check_vector(u)?;
        if u.iter().all(|x| x.is_negligible(magnitude(u))) {
            return Err(Error::InvalidVector);
        }
        Ok(self.contract(u, level.contractions())?.is_zero())
    }

    /// Coefficients of a degree-one form.
    pub fn linear_coefficients(&self) -> Option<Vec<S>> {
        if self.degree != 1 {
            return None;
        }
        Some(
            (0..self.nvars)
                .map(|i| {
                    let mut e = vec![0; self.nvars];
                    e[i] = 1;
                    self.coefficient(&e)
                })
                .collect(),
        )
    }

    /// Symmetric matrix `φ(e_i, e_j)` of a quadratic form.
    pub fn quadratic_matrix(&self) -> Option<Matrix<S>> {
        if self.degree != 2 {
            return None;
        }
        let n = self.nvars;
        let two = S::from_i64(2);
        let mut m = vec![vec![S::zero(); n]; n];
        for (alpha, c) in &self.terms {
            let idx: Vec<usize> = (0..n).filter(|&i| alpha[i] > 0).collect();
            match idx.as_slice() {
                [i] => m[*i][*i] = c.clone(),
                [i, j] => {
                    m[*i][*j] = c.clone() / two.clone();
                    m[*j][*i] = c.clone() / two.clone();
                }
                _ => unreachable!("degree two"),
            }
        }
        Some(m)
    }
}

fn assignments<S: Scalar>(vectors: &[Vec<S>], slot: usize, remaining: &mut [u32]) -> S {
    if slot == vectors.len() {
        return S::one();
    }
    let mut acc = S::zero();
    for i in 0..remaining.len() {
        if remaining[i] == 0 || vectors[slot][i].is_zero() {
            continue;
        }
        remaining[i] -= 1;
        acc = acc + vectors[slot][i].clone() * assignments(vectors, slot + 1, remaining);
        remaining[i] += 1;
    }
    acc
}

impl<S: Scalar> fmt::Display for SymmetricForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (alpha, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &a) in alpha.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "·x{}", i + 1)?,
                    _ => write!(f, "·x{}^{a}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// The `k`-th polar of `p`: the form `ψ(u, …, u, ·)` with `k` contractions.
pub fn kth_polar<S: Scalar>(
    p: &ProjPoint<S>,
    form: &SymmetricForm<S>,
    k: usize,
) -> Result<SymmetricForm<S>> {
    if k == 0 || k >= form.degree() {
        return Err(Error::ContractionOutOfRange {
            k,
            degree: form.degree() - 1,
        });
    }
    let polar = form.contract(p.coords(), k)?;
    if polar.is_zero() {
        return Err(Error::KernelObstruction);
    }
    Ok(polar)
}

/// The last polar `ψ(u, …, u, ·)`, a hyperplane.
pub fn last_polar<S: Scalar>(
    p: &ProjPoint<S>,
    form: &SymmetricForm<S>,
) -> Result<ProjHyperplane<S>> {
    let polar = kth_polar(p, form, form.degree() - 1)?;
    ProjHyperplane::new(polar.linear_coefficients().expect("degree one"))
}

/// `p⊥`: the last polar of `p` with respect to the union of the faces.
pub fn cubic_polar_point<S: Scalar>(
    p: &ProjPoint<S>,
    simplex: &Simplex<S>,
) -> Result<ProjHyperplane<S>> {
    if !simplex.is_generic_point(p) {
        return Err(Error::NotGeneric);
    }
    last_polar(p, &SymmetricForm::simplex_form(simplex))
}

/// `H⊥`: the point whose last polar with respect to the union of the faces is
/// `H`. In vertex coordinates the last polar of `Σ c_i p_i` takes the value
/// `1/c_i` on `p_i` (up to scale), so the preimage is `Σ p_i / H(p_i)`.
///
/// Only hyperplanes through no vertex are invertible: the last polar of a
/// point with some `c_i = 0` vanishes on every other vertex, so a hyperplane
/// through exactly one vertex has no preimage at all.
pub fn last_polar_inverse<S: Scalar>(
    h: &ProjHyperplane<S>,
    simplex: &Simplex<S>,
) -> Result<ProjPoint<S>> {
    if h.coeffs().len() != simplex.dim() + 1 {
        return Err(Error::DimensionMismatch {
            expected: simplex.dim() + 1,
            got: h.coeffs().len(),
        });
    }
    let values = simplex.form_on_vertices(h);
    let scale = magnitude(h.coeffs());
    if values.iter().any(|v| v.is_negligible(scale)) {
        return Err(Error::NotInvertibleHere);
    }
    let c: Vec<S> = values.iter().map(|v| S::one() / v.clone()).collect();
    ProjPoint::new(simplex.combine(&c))
}

/// Standard Cremona transformation `[x_i] ↦ [Π_{j≠i} x_j]`.
pub fn cremona<S: Scalar>(p: &ProjPoint<S>) -> Result<ProjPoint<S>> {
    let x = p.coords();
    let image: Vec<S> = (0..x.len())
        .map(|i| {
            x.iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(S::one(), |acc, (_, v)| acc * v.clone())
        })
        .collect();
    ProjPoint::new(image).map_err(|_| Error::UndefinedAtVertex)
}

/// The pole with respect to `conic` of the last polar of `p` with respect to `cubic`.
pub fn pole_of_last_polar<S: Scalar>(
    p: &ProjPoint<S>,
    cubic: &SymmetricForm<S>,
    conic: &SymmetricForm<S>,
) -> Result<ProjPoint<S>> {
    conic_pole(conic, &last_polar(p, cubic)?)
}

/// Polar hyperplane of a point with respect to a quadric.
pub fn conic_polar_point<S: Scalar>(
    quadric: &SymmetricForm<S>,
    p: &ProjPoint<S>,
) -> Result<ProjHyperplane<S>> {
    if quadric.degree() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: quadric.degree(),
        });
    }
    last_polar(p, quadric)
}

/// Pole of a hyperplane with respect to a non-degenerate quadric.
pub fn conic_pole<S: Scalar>(
    quadric: &SymmetricForm<S>,
    h: &ProjHyperplane<S>,
) -> Result<ProjPoint<S>> {
    let m = quadric.quadratic_matrix().ok_or(Error::DimensionMismatch {
        expected: 2,
        got: quadric.degree(),
    })?;
    let v = linalg::solve(&m, h.coeffs()).ok_or(Error::KernelObstruction)?;
    ProjPoint::new(v)
}

/// Whether `line` is tangent to the conic at `point`: the restriction of the
/// quadratic form to the line has a double root at `point`.
pub fn is_tangent_at<S: Scalar>(
    conic: &SymmetricForm<S>,
    point: &ProjPoint<S>,
    line: &ProjHyperplane<S>,
) -> Result<bool> {
    if conic.degree() != 2 || conic.nvars() != 3 {
        return Err(Error::UnsupportedDimension(conic.nvars().saturating_sub(1)));
    }
    if !line.contains(point) {
        return Ok(false);
    }
    // A second point of the line, independent of `point`.
    let basis = linalg::nullspace(&vec![line.coeffs().to_vec()], 3);
    let a = point.coords().to_vec();
    let w = basis
        .into_iter()
        .find(|w| crate::projective::rank_of(&[point.clone(), ProjPoint::new(w.clone()).expect("nonzero")]) == 2)
        .expect("a line has two independent points");
    // Q(s a + t w) = s² Q(a) + 2 s t φ(a, w) + t² Q(w).
    let qa = conic.evaluate(&a);
    let qw = conic.evaluate(&w);
    let phi = conic.polarize_eval(&[a, w])?;
    let disc = phi.clone() * phi - qa.clone() * qw.clone();
    let scale = 1.0;
    Ok(qa.is_negligible(scale) && disc.is_negligible(scale) && !qw.is_negligible(scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::frame_polar_point;
    use crate::scalar::{int, ints, ratio, Rational};

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::from_ints(c).unwrap()
    }

    fn hp(c: &[i64]) -> ProjHyperplane {
        ProjHyperplane::from_ints(c).unwrap()
    }

    fn triangle_cubic() -> SymmetricForm<Rational> {
        SymmetricForm::new(3, 3, [(vec![1, 1, 1], int(1))]).unwrap()
    }

    /// `d! ψ(u_1..u_d) = Σ_{∅≠T⊆[d]} (−1)^{d−|T|} C(Σ_{t∈T} u_t)`.
    fn inclusion_exclusion(form: &SymmetricForm<Rational>, vs: &[Vec<Rational>]) -> Rational {
        let d = vs.len();
        let mut total = int(0);
        for mask in 1u32..(1 << d) {
            let mut sum = vec![int(0); form.nvars()];
            for (t, v) in vs.iter().enumerate() {
                if mask & (1 << t) != 0 {
                    for (s, x) in sum.iter_mut().zip(v) {
                        *s += x;
                    }
                }
            }
            let sign = if (d - mask.count_ones() as usize) % 2 == 0 { 1 } else { -1 };
            total += int(sign) * form.evaluate(&sum);
        }
        total / (1..=d as i64).fold(int(1), |a, k| a * int(k))
    }

    fn permanent3(m: &[Vec<Rational>]) -> Rational {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        perms
            .iter()
            .map(|p| &m[0][p[0]] * &m[1][p[1]] * &m[2][p[2]])
            .sum()
    }

    #[test]
    fn polarization_of_monomials() {
        let u = ints(&[2, -1, 3]);
        let v = ints(&[1, 4, -2]);
        let w = ints(&[5, 1, 1]);
        let cube = SymmetricForm::new(3, 3, [(vec![3, 0, 0], int(1))]).unwrap();
        assert_eq!(
            cube.polarize_eval(&[u.clone(), v.clone(), w.clone()]).unwrap(),
            &u[0] * &v[0] * &w[0]
        );
        let perm = permanent3(&[u.clone(), v.clone(), w.clone()]);
        assert_eq!(
            triangle_cubic().polarize_eval(&[u.clone(), v.clone(), w.clone()]).unwrap(),
            perm / int(6)
        );
        let sq = SymmetricForm::new(3, 3, [(vec![2, 1, 0], int(1))]).unwrap();
        let expected = (&u[0] * &v[0] * &w[1] + &u[0] * &v[1] * &w[0] + &u[1] * &v[0] * &w[0]) / int(3);
        assert_eq!(sq.polarize_eval(&[u, v, w]).unwrap(), expected);
    }

    #[test]
    fn polarization_identity_oracle() {
        let f = SymmetricForm::new(
            3,
            3,
            [
                (vec![3, 0, 0], int(2)),
                (vec![1, 1, 1], int(-5)),
                (vec![0, 2, 1], ratio(7, 3)),
                (vec![0, 0, 3], int(1)),
            ],
        )
        .unwrap();
        let vs = vec![ints(&[1, 2, 3]), ints(&[-2, 0, 5]), ints(&[4, -1, 1])];
        assert_eq!(f.polarize_eval(&vs).unwrap(), inclusion_exclusion(&f, &vs));
        assert_eq!(
            f.polarize_eval(&[vs[0].clone(), vs[0].clone(), vs[0].clone()]).unwrap(),
            f.evaluate(&vs[0])
        );
        assert_eq!(
            f.polarize_eval(&vs[..2]),
            Err(Error::ArityMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn contractions_of_the_triangle_cubic() {
        let c = triangle_cubic();
        let q = c.contract(&ints(&[1, 1, 1]), 1).unwrap();
        let third = ratio(1, 3);
        assert_eq!(q.coefficient(&[1, 1, 0]), third);
        assert_eq!(q.coefficient(&[1, 0, 1]), third);
        assert_eq!(q.coefficient(&[0, 1, 1]), third);
        assert_eq!(q.coefficient(&[2, 0, 0]), int(0));

        let u = ints(&[2, 3, -1]);
        assert_eq!(
            c.contract(&u, 3).unwrap().coefficient(&[0, 0, 0]),
            c.evaluate(&u)
        );
        assert!(c.contract(&ints(&[1, 0, 0]), 2).unwrap().is_zero());
        assert_eq!(
            c.contract(&u, 4),
            Err(Error::ContractionOutOfRange { k: 4, degree: 3 })
        );
    }

    #[test]
    fn contraction_matches_polar_form() {
        let f = SymmetricForm::new(
            3,
            3,
            [(vec![2, 1, 0], int(3)), (vec![0, 1, 2], int(-1)), (vec![1, 1, 1], int(4))],
        )
        .unwrap();
        let u = ints(&[1, -2, 3]);
        let w = ints(&[4, 1, -1]);
        let z = ints(&[0, 2, 5]);
        let q = f.contract(&u, 1).unwrap();
        assert_eq!(
            q.polarize_eval(&[w.clone(), z.clone()]).unwrap(),
            f.polarize_eval(&[u.clone(), w.clone(), z]).unwrap()
        );
        let l = f.contract(&u, 2).unwrap();
        assert_eq!(l.evaluate(&w), f.polarize_eval(&[u.clone(), u, w]).unwrap());
    }

    #[test]
    fn kernels_of_the_triangle_cubic() {
        let c = triangle_cubic();
        assert!(c.kernel_member(&ints(&[1, 0, 0]), PolarKernelLevel::Second).unwrap());
        assert!(!c.kernel_member(&ints(&[1, 0, 0]), PolarKernelLevel::First).unwrap());
        assert!(!c.kernel_member(&ints(&[1, 1, 1]), PolarKernelLevel::First).unwrap());
        assert!(c.kernel_member(&ints(&[1, -1, 0]), PolarKernelLevel::Third).unwrap());
        assert!(!c.kernel_member(&ints(&[1, -1, 0]), PolarKernelLevel::Second).unwrap());
        assert_eq!(
            c.kernel_member(&ints(&[0, 0, 0]), PolarKernelLevel::First),
            Err(Error::InvalidVector)
        );
    }

    #[test]
    fn polars_of_points() {
        let c = triangle_cubic();
        assert_eq!(last_polar(&pt(&[1, 1, 1]), &c).unwrap(), hp(&[1, 1, 1]));
        assert_eq!(last_polar(&pt(&[1, 2, 3]), &c).unwrap(), hp(&[6, 3, 2]));
        let conic = kth_polar(&pt(&[1, 1, 1]), &c, 1).unwrap();
        let e = SymmetricForm::new(
            3,
            2,
            [(vec![1, 1, 0], int(1)), (vec![1, 0, 1], int(1)), (vec![0, 1, 1], int(1))],
        )
        .unwrap();
        assert_eq!(conic.scale(&int(3)), e);
        // The last polar is the polar of p with respect to its first polar.
        let p = pt(&[2, -1, 5]);
        let first = kth_polar(&p, &c, 1).unwrap();
        assert_eq!(conic_polar_point(&first, &p).unwrap(), last_polar(&p, &c).unwrap());
        assert_eq!(
            kth_polar(&pt(&[0, 1, 0]), &c, 2),
            Err(Error::KernelObstruction)
        );
    }

    #[test]
    fn last_polar_inverse_examples() {
        let s = Simplex::standard(2);
        assert_eq!(last_polar_inverse(&hp(&[1, 1, 1]), &s).unwrap(), pt(&[1, 1, 1]));
        assert_eq!(last_polar_inverse(&hp(&[6, 3, 2]), &s).unwrap(), pt(&[1, 2, 3]));
        assert_eq!(last_polar_inverse(&hp(&[1, 0, 0]), &s), Err(Error::NotInvertibleHere));
        assert_eq!(last_polar_inverse(&hp(&[1, 2, 0]), &s), Err(Error::NotInvertibleHere));
    }

    #[test]
    fn hyperplane_through_a_vertex_has_no_preimage() {
        // Brute force over a box: no point has last polar [1:2:0].
        let c = triangle_cubic();
        let target = hp(&[1, 2, 0]);
        for a in -6..=6 {
            for b in -6..=6 {
                for d in -6..=6 {
                    let Ok(p) = ProjPoint::from_ints(&[a, b, d]) else { continue };
                    if let Ok(h) = last_polar(&p, &c) {
                        assert_ne!(h, target, "preimage found at {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn cubic_polar_matches_frame_polar_on_general_simplex() {
        let s = Simplex::new(vec![pt(&[1, 2, 0]), pt(&[0, 1, 3]), pt(&[2, 0, 1])]).unwrap();
        let p = pt(&[3, -2, 5]);
        let h = cubic_polar_point(&p, &s).unwrap();
        assert_eq!(h, frame_polar_point(&p, &s).unwrap());
        assert_eq!(last_polar_inverse(&h, &s).unwrap(), p);
    }

    #[test]
    fn cremona_examples() {
        assert_eq!(cremona(&pt(&[1, 2, 3])).unwrap(), pt(&[6, 3, 2]));
        assert_eq!(cremona(&cremona(&pt(&[1, 2, 3])).unwrap()).unwrap(), pt(&[1, 2, 3]));
        assert_eq!(cremona(&pt(&[0, 1, 2])).unwrap(), pt(&[1, 0, 0]));
        assert_eq!(cremona(&pt(&[0, 0, 1])), Err(Error::UndefinedAtVertex));
    }

    #[test]
    fn cremona_against_composed_polarities() {
        let c = triangle_cubic();
        let e = kth_polar(&pt(&[1, 1, 1]), &c, 1).unwrap();
        assert_eq!(pole_of_last_polar(&pt(&[1, 1, 1]), &c, &e).unwrap(), pt(&[1, 1, 1]));
        // Away from p the pole with respect to E is not the Cremona image.
        assert_eq!(pole_of_last_polar(&pt(&[1, 2, 3]), &c, &e).unwrap(), pt(&[-1, 5, 7]));
        assert_eq!(cremona(&pt(&[1, 2, 3])).unwrap(), pt(&[6, 3, 2]));
        // Reading the last polar's coefficients as point coordinates gives Φ.
        let h = last_polar(&pt(&[1, 2, 3]), &c).unwrap();
        assert_eq!(ProjPoint::new(h.coeffs().to_vec()).unwrap(), pt(&[6, 3, 2]));
    }

    #[test]
    fn cremona_degenerates_onto_the_opposite_side() {
        // q_t = p_1 + t(0, 2, 5) tends to p_1 along the line through [0:2:5].
        let mut last = f64::INFINITY;
        for k in 1..=6 {
            let t = ratio(1, 10i64.pow(k));
            let q = ProjPoint::new(vec![int(1), &t * int(2), &t * int(5)]).unwrap();
            let image = cremona(&q).unwrap().to_float();
            let c = image.coords();
            let dist = c[0].abs() / (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
            assert!(dist < last);
            last = dist;
        }
        assert!(last < 1e-5);
        assert_eq!(
            cremona(&pt(&[0, 2, 5])).unwrap(),
            pt(&[1, 0, 0])
        );
    }

    #[test]
    fn circumconic_tangency() {
        let c = triangle_cubic();
        let e = kth_polar(&pt(&[1, 1, 1]), &c, 1).unwrap();
        assert!(is_tangent_at(&e, &pt(&[1, 0, 0]), &hp(&[0, 1, 1])).unwrap());
        assert!(!is_tangent_at(&e, &pt(&[1, 0, 0]), &hp(&[0, 1, 2])).unwrap());
    }
}
