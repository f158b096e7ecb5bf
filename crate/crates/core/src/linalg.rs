//! Dense linear algebra over a [`Scalar`] by Gaussian elimination.
//!
//! Matrices are row-major `Vec<Vec<S>>`. In exact mode every routine is exact;
//! in float mode partial pivoting on the largest magnitude is used and zero
//! tests are relative to the largest input entry.

use crate::scalar::Scalar;

pub type Matrix<S> = Vec<Vec<S>>;

fn scale_of<S: Scalar>(m: &Matrix<S>) -> f64 {
    m.iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, c| acc.max(c.to_f64().abs()))
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn transpose<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mat_vec<S: Scalar>(m: &Matrix<S>, v: &[S]) -> Vec<S> {
    m.iter().map(|r| dot(r, v)).collect()
}

pub fn mat_mul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let bt = transpose(b);
    a.iter()
        .map(|r| bt.iter().map(|c| dot(r, c)).collect())
        .collect()
}

pub fn identity<S: Scalar>(n: usize) -> Matrix<S> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { S::one() } else { S::zero() })
                .collect()
        })
        .collect()
}

/// Reduced row echelon form. Returns the pivot columns.
pub fn rref<S: Scalar>(m: &mut Matrix<S>) -> Vec<usize> {
    let scale = scale_of(m);
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pick = if S::EXACT {
            (r..rows).find(|&i| !m[i][c].is_negligible(scale))
        } else {
            (r..rows)
                .filter(|&i| !m[i][c].is_negligible(scale))
                .max_by(|&i, &j| {
                    m[i][c]
                        .abs_val()
                        .partial_cmp(&m[j][c].abs_val())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
        };
        let Some(p) = pick else { continue };
        m.swap(r, p);
        let inv = S::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = m[r][j].clone();
                    m[i][j] = m[i][j].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn nullspace<S: Scalar>(m: &Matrix<S>, cols: usize) -> Vec<Vec<S>> {
    let mut m = m.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); cols];
            v[f] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `m x = b` for square invertible `m`; `None` when singular.
pub fn solve<S: Scalar>(m: &Matrix<S>, b: &[S]) -> Option<Vec<S>> {
    let n = m.len();
    let mut aug: Matrix<S> = m
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Solves `m x = b` for `m` of full column rank; `None` when the columns are
/// dependent or `b` is outside their span.
pub fn solve_consistent<S: Scalar>(m: &Matrix<S>, b: &[S]) -> Option<Vec<S>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Matrix<S> = m
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != cols || pivots.iter().any(|&p| p >= cols) {
        return None;
    }
    Some(aug[..cols].iter().map(|r| r[cols].clone()).collect())
}

pub fn inverse<S: Scalar>(m: &Matrix<S>) -> Option<Matrix<S>> {
    let n = m.len();
    let mut aug: Matrix<S> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by elimination.
pub fn det<S: Scalar>(m: &Matrix<S>) -> S {
    let n = m.len();
    let scale = scale_of(m);
    let mut a = m.clone();
    let mut d = S::one();
    for c in 0..n {
        let pick = if S::EXACT {
            (c..n).find(|&i| !a[i][c].is_negligible(scale))
        } else {
            (c..n).max_by(|&i, &j| {
                a[i][c]
                    .abs_val()
                    .partial_cmp(&a[j][c].abs_val())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
        };
        let Some(p) = pick else { return S::zero() };
        if a[p][c].is_zero() {
            return S::zero();
        }
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d = d * piv.clone();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() / piv.clone();
            for j in c..n {
                let v = a[c][j].clone();
                a[i][j] = a[i][j].clone() - f.clone() * v;
            }
        }
    }
    d
}
