//! Dense symmetric eigenproblems.
//!
//! [`eig_sym`] is cyclic Jacobi with threshold skipping; [`eig_gen_min`]
//! reduces the pencil `(A, B)` through the Cholesky factor of `B`. The
//! exact-rational helpers serve the small certificates, where `B` is
//! too ill-conditioned for a binary64 factorization.

use crate::error::{invalid, Error, Result};
use crate::poly::{rat_to_f64, Rational};
use num_traits::{Signed, Zero};

const MAX_SWEEPS: usize = 64;

/// Dense symmetric matrix stored as its packed lower triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    lower: Vec<f64>,
    provenance: String,
}

impl SymMatrix {
    pub fn zeros(dim: usize, provenance: impl Into<String>) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            lower: vec![0.0; dim * (dim + 1) / 2],
            provenance: provenance.into(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, "identity");
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Fills entry `(i, j)`, `j ≤ i`, from `f(i, j)`.
    pub fn from_fn(dim: usize, provenance: impl Into<String>, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim, provenance);
        for i in 0..dim {
            for j in 0..=i {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// From a row-major square array; only the lower triangle is read.
    pub fn from_rows(rows: &[Vec<f64>], provenance: impl Into<String>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(invalid("matrix must be square and nonempty"));
        }
        Ok(Self::from_fn(n, provenance, |i, j| rows[i][j]))
    }

    fn index(i: usize, j: usize) -> usize {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        r * (r + 1) / 2 + c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.lower[Self::index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.lower[Self::index(i, j)] = v;
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.dim;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = self.get(i, j);
            }
        }
        a
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            lower: self.lower.iter().map(|v| v * c).collect(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..=i {
                let v = self.get(i, j);
                s += if i == j { v * v } else { 2.0 * v * v };
            }
        }
        s.sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn quadform(&self, x: &[f64]) -> f64 {
        x.iter().zip(self.mul_vec(x)).map(|(a, b)| a * b).sum()
    }
}

/// One eigenpair with a unit eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

/// All eigenpairs of `a`, sorted by decreasing `|λ|` (positive first on
/// ties within `tol·‖A‖`).
pub fn eig_sym(a: &SymMatrix, tol: f64) -> Result<Vec<EigenPair>> {
    let n = a.dim();
    let mut m = a.to_dense();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm = a.frobenius_norm();
    if norm == 0.0 {
        return Ok(sort_pairs(
            (0..n)
                .map(|k| EigenPair {
                    value: 0.0,
                    vector: (0..n).map(|i| if i == k { 1.0 } else { 0.0 }).collect(),
                })
                .collect(),
            0.0,
        ));
    }
    let target = f64::EPSILON * norm;
    let mut sweeps = 0;
    loop {
        let off = off_norm(&m, n);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        // Early sweeps skip rotations that cannot matter yet.
        let threshold = if sweeps < 4 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                if apq.abs() <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
                    m[p * n + q] = 0.0;
                    m[q * n + p] = 0.0;
                    continue;
                }
                if apq.abs() <= threshold {
                    continue;
                }
                let theta = 0.5 * (aqq - app) / apq;
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut m, &mut v, n, p, q, c, s, t);
            }
        }
    }
    let pairs = (0..n)
        .map(|k| EigenPair {
            value: m[k * n + k],
            vector: (0..n).map(|i| v[i * n + k]).collect(),
        })
        .collect();
    let sorted = sort_pairs(pairs, tol * norm);
    for pair in &sorted {
        let r = residual(a, pair);
        if r > tol.max(1e3 * f64::EPSILON) * norm * 10.0 {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: r,
            });
        }
    }
    Ok(sorted)
}

#[allow(clippy::too_many_arguments)]
fn rotate(m: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64, t: f64) {
    let apq = m[p * n + q];
    m[p * n + p] -= t * apq;
    m[q * n + q] += t * apq;
    m[p * n + q] = 0.0;
    m[q * n + p] = 0.0;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = m[k * n + p];
        let akq = m[k * n + q];
        let np = c * akp - s * akq;
        let nq = s * akp + c * akq;
        m[k * n + p] = np;
        m[p * n + k] = np;
        m[k * n + q] = nq;
        m[q * n + k] = nq;
    }
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

fn off_norm(m: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += 2.0 * m[i * n + j] * m[i * n + j];
        }
    }
    s.sqrt()
}

fn sort_pairs(mut pairs: Vec<EigenPair>, tie: f64) -> Vec<EigenPair> {
    pairs.sort_by(|a, b| {
        let (x, y) = (a.value.abs(), b.value.abs());
        if (x - y).abs() <= tie {
            b.value.total_cmp(&a.value)
        } else {
            y.total_cmp(&x)
        }
    });
    pairs
}

/// `‖Av − λv‖`.
pub fn residual(a: &SymMatrix, pair: &EigenPair) -> f64 {
    a.mul_vec(&pair.vector)
        .iter()
        .zip(&pair.vector)
        .map(|(av, v)| (av - pair.value * v).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Lower Cholesky factor `L` (row-major, dense) with `B = LLᵀ`.
pub fn cholesky(b: &SymMatrix) -> Result<Vec<f64>> {
    let n = b.dim();
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut d = b.get(j, j);
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite { index: j, pivot: d });
        }
        let djj = d.sqrt();
        l[j * n + j] = djj;
        for i in j + 1..n {
            let mut s = b.get(i, j);
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / djj;
        }
    }
    Ok(l)
}

/// Smallest eigenvalue of the pencil `(A, B)`, i.e. `min aᵀAa / aᵀBa`,
/// with its vector (unit length, first nonzero coordinate positive).
pub fn eig_gen_min(a: &SymMatrix, b: &SymMatrix, tol: f64) -> Result<(f64, Vec<f64>)> {
    let n = a.dim();
    if b.dim() != n {
        return Err(invalid("pencil dimensions differ"));
    }
    let l = cholesky(b)?;
    // C = L⁻¹ A L⁻ᵀ: solve L X = A, then L Cᵀ = Xᵀ.
    let mut x = a.to_dense();
    forward_solve_columns(&l, &mut x, n);
    let mut xt = transpose(&x, n);
    forward_solve_columns(&l, &mut xt, n);
    let c = SymMatrix::from_fn(n, format!("reduced({})", a.provenance()), |i, j| {
        0.5 * (xt[i * n + j] + xt[j * n + i])
    });
    let pairs = eig_sym(&c, tol)?;
    let min = pairs
        .iter()
        .min_by(|p, q| p.value.total_cmp(&q.value))
        .expect("nonempty spectrum");
    // a = L⁻ᵀ y
    let mut vec = min.vector.clone();
    for i in (0..n).rev() {
        let mut s = vec[i];
        for k in i + 1..n {
            s -= l[k * n + i] * vec[k];
        }
        vec[i] = s / l[i * n + i];
    }
    Ok((min.value, gauge(vec)))
}

/// Scales to unit length with the first nonzero coordinate positive.
pub fn gauge(mut v: Vec<f64>) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let first = v.iter().copied().find(|x| *x != 0.0).unwrap_or(1.0);
    let s = first.signum() / norm;
    v.iter_mut().for_each(|x| *x *= s);
    v
}

fn forward_solve_columns(l: &[f64], x: &mut [f64], n: usize) {
    for col in 0..n {
        for i in 0..n {
            let mut s = x[i * n + col];
            for k in 0..i {
                s -= l[i * n + k] * x[k * n + col];
            }
            x[i * n + col] = s / l[i * n + i];
        }
    }
}

fn transpose(x: &[f64], n: usize) -> Vec<f64> {
    let mut t = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            t[j * n + i] = x[i * n + j];
        }
    }
    t
}

/// Dense square matrix of rationals, row-major.
pub type RatMatrix = Vec<Vec<Rational>>;

/// Exact `aᵀ M a`.
pub fn rational_quadform(a: &[Rational], m: &RatMatrix) -> Result<Rational> {
    if m.len() != a.len() || m.iter().any(|row| row.len() != a.len()) {
        return Err(invalid("quadratic form dimensions disagree"));
    }
    let mut acc = Rational::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        let mut row = Rational::zero();
        for (j, aj) in a.iter().enumerate() {
            if !aj.is_zero() && !m[i][j].is_zero() {
                row += &m[i][j] * aj;
            }
        }
        acc += ai * row;
    }
    Ok(acc)
}

/// Exact congruence reduction of the pencil `(A, B)` for symmetric positive
/// definite `B = L Δ Lᵀ`: returns `C = Δ^{-1/2} L⁻¹ A L⁻ᵀ Δ^{-1/2}` rounded
/// to binary64, and a closure mapping eigenvectors of `C` back to the
/// pencil.
pub fn reduce_pencil_exact(a: &RatMatrix, b: &RatMatrix) -> Result<(SymMatrix, ExactBackTransform)> {
    let n = b.len();
    if a.len() != n {
        return Err(invalid("pencil dimensions differ"));
    }
    // LDLᵀ of B with unit lower L.
    let mut l: RatMatrix = vec![vec![Rational::zero(); n]; n];
    let mut d: Vec<Rational> = vec![Rational::zero(); n];
    for j in 0..n {
        let mut dj = b[j][j].clone();
        for k in 0..j {
            if !l[j][k].is_zero() {
                dj -= &l[j][k] * &l[j][k] * &d[k];
            }
        }
        if !dj.is_positive() {
            return Err(Error::NotPositiveDefinite {
                index: j,
                pivot: rat_to_f64(&dj),
            });
        }
        l[j][j] = Rational::from_integer(1.into());
        for i in j + 1..n {
            let mut s = b[i][j].clone();
            for k in 0..j {
                if !l[i][k].is_zero() && !l[j][k].is_zero() {
                    s -= &l[i][k] * &l[j][k] * &d[k];
                }
            }
            l[i][j] = s / &dj;
        }
        d[j] = dj;
    }
    // X = L⁻¹ A, then M = L⁻¹ Xᵀ = L⁻¹ A L⁻ᵀ.
    let solve = |rhs: &RatMatrix| -> RatMatrix {
        let mut x = rhs.clone();
        for col in 0..n {
            for i in 0..n {
                let mut s = x[i][col].clone();
                for k in 0..i {
                    if !l[i][k].is_zero() && !x[k][col].is_zero() {
                        s -= &l[i][k] * &x[k][col];
                    }
                }
                x[i][col] = s;
            }
        }
        x
    };
    let x = solve(a);
    let xt: RatMatrix = (0..n).map(|i| (0..n).map(|j| x[j][i].clone()).collect()).collect();
    let m = solve(&xt);
    let dsqrt: Vec<f64> = d.iter().map(|v| rat_to_f64(v).sqrt()).collect();
    let c = SymMatrix::from_fn(n, "exact reduction", |i, j| {
        rat_to_f64(&m[i][j]) / (dsqrt[i] * dsqrt[j])
    });
    let lf: Vec<Vec<f64>> = l.iter().map(|row| row.iter().map(rat_to_f64).collect()).collect();
    Ok((c, ExactBackTransform { l: lf, dsqrt }))
}

/// Maps `y` (eigenvector of the reduced matrix) to `a = L⁻ᵀ Δ^{-1/2} y`.
#[derive(Debug, Clone)]
pub struct ExactBackTransform {
    l: Vec<Vec<f64>>,
    dsqrt: Vec<f64>,
}

impl ExactBackTransform {
    pub fn apply(&self, y: &[f64]) -> Vec<f64> {
        let n = y.len();
        let mut a: Vec<f64> = y.iter().zip(&self.dsqrt).map(|(v, s)| v / s).collect();
        for i in (0..n).rev() {
            let mut s = a[i];
            for k in i + 1..n {
                s -= self.l[k][i] * a[k];
            }
            a[i] = s;
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        let id = SymMatrix::identity(2);
        let e = eig_sym(&id, 1e-12).unwrap();
        assert_eq!(e.iter().map(|p| p.value).collect::<Vec<_>>(), vec![1.0, 1.0]);
        let a = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]], "t").unwrap();
        let e = eig_sym(&a, 1e-12).unwrap();
        assert!((e[0].value - 3.0).abs() < 1e-14 && (e[1].value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ties_prefer_the_positive_eigenvalue() {
        let a = SymMatrix::from_rows(&[vec![-2.0, 0.0], vec![0.0, 2.0]], "t").unwrap();
        let e = eig_sym(&a, 1e-12).unwrap();
        assert_eq!(e[0].value, 2.0);
    }

    #[test]
    fn generalized_examples() {
        let a = SymMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 5.0]], "t").unwrap();
        let (lam, v) = eig_gen_min(&a, &SymMatrix::identity(2), 1e-12).unwrap();
        assert!((lam - 1.0).abs() < 1e-14);
        assert!((v[0] - 1.0).abs() < 1e-14 && v[1].abs() < 1e-14);
        let b = SymMatrix::from_rows(&[vec![2.0, 0.3], vec![0.3, 1.0]], "t").unwrap();
        let (lam, _) = eig_gen_min(&b, &b, 1e-12).unwrap();
        assert!((lam - 1.0).abs() < 1e-14);
        let bad = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]], "t").unwrap();
        assert!(matches!(eig_gen_min(&a, &bad, 1e-12), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn rational_forms() {
        assert_eq!(rational_quadform(&[rat_int(1)], &vec![vec![rat(1, 3)]]).unwrap(), rat(1, 3));
        let m = vec![vec![rat_int(1), rat(1, 2)], vec![rat(1, 2), rat_int(1)]];
        assert_eq!(rational_quadform(&[rat_int(1), rat_int(2)], &m).unwrap(), rat_int(7));
    }

    #[test]
    fn exact_reduction_matches_cholesky() {
        let a = vec![
            vec![rat_int(4), rat(1, 3), rat_int(0)],
            vec![rat(1, 3), rat_int(2), rat(1, 7)],
            vec![rat_int(0), rat(1, 7), rat_int(3)],
        ];
        let b = vec![
            vec![rat_int(2), rat(1, 2), rat(1, 5)],
            vec![rat(1, 2), rat_int(3), rat(1, 4)],
            vec![rat(1, 5), rat(1, 4), rat_int(1)],
        ];
        let (c, back) = reduce_pencil_exact(&a, &b).unwrap();
        let to_f = |m: &RatMatrix| {
            SymMatrix::from_fn(3, "f", |i, j| rat_to_f64(&m[i][j]))
        };
        let (lam, v) = eig_gen_min(&to_f(&a), &to_f(&b), 1e-12).unwrap();
        let pairs = eig_sym(&c, 1e-12).unwrap();
        let min = pairs.iter().min_by(|p, q| p.value.total_cmp(&q.value)).unwrap();
        assert!((min.value - lam).abs() < 1e-13);
        let w = gauge(back.apply(&min.vector));
        for (x, y) in w.iter().zip(&v) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    fn random_sym(n: usize, vals: &[f64]) -> SymMatrix {
        SymMatrix::from_fn(n, "random", |i, j| vals[(i * 31 + j * 17) % vals.len()])
    }

    proptest! {
        #[test]
        fn trace_and_orthogonality(vals in proptest::collection::vec(-10.0f64..10.0, 40), n in 2usize..12) {
            let a = random_sym(n, &vals);
            let pairs = eig_sym(&a, 1e-12).unwrap();
            let sum: f64 = pairs.iter().map(|p| p.value).sum();
            let norm = a.frobenius_norm().max(1.0);
            prop_assert!((sum - a.trace()).abs() <= 1e-12 * n as f64 * norm);
            for i in 0..n {
                prop_assert!(residual(&a, &pairs[i]) <= 1e-12 * norm);
                for j in 0..i {
                    let dot: f64 = pairs[i].vector.iter().zip(&pairs[j].vector).map(|(x, y)| x * y).sum();
                    prop_assert!(dot.abs() < 1e-12);
                }
            }
            for w in pairs.windows(2) {
                prop_assert!(w[0].value.abs() >= w[1].value.abs() - 1e-12 * norm);
            }
        }

        #[test]
        fn pencil_scaling(vals in proptest::collection::vec(-1.0f64..1.0, 30), c in 0.1f64..10.0) {
            let n = 5;
            let a = random_sym(n, &vals);
            let mut b = SymMatrix::identity(n);
            for i in 0..n {
                for j in 0..i {
                    b.set(i, j, 0.1 * vals[(i + 2 * j) % vals.len()]);
                }
            }
            let (l0, _) = eig_gen_min(&a, &b, 1e-12).unwrap();
            let (l1, _) = eig_gen_min(&a.scaled(c), &b.scaled(c), 1e-12).unwrap();
            let (l2, _) = eig_gen_min(&a.scaled(c), &b, 1e-12).unwrap();
            prop_assert!((l0 - l1).abs() < 1e-11 * (1.0 + l0.abs()));
            prop_assert!((c * l0 - l2).abs() < 1e-11 * (1.0 + (c * l0).abs()));
        }
    }
}
