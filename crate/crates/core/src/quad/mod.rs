//! Adaptive quadrature on finite intervals and over the real line.
//!
//! Finite integrals use globally adaptive 10/21-point Gauss–Kronrod
//! bisection. Infinite ranges are split into a finite part, integrated on
//! half-unit panels, and a tail handled either by a declared decay bound
//! (`|f(x)| ≤ C |x|^{-p}`) or by an explicit [`FarField`] expansion whose
//! tail integral is evaluated in closed form.

pub mod farfield;
mod roots;
pub(crate) mod rules;

pub use farfield::{FarField, OscTerm};
pub use roots::find_roots;
pub use rules::gauss_legendre;

use crate::error::{invalid, Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Default absolute tolerance for scalar constants.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default absolute tolerance for matrix entries.
pub const DEFAULT_MATRIX_TOL: f64 = 1e-9;

const DEFAULT_MAX_SUBDIVISIONS: usize = 4000;
const MAX_LINE_EXTENT: f64 = 2.0e6;

/// Value of an integral with its error accounting.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadResult {
    pub value: f64,
    /// Estimated error of the integrated (finite) part.
    pub err_est: f64,
    pub n_evals: usize,
    /// Bound on the neglected or analytically integrated tail.
    pub tail_bound: f64,
}

impl QuadResult {
    pub fn total_error(&self) -> f64 {
        self.err_est + self.tail_bound
    }

    pub fn plus(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            err_est: self.err_est + other.err_est,
            n_evals: self.n_evals + other.n_evals,
            tail_bound: self.tail_bound + other.tail_bound,
        }
    }

    pub fn scaled(self, s: f64) -> QuadResult {
        QuadResult {
            value: self.value * s,
            err_est: self.err_est * s.abs(),
            n_evals: self.n_evals,
            tail_bound: self.tail_bound * s.abs(),
        }
    }
}

/// Asserts `|f(x)| ≤ coefficient / |x|^exponent` for `|x| ≥ x0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayDeclaration {
    pub exponent: f64,
    pub coefficient: f64,
    pub x0: f64,
}

impl DecayDeclaration {
    pub fn new(exponent: f64, coefficient: f64, x0: f64) -> Result<Self> {
        if exponent <= 1.0 || !exponent.is_finite() {
            return Err(invalid(format!("decay exponent {exponent} must exceed 1")));
        }
        if coefficient < 0.0 || x0 <= 0.0 {
            return Err(invalid("decay coefficient must be ≥ 0 and x0 > 0"));
        }
        Ok(Self {
            exponent,
            coefficient,
            x0,
        })
    }

    /// Bound on `∫_{|x| ≥ X}` (both tails).
    pub fn tail_bound(&self, x: f64) -> f64 {
        2.0 * self.coefficient / ((self.exponent - 1.0) * x.powf(self.exponent - 1.0))
    }

    /// Bound on a single tail `∫_X^∞`.
    pub fn one_sided_bound(&self, x: f64) -> f64 {
        0.5 * self.tail_bound(x)
    }
}

/// Tuning for [`integrate_finite_with`].
#[derive(Debug, Clone)]
pub struct QuadOptions {
    pub tol: f64,
    /// Interior points where panels must begin (integrand zeros, kinks).
    pub breakpoints: Vec<f64>,
    pub max_subdivisions: usize,
}

impl QuadOptions {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            breakpoints: Vec::new(),
            max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
        }
    }

    pub fn breakpoints(mut self, pts: Vec<f64>) -> Self {
        self.breakpoints = pts;
        self
    }

    pub fn max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// `∫_a^b f` to absolute tolerance `tol`.
pub fn integrate_finite<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadResult> {
    integrate_finite_with(f, a, b, &QuadOptions::new(tol))
}

/// `∫_a^b f` with initial panels split at the supplied breakpoints.
pub fn integrate_finite_with<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(invalid(format!("integration interval [{a}, {b}] is empty")));
    }
    if !(opts.tol > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    let mut cuts: Vec<f64> = std::iter::once(a)
        .chain(opts.breakpoints.iter().copied().filter(|&x| x > a && x < b))
        .chain(std::iter::once(b))
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut heap = BinaryHeap::with_capacity(cuts.len() * 2);
    let mut total = 0.0;
    let mut err = 0.0;
    let mut n_evals = 0;
    for w in cuts.windows(2) {
        let est = rules::gk21(f, w[0], w[1]);
        n_evals += 21;
        total += est.value;
        err += est.error;
        heap.push(Panel {
            a: w[0],
            b: w[1],
            value: est.value,
            error: est.error,
        });
    }
    let limit = opts.max_subdivisions + cuts.len();
    while err > opts.tol {
        if heap.len() >= limit {
            return Err(Error::AccuracyNotReached {
                a,
                b,
                tol: opts.tol,
                err_est: err,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            return Err(Error::AccuracyNotReached {
                a,
                b,
                tol: opts.tol,
                err_est: err,
            });
        }
        let left = rules::gk21(f, worst.a, mid);
        let right = rules::gk21(f, mid, worst.b);
        n_evals += 42;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: left.value,
            error: left.error,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: right.value,
            error: right.error,
        });
        if heap.len() % 64 == 0 {
            // Re-sum to keep the running totals free of cancellation drift.
            total = heap.iter().map(|p| p.value).sum();
            err = heap.iter().map(|p| p.error).sum();
        }
    }
    let value: f64 = heap.iter().map(|p| p.value).sum();
    let err: f64 = heap.iter().map(|p| p.error).sum();
    let _ = total;
    Ok(QuadResult {
        value,
        err_est: err,
        n_evals,
        tail_bound: 0.0,
    })
}

/// Half-integer lattice points strictly inside `(a, b)`.
pub fn half_integer_breakpoints(a: f64, b: f64) -> Vec<f64> {
    let start = (2.0 * a).floor() as i64 + 1;
    let end = (2.0 * b).ceil() as i64 - 1;
    (start..=end)
        .map(|k| k as f64 * 0.5)
        .filter(|&x| x > a && x < b)
        .collect()
}

/// `∫_ℝ f` under a declared decay: the finite part on `[-X, X]` with
/// half-integer panels, `X` grown from `decay.x0` until the tail bound
/// drops below `tol / 2`.
pub fn integrate_line<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    decay: &DecayDeclaration,
    tol: f64,
) -> Result<QuadResult> {
    if !(tol > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    let needed = (2.0 * decay.coefficient / ((decay.exponent - 1.0) * 0.5 * tol))
        .powf(1.0 / (decay.exponent - 1.0));
    let x = (decay.x0.max(needed) * 2.0).ceil() / 2.0;
    if x > MAX_LINE_EXTENT {
        return Err(Error::AccuracyNotReached {
            a: -x,
            b: x,
            tol,
            err_est: decay.tail_bound(MAX_LINE_EXTENT),
        });
    }
    let opts = QuadOptions::new(0.5 * tol)
        .breakpoints(half_integer_breakpoints(-x, x))
        .max_subdivisions(DEFAULT_MAX_SUBDIVISIONS + (4.0 * x) as usize);
    let mut res = integrate_finite_with(f, -x, x, &opts)?;
    res.tail_bound = decay.tail_bound(x);
    Ok(res)
}

/// `∫_{start}^∞ f`, where `far` describes `f` for `x ≥ cut`: quadrature on
/// `[start, cut]` plus the closed-form tail of the expansion.
/// A half-integer cut beyond which the tail series of `far` is used: past
/// its validity and far enough that the oscillatory tails take their
/// asymptotic route.
pub fn asymptotic_cut(far: &FarField) -> f64 {
    let x = far
        .valid_from
        .max(8.0)
        .max((2.0 * far.max_power() + 40.0) / std::f64::consts::PI);
    (x * 2.0).ceil() / 2.0
}

pub fn integrate_tail<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    start: f64,
    cut: f64,
    far: &FarField,
    tol: f64,
) -> Result<QuadResult> {
    let (tail, tail_err) = far.tail(cut.max(start))?;
    if cut <= start {
        return Ok(QuadResult {
            value: tail,
            err_est: 0.0,
            n_evals: 0,
            tail_bound: tail_err,
        });
    }
    let opts = QuadOptions::new(tol)
        .breakpoints(half_integer_breakpoints(start, cut))
        .max_subdivisions(DEFAULT_MAX_SUBDIVISIONS + (4.0 * (cut - start)) as usize);
    let mut res = integrate_finite_with(f, start, cut, &opts)?;
    res.value += tail;
    res.tail_bound += tail_err;
    Ok(res)
}

/// `∫_ℝ f` for an even integrand described by `far` beyond `cut`.
pub fn integrate_even_line<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    cut: f64,
    far: &FarField,
    tol: f64,
) -> Result<QuadResult> {
    Ok(integrate_tail(f, 0.0, cut, far, 0.5 * tol)?.scaled(2.0))
}

/// Vector-valued `∫_a^b f` on the given initial panels; every component is
/// driven below `tol`. Used for matrix assembly where all entries share
/// one set of basis evaluations.
pub fn integrate_finite_vec<F: Fn(f64, &mut [f64]) + Sync + ?Sized>(
    f: &F,
    dim: usize,
    cuts: &[f64],
    tol: f64,
) -> Result<(Vec<f64>, Vec<f64>, usize)> {
    struct VPanel {
        a: f64,
        b: f64,
        value: Vec<f64>,
        error: Vec<f64>,
        worst: f64,
    }
    let mut panels: Vec<VPanel> = cuts
        .windows(2)
        .map(|w| {
            let (value, error) = rules::gk21_vec(f, dim, w[0], w[1]);
            let worst = error.iter().copied().fold(0.0, f64::max);
            VPanel {
                a: w[0],
                b: w[1],
                value,
                error,
                worst,
            }
        })
        .collect();
    let mut n_evals = 21 * panels.len();
    let max_panels = panels.len() + DEFAULT_MAX_SUBDIVISIONS;
    loop {
        let mut err = vec![0.0; dim];
        for p in &panels {
            for (e, pe) in err.iter_mut().zip(&p.error) {
                *e += pe;
            }
        }
        let worst_total = err.iter().copied().fold(0.0, f64::max);
        if worst_total <= tol {
            let mut value = vec![0.0; dim];
            for p in &panels {
                for (v, pv) in value.iter_mut().zip(&p.value) {
                    *v += pv;
                }
            }
            return Ok((value, err, n_evals));
        }
        if panels.len() >= max_panels {
            return Err(Error::AccuracyNotReached {
                a: cuts[0],
                b: *cuts.last().unwrap(),
                tol,
                err_est: worst_total,
            });
        }
        // Split every panel carrying a meaningful share of the error.
        let threshold = tol / (4.0 * panels.len() as f64);
        let mut next = Vec::with_capacity(panels.len() * 2);
        for p in panels {
            if p.worst > threshold {
                let mid = 0.5 * (p.a + p.b);
                for (a, b) in [(p.a, mid), (mid, p.b)] {
                    let (value, error) = rules::gk21_vec(f, dim, a, b);
                    let worst = error.iter().copied().fold(0.0, f64::max);
                    next.push(VPanel {
                        a,
                        b,
                        value,
                        error,
                        worst,
                    });
                }
                n_evals += 42;
            } else {
                next.push(p);
            }
        }
        panels = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial() {
        let r = integrate_finite(&|t: f64| t * t, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-15);
        assert!(r.err_est <= 1e-12);
    }

    #[test]
    fn sine_modes_are_orthogonal() {
        for k in [1, 3, 5] {
            for j in [1, 3, 7] {
                let f = |t: f64| (PI * k as f64 * t).sin() * (PI * j as f64 * t).sin();
                let r = integrate_finite(&f, -0.5, 0.5, 1e-12).unwrap();
                let expected = if k == j { 0.5 } else { 0.0 };
                assert!((r.value - expected).abs() < 1e-13, "k={k} j={j}: {}", r.value);
            }
        }
    }

    #[test]
    fn reports_failure_instead_of_returning_garbage() {
        let f = |x: f64| (1.0 / x).sin() / x;
        let err = integrate_finite_with(&f, 1e-6, 1.0, &QuadOptions::new(1e-14).max_subdivisions(50));
        assert!(matches!(err, Err(Error::AccuracyNotReached { .. })));
    }

    #[test]
    fn declared_decay_tail() {
        let decay = DecayDeclaration::new(3.0, 1.0, 1.0).unwrap();
        assert_eq!(decay.one_sided_bound(1.0), 0.5);
        let quartic = DecayDeclaration::new(4.0, 1.0, 1.0).unwrap();
        let r = integrate_line(&|x: f64| 1.0 / (1.0 + x.powi(4)), &quartic, 1e-8).unwrap();
        assert!(r.tail_bound <= 0.5e-8);
        assert!((r.value - PI / 2f64.sqrt()).abs() <= r.total_error());
    }

    #[test]
    fn odd_integrand_integrates_to_zero() {
        let decay = DecayDeclaration::new(3.0, 1.0, 1.0).unwrap();
        let r = integrate_line(&|x: f64| x / (1.0 + x * x * x * x), &decay, 1e-6).unwrap();
        assert!(r.value.abs() <= r.err_est + 1e-15);
    }

    #[test]
    fn half_integer_grid() {
        assert_eq!(half_integer_breakpoints(0.0, 1.6), vec![0.5, 1.0, 1.5]);
        assert_eq!(half_integer_breakpoints(-0.5, 0.5), vec![0.0]);
    }
}
