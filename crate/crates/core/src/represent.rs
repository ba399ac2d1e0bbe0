//! From `h` (type π, `|h|` even, `x h ∈ L²`) to the radially decreasing
//! `f(x) = ∫_{−∞}^x −t h(t)² dt` of type 2π, and the quotient
//! `‖f‖₁/f(0) = 2∫x²h² / ∫|x|h²`.

use crate::error::{invalid, Error, Result};
use crate::quad::{integrate_finite_with, integrate_tail, FarField, OscTerm, QuadOptions};
use crate::specfun::{BandFunction, Parity};
use std::f64::consts::PI;
use std::sync::Arc;

const MIN_CUT: f64 = 20.0;

/// Expansion of `x^w h(x)²` from one of `h`, with a bound for the
/// truncation of `h`'s own expansion carried into the square.
pub(crate) fn weighted_square(far: &FarField, w: f64) -> FarField {
    let sq = far.mul(far);
    let v = far.valid_from.max(1.0);
    let sq = match far.remainder {
        Some((r, p)) => {
            let pmin = far.terms.iter().map(|t| t.power).fold(f64::INFINITY, f64::min);
            // |F(x)| ≤ E x^{−pmin} for x ≥ v.
            let e: f64 = far
                .terms
                .iter()
                .map(|t| t.amp.norm() * v.powf(pmin - t.power))
                .sum();
            let coeff = (2.0 * e + r * v.powf(pmin - p)) * r;
            sq.with_remainder(coeff, p + pmin)
        }
        None => sq,
    };
    sq.mul_power(w).valid_from(v)
}

/// `f` built from `h`, with `peak = f(0)` and `mass = ∫f = ∫x²h²`.
#[derive(Clone)]
pub struct MonotoneProfile {
    h: BandFunction,
    moment: Arc<FarField>,
    cut: f64,
    tol: f64,
    pub mass: f64,
    pub peak: f64,
    /// Largest error estimate among the integrals behind `mass` and `peak`.
    pub err_est: f64,
}

impl MonotoneProfile {
    pub fn new(h: BandFunction, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(invalid("tolerance must be positive"));
        }
        let far = h
            .far_field()
            .ok_or_else(|| invalid(format!("{} has no far-field expansion", h.label())))?;
        let moment = weighted_square(far, 1.0);
        let second = weighted_square(far, 2.0);
        let cut = (moment.valid_from.max(MIN_CUT) * 2.0).ceil() / 2.0;
        let eval = h.eval_fn();
        let peak = integrate_tail(&|t: f64| t * eval(t).powi(2), 0.0, cut, &moment, tol)?;
        let half_mass = integrate_tail(&|t: f64| t * t * eval(t).powi(2), 0.0, cut, &second, tol)?;
        Ok(Self {
            h,
            moment: Arc::new(moment),
            cut,
            tol,
            mass: 2.0 * half_mass.value,
            peak: peak.value,
            err_est: peak.total_error().max(2.0 * half_mass.total_error()),
        })
    }

    pub fn h(&self) -> &BandFunction {
        &self.h
    }

    /// `f(x) = ∫_{|x|}^∞ t h(t)² dt`; `f` is even because `|h|` is.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let a = x.abs();
        if a == 0.0 {
            return Ok(self.peak);
        }
        let eval = self.h.eval_fn();
        Ok(integrate_tail(&|t: f64| t * eval(t).powi(2), a, self.cut, &self.moment, self.tol)?.value)
    }

    /// `‖f‖₁/f(0)`.
    pub fn quotient(&self) -> Result<f64> {
        if self.peak == 0.0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.mass / self.peak)
    }

    /// `f` as a band function of type 2π, evaluated by quadrature per point.
    pub fn band(&self) -> BandFunction {
        let me = self.clone();
        BandFunction::new(format!("f[{}]", self.h.label()), 2.0 * PI, Parity::Even, move |x| {
            me.eval(x).unwrap_or(f64::NAN)
        })
    }

    /// `f` on `n + 1` uniform nodes of `[0, xmax]`, accumulated panel by
    /// panel from the right end, with a natural cubic spline through them.
    pub fn tabulate(&self, xmax: f64, n: usize) -> Result<CubicTable> {
        if !(xmax > 0.0) || n < 2 {
            return Err(invalid("tabulation needs xmax > 0 and n ≥ 2"));
        }
        let step = xmax / n as f64;
        let eval = self.h.eval_fn();
        let g = |t: f64| t * eval(t).powi(2);
        let mut values = vec![0.0; n + 1];
        values[n] = self.eval(xmax)?;
        let opts = QuadOptions::new(self.tol / n as f64);
        for k in (0..n).rev() {
            let a = k as f64 * step;
            values[k] = values[k + 1] + integrate_finite_with(&g, a, a + step, &opts)?.value;
        }
        Ok(CubicTable::new(step, values))
    }
}

pub fn h_to_f(h: &BandFunction, x: f64, tol: f64) -> Result<f64> {
    MonotoneProfile::new(h.clone(), tol)?.eval(x)
}

/// `2∫x²h² / ∫|x|h²`.
pub fn quotient(h: &BandFunction, tol: f64) -> Result<f64> {
    MonotoneProfile::new(h.clone(), tol)?.quotient()
}

/// Largest `|f′(x) + x h(x)²|` over `xs`, with `f′` by a Richardson-extrapolated
/// central difference.
pub fn derivative_identity_check(h: &BandFunction, f: &BandFunction, xs: &[f64]) -> f64 {
    let diff = |x: f64, d: f64| (f.eval(x + d) - f.eval(x - d)) / (2.0 * d);
    xs.iter()
        .map(|&x| {
            let d = 1e-3 * x.abs().max(1.0);
            let fp = (4.0 * diff(x, 0.5 * d) - diff(x, d)) / 3.0;
            (fp + x * h.eval(x).powi(2)).abs()
        })
        .fold(0.0, f64::max)
}

/// Natural cubic spline on the uniform grid `k·step`, extended evenly.
#[derive(Debug, Clone)]
pub struct CubicTable {
    step: f64,
    values: Vec<f64>,
    second: Vec<f64>,
}

impl CubicTable {
    pub fn new(step: f64, values: Vec<f64>) -> Self {
        let n = values.len() - 1;
        // Tridiagonal system for the second derivatives, M₀ = M_n = 0.
        let mut second = vec![0.0; n + 1];
        let mut c = vec![0.0; n + 1];
        let mut r = vec![0.0; n + 1];
        for i in 1..n {
            let rhs = 6.0 * (values[i + 1] - 2.0 * values[i] + values[i - 1]) / (step * step);
            let m = 4.0 - c[i - 1];
            c[i] = 1.0 / m;
            r[i] = (rhs - r[i - 1]) / m;
        }
        for i in (1..n).rev() {
            second[i] = r[i] - c[i] * second[i + 1];
        }
        Self {
            step,
            values,
            second,
        }
    }

    pub fn xmax(&self) -> f64 {
        self.step * (self.values.len() - 1) as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(k, &v)| (k as f64 * self.step, v))
    }

    /// `None` outside `[−xmax, xmax]`.
    pub fn eval(&self, x: f64) -> Option<f64> {
        let a = x.abs();
        if a > self.xmax() {
            return None;
        }
        let n = self.values.len() - 1;
        let k = ((a / self.step) as usize).min(n - 1);
        let h = self.step;
        let t = a - k as f64 * h;
        let s = h - t;
        let (y0, y1) = (self.values[k], self.values[k + 1]);
        let (m0, m1) = (self.second[k], self.second[k + 1]);
        Some(
            (m0 * s.powi(3) + m1 * t.powi(3)) / (6.0 * h)
                + (y0 / h - m0 * h / 6.0) * s
                + (y1 / h - m1 * h / 6.0) * t,
        )
    }

    pub fn band(&self, label: impl Into<String>) -> BandFunction {
        let me = self.clone();
        BandFunction::new(label, 2.0 * PI, Parity::Even, move |x| me.eval(x).unwrap_or(f64::NAN))
    }
}

/// `Σ cᵢ Fᵢ` of expansions (remainders add).
pub(crate) fn combine_far_fields(parts: impl Iterator<Item = (f64, FarField)>) -> FarField {
    parts.fold(FarField::new(Vec::<OscTerm>::new()), |acc, (c, f)| acc.add(&f.scale(c)))
}
