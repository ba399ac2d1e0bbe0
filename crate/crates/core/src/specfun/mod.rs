//! Special functions and the explicit band-limited functions of the
//! monotone-delta problem, exposed as [`BandFunction`]s (real-axis
//! evaluation rules) and [`FourierProfile`]s (transforms supported on
//! `I = [-1/2, 1/2]`).
//!
//! Transform convention: `g(x) = ∫ ĝ(t) e^{2πixt} dt`.

pub mod bessel;
mod explicit;
pub mod sici;
mod taylor;
mod transform;

pub use bessel::{bessel_g, bessel_g_prime, bessel_j};
pub use explicit::{
    f0, f0_band, f_half, f_half_band, f_half_hat, f_half_hat_profile, h0, h0_band, h0_hat,
    h0_hat_poly, hk, hk_band, hk_far_field, F0_AT_ZERO, H0_AT_ZERO,
};
pub use transform::PolyTransform;

use crate::error::{invalid, Result};
use crate::poly::PolyCoeffs;
use crate::quad::{FarField, OscTerm};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// Half-width of the frequency support `I = [-1/2, 1/2]`.
pub const HALF_WIDTH: f64 = 0.5;

const SINC_SERIES_RADIUS: f64 = 1e-3;
const SINC_PRIME_SERIES_RADIUS: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    None,
}

pub type EvalFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real-valued entire function of exponential type restricted to ℝ.
#[derive(Clone)]
pub struct BandFunction {
    eval: EvalFn,
    type_bound: f64,
    parity: Parity,
    label: String,
    far_field: Option<FarField>,
}

impl BandFunction {
    pub fn new<F>(label: impl Into<String>, type_bound: f64, parity: Parity, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(f),
            type_bound,
            parity,
            label: label.into(),
            far_field: None,
        }
    }

    /// Attaches an expansion of the function valid for `x ≥ far.valid_from`.
    pub fn with_far_field(mut self, far: FarField) -> Self {
        self.far_field = Some(far);
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn type_bound(&self) -> f64 {
        self.type_bound
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn far_field(&self) -> Option<&FarField> {
        self.far_field.as_ref()
    }

    pub fn scaled(&self, c: f64) -> Self {
        let inner = self.eval.clone();
        Self {
            eval: Arc::new(move |x| c * inner(x)),
            type_bound: self.type_bound,
            parity: self.parity,
            label: format!("{}*{c}", self.label),
            far_field: self.far_field.as_ref().map(|f| f.scale(c)),
        }
    }

    pub fn eval_fn(&self) -> EvalFn {
        self.eval.clone()
    }
}

impl fmt::Debug for BandFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BandFunction")
            .field("label", &self.label)
            .field("type_bound", &self.type_bound)
            .field("parity", &self.parity)
            .field("far_field", &self.far_field.is_some())
            .finish()
    }
}

/// A function supported on `I`, the transform side of a [`BandFunction`].
#[derive(Clone)]
pub enum FourierProfile {
    /// `q(t) χ_I(t)`.
    Polynomial(PolyCoeffs),
    /// `√2 sin(πkt) χ_I(t)`, the real part of the transform of `x h_k`
    /// up to the unit factor `i(-1)^{(k+1)/2}`.
    SineMode(u32),
    /// Any other rule, evaluated only on `I`.
    Rule { label: String, eval: EvalFn },
}

impl FourierProfile {
    pub fn rule<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::Rule {
            label: label.into(),
            eval: Arc::new(f),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t.abs() > HALF_WIDTH {
            return 0.0;
        }
        match self {
            Self::Polynomial(q) => q.eval(t),
            Self::SineMode(k) => std::f64::consts::SQRT_2 * (PI * *k as f64 * t).sin(),
            Self::Rule { eval, .. } => eval(t),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Polynomial(q) => format!("poly{q}"),
            Self::SineMode(k) => format!("sine{k}"),
            Self::Rule { label, .. } => label.clone(),
        }
    }

    pub fn as_polynomial(&self) -> Option<&PolyCoeffs> {
        match self {
            Self::Polynomial(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Debug for FourierProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FourierProfile({})", self.label())
    }
}

/// Even function given by polynomials in `|ξ|` between breakpoints, zero
/// outside the last breakpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseProfile {
    breakpoints: Vec<f64>,
    pieces: Vec<PolyCoeffs>,
}

impl PiecewiseProfile {
    /// `breakpoints` are `0 = b₀ < b₁ < … < b_m`; piece `k` lives on
    /// `[b_k, b_{k+1}]`.
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<PolyCoeffs>) -> Result<Self> {
        if breakpoints.len() != pieces.len() + 1 || pieces.is_empty() {
            return Err(invalid("piecewise profile needs one more breakpoint than pieces"));
        }
        if breakpoints[0] != 0.0 || breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(invalid("breakpoints must start at 0 and increase"));
        }
        Ok(Self {
            breakpoints,
            pieces,
        })
    }

    pub fn support(&self) -> f64 {
        *self.breakpoints.last().unwrap()
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn eval(&self, xi: f64) -> f64 {
        let a = xi.abs();
        if a > self.support() {
            return 0.0;
        }
        let k = self.breakpoints[1..]
            .iter()
            .position(|&b| a <= b)
            .unwrap_or(self.pieces.len() - 1);
        self.pieces[k].eval(a)
    }

    /// Largest jump between adjacent pieces at interior breakpoints.
    pub fn max_jump(&self) -> f64 {
        (1..self.pieces.len())
            .map(|k| {
                let b = self.breakpoints[k];
                (self.pieces[k - 1].eval(b) - self.pieces[k].eval(b)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// First `count` sign changes of `h` on `(1/2, count + 2]`, by a grid
/// scan at spacing 1/200 and Brent refinement.
pub fn positive_zeros(h: &BandFunction, count: usize) -> Result<Vec<f64>> {
    let hi = count as f64 + 2.0;
    let grid = ((hi - 0.5) * 200.0) as usize;
    let roots = crate::quad::find_roots(&|x: f64| h.eval(x), 0.5, hi, grid, 1e-11);
    if roots.len() < count {
        return Err(crate::error::Error::TooFewRoots {
            found: roots.len(),
            requested: count,
        });
    }
    Ok(roots[..count].to_vec())
}

/// `sin(πx)/(πx)`.
pub fn sinc_pw(x: f64) -> f64 {
    let u = PI * x;
    if u.abs() < SINC_SERIES_RADIUS {
        let u2 = u * u;
        1.0 - u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0))
    } else {
        u.sin() / u
    }
}

/// Derivative of [`sinc_pw`]: `(πx cos πx − sin πx)/(πx²)`.
pub fn sinc_pw_prime(x: f64) -> f64 {
    let u = PI * x;
    if u.abs() < SINC_PRIME_SERIES_RADIUS {
        // d/dx sin(u)/u = π Σ_{k≥1} (-1)^k 2k u^{2k-1} / (2k+1)!
        let u2 = u * u;
        let mut term = -u / 3.0;
        let mut sum = term;
        for k in 2..12 {
            let kf = k as f64;
            term *= -u2 * kf / ((kf - 1.0) * (2.0 * kf) * (2.0 * kf + 1.0));
            sum += term;
        }
        PI * sum
    } else {
        (u * u.cos() - u.sin()) / (PI * x * x)
    }
}

/// The Fejér kernel `(sin πx/(πx))²`.
pub fn fejer(x: f64) -> f64 {
    let s = sinc_pw(x);
    s * s
}

pub fn sinc_band() -> BandFunction {
    BandFunction::new("sinc", PI, Parity::Even, sinc_pw).with_far_field(
        FarField::new(vec![OscTerm::sin(1.0 / PI, 1.0, PI, 0.0)]).valid_from(1e-300),
    )
}

pub fn fejer_band() -> BandFunction {
    let s = FarField::new(vec![OscTerm::sin(1.0 / PI, 1.0, PI, 0.0)]);
    BandFunction::new("fejer", 2.0 * PI, Parity::Even, fejer)
        .with_far_field(s.mul(&s).valid_from(1e-300))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_even_line;

    #[test]
    fn sinc_values() {
        assert_eq!(sinc_pw(0.0), 1.0);
        assert!(sinc_pw(1.0).abs() < 1e-16);
        assert!((sinc_pw(0.5) - 2.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn fejer_values() {
        assert_eq!(fejer(0.0), 1.0);
        assert!((fejer(0.5) - 4.0 / (PI * PI)).abs() < 1e-16);
        for n in 1..20 {
            assert!(fejer(n as f64) < 1e-30);
        }
    }

    #[test]
    fn sinc_branches_agree() {
        for x in [0.9e-3 / PI, 1.1e-3 / PI, 0.45 / PI, 0.55 / PI] {
            let u = PI * x;
            let direct = u.sin() / u;
            assert!((sinc_pw(x) - direct).abs() < 1e-12);
            let dp = (u * u.cos() - u.sin()) / (PI * x * x);
            assert!((sinc_pw_prime(x) - dp).abs() < 1e-10 * (1.0 + dp.abs()), "{x}");
        }
        let x: f64 = 0.1 / PI;
        let u: f64 = 0.1;
        let dp = (u * u.cos() - u.sin()) / (PI * x * x);
        assert!((sinc_pw_prime(x) - dp).abs() < 1e-10);
    }

    #[test]
    fn fejer_has_unit_integral() {
        let k = fejer_band();
        let r = integrate_even_line(&fejer, 40.0, k.far_field().unwrap(), 1e-10).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn piecewise_profile_eval() {
        let p = PiecewiseProfile::new(
            vec![0.0, 0.5, 1.0],
            vec![PolyCoeffs::constant(1.0), PolyCoeffs::new(vec![2.0, -2.0])],
        )
        .unwrap();
        assert_eq!(p.eval(-0.25), 1.0);
        assert_eq!(p.eval(0.75), 0.5);
        assert_eq!(p.eval(1.5), 0.0);
        assert_eq!(p.max_jump(), 0.0);
    }
}
