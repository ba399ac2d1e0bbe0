//! Sonin lids `f = g² + g′²/C` for solutions of `y″ + (B/x) y′ + C y = 0`,
//! the Bessel family `g_α(x) = J_α(πx)/(πx)^α` (`B = 2α + 1`, `C = π²`), and
//! the minimization of `‖f_α‖₁/f_α(0)` over `α`.

use crate::error::{invalid, Result};
use crate::quad::{half_integer_breakpoints, integrate_finite_with, QuadOptions};
use crate::specfun::bessel::{bessel_g, bessel_g_prime, lid_far_field};
use crate::specfun::{sinc_band, sinc_pw_prime, BandFunction, Parity};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Start of the Hankel-expansion tail in `∫ f_α`.
const LID_CUT: f64 = 20.0;
const LID_ORDER: usize = 16;
const SCAN_POINTS: usize = 50;

#[derive(Debug, Clone)]
pub struct SoninLid {
    pub g: BandFunction,
    pub g_prime: BandFunction,
    pub c: f64,
    pub b: f64,
}

impl SoninLid {
    pub fn new(g: BandFunction, g_prime: BandFunction, c: f64, b: f64) -> Result<Self> {
        if !(c > 0.0) || !(b > 0.0) {
            return Err(invalid("lid coefficients B and C must be positive"));
        }
        Ok(Self { g, g_prime, c, b })
    }

    /// With `g_α` for `α = 1/2` normalized to `sinc`.
    pub fn fejer() -> Self {
        let gp = BandFunction::new("sinc'", PI, Parity::Odd, sinc_pw_prime);
        Self::new(sinc_band(), gp, PI * PI, 2.0).expect("static coefficients")
    }

    pub fn bessel(alpha: f64) -> Result<Self> {
        bessel_g(alpha, 0.0)?;
        let g = BandFunction::new(format!("g_{alpha}"), PI, Parity::Even, move |x| {
            bessel_g(alpha, x).expect("α checked")
        });
        let gp = BandFunction::new(format!("g_{alpha}'"), PI, Parity::Odd, move |x| {
            bessel_g_prime(alpha, x).expect("α checked")
        });
        Self::new(g, gp, PI * PI, 2.0 * alpha + 1.0)
    }

    pub fn band(&self) -> BandFunction {
        let me = self.clone();
        BandFunction::new(format!("lid[{}]", self.g.label()), 2.0 * PI, Parity::Even, move |x| {
            lid_eval(&me, x)
        })
    }
}

pub fn lid_eval(l: &SoninLid, x: f64) -> f64 {
    let g = l.g.eval(x);
    let gp = l.g_prime.eval(x);
    g * g + gp * gp / l.c
}

/// Largest increase `f(x_{k+1}) − f(x_k)` over a sorted positive grid.
pub fn lid_monotone_check(l: &SoninLid, grid: &[f64]) -> Result<f64> {
    if grid.windows(2).any(|w| w[1] <= w[0]) || grid.first().is_some_and(|&x| x <= 0.0) {
        return Err(invalid("grid must be positive and strictly increasing"));
    }
    let vals: Vec<f64> = grid.par_iter().map(|&x| lid_eval(l, x)).collect();
    Ok(vals
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max))
}

/// `f_α(x) = g_α(x)² + g_α′(x)²/π²`.
fn bessel_lid_value(alpha: f64, x: f64) -> f64 {
    let g = bessel_g(alpha, x).unwrap();
    let gp = bessel_g_prime(alpha, x).unwrap();
    g * g + gp * gp / (PI * PI)
}

/// `f̂_α(0)/f_α(0) = ‖f_α‖₁/f_α(0)`, with `∫ f_α` by quadrature on
/// `[0, 20]` and the Hankel expansion beyond.
pub fn bessel_lid_ratio(alpha: f64, tol: f64) -> Result<f64> {
    let peak = bessel_g(alpha, 0.0)?.powi(2);
    if !(tol > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    let far = lid_far_field(alpha, LID_ORDER, LID_CUT);
    let (tail, _) = far.tail(LID_CUT)?;
    let opts = QuadOptions::new(0.5 * tol * peak)
        .breakpoints(half_integer_breakpoints(0.0, LID_CUT));
    let body = integrate_finite_with(&|x: f64| bessel_lid_value(alpha, x), 0.0, LID_CUT, &opts)?;
    Ok(2.0 * (body.value + tail) / peak)
}

/// The same ratio from `ĝ_α ∝ (1 − 4ξ²)^{α−1/2}` on `I` and Parseval:
/// `‖f_α‖₁ = ∫_I ĝ_α² (1 + 4ξ²)`, a combination of Beta integrals.
pub fn bessel_lid_ratio_closed(alpha: f64) -> Result<f64> {
    bessel_g(alpha, 0.0)?;
    let lg = libm::lgamma;
    let a = alpha;
    let ln_c2 = 2.0 * ((1.0 - a) * 2f64.ln() - 0.5 * PI.ln() - lg(a + 0.5));
    let ln_f0 = -2.0 * (a * 2f64.ln() + lg(a + 1.0));
    let plain = 0.5 * PI.ln() + lg(2.0 * a) - lg(2.0 * a + 0.5) - 2f64.ln();
    let weighted = lg(1.5) + lg(2.0 * a) - lg(2.0 * a + 1.5) - 2f64.ln();
    Ok((ln_c2 - ln_f0 + plain).exp() + (ln_c2 - ln_f0 + weighted).exp())
}

#[derive(Debug, Clone)]
pub struct AlphaMinimum {
    pub alpha: f64,
    pub ratio: f64,
    /// The minimizer sits at an end of the search window.
    pub boundary: bool,
    /// The pre-search scan decreased then increased.
    pub unimodal: bool,
    pub scan: Vec<(f64, f64)>,
}

/// Golden-section search for the minimum of the lid ratio on `[lo, hi]`,
/// bracketed by a 50-point scan.
pub fn minimize_alpha(lo: f64, hi: f64, tol: f64) -> Result<AlphaMinimum> {
    if !(lo > 0.0) || !(hi >= lo) || !(tol > 0.0) {
        return Err(invalid(format!("need 0 < lo ≤ hi and tol > 0, got [{lo}, {hi}], {tol}")));
    }
    let quad_tol = 1e-11;
    if hi - lo <= tol {
        let mid = 0.5 * (lo + hi);
        let r = bessel_lid_ratio(mid, quad_tol)?;
        return Ok(AlphaMinimum {
            alpha: mid,
            ratio: r,
            boundary: false,
            unimodal: true,
            scan: vec![(mid, r)],
        });
    }
    let xs: Vec<f64> = (0..SCAN_POINTS)
        .map(|k| lo + (hi - lo) * k as f64 / (SCAN_POINTS - 1) as f64)
        .collect();
    let scan: Vec<(f64, f64)> = xs
        .par_iter()
        .map(|&a| bessel_lid_ratio(a, quad_tol).map(|r| (a, r)))
        .collect::<Result<_>>()?;
    let k = scan
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(k, _)| k)
        .unwrap();
    let slack = 1e-12;
    let unimodal = scan[..=k].windows(2).all(|w| w[1].1 <= w[0].1 + slack)
        && scan[k..].windows(2).all(|w| w[1].1 >= w[0].1 - slack);
    if k == 0 || k == SCAN_POINTS - 1 {
        let (alpha, ratio) = scan[k];
        return Ok(AlphaMinimum {
            alpha,
            ratio,
            boundary: true,
            unimodal,
            scan,
        });
    }
    let ratio = |a: f64| bessel_lid_ratio(a, quad_tol);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (scan[k - 1].0, scan[k + 1].0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (ratio(c)?, ratio(d)?);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = ratio(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = ratio(d)?;
        }
    }
    let alpha = 0.5 * (a + b);
    Ok(AlphaMinimum {
        alpha,
        ratio: ratio(alpha)?,
        boundary: false,
        unimodal,
        scan,
    })
}
