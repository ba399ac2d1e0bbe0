//! The orthonormal-family pipeline: `h = Σ aᵢ h_{2i−1}`, where the `h_k`
//! are orthonormal for `∫ x² h_k h_j`, so the bound is `1/|λ_max(Q)|` with
//! `Q_{ij} = ∫_0^∞ x h_{2i−1}(x) h_{2j−1}(x) dx`.
//!
//! `Q` is assembled from its closed form in the sine and cosine
//! integrals (partial fractions of `h_k h_j` reduce every entry to
//! `∫ x cos²(πx)/((k²−4x²)(j²−4x²))`):
//!
//! * `Q_kk = 4/(π²k²) (πk Si(πk)/2 − 1)`
//! * `Q_kj = 4/π² (ln(k/j) − Ci(πk) + Ci(πj)) / (j² − k²)`
//!
//! Direct quadrature of the defining integral is kept as a second path.

use crate::eigen::{eig_sym, gauge, residual, SymMatrix};
use crate::error::{invalid, Error, Result};
use crate::quad::{
    half_integer_breakpoints, integrate_finite, integrate_finite_with, FarField, QuadOptions,
    QuadResult,
};
use crate::represent::combine_far_fields;
use crate::specfun::sici::sici;
use crate::specfun::{hk_far_field, positive_zeros, BandFunction, Parity};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::sync::Arc;

/// Largest `d` accepted without opting in to long runs.
pub const DESK_CAP: usize = 300;
/// Hard cap on `d`.
pub const MAX_D: usize = 1000;

const FAR_TERMS: usize = 10;

fn mode(i: usize) -> u32 {
    (2 * i + 1) as u32
}

/// `Q` entry for odd `k`, `j` from the closed form.
pub fn q_entry(k: u32, j: u32) -> f64 {
    let (kf, jf) = (k as f64, j as f64);
    let (si_k, ci_k) = sici(PI * kf);
    if k == j {
        return 4.0 / (PI * PI * kf * kf) * (0.5 * PI * kf * si_k - 1.0);
    }
    let (_, ci_j) = sici(PI * jf);
    4.0 / (PI * PI) * ((kf / jf).ln() - ci_k + ci_j) / (jf * jf - kf * kf)
}

fn hk_eval(k: u32, x: f64) -> f64 {
    crate::specfun::hk(k, x).expect("odd mode index")
}

fn product_far_field(k: u32, j: u32, weight_power: f64) -> FarField {
    let fk = hk_far_field(k, FAR_TERMS);
    let fj = hk_far_field(j, FAR_TERMS);
    let (rk, pk) = fk.remainder.unwrap();
    let (rj, pj) = fj.remainder.unwrap();
    // |h| ≤ (4/3)(√2/π) x⁻² beyond valid_from; the product error is
    // |h_k||h_j − F_j| + |F_j||h_k − F_k|.
    let env = 4.0 / 3.0 * std::f64::consts::SQRT_2 / PI;
    let rem = env * (rk + rj);
    fk.mul(&fj)
        .with_remainder(rem, pk.min(pj) + 2.0)
        .mul_power(weight_power)
        .valid_from(fk.valid_from.max(fj.valid_from))
}

/// `∫_0^∞ x^w h_k h_j dx` by quadrature on `[0, X]` plus the far-field tail.
fn half_line_moment(k: u32, j: u32, w: f64, tol: f64) -> Result<QuadResult> {
    let far = product_far_field(k, j, w);
    let cut = (far.valid_from.max(20.0) * 2.0).ceil() / 2.0;
    let (tail, tail_err) = far.tail(cut)?;
    let f = |x: f64| x.powf(w) * hk_eval(k, x) * hk_eval(j, x);
    let opts = QuadOptions::new(0.5 * tol).breakpoints(half_integer_breakpoints(0.0, cut));
    let mut r = integrate_finite_with(&f, 0.0, cut, &opts)?;
    r.value += tail;
    r.tail_bound += tail_err;
    Ok(r)
}

/// `Q_kj` by direct quadrature of `∫_0^∞ x h_k h_j`.
pub fn q_entry_quadrature(k: u32, j: u32, tol: f64) -> Result<QuadResult> {
    half_line_moment(k, j, 1.0, tol)
}

/// `d × d` matrix `Q` over the modes `h_1, h_3, …, h_{2d−1}`.
pub fn assemble_q(d: usize) -> Result<SymMatrix> {
    if d == 0 || d > MAX_D {
        return Err(invalid(format!("d = {d} outside 1..={MAX_D}")));
    }
    let rows: Vec<Vec<f64>> = (0..d)
        .into_par_iter()
        .map(|i| (0..=i).map(|j| q_entry(mode(i), mode(j))).collect())
        .collect();
    Ok(SymMatrix::from_fn(d, "Q: closed form (Si/Ci)", |i, j| rows[i][j]))
}

/// `Q` by quadrature, entry by entry (small `d` only; used as a check).
pub fn assemble_q_quadrature(d: usize, tol: f64) -> Result<(SymMatrix, f64)> {
    if d == 0 || d > 40 {
        return Err(invalid(format!("quadrature assembly supports 1 ≤ d ≤ 40, got {d}")));
    }
    let entries: Vec<(usize, usize, QuadResult)> = (0..d)
        .flat_map(|i| (0..=i).map(move |j| (i, j)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(i, j)| q_entry_quadrature(mode(i), mode(j), tol).map(|r| (i, j, r)))
        .collect::<Result<_>>()?;
    let mut m = SymMatrix::zeros(d, "Q: quadrature");
    let mut worst: f64 = 0.0;
    for (i, j, r) in entries {
        m.set(i, j, r.value);
        worst = worst.max(r.total_error());
    }
    Ok((m, worst))
}

/// Maximum deviation from the identity of the Gram matrix of
/// `h_1, h_3, …, h_kmax` for `∫ x² h_k h_j`, on each evaluation path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthonormalReport {
    /// Via `2∫_I sin(πkt) sin(πjt) dt`.
    pub fourier: f64,
    /// Via `2∫_0^∞ x² h_k h_j dx`.
    pub time: f64,
}

impl OrthonormalReport {
    pub fn max(&self) -> f64 {
        self.fourier.max(self.time)
    }
}

pub fn check_orthonormal(kmax: u32, tol: f64) -> Result<OrthonormalReport> {
    if kmax % 2 == 0 {
        return Err(invalid(format!("kmax must be odd, got {kmax}")));
    }
    let modes: Vec<u32> = (1..=kmax).step_by(2).collect();
    let pairs: Vec<(u32, u32)> = modes
        .iter()
        .flat_map(|&k| modes.iter().filter(move |&&j| j <= k).map(move |&j| (k, j)))
        .collect();
    let devs: Vec<(f64, f64)> = pairs
        .par_iter()
        .map(|&(k, j)| {
            let delta = if k == j { 1.0 } else { 0.0 };
            let (kf, jf) = (k as f64, j as f64);
            let s = |t: f64| 2.0 * (PI * kf * t).sin() * (PI * jf * t).sin();
            let fourier = integrate_finite(&s, -0.5, 0.5, tol)?.value;
            let time = 2.0 * half_line_moment(k, j, 2.0, 0.5 * tol)?.value;
            Ok(((fourier - delta).abs(), (time - delta).abs()))
        })
        .collect::<Result<_>>()?;
    Ok(OrthonormalReport {
        fourier: devs.iter().map(|d| d.0).fold(0.0, f64::max),
        time: devs.iter().map(|d| d.1).fold(0.0, f64::max),
    })
}

#[derive(Debug, Clone)]
pub struct L2Solution {
    pub d: usize,
    /// Eigenvalue of `Q` of largest modulus.
    pub lambda: f64,
    pub bound: f64,
    /// Unit eigenvector, first coordinate positive.
    pub coeffs: Vec<f64>,
    pub h: BandFunction,
    /// `‖Qv − λv‖` for the returned eigenpair.
    pub residual: f64,
}

/// `h(x) = Σ aᵢ h_{2i−1}(x)`.
pub fn combination(coeffs: &[f64]) -> BandFunction {
    let a: Arc<[f64]> = coeffs.into();
    let far = combine_far_fields(
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, hk_far_field(mode(i), FAR_TERMS))),
    );
    BandFunction::new(format!("h_L2[d={}]", coeffs.len()), PI, Parity::Even, move |x| {
        a.iter()
            .enumerate()
            .map(|(i, c)| c * crate::specfun::hk(mode(i), x).unwrap())
            .sum()
    })
    .with_far_field(far)
}

pub fn solve_l2(d: usize, tol: f64) -> Result<L2Solution> {
    let q = assemble_q(d)?;
    let pairs = eig_sym(&q, tol.min(1e-12))?;
    let top = &pairs[0];
    let lambda = top.value;
    if lambda == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    let coeffs = gauge(top.vector.clone());
    Ok(L2Solution {
        d,
        lambda,
        bound: 1.0 / lambda.abs(),
        h: combination(&coeffs),
        coeffs,
        residual: residual(&q, top),
    })
}

/// First `count` positive zeros of the reconstructed extremizer.
pub fn extremizer_zeros(sol: &L2Solution, count: usize) -> Result<Vec<f64>> {
    positive_zeros(&sol.h, count)
}
