//! The explicit functions: `h₀` and its profile, `f₀`, the Fejér lid
//! `f_{1/2}` with its transform, and the orthonormal family `h_k`.
//!
//! `h₀` and `f₀` are trigonometric polynomials over `u^5` and `u^8`
//! (`u = πx`) whose numerators cancel to that order at the origin. Below
//! the switch radius they are evaluated from exact Taylor coefficients:
//!
//! | function | switch `u` | terms kept |
//! |----------|-----------:|-----------:|
//! | `h₀`     | 1.5        | 40         |
//! | `f₀`     | 2.0        | 48         |

use super::taylor::{eval_even, quotient_series};
use super::{sinc_pw, sinc_pw_prime, BandFunction, Parity, PiecewiseProfile};
use crate::error::{invalid, Result};
use crate::poly::PolyCoeffs;
use crate::quad::{FarField, OscTerm};
use std::f64::consts::{PI, SQRT_2};
use std::sync::OnceLock;

const H0_SWITCH: f64 = 1.5;
const H0_TERMS: usize = 40;
const F0_SWITCH: f64 = 2.0;
const F0_TERMS: usize = 48;

// h₀ = [Q(u) sin u + R(u) cos u] / (40 u⁵)
const H0_Q: [i64; 3] = [108, 0, -25];
const H0_R: [i64; 4] = [0, -108, 0, -11];
const H0_DEN: i64 = 40;

// f₀ = [P(u) + Q(u) sin 2u + R(u) cos 2u] / (12800 π² u⁸)
const F0_P: [i64; 7] = [5832, 0, 4176, 0, 3001, 0, 242];
const F0_Q: [i64; 6] = [0, -11664, 0, -576, 0, -242];
const F0_R: [i64; 5] = [-5832, 0, 7488, 0, 1463];
const F0_DEN: i64 = 12800;

pub const H0_AT_ZERO: f64 = 91.0 / 600.0;
/// `f₀(0) = 369/(6400π²)`.
pub const F0_AT_ZERO: f64 = 369.0 / 6400.0 / (PI * PI);

fn h0_series() -> &'static [f64] {
    static S: OnceLock<Vec<f64>> = OnceLock::new();
    S.get_or_init(|| quotient_series(&[0], &H0_Q, &H0_R, 1, H0_DEN, 5, H0_TERMS))
}

fn f0_series() -> &'static [f64] {
    static S: OnceLock<Vec<f64>> = OnceLock::new();
    S.get_or_init(|| quotient_series(&F0_P, &F0_Q, &F0_R, 2, F0_DEN, 8, F0_TERMS))
}

fn horner(c: &[i64], u: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * u + v as f64)
}

pub(crate) fn h0_direct(x: f64) -> f64 {
    let u = PI * x;
    (horner(&H0_Q, u) * u.sin() + horner(&H0_R, u) * u.cos()) / (H0_DEN as f64 * u.powi(5))
}

pub(crate) fn h0_taylor(x: f64) -> f64 {
    eval_even(h0_series(), PI * x)
}

/// `h₀(x)`, the transform of `(1/4 − t²)(1 − 9t²/5) χ_I`.
pub fn h0(x: f64) -> f64 {
    if (PI * x).abs() < H0_SWITCH {
        h0_taylor(x)
    } else {
        h0_direct(x)
    }
}

/// `(1/4 − ξ²)(1 − 9ξ²/5)` on `|ξ| ≤ 1/2`, zero outside.
pub fn h0_hat(xi: f64) -> f64 {
    if xi.abs() > 0.5 {
        0.0
    } else {
        h0_hat_poly().eval(xi)
    }
}

pub fn h0_hat_poly() -> PolyCoeffs {
    PolyCoeffs::new(vec![0.25, 0.0, -1.45, 0.0, 1.8])
}

pub(crate) fn f0_direct(x: f64) -> f64 {
    let u = PI * x;
    let v = 2.0 * u;
    (horner(&F0_P, u) + horner(&F0_Q, u) * v.sin() + horner(&F0_R, u) * v.cos())
        / (F0_DEN as f64 * PI * PI * u.powi(8))
}

pub(crate) fn f0_taylor(x: f64) -> f64 {
    eval_even(f0_series(), PI * x) / (PI * PI)
}

/// `f₀(x) = ∫_{-∞}^x −t h₀(t)² dt` in closed form.
pub fn f0(x: f64) -> f64 {
    if (PI * x).abs() < F0_SWITCH {
        f0_taylor(x)
    } else {
        f0_direct(x)
    }
}

/// Far-field of `[P(πx) + Q(πx) sin(kπx) + R(πx) cos(kπx)] · scale / (πx)^m`.
fn trig_far_field(p: &[i64], q: &[i64], r: &[i64], k: f64, shift: i32, scale: f64) -> FarField {
    let mut terms = Vec::new();
    let coef = |c: i64, j: usize| scale * c as f64 * PI.powi(j as i32 - shift);
    let power = |j: usize| (shift - j as i32) as f64;
    for (j, &c) in p.iter().enumerate().filter(|(_, &c)| c != 0) {
        terms.push(OscTerm::power(coef(c, j), power(j)));
    }
    for (j, &c) in q.iter().enumerate().filter(|(_, &c)| c != 0) {
        terms.push(OscTerm::sin(coef(c, j), power(j), k * PI, 0.0));
    }
    for (j, &c) in r.iter().enumerate().filter(|(_, &c)| c != 0) {
        terms.push(OscTerm::cos(coef(c, j), power(j), k * PI, 0.0));
    }
    FarField::new(terms)
}

pub fn h0_band() -> BandFunction {
    let far = trig_far_field(&[], &H0_Q, &H0_R, 1.0, 5, 1.0 / H0_DEN as f64).valid_from(1.0);
    BandFunction::new("h0", PI, Parity::Even, h0).with_far_field(far)
}

pub fn f0_band() -> BandFunction {
    let far = trig_far_field(&F0_P, &F0_Q, &F0_R, 2.0, 8, 1.0 / (F0_DEN as f64 * PI * PI))
        .valid_from(1.0);
    BandFunction::new("f0", 2.0 * PI, Parity::Even, f0).with_far_field(far)
}

/// The Fejér lid `sinc(x)² + sinc'(x)²/π²`.
pub fn f_half(x: f64) -> f64 {
    let g = sinc_pw(x);
    let gp = sinc_pw_prime(x);
    g * g + gp * gp / (PI * PI)
}

pub fn f_half_band() -> BandFunction {
    let g = FarField::new(vec![OscTerm::sin(1.0 / PI, 1.0, PI, 0.0)]);
    let gp = FarField::new(vec![
        OscTerm::cos(1.0, 1.0, PI, 0.0),
        OscTerm::sin(-1.0 / PI, 2.0, PI, 0.0),
    ]);
    let far = g.mul(&g).add(&gp.mul(&gp).scale(1.0 / (PI * PI))).valid_from(1e-300);
    BandFunction::new("f_half", 2.0 * PI, Parity::Even, f_half).with_far_field(far)
}

/// `(2/3)(1 − |ξ|)²(|ξ| + 2)` on `|ξ| ≤ 1`.
pub fn f_half_hat_profile() -> PiecewiseProfile {
    PiecewiseProfile::new(
        vec![0.0, 1.0],
        vec![PolyCoeffs::new(vec![4.0 / 3.0, -2.0, 0.0, 2.0 / 3.0])],
    )
    .expect("static profile is well formed")
}

pub fn f_half_hat(xi: f64) -> f64 {
    let a = xi.abs();
    if a > 1.0 {
        0.0
    } else {
        2.0 / 3.0 * (1.0 - a) * (1.0 - a) * (a + 2.0)
    }
}

fn check_k(k: u32) -> Result<()> {
    if k % 2 == 1 {
        Ok(())
    } else {
        Err(invalid(format!("h_k needs odd k ≥ 1, got {k}")))
    }
}

/// `h_k(x) = 4√2 cos(πx) / (π(k² − 4x²))` for odd `k`.
///
/// Evaluated as `√2 (−1)^{(k−1)/2} sinc(|x| − k/2) / (|x| + k/2)`, which has
/// no pole at `|x| = k/2`.
pub fn hk(k: u32, x: f64) -> Result<f64> {
    check_k(k)?;
    Ok(hk_unchecked(k, x))
}

pub(crate) fn hk_unchecked(k: u32, x: f64) -> f64 {
    let a = x.abs();
    let half = 0.5 * k as f64;
    let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    sign * SQRT_2 * sinc_pw(a - half) / (a + half)
}

/// `h_k(x) = −(√2/π) cos(πx) x⁻² Σ_{n<m} (k²/4x²)ⁿ` plus a remainder bound,
/// valid for `x ≥ k`.
pub fn hk_far_field(k: u32, terms: usize) -> FarField {
    let c = -SQRT_2 / PI;
    let q = 0.25 * (k as f64).powi(2);
    let out: Vec<OscTerm> = (0..terms)
        .map(|n| OscTerm::cos(c * q.powi(n as i32), 2.0 + 2.0 * n as f64, PI, 0.0))
        .collect();
    // For x ≥ k the geometric tail is at most 4/3 of its first term.
    FarField::new(out)
        .with_remainder(4.0 / 3.0 * c.abs() * q.powi(terms as i32), 2.0 + 2.0 * terms as f64)
        .valid_from(k as f64)
}

pub fn hk_band(k: u32) -> Result<BandFunction> {
    check_k(k)?;
    Ok(
        BandFunction::new(format!("h{k}"), PI, Parity::Even, move |x| hk_unchecked(k, x))
            .with_far_field(hk_far_field(k, 8)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h0_values() {
        assert!((h0(0.0) - H0_AT_ZERO).abs() < 1e-16);
        assert!(h0(1.583) * h0(1.5845) < 0.0);
        assert_eq!(h0_hat(0.0), 0.25);
        assert_eq!(h0_hat(0.5), 0.0);
        assert!((h0_hat(1.0 / 3.0) - 1.0 / 9.0).abs() < 1e-16);
    }

    #[test]
    fn h0_branches_agree() {
        for u in [1.3, 1.45, 1.5, 1.55, 1.8] {
            let x = u / PI;
            let (t, d) = (h0_taylor(x), h0_direct(x));
            assert!((t - d).abs() < 1e-10 * d.abs(), "u={u}: {t} vs {d}");
        }
    }

    #[test]
    fn f0_branches_agree() {
        for u in [1.7, 1.95, 2.0, 2.05, 2.4] {
            let x = u / PI;
            let (t, d) = (f0_taylor(x), f0_direct(x));
            assert!((t - d).abs() < 1e-10 * d.abs(), "u={u}: {t} vs {d}");
        }
        assert!((f0(0.0) - F0_AT_ZERO).abs() < 1e-17);
    }

    #[test]
    fn far_fields_match_direct_formulas() {
        let h = h0_band();
        let f = f0_band();
        let lid = f_half_band();
        for x in [1.3, 7.7, 30.2] {
            assert!((h.far_field().unwrap().eval(x) - h0(x)).abs() < 1e-15);
            assert!((f.far_field().unwrap().eval(x) - f0(x)).abs() < 1e-15);
            assert!((lid.far_field().unwrap().eval(x) - f_half(x)).abs() < 1e-15);
        }
    }

    #[test]
    fn hk_values() {
        assert!((hk(1, 0.0).unwrap() - 4.0 * SQRT_2 / PI).abs() < 1e-15);
        for k in [1, 3, 5] {
            for x in [0.4, 2.2, 7.9] {
                let direct = 4.0 * SQRT_2 * (PI * x).cos() / (PI * ((k * k) as f64 - 4.0 * x * x));
                assert!((hk(k, x).unwrap() - direct).abs() < 1e-14);
                assert_eq!(hk(k, x).unwrap(), hk(k, -x).unwrap());
            }
        }
        assert!(hk(2, 1.0).is_err());
        assert!(hk(0, 1.0).is_err());
    }

    #[test]
    fn hk_at_pole_is_the_limit() {
        // Richardson extrapolation of symmetric offsets around x = k/2.
        for k in [1u32, 3, 7] {
            let x = 0.5 * k as f64;
            let direct = |x: f64| {
                4.0 * SQRT_2 * (PI * x).cos() / (PI * ((k * k) as f64 - 4.0 * x * x))
            };
            let e1 = 0.5 * (direct(x - 1e-3) + direct(x + 1e-3));
            let e2 = 0.5 * (direct(x - 5e-4) + direct(x + 5e-4));
            let rich = (4.0 * e2 - e1) / 3.0;
            assert!((hk(k, x).unwrap() - rich).abs() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn hk_far_field_within_remainder() {
        let ff = hk_far_field(5, 6);
        let (c, p) = ff.remainder.unwrap();
        for x in [5.0, 9.3, 40.0] {
            let err = (ff.eval(x) - hk(5, x).unwrap()).abs();
            assert!(err <= c * x.powf(-p) + 1e-16, "x={x}");
        }
    }
}
