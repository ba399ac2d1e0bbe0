//! Bessel functions of the first kind for real order `ν ≥ 0` and real
//! argument, and the normalized family `g_α(x) = J_α(πx)/(πx)^α`.
//!
//! `J_ν(z)/z^ν` is summed as a power series in double-double arithmetic up
//! to `|z| = 25`, where the alternating terms peak near `e^{25}` times the
//! result; beyond, Hankel's asymptotic expansion is accurate to rounding.

use crate::dd::DoubleDouble;
use crate::error::{invalid, Result};
use crate::quad::{FarField, OscTerm};
use std::f64::consts::PI;

pub const SERIES_RADIUS: f64 = 25.0;

/// `J_ν(z)/z^ν` by the power series, any `z`.
pub(crate) fn j_over_power_series(nu: f64, z: f64) -> f64 {
    let lead = 1.0 / (nu.exp2() * libm::tgamma(nu + 1.0));
    let q = DoubleDouble::from_prod(z, z).div_f64(-4.0);
    let mut term = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ONE;
    for k in 1..400 {
        let kf = k as f64;
        // k(k+ν) carried exactly: the peak terms exceed the sum by e^{|z|}.
        term = term * q / DoubleDouble::from_sum(kf, nu).mul_f64(kf);
        sum = sum + term;
        if term.abs().to_f64() < 1e-33 * (1.0 + sum.abs().to_f64()) && kf > 0.25 * z * z / (kf + nu) {
            break;
        }
    }
    sum.to_f64() * lead
}

/// Hankel's `P(ν, z)` and `Q(ν, z)`, truncated at the smallest term.
pub(crate) fn hankel_pq(nu: f64, z: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        a *= (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * z);
        let mag = a.abs();
        if mag > last {
            break;
        }
        last = mag;
        // a_k/z^k enters P for even k and Q for odd k, with alternating signs.
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
        if mag < 1e-18 {
            break;
        }
    }
    (p, q)
}

fn j_asymptotic(nu: f64, z: f64) -> f64 {
    let (p, q) = hankel_pq(nu, z);
    let chi = z - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * z)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// `J_ν(z)/z^ν`, an even entire function of `z`.
pub(crate) fn j_over_power(nu: f64, z: f64) -> f64 {
    let z = z.abs();
    if z <= SERIES_RADIUS {
        j_over_power_series(nu, z)
    } else {
        j_asymptotic(nu, z) * z.powf(-nu)
    }
}

/// `J_ν(z)` for `ν ≥ 0`, `z ≥ 0`.
pub fn bessel_j(nu: f64, z: f64) -> Result<f64> {
    if !(nu >= 0.0) {
        return Err(invalid(format!("Bessel order {nu} must be nonnegative")));
    }
    if z < 0.0 {
        return Err(invalid("Bessel argument must be nonnegative"));
    }
    if z <= SERIES_RADIUS {
        Ok(j_over_power_series(nu, z) * z.powf(nu))
    } else {
        Ok(j_asymptotic(nu, z))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("α = {alpha} must be positive")))
    }
}

/// `g_α(x) = J_α(πx)/(πx)^α`; `g_α(0) = 1/(2^α Γ(α+1))`.
pub fn bessel_g(alpha: f64, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(j_over_power(alpha, PI * x))
}

/// `g_α'(x) = −π² x g_{α+1}(x)`.
pub fn bessel_g_prime(alpha: f64, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(-PI * PI * x * j_over_power(alpha + 1.0, PI * x))
}

/// Expansion of `J_α(πx)² + J_{α+1}(πx)²` divided by `(πx)^{2α}`, valid for
/// `x ≥ valid_from`, built from the Hankel series of both orders:
/// `(2/πz)[A + B cos 2χ + C sin 2χ]`, `χ = z − (α/2 + 1/4)π`.
pub(crate) fn lid_far_field(alpha: f64, order: usize, valid_from: f64) -> FarField {
    // Coefficient lists of P, Q in powers of 1/z.
    let series = |nu: f64| {
        let mu = 4.0 * nu * nu;
        let mut p = vec![0.0; order + 1];
        let mut q = vec![0.0; order + 1];
        let mut a = 1.0;
        p[0] = 1.0;
        for k in 1..=order {
            let kf = k as f64;
            a *= (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0);
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                p[k] = sign * a;
            } else {
                q[k] = sign * a;
            }
        }
        (p, q)
    };
    let (p0, q0) = series(alpha);
    let (p1, q1) = series(alpha + 1.0);
    let conv = |a: &[f64], b: &[f64]| {
        let mut out = vec![0.0; order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                out[i + j] += a[i] * b[j];
            }
        }
        out
    };
    let pp = conv(&p0, &p0);
    let qq = conv(&q0, &q0);
    let p1p1 = conv(&p1, &p1);
    let q1q1 = conv(&q1, &q1);
    let pq = conv(&p0, &q0);
    let p1q1 = conv(&p1, &q1);
    let phase = -(alpha + 0.5) * PI;
    let mut terms = Vec::new();
    for m in 0..=order {
        let a = 0.5 * (pp[m] + q1q1[m] + qq[m] + p1p1[m]);
        let b = 0.5 * (pp[m] + q1q1[m] - qq[m] - p1p1[m]);
        let c = p1q1[m] - pq[m];
        // (2/π) z^{-(2α+1+m)} with z = πx.
        let power = 2.0 * alpha + 1.0 + m as f64;
        let scale = 2.0 / PI * PI.powf(-power);
        if a != 0.0 {
            terms.push(OscTerm::power(scale * a, power));
        }
        if b != 0.0 {
            terms.push(OscTerm::cos(scale * b, power, 2.0 * PI, phase));
        }
        if c != 0.0 {
            terms.push(OscTerm::sin(scale * c, power, 2.0 * PI, phase));
        }
    }
    FarField::new(terms).valid_from(valid_from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::sinc_pw;

    #[test]
    fn value_at_zero() {
        for alpha in [0.3f64, 0.5, 1.0, 2.5] {
            let expected = 1.0 / (alpha.exp2() * libm::tgamma(alpha + 1.0));
            assert!((bessel_g(alpha, 0.0).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn half_order_is_sinc() {
        let c = bessel_g(0.5, 0.0).unwrap();
        for x in [0.3, 1.7, 9.2, 40.3] {
            let g = bessel_g(0.5, x).unwrap() / c;
            assert!((g - sinc_pw(x)).abs() < 1e-14, "x={x}: {g}");
        }
    }

    #[test]
    fn reference_values() {
        // J₀(1), J₁(2π), J₁(30), J_{2.5}(30).
        assert!((bessel_j(0.0, 1.0).unwrap() - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j(1.0, 2.0 * PI).unwrap() + 0.212_382_530_076_369_05).abs() < 1e-15);
        assert!((bessel_j(1.0, 30.0).unwrap() + 0.118_751_062_616_622_94).abs() < 1e-15);
        assert!((bessel_j(2.5, 30.0).unwrap() - 0.141_202_858_799_282_12).abs() < 1e-15);
    }

    #[test]
    fn branches_agree_at_switch() {
        for nu in [0.3, 0.787, 1.0, 1.787, 3.0] {
            for z in [20.0, 24.0, 25.0, 26.0, 30.0] {
                let s = j_over_power_series(nu, z) * z.powf(nu);
                let a = j_asymptotic(nu, z);
                assert!((s - a).abs() < 1e-14, "ν={nu} z={z}: {s} vs {a}");
            }
        }
    }

    #[test]
    fn lid_far_field_matches() {
        let alpha = 0.787;
        let ff = lid_far_field(alpha, 12, 10.0);
        for x in [10.0, 13.3, 40.0] {
            let z = PI * x;
            let direct = (bessel_j(alpha, z).unwrap().powi(2) + bessel_j(alpha + 1.0, z).unwrap().powi(2))
                * z.powf(-2.0 * alpha);
            assert!((ff.eval(x) - direct).abs() < 1e-13 * direct.abs(), "x={x}: {} vs {direct}", ff.eval(x));
        }
    }

    #[test]
    fn rejects_nonpositive_order() {
        assert!(bessel_g(0.0, 1.0).is_err());
        assert!(bessel_g(-1.0, 1.0).is_err());
    }
}
