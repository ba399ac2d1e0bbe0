//! Sine and cosine integrals `Si(x) = ∫₀ˣ sin t / t dt`,
//! `Ci(x) = γ + ln x + ∫₀ˣ (cos t − 1)/t dt`.
//!
//! Power series for `x ≤ 4`; beyond, the continued fraction for
//! `E₁(ix)` evaluated by the modified Lentz method.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;
const SERIES_LIMIT: f64 = 4.0;

fn series(x: f64) -> (f64, f64) {
    // t = x^k / k!; odd k feed Si, even k feed Ci, with alternating signs.
    let mut t = x;
    let mut si = x;
    let mut ci = 0.0;
    for k in 2..200usize {
        t *= x / k as f64;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * t / k as f64;
        if k % 2 == 0 {
            ci += term;
        } else {
            si += term;
        }
        if t < 1e-18 {
            break;
        }
    }
    (si, EULER_GAMMA + x.ln() + ci)
}

fn continued_fraction(x: f64) -> (f64, f64) {
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = Complex64::new(1.0, 0.0) / b;
    let mut h = d;
    for i in 2..400 {
        let a = -((i - 1) as f64).powi(2);
        b += 2.0;
        d = Complex64::new(1.0, 0.0) / (d * a + b);
        c = b + Complex64::new(a, 0.0) / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    let h = Complex64::new(x.cos(), -x.sin()) * h;
    (FRAC_PI_2 + h.im, -h.re)
}

/// Returns `(Si(x), Ci(x))` for `x > 0`. `Si` is odd; `Ci` is defined for
/// positive arguments only, so `x ≤ 0` yields `Ci = NaN` (and `-∞` at 0).
pub fn sici(x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, f64::NEG_INFINITY);
    }
    if x < 0.0 {
        let (s, _) = sici(-x);
        return (-s, f64::NAN);
    }
    if x <= SERIES_LIMIT {
        series(x)
    } else {
        continued_fraction(x)
    }
}

pub fn si(x: f64) -> f64 {
    sici(x).0
}

pub fn ci(x: f64) -> f64 {
    sici(x).1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // Si(π) (Wilbraham–Gibbs constant) and Ci(π).
        assert!((si(std::f64::consts::PI) - 1.851_937_051_982_466_2).abs() < 1e-15);
        assert!((ci(std::f64::consts::PI) - 0.073_667_912_046_425_485).abs() < 1e-15);
        assert!((si(1.0) - 0.946_083_070_367_183_0).abs() < 1e-15);
        assert!((ci(1.0) - 0.337_403_922_900_968_1).abs() < 1e-15);
        assert!((si(10.0) - 1.658_347_594_218_874_0).abs() < 1e-14);
        assert!((ci(10.0) + 0.045_456_433_004_455_37).abs() < 1e-15);
    }

    #[test]
    fn branches_agree_at_the_switch() {
        for x in [3.9, 3.99, 4.01, 4.1, 4.5] {
            let (s1, c1) = series(x);
            let (s2, c2) = continued_fraction(x);
            assert!((s1 - s2).abs() < 1e-14, "Si at {x}: {s1} vs {s2}");
            assert!((c1 - c2).abs() < 1e-14, "Ci at {x}: {c1} vs {c2}");
        }
    }

    #[test]
    fn large_argument_asymptotics() {
        let x = 1e4;
        let (s, c) = sici(x);
        // Leading terms of the auxiliary-function expansion.
        let f = 1.0 / x;
        let g = 1.0 / (x * x);
        assert!((s - (FRAC_PI_2 - f * x.cos() - g * x.sin())).abs() < 1e-11);
        assert!((c - (f * x.sin() - g * x.cos())).abs() < 1e-11);
    }
}
