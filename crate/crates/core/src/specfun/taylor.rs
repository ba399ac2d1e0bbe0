//! Exact Taylor coefficients of `(P(u) + Q(u) sin(ku) + R(u) cos(ku)) / (c u^m)`
//! for integer polynomials whose numerator vanishes to order `m` at 0.

use crate::poly::{rat_int, rat_to_f64, RatPoly, Rational};
use num_traits::{One, Zero};

/// Coefficients `c_j` (of `u^j`, `j < terms`) of the quotient, rounded once.
pub(crate) fn quotient_series(
    p: &[i64],
    q: &[i64],
    r: &[i64],
    k: i64,
    denom: i64,
    shift: usize,
    terms: usize,
) -> Vec<f64> {
    let n = shift + terms;
    // sin(ku) and cos(ku) to order n.
    let mut sin = vec![Rational::zero(); n];
    let mut cos = vec![Rational::zero(); n];
    let mut t = Rational::one();
    let kr = rat_int(k);
    for j in 0..n {
        if j > 0 {
            t = t * &kr / rat_int(j as i64);
        }
        let sign = if (j / 2) % 2 == 0 { t.clone() } else { -t.clone() };
        if j % 2 == 0 {
            cos[j] = sign;
        } else {
            sin[j] = sign;
        }
    }
    let as_poly = |c: &[i64]| RatPoly::new(c.iter().map(|&v| rat_int(v)).collect());
    let num = as_poly(p)
        .add(&as_poly(q).mul(&RatPoly::new(sin)))
        .add(&as_poly(r).mul(&RatPoly::new(cos)));
    for j in 0..shift {
        debug_assert!(num.coeff(j).is_zero(), "numerator does not vanish to order {shift}");
    }
    let d = rat_int(denom);
    (0..terms)
        .map(|j| rat_to_f64(&(num.coeff(j + shift) / &d)))
        .collect()
}

/// Evaluates an even series `Σ c_{2j} u^{2j}` (odd coefficients ignored).
pub(crate) fn eval_even(coeffs: &[f64], u: f64) -> f64 {
    let u2 = u * u;
    coeffs
        .iter()
        .step_by(2)
        .rev()
        .fold(0.0, |acc, &c| acc * u2 + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_series() {
        // sin(u)/u = 1 - u²/6 + u⁴/120 - …
        let c = quotient_series(&[0], &[1], &[0], 1, 1, 1, 6);
        assert_eq!(c[0], 1.0);
        assert!((c[2] + 1.0 / 6.0).abs() < 1e-17);
        assert!((c[4] - 1.0 / 120.0).abs() < 1e-18);
        assert_eq!(c[1], 0.0);
    }
}
