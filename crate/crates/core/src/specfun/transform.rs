//! Transforms of polynomials supported on `I`:
//! `C(x) = ∫_I q(t) cos(2πxt) dt` and `S(x) = ∫_I q(t) sin(2πxt) dt`.
//!
//! Three regimes in `ω = 2πx`:
//! * `ω ≤ 4`: Taylor series from the exact moments of `q`;
//! * intermediate: composite 20-point Gauss–Legendre;
//! * `ω ≥ 4(deg q + 2)`: the terminating integration-by-parts sum
//!   `∫ q e^{iωt} = Σ_k (−1)^k [q^{(k)} e^{iωt}]_{−1/2}^{1/2} / (iω)^{k+1}`,
//!   which also gives the exact far-field expansion.

use super::HALF_WIDTH;
use crate::poly::PolyCoeffs;
use crate::quad::rules::gl20;
use crate::quad::{FarField, OscTerm};
use num_complex::Complex64;
use std::f64::consts::PI;

const TAYLOR_LIMIT: f64 = 4.0;

#[derive(Debug, Clone)]
pub struct PolyTransform {
    q: PolyCoeffs,
    /// `∫_I q(t) tⁿ dt` for `n < moments.len()`.
    moments: Vec<f64>,
    /// `q^{(k)}(±1/2)` for `k = 0..=deg`.
    right: Vec<f64>,
    left: Vec<f64>,
}

impl PolyTransform {
    pub fn new(q: PolyCoeffs) -> Self {
        let c = HALF_WIDTH;
        let moments = (0..72)
            .map(|n| {
                q.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| (n + k) % 2 == 0)
                    .map(|(k, &a)| a * 2.0 * c.powi((n + k + 1) as i32) / (n + k + 1) as f64)
                    .sum()
            })
            .collect();
        let mut right = Vec::new();
        let mut left = Vec::new();
        let mut d = q.clone();
        for _ in 0..=q.degree() {
            right.push(d.eval(c));
            left.push(d.eval(-c));
            d = d.derivative();
        }
        Self {
            q,
            moments,
            right,
            left,
        }
    }

    /// Declares `q(±1/2) = 0` exactly, discarding the rounding residue that
    /// would otherwise enter the far field as an `x⁻¹` term.
    pub fn vanishing_at_endpoints(mut self) -> Self {
        self.right[0] = 0.0;
        self.left[0] = 0.0;
        self
    }

    pub fn profile(&self) -> &PolyCoeffs {
        &self.q
    }

    /// Frequency `ω` above which the integration-by-parts sum is used.
    fn ibp_limit(&self) -> f64 {
        4.0 * (self.q.degree() as f64 + 2.0)
    }

    /// `(C(x), S(x))`.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let omega = 2.0 * PI * x;
        let w = omega.abs();
        let (c, s) = if w <= TAYLOR_LIMIT {
            self.taylor(w)
        } else if w >= self.ibp_limit() {
            self.by_parts(w)
        } else {
            self.gauss(w)
        };
        if omega < 0.0 {
            (c, -s)
        } else {
            (c, s)
        }
    }

    fn taylor(&self, w: f64) -> (f64, f64) {
        let mut c = 0.0;
        let mut s = 0.0;
        let mut term = 1.0;
        for n in 0..self.moments.len() {
            if n > 0 {
                term *= w / n as f64;
            }
            let v = term * self.moments[n];
            match n % 4 {
                0 => c += v,
                1 => s += v,
                2 => c -= v,
                _ => s -= v,
            }
            if term < 1e-18 && n > 8 {
                break;
            }
        }
        (c, s)
    }

    fn gauss(&self, w: f64) -> (f64, f64) {
        let (nodes, weights) = gl20();
        let panels = ((w / 4.0).ceil() as usize).max(2);
        let h = 2.0 * HALF_WIDTH / panels as f64;
        let mut c = 0.0;
        let mut s = 0.0;
        for p in 0..panels {
            let mid = -HALF_WIDTH + (p as f64 + 0.5) * h;
            for (z, wt) in nodes.iter().zip(weights) {
                let t = mid + 0.5 * h * z;
                let v = 0.5 * h * wt * self.q.eval(t);
                let (sn, cs) = (w * t).sin_cos();
                c += v * cs;
                s += v * sn;
            }
        }
        (c, s)
    }

    fn by_parts(&self, w: f64) -> (f64, f64) {
        let e = Complex64::from_polar(1.0, w * HALF_WIDTH);
        let iw = Complex64::new(0.0, w);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut denom = iw;
        for k in 0..self.right.len() {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * (self.right[k] * e - self.left[k] * e.conj()) / denom;
            denom *= iw;
        }
        (sum.re, sum.im)
    }

    /// Exact expansions of `C` and `S` for `x > 0`, valid everywhere but
    /// numerically sound for `x ≥ valid_from`.
    pub fn far_field(&self) -> (FarField, FarField) {
        let mut cos_terms = Vec::new();
        let mut sin_terms = Vec::new();
        let i2pi = Complex64::new(0.0, 2.0 * PI);
        let mut denom = i2pi;
        for k in 0..self.right.len() {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let beta = sign / denom;
            let power = (k + 1) as f64;
            let (a, b) = (self.right[k], self.left[k]);
            let i = Complex64::i();
            // Σ β x^{−(k+1)} (a e^{iπx} − b e^{−iπx}); C is its real part, S its imaginary part.
            cos_terms.push(osc(beta * a, power));
            cos_terms.push(osc(-beta.conj() * b, power));
            sin_terms.push(osc(-i * beta * a, power));
            sin_terms.push(osc(-i * beta.conj() * b, power));
            denom *= i2pi;
        }
        let from = self.ibp_limit() / (2.0 * PI);
        (
            FarField::new(cos_terms).valid_from(from),
            FarField::new(sin_terms).valid_from(from),
        )
    }

    /// Expansion of `C² + S²`, the squared modulus of the transform.
    pub fn modulus_sq_far_field(&self) -> FarField {
        let (c, s) = self.far_field();
        c.mul(&c).add(&s.mul(&s))
    }
}

fn osc(amp: Complex64, power: f64) -> OscTerm {
    OscTerm {
        amp,
        power,
        freq: PI,
    }
}
