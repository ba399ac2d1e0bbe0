//! Derivative-weighted energies of `g ∈ PW²` with `g(0) = 1`:
//! `Σ (aₙ/π²ⁿ) ∫|g⁽ⁿ⁾|² = ∫_I 𝒫(4t²)|ĝ(t)|² dt ≥ C(𝒫) = (∫_0^1 dt/𝒫(t²))⁻¹`,
//! with equality for `ĝ = C(𝒫)/𝒫(4t²)`.

use crate::error::{invalid, Error, Result};
use crate::poly::PolyCoeffs;
use crate::quad::{asymptotic_cut, integrate_finite, integrate_tail, QuadResult};
use crate::specfun::{FourierProfile, PolyTransform, HALF_WIDTH};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Largest `N` accepted by the time-domain and binomial paths.
pub const MAX_TIME_SIDE_DEGREE: usize = 4;

const SCAN_CELLS: usize = 10_000;
const MAX_BISECTIONS: usize = 40;

/// `𝒫(x) = Σ aₙ xⁿ`, certified positive on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightPoly {
    p: PolyCoeffs,
}

impl WeightPoly {
    /// Scans `[0, 1]` on 10⁴ cells and certifies each with the bound
    /// `𝒫 ≥ min(endpoints) − L·w/2`, `L = Σ n|aₙ|`, bisecting cells where
    /// that bound is not yet positive.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(invalid("weight coefficients must be finite and nonempty"));
        }
        let p = PolyCoeffs::new(coeffs);
        let lip: f64 = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, a)| n as f64 * a.abs())
            .sum();
        let vals: Vec<f64> = (0..=SCAN_CELLS)
            .map(|k| p.eval(k as f64 / SCAN_CELLS as f64))
            .collect();
        if let Some((k, &v)) = vals.iter().enumerate().find(|(_, &v)| !(v > 0.0)) {
            return Err(Error::NotPositive {
                at: k as f64 / SCAN_CELLS as f64,
                value: v,
            });
        }
        let w = 1.0 / SCAN_CELLS as f64;
        for k in 0..SCAN_CELLS {
            certify_cell(&p, lip, k as f64 * w, (k + 1) as f64 * w, vals[k], vals[k + 1], 0)?;
        }
        Ok(Self { p })
    }

    pub fn coeffs(&self) -> &[f64] {
        self.p.coeffs()
    }

    pub fn degree(&self) -> usize {
        self.p.degree()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.p.eval(x)
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.p.scale(c).coeffs().to_vec())
    }
}

fn certify_cell(p: &PolyCoeffs, lip: f64, a: f64, b: f64, fa: f64, fb: f64, depth: usize) -> Result<()> {
    if fa.min(fb) - 0.5 * lip * (b - a) > 0.0 {
        return Ok(());
    }
    let m = 0.5 * (a + b);
    let fm = p.eval(m);
    if !(fm > 0.0) || depth == MAX_BISECTIONS {
        return Err(Error::NotPositive { at: m, value: fm });
    }
    certify_cell(p, lip, a, m, fa, fm, depth + 1)?;
    certify_cell(p, lip, m, b, fm, fb, depth + 1)
}

/// `(∫_0^1 dt/𝒫(t²))⁻¹` to absolute accuracy `tol`; the integral `J` is
/// needed to `tol·J²`, set from a coarse first pass.
pub fn sharp_constant(p: &WeightPoly, tol: f64) -> Result<f64> {
    let f = |t: f64| 1.0 / p.eval(t * t);
    let coarse = integrate_finite(&f, 0.0, 1.0, 1e-4 * p.eval(0.0).recip())?.value;
    let r = integrate_finite(&f, 0.0, 1.0, tol * 0.5 * coarse * coarse)?;
    Ok(1.0 / r.value)
}

/// `g(x) = C(𝒫) ∫_0^1 cos(πxt)/𝒫(t²) dt`, the extremal function.
pub fn extremal_g(p: &WeightPoly, x: f64, tol: f64) -> Result<f64> {
    let c = sharp_constant(p, tol)?;
    let r = integrate_finite(&|t: f64| (PI * x * t).cos() / p.eval(t * t), 0.0, 1.0, tol)?;
    Ok(c * r.value)
}

/// `ĝ(t) = C(𝒫)/𝒫(4t²)` on `I`, the transform of [`extremal_g`].
pub fn extremal_profile(p: &WeightPoly, tol: f64) -> Result<FourierProfile> {
    let c = sharp_constant(p, tol)?;
    let p = p.clone();
    Ok(FourierProfile::rule("extremal", move |t| c / p.eval(4.0 * t * t)))
}

/// `g(x) = ∫_I ĝ(t) e^{2πixt} dt` from its profile.
#[derive(Debug, Clone)]
pub struct PWFunction {
    pub profile: FourierProfile,
}

impl PWFunction {
    pub fn new(profile: FourierProfile) -> Self {
        Self { profile }
    }

    pub fn polynomial(q: PolyCoeffs) -> Self {
        Self::new(FourierProfile::Polynomial(q))
    }

    /// `g(0) = ∫_I ĝ`.
    pub fn at_zero(&self, tol: f64) -> Result<f64> {
        if let Some(q) = self.profile.as_polynomial() {
            return Ok(PolyTransform::new(q.clone()).eval(0.0).0);
        }
        Ok(integrate_finite(&|t: f64| self.profile.eval(t), -HALF_WIDTH, HALF_WIDTH, tol)?.value)
    }

    /// `(Re g(x), Im g(x))`.
    pub fn eval(&self, x: f64, tol: f64) -> Result<(f64, f64)> {
        if let Some(q) = self.profile.as_polynomial() {
            return Ok(PolyTransform::new(q.clone()).eval(x));
        }
        let w = 2.0 * PI * x;
        let re = integrate_finite(&|t: f64| self.profile.eval(t) * (w * t).cos(), -HALF_WIDTH, HALF_WIDTH, tol)?;
        let im = integrate_finite(&|t: f64| self.profile.eval(t) * (w * t).sin(), -HALF_WIDTH, HALF_WIDTH, tol)?;
        Ok((re.value, im.value))
    }
}

/// `∫_I 𝒫(4t²)|ĝ(t)|² dt`, exact for polynomial profiles.
pub fn functional(p: &WeightPoly, g: &PWFunction, tol: f64) -> Result<f64> {
    if let Some(q) = g.profile.as_polynomial() {
        let four_t2 = PolyCoeffs::new(vec![0.0, 0.0, 4.0]);
        let weight = p
            .coeffs()
            .iter()
            .rev()
            .fold(PolyCoeffs::constant(0.0), |acc, &a| acc.mul(&four_t2).add(&PolyCoeffs::constant(a)));
        return Ok(weight.mul(&q.mul(q)).integrate(-HALF_WIDTH, HALF_WIDTH));
    }
    let f = |t: f64| p.eval(4.0 * t * t) * g.profile.eval(t).powi(2);
    Ok(integrate_finite(&f, -HALF_WIDTH, HALF_WIDTH, tol)?.value)
}

/// `‖g‖_𝒫 = (∫_I 𝒫(4t²)|ĝ|²)^{1/2}`.
pub fn weighted_norm(p: &WeightPoly, g: &PWFunction, tol: f64) -> Result<f64> {
    Ok(functional(p, g, tol)?.sqrt())
}

/// `∫_ℝ |g⁽ⁿ⁾|²` in the time domain, `g⁽ⁿ⁾` being the transform of
/// `(2πit)ⁿ ĝ(t)`.
pub fn derivative_energy(q: &PolyCoeffs, n: usize, tol: f64) -> Result<QuadResult> {
    let mut qn = q.clone();
    for _ in 0..n {
        qn = qn.mul(&PolyCoeffs::new(vec![0.0, 2.0 * PI]));
    }
    let t = PolyTransform::new(qn);
    let far = t.modulus_sq_far_field();
    let cut = asymptotic_cut(&far);
    let f = |x: f64| {
        let (c, s) = t.eval(x);
        c * c + s * s
    };
    Ok(integrate_tail(&f, 0.0, cut, &far, 0.5 * tol)?.scaled(2.0))
}

/// `Σ (aₙ/π²ⁿ) ∫|g⁽ⁿ⁾|²` by time-domain quadrature; polynomial profiles,
/// `deg 𝒫 ≤ 4`.
pub fn time_side_functional(p: &WeightPoly, g: &PWFunction, tol: f64) -> Result<f64> {
    let q = g
        .profile
        .as_polynomial()
        .ok_or_else(|| invalid("the time-domain path needs a polynomial profile"))?;
    if p.degree() > MAX_TIME_SIDE_DEGREE {
        return Err(invalid(format!("weight degree {} exceeds {MAX_TIME_SIDE_DEGREE}", p.degree())));
    }
    let n_terms = p.coeffs().iter().filter(|a| **a != 0.0).count().max(1);
    let mut total = 0.0;
    for (n, &a) in p.coeffs().iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let scale = a / PI.powi(2 * n as i32);
        let e = derivative_energy(q, n, tol / (n_terms as f64 * scale.abs().max(1.0)))?;
        total += scale * e.value;
    }
    Ok(total)
}

/// `Σ_k (−1)^k σ^{−2k} C(N,k) ∫|f⁽ᵏ⁾|²`, on the Fourier side as
/// `∫ (1 − 4π²ξ²/σ²)ᴺ |f̂|²`; the profile must vanish beyond `σ/2π`.
pub fn binomial_inequality_check(n: usize, sigma: f64, f: &FourierProfile, tol: f64) -> Result<f64> {
    if n > MAX_TIME_SIDE_DEGREE || !(sigma > 0.0) {
        return Err(invalid(format!("need N ≤ {MAX_TIME_SIDE_DEGREE} and σ > 0")));
    }
    let limit = sigma / (2.0 * PI);
    if limit < HALF_WIDTH {
        let steps = 2000;
        for k in 0..=steps {
            let t = limit + (HALF_WIDTH - limit) * k as f64 / steps as f64;
            if t > limit && (f.eval(t) != 0.0 || f.eval(-t) != 0.0) {
                return Err(Error::SupportViolation { limit });
            }
        }
    }
    let w = |t: f64| (1.0 - 4.0 * PI * PI * t * t / (sigma * sigma)).powi(n as i32) * f.eval(t).powi(2);
    let value = integrate_finite(&w, -HALF_WIDTH, HALF_WIDTH, tol)?.value;
    if value < -tol {
        return Err(Error::InequalityViolated { value, tol });
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogCorollary {
    pub closed: f64,
    pub quadrature: f64,
}

/// `((1/2π√a) log((1+π√a)/(1−π√a)))⁻¹` for `0 < a < 1/π²`, with the
/// sharp constant of `𝒫(x) = 1 − aπ²x` as the second path.
pub fn log_corollary_constant(a: f64, tol: f64) -> Result<LogCorollary> {
    if !(a > 0.0 && a < 1.0 / (PI * PI)) {
        return Err(invalid(format!("a = {a} outside (0, 1/π²)")));
    }
    let e = PI * a.sqrt();
    // log((1+e)/(1−e))/(2e) = atanh(e)/e.
    let closed = e / e.atanh();
    let p = WeightPoly::new(vec![1.0, -a * PI * PI])?;
    Ok(LogCorollary {
        closed,
        quadrature: sharp_constant(&p, tol)?,
    })
}

/// A polynomial profile of degree ≤ 6 with coefficients uniform in
/// `[−1, 1]`, scaled to `g(0) = 1`; draws with `|∫ĝ| < 10⁻⁶` are rejected.
pub fn random_profile<R: Rng>(rng: &mut R) -> PolyCoeffs {
    loop {
        let deg = rng.gen_range(0..=6);
        let q = PolyCoeffs::new((0..=deg).map(|_| rng.gen_range(-1.0..=1.0)).collect());
        let mass = q.integrate(-HALF_WIDTH, HALF_WIDTH);
        if mass.abs() >= 1e-6 {
            return q.scale(1.0 / mass);
        }
    }
}

/// Per-draw seeds derived from a master seed, so that parallel draws are
/// reproducible.
pub fn draw_seeds(master: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    (0..count).map(|_| rng.next_u64()).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomReport {
    pub draws: usize,
    /// Smallest `functional − C(𝒫)`.
    pub min_margin: f64,
    pub violations: usize,
}

/// `functional(𝒫, g) − C(𝒫)` over random admissible profiles.
pub fn verify_random(p: &WeightPoly, count: usize, seed: u64, slack: f64, tol: f64) -> Result<RandomReport> {
    let c = sharp_constant(p, tol)?;
    let margins: Vec<f64> = draw_seeds(seed, count)
        .into_par_iter()
        .map(|s| {
            let q = random_profile(&mut ChaCha8Rng::seed_from_u64(s));
            functional(p, &PWFunction::polynomial(q), tol).map(|v| v - c)
        })
        .collect::<Result<_>>()?;
    Ok(RandomReport {
        draws: count,
        min_margin: margins.iter().copied().fold(f64::INFINITY, f64::min),
        violations: margins.iter().filter(|&&m| m < -slack).count(),
    })
}
