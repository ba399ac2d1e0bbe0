//! Far-field expansions: finite sums of terms `Re(amp · e^{iωx}) · x^{-p}`
//! describing an integrand for large `x`, and their exact tail integrals
//! `∫_X^∞`.
//!
//! Tail integrals of oscillating terms use the integration-by-parts series
//! `∫_X^∞ x^{-p} e^{iωx} dx = -e^{iωX} Σ_k (p)_k / ((iω)^{k+1} X^{p+k})`
//! when `ωX` is large against `p`, and the upward recurrence started from
//! the sine and cosine integrals otherwise (integer `p` only).

use crate::error::{invalid, Result};
use crate::specfun::sici::sici;
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

const FREQ_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscTerm {
    /// Complex amplitude; the term's value is `Re(amp e^{iωx}) x^{-p}`.
    pub amp: Complex64,
    pub power: f64,
    /// Angular frequency, always `≥ 0`.
    pub freq: f64,
}

impl OscTerm {
    /// `c · x^{-p} · cos(ωx + φ)`
    pub fn cos(c: f64, power: f64, freq: f64, phase: f64) -> Self {
        Self::normalized(Complex64::from_polar(c, phase), power, freq)
    }

    /// `c · x^{-p} · sin(ωx + φ)`
    pub fn sin(c: f64, power: f64, freq: f64, phase: f64) -> Self {
        Self::cos(c, power, freq, phase - FRAC_PI_2)
    }

    /// `c · x^{-p}`
    pub fn power(c: f64, power: f64) -> Self {
        Self {
            amp: Complex64::new(c, 0.0),
            power,
            freq: 0.0,
        }
    }

    fn normalized(amp: Complex64, power: f64, freq: f64) -> Self {
        if freq.abs() < FREQ_EPS {
            Self {
                amp: Complex64::new(amp.re, 0.0),
                power,
                freq: 0.0,
            }
        } else if freq < 0.0 {
            Self {
                amp: amp.conj(),
                power,
                freq: -freq,
            }
        } else {
            Self { amp, power, freq }
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let osc = if self.freq == 0.0 {
            self.amp.re
        } else {
            (self.amp * Complex64::from_polar(1.0, self.freq * x)).re
        };
        osc * x.powf(-self.power)
    }

    /// `∫_X^∞` of the term, with an estimate of the error committed.
    pub fn tail(&self, x0: f64) -> Result<(f64, f64)> {
        if x0 <= 0.0 {
            return Err(invalid("tail start must be positive"));
        }
        if self.amp.norm() == 0.0 {
            return Ok((0.0, 0.0));
        }
        if self.freq == 0.0 {
            if self.power <= 1.0 {
                return Err(invalid(format!(
                    "non-oscillating term x^-{} is not integrable",
                    self.power
                )));
            }
            let v = self.amp.re * x0.powf(1.0 - self.power) / (self.power - 1.0);
            return Ok((v, v.abs() * 4.0 * f64::EPSILON));
        }
        let (i_p, err) = osc_power_tail(self.power, self.freq, x0)?;
        let v = (self.amp * i_p).re;
        Ok((v, err * self.amp.norm() + v.abs() * 8.0 * f64::EPSILON))
    }
}

/// `∫_X^∞ x^{-p} e^{iωx} dx` with `ω > 0`, plus an error estimate.
pub fn osc_power_tail(p: f64, omega: f64, x0: f64) -> Result<(Complex64, f64)> {
    let wx = omega * x0;
    let phase = Complex64::from_polar(1.0, wx);
    if wx >= 2.0 * p + 40.0 {
        let iw = Complex64::new(0.0, omega);
        let mut term = Complex64::new(x0.powf(-p), 0.0) / iw;
        let mut sum = term;
        let mut k = 0.0;
        loop {
            let next = term * (p + k) / (iw * x0);
            if next.norm() >= term.norm() {
                // Asymptotic series started diverging; its smallest term bounds the error.
                return Ok((-phase * sum, term.norm()));
            }
            term = next;
            sum += term;
            k += 1.0;
            if term.norm() <= 1e-19 * sum.norm() {
                return Ok((-phase * sum, term.norm()));
            }
        }
    }
    if p.fract() != 0.0 || p < 1.0 {
        return Err(invalid(format!(
            "oscillatory tail with ωX = {wx} needs integer power, got {p}"
        )));
    }
    let (s, c) = sici(wx);
    let mut acc = Complex64::new(-c, FRAC_PI_2 - s);
    let target = p as usize;
    let iw = Complex64::new(0.0, omega);
    for n in 1..target {
        let nf = n as f64;
        acc = iw / nf * acc + phase * x0.powf(-nf) / nf;
    }
    let scale = x0.powf(1.0 - p);
    Ok((acc, 1e-15 * scale.max(acc.norm())))
}

/// A sum of [`OscTerm`]s plus an optional remainder bound
/// `|f(x) − Σ| ≤ remainder.0 · x^{-remainder.1}` valid for `x ≥ valid_from`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FarField {
    pub terms: Vec<OscTerm>,
    pub remainder: Option<(f64, f64)>,
    pub valid_from: f64,
}

impl FarField {
    pub fn new(terms: Vec<OscTerm>) -> Self {
        Self {
            terms,
            remainder: None,
            valid_from: 0.0,
        }
        .simplified()
    }

    pub fn with_remainder(mut self, coeff: f64, power: f64) -> Self {
        self.remainder = Some((coeff, power));
        self
    }

    pub fn valid_from(mut self, x: f64) -> Self {
        self.valid_from = x;
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| OscTerm {
                    amp: t.amp * s,
                    ..*t
                })
                .collect(),
            remainder: self.remainder.map(|(c, p)| (c * s.abs(), p)),
            valid_from: self.valid_from,
        }
    }

    /// Multiplies by `x^m`.
    pub fn mul_power(&self, m: f64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| OscTerm {
                    power: t.power - m,
                    ..*t
                })
                .collect(),
            remainder: self.remainder.map(|(c, p)| (c, p - m)),
            valid_from: self.valid_from,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        let remainder = match (self.remainder, other.remainder) {
            (None, r) | (r, None) => r,
            (Some((c1, p1)), Some((c2, p2))) => Some((c1 + c2, p1.min(p2))),
        };
        Self {
            terms,
            remainder,
            valid_from: self.valid_from.max(other.valid_from),
        }
        .simplified()
    }

    /// Product expansion. Remainders are dropped: only multiply exact
    /// expansions, or account for truncation separately.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(2 * self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let power = a.power + b.power;
                if a.freq == 0.0 && b.freq == 0.0 {
                    terms.push(OscTerm::power(a.amp.re * b.amp.re, power));
                    continue;
                }
                terms.push(OscTerm::normalized(
                    a.amp * b.amp * 0.5,
                    power,
                    a.freq + b.freq,
                ));
                terms.push(OscTerm::normalized(
                    a.amp * b.amp.conj() * 0.5,
                    power,
                    a.freq - b.freq,
                ));
            }
        }
        Self {
            terms,
            remainder: None,
            valid_from: self.valid_from.max(other.valid_from),
        }
        .simplified()
    }

    /// Multiplies by `cos(ωx)`.
    pub fn mul_cos(&self, omega: f64) -> Self {
        self.mul(&FarField::new(vec![OscTerm::cos(1.0, 0.0, omega, 0.0)]))
    }

    fn simplified(mut self) -> Self {
        self.terms.sort_by(|a, b| {
            a.freq
                .total_cmp(&b.freq)
                .then(a.power.total_cmp(&b.power))
        });
        let mut out: Vec<OscTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            if let Some(last) = out.last_mut() {
                if (last.freq - t.freq).abs() <= FREQ_EPS * (1.0 + t.freq)
                    && (last.power - t.power).abs() <= 1e-12
                {
                    last.amp += t.amp;
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| t.amp.norm() != 0.0);
        self.terms = out;
        self
    }

    pub fn max_power(&self) -> f64 {
        self.terms.iter().map(|t| t.power).fold(0.0, f64::max)
    }

    /// `∫_X^∞` of the expansion: `(value, error estimate)`.
    pub fn tail(&self, x0: f64) -> Result<(f64, f64)> {
        if x0 < self.valid_from {
            return Err(invalid(format!(
                "far-field expansion valid from {}, asked at {x0}",
                self.valid_from
            )));
        }
        let mut value = 0.0;
        let mut err = 0.0;
        for t in &self.terms {
            let (v, e) = t.tail(x0)?;
            value += v;
            err += e;
        }
        if let Some((c, p)) = self.remainder {
            if p <= 1.0 {
                return Err(invalid("remainder bound is not integrable"));
            }
            err += c * x0.powf(1.0 - p) / (p - 1.0);
        }
        Ok((value, err))
    }
}
