//! Independent high-precision checks. Sine/cosine integrals and `h₀` are
//! re-derived here from their power series in `astro-float`; the frozen
//! literals were computed separately at 30 digits and are pinned so that a
//! regression in either path shows up.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use bandlimit::lids::bessel_lid_ratio_closed;
use bandlimit::monotone_l2::q_entry;
use bandlimit::monotone_poly::{assemble_nd, d_entry_quadrature};
use bandlimit::represent::quotient;
use bandlimit::sharp_ineq::extremal_g;
use bandlimit::specfun::{h0_band, hk_band, positive_zeros};
use bandlimit::{bessel_lid_ratio, sharp_constant, WeightPoly};
use std::f64::consts::PI;

const RM: RoundingMode = RoundingMode::ToEven;
const EULER_GAMMA: &str = "0.57721566490153286060651209008240243104215933593992359880576723";

const Q11: f64 = 0.773_695_009_902_816_184;
const Q13: f64 = -0.058_850_382_980_956_488_3;
const Q5_21: f64 = -0.001_401_755_479_810_727_16;
const Q41_41: f64 = 0.024_269_680_679_403_932_3;
const H1_QUOTIENT: f64 = 1.292_498_965_613_866_349;
/// `π²D₀₀ = 1/8`.
const D00: f64 = 0.012_665_147_955_292_221_2;
const H0_ZEROS: [f64; 10] = [
    1.583_939_659_043_869_23,
    2.571_462_013_074_104_01,
    3.557_311_772_831_698_68,
    4.546_952_496_128_720_00,
    5.539_486_364_445_287_40,
    6.533_957_850_964_897_42,
    7.529_735_971_404_707_48,
    8.526_421_452_866_183_51,
    9.523_757_113_084_030_46,
    10.521_572_257_944_537_0,
];
const LID_RATIOS: [(f64, f64); 4] = [
    (0.3, 1.526_706_820_256_761_93),
    (0.6, 1.301_615_656_447_776_74),
    (1.0, 1.296_911_150_621_923_47),
    (2.0, 1.463_885_602_112_929_50),
];
const LID_ARGMIN: f64 = 0.787_731_136_299_122_49;
const LID_MIN: f64 = 1.284_626_015_151_814_00;
const ARCTAN_CONSTANT: f64 = 2.488_139_424_727_186_26;
const ARCTAN_G_AT_ONE: f64 = 0.483_807_667_256_265_380;

struct Hp {
    p: usize,
    cc: Consts,
}

impl Hp {
    fn new(p: usize) -> Self {
        Self { p, cc: Consts::new().unwrap() }
    }

    fn num(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    fn to_f64(x: &BigFloat) -> f64 {
        format!("{x}").parse().unwrap()
    }

    /// `(Si(x), Ci(x))` by the power series, with the working precision
    /// large enough to absorb the cancellation for `x` up to a few hundred.
    fn sici(&mut self, x: &BigFloat) -> (BigFloat, BigFloat) {
        let p = self.p;
        let mut si = x.clone();
        let mut ci = self.num(0.0);
        let mut t = x.clone();
        let eps = BigFloat::from_f64(2f64.powi(-(p as i32) + 8), p);
        for k in 2..20000u32 {
            t = t.mul(x, p, RM).div(&self.num(k as f64), p, RM);
            let term = t.div(&self.num(k as f64), p, RM);
            let term = if (k / 2) % 2 == 0 { term } else { term.neg() };
            if k % 2 == 0 {
                ci = ci.add(&term, p, RM);
            } else {
                si = si.add(&term, p, RM);
            }
            if k as f64 > 2.0 * Self::to_f64(x) && t.abs().cmp(&eps).is_some_and(|c| c < 0) {
                break;
            }
        }
        let gamma = BigFloat::parse(EULER_GAMMA, Radix::Dec, p, RM, &mut self.cc);
        let ln = x.ln(p, RM, &mut self.cc);
        (si, gamma.add(&ln, p, RM).add(&ci, p, RM))
    }

    fn q(&mut self, k: u32, j: u32) -> f64 {
        let p = self.p;
        let pi = self.pi();
        let pi2 = pi.mul(&pi, p, RM);
        let four = self.num(4.0);
        let xk = pi.mul(&self.num(k as f64), p, RM);
        let (sk, ck) = self.sici(&xk);
        let v = if k == j {
            let inner = xk.mul(&sk, p, RM).div(&self.num(2.0), p, RM).sub(&self.num(1.0), p, RM);
            four.mul(&inner, p, RM).div(&pi2.mul(&self.num((k * k) as f64), p, RM), p, RM)
        } else {
            let xj = pi.mul(&self.num(j as f64), p, RM);
            let (_, cj) = self.sici(&xj);
            let ratio = self.num(k as f64).div(&self.num(j as f64), p, RM);
            let log = ratio.ln(p, RM, &mut self.cc);
            let num = log.sub(&ck, p, RM).add(&cj, p, RM);
            let den = self.num(j as f64 * j as f64 - k as f64 * k as f64);
            four.mul(&num, p, RM).div(&pi2.mul(&den, p, RM), p, RM)
        };
        Self::to_f64(&v)
    }

    /// `h₀(x) = 2∫_0^{1/2} (1/4 − t²)(1 − 9t²/5) cos(2πxt) dt`, expanding
    /// the cosine and integrating term by term.
    fn h0(&mut self, x: f64) -> BigFloat {
        let p = self.p;
        let pi = self.pi();
        let w = pi.mul(&self.num(2.0 * x), p, RM);
        let w2 = w.mul(&w, p, RM);
        let half = self.num(0.5);
        let coeffs = [(0u32, 0.25), (2, -1.45), (4, 1.8)];
        let coeffs: Vec<(u32, BigFloat)> = coeffs
            .iter()
            .map(|&(m, c)| {
                let c = BigFloat::parse(&format!("{c}"), Radix::Dec, p, RM, &mut self.cc);
                (m, c)
            })
            .collect();
        let mut total = self.num(0.0);
        let mut wpow = self.num(1.0);
        let mut fact = self.num(1.0);
        for n in 0..400u32 {
            if n > 0 {
                wpow = wpow.mul(&w2, p, RM);
                fact = fact.mul(&self.num(((2 * n - 1) * (2 * n)) as f64), p, RM);
            }
            let mut moment = self.num(0.0);
            for (m, c) in &coeffs {
                let e = (2 * n + m + 1) as usize;
                let part = half.powi(e, p, RM).div(&self.num(e as f64), p, RM);
                moment = moment.add(&c.mul(&part, p, RM), p, RM);
            }
            let term = wpow.mul(&moment, p, RM).div(&fact, p, RM);
            total = if n % 2 == 0 { total.add(&term, p, RM) } else { total.sub(&term, p, RM) };
        }
        total.mul(&self.num(2.0), p, RM)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn high_precision_sici_matches_known_values() {
    let mut hp = Hp::new(512);
    let x = hp.pi();
    let (si, ci) = hp.sici(&x);
    // Si(π) and Ci(π).
    assert!(rel(Hp::to_f64(&si), 1.851_937_051_982_466_2) < 1e-15);
    assert!(rel(Hp::to_f64(&ci), 0.073_667_912_046_425_49) < 1e-14);
}

#[test]
fn q_entries_against_high_precision_oracle() {
    let mut hp = Hp::new(1024);
    for (k, j) in [(1, 1), (1, 3), (2, 2), (2, 4), (5, 21), (7, 7), (13, 41), (41, 41), (60, 62)] {
        let oracle = hp.q(k, j);
        let lib = q_entry(k, j);
        assert!((lib - oracle).abs() < 2e-15 * oracle.abs().max(1e-3), "Q[{k},{j}]: {lib} vs {oracle}");
    }
}

#[test]
fn frozen_q_entries() {
    let mut hp = Hp::new(1024);
    for (k, j, v) in [(1, 1, Q11), (1, 3, Q13), (5, 21, Q5_21), (41, 41, Q41_41)] {
        assert!(rel(hp.q(k, j), v) < 1e-15, "oracle Q[{k},{j}]");
        assert!(rel(q_entry(k, j), v) < 1e-14, "library Q[{k},{j}]");
    }
}

#[test]
fn single_mode_quotient_is_inverse_q11() {
    let q = quotient(&hk_band(1).unwrap(), 1e-12).unwrap();
    assert!(rel(q, H1_QUOTIENT) < 1e-10, "{q}");
    assert!(rel(1.0 / Q11, H1_QUOTIENT) < 1e-15);
}

#[test]
fn h0_zeros_bracketed_in_high_precision() {
    let mut hp = Hp::new(256);
    for z in H0_ZEROS {
        let a = hp.h0(z - 1e-11);
        let b = hp.h0(z + 1e-11);
        assert!(a.is_negative() != b.is_negative(), "no sign change at {z}");
    }
    let lib = positive_zeros(&h0_band(), 10).unwrap();
    for (k, (&got, &want)) in lib.iter().zip(&H0_ZEROS).enumerate() {
        assert!((got - want).abs() < 1e-10, "zero {k}: {got} vs {want}");
    }
}

#[test]
fn h0_values_against_series() {
    let mut hp = Hp::new(256);
    let h = h0_band();
    for x in [0.0, 0.3, 1.2, 4.75, 9.9, 17.3] {
        let oracle = Hp::to_f64(&hp.h0(x));
        assert!((h.eval(x) - oracle).abs() < 1e-16 + 1e-13 * oracle.abs(), "x={x}: {} vs {oracle}", h.eval(x));
    }
}

#[test]
fn frozen_d00() {
    let (_, d) = assemble_nd(0).unwrap();
    assert!(rel(d.get(0, 0), D00) < 1e-15, "{}", d.get(0, 0));
    assert!(rel(D00 * PI * PI, 0.125) < 1e-15);
    let q = d_entry_quadrature(0, 0, 1e-14).unwrap();
    assert!((q.value - D00).abs() < 1e-13, "{}", q.value);
}

#[test]
fn frozen_lid_ratios() {
    for (a, r) in LID_RATIOS {
        assert!(rel(bessel_lid_ratio_closed(a).unwrap(), r) < 1e-13, "closed α={a}");
        assert!(rel(bessel_lid_ratio(a, 1e-12).unwrap(), r) < 1e-10, "quadrature α={a}");
    }
    let at_min = bessel_lid_ratio_closed(LID_ARGMIN).unwrap();
    assert!(rel(at_min, LID_MIN) < 1e-13);
    for da in [-1e-3, 1e-3] {
        assert!(bessel_lid_ratio_closed(LID_ARGMIN + da).unwrap() > at_min);
    }
}

#[test]
fn frozen_arctan_weight() {
    let p = WeightPoly::new(vec![1.0, PI * PI]).unwrap();
    let c = sharp_constant(&p, 1e-12).unwrap();
    assert!(rel(c, ARCTAN_CONSTANT) < 1e-12, "{c}");
    assert!(rel(PI / PI.atan(), ARCTAN_CONSTANT) < 1e-15);
    let g = extremal_g(&p, 1.0, 1e-12).unwrap();
    assert!((g - ARCTAN_G_AT_ONE).abs() < 1e-12, "{g}");
}
