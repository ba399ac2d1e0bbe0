//! Fixed quadrature rules: the 10/21-point Gauss–Kronrod pair and
//! Gauss–Legendre rules of arbitrary order.

use std::sync::OnceLock;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_205_632,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Estimate of one panel: Kronrod value and QUADPACK-style error estimate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PanelEstimate {
    pub value: f64,
    pub error: f64,
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut e = err.abs();
    if res_asc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / res_asc).powf(1.5);
        e = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * res_abs);
    }
    e
}

/// The 21 abscissae of the Kronrod rule mapped to `[a, b]`, with weights.
pub(crate) fn gk21_nodes(a: f64, b: f64) -> ([f64; 21], [f64; 21], [f64; 21]) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut x = [0.0; 21];
    let mut wk = [0.0; 21];
    let mut wg = [0.0; 21];
    x[0] = c;
    wk[0] = WGK[10] * h;
    for j in 0..10 {
        x[1 + 2 * j] = c - h * XGK[j];
        x[2 + 2 * j] = c + h * XGK[j];
        wk[1 + 2 * j] = WGK[j] * h;
        wk[2 + 2 * j] = WGK[j] * h;
        if j % 2 == 1 {
            wg[1 + 2 * j] = WG[j / 2] * h;
            wg[2 + 2 * j] = WG[j / 2] * h;
        }
    }
    (x, wk, wg)
}

pub(crate) fn gk21<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> PanelEstimate {
    let (x, wk, wg) = gk21_nodes(a, b);
    let fv: [f64; 21] = std::array::from_fn(|i| f(x[i]));
    let mut rk = 0.0;
    let mut rg = 0.0;
    let mut rabs = 0.0;
    for i in 0..21 {
        rk += wk[i] * fv[i];
        rg += wg[i] * fv[i];
        rabs += wk[i].abs() * fv[i].abs();
    }
    let mean = rk / (b - a);
    let rasc: f64 = (0..21).map(|i| wk[i].abs() * (fv[i] - mean).abs()).sum();
    PanelEstimate {
        value: rk,
        error: rescale_error(rk - rg, rabs, rasc),
    }
}

/// Vector-valued Kronrod panel: `f(x, out)` fills `out` with `dim` values.
pub(crate) fn gk21_vec<F: Fn(f64, &mut [f64]) + ?Sized>(
    f: &F,
    dim: usize,
    a: f64,
    b: f64,
) -> (Vec<f64>, Vec<f64>) {
    let (x, wk, wg) = gk21_nodes(a, b);
    let mut vals = vec![0.0; 21 * dim];
    for i in 0..21 {
        f(x[i], &mut vals[i * dim..(i + 1) * dim]);
    }
    let mut value = vec![0.0; dim];
    let mut error = vec![0.0; dim];
    let len = b - a;
    for k in 0..dim {
        let (mut rk, mut rg, mut rabs) = (0.0, 0.0, 0.0);
        for i in 0..21 {
            let v = vals[i * dim + k];
            rk += wk[i] * v;
            rg += wg[i] * v;
            rabs += wk[i].abs() * v.abs();
        }
        let mean = rk / len;
        let rasc: f64 = (0..21)
            .map(|i| wk[i].abs() * (vals[i * dim + k] - mean).abs())
            .sum();
        value[k] = rk;
        error[k] = rescale_error(rk - rg, rabs, rasc);
    }
    (value, error)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = z;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        if n == 1 {
            x[0] = 0.0;
            w[0] = 2.0;
            break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Cached 20-point Gauss–Legendre rule.
pub(crate) fn gl20() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(20))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(12);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(22)).sum();
        assert!((s - 2.0 / 23.0).abs() < 1e-15);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn kronrod_panel_on_smooth_integrand() {
        let est = gk21(&|x: f64| x.exp(), 0.0, 1.0);
        assert!((est.value - (1f64.exp() - 1.0)).abs() < 1e-15);
        assert!(est.error < 1e-13);
    }
}
