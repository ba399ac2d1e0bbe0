//! Sign-change scanning and bracketed root refinement (Brent's method).

/// Roots of `f` on `[a, b]` located by scanning `grid` uniform cells for
/// sign changes and refining each bracket to width `≤ tol`.
///
/// A cell holding an even number of roots shows no sign change and is
/// skipped, so closely spaced or double roots can be missed.
pub fn find_roots<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    grid: usize,
    tol: f64,
) -> Vec<f64> {
    if !(a < b) || grid == 0 {
        return Vec::new();
    }
    let h = (b - a) / grid as f64;
    let mut roots: Vec<f64> = Vec::new();
    let mut x0 = a;
    let mut f0 = f(a);
    for k in 1..=grid {
        let x1 = if k == grid { b } else { a + k as f64 * h };
        let f1 = f(x1);
        if f0 == 0.0 {
            push_root(&mut roots, x0);
        } else if f0 * f1 < 0.0 {
            push_root(&mut roots, brent(f, x0, x1, f0, f1, tol));
        }
        x0 = x1;
        f0 = f1;
    }
    if f0 == 0.0 {
        push_root(&mut roots, b);
    }
    roots
}

fn push_root(roots: &mut Vec<f64>, r: f64) {
    if roots.last().is_none_or(|&last| r > last) {
        roots.push(r);
    }
}

/// Brent's bracketing method on `[a, b]` with `fa · fb < 0`.
pub fn brent<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    tol: f64,
) -> f64 {
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return b;
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sine_root() {
        let r = find_roots(&|x: f64| (PI * x).sin(), 0.5, 1.5, 100, 1e-10);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sinc_roots() {
        let f = |x: f64| (PI * x).sin() / (PI * x);
        let r = find_roots(&f, 0.5, 3.5, 400, 1e-10);
        assert_eq!(r.len(), 3);
        for (k, x) in r.iter().enumerate() {
            assert!((x - (k + 1) as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn no_sign_change_means_no_root() {
        assert!(find_roots(&|x: f64| x * x + 1.0, -1.0, 1.0, 50, 1e-12).is_empty());
    }
}
