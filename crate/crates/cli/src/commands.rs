use crate::args::{Command, Pipeline};
use crate::record::{real, reals, CliError, CliResult, Record};
use bandlimit::lids::{bessel_lid_ratio_closed, lid_eval, lid_monotone_check};
use bandlimit::monotone_l2::{DESK_CAP, MAX_D};
use bandlimit::represent::derivative_identity_check;
use bandlimit::sharp_ineq::{extremal_profile, functional, verify_random};
use bandlimit::specfun::{f0, f0_band, h0_band, positive_zeros, F0_AT_ZERO};
use bandlimit::{
    bessel_lid_ratio, certify_d2_exact, extremizer_zeros, minimize_alpha, sharp_constant, solve_l2, solve_poly,
    MonotoneProfile, PWFunction, SoninLid, WeightPoly,
};

pub fn parse_poly(s: &str) -> CliResult<WeightPoly> {
    let coeffs: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Config(format!("bad coefficient {t:?} in --poly"))))
        .collect::<CliResult<_>>()?;
    Ok(WeightPoly::new(coeffs)?)
}

pub fn l2_cap(d: usize, allow_large: bool) -> CliResult<()> {
    let cap = if allow_large { MAX_D } else { DESK_CAP };
    if d == 0 || d > cap {
        let hint = if allow_large { "" } else { " (--allow-large raises the cap to 1000)" };
        return Err(CliError::Config(format!("monotone-l2 needs 1 ≤ d ≤ {cap}, got {d}{hint}")));
    }
    Ok(())
}

pub fn run(cmd: &Command, tol: f64) -> CliResult<(Record, Option<CliError>)> {
    let mut r = Record::new(cmd.name());
    r.param("tol", real(tol)?);
    let mut failure = None;
    match *cmd {
        Command::MonotonePoly { d } => {
            r.param("d", d);
            let s = solve_poly(d, tol)?;
            let quotient = s.f.quotient()?;
            r.result("bound", real(s.bound)?)
                .result("bound_exact", s.bound_exact.to_string())
                .result("coeffs", reals(&s.coeffs)?)
                .result("f_peak", real(s.f.peak)?)
                .result("f_mass", real(s.f.mass)?)
                .result("quotient_time_domain", real(quotient)?);
            r.diag("eigen_bound", real(s.diagnostics.eigen_bound)?)
                .diag("eigen_residual", real(s.diagnostics.eigen_residual)?)
                .diag("max_err_est", real(s.diagnostics.profile_err)?)
                .diag("path_deviation", real((quotient - s.bound).abs())?);
        }
        Command::MonotoneL2 { d, allow_large } => {
            l2_cap(d, allow_large)?;
            r.param("d", d);
            let s = solve_l2(d, tol)?;
            r.result("lambda", real(s.lambda)?)
                .result("bound", real(s.bound)?)
                .result("coeffs", reals(&s.coeffs)?);
            r.diag("eigen_residual", real(s.residual)?)
                .diag("assembly", "closed form");
        }
        Command::Lid { alpha } => {
            r.param("alpha", real(alpha)?);
            let ratio = bessel_lid_ratio(alpha, tol)?;
            let closed = bessel_lid_ratio_closed(alpha)?;
            let lid = SoninLid::bessel(alpha)?;
            let grid: Vec<f64> = (1..=400).map(|k| 0.05 * k as f64).collect();
            r.result("ratio", real(ratio)?)
                .result("ratio_closed", real(closed)?)
                .result("f_at_zero", real(lid_eval(&lid, 0.0))?);
            r.diag("path_deviation", real((ratio - closed).abs())?)
                .diag("max_increase", real(lid_monotone_check(&lid, &grid)?)?);
        }
        Command::LidOptimize { lo, hi, alpha_tol } => {
            r.param("lo", real(lo)?).param("hi", real(hi)?).param("alpha_tol", real(alpha_tol)?);
            let m = minimize_alpha(lo, hi, alpha_tol)?;
            r.result("alpha", real(m.alpha)?)
                .result("ratio", real(m.ratio)?)
                .result("boundary", m.boundary)
                .result("unimodal", m.unimodal);
            r.diag("scan_points", m.scan.len())
                .diag("path_deviation", real((bessel_lid_ratio_closed(m.alpha)? - m.ratio).abs())?);
        }
        Command::SharpConstant { ref poly } => {
            let p = parse_poly(poly)?;
            r.param("poly", reals(p.coeffs())?);
            let c = sharp_constant(&p, tol)?;
            let g = PWFunction::new(extremal_profile(&p, tol)?);
            let g0 = g.at_zero(tol)?;
            let attained = functional(&p, &g, tol)?;
            r.result("constant", real(c)?).result("extremal_at_zero", real(g0)?);
            r.diag("equality_gap", real((attained - c * g0 * g0).abs())?);
        }
        Command::VerifyInequality { ref poly, count, seed, slack } => {
            let p = parse_poly(poly)?;
            r.param("poly", reals(p.coeffs())?)
                .param("count", count)
                .param("seed", seed)
                .param("slack", real(slack)?);
            let c = sharp_constant(&p, tol)?;
            let rep = verify_random(&p, count, seed, slack, tol)?;
            r.result("constant", real(c)?)
                .result("draws", rep.draws)
                .result("min_margin", real(rep.min_margin)?)
                .result("violations", rep.violations);
            if rep.violations > 0 {
                failure = Some(CliError::Numerical(format!("{} of {} draws violate the inequality", rep.violations, rep.draws)));
            }
        }
        Command::Zeros { pipeline, d, count, allow_large } => {
            if count == 0 {
                return Err(CliError::Config("--count must be at least 1".into()));
            }
            r.param("count", count);
            let zeros = match pipeline {
                Pipeline::H0 => {
                    r.param("pipeline", "h0");
                    positive_zeros(&h0_band(), count)?
                }
                Pipeline::Poly => {
                    let d = d.ok_or_else(|| CliError::Config("--d is required for --pipeline poly".into()))?;
                    r.param("pipeline", "poly").param("d", d);
                    let s = solve_poly(d, tol)?;
                    r.result("bound", real(s.bound)?);
                    positive_zeros(&s.h, count)?
                }
                Pipeline::L2 => {
                    let d = d.ok_or_else(|| CliError::Config("--d is required for --pipeline l2".into()))?;
                    l2_cap(d, allow_large)?;
                    r.param("pipeline", "l2").param("d", d);
                    let s = solve_l2(d, tol)?;
                    r.result("bound", real(s.bound)?);
                    extremizer_zeros(&s, count)?
                }
            };
            r.result("zeros", reals(&zeros)?);
        }
        Command::VerifyF0 => {
            let p = MonotoneProfile::new(h0_band(), tol)?;
            let xs: Vec<f64> = (0..=40).map(|k| 0.25 * k as f64).collect();
            let mut dev: f64 = 0.0;
            for &x in &xs {
                dev = dev.max((p.eval(x)? - f0(x)).abs());
            }
            let ident = derivative_identity_check(&h0_band(), &f0_band(), &xs);
            let cert = certify_d2_exact()?;
            let q = p.quotient()?;
            r.result("f0_at_zero", real(f0(0.0))?)
                .result("f0_at_zero_integral", real(p.peak)?)
                .result("quotient", real(q)?)
                .result("certificate", cert.to_string());
            r.diag("max_closed_form_deviation", real(dev)?)
                .diag("peak_deviation", real((p.peak - F0_AT_ZERO).abs())?)
                .diag("derivative_identity_residual", real(ident)?)
                .diag("max_err_est", real(p.err_est)?);
        }
        Command::Tables { .. } => unreachable!("handled by tables::emit"),
    }
    Ok((r, failure))
}
