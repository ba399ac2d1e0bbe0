use crate::commands::l2_cap;
use crate::golden::{H0_ZEROS, L2_BOUNDS, L2_ZEROS, L2_ZEROS_D, POLY_BOUNDS};
use crate::record::{fmt_f64, real, CliResult, Record};
use bandlimit::monotone_l2::DESK_CAP;
use bandlimit::specfun::{f0, f_half, h0, h0_hat, positive_zeros, sinc_pw, h0_band, H0_AT_ZERO};
use bandlimit::{extremizer_zeros, solve_l2, solve_poly};
use serde_json::Value;
use std::fs;
use std::path::Path;

pub const PLOT_SAMPLES: usize = 2000;

/// `n` points `−L + 2Lk/n`, so that `x = 0` is among them.
fn grid(half_width: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| -half_width + 2.0 * half_width * k as f64 / n as f64)
}

/// Printed values carry nine decimals; twelve reproduce them exactly.
fn fmt_printed(x: f64) -> String {
    format!("{x:.12}")
}

fn writer(path: &Path) -> CliResult<csv::Writer<fs::File>> {
    Ok(csv::Writer::from_path(path)?)
}

fn table_a(path: &Path, allow_large: bool, tol: f64) -> CliResult<(f64, f64, usize)> {
    let mut w = writer(path)?;
    w.write_record(["pipeline", "d", "bound", "printed", "deviation", "status"])?;
    let (mut poly_dev, mut l2_dev, mut skipped) = (0f64, 0f64, 0);
    for &(d, printed) in &POLY_BOUNDS {
        let b = solve_poly(d, tol)?.bound;
        poly_dev = poly_dev.max((b - printed).abs());
        w.write_record(["polynomial", &d.to_string(), &fmt_f64(b), &fmt_printed(printed), &fmt_f64(b - printed), "ok"])?;
    }
    for &(d, printed) in &L2_BOUNDS {
        if l2_cap(d, allow_large).is_err() {
            skipped += 1;
            w.write_record(["L2", &d.to_string(), "", &fmt_printed(printed), "", "skipped"])?;
            continue;
        }
        let b = solve_l2(d, tol)?.bound;
        l2_dev = l2_dev.max((b - printed).abs());
        w.write_record(["L2", &d.to_string(), &fmt_f64(b), &fmt_printed(printed), &fmt_f64(b - printed), "ok"])?;
    }
    w.flush()?;
    Ok((poly_dev, l2_dev, skipped))
}

fn table_zeros(path: &Path, allow_large: bool, tol: f64) -> CliResult<(f64, f64, usize)> {
    let mut w = writer(path)?;
    let mut header = vec!["row".to_string(), "d".to_string()];
    header.extend((1..=10).map(|k| format!("x{k}")));
    header.push("max_deviation".into());
    w.write_record(&header)?;
    let d = if allow_large { L2_ZEROS_D } else { DESK_CAP };
    let rows = [
        ("Pol", 2, positive_zeros(&h0_band(), 10)?, &H0_ZEROS),
        ("L2", d, extremizer_zeros(&solve_l2(d, tol)?, 10)?, &L2_ZEROS),
    ];
    let mut devs = [0f64; 2];
    for (i, (name, d, zeros, printed)) in rows.iter().enumerate() {
        devs[i] = zeros.iter().zip(printed.iter()).map(|(z, p)| (z - p).abs()).fold(0.0, f64::max);
        let mut rec = vec![name.to_string(), d.to_string()];
        rec.extend(zeros.iter().map(|&z| fmt_f64(z)));
        rec.push(fmt_f64(devs[i]));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok((devs[0], devs[1], d))
}

fn plot(path: &Path, header: &[&str], half_width: f64, cols: &[&dyn Fn(f64) -> f64]) -> CliResult<()> {
    let mut w = writer(path)?;
    w.write_record(header)?;
    for x in grid(half_width, PLOT_SAMPLES) {
        let mut rec = vec![fmt_f64(x)];
        rec.extend(cols.iter().map(|f| fmt_f64(f(x))));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit(dir: &Path, allow_large: bool, tol: f64) -> CliResult<Record> {
    fs::create_dir_all(dir)?;
    let mut r = Record::new("tables");
    r.param("tol", real(tol)?)
        .param("allow_large", allow_large)
        .param("plot_samples", PLOT_SAMPLES);

    let (poly_dev, l2_dev, skipped) = table_a(&dir.join("tb_a.csv"), allow_large, tol)?;
    let (pol_zero_dev, l2_zero_dev, zeros_d) = table_zeros(&dir.join("tb_zeros.csv"), allow_large, tol)?;

    let fejer = |x: f64| sinc_pw(x).powi(2);
    plot(&dir.join("plot_fejer.csv"), &["x", "K", "lid"], 4.0, &[&fejer, &f_half])?;
    plot(&dir.join("plot_f0.csv"), &["x", "f0"], 4.0, &[&f0])?;
    let hat = |xi: f64| 4.0 * h0_hat(xi);
    plot(&dir.join("plot_h0_hat.csv"), &["xi", "h0_hat_normalized"], 0.5, &[&hat])?;
    let h = |x: f64| h0(x) / H0_AT_ZERO;
    plot(&dir.join("plot_h0.csv"), &["x", "h0_normalized"], 8.0, &[&h])?;

    let files = ["tb_a.csv", "tb_zeros.csv", "plot_fejer.csv", "plot_f0.csv", "plot_h0_hat.csv", "plot_h0.csv"];
    r.result("files", Value::Array(files.iter().map(|&f| f.into()).collect()))
        .result("l2_rows_skipped", skipped)
        .result("zeros_l2_d", zeros_d);
    r.diag("poly_max_deviation", real(poly_dev)?)
        .diag("l2_max_deviation", real(l2_dev)?)
        .diag("h0_zeros_max_deviation", real(pol_zero_dev)?)
        .diag("l2_zeros_max_deviation", real(l2_zero_dev)?);
    Ok(r)
}
