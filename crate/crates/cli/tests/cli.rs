use serde_json::Value;
use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bandlimit"));
    c.env_remove("BANDLIMIT_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

fn numbers(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Number(n) => out.push(n.to_string()),
        Value::Array(a) => a.iter().for_each(|v| numbers(v, out)),
        Value::Object(m) => m.values().for_each(|v| numbers(v, out)),
        _ => {}
    }
}

fn significant_digits(s: &str) -> usize {
    let mantissa = s.split(['e', 'E']).next().unwrap();
    mantissa.chars().filter(char::is_ascii_digit).count()
}

#[test]
fn monotone_poly_degree_two() {
    let v = json(&["monotone-poly", "--d", "2"]);
    assert_eq!(v["command"], "monotone-poly");
    assert!((num(&v["result"]["bound"]) - 1.277171240).abs() < 1e-8);
    assert!(num(&v["diagnostics"]["path_deviation"]) < 1e-9);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "diagnostics", "params", "result", "version"]);
}

#[test]
fn sharp_constant_of_arctan_weight() {
    let pi2 = format!("{}", PI * PI);
    let v = json(&["sharp-constant", "--poly", &format!("1,{pi2}")]);
    assert!((num(&v["result"]["constant"]) - PI / PI.atan()).abs() < 1e-10);
    let rounded = json(&["sharp-constant", "--poly", "1,9.8696044"]);
    assert!((num(&rounded["result"]["constant"]) - PI / PI.atan()).abs() < 1e-8);
}

#[test]
fn json_is_byte_identical_and_precise() {
    let args = ["verify-inequality", "--poly", "1,1", "--count", "40", "--seed", "7"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let mut nums = Vec::new();
    numbers(&v["result"], &mut nums);
    numbers(&v["diagnostics"], &mut nums);
    for n in nums.iter().filter(|n| n.contains(['.', 'e'])) {
        assert!(significant_digits(n) >= 12, "{n}");
    }
    assert_eq!(v["result"]["violations"], 0);
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["monotone-l2", "--d", "40"];
    let one = bin().args(args).env("BANDLIMIT_THREADS", "1").output().unwrap();
    let many = bin().args(args).arg("--threads").arg("4").output().unwrap();
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn csv_record_uses_dot_decimals() {
    let out = run(&["lid", "--alpha", "0.5", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<(String, String)> = rdr.deserialize().map(Result::unwrap).collect();
    let ratio = rows.iter().find(|(k, _)| k == "result.ratio").unwrap();
    assert!(ratio.1.contains('.') && !ratio.1.contains(','));
    assert!((ratio.1.parse::<f64>().unwrap() - 4.0 / 3.0).abs() < 1e-8);
}

#[test]
fn out_path_receives_the_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.json");
    let out = run(&["zeros", "--pipeline", "h0", "--count", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let z: Vec<f64> = v["result"]["zeros"].as_array().unwrap().iter().map(num).collect();
    assert_eq!(z.len(), 3);
    assert!((z[0] - 1.5839).abs() < 5e-5);
}

#[test]
fn config_errors_exit_two() {
    for args in [
        vec!["monotone-l2", "--d", "500"],
        vec!["monotone-l2", "--d", "1001", "--allow-large"],
        vec!["monotone-poly", "--d", "2", "--tol", "-1"],
        vec!["sharp-constant", "--poly", "1,-2"],
        vec!["sharp-constant", "--poly", "1,x"],
        vec!["zeros", "--pipeline", "poly"],
        vec!["lid"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = bin().args(["lid", "--alpha", "1"]).env("BANDLIMIT_THREADS", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "config");
}

#[test]
fn numerical_failures_exit_three() {
    let out = run(&["lid", "--alpha", "1", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "numerical");
    // A negative slack turns every draw into a violation.
    let out = run(&["verify-inequality", "--poly", "1", "--count", "5", "--slack=-1000"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["violations"], 5);
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&["lid", "--alpha", "2"]);
    assert!(plain["diagnostics"].get("wall_time_ms").is_none());
    let timed = json(&["lid", "--alpha", "2", "--timing"]);
    assert!(num(&timed["diagnostics"]["wall_time_ms"]) >= 0.0);
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let header = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows = rdr.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn tables_have_the_printed_structure() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&["tables", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(v["result"]["l2_rows_skipped"], 3);
    assert!(num(&v["diagnostics"]["poly_max_deviation"]) < 1e-8);
    assert!(num(&v["diagnostics"]["l2_max_deviation"]) < 1e-8);

    let (header, rows) = read_csv(&dir.path().join("tb_a.csv"));
    assert_eq!(header.last().unwrap(), "status");
    assert!(header.contains(&"deviation".to_string()));
    let poly: Vec<_> = rows.iter().filter(|r| r[0] == "polynomial").collect();
    let l2: Vec<_> = rows.iter().filter(|r| r[0] == "L2").collect();
    assert_eq!((poly.len(), l2.len()), (9, 9));
    let skipped: Vec<&str> = l2.iter().filter(|r| r[5] == "skipped").map(|r| r[1].as_str()).collect();
    assert_eq!(skipped, ["400", "500", "1000"]);

    let (header, rows) = read_csv(&dir.path().join("tb_zeros.csv"));
    assert_eq!(header.len(), 13);
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][0].as_str(), rows[1][0].as_str()), ("Pol", "L2"));

    for f in ["plot_fejer.csv", "plot_f0.csv", "plot_h0_hat.csv", "plot_h0.csv"] {
        let (_, rows) = read_csv(&dir.path().join(f));
        assert_eq!(rows.len(), 2000, "{f}");
    }
    let (_, rows) = read_csv(&dir.path().join("plot_fejer.csv"));
    let (argmax, max) = rows
        .iter()
        .map(|r| (r[0].parse::<f64>().unwrap(), r[1].parse::<f64>().unwrap()))
        .fold((f64::NAN, f64::NEG_INFINITY), |acc, p| if p.1 > acc.1 { p } else { acc });
    assert_eq!((argmax, max), (0.0, 1.0));
    for r in &rows {
        assert!(r[2].parse::<f64>().unwrap() >= r[1].parse::<f64>().unwrap());
    }
    let (_, rows) = read_csv(&dir.path().join("plot_h0.csv"));
    let at_zero = rows.iter().find(|r| r[0].parse::<f64>().unwrap() == 0.0).unwrap();
    assert!((at_zero[1].parse::<f64>().unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn l2_zeros_match_library() {
    let v = json(&["zeros", "--pipeline", "l2", "--d", "60"]);
    let sol = bandlimit::solve_l2(60, 1e-10).unwrap();
    let lib = bandlimit::extremizer_zeros(&sol, 10).unwrap();
    let cli: Vec<f64> = v["result"]["zeros"].as_array().unwrap().iter().map(num).collect();
    assert_eq!(cli, lib);
}
