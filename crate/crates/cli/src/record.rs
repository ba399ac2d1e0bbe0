use serde_json::{Map, Number, Value};
use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Numerical(_) => "numerical",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) | CliError::Numerical(m) => f.write_str(m),
        }
    }
}

impl From<bandlimit::Error> for CliError {
    fn from(e: bandlimit::Error) -> Self {
        use bandlimit::Error::*;
        match e {
            InvalidArgument(_) | NotPositive { .. } | SupportViolation { .. } => CliError::Config(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("output: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Config(format!("output: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Seventeen significant digits, enough to round-trip any binary64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A real as a JSON number keeping the text of [`fmt_f64`]; non-finite
/// values are a numerical failure.
pub fn real(x: f64) -> CliResult<Value> {
    if !x.is_finite() {
        return Err(CliError::Numerical(format!("non-finite result {x}")));
    }
    let n: Number = serde_json::from_str(&fmt_f64(x)).expect("formatted float parses");
    Ok(Value::Number(n))
}

pub fn reals(xs: &[f64]) -> CliResult<Value> {
    Ok(Value::Array(xs.iter().map(|&x| real(x)).collect::<CliResult<_>>()?))
}

/// `command`, `params`, `result`, `diagnostics`, `version`; keys are kept
/// sorted so that the serialization is stable.
#[derive(Debug)]
pub struct Record {
    pub command: &'static str,
    pub params: Map<String, Value>,
    pub result: Map<String, Value>,
    pub diagnostics: Map<String, Value>,
}

impl Record {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            params: Map::new(),
            result: Map::new(),
            diagnostics: Map::new(),
        }
    }

    pub fn param(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.params.insert(k.into(), v.into());
        self
    }

    pub fn result(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.result.insert(k.into(), v.into());
        self
    }

    pub fn diag(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.diagnostics.insert(k.into(), v.into());
        self
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), self.command.into());
        m.insert("params".into(), Value::Object(self.params.clone()));
        m.insert("result".into(), Value::Object(self.result.clone()));
        m.insert("diagnostics".into(), Value::Object(self.diagnostics.clone()));
        m.insert("version".into(), bandlimit::VERSION.into());
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("serializable");
        s.push('\n');
        s
    }

    /// Two columns `field,value`, nested keys joined by `.`.
    pub fn to_csv(&self) -> CliResult<String> {
        let mut rows = Vec::new();
        flatten("", &self.to_value(), &mut rows);
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["field", "value"])?;
        for (k, v) in rows {
            w.write_record([k, v])?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| CliError::Config(e.to_string()))?).expect("utf-8"))
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub fn error_json(command: &str, e: &CliError) -> String {
    let mut m = Map::new();
    m.insert("command".into(), command.into());
    m.insert("error".into(), serde_json::json!({ "kind": e.kind(), "message": e.to_string() }));
    m.insert("version".into(), bandlimit::VERSION.into());
    serde_json::to_string(&Value::Object(m)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_keep_seventeen_digits() {
        assert_eq!(real(0.5).unwrap().to_string(), "5.0000000000000000e-1");
        let v = real(std::f64::consts::PI).unwrap().to_string();
        assert_eq!(v.parse::<f64>().unwrap(), std::f64::consts::PI);
        assert!(real(f64::NAN).is_err());
    }

    #[test]
    fn csv_flattens_nested_fields() {
        let mut r = Record::new("zeros");
        r.param("count", 2).result("zeros", reals(&[1.5, 2.5]).unwrap());
        let csv = r.to_csv().unwrap();
        assert!(csv.starts_with("field,value\n"));
        assert!(csv.contains("result.zeros.1,2.5000000000000000e+0\n"));
        assert!(csv.contains("params.count,2\n"));
    }
}
