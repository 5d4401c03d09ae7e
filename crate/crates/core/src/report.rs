//! Versioned JSON reports shared by the command-line front end and the
//! fixture verifier.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::bounds::ConstantPack;
use crate::error::Error;
use crate::logvalue::LogValue;

pub const SCHEMA_VERSION: u32 = 1;

/// Process outcome; the discriminant is the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    /// Refuted, not found, or a verification failed.
    NotFound = 1,
    BadInput = 2,
    Defect = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::NotFound => "not_found",
            Status::BadInput => "bad_input",
            Status::Defect => "defect",
        }
    }

    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::Input(_) | Error::Parse(_) | Error::Precondition(_) | Error::DegreeOne => Status::BadInput,
            Error::SearchExhausted(_) => Status::NotFound,
            Error::Defect(_) => Status::Defect,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({"check": self.name, "passed": self.passed, "detail": self.detail})
    }
}

/// One invocation: inputs, outputs, certificates and the verification transcript.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub certificates: Map<String, Value>,
    pub verification: Vec<Check>,
    pub status: Status,
    pub error: Option<String>,
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value) -> Self {
        RunReport {
            command: command.to_string(),
            inputs,
            outputs: Value::Null,
            certificates: Map::new(),
            verification: vec![],
            status: Status::Ok,
            error: None,
            timing_ms: None,
        }
    }

    pub fn with_pack(mut self, pack: &ConstantPack) -> Self {
        self.certificates.insert("pack".into(), pack.to_json());
        self
    }

    pub fn certify(&mut self, key: &str, v: Value) {
        self.certificates.insert(key.to_string(), v);
    }

    /// Records a check; a failed check downgrades an `Ok` status.
    pub fn check(&mut self, c: Check) {
        if !c.passed && self.status == Status::Ok {
            self.status = Status::NotFound;
        }
        self.verification.push(c);
    }

    pub fn fail(&mut self, e: &Error) {
        self.status = Status::of_error(e);
        self.error = Some(e.to_string());
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "status": self.status.name(),
            "inputs": self.inputs,
            "outputs": self.outputs,
            "certificates": Value::Object(self.certificates.clone()),
            "verification": self.verification.iter().map(Check::to_json).collect::<Vec<_>>(),
        });
        if let Some(e) = &self.error {
            v["error"] = json!(e);
        }
        if let Some(t) = self.timing_ms {
            v["timing_ms"] = json!(t);
        }
        v
    }
}

/// Integer as a decimal string with its `log10`.
pub fn big_json(v: &BigInt) -> Value {
    let a = num_traits::Signed::abs(v);
    json!({"value": v.to_string(), "log10": LogValue::from_bigint(&a).log10_string()})
}

/// A possibly huge magnitude: decimal rendering with `ln` and `log10`.
pub fn log_json(v: &LogValue) -> Value {
    json!({"value": v.to_decimal_string(), "ln": v.ln_string(), "log10": v.log10_string()})
}

/// Top-level keys every report carries.
pub const REQUIRED_KEYS: [&str; 7] = ["schema", "command", "status", "inputs", "outputs", "certificates", "verification"];

/// Structural check of a report against the published layout.
pub fn validate_report(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("report is not an object")?;
    for k in REQUIRED_KEYS {
        if !obj.contains_key(k) {
            return Err(format!("missing key {k}"));
        }
    }
    if obj["schema"] != json!(SCHEMA_VERSION) {
        return Err("wrong schema version".into());
    }
    if !matches!(obj["status"].as_str(), Some("ok" | "not_found" | "bad_input" | "defect")) {
        return Err("bad status".into());
    }
    if !obj["certificates"].is_object() {
        return Err("certificates must be an object".into());
    }
    let ver = obj["verification"].as_array().ok_or("verification must be an array")?;
    for c in ver {
        if !(c["check"].is_string() && c["passed"].is_boolean() && c["detail"].is_string()) {
            return Err("malformed verification entry".into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let mut r = RunReport::new("demo", json!({"x": 1})).with_pack(&ConstantPack::default());
        r.check(Check::new("fine", true, ""));
        assert_eq!(r.status, Status::Ok);
        r.check(Check::new("broken", false, "tampered"));
        assert_eq!(r.status.code(), 1);
        let v = r.to_json();
        validate_report(&v).unwrap();
        assert!(validate_report(&json!({"schema": 1})).is_err());
        assert_eq!(big_json(&BigInt::from(1000))["log10"], json!("3.000000000000e0"));
    }

    #[test]
    fn error_codes() {
        assert_eq!(Status::of_error(&Error::input("x")).code(), 2);
        assert_eq!(Status::of_error(&Error::SearchExhausted("x".into())).code(), 1);
        assert_eq!(Status::of_error(&Error::defect("x")).code(), 3);
    }
}
