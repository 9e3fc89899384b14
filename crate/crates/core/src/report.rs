//! Check records, rendering, and the keyed random streams used by sweeps.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

/// One verified contract: `{suite, case, inputs, measured, bound, pass}`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Record {
    pub suite: String,
    pub case: String,
    pub inputs: Value,
    pub measured: Value,
    pub bound: Value,
    pub pass: bool,
}

impl Record {
    pub fn new(suite: &str, case: impl Into<String>, inputs: Value, measured: Value, bound: Value, pass: bool) -> Self {
        Self { suite: suite.into(), case: case.into(), inputs, measured, bound, pass }
    }

    pub fn json(&self) -> String {
        serde_json::to_string(self).expect("record serialises")
    }

    pub fn csv_header() -> &'static str {
        "suite,case,inputs,measured,bound,pass"
    }

    pub fn csv(&self) -> String {
        let q = |v: &Value| {
            let s = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            format!("\"{}\"", s.replace('"', "\"\""))
        };
        format!(
            "{},{},{},{},{},{}",
            self.suite,
            q(&Value::String(self.case.clone())),
            q(&self.inputs),
            q(&self.measured),
            q(&self.bound),
            self.pass
        )
    }
}

/// Random stream for case `case` under run seed `seed`. Streams for distinct
/// cases are independent, so sweeps can be evaluated in any order.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(case);
    r
}
