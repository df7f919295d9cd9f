//! Result schema, version 1.
//!
//! A result file is `{"v": 1, "records": [...]}`. Each record carries the
//! fields of [`BenchRecord`] under the same names. `std_ms` is the
//! population standard deviation of `samples_ms`. `result_checksum` is
//! written as a decimal string so 64-bit values survive JavaScript number
//! parsing.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::{rel_close, stats};
use crate::workload::WorkloadId;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Native,
    Wasm,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Native => "native",
            Target::Wasm => "wasm",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub workload: WorkloadId,
    pub params: BTreeMap<String, u64>,
    pub env: String,
    pub target: Target,
    pub seed: u64,
    pub repetitions: u64,
    pub samples_ms: Vec<f64>,
    pub mean_ms: f64,
    pub std_ms: f64,
    #[serde(with = "decimal_string")]
    pub result_checksum: u64,
    pub timestamp: Option<String>,
    pub host: Option<String>,
}

impl BenchRecord {
    /// True when `mean_ms` and `std_ms` agree with `samples_ms` within
    /// `tol` relative.
    pub fn stats_consistent(&self, tol: f64) -> bool {
        match stats(&self.samples_ms) {
            Ok((mean, std)) => {
                self.samples_ms.len() as u64 == self.repetitions
                    && rel_close(mean, self.mean_ms, tol)
                    && rel_close(std, self.std_ms, tol)
            }
            Err(_) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub v: u64,
    pub records: Vec<BenchRecord>,
}

impl ResultFile {
    pub fn new(records: Vec<BenchRecord>) -> Self {
        Self {
            v: SCHEMA_VERSION,
            records,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Parses a result file, checking the schema version before anything
    /// else.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let found = value
            .get("v")
            .ok_or_else(|| Error::Schema("missing schema version field 'v'".into()))?
            .as_u64()
            .ok_or_else(|| Error::Schema("schema version 'v' is not an integer".into()))?;
        if found != SCHEMA_VERSION {
            return Err(Error::SchemaVersion {
                found,
                expected: SCHEMA_VERSION,
            });
        }
        let file: ResultFile =
            serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
        for r in &file.records {
            if r.samples_ms.len() as u64 != r.repetitions {
                return Err(Error::Schema(format!(
                    "{} / {}: {} samples for {} repetitions",
                    r.workload,
                    r.env,
                    r.samples_ms.len(),
                    r.repetitions
                )));
            }
        }
        Ok(file)
    }
}

/// Column order of [`records_to_csv`].
pub const RECORD_CSV_HEADER: &str =
    "workload,env,target,seed,repetitions,mean_ms,std_ms,result_checksum,params,samples_ms";

/// One row per record. `params` is `key=value` pairs and `samples_ms` the
/// samples, both joined with `;`.
pub fn records_to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(RECORD_CSV_HEADER);
    out.push('\n');
    for r in records {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let samples: Vec<String> = r.samples_ms.iter().map(f64::to_string).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.workload,
            csv_field(&r.env),
            r.target,
            r.seed,
            r.repetitions,
            r.mean_ms,
            r.std_ms,
            r.result_checksum,
            params.join(";"),
            samples.join(";")
        ));
    }
    out
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

mod decimal_string {
    use serde::{Deserialize, Deserializer, Serializer, de};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Number(u64),
        }
        match Repr::deserialize(d)? {
            Repr::Text(s) => s.parse().map_err(de::Error::custom),
            Repr::Number(n) => Ok(n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn record(samples: Vec<f64>) -> BenchRecord {
        let (mean_ms, std_ms) = stats(&samples).unwrap();
        BenchRecord {
            workload: WorkloadId::RecFib,
            params: BTreeMap::from([("n".into(), 10), ("inner_iterations".into(), 1)]),
            env: "native".into(),
            target: Target::Native,
            seed: 42,
            repetitions: samples.len() as u64,
            samples_ms: samples,
            mean_ms,
            std_ms,
            result_checksum: u64::MAX - 1,
            timestamp: None,
            host: None,
        }
    }

    #[test]
    fn field_names_are_stable() {
        let json = ResultFile::new(vec![record(vec![1.0, 2.0])]).to_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["v"], 1);
        let keys: Vec<&String> = v["records"][0].as_object().unwrap().keys().collect();
        let mut want = vec![
            "workload", "params", "env", "target", "seed", "repetitions", "samples_ms",
            "mean_ms", "std_ms", "result_checksum", "timestamp", "host",
        ];
        want.sort_unstable();
        assert_eq!(keys, want);
        assert_eq!(v["records"][0]["result_checksum"], "18446744073709551614");
    }

    #[test]
    fn version_checked_first() {
        let err = ResultFile::from_json(r#"{"v": 2, "records": 7}"#).unwrap_err();
        assert!(matches!(err, Error::SchemaVersion { found: 2, expected: 1 }));
        assert!(matches!(ResultFile::from_json(r#"{"records": []}"#), Err(Error::Schema(_))));
        assert!(matches!(ResultFile::from_json("not json"), Err(Error::Json(_))));
    }

    #[test]
    fn sample_count_checked() {
        let mut r = record(vec![1.0, 2.0]);
        r.repetitions = 3;
        let json = serde_json::to_string(&ResultFile::new(vec![r])).unwrap();
        assert!(matches!(ResultFile::from_json(&json), Err(Error::Schema(_))));
    }

    #[test]
    fn numeric_checksum_accepted() {
        let mut v = serde_json::to_value(ResultFile::new(vec![record(vec![1.0])])).unwrap();
        v["records"][0]["result_checksum"] = serde_json::json!(55);
        let file = ResultFile::from_json(&v.to_string()).unwrap();
        assert_eq!(file.records[0].result_checksum, 55);
    }

    #[test]
    fn csv_layout() {
        let csv = records_to_csv(&[record(vec![1.0, 3.0])]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(RECORD_CSV_HEADER));
        assert_eq!(
            lines.next(),
            Some("rec_fib,native,native,42,2,2,1,18446744073709551614,inner_iterations=1;n=10,1;3")
        );
        assert_eq!(csv_field("a,b"), "\"a,b\"");
    }

    proptest! {
        #[test]
        fn json_round_trip(samples in proptest::collection::vec(0.0f64..1e6, 1..12), checksum: u64, seed: u64) {
            let mut r = record(samples);
            r.result_checksum = checksum;
            r.seed = seed;
            r.timestamp = Some("2026-01-01T00:00:00Z".into());
            let file = ResultFile::new(vec![r]);
            let back = ResultFile::from_json(&file.to_json().unwrap()).unwrap();
            prop_assert_eq!(back, file);
        }
    }
}
