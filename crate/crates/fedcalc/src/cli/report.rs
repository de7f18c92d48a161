use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One check result.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub suite: &'static str,
    pub name: String,
    /// The identity being checked.
    pub anchor: &'static str,
    pub status: Status,
    pub residual_terms: usize,
    pub max_residual_degree: Option<u32>,
    pub probes: usize,
    /// Offending input, for failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    pub wall_ms: f64,
}

impl Record {
    /// The record without timing, as hashed.
    fn canonical(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("object").remove("wall_ms");
        v
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub scenario: String,
    pub seed: u64,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn summary(&self, scenario: &str, seed: u64) -> Summary {
        let passed = self.records.iter().filter(|r| r.status == Status::Pass).count();
        Summary {
            scenario: scenario.into(),
            seed,
            total: self.records.len(),
            passed,
            failed: self.records.len() - passed,
        }
    }

    /// SHA-256 over the canonical records (timing removed), one JSON line each.
    pub fn canonical_hash(&self, scenario: &str, seed: u64) -> String {
        let mut h = Sha256::new();
        for r in &self.records {
            h.update(serde_json::to_string(&r.canonical()).expect("serializable").as_bytes());
            h.update(b"\n");
        }
        h.update(serde_json::to_string(&self.summary(scenario, seed)).expect("serializable").as_bytes());
        hex::encode(h.finalize())
    }

    /// Line-delimited records, then the summary and the hash line.
    pub fn to_jsonl(&self, scenario: &str, seed: u64) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        out.push_str(&serde_json::json!({ "summary": self.summary(scenario, seed) }).to_string());
        out.push('\n');
        out.push_str(&serde_json::json!({ "canonical_sha256": self.canonical_hash(scenario, seed) }).to_string());
        out.push('\n');
        out
    }

    pub fn to_json(&self, scenario: &str, seed: u64) -> String {
        let doc = serde_json::json!({
            "records": self.records,
            "summary": self.summary(scenario, seed),
            "canonical_sha256": self.canonical_hash(scenario, seed),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    /// Human-readable lines for stderr.
    pub fn human(&self, scenario: &str, seed: u64) -> String {
        let mut out = String::new();
        for r in &self.records {
            let mark = if r.status == Status::Pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{mark}  {}/{}  [{}]  residual terms {}\n",
                r.suite, r.name, r.anchor, r.residual_terms
            ));
            if let (Status::Fail, Some(input)) = (r.status, &r.input) {
                out.push_str(&format!("      input: {input}\n"));
            }
        }
        let s = self.summary(scenario, seed);
        out.push_str(&format!("{}: {}/{} passed\n", s.scenario, s.passed, s.total));
        out
    }
}
