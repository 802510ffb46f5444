//! Run reports: command echo, input hashes and per-check results.

use lpi_core::scalar::FieldSpec;
use lpi_core::suite::MANIFEST_VERSION;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Default)]
pub struct RunReport {
    /// Arguments after the program name.
    pub command: Vec<String>,
    /// `(name, bytes)` of every input that shaped the run.
    pub inputs: Vec<(String, Vec<u8>)>,
    pub field: Option<FieldSpec>,
    /// One object per check. Objects with a `holds` key are assertions,
    /// the rest are informational.
    pub results: Vec<Value>,
    pub elapsed_ms: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl RunReport {
    pub fn holds(&self) -> bool {
        self.results.iter().all(|r| r.get("holds").and_then(Value::as_bool).unwrap_or(true))
    }

    pub fn to_json(&self) -> Value {
        let hashes: Vec<Value> =
            self.inputs.iter().map(|(name, bytes)| json!({ "name": name, "sha256": sha256_hex(bytes) })).collect();
        json!({
            "command": self.command,
            "inputHashes": hashes,
            "field": self.field.map(|f| f.to_string()),
            "results": self.results,
            "holds": self.holds(),
            "toolVersion": TOOL_VERSION,
            "manifestVersion": MANIFEST_VERSION,
            "elapsedMs": self.elapsed_ms,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let Some(obj) = r.as_object() else { continue };
            let tag = match obj.get("holds").and_then(Value::as_bool) {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "INFO",
            };
            let title = match (obj.get("instance").and_then(Value::as_str), obj.get("assertion").and_then(Value::as_str)) {
                (Some(i), Some(a)) => format!("[{i}] {a}"),
                (None, Some(a)) => a.to_string(),
                _ => String::new(),
            };
            out.push_str(&format!("{tag} {title}\n"));
            write_fields(&mut out, obj);
        }
        out.push_str(&format!(
            "{} ({} ms, lpi-forge {TOOL_VERSION}, manifest {MANIFEST_VERSION})\n",
            if self.holds() { "all assertions hold" } else { "some assertions failed" },
            self.elapsed_ms
        ));
        out
    }
}

const SKIP: [&str; 4] = ["holds", "instance", "assertion", "suite"];

fn write_fields(out: &mut String, obj: &Map<String, Value>) {
    for (k, v) in obj {
        if SKIP.contains(&k.as_str()) || v.is_null() {
            continue;
        }
        match v {
            Value::String(s) => out.push_str(&format!("    {k}: {s}\n")),
            Value::Array(items) if items.iter().all(Value::is_string) && !items.is_empty() => {
                out.push_str(&format!("    {k}:\n"));
                for i in items {
                    out.push_str(&format!("      {}\n", i.as_str().unwrap_or_default()));
                }
            }
            other => out.push_str(&format!("    {k}: {other}\n")),
        }
    }
}
