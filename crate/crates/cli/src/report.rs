//! The JSON report every subcommand emits.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use treealpha_core::caps::Caps;
use treealpha_core::layered::ConstantsMode;

/// One checked claim. `anchor` names the property by its role, e.g.
/// `balanced-separator` or `layer-stability-bound`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assertion {
    pub anchor: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Assertion {
    pub fn new(anchor: &str, ok: bool, detail: impl Into<String>) -> Self {
        Assertion { anchor: anchor.into(), ok, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 over every input file and generator parameter, in order.
    pub inputs_digest: String,
    pub seed: u64,
    pub mode: ConstantsMode,
    pub caps: Caps,
    pub outputs: Value,
    pub assertions: Vec<Assertion>,
    pub passed: usize,
    pub failed: usize,
    pub ok: bool,
    pub wall_clock_ms: u128,
}

impl RunReport {
    /// Human-readable form: a status line, one line per assertion, then the
    /// outputs.
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{}: {} ({}/{} assertions)\n",
            self.command,
            if self.ok { "ok" } else { "FAILED" },
            self.passed,
            self.passed + self.failed
        );
        for a in &self.assertions {
            let tag = if a.ok { "PASS" } else { "FAIL" };
            if a.detail.is_empty() {
                out += &format!("  {tag} {}\n", a.anchor);
            } else {
                out += &format!("  {tag} {}: {}\n", a.anchor, a.detail);
            }
        }
        out += &serde_json::to_string_pretty(&self.outputs).unwrap_or_default();
        out.push('\n');
        out
    }
}

/// Accumulates labelled input chunks into one digest.
#[derive(Default)]
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn add(&mut self, label: &str, bytes: &[u8]) {
        self.hasher.update((label.len() as u64).to_le_bytes());
        self.hasher.update(label.as_bytes());
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn digest(self) -> String {
        self.hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}
