use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitSystem {
    /// Lengths in units of r₀, energies ε in 1/r₀².
    NaturalR0,
    Si,
}

impl fmt::Display for UnitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitSystem::NaturalR0 => "natural_r0",
            UnitSystem::Si => "si",
        })
    }
}

/// Provenance block embedded in every output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub tool_version: String,
    pub unit_system: UnitSystem,
    /// ISO-8601, UTC.
    pub timestamp: String,
    pub warnings: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, unit_system: UnitSystem) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            unit_system,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            warnings: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn param_num(self, key: &str, value: f64) -> Self {
        self.param(key, crate::report::fmt_num(value))
    }
}
