//! Size caps for every exhaustive routine. Routines refuse rather than
//! approximate when an input exceeds its cap.
//!
//! Defaults can be overridden process-wide through `TREEALPHA_CAP_OVERRIDE`,
//! e.g. `TREEALPHA_CAP_OVERRIDE="alpha=50,induced=14"`.

use std::sync::OnceLock;

use thiserror::Error;

pub const CAP_ENV: &str = "TREEALPHA_CAP_OVERRIDE";

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Caps {
    /// Vertices handed to the exact stability solver.
    pub alpha: usize,
    /// Pattern vertices for generic induced-subgraph search.
    pub induced: usize,
    /// Candidate cores examined by the small-core search.
    pub mincore_subsets: u64,
    /// Vertices for exact treewidth.
    pub treewidth: usize,
    /// Vertices for the induced-tree search behind constricted sets.
    pub constricted: usize,
    /// Vertices for exact tree independence number.
    pub tree_alpha: usize,
    /// Vertices for brute-force MWIS.
    pub mwis_brute: usize,
    /// Total independent-subset states across bags in the MWIS DP.
    pub mwis_states: u64,
    /// Vertices for exhaustive induced-path enumeration.
    pub path_enum: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            alpha: 40,
            induced: 12,
            mincore_subsets: 5_000_000,
            treewidth: 20,
            constricted: 14,
            tree_alpha: 10,
            mwis_brute: 24,
            mwis_states: 2_000_000,
            path_enum: 18,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CapsError {
    #[error("malformed cap override entry {0:?}")]
    Malformed(String),
    #[error("unknown cap {0:?}")]
    Unknown(String),
}

impl Caps {
    /// Apply `name=value` pairs separated by commas.
    pub fn apply_overrides(&mut self, spec: &str) -> Result<(), CapsError> {
        for entry in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) =
                entry.split_once('=').ok_or_else(|| CapsError::Malformed(entry.to_string()))?;
            let value: u64 =
                value.trim().parse().map_err(|_| CapsError::Malformed(entry.to_string()))?;
            let as_usize = value as usize;
            match name.trim().replace('-', "_").as_str() {
                "alpha" => self.alpha = as_usize,
                "induced" => self.induced = as_usize,
                "mincore" | "mincore_subsets" => self.mincore_subsets = value,
                "treewidth" => self.treewidth = as_usize,
                "constricted" => self.constricted = as_usize,
                "tree_alpha" => self.tree_alpha = as_usize,
                "mwis" | "mwis_brute" => self.mwis_brute = as_usize,
                "mwis_states" => self.mwis_states = value,
                "path_enum" => self.path_enum = as_usize,
                other => return Err(CapsError::Unknown(other.to_string())),
            }
        }
        // The bitmask solvers have hard ceilings regardless of configuration.
        self.alpha = self.alpha.min(128);
        self.treewidth = self.treewidth.min(24);
        self.mwis_brute = self.mwis_brute.min(30);
        Ok(())
    }

    /// Defaults plus the environment override, read once per process.
    /// A malformed override is ignored with a warning on stderr.
    pub fn global() -> &'static Caps {
        static GLOBAL: OnceLock<Caps> = OnceLock::new();
        GLOBAL.get_or_init(|| {
            let mut caps = Caps::default();
            if let Ok(spec) = std::env::var(CAP_ENV) {
                if let Err(e) = caps.apply_overrides(&spec) {
                    eprintln!("warning: ignoring {CAP_ENV}: {e}");
                    caps = Caps::default();
                }
            }
            caps
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let mut c = Caps::default();
        c.apply_overrides("alpha=50, induced=14,mincore=10").unwrap();
        assert_eq!((c.alpha, c.induced, c.mincore_subsets), (50, 14, 10));
        assert!(c.apply_overrides("bogus=1").is_err());
        assert!(c.apply_overrides("alpha").is_err());
        c.apply_overrides("alpha=1000").unwrap();
        assert_eq!(c.alpha, 128);
    }
}
