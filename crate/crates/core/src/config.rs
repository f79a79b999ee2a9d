//! Engine settings, optionally read from a TOML file.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::autiso::{DEFAULT_STREAM_BOUND, DEFAULT_TUPLE_LENGTH, MAX_TUPLE_LENGTH};
use crate::canon::DEFAULT_EXHAUSTION_BOUND;
use crate::error::{Error, Result};
use crate::search::SearchConfig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineConfig {
    /// Prefix depth up to which the search tests minimality.
    pub mindepth: Option<usize>,
    /// Largest group streamed element by element.
    pub stream_bound: u64,
    pub threads: Option<usize>,
    /// Largest row count handled by exhaustive minimization.
    pub exhaustion_bound: usize,
    /// Tuple length for automorphism certification.
    pub tuple_length: usize,
    /// Largest absolute entry allowed in searched matrices.
    pub entry_cap: Option<u64>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            mindepth: None,
            stream_bound: DEFAULT_STREAM_BOUND,
            threads: None,
            exhaustion_bound: DEFAULT_EXHAUSTION_BOUND,
            tuple_length: DEFAULT_TUPLE_LENGTH,
            entry_cap: None,
        }
    }
}

impl EngineConfig {
    pub fn from_toml(s: &str) -> Result<Self> {
        let c: EngineConfig = toml::from_str(s).map_err(|e| Error::Parse(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.tuple_length == 0 || self.tuple_length > MAX_TUPLE_LENGTH {
            return Err(Error::InvalidArgument(format!("tuple_length must lie in 1..={MAX_TUPLE_LENGTH}")));
        }
        if self.exhaustion_bound == 0 {
            return Err(Error::InvalidArgument("exhaustion_bound must be positive".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidArgument("threads must be positive".into()));
        }
        Ok(())
    }

    pub fn search(&self) -> SearchConfig {
        SearchConfig { mindepth: self.mindepth, entry_cap: self.entry_cap, threads: self.threads }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_files() {
        let c = EngineConfig::from_toml("mindepth = 3\nthreads = 2\n").unwrap();
        assert_eq!(c.mindepth, Some(3));
        assert_eq!(c.threads, Some(2));
        assert_eq!(c.stream_bound, DEFAULT_STREAM_BOUND);
        assert_eq!(EngineConfig::from_toml("").unwrap(), EngineConfig::default());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(EngineConfig::from_toml("tuple_length = 9").is_err());
        assert!(EngineConfig::from_toml("unknown = 1").is_err());
        assert!(EngineConfig::from_toml("threads = 0").is_err());
    }
}
