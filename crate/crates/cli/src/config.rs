//! Suite configuration: defaults, optional config file, flag overrides.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use charfield_core::glq::Epsilon;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteConfig {
    pub corpus_dir: PathBuf,
    pub primes: Vec<u64>,
    pub max_alt_n: u32,
    /// (n, q, epsilon-sign) triples for the GL/GU scans.
    pub gl_set: Vec<(u32, u64, i64)>,
    pub enumeration_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output_path: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            corpus_dir: PathBuf::from("corpus"),
            primes: vec![2, 3, 5, 7, 11, 13],
            max_alt_n: 16,
            gl_set: [(2u32, 2u64), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)]
                .into_iter()
                .flat_map(|(n, q)| [(n, q, 1i64), (n, q, -1)])
                .collect(),
            enumeration_bound: 1_000_000,
            output_path: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> anyhow::Result<()> {
        anyhow::ensure!(!self.primes.is_empty(), "primes must be nonempty");
        anyhow::ensure!(
            (1..=20).contains(&self.max_alt_n),
            "maxAltN must be in 1..=20 (degrees overflow u64 beyond 20)"
        );
        anyhow::ensure!(self.enumeration_bound >= 1, "enumerationBound must be positive");
        for &(n, q, e) in &self.gl_set {
            anyhow::ensure!(n >= 1 && q >= 2, "bad glSet entry ({n}, {q}, {e})");
            Epsilon::from_sign(e).map_err(|err| anyhow::anyhow!("{err}"))?;
        }
        Ok(())
    }

    pub fn load_file(path: &std::path::Path) -> anyhow::Result<Self> {
        let bytes = std::fs::read(path)?;
        let config: SuiteConfig = serde_json::from_slice(&bytes)?;
        config.validate()?;
        Ok(config)
    }

    /// The configuration echoed into reports: everything that affects the
    /// computation (the output path does not).
    pub fn echo(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("config serializes");
        v.as_object_mut().expect("config is an object").remove("outputPath");
        v
    }
}
