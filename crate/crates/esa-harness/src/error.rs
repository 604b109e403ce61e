use thiserror::Error;

/// Harness-level failures, split so the command line can distinguish bad
/// configuration (exit 1) from runtime trouble (exit 2).
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o failure on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Gauss(#[from] esa_gauss::GaussError),

    #[error(transparent)]
    Vgmm(#[from] esa_vgmm::VgmmError),

    #[error(transparent)]
    Erm(#[from] esa_erm::ErmError),

    #[error(transparent)]
    Engine(#[from] esa_core::EsaError),
}

impl HarnessError {
    /// True when the failure is a user-configuration problem rather than a
    /// runtime one.
    pub fn is_config(&self) -> bool {
        matches!(self, HarnessError::Config(_))
    }
}
