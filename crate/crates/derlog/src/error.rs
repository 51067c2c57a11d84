use thiserror::Error;

/// Errors surfaced by the engine. `Inconsistency` is reserved for
/// conditions that can only arise from an engine defect (a containment
/// that must hold by construction failing, or the two quasi-homogeneity
/// criteria disagreeing), and is mapped to its own process exit code by
/// the CLI.
#[derive(Debug, Error)]
pub enum EngineError {
    #[error("parse error at {line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },

    #[error("the divisor is zero")]
    ZeroDivisor,

    #[error("the divisor does not vanish at the origin")]
    NotVanishingAtOrigin,

    #[error("the divisor is not reduced (repeated factor detected)")]
    NotReduced,

    #[error("no polynomial Saito basis found among {candidates} candidates (degree bound {bound})")]
    SaitoSearchFailed { candidates: usize, bound: u32 },

    #[error("quasi-homogeneity criteria disagree: {0}")]
    CriteriaDisagree(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<EngineError>,
    },

    #[error("{0}")]
    Input(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl EngineError {
    pub fn at_stage(self, stage: &'static str) -> EngineError {
        EngineError::Stage { stage, source: Box::new(self) }
    }

    /// Whether the error denotes an internal inconsistency (exit code 3)
    /// rather than bad input (exit code 2).
    pub fn is_internal(&self) -> bool {
        match self {
            EngineError::Inconsistency(_) | EngineError::CriteriaDisagree(_) => true,
            EngineError::Stage { source, .. } => source.is_internal(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, EngineError>;
