use crate::graph::CliqueWitness;
use serde_json::json;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("capacity exceeded in {what}: needs {needed}, budget {budget}")]
    Capacity { what: String, needed: u128, budget: u128 },

    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("decomposition failed: {condition}")]
    DecompositionFailed { condition: String },

    #[error("blue K_{} found", .0.members.len())]
    BlueCliqueFound(CliqueWitness),

    #[error("retries exhausted after {attempts} attempts (worst vertex {worst_vertex} has {worst_degree} > {bound})")]
    RetriesExhausted { attempts: usize, worst_vertex: usize, worst_degree: usize, bound: f64 },

    #[error("parameters infeasible: {condition} (have {have}, need {need})")]
    ParametersInfeasible { condition: String, have: f64, need: f64 },

    #[error("embedding stuck at cube vertex {cube_vertex}: {candidates} candidates all excluded")]
    EmbeddingStuck { cube_vertex: u64, candidates: usize },

    #[error("exception set too large: {size} > {bound} (dominated by pair {pair:?})")]
    ExceptionSetOverflow { size: usize, bound: f64, pair: (usize, usize) },

    #[error("packing shortfall on walk edge {edge}: found {found} of {needed}")]
    PackingShortfall { edge: usize, found: usize, needed: usize },

    #[error("size condition violated: {0}")]
    SizeConditionViolated(String),

    #[error("Q_m extension stuck in copy {copy} (set {set} exhausted)")]
    ExtensionStuck { copy: usize, set: usize },

    #[error("blue clique in the quotient could not be lifted")]
    QuotientCliqueUnliftable,

    #[error("precondition violated: {condition} (have {have}, need {need})")]
    PreconditionViolated { condition: String, have: f64, need: f64 },

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),

    #[error("{stage}: {source}")]
    Staged { stage: String, source: Box<Error> },
}

impl Error {
    /// Wrap with the name of the pipeline stage that raised it.
    pub fn at(self, stage: &str) -> Error {
        Error::Staged { stage: stage.to_string(), source: Box::new(self) }
    }

    /// The error beneath any stage tags.
    pub fn root(&self) -> &Error {
        match self {
            Error::Staged { source, .. } => source.root(),
            e => e,
        }
    }

    /// Short machine-readable error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Capacity { .. } => "capacity",
            Error::BudgetExceeded { .. } => "budget-exceeded",
            Error::DecompositionFailed { .. } => "decomposition-failed",
            Error::BlueCliqueFound(_) => "blue-clique-found",
            Error::RetriesExhausted { .. } => "retries-exhausted",
            Error::ParametersInfeasible { .. } => "parameters-infeasible",
            Error::EmbeddingStuck { .. } => "embedding-stuck",
            Error::ExceptionSetOverflow { .. } => "exception-set-overflow",
            Error::PackingShortfall { .. } => "packing-shortfall",
            Error::SizeConditionViolated(_) => "size-condition-violated",
            Error::ExtensionStuck { .. } => "extension-stuck",
            Error::QuotientCliqueUnliftable => "quotient-clique-unliftable",
            Error::PreconditionViolated { .. } => "precondition-violated",
            Error::Internal(_) => "internal",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
            Error::Staged { source, .. } => source.kind(),
        }
    }

    /// One JSON object for the CLI error channel.
    pub fn to_json(&self, stage: &str) -> serde_json::Value {
        if let Error::Staged { stage: inner, source } = self {
            return source.to_json(&format!("{stage}/{inner}"));
        }
        let margins = match self {
            Error::ParametersInfeasible { have, need, .. }
            | Error::PreconditionViolated { have, need, .. } => json!({ "have": have, "need": need }),
            Error::RetriesExhausted { worst_degree, bound, .. } => {
                json!({ "have": worst_degree, "need": bound })
            }
            Error::ExceptionSetOverflow { size, bound, .. } => json!({ "have": size, "need": bound }),
            Error::PackingShortfall { found, needed, .. } => json!({ "have": found, "need": needed }),
            _ => json!({}),
        };
        json!({
            "stage": stage,
            "kind": self.kind(),
            "condition": self.to_string(),
            "margins": margins,
        })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
