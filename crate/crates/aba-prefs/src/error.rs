use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A declared strict preference is contradicted by the transitive
    /// closure of the whole preference set.
    #[error("inconsistent preferences: {detail}")]
    Inconsistency { detail: String },

    /// Extension enumeration was asked to sweep more assumptions than the
    /// configured cap allows.
    #[error("{assumptions} assumptions exceed the enumeration cap of {cap}; raise the cap to force the sweep")]
    Resource { assumptions: usize, cap: usize },

    /// The preorder oracle only sweeps tiny frameworks.
    #[error("preorder enumeration over {n} assumptions exceeds the oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    /// Elicitation requires a conflict-free extension.
    #[error("extension {extension} attacks itself and admits no preferences")]
    NotConflictFree { extension: String },

    /// A name does not denote an assumption of the framework.
    #[error("unknown assumption '{name}'")]
    UnknownAssumption { name: String },

    /// A name does not denote a sentence of the framework's language.
    #[error("unknown sentence '{name}'")]
    UnknownSentence { name: String },

    /// Assumption sets are stored as 64-bit masks.
    #[error("framework declares {count} assumptions; at most {max} are supported")]
    TooManyAssumptions { count: usize, max: usize },

    /// Two declarations assign different contraries to one assumption.
    #[error("conflicting contraries for assumption '{assumption}': '{first}' vs '{second}'")]
    ConflictingContrary {
        assumption: String,
        first: String,
        second: String,
    },

    /// A raw preference set relates one pair of assumptions twice.
    #[error("incoherent preferences: {detail}")]
    IncoherentPreferences { detail: String },

    /// A textual preference atom could not be parsed.
    #[error("malformed preference '{input}': {detail}")]
    MalformedPreference { input: String, detail: String },
}
