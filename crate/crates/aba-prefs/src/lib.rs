//! Assumption-based argumentation (ABA and ABA⁺) with preference elicitation.
//!
//! The crate models flat ABA frameworks — a language, inference rules, a set
//! of defeasible assumptions and a contrary map — together with the
//! preference-aware attack relation of ABA⁺, where a preorder over
//! assumptions blocks some attacks and reverses others.
//!
//! On top of the forward reasoning machinery (deductions, attacks, extension
//! enumeration under conflict-free / admissible / preferred / stable /
//! complete / grounded semantics) the crate solves the inverse problem:
//! given a conflict-free extension, enumerate every set of atomic
//! preferences over assumptions under which that extension is acceptable.
//! [`analysis`] compares the elicited sets across extensions and [`oracle`]
//! verifies elicitation output by brute force over all preorders.
//!
//! Everything is deterministic: identifiers are interned in lexicographic
//! order and all collections iterate canonically, so repeated runs produce
//! byte-identical output.

pub mod analysis;
pub mod derivation;
pub mod elicitation;
mod error;
pub mod framework;
pub mod oracle;
pub mod preference;
pub mod semantics;

pub use derivation::{attacks, conclusions, lt_attacks, supports, AttackKind, SupportTable};
pub use elicitation::{compute_all_preferences, Case3Mode, Elicitation};
pub use error::Error;
pub use framework::{
    AssumptionId, AssumptionSet, Framework, FrameworkBuilder, Rule, SentenceId, ValidationReport,
    Violation,
};
pub use preference::{
    canonicalize, close_preferences, AtomicPreference, PSet, PairStance, Preorder, PreferenceSet,
    Relation,
};
pub use semantics::{defends, enumerate_extensions, is_conflict_free, Extension, Semantics};

pub type Result<T> = std::result::Result<T, Error>;
