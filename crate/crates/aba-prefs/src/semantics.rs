//! Extension enumeration under six semantics, uniformly parameterized by a
//! preorder over assumptions. The identity preorder recovers the classical
//! semantics; any other preorder evaluates the preference-aware attack
//! relation instead.
//!
//! Enumeration is deliberately brute force over the `2^|A|` candidate sets
//! with an explicit cap: this code is an executable definition, not a
//! solver. `defends` likewise quantifies over every subset of `A`, matching
//! the definition literally.

use std::collections::BTreeSet;
use std::fmt;

use crate::derivation::{conclusions, AttackEvaluator, SupportTable};
use crate::error::Error;
use crate::framework::{AssumptionSet, Framework, SentenceId};
use crate::preference::Preorder;

/// Default cap on `|A|` for whole-powerset sweeps.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    ConflictFree,
    Admissible,
    Preferred,
    Stable,
    Complete,
    Grounded,
}

impl Semantics {
    pub const ALL: [Semantics; 6] = [
        Semantics::ConflictFree,
        Semantics::Admissible,
        Semantics::Preferred,
        Semantics::Stable,
        Semantics::Complete,
        Semantics::Grounded,
    ];

    /// Short name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Semantics::ConflictFree => "cf",
            Semantics::Admissible => "adm",
            Semantics::Preferred => "prf",
            Semantics::Stable => "stb",
            Semantics::Complete => "com",
            Semantics::Grounded => "grd",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<Self> {
        Semantics::ALL.iter().copied().find(|s| s.cli_name() == name)
    }

    pub fn long_name(self) -> &'static str {
        match self {
            Semantics::ConflictFree => "conflict-free",
            Semantics::Admissible => "admissible",
            Semantics::Preferred => "preferred",
            Semantics::Stable => "stable",
            Semantics::Complete => "complete",
            Semantics::Grounded => "grounded",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.long_name())
    }
}

/// An accepted set of assumptions together with its cached conclusions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Extension {
    pub assumptions: AssumptionSet,
    pub conclusions: BTreeSet<SentenceId>,
}

/// Conflict-freeness: `e` does not attack itself under the preorder.
pub fn is_conflict_free(
    framework: &Framework,
    preorder: &Preorder,
    e: AssumptionSet,
) -> bool {
    !AttackEvaluator::new(framework, preorder).kind(e, e).is_attack()
}

/// `e` defends `x` iff every subset of `A` attacking `x` is attacked by `e`.
pub fn defends(
    framework: &Framework,
    preorder: &Preorder,
    e: AssumptionSet,
    x: AssumptionSet,
) -> bool {
    let ev = AttackEvaluator::new(framework, preorder);
    defends_with(&ev, framework.full_set(), e, x)
}

fn defends_with(
    ev: &AttackEvaluator,
    universe: AssumptionSet,
    e: AssumptionSet,
    x: AssumptionSet,
) -> bool {
    AssumptionSet::subsets(universe).all(|b| !ev.attacks(b, x) || ev.attacks(e, b))
}

fn is_admissible(ev: &AttackEvaluator, universe: AssumptionSet, e: AssumptionSet) -> bool {
    !ev.attacks(e, e) && defends_with(ev, universe, e, e)
}

fn is_stable(ev: &AttackEvaluator, universe: AssumptionSet, e: AssumptionSet) -> bool {
    !ev.attacks(e, e)
        && universe
            .difference(e)
            .iter()
            .all(|b| ev.attacks(e, AssumptionSet::singleton(b)))
}

fn is_complete(ev: &AttackEvaluator, universe: AssumptionSet, e: AssumptionSet) -> bool {
    is_admissible(ev, universe, e)
        && universe
            .iter()
            .all(|a| !defends_with(ev, universe, e, AssumptionSet::singleton(a)) || e.contains(a))
}

fn complete_masks(ev: &AttackEvaluator, universe: AssumptionSet) -> Vec<AssumptionSet> {
    AssumptionSet::subsets(universe)
        .filter(|&e| is_complete(ev, universe, e))
        .collect()
}

/// Enumerates every extension of the given semantics, sorted canonically.
/// Uses [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_extensions(
    framework: &Framework,
    preorder: &Preorder,
    semantics: Semantics,
) -> Result<Vec<Extension>, Error> {
    enumerate_extensions_capped(framework, preorder, semantics, DEFAULT_ENUMERATION_CAP)
}

/// Enumerates with an explicit cap on `|A|`.
pub fn enumerate_extensions_capped(
    framework: &Framework,
    preorder: &Preorder,
    semantics: Semantics,
    cap: usize,
) -> Result<Vec<Extension>, Error> {
    let n = framework.assumption_count();
    if n > cap {
        return Err(Error::Resource {
            assumptions: n,
            cap,
        });
    }
    let table = SupportTable::new(framework);
    let ev = AttackEvaluator::with_table(framework, &table, preorder);
    let masks = enumerate_masks(&ev, framework.full_set(), semantics);
    Ok(masks
        .into_iter()
        .map(|m| Extension {
            assumptions: m,
            conclusions: conclusions(framework, m),
        })
        .collect())
}

pub(crate) fn enumerate_masks(
    ev: &AttackEvaluator,
    universe: AssumptionSet,
    semantics: Semantics,
) -> Vec<AssumptionSet> {
    match semantics {
        Semantics::ConflictFree => AssumptionSet::subsets(universe)
            .filter(|&e| !ev.attacks(e, e))
            .collect(),
        Semantics::Admissible => AssumptionSet::subsets(universe)
            .filter(|&e| is_admissible(ev, universe, e))
            .collect(),
        Semantics::Preferred => {
            let admissible: Vec<AssumptionSet> = AssumptionSet::subsets(universe)
                .filter(|&e| is_admissible(ev, universe, e))
                .collect();
            admissible
                .iter()
                .copied()
                .filter(|&e| {
                    !admissible
                        .iter()
                        .any(|&other| e != other && e.is_subset_of(other))
                })
                .collect()
        }
        Semantics::Stable => AssumptionSet::subsets(universe)
            .filter(|&e| is_stable(ev, universe, e))
            .collect(),
        Semantics::Complete => complete_masks(ev, universe),
        Semantics::Grounded => {
            let complete = complete_masks(ev, universe);
            complete
                .iter()
                .copied()
                .filter(|&e| {
                    !complete
                        .iter()
                        .any(|&other| e != other && other.is_subset_of(e))
                })
                .collect()
        }
    }
}

/// Direct membership check: is `e` an extension of the given semantics?
///
/// Equivalent to `enumerate_extensions(..).contains(e)` but only sweeps the
/// subsets the definition actually quantifies over, so single checks stay
/// usable beyond comfortable enumeration sizes.
pub fn is_extension(
    framework: &Framework,
    preorder: &Preorder,
    semantics: Semantics,
    e: AssumptionSet,
) -> bool {
    let table = SupportTable::new(framework);
    let ev = AttackEvaluator::with_table(framework, &table, preorder);
    is_extension_with(&ev, framework.full_set(), semantics, e)
}

pub(crate) fn is_extension_with(
    ev: &AttackEvaluator,
    universe: AssumptionSet,
    semantics: Semantics,
    e: AssumptionSet,
) -> bool {
    match semantics {
        Semantics::ConflictFree => !ev.attacks(e, e),
        Semantics::Admissible => is_admissible(ev, universe, e),
        Semantics::Preferred => {
            is_admissible(ev, universe, e)
                && AssumptionSet::subsets(universe.difference(e))
                    .all(|extra| extra.is_empty() || !is_admissible(ev, universe, e.union(extra)))
        }
        Semantics::Stable => is_stable(ev, universe, e),
        Semantics::Complete => is_complete(ev, universe, e),
        Semantics::Grounded => {
            is_complete(ev, universe, e)
                && AssumptionSet::subsets(e)
                    .all(|sub| sub == e || !is_complete(ev, universe, sub))
        }
    }
}
