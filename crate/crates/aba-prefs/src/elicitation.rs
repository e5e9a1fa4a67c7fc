//! Inverse reasoning: given a conflict-free extension, enumerate every set
//! of atomic preferences over assumptions under which the extension is
//! acceptable.
//!
//! The pipeline runs three passes over the extension's members and their
//! attackers, each contributing preference branches for so-far-unrelated
//! pairs:
//!
//! 1. an attack with no unattacked defender must be invalidated by the
//!    preferences themselves: every attacker member goes below-or-equal the
//!    target, with at least one strictly below (all-equality branches are
//!    pruned);
//! 2. an assumption the extension helps attack may sit anywhere
//!    below-or-equal its attacker, branching twice per pair;
//! 3. an attack that an unattacked defense support already counters leaves
//!    the pair fully open, branching three ways per pair.
//!
//! Iteration order is canonical (sorted members, sorted attacker sets), and
//! a pair once related — in either orientation, by any relation — is never
//! related again, so the output is deterministic.

use crate::derivation::SupportTable;
use crate::error::Error;
use crate::framework::{AssumptionId, AssumptionSet, Framework};
use crate::preference::{AtomicPreference, PSet, Preorder, PreferenceSet, Relation};
use crate::semantics::is_conflict_free;

/// Branching discipline of the third pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Case3Mode {
    /// Branch every pair of one attacker block independently three ways.
    /// Mixed-direction combinations (one attacker member below the target,
    /// another above) are kept.
    #[default]
    Literal,
    /// Restrict each attacker block to the union of three families:
    /// at-least-one-strictly-below, all-equal, and
    /// at-least-one-strictly-above. Mixed directions are excluded.
    Prose,
}

/// Attacker supports of `a` from outside the extension: every exact support
/// of `a`'s contrary that is not a subset of `e`.
pub fn attackers_of(
    framework: &Framework,
    e: AssumptionSet,
    a: AssumptionId,
) -> Vec<AssumptionSet> {
    attackers_with(framework, &SupportTable::new(framework), e, a)
}

fn attackers_with(
    framework: &Framework,
    table: &SupportTable,
    e: AssumptionSet,
    a: AssumptionId,
) -> Vec<AssumptionSet> {
    table
        .supports(framework.contrary(a))
        .iter()
        .copied()
        .filter(|b| !b.is_subset_of(e))
        .collect()
}

/// Defense supports for the attack of `b_set` on `a`: every exact support
/// `X` of some attacker member's contrary such that `X` contains an
/// extension member other than `a` and `X` is unattacked by any `Z ⊆ A`
/// with `Z ⊄ e`.
///
/// An empty result routes the attack to the first pass; a non-empty one to
/// the third.
pub fn defense_supports(
    framework: &Framework,
    e: AssumptionSet,
    a: AssumptionId,
    b_set: AssumptionSet,
) -> Vec<AssumptionSet> {
    defense_with(framework, &SupportTable::new(framework), e, a, b_set)
}

fn defense_with(
    framework: &Framework,
    table: &SupportTable,
    e: AssumptionSet,
    a: AssumptionId,
    b_set: AssumptionSet,
) -> Vec<AssumptionSet> {
    let e_others = {
        let mut m = e;
        m.remove(a);
        m
    };
    let mut out = Vec::new();
    for b in b_set.iter() {
        for &x in table.supports(framework.contrary(b)) {
            if x.intersection(e_others).is_empty() {
                continue;
            }
            if is_unattacked_outside(framework, table, e, x) && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

/// No `Z ⊆ A` with `Z ⊄ e` attacks `x`.
///
/// Any attacker support of `x` can be grown into such a `Z` as long as some
/// assumption lies outside `e`, so this reduces to: either `e` is the full
/// set (no qualifying `Z` exists at all), or no member of `x` has any
/// attacker support. A unit test checks the reduction against the literal
/// subset sweep.
fn is_unattacked_outside(
    framework: &Framework,
    table: &SupportTable,
    e: AssumptionSet,
    x: AssumptionSet,
) -> bool {
    if e == framework.full_set() {
        return true;
    }
    x.iter()
        .all(|member| table.supports(framework.contrary(member)).is_empty())
}

fn pair_open(pset: &PSet, x: AssumptionId, y: AssumptionId) -> bool {
    !pset.constrains(x, y)
}

/// First pass: attacks without an unattacked defender force the attacker's
/// members below-or-equal the target, at least one strictly.
pub fn compute_case1(framework: &Framework, e: AssumptionSet) -> PSet {
    case1_with(framework, &SupportTable::new(framework), e)
}

fn case1_with(framework: &Framework, table: &SupportTable, e: AssumptionSet) -> PSet {
    let mut acc = PSet::empty();
    for a in e.iter() {
        for b_set in attackers_with(framework, table, e, a) {
            if !defense_with(framework, table, e, a, b_set).is_empty() {
                continue;
            }
            let mut working = PSet::seed();
            for b in b_set.iter() {
                if b == a || !pair_open(&acc, a, b) {
                    continue;
                }
                working = working
                    .iter()
                    .flat_map(|prefs| {
                        [
                            prefs.with(AtomicPreference::strict(b, a)),
                            prefs.with(AtomicPreference::equal(b, a)),
                        ]
                    })
                    .collect();
            }
            // guarantee at least one strict preference per attacker block
            let working: PSet = working
                .iter()
                .filter(|prefs| {
                    prefs.is_empty() || prefs.iter().any(|p| p.relation() == Relation::Strict)
                })
                .cloned()
                .collect();
            acc = if acc.is_empty() {
                working
            } else {
                let mut merged = PSet::empty();
                for old in acc.iter() {
                    for w in working.iter() {
                        merged.insert(old.union(w));
                    }
                }
                merged
            };
        }
    }
    acc.normalized()
}

/// Second pass: for every extension member `a` and every assumption `b`
/// whose contrary has a support containing `a`, branch each accumulated set
/// over `b<a` and `b=a` — skipping pairs already related.
pub fn compute_case2(framework: &Framework, e: AssumptionSet, pset: &PSet) -> PSet {
    case2_with(framework, &SupportTable::new(framework), e, pset)
}

fn case2_with(
    framework: &Framework,
    table: &SupportTable,
    e: AssumptionSet,
    pset: &PSet,
) -> PSet {
    let mut current = pset.clone();
    for a in e.iter() {
        let attacked: Vec<AssumptionId> = framework
            .assumptions()
            .filter(|&b| {
                table
                    .supports(framework.contrary(b))
                    .iter()
                    .any(|s| s.contains(a))
            })
            .collect();
        for b in attacked {
            if b == a || !pair_open(&current, a, b) {
                continue;
            }
            current = current
                .iter()
                .flat_map(|prefs| {
                    [
                        prefs.with(AtomicPreference::strict(b, a)),
                        prefs.with(AtomicPreference::equal(b, a)),
                    ]
                })
                .collect();
        }
    }
    current
}

/// Third pass: attacks that already have an unattacked defense support leave
/// the preference between target and attacker members open.
pub fn compute_case3(
    framework: &Framework,
    e: AssumptionSet,
    pset: &PSet,
    mode: Case3Mode,
) -> PSet {
    case3_with(framework, &SupportTable::new(framework), e, pset, mode)
}

fn case3_with(
    framework: &Framework,
    table: &SupportTable,
    e: AssumptionSet,
    pset: &PSet,
    mode: Case3Mode,
) -> PSet {
    let mut current = pset.clone();
    for a in e.iter() {
        for b_set in attackers_with(framework, table, e, a) {
            if defense_with(framework, table, e, a, b_set).is_empty() {
                continue;
            }
            match mode {
                Case3Mode::Literal => {
                    for b in b_set.iter() {
                        if b == a || !pair_open(&current, a, b) {
                            continue;
                        }
                        current = current
                            .iter()
                            .flat_map(|prefs| {
                                [
                                    prefs.with(AtomicPreference::strict(b, a)),
                                    prefs.with(AtomicPreference::equal(b, a)),
                                    prefs.with(AtomicPreference::strict(a, b)),
                                ]
                            })
                            .collect();
                    }
                }
                Case3Mode::Prose => {
                    let eligible: Vec<AssumptionId> = b_set
                        .iter()
                        .filter(|&b| b != a && pair_open(&current, a, b))
                        .collect();
                    if eligible.is_empty() {
                        continue;
                    }
                    let families = prose_families(a, &eligible);
                    current = current
                        .iter()
                        .flat_map(|prefs| families.iter().map(|fam| prefs.union(fam)))
                        .collect();
                }
            }
        }
    }
    current
}

/// The three prose families over one attacker block: at least one member
/// strictly below `a`, all members equal to `a`, or `a` strictly below at
/// least one member.
fn prose_families(a: AssumptionId, eligible: &[AssumptionId]) -> Vec<PreferenceSet> {
    let below: Vec<PreferenceSet> = two_way(eligible, |b| AtomicPreference::strict(b, a), a)
        .into_iter()
        .filter(|p| p.iter().any(|atom| atom.relation() == Relation::Strict))
        .collect();
    let above: Vec<PreferenceSet> = two_way(eligible, |b| AtomicPreference::strict(a, b), a)
        .into_iter()
        .filter(|p| p.iter().any(|atom| atom.relation() == Relation::Strict))
        .collect();
    let all_equal: PreferenceSet = eligible
        .iter()
        .map(|&b| AtomicPreference::equal(b, a))
        .collect();

    let mut out = below;
    out.push(all_equal);
    out.extend(above);
    out.sort();
    out.dedup();
    out
}

/// All assignments of `{strict(b), equal(b, a)}` over the block members.
fn two_way(
    eligible: &[AssumptionId],
    strict: impl Fn(AssumptionId) -> AtomicPreference,
    a: AssumptionId,
) -> Vec<PreferenceSet> {
    let mut sets = vec![PreferenceSet::empty()];
    for &b in eligible {
        sets = sets
            .iter()
            .flat_map(|p| [p.with(strict(b)), p.with(AtomicPreference::equal(b, a))])
            .collect();
    }
    sets
}

/// Stage outputs of one elicitation run. The final result is the third
/// stage; earlier stages are kept for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elicitation {
    pub extension: AssumptionSet,
    pub case1: PSet,
    pub case2: PSet,
    pub case3: PSet,
}

impl Elicitation {
    pub fn stage(&self, stage: u8) -> &PSet {
        match stage {
            1 => &self.case1,
            2 => &self.case2,
            _ => &self.case3,
        }
    }

    pub fn final_pset(&self) -> &PSet {
        &self.case3
    }
}

/// Runs the full three-stage pipeline for a conflict-free extension.
///
/// Errors when `e` contains bits outside the framework's assumptions or is
/// not conflict-free under the identity preorder.
pub fn compute_all_preferences(
    framework: &Framework,
    e: AssumptionSet,
    mode: Case3Mode,
) -> Result<Elicitation, Error> {
    if !e.is_subset_of(framework.full_set()) {
        return Err(Error::UnknownAssumption {
            name: format!("assumption index out of range for mask {:#x}", e.bits()),
        });
    }
    let identity = Preorder::identity(framework.assumption_count());
    if !is_conflict_free(framework, &identity, e) {
        return Err(Error::NotConflictFree {
            extension: e.display(framework).to_string(),
        });
    }
    let table = SupportTable::new(framework);
    let case1 = case1_with(framework, &table, e);
    let case2 = case2_with(framework, &table, e, &case1).normalized();
    let case3 = case3_with(framework, &table, e, &case2, mode).normalized();
    Ok(Elicitation {
        extension: e,
        case1,
        case2,
        case3,
    })
}
