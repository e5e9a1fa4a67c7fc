//! Brute-force verification of elicitation output at desk scale.
//!
//! The oracle enumerates *every* preorder over the assumptions of a tiny
//! framework, determines which of them make a given extension acceptable,
//! and checks the elicited preference sets against that ground truth from
//! two directions: soundness (each elicited set, applied to the framework,
//! keeps the extension acceptable) and a completeness diagnostic (each
//! acceptability-yielding preorder is explained by at least one elicited
//! set).
//!
//! Elicited sets are raw pair lists, so each one is checked through its
//! transitive closure when that closure is consistent, and through the raw
//! reflexive relation it declares otherwise; both results are retained so
//! divergences between the two readings stay visible.

use std::collections::BTreeSet;

use crate::derivation::{AttackEvaluator, AttackKind, SupportTable};
use crate::error::Error;
use crate::framework::{AssumptionId, AssumptionSet, Framework};
use crate::preference::{close_preferences, PSet, Preorder, PreferenceSet, Relation};
use crate::semantics::{enumerate_masks, is_extension_with, Semantics};

/// Hard cap for the preorder sweep: `2^(n²-n)` candidate matrices.
pub const PREORDER_ENUM_CAP: usize = 5;

/// All reflexive-transitive relations over `n` labeled assumptions, in a
/// fixed order. Counts for n = 0.. are 1, 1, 4, 29, 355, 6942.
pub fn enumerate_preorders(n: usize) -> Result<Vec<Preorder>, Error> {
    if n > PREORDER_ENUM_CAP {
        return Err(Error::CapExceeded {
            n,
            cap: PREORDER_ENUM_CAP,
        });
    }
    let off_diagonal = n * n - n;
    let mut out = Vec::new();
    'candidates: for candidate in 0u64..(1 << off_diagonal) {
        let mut rows = vec![0u64; n];
        let mut bit = 0;
        for (i, row) in rows.iter_mut().enumerate() {
            *row = 1 << i;
            for j in 0..n {
                if i == j {
                    continue;
                }
                if candidate & (1 << bit) != 0 {
                    *row |= 1 << j;
                }
                bit += 1;
            }
        }
        // transitivity: leq(i, j) requires row_i to cover row_j
        for i in 0..n {
            for j in 0..n {
                if rows[i] & (1 << j) != 0 && rows[j] & !rows[i] != 0 {
                    continue 'candidates;
                }
            }
        }
        out.push(Preorder::from_rows_unchecked(n, rows));
    }
    Ok(out)
}

/// The preorders under which `e` is an extension of the given semantics.
pub fn preorders_yielding(
    framework: &Framework,
    e: AssumptionSet,
    semantics: Semantics,
) -> Result<Vec<Preorder>, Error> {
    let n = framework.assumption_count();
    let table = SupportTable::new(framework);
    let universe = framework.full_set();
    Ok(enumerate_preorders(n)?
        .into_iter()
        .filter(|po| {
            let ev = AttackEvaluator::with_table(framework, &table, po);
            is_extension_with(&ev, universe, semantics, e)
        })
        .collect())
}

/// Strictly-less masks of the raw relation a preference set declares:
/// reflexivity plus the stated pairs, without transitive closure.
fn raw_lt_masks(framework: &Framework, prefs: &PreferenceSet) -> Vec<AssumptionSet> {
    let n = framework.assumption_count();
    let mut leq = vec![0u64; n];
    for (i, row) in leq.iter_mut().enumerate() {
        *row = 1 << i;
    }
    for p in prefs.iter() {
        let (l, r) = (p.left().index(), p.right().index());
        match p.relation() {
            Relation::Strict => leq[l] |= 1 << r,
            Relation::Equal => {
                leq[l] |= 1 << r;
                leq[r] |= 1 << l;
            }
        }
    }
    (0..n)
        .map(|b| {
            let mut mask = 0u64;
            for x in 0..n {
                if leq[x] & (1 << b) != 0 && leq[b] & (1 << x) == 0 {
                    mask |= 1 << x;
                }
            }
            AssumptionSet::from_bits(mask)
        })
        .collect()
}

/// Result of checking one elicited set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundnessCheck {
    pub prefs: PreferenceSet,
    /// Whether the transitive closure of `prefs` is a consistent preorder.
    pub closure_consistent: bool,
    /// Membership under the closed preorder, when it exists.
    pub holds_closed: Option<bool>,
    /// Membership under the raw declared relation.
    pub holds_raw: bool,
    /// Extensions actually obtained when the decisive check failed
    /// (enumerated at desk scale, otherwise empty).
    pub counter_extensions: Vec<AssumptionSet>,
}

impl SoundnessCheck {
    /// The decisive verdict: the closed reading when it exists, the raw
    /// reading otherwise.
    pub fn holds(&self) -> bool {
        self.holds_closed.unwrap_or(self.holds_raw)
    }

    /// True when both readings were evaluable and disagreed.
    pub fn diverged(&self) -> bool {
        self.holds_closed.is_some_and(|closed| closed != self.holds_raw)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundnessReport {
    pub extension: AssumptionSet,
    pub semantics: Semantics,
    pub checks: Vec<SoundnessCheck>,
}

impl SoundnessReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(SoundnessCheck::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SoundnessCheck> {
        self.checks.iter().filter(|c| !c.holds())
    }

    pub fn divergences(&self) -> impl Iterator<Item = &SoundnessCheck> {
        self.checks.iter().filter(|c| c.diverged())
    }
}

const COUNTEREXAMPLE_ENUMERATION_LIMIT: usize = 12;

/// Checks every elicited set: does applying it to the framework keep `e` an
/// extension of the given semantics?
pub fn verify_soundness(
    framework: &Framework,
    e: AssumptionSet,
    semantics: Semantics,
    pset: &PSet,
) -> SoundnessReport {
    let table = SupportTable::new(framework);
    let universe = framework.full_set();
    let n = framework.assumption_count();

    let checks = pset
        .iter()
        .map(|prefs| {
            let closed = close_preferences(framework, prefs).ok();
            let raw_ev =
                AttackEvaluator::with_lt_masks(framework, &table, raw_lt_masks(framework, prefs));
            let holds_raw = is_extension_with(&raw_ev, universe, semantics, e);
            let (closure_consistent, holds_closed, decisive_ev) = match closed {
                Some(po) => {
                    let ev = AttackEvaluator::with_table(framework, &table, &po);
                    let holds = is_extension_with(&ev, universe, semantics, e);
                    (true, Some(holds), ev)
                }
                None => (false, None, raw_ev.clone()),
            };
            let decisive = holds_closed.unwrap_or(holds_raw);
            let counter_extensions = if !decisive && n <= COUNTEREXAMPLE_ENUMERATION_LIMIT {
                enumerate_masks(&decisive_ev, universe, semantics)
            } else {
                Vec::new()
            };
            SoundnessCheck {
                prefs: prefs.clone(),
                closure_consistent,
                holds_closed,
                holds_raw,
                counter_extensions,
            }
        })
        .collect();

    SoundnessReport {
        extension: e,
        semantics,
        checks,
    }
}

/// One explained preorder of a [`CompletenessReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveredPreorder {
    pub preorder: Preorder,
    /// The first elicited set (in canonical order) compatible with it.
    pub matched_by: PreferenceSet,
}

/// Outcome of sweeping every acceptability-yielding preorder against the
/// elicited sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessReport {
    pub extension: AssumptionSet,
    pub semantics: Semantics,
    pub preorder_count: usize,
    pub yielding_count: usize,
    pub covered: Vec<CoveredPreorder>,
    pub uncovered: Vec<Preorder>,
}

impl CompletenessReport {
    pub fn fully_covered(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// An elicited set explains a preorder when it asserts no strict preference
/// opposed to the preorder's strict part. Equalities and incomparabilities
/// on either side are not evidence against an explanation: elicited sets
/// constrain only attack-related pairs, and their equality atoms mark pairs
/// where no strict preference is needed rather than claims the preorder
/// must reproduce.
fn compatible(po: &Preorder, prefs: &PreferenceSet) -> bool {
    prefs.iter().all(|p| match p.relation() {
        Relation::Strict => !po.lt(p.right(), p.left()),
        Relation::Equal => true,
    })
}

/// Sweeps all preorders over the framework's assumptions and reports which
/// of the ones yielding `e` are explained by some elicited set.
pub fn verify_completeness(
    framework: &Framework,
    e: AssumptionSet,
    semantics: Semantics,
    pset: &PSet,
) -> Result<CompletenessReport, Error> {
    let preorder_count = enumerate_preorders(framework.assumption_count())?.len();
    let yielding = preorders_yielding(framework, e, semantics)?;
    let yielding_count = yielding.len();

    let mut covered = Vec::new();
    let mut uncovered = Vec::new();
    for po in yielding {
        match pset.iter().find(|prefs| compatible(&po, prefs)) {
            Some(prefs) => covered.push(CoveredPreorder {
                preorder: po,
                matched_by: prefs.clone(),
            }),
            None => uncovered.push(po),
        }
    }

    Ok(CompletenessReport {
        extension: e,
        semantics,
        preorder_count,
        yielding_count,
        covered,
        uncovered,
    })
}

/// Pairs of subsets whose attack kind differs between the exact-leaf reading
/// of deduction supports and the padded reading where the supporting set may
/// carry unused members. Padding only ever affects the reverse clause: it
/// may borrow a strictly-less member that no deduction actually uses.
pub fn leaf_reading_divergences(
    framework: &Framework,
    preorder: &Preorder,
) -> Result<Vec<(AssumptionSet, AssumptionSet)>, Error> {
    let n = framework.assumption_count();
    if n > PREORDER_ENUM_CAP {
        return Err(Error::CapExceeded {
            n,
            cap: PREORDER_ENUM_CAP,
        });
    }
    let table = SupportTable::new(framework);
    let exact = AttackEvaluator::with_table(framework, &table, preorder);
    let universe = framework.full_set();

    let lt_masks: Vec<AssumptionSet> = framework
        .assumptions()
        .map(|a| preorder.strictly_less_mask(a))
        .collect();
    let contrary_supports: Vec<Vec<AssumptionSet>> = framework
        .assumptions()
        .map(|a| table.supports(framework.contrary(a)).iter().copied().collect())
        .collect();

    let padded_kind = |att: AssumptionSet, tgt: AssumptionSet| -> AttackKind {
        let normal = tgt.iter().any(|b| {
            contrary_supports[b.index()]
                .iter()
                .any(|s| s.is_subset_of(att) && s.intersection(lt_masks[b.index()]).is_empty())
        });
        let reverse = att.iter().any(|a| {
            contrary_supports[a.index()].iter().any(|s| s.is_subset_of(tgt))
                && !tgt.intersection(lt_masks[a.index()]).is_empty()
        });
        match (normal, reverse) {
            (false, false) => AttackKind::NoAttack,
            (true, false) => AttackKind::Normal,
            (false, true) => AttackKind::Reverse,
            (true, true) => AttackKind::Both,
        }
    };

    let mut diverging = Vec::new();
    for att in AssumptionSet::subsets(universe) {
        for tgt in AssumptionSet::subsets(universe) {
            if exact.kind(att, tgt) != padded_kind(att, tgt) {
                diverging.push((att, tgt));
            }
        }
    }
    Ok(diverging)
}

/// Unordered assumption pairs that interact through some deduction: one side
/// occurs in a support of the other side's contrary. Elicited preferences
/// never relate pairs outside this set.
pub fn interacting_pairs(framework: &Framework) -> BTreeSet<(AssumptionId, AssumptionId)> {
    let table = SupportTable::new(framework);
    let mut pairs = BTreeSet::new();
    for a in framework.assumptions() {
        for s in table.supports(framework.contrary(a)) {
            for member in s.iter() {
                if member != a {
                    pairs.insert((member.min(a), member.max(a)));
                }
            }
        }
    }
    pairs
}
