//! Deductions and attacks: conclusion closure, exact-support enumeration,
//! and the plain and preference-aware attack relations.
//!
//! Two independent routes are kept side by side on purpose. [`conclusions`]
//! forward-chains rules to a fixpoint; [`SupportTable`] enumerates the exact
//! assumption leaf sets of deduction trees bottom-up. The plain attack check
//! goes through the first route, the preference-aware one through the
//! second, and property tests pin their coherence.
//!
//! Supports are *exact* leaf sets, not closed under superset: a deduction
//! tree contributes the set of assumptions actually appearing at its leaves.
//! Non-minimal exact supports still show up whenever distinct rules derive
//! the same sentence, and the reverse-attack clause genuinely depends on
//! them.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::framework::{AssumptionSet, Framework, SentenceId};
use crate::preference::Preorder;

/// Classification of a preference-aware attack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AttackKind {
    NoAttack,
    /// The attacker deduces a contrary of a target member through a support
    /// with no member strictly less preferred than the target.
    Normal,
    /// The target deduces a contrary of an attacker member through a support
    /// containing some member strictly less preferred than it; the original
    /// conflict flows back.
    Reverse,
    /// Both conditions hold at once.
    Both,
}

impl AttackKind {
    pub fn is_attack(self) -> bool {
        self != AttackKind::NoAttack
    }

    fn from_parts(normal: bool, reverse: bool) -> Self {
        match (normal, reverse) {
            (false, false) => AttackKind::NoAttack,
            (true, false) => AttackKind::Normal,
            (false, true) => AttackKind::Reverse,
            (true, true) => AttackKind::Both,
        }
    }
}

/// An exact deduction support: `support` is the set of assumption leaves of
/// some tree concluding `conclusion`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SupportSet {
    pub support: AssumptionSet,
    pub conclusion: SentenceId,
}

/// Conclusion closure `Cn`: every sentence deducible from subsets of `s`.
///
/// Computed by naive forward chaining — a rule fires once its whole body is
/// present; facts (empty bodies) always fire. Firing order is irrelevant.
/// Monotone in `s`, and `s ⊆ Cn(s)` always holds.
pub fn conclusions(framework: &Framework, s: AssumptionSet) -> BTreeSet<SentenceId> {
    let mut derived = vec![false; framework.sentence_count()];
    for a in s.iter() {
        derived[framework.assumption_sentence(a).index()] = true;
    }
    loop {
        let mut changed = false;
        for rule in framework.rules() {
            if derived[rule.head.index()] {
                continue;
            }
            if rule.body.iter().all(|b| derived[b.index()]) {
                derived[rule.head.index()] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    derived
        .iter()
        .enumerate()
        .filter(|(_, &d)| d)
        .map(|(i, _)| SentenceId(i as u32))
        .collect()
}

/// Exact deduction supports for every sentence of a framework.
///
/// Built by fixpoint iteration: an assumption supports itself; a
/// non-assumption head picks one support per body element of one of its
/// rules and takes the union of the leaf sets. Cyclic rule graphs terminate
/// because each sentence accumulates at most `2^|A|` distinct sets.
#[derive(Debug, Clone)]
pub struct SupportTable {
    per_sentence: Vec<BTreeSet<AssumptionSet>>,
}

impl SupportTable {
    pub fn new(framework: &Framework) -> Self {
        let mut per_sentence: Vec<BTreeSet<AssumptionSet>> =
            vec![BTreeSet::new(); framework.sentence_count()];
        for a in framework.assumptions() {
            per_sentence[framework.assumption_sentence(a).index()]
                .insert(AssumptionSet::singleton(a));
        }
        loop {
            let mut changed = false;
            for rule in framework.rules() {
                // flatness: assumptions never appear as heads in validated input
                if framework.as_assumption(rule.head).is_some() {
                    continue;
                }
                let mut candidates: Vec<AssumptionSet> = vec![AssumptionSet::EMPTY];
                for b in &rule.body {
                    let body_supports = &per_sentence[b.index()];
                    if body_supports.is_empty() {
                        candidates.clear();
                        break;
                    }
                    let mut next = Vec::with_capacity(candidates.len() * body_supports.len());
                    for c in &candidates {
                        for s in body_supports {
                            next.push(c.union(*s));
                        }
                    }
                    candidates = next;
                }
                for c in candidates {
                    changed |= per_sentence[rule.head.index()].insert(c);
                }
            }
            if !changed {
                break;
            }
        }
        SupportTable { per_sentence }
    }

    pub fn supports(&self, phi: SentenceId) -> &BTreeSet<AssumptionSet> {
        &self.per_sentence[phi.index()]
    }

    /// All supports as (support, conclusion) pairs, canonically ordered.
    pub fn support_sets(&self) -> impl Iterator<Item = SupportSet> + '_ {
        self.per_sentence.iter().enumerate().flat_map(|(i, sets)| {
            sets.iter().map(move |&support| SupportSet {
                support,
                conclusion: SentenceId(i as u32),
            })
        })
    }
}

/// Every exact assumption support of `phi`.
pub fn supports(
    framework: &Framework,
    phi: SentenceId,
) -> Result<BTreeSet<AssumptionSet>, Error> {
    if !framework.in_language(phi) {
        return Err(Error::UnknownSentence {
            name: framework.sentence_name(phi).to_string(),
        });
    }
    Ok(SupportTable::new(framework).supports(phi).clone())
}

/// Plain attack: `att` attacks `tgt` iff some contrary of a target member is
/// in `Cn(att)`.
pub fn attacks(framework: &Framework, att: AssumptionSet, tgt: AssumptionSet) -> bool {
    let cn = conclusions(framework, att);
    tgt.iter().any(|b| cn.contains(&framework.contrary(b)))
}

/// Precomputed machinery for preference-aware attack checks: per-assumption
/// contrary supports plus strictly-less masks. Build once per (framework,
/// preorder) pair and query freely.
#[derive(Debug, Clone)]
pub struct AttackEvaluator {
    contrary_supports: Vec<Vec<AssumptionSet>>,
    lt_masks: Vec<AssumptionSet>,
}

impl AttackEvaluator {
    pub fn new(framework: &Framework, preorder: &Preorder) -> Self {
        Self::with_table(framework, &SupportTable::new(framework), preorder)
    }

    pub fn with_table(
        framework: &Framework,
        table: &SupportTable,
        preorder: &Preorder,
    ) -> Self {
        let lt_masks = framework
            .assumptions()
            .map(|a| preorder.strictly_less_mask(a))
            .collect();
        Self::with_lt_masks(framework, table, lt_masks)
    }

    /// Raw entry point: callers supply per-assumption strictly-less masks
    /// directly. Used to evaluate non-transitive preference relations.
    pub(crate) fn with_lt_masks(
        framework: &Framework,
        table: &SupportTable,
        lt_masks: Vec<AssumptionSet>,
    ) -> Self {
        let contrary_supports = framework
            .assumptions()
            .map(|a| {
                table
                    .supports(framework.contrary(a))
                    .iter()
                    .copied()
                    .collect()
            })
            .collect();
        AttackEvaluator {
            contrary_supports,
            lt_masks,
        }
    }

    fn normal(&self, att: AssumptionSet, tgt: AssumptionSet) -> bool {
        tgt.iter().any(|b| {
            self.contrary_supports[b.index()].iter().any(|&s| {
                s.is_subset_of(att) && s.intersection(self.lt_masks[b.index()]).is_empty()
            })
        })
    }

    fn reverse(&self, att: AssumptionSet, tgt: AssumptionSet) -> bool {
        att.iter().any(|a| {
            self.contrary_supports[a.index()].iter().any(|&s| {
                s.is_subset_of(tgt) && !s.intersection(self.lt_masks[a.index()]).is_empty()
            })
        })
    }

    pub fn kind(&self, att: AssumptionSet, tgt: AssumptionSet) -> AttackKind {
        AttackKind::from_parts(self.normal(att, tgt), self.reverse(att, tgt))
    }

    pub fn attacks(&self, att: AssumptionSet, tgt: AssumptionSet) -> bool {
        self.kind(att, tgt).is_attack()
    }
}

/// Preference-aware attack between two assumption sets.
///
/// Normal: some target member's contrary has a support inside `att` with no
/// support member strictly below the target. Reverse: some attacker member's
/// contrary has a support inside `tgt` containing a member strictly below
/// that attacker. With an identity preorder this degenerates to the plain
/// attack relation and `Reverse` never fires.
pub fn lt_attacks(
    framework: &Framework,
    preorder: &Preorder,
    att: AssumptionSet,
    tgt: AssumptionSet,
) -> AttackKind {
    AttackEvaluator::new(framework, preorder).kind(att, tgt)
}
