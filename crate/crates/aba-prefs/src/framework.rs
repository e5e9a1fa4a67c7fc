//! Core domain model: sentences, rules, assumptions with contraries, and
//! bitset-backed assumption sets.
//!
//! A framework couples a deductive system (language + rules) with a
//! designated set of defeasible sentences (assumptions), each mapped to a
//! contrary sentence. Frameworks here are *flat*: no assumption may appear
//! as the head of a rule, so assumptions can never be derived.
//!
//! All identifiers are interned once, in lexicographic order. Sentence and
//! assumption indices therefore coincide with name order, which gives every
//! derived artifact (extensions, preference sets, reports) a canonical order
//! that is stable across runs and thread counts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Error;

/// Upper bound on declared assumptions; assumption sets are 64-bit masks.
pub const MAX_ASSUMPTIONS: usize = 64;

/// Interned sentence identifier. Ordering follows lexicographic name order
/// within the owning [`Framework`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SentenceId(pub(crate) u32);

impl SentenceId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of an assumption within the framework's sorted assumption list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AssumptionId(pub(crate) u32);

impl AssumptionId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An inference rule `head <- body`. An empty body makes the head a fact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rule {
    pub head: SentenceId,
    pub body: Vec<SentenceId>,
}

/// A flat ABA framework: language `L`, rules `R`, assumptions `A ⊆ L` and a
/// contrary map over `A`.
///
/// Construction goes through [`FrameworkBuilder`]; a built framework is
/// immutable. [`Framework::validate`] reports structural violations instead
/// of erroring, so callers can surface every problem at once. All reasoning
/// operations assume a framework that validated cleanly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Framework {
    names: Vec<String>,
    ids: BTreeMap<String, SentenceId>,
    in_language: Vec<bool>,
    rules: Vec<Rule>,
    assumption_sentences: Vec<SentenceId>,
    assumption_index: Vec<Option<AssumptionId>>,
    contraries: Vec<Option<SentenceId>>,
}

impl Framework {
    pub fn builder() -> FrameworkBuilder {
        FrameworkBuilder::default()
    }

    pub fn sentence_count(&self) -> usize {
        self.names.len()
    }

    pub fn sentence_id(&self, name: &str) -> Option<SentenceId> {
        self.ids.get(name).copied()
    }

    pub fn sentence_name(&self, id: SentenceId) -> &str {
        &self.names[id.index()]
    }

    pub fn in_language(&self, id: SentenceId) -> bool {
        self.in_language[id.index()]
    }

    /// All interned sentences, in canonical order. Includes sentences outside
    /// `L` when the framework was built with an explicit language.
    pub fn sentences(&self) -> impl Iterator<Item = SentenceId> + '_ {
        (0..self.names.len() as u32).map(SentenceId)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn assumption_count(&self) -> usize {
        self.assumption_sentences.len()
    }

    pub fn assumptions(&self) -> impl Iterator<Item = AssumptionId> + '_ {
        (0..self.assumption_sentences.len() as u32).map(AssumptionId)
    }

    pub fn assumption_id(&self, name: &str) -> Option<AssumptionId> {
        self.sentence_id(name).and_then(|s| self.as_assumption(s))
    }

    pub fn assumption_name(&self, a: AssumptionId) -> &str {
        self.sentence_name(self.assumption_sentences[a.index()])
    }

    pub fn assumption_sentence(&self, a: AssumptionId) -> SentenceId {
        self.assumption_sentences[a.index()]
    }

    /// Assumption index of a sentence, if it is one.
    pub fn as_assumption(&self, s: SentenceId) -> Option<AssumptionId> {
        self.assumption_index[s.index()]
    }

    /// Contrary of an assumption. Panics when the contrary map is not total;
    /// validate first.
    pub fn contrary(&self, a: AssumptionId) -> SentenceId {
        self.contraries[a.index()]
            .unwrap_or_else(|| panic!("no contrary declared for '{}'", self.assumption_name(a)))
    }

    pub fn contrary_opt(&self, a: AssumptionId) -> Option<SentenceId> {
        self.contraries[a.index()]
    }

    /// The set containing every assumption.
    pub fn full_set(&self) -> AssumptionSet {
        AssumptionSet::full(self.assumption_count())
    }

    /// Resolves names into an [`AssumptionSet`].
    pub fn assumption_set<'a, I>(&self, names: I) -> Result<AssumptionSet, Error>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut set = AssumptionSet::EMPTY;
        for name in names {
            match self.assumption_id(name) {
                Some(a) => set.insert(a),
                None => {
                    return Err(Error::UnknownAssumption {
                        name: name.to_string(),
                    })
                }
            }
        }
        Ok(set)
    }

    /// Checks the framework invariants and reports every violation found.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.assumption_sentences.is_empty() {
            violations.push(Violation::EmptyAssumptions);
        }
        for a in self.assumptions() {
            let s = self.assumption_sentence(a);
            if !self.in_language(s) {
                violations.push(Violation::AssumptionOutsideLanguage {
                    assumption: self.sentence_name(s).to_string(),
                });
            }
            match self.contrary_opt(a) {
                None => violations.push(Violation::MissingContrary {
                    assumption: self.assumption_name(a).to_string(),
                }),
                Some(c) if !self.in_language(c) => {
                    violations.push(Violation::ContraryOutsideLanguage {
                        assumption: self.assumption_name(a).to_string(),
                        target: self.sentence_name(c).to_string(),
                    })
                }
                Some(_) => {}
            }
        }
        for rule in &self.rules {
            if !self.in_language(rule.head) {
                violations.push(Violation::RuleHeadOutsideLanguage {
                    head: self.sentence_name(rule.head).to_string(),
                });
            }
            if self.as_assumption(rule.head).is_some() {
                violations.push(Violation::NonFlat {
                    assumption: self.sentence_name(rule.head).to_string(),
                });
            }
            for &b in &rule.body {
                if !self.in_language(b) {
                    violations.push(Violation::RuleBodyOutsideLanguage {
                        head: self.sentence_name(rule.head).to_string(),
                        body: self.sentence_name(b).to_string(),
                    });
                }
            }
        }
        ValidationReport { violations }
    }
}

/// A single invariant violation found by [`Framework::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyAssumptions,
    AssumptionOutsideLanguage { assumption: String },
    MissingContrary { assumption: String },
    ContraryOutsideLanguage { assumption: String, target: String },
    RuleHeadOutsideLanguage { head: String },
    RuleBodyOutsideLanguage { head: String, body: String },
    NonFlat { assumption: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyAssumptions => write!(f, "the set of assumptions is empty"),
            Violation::AssumptionOutsideLanguage { assumption } => {
                write!(f, "assumption '{assumption}' is not in the language")
            }
            Violation::MissingContrary { assumption } => {
                write!(f, "contrary map is not total: '{assumption}' has no contrary")
            }
            Violation::ContraryOutsideLanguage { assumption, target } => write!(
                f,
                "contrary '{target}' of assumption '{assumption}' is not in the language"
            ),
            Violation::RuleHeadOutsideLanguage { head } => {
                write!(f, "rule head '{head}' is not in the language")
            }
            Violation::RuleBodyOutsideLanguage { head, body } => write!(
                f,
                "rule for '{head}' uses body sentence '{body}' outside the language"
            ),
            Violation::NonFlat { assumption } => write!(
                f,
                "framework is not flat: assumption '{assumption}' is the head of a rule"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Incremental framework construction. Declarations are collected as names
/// and interned in one pass by [`FrameworkBuilder::build`], so declaration
/// order never matters and duplicates are idempotent.
///
/// By default every mentioned name becomes part of the language. Calling
/// [`FrameworkBuilder::explicit_language`] switches to an explicit mode where
/// only names declared via [`FrameworkBuilder::sentence`] (and assumptions'
/// own names are *not* implied) belong to `L` — useful for exercising
/// validation.
#[derive(Debug, Default, Clone)]
pub struct FrameworkBuilder {
    explicit: bool,
    sentences: BTreeSet<String>,
    assumptions: BTreeSet<String>,
    contraries: BTreeMap<String, String>,
    contrary_conflict: Option<(String, String, String)>,
    rules: Vec<(String, Vec<String>)>,
}

impl FrameworkBuilder {
    /// Declares a sentence of the language.
    pub fn sentence(mut self, name: &str) -> Self {
        self.sentences.insert(name.to_string());
        self
    }

    /// Switches to explicit language mode: only `sentence()` declarations
    /// populate `L`.
    pub fn explicit_language(mut self) -> Self {
        self.explicit = true;
        self
    }

    pub fn assumption(mut self, name: &str) -> Self {
        self.assumptions.insert(name.to_string());
        self
    }

    /// Declares the contrary of an assumption. Redeclaring the same pair is
    /// idempotent; a conflicting redeclaration fails at build time.
    pub fn contrary(mut self, assumption: &str, target: &str) -> Self {
        match self.contraries.get(assumption) {
            Some(existing) if existing != target && self.contrary_conflict.is_none() => {
                self.contrary_conflict = Some((
                    assumption.to_string(),
                    existing.clone(),
                    target.to_string(),
                ));
            }
            Some(_) => {}
            None => {
                self.contraries
                    .insert(assumption.to_string(), target.to_string());
            }
        }
        self
    }

    pub fn rule<I, S>(mut self, head: &str, body: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let body = body.into_iter().map(|s| s.as_ref().to_string()).collect();
        self.rules.push((head.to_string(), body));
        self
    }

    pub fn build(self) -> Result<Framework, Error> {
        if let Some((assumption, first, second)) = self.contrary_conflict {
            return Err(Error::ConflictingContrary {
                assumption,
                first,
                second,
            });
        }
        if self.assumptions.len() > MAX_ASSUMPTIONS {
            return Err(Error::TooManyAssumptions {
                count: self.assumptions.len(),
                max: MAX_ASSUMPTIONS,
            });
        }

        let mut mentioned: BTreeSet<String> = self.sentences.clone();
        mentioned.extend(self.assumptions.iter().cloned());
        for (a, c) in &self.contraries {
            mentioned.insert(a.clone());
            mentioned.insert(c.clone());
        }
        for (head, body) in &self.rules {
            mentioned.insert(head.clone());
            mentioned.extend(body.iter().cloned());
        }

        let names: Vec<String> = mentioned.into_iter().collect();
        let ids: BTreeMap<String, SentenceId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), SentenceId(i as u32)))
            .collect();
        let in_language = names
            .iter()
            .map(|n| !self.explicit || self.sentences.contains(n))
            .collect();

        let assumption_sentences: Vec<SentenceId> =
            self.assumptions.iter().map(|n| ids[n]).collect();
        let mut assumption_index = vec![None; names.len()];
        for (i, &s) in assumption_sentences.iter().enumerate() {
            assumption_index[s.index()] = Some(AssumptionId(i as u32));
        }
        let contraries = self
            .assumptions
            .iter()
            .map(|n| self.contraries.get(n).map(|c| ids[c]))
            .collect();

        let mut rules: Vec<Rule> = self
            .rules
            .iter()
            .map(|(head, body)| Rule {
                head: ids[head],
                body: body.iter().map(|b| ids[b]).collect(),
            })
            .collect();
        rules.sort();
        rules.dedup();

        Ok(Framework {
            names,
            ids,
            in_language,
            rules,
            assumption_sentences,
            assumption_index,
            contraries,
        })
    }
}

/// A subset of the framework's assumptions, stored as a bitmask over
/// [`AssumptionId`] indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AssumptionSet(u64);

impl AssumptionSet {
    pub const EMPTY: AssumptionSet = AssumptionSet(0);

    pub fn singleton(a: AssumptionId) -> Self {
        AssumptionSet(1 << a.0)
    }

    /// The full set over `n` assumptions.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ASSUMPTIONS);
        if n == 0 {
            AssumptionSet(0)
        } else {
            AssumptionSet(u64::MAX >> (MAX_ASSUMPTIONS - n))
        }
    }

    pub(crate) fn from_bits(bits: u64) -> Self {
        AssumptionSet(bits)
    }

    pub(crate) fn bits(self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, a: AssumptionId) {
        self.0 |= 1 << a.0;
    }

    pub fn with(mut self, a: AssumptionId) -> Self {
        self.insert(a);
        self
    }

    pub fn remove(&mut self, a: AssumptionId) {
        self.0 &= !(1 << a.0);
    }

    pub fn contains(self, a: AssumptionId) -> bool {
        self.0 & (1 << a.0) != 0
    }

    pub fn union(self, other: Self) -> Self {
        AssumptionSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        AssumptionSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        AssumptionSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = AssumptionId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let low = bits.trailing_zeros();
                bits &= bits - 1;
                Some(AssumptionId(low))
            }
        })
    }

    /// Iterates every subset of `universe`, ascending by mask value
    /// (carry-rippler enumeration).
    pub fn subsets(universe: AssumptionSet) -> impl Iterator<Item = AssumptionSet> {
        let set = universe.0;
        let mut subset = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let current = subset;
            subset = subset.wrapping_sub(set) & set;
            done = subset == 0;
            Some(AssumptionSet(current))
        })
    }

    pub fn display(self, framework: &Framework) -> SetDisplay<'_> {
        SetDisplay {
            set: self,
            framework,
        }
    }
}

impl FromIterator<AssumptionId> for AssumptionSet {
    fn from_iter<T: IntoIterator<Item = AssumptionId>>(iter: T) -> Self {
        let mut set = AssumptionSet::EMPTY;
        for a in iter {
            set.insert(a);
        }
        set
    }
}

/// Renders an assumption set as `{a,c}` using the framework's names.
pub struct SetDisplay<'a> {
    set: AssumptionSet,
    framework: &'a Framework,
}

impl fmt::Display for SetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.set.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.framework.assumption_name(a))?;
        }
        write!(f, "}}")
    }
}
