//! Preferences over assumptions: atomic strict/equal statements, canonical
//! preference sets, and reflexive-transitive preorders with a derived strict
//! part.
//!
//! Elicited preferences stay raw pair lists; they are only closed into a
//! preorder at the point where they parameterize the attack relation. This
//! keeps elicitation output directly comparable while [`close_preferences`]
//! still rejects sets whose transitive closure contradicts a declared strict
//! preference.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::framework::{AssumptionId, AssumptionSet, Framework};

/// Kind of an atomic preference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// `x < y`: the left assumption is strictly less preferred.
    Strict,
    /// `x = y`: both assumptions are equally preferred.
    Equal,
}

/// One preference statement between two distinct assumptions.
///
/// Equalities are symmetric and stored with the smaller index first, so two
/// ways of writing the same equality compare equal. Strict atoms are
/// ordered: the left side is the strictly less preferred assumption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicPreference {
    left: AssumptionId,
    relation: Relation,
    right: AssumptionId,
}

impl AtomicPreference {
    /// `less < more`.
    pub fn strict(less: AssumptionId, more: AssumptionId) -> Self {
        assert!(less != more, "a preference must relate two distinct assumptions");
        AtomicPreference {
            left: less,
            relation: Relation::Strict,
            right: more,
        }
    }

    /// `x = y`, canonicalized.
    pub fn equal(x: AssumptionId, y: AssumptionId) -> Self {
        assert!(x != y, "a preference must relate two distinct assumptions");
        AtomicPreference {
            left: x.min(y),
            relation: Relation::Equal,
            right: x.max(y),
        }
    }

    pub fn left(self) -> AssumptionId {
        self.left
    }

    pub fn relation(self) -> Relation {
        self.relation
    }

    pub fn right(self) -> AssumptionId {
        self.right
    }

    /// The unordered pair this atom constrains.
    pub fn pair(self) -> (AssumptionId, AssumptionId) {
        (self.left.min(self.right), self.left.max(self.right))
    }

    pub fn involves(self, x: AssumptionId, y: AssumptionId) -> bool {
        self.pair() == (x.min(y), x.max(y))
    }

    pub fn display(self, framework: &Framework) -> AtomDisplay<'_> {
        AtomDisplay {
            atom: self,
            framework,
        }
    }
}

pub struct AtomDisplay<'a> {
    atom: AtomicPreference,
    framework: &'a Framework,
}

impl fmt::Display for AtomDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.atom.relation {
            Relation::Strict => "<",
            Relation::Equal => "=",
        };
        write!(
            f,
            "{}{}{}",
            self.framework.assumption_name(self.atom.left),
            op,
            self.framework.assumption_name(self.atom.right)
        )
    }
}

/// A set of atomic preferences, kept sorted and deduplicated.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct PreferenceSet {
    prefs: BTreeSet<AtomicPreference>,
}

impl PreferenceSet {
    pub fn empty() -> Self {
        PreferenceSet::default()
    }

    pub fn insert(&mut self, p: AtomicPreference) {
        self.prefs.insert(p);
    }

    pub fn with(&self, p: AtomicPreference) -> Self {
        let mut next = self.clone();
        next.insert(p);
        next
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut next = self.clone();
        next.prefs.extend(other.prefs.iter().copied());
        next
    }

    pub fn contains(&self, p: &AtomicPreference) -> bool {
        self.prefs.contains(p)
    }

    /// True when any atom relates the unordered pair `{x, y}`.
    pub fn constrains(&self, x: AssumptionId, y: AssumptionId) -> bool {
        self.prefs.iter().any(|p| p.involves(x, y))
    }

    /// True when no unordered pair is related twice.
    pub fn is_coherent(&self) -> bool {
        let pairs: BTreeSet<_> = self.prefs.iter().map(|p| p.pair()).collect();
        pairs.len() == self.prefs.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &AtomicPreference> {
        self.prefs.iter()
    }

    pub fn len(&self) -> usize {
        self.prefs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefs.is_empty()
    }

    /// Parses a comma- or semicolon-separated list such as `"b<a, c=a"`.
    pub fn parse(framework: &Framework, input: &str) -> Result<Self, Error> {
        let mut set = PreferenceSet::empty();
        for raw in input
            .split([',', ';'])
            .map(str::trim)
            .filter(|s| !s.is_empty())
        {
            let (op_idx, relation) = match (raw.find('<'), raw.find('=')) {
                (Some(i), None) => (i, Relation::Strict),
                (None, Some(i)) => (i, Relation::Equal),
                _ => {
                    return Err(Error::MalformedPreference {
                        input: raw.to_string(),
                        detail: "expected exactly one of '<' or '='".to_string(),
                    })
                }
            };
            let left_name = raw[..op_idx].trim();
            let right_name = raw[op_idx + 1..].trim();
            let resolve = |name: &str| {
                framework
                    .assumption_id(name)
                    .ok_or_else(|| Error::UnknownAssumption {
                        name: name.to_string(),
                    })
            };
            let left = resolve(left_name)?;
            let right = resolve(right_name)?;
            if left == right {
                return Err(Error::MalformedPreference {
                    input: raw.to_string(),
                    detail: "a preference must relate two distinct assumptions".to_string(),
                });
            }
            let atom = match relation {
                Relation::Strict => AtomicPreference::strict(left, right),
                Relation::Equal => AtomicPreference::equal(left, right),
            };
            if !set.contains(&atom) && set.constrains(left, right) {
                return Err(Error::IncoherentPreferences {
                    detail: format!(
                        "pair '{}'/'{}' is related twice",
                        framework.assumption_name(left),
                        framework.assumption_name(right)
                    ),
                });
            }
            set.insert(atom);
        }
        Ok(set)
    }

    pub fn display<'a>(&'a self, framework: &'a Framework) -> PrefSetDisplay<'a> {
        PrefSetDisplay {
            set: self,
            framework,
        }
    }
}

impl FromIterator<AtomicPreference> for PreferenceSet {
    fn from_iter<T: IntoIterator<Item = AtomicPreference>>(iter: T) -> Self {
        PreferenceSet {
            prefs: iter.into_iter().collect(),
        }
    }
}

pub struct PrefSetDisplay<'a> {
    set: &'a PreferenceSet,
    framework: &'a Framework,
}

impl fmt::Display for PrefSetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.set.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", p.display(self.framework))?;
        }
        write!(f, "}}")
    }
}

/// Normal form of a preference set: equalities oriented small-index-first and
/// atoms sorted. Sets built through this API are already canonical, so this
/// is idempotent by construction.
pub fn canonicalize(ps: &PreferenceSet) -> PreferenceSet {
    ps.iter()
        .map(|p| match p.relation() {
            Relation::Strict => AtomicPreference::strict(p.left(), p.right()),
            Relation::Equal => AtomicPreference::equal(p.left(), p.right()),
        })
        .collect()
}

/// A set of preference sets — the output shape of elicitation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PSet {
    sets: BTreeSet<PreferenceSet>,
}

impl PSet {
    pub fn empty() -> Self {
        PSet::default()
    }

    /// The seed value: a single empty preference set.
    pub fn seed() -> Self {
        let mut p = PSet::empty();
        p.insert(PreferenceSet::empty());
        p
    }

    pub fn insert(&mut self, set: PreferenceSet) {
        self.sets.insert(set);
    }

    pub fn contains(&self, set: &PreferenceSet) -> bool {
        self.sets.contains(set)
    }

    pub fn iter(&self) -> impl Iterator<Item = &PreferenceSet> {
        self.sets.iter()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Replaces an empty collection by `{{}}` so downstream stages still have
    /// a set to extend.
    pub fn normalized(self) -> Self {
        if self.is_empty() {
            PSet::seed()
        } else {
            self
        }
    }

    /// Every atom occurring in any member set.
    pub fn atoms(&self) -> BTreeSet<AtomicPreference> {
        self.sets
            .iter()
            .flat_map(|s| s.iter().copied())
            .collect()
    }

    /// True when some member set relates the unordered pair `{x, y}`.
    pub fn constrains(&self, x: AssumptionId, y: AssumptionId) -> bool {
        self.sets.iter().any(|s| s.constrains(x, y))
    }
}

impl FromIterator<PreferenceSet> for PSet {
    fn from_iter<T: IntoIterator<Item = PreferenceSet>>(iter: T) -> Self {
        PSet {
            sets: iter.into_iter().collect(),
        }
    }
}

/// How a preorder relates one unordered pair of assumptions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStance {
    /// `lt(x, y)` for the queried order (x, y).
    LessThan,
    /// `lt(y, x)`.
    GreaterThan,
    /// `leq` both ways.
    Equivalent,
    /// `leq` neither way.
    Incomparable,
}

/// A reflexive and transitive relation `leq` over the framework's
/// assumptions; `lt` is its strict part. Constructors guarantee the
/// invariants, either by construction ([`Preorder::identity`]) or by
/// checking ([`close_preferences`], the oracle's enumeration).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Preorder {
    n: usize,
    rows: Vec<u64>,
}

impl Preorder {
    /// The discrete preorder: only reflexive pairs. Its strict part is empty,
    /// which makes the preference-aware attack relation coincide with the
    /// plain one.
    pub fn identity(n: usize) -> Self {
        Preorder {
            n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    pub(crate) fn from_rows_unchecked(n: usize, rows: Vec<u64>) -> Self {
        Preorder { n, rows }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn leq(&self, x: AssumptionId, y: AssumptionId) -> bool {
        self.rows[x.index()] & (1 << y.index()) != 0
    }

    pub fn lt(&self, x: AssumptionId, y: AssumptionId) -> bool {
        self.leq(x, y) && !self.leq(y, x)
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, &row)| row == 1 << i)
    }

    pub fn stance(&self, x: AssumptionId, y: AssumptionId) -> PairStance {
        match (self.leq(x, y), self.leq(y, x)) {
            (true, true) => PairStance::Equivalent,
            (true, false) => PairStance::LessThan,
            (false, true) => PairStance::GreaterThan,
            (false, false) => PairStance::Incomparable,
        }
    }

    /// Mask of assumptions strictly less preferred than `b`.
    pub(crate) fn strictly_less_mask(&self, b: AssumptionId) -> AssumptionSet {
        let mut mask = 0u64;
        for x in 0..self.n {
            let x = AssumptionId(x as u32);
            if self.lt(x, b) {
                mask |= 1 << x.index();
            }
        }
        AssumptionSet::from_bits(mask)
    }

    /// The comparable pairs as atoms: one strict or equal atom per pair,
    /// incomparable pairs omitted. Fully determines the preorder.
    pub fn atoms(&self) -> Vec<AtomicPreference> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                let (x, y) = (AssumptionId(x as u32), AssumptionId(y as u32));
                match self.stance(x, y) {
                    PairStance::LessThan => out.push(AtomicPreference::strict(x, y)),
                    PairStance::GreaterThan => out.push(AtomicPreference::strict(y, x)),
                    PairStance::Equivalent => out.push(AtomicPreference::equal(x, y)),
                    PairStance::Incomparable => {}
                }
            }
        }
        out
    }

    pub fn display<'a>(&'a self, framework: &'a Framework) -> PreorderDisplay<'a> {
        PreorderDisplay {
            preorder: self,
            framework,
        }
    }
}

pub struct PreorderDisplay<'a> {
    preorder: &'a Preorder,
    framework: &'a Framework,
}

impl fmt::Display for PreorderDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms = self.preorder.atoms();
        if atoms.is_empty() {
            return write!(f, "identity");
        }
        for (i, a) in atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", a.display(self.framework))?;
        }
        Ok(())
    }
}

/// Closes a raw preference set into a preorder: reflexivity, `leq` both ways
/// for equalities, `leq` one way for stricts, then transitive closure.
///
/// Fails when the closure forces `leq(y, x)` for a declared strict `x < y`
/// (for instance through an equality chain), since that pair would no longer
/// be strict.
pub fn close_preferences(framework: &Framework, ps: &PreferenceSet) -> Result<Preorder, Error> {
    let n = framework.assumption_count();
    let mut rows: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();

    for p in ps.iter() {
        let (l, r) = (p.left().index(), p.right().index());
        match p.relation() {
            Relation::Strict => rows[l] |= 1 << r,
            Relation::Equal => {
                rows[l] |= 1 << r;
                rows[r] |= 1 << l;
            }
        }
    }

    // Floyd-Warshall over bit rows.
    for k in 0..n {
        let row_k = rows[k];
        for row in rows.iter_mut() {
            if *row & (1 << k) != 0 {
                *row |= row_k;
            }
        }
    }

    for p in ps.iter() {
        if p.relation() == Relation::Strict && rows[p.right().index()] & (1 << p.left().index()) != 0
        {
            return Err(Error::Inconsistency {
                detail: format!(
                    "'{}' is declared strictly below '{}' but the closure relates them the other way",
                    framework.assumption_name(p.left()),
                    framework.assumption_name(p.right()),
                ),
            });
        }
    }

    Ok(Preorder { n, rows })
}
