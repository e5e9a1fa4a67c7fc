//! Cross-extension comparison of elicited preferences: which atomic
//! preferences appear only in one extension's sets (unique) and which appear
//! in every other extension's sets as well (common).
//!
//! Atoms are compared as raw pairs, not as closed preorders; equalities
//! match in either orientation, strict atoms only with identical
//! orientation. That is exactly what canonical [`AtomicPreference`] equality
//! provides.

use std::collections::BTreeSet;

use crate::elicitation::{compute_all_preferences, Case3Mode};
use crate::error::Error;
use crate::framework::{AssumptionSet, Framework};
use crate::preference::{AtomicPreference, PSet, Preorder};
use crate::semantics::{enumerate_extensions_capped, Semantics};

/// Atoms of `target` that occur in no set of any member of `others`.
pub fn unique_preferences(target: &PSet, others: &[&PSet]) -> BTreeSet<AtomicPreference> {
    target
        .atoms()
        .into_iter()
        .filter(|p| {
            others
                .iter()
                .all(|other| other.iter().all(|prefs| !prefs.contains(p)))
        })
        .collect()
}

/// Atoms of `target` such that every member of `others` has at least one set
/// containing the atom.
pub fn common_preferences(target: &PSet, others: &[&PSet]) -> BTreeSet<AtomicPreference> {
    target
        .atoms()
        .into_iter()
        .filter(|p| {
            others
                .iter()
                .all(|other| other.iter().any(|prefs| prefs.contains(p)))
        })
        .collect()
}

/// One row of a [`PreferenceReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub extension: AssumptionSet,
    pub prefs: PSet,
    pub unique: BTreeSet<AtomicPreference>,
    pub common: BTreeSet<AtomicPreference>,
}

/// Elicited preferences for every extension of one semantics, with unique
/// and common atoms computed against all other extensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceReport {
    pub semantics: Semantics,
    pub rows: Vec<ExtensionReport>,
}

/// Enumerates the extensions of `semantics` under the identity preorder,
/// elicits preferences for each, and cross-compares them.
pub fn analyze_all(
    framework: &Framework,
    semantics: Semantics,
    mode: Case3Mode,
    cap: usize,
) -> Result<PreferenceReport, Error> {
    let identity = Preorder::identity(framework.assumption_count());
    let extensions = enumerate_extensions_capped(framework, &identity, semantics, cap)?;
    let psets: Vec<(AssumptionSet, PSet)> = extensions
        .iter()
        .map(|ext| {
            compute_all_preferences(framework, ext.assumptions, mode)
                .map(|run| (ext.assumptions, run.case3))
        })
        .collect::<Result<_, _>>()?;

    let rows = psets
        .iter()
        .enumerate()
        .map(|(i, (extension, prefs))| {
            let others: Vec<&PSet> = psets
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, (_, p))| p)
                .collect();
            ExtensionReport {
                extension: *extension,
                prefs: prefs.clone(),
                unique: unique_preferences(prefs, &others),
                common: common_preferences(prefs, &others),
            }
        })
        .collect();

    Ok(PreferenceReport { semantics, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preference::PreferenceSet;
    use crate::semantics::DEFAULT_ENUMERATION_CAP;

    fn travel() -> Framework {
        Framework::builder()
            .assumption("a")
            .assumption("b")
            .assumption("c")
            .contrary("a", "e")
            .contrary("b", "d")
            .contrary("c", "f")
            .rule("d", ["a", "c"])
            .rule("e", ["b", "c"])
            .build()
            .unwrap()
    }

    fn atoms(f: &Framework, input: &str) -> BTreeSet<AtomicPreference> {
        PreferenceSet::parse(f, input).unwrap().iter().copied().collect()
    }

    #[test]
    fn unique_and_common_across_the_two_preferred_extensions() {
        let f = travel();
        let report = analyze_all(
            &f,
            Semantics::Preferred,
            Case3Mode::Literal,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        assert_eq!(report.rows.len(), 2);

        let ac = &report.rows[0];
        assert_eq!(ac.extension, f.assumption_set(["a", "c"]).unwrap());
        assert_eq!(ac.prefs.len(), 6);
        assert_eq!(ac.unique, atoms(&f, "b<a, c<a, b<c"));
        assert_eq!(ac.common, atoms(&f, "a=b, b=c, a=c"));

        let bc = &report.rows[1];
        assert_eq!(bc.extension, f.assumption_set(["b", "c"]).unwrap());
        assert_eq!(bc.unique, atoms(&f, "a<b, c<b, a<c"));
        assert_eq!(bc.common, atoms(&f, "a=b, b=c, a=c"));
    }

    #[test]
    fn no_others_makes_both_vacuous() {
        let f = travel();
        let report = analyze_all(
            &f,
            Semantics::Grounded,
            Case3Mode::Literal,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        assert_eq!(report.rows.len(), 1);
        let row = &report.rows[0];
        assert_eq!(row.extension, f.assumption_set(["c"]).unwrap());
        let all = row.prefs.atoms();
        assert_eq!(row.unique, all);
        assert_eq!(row.common, all);
    }

    #[test]
    fn disjoint_vocabularies_share_nothing() {
        let f = travel();
        let target: PSet = [PreferenceSet::parse(&f, "a<b").unwrap()].into_iter().collect();
        let other: PSet = [PreferenceSet::parse(&f, "a<c").unwrap()].into_iter().collect();
        assert!(common_preferences(&target, &[&other]).is_empty());
        assert_eq!(unique_preferences(&target, &[&other]), atoms(&f, "a<b"));
    }

    #[test]
    fn unique_and_common_are_disjoint_when_others_exist() {
        let f = travel();
        let report = analyze_all(
            &f,
            Semantics::Preferred,
            Case3Mode::Literal,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        for row in &report.rows {
            assert!(row.unique.intersection(&row.common).next().is_none());
        }
    }

    #[test]
    fn strict_atoms_match_only_with_identical_orientation() {
        let f = travel();
        let target: PSet = [PreferenceSet::parse(&f, "a<b").unwrap()].into_iter().collect();
        let flipped: PSet = [PreferenceSet::parse(&f, "b<a").unwrap()].into_iter().collect();
        assert_eq!(unique_preferences(&target, &[&flipped]), atoms(&f, "a<b"));
        let equal: PSet = [PreferenceSet::parse(&f, "b=a").unwrap()].into_iter().collect();
        let equal_flipped: PSet = [PreferenceSet::parse(&f, "a=b").unwrap()].into_iter().collect();
        assert!(unique_preferences(&equal, &[&equal_flipped]).is_empty());
    }
}
