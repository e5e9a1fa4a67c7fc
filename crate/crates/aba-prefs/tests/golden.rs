//! End-to-end checks of the travel fixture: the three-assumption framework
//! whose two maximal viewpoints ({a,c} and {b,c}) attack each other while
//! {c} stays out of every conflict. All expected values below were either
//! computed by hand on the five-node attack graph or cross-checked against
//! the brute-force oracle.

use std::collections::BTreeSet;

use aba_prefs::analysis::analyze_all;
use aba_prefs::elicitation::{compute_all_preferences, Case3Mode};
use aba_prefs::oracle::{verify_completeness, verify_soundness};
use aba_prefs::semantics::DEFAULT_ENUMERATION_CAP;
use aba_prefs::{
    close_preferences, conclusions, enumerate_extensions, AssumptionSet, AtomicPreference,
    AttackKind, Framework, PSet, Preorder, PreferenceSet, Semantics,
};

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

fn set(f: &Framework, names: &[&str]) -> AssumptionSet {
    f.assumption_set(names.iter().copied()).unwrap()
}

fn pset(f: &Framework, sets: &[&str]) -> PSet {
    sets.iter()
        .map(|s| PreferenceSet::parse(f, s).unwrap())
        .collect()
}

fn atoms(f: &Framework, input: &str) -> BTreeSet<AtomicPreference> {
    PreferenceSet::parse(f, input).unwrap().iter().copied().collect()
}

fn sentence_names(f: &Framework, ids: &BTreeSet<aba_prefs::SentenceId>) -> Vec<String> {
    ids.iter().map(|&s| f.sentence_name(s).to_string()).collect()
}

#[test]
fn classical_semantics_and_conclusions() {
    let f = travel();
    let id = Preorder::identity(3);

    let masks = |sem| -> Vec<AssumptionSet> {
        enumerate_extensions(&f, &id, sem)
            .unwrap()
            .into_iter()
            .map(|e| e.assumptions)
            .collect()
    };
    assert_eq!(
        masks(Semantics::Preferred),
        vec![set(&f, &["a", "c"]), set(&f, &["b", "c"])]
    );
    assert_eq!(masks(Semantics::Stable), masks(Semantics::Preferred));
    assert_eq!(masks(Semantics::Grounded), vec![set(&f, &["c"])]);
    assert_eq!(
        masks(Semantics::Complete),
        vec![set(&f, &["c"]), set(&f, &["a", "c"]), set(&f, &["b", "c"])]
    );

    assert_eq!(
        sentence_names(&f, &conclusions(&f, set(&f, &["a", "c"]))),
        vec!["a", "c", "d"]
    );
    assert_eq!(
        sentence_names(&f, &conclusions(&f, set(&f, &["b", "c"]))),
        vec!["b", "c", "e"]
    );
    assert_eq!(
        sentence_names(&f, &conclusions(&f, set(&f, &["c"]))),
        vec!["c"]
    );
}

#[test]
fn one_preference_collapses_every_semantics() {
    let f = travel();
    let po = close_preferences(&f, &PreferenceSet::parse(&f, "a<b").unwrap()).unwrap();
    for sem in [
        Semantics::Grounded,
        Semantics::Preferred,
        Semantics::Stable,
        Semantics::Complete,
    ] {
        let exts = enumerate_extensions(&f, &po, sem).unwrap();
        assert_eq!(exts.len(), 1, "{sem}");
        assert_eq!(exts[0].assumptions, set(&f, &["b", "c"]));
        assert_eq!(
            sentence_names(&f, &exts[0].conclusions),
            vec!["b", "c", "e"]
        );
    }

    // edge kinds on the five-node graph under a<b
    let kind = |x: &[&str], y: &[&str]| aba_prefs::lt_attacks(&f, &po, set(&f, x), set(&f, y));
    assert_eq!(kind(&["b", "c"], &["a"]), AttackKind::Normal);
    assert_eq!(kind(&["b"], &["a", "c"]), AttackKind::Reverse);
    assert_eq!(kind(&["b", "c"], &["a", "c"]), AttackKind::Both);
    assert_eq!(kind(&["a", "c"], &["b"]), AttackKind::NoAttack);
    assert_eq!(kind(&["a", "c"], &["b", "c"]), AttackKind::NoAttack);
}

#[test]
fn staged_elicitation_for_ac() {
    let f = travel();
    let run = compute_all_preferences(&f, set(&f, &["a", "c"]), Case3Mode::Literal).unwrap();

    assert_eq!(
        run.stage(1),
        &pset(&f, &["b<a, c=a", "b=a, c<a", "b<a, c<a"])
    );
    let full = pset(
        &f,
        &[
            "b<a, c=a, b<c",
            "b<a, c=a, b=c",
            "b=a, c<a, b<c",
            "b=a, c<a, b=c",
            "b<a, c<a, b<c",
            "b<a, c<a, b=c",
        ],
    );
    assert_eq!(run.stage(2), &full);
    assert_eq!(run.stage(3), &full);
}

#[test]
fn elicitation_in_prose_mode_matches_literal_on_travel() {
    // single-member branching blocks: both case-3 disciplines coincide here
    let f = travel();
    for e in [set(&f, &["a", "c"]), set(&f, &["b", "c"]), set(&f, &["c"])] {
        let literal = compute_all_preferences(&f, e, Case3Mode::Literal).unwrap();
        let prose = compute_all_preferences(&f, e, Case3Mode::Prose).unwrap();
        assert_eq!(literal.final_pset(), prose.final_pset());
    }
}

#[test]
fn cross_extension_report_for_preferred() {
    let f = travel();
    let report = analyze_all(
        &f,
        Semantics::Preferred,
        Case3Mode::Literal,
        DEFAULT_ENUMERATION_CAP,
    )
    .unwrap();
    assert_eq!(report.rows.len(), 2);

    assert_eq!(report.rows[0].extension, set(&f, &["a", "c"]));
    assert_eq!(
        report.rows[0].prefs,
        pset(
            &f,
            &[
                "b<a, c=a, b<c",
                "b<a, c=a, b=c",
                "b=a, c<a, b<c",
                "b=a, c<a, b=c",
                "b<a, c<a, b<c",
                "b<a, c<a, b=c",
            ]
        )
    );
    assert_eq!(report.rows[0].unique, atoms(&f, "b<a, c<a, b<c"));
    assert_eq!(report.rows[0].common, atoms(&f, "a=b, b=c, a=c"));

    assert_eq!(report.rows[1].extension, set(&f, &["b", "c"]));
    assert_eq!(
        report.rows[1].prefs,
        pset(
            &f,
            &[
                "a<b, c=b, a<c",
                "a<b, c=b, a=c",
                "a=b, c<b, a<c",
                "a=b, c<b, a=c",
                "a<b, c<b, a<c",
                "a<b, c<b, a=c",
            ]
        )
    );
    assert_eq!(report.rows[1].unique, atoms(&f, "a<b, c<b, a<c"));
    assert_eq!(report.rows[1].common, atoms(&f, "a=b, b=c, a=c"));
}

#[test]
fn grounded_extension_elicits_the_four_two_way_sets() {
    let f = travel();
    let run = compute_all_preferences(&f, set(&f, &["c"]), Case3Mode::Literal).unwrap();
    assert_eq!(run.stage(1), &PSet::seed());
    assert_eq!(
        run.final_pset(),
        &pset(&f, &["a<c, b<c", "a<c, b=c", "a=c, b<c", "a=c, b=c"])
    );
}

#[test]
fn oracle_confirms_elicitation_both_ways() {
    let f = travel();
    for names in [["a", "c"], ["b", "c"]] {
        let e = set(&f, &names);
        let run = compute_all_preferences(&f, e, Case3Mode::Literal).unwrap();
        for sem in [Semantics::Preferred, Semantics::Stable] {
            let soundness = verify_soundness(&f, e, sem, run.final_pset());
            assert!(soundness.all_hold());
        }
        let completeness =
            verify_completeness(&f, e, Semantics::Preferred, run.final_pset()).unwrap();
        assert_eq!(completeness.preorder_count, 29);
        assert!(completeness.fully_covered());
    }
}
