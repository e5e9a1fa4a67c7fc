//! Text and JSON renderings of command results.
//!
//! Both modes encode the same result payload; JSON additionally carries the
//! attack graph for `extensions`. The JSON schema is stable: preference
//! atoms are `{"left": id, "rel": "<"|"=", "right": id}`, extensions are
//! sorted arrays of ids, field order is fixed by the struct definitions and
//! every array is sorted canonically, so identical inputs produce
//! byte-identical output.

use serde::Serialize;

use aba_prefs::analysis::PreferenceReport;
use aba_prefs::oracle::{CompletenessReport, SoundnessCheck, SoundnessReport};
use aba_prefs::{
    AssumptionSet, AtomicPreference, AttackKind, Extension, Framework, PSet, Preorder,
    PreferenceSet, Relation, Semantics,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn names(framework: &Framework, set: AssumptionSet) -> Vec<String> {
    set.iter()
        .map(|a| framework.assumption_name(a).to_string())
        .collect()
}

#[derive(Serialize)]
pub struct AtomJson {
    pub left: String,
    pub rel: String,
    pub right: String,
}

pub fn atom_json(framework: &Framework, atom: &AtomicPreference) -> AtomJson {
    AtomJson {
        left: framework.assumption_name(atom.left()).to_string(),
        rel: match atom.relation() {
            Relation::Strict => "<".to_string(),
            Relation::Equal => "=".to_string(),
        },
        right: framework.assumption_name(atom.right()).to_string(),
    }
}

pub fn prefs_json(framework: &Framework, prefs: &PreferenceSet) -> Vec<AtomJson> {
    prefs.iter().map(|p| atom_json(framework, p)).collect()
}

pub fn pset_json(framework: &Framework, pset: &PSet) -> Vec<Vec<AtomJson>> {
    pset.iter().map(|p| prefs_json(framework, p)).collect()
}

pub fn preorder_json(framework: &Framework, preorder: &Preorder) -> Vec<AtomJson> {
    preorder
        .atoms()
        .iter()
        .map(|p| atom_json(framework, p))
        .collect()
}

#[derive(Serialize)]
pub struct ExtensionJson {
    pub assumptions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusions: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct AttackEdgeJson {
    pub from: Vec<String>,
    pub to: Vec<String>,
    pub kind: String,
}

#[derive(Serialize)]
pub struct AttackGraphJson {
    pub nodes: Vec<Vec<String>>,
    pub edges: Vec<AttackEdgeJson>,
}

#[derive(Serialize)]
pub struct ExtensionsOutput {
    pub semantics: String,
    pub preferences: Vec<AtomJson>,
    pub extensions: Vec<ExtensionJson>,
    pub attack_graph: AttackGraphJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn attack_kind_name(kind: AttackKind) -> &'static str {
    match kind {
        AttackKind::NoAttack => "none",
        AttackKind::Normal => "normal",
        AttackKind::Reverse => "reverse",
        AttackKind::Both => "both",
    }
}

/// Attack graph over the assumption singletons, the listed extensions, and
/// the extensions the same semantics yields without preferences — so the
/// graph shows how the declared preorder reshapes the preference-free
/// landscape.
pub fn attack_graph(
    framework: &Framework,
    preorder: &Preorder,
    semantics: Semantics,
    extensions: &[Extension],
) -> AttackGraphJson {
    let mut node_sets: Vec<AssumptionSet> = framework
        .assumptions()
        .map(AssumptionSet::singleton)
        .collect();
    let identity = Preorder::identity(framework.assumption_count());
    let classical = aba_prefs::semantics::enumerate_extensions_capped(
        framework,
        &identity,
        semantics,
        framework.assumption_count(),
    )
    .unwrap_or_default();
    for e in extensions.iter().chain(classical.iter()) {
        if !node_sets.contains(&e.assumptions) {
            node_sets.push(e.assumptions);
        }
    }
    node_sets.sort();
    let mut edges = Vec::new();
    for &from in &node_sets {
        for &to in &node_sets {
            let kind = aba_prefs::lt_attacks(framework, preorder, from, to);
            if kind.is_attack() {
                edges.push(AttackEdgeJson {
                    from: names(framework, from),
                    to: names(framework, to),
                    kind: attack_kind_name(kind).to_string(),
                });
            }
        }
    }
    AttackGraphJson {
        nodes: node_sets
            .into_iter()
            .map(|s| names(framework, s))
            .collect(),
        edges,
    }
}

/// Everything the `extensions` renderer needs.
pub struct ExtensionsView<'a> {
    pub framework: &'a Framework,
    pub preorder: &'a Preorder,
    pub declared: &'a PreferenceSet,
    pub semantics: Semantics,
    pub extensions: &'a [Extension],
    pub with_conclusions: bool,
    pub note: Option<String>,
}

pub fn render_extensions(view: &ExtensionsView, format: Format) -> String {
    let framework = view.framework;
    match format {
        Format::Text => {
            let mut out = String::new();
            for e in view.extensions {
                out.push_str(&e.assumptions.display(framework).to_string());
                if view.with_conclusions {
                    let cn: Vec<&str> = e
                        .conclusions
                        .iter()
                        .map(|&s| framework.sentence_name(s))
                        .collect();
                    out.push_str(&format!(" |- {{{}}}", cn.join(",")));
                }
                out.push('\n');
            }
            if let Some(note) = &view.note {
                out.push_str(note);
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let payload = ExtensionsOutput {
                semantics: view.semantics.long_name().to_string(),
                preferences: prefs_json(framework, view.declared),
                extensions: view
                    .extensions
                    .iter()
                    .map(|e| ExtensionJson {
                        assumptions: names(framework, e.assumptions),
                        conclusions: view.with_conclusions.then(|| {
                            e.conclusions
                                .iter()
                                .map(|&s| framework.sentence_name(s).to_string())
                                .collect()
                        }),
                    })
                    .collect(),
                attack_graph: attack_graph(
                    framework,
                    view.preorder,
                    view.semantics,
                    view.extensions,
                ),
                note: view.note.clone(),
            };
            to_json(&payload)
        }
    }
}

#[derive(Serialize)]
pub struct VerificationJson {
    pub prefs: Vec<AtomJson>,
    pub outcome: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counter_extensions: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct ElicitOutput {
    pub extension: Vec<String>,
    pub stage: u8,
    pub case3_mode: String,
    pub preference_sets: Vec<Vec<AtomJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<VerificationJson>>,
}

/// Human-readable verdict for one soundness check.
pub fn check_verdict(check: &SoundnessCheck) -> String {
    match (check.holds(), check.closure_consistent) {
        (true, true) => "sound".to_string(),
        (true, false) => "sound (raw, non-transitive relation)".to_string(),
        (false, _) => "unsound".to_string(),
    }
}

pub fn verification_json(framework: &Framework, report: &SoundnessReport) -> Vec<VerificationJson> {
    report
        .checks
        .iter()
        .map(|check| VerificationJson {
            prefs: prefs_json(framework, &check.prefs),
            outcome: check_verdict(check),
            counter_extensions: check
                .counter_extensions
                .iter()
                .map(|&e| names(framework, e))
                .collect(),
        })
        .collect()
}

pub fn render_elicit(
    framework: &Framework,
    extension: AssumptionSet,
    stage: u8,
    mode_name: &str,
    pset: &PSet,
    verification: Option<&SoundnessReport>,
    format: Format,
) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            match verification {
                None => {
                    for prefs in pset.iter() {
                        out.push_str(&prefs.display(framework).to_string());
                        out.push('\n');
                    }
                }
                Some(report) => {
                    for check in &report.checks {
                        out.push_str(&format!(
                            "{}  [{}]",
                            check.prefs.display(framework),
                            check_verdict(check)
                        ));
                        if !check.holds() && !check.counter_extensions.is_empty() {
                            let exts: Vec<String> = check
                                .counter_extensions
                                .iter()
                                .map(|&e| e.display(framework).to_string())
                                .collect();
                            out.push_str(&format!("  yields: {}", exts.join(" ")));
                        }
                        out.push('\n');
                    }
                }
            }
            out
        }
        Format::Json => {
            let payload = ElicitOutput {
                extension: names(framework, extension),
                stage,
                case3_mode: mode_name.to_string(),
                preference_sets: pset_json(framework, pset),
                verification: verification.map(|r| verification_json(framework, r)),
            };
            to_json(&payload)
        }
    }
}

#[derive(Serialize)]
pub struct AnalyzeRowJson {
    pub extension: Vec<String>,
    pub preference_sets: Vec<Vec<AtomJson>>,
    pub unique: Vec<AtomJson>,
    pub common: Vec<AtomJson>,
}

#[derive(Serialize)]
pub struct AnalyzeOutput {
    pub semantics: String,
    pub rows: Vec<AnalyzeRowJson>,
}

pub fn render_analyze(framework: &Framework, report: &PreferenceReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!("semantics: {}\n", report.semantics.long_name());
            for row in &report.rows {
                out.push_str(&format!(
                    "\nextension {}\n  preference sets:\n",
                    row.extension.display(framework)
                ));
                for prefs in row.prefs.iter() {
                    out.push_str(&format!("    {}\n", prefs.display(framework)));
                }
                let join = |atoms: &std::collections::BTreeSet<AtomicPreference>| {
                    if atoms.is_empty() {
                        "(none)".to_string()
                    } else {
                        atoms
                            .iter()
                            .map(|p| p.display(framework).to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    }
                };
                out.push_str(&format!("  unique: {}\n", join(&row.unique)));
                out.push_str(&format!("  common: {}\n", join(&row.common)));
            }
            out
        }
        Format::Json => {
            let payload = AnalyzeOutput {
                semantics: report.semantics.long_name().to_string(),
                rows: report
                    .rows
                    .iter()
                    .map(|row| AnalyzeRowJson {
                        extension: names(framework, row.extension),
                        preference_sets: pset_json(framework, &row.prefs),
                        unique: row.unique.iter().map(|p| atom_json(framework, p)).collect(),
                        common: row.common.iter().map(|p| atom_json(framework, p)).collect(),
                    })
                    .collect(),
            };
            to_json(&payload)
        }
    }
}

#[derive(Serialize)]
pub struct VerifyOutput {
    pub extension: Vec<String>,
    pub semantics: String,
    pub results: Vec<VerificationJson>,
    pub all_sound: bool,
}

pub fn render_verify(framework: &Framework, report: &SoundnessReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for check in &report.checks {
                out.push_str(&format!(
                    "{}: {}",
                    check.prefs.display(framework),
                    check_verdict(check)
                ));
                if !check.holds() && !check.counter_extensions.is_empty() {
                    let exts: Vec<String> = check
                        .counter_extensions
                        .iter()
                        .map(|&e| e.display(framework).to_string())
                        .collect();
                    out.push_str(&format!(" (yields: {})", exts.join(" ")));
                }
                out.push('\n');
            }
            let sound = report.checks.iter().filter(|c| c.holds()).count();
            out.push_str(&format!("summary: {sound}/{} sound\n", report.checks.len()));
            out
        }
        Format::Json => {
            let payload = VerifyOutput {
                extension: names(framework, report.extension),
                semantics: report.semantics.long_name().to_string(),
                results: verification_json(framework, report),
                all_sound: report.all_hold(),
            };
            to_json(&payload)
        }
    }
}

#[derive(Serialize)]
pub struct CoveredJson {
    pub preorder: Vec<AtomJson>,
    pub matched_by: Vec<AtomJson>,
}

#[derive(Serialize)]
pub struct OracleOutput {
    pub extension: Vec<String>,
    pub semantics: String,
    pub preorder_count: usize,
    pub yielding_count: usize,
    pub covered: Vec<CoveredJson>,
    pub uncovered: Vec<Vec<AtomJson>>,
}

pub fn render_oracle(
    framework: &Framework,
    report: &CompletenessReport,
    format: Format,
) -> String {
    match format {
        Format::Text => {
            let mut out = format!(
                "preorders over {} assumptions: {}\n",
                framework.assumption_count(),
                report.preorder_count
            );
            out.push_str(&format!(
                "yielding {} under {}: {}\n",
                report.extension.display(framework),
                report.semantics.long_name(),
                report.yielding_count
            ));
            out.push_str(&format!(
                "covered by elicited sets: {}, uncovered: {}\n",
                report.covered.len(),
                report.uncovered.len()
            ));
            for c in &report.covered {
                out.push_str(&format!(
                    "  covered: {}  => {}\n",
                    c.preorder.display(framework),
                    c.matched_by.display(framework)
                ));
            }
            for u in &report.uncovered {
                out.push_str(&format!("  uncovered: {}\n", u.display(framework)));
            }
            out
        }
        Format::Json => {
            let payload = OracleOutput {
                extension: names(framework, report.extension),
                semantics: report.semantics.long_name().to_string(),
                preorder_count: report.preorder_count,
                yielding_count: report.yielding_count,
                covered: report
                    .covered
                    .iter()
                    .map(|c| CoveredJson {
                        preorder: preorder_json(framework, &c.preorder),
                        matched_by: prefs_json(framework, &c.matched_by),
                    })
                    .collect(),
                uncovered: report
                    .uncovered
                    .iter()
                    .map(|u| preorder_json(framework, u))
                    .collect(),
            };
            to_json(&payload)
        }
    }
}

fn to_json<T: Serialize>(payload: &T) -> String {
    let mut out = serde_json::to_string_pretty(payload).expect("serializable payload");
    out.push('\n');
    out
}
