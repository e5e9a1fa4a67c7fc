//! End-to-end tests of the `aba-prefs` binary: output shapes, exit codes,
//! and byte stability of the JSON mode.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name]
        .iter()
        .collect();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aba-prefs"))
        .args(args)
        .env_remove("ABA_PREFS_MAX_ASSUMPTIONS")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn extensions_lists_the_preferred_pair() {
    let out = run(&["extensions", "--semantics", "prf", &fixture("travel.aba")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{a,c}\n{b,c}\n");
}

#[test]
fn extensions_with_conclusions() {
    let out = run(&[
        "extensions",
        "--semantics",
        "grd",
        "--conclusions",
        &fixture("travel.aba"),
    ]);
    assert_eq!(stdout(&out), "{c} |- {c}\n");
}

#[test]
fn prefer_lines_select_the_preorder() {
    for sem in ["grd", "prf", "stb", "com"] {
        let out = run(&["extensions", "--semantics", sem, &fixture("travel_pref.aba")]);
        assert_eq!(out.status.code(), Some(0), "{sem}");
        assert_eq!(stdout(&out), "{b,c}\n", "{sem}");
    }
}

#[test]
fn extensions_json_carries_the_attack_graph() {
    let out = run(&[
        "extensions",
        "--semantics",
        "prf",
        "--format",
        "json",
        &fixture("travel_pref.aba"),
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["semantics"], "preferred");
    assert_eq!(json["preferences"][0]["left"], "a");
    assert_eq!(json["preferences"][0]["rel"], "<");
    assert_eq!(json["extensions"][0]["assumptions"][0], "b");
    let edges = json["attack_graph"]["edges"].as_array().unwrap();
    let find = |from: &[&str], to: &[&str]| {
        edges
            .iter()
            .find(|e| {
                e["from"] == serde_json::json!(from) && e["to"] == serde_json::json!(to)
            })
            .map(|e| e["kind"].as_str().unwrap().to_string())
    };
    assert_eq!(find(&["b", "c"], &["a"]), Some("normal".into()));
    assert_eq!(find(&["b"], &["a", "c"]), Some("reverse".into()));
    assert_eq!(find(&["b", "c"], &["a", "c"]), Some("both".into()));
    assert_eq!(find(&["a", "c"], &["b"]), None);
    assert_eq!(edges.len(), 3);
}

#[test]
fn json_output_is_byte_stable() {
    for args in [
        vec!["extensions", "--semantics", "com", "--format", "json"],
        vec!["elicit", "--semantics", "prf", "--extension", "a,c", "--format", "json"],
        vec!["analyze", "--semantics", "prf", "--format", "json"],
    ] {
        let mut with_file = args.clone();
        let file = fixture("travel.aba");
        with_file.push(&file);
        let first = stdout(&run(&with_file));
        let second = stdout(&run(&with_file));
        assert_eq!(first, second);
        assert!(!first.is_empty());
    }
}

#[test]
fn elicit_prints_the_six_sets() {
    let out = run(&[
        "elicit",
        "--semantics",
        "prf",
        "--extension",
        "a,c",
        &fixture("travel.aba"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{a=b, b<c, c<a}\n\
         {a=b, b=c, c<a}\n\
         {a=c, b<a, b<c}\n\
         {a=c, b<a, b=c}\n\
         {b<a, b<c, c<a}\n\
         {b<a, b=c, c<a}\n"
    );
}

#[test]
fn elicit_stage_flag_truncates_the_pipeline() {
    let out = run(&[
        "elicit",
        "--semantics",
        "prf",
        "--extension",
        "a,c",
        "--stage",
        "1",
        &fixture("travel.aba"),
    ]);
    assert_eq!(stdout(&out), "{a=b, c<a}\n{a=c, b<a}\n{b<a, c<a}\n");
}

#[test]
fn elicit_verify_annotates_each_set() {
    let out = run(&[
        "elicit",
        "--semantics",
        "prf",
        "--extension",
        "b,c",
        "--verify",
        &fixture("travel.aba"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 6);
    for line in text.lines() {
        assert!(line.contains("[sound"), "{line}");
    }
}

// A framework where one elicited set genuinely breaks acceptability: with
// r <- c a and both b,c contraried by r, the extension {a} elicits
// {a=b, c<a}, whose closure un-attacks {a,b} and destroys {a}'s maximality.
#[test]
fn elicit_verify_flags_unsound_sets_with_exit_one() {
    let dir = std::env::temp_dir().join("aba_prefs_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("unsound.aba");
    std::fs::write(
        &path,
        "assumption a\nassumption b\nassumption c\n\
         contrary a q\ncontrary b r\ncontrary c r\n\
         rule r <- c a\n",
    )
    .unwrap();
    let out = run(&[
        "elicit",
        "--semantics",
        "prf",
        "--extension",
        "a",
        "--verify",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("[unsound]"), "{text}");
    assert!(text.contains("[sound]"), "{text}");
}

#[test]
fn elicit_warns_about_ignored_preferences() {
    let out = run(&[
        "elicit",
        "--semantics",
        "prf",
        "--extension",
        "b,c",
        &fixture("travel_pref.aba"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("'prefer' lines are ignored"));
}

#[test]
fn analyze_renders_the_cross_extension_report() {
    let out = run(&["analyze", "--semantics", "prf", &fixture("travel.aba")]);
    let text = stdout(&out);
    assert!(text.contains("extension {a,c}"));
    assert!(text.contains("extension {b,c}"));
    assert!(text.contains("unique: b<a, b<c, c<a"));
    assert!(text.contains("unique: a<b, a<c, c<b"));
    assert!(text.contains("common: a=b, a=c, b=c"));
}

#[test]
fn verify_passes_and_fails_with_exit_codes() {
    let ok = run(&[
        "verify",
        "--semantics",
        "prf",
        "--extension",
        "b,c",
        "--prefs",
        "a<b",
        &fixture("travel.aba"),
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("sound"));
    assert!(stdout(&ok).contains("summary: 1/1 sound"));

    let bad = run(&[
        "verify",
        "--semantics",
        "prf",
        "--extension",
        "a,c",
        "--prefs",
        "a<b",
        &fixture("travel.aba"),
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("unsound"));
    assert!(stdout(&bad).contains("{b,c}"));
}

#[test]
fn oracle_reports_full_coverage_for_travel() {
    for ext in ["a,c", "b,c"] {
        let out = run(&[
            "oracle",
            "--semantics",
            "prf",
            "--extension",
            ext,
            &fixture("travel.aba"),
        ]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        assert!(text.contains("preorders over 3 assumptions: 29"));
        assert!(text.contains("uncovered: 0"));
    }
}

#[test]
fn unknown_assumption_is_a_usage_error() {
    let out = run(&[
        "elicit",
        "--semantics",
        "prf",
        "--extension",
        "a,z",
        &fixture("travel.aba"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown assumption 'z'"));
}

#[test]
fn non_conflict_free_extension_is_a_verification_error() {
    let out = run(&[
        "elicit",
        "--semantics",
        "prf",
        "--extension",
        "a,b,c",
        &fixture("travel.aba"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("attacks itself"));
}

#[test]
fn parse_errors_exit_two_with_positions() {
    let dir = std::env::temp_dir().join("aba_prefs_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.aba");
    std::fs::write(&path, "assumption a\nxyzzy q\nrule a <- b\n").unwrap();
    let out = run(&["extensions", "--semantics", "prf", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("2:1"), "{err}");
    assert!(err.contains("unknown directive"));
}

#[test]
fn inconsistent_prefer_lines_exit_two() {
    let dir = std::env::temp_dir().join("aba_prefs_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("inconsistent.aba");
    let base = std::fs::read_to_string(fixture("travel.aba")).unwrap();
    std::fs::write(
        &path,
        format!("{base}prefer a < b\nprefer b = c\nprefer c < a\n"),
    )
    .unwrap();
    let out = run(&["extensions", "--semantics", "prf", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("inconsistent"));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["extensions", "--semantics", "nope", &fixture("travel.aba")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumeration_cap_flag_and_env_are_honored() {
    let dir = std::env::temp_dir().join("aba_prefs_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("five.aba");
    let mut text = String::new();
    for i in 0..5 {
        text.push_str(&format!("assumption x{i}\ncontrary x{i} y{i}\n"));
    }
    std::fs::write(&path, text).unwrap();

    let capped = run(&[
        "extensions",
        "--semantics",
        "cf",
        "--max-assumptions",
        "4",
        path.to_str().unwrap(),
    ]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(stderr(&capped).contains("exceed the enumeration cap"));

    let env_capped = Command::new(env!("CARGO_BIN_EXE_aba-prefs"))
        .args(["extensions", "--semantics", "cf", path.to_str().unwrap()])
        .env("ABA_PREFS_MAX_ASSUMPTIONS", "4")
        .output()
        .unwrap();
    assert_eq!(env_capped.status.code(), Some(2));

    let uncapped = run(&["extensions", "--semantics", "cf", path.to_str().unwrap()]);
    assert_eq!(uncapped.status.code(), Some(0));
    assert_eq!(stdout(&uncapped).lines().count(), 32);
}

#[test]
fn text_and_json_agree_on_the_result_payload() {
    let text_out = stdout(&run(&[
        "elicit",
        "--semantics",
        "prf",
        "--extension",
        "a,c",
        &fixture("travel.aba"),
    ]));
    let json_out = stdout(&run(&[
        "elicit",
        "--semantics",
        "prf",
        "--extension",
        "a,c",
        "--format",
        "json",
        &fixture("travel.aba"),
    ]));
    let json: serde_json::Value = serde_json::from_str(&json_out).unwrap();
    let sets = json["preference_sets"].as_array().unwrap();
    assert_eq!(sets.len(), text_out.lines().count());
    // same atoms in the same canonical order
    let first_text_line = text_out.lines().next().unwrap();
    let first_set = sets[0].as_array().unwrap();
    let rendered: Vec<String> = first_set
        .iter()
        .map(|a| {
            format!(
                "{}{}{}",
                a["left"].as_str().unwrap(),
                a["rel"].as_str().unwrap(),
                a["right"].as_str().unwrap()
            )
        })
        .collect();
    assert_eq!(format!("{{{}}}", rendered.join(", ")), first_text_line);
}
