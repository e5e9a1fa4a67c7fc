//! Line-oriented text format for frameworks and preference declarations.
//!
//! ```text
//! # comment to end of line
//! assumption <id>
//! contrary <id> <id>
//! rule <head> <- [<id> ...]
//! prefer <id> < <id>
//! prefer <id> = <id>
//! ```
//!
//! Tokens are whitespace-separated; identifiers are a letter followed by
//! letters, digits or underscores. Declarations may appear in any order —
//! resolution happens after the whole file is read. Sentences mentioned only
//! in rules or contraries are added to the language implicitly; duplicates
//! are idempotent.

use std::fmt;

use aba_prefs::{AtomicPreference, Framework, PreferenceSet, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourcePos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeclKind {
    Assumption(String),
    Contrary(String, String),
    Rule(String, Vec<String>),
    Prefer(String, Relation, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    pub kind: DeclKind,
    pub pos: SourcePos,
}

/// Parsed declarations in source order, prior to any semantic checking.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InputDocument {
    pub decls: Vec<Decl>,
}

impl InputDocument {
    pub fn has_preferences(&self) -> bool {
        self.decls
            .iter()
            .any(|d| matches!(d.kind, DeclKind::Prefer(..)))
    }
}

/// A parse or semantic problem, with a source position when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub pos: Option<SourcePos>,
    pub message: String,
}

impl Diagnostic {
    fn at(pos: SourcePos, message: impl Into<String>) -> Self {
        Diagnostic {
            pos: Some(pos),
            message: message.into(),
        }
    }

    fn global(message: impl Into<String>) -> Self {
        Diagnostic {
            pos: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Some(pos) => write!(f, "{}:{}: {}", pos.line, pos.col, self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

fn is_identifier(token: &str) -> bool {
    let mut chars = token.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One token with its 1-based column.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut chars = line.char_indices().peekable();
    let mut column = 1;
    while let Some(&(start, ch)) = chars.peek() {
        if ch == '#' {
            break;
        }
        if ch.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let start_col = column;
        let mut end = start;
        while let Some(&(i, c)) = chars.peek() {
            if c.is_whitespace() || c == '#' {
                break;
            }
            end = i + c.len_utf8();
            chars.next();
            column += 1;
        }
        out.push((start_col, &line[start..end]));
    }
    out
}

/// Parses the textual format into declarations, collecting every syntax
/// error before returning.
pub fn parse(text: &str) -> Result<InputDocument, Vec<Diagnostic>> {
    let mut decls = Vec::new();
    let mut errors = Vec::new();

    for (line_idx, line) in text.lines().enumerate() {
        let line_no = line_idx + 1;
        let tokens = tokenize(line);
        if tokens.is_empty() {
            continue;
        }
        let pos = SourcePos {
            line: line_no,
            col: tokens[0].0,
        };
        let at = |col: usize| SourcePos { line: line_no, col };
        let keyword = tokens[0].1;

        let expect_id = |col: usize, token: &str, errors: &mut Vec<Diagnostic>| {
            if is_identifier(token) {
                true
            } else {
                errors.push(Diagnostic::at(
                    at(col),
                    format!("'{token}' is not a valid identifier"),
                ));
                false
            }
        };

        match keyword {
            "assumption" => {
                if tokens.len() != 2 {
                    errors.push(Diagnostic::at(pos, "expected: assumption <id>"));
                } else if expect_id(tokens[1].0, tokens[1].1, &mut errors) {
                    decls.push(Decl {
                        kind: DeclKind::Assumption(tokens[1].1.to_string()),
                        pos,
                    });
                }
            }
            "contrary" => {
                if tokens.len() != 3 {
                    errors.push(Diagnostic::at(pos, "expected: contrary <id> <id>"));
                } else if expect_id(tokens[1].0, tokens[1].1, &mut errors)
                    && expect_id(tokens[2].0, tokens[2].1, &mut errors)
                {
                    decls.push(Decl {
                        kind: DeclKind::Contrary(
                            tokens[1].1.to_string(),
                            tokens[2].1.to_string(),
                        ),
                        pos,
                    });
                }
            }
            "rule" => {
                if tokens.len() < 3 || tokens[2].1 != "<-" {
                    errors.push(Diagnostic::at(pos, "expected: rule <head> <- [<id> ...]"));
                    continue;
                }
                let mut ok = expect_id(tokens[1].0, tokens[1].1, &mut errors);
                let mut body = Vec::new();
                for &(col, token) in &tokens[3..] {
                    ok &= expect_id(col, token, &mut errors);
                    body.push(token.to_string());
                }
                if ok {
                    decls.push(Decl {
                        kind: DeclKind::Rule(tokens[1].1.to_string(), body),
                        pos,
                    });
                }
            }
            "prefer" => {
                if tokens.len() != 4 {
                    errors.push(Diagnostic::at(pos, "expected: prefer <id> </= <id>"));
                    continue;
                }
                let relation = match tokens[2].1 {
                    "<" => Relation::Strict,
                    "=" => Relation::Equal,
                    other => {
                        errors.push(Diagnostic::at(
                            at(tokens[2].0),
                            format!("expected '<' or '=', found '{other}'"),
                        ));
                        continue;
                    }
                };
                if expect_id(tokens[1].0, tokens[1].1, &mut errors)
                    && expect_id(tokens[3].0, tokens[3].1, &mut errors)
                {
                    decls.push(Decl {
                        kind: DeclKind::Prefer(
                            tokens[1].1.to_string(),
                            relation,
                            tokens[3].1.to_string(),
                        ),
                        pos,
                    });
                }
            }
            other => {
                errors.push(Diagnostic::at(
                    pos,
                    format!(
                        "unknown directive '{other}' (expected assumption, contrary, rule or prefer)"
                    ),
                ));
            }
        }
    }

    if errors.is_empty() {
        Ok(InputDocument { decls })
    } else {
        Err(errors)
    }
}

/// A document resolved into a framework plus its declared preferences.
#[derive(Debug, Clone)]
pub struct ResolvedDocument {
    pub framework: Framework,
    pub preferences: PreferenceSet,
    pub has_preferences: bool,
    pub warnings: Vec<String>,
}

/// Resolves declarations into a validated framework, collecting every
/// semantic error together: undeclared-assumption contraries or preferences,
/// flatness violations, contrary conflicts and totality/validation failures.
pub fn resolve(doc: &InputDocument) -> Result<ResolvedDocument, Vec<Diagnostic>> {
    let mut errors = Vec::new();

    let assumption_names: Vec<&str> = doc
        .decls
        .iter()
        .filter_map(|d| match &d.kind {
            DeclKind::Assumption(name) => Some(name.as_str()),
            _ => None,
        })
        .collect();
    let is_assumption = |name: &str| assumption_names.contains(&name);

    let mut builder = Framework::builder();
    for decl in &doc.decls {
        match &decl.kind {
            DeclKind::Assumption(name) => builder = builder.assumption(name),
            DeclKind::Contrary(asm, target) => {
                if !is_assumption(asm) {
                    errors.push(Diagnostic::at(
                        decl.pos,
                        format!("contrary declared for '{asm}', which is not an assumption"),
                    ));
                } else {
                    builder = builder.contrary(asm, target);
                }
            }
            DeclKind::Rule(head, body) => {
                if is_assumption(head) {
                    errors.push(Diagnostic::at(
                        decl.pos,
                        format!("flatness violated: assumption '{head}' used as a rule head"),
                    ));
                } else {
                    builder = builder.rule(head, body.iter().map(String::as_str));
                }
            }
            DeclKind::Prefer(left, _, right) => {
                for name in [left, right] {
                    if !is_assumption(name) {
                        errors.push(Diagnostic::at(
                            decl.pos,
                            format!("preference over '{name}', which is not an assumption"),
                        ));
                    }
                }
                if left == right {
                    errors.push(Diagnostic::at(
                        decl.pos,
                        "a preference must relate two distinct assumptions".to_string(),
                    ));
                }
            }
        }
    }

    let framework = match builder.build() {
        Ok(f) => f,
        Err(e) => {
            errors.push(Diagnostic::global(e.to_string()));
            return Err(errors);
        }
    };

    let report = framework.validate();
    for violation in &report.violations {
        errors.push(Diagnostic::global(violation.to_string()));
    }

    let mut preferences = PreferenceSet::empty();
    if errors.is_empty() {
        for decl in &doc.decls {
            if let DeclKind::Prefer(left, relation, right) = &decl.kind {
                let l = framework.assumption_id(left).expect("checked above");
                let r = framework.assumption_id(right).expect("checked above");
                let atom = match relation {
                    Relation::Strict => AtomicPreference::strict(l, r),
                    Relation::Equal => AtomicPreference::equal(l, r),
                };
                if !preferences.contains(&atom) && preferences.constrains(l, r) {
                    errors.push(Diagnostic::at(
                        decl.pos,
                        format!("pair '{left}'/'{right}' is related twice"),
                    ));
                } else {
                    preferences.insert(atom);
                }
            }
        }
    }

    if !errors.is_empty() {
        return Err(errors);
    }

    // names that only ever occur as contrary targets joined the language
    // implicitly; point that out once per name
    let mut warnings = Vec::new();
    for s in framework.sentences() {
        let name = framework.sentence_name(s);
        let mut as_contrary = false;
        let mut elsewhere = false;
        for decl in &doc.decls {
            match &decl.kind {
                DeclKind::Contrary(_, target) if target == name => as_contrary = true,
                DeclKind::Contrary(asm, _) if asm == name => elsewhere = true,
                DeclKind::Assumption(n) if n == name => elsewhere = true,
                DeclKind::Rule(head, body)
                    if head == name || body.iter().any(|b| b == name) =>
                {
                    elsewhere = true
                }
                _ => {}
            }
        }
        if as_contrary && !elsewhere {
            warnings.push(format!(
                "sentence '{name}' appears only as a contrary; added to the language"
            ));
        }
    }

    Ok(ResolvedDocument {
        framework,
        preferences,
        has_preferences: doc.has_preferences(),
        warnings,
    })
}

/// Emits a framework (and optional preferences) back into the textual
/// format. Parsing the output yields an identical framework.
pub fn emit(framework: &Framework, preferences: &PreferenceSet) -> String {
    let mut out = String::new();
    for a in framework.assumptions() {
        out.push_str(&format!("assumption {}\n", framework.assumption_name(a)));
    }
    for a in framework.assumptions() {
        if let Some(c) = framework.contrary_opt(a) {
            out.push_str(&format!(
                "contrary {} {}\n",
                framework.assumption_name(a),
                framework.sentence_name(c)
            ));
        }
    }
    for rule in framework.rules() {
        out.push_str(&format!("rule {} <-", framework.sentence_name(rule.head)));
        for b in &rule.body {
            out.push(' ');
            out.push_str(framework.sentence_name(*b));
        }
        out.push('\n');
    }
    for p in preferences.iter() {
        let op = match p.relation() {
            Relation::Strict => "<",
            Relation::Equal => "=",
        };
        out.push_str(&format!(
            "prefer {} {} {}\n",
            framework.assumption_name(p.left()),
            op,
            framework.assumption_name(p.right())
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRAVEL: &str = "\
# three assumptions, two derived conflicts
assumption a
assumption b
assumption c
contrary a e
contrary b d
contrary c f
rule d <- a c
rule e <- b c
";

    #[test]
    fn parses_and_resolves_the_travel_file() {
        let doc = parse(TRAVEL).unwrap();
        assert_eq!(doc.decls.len(), 8);
        let resolved = resolve(&doc).unwrap();
        assert_eq!(resolved.framework.sentence_count(), 6);
        assert_eq!(resolved.framework.assumption_count(), 3);
        assert!(!resolved.has_preferences);
        // f occurs only as a contrary target
        assert_eq!(resolved.warnings.len(), 1);
        assert!(resolved.warnings[0].contains("'f'"));
    }

    #[test]
    fn prefer_lines_resolve_against_assumptions() {
        let text = format!("{TRAVEL}prefer a < b\n");
        let resolved = resolve(&parse(&text).unwrap()).unwrap();
        assert!(resolved.has_preferences);
        assert_eq!(
            resolved
                .preferences
                .display(&resolved.framework)
                .to_string(),
            "{a<b}"
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let errs = parse("assumption a\nassumption\nrule x y\n").unwrap_err();
        assert_eq!(errs.len(), 2);
        assert_eq!(errs[0].pos, Some(SourcePos { line: 2, col: 1 }));
        assert!(errs[1].message.contains("rule"));
    }

    #[test]
    fn bad_identifiers_are_rejected_with_columns() {
        let errs = parse("assumption 1a\n").unwrap_err();
        assert_eq!(errs[0].pos, Some(SourcePos { line: 1, col: 12 }));
        assert!(parse("assumption a_1\n").is_ok());
    }

    #[test]
    fn semantic_errors_are_collected_together() {
        let text = "\
assumption a
contrary a e
contrary b x
rule a <- e
prefer a < q
";
        let errs = resolve(&parse(text).unwrap()).unwrap_err();
        let messages: Vec<&str> = errs.iter().map(|e| e.message.as_str()).collect();
        assert!(messages.iter().any(|m| m.contains("not an assumption")));
        assert!(messages.iter().any(|m| m.contains("flatness")));
        assert!(messages.iter().any(|m| m.contains("'q'")));
    }

    #[test]
    fn missing_contrary_is_a_semantic_error() {
        let errs = resolve(&parse("assumption a\n").unwrap()).unwrap_err();
        assert!(errs[0].message.contains("not total"));
    }

    #[test]
    fn conflicting_preferences_are_rejected() {
        let text = format!("{TRAVEL}prefer a < b\nprefer b < a\n");
        let errs = resolve(&parse(&text).unwrap()).unwrap_err();
        assert!(errs[0].message.contains("related twice"));
        // identical duplicates are fine
        let text = format!("{TRAVEL}prefer a < b\nprefer a < b\n");
        assert!(resolve(&parse(&text).unwrap()).is_ok());
    }

    #[test]
    fn declaration_order_is_irrelevant() {
        let shuffled = "\
rule e <- b c
contrary c f
assumption c
rule d <- a c
contrary a e
assumption a
assumption b
contrary b d
";
        let one = resolve(&parse(TRAVEL).unwrap()).unwrap();
        let two = resolve(&parse(shuffled).unwrap()).unwrap();
        assert_eq!(one.framework, two.framework);
    }

    #[test]
    fn empty_rule_bodies_are_facts() {
        let text = "assumption a\ncontrary a p\nrule p <-\n";
        let resolved = resolve(&parse(text).unwrap()).unwrap();
        let rules = resolved.framework.rules();
        assert_eq!(rules.len(), 1);
        assert!(rules[0].body.is_empty());
    }

    #[test]
    fn emit_round_trips() {
        for text in [
            TRAVEL.to_string(),
            format!("{TRAVEL}prefer a < b\nprefer b = c\n"),
            "assumption a\ncontrary a p\nrule p <-\nrule q <- a q\n".to_string(),
        ] {
            let first = resolve(&parse(&text).unwrap()).unwrap();
            let emitted = emit(&first.framework, &first.preferences);
            let second = resolve(&parse(&emitted).unwrap()).unwrap();
            assert_eq!(first.framework, second.framework);
            assert_eq!(first.preferences, second.preferences);
        }
    }
}
