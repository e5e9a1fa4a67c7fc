//! Command-line interface: parse a framework file, then enumerate
//! extensions, elicit preferences, cross-compare extensions, or verify
//! preference sets against the brute-force oracle.
//!
//! Exit codes: 0 on success, 1 when a verification fails (or the queried
//! extension is not conflict-free), 2 on usage, parse or resource errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use aba_prefs::analysis::analyze_all;
use aba_prefs::elicitation::{compute_all_preferences, Case3Mode};
use aba_prefs::oracle::{verify_completeness, verify_soundness};
use aba_prefs::semantics::{enumerate_extensions_capped, DEFAULT_ENUMERATION_CAP};
use aba_prefs::{
    close_preferences, AssumptionSet, Error, Framework, PSet, Preorder, PreferenceSet, Semantics,
};

use aba_prefs_cli::output::{self, Format};
use aba_prefs_cli::parser::{self, ResolvedDocument};

#[derive(Parser)]
#[command(
    name = "aba-prefs",
    version,
    about = "Assumption-based argumentation with preference elicitation",
    long_about = "Reason over flat ABA frameworks: enumerate extensions (optionally under a \
                  preference preorder), and solve the inverse problem of finding every \
                  preference set that makes a given extension acceptable."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Cap on |A| for extension enumeration sweeps
    #[arg(
        long,
        global = true,
        env = "ABA_PREFS_MAX_ASSUMPTIONS",
        default_value_t = DEFAULT_ENUMERATION_CAP
    )]
    max_assumptions: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate extensions; `prefer` lines in the file select the preorder
    Extensions {
        #[arg(long, value_enum)]
        semantics: SemanticsArg,
        /// Also print each extension's conclusions
        #[arg(long)]
        conclusions: bool,
        file: PathBuf,
    },
    /// Enumerate every preference set making an extension acceptable
    Elicit {
        #[arg(long, value_enum)]
        semantics: SemanticsArg,
        /// Comma-separated assumption names
        #[arg(long)]
        extension: String,
        /// Stop after stage 1, 2 or 3
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
        stage: u8,
        #[arg(long, value_enum, default_value_t = Case3ModeArg::Literal)]
        case3_mode: Case3ModeArg,
        /// Check each set against the chosen semantics and annotate it
        #[arg(long)]
        verify: bool,
        file: PathBuf,
    },
    /// Elicit for every extension of a semantics and cross-compare
    Analyze {
        #[arg(long, value_enum)]
        semantics: SemanticsArg,
        #[arg(long, value_enum, default_value_t = Case3ModeArg::Literal)]
        case3_mode: Case3ModeArg,
        file: PathBuf,
    },
    /// Check one preference set against an extension and semantics
    Verify {
        #[arg(long, value_enum)]
        semantics: SemanticsArg,
        #[arg(long)]
        extension: String,
        /// Semicolon- or comma-separated atoms, e.g. "b<a; c=a"
        #[arg(long)]
        prefs: String,
        file: PathBuf,
    },
    /// Sweep all preorders and report which yielding ones the elicited sets cover
    Oracle {
        #[arg(long, value_enum)]
        semantics: SemanticsArg,
        #[arg(long)]
        extension: String,
        file: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SemanticsArg {
    Cf,
    Adm,
    Prf,
    Stb,
    Com,
    Grd,
}

impl From<SemanticsArg> for Semantics {
    fn from(arg: SemanticsArg) -> Semantics {
        match arg {
            SemanticsArg::Cf => Semantics::ConflictFree,
            SemanticsArg::Adm => Semantics::Admissible,
            SemanticsArg::Prf => Semantics::Preferred,
            SemanticsArg::Stb => Semantics::Stable,
            SemanticsArg::Com => Semantics::Complete,
            SemanticsArg::Grd => Semantics::Grounded,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Case3ModeArg {
    Literal,
    Prose,
}

impl Case3ModeArg {
    fn mode(self) -> Case3Mode {
        match self {
            Case3ModeArg::Literal => Case3Mode::Literal,
            Case3ModeArg::Prose => Case3Mode::Prose,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Case3ModeArg::Literal => "literal",
            Case3ModeArg::Prose => "prose",
        }
    }
}

/// Failures routed to exit code 2 (input/usage/resource) or 1 (verification
/// domain).
enum CliError {
    Input(String),
    Domain(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotConflictFree { .. } => CliError::Domain(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    match run(cli.command, format, cli.max_assumptions) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<ResolvedDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let doc = parser::parse(&text).map_err(|errs| diagnostics(path, errs))?;
    let resolved = parser::resolve(&doc).map_err(|errs| diagnostics(path, errs))?;
    for warning in &resolved.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(resolved)
}

fn diagnostics(path: &Path, errs: Vec<parser::Diagnostic>) -> CliError {
    let rendered: Vec<String> = errs
        .iter()
        .map(|e| format!("{}:{e}", path.display()))
        .collect();
    CliError::Input(rendered.join("\n"))
}

/// Commands that elicit preferences ignore declared `prefer` lines.
fn warn_ignored_preferences(doc: &ResolvedDocument) {
    if doc.has_preferences {
        eprintln!("warning: 'prefer' lines are ignored by this command");
    }
}

fn parse_extension(framework: &Framework, input: &str) -> Result<AssumptionSet, CliError> {
    framework
        .assumption_set(input.split(',').map(str::trim).filter(|s| !s.is_empty()))
        .map_err(CliError::from)
}

fn conflict_free_or_domain_error(
    framework: &Framework,
    e: AssumptionSet,
) -> Result<(), CliError> {
    let identity = Preorder::identity(framework.assumption_count());
    if !aba_prefs::is_conflict_free(framework, &identity, e) {
        return Err(CliError::Domain(
            Error::NotConflictFree {
                extension: e.display(framework).to_string(),
            }
            .to_string(),
        ));
    }
    Ok(())
}

fn run(command: Command, format: Format, cap: usize) -> Result<u8, CliError> {
    match command {
        Command::Extensions {
            semantics,
            conclusions,
            file,
        } => {
            let doc = load(&file)?;
            let semantics = Semantics::from(semantics);
            let preorder = close_preferences(&doc.framework, &doc.preferences)?;
            let extensions =
                enumerate_extensions_capped(&doc.framework, &preorder, semantics, cap)?;
            let note = if semantics == Semantics::Grounded && extensions.is_empty() {
                Some("no complete extension found".to_string())
            } else {
                None
            };
            let view = output::ExtensionsView {
                framework: &doc.framework,
                preorder: &preorder,
                declared: &doc.preferences,
                semantics,
                extensions: &extensions,
                with_conclusions: conclusions,
                note,
            };
            print!("{}", output::render_extensions(&view, format));
            Ok(0)
        }
        Command::Elicit {
            semantics,
            extension,
            stage,
            case3_mode,
            verify,
            file,
        } => {
            let doc = load(&file)?;
            warn_ignored_preferences(&doc);
            let e = parse_extension(&doc.framework, &extension)?;
            let run = compute_all_preferences(&doc.framework, e, case3_mode.mode())?;
            let pset = run.stage(stage);
            let report = if verify {
                Some(verify_soundness(
                    &doc.framework,
                    e,
                    Semantics::from(semantics),
                    pset,
                ))
            } else {
                None
            };
            print!(
                "{}",
                output::render_elicit(
                    &doc.framework,
                    e,
                    stage,
                    case3_mode.name(),
                    pset,
                    report.as_ref(),
                    format,
                )
            );
            match report {
                Some(r) if !r.all_hold() => Ok(1),
                _ => Ok(0),
            }
        }
        Command::Analyze {
            semantics,
            case3_mode,
            file,
        } => {
            let doc = load(&file)?;
            warn_ignored_preferences(&doc);
            let report = analyze_all(
                &doc.framework,
                Semantics::from(semantics),
                case3_mode.mode(),
                cap,
            )?;
            print!("{}", output::render_analyze(&doc.framework, &report, format));
            Ok(0)
        }
        Command::Verify {
            semantics,
            extension,
            prefs,
            file,
        } => {
            let doc = load(&file)?;
            warn_ignored_preferences(&doc);
            let e = parse_extension(&doc.framework, &extension)?;
            conflict_free_or_domain_error(&doc.framework, e)?;
            let prefs = PreferenceSet::parse(&doc.framework, &prefs)?;
            let pset: PSet = [prefs].into_iter().collect();
            let report = verify_soundness(&doc.framework, e, Semantics::from(semantics), &pset);
            print!("{}", output::render_verify(&doc.framework, &report, format));
            Ok(if report.all_hold() { 0 } else { 1 })
        }
        Command::Oracle {
            semantics,
            extension,
            file,
        } => {
            let doc = load(&file)?;
            warn_ignored_preferences(&doc);
            let e = parse_extension(&doc.framework, &extension)?;
            conflict_free_or_domain_error(&doc.framework, e)?;
            let run = compute_all_preferences(&doc.framework, e, Case3Mode::Literal)?;
            let report = verify_completeness(
                &doc.framework,
                e,
                Semantics::from(semantics),
                run.final_pset(),
            )?;
            print!("{}", output::render_oracle(&doc.framework, &report, format));
            Ok(0)
        }
    }
}
