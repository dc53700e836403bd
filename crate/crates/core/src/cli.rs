//! The `oppositio` command line.
//!
//! Exit codes: 0 success, 1 findings (violations, unsatisfiable or
//! strengthened structures), 2 input or parse errors, 3 usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::{report, summarize};
use crate::debate::{load_debate, validate_debate, ValidationRecord};
use crate::defeasible::{check_tags_against_structure, tag_report, Literal, TagVector};
use crate::dsl::{parse_structure, parse_theory};
use crate::opposition::{
    admissible_worlds, verify_structure, CoherenceReport, EdgeStatus, Violation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Findings = 1,
    InputError = 2,
    UsageError = 3,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "oppositio",
    version,
    about = "Opposition structures, defeasible tags and debate validation"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Opposition structure files (.nop).
    #[command(subcommand)]
    Structure(StructureCmd),
    /// Defeasible theory files (.dlt).
    #[command(subcommand)]
    Theory(TheoryCmd),
    /// Debate corpus directories.
    #[command(subcommand)]
    Debate(DebateCmd),
}

#[derive(Debug, Subcommand)]
enum StructureCmd {
    /// Enumerate worlds and check every edge against them.
    Check { path: PathBuf },
    /// List the admissible worlds.
    Worlds { path: PathBuf },
}

#[derive(Debug, Subcommand)]
enum TheoryCmd {
    /// Print the six proof tags of every literal.
    Tags { path: PathBuf },
}

#[derive(Debug, Subcommand)]
enum DebateCmd {
    /// Validate every argument against the debate's structure.
    Validate { dir: PathBuf },
    /// Repartition, compliance and genre tables.
    Report { dir: PathBuf },
    /// The end-of-debate summary document.
    Summary { dir: PathBuf },
}

struct Output {
    text: String,
    code: ExitCode,
    warnings: Vec<String>,
}

impl Output {
    fn new(text: String, code: ExitCode) -> Self {
        Self {
            text,
            code,
            warnings: Vec::new(),
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Runs the command line with explicit streams; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    ExitCode::Success
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    ExitCode::UsageError
                }
            };
        }
    };

    let result = match &cli.command {
        Command::Structure(StructureCmd::Check { path }) => structure_check(path, cli.format),
        Command::Structure(StructureCmd::Worlds { path }) => structure_worlds(path, cli.format),
        Command::Theory(TheoryCmd::Tags { path }) => theory_tags(path, cli.format),
        Command::Debate(DebateCmd::Validate { dir }) => debate_validate(dir, cli.format),
        Command::Debate(DebateCmd::Report { dir }) => debate_report(dir, cli.format),
        Command::Debate(DebateCmd::Summary { dir }) => debate_summary(dir, cli.format),
    };

    match result {
        Ok(output) => {
            for w in &output.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            let written = match &cli.out {
                Some(path) => {
                    fs::write(path, &output.text).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => stdout
                    .write_all(output.text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => output.code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    ExitCode::InputError
                }
            }
        }
        Err(message) => {
            let _ = writeln!(stderr, "error: {message}");
            ExitCode::InputError
        }
    }
}

fn describe_status(status: &EdgeStatus) -> String {
    match status {
        EdgeStatus::Confirmed => "confirmed".to_owned(),
        EdgeStatus::Vacuous => "vacuous".to_owned(),
        EdgeStatus::Strengthened { missing, induced } => {
            let tf = |b: bool| if b { 'T' } else { 'F' };
            let missing: Vec<String> = missing
                .iter()
                .map(|&(a, b)| format!("{}{}", tf(a), tf(b)))
                .collect();
            let induced: Vec<String> = induced.iter().map(ToString::to_string).collect();
            format!(
                "strengthened (never {}; induced: {})",
                missing.join(", "),
                if induced.is_empty() {
                    "independent".to_owned()
                } else {
                    induced.join(", ")
                }
            )
        }
    }
}

fn render_coherence(report: &CoherenceReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "structure: {}", report.structure);
    let _ = writeln!(out, "judgments: {}", report.judgments);
    let _ = writeln!(out, "worlds: {}", report.worlds);
    let _ = writeln!(out, "edges:");
    for e in &report.edges {
        let implicit = if e.implicit { " (level)" } else { "" };
        let _ = writeln!(
            out,
            "  {}{implicit}: {}",
            e.edge,
            describe_status(&e.status)
        );
    }
    let verdict = if report.unsatisfiable {
        "unsatisfiable"
    } else if report.is_coherent() {
        "coherent"
    } else {
        "strengthened edges found"
    };
    let _ = writeln!(out, "result: {verdict}");
    out
}

fn structure_check(path: &Path, format: Format) -> Result<Output, String> {
    let structure =
        parse_structure(&read_file(path)?).map_err(|e| format!("{}:{e}", path.display()))?;
    let report = verify_structure(&structure);
    let code = if report.is_coherent() {
        ExitCode::Success
    } else {
        ExitCode::Findings
    };
    let text = match format {
        Format::Text => render_coherence(&report),
        Format::Json => json(&report),
    };
    Ok(Output::new(text, code))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorldListing {
    pub judgments: Vec<String>,
    pub worlds: Vec<String>,
}

fn structure_worlds(path: &Path, format: Format) -> Result<Output, String> {
    let structure =
        parse_structure(&read_file(path)?).map_err(|e| format!("{}:{e}", path.display()))?;
    let worlds = admissible_worlds(&structure).map_err(|e| e.to_string())?;
    let listing = WorldListing {
        judgments: structure
            .judgments()
            .iter()
            .map(ToString::to_string)
            .collect(),
        worlds: worlds.iter().map(|w| w.signed_listing()).collect(),
    };
    let code = if worlds.is_empty() {
        ExitCode::Findings
    } else {
        ExitCode::Success
    };
    let text = match format {
        Format::Text => listing.worlds.iter().map(|w| format!("{w}\n")).collect(),
        Format::Json => json(&listing),
    };
    Ok(Output::new(text, code))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TagRow {
    pub literal: Literal,
    #[serde(flatten)]
    pub tags: TagVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TagTable {
    pub literals: Vec<TagRow>,
    pub hexagon_violations: Vec<Violation>,
}

fn theory_tags(path: &Path, format: Format) -> Result<Output, String> {
    let theory = parse_theory(&read_file(path)?).map_err(|e| format!("{}:{e}", path.display()))?;
    let rows: Vec<TagRow> = tag_report(&theory)
        .into_iter()
        .map(|(literal, tags)| TagRow { literal, tags })
        .collect();
    let hexagon_violations: Vec<Violation> = rows
        .iter()
        .flat_map(|r| check_tags_against_structure(&r.tags))
        .collect();
    let table = TagTable {
        literals: rows,
        hexagon_violations,
    };
    let code = if table.hexagon_violations.is_empty() {
        ExitCode::Success
    } else {
        ExitCode::Findings
    };
    let text = match format {
        Format::Text => {
            let mut out = String::new();
            for row in &table.literals {
                let _ = writeln!(out, "{}: {}", row.literal, row.tags);
            }
            let n = table.hexagon_violations.len();
            let verdict = if n == 0 { "consistent" } else { "inconsistent" };
            let _ = writeln!(out, "hexagon: {verdict} ({n} violations)");
            out
        }
        Format::Json => json(&table),
    };
    let mut output = Output::new(text, code);
    output.warnings = theory.warnings();
    Ok(output)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationSummary {
    pub total: usize,
    pub well_formed: usize,
    pub not_well_formed: usize,
    pub with_violations: usize,
    pub records: Vec<ValidationRecord>,
}

fn debate_validate(dir: &Path, format: Format) -> Result<Output, String> {
    let debate = load_debate(dir).map_err(|e| e.to_string())?;
    let records = validate_debate(&debate);
    let well_formed = records.iter().filter(|r| r.well_formed).count();
    let with_violations = records.iter().filter(|r| !r.violations.is_empty()).count();
    let summary = ValidationSummary {
        total: records.len(),
        well_formed,
        not_well_formed: records.len() - well_formed,
        with_violations,
        records,
    };
    let code = if with_violations > 0 {
        ExitCode::Findings
    } else {
        ExitCode::Success
    };
    let text = match format {
        Format::Text => {
            let yn = |b: bool| if b { "yes" } else { "no" };
            let mut out = String::new();
            for r in &summary.records {
                let _ = writeln!(
                    out,
                    "{}: well-formed={} violations={} completable={}",
                    r.argument,
                    yn(r.well_formed),
                    r.violations.len(),
                    yn(r.completable)
                );
                for v in &r.violations {
                    let _ = writeln!(out, "  violates {}: {}", v.edge, v.reason);
                }
            }
            let _ = writeln!(
                out,
                "total: {}, well-formed: {}, not well-formed: {}, with violations: {}",
                summary.total,
                summary.well_formed,
                summary.not_well_formed,
                summary.with_violations
            );
            out
        }
        Format::Json => json(&summary),
    };
    Ok(Output::new(text, code))
}

fn debate_report(dir: &Path, format: Format) -> Result<Output, String> {
    let debate = load_debate(dir).map_err(|e| e.to_string())?;
    let r = report(&debate);
    let text = match format {
        Format::Text => r.render_text(),
        Format::Json => json(&r),
    };
    Ok(Output::new(text, ExitCode::Success))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct SummaryDocument {
    summary: String,
}

fn debate_summary(dir: &Path, format: Format) -> Result<Output, String> {
    let debate = load_debate(dir).map_err(|e| e.to_string())?;
    let summary = summarize(&debate);
    let text = match format {
        Format::Text => summary,
        Format::Json => json(&SummaryDocument { summary }),
    };
    Ok(Output::new(text, ExitCode::Success))
}
