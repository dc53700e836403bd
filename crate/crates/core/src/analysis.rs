//! Corpus measurements: judgment repartition, subalternation compliance,
//! expected justification genres, and the end-of-debate summary.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::debate::{threads, validate_argument, Argument, Debate, ValidationRecord};
use crate::opposition::{
    JudgmentAssignment, OppositionStructure, RelationEdge, RelationKind, TruthValue,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("genre table needs a structure with exactly 3 levels, `{0}` has {1}")]
    NotThreeLevels(String, usize),
    #[error("assignment does not judge level `{0}`")]
    NotTotal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepartitionReport {
    pub total: usize,
    /// Arguments asserting each judgment true, by judgment name.
    pub counts: BTreeMap<String, usize>,
}

pub fn repartition(debate: &Debate) -> RepartitionReport {
    let mut counts: BTreeMap<String, usize> = debate
        .structure()
        .judgments()
        .iter()
        .map(|j| (j.to_string(), 0))
        .collect();
    for arg in debate.arguments() {
        for (j, v) in debate.effective_judgments(arg).iter() {
            if v {
                *counts.get_mut(j.as_str()).expect("judgment of structure") += 1;
            }
        }
    }
    RepartitionReport {
        total: debate.arguments().len(),
        counts,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCompliance {
    pub edge: RelationEdge,
    pub satisfied: usize,
    pub violated: usize,
    pub not_applicable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplianceReport {
    pub well_formed: usize,
    pub edges: Vec<EdgeCompliance>,
}

/// Subalternation edges tallied over well-formed arguments.
pub fn compliance(debate: &Debate) -> ComplianceReport {
    let structure = debate.structure();
    let judged: Vec<JudgmentAssignment> = debate
        .arguments()
        .iter()
        .map(|a| debate.effective_judgments(a))
        .filter(|a| structure.judges_every_level(a))
        .collect();
    let edges = structure
        .edges()
        .into_iter()
        .filter(|e| e.kind == RelationKind::Subalternation)
        .map(|edge| {
            let mut c = EdgeCompliance {
                edge,
                satisfied: 0,
                violated: 0,
                not_applicable: 0,
            };
            for a in &judged {
                match (a.get(&c.edge.from), a.get(&c.edge.to)) {
                    (TruthValue::Unknown, _) | (_, TruthValue::Unknown) => c.not_applicable += 1,
                    (TruthValue::True, TruthValue::False) => c.violated += 1,
                    _ => c.satisfied += 1,
                }
            }
            c
        })
        .collect();
    ComplianceReport {
        well_formed: judged.len(),
        edges,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JustificationGenre {
    Explanation,
    NegativeReason,
    ContradictionNewDirection,
    BeliefConviction,
    Unspecified,
}

impl JustificationGenre {
    pub const ALL: [JustificationGenre; 5] = [
        JustificationGenre::Explanation,
        JustificationGenre::NegativeReason,
        JustificationGenre::ContradictionNewDirection,
        JustificationGenre::BeliefConviction,
        JustificationGenre::Unspecified,
    ];

    /// The fixed table over (proved, unclear, incorrect).
    pub fn for_pattern(proved: bool, unclear: bool, incorrect: bool) -> Self {
        use JustificationGenre::*;
        match (proved, unclear, incorrect) {
            (true, false, false) => Explanation,
            (false, false, true) => NegativeReason,
            (true, true, false) | (true, false, true) => ContradictionNewDirection,
            (false, true, false) => BeliefConviction,
            (false, false, false) | (false, true, true) | (true, true, true) => Unspecified,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            JustificationGenre::Explanation => "explanation",
            JustificationGenre::NegativeReason => "negative reason",
            JustificationGenre::ContradictionNewDirection => "contradiction, new direction",
            JustificationGenre::BeliefConviction => "belief or conviction",
            JustificationGenre::Unspecified => "unspecified",
        }
    }
}

impl fmt::Display for JustificationGenre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Genre for an assignment over a three-level structure whose levels, in
/// declaration order, play the roles proved, unclear and incorrect.
pub fn expected_genre(
    structure: &OppositionStructure,
    assignment: &JudgmentAssignment,
) -> Result<JustificationGenre, AnalysisError> {
    let levels = structure.levels();
    if levels.len() != 3 {
        return Err(AnalysisError::NotThreeLevels(
            structure.name().to_owned(),
            levels.len(),
        ));
    }
    let closed = structure.close_levels(assignment);
    let mut pattern = [false; 3];
    for (slot, level) in pattern.iter_mut().zip(levels) {
        *slot = closed
            .get(&level.positive)
            .as_bool()
            .ok_or_else(|| AnalysisError::NotTotal(level.name.clone()))?;
    }
    Ok(JustificationGenre::for_pattern(
        pattern[0], pattern[1], pattern[2],
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenreCount {
    pub genre: JustificationGenre,
    pub count: usize,
}

/// Expected genres of well-formed arguments; `None` unless the structure
/// has three levels.
pub fn genre_histogram(debate: &Debate) -> Option<Vec<GenreCount>> {
    if debate.structure().levels().len() != 3 {
        return None;
    }
    let mut counts: BTreeMap<JustificationGenre, usize> = BTreeMap::new();
    for arg in debate.arguments() {
        if let Ok(g) = expected_genre(debate.structure(), &arg.judgments) {
            *counts.entry(g).or_insert(0) += 1;
        }
    }
    Some(
        JustificationGenre::ALL
            .into_iter()
            .map(|genre| GenreCount {
                genre,
                count: counts.get(&genre).copied().unwrap_or(0),
            })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DebateReport {
    pub repartition: RepartitionReport,
    pub compliance: ComplianceReport,
    pub genres: Option<Vec<GenreCount>>,
}

pub fn report(debate: &Debate) -> DebateReport {
    DebateReport {
        repartition: repartition(debate),
        compliance: compliance(debate),
        genres: genre_histogram(debate),
    }
}

fn width<'a>(items: impl Iterator<Item = &'a str>, min: usize) -> usize {
    items.map(|s| s.chars().count()).max().unwrap_or(0).max(min)
}

impl RepartitionReport {
    pub fn render(&self, out: &mut String) {
        let w = width(self.counts.keys().map(String::as_str), "judgment".len());
        let _ = writeln!(out, "repartition ({} arguments)", self.total);
        let _ = writeln!(out, "  {:<w$}  count", "judgment");
        for (j, n) in &self.counts {
            let _ = writeln!(out, "  {j:<w$}  {n:>5}");
        }
    }
}

impl ComplianceReport {
    pub fn render(&self, out: &mut String) {
        let names: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{} -> {}", e.edge.from, e.edge.to))
            .collect();
        let w = width(names.iter().map(String::as_str), "subalternation".len());
        let _ = writeln!(
            out,
            "compliance ({} well-formed arguments)",
            self.well_formed
        );
        let _ = writeln!(out, "  {:<w$}  satisfied  violated  n/a", "subalternation");
        for (name, e) in names.iter().zip(&self.edges) {
            let _ = writeln!(
                out,
                "  {name:<w$}  {:>9}  {:>8}  {:>3}",
                e.satisfied, e.violated, e.not_applicable
            );
        }
    }
}

fn render_genres(genres: &[GenreCount], out: &mut String) {
    let total: usize = genres.iter().map(|g| g.count).sum();
    let w = width(genres.iter().map(|g| g.genre.label()), "genre".len());
    let _ = writeln!(
        out,
        "expected justification genres ({total} well-formed arguments)"
    );
    for g in genres {
        let _ = writeln!(out, "  {:<w$}  {:>5}", g.genre.label(), g.count);
    }
}

impl DebateReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.repartition.render(&mut out);
        out.push('\n');
        self.compliance.render(&mut out);
        if let Some(genres) = &self.genres {
            out.push('\n');
            render_genres(genres, &mut out);
        }
        out
    }
}

/// Compact label of an argument's judgments: the true side of every level
/// in declaration order, then free judgments, `level:?` when unjudged.
fn judgment_labels(structure: &OppositionStructure, a: &JudgmentAssignment) -> String {
    let mut labels = Vec::new();
    for level in structure.levels() {
        let label = match (a.get(&level.positive), a.get(&level.negative)) {
            (TruthValue::True, TruthValue::True) => format!("{}:both", level.name),
            (TruthValue::False, TruthValue::False) => format!("{}:neither", level.name),
            (TruthValue::True, _) => level.positive.to_string(),
            (_, TruthValue::True) => level.negative.to_string(),
            _ => format!("{}:?", level.name),
        };
        labels.push(label);
    }
    for j in structure.free_judgments() {
        match a.get(j).as_bool() {
            Some(v) => labels.push(format!("{}{j}", if v { '+' } else { '-' })),
            None => labels.push(format!("{j}:?")),
        }
    }
    labels.join(" ")
}

fn one_line(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn render_argument(
    debate: &Debate,
    arg: &Argument,
    children: &BTreeMap<&str, Vec<&Argument>>,
    depth: usize,
    out: &mut String,
) {
    let pad = "  ".repeat(depth);
    let record: ValidationRecord = validate_argument(debate, arg);
    let effective = debate.effective_judgments(arg);
    let author = debate
        .participant(&arg.author)
        .map_or(arg.author.as_str(), |p| p.display_name.as_str());
    let genre = expected_genre(debate.structure(), &arg.judgments)
        .map_or_else(|_| "-".to_owned(), |g| g.to_string());
    let mut flags = vec![if record.well_formed {
        "well-formed".to_owned()
    } else {
        "not well-formed".to_owned()
    }];
    flags.extend(
        record
            .violations
            .iter()
            .map(|v| format!("violates {}", v.edge)),
    );
    if !record.completable && record.violations.is_empty() {
        flags.push("not completable".to_owned());
    }

    let _ = writeln!(out, "{pad}- [{}] {author}", arg.id);
    let _ = writeln!(out, "{pad}  quote: \"{}\"", one_line(&arg.quoted_text));
    let _ = writeln!(out, "{pad}  rephrase: {}", one_line(&arg.rephrase));
    let _ = writeln!(
        out,
        "{pad}  judgments: {}",
        judgment_labels(debate.structure(), &effective)
    );
    let _ = writeln!(out, "{pad}  expected genre: {genre}");
    let _ = writeln!(out, "{pad}  flags: {}", flags.join("; "));
    let _ = writeln!(
        out,
        "{pad}  justification: {}",
        one_line(&arg.justification)
    );
    for child in children.get(arg.id.as_str()).into_iter().flatten() {
        render_argument(debate, child, children, depth + 1, out);
    }
}

/// Plain-text end-of-debate summary, stable for a given corpus.
pub fn summarize(debate: &Debate) -> String {
    let records: Vec<ValidationRecord> = crate::debate::validate_debate(debate);
    let well_formed = records.iter().filter(|r| r.well_formed).count();
    let with_violations = records.iter().filter(|r| !r.violations.is_empty()).count();
    let structure = debate.structure();

    let mut out = String::new();
    let _ = writeln!(out, "DEBATE SUMMARY");
    let _ = writeln!(out, "subject: {}", one_line(debate.subject()));
    let _ = writeln!(out, "problem: {}", one_line(debate.problem()));
    let _ = writeln!(
        out,
        "structure: {} ({} judgments, {} levels, {} admissible worlds)",
        structure.name(),
        structure.judgments().len(),
        structure.levels().len(),
        debate.worlds().len()
    );
    let _ = writeln!(
        out,
        "documents: {}, participants: {}, groups: {}, arguments: {}, relations: {}",
        debate.documents().len(),
        debate.participants().len(),
        debate.groups().len(),
        debate.arguments().len(),
        debate.relations().len()
    );
    let sessions = crate::debate::session_counts(debate);
    if !sessions.is_empty() {
        let listed: Vec<String> = sessions
            .iter()
            .map(|(s, n)| format!("session {s}: {n}"))
            .collect();
        let _ = writeln!(out, "arguments by session: {}", listed.join(", "));
    }
    let _ = writeln!(
        out,
        "well-formed: {well_formed}, with structure violations: {with_violations}"
    );

    let th = threads(debate);
    let mut docs: Vec<_> = debate.documents().iter().collect();
    docs.sort_by(|a, b| a.id.cmp(&b.id));
    for doc in docs {
        let roots = th
            .roots
            .get(doc.id.as_str())
            .map(Vec::as_slice)
            .unwrap_or(&[]);
        if roots.is_empty() {
            continue;
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "== [{}] {} ({})",
            doc.id,
            one_line(&doc.title),
            doc.category
        );
        for arg in roots {
            render_argument(debate, arg, &th.children, 0, &mut out);
        }
    }

    let _ = writeln!(out);
    let rep = report(debate);
    out.push_str(&rep.render_text());
    out
}
