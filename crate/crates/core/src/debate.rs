//! Debate corpora: documents, participants, groups, and arguments made by
//! annotating a document selection, rephrasing it, judging the rephrase
//! against the debate's opposition structure and justifying the judgment.
//!
//! On disk a debate is a directory:
//!
//! ```text
//! debate.json       subject, problem, participants, groups, document manifest
//! documents/        plain-text document bodies named by the manifest
//! structure.nop     the opposition structure arguments are judged against
//! arguments.jsonl   one argument per line
//! relations.jsonl   optional, one argument relation per line
//! ```
//!
//! Loading checks referential integrity and fails on the first problem.
//! Structure violations are not load errors; [`validate_debate`] reports them.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsl::{parse_structure, print_structure, DslError};
use crate::opposition::{
    admissible_worlds, check_assignment, JudgmentAssignment, OppositionStructure, RelationKind,
    Violation, WorldSet,
};

pub const DEBATE_FILE: &str = "debate.json";
pub const DOCUMENTS_DIR: &str = "documents";
pub const STRUCTURE_FILE: &str = "structure.nop";
pub const ARGUMENTS_FILE: &str = "arguments.jsonl";
pub const RELATIONS_FILE: &str = "relations.jsonl";

#[derive(Debug, Error)]
pub enum DebateError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}{}: {source}", path.display(), fmt_record(*record))]
    Json {
        path: PathBuf,
        record: Option<usize>,
        #[source]
        source: serde_json::Error,
    },
    #[error("{}: {source}", path.display())]
    Structure {
        path: PathBuf,
        #[source]
        source: DslError,
    },
    #[error("{file}{}: {message}", fmt_record(*record))]
    Integrity {
        file: String,
        /// 1-based record number within the file.
        record: Option<usize>,
        message: String,
    },
}

fn fmt_record(record: Option<usize>) -> String {
    record.map(|r| format!(", record {r}")).unwrap_or_default()
}

fn integrity(file: &str, record: Option<usize>, message: impl Into<String>) -> DebateError {
    DebateError::Integrity {
        file: file.to_owned(),
        record,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub title: String,
    pub category: String,
    #[serde(skip)]
    pub body: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Participant {
    pub id: String,
    pub display_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub id: String,
    pub name: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Argument {
    pub id: String,
    pub author: String,
    pub document: String,
    /// Byte offset into the document body.
    pub selection_start: usize,
    /// Exclusive byte offset.
    pub selection_end: usize,
    pub quoted_text: String,
    pub rephrase: String,
    pub judgments: JudgmentAssignment,
    pub justification: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<String>,
    /// Annotation session the argument was produced in.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub session: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArgumentRelationKind {
    Confirms,
    Contradicts,
    Contradiction,
    Contrariety,
    Subcontrariety,
    Subalternation,
}

impl From<RelationKind> for ArgumentRelationKind {
    fn from(kind: RelationKind) -> Self {
        match kind {
            RelationKind::Contradiction => ArgumentRelationKind::Contradiction,
            RelationKind::Contrariety => ArgumentRelationKind::Contrariety,
            RelationKind::Subcontrariety => ArgumentRelationKind::Subcontrariety,
            RelationKind::Subalternation => ArgumentRelationKind::Subalternation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgumentRelation {
    pub from: String,
    /// An argument id or a document id.
    pub to: String,
    pub kind: ArgumentRelationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct DocumentEntry {
    id: String,
    title: String,
    category: String,
    filename: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Manifest {
    subject: String,
    #[serde(default)]
    problem: String,
    #[serde(default)]
    participants: Vec<Participant>,
    #[serde(default)]
    groups: Vec<Group>,
    documents: Vec<DocumentEntry>,
}

/// A fully resolved debate. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Debate {
    subject: String,
    problem: String,
    structure: OppositionStructure,
    documents: Vec<Document>,
    participants: Vec<Participant>,
    groups: Vec<Group>,
    arguments: Vec<Argument>,
    relations: Vec<ArgumentRelation>,
    worlds: WorldSet,
}

/// Everything a debate is made of, before integrity checks.
#[derive(Debug, Clone)]
pub struct DebateParts {
    pub subject: String,
    pub problem: String,
    pub structure: OppositionStructure,
    pub documents: Vec<Document>,
    pub participants: Vec<Participant>,
    pub groups: Vec<Group>,
    pub arguments: Vec<Argument>,
    pub relations: Vec<ArgumentRelation>,
}

fn unique<'a>(
    ids: impl IntoIterator<Item = &'a str>,
    file: &str,
    what: &str,
) -> Result<HashSet<&'a str>, DebateError> {
    let mut seen = HashSet::new();
    for (i, id) in ids.into_iter().enumerate() {
        if !seen.insert(id) {
            return Err(integrity(
                file,
                Some(i + 1),
                format!("duplicate {what} id `{id}`"),
            ));
        }
    }
    Ok(seen)
}

impl Debate {
    /// Checks referential integrity and selection integrity.
    pub fn new(parts: DebateParts) -> Result<Self, DebateError> {
        if parts.subject.trim().is_empty() {
            return Err(integrity(DEBATE_FILE, None, "debate subject is empty"));
        }
        let participants = unique(
            parts.participants.iter().map(|p| p.id.as_str()),
            DEBATE_FILE,
            "participant",
        )?;
        unique(
            parts.groups.iter().map(|g| g.id.as_str()),
            DEBATE_FILE,
            "group",
        )?;
        for group in &parts.groups {
            if let Some(m) = group
                .members
                .iter()
                .find(|m| !participants.contains(m.as_str()))
            {
                return Err(integrity(
                    DEBATE_FILE,
                    None,
                    format!("group `{}` lists unknown participant `{m}`", group.id),
                ));
            }
        }
        let doc_ids = unique(
            parts.documents.iter().map(|d| d.id.as_str()),
            DEBATE_FILE,
            "document",
        )?;
        let bodies: HashMap<&str, &str> = parts
            .documents
            .iter()
            .map(|d| (d.id.as_str(), d.body.as_str()))
            .collect();
        let arg_ids = unique(
            parts.arguments.iter().map(|a| a.id.as_str()),
            ARGUMENTS_FILE,
            "argument",
        )?;

        for (i, arg) in parts.arguments.iter().enumerate() {
            let fail = |msg: String| {
                integrity(
                    ARGUMENTS_FILE,
                    Some(i + 1),
                    format!("argument `{}`: {msg}", arg.id),
                )
            };
            if !participants.contains(arg.author.as_str()) {
                return Err(fail(format!("unknown author `{}`", arg.author)));
            }
            let Some(body) = bodies.get(arg.document.as_str()) else {
                return Err(fail(format!("unknown document `{}`", arg.document)));
            };
            let (start, end) = (arg.selection_start, arg.selection_end);
            if start >= end || end > body.len() {
                return Err(fail(format!(
                    "selection [{start}, {end}) out of range for document of {} bytes",
                    body.len()
                )));
            }
            match body.get(start..end) {
                Some(slice) if slice == arg.quoted_text => {}
                Some(_) => {
                    return Err(fail(format!(
                        "quoted text does not match document `{}` at [{start}, {end})",
                        arg.document
                    )))
                }
                None => {
                    return Err(fail(format!(
                        "selection [{start}, {end}) splits a UTF-8 character"
                    )))
                }
            }
            if arg.rephrase.trim().is_empty() {
                return Err(fail("rephrase is empty".to_owned()));
            }
            if arg.justification.trim().is_empty() {
                return Err(fail("justification is empty".to_owned()));
            }
            if let Some((j, _)) = arg
                .judgments
                .iter()
                .find(|(j, _)| !parts.structure.contains(j))
            {
                return Err(fail(format!("unknown judgment `{j}`")));
            }
            if let Some(parent) = &arg.parent {
                if !arg_ids.contains(parent.as_str()) {
                    return Err(fail(format!("unknown parent `{parent}`")));
                }
            }
        }
        check_reply_forest(&parts.arguments)?;

        for (i, rel) in parts.relations.iter().enumerate() {
            let fail = |msg: String| integrity(RELATIONS_FILE, Some(i + 1), msg);
            if !arg_ids.contains(rel.from.as_str()) {
                return Err(fail(format!("unknown argument `{}`", rel.from)));
            }
            let is_arg = arg_ids.contains(rel.to.as_str());
            let is_doc = doc_ids.contains(rel.to.as_str());
            match (is_arg, is_doc) {
                (false, false) => return Err(fail(format!("unknown target `{}`", rel.to))),
                (true, true) => {
                    return Err(fail(format!(
                        "target `{}` names both an argument and a document",
                        rel.to
                    )))
                }
                _ => {}
            }
            if rel.from == rel.to {
                return Err(fail(format!("argument `{}` relates to itself", rel.from)));
            }
        }

        let worlds =
            admissible_worlds(&parts.structure).expect("structure size validated at construction");
        Ok(Self {
            subject: parts.subject,
            problem: parts.problem,
            structure: parts.structure,
            documents: parts.documents,
            participants: parts.participants,
            groups: parts.groups,
            arguments: parts.arguments,
            relations: parts.relations,
            worlds,
        })
    }

    pub fn subject(&self) -> &str {
        &self.subject
    }

    pub fn problem(&self) -> &str {
        &self.problem
    }

    pub fn structure(&self) -> &OppositionStructure {
        &self.structure
    }

    pub fn worlds(&self) -> &WorldSet {
        &self.worlds
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn participants(&self) -> &[Participant] {
        &self.participants
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn arguments(&self) -> &[Argument] {
        &self.arguments
    }

    pub fn relations(&self) -> &[ArgumentRelation] {
        &self.relations
    }

    pub fn participant(&self, id: &str) -> Option<&Participant> {
        self.participants.iter().find(|p| p.id == id)
    }

    pub fn argument(&self, id: &str) -> Option<&Argument> {
        self.arguments.iter().find(|a| a.id == id)
    }

    /// The argument's judgments with each half-judged level completed.
    pub fn effective_judgments(&self, argument: &Argument) -> JudgmentAssignment {
        self.structure.close_levels(&argument.judgments)
    }

    pub fn into_parts(self) -> DebateParts {
        DebateParts {
            subject: self.subject,
            problem: self.problem,
            structure: self.structure,
            documents: self.documents,
            participants: self.participants,
            groups: self.groups,
            arguments: self.arguments,
            relations: self.relations,
        }
    }
}

fn check_reply_forest(arguments: &[Argument]) -> Result<(), DebateError> {
    let parent: HashMap<&str, &str> = arguments
        .iter()
        .filter_map(|a| Some((a.id.as_str(), a.parent.as_deref()?)))
        .collect();
    let mut acyclic: HashSet<&str> = HashSet::new();
    for (i, arg) in arguments.iter().enumerate() {
        let mut path = HashSet::new();
        let mut cur = arg.id.as_str();
        while let Some(&p) = parent.get(cur) {
            if acyclic.contains(cur) {
                break;
            }
            if !path.insert(cur) {
                return Err(integrity(
                    ARGUMENTS_FILE,
                    Some(i + 1),
                    format!("argument `{}`: reply chain forms a cycle", arg.id),
                ));
            }
            cur = p;
        }
        acyclic.extend(path);
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, DebateError> {
    fs::read_to_string(path).map_err(|source| DebateError::Io {
        path: path.to_owned(),
        source,
    })
}

fn read_jsonl<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>, DebateError> {
    read(path)?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            serde_json::from_str(line).map_err(|source| DebateError::Json {
                path: path.to_owned(),
                record: Some(i + 1),
                source,
            })
        })
        .collect()
}

/// Loads and checks a debate directory.
pub fn load_debate(dir: &Path) -> Result<Debate, DebateError> {
    let manifest_path = dir.join(DEBATE_FILE);
    let manifest: Manifest =
        serde_json::from_str(&read(&manifest_path)?).map_err(|source| DebateError::Json {
            path: manifest_path.clone(),
            record: None,
            source,
        })?;

    let structure_path = dir.join(STRUCTURE_FILE);
    let structure =
        parse_structure(&read(&structure_path)?).map_err(|source| DebateError::Structure {
            path: structure_path,
            source,
        })?;

    let mut documents = Vec::with_capacity(manifest.documents.len());
    for entry in manifest.documents {
        let body = read(&dir.join(DOCUMENTS_DIR).join(&entry.filename))?;
        documents.push(Document {
            id: entry.id,
            title: entry.title,
            category: entry.category,
            body,
        });
    }

    let arguments = read_jsonl(&dir.join(ARGUMENTS_FILE))?;
    let relations_path = dir.join(RELATIONS_FILE);
    let relations = if relations_path.exists() {
        read_jsonl(&relations_path)?
    } else {
        Vec::new()
    };

    Debate::new(DebateParts {
        subject: manifest.subject,
        problem: manifest.problem,
        structure,
        documents,
        participants: manifest.participants,
        groups: manifest.groups,
        arguments,
        relations,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), DebateError> {
    fs::write(path, contents).map_err(|source| DebateError::Io {
        path: path.to_owned(),
        source,
    })
}

fn to_jsonl<T: Serialize>(records: &[T]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("plain data serializes") + "\n")
        .collect()
}

/// Writes a debate directory that [`load_debate`] reads back unchanged.
/// Document bodies are stored as `documents/<id>.txt`.
pub fn save_debate(debate: &Debate, dir: &Path) -> Result<(), DebateError> {
    let docs_dir = dir.join(DOCUMENTS_DIR);
    fs::create_dir_all(&docs_dir).map_err(|source| DebateError::Io {
        path: docs_dir.clone(),
        source,
    })?;
    let manifest = Manifest {
        subject: debate.subject.clone(),
        problem: debate.problem.clone(),
        participants: debate.participants.clone(),
        groups: debate.groups.clone(),
        documents: debate
            .documents
            .iter()
            .map(|d| DocumentEntry {
                id: d.id.clone(),
                title: d.title.clone(),
                category: d.category.clone(),
                filename: format!("{}.txt", d.id),
            })
            .collect(),
    };
    for doc in &debate.documents {
        write(&docs_dir.join(format!("{}.txt", doc.id)), &doc.body)?;
    }
    let manifest = serde_json::to_string_pretty(&manifest).expect("plain data serializes") + "\n";
    write(&dir.join(DEBATE_FILE), &manifest)?;
    write(
        &dir.join(STRUCTURE_FILE),
        &print_structure(&debate.structure),
    )?;
    write(&dir.join(ARGUMENTS_FILE), &to_jsonl(&debate.arguments))?;
    if !debate.relations.is_empty() {
        write(&dir.join(RELATIONS_FILE), &to_jsonl(&debate.relations))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationRecord {
    pub argument: String,
    /// Every level of the structure carries a judgment.
    pub well_formed: bool,
    pub violations: Vec<Violation>,
    /// Some admissible world extends the argument's judgments.
    pub completable: bool,
}

pub fn validate_argument(debate: &Debate, argument: &Argument) -> ValidationRecord {
    let effective = debate.effective_judgments(argument);
    let violations =
        check_assignment(&debate.structure, &effective).expect("judgment names checked at load");
    ValidationRecord {
        argument: argument.id.clone(),
        well_formed: debate.structure.judges_every_level(&effective),
        completable: debate.worlds.extends(&effective),
        violations,
    }
}

/// One record per argument, ordered by argument id.
pub fn validate_debate(debate: &Debate) -> Vec<ValidationRecord> {
    let mut args: Vec<&Argument> = debate.arguments.iter().collect();
    args.sort_by(|a, b| a.id.cmp(&b.id));
    args.into_iter()
        .map(|a| validate_argument(debate, a))
        .collect()
}

/// Reply threads: top-level arguments per document, children per parent,
/// each list sorted by id.
pub(crate) struct Threads<'d> {
    pub roots: BTreeMap<&'d str, Vec<&'d Argument>>,
    pub children: BTreeMap<&'d str, Vec<&'d Argument>>,
}

pub(crate) fn threads(debate: &Debate) -> Threads<'_> {
    let mut roots: BTreeMap<&str, Vec<&Argument>> = BTreeMap::new();
    let mut children: BTreeMap<&str, Vec<&Argument>> = BTreeMap::new();
    for arg in &debate.arguments {
        match &arg.parent {
            Some(p) => children.entry(p.as_str()).or_default().push(arg),
            None => roots.entry(arg.document.as_str()).or_default().push(arg),
        }
    }
    for list in roots.values_mut().chain(children.values_mut()) {
        list.sort_by(|a, b| a.id.cmp(&b.id));
    }
    Threads { roots, children }
}

/// Sessions in ascending order with their argument counts; arguments
/// without a session are not counted.
pub fn session_counts(debate: &Debate) -> BTreeMap<u32, usize> {
    let mut counts = BTreeMap::new();
    for s in debate.arguments.iter().filter_map(|a| a.session) {
        *counts.entry(s).or_insert(0) += 1;
    }
    counts
}

/// Categories with the ids of their documents.
pub fn categories(debate: &Debate) -> BTreeMap<&str, BTreeSet<&str>> {
    let mut out: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for doc in &debate.documents {
        out.entry(doc.category.as_str())
            .or_default()
            .insert(doc.id.as_str());
    }
    out
}
