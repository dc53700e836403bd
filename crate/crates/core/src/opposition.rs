//! Opposition structures and their world semantics.
//!
//! A structure is a finite set of named judgments, optionally paired into
//! levels (each level is an affirmative/negative pair in contradiction), plus
//! typed relation edges. Each relation kind forbids certain truth-value
//! combinations of its endpoints; the admissible worlds of a structure are the
//! total assignments that no edge forbids. Everything else in this module
//! (induced relations, coherence reports) is computed by enumerating those
//! worlds.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exhaustive enumeration bound.
pub const MAX_JUDGMENTS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OppositionError {
    #[error("structure must declare at least one judgment")]
    Empty,
    #[error("structure has {0} judgments, the limit is {MAX_JUDGMENTS}")]
    Capacity(usize),
    #[error("duplicate judgment `{0}`")]
    DuplicateJudgment(JudgmentId),
    #[error("duplicate level `{0}`")]
    DuplicateLevel(String),
    #[error("level `{0}` pairs a judgment with itself")]
    DegenerateLevel(String),
    #[error("unknown judgment `{0}`")]
    UnknownJudgment(JudgmentId),
    #[error("relation {0} links a judgment to itself")]
    SelfLoop(RelationEdge),
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("structure `{0}` has no admissible world")]
    Unsatisfiable(String),
    #[error("`{0}` and `{1}` must be distinct judgments")]
    SamePair(JudgmentId, JudgmentId),
}

/// Name of a judgment, e.g. `proved.yes`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JudgmentId(String);

impl JudgmentId {
    /// Judgment names are one or more identifiers joined by `.`.
    pub fn new(name: impl Into<String>) -> Result<Self, OppositionError> {
        let name = name.into();
        if is_dotted_name(&name) {
            Ok(Self(name))
        } else {
            Err(OppositionError::InvalidName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for JudgmentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_dotted_name(s: &str) -> bool {
    s.split('.').all(is_ident)
}

fn is_structure_name(s: &str) -> bool {
    s.split('-').all(is_ident)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub name: String,
    pub positive: JudgmentId,
    pub negative: JudgmentId,
}

impl Level {
    pub fn new(
        name: impl Into<String>,
        positive: impl Into<String>,
        negative: impl Into<String>,
    ) -> Result<Self, OppositionError> {
        let name = name.into();
        if !is_ident(&name) {
            return Err(OppositionError::InvalidName(name));
        }
        Ok(Self {
            name,
            positive: JudgmentId::new(positive)?,
            negative: JudgmentId::new(negative)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Contradiction,
    Contrariety,
    Subcontrariety,
    Subalternation,
}

impl RelationKind {
    pub const ALL: [RelationKind; 4] = [
        RelationKind::Contradiction,
        RelationKind::Contrariety,
        RelationKind::Subcontrariety,
        RelationKind::Subalternation,
    ];

    pub fn is_directed(self) -> bool {
        self == RelationKind::Subalternation
    }

    pub fn keyword(self) -> &'static str {
        match self {
            RelationKind::Contradiction => "contradiction",
            RelationKind::Contrariety => "contrariety",
            RelationKind::Subcontrariety => "subcontrariety",
            RelationKind::Subalternation => "subalternation",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.keyword() == s)
    }

    /// Whether the pair of endpoint values `(from, to)` is ruled out.
    pub fn forbids(self, from: bool, to: bool) -> bool {
        match self {
            RelationKind::Contradiction => from == to,
            RelationKind::Contrariety => from && to,
            RelationKind::Subcontrariety => !from && !to,
            RelationKind::Subalternation => from && !to,
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationEdge {
    pub kind: RelationKind,
    pub from: JudgmentId,
    pub to: JudgmentId,
}

impl RelationEdge {
    pub fn new(kind: RelationKind, from: JudgmentId, to: JudgmentId) -> Self {
        Self { kind, from, to }
    }

    pub fn arrow(&self) -> &'static str {
        if self.kind.is_directed() {
            "->"
        } else {
            "<->"
        }
    }
}

impl fmt::Display for RelationEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.kind,
            self.from,
            self.arrow(),
            self.to
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TruthValue {
    True,
    False,
    Unknown,
}

impl TruthValue {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            TruthValue::True => Some(true),
            TruthValue::False => Some(false),
            TruthValue::Unknown => None,
        }
    }
}

/// Partial map from judgments to truth values. Absent judgments are Unknown.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JudgmentAssignment(BTreeMap<JudgmentId, bool>);

impl JudgmentAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, judgment: JudgmentId, value: TruthValue) {
        match value.as_bool() {
            Some(b) => {
                self.0.insert(judgment, b);
            }
            None => {
                self.0.remove(&judgment);
            }
        }
    }

    pub fn with(mut self, judgment: &str, value: bool) -> Self {
        self.0.insert(JudgmentId(judgment.to_owned()), value);
        self
    }

    pub fn get(&self, judgment: &JudgmentId) -> TruthValue {
        self.0
            .get(judgment)
            .map_or(TruthValue::Unknown, |&b| TruthValue::from_bool(b))
    }

    pub fn value(&self, judgment: &str) -> TruthValue {
        self.get(&JudgmentId(judgment.to_owned()))
    }

    /// Determined entries in name order.
    pub fn iter(&self) -> impl Iterator<Item = (&JudgmentId, bool)> {
        self.0.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total over the given structure: every judgment determined.
    pub fn is_total(&self, structure: &OppositionStructure) -> bool {
        structure.judgments().iter().all(|j| self.0.contains_key(j))
    }

    /// Whether `other` agrees with every determined value of `self`.
    pub fn is_extended_by(&self, other: &JudgmentAssignment) -> bool {
        self.0.iter().all(|(j, v)| other.0.get(j) == Some(v))
    }

    /// `+name`/`-name` listing in name order.
    pub fn signed_listing(&self) -> String {
        self.0
            .iter()
            .map(|(j, &v)| format!("{}{}", if v { '+' } else { '-' }, j))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub edge: RelationEdge,
    pub witnessed_values: (bool, bool),
    pub reason: String,
}

/// Named judgments grouped into levels, plus typed relation edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OppositionStructure {
    name: String,
    levels: Vec<Level>,
    free_judgments: Vec<JudgmentId>,
    edges: Vec<RelationEdge>,
    // Derived: all judgments in name order and the index of each.
    sorted: Vec<JudgmentId>,
}

impl OppositionStructure {
    pub fn new(
        name: impl Into<String>,
        levels: Vec<Level>,
        free_judgments: Vec<JudgmentId>,
        edges: Vec<RelationEdge>,
    ) -> Result<Self, OppositionError> {
        let name = name.into();
        if !is_structure_name(&name) {
            return Err(OppositionError::InvalidName(name));
        }
        let mut seen = BTreeSet::new();
        let mut level_names = BTreeSet::new();
        for level in &levels {
            if !level_names.insert(level.name.as_str()) {
                return Err(OppositionError::DuplicateLevel(level.name.clone()));
            }
            if level.positive == level.negative {
                return Err(OppositionError::DegenerateLevel(level.name.clone()));
            }
        }
        let all = levels
            .iter()
            .flat_map(|l| [&l.positive, &l.negative])
            .chain(free_judgments.iter());
        for j in all {
            if !seen.insert(j.clone()) {
                return Err(OppositionError::DuplicateJudgment(j.clone()));
            }
        }
        if seen.is_empty() {
            return Err(OppositionError::Empty);
        }
        if seen.len() > MAX_JUDGMENTS {
            return Err(OppositionError::Capacity(seen.len()));
        }
        for edge in &edges {
            for end in [&edge.from, &edge.to] {
                if !seen.contains(end) {
                    return Err(OppositionError::UnknownJudgment(end.clone()));
                }
            }
            if edge.from == edge.to {
                return Err(OppositionError::SelfLoop(edge.clone()));
            }
        }
        Ok(Self {
            name,
            levels,
            free_judgments,
            edges,
            sorted: seen.into_iter().collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn free_judgments(&self) -> &[JudgmentId] {
        &self.free_judgments
    }

    /// Edges as declared, without the implicit level contradictions.
    pub fn declared_edges(&self) -> &[RelationEdge] {
        &self.edges
    }

    /// Implicit level contradictions first, then declared edges.
    pub fn edges(&self) -> Vec<RelationEdge> {
        self.levels
            .iter()
            .map(|l| {
                RelationEdge::new(
                    RelationKind::Contradiction,
                    l.positive.clone(),
                    l.negative.clone(),
                )
            })
            .chain(self.edges.iter().cloned())
            .collect()
    }

    /// All judgments in name order.
    pub fn judgments(&self) -> &[JudgmentId] {
        &self.sorted
    }

    pub fn contains(&self, judgment: &JudgmentId) -> bool {
        self.index_of(judgment).is_some()
    }

    fn index_of(&self, judgment: &JudgmentId) -> Option<usize> {
        self.sorted.binary_search(judgment).ok()
    }

    pub fn judgment(&self, name: &str) -> Option<&JudgmentId> {
        self.sorted.iter().find(|j| j.as_str() == name)
    }

    pub fn level(&self, name: &str) -> Option<&Level> {
        self.levels.iter().find(|l| l.name == name)
    }

    /// Fills in the other judgment of every level where exactly one side is
    /// determined. Levels with both sides set are left untouched.
    pub fn close_levels(&self, a: &JudgmentAssignment) -> JudgmentAssignment {
        let mut closed = a.clone();
        for level in &self.levels {
            match (a.get(&level.positive), a.get(&level.negative)) {
                (TruthValue::Unknown, TruthValue::Unknown) => {}
                (v, TruthValue::Unknown) => {
                    closed
                        .0
                        .insert(level.negative.clone(), v != TruthValue::True);
                }
                (TruthValue::Unknown, v) => {
                    closed
                        .0
                        .insert(level.positive.clone(), v != TruthValue::True);
                }
                _ => {}
            }
        }
        closed
    }

    /// Every level carries at least one determined judgment.
    pub fn judges_every_level(&self, a: &JudgmentAssignment) -> bool {
        self.levels.iter().all(|l| {
            a.get(&l.positive) != TruthValue::Unknown || a.get(&l.negative) != TruthValue::Unknown
        })
    }

    pub(crate) fn edge_indices(&self) -> Vec<(RelationKind, usize, usize)> {
        self.edges()
            .iter()
            .map(|e| {
                (
                    e.kind,
                    self.index_of(&e.from).expect("validated endpoint"),
                    self.index_of(&e.to).expect("validated endpoint"),
                )
            })
            .collect()
    }
}

/// Edges whose impossibility condition is violated by determined values.
pub fn check_assignment(
    structure: &OppositionStructure,
    a: &JudgmentAssignment,
) -> Result<Vec<Violation>, OppositionError> {
    if let Some((unknown, _)) = a.iter().find(|(j, _)| !structure.contains(j)) {
        return Err(OppositionError::UnknownJudgment(unknown.clone()));
    }
    let mut violations = Vec::new();
    for edge in structure.edges() {
        let (Some(from), Some(to)) = (a.get(&edge.from).as_bool(), a.get(&edge.to).as_bool())
        else {
            continue;
        };
        if edge.kind.forbids(from, to) {
            let reason = violation_reason(&edge, from);
            violations.push(Violation {
                edge,
                witnessed_values: (from, to),
                reason,
            });
        }
    }
    Ok(violations)
}

fn violation_reason(edge: &RelationEdge, from: bool) -> String {
    match edge.kind {
        RelationKind::Contradiction if from => {
            format!("{} and {} are both true", edge.from, edge.to)
        }
        RelationKind::Contradiction => format!("{} and {} are both false", edge.from, edge.to),
        RelationKind::Contrariety => format!("{} and {} are both true", edge.from, edge.to),
        RelationKind::Subcontrariety => format!("{} and {} are both false", edge.from, edge.to),
        RelationKind::Subalternation => {
            format!("{} is true but {} is false", edge.from, edge.to)
        }
    }
}

/// The admissible worlds of a structure, as bitmasks over the name-sorted
/// judgments (bit `n-1-i` holds judgment `i`, so numeric order is the
/// binary-counter order with the first judgment most significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldSet {
    judgments: Vec<JudgmentId>,
    masks: Vec<u32>,
}

impl WorldSet {
    pub fn judgments(&self) -> &[JudgmentId] {
        &self.judgments
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    fn bit(&self, i: usize) -> u32 {
        1 << (self.judgments.len() - 1 - i)
    }

    fn value_at(&self, mask: u32, i: usize) -> bool {
        mask & self.bit(i) != 0
    }

    pub fn assignment(&self, mask: u32) -> JudgmentAssignment {
        let mut a = JudgmentAssignment::new();
        for (i, j) in self.judgments.iter().enumerate() {
            a.0.insert(j.clone(), self.value_at(mask, i));
        }
        a
    }

    pub fn iter(&self) -> impl Iterator<Item = JudgmentAssignment> + '_ {
        self.masks.iter().map(|&m| self.assignment(m))
    }

    pub fn to_assignments(&self) -> Vec<JudgmentAssignment> {
        self.iter().collect()
    }

    /// Some world agrees with every determined value of `a`.
    pub fn extends(&self, a: &JudgmentAssignment) -> bool {
        let mut care = 0u32;
        let mut want = 0u32;
        for (i, j) in self.judgments.iter().enumerate() {
            if let Some(v) = a.get(j).as_bool() {
                care |= self.bit(i);
                if v {
                    want |= self.bit(i);
                }
            }
        }
        self.masks.iter().any(|&m| m & care == want)
    }

    fn index_of(&self, j: &JudgmentId) -> Option<usize> {
        self.judgments.binary_search(j).ok()
    }
}

/// Enumerates admissible worlds in binary-counter order.
///
/// Depth-first over the sorted judgments, trying false before true, and
/// pruning as soon as an edge with both endpoints assigned is violated.
pub fn admissible_worlds(structure: &OppositionStructure) -> Result<WorldSet, OppositionError> {
    let n = structure.judgments().len();
    if n > MAX_JUDGMENTS {
        return Err(OppositionError::Capacity(n));
    }
    // Edges grouped by the later endpoint, which is where they become checkable.
    let mut checks: Vec<Vec<(RelationKind, usize, usize)>> = vec![Vec::new(); n];
    for (kind, from, to) in structure.edge_indices() {
        checks[from.max(to)].push((kind, from, to));
    }
    let mut masks = Vec::new();
    let mut values = vec![false; n];
    search(0, &mut values, &checks, &mut masks);
    Ok(WorldSet {
        judgments: structure.judgments().to_vec(),
        masks,
    })
}

fn search(
    depth: usize,
    values: &mut Vec<bool>,
    checks: &[Vec<(RelationKind, usize, usize)>],
    out: &mut Vec<u32>,
) {
    let n = values.len();
    if depth == n {
        let mask = values
            .iter()
            .fold(0u32, |acc, &v| (acc << 1) | u32::from(v));
        out.push(mask);
        return;
    }
    for v in [false, true] {
        values[depth] = v;
        let ok = checks[depth]
            .iter()
            .all(|&(kind, from, to)| !kind.forbids(values[from], values[to]));
        if ok {
            search(depth + 1, values, checks, out);
        }
    }
    values[depth] = false;
}

/// Which value combinations of a pair occur across the admissible worlds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PairPossibilities {
    pub both_true: bool,
    pub both_false: bool,
    pub x_true_y_false: bool,
    pub y_true_x_false: bool,
}

impl PairPossibilities {
    fn scan(worlds: &WorldSet, x: usize, y: usize) -> Self {
        let mut p = Self::default();
        for &m in worlds.masks() {
            match (worlds.value_at(m, x), worlds.value_at(m, y)) {
                (true, true) => p.both_true = true,
                (false, false) => p.both_false = true,
                (true, false) => p.x_true_y_false = true,
                (false, true) => p.y_true_x_false = true,
            }
        }
        p
    }

    fn allows(&self, x: bool, y: bool) -> bool {
        match (x, y) {
            (true, true) => self.both_true,
            (false, false) => self.both_false,
            (true, false) => self.x_true_y_false,
            (false, true) => self.y_true_x_false,
        }
    }
}

/// A relation that holds between two judgments over every admissible world.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum InducedKind {
    Contradiction,
    Contrariety,
    Subcontrariety,
    Subalternation { from: JudgmentId, to: JudgmentId },
}

impl fmt::Display for InducedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InducedKind::Contradiction => f.write_str("contradiction"),
            InducedKind::Contrariety => f.write_str("contrariety"),
            InducedKind::Subcontrariety => f.write_str("subcontrariety"),
            InducedKind::Subalternation { from, to } => {
                write!(f, "subalternation {from} -> {to}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub x: JudgmentId,
    pub y: JudgmentId,
    pub possibilities: PairPossibilities,
    /// Empty means the pair is independent.
    pub kinds: Vec<InducedKind>,
}

impl RelationReport {
    pub fn is_independent(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn holds(&self, kind: RelationKind) -> bool {
        self.kinds.iter().any(|k| {
            matches!(
                (k, kind),
                (InducedKind::Contradiction, RelationKind::Contradiction)
                    | (InducedKind::Contrariety, RelationKind::Contrariety)
                    | (InducedKind::Subcontrariety, RelationKind::Subcontrariety)
                    | (
                        InducedKind::Subalternation { .. },
                        RelationKind::Subalternation
                    )
            )
        })
    }
}

fn classify(x: &JudgmentId, y: &JudgmentId, p: PairPossibilities) -> Vec<InducedKind> {
    let mut kinds = Vec::new();
    if !p.both_true && !p.both_false {
        kinds.push(InducedKind::Contradiction);
    }
    if !p.both_true && p.both_false {
        kinds.push(InducedKind::Contrariety);
    }
    if p.both_true && !p.both_false {
        kinds.push(InducedKind::Subcontrariety);
    }
    if !p.x_true_y_false {
        kinds.push(InducedKind::Subalternation {
            from: x.clone(),
            to: y.clone(),
        });
    }
    if !p.y_true_x_false {
        kinds.push(InducedKind::Subalternation {
            from: y.clone(),
            to: x.clone(),
        });
    }
    kinds
}

/// Classifies the relation between `x` and `y` over the admissible worlds.
pub fn induced_relation(
    structure: &OppositionStructure,
    x: &JudgmentId,
    y: &JudgmentId,
) -> Result<RelationReport, OppositionError> {
    let worlds = admissible_worlds(structure)?;
    induced_relation_in(structure, &worlds, x, y)
}

/// As [`induced_relation`], reusing an enumerated world set.
pub fn induced_relation_in(
    structure: &OppositionStructure,
    worlds: &WorldSet,
    x: &JudgmentId,
    y: &JudgmentId,
) -> Result<RelationReport, OppositionError> {
    if x == y {
        return Err(OppositionError::SamePair(x.clone(), y.clone()));
    }
    let xi = worlds
        .index_of(x)
        .ok_or_else(|| OppositionError::UnknownJudgment(x.clone()))?;
    let yi = worlds
        .index_of(y)
        .ok_or_else(|| OppositionError::UnknownJudgment(y.clone()))?;
    if worlds.is_empty() {
        return Err(OppositionError::Unsatisfiable(structure.name().to_owned()));
    }
    let possibilities = PairPossibilities::scan(worlds, xi, yi);
    Ok(RelationReport {
        x: x.clone(),
        y: y.clone(),
        possibilities,
        kinds: classify(x, y, possibilities),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "status")]
pub enum EdgeStatus {
    /// Every combination the relation permits occurs in some world.
    Confirmed,
    /// Some permitted combination never occurs; the pair is bound by a
    /// stronger relation than declared.
    Strengthened {
        missing: Vec<(bool, bool)>,
        induced: Vec<InducedKind>,
    },
    /// No admissible world exists, so nothing can be witnessed.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeReport {
    pub edge: RelationEdge,
    pub implicit: bool,
    #[serde(flatten)]
    pub status: EdgeStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceReport {
    pub structure: String,
    pub judgments: usize,
    pub worlds: usize,
    pub unsatisfiable: bool,
    pub edges: Vec<EdgeReport>,
}

impl CoherenceReport {
    /// Satisfiable with every edge confirmed.
    pub fn is_coherent(&self) -> bool {
        !self.unsatisfiable && self.edges.iter().all(|e| e.status == EdgeStatus::Confirmed)
    }
}

/// Checks every edge's possibility half against the admissible worlds.
pub fn verify_structure(structure: &OppositionStructure) -> CoherenceReport {
    let worlds = admissible_worlds(structure).expect("structure size validated at construction");
    let implicit_count = structure.levels().len();
    let edges = structure
        .edges()
        .into_iter()
        .enumerate()
        .map(|(i, edge)| {
            let status = if worlds.is_empty() {
                EdgeStatus::Vacuous
            } else {
                edge_status(&worlds, &edge)
            };
            EdgeReport {
                edge,
                implicit: i < implicit_count,
                status,
            }
        })
        .collect();
    CoherenceReport {
        structure: structure.name().to_owned(),
        judgments: structure.judgments().len(),
        worlds: worlds.len(),
        unsatisfiable: worlds.is_empty(),
        edges,
    }
}

fn edge_status(worlds: &WorldSet, edge: &RelationEdge) -> EdgeStatus {
    let from = worlds.index_of(&edge.from).expect("validated endpoint");
    let to = worlds.index_of(&edge.to).expect("validated endpoint");
    let p = PairPossibilities::scan(worlds, from, to);
    let missing: Vec<(bool, bool)> = [(true, true), (true, false), (false, true), (false, false)]
        .into_iter()
        .filter(|&(a, b)| !edge.kind.forbids(a, b) && !p.allows(a, b))
        .collect();
    if missing.is_empty() {
        EdgeStatus::Confirmed
    } else {
        EdgeStatus::Strengthened {
            missing,
            induced: classify(&edge.from, &edge.to, p),
        }
    }
}

fn jid(name: &str) -> JudgmentId {
    JudgmentId::new(name).expect("built-in judgment name")
}

fn level(name: &str) -> Level {
    Level::new(name, format!("{name}.yes"), format!("{name}.no")).expect("built-in level")
}

fn sub(from: &str, to: &str) -> RelationEdge {
    RelationEdge::new(RelationKind::Subalternation, jid(from), jid(to))
}

/// Aristotle's square over A, E, I, O with all six edges declared.
pub fn classical_square() -> OppositionStructure {
    let e = |kind, a: &str, b: &str| RelationEdge::new(kind, jid(a), jid(b));
    OppositionStructure::new(
        "classical-square",
        Vec::new(),
        ["A", "E", "I", "O"].into_iter().map(jid).collect(),
        vec![
            e(RelationKind::Contrariety, "A", "E"),
            e(RelationKind::Subcontrariety, "I", "O"),
            e(RelationKind::Subalternation, "A", "I"),
            e(RelationKind::Subalternation, "E", "O"),
            e(RelationKind::Contradiction, "A", "O"),
            e(RelationKind::Contradiction, "E", "I"),
        ],
    )
    .expect("built-in structure")
}

/// Theoretical, emotional and practical levels; agreeing entails liking,
/// liking entails it working. The negative chain follows by contraposition.
pub fn betapolitique() -> OppositionStructure {
    let levels = vec![
        Level::new("theoretical", "agree", "disagree"),
        Level::new("emotional", "like", "dislike"),
        Level::new("practical", "works", "fails"),
    ]
    .into_iter()
    .collect::<Result<Vec<_>, _>>()
    .expect("built-in levels");
    OppositionStructure::new(
        "betapolitique",
        levels,
        Vec::new(),
        vec![sub("agree", "like"), sub("like", "works")],
    )
    .expect("built-in structure")
}

/// Proved, unclear and incorrect levels; a proved statement is neither
/// unclear nor incorrect.
pub fn intermed() -> OppositionStructure {
    OppositionStructure::new(
        "intermed",
        vec![level("proved"), level("unclear"), level("incorrect")],
        Vec::new(),
        vec![
            sub("proved.yes", "unclear.no"),
            sub("proved.yes", "incorrect.no"),
        ],
    )
    .expect("built-in structure")
}

/// Purpose, syntax and reference levels, opposed by contradiction only.
pub fn ecap() -> OppositionStructure {
    let levels = vec![
        Level::new("purpose", "agree", "disagree"),
        Level::new("syntax", "correct_syntax", "incorrect_syntax"),
        Level::new("reference", "confirms", "contradicts"),
    ]
    .into_iter()
    .collect::<Result<Vec<_>, _>>()
    .expect("built-in levels");
    OppositionStructure::new("ecap", levels, Vec::new(), Vec::new()).expect("built-in structure")
}

/// The bundled structures by name.
pub fn builtin_structures() -> BTreeMap<String, OppositionStructure> {
    [
        classical_square(),
        betapolitique(),
        intermed(),
        ecap(),
        crate::defeasible::modality_structure(),
    ]
    .into_iter()
    .map(|s| (s.name().to_owned(), s))
    .collect()
}
