//! Propositional defeasible theories and their six proof tags.
//!
//! A theory is a set of facts, a set of rules (strict `->`, defeasible `=>`,
//! defeater `~>`) and an acyclic superiority relation over rules. For every
//! literal the engine computes three tag families:
//!
//! * definite (`+Δ`/`-Δ`): provable from facts and strict rules alone;
//! * defeasible (`+δ`/`-δ`): ambiguity-blocking defeasible provability,
//!   where a single superior supporting rule overrides an attacker;
//! * ambiguity (`+δ_ap`/`-δ_ap`): supported by some chain of facts, strict
//!   and defeasible rules, superiority ignored.
//!
//! Negative definite and defeasible tags are constructive (their own least
//! fixpoints), so literals caught in cycles can stay undecided.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::opposition::{
    check_assignment, is_ident, JudgmentAssignment, JudgmentId, Level, OppositionStructure,
    RelationEdge, RelationKind, TruthValue, Violation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("duplicate rule id `{0}`")]
    DuplicateRule(RuleId),
    #[error("unknown rule id `{0}`")]
    UnknownRule(RuleId),
    #[error("superiority relation is cyclic: {}", fmt_cycle(.0))]
    CyclicSuperiority(Vec<RuleId>),
}

fn fmt_cycle(cycle: &[RuleId]) -> String {
    cycle
        .iter()
        .map(RuleId::as_str)
        .collect::<Vec<_>>()
        .join(" > ")
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Result<Self, TheoryError> {
        let name = name.into();
        if is_ident(&name) {
            Ok(Self(name))
        } else {
            Err(TheoryError::InvalidName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl Literal {
    pub fn positive(atom: Atom) -> Self {
        Self {
            atom,
            negated: false,
        }
    }

    pub fn negative(atom: Atom) -> Self {
        Self {
            atom,
            negated: true,
        }
    }

    /// Parses `name` or `~name`.
    pub fn parse(s: &str) -> Result<Self, TheoryError> {
        match s.strip_prefix('~') {
            Some(rest) => Ok(Self::negative(Atom::new(rest)?)),
            None => Ok(Self::positive(Atom::new(s)?)),
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            atom: self.atom.clone(),
            negated: !self.negated,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("~")?;
        }
        f.write_str(self.atom.as_str())
    }
}

impl Serialize for Literal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Literal::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RuleId(String);

impl RuleId {
    pub fn new(name: impl Into<String>) -> Result<Self, TheoryError> {
        let name = name.into();
        if is_ident(&name) {
            Ok(Self(name))
        } else {
            Err(TheoryError::InvalidName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    Strict,
    Defeasible,
    Defeater,
}

impl RuleKind {
    pub fn arrow(self) -> &'static str {
        match self {
            RuleKind::Strict => "->",
            RuleKind::Defeasible => "=>",
            RuleKind::Defeater => "~>",
        }
    }

    /// Strict and defeasible rules can support conclusions; defeaters cannot.
    pub fn supports(self) -> bool {
        self != RuleKind::Defeater
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub id: RuleId,
    pub kind: RuleKind,
    pub body: Vec<Literal>,
    pub head: Literal,
}

impl Rule {
    pub fn new(id: RuleId, kind: RuleKind, body: Vec<Literal>, head: Literal) -> Self {
        Self {
            id,
            kind,
            body,
            head,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.id)?;
        if !self.body.is_empty() {
            let body: Vec<String> = self.body.iter().map(Literal::to_string).collect();
            write!(f, " {}", body.join(", "))?;
        }
        write!(f, " {} {}", self.kind.arrow(), self.head)
    }
}

/// Facts, rules and superiority. Rules are kept sorted by id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DefeasibleTheory {
    facts: BTreeSet<Literal>,
    rules: Vec<Rule>,
    superiority: BTreeSet<(RuleId, RuleId)>,
}

impl DefeasibleTheory {
    pub fn new(
        facts: impl IntoIterator<Item = Literal>,
        rules: Vec<Rule>,
        superiority: impl IntoIterator<Item = (RuleId, RuleId)>,
    ) -> Result<Self, TheoryError> {
        let mut rules = rules;
        rules.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = rules.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(TheoryError::DuplicateRule(w[0].id.clone()));
        }
        let superiority: BTreeSet<(RuleId, RuleId)> = superiority.into_iter().collect();
        let known = |id: &RuleId| rules.binary_search_by(|r| r.id.cmp(id)).is_ok();
        for (hi, lo) in &superiority {
            for id in [hi, lo] {
                if !known(id) {
                    return Err(TheoryError::UnknownRule(id.clone()));
                }
            }
        }
        if let Some(cycle) = find_cycle(&superiority) {
            return Err(TheoryError::CyclicSuperiority(cycle));
        }
        Ok(Self {
            facts: facts.into_iter().collect(),
            rules,
            superiority,
        })
    }

    pub fn facts(&self) -> &BTreeSet<Literal> {
        &self.facts
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn superiority(&self) -> &BTreeSet<(RuleId, RuleId)> {
        &self.superiority
    }

    pub fn rule(&self, id: &RuleId) -> Option<&Rule> {
        self.rules
            .binary_search_by(|r| r.id.cmp(id))
            .ok()
            .map(|i| &self.rules[i])
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty() && self.rules.is_empty()
    }

    /// Every literal mentioned anywhere, together with its complement.
    pub fn literals(&self) -> BTreeSet<Literal> {
        let mentioned = self.facts.iter().chain(
            self.rules
                .iter()
                .flat_map(|r| r.body.iter().chain([&r.head])),
        );
        mentioned
            .flat_map(|l| [l.clone(), l.complement()])
            .collect()
    }

    /// Superiority pairs that can never matter: the two heads are not
    /// complementary.
    pub fn warnings(&self) -> Vec<String> {
        self.superiority
            .iter()
            .filter_map(|(hi, lo)| {
                let (h, l) = (self.rule(hi)?, self.rule(lo)?);
                (h.head != l.head.complement()).then(|| {
                    format!(
                        "superiority {hi} > {lo} is ignored: heads {} and {} do not conflict",
                        h.head, l.head
                    )
                })
            })
            .collect()
    }
}

/// Some cycle of the relation, listed from its first repeated node.
fn find_cycle(pairs: &BTreeSet<(RuleId, RuleId)>) -> Option<Vec<RuleId>> {
    let mut succ: BTreeMap<&RuleId, Vec<&RuleId>> = BTreeMap::new();
    for (a, b) in pairs {
        succ.entry(a).or_default().push(b);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state: HashMap<&RuleId, u8> = HashMap::new();
    let mut stack: Vec<&RuleId> = Vec::new();

    fn visit<'a>(
        node: &'a RuleId,
        succ: &BTreeMap<&'a RuleId, Vec<&'a RuleId>>,
        state: &mut HashMap<&'a RuleId, u8>,
        stack: &mut Vec<&'a RuleId>,
    ) -> Option<Vec<RuleId>> {
        state.insert(node, 1);
        stack.push(node);
        for &next in succ.get(node).map(Vec::as_slice).unwrap_or(&[]) {
            match state.get(next).copied().unwrap_or(0) {
                1 => {
                    let start = stack.iter().position(|&n| n == next).expect("on stack");
                    let mut cycle: Vec<RuleId> =
                        stack[start..].iter().map(|&n| n.clone()).collect();
                    cycle.push(next.clone());
                    return Some(cycle);
                }
                0 => {
                    if let Some(c) = visit(next, succ, state, stack) {
                        return Some(c);
                    }
                }
                _ => {}
            }
        }
        stack.pop();
        state.insert(node, 2);
        None
    }

    for &start in succ.keys() {
        if state.get(start).copied().unwrap_or(0) == 0 {
            if let Some(c) = visit(start, &succ, &mut state, &mut stack) {
                return Some(c);
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Plus,
    Minus,
    Undecided,
}

impl Tag {
    pub fn sign(self) -> char {
        match self {
            Tag::Plus => '+',
            Tag::Minus => '-',
            Tag::Undecided => '?',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TagVector {
    pub definite: Tag,
    pub defeasible: Tag,
    pub ambiguity: Tag,
}

impl TagVector {
    pub fn new(definite: Tag, defeasible: Tag, ambiguity: Tag) -> Self {
        Self {
            definite,
            defeasible,
            ambiguity,
        }
    }

    /// `+Δ ⇒ +δ ⇒ +δ_ap`.
    pub fn satisfies_chain(&self) -> bool {
        (self.definite != Tag::Plus || self.defeasible == Tag::Plus)
            && (self.defeasible != Tag::Plus || self.ambiguity == Tag::Plus)
    }
}

impl fmt::Display for TagVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}Δ {}δ {}δ_ap",
            self.definite.sign(),
            self.defeasible.sign(),
            self.ambiguity.sign()
        )
    }
}

/// Integer-indexed view of a theory shared by the three computations.
struct Index<'t> {
    theory: &'t DefeasibleTheory,
    literals: Vec<Literal>,
    complement: Vec<usize>,
    is_fact: Vec<bool>,
    // body literal indices per rule, aligned with `theory.rules`
    bodies: Vec<Vec<usize>>,
    heads: Vec<usize>,
    rules_for: Vec<Vec<usize>>,
    superior: HashSet<(usize, usize)>,
}

impl<'t> Index<'t> {
    fn new(theory: &'t DefeasibleTheory) -> Self {
        let literals: Vec<Literal> = theory.literals().into_iter().collect();
        let idx: HashMap<&Literal, usize> =
            literals.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let complement = literals.iter().map(|l| idx[&l.complement()]).collect();
        let is_fact = literals.iter().map(|l| theory.facts.contains(l)).collect();
        let bodies: Vec<Vec<usize>> = theory
            .rules
            .iter()
            .map(|r| r.body.iter().map(|l| idx[l]).collect())
            .collect();
        let heads: Vec<usize> = theory.rules.iter().map(|r| idx[&r.head]).collect();
        let mut rules_for = vec![Vec::new(); literals.len()];
        for (ri, &h) in heads.iter().enumerate() {
            rules_for[h].push(ri);
        }
        let rule_idx: HashMap<&RuleId, usize> = theory
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| (&r.id, i))
            .collect();
        let superior = theory
            .superiority
            .iter()
            .map(|(a, b)| (rule_idx[a], rule_idx[b]))
            .collect();
        Self {
            theory,
            literals,
            complement,
            is_fact,
            bodies,
            heads,
            rules_for,
            superior,
        }
    }

    fn kind(&self, rule: usize) -> RuleKind {
        self.theory.rules[rule].kind
    }

    fn tag_map(&self, tags: Vec<Tag>) -> BTreeMap<Literal, Tag> {
        self.literals.iter().cloned().zip(tags).collect()
    }
}

/// Forward chaining with per-rule counters of unproven body literals.
fn forward_support(ix: &Index, usable: impl Fn(RuleKind) -> bool) -> Vec<bool> {
    let n = ix.literals.len();
    let mut proven = vec![false; n];
    let distinct: Vec<BTreeSet<usize>> = ix
        .bodies
        .iter()
        .map(|b| b.iter().copied().collect())
        .collect();
    let mut pending: Vec<usize> = distinct.iter().map(BTreeSet::len).collect();
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ri, body) in distinct.iter().enumerate() {
        if usable(ix.kind(ri)) {
            for &l in body {
                occurs[l].push(ri);
            }
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&l| ix.is_fact[l]).collect();
    for (ri, &h) in ix.heads.iter().enumerate() {
        if usable(ix.kind(ri)) && pending[ri] == 0 {
            queue.push(h);
        }
    }
    while let Some(l) = queue.pop() {
        if proven[l] {
            continue;
        }
        proven[l] = true;
        for &ri in &occurs[l] {
            pending[ri] -= 1;
            if pending[ri] == 0 {
                queue.push(ix.heads[ri]);
            }
        }
    }
    proven
}

fn definite_tags(ix: &Index) -> Vec<Tag> {
    let n = ix.literals.len();
    let plus = forward_support(ix, |k| k == RuleKind::Strict);

    // -Δq: not a fact and every strict rule for q has a -Δ body literal.
    let mut open_rules: Vec<usize> = ix
        .rules_for
        .iter()
        .map(|rs| {
            rs.iter()
                .filter(|&&r| ix.kind(r) == RuleKind::Strict)
                .count()
        })
        .collect();
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ri, body) in ix.bodies.iter().enumerate() {
        if ix.kind(ri) == RuleKind::Strict {
            for &l in body {
                occurs[l].push(ri);
            }
        }
    }
    let mut failed_rule = vec![false; ix.heads.len()];
    let mut minus = vec![false; n];
    let mut queue: Vec<usize> = (0..n)
        .filter(|&l| !ix.is_fact[l] && open_rules[l] == 0)
        .collect();
    while let Some(l) = queue.pop() {
        if minus[l] {
            continue;
        }
        minus[l] = true;
        for &ri in &occurs[l] {
            if failed_rule[ri] {
                continue;
            }
            failed_rule[ri] = true;
            let h = ix.heads[ri];
            open_rules[h] -= 1;
            if open_rules[h] == 0 && !ix.is_fact[h] {
                queue.push(h);
            }
        }
    }

    (0..n)
        .map(|l| match (plus[l], minus[l]) {
            (true, _) => Tag::Plus,
            (false, true) => Tag::Minus,
            (false, false) => Tag::Undecided,
        })
        .collect()
}

fn ambiguity_tags(ix: &Index) -> Vec<Tag> {
    forward_support(ix, RuleKind::supports)
        .into_iter()
        .map(|p| if p { Tag::Plus } else { Tag::Minus })
        .collect()
}

/// Mutually inductive `+δ`/`-δ`, iterated until no literal changes.
fn defeasible_tags(ix: &Index, definite: &[Tag]) -> Vec<Tag> {
    let n = ix.literals.len();
    let mut tags = vec![Tag::Undecided; n];
    loop {
        let mut changed = false;
        for q in 0..n {
            if tags[q] != Tag::Undecided {
                continue;
            }
            if proves_plus(ix, definite, &tags, q) {
                tags[q] = Tag::Plus;
                changed = true;
            } else if proves_minus(ix, definite, &tags, q) {
                tags[q] = Tag::Minus;
                changed = true;
            }
        }
        if !changed {
            return tags;
        }
    }
}

fn body_all(ix: &Index, tags: &[Tag], rule: usize, tag: Tag) -> bool {
    ix.bodies[rule].iter().all(|&l| tags[l] == tag)
}

fn body_any(ix: &Index, tags: &[Tag], rule: usize, tag: Tag) -> bool {
    ix.bodies[rule].iter().any(|&l| tags[l] == tag)
}

fn proves_plus(ix: &Index, definite: &[Tag], tags: &[Tag], q: usize) -> bool {
    if definite[q] == Tag::Plus {
        return true;
    }
    let nq = ix.complement[q];
    if definite[nq] != Tag::Minus {
        return false;
    }
    let supporters: Vec<usize> = ix.rules_for[q]
        .iter()
        .copied()
        .filter(|&r| ix.kind(r).supports() && body_all(ix, tags, r, Tag::Plus))
        .collect();
    if supporters.is_empty() {
        return false;
    }
    ix.rules_for[nq].iter().all(|&s| {
        body_any(ix, tags, s, Tag::Minus)
            || supporters.iter().any(|&t| ix.superior.contains(&(t, s)))
    })
}

fn proves_minus(ix: &Index, definite: &[Tag], tags: &[Tag], q: usize) -> bool {
    if definite[q] != Tag::Minus {
        return false;
    }
    let nq = ix.complement[q];
    let supporters_fail = ix.rules_for[q]
        .iter()
        .filter(|&&r| ix.kind(r).supports())
        .all(|&r| body_any(ix, tags, r, Tag::Minus));
    if supporters_fail || definite[nq] == Tag::Plus {
        return true;
    }
    ix.rules_for[nq].iter().any(|&s| {
        body_all(ix, tags, s, Tag::Plus)
            && ix.rules_for[q]
                .iter()
                .filter(|&&t| ix.kind(t).supports())
                .all(|&t| body_any(ix, tags, t, Tag::Minus) || !ix.superior.contains(&(t, s)))
    })
}

/// `+Δ`/`-Δ` per literal; strict cycles stay undecided.
pub fn compute_definite(theory: &DefeasibleTheory) -> BTreeMap<Literal, Tag> {
    let ix = Index::new(theory);
    ix.tag_map(definite_tags(&ix))
}

/// `+δ_ap`/`-δ_ap` per literal. Never undecided.
pub fn compute_ambiguity(theory: &DefeasibleTheory) -> BTreeMap<Literal, Tag> {
    let ix = Index::new(theory);
    ix.tag_map(ambiguity_tags(&ix))
}

/// `+δ`/`-δ` per literal.
pub fn compute_defeasible(theory: &DefeasibleTheory) -> BTreeMap<Literal, Tag> {
    let ix = Index::new(theory);
    let definite = definite_tags(&ix);
    ix.tag_map(defeasible_tags(&ix, &definite))
}

/// All three tag families for every literal of the theory.
pub fn tag_report(theory: &DefeasibleTheory) -> BTreeMap<Literal, TagVector> {
    let ix = Index::new(theory);
    let definite = definite_tags(&ix);
    let defeasible = defeasible_tags(&ix, &definite);
    let ambiguity = ambiguity_tags(&ix);
    ix.literals
        .iter()
        .enumerate()
        .map(|(i, l)| {
            (
                l.clone(),
                TagVector::new(definite[i], defeasible[i], ambiguity[i]),
            )
        })
        .collect()
}

pub const DEFINITE_PLUS: &str = "definite.plus";
pub const DEFINITE_MINUS: &str = "definite.minus";
pub const DEFEASIBLE_PLUS: &str = "defeasible.plus";
pub const DEFEASIBLE_MINUS: &str = "defeasible.minus";
pub const AMBIGUOUS_PLUS: &str = "ambiguous.plus";
pub const AMBIGUOUS_MINUS: &str = "ambiguous.minus";

/// The hexagon of the six proof modalities: each `+x`/`-x` pair is a level,
/// and `+Δ -> +δ -> +δ_ap` are subalternations.
pub fn modality_structure() -> OppositionStructure {
    let level =
        |name: &str, yes: &str, no: &str| Level::new(name, yes, no).expect("built-in level");
    let jid = |s: &str| JudgmentId::new(s).expect("built-in judgment");
    OppositionStructure::new(
        "defeasible-hexagon",
        vec![
            level("definite", DEFINITE_PLUS, DEFINITE_MINUS),
            level("defeasible", DEFEASIBLE_PLUS, DEFEASIBLE_MINUS),
            level("ambiguous", AMBIGUOUS_PLUS, AMBIGUOUS_MINUS),
        ],
        Vec::new(),
        vec![
            RelationEdge::new(
                RelationKind::Subalternation,
                jid(DEFINITE_PLUS),
                jid(DEFEASIBLE_PLUS),
            ),
            RelationEdge::new(
                RelationKind::Subalternation,
                jid(DEFEASIBLE_PLUS),
                jid(AMBIGUOUS_PLUS),
            ),
        ],
    )
    .expect("built-in structure")
}

/// Plus makes the `+x` judgment true, Minus makes `-x` true, Undecided
/// leaves both unknown.
pub fn tags_to_assignment(tags: &TagVector) -> JudgmentAssignment {
    let mut a = JudgmentAssignment::new();
    for (tag, plus, minus) in [
        (tags.definite, DEFINITE_PLUS, DEFINITE_MINUS),
        (tags.defeasible, DEFEASIBLE_PLUS, DEFEASIBLE_MINUS),
        (tags.ambiguity, AMBIGUOUS_PLUS, AMBIGUOUS_MINUS),
    ] {
        let (p, m) = match tag {
            Tag::Plus => (TruthValue::True, TruthValue::False),
            Tag::Minus => (TruthValue::False, TruthValue::True),
            Tag::Undecided => (TruthValue::Unknown, TruthValue::Unknown),
        };
        a.set(JudgmentId::new(plus).expect("built-in"), p);
        a.set(JudgmentId::new(minus).expect("built-in"), m);
    }
    a
}

pub fn check_tags_against_structure(tags: &TagVector) -> Vec<Violation> {
    check_assignment(&modality_structure(), &tags_to_assignment(tags))
        .expect("assignment ranges over hexagon judgments")
}
