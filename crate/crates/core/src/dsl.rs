//! Text formats for theories (`.dlt`) and opposition structures (`.nop`).
//!
//! Theory grammar:
//!
//! ```text
//! theory  := stmt*
//! stmt    := "fact" literal "."
//!          | ruleid ":" body? arrow literal "."
//!          | "sup" ruleid ">" ruleid "."
//! arrow   := "->" | "=>" | "~>"
//! body    := literal ("," literal)*
//! literal := "~"? atom
//! ```
//!
//! Structure grammar:
//!
//! ```text
//! structure := "structure" name stmt*
//! stmt      := "level" name "{" "yes" ":" judgment "," "no" ":" judgment "}"
//!            | "judgment" judgment
//!            | "relation" kind endpoint ("->" | "<->") endpoint
//! ```
//!
//! Identifiers are `[A-Za-z_][A-Za-z0-9_]*`. Judgment names join identifiers
//! with `.` and structure names join them with `-`, without whitespace. An
//! endpoint is either a judgment name or a `level.yes` / `level.no` path.
//! `#` starts a comment that runs to the end of the line.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::defeasible::{Atom, DefeasibleTheory, Literal, Rule, RuleId, RuleKind};
use crate::opposition::{
    JudgmentId, Level, OppositionError, OppositionStructure, RelationEdge, RelationKind,
    MAX_JUDGMENTS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SourcePosition {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourcePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{position}: expected {expected}, found {found}")]
pub struct ParseError {
    pub position: SourcePosition,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{position}: {message} (at `{token}`)")]
    Semantic {
        position: SourcePosition,
        token: String,
        message: String,
    },
}

impl DslError {
    pub fn position(&self) -> SourcePosition {
        match self {
            DslError::Parse(e) => e.position,
            DslError::Semantic { position, .. } => *position,
        }
    }

    fn semantic(tok: &Token, message: impl Into<String>) -> Self {
        DslError::Semantic {
            position: tok.pos,
            token: tok.text(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Ident(String),
    Dot,
    Comma,
    Colon,
    Tilde,
    Gt,
    LBrace,
    RBrace,
    Hyphen,
    Arrow,
    FatArrow,
    Squiggle,
    BiArrow,
    Eof,
}

impl Kind {
    fn describe(&self) -> String {
        match self {
            Kind::Ident(s) => format!("`{s}`"),
            Kind::Eof => "end of input".to_owned(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &str {
        match self {
            Kind::Ident(s) => s,
            Kind::Dot => ".",
            Kind::Comma => ",",
            Kind::Colon => ":",
            Kind::Tilde => "~",
            Kind::Gt => ">",
            Kind::LBrace => "{",
            Kind::RBrace => "}",
            Kind::Hyphen => "-",
            Kind::Arrow => "->",
            Kind::FatArrow => "=>",
            Kind::Squiggle => "~>",
            Kind::BiArrow => "<->",
            Kind::Eof => "",
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    pos: SourcePosition,
    start: usize,
    end: usize,
}

impl Token {
    fn text(&self) -> String {
        self.kind.symbol().to_owned()
    }

    fn is_ident(&self, word: &str) -> bool {
        matches!(&self.kind, Kind::Ident(s) if s == word)
    }
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = input.char_indices().peekable();
    let (mut line, mut column) = (1usize, 1usize);

    while let Some(&(start, c)) = chars.peek() {
        let pos = SourcePosition { line, column };
        let mut advance = |chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            let (_, c) = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };
        let single = |kind| Some((kind, 1));
        let next_is = |ch: char| input[start + c.len_utf8()..].starts_with(ch);
        let simple = match c {
            ' ' | '\t' | '\r' | '\n' => {
                advance(&mut chars);
                continue;
            }
            '#' => {
                while let Some(&(_, c)) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    advance(&mut chars);
                }
                continue;
            }
            '.' => single(Kind::Dot),
            ',' => single(Kind::Comma),
            ':' => single(Kind::Colon),
            '>' => single(Kind::Gt),
            '{' => single(Kind::LBrace),
            '}' => single(Kind::RBrace),
            '~' if next_is('>') => Some((Kind::Squiggle, 2)),
            '~' => single(Kind::Tilde),
            '-' if next_is('>') => Some((Kind::Arrow, 2)),
            '-' => single(Kind::Hyphen),
            '=' if next_is('>') => Some((Kind::FatArrow, 2)),
            '<' if input[start + 1..].starts_with("->") => Some((Kind::BiArrow, 3)),
            c if c.is_ascii_alphabetic() || c == '_' => None,
            _ => {
                let expected = match c {
                    '=' => "`=>`",
                    '<' => "`<->`",
                    _ => "a token",
                };
                return Err(ParseError {
                    position: pos,
                    expected: expected.to_owned(),
                    found: format!("{c:?}"),
                });
            }
        };
        match simple {
            Some((kind, len)) => {
                for _ in 0..len {
                    advance(&mut chars);
                }
                tokens.push(Token {
                    kind,
                    pos,
                    start,
                    end: start + len,
                });
            }
            None => {
                let mut end = start;
                while let Some(&(i, c)) = chars.peek() {
                    if !(c.is_ascii_alphanumeric() || c == '_') {
                        break;
                    }
                    end = i + 1;
                    advance(&mut chars);
                }
                tokens.push(Token {
                    kind: Kind::Ident(input[start..end].to_owned()),
                    pos,
                    start,
                    end,
                });
            }
        }
    }
    tokens.push(Token {
        kind: Kind::Eof,
        pos: SourcePosition { line, column },
        start: input.len(),
        end: input.len(),
    });
    Ok(tokens)
}

struct Cursor {
    tokens: Vec<Token>,
    at: usize,
}

impl Cursor {
    fn new(input: &str) -> Result<Self, ParseError> {
        Ok(Self {
            tokens: lex(input)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn peek2(&self) -> &Token {
        &self.tokens[(self.at + 1).min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        tok
    }

    fn error(&self, expected: &str) -> ParseError {
        let tok = self.peek();
        ParseError {
            position: tok.pos,
            expected: expected.to_owned(),
            found: tok.kind.describe(),
        }
    }

    fn expect(&mut self, kind: Kind) -> Result<Token, ParseError> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.error(&format!("`{}`", kind.symbol())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Token), ParseError> {
        match &self.peek().kind {
            Kind::Ident(s) => {
                let s = s.clone();
                Ok((s, self.bump()))
            }
            _ => Err(self.error(what)),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<Token, ParseError> {
        if self.peek().is_ident(word) {
            Ok(self.bump())
        } else {
            Err(self.error(&format!("`{word}`")))
        }
    }

    /// `ident (sep ident)*` with no whitespace between the pieces.
    fn joined(&mut self, sep: Kind, what: &str) -> Result<(String, Token), ParseError> {
        let (mut name, first) = self.ident(what)?;
        let mut end = first.end;
        while self.peek().kind == sep && self.peek().start == end {
            let sep_tok = self.bump();
            let next = self.peek();
            if !matches!(next.kind, Kind::Ident(_)) || next.start != sep_tok.end {
                return Err(self.error(&format!("identifier after `{}`", sep.symbol())));
            }
            let (piece, tok) = self.ident(what)?;
            name.push_str(sep.symbol());
            name.push_str(&piece);
            end = tok.end;
        }
        let mut tok = first;
        tok.kind = Kind::Ident(name.clone());
        tok.end = end;
        Ok((name, tok))
    }
}

fn literal(cur: &mut Cursor) -> Result<(Literal, Token), DslError> {
    let negated = if cur.peek().kind == Kind::Tilde {
        cur.bump();
        true
    } else {
        false
    };
    let (name, tok) = cur.ident("an atom")?;
    let atom = Atom::new(name).map_err(|e| DslError::semantic(&tok, e.to_string()))?;
    let lit = if negated {
        Literal::negative(atom)
    } else {
        Literal::positive(atom)
    };
    Ok((lit, tok))
}

fn rule_arrow(kind: &Kind) -> Option<RuleKind> {
    match kind {
        Kind::Arrow => Some(RuleKind::Strict),
        Kind::FatArrow => Some(RuleKind::Defeasible),
        Kind::Squiggle => Some(RuleKind::Defeater),
        _ => None,
    }
}

/// Parses a `.dlt` theory.
pub fn parse_theory(text: &str) -> Result<DefeasibleTheory, DslError> {
    let mut cur = Cursor::new(text)?;
    let mut facts = Vec::new();
    let mut rules: Vec<Rule> = Vec::new();
    let mut rule_tokens: HashMap<RuleId, Token> = HashMap::new();
    let mut sups: Vec<(RuleId, Token, RuleId, Token)> = Vec::new();

    loop {
        let tok = cur.peek().clone();
        match &tok.kind {
            Kind::Eof => break,
            Kind::Ident(word) if word == "fact" && cur.peek2().kind != Kind::Colon => {
                cur.bump();
                let (lit, _) = literal(&mut cur)?;
                cur.expect(Kind::Dot)?;
                facts.push(lit);
            }
            Kind::Ident(word) if word == "sup" && cur.peek2().kind != Kind::Colon => {
                cur.bump();
                let (hi, hi_tok) = cur.ident("a rule id")?;
                cur.expect(Kind::Gt)?;
                let (lo, lo_tok) = cur.ident("a rule id")?;
                cur.expect(Kind::Dot)?;
                sups.push((
                    rule_id(&hi, &hi_tok)?,
                    hi_tok,
                    rule_id(&lo, &lo_tok)?,
                    lo_tok,
                ));
            }
            Kind::Ident(_) => {
                let (id, id_tok) = cur.ident("a rule id")?;
                let id = rule_id(&id, &id_tok)?;
                cur.expect(Kind::Colon)?;
                let mut body = Vec::new();
                if rule_arrow(&cur.peek().kind).is_none() {
                    body.push(literal(&mut cur)?.0);
                    while cur.peek().kind == Kind::Comma {
                        cur.bump();
                        body.push(literal(&mut cur)?.0);
                    }
                }
                let kind = rule_arrow(&cur.peek().kind)
                    .ok_or_else(|| cur.error("`->`, `=>`, `~>` or `,`"))?;
                cur.bump();
                let (head, _) = literal(&mut cur)?;
                cur.expect(Kind::Dot)?;
                if rule_tokens.contains_key(&id) {
                    return Err(DslError::semantic(
                        &id_tok,
                        format!("duplicate rule id `{id}`"),
                    ));
                }
                rule_tokens.insert(id.clone(), id_tok);
                rules.push(Rule::new(id, kind, body, head));
            }
            _ => return Err(cur.error("`fact`, `sup` or a rule id").into()),
        }
    }

    let mut pairs: BTreeSet<(RuleId, RuleId)> = BTreeSet::new();
    for (hi, hi_tok, lo, lo_tok) in sups {
        for (id, tok) in [(&hi, &hi_tok), (&lo, &lo_tok)] {
            if !rule_tokens.contains_key(id) {
                return Err(DslError::semantic(tok, format!("unknown rule id `{id}`")));
            }
        }
        if reaches(&pairs, &lo, &hi) {
            return Err(DslError::semantic(
                &lo_tok,
                format!("superiority `{hi} > {lo}` makes the relation cyclic"),
            ));
        }
        pairs.insert((hi, lo));
    }

    DefeasibleTheory::new(facts, rules, pairs).map_err(|e| DslError::Semantic {
        position: SourcePosition { line: 1, column: 1 },
        token: String::new(),
        message: e.to_string(),
    })
}

fn rule_id(name: &str, tok: &Token) -> Result<RuleId, DslError> {
    RuleId::new(name).map_err(|e| DslError::semantic(tok, e.to_string()))
}

/// Whether `from` reaches `to` through the pairs (reflexively).
fn reaches(pairs: &BTreeSet<(RuleId, RuleId)>, from: &RuleId, to: &RuleId) -> bool {
    let mut stack = vec![from];
    let mut seen = BTreeSet::new();
    while let Some(n) = stack.pop() {
        if n == to {
            return true;
        }
        if seen.insert(n) {
            stack.extend(pairs.iter().filter(|(a, _)| a == n).map(|(_, b)| b));
        }
    }
    false
}

/// Canonical text: facts, then rules by id, then superiority pairs.
pub fn print_theory(theory: &DefeasibleTheory) -> String {
    let mut out = String::new();
    for fact in theory.facts() {
        out.push_str(&format!("fact {fact}.\n"));
    }
    for rule in theory.rules() {
        out.push_str(&format!("{rule}.\n"));
    }
    for (hi, lo) in theory.superiority() {
        out.push_str(&format!("sup {hi} > {lo}.\n"));
    }
    out
}

/// An endpoint name and the token it was read from.
type Endpoint = (String, Token);

/// Parses a `.nop` structure definition.
pub fn parse_structure(text: &str) -> Result<OppositionStructure, DslError> {
    let mut cur = Cursor::new(text)?;
    cur.keyword("structure")?;
    let (name, _) = cur.joined(Kind::Hyphen, "a structure name")?;

    let mut levels: Vec<Level> = Vec::new();
    let mut free: Vec<JudgmentId> = Vec::new();
    let mut declared: BTreeMap<String, Token> = BTreeMap::new();
    let mut relations: Vec<(RelationKind, Endpoint, Endpoint)> = Vec::new();

    let mut declare = |name: &str, tok: &Token| -> Result<JudgmentId, DslError> {
        if declared.contains_key(name) {
            return Err(DslError::semantic(
                tok,
                format!("duplicate judgment `{name}`"),
            ));
        }
        declared.insert(name.to_owned(), tok.clone());
        JudgmentId::new(name).map_err(|e| DslError::semantic(tok, e.to_string()))
    };

    loop {
        let tok = cur.peek().clone();
        match &tok.kind {
            Kind::Eof => break,
            Kind::Ident(w) if w == "level" => {
                cur.bump();
                let (lname, ltok) = cur.ident("a level name")?;
                cur.expect(Kind::LBrace)?;
                cur.keyword("yes")?;
                cur.expect(Kind::Colon)?;
                let (yes, yes_tok) = cur.joined(Kind::Dot, "a judgment name")?;
                cur.expect(Kind::Comma)?;
                cur.keyword("no")?;
                cur.expect(Kind::Colon)?;
                let (no, no_tok) = cur.joined(Kind::Dot, "a judgment name")?;
                cur.expect(Kind::RBrace)?;
                if levels.iter().any(|l| l.name == lname) {
                    return Err(DslError::semantic(
                        &ltok,
                        format!("duplicate level `{lname}`"),
                    ));
                }
                let positive = declare(&yes, &yes_tok)?;
                let negative = declare(&no, &no_tok)?;
                levels.push(Level {
                    name: lname,
                    positive,
                    negative,
                });
            }
            Kind::Ident(w) if w == "judgment" => {
                cur.bump();
                let (j, jtok) = cur.joined(Kind::Dot, "a judgment name")?;
                free.push(declare(&j, &jtok)?);
            }
            Kind::Ident(w) if w == "relation" => {
                cur.bump();
                let (kw, ktok) = cur.ident("a relation kind")?;
                let kind = RelationKind::from_keyword(&kw).ok_or_else(|| ParseError {
                    position: ktok.pos,
                    expected:
                        "`subalternation`, `contrariety`, `subcontrariety` or `contradiction`"
                            .to_owned(),
                    found: format!("`{kw}`"),
                })?;
                let from = cur.joined(Kind::Dot, "an endpoint")?;
                let arrow = cur.peek().clone();
                match (&arrow.kind, kind.is_directed()) {
                    (Kind::Arrow, true) | (Kind::BiArrow, false) => {
                        cur.bump();
                    }
                    (Kind::BiArrow, true) => {
                        return Err(DslError::semantic(
                            &arrow,
                            "subalternation is directed, use `->`",
                        ))
                    }
                    (Kind::Arrow, false) => {
                        return Err(DslError::semantic(
                            &arrow,
                            format!("{kind} is symmetric, use `<->`"),
                        ))
                    }
                    _ => return Err(cur.error("`->` or `<->`").into()),
                }
                let to = cur.joined(Kind::Dot, "an endpoint")?;
                relations.push((kind, from, to));
            }
            _ => return Err(cur.error("`level`, `judgment` or `relation`").into()),
        }
    }

    let eof = cur.peek().clone();
    if declared.is_empty() {
        return Err(DslError::semantic(&eof, "structure declares no judgment"));
    }
    if declared.len() > MAX_JUDGMENTS {
        let (_, tok) = declared.iter().nth(MAX_JUDGMENTS).expect("over capacity");
        return Err(DslError::semantic(
            tok,
            format!(
                "structure declares {} judgments, the limit is {MAX_JUDGMENTS}",
                declared.len()
            ),
        ));
    }

    let resolve = |(name, tok): &(String, Token)| -> Result<JudgmentId, DslError> {
        let by_path = name.rsplit_once('.').and_then(|(lv, side)| {
            let level = levels.iter().find(|l| l.name == lv)?;
            match side {
                "yes" => Some(level.positive.clone()),
                "no" => Some(level.negative.clone()),
                _ => None,
            }
        });
        let by_name = declared
            .contains_key(name)
            .then(|| JudgmentId::new(name.as_str()).expect("declared names are valid"));
        match (by_path, by_name) {
            (Some(a), Some(b)) if a != b => Err(DslError::semantic(
                tok,
                format!("endpoint `{name}` names both judgment `{b}` and level side `{a}`"),
            )),
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => Err(DslError::semantic(
                tok,
                format!("unknown endpoint `{name}`"),
            )),
        }
    };
    let mut edges = Vec::new();
    for (kind, from, to) in &relations {
        let edge = RelationEdge::new(*kind, resolve(from)?, resolve(to)?);
        if edge.from == edge.to {
            return Err(DslError::semantic(
                &from.1,
                "relation links a judgment to itself",
            ));
        }
        edges.push(edge);
    }

    OppositionStructure::new(name, levels, free, edges).map_err(|e: OppositionError| {
        DslError::Semantic {
            position: SourcePosition { line: 1, column: 1 },
            token: String::new(),
            message: e.to_string(),
        }
    })
}

/// Canonical text: header, levels, free judgments, then declared relations.
pub fn print_structure(structure: &OppositionStructure) -> String {
    let mut out = format!("structure {}\n", structure.name());
    for level in structure.levels() {
        out.push_str(&format!(
            "level {} {{ yes: {}, no: {} }}\n",
            level.name, level.positive, level.negative
        ));
    }
    for j in structure.free_judgments() {
        out.push_str(&format!("judgment {j}\n"));
    }
    for edge in structure.declared_edges() {
        out.push_str(&format!("relation {edge}\n"));
    }
    out
}
