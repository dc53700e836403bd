#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use oppositio::defeasible::{Atom, DefeasibleTheory, Literal, Rule, RuleId, RuleKind};
use oppositio::opposition::{JudgmentId, Level, OppositionStructure, RelationEdge, RelationKind};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn corpus_dir() -> PathBuf {
    data_dir().join("corpora").join("intermed")
}

fn random_literal<R: Rng>(rng: &mut R, atoms: usize) -> Literal {
    let atom = Atom::new(format!("a{}", rng.gen_range(0..atoms))).unwrap();
    if rng.gen_bool(0.5) {
        Literal::negative(atom)
    } else {
        Literal::positive(atom)
    }
}

/// Up to 8 atoms, up to 12 rules, and an acyclic superiority relation drawn
/// from a random rule order.
pub fn random_theory<R: Rng>(rng: &mut R) -> DefeasibleTheory {
    let atoms = rng.gen_range(1..=8);
    let facts: Vec<Literal> = (0..rng.gen_range(0..=3))
        .map(|_| random_literal(rng, atoms))
        .collect();
    let n_rules = rng.gen_range(0..=12);
    let rules: Vec<Rule> = (0..n_rules)
        .map(|i| {
            let kind = match rng.gen_range(0..10) {
                0..=2 => RuleKind::Strict,
                3..=7 => RuleKind::Defeasible,
                _ => RuleKind::Defeater,
            };
            let body = (0..rng.gen_range(0..=3))
                .map(|_| random_literal(rng, atoms))
                .collect();
            Rule::new(
                RuleId::new(format!("r{i}")).unwrap(),
                kind,
                body,
                random_literal(rng, atoms),
            )
        })
        .collect();
    let mut order: Vec<usize> = (0..n_rules).collect();
    order.shuffle(rng);
    let mut sup = Vec::new();
    for i in 0..n_rules {
        for j in i + 1..n_rules {
            let (hi, lo) = (&rules[order[i]], &rules[order[j]]);
            let conflicting = hi.head == lo.head.complement();
            if (conflicting && rng.gen_bool(0.6)) || rng.gen_bool(0.03) {
                sup.push((hi.id.clone(), lo.id.clone()));
            }
        }
    }
    DefeasibleTheory::new(facts, rules, sup).expect("generated theory is valid")
}

/// A structure with up to `max_levels` levels, a few free judgments and
/// random edges (self-loops excluded).
pub fn random_structure<R: Rng>(
    rng: &mut R,
    max_levels: usize,
    max_free: usize,
) -> OppositionStructure {
    let n_levels = rng.gen_range(0..=max_levels);
    let mut n_free = rng.gen_range(0..=max_free);
    if n_levels == 0 && n_free == 0 {
        n_free = 1;
    }
    let levels: Vec<Level> = (0..n_levels)
        .map(|i| Level::new(format!("l{i}"), format!("l{i}.yes"), format!("l{i}.no")).unwrap())
        .collect();
    let free: Vec<JudgmentId> = (0..n_free)
        .map(|i| JudgmentId::new(format!("j{i}")).unwrap())
        .collect();
    let all: Vec<JudgmentId> = levels
        .iter()
        .flat_map(|l| [l.positive.clone(), l.negative.clone()])
        .chain(free.iter().cloned())
        .collect();
    let mut edges = Vec::new();
    if all.len() >= 2 {
        for _ in 0..rng.gen_range(0..=all.len() + 2) {
            let kind = *RelationKind::ALL.choose(rng).unwrap();
            let from = all.choose(rng).unwrap().clone();
            let to = all.choose(rng).unwrap().clone();
            if from != to {
                edges.push(RelationEdge::new(kind, from, to));
            }
        }
    }
    let name = format!("gen-s{}", rng.gen_range(0..1000));
    OppositionStructure::new(name, levels, free, edges).expect("generated structure is valid")
}

/// Every total assignment as a bitmask over `structure.judgments()`, first
/// judgment in the most significant bit, filtered by the forbidden pairs.
pub fn brute_force_worlds(structure: &OppositionStructure) -> Vec<u32> {
    let judgments = structure.judgments();
    let n = judgments.len();
    let index = |j: &JudgmentId| judgments.iter().position(|k| k == j).unwrap();
    let bit = |mask: u32, i: usize| mask >> (n - 1 - i) & 1 == 1;
    let edges = structure.edges();
    (0..1u32 << n)
        .filter(|&mask| {
            edges.iter().all(|e| {
                let (x, y) = (bit(mask, index(&e.from)), bit(mask, index(&e.to)));
                match e.kind {
                    RelationKind::Contradiction => x != y,
                    RelationKind::Contrariety => !(x && y),
                    RelationKind::Subcontrariety => x || y,
                    RelationKind::Subalternation => !x || y,
                }
            })
        })
        .collect()
}
