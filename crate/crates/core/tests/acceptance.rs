//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use oppositio::analysis::{expected_genre, JustificationGenre};
use oppositio::defeasible::{
    compute_ambiguity, compute_defeasible, compute_definite, modality_structure, tag_report,
    tags_to_assignment, DefeasibleTheory, Tag,
};
use oppositio::dsl::{parse_structure, parse_theory, print_structure, print_theory};
use oppositio::opposition::{
    admissible_worlds, check_assignment, intermed, verify_structure, EdgeStatus,
    JudgmentAssignment, RelationKind, TruthValue,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SQUARE_LIMIT: Duration = Duration::from_secs(1);
const HEXAGON_LIMIT: Duration = Duration::from_secs(30);
const CORPUS_LIMIT: Duration = Duration::from_secs(5);
const PARSE_HANG_LIMIT: Duration = Duration::from_secs(1);

const RANDOM_THEORIES: usize = 1000;
const ROUND_TRIP_THEORIES: usize = 1000;
const ROUND_TRIP_STRUCTURES: usize = 500;
const FUZZ_FILES: usize = 10_000;
const SEED: u64 = 0x5eed_0f0b;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_oppositio"))
}

fn data(rel: &str) -> String {
    common::data_dir().join(rel).to_string_lossy().into_owned()
}

fn random_theories() -> Vec<DefeasibleTheory> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..RANDOM_THEORIES)
        .map(|_| common::random_theory(&mut rng))
        .collect()
}

fn square() -> Outcome {
    let start = Instant::now();
    let out = bin()
        .args([
            "structure",
            "check",
            &data("structures/classical-square.nop"),
        ])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    let structure = parse_structure(
        &std::fs::read_to_string(data("structures/classical-square.nop"))
            .map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let report = verify_structure(&structure);
    let elapsed = start.elapsed();

    let confirmed_lines = text.lines().filter(|l| l.ends_with(": confirmed")).count();
    let all_confirmed = report.edges.len() == 6
        && report
            .edges
            .iter()
            .all(|e| e.status == EdgeStatus::Confirmed);
    if out.status.code() != Some(0)
        || !text.contains("worlds: 3\n")
        || confirmed_lines != 6
        || report.worlds != 3
        || !all_confirmed
    {
        return Err(format!("unexpected check output:\n{text}"));
    }
    if elapsed >= SQUARE_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("3 worlds, 6/6 edges confirmed in {elapsed:?}"))
}

fn hexagon(theories: &[DefeasibleTheory]) -> Outcome {
    let start = Instant::now();
    let worlds = admissible_worlds(&modality_structure()).map_err(|e| e.to_string())?;
    if worlds.len() != 4 {
        return Err(format!("hexagon has {} worlds", worlds.len()));
    }
    let mut literals = 0;
    let mut violations = Vec::new();
    for (i, theory) in theories.iter().enumerate() {
        for (lit, tags) in tag_report(theory) {
            literals += 1;
            if !tags.satisfies_chain() || !worlds.extends(&tags_to_assignment(&tags)) {
                violations.push(format!("theory {i}, {lit}: {tags}"));
            }
        }
    }
    let elapsed = start.elapsed();
    if !violations.is_empty() {
        return Err(format!(
            "{} violations, first: {}",
            violations.len(),
            violations[0]
        ));
    }
    if elapsed >= HEXAGON_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "4 worlds; {} theories, {literals} literals, 0 violations in {elapsed:?}",
        theories.len()
    ))
}

fn penguin() -> Outcome {
    let text = std::fs::read_to_string(data("theories/penguin.dlt")).map_err(|e| e.to_string())?;
    let theory = parse_theory(&text).map_err(|e| e.to_string())?;
    let oracle = common::oracle::naive_tags(&theory);
    let ours: BTreeMap<String, String> = tag_report(&theory)
        .into_iter()
        .map(|(l, t)| (l.to_string(), t.to_string()))
        .collect();
    let expected = [
        ("flies", "-Δ -δ +δ_ap", ('-', '-', '+')),
        ("~flies", "-Δ +δ +δ_ap", ('-', '+', '+')),
        ("bird", "+Δ +δ +δ_ap", ('+', '+', '+')),
    ];
    for (lit, row, signs) in expected {
        if ours.get(lit).map(String::as_str) != Some(row) {
            return Err(format!("{lit}: got {:?}, want {row}", ours.get(lit)));
        }
        if oracle.get(lit) != Some(&signs) {
            return Err(format!("{lit}: oracle gives {:?}", oracle.get(lit)));
        }
    }
    Ok("flies, ~flies, bird match expected rows and the naive oracle".into())
}

fn oracle_equivalence(theories: &[DefeasibleTheory]) -> Outcome {
    let mut literals = 0;
    for (i, theory) in theories.iter().enumerate() {
        let oracle = common::oracle::naive_tags(theory);
        let definite = compute_definite(theory);
        let defeasible = compute_defeasible(theory);
        let ambiguity = compute_ambiguity(theory);
        let keys: BTreeSet<String> = definite.keys().map(|l| l.to_string()).collect();
        if keys != oracle.keys().cloned().collect::<BTreeSet<_>>() {
            return Err(format!("theory {i}: literal sets differ"));
        }
        for (lit, tag) in &definite {
            literals += 1;
            let want = oracle[&lit.to_string()];
            let got = (tag.sign(), defeasible[lit].sign(), ambiguity[lit].sign());
            if got != want {
                return Err(format!(
                    "theory {i}, {lit}: got {got:?}, oracle {want:?}\n{}",
                    print_theory(theory)
                ));
            }
        }
    }
    let undecided = theories
        .iter()
        .flat_map(tag_report)
        .filter(|(_, t)| t.definite == Tag::Undecided || t.defeasible == Tag::Undecided)
        .count();
    Ok(format!(
        "{} theories, {literals} literals agree on all three families ({undecided} with undecided tags)",
        theories.len()
    ))
}

fn level_total(p: bool, u: bool, i: bool) -> JudgmentAssignment {
    let mut a = JudgmentAssignment::new();
    for (level, v) in [("proved", p), ("unclear", u), ("incorrect", i)] {
        a = a
            .with(&format!("{level}.yes"), v)
            .with(&format!("{level}.no"), !v);
    }
    a
}

fn intermed_structure() -> Outcome {
    let s = intermed();
    let worlds = admissible_worlds(&s).map_err(|e| e.to_string())?;
    let mut admissible = 0;
    for mask in 0..8u8 {
        let a = level_total(mask & 4 != 0, mask & 2 != 0, mask & 1 != 0);
        let clean = check_assignment(&s, &a)
            .map_err(|e| e.to_string())?
            .is_empty();
        if clean != worlds.extends(&a) {
            return Err(format!(
                "checker and worlds disagree on {}",
                a.signed_listing()
            ));
        }
        admissible += usize::from(clean);
    }
    if admissible != 5 {
        return Err(format!("{admissible} of 8 admissible"));
    }
    let belief = level_total(false, true, false);
    if !check_assignment(&s, &belief)
        .map_err(|e| e.to_string())?
        .is_empty()
    {
        return Err("(F,T,F) rejected".into());
    }
    let clash = level_total(true, true, false);
    let v = check_assignment(&s, &clash).map_err(|e| e.to_string())?;
    let flagged = v.len() == 1
        && v[0].edge.kind == RelationKind::Subalternation
        && v[0].edge.from.as_str() == "proved.yes"
        && v[0].edge.to.as_str() == "unclear.no";
    if !flagged {
        return Err(format!("(T,T,F) violations: {v:?}"));
    }
    Ok("5/8 admissible; (F,T,F) admissible; (T,T,F) violates proved.yes -> unclear.no".into())
}

fn genre_table() -> Outcome {
    use JustificationGenre::*;
    let s = intermed();
    let rows = [
        ((true, false, false), Explanation),
        ((false, false, true), NegativeReason),
        ((true, true, false), ContradictionNewDirection),
        ((true, false, true), ContradictionNewDirection),
        ((false, true, false), BeliefConviction),
        ((false, false, false), Unspecified),
        ((false, true, true), Unspecified),
        ((true, true, true), Unspecified),
    ];
    for ((p, u, i), want) in rows {
        let got = expected_genre(&s, &level_total(p, u, i)).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("({p},{u},{i}) -> {got:?}, want {want:?}"));
        }
    }
    let mut partial = JudgmentAssignment::new();
    partial.set(
        oppositio::opposition::JudgmentId::new("proved.yes").unwrap(),
        TruthValue::True,
    );
    if expected_genre(&s, &partial).is_ok() {
        return Err("partial assignment accepted".into());
    }
    Ok("5 specified rows exact, 3 remaining rows Unspecified".into())
}

fn corpus() -> Outcome {
    let dir = data("corpora/intermed");
    let start = Instant::now();
    let validate = bin()
        .args(["debate", "validate", &dir])
        .output()
        .map_err(|e| e.to_string())?;
    let report = bin()
        .args(["debate", "report", &dir])
        .output()
        .map_err(|e| e.to_string())?;
    let summary = bin()
        .args(["debate", "summary", &dir])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    let text = String::from_utf8_lossy(&validate.stdout);
    let records = text
        .lines()
        .filter(|l| l.starts_with('s') && l.contains(": well-formed="))
        .count();
    let well_formed = text
        .lines()
        .filter(|l| l.contains(": well-formed=yes"))
        .count();
    if validate.status.code() != Some(1) || records != 58 || well_formed != 41 {
        return Err(format!(
            "validate exit {:?}, {records} records, {well_formed} well-formed",
            validate.status.code()
        ));
    }
    let s1 = text.lines().filter(|l| l.starts_with("s1-")).count();
    let s2 = text.lines().filter(|l| l.starts_with("s2-")).count();
    if (s1, s2) != (39, 19) {
        return Err(format!("sessions {s1} + {s2}"));
    }
    for (out, golden) in [
        (&report, "golden/intermed-report.txt"),
        (&summary, "golden/intermed-summary.txt"),
    ] {
        let want = std::fs::read(data(golden)).map_err(|e| e.to_string())?;
        if out.status.code() != Some(0) || out.stdout != want {
            return Err(format!("{golden} differs"));
        }
    }
    if elapsed >= CORPUS_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "validate exit 1, 58 records (39+19), 41 well-formed; goldens match in {elapsed:?}"
    ))
}

const NOISE: &[&str] = &[
    "->",
    "=>",
    "~>",
    "<->",
    "~",
    ".",
    ",",
    ":",
    ">",
    "{",
    "}",
    "-",
    "#",
    "\n",
    " ",
    "fact",
    "sup",
    "structure",
    "level",
    "judgment",
    "relation",
    "yes",
    "no",
    "contradiction",
    "subalternation",
    "r1",
    "x",
    "é",
    "\0",
    "\r",
    "9",
];

fn mutate(text: &str, rng: &mut ChaCha8Rng) -> String {
    let mut chars: Vec<char> = text.chars().collect();
    for _ in 0..rng.gen_range(1..=4) {
        let at = rng.gen_range(0..=chars.len());
        match rng.gen_range(0..5) {
            0 if !chars.is_empty() => {
                let end = (at + rng.gen_range(1..8)).min(chars.len());
                chars.drain(at.min(end)..end);
            }
            1 => {
                let tok = NOISE.choose(rng).unwrap();
                chars.splice(at..at, tok.chars());
            }
            2 if at < chars.len() => {
                chars[at] = NOISE.choose(rng).unwrap().chars().next().unwrap();
            }
            3 => chars.truncate(at),
            _ => {
                let mut lines: Vec<String> = chars
                    .iter()
                    .collect::<String>()
                    .lines()
                    .map(str::to_owned)
                    .collect();
                if lines.len() > 1 {
                    let i = rng.gen_range(0..lines.len());
                    let j = rng.gen_range(0..lines.len());
                    lines.swap(i, j);
                    let dup = lines[i].clone();
                    lines.insert(j, dup);
                }
                chars = (lines.join("\n") + "\n").chars().collect();
            }
        }
    }
    chars.into_iter().collect()
}

fn parser_robustness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut theory_texts = Vec::new();
    for i in 0..ROUND_TRIP_THEORIES {
        let t = common::random_theory(&mut rng);
        let text = print_theory(&t);
        match parse_theory(&text) {
            Ok(back) if back == t => theory_texts.push(text),
            other => return Err(format!("theory {i} round trip: {other:?}\n{text}")),
        }
    }
    let mut structure_texts = Vec::new();
    for i in 0..ROUND_TRIP_STRUCTURES {
        let s = common::random_structure(&mut rng, 4, 6);
        let text = print_structure(&s);
        match parse_structure(&text) {
            Ok(back) if back == s => structure_texts.push(text),
            other => return Err(format!("structure {i} round trip: {other:?}\n{text}")),
        }
    }

    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut rejected = 0;
    let mut crash = None;
    let mut slowest = Duration::ZERO;
    for i in 0..FUZZ_FILES {
        let (seed_text, is_theory) = if i % 2 == 0 {
            (theory_texts.choose(&mut rng).unwrap(), true)
        } else {
            (structure_texts.choose(&mut rng).unwrap(), false)
        };
        let text = mutate(seed_text, &mut rng);
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(|| {
            if is_theory {
                parse_theory(&text).map(|_| ()).map_err(|e| e.position())
            } else {
                parse_structure(&text).map(|_| ()).map_err(|e| e.position())
            }
        }));
        slowest = slowest.max(start.elapsed());
        match result {
            Ok(Ok(())) => {}
            Ok(Err(_)) => rejected += 1,
            Err(_) => {
                crash = Some(text);
                break;
            }
        }
    }
    panic::set_hook(hook);
    if let Some(text) = crash {
        return Err(format!("parser panicked on:\n{text:?}"));
    }
    if slowest >= PARSE_HANG_LIMIT {
        return Err(format!("slowest parse took {slowest:?}"));
    }
    Ok(format!(
        "{ROUND_TRIP_THEORIES} theories and {ROUND_TRIP_STRUCTURES} structures round-trip; \
         {FUZZ_FILES} mutated files, {rejected} rejected with errors, 0 crashes, slowest {slowest:?}"
    ))
}

fn main() {
    let theories = random_theories();
    let criteria: Vec<Criterion> = vec![
        ("classical square", Box::new(square)),
        ("modality hexagon", Box::new(|| hexagon(&theories))),
        ("penguin tags", Box::new(penguin)),
        (
            "oracle equivalence",
            Box::new(|| oracle_equivalence(&theories)),
        ),
        ("intermed structure", Box::new(intermed_structure)),
        ("genre table", Box::new(genre_table)),
        ("synthetic corpus", Box::new(corpus)),
        ("parser robustness", Box::new(parser_robustness)),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail}", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
