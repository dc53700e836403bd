//! Writes the bundled synthetic Intermed corpus.
//!
//! ```text
//! cargo run --example generate_intermed_corpus -- data/corpora/intermed
//! ```
//!
//! The corpus has 58 arguments over five documents: 39 in session 1 and 19
//! in session 2, of which 41 judge all three levels. Alongside the corpus the
//! generator writes `expected.json`, counted directly from the generation
//! plan, so analysis results can be checked against it.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use oppositio::dsl::print_structure;
use oppositio::opposition::intermed;
use serde_json::{json, Value};

struct Doc {
    id: &'static str,
    title: &'static str,
    category: &'static str,
    sentences: &'static [&'static str],
}

const DOCS: &[Doc] = &[
    Doc {
        id: "q1",
        title: "Innovation or buzzword?",
        category: "scientific",
        sentences: &[
            "Nanotechnologies gather techniques that manipulate matter at the scale of a few nanometres.",
            "Many products sold as nano are ordinary chemistry with a new label.",
            "Some properties of matter only appear below one hundred nanometres.",
            "Public funding programmes have encouraged laboratories to rename their existing work.",
            "Carbon nanotubes were not available to engineers thirty years ago.",
        ],
    },
    Doc {
        id: "q2",
        title: "A chance for developing countries?",
        category: "economic",
        sentences: &[
            "Patents on nanomaterials are held mostly by companies in a handful of rich countries.",
            "Cheap nanofilters could give villages access to clean drinking water.",
            "Building a clean room costs more than the research budget of many universities.",
            "Developing countries may export raw materials and import the finished products.",
            "Open research networks already train students from the south in nanosciences.",
        ],
    },
    Doc {
        id: "q3",
        title: "Sacrilege or progress?",
        category: "ethical",
        sentences: &[
            "Repairing damaged tissue with nanomachines continues the tradition of medicine.",
            "Enhancing healthy people changes what we mean by human nature.",
            "Every generation has feared the technologies of the next one.",
            "A society of enhanced and non-enhanced citizens would not be a society of equals.",
            "Nobody can define human nature precisely enough to forbid altering it.",
        ],
    },
    Doc {
        id: "q4",
        title: "Unknown risks and a responsible attitude",
        category: "scientific",
        sentences: &[
            "Some nanoparticles cross biological barriers that stop larger particles.",
            "Toxicology studies lag years behind the products already on the market.",
            "Stopping research would also stop the research that measures the risks.",
            "Workers in production plants are the first people exposed to nanoparticles.",
            "Insurers already refuse to cover some nanotechnology risks.",
        ],
    },
    Doc {
        id: "q5",
        title: "Does the lack of proof justify a moratorium?",
        category: "ethical",
        sentences: &[
            "The absence of proof of harm is not a proof of absence of harm.",
            "A moratorium without a deadline would become a permanent ban.",
            "The precautionary principle asks for proportionate measures, not for a halt.",
            "Asbestos was declared harmless for decades before it was banned.",
            "Citizens were never consulted before nanoproducts reached the shelves.",
        ],
    },
];

const PARTICIPANTS: &[(&str, &str)] = &[
    ("st01", "Amel"),
    ("st02", "Bastien"),
    ("st03", "Chloe"),
    ("st04", "Damien"),
    ("st05", "Elsa"),
    ("st06", "Farid"),
    ("st07", "Gaelle"),
    ("st08", "Hugo"),
    ("st09", "Ines"),
    ("st10", "Jules"),
    ("st11", "Karima"),
    ("st12", "Louis"),
];

type Pattern = [Option<bool>; 3];

const fn p(proved: Option<bool>, unclear: Option<bool>, incorrect: Option<bool>) -> Pattern {
    [proved, unclear, incorrect]
}

const Y: Option<bool> = Some(true);
const N: Option<bool> = Some(false);
const X: Option<bool> = None;

/// (pattern, how many arguments carry it)
const PLAN: &[(Pattern, usize)] = &[
    // one answer per level
    (p(Y, N, N), 12),
    (p(N, N, Y), 9),
    (p(N, Y, N), 8),
    (p(Y, Y, N), 4),
    (p(Y, N, Y), 3),
    (p(N, N, N), 3),
    (p(N, Y, Y), 2),
    // at least one level left unanswered
    (p(Y, X, X), 3),
    (p(N, X, X), 2),
    (p(Y, N, X), 2),
    (p(Y, Y, X), 1),
    (p(N, Y, X), 2),
    (p(X, X, Y), 2),
    (p(X, X, N), 1),
    (p(X, Y, N), 1),
    (p(X, N, Y), 2),
    (p(X, Y, X), 1),
];

const SESSION_ONE: usize = 39;
const LEVELS: [&str; 3] = ["proved", "unclear", "incorrect"];

fn rephrase(sentence: &str, i: usize) -> String {
    let core = sentence.trim_end_matches('.');
    let mut lowered = core.to_owned();
    if let Some(first) = lowered.get(0..1) {
        let first = first.to_lowercase();
        lowered.replace_range(0..1, &first);
    }
    match i % 4 {
        0 => format!("The text claims that {lowered}."),
        1 => format!("In other words, {lowered}."),
        2 => format!("{core}, according to the author."),
        _ => format!("The statement is that {lowered}."),
    }
}

fn justification(pattern: Pattern, i: usize) -> String {
    let pick = |options: &[&str]| options[i % options.len()].to_owned();
    match pattern {
        [Y, N, N] => pick(&[
            "This is shown by the measurements reported in the appendix, which explain why the effect appears.",
            "It is established because the same result was obtained by independent laboratories.",
            "The statement follows from how matter behaves at that scale, as the document explains.",
        ]),
        [N, N, Y] => pick(&[
            "This is wrong because it ignores the products that already exist.",
            "No: the figures quoted elsewhere in the text contradict it.",
            "It is false, since the argument confuses cost with price.",
        ]),
        [Y, Y, N] | [Y, N, Y] => pick(&[
            "The fact is proved, yet it conflicts with the conclusion drawn from it; we should look at who benefits instead.",
            "Proved in the laboratory but not in real conditions, so the question should move to field studies.",
            "It is true and still misleading; the debate should rather focus on regulation.",
        ]),
        [N, Y, N] => pick(&[
            "I believe that this is the real issue, even if nobody can prove it today.",
            "My conviction is that precaution matters more than speed here.",
            "I am convinced this will happen, whatever the studies say.",
        ]),
        _ => pick(&[
            "The document does not give enough elements to decide.",
            "I need to read the other texts before I answer on every criterion.",
            "Hard to judge; the sentence mixes several claims.",
        ]),
    }
}

fn main() {
    let out: PathBuf = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data/corpora/intermed"));
    write_corpus(&out);
}

fn write_corpus(out: &Path) {
    let docs_dir = out.join("documents");
    fs::create_dir_all(&docs_dir).expect("create corpus directory");

    let mut bodies = Vec::new();
    for doc in DOCS {
        let body = doc.sentences.join(" ") + "\n";
        fs::write(docs_dir.join(format!("{}.txt", doc.id)), &body).expect("write document");
        bodies.push(body);
    }

    let patterns: Vec<Pattern> = PLAN
        .iter()
        .flat_map(|&(pat, n)| std::iter::repeat_n(pat, n))
        .collect();
    let total = patterns.len();
    assert_eq!(total, 58);
    // Spread patterns over the corpus; 23 is coprime with 58.
    let order: Vec<Pattern> = (0..total).map(|i| patterns[(i * 23) % total]).collect();

    let mut lines = Vec::new();
    let mut relations = Vec::new();
    let mut last_root: BTreeMap<(u32, usize), String> = BTreeMap::new();
    let mut repartition: BTreeMap<String, usize> = LEVELS
        .iter()
        .flat_map(|l| [format!("{l}.yes"), format!("{l}.no")])
        .map(|j| (j, 0))
        .collect();
    let mut sessions: BTreeMap<String, usize> = BTreeMap::new();
    let mut well_formed = 0;
    let mut with_violations = 0;

    for (i, pattern) in order.iter().copied().enumerate() {
        let (session, n) = if i < SESSION_ONE {
            (1u32, i + 1)
        } else {
            (2u32, i + 1 - SESSION_ONE)
        };
        let id = format!("s{session}-{n:02}");
        let d = i % DOCS.len();
        let doc = &DOCS[d];
        let sentence = doc.sentences[(i / DOCS.len() + d) % doc.sentences.len()];
        let start = bodies[d].find(sentence).expect("sentence in body");
        let end = start + sentence.len();

        let parent = if i % 3 == 2 {
            last_root.get(&(session, d)).cloned()
        } else {
            None
        };
        if parent.is_none() {
            last_root.insert((session, d), id.clone());
        }
        if let Some(parent) = &parent {
            let kind = if i % 2 == 0 {
                "contradicts"
            } else {
                "confirms"
            };
            relations.push(json!({ "from": id, "to": parent, "kind": kind }));
        }

        let mut judgments = serde_json::Map::new();
        for (level, value) in LEVELS.iter().zip(pattern) {
            if let Some(v) = value {
                judgments.insert(format!("{level}.yes"), Value::Bool(v));
                let side = if v { "yes" } else { "no" };
                *repartition
                    .get_mut(&format!("{level}.{side}"))
                    .expect("judgment") += 1;
            }
        }
        if pattern.iter().all(Option::is_some) {
            well_formed += 1;
        }
        // proved.yes forbids both unclear.yes and incorrect.yes
        if pattern[0] == Y && (pattern[1] == Y || pattern[2] == Y) {
            with_violations += 1;
        }
        *sessions.entry(session.to_string()).or_insert(0) += 1;

        let mut record = json!({
            "id": id,
            "author": PARTICIPANTS[(i * 7) % PARTICIPANTS.len()].0,
            "document": doc.id,
            "selection_start": start,
            "selection_end": end,
            "quoted_text": sentence,
            "rephrase": rephrase(sentence, i),
            "judgments": judgments,
            "justification": justification(pattern, i),
            "session": session,
        });
        if let Some(parent) = parent {
            record["parent"] = Value::String(parent);
        }
        lines.push(serde_json::to_string(&record).expect("serialize"));
    }

    let participants: Vec<Value> = PARTICIPANTS
        .iter()
        .map(|(id, name)| json!({ "id": id, "display_name": name }))
        .collect();
    let manifest = json!({
        "subject": "Should we write a moratorium on nanosciences and nanotechnologies?",
        "problem": "Decide whether research and production should be suspended until their risks are known, and summarize the argumentation.",
        "participants": participants,
        "groups": [
            { "id": "g-moratorium", "name": "For a moratorium", "members": ["st01", "st04", "st07", "st10"] },
            { "id": "g-research", "name": "For controlled research", "members": ["st02", "st05", "st08", "st11"] },
        ],
        "documents": DOCS.iter().map(|d| json!({
            "id": d.id,
            "title": d.title,
            "category": d.category,
            "filename": format!("{}.txt", d.id),
        })).collect::<Vec<_>>(),
    });

    let pretty = |v: &Value| serde_json::to_string_pretty(v).expect("serialize") + "\n";
    fs::write(out.join("debate.json"), pretty(&manifest)).expect("write manifest");
    fs::write(out.join("structure.nop"), print_structure(&intermed())).expect("write structure");
    fs::write(out.join("arguments.jsonl"), lines.join("\n") + "\n").expect("write arguments");
    let relations: Vec<String> = relations
        .iter()
        .map(|r| serde_json::to_string(r).expect("serialize"))
        .collect();
    fs::write(out.join("relations.jsonl"), relations.join("\n") + "\n").expect("write relations");

    let expected = json!({
        "arguments": total,
        "sessions": sessions,
        "well_formed": well_formed,
        "with_violations": with_violations,
        "repartition": repartition,
    });
    fs::write(out.join("expected.json"), pretty(&expected)).expect("write expected counts");
}
