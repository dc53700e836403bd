//! Slow, string-keyed re-derivation of the three tag families by repeated
//! whole-state rounds: each round computes every literal's tags from the
//! previous round only.

use std::collections::{BTreeMap, BTreeSet};

use oppositio::defeasible::{DefeasibleTheory, RuleKind};

#[derive(Clone)]
struct R {
    id: String,
    supportive: bool,
    strict: bool,
    body: Vec<String>,
    head: String,
}

fn heads<'a>(rules: &'a [R], q: &'a str) -> impl Iterator<Item = &'a R> + 'a {
    rules.iter().filter(move |r| r.head == q)
}

fn neg(l: &str) -> String {
    match l.strip_prefix('~') {
        Some(a) => a.to_owned(),
        None => format!("~{l}"),
    }
}

/// `(definite, defeasible, ambiguity)` signs per literal, `?` for undecided.
pub fn naive_tags(theory: &DefeasibleTheory) -> BTreeMap<String, (char, char, char)> {
    let facts: BTreeSet<String> = theory.facts().iter().map(|l| l.to_string()).collect();
    let rules: Vec<R> = theory
        .rules()
        .iter()
        .map(|r| R {
            id: r.id.to_string(),
            supportive: r.kind != RuleKind::Defeater,
            strict: r.kind == RuleKind::Strict,
            body: r.body.iter().map(|l| l.to_string()).collect(),
            head: r.head.to_string(),
        })
        .collect();
    let sup: BTreeSet<(String, String)> = theory
        .superiority()
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();

    let mut lits: BTreeSet<String> = facts.clone();
    for r in &rules {
        lits.extend(r.body.iter().cloned());
        lits.insert(r.head.clone());
    }
    let lits: BTreeSet<String> = lits.iter().flat_map(|l| [l.clone(), neg(l)]).collect();

    let all_in = |body: &[String], set: &BTreeSet<String>| body.iter().all(|b| set.contains(b));
    let any_in = |body: &[String], set: &BTreeSet<String>| body.iter().any(|b| set.contains(b));

    // definite
    let mut pd = BTreeSet::new();
    let mut md = BTreeSet::new();
    loop {
        let mut npd = BTreeSet::new();
        let mut nmd = BTreeSet::new();
        for q in &lits {
            if facts.contains(q) || heads(&rules, q).any(|r| r.strict && all_in(&r.body, &pd)) {
                npd.insert(q.clone());
            }
            if !facts.contains(q)
                && heads(&rules, q)
                    .filter(|r| r.strict)
                    .all(|r| any_in(&r.body, &md))
            {
                nmd.insert(q.clone());
            }
        }
        if npd == pd && nmd == md {
            break;
        }
        pd = npd;
        md = nmd;
    }

    // ambiguity: support closure
    let mut pap = BTreeSet::new();
    loop {
        let mut next = BTreeSet::new();
        for q in &lits {
            if facts.contains(q) || heads(&rules, q).any(|r| r.supportive && all_in(&r.body, &pap))
            {
                next.insert(q.clone());
            }
        }
        if next == pap {
            break;
        }
        pap = next;
    }

    // defeasible
    let mut pdd: BTreeSet<String> = BTreeSet::new();
    let mut mdd: BTreeSet<String> = BTreeSet::new();
    loop {
        let mut npdd = BTreeSet::new();
        let mut nmdd = BTreeSet::new();
        for q in &lits {
            let nq = neg(q);
            let supported = heads(&rules, q).any(|r| r.supportive && all_in(&r.body, &pdd));
            let attacks_answered = heads(&rules, &nq).all(|s| {
                any_in(&s.body, &mdd)
                    || heads(&rules, q).any(|t| {
                        t.supportive
                            && all_in(&t.body, &pdd)
                            && sup.contains(&(t.id.clone(), s.id.clone()))
                    })
            });
            if pd.contains(q) || (md.contains(&nq) && supported && attacks_answered) {
                npdd.insert(q.clone());
            }

            let every_support_fails = heads(&rules, q).filter(|r| r.supportive).all(|r| {
                any_in(&r.body, &mdd)
                    || pd.contains(&nq)
                    || heads(&rules, &nq).any(|s| {
                        all_in(&s.body, &pdd)
                            && heads(&rules, q).filter(|t| t.supportive).all(|t| {
                                !sup.contains(&(t.id.clone(), s.id.clone()))
                                    || any_in(&t.body, &mdd)
                            })
                    })
            });
            if md.contains(q) && every_support_fails {
                nmdd.insert(q.clone());
            }
        }
        if npdd == pdd && nmdd == mdd {
            break;
        }
        pdd = npdd;
        mdd = nmdd;
    }

    let sign = |plus: &BTreeSet<String>, minus: &BTreeSet<String>, q: &str| {
        if plus.contains(q) {
            '+'
        } else if minus.contains(q) {
            '-'
        } else {
            '?'
        }
    };
    lits.iter()
        .map(|q| {
            let ap = if pap.contains(q) { '+' } else { '-' };
            (q.clone(), (sign(&pd, &md, q), sign(&pdd, &mdd, q), ap))
        })
        .collect()
}
