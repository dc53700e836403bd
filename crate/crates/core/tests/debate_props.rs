mod common;

use std::fs;

use oppositio::analysis::{
    compliance, genre_histogram, repartition, report, summarize, JustificationGenre,
};
use oppositio::debate::{
    load_debate, save_debate, session_counts, validate_debate, Debate, DebateError, ARGUMENTS_FILE,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn corpus() -> Debate {
    load_debate(&common::corpus_dir()).expect("bundled corpus loads")
}

fn copy_corpus(to: &std::path::Path) {
    let from = common::corpus_dir();
    fs::create_dir_all(to.join("documents")).unwrap();
    for entry in fs::read_dir(&from).unwrap() {
        let path = entry.unwrap().path();
        if path.is_file() {
            fs::copy(&path, to.join(path.file_name().unwrap())).unwrap();
        }
    }
    for entry in fs::read_dir(from.join("documents")).unwrap() {
        let path = entry.unwrap().path();
        fs::copy(&path, to.join("documents").join(path.file_name().unwrap())).unwrap();
    }
}

#[test]
fn corpus_matches_generation_counts() {
    let expected: Value = serde_json::from_str(
        &fs::read_to_string(common::corpus_dir().join("expected.json")).unwrap(),
    )
    .unwrap();
    let debate = corpus();
    let records = validate_debate(&debate);
    assert_eq!(
        records.len() as u64,
        expected["arguments"].as_u64().unwrap()
    );
    let well_formed = records.iter().filter(|r| r.well_formed).count();
    assert_eq!(
        well_formed as u64,
        expected["well_formed"].as_u64().unwrap()
    );
    let violating = records.iter().filter(|r| !r.violations.is_empty()).count();
    assert_eq!(
        violating as u64,
        expected["with_violations"].as_u64().unwrap()
    );

    let sessions = session_counts(&debate);
    for (s, n) in expected["sessions"].as_object().unwrap() {
        assert_eq!(
            sessions[&s.parse::<u32>().unwrap()] as u64,
            n.as_u64().unwrap()
        );
    }
    let rep = repartition(&debate);
    for (j, n) in expected["repartition"].as_object().unwrap() {
        assert_eq!(rep.counts[j] as u64, n.as_u64().unwrap(), "{j}");
    }
}

#[test]
fn corpus_genres_add_up() {
    let debate = corpus();
    let genres = genre_histogram(&debate).unwrap();
    let total: usize = genres.iter().map(|g| g.count).sum();
    assert_eq!(total, 41);
    let count = |g: JustificationGenre| genres.iter().find(|c| c.genre == g).map_or(0, |c| c.count);
    assert_eq!(count(JustificationGenre::Explanation), 12);
    assert_eq!(count(JustificationGenre::NegativeReason), 9);
    assert_eq!(count(JustificationGenre::Unspecified), 5);
}

#[test]
fn save_then_load_is_identity() {
    let debate = corpus();
    let dir = tempfile::tempdir().unwrap();
    save_debate(&debate, dir.path()).unwrap();
    let again = load_debate(dir.path()).unwrap();
    assert_eq!(again, debate);
    let dir2 = tempfile::tempdir().unwrap();
    save_debate(&again, dir2.path()).unwrap();
    assert_eq!(load_debate(dir2.path()).unwrap(), debate);
}

#[test]
fn unknown_judgment_names_the_record() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    let path = dir.path().join(ARGUMENTS_FILE);
    let text = fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
    lines[4] = lines[4].replacen("\"proved.yes\"", "\"proven.yes\"", 1);
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    match load_debate(dir.path()) {
        Err(DebateError::Integrity { record, .. }) => assert_eq!(record, Some(5)),
        other => panic!("expected an integrity error, got {other:?}"),
    }
}

#[test]
fn dangling_parent_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    let path = dir.path().join(ARGUMENTS_FILE);
    let text = fs::read_to_string(&path).unwrap();
    let text = text.replacen("\"parent\":\"s1-01\"", "\"parent\":\"s9-99\"", 1);
    fs::write(&path, text).unwrap();
    assert!(matches!(
        load_debate(dir.path()),
        Err(DebateError::Integrity { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn argument_order_does_not_matter(seed in any::<u64>()) {
        let debate = corpus();
        let mut parts = debate.clone().into_parts();
        parts.arguments.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        parts.relations.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 1));
        let shuffled = Debate::new(parts).unwrap();
        prop_assert_eq!(validate_debate(&shuffled), validate_debate(&debate));
        prop_assert_eq!(compliance(&shuffled), compliance(&debate));
        prop_assert_eq!(report(&shuffled), report(&debate));
        prop_assert_eq!(summarize(&shuffled), summarize(&debate));
    }
}
