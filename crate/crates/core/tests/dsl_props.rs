mod common;

use oppositio::dsl::{
    parse_structure, parse_theory, print_structure, print_theory, SourcePosition,
};
use oppositio::opposition::builtin_structures;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Line and column just past the last character.
fn end_of(text: &str) -> SourcePosition {
    let line = text.matches('\n').count() + 1;
    let last = text.rsplit('\n').next().unwrap_or("");
    SourcePosition {
        line,
        column: last.chars().count() + 1,
    }
}

#[test]
fn builtin_structures_round_trip() {
    for (name, s) in builtin_structures() {
        let text = print_structure(&s);
        assert_eq!(parse_structure(&text).unwrap(), s, "{name}");
    }
}

#[test]
fn bundled_files_round_trip() {
    let dir = common::data_dir();
    for entry in std::fs::read_dir(dir.join("structures")).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let s = parse_structure(&text).unwrap();
        assert_eq!(parse_structure(&print_structure(&s)).unwrap(), s);
    }
    let penguin = std::fs::read_to_string(dir.join("theories/penguin.dlt")).unwrap();
    let t = parse_theory(&penguin).unwrap();
    assert_eq!(parse_theory(&print_theory(&t)).unwrap(), t);
}

#[test]
fn cyclic_superiority_is_rejected_at_the_closing_pair() {
    let text = std::fs::read_to_string(common::data_dir().join("theories/cyclic-sup.dlt")).unwrap();
    let err = parse_theory(&text).unwrap_err();
    assert!(err.to_string().contains("cycl"), "{err}");
}

proptest! {
    #[test]
    fn theory_round_trip(seed in any::<u64>()) {
        let t = common::random_theory(&mut ChaCha8Rng::seed_from_u64(seed));
        let text = print_theory(&t);
        prop_assert_eq!(parse_theory(&text).unwrap(), t);
    }

    #[test]
    fn structure_round_trip(seed in any::<u64>()) {
        let s = common::random_structure(&mut ChaCha8Rng::seed_from_u64(seed), 4, 6);
        let text = print_structure(&s);
        prop_assert_eq!(parse_structure(&text).unwrap(), s);
    }

    #[test]
    fn truncated_theory_errors_inside_the_text(seed in any::<u64>(), cut in 0usize..4096) {
        let t = common::random_theory(&mut ChaCha8Rng::seed_from_u64(seed));
        let text = print_theory(&t);
        let cut = cut % (text.len() + 1);
        let prefix = &text[..cut];
        if let Err(e) = parse_theory(prefix) {
            prop_assert!(e.position() <= end_of(prefix), "{} beyond {:?}", e, end_of(prefix));
            prop_assert!(e.position().line >= 1 && e.position().column >= 1);
        }
    }

    #[test]
    fn truncated_structure_errors_inside_the_text(seed in any::<u64>(), cut in 0usize..4096) {
        let s = common::random_structure(&mut ChaCha8Rng::seed_from_u64(seed), 3, 3);
        let text = print_structure(&s);
        let cut = cut % (text.len() + 1);
        let prefix = &text[..cut];
        if let Err(e) = parse_structure(prefix) {
            prop_assert!(e.position() <= end_of(prefix), "{} beyond {:?}", e, end_of(prefix));
        }
    }

    #[test]
    fn arbitrary_text_never_panics(text in "[a-z0-9_.,:~>{}# \\-=<\n]{0,200}") {
        let _ = parse_theory(&text);
        let _ = parse_structure(&text);
    }
}
