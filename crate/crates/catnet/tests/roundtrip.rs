mod common;

use catnet::{parse_net, print_net};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let text = common::random_document(&mut ChaCha8Rng::seed_from_u64(seed));
        let doc = parse_net(&text).unwrap_or_else(|d| panic!("{d:?}\n{text}"));
        let printed = print_net(&doc);
        prop_assert_eq!(parse_net(&printed).unwrap(), doc.clone());
        prop_assert_eq!(print_net(&parse_net(&printed).unwrap()), printed);
    }

    #[test]
    fn diagnostics_lie_inside_the_input(text in "[a-z ;:+>{}\\[\\]\n0-9-]{0,60}") {
        if let Err(diags) = parse_net(&text) {
            let lines: Vec<&str> = text.split('\n').collect();
            for d in diags {
                prop_assert!(d.location.line >= 1 && d.location.line <= lines.len());
                prop_assert!(d.location.column >= 1 && d.location.column <= lines[d.location.line - 1].chars().count() + 1);
            }
        }
    }
}
