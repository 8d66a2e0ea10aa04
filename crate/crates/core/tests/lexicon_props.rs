use ontalign::lexicon::{equivalent, load_lexicon, SynonymLexicon};
use proptest::prelude::*;

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec![
        "Professor",
        "professor",
        "Prof",
        "Faculty",
        "Teacher",
        "Staff",
        "Lecturer",
        "Full_Professor",
        "FullProfessor",
        "Dept",
        "Department",
        "Unit",
    ])
    .prop_map(str::to_string)
}

fn lexicon() -> impl Strategy<Value = SynonymLexicon> {
    prop::collection::vec(prop::collection::vec(name(), 2..4), 0..4)
        .prop_map(|groups| SynonymLexicon::from_groups(groups).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn equivalence_relation(lex in lexicon(), a in name(), b in name(), c in name()) {
        prop_assert!(equivalent(&a, &a, &lex));
        prop_assert_eq!(equivalent(&a, &b, &lex), equivalent(&b, &a, &lex));
        if equivalent(&a, &b, &lex) && equivalent(&b, &c, &lex) {
            prop_assert!(equivalent(&a, &c, &lex));
        }
        prop_assert_eq!(equivalent(&a, &b, &lex), lex.key(&a) == lex.key(&b));
    }

    #[test]
    fn adding_groups_only_merges(groups in prop::collection::vec(prop::collection::vec(name(), 2..4), 1..4),
                                 a in name(), b in name()) {
        let smaller = SynonymLexicon::from_groups(groups[..groups.len() - 1].to_vec()).unwrap();
        let larger = SynonymLexicon::from_groups(groups).unwrap();
        if equivalent(&a, &b, &smaller) {
            prop_assert!(equivalent(&a, &b, &larger));
        }
    }
}

#[test]
fn case_and_underscore_folding() {
    let lex = SynonymLexicon::empty();
    assert!(equivalent("Full_Professor", "fullprofessor", &lex));
    assert!(!equivalent("Professor", "Lecturer", &lex));
}

#[test]
fn file_groups_are_transitive() {
    let lex = load_lexicon("# staff\nProfessor, Faculty\nFaculty, Teacher\n").unwrap();
    assert!(equivalent("professor", "TEACHER", &lex));
    assert!(load_lexicon("Lonely\n").is_err());
}
