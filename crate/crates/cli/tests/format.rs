use actpres_cli::format::parse;

const CORPUS: [&str; 7] = [
    include_str!("../corpus/free_union_of_ideals.txt"),
    include_str!("../corpus/idempotent_pumping_union.txt"),
    include_str!("../corpus/large_ideal_of_pumped_monoid.txt"),
    include_str!("../corpus/left_zero_trivial_act.txt"),
    include_str!("../corpus/pumped_union_of_ideals.txt"),
    include_str!("../corpus/shifted_pumping_intersection.txt"),
    include_str!("../corpus/trivial_act_free_monoid.txt"),
];

#[test]
fn corpus_documents_round_trip() {
    for text in CORPUS {
        let doc = parse(text).unwrap();
        let printed = doc.to_string();
        let again = parse(&printed).unwrap();
        assert_eq!(doc, again, "{printed}");
        assert_eq!(again.to_string(), printed);
    }
}

#[test]
fn empty_relation_section_presents_the_free_act() {
    let text = "[monoid]\nletters = a b\n\n[act-presentation]\ngenerators = x y\n";
    let doc = parse(text).unwrap();
    let m = doc.load_monoid().unwrap();
    let pres = doc.load_presentation(&m).unwrap();
    assert!(pres.relations().is_empty());
    assert_eq!(pres.generators().len(), 2);
}

#[test]
fn errors_carry_positions() {
    let err = parse("[monoid]\nletters = a\nbogus line\n").unwrap_err();
    assert_eq!(err.pos().map(|p| p.line), Some(3), "{err}");
}
