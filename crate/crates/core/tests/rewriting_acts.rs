mod common;

use std::sync::Arc;

use actpres::act::{Decision, Interpretation, RightIdeal, RightRegularAct};
use actpres::construct::{
    intersection_generators, large_subact_generators, large_subact_presentation, mutually_derivable,
    simplify_with, subact_presentation, union_presentation, Choices, ConstructBounds, ConstructError,
    LargeSubact,
};
use actpres::monoid::{Alphabet, Monoid, Word};
use actpres::presentation::{is_consequence, SearchBounds};
use actpres::{ActPresentation, FreeActElement, Relation};
use common::*;

fn el(p: &ActPresentation, text: &str) -> FreeActElement {
    p.parse_element(text).unwrap()
}

fn rel(p: &ActPresentation, l: &str, r: &str) -> Relation {
    Relation::new(el(p, l), el(p, r))
}

fn presentation(m: &Arc<Monoid>, gens: &[&str], rels: &[(&str, &str)]) -> ActPresentation {
    let empty = ActPresentation::with_names(m.clone(), gens.iter().copied(), vec![]).unwrap();
    let rs = rels.iter().map(|(l, r)| rel(&empty, l, r)).collect();
    empty.with_relations(rs).unwrap()
}

fn pumped(g: &str, i: usize) -> String {
    format!("{g} . {} a", vec!["b"; i].join(" "))
}

#[test]
fn idempotent_generator_proves_every_pumped_relation() {
    let m = idempotent_pumping();
    let p = presentation(&m, &["A"], &[("A . a", "A")]);
    for i in 2..=10 {
        let (l, r) = (el(&p, &pumped("A", i)), el(&p, "A . b a"));
        let v = is_consequence(&p, &l, &r, SearchBounds::default());
        let seq = match v {
            actpres::presentation::Verdict::Proved(s) => s,
            other => panic!("i = {i}: {other}"),
        };
        assert!(seq.len() <= 5);
        let chain = seq.replay(&p).unwrap();
        assert_eq!(p.canonical(chain.last().unwrap()), p.canonical(&r));
    }
}

#[test]
fn truncated_pumping_cannot_reach_the_next_instance() {
    let m = two_sided_pumping();
    for k in 2..=6 {
        let rels: Vec<(String, String)> = (2..=k).map(|i| (pumped("A", i), "A . b a".to_string())).collect();
        let refs: Vec<(&str, &str)> = rels.iter().map(|(l, r)| (l.as_str(), r.as_str())).collect();
        let p = presentation(&m, &["A", "T"], &refs);
        let v = is_consequence(&p, &el(&p, &pumped("A", k + 1)), &el(&p, "A . b a"), SearchBounds::default());
        assert!(v.is_disproved(), "k = {k}: {v}");
        // the truncation still proves what it contains
        let v = is_consequence(&p, &el(&p, &pumped("A", k)), &el(&p, "A . b a"), SearchBounds::default());
        assert!(v.is_proved());
    }
}

#[test]
fn missing_letter_relation_is_refuted() {
    let z = Alphabet::new(["x0", "x1", "x2", "x3"]).unwrap();
    let m = Arc::new(Monoid::Free(z));
    let p = presentation(&m, &["o"], &[("o . x0", "o"), ("o . x1", "o"), ("o . x2", "o")]);
    let v = is_consequence(&p, &el(&p, "o . x3"), &el(&p, "o"), SearchBounds::default());
    assert!(v.is_disproved(), "{v}");
    let v = is_consequence(&p, &el(&p, "o . x2 x1 x0"), &el(&p, "o"), SearchBounds::default());
    assert!(v.is_proved(), "{v}");
}

#[test]
fn union_of_idempotent_and_free_ideals() {
    let m = idempotent_pumping();
    let model = RightRegularAct::new(m.clone());
    let w = |s: &str| m.alphabet().parse_word(s).unwrap();
    let pa = presentation(&m, &["A"], &[("A . a", "A")]);
    let pc = presentation(&m, &["C"], &[]);
    let c = union_presentation(
        &pa,
        &pc,
        &model,
        vec![w("a")],
        vec![w("c")],
        &[w("a b")],
        &Choices::new(),
        ConstructBounds::default(),
    )
    .unwrap();
    assert_eq!(c.count("T"), 1);
    let target = presentation(&m, &["A", "C"], &[("A . a", "A"), ("A . b", "C . a b")]);
    assert!(mutually_derivable(&c.presentation, &target, SearchBounds::default()).unwrap());
    let u = intersection_generators(&target, &[0]);
    assert_eq!(u, vec![el(&target, "A . b")]);
}

#[test]
fn shifted_pumping_intersection_generators() {
    let m = shifted_pumping();
    let sys = m.as_rewriting().unwrap();
    // X ↦ a and Y ↦ b, so X·c^i a = Y·c^(i-1) b
    let rels: Vec<(String, String)> = (2..=8)
        .map(|i| {
            let cs = vec!["c"; i].join(" ");
            let ds = vec!["c"; i - 1].join(" ");
            (format!("X . {cs} a"), format!("Y . {ds} b"))
        })
        .collect();
    let refs: Vec<(&str, &str)> = rels.iter().map(|(l, r)| (l.as_str(), r.as_str())).collect();
    let p = presentation(&m, &["X", "Y"], &refs);
    let u = intersection_generators(&p, &[0]);
    assert_eq!(u.len(), 7);
    for (k, e) in u.iter().enumerate() {
        let i = k + 2;
        let value = Word::letter(0).concat(&e.word);
        let expected = m.alphabet().parse_word(&format!("a {} a", vec!["c"; i].join(" "))).unwrap();
        assert_eq!(value, expected);
        // a c^i a lies in a c^j a M only for j = i
        let class = sys.equivalence_class(&value, 2 * i + 4, 100_000);
        assert!(class.exhaustive);
        for word in &class.words {
            let l = word.letters();
            if l.first() == Some(&0) {
                let run = l[1..].iter().take_while(|&&x| x == 2).count();
                if l.get(1 + run) == Some(&0) {
                    assert!(run == i || run < 2, "{:?}", m.render(word));
                }
            }
        }
    }
}

fn ideal_ctx_monoid() -> (Arc<Monoid>, ActPresentation) {
    let m = one_sided_pumping();
    let p = presentation(&m, &["one"], &[]);
    (m, p)
}

#[test]
fn large_ideal_generators() {
    let (m, p) = ideal_ctx_monoid();
    let model = RightRegularAct::new(m.clone());
    let a = m.alphabet().parse_word("a").unwrap();
    let member = move |w: &Word| Decision::from_bool(!w.is_empty() && *w != a);
    let ctx = LargeSubact {
        presentation: &p,
        ambient: Interpretation::new(&model, vec![Word::empty()]),
        member: &member,
        bounds: ConstructBounds::default(),
    };
    let gens = large_subact_generators(&ctx).unwrap();
    let rendered: Vec<String> = gens.images.iter().map(|w| m.render(w)).collect();
    assert_eq!(rendered, vec!["b", "a a", "a b"]);
    assert_eq!(gens.complement.len(), 2);
    // infinite monoid presentation without an instantiation bound
    assert!(matches!(large_subact_presentation(&ctx, &gens), Err(ConstructError::Refused(_))));
}

#[test]
fn free_monoid_large_ideal_is_free() {
    let z = Alphabet::new(["a", "b"]).unwrap();
    let m = Arc::new(Monoid::Free(z));
    let p = presentation(&m, &["one"], &[]);
    let model = RightRegularAct::new(m.clone());
    let member = |w: &Word| Decision::from_bool(!w.is_empty());
    let ctx = LargeSubact {
        presentation: &p,
        ambient: Interpretation::new(&model, vec![Word::empty()]),
        member: &member,
        bounds: ConstructBounds::default(),
    };
    let gens = large_subact_generators(&ctx).unwrap();
    assert_eq!(gens.images.len(), 2);
    let c = large_subact_presentation(&ctx, &gens).unwrap();
    assert!(c.presentation.relations().is_empty(), "{}", c.transcript());
}

#[test]
fn cyclic_ideals_of_the_pumped_monoid() {
    let (m, p) = ideal_ctx_monoid();
    let model = RightRegularAct::new(m.clone());
    let interp = Interpretation::new(&model, vec![Word::empty()]);
    let bounds = ConstructBounds { depth: 3, ..ConstructBounds::default() };
    let sb = SearchBounds::default();
    // b M is free on b
    let ideal = RightIdeal::new(m.clone(), vec![m.alphabet().parse_word("b").unwrap()], 6);
    let c = subact_presentation(&p, &interp, &ideal, &[("y".into(), el(&p, "one . b"))], &Choices::new(), bounds)
        .unwrap();
    assert!(c.gaps.is_empty(), "{:?}", c.gaps);
    let free = presentation(&m, &["y"], &[]);
    assert!(simplify_with(&c.presentation, &free, sb).unwrap().accepted());
    // a a M is not: a a·b b a = a a·b a
    let ideal = RightIdeal::new(m.clone(), vec![m.alphabet().parse_word("a a").unwrap()], 6);
    let c = subact_presentation(&p, &interp, &ideal, &[("y".into(), el(&p, "one . a a"))], &Choices::new(), bounds)
        .unwrap();
    let s = simplify_with(&c.presentation, &free, sb).unwrap();
    assert!(!s.accepted());
    let pumped_family = presentation(&m, &["y"], &[("y . b b a", "y . b a")]);
    let v = is_consequence(&c.presentation, &el(&pumped_family, "y . b b a"), &el(&pumped_family, "y . b a"), sb);
    assert!(v.is_proved(), "{v}");
}

#[test]
fn growing_orbit_stops_at_the_step_bound() {
    // x = x . a^4: orbits of x and x . a a are infinite, and every act with
    // at most three elements satisfying the relation also identifies them
    let m = Arc::new(Monoid::Free(Alphabet::new(["a"]).unwrap()));
    let p = presentation(&m, &["x"], &[("x", "x . a a a a")]);
    let v = is_consequence(&p, &el(&p, "x"), &el(&p, "x . a a"), SearchBounds::default());
    assert!(matches!(v, actpres::presentation::Verdict::Unknown { .. }), "{v}");
    let v = is_consequence(&p, &el(&p, "x . a"), &el(&p, "x . a a a a a"), SearchBounds::default());
    assert!(v.is_proved(), "{v}");
}
