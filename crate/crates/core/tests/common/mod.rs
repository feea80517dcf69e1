#![allow(dead_code)]

use std::sync::Arc;

use actpres::monoid::{Alphabet, Letter, Monoid, Word};
use actpres::presentation::{canonical_presentation, CanonicalStyle};
use actpres::{ActPresentation, FiniteAct, FreeActElement, Subact};

pub fn renamed(pres: &ActPresentation, prefix: &str) -> ActPresentation {
    let names = (0..pres.generators().len()).map(|i| format!("{prefix}{i}"));
    ActPresentation::new(pres.monoid().clone(), Alphabet::new(names).unwrap(), pres.relations().to_vec()).unwrap()
}

/// Presentation of a finite act with generators `prefix0, prefix1, ...`.
pub fn present(act: &FiniteAct, style: CanonicalStyle, prefix: &str) -> (ActPresentation, Vec<usize>) {
    let (p, images) = canonical_presentation(act, style).unwrap();
    (renamed(&p, prefix), images)
}

/// Presentation of a subact, with generator images in the parent act.
pub fn present_subact(act: &FiniteAct, sub: &Subact, prefix: &str) -> (ActPresentation, Vec<usize>) {
    let (local, embed) = sub.to_act(act);
    let (p, images) = present(&local, CanonicalStyle::GeneratorPairs, prefix);
    (p, images.iter().map(|&i| embed[i]).collect())
}

/// Shortlex-least `x·w` whose value is `target`.
pub fn witness(act: &FiniteAct, images: &[usize], target: usize) -> FreeActElement {
    let words = act.monoid().elements().unwrap();
    let mut words = words;
    words.sort();
    for w in &words {
        for (x, &img) in images.iter().enumerate() {
            if act.act_word(img, w) == target {
                return FreeActElement::new(x as Letter, w.clone());
            }
        }
    }
    panic!("element not generated")
}

/// Generators of a subact, as elements of the parent act.
pub fn subact_generators(act: &FiniteAct, sub: &Subact) -> Vec<usize> {
    let (local, embed) = sub.to_act(act);
    local.greedy_generators().iter().map(|&i| embed[i]).collect()
}

/// Position of each parent element inside the subact's own numbering.
pub fn localize(act: &FiniteAct, sub: &Subact, values: &[usize]) -> Vec<usize> {
    let (_, embed) = sub.to_act(act);
    values.iter().map(|v| embed.iter().position(|e| e == v).expect("inside the subact")).collect()
}

pub fn style(n: u64) -> CanonicalStyle {
    match n % 3 {
        0 => CanonicalStyle::AllMultipliers,
        1 => CanonicalStyle::GeneratorPairs,
        _ => CanonicalStyle::Letters,
    }
}

pub fn word(m: &Arc<Monoid>, text: &str) -> Word {
    m.alphabet().parse_word(text).unwrap()
}

use actpres::monoid::{ConfluenceStatus, Exponent, RewritingSystem, Rule, RuleSchema};

/// `prefix pumped^i suffix -> rhs_prefix rhs_pumped^e(i) rhs_suffix` for `i >= min`.
#[allow(clippy::too_many_arguments)]
pub fn schema(
    z: &Alphabet,
    prefix: &str,
    pumped: &str,
    min: usize,
    suffix: &str,
    rhs_prefix: &str,
    rhs_pumped: &str,
    exponent: Exponent,
    rhs_suffix: &str,
) -> Rule {
    let w = |s: &str| z.parse_word(s).unwrap();
    Rule::Schema(RuleSchema {
        prefix: w(prefix),
        pumped: z.lookup(pumped).unwrap(),
        min_exp: min,
        suffix: w(suffix),
        rhs_prefix: w(rhs_prefix),
        rhs_pumped: z.lookup(rhs_pumped).unwrap(),
        exponent,
        rhs_suffix: w(rhs_suffix),
    })
}

pub fn plain(z: &Alphabet, lhs: &str, rhs: &str) -> Rule {
    Rule::plain(z.parse_word(lhs).unwrap(), z.parse_word(rhs).unwrap())
}

fn rewriting(letters: &[&str], rules: impl FnOnce(&Alphabet) -> Vec<Rule>, status: ConfluenceStatus) -> Arc<Monoid> {
    let z = Alphabet::new(letters.iter().copied()).unwrap();
    let rules = rules(&z);
    Arc::new(Monoid::Rewriting(RewritingSystem::new(z, rules).unwrap().with_confluence(status)))
}

/// `a b^i a = a b a`, `b a^i b = b a b`, `s a = a`, `t b = b`.
pub fn two_sided_pumping() -> Arc<Monoid> {
    rewriting(
        &["a", "b", "s", "t"],
        |z| {
            vec![
                schema(z, "a", "b", 2, "a", "a b a", "b", Exponent::Const(0), ""),
                schema(z, "b", "a", 2, "b", "b a b", "a", Exponent::Const(0), ""),
                plain(z, "s a", "a"),
                plain(z, "t b", "b"),
            ]
        },
        ConfluenceStatus::Asserted,
    )
}

/// `a c^i a = b c^(i-1) b`.
pub fn shifted_pumping() -> Arc<Monoid> {
    rewriting(
        &["a", "b", "c"],
        |z| vec![schema(z, "a", "c", 2, "a", "b", "c", Exponent::Shift(-1), "b")],
        ConfluenceStatus::Unchecked,
    )
}

/// `a a = a`, `c a b = a b`, `a b^i a = a b a`.
pub fn idempotent_pumping() -> Arc<Monoid> {
    rewriting(
        &["a", "b", "c"],
        |z| {
            vec![
                plain(z, "a a", "a"),
                plain(z, "c a b", "a b"),
                schema(z, "a", "b", 2, "a", "a", "b", Exponent::Const(1), "a"),
            ]
        },
        ConfluenceStatus::Asserted,
    )
}

/// `a b^i a = a b a`.
pub fn one_sided_pumping() -> Arc<Monoid> {
    rewriting(
        &["a", "b"],
        |z| vec![schema(z, "a", "b", 2, "a", "a", "b", Exponent::Const(1), "a")],
        ConfluenceStatus::Asserted,
    )
}
