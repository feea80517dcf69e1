//! Seeded random instances checked against the brute-force oracle.

use std::fmt;

use actpres::act::{act_from_presentation, rees_quotient, Interpretation};
use actpres::construct::{
    extension_presentation, large_subact_generators, large_subact_presentation, rees_quotient_presentation,
    subact_presentation, trivial_letters_presentation, union_component_presentation, union_presentation, Choices,
    ConstructBounds, LargeSubact,
};
use actpres::presentation::{
    canonical_presentation, evaluate, is_consequence, tietze_apply, trivial_act_presentation, CanonicalStyle,
    SearchBounds, TietzeMove, Verdict,
};
use actpres::random::{
    random_act, random_cover, random_monoid, random_presentation, random_subact, random_tietze_move,
};
use actpres::{ActPresentation, FiniteAct, FreeActElement, Letter, Subact};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::parse;

/// Size limits for random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_monoid: usize,
    pub max_act: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_monoid: 6,
            max_act: 12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    ReesQuotient,
    Extension,
    Union,
    UnionComponent,
    Subact,
    LargeSubact,
    Tietze,
    Prover,
    TrivialAct,
    Parser,
}

impl Suite {
    pub const CONSTRUCTIONS: [Suite; 6] = [
        Suite::ReesQuotient,
        Suite::Extension,
        Suite::Union,
        Suite::UnionComponent,
        Suite::Subact,
        Suite::LargeSubact,
    ];

    pub const ALL: [Suite; 10] = [
        Suite::ReesQuotient,
        Suite::Extension,
        Suite::Union,
        Suite::UnionComponent,
        Suite::Subact,
        Suite::LargeSubact,
        Suite::Tietze,
        Suite::Prover,
        Suite::TrivialAct,
        Suite::Parser,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ReesQuotient => "rees-quotient",
            Suite::Extension => "extension",
            Suite::Union => "union",
            Suite::UnionComponent => "union-component",
            Suite::Subact => "subact",
            Suite::LargeSubact => "large-subact",
            Suite::Tietze => "tietze",
            Suite::Prover => "prover",
            Suite::TrivialAct => "trivial-act",
            Suite::Parser => "parser",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Runs one seeded instance; `Err` carries a reproducible description.
    pub fn run(self, seed: u64, limits: Limits) -> Result<(), String> {
        match self {
            Suite::ReesQuotient => rees_quotient_case(seed, limits),
            Suite::Extension => extension_case(seed, limits),
            Suite::Union => union_case(seed, limits),
            Suite::UnionComponent => union_component_case(seed, limits),
            Suite::Subact => subact_case(seed, limits),
            Suite::LargeSubact => large_subact_case(seed, limits),
            Suite::Tietze => tietze_chain(seed, limits, 12),
            Suite::Prover => prover_case(seed, 24).map(|_| ()),
            Suite::TrivialAct => trivial_act_case(seed, limits),
            Suite::Parser => parser_case(seed),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Each suite draws from its own stream so that seeds are comparable across runs.
fn rng_for(suite: &str, seed: u64) -> ChaCha8Rng {
    let salt = suite.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3));
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

fn instance(suite: &str, seed: u64, limits: Limits) -> (ChaCha8Rng, FiniteAct) {
    let mut rng = rng_for(suite, seed);
    let m = random_monoid(&mut rng, limits.max_monoid);
    let act = random_act(&mut rng, &m, limits.max_act);
    (rng, act)
}

fn style(rng: &mut ChaCha8Rng) -> CanonicalStyle {
    CanonicalStyle::from_number(rng.gen_range(1..=3)).expect("styles are numbered 1 to 3")
}

fn renamed(pres: &ActPresentation, prefix: &str) -> ActPresentation {
    let names = (0..pres.generators().len()).map(|i| format!("{prefix}{i}"));
    ActPresentation::with_names(pres.monoid().clone(), names, pres.relations().to_vec()).expect("fresh names")
}

fn present(act: &FiniteAct, style: CanonicalStyle, prefix: &str) -> (ActPresentation, Vec<usize>) {
    let (p, images) = canonical_presentation(act, style).expect("finite acts have canonical presentations");
    (renamed(&p, prefix), images)
}

fn present_subact(act: &FiniteAct, sub: &Subact, prefix: &str) -> (ActPresentation, Vec<usize>) {
    let (local, embed) = sub.to_act(act);
    let (p, images) = present(&local, CanonicalStyle::GeneratorPairs, prefix);
    (p, images.iter().map(|&i| embed[i]).collect())
}

/// Shortlex-least `x·w` with value `target`.
fn witness(act: &FiniteAct, images: &[usize], target: usize) -> FreeActElement {
    let mut words = act.monoid().elements().expect("finite monoid");
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

fn subact_generators(act: &FiniteAct, sub: &Subact) -> Vec<usize> {
    let (local, embed) = sub.to_act(act);
    local.greedy_generators().iter().map(|&i| embed[i]).collect()
}

fn localize(act: &FiniteAct, sub: &Subact, values: &[usize]) -> Vec<usize> {
    let (_, embed) = sub.to_act(act);
    values
        .iter()
        .map(|v| embed.iter().position(|e| e == v).expect("inside the subact"))
        .collect()
}

fn check(pres: &ActPresentation, act: &FiniteAct, images: &[usize], transcript: impl Fn() -> String) -> Result<(), String> {
    let v = pres.verify(act, images).map_err(|e| e.to_string())?;
    if v.holds() {
        Ok(())
    } else {
        Err(format!("{v:?}\n{}", transcript()))
    }
}

fn rees_quotient_case(seed: u64, limits: Limits) -> Result<(), String> {
    let (mut rng, act) = instance("rees-quotient", seed, limits);
    let sub = random_subact(&mut rng, &act);
    let (pres, images) = present(&act, style(&mut rng), "x");
    let interp = Interpretation::new(&act, images.clone());
    let b_gens: Vec<_> = subact_generators(&act, &sub)
        .into_iter()
        .map(|b| witness(&act, &images, b))
        .collect();
    let trivial = trivial_letters_presentation(act.monoid(), "z").map_err(|e| e.to_string())?;
    let c = rees_quotient_presentation(&pres, &interp, &sub, &b_gens, &trivial).map_err(|e| e.to_string())?;
    let target = rees_quotient(&act, &sub).map_err(|e| e.to_string())?;
    let mut out: Vec<usize> = images
        .iter()
        .filter(|&&v| !sub.contains(v))
        .map(|&v| target.projection[v])
        .collect();
    out.push(target.zero);
    check(&c.presentation, &target.act, &out, || c.transcript())
}

fn extension_case(seed: u64, limits: Limits) -> Result<(), String> {
    let (mut rng, act) = instance("extension", seed, limits);
    let sub = random_subact(&mut rng, &act);
    let (pb, b_images) = present_subact(&act, &sub, "b");
    let q = rees_quotient(&act, &sub).map_err(|e| e.to_string())?;
    let (pq, q_local) = present(&q.act, style(&mut rng), "q");
    let zero = q_local.iter().position(|&v| v == q.zero).map(|i| i as Letter);
    // images in A of the generators of A/B; the zero's image is unused
    let q_images: Vec<usize> = q_local
        .iter()
        .map(|&v| {
            if v == q.zero {
                0
            } else {
                q.projection.iter().position(|&p| p == v).expect("outside B")
            }
        })
        .collect();
    let c = extension_presentation(
        &pb,
        &pq,
        zero,
        &act,
        b_images.clone(),
        q_images.clone(),
        &sub,
        &Choices::new(),
        ConstructBounds::default(),
    )
    .map_err(|e| e.to_string())?;
    let mut out = b_images;
    for (i, v) in q_images.into_iter().enumerate() {
        if Some(i as Letter) != zero {
            out.push(v);
        }
    }
    check(&c.presentation, &act, &out, || c.transcript())
}

fn union_case(seed: u64, limits: Limits) -> Result<(), String> {
    let (mut rng, act) = instance("union", seed, limits);
    let (a, b) = random_cover(&mut rng, &act);
    let (pa, a_images) = present_subact(&act, &a, "a");
    let (pb, b_images) = present_subact(&act, &b, "b");
    let u_set = a.intersection(&b).map(|i| subact_generators(&act, &i)).unwrap_or_default();
    let c = union_presentation(
        &pa,
        &pb,
        &act,
        a_images.clone(),
        b_images.clone(),
        &u_set,
        &Choices::new(),
        ConstructBounds::default(),
    )
    .map_err(|e| e.to_string())?;
    let mut out = a_images;
    out.extend(b_images);
    check(&c.presentation, &act, &out, || c.transcript())
}

fn union_component_case(seed: u64, limits: Limits) -> Result<(), String> {
    let (mut rng, act) = instance("union-component", seed, limits);
    let (a, b) = random_cover(&mut rng, &act);
    let (pc, c_images) = present(&act, style(&mut rng), "z");
    let inter = a.intersection(&b).map(|i| present_subact(&act, &i, "u"));
    let c = union_component_presentation(
        &pc,
        &act,
        c_images.clone(),
        &b,
        inter.as_ref().map(|(p, imgs)| (p, imgs.clone())),
        &Choices::new(),
        ConstructBounds::default(),
    )
    .map_err(|e| e.to_string())?;
    let mut values: Vec<usize> = c_images.iter().copied().filter(|&v| !b.contains(v)).collect();
    if let Some((_, imgs)) = &inter {
        values.extend(imgs.iter().copied());
    }
    let (local, _) = a.to_act(&act);
    check(&c.presentation, &local, &localize(&act, &a, &values), || c.transcript())
}

fn subact_case(seed: u64, limits: Limits) -> Result<(), String> {
    let (mut rng, act) = instance("subact", seed, limits);
    let sub = random_subact(&mut rng, &act);
    let (pres, images) = present(&act, style(&mut rng), "x");
    let interp = Interpretation::new(&act, images.clone());
    let gens = subact_generators(&act, &sub);
    let y: Vec<_> = gens
        .iter()
        .enumerate()
        .map(|(i, &g)| (format!("y{i}"), witness(&act, &images, g)))
        .collect();
    let c = subact_presentation(&pres, &interp, &sub, &y, &Choices::new(), ConstructBounds::default())
        .map_err(|e| e.to_string())?;
    if !c.gaps.is_empty() {
        return Err(format!("gaps over a finite monoid: {:?}", c.gaps));
    }
    let (local, _) = sub.to_act(&act);
    check(&c.presentation, &local, &localize(&act, &sub, &gens), || c.transcript())
}

fn large_subact_case(seed: u64, limits: Limits) -> Result<(), String> {
    let (mut rng, act) = instance("large-subact", seed, limits);
    let sub = random_subact(&mut rng, &act);
    let (pres, images) = present(&act, style(&mut rng), "x");
    let ctx = LargeSubact {
        presentation: &pres,
        ambient: Interpretation::new(&act, images),
        member: &sub,
        bounds: ConstructBounds::default(),
    };
    let gens = large_subact_generators(&ctx).map_err(|e| e.to_string())?;
    if Subact::generated(&act, &gens.images).ok().as_ref() != Some(&sub) {
        return Err("generators do not generate the subact".into());
    }
    let c = large_subact_presentation(&ctx, &gens).map_err(|e| e.to_string())?;
    let (local, _) = sub.to_act(&act);
    check(&c.presentation, &local, &localize(&act, &sub, &gens.images), || c.transcript())
}

/// A chain of random Tietze moves from a canonical presentation of a random
/// act; after every move the current presentation must still define the act
/// under the tracked generator images.
pub fn tietze_chain(seed: u64, limits: Limits, moves: usize) -> Result<(), String> {
    let bounds = SearchBounds::default();
    let mut rng = rng_for("tietze", seed);
    let m = random_monoid(&mut rng, limits.max_monoid.min(4));
    let act = random_act(&mut rng, &m, limits.max_act.min(6));
    let (mut pres, mut images) = present(&act, style(&mut rng), "x");
    for step in 0..moves {
        let Some(mv) = random_tietze_move(&mut rng, &pres, bounds) else {
            continue;
        };
        pres = tietze_apply(&pres, &mv).map_err(|e| format!("move {step}: {e}"))?;
        match &mv {
            TietzeMove::AddGenerators(items) => {
                for (_, w) in items {
                    images.push(evaluate(&act, &images, w));
                }
            }
            TietzeMove::RemoveGenerators(xs) => {
                images = images
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !xs.contains(&(*i as Letter)))
                    .map(|(_, &v)| v)
                    .collect();
            }
            TietzeMove::AddRelations(_) | TietzeMove::RemoveRelations(_) => {}
        }
        check(&pres, &act, &images, || format!("after move {step}"))?;
    }
    Ok(())
}

/// Agreement of the prover with the oracle on every pair of elements of `F_X`
/// for a random presentation with `|X|·|M| <= max_free`. Returns the number of
/// pairs compared.
pub fn prover_case(seed: u64, max_free: usize) -> Result<usize, String> {
    let bounds = SearchBounds {
        max_steps: 256,
        max_nodes: 100_000,
        ..SearchBounds::default()
    };
    let mut rng = rng_for("prover", seed);
    let m = random_monoid(&mut rng, 6);
    let size = m.as_finite().expect("finite").size();
    let gens = rng.gen_range(1..=(max_free / size).clamp(1, 4));
    let rels = rng.gen_range(0..=4);
    let pres = random_presentation(&mut rng, &m, gens, rels);
    let oracle = act_from_presentation(&pres).map_err(|e| e.to_string())?;
    let n = oracle.free.len();
    let mut pairs = 0;
    for i in 0..n {
        for j in i..n {
            let (u, v) = (oracle.element_of(i), oracle.element_of(j));
            let equal = oracle.congruence.related(i, j);
            let show = || format!("{} = {}", pres.render_element(&u), pres.render_element(&v));
            match is_consequence(&pres, &u, &v, bounds) {
                Verdict::Proved(seq) => {
                    if !equal {
                        return Err(format!("proved a false relation {}", show()));
                    }
                    seq.replay(&pres).map_err(|e| format!("{}: certificate does not replay: {e}", show()))?;
                }
                Verdict::Disproved(_) if equal => return Err(format!("disproved a true relation {}", show())),
                Verdict::Disproved(_) => {}
                Verdict::Unknown { explored } => {
                    return Err(format!("{} undecided after {explored} nodes", show()));
                }
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}

/// The trivial act presentation built from an act with a zero defines the
/// one-element act.
fn trivial_act_case(seed: u64, limits: Limits) -> Result<(), String> {
    let (mut rng, act) = instance("trivial-act", seed, limits);
    let sub = random_subact(&mut rng, &act);
    let q = rees_quotient(&act, &sub).map_err(|e| e.to_string())?;
    let (mut pres, images) = present(&q.act, style(&mut rng), "x");
    let zero = match images.iter().position(|&v| v == q.zero) {
        Some(z) => z as Letter,
        None => {
            // make the zero a generator with a T3 move
            let w = witness(&q.act, &images, q.zero);
            let mv = TietzeMove::AddGenerators(vec![("z".into(), w)]);
            pres = tietze_apply(&pres, &mv).map_err(|e| e.to_string())?;
            images.len() as Letter
        }
    };
    let t = trivial_act_presentation(&pres, zero).map_err(|e| e.to_string())?;
    let o = act_from_presentation(&t).map_err(|e| e.to_string())?;
    if o.act.len() == 1 {
        Ok(())
    } else {
        Err(format!("presented act has {} elements", o.act.len()))
    }
}

const FRAGMENTS: &[&str] = &[
    "[monoid]", "[act]", "[act-presentation]", "[subact]", "[choices]", "[bogus]", "letters", "elements",
    "identity", "letter", "row", "rule", "schema", "confluence", "asserted", "checked", "regular", "action",
    "generators", "relation", "image", "choice", "B", "a", "b", "x", "y", "1", "2", "i", "=", ":", ".", "->",
    "^", "(", ")", ">=", "+", "-", ",", "#", "$", "\n", "\n", "\n", " ", "  ", "\t",
];

/// Random token streams never panic the parser, and every rejection carries a
/// position inside the text.
fn parser_case(seed: u64) -> Result<(), String> {
    let mut rng = rng_for("parser", seed);
    for _ in 0..50 {
        let len = rng.gen_range(0..40);
        let mut text = String::new();
        for _ in 0..len {
            text.push_str(FRAGMENTS[rng.gen_range(0..FRAGMENTS.len())]);
            if rng.gen_bool(0.7) {
                text.push(' ');
            }
        }
        let outcome = std::panic::catch_unwind(|| {
            parse(&text).and_then(|d| {
                if d.monoid.is_some() {
                    let m = d.load_monoid()?;
                    if d.presentation.is_some() {
                        d.load_presentation(&m)?;
                    }
                    if d.act.is_some() {
                        d.load_act(&m)?;
                    }
                }
                Ok(d)
            })
        });
        match outcome {
            Err(_) => return Err(format!("parser panicked on {text:?}")),
            Ok(Err(e)) => {
                if let Some(pos) = e.pos() {
                    let lines = text.lines().count().max(1);
                    if pos.line == 0 || pos.line > lines || pos.col == 0 {
                        return Err(format!("position {pos} outside {text:?}"));
                    }
                }
            }
            Ok(Ok(d)) => {
                let again = parse(&d.to_string()).map_err(|e| format!("serialized form rejected: {e}"))?;
                if again != d {
                    return Err(format!("round trip changed {text:?}"));
                }
            }
        }
    }
    Ok(())
}
