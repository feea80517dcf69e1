//! Seeded generators of small finite monoids, acts, subacts, presentations
//! and Tietze moves for oracle testing.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::act::{act_from_presentation, congruence_closure, fresh_name, FiniteAct, Subact};
use crate::monoid::{FiniteMonoid, Letter, Monoid, Word};
use crate::presentation::{ActPresentation, FreeActElement, Relation, SearchBounds, TietzeMove};

/// A transformation monoid on at most four points with one or two letters
/// and at most `max_size` elements, biased towards larger sizes.
pub fn random_monoid<R: Rng>(rng: &mut R, max_size: usize) -> Arc<Monoid> {
    let min_size = rng.gen_range(1..=max_size.max(1)).max(max_size / 2);
    loop {
        let degree = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=2);
        let gens: Vec<Vec<usize>> = (0..k)
            .map(|_| (0..degree).map(|_| rng.gen_range(0..degree)).collect())
            .collect();
        if let Ok(m) = FiniteMonoid::from_transformations(degree, &gens, max_size) {
            if m.size() >= min_size {
                return Arc::new(Monoid::Finite(m));
            }
        }
    }
}

/// The right regular act of a finite monoid, elements in element order.
pub fn regular_act(monoid: &Arc<Monoid>) -> FiniteAct {
    let m = monoid.as_finite().expect("finite monoid");
    let action = (0..m.size())
        .map(|e| m.alphabet().letters().map(|l| m.mul(e, m.letter_element(l))).collect())
        .collect();
    let names = (0..m.size()).map(|e| format!("p{e}")).collect();
    FiniteAct::new(monoid.clone(), names, action).expect("regular act")
}

/// Disjoint union of acts over the same monoid, renaming elements `p0, p1, ...`.
pub fn disjoint_union(parts: &[FiniteAct]) -> FiniteAct {
    let monoid = parts[0].monoid().clone();
    let k = monoid.alphabet().len();
    let mut action = Vec::new();
    let mut offset = 0;
    for p in parts {
        for a in 0..p.len() {
            action.push((0..k).map(|l| offset + p.act_letter(a, l as Letter)).collect());
        }
        offset += p.len();
    }
    let names = (0..offset).map(|i| format!("p{i}")).collect();
    FiniteAct::new(monoid, names, action).expect("disjoint union of acts")
}

/// A random act with at most `max_size` elements: a disjoint union of cyclic
/// quotients of the regular act and one-element acts, with a few classes
/// merged afterwards.
pub fn random_act<R: Rng>(rng: &mut R, monoid: &Arc<Monoid>, max_size: usize) -> FiniteAct {
    let regular = regular_act(monoid);
    let k = monoid.alphabet().len();
    let mut parts = Vec::new();
    let mut total = 0;
    let components = rng.gen_range(1..=4);
    for _ in 0..components {
        let part = match rng.gen_range(0..4) {
            0 => FiniteAct::new(monoid.clone(), vec!["p".into()], vec![vec![0; k]]).expect("trivial act"),
            1 => regular.clone(),
            _ => {
                let a = rng.gen_range(0..regular.len());
                let b = rng.gen_range(0..regular.len());
                regular.quotient(&congruence_closure(&regular, &[(a, b)])).0
            }
        };
        if total + part.len() > max_size {
            continue;
        }
        total += part.len();
        parts.push(part);
    }
    if parts.is_empty() {
        parts.push(FiniteAct::new(monoid.clone(), vec!["p".into()], vec![vec![0; k]]).expect("trivial act"));
    }
    let act = disjoint_union(&parts);
    let merges = usize::from(rng.gen_bool(0.3));
    let pairs: Vec<(usize, usize)> = (0..merges)
        .map(|_| (rng.gen_range(0..act.len()), rng.gen_range(0..act.len())))
        .collect();
    let merged = act.quotient(&congruence_closure(&act, &pairs)).0;
    let names = (0..merged.len()).map(|i| format!("p{i}")).collect();
    let action = (0..merged.len())
        .map(|a| (0..k).map(|l| merged.act_letter(a, l as Letter)).collect())
        .collect();
    FiniteAct::new(monoid.clone(), names, action).expect("quotient act")
}

/// The subact generated by one or two random elements.
pub fn random_subact<R: Rng>(rng: &mut R, act: &FiniteAct) -> Subact {
    let n = rng.gen_range(1..=2);
    let seeds: Vec<usize> = (0..n).map(|_| rng.gen_range(0..act.len())).collect();
    Subact::generated(act, &seeds).expect("non-empty seeds")
}

/// A random word of length at most `max_len` over the monoid's letters.
pub fn random_word<R: Rng>(rng: &mut R, letters: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from((0..len).map(|_| rng.gen_range(0..letters) as Letter).collect::<Vec<_>>())
}

/// Two subacts whose union is the whole act: one random, the other
/// generated by everything it misses plus possibly a shared element.
pub fn random_cover<R: Rng>(rng: &mut R, act: &FiniteAct) -> (Subact, Subact) {
    let a = random_subact(rng, act);
    let mut seeds = a.complement();
    if seeds.is_empty() || rng.gen_bool(0.5) {
        let mut inside = a.elements();
        inside.shuffle(rng);
        seeds.push(inside[0]);
    }
    let b = Subact::generated(act, &seeds).expect("non-empty seeds");
    (a, b)
}

/// A presentation over a finite monoid with generators `x0, x1, ...` and
/// random relations between elements of the free act.
pub fn random_presentation<R: Rng>(
    rng: &mut R,
    monoid: &Arc<Monoid>,
    generators: usize,
    relations: usize,
) -> ActPresentation {
    let reps = monoid.elements().expect("finite monoid");
    let names: Vec<String> = (0..generators).map(|i| format!("x{i}")).collect();
    let pick = |rng: &mut R| {
        FreeActElement::new(
            rng.gen_range(0..generators) as Letter,
            reps.choose(rng).expect("monoids are non-empty").clone(),
        )
    };
    let rels = (0..relations)
        .map(|_| {
            let l = pick(rng);
            Relation::new(l, pick(rng))
        })
        .collect();
    ActPresentation::with_names(monoid.clone(), names, rels).expect("fresh generator names")
}

/// A random elementary Tietze move applicable to `pres` over a finite
/// monoid, with certificates where the move needs them. `None` when the
/// chosen kind does not apply.
pub fn random_tietze_move<R: Rng>(rng: &mut R, pres: &ActPresentation, bounds: SearchBounds) -> Option<TietzeMove> {
    let reps = pres.monoid().elements()?;
    let gens = pres.generators().len();
    match rng.gen_range(0..4) {
        0 => {
            let oracle = act_from_presentation(pres).ok()?;
            let i = rng.gen_range(0..oracle.free.len());
            let mates: Vec<usize> = (0..oracle.free.len())
                .filter(|&j| j != i && oracle.congruence.related(i, j))
                .collect();
            let j = *mates.choose(rng)?;
            let rel = Relation::new(oracle.element_of(i), oracle.element_of(j));
            TietzeMove::add_proved(pres, vec![rel], bounds).ok()
        }
        1 => {
            if pres.relations().is_empty() {
                return None;
            }
            let i = rng.gen_range(0..pres.relations().len());
            TietzeMove::remove_proved(pres, &[i], bounds).ok()
        }
        2 => {
            let name = fresh_name("t", pres.generators().names());
            let w = FreeActElement::new(rng.gen_range(0..gens) as Letter, reps.choose(rng)?.clone());
            Some(TietzeMove::AddGenerators(vec![(name, w)]))
        }
        _ => {
            if gens < 2 {
                return None;
            }
            let candidates: Vec<Letter> = pres
                .relations()
                .iter()
                .flat_map(|r| [(&r.lhs, &r.rhs), (&r.rhs, &r.lhs)])
                .filter(|(x, w)| x.word.is_empty() && w.generator != x.generator)
                .map(|(x, _)| x.generator)
                .collect();
            let x = *candidates.choose(rng)?;
            Some(TietzeMove::RemoveGenerators(vec![x]))
        }
    }
}
