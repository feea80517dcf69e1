mod common;

use std::sync::Arc;

use actpres::act::{act_from_presentation, congruence_closure, free_act};
use actpres::monoid::{all_words, Monoid};
use actpres::presentation::{evaluate, is_consequence, tietze_apply, SearchBounds, TietzeMove, Verdict};
use actpres::random::{random_act, random_monoid, random_presentation, random_tietze_move, random_word};
use actpres::{ActCongruence, FiniteAct};
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn systems() -> Vec<Arc<Monoid>> {
    vec![two_sided_pumping(), shifted_pumping(), idempotent_pumping(), one_sided_pumping()]
}

fn arb_word(letters: usize) -> impl Strategy<Value = actpres::Word> {
    prop::collection::vec(0..letters as u32, 0..24).prop_map(actpres::Word::from)
}

proptest! {
    #[test]
    fn normal_forms_are_irreducible_and_stable(which in 0usize..4, seed in any::<u64>()) {
        let m = &systems()[which];
        let sys = m.as_rewriting().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, sys.alphabet().len(), 24);
        let nf = sys.normal_form(&w);
        prop_assert!(nf.len() <= w.len());
        prop_assert!(sys.is_irreducible(&nf));
        prop_assert_eq!(sys.normal_form(&nf), nf);
    }

    #[test]
    fn one_sided_pumping_normal_form_is_stable(w in arb_word(2)) {
        let m = one_sided_pumping();
        let sys = m.as_rewriting().unwrap();
        let nf = sys.normal_form(&w);
        prop_assert!(sys.is_irreducible(&nf));
        prop_assert_eq!(sys.normal_form(&nf), nf.clone());
        prop_assert_eq!(m.canonical(&w), nf);
    }
}

/// Every partition of `0..n` as a label vector.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            go(prefix, n, max.max(b), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![Vec::new()];
    }
    go(&mut vec![0], n, 0, &mut out);
    out
}

/// The least congruence containing `seed`, by checking every partition.
fn brute_closure(act: &FiniteAct, seed: &[(usize, usize)]) -> ActCongruence {
    let candidates: Vec<ActCongruence> = partitions(act.len())
        .into_iter()
        .map(ActCongruence::from_keys)
        .filter(|c| c.is_congruence_on(act) && seed.iter().all(|&(a, b)| c.related(a, b)))
        .collect();
    let least: Vec<&ActCongruence> = candidates
        .iter()
        .filter(|c| candidates.iter().all(|d| c.is_finer_than(d)))
        .collect();
    assert_eq!(least.len(), 1, "the congruences containing a set form a lattice");
    least[0].clone()
}

#[test]
fn partition_counts_are_bell_numbers() {
    let bell = [1, 1, 2, 5, 15, 52, 203, 877];
    for (n, &b) in bell.iter().enumerate() {
        assert_eq!(partitions(n).len(), b);
    }
}

#[test]
fn congruence_closure_is_least() {
    for seed in 0..60u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_monoid(&mut rng, 4);
        let act = random_act(&mut rng, &m, 6);
        let pairs: Vec<(usize, usize)> = (0..rng.gen_range(0..3))
            .map(|_| (rng.gen_range(0..act.len()), rng.gen_range(0..act.len())))
            .collect();
        let fast = congruence_closure(&act, &pairs);
        let slow = brute_closure(&act, &pairs);
        assert!(fast.is_finer_than(&slow) && slow.is_finer_than(&fast), "seed {seed}");
    }
}

#[test]
fn presented_act_matches_brute_force() {
    let mut checked = 0;
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_monoid(&mut rng, 4);
        let size = m.as_finite().unwrap().size();
        let gens = rng.gen_range(1..=2);
        if gens * size > 7 {
            continue;
        }
        let rels = rng.gen_range(0..=3);
        let pres = random_presentation(&mut rng, &m, gens, rels);
        let oracle = act_from_presentation(&pres).unwrap();
        let free = free_act(&m, pres.generators().names()).unwrap();
        let seed_pairs: Vec<(usize, usize)> = pres
            .relations()
            .iter()
            .map(|r| (oracle.index_of(&r.lhs), oracle.index_of(&r.rhs)))
            .collect();
        let slow = brute_closure(&free, &seed_pairs);
        assert!(
            oracle.congruence.is_finer_than(&slow) && slow.is_finer_than(&oracle.congruence),
            "seed {seed}"
        );
        assert_eq!(oracle.act.len(), slow.num_classes());
        checked += 1;
    }
    assert!(checked >= 40, "only {checked} instances");
}

#[test]
fn prover_agrees_with_oracle() {
    let bounds = SearchBounds::default();
    for seed in 0..30u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_monoid(&mut rng, 6);
        let size = m.as_finite().unwrap().size();
        let gens = rng.gen_range(1..=(24 / size).clamp(1, 3));
        let rels = rng.gen_range(0..=3);
        let pres = random_presentation(&mut rng, &m, gens, rels);
        let oracle = act_from_presentation(&pres).unwrap();
        let n = oracle.free.len();
        for _ in 0..12 {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let (u, v) = (oracle.element_of(i), oracle.element_of(j));
            match is_consequence(&pres, &u, &v, bounds) {
                Verdict::Proved(seq) => {
                    assert!(oracle.congruence.related(i, j), "seed {seed}: false proof");
                    seq.replay(&pres).unwrap();
                }
                Verdict::Disproved(_) => assert!(!oracle.congruence.related(i, j), "seed {seed}: false disproof"),
                Verdict::Unknown { .. } => panic!("seed {seed}: undecided over a finite monoid"),
            }
        }
    }
}

#[test]
fn tietze_chains_preserve_the_act() {
    let bounds = SearchBounds::default();
    for seed in 0..25u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_monoid(&mut rng, 4);
        let act = random_act(&mut rng, &m, 6);
        let (mut pres, mut images) = present(&act, style(seed), "x");
        let mut applied = 0;
        for _ in 0..12 {
            let Some(mv) = random_tietze_move(&mut rng, &pres, bounds) else { continue };
            pres = tietze_apply(&pres, &mv).unwrap();
            match &mv {
                TietzeMove::AddGenerators(items) => {
                    for (_, w) in items {
                        images.push(evaluate(&act, &images, w));
                    }
                }
                TietzeMove::RemoveGenerators(xs) => {
                    let mut keep = 0..;
                    images.retain(|_| !xs.contains(&(keep.next().unwrap() as u32)));
                }
                _ => {}
            }
            applied += 1;
            let v = pres.verify(&act, &images).unwrap();
            assert!(v.holds(), "seed {seed} after {applied} moves: {v:?}");
        }
        assert!(applied > 0, "seed {seed}");
    }
}

#[test]
fn word_enumeration_counts() {
    assert_eq!(all_words(2, 3).len(), 1 + 2 + 4 + 8);
}
