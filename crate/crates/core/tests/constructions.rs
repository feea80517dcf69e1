mod common;

use actpres::act::{rees_quotient, Interpretation};
use actpres::construct::{
    extension_presentation, intersection_generators, large_subact_generators, large_subact_presentation,
    rees_quotient_presentation, subact_presentation, trivial_letters_presentation, union_component_presentation,
    union_presentation, Choices, ConstructBounds, LargeSubact,
};
use actpres::random::{random_act, random_cover, random_monoid, random_subact};
use actpres::{FiniteAct, Letter, Subact};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEEDS: u64 = 25;

fn instance(seed: u64) -> (ChaCha8Rng, FiniteAct) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_monoid(&mut rng, 6);
    let act = random_act(&mut rng, &m, 12);
    (rng, act)
}

#[test]
fn rees_quotient_matches_oracle() {
    for seed in 0..SEEDS {
        let (mut rng, act) = instance(seed);
        let sub = random_subact(&mut rng, &act);
        let (pres, images) = present(&act, style(seed), "x");
        let interp = Interpretation::new(&act, images.clone());
        let b_gens: Vec<_> = subact_generators(&act, &sub)
            .into_iter()
            .map(|b| witness(&act, &images, b))
            .collect();
        let trivial = trivial_letters_presentation(act.monoid(), "z").unwrap();
        let c = rees_quotient_presentation(&pres, &interp, &sub, &b_gens, &trivial).unwrap();
        let target = rees_quotient(&act, &sub).unwrap();
        let mut out: Vec<usize> = images
            .iter()
            .filter(|&&v| !sub.contains(v))
            .map(|&v| target.projection[v])
            .collect();
        out.push(target.zero);
        let v = c.presentation.verify(&target.act, &out).unwrap();
        assert!(v.holds(), "seed {seed}: {v:?}\n{}", c.transcript());
    }
}

#[test]
fn rees_quotient_by_everything_is_trivial() {
    let (_, act) = instance(3);
    let (pres, images) = present(&act, style(1), "x");
    let interp = Interpretation::new(&act, images.clone());
    let sub = Subact::whole(&act);
    let b_gens: Vec<_> = (0..images.len() as Letter).map(actpres::FreeActElement::generator).collect();
    let trivial = trivial_letters_presentation(act.monoid(), "z").unwrap();
    let c = rees_quotient_presentation(&pres, &interp, &sub, &b_gens, &trivial).unwrap();
    assert_eq!(c.presentation.generators().len(), 1);
    let o = actpres::act::act_from_presentation(&c.presentation).unwrap();
    assert_eq!(o.act.len(), 1);
}

#[test]
fn extension_matches_oracle() {
    for seed in 0..SEEDS {
        let (mut rng, act) = instance(100 + seed);
        let sub = random_subact(&mut rng, &act);
        let (pb, b_images) = present_subact(&act, &sub, "b");
        let q = rees_quotient(&act, &sub).unwrap();
        let (pq, q_local) = present(&q.act, style(seed), "q");
        let zero = q_local.iter().position(|&v| v == q.zero).map(|i| i as Letter);
        let q_images: Vec<usize> = q_local
            .iter()
            .map(|&v| if v == q.zero { 0 } else { q.projection.iter().position(|&p| p == v).unwrap() })
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
        .unwrap();
        let mut out = b_images;
        for (i, v) in q_images.into_iter().enumerate() {
            if Some(i as Letter) != zero {
                out.push(v);
            }
        }
        let v = c.presentation.verify(&act, &out).unwrap();
        assert!(v.holds(), "seed {seed}: {v:?}\n{}", c.transcript());
    }
}

#[test]
fn extension_of_a_disjoint_complement_has_no_s2() {
    // A = B ⊔ C with C a subact: nothing outside B ever reaches B
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let m = random_monoid(&mut rng, 6);
    let part = actpres::random::regular_act(&m);
    let act = actpres::random::disjoint_union(&[part.clone(), part.clone()]);
    let sub = Subact::generated(&act, &[0]).unwrap();
    let (pb, b_images) = present_subact(&act, &sub, "b");
    let q = rees_quotient(&act, &sub).unwrap();
    let (pq, q_local) = present(&q.act, common::style(1), "q");
    let zero = q_local.iter().position(|&v| v == q.zero).map(|i| i as Letter);
    let q_images: Vec<usize> = q_local
        .iter()
        .map(|&v| if v == q.zero { 0 } else { q.projection.iter().position(|&p| p == v).unwrap() })
        .collect();
    let c = extension_presentation(
        &pb,
        &pq,
        zero,
        &act,
        b_images,
        q_images,
        &sub,
        &Choices::new(),
        ConstructBounds::default(),
    )
    .unwrap();
    assert_eq!(c.count("S2"), 0);
}

#[test]
fn union_matches_oracle() {
    for seed in 0..SEEDS {
        let (mut rng, act) = instance(200 + seed);
        let (a, b) = random_cover(&mut rng, &act);
        let (pa, a_images) = present_subact(&act, &a, "a");
        let (pb, b_images) = present_subact(&act, &b, "b");
        let u_set = match a.intersection(&b) {
            Some(i) => subact_generators(&act, &i),
            None => Vec::new(),
        };
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
        .unwrap();
        assert_eq!(c.count("T"), u_set.len());
        let mut out = a_images;
        out.extend(b_images);
        let v = c.presentation.verify(&act, &out).unwrap();
        assert!(v.holds(), "seed {seed}: {v:?}\n{}", c.transcript());
    }
}

#[test]
fn union_component_matches_oracle() {
    for seed in 0..SEEDS {
        let (mut rng, act) = instance(300 + seed);
        let (a, b) = random_cover(&mut rng, &act);
        let (pc, c_images) = present(&act, style(seed), "z");
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
        .unwrap();
        let mut values: Vec<usize> = c_images.iter().copied().filter(|&v| !b.contains(v)).collect();
        if let Some((_, imgs)) = &inter {
            values.extend(imgs.iter().copied());
        }
        let (local, _) = a.to_act(&act);
        let v = c.presentation.verify(&local, &localize(&act, &a, &values)).unwrap();
        assert!(v.holds(), "seed {seed}: {v:?}\n{}", c.transcript());
    }
}

#[test]
fn intersection_generators_generate_the_intersection() {
    for seed in 0..SEEDS {
        let (mut rng, act) = instance(400 + seed);
        let (a, b) = random_cover(&mut rng, &act);
        let (pa, a_images) = present_subact(&act, &a, "a");
        let (pb, b_images) = present_subact(&act, &b, "b");
        let u_set = a.intersection(&b).map(|i| subact_generators(&act, &i)).unwrap_or_default();
        let c = union_presentation(
            &pa,
            &pb,
            &act,
            a_images.clone(),
            b_images,
            &u_set,
            &Choices::new(),
            ConstructBounds::default(),
        )
        .unwrap();
        let x_side: Vec<Letter> = (0..a_images.len() as Letter).collect();
        let u = intersection_generators(&c.presentation, &x_side);
        let values: Vec<usize> = u.iter().map(|e| act.act_word(a_images[e.generator as usize], &e.word)).collect();
        match a.intersection(&b) {
            None => assert!(values.is_empty(), "seed {seed}"),
            Some(i) => assert_eq!(Subact::generated(&act, &values).unwrap(), i, "seed {seed}"),
        }
    }
}

#[test]
fn subact_presentation_matches_oracle() {
    for seed in 0..SEEDS {
        let (mut rng, act) = instance(500 + seed);
        let sub = random_subact(&mut rng, &act);
        let (pres, images) = present(&act, style(seed), "x");
        let interp = Interpretation::new(&act, images.clone());
        let gens = subact_generators(&act, &sub);
        let y: Vec<_> = gens
            .iter()
            .enumerate()
            .map(|(i, &g)| (format!("y{i}"), witness(&act, &images, g)))
            .collect();
        let c = subact_presentation(&pres, &interp, &sub, &y, &Choices::new(), ConstructBounds::default()).unwrap();
        assert!(c.gaps.is_empty());
        let (local, _) = sub.to_act(&act);
        let v = c.presentation.verify(&local, &localize(&act, &sub, &gens)).unwrap();
        assert!(v.holds(), "seed {seed}: {v:?}\n{}", c.transcript());
    }
}

#[test]
fn large_subact_matches_oracle() {
    for seed in 0..SEEDS {
        let (mut rng, act) = instance(600 + seed);
        let sub = random_subact(&mut rng, &act);
        let (pres, images) = present(&act, style(seed), "x");
        let ctx = LargeSubact {
            presentation: &pres,
            ambient: Interpretation::new(&act, images),
            member: &sub,
            bounds: ConstructBounds::default(),
        };
        let gens = large_subact_generators(&ctx).unwrap();
        assert_eq!(Subact::generated(&act, &gens.images).unwrap(), sub, "seed {seed}");
        let c = large_subact_presentation(&ctx, &gens).unwrap();
        let (local, _) = sub.to_act(&act);
        let v = c.presentation.verify(&local, &localize(&act, &sub, &gens.images)).unwrap();
        assert!(v.holds(), "seed {seed}: {v:?}\n{}", c.transcript());
    }
}

#[test]
fn large_subact_of_everything_keeps_the_generators() {
    let (_, act) = instance(9);
    let (pres, images) = present(&act, style(2), "x");
    let sub = Subact::whole(&act);
    let ctx = LargeSubact {
        presentation: &pres,
        ambient: Interpretation::new(&act, images.clone()),
        member: &sub,
        bounds: ConstructBounds::default(),
    };
    let gens = large_subact_generators(&ctx).unwrap();
    assert!(gens.complement.is_empty());
    assert_eq!(gens.images, images);
}

#[test]
fn random_instances_respect_size_limits() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let m = random_monoid(&mut rng, 6);
        assert!(m.as_finite().unwrap().size() <= 6);
        let act = random_act(&mut rng, &m, 12);
        assert!(act.len() <= 12);
        let _ = rng.gen::<u8>();
    }
}
