use std::sync::Arc;

use super::{
    chosen, decide, find_witness, join_alphabets, search_words, Choices, ConstructBounds,
    ConstructError, Construction, Emitter,
};
use crate::act::{fresh_name, ActModel, Interpretation, Membership};
use crate::monoid::{Letter, Monoid, Word};
use crate::presentation::{ActPresentation, FreeActElement, PresentationError};

/// `<name | name·s = name (s a monoid letter)>`, a presentation of the
/// one-element act over any monoid generated by its letters.
pub fn trivial_letters_presentation(monoid: &Arc<Monoid>, name: &str) -> Result<ActPresentation, PresentationError> {
    let rels = monoid
        .alphabet()
        .letters()
        .map(|s| {
            crate::presentation::Relation::new(
                FreeActElement::new(0, Word::letter(s)),
                FreeActElement::generator(0),
            )
        })
        .collect();
    ActPresentation::with_names(monoid.clone(), [name], rels)
}

/// Presentation of `A/B` on `(X \ B) ∪ {0}` from a presentation `<X | R>` of
/// `A`, elements `w_y ∈ F_X` generating `B`, and a presentation `<0 | S>` of
/// the one-element act (its single generator is renamed to the new zero).
///
/// Emits `R1`: relations of `R` whose left side lies outside `B`; `R2`:
/// `u = 0` for every side `u ∈ F_{X\B}` of `R ∪ {y = w_y}` lying in `B`; and `S`.
pub fn rees_quotient_presentation<A: ActModel, B: Membership<A::Value>>(
    pres: &ActPresentation,
    ambient: &Interpretation<'_, A>,
    member: &B,
    b_generators: &[FreeActElement],
    trivial: &ActPresentation,
) -> Result<Construction, ConstructError> {
    if trivial.generators().len() != 1 {
        return Err(ConstructError::Refused("the trivial act presentation needs exactly one generator".into()));
    }
    if trivial.monoid() != pres.monoid() {
        return Err(PresentationError::MonoidMismatch.into());
    }
    let gens = pres.generators();
    let mut outside: Vec<Letter> = Vec::new();
    for x in gens.letters() {
        if !decide(member, &ambient.images[x as usize], || format!("generator {}", gens.name(x)))? {
            outside.push(x);
        }
    }
    for w in b_generators {
        pres.check_element(w)?;
        if !decide(member, &ambient.eval(w), || pres.render_element(w))? {
            return Err(ConstructError::InvalidWitness(format!("w_y = {}", pres.render_element(w))));
        }
    }
    let mut names: Vec<String> = outside.iter().map(|&x| gens.name(x).to_string()).collect();
    let mut taken = names.clone();
    taken.extend(pres.monoid().alphabet().names().iter().cloned());
    let zero_name = fresh_name(crate::act::ZERO_NAME, &taken);
    names.push(zero_name.clone());
    let new_gens = join_alphabets(pres, &[&names])?;
    let zero = (names.len() - 1) as Letter;
    let renumber = |e: &FreeActElement| -> Option<FreeActElement> {
        outside
            .iter()
            .position(|&x| x == e.generator)
            .map(|i| FreeActElement::new(i as Letter, e.word.clone()))
    };
    let out_pres = ActPresentation::new(pres.monoid().clone(), new_gens, Vec::new())?;
    let mut emit = Emitter::new();

    for r in pres.relations() {
        let lhs_value = ambient.eval(&r.lhs);
        if !decide(member, &lhs_value, || pres.render_element(&r.lhs))? {
            match (renumber(&r.lhs), renumber(&r.rhs)) {
                (Some(l), Some(rr)) => emit.push(&out_pres, "R1", l, rr),
                _ => {
                    return Err(ConstructError::Refused(format!(
                        "relation {} mixes generators inside and outside the subact",
                        pres.render_relation(r)
                    )))
                }
            }
        }
    }
    let sides = pres
        .relations()
        .iter()
        .flat_map(|r| [&r.lhs, &r.rhs])
        .chain(b_generators.iter());
    for u in sides {
        let Some(local) = renumber(u) else { continue };
        if decide(member, &ambient.eval(u), || pres.render_element(u))? {
            emit.push(&out_pres, "R2", local, FreeActElement::generator(zero));
        }
    }
    for r in trivial.relations() {
        emit.push_verbatim(
            "S",
            FreeActElement::new(zero, r.lhs.word.clone()),
            FreeActElement::new(zero, r.rhs.word.clone()),
        );
    }
    let choices = b_generators
        .iter()
        .enumerate()
        .map(|(i, w)| ("w_y".to_string(), format!("y{i}"), pres.render_element(w)))
        .collect();
    Ok(Construction {
        name: "rees-quotient",
        presentation: out_pres.with_relations(emit.relations)?,
        tags: emit.tags,
        choices,
        gaps: Vec::new(),
        notes: vec![format!("zero generator is `{zero_name}`")],
    })
}

/// Presentation of `A` on `X ∪ Y'` from a presentation `<X | R>` of a subact
/// `B` and a presentation `<Y | S>` of `A/B`, where `zero` names the
/// generator of `Y` standing for `0`, if any.
///
/// `b_images` and `q_images` place the generators in `A` (the entry for
/// `zero` is ignored). Emits `R`, `S1` (relations of `S` whose left side lies
/// outside `B`) and `S2` (`u = α_u` for sides `u ∈ F_{Y'}` of `S` lying in
/// `B`, plus `z = α_z` for one fixed such `z`).
#[allow(clippy::too_many_arguments)]
pub fn extension_presentation<A: ActModel, B: Membership<A::Value>>(
    pres_b: &ActPresentation,
    pres_q: &ActPresentation,
    zero: Option<Letter>,
    model: &A,
    b_images: Vec<A::Value>,
    q_images: Vec<A::Value>,
    member: &B,
    choices: &Choices,
    bounds: ConstructBounds,
) -> Result<Construction, ConstructError> {
    if pres_b.monoid() != pres_q.monoid() {
        return Err(PresentationError::MonoidMismatch.into());
    }
    let xs = pres_b.generators();
    let ys = pres_q.generators();
    let y_prime: Vec<Letter> = ys.letters().filter(|&y| Some(y) != zero).collect();
    let y_names: Vec<String> = y_prime.iter().map(|&y| ys.name(y).to_string()).collect();
    let gens = join_alphabets(pres_b, &[xs.names(), &y_names])?;
    let nx = xs.len() as Letter;
    let mut images = b_images;
    for &y in &y_prime {
        images.push(q_images[y as usize].clone());
    }
    let interp = Interpretation::new(model, images);
    let out_pres = ActPresentation::new(pres_b.monoid().clone(), gens, Vec::new())?;
    for x in 0..nx {
        if !decide(member, &interp.images[x as usize], || format!("generator {}", xs.name(x)))? {
            return Err(ConstructError::InvalidWitness(format!("generator {} lies outside the subact", xs.name(x))));
        }
    }
    for (k, &y) in y_prime.iter().enumerate() {
        if decide(member, &interp.images[xs.len() + k], || format!("generator {}", ys.name(y)))? {
            return Err(ConstructError::InvalidWitness(format!("generator {} lies inside the subact", ys.name(y))));
        }
    }
    // F_{Y'} elements of the quotient presentation, in the joint numbering
    let lift = |e: &FreeActElement| -> Option<FreeActElement> {
        y_prime
            .iter()
            .position(|&y| y == e.generator)
            .map(|k| FreeActElement::new(nx + k as Letter, e.word.clone()))
    };
    let x_letters: Vec<Letter> = (0..nx).collect();
    let words = search_words(&out_pres, bounds.witness_len);
    let mut emit = Emitter::new();
    let mut used = Vec::new();

    for r in pres_b.relations() {
        emit.push_verbatim("R", r.lhs.clone(), r.rhs.clone());
    }
    for r in pres_q.relations() {
        let Some(l) = lift(&r.lhs) else { continue };
        if !decide(member, &interp.eval(&l), || pres_q.render_element(&r.lhs))? {
            let rr = lift(&r.rhs).ok_or_else(|| {
                ConstructError::Refused(format!("relation {} equates a non-zero element with 0", pres_q.render_relation(r)))
            })?;
            emit.push_verbatim("S1", l, rr);
        }
    }
    let mut alpha = |u: &FreeActElement, kind: &str, emit: &mut Emitter| -> Result<(), ConstructError> {
        let target = interp.eval(u);
        let key = out_pres.render_element(u);
        let a = match chosen(choices, kind, &key, &out_pres, &interp, &x_letters, &target)? {
            Some(a) => a,
            None => find_witness(&interp, &x_letters, &words, &target)
                .ok_or_else(|| ConstructError::NoWitness(format!("{kind} of {key}")))?,
        };
        used.push((kind.to_string(), key, out_pres.render_element(&a)));
        emit.push_verbatim("S2", u.clone(), a);
        Ok(())
    };
    let mut zero_words = Vec::new();
    for r in pres_q.relations() {
        for u in [&r.lhs, &r.rhs] {
            let Some(l) = lift(u) else { continue };
            if decide(member, &interp.eval(&l), || pres_q.render_element(u))? {
                zero_words.push(l);
            }
        }
    }
    for u in &zero_words {
        alpha(u, "alpha", &mut emit)?;
    }
    // z: one word of F_{Y'} representing an element of B, if there is any
    let y_letters: Vec<Letter> = (nx..nx + y_prime.len() as Letter).collect();
    let mut z = zero_words.first().cloned();
    if z.is_none() {
        'search: for w in &words {
            for &y in &y_letters {
                let e = FreeActElement::new(y, w.clone());
                if decide(member, &interp.eval(&e), || out_pres.render_element(&e))? {
                    z = Some(e);
                    break 'search;
                }
            }
        }
    }
    let mut notes = Vec::new();
    match &z {
        Some(z) => alpha(z, "z", &mut emit)?,
        None => notes.push("no word over Y' reaches the subact; S2 is empty".to_string()),
    }
    Ok(Construction {
        name: "extension",
        presentation: out_pres.with_relations(emit.relations)?,
        tags: emit.tags,
        choices: used,
        gaps: Vec::new(),
        notes,
    })
}
