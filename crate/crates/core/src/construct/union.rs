use super::{
    chosen, decide, find_witness, join_alphabets, search_words, Choices, ConstructBounds,
    ConstructError, Construction, Emitter,
};
use crate::act::{ActModel, Interpretation, Membership};
use crate::monoid::Letter;
use crate::presentation::{ActPresentation, FreeActElement, PresentationError};

/// Presentation of `C = A ∪ B` on `X ∪ Y` from `<X | R>` for `A`, `<Y | S>`
/// for `B` and a generating set `u_set` of `A ∩ B` (empty when disjoint).
///
/// Emits `R`, `S` and `T = {ρ_X(u) = ρ_Y(u)}`, with `ρ_X(u) ∈ F_X` and
/// `ρ_Y(u) ∈ F_Y` the least witnesses unless overridden.
#[allow(clippy::too_many_arguments)]
pub fn union_presentation<A: ActModel>(
    pres_a: &ActPresentation,
    pres_b: &ActPresentation,
    model: &A,
    a_images: Vec<A::Value>,
    b_images: Vec<A::Value>,
    u_set: &[A::Value],
    choices: &Choices,
    bounds: ConstructBounds,
) -> Result<Construction, ConstructError> {
    if pres_a.monoid() != pres_b.monoid() {
        return Err(PresentationError::MonoidMismatch.into());
    }
    let gens = join_alphabets(pres_a, &[pres_a.generators().names(), pres_b.generators().names()])?;
    let nx = pres_a.generators().len() as Letter;
    let ny = pres_b.generators().len() as Letter;
    let mut images = a_images;
    images.extend(b_images);
    let interp = Interpretation::new(model, images);
    let out_pres = ActPresentation::new(pres_a.monoid().clone(), gens, Vec::new())?;
    let shift = |e: &FreeActElement| FreeActElement::new(e.generator + nx, e.word.clone());
    let mut emit = Emitter::new();
    for r in pres_a.relations() {
        emit.push_verbatim("R", r.lhs.clone(), r.rhs.clone());
    }
    for r in pres_b.relations() {
        emit.push_verbatim("S", shift(&r.lhs), shift(&r.rhs));
    }
    let words = search_words(&out_pres, bounds.witness_len);
    let x_letters: Vec<Letter> = (0..nx).collect();
    let y_letters: Vec<Letter> = (nx..nx + ny).collect();
    let mut used = Vec::new();
    for u in u_set {
        let key = model.describe(u);
        let mut pick = |kind: &str, allowed: &[Letter]| -> Result<FreeActElement, ConstructError> {
            let w = match chosen(choices, kind, &key, &out_pres, &interp, allowed, u)? {
                Some(w) => w,
                None => find_witness(&interp, allowed, &words, u)
                    .ok_or_else(|| ConstructError::NoWitness(format!("{kind} of {key}")))?,
            };
            used.push((kind.to_string(), key.clone(), out_pres.render_element(&w)));
            Ok(w)
        };
        let rx = pick("rho_x", &x_letters)?;
        let ry = pick("rho_y", &y_letters)?;
        emit.push_verbatim("T", rx, ry);
    }
    Ok(Construction {
        name: "union",
        presentation: out_pres.with_relations(emit.relations)?,
        tags: emit.tags,
        choices: used,
        gaps: Vec::new(),
        notes: Vec::new(),
    })
}

/// Presentation of the component `A` of `C = A ∪ B` on `(Z \ B) ∪ U`, from a
/// presentation `<Z | R>` of `C` and, when `A ∩ B` is non-empty, a
/// presentation `<U | S>` of `A ∩ B` with the images of `U` in `C`.
///
/// With `Y = Z \ B` and `Y' = Z ∩ B` it emits `R1` (relations of `R` inside
/// `F_Y`), `R2` (`u = w_u` when the chosen `w_u` lies in `F_Y`), `R3`
/// (`u = ρ_U(u)` for sides `u ∈ F_Y` of `R` related to a side in `F_{Y'}`)
/// and `S`.
#[allow(clippy::too_many_arguments)]
pub fn union_component_presentation<A: ActModel, B: Membership<A::Value>>(
    pres_c: &ActPresentation,
    model: &A,
    c_images: Vec<A::Value>,
    member_b: &B,
    intersection: Option<(&ActPresentation, Vec<A::Value>)>,
    choices: &Choices,
    bounds: ConstructBounds,
) -> Result<Construction, ConstructError> {
    let zs = pres_c.generators();
    let c_interp = Interpretation::new(model, c_images.clone());
    let mut y: Vec<Letter> = Vec::new();
    for z in zs.letters() {
        if !decide(member_b, &c_interp.images[z as usize], || format!("generator {}", zs.name(z)))? {
            y.push(z);
        }
    }
    let in_y = |e: &FreeActElement| y.contains(&e.generator);
    let y_names: Vec<String> = y.iter().map(|&z| zs.name(z).to_string()).collect();
    let (u_names, u_images, s_rels) = match &intersection {
        Some((p, imgs)) => {
            if p.monoid() != pres_c.monoid() {
                return Err(PresentationError::MonoidMismatch.into());
            }
            (p.generators().names().to_vec(), imgs.clone(), p.relations().to_vec())
        }
        None => (Vec::new(), Vec::new(), Vec::new()),
    };
    let gens = join_alphabets(pres_c, &[&y_names, &u_names])?;
    let ny = y.len() as Letter;
    let nu = u_names.len() as Letter;
    let mut images: Vec<A::Value> = y.iter().map(|&z| c_images[z as usize].clone()).collect();
    images.extend(u_images.iter().cloned());
    let interp = Interpretation::new(model, images);
    let out_pres = ActPresentation::new(pres_c.monoid().clone(), gens, Vec::new())?;
    let to_local = |e: &FreeActElement| {
        let i = y.iter().position(|&z| z == e.generator).expect("side in F_Y");
        FreeActElement::new(i as Letter, e.word.clone())
    };
    let words = search_words(&out_pres, bounds.witness_len);
    let z_letters: Vec<Letter> = zs.letters().collect();
    let u_letters: Vec<Letter> = (ny..ny + nu).collect();
    let mut emit = Emitter::new();
    let mut used = Vec::new();

    for r in pres_c.relations() {
        if in_y(&r.lhs) && in_y(&r.rhs) {
            emit.push_verbatim("R1", to_local(&r.lhs), to_local(&r.rhs));
        }
    }
    for (k, u_value) in u_images.iter().enumerate() {
        let key = u_names[k].clone();
        let w = match chosen(choices, "w_u", &key, pres_c, &c_interp, &z_letters, u_value)? {
            Some(w) => w,
            None => find_witness(&c_interp, &z_letters, &words, u_value)
                .ok_or_else(|| ConstructError::NoWitness(format!("w_u of {key}")))?,
        };
        used.push(("w_u".to_string(), key, pres_c.render_element(&w)));
        if in_y(&w) {
            emit.push_verbatim("R2", FreeActElement::generator(ny + k as Letter), to_local(&w));
        }
    }
    for r in pres_c.relations() {
        for (u, v) in [(&r.lhs, &r.rhs), (&r.rhs, &r.lhs)] {
            if !in_y(u) || in_y(v) {
                continue;
            }
            let local = to_local(u);
            let target = interp.eval(&local);
            let key = pres_c.render_element(u);
            let w = match chosen(choices, "rho_u", &key, &out_pres, &interp, &u_letters, &target)? {
                Some(w) => w,
                None => find_witness(&interp, &u_letters, &words, &target)
                    .ok_or_else(|| ConstructError::NoWitness(format!("rho_u of {key}")))?,
            };
            used.push(("rho_u".to_string(), key, out_pres.render_element(&w)));
            emit.push_verbatim("R3", local, w);
        }
    }
    for r in &s_rels {
        let shift = |e: &FreeActElement| FreeActElement::new(e.generator + ny, e.word.clone());
        emit.push_verbatim("S", shift(&r.lhs), shift(&r.rhs));
    }
    Ok(Construction {
        name: "union-component",
        presentation: out_pres.with_relations(emit.relations)?,
        tags: emit.tags,
        choices: used,
        gaps: Vec::new(),
        notes: Vec::new(),
    })
}

/// Sides `u ∈ F_X` of relations of `<X, Y | R>` paired with a side in
/// `F_Y`, where `x_side` lists the generators of `X`. They generate `A ∩ B`.
pub fn intersection_generators(pres: &ActPresentation, x_side: &[Letter]) -> Vec<FreeActElement> {
    let in_x = |e: &FreeActElement| x_side.contains(&e.generator);
    let mut out: Vec<FreeActElement> = Vec::new();
    for r in pres.relations() {
        for (u, v) in [(&r.lhs, &r.rhs), (&r.rhs, &r.lhs)] {
            if in_x(u) && !in_x(v) {
                let c = pres.canonical(u);
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out
}
