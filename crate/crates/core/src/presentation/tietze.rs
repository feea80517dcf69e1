use thiserror::Error;

use super::prover::{is_consequence, RSequence, SearchBounds, Verdict};
use super::{ActPresentation, FreeActElement, PresentationError, Relation};
use crate::act::act_from_presentation;
use crate::monoid::{Alphabet, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TietzeError {
    #[error("certificate for relation {index} does not replay: {reason}")]
    BadCertificate { index: usize, reason: String },
    #[error("certificate for relation {0} proves a different relation")]
    WrongEndpoints(usize),
    #[error("relation {0} could not be proved: {1}")]
    NotProved(usize, String),
    #[error("relation index {0} out of range")]
    NoSuchRelation(usize),
    #[error("generator `{0}` has no defining relation `x = w` with w avoiding removed generators")]
    NoDefiningRelation(String),
    #[error("new generator `{0}` is already in use")]
    NameTaken(String),
    #[error("the result defines a different act")]
    ActChanged,
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// An elementary Tietze transformation with its payload.
#[derive(Clone, Debug)]
pub enum TietzeMove {
    /// T1: add relations, each with a certificate over the current relations.
    AddRelations(Vec<(Relation, RSequence)>),
    /// T2: delete relations by index; certificates refer to the remaining
    /// relations, renumbered in their original order.
    RemoveRelations(Vec<(usize, RSequence)>),
    /// T3: add generators `y = w`.
    AddGenerators(Vec<(String, FreeActElement)>),
    /// T4: delete generators that have a defining relation `x = w`.
    RemoveGenerators(Vec<Letter>),
}

impl TietzeMove {
    /// T1 with certificates found by the prover.
    pub fn add_proved(
        pres: &ActPresentation,
        relations: Vec<Relation>,
        bounds: SearchBounds,
    ) -> Result<Self, TietzeError> {
        let mut out = Vec::new();
        for (i, r) in relations.into_iter().enumerate() {
            match is_consequence(pres, &r.lhs, &r.rhs, bounds) {
                Verdict::Proved(seq) => out.push((r, seq)),
                v => return Err(TietzeError::NotProved(i, v.to_string())),
            }
        }
        Ok(TietzeMove::AddRelations(out))
    }

    /// T2 with certificates found by the prover.
    pub fn remove_proved(
        pres: &ActPresentation,
        indices: &[usize],
        bounds: SearchBounds,
    ) -> Result<Self, TietzeError> {
        let rest = without(pres, indices)?;
        let mut out = Vec::new();
        for &i in indices {
            let r = &pres.relations()[i];
            match is_consequence(&rest, &r.lhs, &r.rhs, bounds) {
                Verdict::Proved(seq) => out.push((i, seq)),
                v => return Err(TietzeError::NotProved(i, v.to_string())),
            }
        }
        Ok(TietzeMove::RemoveRelations(out))
    }
}

fn without(pres: &ActPresentation, indices: &[usize]) -> Result<ActPresentation, TietzeError> {
    if let Some(&bad) = indices.iter().find(|&&i| i >= pres.relations().len()) {
        return Err(TietzeError::NoSuchRelation(bad));
    }
    let kept = pres
        .relations()
        .iter()
        .enumerate()
        .filter(|(i, _)| !indices.contains(i))
        .map(|(_, r)| r.clone())
        .collect();
    Ok(pres.with_relations(kept)?)
}

fn check_certificate(
    pres: &ActPresentation,
    index: usize,
    rel: &Relation,
    seq: &RSequence,
) -> Result<(), TietzeError> {
    if pres.canonical(&seq.start) != pres.canonical(&rel.lhs) || pres.canonical(&seq.end) != pres.canonical(&rel.rhs) {
        return Err(TietzeError::WrongEndpoints(index));
    }
    seq.replay(pres)
        .map(|_| ())
        .map_err(|reason| TietzeError::BadCertificate { index, reason })
}

/// Applies one move. Over a finite monoid the result is checked against the
/// oracle to define the same act on the shared generators.
pub fn tietze_apply(pres: &ActPresentation, mv: &TietzeMove) -> Result<ActPresentation, TietzeError> {
    let out = match mv {
        TietzeMove::AddRelations(items) => {
            let mut rels = pres.relations().to_vec();
            for (i, (rel, seq)) in items.iter().enumerate() {
                pres.check_element(&rel.lhs)?;
                pres.check_element(&rel.rhs)?;
                check_certificate(pres, i, rel, seq)?;
                rels.push(rel.clone());
            }
            pres.with_relations(rels)?
        }
        TietzeMove::RemoveRelations(items) => {
            let indices: Vec<usize> = items.iter().map(|(i, _)| *i).collect();
            let rest = without(pres, &indices)?;
            for (i, seq) in items {
                check_certificate(&rest, *i, &pres.relations()[*i], seq)?;
            }
            rest
        }
        TietzeMove::AddGenerators(items) => {
            let mut gens = pres.generators().clone();
            let mut rels = pres.relations().to_vec();
            for (name, w) in items {
                pres.check_element(w)?;
                if gens.contains_name(name) {
                    return Err(TietzeError::NameTaken(name.clone()));
                }
                let y = gens.push(name.clone()).map_err(PresentationError::from)?;
                rels.push(Relation::new(FreeActElement::generator(y), w.clone()));
            }
            ActPresentation::new(pres.monoid().clone(), gens, rels)?
        }
        TietzeMove::RemoveGenerators(xs) => remove_generators(pres, xs)?,
    };
    if pres.monoid().is_finite() && !same_act(pres, &out)? {
        return Err(TietzeError::ActChanged);
    }
    Ok(out)
}

fn remove_generators(pres: &ActPresentation, xs: &[Letter]) -> Result<ActPresentation, TietzeError> {
    let removed = |g: Letter| xs.contains(&g);
    let mut defining: Vec<Option<(usize, FreeActElement)>> = vec![None; xs.len()];
    for (k, &x) in xs.iter().enumerate() {
        if x as usize >= pres.generators().len() {
            return Err(PresentationError::UnknownGenerator(format!("#{x}")).into());
        }
        let found = pres.relations().iter().enumerate().find_map(|(i, r)| {
            let bare = |e: &FreeActElement| e.generator == x && e.word.is_empty();
            if bare(&r.lhs) && !removed(r.rhs.generator) {
                Some((i, r.rhs.clone()))
            } else if bare(&r.rhs) && !removed(r.lhs.generator) {
                Some((i, r.lhs.clone()))
            } else {
                None
            }
        });
        match found {
            Some(d) => defining[k] = Some(d),
            None => {
                return Err(TietzeError::NoDefiningRelation(
                    pres.generators().name(x).to_string(),
                ))
            }
        }
    }
    let defining: Vec<(usize, FreeActElement)> = defining.into_iter().map(Option::unwrap).collect();
    let mut gens = Alphabet::default();
    let mut renumber = vec![None; pres.generators().len()];
    for g in pres.generators().letters() {
        if !removed(g) {
            renumber[g as usize] = Some(gens.push(pres.generators().name(g).to_string()).map_err(PresentationError::from)?);
        }
    }
    let substitute = |e: &FreeActElement| -> FreeActElement {
        match xs.iter().position(|&x| x == e.generator) {
            Some(k) => {
                let w = &defining[k].1;
                FreeActElement::new(renumber[w.generator as usize].expect("kept"), w.word.concat(&e.word))
            }
            None => FreeActElement::new(renumber[e.generator as usize].expect("kept"), e.word.clone()),
        }
    };
    let dropped: Vec<usize> = defining.iter().map(|(i, _)| *i).collect();
    let rels = pres
        .relations()
        .iter()
        .enumerate()
        .filter(|(i, _)| !dropped.contains(i))
        .map(|(_, r)| Relation::new(substitute(&r.lhs), substitute(&r.rhs)))
        .collect();
    Ok(ActPresentation::new(pres.monoid().clone(), gens, rels)?)
}

/// Whether two presentations over a finite monoid define the same act, with
/// generators matched by name: the shared generators must generate both acts
/// and induce the same kernel on their free act.
pub fn same_act(p: &ActPresentation, q: &ActPresentation) -> Result<bool, PresentationError> {
    if p.monoid() != q.monoid() {
        return Err(PresentationError::MonoidMismatch);
    }
    let shared: Vec<String> = p
        .generators()
        .names()
        .iter()
        .filter(|n| q.generators().contains_name(n))
        .cloned()
        .collect();
    if shared.is_empty() {
        return Ok(false);
    }
    let op = act_from_presentation(p)?;
    let oq = act_from_presentation(q)?;
    let images = |pres: &ActPresentation, o: &crate::act::PresentedAct| -> Vec<usize> {
        shared
            .iter()
            .map(|n| o.generator_images[pres.generators().lookup(n).expect("shared") as usize])
            .collect()
    };
    let (ip, iq) = (images(p, &op), images(q, &oq));
    if !op.act.is_generated_by(&ip) || !oq.act.is_generated_by(&iq) {
        return Ok(false);
    }
    let m = p.monoid().elements().expect("finite");
    let mut keys_p = Vec::new();
    let mut keys_q = Vec::new();
    for (k, _) in shared.iter().enumerate() {
        for w in &m {
            keys_p.push(op.act.act_word(ip[k], w));
            keys_q.push(oq.act.act_word(iq[k], w));
        }
    }
    Ok(crate::act::ActCongruence::from_keys(keys_p) == crate::act::ActCongruence::from_keys(keys_q))
}
