use std::sync::Arc;

use super::{congruence_closure, ActCongruence, ActError, FiniteAct, Homomorphism};
use crate::monoid::{FiniteMonoid, Monoid, Word};
use crate::presentation::{evaluate, ActPresentation, FreeActElement};

fn finite(monoid: &Monoid) -> Result<&FiniteMonoid, ActError> {
    monoid.as_finite().ok_or(ActError::InfiniteMonoid)
}

/// The free act on `names` over a finite monoid. Element `x·e` has index
/// `x·|M| + e` and is named `x` or `x_w` with `w` the compact representative.
pub fn free_act(monoid: &Arc<Monoid>, names: &[String]) -> Result<FiniteAct, ActError> {
    let m = finite(monoid)?;
    if names.is_empty() {
        return Err(ActError::Empty);
    }
    let n = m.size();
    let mut elem_names = Vec::with_capacity(names.len() * n);
    let mut action = Vec::with_capacity(names.len() * n);
    for (x, name) in names.iter().enumerate() {
        for e in 0..n {
            let rep = m.representative(e);
            elem_names.push(if rep.is_empty() {
                name.clone()
            } else {
                format!("{name}_{}", m.alphabet().render_compact(rep))
            });
            action.push(
                m.alphabet()
                    .letters()
                    .map(|l| x * n + m.mul(e, m.letter_element(l)))
                    .collect(),
            );
        }
    }
    FiniteAct::new(monoid.clone(), elem_names, action)
}

/// The act defined by a presentation over a finite monoid, built as `F_X/<R>`.
#[derive(Clone, Debug)]
pub struct PresentedAct {
    pub act: FiniteAct,
    pub free: FiniteAct,
    /// Free act index to class index in `act`.
    pub projection: Vec<usize>,
    /// Class of `x·1` for each generator `x`.
    pub generator_images: Vec<usize>,
    /// The congruence generated by the relations, on the free act.
    pub congruence: ActCongruence,
    monoid_size: usize,
}

impl PresentedAct {
    pub fn generator_of(&self, i: usize) -> usize {
        i / self.monoid_size
    }

    pub fn word_of(&self, i: usize) -> Word {
        let m = self.free.monoid().as_finite().expect("oracle monoids are finite");
        m.representative(i % self.monoid_size).clone()
    }

    pub fn element_of(&self, i: usize) -> FreeActElement {
        FreeActElement::new(self.generator_of(i) as u32, self.word_of(i))
    }

    pub fn index_of(&self, e: &FreeActElement) -> usize {
        let m = self.free.monoid().as_finite().expect("oracle monoids are finite");
        e.generator as usize * self.monoid_size + m.eval(&e.word)
    }

    /// Whether two free act elements are equal in the presented act.
    pub fn equal(&self, u: &FreeActElement, v: &FreeActElement) -> bool {
        self.congruence.related(self.index_of(u), self.index_of(v))
    }
}

/// The oracle: materialises `F_X` and closes the relations into a congruence.
pub fn act_from_presentation(pres: &ActPresentation) -> Result<PresentedAct, ActError> {
    let m = finite(pres.monoid())?;
    let monoid_size = m.size();
    let free = free_act(pres.monoid(), pres.generators().names())?;
    let index = |e: &FreeActElement| e.generator as usize * monoid_size + m.eval(&e.word);
    let seed: Vec<(usize, usize)> = pres
        .relations()
        .iter()
        .map(|r| (index(&r.lhs), index(&r.rhs)))
        .collect();
    let congruence = congruence_closure(&free, &seed);
    let (act, projection) = free.quotient(&congruence);
    let generator_images = (0..pres.generators().len())
        .map(|x| projection[x * monoid_size + m.identity()])
        .collect();
    Ok(PresentedAct {
        act,
        free,
        projection,
        generator_images,
        congruence,
        monoid_size,
    })
}

/// The homomorphism from the presented act to `target` sending each generator
/// to its image, if the target satisfies every relation.
pub fn induced_homomorphism(
    pres: &ActPresentation,
    target: &FiniteAct,
    images: &[usize],
) -> Result<(PresentedAct, Homomorphism), ActError> {
    if images.len() != pres.generators().len() {
        return Err(ActError::NotHomomorphism(format!(
            "expected {} generator images, got {}",
            pres.generators().len(),
            images.len()
        )));
    }
    if let Some(&bad) = images.iter().find(|&&a| a >= target.len()) {
        return Err(ActError::ForeignElement(bad));
    }
    for (index, r) in pres.relations().iter().enumerate() {
        let (l, rr) = (evaluate(target, images, &r.lhs), evaluate(target, images, &r.rhs));
        if l != rr {
            return Err(ActError::Violated {
                index,
                lhs: format!("{} = {}", pres.render_element(&r.lhs), target.name(l)),
                rhs: format!("{} = {}", pres.render_element(&r.rhs), target.name(rr)),
            });
        }
    }
    let oracle = act_from_presentation(pres)?;
    let mut map = vec![usize::MAX; oracle.act.len()];
    for i in 0..oracle.free.len() {
        let c = oracle.projection[i];
        if map[c] == usize::MAX {
            map[c] = target.act_word(images[oracle.generator_of(i)], &oracle.word_of(i));
        }
    }
    let hom = Homomorphism::new(&oracle.act, target, map)?;
    Ok((oracle, hom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::act::tests::semilattice;
    use crate::presentation::Relation;

    #[test]
    fn empty_relations_give_the_free_act() {
        let m = semilattice();
        let p = ActPresentation::with_names(m, ["x", "y"], vec![]).unwrap();
        let o = act_from_presentation(&p).unwrap();
        assert_eq!(o.act.len(), 4);
        assert_eq!(o.congruence, ActCongruence::identity(4));
        assert_eq!(o.act.names()[1], "x_e");
    }

    #[test]
    fn collapsing_relation() {
        let m = semilattice();
        let e = m.alphabet().parse_word("e").unwrap();
        let rel = Relation::new(
            FreeActElement::new(0, e),
            FreeActElement::new(0, Word::empty()),
        );
        let p = ActPresentation::with_names(m, ["x"], vec![rel]).unwrap();
        let o = act_from_presentation(&p).unwrap();
        assert_eq!(o.act.len(), 1);
    }

    #[test]
    fn induced_homomorphism_reports_violation() {
        let m = semilattice();
        let e = m.alphabet().parse_word("e").unwrap();
        let rel = Relation::new(FreeActElement::new(0, e), FreeActElement::new(0, Word::empty()));
        let p = ActPresentation::with_names(m.clone(), ["x"], vec![rel]).unwrap();
        let free = free_act(&m, &["p".to_string()]).unwrap();
        assert!(matches!(
            induced_homomorphism(&p, &free, &[0]),
            Err(ActError::Violated { index: 0, .. })
        ));
        // the fixed point p_e satisfies everything
        let (_, h) = induced_homomorphism(&p, &free, &[1]).unwrap();
        assert_eq!(h.map, vec![1]);
    }
}
