use super::{ActPresentation, FreeActElement, PresentationError, Relation};
use crate::act::{act_from_presentation, ActError, FiniteAct};
use crate::monoid::{is_valid_name, Alphabet, Letter, Word};

/// The three generic presentations of a finite act.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalStyle {
    /// `<A | a·m = am (a ∈ A, m ∈ M)>`
    AllMultipliers,
    /// `<X | x·m = y·n (xm = yn)>` over a generating set `X`
    GeneratorPairs,
    /// `<A | a·s = as (a ∈ A, s a monoid letter)>`
    Letters,
}

impl CanonicalStyle {
    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(CanonicalStyle::AllMultipliers),
            2 => Some(CanonicalStyle::GeneratorPairs),
            3 => Some(CanonicalStyle::Letters),
            _ => None,
        }
    }
}

/// Generator names for act elements: the element names when they are usable,
/// otherwise `e0, e1, ...` avoiding the monoid letters.
fn element_generators(act: &FiniteAct, elements: &[usize]) -> Alphabet {
    let letters = act.monoid().alphabet();
    let names: Vec<String> = elements.iter().map(|&a| act.name(a).to_string()).collect();
    let usable = names.iter().all(|n| is_valid_name(n) && !letters.contains_name(n));
    if usable {
        if let Ok(a) = Alphabet::new(names) {
            return a;
        }
    }
    let mut prefix = String::from("e");
    while (0..elements.len()).any(|i| letters.contains_name(&format!("{prefix}{i}"))) {
        prefix.push('e');
    }
    Alphabet::new((0..elements.len()).map(|i| format!("{prefix}{i}"))).expect("fresh names")
}

/// Builds the requested presentation of `act`, returning it with the image of
/// each generator.
pub fn canonical_presentation(
    act: &FiniteAct,
    style: CanonicalStyle,
) -> Result<(ActPresentation, Vec<usize>), PresentationError> {
    let monoid = act.monoid().clone();
    match style {
        CanonicalStyle::AllMultipliers => {
            let elements = monoid.elements().ok_or(ActError::InfiniteMonoid)?;
            let all: Vec<usize> = (0..act.len()).collect();
            let gens = element_generators(act, &all);
            let mut rels = Vec::new();
            for a in 0..act.len() {
                for m in &elements {
                    rels.push(Relation::new(
                        FreeActElement::new(a as Letter, m.clone()),
                        FreeActElement::generator(act.act_word(a, m) as Letter),
                    ));
                }
            }
            Ok((ActPresentation::new(monoid, gens, rels)?, all))
        }
        CanonicalStyle::GeneratorPairs => {
            let elements = monoid.elements().ok_or(ActError::InfiniteMonoid)?;
            let xs = act.greedy_generators();
            let gens = element_generators(act, &xs);
            let mut pairs: Vec<(FreeActElement, usize)> = Vec::new();
            for (i, &x) in xs.iter().enumerate() {
                for m in &elements {
                    pairs.push((FreeActElement::new(i as Letter, m.clone()), act.act_word(x, m)));
                }
            }
            let mut rels = Vec::new();
            for (i, (u, a)) in pairs.iter().enumerate() {
                for (v, b) in &pairs[i + 1..] {
                    if a == b {
                        rels.push(Relation::new(u.clone(), v.clone()));
                    }
                }
            }
            Ok((ActPresentation::new(monoid, gens, rels)?, xs))
        }
        CanonicalStyle::Letters => {
            let all: Vec<usize> = (0..act.len()).collect();
            let gens = element_generators(act, &all);
            let mut rels = Vec::new();
            for a in 0..act.len() {
                for s in monoid.alphabet().letters() {
                    rels.push(Relation::new(
                        FreeActElement::new(a as Letter, Word::letter(s)),
                        FreeActElement::generator(act.act_letter(a, s) as Letter),
                    ));
                }
            }
            Ok((ActPresentation::new(monoid, gens, rels)?, all))
        }
    }
}

/// From a presentation of an act with a zero represented by the generator
/// `zero`, the presentation `<0 | 0·m = 0·n : (x·m, y·n) ∈ R>` of the
/// one-element act. Over a finite monoid the zero is checked first.
pub fn trivial_act_presentation(
    pres: &ActPresentation,
    zero: Letter,
) -> Result<ActPresentation, PresentationError> {
    if zero as usize >= pres.generators().len() {
        return Err(PresentationError::UnknownGenerator(format!("#{zero}")));
    }
    if pres.monoid().is_finite() {
        let o = act_from_presentation(pres)?;
        let z = o.generator_images[zero as usize];
        if !o.act.zeros().contains(&z) {
            return Err(ActError::NotAnAct(format!(
                "generator {} does not represent a zero",
                pres.generators().name(zero)
            ))
            .into());
        }
    }
    let rels = pres
        .relations()
        .iter()
        .map(|r| {
            Relation::new(
                FreeActElement::new(0, r.lhs.word.clone()),
                FreeActElement::new(0, r.rhs.word.clone()),
            )
        })
        .collect();
    let name = pres.generators().name(zero).to_string();
    ActPresentation::with_names(pres.monoid().clone(), [name], rels)
}
