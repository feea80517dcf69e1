//! Act presentations, the consequence prover, Tietze moves and canonical presentations.

mod canonical;
mod prover;
mod tietze;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::act::{act_from_presentation, ActCongruence, ActError, FiniteAct};
use crate::monoid::{Alphabet, Letter, Monoid, MonoidError, Word};

pub use canonical::{canonical_presentation, trivial_act_presentation, CanonicalStyle};
pub use prover::{
    find_countermodel, is_consequence, parse_certificate, Disproof, Orientation, Prover,
    RSequence, SearchBounds, Step, Verdict,
};
pub use tietze::{same_act, tietze_apply, TietzeError, TietzeMove};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("generator `{0}` clashes with a monoid letter")]
    GeneratorClash(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Act(#[from] ActError),
    #[error("presentations are over different monoids")]
    MonoidMismatch,
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
}

/// An element `x·w` of the free act, with the monoid part kept as a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeActElement {
    pub generator: Letter,
    pub word: Word,
}

impl FreeActElement {
    pub fn new(generator: Letter, word: Word) -> Self {
        FreeActElement { generator, word }
    }

    pub fn generator(generator: Letter) -> Self {
        FreeActElement {
            generator,
            word: Word::empty(),
        }
    }

    /// `(x·w)·m = x·(wm)`, without normalising.
    pub fn times(&self, m: &Word) -> Self {
        FreeActElement {
            generator: self.generator,
            word: self.word.concat(m),
        }
    }
}

/// A defining relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: FreeActElement,
    pub rhs: FreeActElement,
}

impl Relation {
    pub fn new(lhs: FreeActElement, rhs: FreeActElement) -> Self {
        Relation { lhs, rhs }
    }

    pub fn reversed(&self) -> Relation {
        Relation {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
        }
    }
}

/// `<X | R>` over a monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActPresentation {
    monoid: Arc<Monoid>,
    generators: Alphabet,
    relations: Vec<Relation>,
}

impl ActPresentation {
    pub fn new(
        monoid: Arc<Monoid>,
        generators: Alphabet,
        relations: Vec<Relation>,
    ) -> Result<Self, PresentationError> {
        if generators.is_empty() {
            return Err(PresentationError::NoGenerators);
        }
        if let Some(clash) = generators
            .names()
            .iter()
            .find(|n| monoid.alphabet().contains_name(n))
        {
            return Err(PresentationError::GeneratorClash(clash.clone()));
        }
        let pres = ActPresentation {
            monoid,
            generators,
            relations: Vec::new(),
        };
        for r in &relations {
            pres.check_element(&r.lhs)?;
            pres.check_element(&r.rhs)?;
        }
        Ok(ActPresentation { relations, ..pres })
    }

    /// Convenience constructor from generator names.
    pub fn with_names<S: Into<String>>(
        monoid: Arc<Monoid>,
        names: impl IntoIterator<Item = S>,
        relations: Vec<Relation>,
    ) -> Result<Self, PresentationError> {
        let gens = Alphabet::new(names)?;
        Self::new(monoid, gens, relations)
    }

    pub fn check_element(&self, e: &FreeActElement) -> Result<(), PresentationError> {
        if e.generator as usize >= self.generators.len() {
            return Err(PresentationError::UnknownGenerator(format!("#{}", e.generator)));
        }
        self.monoid.check_word(&e.word)?;
        Ok(())
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.monoid
    }

    pub fn generators(&self) -> &Alphabet {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn generator(&self, name: &str) -> Result<Letter, PresentationError> {
        self.generators
            .lookup(name)
            .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))
    }

    /// Parses `x`, `x . 1` or `x . a b` into a free act element.
    pub fn parse_element(&self, text: &str) -> Result<FreeActElement, PresentationError> {
        let (g, w) = match text.split_once('.') {
            Some((g, w)) => (g.trim(), w),
            None => (text.trim(), ""),
        };
        let generator = self.generator(g)?;
        let word = self.monoid.alphabet().parse_word(w)?;
        Ok(FreeActElement { generator, word })
    }

    pub fn render_element(&self, e: &FreeActElement) -> String {
        let g = self.generators.name(e.generator);
        if e.word.is_empty() {
            g.to_string()
        } else {
            format!("{g} . {}", self.monoid.render(&e.word))
        }
    }

    pub fn render_relation(&self, r: &Relation) -> String {
        format!("{} = {}", self.render_element(&r.lhs), self.render_element(&r.rhs))
    }

    /// `x·w` with `w` replaced by its canonical representative.
    pub fn canonical(&self, e: &FreeActElement) -> FreeActElement {
        FreeActElement {
            generator: e.generator,
            word: self.monoid.canonical(&e.word),
        }
    }

    pub fn with_relations(&self, relations: Vec<Relation>) -> Result<Self, PresentationError> {
        ActPresentation::new(self.monoid.clone(), self.generators.clone(), relations)
    }

    /// Translates an element of another presentation's free act by generator name.
    pub fn import(&self, from: &ActPresentation, e: &FreeActElement) -> Result<FreeActElement, PresentationError> {
        let name = from.generators.name(e.generator);
        Ok(FreeActElement {
            generator: self.generator(name)?,
            word: e.word.clone(),
        })
    }

    /// Whether every relation holds in `act` under `images` (one image per generator).
    pub fn satisfies(&self, act: &FiniteAct, images: &[usize]) -> Result<bool, PresentationError> {
        Ok(self.first_violation(act, images)?.is_none())
    }

    /// The first relation that fails in `act` under `images`, if any.
    pub fn first_violation(
        &self,
        act: &FiniteAct,
        images: &[usize],
    ) -> Result<Option<usize>, PresentationError> {
        self.check_images(act, images)?;
        Ok(self.relations.iter().position(|r| {
            evaluate(act, images, &r.lhs) != evaluate(act, images, &r.rhs)
        }))
    }

    fn check_images(&self, act: &FiniteAct, images: &[usize]) -> Result<(), PresentationError> {
        if images.len() != self.generators.len() {
            return Err(PresentationError::ImageCount {
                expected: self.generators.len(),
                got: images.len(),
            });
        }
        if let Some(&bad) = images.iter().find(|&&a| a >= act.len()) {
            return Err(ActError::ForeignElement(bad).into());
        }
        if act.monoid().alphabet() != self.monoid.alphabet() {
            return Err(PresentationError::MonoidMismatch);
        }
        Ok(())
    }

    /// Checks both conditions of the presentation criterion against a finite act:
    /// the act satisfies the relations, and the congruence they generate on `F_X`
    /// is the full kernel of `x ↦ images[x]`. The images must also generate the act.
    pub fn verify(&self, act: &FiniteAct, images: &[usize]) -> Result<Verification, PresentationError> {
        self.check_images(act, images)?;
        let violated = self.first_violation(act, images)?;
        let oracle = act_from_presentation(self)?;
        let kernel = ActCongruence::from_keys(
            (0..oracle.free.len()).map(|i| act.act_word(images[oracle.generator_of(i)], &oracle.word_of(i))),
        );
        let kernel_equal = kernel == oracle.congruence;
        let generates = act.is_generated_by(images);
        Ok(Verification {
            violated,
            kernel_equal,
            generates,
            presented_size: oracle.act.len(),
        })
    }

    pub fn verify_presentation(&self, act: &FiniteAct, images: &[usize]) -> Result<bool, PresentationError> {
        Ok(self.verify(act, images)?.holds())
    }
}

/// Outcome of [`ActPresentation::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub violated: Option<usize>,
    pub kernel_equal: bool,
    pub generates: bool,
    pub presented_size: usize,
}

impl Verification {
    pub fn holds(&self) -> bool {
        self.violated.is_none() && self.kernel_equal && self.generates
    }
}

/// Value of `x·w` in `act` when `x ↦ images[x]`.
pub fn evaluate(act: &FiniteAct, images: &[usize], e: &FreeActElement) -> usize {
    act.act_word(images[e.generator as usize], &e.word)
}

impl fmt::Display for ActPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relations.iter().map(|r| self.render_relation(r)).collect();
        write!(f, "< {} | {} >", self.generators.names().join(", "), rels.join(", "))
    }
}
