use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use super::{FiniteAct, Subact};
use crate::monoid::{Monoid, Word};
use crate::presentation::FreeActElement;

/// An act whose elements can be computed with, finite or not.
pub trait ActModel {
    type Value: Clone + Eq + Hash + Ord + Debug;

    fn monoid(&self) -> &Arc<Monoid>;

    fn act(&self, v: &Self::Value, w: &Word) -> Self::Value;

    fn describe(&self, v: &Self::Value) -> String;

    /// Whether equal values are exactly equal elements.
    fn exact(&self) -> bool;

    /// Every element, when the act is finite.
    fn elements(&self) -> Option<Vec<Self::Value>>;
}

impl ActModel for FiniteAct {
    type Value = usize;

    fn monoid(&self) -> &Arc<Monoid> {
        FiniteAct::monoid(self)
    }

    fn act(&self, v: &usize, w: &Word) -> usize {
        self.act_word(*v, w)
    }

    fn describe(&self, v: &usize) -> String {
        self.name(*v).to_string()
    }

    fn exact(&self) -> bool {
        true
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.len()).collect())
    }
}

/// The monoid acting on itself by right multiplication; values are canonical words.
#[derive(Clone, Debug)]
pub struct RightRegularAct {
    monoid: Arc<Monoid>,
}

impl RightRegularAct {
    pub fn new(monoid: Arc<Monoid>) -> Self {
        RightRegularAct { monoid }
    }
}

impl ActModel for RightRegularAct {
    type Value = Word;

    fn monoid(&self) -> &Arc<Monoid> {
        &self.monoid
    }

    fn act(&self, v: &Word, w: &Word) -> Word {
        self.monoid.multiply(v, w)
    }

    fn describe(&self, v: &Word) -> String {
        self.monoid.render(v)
    }

    fn exact(&self) -> bool {
        self.monoid.equality_is_exact()
    }

    fn elements(&self) -> Option<Vec<Word>> {
        self.monoid.elements()
    }
}

/// Three-valued answer of a bounded decision procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }
}

/// Membership in a subact of some model.
pub trait Membership<V> {
    fn decide(&self, v: &V) -> Decision;
}

impl<V, F: Fn(&V) -> Decision> Membership<V> for F {
    fn decide(&self, v: &V) -> Decision {
        self(v)
    }
}

impl Membership<usize> for Subact {
    fn decide(&self, v: &usize) -> Decision {
        Decision::from_bool(self.contains(*v))
    }
}

/// The right ideal `gM` union over `generators`, inside the right regular act.
#[derive(Clone, Debug)]
pub struct RightIdeal {
    monoid: Arc<Monoid>,
    generators: Vec<Word>,
    search_len: usize,
}

impl RightIdeal {
    pub fn new(monoid: Arc<Monoid>, generators: Vec<Word>, search_len: usize) -> Self {
        let generators = generators.iter().map(|g| monoid.canonical(g)).collect();
        RightIdeal {
            monoid,
            generators,
            search_len,
        }
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }
}

impl Membership<Word> for RightIdeal {
    fn decide(&self, v: &Word) -> Decision {
        let v = self.monoid.canonical(v);
        let mut all_exhaustive = true;
        for g in &self.generators {
            let f = self.monoid.right_factors(g, &v, self.search_len);
            if !f.multipliers.is_empty() {
                return Decision::Yes;
            }
            all_exhaustive &= f.exhaustive;
        }
        if all_exhaustive {
            Decision::No
        } else {
            Decision::Unknown
        }
    }
}

/// A subact given by its (finite) complement.
#[derive(Clone, Debug)]
pub struct ComplementSubact<V> {
    excluded: Vec<V>,
    exact: bool,
}

impl<V: Eq> ComplementSubact<V> {
    /// `exact` states whether values are canonical, so that inequality is reliable.
    pub fn new(excluded: Vec<V>, exact: bool) -> Self {
        ComplementSubact { excluded, exact }
    }

    pub fn excluded(&self) -> &[V] {
        &self.excluded
    }
}

impl<V: Eq> Membership<V> for ComplementSubact<V> {
    fn decide(&self, v: &V) -> Decision {
        if self.excluded.contains(v) {
            Decision::No
        } else if self.exact {
            Decision::Yes
        } else {
            Decision::Unknown
        }
    }
}

/// A model together with an image for each generator of a free act.
#[derive(Clone, Debug)]
pub struct Interpretation<'a, A: ActModel> {
    pub model: &'a A,
    pub images: Vec<A::Value>,
}

impl<'a, A: ActModel> Interpretation<'a, A> {
    pub fn new(model: &'a A, images: Vec<A::Value>) -> Self {
        Interpretation { model, images }
    }

    pub fn eval(&self, e: &FreeActElement) -> A::Value {
        self.model.act(&self.images[e.generator as usize], &e.word)
    }
}
