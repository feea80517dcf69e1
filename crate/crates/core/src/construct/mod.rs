//! Presentations of Rees quotients, extensions, unions, union components,
//! subacts and large subacts, with the choice maps they depend on.

mod quotient;
mod subact;
mod union;

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::act::{ActError, ActModel, Decision, Interpretation, Membership};
use crate::monoid::{Alphabet, Letter, Word};
use crate::presentation::{
    is_consequence, ActPresentation, FreeActElement, PresentationError, Relation, SearchBounds,
    Verdict,
};

pub use quotient::{extension_presentation, rees_quotient_presentation, trivial_letters_presentation};
pub use subact::{
    large_subact_generators, large_subact_presentation, subact_presentation, Edge, LargeSubact,
    LargeSubactGenerators, Origin,
};
pub use union::{intersection_generators, union_component_presentation, union_presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("membership of {0} could not be decided")]
    Undecided(String),
    #[error("no witness found for {0} within the search bounds")]
    NoWitness(String),
    #[error("witness for {0} does not represent the required element")]
    InvalidWitness(String),
    #[error("generator name `{0}` is used on both sides")]
    NameClash(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Act(#[from] ActError),
}

/// Search limits shared by the constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructBounds {
    /// Longest monoid word tried when searching witnesses in an infinite monoid.
    pub witness_len: usize,
    /// Radius of the monoid ball used for infinite relation families.
    pub depth: usize,
    /// Largest complement explored for a large subact.
    pub complement_limit: usize,
    /// Instantiation bound for schema relations of the monoid presentation.
    pub schema_bound: Option<usize>,
}

impl Default for ConstructBounds {
    fn default() -> Self {
        ConstructBounds {
            witness_len: 6,
            depth: 3,
            complement_limit: 256,
            schema_bound: None,
        }
    }
}

/// User-supplied choice maps, keyed by kind and the rendered element they choose for.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Choices {
    entries: Vec<(String, String, String)>,
}

impl Choices {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, kind: &str, key: &str, value: &str) {
        self.entries.push((kind.to_string(), key.to_string(), value.to_string()));
    }

    pub fn get(&self, kind: &str, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, n, _)| k == kind && n == key)
            .map(|(_, _, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String, String)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A constructed presentation with the provenance of each relation, the
/// choices made and anything the bounded searches could not settle.
#[derive(Clone, Debug)]
pub struct Construction {
    pub name: &'static str,
    pub presentation: ActPresentation,
    /// Tag of the relation family each relation belongs to, by index.
    pub tags: Vec<&'static str>,
    /// `(kind, key, value)` for every choice used.
    pub choices: Vec<(String, String, String)>,
    pub gaps: Vec<String>,
    pub notes: Vec<String>,
}

impl Construction {
    pub fn count(&self, tag: &str) -> usize {
        self.tags.iter().filter(|t| **t == tag).count()
    }

    pub fn relations_tagged(&self, tag: &str) -> Vec<&Relation> {
        self.presentation
            .relations()
            .iter()
            .zip(&self.tags)
            .filter(|(_, t)| **t == tag)
            .map(|(r, _)| r)
            .collect()
    }

    /// Line-oriented transcript: generators, tagged relations, choices, gaps.
    pub fn transcript(&self) -> String {
        let p = &self.presentation;
        let mut out = String::new();
        let _ = writeln!(out, "construction\t{}", self.name);
        let _ = writeln!(out, "generators\t{}", p.generators().names().join(" "));
        for (r, t) in p.relations().iter().zip(&self.tags) {
            let _ = writeln!(out, "relation\t{t}\t{}", p.render_relation(r));
        }
        for (k, key, v) in &self.choices {
            let _ = writeln!(out, "choice\t{k}\t{key}\t{v}");
        }
        for g in &self.gaps {
            let _ = writeln!(out, "gap\t{g}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note\t{n}");
        }
        out
    }
}

/// Collects tagged relations, skipping duplicates and relations whose sides agree.
struct Emitter {
    relations: Vec<Relation>,
    tags: Vec<&'static str>,
    seen: HashSet<(FreeActElement, FreeActElement)>,
}

impl Emitter {
    fn new() -> Self {
        Emitter {
            relations: Vec::new(),
            tags: Vec::new(),
            seen: HashSet::new(),
        }
    }

    fn push(&mut self, pres_like: &ActPresentation, tag: &'static str, lhs: FreeActElement, rhs: FreeActElement) {
        let (l, r) = (pres_like.canonical(&lhs), pres_like.canonical(&rhs));
        if l == r || !self.seen.insert((l.clone(), r.clone())) {
            return;
        }
        self.relations.push(Relation::new(lhs, rhs));
        self.tags.push(tag);
    }

    /// Like `push` but keeps relations with identical sides, for families
    /// that must appear verbatim.
    fn push_verbatim(&mut self, tag: &'static str, lhs: FreeActElement, rhs: FreeActElement) {
        if !self.seen.insert((lhs.clone(), rhs.clone())) {
            return;
        }
        self.relations.push(Relation::new(lhs, rhs));
        self.tags.push(tag);
    }
}

/// Monoid words to search, shortest first: every element of a finite monoid,
/// otherwise the canonical words up to `max_len`.
fn search_words(pres: &ActPresentation, max_len: usize) -> Vec<Word> {
    pres.monoid().enumerate_elements(max_len)
}

/// The shortlex-least `x·w` with `x` in `allowed` (lowest index on ties)
/// whose value under `interp` is `target`.
fn find_witness<A: ActModel>(
    interp: &Interpretation<'_, A>,
    allowed: &[Letter],
    words: &[Word],
    target: &A::Value,
) -> Option<FreeActElement> {
    for w in words {
        for &x in allowed {
            if interp.model.act(&interp.images[x as usize], w) == *target {
                return Some(FreeActElement::new(x, w.clone()));
            }
        }
    }
    None
}

fn decide<V, B: Membership<V> + ?Sized>(member: &B, v: &V, what: impl FnOnce() -> String) -> Result<bool, ConstructError> {
    match member.decide(v) {
        Decision::Yes => Ok(true),
        Decision::No => Ok(false),
        Decision::Unknown => Err(ConstructError::Undecided(what())),
    }
}

/// Concatenates two generator alphabets, refusing shared names and monoid letters.
fn join_alphabets(pres: &ActPresentation, parts: &[&[String]]) -> Result<Alphabet, ConstructError> {
    let mut out = Alphabet::default();
    for part in parts {
        for n in part.iter() {
            if out.contains_name(n) || pres.monoid().alphabet().contains_name(n) {
                return Err(ConstructError::NameClash(n.clone()));
            }
            out.push(n.clone()).map_err(PresentationError::from)?;
        }
    }
    Ok(out)
}

/// Parses a choice override against `pres` and checks it evaluates to `target`.
fn chosen<A: ActModel>(
    choices: &Choices,
    kind: &str,
    key: &str,
    pres: &ActPresentation,
    interp: &Interpretation<'_, A>,
    allowed: &[Letter],
    target: &A::Value,
) -> Result<Option<FreeActElement>, ConstructError> {
    let Some(text) = choices.get(kind, key) else {
        return Ok(None);
    };
    let e = pres.parse_element(text)?;
    if !allowed.contains(&e.generator) || interp.eval(&e) != *target {
        return Err(ConstructError::InvalidWitness(format!("{kind} {key}")));
    }
    Ok(Some(e))
}

/// Outcome of checking a candidate presentation against a constructed one.
#[derive(Clone, Debug)]
pub struct Simplification {
    /// Verdict for each constructed relation, proved from the candidate.
    pub constructed_from_candidate: Vec<Verdict>,
    /// Verdict for each candidate relation, proved from the constructed presentation.
    pub candidate_from_constructed: Vec<Verdict>,
}

impl Simplification {
    pub fn accepted(&self) -> bool {
        self.constructed_from_candidate.iter().all(Verdict::is_proved)
            && self.candidate_from_constructed.iter().all(Verdict::is_proved)
    }

    /// Indices of constructed relations the candidate fails to prove.
    pub fn unproved(&self) -> Vec<usize> {
        self.constructed_from_candidate
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_proved())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Replaces a (possibly truncated) constructed presentation by a candidate
/// on the same generators when each proves the other's relations.
pub fn simplify_with(
    constructed: &ActPresentation,
    candidate: &ActPresentation,
    bounds: SearchBounds,
) -> Result<Simplification, ConstructError> {
    if constructed.generators() != candidate.generators() {
        return Err(ConstructError::Refused("candidate uses different generators".into()));
    }
    let forward = constructed
        .relations()
        .iter()
        .map(|r| is_consequence(candidate, &r.lhs, &r.rhs, bounds))
        .collect();
    let backward = candidate
        .relations()
        .iter()
        .map(|r| is_consequence(constructed, &r.lhs, &r.rhs, bounds))
        .collect();
    Ok(Simplification {
        constructed_from_candidate: forward,
        candidate_from_constructed: backward,
    })
}

/// Mutual bounded consequence: every relation of each presentation is proved
/// from the other. Generators are matched by name.
pub fn mutually_derivable(
    p: &ActPresentation,
    q: &ActPresentation,
    bounds: SearchBounds,
) -> Result<bool, ConstructError> {
    Ok(derives(p, q, bounds)? && derives(q, p, bounds)?)
}

/// Whether every relation of `target` follows from `source`.
pub fn derives(source: &ActPresentation, target: &ActPresentation, bounds: SearchBounds) -> Result<bool, ConstructError> {
    for r in target.relations() {
        let l = source.import(target, &r.lhs)?;
        let rr = source.import(target, &r.rhs)?;
        if !is_consequence(source, &l, &rr, bounds).is_proved() {
            return Ok(false);
        }
    }
    Ok(true)
}
