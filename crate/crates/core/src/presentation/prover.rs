use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::{evaluate, ActPresentation, FreeActElement, PresentationError};
use crate::act::FiniteAct;
use crate::monoid::{Monoid, Word};

/// Limits for the consequence search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Total depth of the two-sided search while looking for a certificate.
    pub max_steps: usize,
    /// Longest multiplier tried in a rewriting monoid.
    pub max_word_len: usize,
    /// Nodes visited per side before giving up.
    pub max_nodes: usize,
    /// Largest number of action tables tried per countermodel size.
    pub countermodel_budget: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_steps: 64,
            max_word_len: 12,
            max_nodes: 20_000,
            countermodel_budget: 1 << 16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// `lhs·m ↦ rhs·m`
    Forward,
    /// `rhs·m ↦ lhs·m`
    Backward,
}

impl Orientation {
    pub fn symbol(self) -> char {
        match self {
            Orientation::Forward => '+',
            Orientation::Backward => '-',
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }
}

/// One application of a relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub relation: usize,
    pub orientation: Orientation,
    pub multiplier: Word,
}

/// A chain of relation applications joining two free act elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSequence {
    pub start: FreeActElement,
    pub end: FreeActElement,
    pub steps: Vec<Step>,
}

impl RSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Checks every step and returns the chain of canonical terms.
    pub fn replay(&self, pres: &ActPresentation) -> Result<Vec<FreeActElement>, String> {
        let monoid = pres.monoid();
        let mut current = pres.canonical(&self.start);
        let mut terms = vec![current.clone()];
        for (k, step) in self.steps.iter().enumerate() {
            let rel = pres
                .relations()
                .get(step.relation)
                .ok_or_else(|| format!("step {k}: no relation {}", step.relation))?;
            let (p, q) = match step.orientation {
                Orientation::Forward => (&rel.lhs, &rel.rhs),
                Orientation::Backward => (&rel.rhs, &rel.lhs),
            };
            let from = pres.canonical(&p.times(&step.multiplier));
            if from.generator != current.generator || !same(monoid, &from.word, &current.word) {
                return Err(format!(
                    "step {k}: {} does not match {}",
                    pres.render_element(&from),
                    pres.render_element(&current)
                ));
            }
            current = pres.canonical(&q.times(&step.multiplier));
            terms.push(current.clone());
        }
        let end = pres.canonical(&self.end);
        if end.generator != current.generator || !same(monoid, &end.word, &current.word) {
            return Err(format!(
                "sequence ends at {}, not {}",
                pres.render_element(&current),
                pres.render_element(&end)
            ));
        }
        Ok(terms)
    }

    /// One line per step: relation index, orientation, multiplier.
    pub fn to_text(&self, pres: &ActPresentation) -> String {
        self.steps
            .iter()
            .map(|s| {
                format!(
                    "{}\t{}\t{}\n",
                    s.relation,
                    s.orientation.symbol(),
                    pres.monoid().render(&s.multiplier)
                )
            })
            .collect()
    }
}

// canonical words agree; for an unconfirmed rewriting system this is only a
// sufficient condition, which is all a certificate needs
fn same(monoid: &Monoid, u: &Word, v: &Word) -> bool {
    u == v || monoid.canonical(u) == monoid.canonical(v)
}

/// Reads a certificate written by [`RSequence::to_text`].
pub fn parse_certificate(
    pres: &ActPresentation,
    start: FreeActElement,
    end: FreeActElement,
    text: &str,
) -> Result<RSequence, PresentationError> {
    let mut steps = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let mut parts = line.split('\t');
        let bad = || PresentationError::UnknownGenerator(format!("malformed certificate line `{line}`"));
        let relation = parts
            .next()
            .and_then(|p| p.trim().parse().ok())
            .ok_or_else(bad)?;
        let orientation = match parts.next().map(str::trim) {
            Some("+") => Orientation::Forward,
            Some("-") => Orientation::Backward,
            _ => return Err(bad()),
        };
        let multiplier = pres.monoid().alphabet().parse_word(parts.next().ok_or_else(bad)?)?;
        steps.push(Step {
            relation,
            orientation,
            multiplier,
        });
    }
    Ok(RSequence { start, end, steps })
}

/// Why a relation is known not to follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Disproof {
    /// The class of one side was explored completely and misses the other.
    OrbitExhausted { side: usize, size: usize },
    /// A finite act satisfies the relations but separates the two sides.
    Countermodel { act: FiniteAct, images: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proved(RSequence),
    Disproved(Disproof),
    Unknown { explored: usize },
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved(_))
    }

    pub fn is_disproved(&self) -> bool {
        matches!(self, Verdict::Disproved(_))
    }

    /// Exit-code convention: 0 proved, 1 disproved, 2 unknown.
    pub fn code(&self) -> i32 {
        match self {
            Verdict::Proved(_) => 0,
            Verdict::Disproved(_) => 1,
            Verdict::Unknown { .. } => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Proved(s) => write!(f, "proved in {} steps", s.len()),
            Verdict::Disproved(Disproof::OrbitExhausted { side, size }) => {
                write!(f, "disproved: class of side {side} has {size} elements")
            }
            Verdict::Disproved(Disproof::Countermodel { act, .. }) => {
                write!(f, "disproved by a {}-element countermodel", act.len())
            }
            Verdict::Unknown { explored } => write!(f, "unknown after {explored} nodes"),
        }
    }
}

type Parent = Option<(FreeActElement, Step)>;

struct Side {
    parents: HashMap<FreeActElement, Parent>,
    frontier: VecDeque<FreeActElement>,
    depth: usize,
    exact: bool,
    /// Some node is longer than the word length bound.
    grown: bool,
}

impl Side {
    fn new(root: FreeActElement) -> Self {
        let mut parents = HashMap::new();
        parents.insert(root.clone(), None);
        Side {
            parents,
            frontier: VecDeque::from([root]),
            depth: 0,
            exact: true,
            grown: false,
        }
    }

    fn path_to_root(&self, mut node: FreeActElement) -> Vec<(FreeActElement, Step)> {
        let mut out = Vec::new();
        while let Some(Some((parent, step))) = self.parents.get(&node) {
            out.push((node.clone(), step.clone()));
            node = parent.clone();
        }
        out
    }
}

/// Breadth-first consequence search over canonical free act elements.
pub struct Prover<'a> {
    pres: &'a ActPresentation,
    bounds: SearchBounds,
}

impl<'a> Prover<'a> {
    pub fn new(pres: &'a ActPresentation, bounds: SearchBounds) -> Self {
        Prover { pres, bounds }
    }

    /// Every element reachable from `node` by one relation application, in
    /// (relation, orientation, multiplier) order, and whether the list is complete.
    pub fn neighbours(&self, node: &FreeActElement) -> (Vec<(FreeActElement, Step)>, bool) {
        let monoid = self.pres.monoid();
        let mut out = Vec::new();
        let mut exact = true;
        for (i, rel) in self.pres.relations().iter().enumerate() {
            for orientation in [Orientation::Forward, Orientation::Backward] {
                let (p, q) = match orientation {
                    Orientation::Forward => (&rel.lhs, &rel.rhs),
                    Orientation::Backward => (&rel.rhs, &rel.lhs),
                };
                if p.generator != node.generator {
                    continue;
                }
                let f = monoid.right_factors(&p.word, &node.word, self.bounds.max_word_len);
                exact &= f.exhaustive;
                for m in f.multipliers {
                    let next = self.pres.canonical(&q.times(&m));
                    out.push((
                        next,
                        Step {
                            relation: i,
                            orientation,
                            multiplier: m,
                        },
                    ));
                }
            }
        }
        (out, exact)
    }

    pub fn decide(&self, w1: &FreeActElement, w2: &FreeActElement) -> Verdict {
        let a = self.pres.canonical(w1);
        let b = self.pres.canonical(w2);
        if a == b {
            return Verdict::Proved(RSequence {
                start: w1.clone(),
                end: w2.clone(),
                steps: Vec::new(),
            });
        }
        let mut sides = [Side::new(a), Side::new(b)];
        loop {
            // expand the side with the smaller frontier, then the shallower one
            let open: Vec<usize> = (0..2).filter(|&s| !sides[s].frontier.is_empty()).collect();
            for (s, side) in sides.iter().enumerate() {
                if side.frontier.is_empty() && side.exact {
                    return Verdict::Disproved(Disproof::OrbitExhausted {
                        side: s,
                        size: side.parents.len(),
                    });
                }
            }
            if open.is_empty() {
                break;
            }
            let s = *open
                .iter()
                .min_by_key(|&&s| (sides[s].frontier.len(), sides[s].depth, s))
                .expect("non-empty");
            let layer: Vec<FreeActElement> = sides[s].frontier.drain(..).collect();
            sides[s].depth += 1;
            for node in layer {
                let (next, exact) = self.neighbours(&node);
                sides[s].exact &= exact;
                for (n, step) in next {
                    if sides[s].parents.contains_key(&n) {
                        continue;
                    }
                    sides[s].grown |= n.word.len() > self.bounds.max_word_len;
                    sides[s].parents.insert(n.clone(), Some((node.clone(), step)));
                    if sides[1 - s].parents.contains_key(&n) {
                        return Verdict::Proved(self.certificate(&sides, n, w1, w2));
                    }
                    sides[s].frontier.push_back(n);
                }
            }
            let explored = sides[0].parents.len() + sides[1].parents.len();
            if sides.iter().any(|side| side.parents.len() > self.bounds.max_nodes) {
                return self.fallback(w1, w2, explored);
            }
            if sides[0].depth + sides[1].depth >= self.bounds.max_steps
                && sides.iter().all(|side| !side.exact || side.grown)
            {
                // no side is a small exact orbit that could still be exhausted
                return self.fallback(w1, w2, explored);
            }
        }
        let explored = sides[0].parents.len() + sides[1].parents.len();
        self.fallback(w1, w2, explored)
    }

    fn certificate(
        &self,
        sides: &[Side; 2],
        meet: FreeActElement,
        w1: &FreeActElement,
        w2: &FreeActElement,
    ) -> RSequence {
        // steps from the start to the meeting point, then back along the other side
        let mut first = sides[0].path_to_root(meet.clone());
        first.reverse();
        let mut steps: Vec<Step> = first.into_iter().map(|(_, s)| s).collect();
        for (_, s) in sides[1].path_to_root(meet) {
            steps.push(Step {
                orientation: s.orientation.flip(),
                ..s
            });
        }
        RSequence {
            start: w1.clone(),
            end: w2.clone(),
            steps,
        }
    }

    fn fallback(&self, w1: &FreeActElement, w2: &FreeActElement, explored: usize) -> Verdict {
        match find_countermodel(self.pres, w1, w2, self.bounds.countermodel_budget) {
            Some((act, images)) => Verdict::Disproved(Disproof::Countermodel { act, images }),
            None => Verdict::Unknown { explored },
        }
    }
}

/// Decides whether `w1 = w2` follows from the relations of `pres`.
pub fn is_consequence(
    pres: &ActPresentation,
    w1: &FreeActElement,
    w2: &FreeActElement,
    bounds: SearchBounds,
) -> Verdict {
    Prover::new(pres, bounds).decide(w1, w2)
}

/// Searches acts with two or three elements over the monoid's letters for one
/// that satisfies the relations but separates `w1` and `w2`.
pub fn find_countermodel(
    pres: &ActPresentation,
    w1: &FreeActElement,
    w2: &FreeActElement,
    budget: usize,
) -> Option<(FiniteAct, Vec<usize>)> {
    let monoid: &Arc<Monoid> = pres.monoid();
    let k = monoid.alphabet().len();
    let gens = pres.generators().len();
    for n in 2..=3usize {
        let cells = n * k;
        let tables = (n as f64).powi(cells as i32);
        if tables > budget as f64 {
            continue;
        }
        let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let mut digits = vec![0usize; cells];
        loop {
            let action: Vec<Vec<usize>> = digits.chunks(k.max(1)).map(<[usize]>::to_vec).collect();
            let action = if k == 0 { vec![Vec::new(); n] } else { action };
            if let Ok(act) = FiniteAct::new(monoid.clone(), names.clone(), action) {
                let mut images = vec![0usize; gens];
                loop {
                    if evaluate(&act, &images, w1) != evaluate(&act, &images, w2)
                        && pres
                            .relations()
                            .iter()
                            .all(|r| evaluate(&act, &images, &r.lhs) == evaluate(&act, &images, &r.rhs))
                    {
                        return Some((act, images));
                    }
                    if !odometer(&mut images, n) {
                        break;
                    }
                }
            }
            if !odometer(&mut digits, n) {
                break;
            }
        }
    }
    None
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
