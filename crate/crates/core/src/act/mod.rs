//! Explicit finite acts, congruences, Rees quotients and the presentation oracle.

mod congruence;
mod model;
mod oracle;

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::monoid::{Letter, Monoid, Rule, Word};

pub use congruence::{congruence_closure, ActCongruence, UnionFind};
pub use model::{
    ActModel, ComplementSubact, Decision, Interpretation, Membership, RightIdeal,
    RightRegularAct,
};
pub use oracle::{act_from_presentation, free_act, induced_homomorphism, PresentedAct};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActError {
    #[error("acts are non-empty")]
    Empty,
    #[error("malformed action table: {0}")]
    BadTable(String),
    #[error("action is not compatible with the monoid: {0}")]
    NotAnAct(String),
    #[error("element set is not closed under the action: {0}")]
    NotClosed(String),
    #[error("element index {0} out of range")]
    ForeignElement(usize),
    #[error("the oracle needs a finite monoid")]
    InfiniteMonoid,
    #[error("generator `{0}` is unknown")]
    UnknownGenerator(String),
    #[error("relation {index} is violated: {lhs} != {rhs}")]
    Violated {
        index: usize,
        lhs: String,
        rhs: String,
    },
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
}

/// An act with finitely many elements, given by the action of each monoid letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAct {
    monoid: Arc<Monoid>,
    names: Vec<String>,
    // action[element][letter]
    action: Vec<Vec<usize>>,
}

impl FiniteAct {
    /// Builds an act, checking that the letter actions respect the monoid's relations.
    pub fn new(
        monoid: Arc<Monoid>,
        names: Vec<String>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, ActError> {
        let n = names.len();
        if n == 0 {
            return Err(ActError::Empty);
        }
        let k = monoid.alphabet().len();
        if action.len() != n || action.iter().any(|row| row.len() != k || row.iter().any(|&e| e >= n)) {
            return Err(ActError::BadTable(format!(
                "expected {n} rows of {k} entries below {n}"
            )));
        }
        let act = FiniteAct {
            monoid,
            names,
            action,
        };
        act.check_compatibility()?;
        Ok(act)
    }

    fn check_compatibility(&self) -> Result<(), ActError> {
        let n = self.len();
        match self.monoid.as_ref() {
            Monoid::Free(_) => Ok(()),
            Monoid::Finite(m) => {
                for a in 0..n {
                    let table: Vec<usize> = m
                        .representatives()
                        .iter()
                        .map(|w| self.act_word(a, w))
                        .collect();
                    for e in 0..m.size() {
                        for l in m.alphabet().letters() {
                            let lhs = table[m.mul(e, m.letter_element(l))];
                            let rhs = self.act_letter(table[e], l);
                            if lhs != rhs {
                                return Err(ActError::NotAnAct(format!(
                                    "{}·({}{}) differs from ({}·{})·{}",
                                    self.names[a],
                                    m.element_names()[e],
                                    m.alphabet().name(l),
                                    self.names[a],
                                    m.element_names()[e],
                                    m.alphabet().name(l)
                                )));
                            }
                        }
                    }
                }
                Ok(())
            }
            Monoid::Rewriting(sys) => {
                for (idx, rule) in sys.rules().iter().enumerate() {
                    for a in 0..n {
                        let ok = match rule {
                            Rule::Plain { lhs, rhs } => {
                                self.act_word(a, lhs) == self.act_word(a, rhs)
                            }
                            Rule::Schema(s) => {
                                // the orbit of one point under x is eventually periodic with
                                // tail and period at most n; n + n^2 exponents cover every case
                                (s.min_exp..=s.min_exp + n + n * n).all(|i| {
                                    let (l, r) = s.instance(i);
                                    self.act_word(a, &l) == self.act_word(a, &r)
                                })
                            }
                        };
                        if !ok {
                            return Err(ActError::NotAnAct(format!(
                                "rule {idx} fails at {}",
                                self.names[a]
                            )));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.monoid
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn act_letter(&self, a: usize, l: Letter) -> usize {
        self.action[a][l as usize]
    }

    pub fn act_word(&self, a: usize, w: &Word) -> usize {
        w.letters().iter().fold(a, |x, &l| self.act_letter(x, l))
    }

    /// Elements fixed by every letter.
    pub fn zeros(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.action[a].iter().all(|&b| b == a))
            .collect()
    }

    /// Closure of `seeds` under the action.
    pub fn orbit_closure(&self, seeds: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut member = vec![false; self.len()];
        let mut queue = VecDeque::new();
        for s in seeds {
            if !member[s] {
                member[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(a) = queue.pop_front() {
            for &b in &self.action[a] {
                if !member[b] {
                    member[b] = true;
                    queue.push_back(b);
                }
            }
        }
        member
    }

    /// Whether `gens` generate the whole act.
    pub fn is_generated_by(&self, gens: &[usize]) -> bool {
        self.orbit_closure(gens.iter().copied()).iter().all(|&b| b)
    }

    /// A generating set chosen greedily in index order: each element is added
    /// unless already reachable, then redundant choices are pruned.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut covered = vec![false; self.len()];
        for a in 0..self.len() {
            if !covered[a] {
                gens.push(a);
                covered = self.orbit_closure(gens.iter().copied());
            }
        }
        let mut i = 0;
        while i < gens.len() {
            let mut rest = gens.clone();
            rest.remove(i);
            if !rest.is_empty() && self.is_generated_by(&rest) {
                gens = rest;
            } else {
                i += 1;
            }
        }
        gens
    }

    /// Quotient by a congruence, with the projection onto classes.
    pub fn quotient(&self, cong: &ActCongruence) -> (FiniteAct, Vec<usize>) {
        let k = cong.num_classes();
        let mut reps = vec![usize::MAX; k];
        for a in 0..self.len() {
            let c = cong.class_of(a);
            if reps[c] == usize::MAX {
                reps[c] = a;
            }
        }
        let action = reps
            .iter()
            .map(|&r| self.action[r].iter().map(|&b| cong.class_of(b)).collect())
            .collect();
        let names = reps.iter().map(|&r| self.names[r].clone()).collect();
        let act = FiniteAct {
            monoid: self.monoid.clone(),
            names,
            action,
        };
        (act, cong.labels().to_vec())
    }
}

/// A subset of a finite act closed under the action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subact {
    members: Vec<bool>,
}

impl Subact {
    pub fn new(act: &FiniteAct, elements: &[usize]) -> Result<Self, ActError> {
        if elements.is_empty() {
            return Err(ActError::Empty);
        }
        let mut members = vec![false; act.len()];
        for &e in elements {
            *members.get_mut(e).ok_or(ActError::ForeignElement(e))? = true;
        }
        for &e in elements {
            for l in act.monoid().alphabet().letters() {
                let f = act.act_letter(e, l);
                if !members[f] {
                    return Err(ActError::NotClosed(format!(
                        "{}·{} = {}",
                        act.name(e),
                        act.monoid().alphabet().name(l),
                        act.name(f)
                    )));
                }
            }
        }
        Ok(Subact { members })
    }

    /// Smallest subact containing `seeds`.
    pub fn generated(act: &FiniteAct, seeds: &[usize]) -> Result<Self, ActError> {
        if seeds.is_empty() {
            return Err(ActError::Empty);
        }
        if let Some(&bad) = seeds.iter().find(|&&s| s >= act.len()) {
            return Err(ActError::ForeignElement(bad));
        }
        Ok(Subact {
            members: act.orbit_closure(seeds.iter().copied()),
        })
    }

    pub fn whole(act: &FiniteAct) -> Self {
        Subact {
            members: vec![true; act.len()],
        }
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members[a]
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&a| self.members[a]).collect()
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&a| !self.members[a]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn intersection(&self, other: &Subact) -> Option<Subact> {
        let members: Vec<bool> = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(&a, &b)| a && b)
            .collect();
        members.iter().any(|&b| b).then_some(Subact { members })
    }

    /// The subact as an act in its own right, with the embedding into the parent.
    pub fn to_act(&self, parent: &FiniteAct) -> (FiniteAct, Vec<usize>) {
        let embed = self.elements();
        let local: HashMap<usize, usize> = embed.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let action = embed
            .iter()
            .map(|&a| parent.action[a].iter().map(|b| local[b]).collect())
            .collect();
        let names = embed.iter().map(|&a| parent.names[a].clone()).collect();
        let act = FiniteAct {
            monoid: parent.monoid.clone(),
            names,
            action,
        };
        (act, embed)
    }

    /// The Rees congruence: equality outside the subact, one class inside.
    pub fn rees_congruence(&self) -> ActCongruence {
        let zero = self.members.iter().position(|&b| b).expect("subacts are non-empty");
        ActCongruence::from_keys((0..self.members.len()).map(|a| if self.members[a] { zero } else { a }))
    }
}

/// `A/B` with its zero and the projection from `A`.
#[derive(Clone, Debug)]
pub struct ReesQuotient {
    pub act: FiniteAct,
    pub zero: usize,
    pub projection: Vec<usize>,
}

pub const ZERO_NAME: &str = "0";

/// Collapses `sub` to a single zero element; other elements keep their names.
pub fn rees_quotient(act: &FiniteAct, sub: &Subact) -> Result<ReesQuotient, ActError> {
    if sub.members.len() != act.len() {
        return Err(ActError::BadTable("subact belongs to another act".into()));
    }
    // recheck closure in case the subact was built against a different table
    Subact::new(act, &sub.elements())?;
    let outside = sub.complement();
    let mut projection = vec![0; act.len()];
    for (i, &a) in outside.iter().enumerate() {
        projection[a] = i + 1;
    }
    let mut names = vec![fresh_name(ZERO_NAME, act.names())];
    names.extend(outside.iter().map(|&a| act.name(a).to_string()));
    let k = act.monoid().alphabet().len();
    let mut action = vec![vec![0; k]];
    for &a in &outside {
        action.push((0..k).map(|l| projection[act.act_letter(a, l as Letter)]).collect());
    }
    let result = FiniteAct {
        monoid: act.monoid.clone(),
        names,
        action,
    };
    Ok(ReesQuotient {
        act: result,
        zero: 0,
        projection,
    })
}

/// `base`, primed until it differs from every name in `taken`.
pub fn fresh_name(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// A map between finite acts over the same monoid commuting with the action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(domain: &FiniteAct, codomain: &FiniteAct, map: Vec<usize>) -> Result<Self, ActError> {
        if map.len() != domain.len() {
            return Err(ActError::NotHomomorphism("map size differs from the domain".into()));
        }
        if let Some(&bad) = map.iter().find(|&&b| b >= codomain.len()) {
            return Err(ActError::ForeignElement(bad));
        }
        for a in 0..domain.len() {
            for l in domain.monoid().alphabet().letters() {
                if map[domain.act_letter(a, l)] != codomain.act_letter(map[a], l) {
                    return Err(ActError::NotHomomorphism(format!(
                        "fails at {}·{}",
                        domain.name(a),
                        domain.monoid().alphabet().name(l)
                    )));
                }
            }
        }
        Ok(Homomorphism { map })
    }

    pub fn kernel(&self) -> ActCongruence {
        kernel_congruence(self)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().num_classes() == self.map.len()
    }
}

/// Partition of the domain by equal images.
pub fn kernel_congruence(f: &Homomorphism) -> ActCongruence {
    ActCongruence::from_keys(f.map.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{Alphabet, FiniteMonoid};

    pub(crate) fn semilattice() -> Arc<Monoid> {
        Arc::new(Monoid::Finite(
            FiniteMonoid::new(
                vec!["1".into(), "e".into()],
                vec![vec![0, 1], vec![1, 1]],
                0,
                vec![("e".into(), 1)],
            )
            .unwrap(),
        ))
    }

    fn chain_act() -> FiniteAct {
        // p -e-> q, q and r fixed
        FiniteAct::new(
            semilattice(),
            vec!["p".into(), "q".into(), "r".into()],
            vec![vec![1], vec![1], vec![2]],
        )
        .unwrap()
    }

    #[test]
    fn rejects_incompatible_action() {
        // e must be idempotent: p -> q -> r breaks e·e = e
        let r = FiniteAct::new(
            semilattice(),
            vec!["p".into(), "q".into(), "r".into()],
            vec![vec![1], vec![2], vec![2]],
        );
        assert!(matches!(r, Err(ActError::NotAnAct(_))));
        assert!(matches!(
            FiniteAct::new(semilattice(), vec![], vec![]),
            Err(ActError::Empty)
        ));
    }

    #[test]
    fn rewriting_monoid_acts_are_checked() {
        let z = Alphabet::new(["a"]).unwrap();
        let sys = crate::monoid::RewritingSystem::new(
            z,
            vec![Rule::plain(Word::from(vec![0, 0]), Word::from(vec![0]))],
        )
        .unwrap();
        let m = Arc::new(Monoid::Rewriting(sys));
        assert!(FiniteAct::new(m.clone(), vec!["x".into(), "y".into()], vec![vec![1], vec![1]]).is_ok());
        assert!(FiniteAct::new(m, vec!["x".into(), "y".into()], vec![vec![1], vec![0]]).is_err());
    }

    #[test]
    fn subact_generation_and_closure() {
        let a = chain_act();
        let s = Subact::generated(&a, &[0]).unwrap();
        assert_eq!(s.elements(), vec![0, 1]);
        assert!(Subact::generated(&a, &[]).is_err());
        assert!(Subact::new(&a, &[0]).is_err());
        assert_eq!(Subact::generated(&a, &[0, 1, 2]).unwrap().len(), 3);
    }

    #[test]
    fn rees_quotient_of_whole_act_is_trivial() {
        let a = chain_act();
        let q = rees_quotient(&a, &Subact::whole(&a)).unwrap();
        assert_eq!(q.act.len(), 1);
    }

    #[test]
    fn rees_quotient_by_fixed_point() {
        let a = chain_act();
        let b = Subact::new(&a, &[2]).unwrap();
        let q = rees_quotient(&a, &b).unwrap();
        assert_eq!(q.act.len(), 3);
        let hom = Homomorphism::new(&a, &q.act, q.projection.clone()).unwrap();
        assert!(hom.is_injective());
        assert_eq!(hom.kernel(), b.rees_congruence());
    }

    #[test]
    fn kernel_of_constant_map_is_universal() {
        let a = chain_act();
        let b = Subact::new(&a, &[1]).unwrap();
        let (target, _) = b.to_act(&a);
        let hom = Homomorphism::new(&a, &target, vec![0, 0, 0]);
        // r is fixed but maps to q: still a homomorphism because q is fixed too
        assert_eq!(hom.unwrap().kernel(), ActCongruence::universal(3));
    }

    #[test]
    fn greedy_generators_generate() {
        let a = chain_act();
        let g = a.greedy_generators();
        assert_eq!(g, vec![0, 2]);
        assert!(a.is_generated_by(&g));
    }

    #[test]
    fn closure_of_empty_seed_is_identity() {
        let a = chain_act();
        assert_eq!(congruence_closure(&a, &[]), ActCongruence::identity(3));
        let all: Vec<(usize, usize)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        assert_eq!(congruence_closure(&a, &all), ActCongruence::universal(3));
    }
}
