use std::collections::VecDeque;

use super::word::{Alphabet, Letter, Word};
use super::MonoidError;

/// A finite monoid given by its multiplication table and a generating set of letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    element_names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    alphabet: Alphabet,
    letter_elements: Vec<usize>,
    reps: Vec<Word>,
}

impl FiniteMonoid {
    /// Validates the table exhaustively: identity laws, associativity and that
    /// the letters generate every element.
    pub fn new(
        element_names: Vec<String>,
        table: Vec<Vec<usize>>,
        identity: usize,
        letters: Vec<(String, usize)>,
    ) -> Result<Self, MonoidError> {
        let n = table.len();
        if n == 0 || element_names.len() != n {
            return Err(MonoidError::BadTable("table size does not match element list".into()));
        }
        if identity >= n {
            return Err(MonoidError::BadTable("identity out of range".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n || row.iter().any(|&e| e >= n) {
                return Err(MonoidError::BadTable("table is not square over the elements".into()));
            }
            flat.extend_from_slice(row);
        }
        let mul = |a: usize, b: usize| flat[a * n + b];
        for (a, name) in element_names.iter().enumerate() {
            if mul(identity, a) != a || mul(a, identity) != a {
                return Err(MonoidError::BadTable(format!(
                    "identity law fails at {}",
                    name
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(MonoidError::NotAssociative(
                            element_names[a].clone(),
                            element_names[b].clone(),
                            element_names[c].clone(),
                        ));
                    }
                }
            }
        }
        let mut alphabet = Alphabet::default();
        let mut letter_elements = Vec::new();
        for (name, e) in letters {
            if e >= n {
                return Err(MonoidError::BadTable(format!("letter {name} names no element")));
            }
            alphabet.push(name)?;
            letter_elements.push(e);
        }
        let mut reps: Vec<Option<Word>> = vec![None; n];
        reps[identity] = Some(Word::empty());
        let mut queue = VecDeque::from([identity]);
        while let Some(e) = queue.pop_front() {
            let w = reps[e].clone().expect("queued elements have representatives");
            for (l, &g) in letter_elements.iter().enumerate() {
                let f = mul(e, g);
                if reps[f].is_none() {
                    let mut v = w.clone();
                    v.push(l as Letter);
                    reps[f] = Some(v);
                    queue.push_back(f);
                }
            }
        }
        if let Some(missing) = reps.iter().position(Option::is_none) {
            return Err(MonoidError::NotGenerated(element_names[missing].clone()));
        }
        Ok(FiniteMonoid {
            element_names,
            table: flat,
            identity,
            alphabet,
            letter_elements,
            reps: reps.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Builds a monoid of transformations of `{0..degree}` generated by `gens`,
    /// composing left to right (`x·(fg) = (x·f)·g`). Fails past `max_size` elements.
    pub fn from_transformations(
        degree: usize,
        gens: &[Vec<usize>],
        max_size: usize,
    ) -> Result<Self, MonoidError> {
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id];
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let f: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
                if !elems.contains(&f) {
                    if elems.len() == max_size {
                        return Err(MonoidError::BadTable("transformation monoid too large".into()));
                    }
                    elems.push(f);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let f: Vec<usize> = elems[a].iter().map(|&x| elems[b][x]).collect();
                        elems.iter().position(|e| *e == f).expect("closed under composition")
                    })
                    .collect()
            })
            .collect();
        let names: Vec<String> = (0..n)
            .map(|i| if i == 0 { "1".to_string() } else { format!("m{i}") })
            .collect();
        let letters = gens
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let e = elems.iter().position(|x| x == g).expect("generator is an element");
                (format!("g{k}"), e)
            })
            .collect();
        FiniteMonoid::new(names, table, 0, letters)
    }

    pub fn size(&self) -> usize {
        self.element_names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn element_names(&self) -> &[String] {
        &self.element_names
    }

    pub fn letter_element(&self, l: Letter) -> usize {
        self.letter_elements[l as usize]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size() + b]
    }

    pub fn eval(&self, w: &Word) -> usize {
        w.letters()
            .iter()
            .fold(self.identity, |acc, &l| self.mul(acc, self.letter_elements[l as usize]))
    }

    /// Shortlex-least word over the letters that evaluates to `e`.
    pub fn representative(&self, e: usize) -> &Word {
        &self.reps[e]
    }

    pub fn representatives(&self) -> &[Word] {
        &self.reps
    }

    /// A complete set of defining relations: `rep(e)·z = rep(ez)` for every element and letter.
    pub fn defining_relations(&self) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        for e in 0..self.size() {
            for l in self.alphabet.letters() {
                let lhs = self.reps[e].concat(&Word::letter(l));
                let rhs = self.reps[self.mul(e, self.letter_element(l))].clone();
                if lhs != rhs {
                    out.push((lhs, rhs));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_element() -> FiniteMonoid {
        FiniteMonoid::new(
            vec!["1".into(), "e".into()],
            vec![vec![0, 1], vec![1, 1]],
            0,
            vec![("e".into(), 1)],
        )
        .unwrap()
    }

    #[test]
    fn semilattice_reps() {
        let m = two_element();
        assert_eq!(m.representative(1).len(), 1);
        assert_eq!(m.eval(&Word::from(vec![0, 0, 0])), 1);
        assert_eq!(m.defining_relations().len(), 1);
    }

    #[test]
    fn rejects_non_associative_table() {
        // a 3-element magma with identity 0 where (1·1)·2 != 1·(1·2)
        let t = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 2, 2]];
        let r = FiniteMonoid::new(
            vec!["1".into(), "a".into(), "b".into()],
            t,
            0,
            vec![("a".into(), 1), ("b".into(), 2)],
        );
        assert!(matches!(r, Err(MonoidError::NotAssociative(..))));
    }

    #[test]
    fn rejects_missing_generators() {
        let r = FiniteMonoid::new(
            vec!["1".into(), "e".into()],
            vec![vec![0, 1], vec![1, 1]],
            0,
            vec![],
        );
        assert!(matches!(r, Err(MonoidError::NotGenerated(_))));
    }

    #[test]
    fn transformation_monoid_of_a_cycle() {
        let m = FiniteMonoid::from_transformations(3, &[vec![1, 2, 0]], 6).unwrap();
        assert_eq!(m.size(), 3);
        let g = Word::letter(0);
        assert_eq!(m.eval(&g.concat(&g).concat(&g)), m.identity());
    }
}
