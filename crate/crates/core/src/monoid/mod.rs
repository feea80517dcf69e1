//! Words, rewriting systems and monoid backends.

mod finite;
mod rewriting;
mod word;

use thiserror::Error;

pub use finite::FiniteMonoid;
pub use rewriting::{
    check_termination, ConfluenceReport, ConfluenceStatus, CriticalPair, EquivalenceClass, Exponent,
    RewritingSystem, Rule, RuleSchema, TerminationViolation,
};
pub use word::{all_words, is_valid_name, Alphabet, Letter, Word, RESERVED};

/// Length of the extra prefix tried in front of each suffix when searching
/// multipliers in a rewriting monoid.
pub const FACTOR_SEARCH_PREFIX: usize = 2;

/// Result of [`Monoid::right_factors`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factors {
    pub multipliers: Vec<Word>,
    /// `true` when `multipliers` provably contains every solution up to equality.
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("invalid letter name `{0}`")]
    InvalidName(String),
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("letter `{0}` is not in the alphabet")]
    ForeignLetter(String),
    #[error("rewriting system does not terminate: {0}")]
    NotTerminating(TerminationViolation),
    #[error("malformed multiplication table: {0}")]
    BadTable(String),
    #[error("table is not associative at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("letters do not generate element `{0}`")]
    NotGenerated(String),
}

/// A monoid backend: free, rewriting-system backed, or a finite table.
///
/// Every element is handled as a canonical word: the word itself for free
/// monoids, the normal form for rewriting systems, and the shortlex-least
/// representative for finite tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Monoid {
    Free(Alphabet),
    Rewriting(RewritingSystem),
    Finite(FiniteMonoid),
}

impl Monoid {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Monoid::Free(a) => a,
            Monoid::Rewriting(s) => s.alphabet(),
            Monoid::Finite(m) => m.alphabet(),
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteMonoid> {
        match self {
            Monoid::Finite(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_rewriting(&self) -> Option<&RewritingSystem> {
        match self {
            Monoid::Rewriting(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Monoid::Finite(_))
    }

    /// Whether canonical words decide equality exactly.
    pub fn equality_is_exact(&self) -> bool {
        match self {
            Monoid::Rewriting(s) => s.confluence().trusted(),
            _ => true,
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<(), MonoidError> {
        match w
            .letters()
            .iter()
            .find(|&&l| l as usize >= self.alphabet().len())
        {
            Some(l) => Err(MonoidError::ForeignLetter(format!("#{l}"))),
            None => Ok(()),
        }
    }

    /// Canonical representative of the element `w` represents.
    pub fn canonical(&self, w: &Word) -> Word {
        match self {
            Monoid::Free(_) => w.clone(),
            Monoid::Rewriting(s) => s.normal_form(w),
            Monoid::Finite(m) => m.representative(m.eval(w)).clone(),
        }
    }

    pub fn word_equal(&self, u: &Word, v: &Word) -> Result<bool, MonoidError> {
        self.check_word(u)?;
        self.check_word(v)?;
        Ok(match self {
            Monoid::Free(_) => u == v,
            Monoid::Rewriting(s) => s.normal_form(u) == s.normal_form(v),
            Monoid::Finite(m) => m.eval(u) == m.eval(v),
        })
    }

    pub fn multiply(&self, a: &Word, b: &Word) -> Word {
        self.canonical(&a.concat(b))
    }

    /// Distinct elements represented by words of length at most `max_len`, as
    /// canonical words in shortlex order. Finite backends return every element.
    pub fn enumerate_elements(&self, max_len: usize) -> Vec<Word> {
        match self {
            Monoid::Finite(m) => {
                let mut v = m.representatives().to_vec();
                v.sort();
                v
            }
            Monoid::Free(a) => all_words(a.len(), max_len),
            Monoid::Rewriting(s) => {
                // irreducible words are closed under prefixes
                let mut out = vec![Word::empty()];
                let mut layer = vec![Word::empty()];
                for _ in 0..max_len {
                    let mut next = Vec::new();
                    for w in &layer {
                        for l in s.alphabet().letters() {
                            let mut v = w.clone();
                            v.push(l);
                            if s.is_irreducible(&v) {
                                next.push(v);
                            }
                        }
                    }
                    out.extend(next.iter().cloned());
                    layer = next;
                }
                out
            }
        }
    }

    /// Every element; `None` for infinite backends.
    pub fn elements(&self) -> Option<Vec<Word>> {
        self.as_finite().map(|_| self.enumerate_elements(0))
    }

    /// Relations defining the monoid on its alphabet: rewriting rules (schemas
    /// instantiated up to `schema_bound`), the table relations, or nothing.
    pub fn defining_relations(&self, schema_bound: usize) -> Vec<(Word, Word)> {
        match self {
            Monoid::Free(_) => Vec::new(),
            Monoid::Rewriting(s) => s.instantiated(schema_bound),
            Monoid::Finite(m) => m.defining_relations(),
        }
    }

    /// Multipliers `m` (canonical, shortlex order) with `s·m = w`, where `w` is canonical.
    ///
    /// Free and finite backends answer exactly. Rewriting backends answer
    /// exactly only when the stable prefix of `s` already refutes `w` under a
    /// trusted confluence status; otherwise the candidates come from a bounded
    /// search near the suffixes of `w` and `exhaustive` is `false`.
    pub fn right_factors(&self, s: &Word, w: &Word, max_len: usize) -> Factors {
        match self {
            Monoid::Free(_) => Factors {
                multipliers: if w.starts_with(s) {
                    vec![w.suffix_from(s.len())]
                } else {
                    Vec::new()
                },
                exhaustive: true,
            },
            Monoid::Finite(m) => {
                let se = m.eval(s);
                let we = m.eval(w);
                let mut multipliers: Vec<Word> = (0..m.size())
                    .filter(|&e| m.mul(se, e) == we)
                    .map(|e| m.representative(e).clone())
                    .collect();
                multipliers.sort();
                Factors {
                    multipliers,
                    exhaustive: true,
                }
            }
            Monoid::Rewriting(sys) => {
                let s = sys.normal_form(s);
                let stable = sys.stable_prefix_len(&s);
                if sys.confluence().trusted() && !w.starts_with(&s.prefix(stable)) {
                    return Factors {
                        multipliers: Vec::new(),
                        exhaustive: true,
                    };
                }
                let mut candidates = Vec::new();
                if w.starts_with(&s) {
                    candidates.push(w.suffix_from(s.len()));
                }
                let ball = self.enumerate_elements(FACTOR_SEARCH_PREFIX.min(max_len));
                for t in w.suffixes() {
                    for x in &ball {
                        let m = sys.normal_form(&x.concat(&t));
                        if m.len() <= max_len {
                            candidates.push(m);
                        }
                    }
                }
                candidates.sort();
                candidates.dedup();
                candidates.retain(|m| sys.normal_form(&s.concat(m)) == *w);
                Factors {
                    multipliers: candidates,
                    exhaustive: false,
                }
            }
        }
    }

    pub fn render(&self, w: &Word) -> String {
        self.alphabet().render(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_ab() -> Monoid {
        Monoid::Free(Alphabet::new(["a", "b"]).unwrap())
    }

    #[test]
    fn free_multiply_concatenates() {
        let m = free_ab();
        let a = m.alphabet().clone();
        let p = m.multiply(&a.parse_word("a b").unwrap(), &a.parse_word("a").unwrap());
        assert_eq!(a.render(&p), "a b a");
    }

    #[test]
    fn free_ball() {
        let m = Monoid::Free(Alphabet::new(["a"]).unwrap());
        assert_eq!(m.enumerate_elements(3).len(), 4);
    }

    #[test]
    fn word_equal_rejects_foreign_letters() {
        let m = free_ab();
        assert!(m.word_equal(&Word::from(vec![5]), &Word::empty()).is_err());
        assert!(m.word_equal(&Word::from(vec![1]), &Word::from(vec![1])).unwrap());
    }

    #[test]
    fn finite_enumeration_is_full() {
        let fm = FiniteMonoid::new(
            vec!["1".into(), "e".into()],
            vec![vec![0, 1], vec![1, 1]],
            0,
            vec![("e".into(), 1)],
        )
        .unwrap();
        let m = Monoid::Finite(fm);
        assert_eq!(m.enumerate_elements(0).len(), 2);
        assert_eq!(m.enumerate_elements(10).len(), 2);
    }
}
