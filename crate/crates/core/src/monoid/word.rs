use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::MonoidError;

/// Index of a letter inside its [`Alphabet`].
pub type Letter = u32;

/// Characters that may not appear inside a letter or generator name.
pub const RESERVED: &[&str] = &[".", "^", "(", ")", "->", "="];

/// Returns `true` if `name` can be used as a letter or generator name.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "1"
        && !name.chars().any(char::is_whitespace)
        && !RESERVED.iter().any(|r| name.contains(r))
        && !name.contains(':')
}

/// An ordered set of distinct, named letters.
///
/// Order is significant: it drives shortlex comparison of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, MonoidError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for name in names {
            alphabet.push(name.into())?;
        }
        Ok(alphabet)
    }

    /// Appends a letter, rejecting duplicates and malformed names.
    pub fn push(&mut self, name: String) -> Result<Letter, MonoidError> {
        if !is_valid_name(&name) {
            return Err(MonoidError::InvalidName(name));
        }
        if self.index.contains_key(&name) {
            return Err(MonoidError::DuplicateLetter(name));
        }
        let id = self.names.len() as Letter;
        self.index.insert(name.clone(), id);
        self.names.push(name);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        0..self.names.len() as Letter
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    pub fn contains_name(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Parses whitespace separated letters; the lone token `1` is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, MonoidError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() || tokens == ["1"] {
            return Ok(Word::empty());
        }
        tokens
            .iter()
            .map(|t| {
                self.lookup(t)
                    .ok_or_else(|| MonoidError::ForeignLetter((*t).to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word::from)
    }

    pub fn contains_word(&self, word: &Word) -> bool {
        word.letters().iter().all(|&l| (l as usize) < self.names.len())
    }

    /// Renders a word as space separated letter names, `1` for the empty word.
    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.letters()
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Compact rendering used for generated names: letters concatenated.
    pub fn render_compact(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.letters().iter().map(|&l| self.name(l)).collect()
    }
}

/// A finite sequence of letters. The empty word is the monoid identity.
///
/// `Ord` is shortlex: shorter words first, then lexicographic by letter index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn power(l: Letter, n: usize) -> Word {
        Word(vec![l; n])
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// All suffixes, from the whole word down to the empty word.
    pub fn suffixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(move |i| self.suffix_from(i))
    }

    pub fn into_vec(self) -> Vec<Letter> {
        self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("#{l}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Every word over `alphabet_size` letters of length at most `max_len`, in shortlex order.
pub fn all_words(alphabet_size: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet_size);
        for w in &layer {
            for l in 0..alphabet_size as Letter {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
