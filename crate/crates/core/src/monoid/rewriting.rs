//! Length-reducing string rewriting with pumped rule schemas.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::word::{Alphabet, Letter, Word};
use super::MonoidError;

/// Exponent of the pumped letter on the right-hand side of a schema.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exponent {
    /// `e(i) = c`
    Const(usize),
    /// `e(i) = i + c`
    Shift(i64),
}

impl Exponent {
    pub fn at(self, i: usize) -> i64 {
        match self {
            Exponent::Const(c) => c as i64,
            Exponent::Shift(c) => i as i64 + c,
        }
    }
}

/// The rule family `u x^i v -> p y^e(i) q` for every `i >= min_exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSchema {
    pub prefix: Word,
    pub pumped: Letter,
    pub min_exp: usize,
    pub suffix: Word,
    pub rhs_prefix: Word,
    pub rhs_pumped: Letter,
    pub exponent: Exponent,
    pub rhs_suffix: Word,
}

impl RuleSchema {
    pub fn lhs_len(&self, i: usize) -> usize {
        self.prefix.len() + i + self.suffix.len()
    }

    /// Instantiates the schema at exponent `i`. Panics if `i < min_exp`.
    pub fn instance(&self, i: usize) -> (Word, Word) {
        assert!(i >= self.min_exp, "schema instantiated below its bound");
        let lhs = self
            .prefix
            .concat(&Word::power(self.pumped, i))
            .concat(&self.suffix);
        let e = self.exponent.at(i).max(0) as usize;
        let rhs = self
            .rhs_prefix
            .concat(&Word::power(self.rhs_pumped, e))
            .concat(&self.rhs_suffix);
        (lhs, rhs)
    }

    /// Exponents `i` for which an instance of the left-hand side starts at `pos`,
    /// largest first.
    fn matches_at(&self, w: &[Letter], pos: usize) -> Vec<usize> {
        let u = self.prefix.letters();
        let start = pos + u.len();
        if w.len() < start || &w[pos..start] != u {
            return Vec::new();
        }
        let run = w[start..].iter().take_while(|&&l| l == self.pumped).count();
        let v = self.suffix.letters();
        (self.min_exp..=run)
            .rev()
            .filter(|&i| w[start + i..].starts_with(v))
            .collect()
    }

    fn first_match_at(&self, w: &[Letter], pos: usize) -> Option<usize> {
        let u = self.prefix.letters();
        let start = pos + u.len();
        if w.len() < start || &w[pos..start] != u {
            return None;
        }
        let run = w[start..].iter().take_while(|&&l| l == self.pumped).count();
        let v = self.suffix.letters();
        (self.min_exp..=run)
            .rev()
            .find(|&i| w[start + i..].starts_with(v))
    }
}

/// A rewriting rule: either a single pair or a pumped family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Plain { lhs: Word, rhs: Word },
    Schema(RuleSchema),
}

impl Rule {
    pub fn plain(lhs: Word, rhs: Word) -> Self {
        Rule::Plain { lhs, rhs }
    }

    pub fn words(&self) -> Vec<&Word> {
        match self {
            Rule::Plain { lhs, rhs } => vec![lhs, rhs],
            Rule::Schema(s) => vec![&s.prefix, &s.suffix, &s.rhs_prefix, &s.rhs_suffix],
        }
    }

    fn letters(&self) -> Vec<Letter> {
        let mut ls: Vec<Letter> = self
            .words()
            .into_iter()
            .flat_map(|w| w.letters().to_vec())
            .collect();
        if let Rule::Schema(s) = self {
            ls.push(s.pumped);
            ls.push(s.rhs_pumped);
        }
        ls
    }

    /// Instances of this rule; schemas are expanded for exponents up to `bound`.
    pub fn instances(&self, bound: usize) -> Vec<(Word, Word)> {
        match self {
            Rule::Plain { lhs, rhs } => vec![(lhs.clone(), rhs.clone())],
            Rule::Schema(s) => (s.min_exp..=bound.max(s.min_exp))
                .map(|i| s.instance(i))
                .collect(),
        }
    }
}

/// Index of a rule that failed the length-reduction check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminationViolation {
    pub rule: usize,
    pub reason: String,
}

impl fmt::Display for TerminationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {}: {}", self.rule, self.reason)
    }
}

/// Confirms every rule is length-reducing; schemas are checked symbolically.
pub fn check_termination(rules: &[Rule]) -> Result<(), TerminationViolation> {
    for (idx, rule) in rules.iter().enumerate() {
        let fail = |reason: String| TerminationViolation { rule: idx, reason };
        match rule {
            Rule::Plain { lhs, rhs } => {
                if lhs.is_empty() {
                    return Err(fail("empty left-hand side".into()));
                }
                if lhs.len() <= rhs.len() {
                    return Err(fail(format!(
                        "length {} does not exceed right-hand length {}",
                        lhs.len(),
                        rhs.len()
                    )));
                }
            }
            Rule::Schema(s) => {
                if s.min_exp < 1 {
                    return Err(fail("exponent bound must be at least 1".into()));
                }
                let fixed_lhs = (s.prefix.len() + s.suffix.len()) as i64;
                let fixed_rhs = (s.rhs_prefix.len() + s.rhs_suffix.len()) as i64;
                let k = s.min_exp as i64;
                match s.exponent {
                    Exponent::Const(c) => {
                        // lhs grows with i while rhs is fixed: the bound case decides.
                        if fixed_lhs + k <= fixed_rhs + c as i64 {
                            return Err(fail(format!("not length-reducing at i = {k}")));
                        }
                    }
                    Exponent::Shift(c) => {
                        if k + c < 0 {
                            return Err(fail(format!("negative exponent at i = {k}")));
                        }
                        if fixed_lhs <= fixed_rhs + c {
                            return Err(fail("not length-reducing for any i".into()));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// How much is known about confluence of a system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConfluenceStatus {
    /// Declared complete by the input, not checked.
    Asserted,
    /// Every critical pair resolves with schemas instantiated up to the bound.
    Checked(usize),
    Unchecked,
}

impl ConfluenceStatus {
    /// Whether normal forms may be treated as canonical representatives.
    pub fn trusted(self) -> bool {
        !matches!(self, ConfluenceStatus::Unchecked)
    }
}

/// A critical pair whose two sides reach different normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub overlap: Word,
    pub left: Word,
    pub right: Word,
    pub left_nf: Word,
    pub right_nf: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub bound: usize,
    pub pairs_checked: usize,
    pub unresolved: Vec<CriticalPair>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Result of [`RewritingSystem::equivalence_class`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    /// Shortlex-sorted members found.
    pub words: Vec<Word>,
    pub exhaustive: bool,
}

impl EquivalenceClass {
    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }
}

/// A terminating string rewriting system over a fixed alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewritingSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    confluence: ConfluenceStatus,
}

impl RewritingSystem {
    /// Builds a system, rejecting foreign letters and rules that are not length-reducing.
    pub fn new(alphabet: Alphabet, rules: Vec<Rule>) -> Result<Self, MonoidError> {
        for rule in &rules {
            if let Some(&l) = rule.letters().iter().find(|&&l| l as usize >= alphabet.len()) {
                return Err(MonoidError::ForeignLetter(format!("#{l}")));
            }
        }
        check_termination(&rules).map_err(MonoidError::NotTerminating)?;
        Ok(RewritingSystem {
            alphabet,
            rules,
            confluence: ConfluenceStatus::Unchecked,
        })
    }

    pub fn with_confluence(mut self, status: ConfluenceStatus) -> Self {
        self.confluence = status;
        self
    }

    /// Runs the bounded critical-pair check and records the result.
    pub fn checked(self, bound: usize) -> (Self, ConfluenceReport) {
        let report = self.check_local_confluence(bound);
        let status = if report.passed() {
            ConfluenceStatus::Checked(bound)
        } else {
            ConfluenceStatus::Unchecked
        };
        (self.with_confluence(status), report)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn confluence(&self) -> ConfluenceStatus {
        self.confluence
    }

    /// Leftmost match: first position, then first declared rule, then the longest pumped run.
    fn leftmost_redex(&self, w: &[Letter]) -> Option<(usize, usize, Word)> {
        for pos in 0..w.len() {
            for rule in &self.rules {
                match rule {
                    Rule::Plain { lhs, rhs } => {
                        if w[pos..].starts_with(lhs.letters()) {
                            return Some((pos, lhs.len(), rhs.clone()));
                        }
                    }
                    Rule::Schema(s) => {
                        if let Some(i) = s.first_match_at(w, pos) {
                            let (lhs, rhs) = s.instance(i);
                            return Some((pos, lhs.len(), rhs));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.leftmost_redex(w.letters()).is_none()
    }

    /// Deterministic normal form under the leftmost strategy.
    pub fn normal_form(&self, w: &Word) -> Word {
        let mut cur = w.letters().to_vec();
        while let Some((pos, len, rhs)) = self.leftmost_redex(&cur) {
            cur.splice(pos..pos + len, rhs.letters().iter().copied());
        }
        Word::from(cur)
    }

    /// Every word reachable from `w` by exactly one rule application.
    pub fn one_step_reducts(&self, w: &Word) -> Vec<Word> {
        let letters = w.letters();
        let mut out = Vec::new();
        for pos in 0..letters.len() {
            for rule in &self.rules {
                let mut apply = |len: usize, rhs: &Word| {
                    let mut v = letters[..pos].to_vec();
                    v.extend_from_slice(rhs.letters());
                    v.extend_from_slice(&letters[pos + len..]);
                    out.push(Word::from(v));
                };
                match rule {
                    Rule::Plain { lhs, rhs } => {
                        if letters[pos..].starts_with(lhs.letters()) {
                            apply(lhs.len(), rhs);
                        }
                    }
                    Rule::Schema(s) => {
                        for i in s.matches_at(letters, pos) {
                            let (lhs, rhs) = s.instance(i);
                            apply(lhs.len(), &rhs);
                        }
                    }
                }
            }
        }
        out
    }

    /// Rule instances used by the bounded checks: schemas expanded up to `bound`.
    pub fn instantiated(&self, bound: usize) -> Vec<(Word, Word)> {
        self.rules.iter().flat_map(|r| r.instances(bound)).collect()
    }

    /// Critical pairs of the instantiated rules, each resolved with full normal forms.
    pub fn check_local_confluence(&self, schema_bound: usize) -> ConfluenceReport {
        let inst = self.instantiated(schema_bound);
        let mut checked = 0;
        let mut unresolved = Vec::new();
        let mut resolve = |overlap: Word, left: Word, right: Word| {
            let left_nf = self.normal_form(&left);
            let right_nf = self.normal_form(&right);
            if left_nf != right_nf {
                unresolved.push(CriticalPair {
                    overlap,
                    left,
                    right,
                    left_nf,
                    right_nf,
                });
            }
        };
        for (i, (l1, r1)) in inst.iter().enumerate() {
            for (j, (l2, r2)) in inst.iter().enumerate() {
                let a = l1.letters();
                let b = l2.letters();
                // proper overlaps: a suffix of l1 is a prefix of l2
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] == b[..k] {
                        checked += 1;
                        let overlap = l1.concat(&Word::from(&b[k..]));
                        let left = r1.concat(&Word::from(&b[k..]));
                        let right = Word::from(&a[..a.len() - k]).concat(r2);
                        resolve(overlap, left, right);
                    }
                }
                // inclusions: l2 occurs inside l1
                if b.len() <= a.len() {
                    for p in 0..=a.len() - b.len() {
                        if i == j && p == 0 {
                            continue;
                        }
                        if a[p..p + b.len()] == *b {
                            checked += 1;
                            let right = Word::from(&a[..p])
                                .concat(r2)
                                .concat(&Word::from(&a[p + b.len()..]));
                            resolve(l1.clone(), r1.clone(), right);
                        }
                    }
                }
            }
        }
        ConfluenceReport {
            bound: schema_bound,
            pairs_checked: checked,
            unresolved,
        }
    }

    /// Words equal to `w` under the rules read as equations, found by
    /// applying rules in both directions without exceeding `max_len` letters.
    ///
    /// The class is exact when `exhaustive` is set: no step was cut off by
    /// the length or size limits. Needs no confluence.
    pub fn equivalence_class(&self, w: &Word, max_len: usize, max_size: usize) -> EquivalenceClass {
        let mut pairs: Vec<(Word, Word)> = Vec::new();
        for rule in &self.rules {
            match rule {
                Rule::Plain { lhs, rhs } => pairs.push((lhs.clone(), rhs.clone())),
                Rule::Schema(s) => {
                    let top = max_len + s.exponent.at(0).unsigned_abs() as usize + 2;
                    pairs.extend((s.min_exp..=top.max(s.min_exp)).map(|i| s.instance(i)));
                }
            }
        }
        let mut seen: HashSet<Word> = HashSet::from([w.clone()]);
        let mut queue: VecDeque<Word> = VecDeque::from([w.clone()]);
        let mut exhaustive = true;
        while let Some(cur) = queue.pop_front() {
            let mut next = self.one_step_reducts(&cur);
            let c = cur.letters();
            for (lhs, rhs) in &pairs {
                let r = rhs.letters();
                if r.len() > c.len() {
                    continue;
                }
                for pos in 0..=c.len() - r.len() {
                    if c[pos..pos + r.len()] != *r {
                        continue;
                    }
                    if c.len() - r.len() + lhs.len() > max_len {
                        exhaustive = false;
                        continue;
                    }
                    let mut v = c[..pos].to_vec();
                    v.extend_from_slice(lhs.letters());
                    v.extend_from_slice(&c[pos + r.len()..]);
                    next.push(Word::from(v));
                }
            }
            for v in next {
                if seen.contains(&v) {
                    continue;
                }
                if seen.len() >= max_size {
                    exhaustive = false;
                    break;
                }
                seen.insert(v.clone());
                queue.push_back(v);
            }
        }
        let mut words: Vec<Word> = seen.into_iter().collect();
        words.sort();
        EquivalenceClass { words, exhaustive }
    }

    /// Length of the longest prefix of `w` that no rewrite of any extension `w·m`
    /// can modify.
    ///
    /// For a confluent system, every element `w·m` then has a normal form
    /// starting with that prefix, which refutes left divisibility cheaply.
    pub fn stable_prefix_len(&self, w: &Word) -> usize {
        (0..=w.len())
            .rev()
            .find(|&len| self.prefix_is_stable(&w.letters()[..len]))
            .unwrap_or(0)
    }

    fn prefix_is_stable(&self, prefix: &[Letter]) -> bool {
        let len = prefix.len();
        for p in 0..len {
            let tail = &prefix[p..];
            for rule in &self.rules {
                let instances = match rule {
                    Rule::Plain { lhs, rhs } => vec![(lhs.clone(), rhs.clone())],
                    Rule::Schema(s) => {
                        let slack = s.prefix.len()
                            + s.suffix.len()
                            + s.rhs_prefix.len()
                            + s.rhs_suffix.len()
                            + s.exponent.at(0).unsigned_abs() as usize
                            + tail.len()
                            + 2;
                        (s.min_exp..=s.min_exp + slack).map(|i| s.instance(i)).collect()
                    }
                };
                for (lhs, rhs) in instances {
                    let l = lhs.letters();
                    let compatible = if l.len() <= tail.len() {
                        tail.starts_with(l)
                    } else {
                        l.starts_with(tail)
                    };
                    if !compatible {
                        continue;
                    }
                    let lcp = l
                        .iter()
                        .zip(rhs.letters())
                        .take_while(|(x, y)| x == y)
                        .count();
                    if p + lcp < len {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_sided_pumping() -> RewritingSystem {
        // ab^ia -> aba, ba^ib -> bab, sa -> a, tb -> b
        let z = Alphabet::new(["a", "b", "s", "t"]).unwrap();
        let w = |s: &str| z.parse_word(s).unwrap();
        let rules = vec![
            Rule::Schema(RuleSchema {
                prefix: w("a"),
                pumped: 1,
                min_exp: 2,
                suffix: w("a"),
                rhs_prefix: w("a b a"),
                rhs_pumped: 1,
                exponent: Exponent::Const(0),
                rhs_suffix: Word::empty(),
            }),
            Rule::Schema(RuleSchema {
                prefix: w("b"),
                pumped: 0,
                min_exp: 2,
                suffix: w("b"),
                rhs_prefix: w("b a b"),
                rhs_pumped: 0,
                exponent: Exponent::Const(0),
                rhs_suffix: Word::empty(),
            }),
            Rule::plain(w("s a"), w("a")),
            Rule::plain(w("t b"), w("b")),
        ];
        RewritingSystem::new(z, rules).unwrap()
    }

    #[test]
    fn pumped_normal_form() {
        let sys = two_sided_pumping();
        let z = sys.alphabet().clone();
        let nf = sys.normal_form(&z.parse_word("a b b b a").unwrap());
        assert_eq!(z.render(&nf), "a b a");
        assert_eq!(sys.normal_form(&Word::empty()), Word::empty());
        let nf = sys.normal_form(&z.parse_word("s s a b b a").unwrap());
        assert_eq!(z.render(&nf), "a b a");
    }

    #[test]
    fn termination_rejects_growing_rule() {
        let r = vec![Rule::plain(Word::from(vec![0]), Word::from(vec![0, 1]))];
        assert_eq!(check_termination(&r).unwrap_err().rule, 0);
        let z = Alphabet::new(["a", "b"]).unwrap();
        assert!(RewritingSystem::new(z, r).is_err());
    }

    #[test]
    fn termination_for_shift_schema() {
        // a c^i a -> b c^(i-1) b is length reducing for all i >= 2
        let s = RuleSchema {
            prefix: Word::from(vec![0]),
            pumped: 2,
            min_exp: 2,
            suffix: Word::from(vec![0]),
            rhs_prefix: Word::from(vec![1]),
            rhs_pumped: 2,
            exponent: Exponent::Shift(-1),
            rhs_suffix: Word::from(vec![1]),
        };
        assert!(check_termination(&[Rule::Schema(s.clone())]).is_ok());
        let mut bad = s;
        bad.exponent = Exponent::Shift(1);
        assert!(check_termination(&[Rule::Schema(bad)]).is_err());
    }

    #[test]
    fn single_rule_without_self_overlap_is_confluent() {
        let z = Alphabet::new(["a", "b"]).unwrap();
        let sys = RewritingSystem::new(z, vec![Rule::plain(Word::from(vec![0, 1]), Word::empty())])
            .unwrap();
        let rep = sys.check_local_confluence(8);
        assert!(rep.passed());
        assert_eq!(rep.pairs_checked, 0);
    }

    #[test]
    fn pumped_pair_is_locally_confluent() {
        assert!(two_sided_pumping().check_local_confluence(8).passed());
    }

    #[test]
    fn stable_prefix_of_pumped_words() {
        let sys = two_sided_pumping();
        let z = sys.alphabet().clone();
        let w = z.parse_word("b b a").unwrap();
        assert_eq!(sys.stable_prefix_len(&w), 3);
        // "s" can vanish through sa -> a
        let w = z.parse_word("s").unwrap();
        assert_eq!(sys.stable_prefix_len(&w), 0);
    }

    #[test]
    fn reducts_include_every_schema_instance() {
        let sys = two_sided_pumping();
        let z = sys.alphabet().clone();
        let w = z.parse_word("a b b b a").unwrap();
        let r = sys.one_step_reducts(&w);
        assert_eq!(r, vec![z.parse_word("a b a").unwrap()]);
    }

    #[test]
    fn equivalence_class_without_confluence() {
        // a c^i a = b c^(i-1) b; a c c a c c a has two irreducible forms
        let z = Alphabet::new(["a", "b", "c"]).unwrap();
        let w = |s: &str| z.parse_word(s).unwrap();
        let sys = RewritingSystem::new(
            z.clone(),
            vec![Rule::Schema(RuleSchema {
                prefix: w("a"),
                pumped: 2,
                min_exp: 2,
                suffix: w("a"),
                rhs_prefix: w("b"),
                rhs_pumped: 2,
                exponent: Exponent::Shift(-1),
                rhs_suffix: w("b"),
            })],
        )
        .unwrap();
        let class = sys.equivalence_class(&w("a c c a c c a"), 12, 1000);
        assert!(class.exhaustive);
        assert!(class.contains(&w("b c b c c a")));
        assert!(class.contains(&w("a c c b c b")));
        let small = sys.equivalence_class(&w("b c b"), 3, 1000);
        assert!(!small.exhaustive);
        let full = sys.equivalence_class(&w("b c b"), 8, 1000);
        assert!(full.exhaustive);
        assert_eq!(full.words, vec![w("b c b"), w("a c c a")]);
    }
}
