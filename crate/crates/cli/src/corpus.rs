//! Worked examples of presented acts, each checked against its expected
//! outcomes.
//!
//! Every check carries a basis: `stated` for outcomes claimed alongside the
//! example, `computed` for values found independently (by brute force or a
//! second method) and `trivial` for sanity checks.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use actpres::act::{
    act_from_presentation, ComplementSubact, Decision, Interpretation, Membership, RightIdeal, RightRegularAct,
};
use actpres::construct::{
    intersection_generators, large_subact_generators, large_subact_presentation, mutually_derivable,
    simplify_with, subact_presentation, union_presentation, Choices, ConstructBounds, ConstructError,
    LargeSubact,
};
use actpres::presentation::{is_consequence, tietze_apply, SearchBounds, TietzeMove, Verdict};
use actpres::{ActPresentation, FreeActElement, Monoid, Relation, Word};

use crate::format::{parse, Document};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Stated,
    Computed,
    Trivial,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Stated => "stated",
            Basis::Computed => "computed",
            Basis::Trivial => "trivial",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub basis: Basis,
    pub passed: bool,
    pub detail: String,
}

/// One corpus entry: a document in the text format and its checks.
pub struct CorpusCase {
    pub id: &'static str,
    pub summary: &'static str,
    pub document: &'static str,
    checks: fn(&Document) -> Result<Vec<Check>, String>,
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub id: &'static str,
    pub checks: Vec<Check>,
    /// Set when the case could not be run at all.
    pub error: Option<String>,
    pub elapsed: Duration,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

impl CorpusCase {
    pub fn run(&self) -> CaseReport {
        let start = Instant::now();
        let outcome = parse(self.document)
            .map_err(|e| format!("document does not parse: {e}"))
            .and_then(|doc| (self.checks)(&doc));
        let (checks, error) = match outcome {
            Ok(c) => (c, None),
            Err(e) => (Vec::new(), Some(e)),
        };
        CaseReport {
            id: self.id,
            checks,
            error,
            elapsed: start.elapsed(),
        }
    }
}

pub fn cases() -> Vec<CorpusCase> {
    vec![
        CorpusCase {
            id: "trivial-act-over-free-monoid",
            summary: "one-element act over a free monoid with relations for some letters only",
            document: include_str!("../corpus/trivial_act_free_monoid.txt"),
            checks: trivial_act_free_monoid,
        },
        CorpusCase {
            id: "free-union-of-ideals",
            summary: "ideals of the free monoid generated by a^i b and b^i a",
            document: include_str!("../corpus/free_union_of_ideals.txt"),
            checks: free_union_of_ideals,
        },
        CorpusCase {
            id: "pumped-union-of-ideals",
            summary: "union of two ideals of a two-sided pumping monoid",
            document: include_str!("../corpus/pumped_union_of_ideals.txt"),
            checks: pumped_union_of_ideals,
        },
        CorpusCase {
            id: "shifted-pumping-intersection",
            summary: "intersection of two free ideals under a shifted pumping rule",
            document: include_str!("../corpus/shifted_pumping_intersection.txt"),
            checks: shifted_pumping_intersection,
        },
        CorpusCase {
            id: "idempotent-pumping-union",
            summary: "union of an idempotent-generated ideal and a free ideal",
            document: include_str!("../corpus/idempotent_pumping_union.txt"),
            checks: idempotent_pumping_union,
        },
        CorpusCase {
            id: "large-ideal-of-pumped-monoid",
            summary: "ideal with a two-element complement in a one-sided pumping monoid",
            document: include_str!("../corpus/large_ideal_of_pumped_monoid.txt"),
            checks: large_ideal_of_pumped_monoid,
        },
        CorpusCase {
            id: "left-zero-trivial-act",
            summary: "one-element act over a finite monoid with a left zero",
            document: include_str!("../corpus/left_zero_trivial_act.txt"),
            checks: left_zero_trivial_act,
        },
    ]
}

pub fn find(id: &str) -> Option<CorpusCase> {
    cases().into_iter().find(|c| c.id == id)
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, basis: Basis, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            basis,
            passed,
            detail: detail.into(),
        });
    }

    fn verdict(&mut self, basis: Basis, name: impl Into<String>, v: &Verdict, want_proved: bool) {
        let passed = if want_proved { v.is_proved() } else { v.is_disproved() };
        self.add(basis, name, passed, v.to_string());
    }
}

type Res<T> = Result<T, String>;

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn load(doc: &Document) -> Res<(Arc<Monoid>, ActPresentation)> {
    let m = doc.load_monoid().map_err(err)?;
    let p = doc.load_presentation(&m).map_err(err)?;
    Ok((m, p))
}

fn word(m: &Monoid, text: &str) -> Res<Word> {
    m.alphabet().parse_word(text).map_err(err)
}

fn el(p: &ActPresentation, text: &str) -> Res<FreeActElement> {
    p.parse_element(text).map_err(err)
}

fn presentation(m: &Arc<Monoid>, gens: &[&str], rels: &[(String, String)]) -> Res<ActPresentation> {
    let empty = ActPresentation::with_names(m.clone(), gens.iter().copied(), vec![]).map_err(err)?;
    let rs = rels
        .iter()
        .map(|(l, r)| Ok(Relation::new(el(&empty, l)?, el(&empty, r)?)))
        .collect::<Res<Vec<_>>>()?;
    empty.with_relations(rs).map_err(err)
}

fn power(letter: &str, i: usize) -> String {
    vec![letter; i].join(" ")
}

fn consequence(p: &ActPresentation, l: &str, r: &str) -> Res<Verdict> {
    Ok(is_consequence(p, &el(p, l)?, &el(p, r)?, SearchBounds::default()))
}

/// The first few words, rendered.
fn render_all(m: &Monoid, ws: &[Word]) -> String {
    let mut out: Vec<String> = ws.iter().take(8).map(|w| m.render(w)).collect();
    if ws.len() > 8 {
        out.push(format!("and {} more", ws.len() - 8));
    }
    out.join(", ")
}

/// Nonempty canonical words of length at most `len` outside `ideal`; an
/// undecided word is an error.
fn uncovered(m: &Monoid, len: usize, ideal: &RightIdeal) -> Res<Vec<Word>> {
    let mut out = Vec::new();
    for w in m.enumerate_elements(len).into_iter().filter(|w| !w.is_empty()) {
        match ideal.decide(&w) {
            Decision::Yes => {}
            Decision::No => out.push(w),
            Decision::Unknown => return Err(format!("membership of {} undecided", m.render(&w))),
        }
    }
    Ok(out)
}

fn trivial_act_free_monoid(doc: &Document) -> Res<Vec<Check>> {
    let (m, p) = load(doc)?;
    let mut c = Checks::default();
    let unrelated = m.alphabet().name((m.alphabet().len() - 1) as u32).to_string();
    let v = consequence(&p, &format!("o . {unrelated}"), "o")?;
    c.verdict(Basis::Stated, format!("o . {unrelated} = o does not follow"), &v, false);
    let v = consequence(&p, "o . x0", "o")?;
    c.verdict(Basis::Trivial, "o . x0 = o follows", &v, true);
    let v = consequence(&p, "o . x3 x1 x0", "o")?;
    c.verdict(Basis::Computed, "o . x3 x1 x0 = o follows", &v, true);
    Ok(c.0)
}

fn free_union_of_ideals(doc: &Document) -> Res<Vec<Check>> {
    let (m, p) = load(doc)?;
    let model = RightRegularAct::new(m.clone());
    let mut c = Checks::default();
    let len = 7;
    let mut gens = Vec::new();
    for i in 0..=len {
        gens.push(word(&m, &format!("{} b", power("a", i)))?);
        gens.push(word(&m, &format!("{} a", power("b", i)))?);
    }
    let both = RightIdeal::new(m.clone(), gens, len);
    let missed = uncovered(&m, len, &both)?;
    c.add(
        Basis::Stated,
        format!("every non-identity word up to length {len} lies in the union"),
        missed.is_empty(),
        render_all(&m, &missed),
    );
    let outside = both.decide(&Word::empty()) == Decision::No;
    c.add(Basis::Trivial, "the identity lies outside the union", outside, "");

    let member = |w: &Word| Decision::from_bool(!w.is_empty());
    let ctx = LargeSubact {
        presentation: &p,
        ambient: Interpretation::new(&model, doc.load_images(&p, &model).map_err(err)?),
        member: &member,
        bounds: ConstructBounds::default(),
    };
    let found = large_subact_generators(&ctx).map_err(err)?;
    let expected = doc.load_subact_generators("C", &model).map_err(err)?;
    c.add(
        Basis::Stated,
        "the union is generated by a and b",
        found.images == expected,
        render_all(&m, &found.images),
    );
    let pres = large_subact_presentation(&ctx, &found).map_err(err)?;
    c.add(
        Basis::Stated,
        "the union is free on a and b",
        pres.presentation.relations().is_empty(),
        pres.presentation.to_string(),
    );

    let short = m.enumerate_elements(5);
    let mut clash = None;
    let mut seen = std::collections::HashMap::new();
    for g in &found.images {
        for u in &short {
            if let Some((h, v)) = seen.insert(m.multiply(g, u), (g.clone(), u.clone())) {
                clash.get_or_insert(format!("{} . {} = {} . {}", m.render(&h), m.render(&v), m.render(g), m.render(u)));
            }
        }
    }
    c.add(
        Basis::Computed,
        "no relation among a . u and b . v for u, v up to length 5",
        clash.is_none(),
        clash.unwrap_or_default(),
    );

    let mut first_bad = None;
    for k in 1..=6 {
        let lower = (0..k)
            .map(|i| word(&m, &format!("{} b", power("a", i))))
            .collect::<Res<Vec<_>>>()?;
        let target = word(&m, &format!("{} b", power("a", k)))?;
        if RightIdeal::new(m.clone(), lower, len).decide(&target) != Decision::No && first_bad.is_none() {
            first_bad = Some(k);
        }
    }
    c.add(
        Basis::Stated,
        "a^k b is not generated by the a^i b with i < k, for k up to 6",
        first_bad.is_none(),
        first_bad.map(|k| format!("fails at k = {k}")).unwrap_or_default(),
    );
    Ok(c.0)
}

/// `g·b^i a = g·b a` for `2 <= i <= k`.
fn truncated_pumping(m: &Arc<Monoid>, gens: &[&str], k: usize) -> Res<ActPresentation> {
    let g = gens[0];
    let rels: Vec<(String, String)> = (2..=k)
        .map(|i| (format!("{g} . {} a", power("b", i)), format!("{g} . b a")))
        .collect();
    presentation(m, gens, &rels)
}

fn normal_forms(c: &mut Checks, m: &Monoid, cases: &[(&str, &str)]) -> Res<()> {
    for (w, nf) in cases {
        let got = m.render(&m.canonical(&word(m, w)?));
        c.add(Basis::Computed, format!("normal form of {w} is {nf}"), got == *nf, got);
    }
    Ok(())
}

fn pumped_union_of_ideals(doc: &Document) -> Res<Vec<Check>> {
    let (m, p) = load(doc)?;
    let model = RightRegularAct::new(m.clone());
    let mut c = Checks::default();
    normal_forms(
        &mut c,
        &m,
        &[("a b b a", "a b a"), ("b a a a b", "b a b"), ("s a", "a"), ("t b b", "b b"), ("s t b a b b b a", "s b a b a")],
    )?;

    let v = consequence(&p, &format!("A . {} a", power("b", 5)), "A . b a")?;
    c.verdict(Basis::Stated, "the document's truncation misses A . b^5 a = A . b a", &v, false);
    for k in 2..=6 {
        let q = truncated_pumping(&m, &["A", "T"], k)?;
        let v = consequence(&q, &format!("A . {} a", power("b", k + 1)), "A . b a")?;
        c.verdict(Basis::Stated, format!("truncation at {k} misses i = {}", k + 1), &v, false);
        let v = consequence(&q, &format!("A . {} a", power("b", k)), "A . b a")?;
        c.verdict(Basis::Computed, format!("truncation at {k} keeps i = {k}"), &v, true);
    }

    let len = 6;
    let a_gens = doc.load_subact_generators("A", &model).map_err(err)?;
    let b_gens = doc.load_subact_generators("B", &model).map_err(err)?;
    let reach = |gens: &[Word]| -> std::collections::HashSet<Word> {
        let mut out = std::collections::HashSet::new();
        for u in m.enumerate_elements(len - 1) {
            for g in gens {
                out.insert(m.multiply(g, &u));
            }
        }
        out
    };
    let (in_a, in_b) = (reach(&a_gens), reach(&b_gens));
    let (a, b) = (word(&m, "a")?, word(&m, "b")?);
    let both_contain = [&a, &b].iter().all(|g| in_a.contains(*g) && in_b.contains(*g));
    let outside: Vec<Word> = in_a
        .intersection(&in_b)
        .filter(|w| !(w.starts_with(&a) || w.starts_with(&b)))
        .cloned()
        .collect();
    c.add(
        Basis::Stated,
        format!("the intersection is generated by a and b, multipliers up to length {}", len - 1),
        both_contain && outside.is_empty(),
        format!("a and b in both: {both_contain}; outside a M and b M: [{}]", render_all(&m, &outside)),
    );

    let a_side = RightIdeal::new(m.clone(), a_gens, len);
    let b_side = RightIdeal::new(m.clone(), b_gens, len);
    let union = RightIdeal::new(m.clone(), doc.load_subact_generators("C", &model).map_err(err)?, len);
    let mut bad = Vec::new();
    for w in m.enumerate_elements(len) {
        let inside = a_side.decide(&w) == Decision::Yes || b_side.decide(&w) == Decision::Yes;
        if inside != (union.decide(&w) == Decision::Yes) {
            bad.push(w);
        }
    }
    c.add(
        Basis::Stated,
        format!("the union is generated by s and t, up to length {len}"),
        bad.is_empty(),
        render_all(&m, &bad),
    );

    let mut seen = std::collections::HashMap::new();
    let mut clash = None;
    for g in ["s", "t"] {
        let g = word(&m, g)?;
        for u in m.enumerate_elements(5) {
            let value = m.multiply(&g, &u);
            if let Some(prev) = seen.insert(value.clone(), (g.clone(), u.clone())) {
                clash.get_or_insert(format!(
                    "{} . {} = {} . {}",
                    m.render(&prev.0),
                    m.render(&prev.1),
                    m.render(&g),
                    m.render(&u)
                ));
            }
        }
    }
    c.add(
        Basis::Computed,
        "the union is free on s and t, multipliers up to length 5",
        clash.is_none(),
        clash.unwrap_or_default(),
    );
    Ok(c.0)
}

fn shifted_pumping_intersection(doc: &Document) -> Res<Vec<Check>> {
    let m = doc.load_monoid().map_err(err)?;
    let sys = m.as_rewriting().ok_or("expected a rewriting monoid")?;
    let model = RightRegularAct::new(m.clone());
    let mut c = Checks::default();
    normal_forms(&mut c, &m, &[("a c c a", "b c b"), ("a c c c a", "b c c b")])?;

    let px = ActPresentation::with_names(m.clone(), ["X"], vec![]).map_err(err)?;
    let py = ActPresentation::with_names(m.clone(), ["Y"], vec![]).map_err(err)?;
    let xs = doc.load_subact_generators("A", &model).map_err(err)?;
    let ys = doc.load_subact_generators("B", &model).map_err(err)?;
    let range = 2..=8usize;
    let meet: Vec<Word> = range
        .clone()
        .map(|i| word(&m, &format!("a {} a", power("c", i))).map(|w| m.canonical(&w)))
        .collect::<Res<_>>()?;
    let bounds = ConstructBounds {
        witness_len: 9,
        ..ConstructBounds::default()
    };
    let u = union_presentation(&px, &py, &model, xs, ys, &meet, &Choices::new(), bounds).map_err(err)?;
    let found = intersection_generators(&u.presentation, &[0]);
    let a = word(&m, "a")?;
    let values: Vec<Word> = found.iter().map(|e| a.concat(&e.word)).collect();
    let ok = values.len() == meet.len()
        && values.iter().zip(&range.clone().collect::<Vec<_>>()).all(|(v, &i)| m.render(v) == format!("a {} a", power("c", i)));
    c.add(
        Basis::Stated,
        "the intersection generators read off the union are a c^i a",
        ok,
        render_all(&m, &values),
    );

    // a c^i a lies in a c^j a M exactly when some word of its class starts with a c^j a
    let mut redundant = Vec::new();
    for i in range.clone() {
        let value = word(&m, &format!("a {} a", power("c", i)))?;
        let class = sys.equivalence_class(&value, 2 * i + 4, 100_000);
        if !class.exhaustive {
            return Err(format!("class of a c^{i} a not exhausted"));
        }
        for w in &class.words {
            let l = w.letters();
            if l.first() == Some(&0) {
                let run = l[1..].iter().take_while(|&&x| x == 2).count();
                if l.get(1 + run) == Some(&0) && run >= 2 && run != i {
                    redundant.push(format!("a c^{i} a in a c^{run} a M"));
                }
            }
        }
    }
    c.add(
        Basis::Stated,
        "no a c^i a is generated by the others",
        redundant.is_empty(),
        redundant.join("; "),
    );
    Ok(c.0)
}

fn idempotent_pumping_union(doc: &Document) -> Res<Vec<Check>> {
    let (m, p) = load(doc)?;
    let model = RightRegularAct::new(m.clone());
    let mut c = Checks::default();
    normal_forms(&mut c, &m, &[("a a a", "a"), ("c a b", "a b"), ("a b b b a", "a b a")])?;

    let mut worst = 0;
    let mut failure = None;
    for i in 2..=10 {
        let (l, r) = (el(&p, &format!("A . {} a", power("b", i)))?, el(&p, "A . b a")?);
        match is_consequence(&p, &l, &r, SearchBounds::default()) {
            Verdict::Proved(seq) => {
                worst = worst.max(seq.len());
                if let Err(e) = seq.replay(&p) {
                    failure.get_or_insert(format!("i = {i}: certificate rejected: {e}"));
                }
            }
            other => {
                failure.get_or_insert(format!("i = {i}: {other}"));
            }
        }
    }
    c.add(
        Basis::Stated,
        "A . a = A proves every A . b^i a = A . b a, i up to 10",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("longest certificate {worst}")),
    );
    c.add(Basis::Computed, "each certificate has at most 5 steps", worst <= 5, worst.to_string());

    let mut q = truncated_pumping(&m, &["A"], 6)?;
    let mut rels = vec![Relation::new(el(&q, "A . a")?, el(&q, "A")?)];
    rels.extend(q.relations().iter().cloned());
    q = q.with_relations(rels).map_err(err)?;
    let mut removal = Ok(());
    while q.relations().len() > 1 {
        let last = q.relations().len() - 1;
        let step = TietzeMove::remove_proved(&q, &[last], SearchBounds::default())
            .map_err(err)
            .and_then(|mv| tietze_apply(&q, &mv).map_err(err));
        match step {
            Ok(next) => q = next,
            Err(e) => {
                removal = Err(e);
                break;
            }
        }
    }
    let reduced = removal.is_ok() && q.relations() == p.relations();
    c.add(
        Basis::Stated,
        "removing the pumped relations leaves A . a = A",
        reduced,
        removal.err().unwrap_or_else(|| q.to_string()),
    );

    let pc = ActPresentation::with_names(m.clone(), ["C"], vec![]).map_err(err)?;
    let a_img = doc.load_images(&p, &model).map_err(err)?;
    let c_img = doc.load_subact_generators("B", &model).map_err(err)?;
    let meet = vec![word(&m, "a b")?];
    let u = union_presentation(&p, &pc, &model, a_img, c_img, &meet, &Choices::new(), ConstructBounds::default())
        .map_err(err)?;
    let target = presentation(
        &m,
        &["A", "C"],
        &[("A . a".into(), "A".into()), ("A . b".into(), "C . a b".into())],
    )?;
    let same = mutually_derivable(&u.presentation, &target, SearchBounds::default()).map_err(err)?;
    c.add(
        Basis::Stated,
        "the union is presented by A . a = A, A . b = C . a b",
        same,
        u.presentation.to_string(),
    );
    let found = intersection_generators(&target, &[0]);
    let want = vec![el(&target, "A . b")?];
    c.add(
        Basis::Stated,
        "the intersection is generated by A . b",
        found == want,
        found.iter().map(|e| target.render_element(e)).collect::<Vec<_>>().join(", "),
    );
    Ok(c.0)
}

/// `y·b^i a = y·a` for `1 <= i <= k`.
fn shortened_pumping(m: &Arc<Monoid>, k: usize) -> Res<ActPresentation> {
    let rels: Vec<(String, String)> = (1..=k)
        .map(|i| (format!("y . {} a", power("b", i)), "y . a".to_string()))
        .collect();
    presentation(m, &["y"], &rels)
}

fn large_ideal_of_pumped_monoid(doc: &Document) -> Res<Vec<Check>> {
    let (m, p) = load(doc)?;
    let model = RightRegularAct::new(m.clone());
    let mut c = Checks::default();
    let interp = Interpretation::new(&model, doc.load_images(&p, &model).map_err(err)?);

    let member = ComplementSubact::new(vec![Word::empty(), word(&m, "a")?], true);
    let ctx = LargeSubact {
        presentation: &p,
        ambient: interp.clone(),
        member: &member,
        bounds: ConstructBounds::default(),
    };
    let found = large_subact_generators(&ctx).map_err(err)?;
    let expected = doc.load_subact_generators("I", &model).map_err(err)?;
    c.add(
        Basis::Stated,
        "the ideal is generated by b, a a and a b",
        found.images == expected,
        render_all(&m, &found.images),
    );
    c.add(
        Basis::Computed,
        "the complement is 1 and a",
        found.complement.len() == 2,
        found.complement.len().to_string(),
    );
    let refused = matches!(large_subact_presentation(&ctx, &found), Err(ConstructError::Refused(_)));
    c.add(
        Basis::Computed,
        "the large subact presentation needs an instantiation bound",
        refused,
        "",
    );

    let len = 7;
    let parts: Vec<RightIdeal> = expected
        .iter()
        .map(|g| RightIdeal::new(m.clone(), vec![g.clone()], len))
        .collect();
    let mut bad = Vec::new();
    for w in m.enumerate_elements(len) {
        let hits: Vec<Decision> = parts.iter().map(|i| i.decide(&w)).collect();
        let yes = hits.iter().filter(|d| **d == Decision::Yes).count();
        let wanted = usize::from(member.decide(&w) == Decision::Yes);
        if hits.contains(&Decision::Unknown) || yes != wanted {
            bad.push(w);
        }
    }
    c.add(
        Basis::Stated,
        format!("the ideal is the disjoint union of b M, a a M and a b M, up to length {len}"),
        bad.is_empty(),
        render_all(&m, &bad),
    );

    let bounds = ConstructBounds {
        depth: 3,
        ..ConstructBounds::default()
    };
    let free = presentation(&m, &["y"], &[])?;
    for (g, name) in [("b", "b M"), ("a a", "a a M")] {
        let ideal = RightIdeal::new(m.clone(), vec![word(&m, g)?], 6);
        let gen = el(&p, &format!("one . {g}"))?;
        let sub = subact_presentation(&p, &interp, &ideal, &[("y".into(), gen)], &Choices::new(), bounds)
            .map_err(err)?;
        let s = simplify_with(&sub.presentation, &free, SearchBounds::default()).map_err(err)?;
        let detail = match s.unproved().first() {
            Some(&i) => format!(
                "not derivable from the free act: {}",
                sub.presentation.render_relation(&sub.presentation.relations()[i])
            ),
            None => String::new(),
        };
        c.add(Basis::Stated, format!("{name} is free on one generator"), s.accepted(), detail);
    }

    let ideal = RightIdeal::new(m.clone(), vec![word(&m, "a b")?], 6);
    let gen = el(&p, "one . a b")?;
    let sub = subact_presentation(&p, &interp, &ideal, &[("y".into(), gen)], &Choices::new(), bounds)
        .map_err(err)?;
    let mut failure = None;
    for i in 1..=bounds.depth {
        let v = consequence(&sub.presentation, &format!("y . {} a", power("b", i)), "y . a")?;
        if !v.is_proved() {
            failure.get_or_insert(format!("i = {i}: {v}"));
        }
    }
    c.add(
        Basis::Computed,
        "the constructed presentation of a b M proves y . b^i a = y . a within its depth",
        failure.is_none(),
        failure.unwrap_or_default(),
    );
    for k in 1..=5 {
        let q = shortened_pumping(&m, k)?;
        let v = consequence(&q, &format!("y . {} a", power("b", k + 1)), "y . a")?;
        c.verdict(Basis::Stated, format!("y . b^i a = y . a for i up to {k} misses i = {}", k + 1), &v, false);
    }
    Ok(c.0)
}

fn left_zero_trivial_act(doc: &Document) -> Res<Vec<Check>> {
    let (m, p) = load(doc)?;
    let mut c = Checks::default();
    let z = word(&m, "z")?;
    let left_zero = m
        .elements()
        .ok_or("expected a finite monoid")?
        .iter()
        .all(|w| m.multiply(&z, w) == m.canonical(&z));
    c.add(Basis::Trivial, "z is a left zero", left_zero, "");
    let act = act_from_presentation(&p).map_err(err)?;
    c.add(
        Basis::Stated,
        "0 = 0 . z presents the one-element act",
        act.act.len() == 1,
        format!("{} elements", act.act.len()),
    );
    Ok(c.0)
}
