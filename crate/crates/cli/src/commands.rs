//! The subcommands, as functions from arguments to stdout text and an exit code.

use std::fmt::Write as _;
use std::fs;
use std::sync::Arc;

use actpres::act::{ActError, ActModel, Decision, Interpretation, Membership, RightIdeal};
use actpres::construct::{
    extension_presentation, large_subact_generators, large_subact_presentation, rees_quotient_presentation,
    subact_presentation, trivial_letters_presentation, union_component_presentation, union_presentation,
    ConstructBounds, ConstructError, Construction, LargeSubact,
};
use actpres::presentation::{
    is_consequence, tietze_apply, Disproof, PresentationError, SearchBounds, TietzeError, TietzeMove, Verdict,
};
use actpres::{ActPresentation, FreeActElement, Letter, Monoid, Relation, Word};
use thiserror::Error;

use crate::corpus;
use crate::format::{parse, parse_element_arg, parse_word_arg, Document, FormatError, LoadedAct, ValueParser};
use crate::fuzz::{Limits, Suite};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{source}")]
    Format { path: String, source: FormatError },
    #[error("argument `{arg}`: {source}")]
    Argument { arg: String, source: FormatError },
    #[error("{path}:{line}: {message}")]
    Moves { path: String, line: usize, message: String },
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Tietze(#[from] TietzeError),
    #[error(transparent)]
    Act(#[from] ActError),
    #[error("{0}")]
    Usage(String),
}

/// Result lines for stdout and the exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.stdout, "{key}\t{value}");
    }
}

/// A document read from disk, keeping the path for diagnostics.
pub struct Loaded {
    pub path: String,
    pub doc: Document,
}

impl Loaded {
    pub fn read(path: &str) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_string(),
            source,
        })?;
        let doc = parse(&text).map_err(|source| CliError::Format {
            path: path.to_string(),
            source,
        })?;
        Ok(Loaded {
            path: path.to_string(),
            doc,
        })
    }

    /// Several files read as one document.
    pub fn read_all(paths: &[String]) -> Result<Self, CliError> {
        let mut texts = Vec::new();
        for p in paths {
            texts.push(fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.clone(),
                source,
            })?);
        }
        let doc = crate::format::parse_all(&texts).map_err(|(i, source)| CliError::Format {
            path: paths[i].clone(),
            source,
        })?;
        Ok(Loaded {
            path: paths.join("+"),
            doc,
        })
    }

    fn wrap<T>(&self, r: Result<T, FormatError>) -> Result<T, CliError> {
        r.map_err(|source| CliError::Format {
            path: self.path.clone(),
            source,
        })
    }

    pub fn monoid(&self) -> Result<Arc<Monoid>, CliError> {
        self.wrap(self.doc.load_monoid())
    }

    pub fn presentation(&self, m: &Arc<Monoid>) -> Result<ActPresentation, CliError> {
        self.wrap(self.doc.load_presentation(m))
    }
}

fn word_arg(m: &Monoid, text: &str) -> Result<Word, CliError> {
    parse_word_arg(m, text).map_err(|source| CliError::Argument {
        arg: text.to_string(),
        source,
    })
}

fn element_arg(p: &ActPresentation, text: &str) -> Result<FreeActElement, CliError> {
    parse_element_arg(p, text).map_err(|source| CliError::Argument {
        arg: text.to_string(),
        source,
    })
}

pub fn nf(path: &str, word: &str) -> Result<Output, CliError> {
    let m = Loaded::read(path)?.monoid()?;
    let w = word_arg(&m, word)?;
    let mut out = Output::default();
    out.line("nf", m.render(&m.canonical(&w)));
    if !m.equality_is_exact() {
        out.line("canonical", "unconfirmed");
    }
    Ok(out)
}

/// Exit 0 when equal, 1 when not, 2 when an unconfirmed rewriting system
/// leaves the question open.
pub fn eq(path: &str, w1: &str, w2: &str, max_len: usize) -> Result<Output, CliError> {
    let m = Loaded::read(path)?.monoid()?;
    let (u, v) = (word_arg(&m, w1)?, word_arg(&m, w2)?);
    let mut out = Output::default();
    let equal = if m.canonical(&u) == m.canonical(&v) {
        Some(true)
    } else if m.equality_is_exact() {
        Some(false)
    } else {
        let sys = m.as_rewriting().expect("only rewriting systems can be unconfirmed");
        let class = sys.equivalence_class(&u, max_len.max(u.len()).max(v.len()), 200_000);
        if class.words.contains(&v) {
            Some(true)
        } else if class.exhaustive {
            Some(false)
        } else {
            None
        }
    };
    match equal {
        Some(true) => out.line("equal", "true"),
        Some(false) => {
            out.line("equal", "false");
            out.code = 1;
        }
        None => {
            out.line("equal", "unknown");
            out.code = 2;
        }
    }
    Ok(out)
}

/// Exit 0 proved (certificate follows), 1 disproved, 2 unknown.
pub fn consequence(path: &str, lhs: &str, rhs: &str, bounds: SearchBounds) -> Result<Output, CliError> {
    let loaded = Loaded::read(path)?;
    let m = loaded.monoid()?;
    let p = loaded.presentation(&m)?;
    let (l, r) = (element_arg(&p, lhs)?, element_arg(&p, rhs)?);
    let v = is_consequence(&p, &l, &r, bounds);
    let mut out = Output {
        code: v.code(),
        ..Output::default()
    };
    match &v {
        Verdict::Proved(seq) => {
            out.line("verdict", "proved");
            out.line("steps", seq.len());
            out.stdout.push_str(&seq.to_text(&p));
        }
        Verdict::Disproved(Disproof::OrbitExhausted { side, size }) => {
            out.line("verdict", "disproved");
            out.line("orbit-exhausted", format!("side {side}, {size} elements"));
        }
        Verdict::Disproved(Disproof::Countermodel { act, images }) => {
            out.line("verdict", "disproved");
            out.line("countermodel-size", act.len());
            let imgs: Vec<&str> = images.iter().map(|&i| act.name(i)).collect();
            out.line("countermodel-images", imgs.join(" "));
        }
        Verdict::Unknown { explored } => {
            out.line("verdict", "unknown");
            out.line("explored", explored);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructKind {
    ReesQuotient,
    Extension,
    Union,
    UnionComponent,
    Subact,
    LargeSubact,
}

/// Options of `construct` beyond the kind and the primary files.
#[derive(Clone, Debug, Default)]
pub struct ConstructOptions {
    /// The `[subact]` entry naming `B`; the first one when absent.
    pub subact: Option<String>,
    /// A second document: the quotient presentation for `extension`, the
    /// presentation of `B` for `union`, of `A ∩ B` for `union-component`.
    pub with: Option<String>,
    /// Generator of the quotient presentation standing for the zero.
    pub zero: Option<String>,
    /// The `[subact]` entry listing generators of `A ∩ B` for `union`.
    pub meet: Option<String>,
    pub bounds: ConstructBounds,
}

pub fn construct(kind: ConstructKind, paths: &[String], opts: &ConstructOptions) -> Result<Output, CliError> {
    let primary = Loaded::read_all(paths)?;
    let m = primary.monoid()?;
    let secondary = opts.with.as_deref().map(Loaded::read).transpose()?;
    match primary.wrap(primary.doc.load_act(&m))? {
        LoadedAct::Finite(act) => {
            let job = Job::new(&primary, secondary.as_ref(), &m, &act, opts)?;
            let sub = primary.wrap(primary.doc.load_subact_generators(&job.subact_name, &act))?;
            let set = actpres::Subact::generated(&act, &sub).map_err(CliError::Act)?;
            let member = |v: &usize| Decision::from_bool(set.contains(*v));
            job.run(kind, &member)
        }
        LoadedAct::Regular(model) => {
            let job = Job::new(&primary, secondary.as_ref(), &m, &model, opts)?;
            let sub = primary.wrap(primary.doc.load_subact_generators(&job.subact_name, &model))?;
            let len = opts.bounds.witness_len + opts.bounds.depth;
            let ideal = RightIdeal::new(m.clone(), sub, len);
            let member = |v: &Word| ideal.decide(v);
            job.run(kind, &member)
        }
    }
}

struct Job<'a, A: ActModel> {
    primary: &'a Loaded,
    secondary: Option<&'a Loaded>,
    monoid: &'a Arc<Monoid>,
    model: &'a A,
    pres: ActPresentation,
    images: Vec<A::Value>,
    subact_name: String,
    opts: &'a ConstructOptions,
}

impl<'a, A: ActModel + ValueParser> Job<'a, A> {
    fn new(
        primary: &'a Loaded,
        secondary: Option<&'a Loaded>,
        monoid: &'a Arc<Monoid>,
        model: &'a A,
        opts: &'a ConstructOptions,
    ) -> Result<Self, CliError> {
        let pres = primary.presentation(monoid)?;
        let images = primary.wrap(primary.doc.load_images(&pres, model))?;
        let subact_name = match &opts.subact {
            Some(s) => s.clone(),
            None => primary
                .doc
                .subact_names()
                .into_iter()
                .next()
                .unwrap_or_default(),
        };
        Ok(Job {
            primary,
            secondary,
            monoid,
            model,
            pres,
            images,
            subact_name,
            opts,
        })
    }

    fn second(&self, what: &str) -> Result<(ActPresentation, Vec<A::Value>), CliError> {
        let s = self
            .secondary
            .ok_or_else(|| CliError::Usage(format!("{what} needs a second document (--with)")))?;
        let p = s.presentation(self.monoid)?;
        let images = s.wrap(s.doc.load_images(&p, self.model))?;
        Ok((p, images))
    }

    fn choices(&self) -> actpres::construct::Choices {
        let mut c = self.primary.doc.load_choices();
        if let Some(s) = self.secondary {
            for (k, key, v) in s.doc.load_choices().entries() {
                c.insert(k, key, v);
            }
        }
        c
    }

    /// Shortlex-least `x·w` representing `target`.
    fn witness(&self, target: &A::Value) -> Result<FreeActElement, CliError> {
        let mut words = self.monoid.enumerate_elements(self.opts.bounds.witness_len);
        words.sort();
        for w in &words {
            for (x, img) in self.images.iter().enumerate() {
                if self.model.act(img, w) == *target {
                    return Ok(FreeActElement::new(x as Letter, w.clone()));
                }
            }
        }
        Err(ConstructError::NoWitness(self.model.describe(target)).into())
    }

    fn subact_values(&self, name: &str) -> Result<Vec<A::Value>, CliError> {
        self.primary.wrap(self.primary.doc.load_subact_generators(name, self.model))
    }

    fn run<B: Membership<A::Value>>(&self, kind: ConstructKind, member: &B) -> Result<Output, CliError> {
        let bounds = self.opts.bounds;
        let interp = Interpretation::new(self.model, self.images.clone());
        let mut extra: Vec<(String, String)> = Vec::new();
        let c: Construction = match kind {
            ConstructKind::ReesQuotient => {
                let b_gens = self
                    .subact_values(&self.subact_name)?
                    .iter()
                    .map(|v| self.witness(v))
                    .collect::<Result<Vec<_>, _>>()?;
                let trivial = trivial_letters_presentation(self.monoid, "0")?;
                rees_quotient_presentation(&self.pres, &interp, member, &b_gens, &trivial)?
            }
            ConstructKind::Extension => {
                let (q, q_images) = self.second("extension")?;
                let zero = match &self.opts.zero {
                    Some(z) => Some(q.generator(z)?),
                    None => None,
                };
                extension_presentation(
                    &self.pres,
                    &q,
                    zero,
                    self.model,
                    self.images.clone(),
                    q_images,
                    member,
                    &self.choices(),
                    bounds,
                )?
            }
            ConstructKind::Union => {
                let (b, b_images) = self.second("union")?;
                let meet = match &self.opts.meet {
                    Some(name) => self.subact_values(name)?,
                    None => Vec::new(),
                };
                union_presentation(
                    &self.pres,
                    &b,
                    self.model,
                    self.images.clone(),
                    b_images,
                    &meet,
                    &self.choices(),
                    bounds,
                )?
            }
            ConstructKind::UnionComponent => {
                let meet = match self.secondary {
                    Some(_) => Some(self.second("union-component")?),
                    None => None,
                };
                union_component_presentation(
                    &self.pres,
                    self.model,
                    self.images.clone(),
                    member,
                    meet.as_ref().map(|(p, i)| (p, i.clone())),
                    &self.choices(),
                    bounds,
                )?
            }
            ConstructKind::Subact => {
                let taken: Vec<String> = self.pres.generators().names().to_vec();
                let mut y = Vec::new();
                for v in self.subact_values(&self.subact_name)? {
                    let name = actpres::act::fresh_name("y", &taken_with(&taken, &y));
                    extra.push((name.clone(), self.model.describe(&v)));
                    y.push((name, self.witness(&v)?));
                }
                subact_presentation(&self.pres, &interp, member, &y, &self.choices(), bounds)?
            }
            ConstructKind::LargeSubact => {
                let ctx = LargeSubact {
                    presentation: &self.pres,
                    ambient: Interpretation::new(self.model, self.images.clone()),
                    member,
                    bounds,
                };
                let gens = large_subact_generators(&ctx)?;
                for (n, v) in gens.names.iter().zip(&gens.images) {
                    extra.push((n.clone(), self.model.describe(v)));
                }
                large_subact_presentation(&ctx, &gens)?
            }
        };
        let mut out = Output::default();
        out.stdout.push_str(&c.transcript());
        for (n, v) in extra {
            out.line("image", format!("{n} = {v}"));
        }
        Ok(out)
    }
}

fn taken_with(taken: &[String], y: &[(String, FreeActElement)]) -> Vec<String> {
    taken.iter().cloned().chain(y.iter().map(|(n, _)| n.clone())).collect()
}

fn presentation_lines(out: &mut Output, p: &ActPresentation) {
    out.line("generators", p.generators().names().join(" "));
    for r in p.relations() {
        out.line("relation", p.render_relation(r));
    }
}

/// Applies the moves of a moves file in order, proving added and removed
/// relations, and prints the final presentation.
///
/// Lines: `add-relation: u = v`, `remove-relation: u = v`,
/// `add-generator: t = x . w` and `remove-generator: t`; `#` starts a comment.
pub fn tietze(pres_path: &str, moves_path: &str, bounds: SearchBounds) -> Result<Output, CliError> {
    let loaded = Loaded::read(pres_path)?;
    let m = loaded.monoid()?;
    let mut p = loaded.presentation(&m)?;
    let text = fs::read_to_string(moves_path).map_err(|source| CliError::Io {
        path: moves_path.to_string(),
        source,
    })?;
    let mut out = Output::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fail = |message: String| CliError::Moves {
            path: moves_path.to_string(),
            line: n + 1,
            message,
        };
        let (op, arg) = line
            .split_once(':')
            .ok_or_else(|| fail("expected `move: argument`".into()))?;
        let (op, arg) = (op.trim(), arg.trim());
        let relation = |p: &ActPresentation| -> Result<Relation, CliError> {
            let (l, r) = arg.split_once('=').ok_or_else(|| fail("expected `u = v`".into()))?;
            Ok(Relation::new(element_arg(p, l.trim())?, element_arg(p, r.trim())?))
        };
        let mv = match op {
            "add-relation" => TietzeMove::add_proved(&p, vec![relation(&p)?], bounds)?,
            "remove-relation" => {
                let r = relation(&p)?;
                let i = p
                    .relations()
                    .iter()
                    .position(|s| *s == r || s.reversed() == r)
                    .ok_or_else(|| fail(format!("no relation `{arg}`")))?;
                TietzeMove::remove_proved(&p, &[i], bounds)?
            }
            "add-generator" => {
                let (t, w) = arg.split_once('=').ok_or_else(|| fail("expected `t = x . w`".into()))?;
                TietzeMove::AddGenerators(vec![(t.trim().to_string(), element_arg(&p, w.trim())?)])
            }
            "remove-generator" => TietzeMove::RemoveGenerators(vec![p.generator(arg)?]),
            other => return Err(fail(format!("unknown move `{other}`"))),
        };
        p = tietze_apply(&p, &mv)?;
        out.line("applied", line);
    }
    presentation_lines(&mut out, &p);
    Ok(out)
}

/// Checks a presentation with generator images against a finite act.
pub fn verify(pres_path: &str, act_path: &str) -> Result<Output, CliError> {
    let pres_doc = Loaded::read(pres_path)?;
    let act_doc = Loaded::read(act_path)?;
    let m = if pres_doc.doc.monoid.is_some() {
        pres_doc.monoid()?
    } else {
        act_doc.monoid()?
    };
    let act = match act_doc.wrap(act_doc.doc.load_act(&m))? {
        LoadedAct::Finite(a) => a,
        LoadedAct::Regular(_) => return Err(CliError::Usage("verify needs a finite act".into())),
    };
    let p = pres_doc.presentation(&m)?;
    let images = pres_doc.wrap(pres_doc.doc.load_images(&p, &act))?;
    let v = p.verify(&act, &images)?;
    let mut out = Output::default();
    out.line("presents", v.holds());
    out.line("satisfies", v.violated.is_none());
    if let Some(i) = v.violated {
        out.line("violated", p.render_relation(&p.relations()[i]));
    }
    out.line("kernel-equal", v.kernel_equal);
    out.line("generates", v.generates);
    out.line("act-size", act.len());
    out.line("presented-size", v.presented_size);
    out.code = i32::from(!v.holds());
    Ok(out)
}

pub fn corpus_list() -> Output {
    let mut out = Output::default();
    for c in corpus::cases() {
        out.line(c.id, c.summary);
    }
    out
}

/// Runs one case or all of them; exit 1 when any check fails.
pub fn corpus_run(id: Option<&str>) -> Result<Output, CliError> {
    let cases = match id {
        Some(id) => vec![corpus::find(id).ok_or_else(|| CliError::Usage(format!("no corpus case `{id}`")))?],
        None => corpus::cases(),
    };
    let mut out = Output::default();
    for case in cases {
        let report = case.run();
        if let Some(e) = &report.error {
            out.line("error", format!("{}: {e}", report.id));
        }
        for c in &report.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            let mut value = format!("{}\t{}\t[{}] {}", report.id, status, c.basis, c.name);
            if !c.passed && !c.detail.is_empty() {
                value.push_str(&format!(" -- {}", c.detail.replace('\n', " | ")));
            }
            out.line("check", value);
        }
        let status = if report.passed() { "pass" } else { "FAIL" };
        out.line("case", format!("{}\t{}\t{:.2}s", report.id, status, report.elapsed.as_secs_f64()));
        if !report.passed() {
            out.code = 1;
        }
    }
    Ok(out)
}

/// Runs `seeds` consecutive seeds from `start` through each suite. Failures
/// are reported with their seed; details go to `diagnostics`.
pub fn fuzz_oracle(
    suites: &[Suite],
    start: u64,
    seeds: u64,
    limits: Limits,
    diagnostics: &mut dyn FnMut(String),
) -> Output {
    let mut out = Output::default();
    out.line("seeds", format!("{start}..{}", start + seeds));
    for &suite in suites {
        let mut failed = 0;
        for seed in start..start + seeds {
            if let Err(e) = suite.run(seed, limits) {
                failed += 1;
                out.line("failure", format!("{suite}\tseed {seed}"));
                diagnostics(format!("{suite} seed {seed}: {e}"));
            }
        }
        out.line("suite", format!("{suite}\t{}/{seeds} passed", seeds - failed));
        if failed > 0 {
            out.code = 1;
        }
    }
    out
}
