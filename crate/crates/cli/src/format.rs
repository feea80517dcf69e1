//! The line-oriented input format.
//!
//! A document is a sequence of sections, each opened by a header line:
//!
//! ```text
//! [monoid]
//! letters = a b s t
//! rule: s a -> a
//! schema: a b^i a -> a b a (i >= 2)
//!
//! [act-presentation]
//! generators = x y
//! relation: x . a b = y . b a
//! ```
//!
//! Tokens are separated by whitespace or punctuation, `#` starts a comment
//! and the token `1` is the identity. Parsing only checks the grammar; names
//! are resolved against the declared alphabets by the `load_*` methods.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use actpres::act::{ActModel, RightRegularAct};
use actpres::construct::Choices;
use actpres::monoid::{
    ConfluenceStatus, Exponent, FiniteMonoid, Letter, Monoid, RewritingSystem, Rule, RuleSchema,
};
use actpres::presentation::ActPresentation;
use actpres::{Alphabet, FiniteAct, FreeActElement, Relation, Subact, Word};
use thiserror::Error;

/// Line and column, both starting at 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("{pos}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        pos: Pos,
        expected: Vec<String>,
        found: String,
    },
    #[error("{pos}: {message}")]
    Resolve { pos: Pos, message: String },
    #[error("missing section [{0}]")]
    MissingSection(&'static str),
}

impl FormatError {
    pub fn pos(&self) -> Option<Pos> {
        match self {
            FormatError::Syntax { pos, .. } | FormatError::Resolve { pos, .. } => Some(*pos),
            FormatError::MissingSection(_) => None,
        }
    }
}

fn resolve_err(pos: Pos, message: impl fmt::Display) -> FormatError {
    FormatError::Resolve {
        pos,
        message: message.to_string(),
    }
}

/// A value with the position it was read from. Equality ignores positions.
#[derive(Clone, Debug, Default)]
pub struct Spanned<T> {
    pub pos: Pos,
    pub value: T,
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Eq> Eq for Spanned<T> {}

fn sp<T>(pos: Pos, value: T) -> Spanned<T> {
    Spanned { pos, value }
}

pub type Name = Spanned<String>;

/// A word as written; empty for the identity.
pub type WordDecl = Vec<Name>;

/// Right-hand exponent of a schema.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpDecl {
    Const(usize),
    Shift(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleDecl {
    Plain {
        lhs: WordDecl,
        rhs: WordDecl,
    },
    Schema {
        prefix: WordDecl,
        pumped: Name,
        suffix: WordDecl,
        rhs_prefix: WordDecl,
        /// `None` when the right side has no pumped factor.
        rhs_pumped: Option<(Name, ExpDecl)>,
        rhs_suffix: WordDecl,
        min: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConfluenceDecl {
    Asserted,
    Unchecked,
    Checked(usize),
}

#[derive(Clone, Debug, Default)]
pub struct MonoidSection {
    pub pos: Pos,
    pub letters: Option<Spanned<Vec<Name>>>,
    pub elements: Option<Spanned<Vec<Name>>>,
    pub identity: Option<Name>,
    /// `letter: g = e`, the element a letter stands for; by default the
    /// element of the same name.
    pub letter_elements: Vec<Spanned<(Name, Name)>>,
    /// `row: a = ...`, the products `a·e` over `elements`.
    pub rows: Vec<Spanned<(Name, Vec<Name>)>>,
    pub rules: Vec<Spanned<RuleDecl>>,
    pub confluence: Option<Spanned<ConfluenceDecl>>,
}

#[derive(Clone, Debug, Default)]
pub struct ActSection {
    pub pos: Pos,
    pub regular: bool,
    pub elements: Option<Spanned<Vec<Name>>>,
    /// `action: p . a = q`
    pub actions: Vec<Spanned<(Name, Name, Name)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementDecl {
    pub generator: Name,
    pub word: WordDecl,
}

#[derive(Clone, Debug, Default)]
pub struct PresentationSection {
    pub pos: Pos,
    pub generators: Option<Spanned<Vec<Name>>>,
    pub relations: Vec<Spanned<(ElementDecl, ElementDecl)>>,
    /// `image: x = p` or, in the regular act, `image: x = a b`.
    pub images: Vec<Spanned<(Name, WordDecl)>>,
}

// sections compare by content, like `Spanned`
impl PartialEq for MonoidSection {
    fn eq(&self, o: &Self) -> bool {
        self.letters == o.letters
            && self.elements == o.elements
            && self.identity == o.identity
            && self.letter_elements == o.letter_elements
            && self.rows == o.rows
            && self.rules == o.rules
            && self.confluence == o.confluence
    }
}

impl PartialEq for ActSection {
    fn eq(&self, o: &Self) -> bool {
        self.regular == o.regular && self.elements == o.elements && self.actions == o.actions
    }
}

impl PartialEq for PresentationSection {
    fn eq(&self, o: &Self) -> bool {
        self.generators == o.generators && self.relations == o.relations && self.images == o.images
    }
}

impl Eq for MonoidSection {}
impl Eq for ActSection {}
impl Eq for PresentationSection {}

/// `B = p, q`: the subact named `B` generated by the listed values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubactDecl {
    pub name: Name,
    pub generators: Vec<WordDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceDecl {
    pub kind: Name,
    pub key: Vec<Name>,
    pub value: Vec<Name>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub monoid: Option<MonoidSection>,
    pub act: Option<ActSection>,
    pub presentation: Option<PresentationSection>,
    pub subacts: Vec<Spanned<SubactDecl>>,
    pub choices: Vec<Spanned<ChoiceDecl>>,
}

// ---------------------------------------------------------------- lexing

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Punct(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(s) => write!(f, "`{s}`"),
            Tok::Punct(p) => write!(f, "`{p}`"),
        }
    }
}

const PUNCT: &[&str] = &["->", ">=", ".", "=", "^", "(", ")", ",", ":", "+", "-"];

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(line: &str, line_no: usize) -> Result<Vec<(Tok, Pos)>, FormatError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (byte, c) = chars[i];
        let pos = Pos { line: line_no, col: i + 1 };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if is_name_char(c) {
            let start = i;
            while i < chars.len() && is_name_char(chars[i].1) {
                i += 1;
            }
            let end = chars.get(i).map_or(line.len(), |&(b, _)| b);
            out.push((Tok::Name(line[chars[start].0..end].to_string()), pos));
            continue;
        }
        match PUNCT.iter().find(|p| line[byte..].starts_with(*p)) {
            Some(p) => {
                out.push((Tok::Punct(p), pos));
                i += p.chars().count();
            }
            None => {
                return Err(FormatError::Syntax {
                    pos,
                    expected: vec!["a name or punctuation".into()],
                    found: format!("`{c}`"),
                })
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- parsing

struct Cursor<'a> {
    toks: &'a [(Tok, Pos)],
    at: usize,
    end: Pos,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn error(&self, expected: &[&str]) -> FormatError {
        FormatError::Syntax {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().map_or("end of line".into(), Tok::to_string),
        }
    }

    fn at_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Tok::Punct(q)) if *q == p)
    }

    fn eat(&mut self, p: &str) -> bool {
        if self.at_punct(p) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &'static str) -> Result<(), FormatError> {
        if self.eat(p) {
            Ok(())
        } else {
            Err(self.error(&[&format!("`{p}`")]))
        }
    }

    fn name(&mut self) -> Result<Name, FormatError> {
        match self.peek() {
            Some(Tok::Name(s)) => {
                let n = sp(self.pos(), s.clone());
                self.at += 1;
                Ok(n)
            }
            _ => Err(self.error(&["a name"])),
        }
    }

    fn at_name(&self) -> bool {
        matches!(self.peek(), Some(Tok::Name(_)))
    }

    fn number(&mut self) -> Result<usize, FormatError> {
        match self.peek() {
            Some(Tok::Name(s)) if s.chars().all(|c| c.is_ascii_digit()) => {
                let n = s.parse().map_err(|_| self.error(&["a number"]))?;
                self.at += 1;
                Ok(n)
            }
            _ => Err(self.error(&["a number"])),
        }
    }

    fn keyword(&mut self, word: &'static str) -> Result<(), FormatError> {
        match self.peek() {
            Some(Tok::Name(s)) if s == word => {
                self.at += 1;
                Ok(())
            }
            _ => Err(self.error(&[&format!("`{word}`")])),
        }
    }

    fn finish(&self) -> Result<(), FormatError> {
        if self.at == self.toks.len() {
            Ok(())
        } else {
            Err(self.error(&["end of line"]))
        }
    }

    /// Names up to the next punctuation; a lone `1` is the empty word.
    fn word(&mut self) -> Result<WordDecl, FormatError> {
        let mut w = Vec::new();
        while self.at_name() && !self.at_pumped() {
            w.push(self.name()?);
        }
        if w.len() == 1 && w[0].value == "1" {
            w.clear();
        }
        Ok(w)
    }

    fn at_pumped(&self) -> bool {
        matches!(self.toks.get(self.at + 1), Some((Tok::Punct("^"), _)))
    }

    fn names(&mut self) -> Result<Vec<Name>, FormatError> {
        let mut out = Vec::new();
        while self.at_name() {
            out.push(self.name()?);
        }
        Ok(out)
    }

    /// Every remaining token up to `stop`, punctuation included.
    fn raw_until(&mut self, stop: &str) -> Vec<Name> {
        let mut out = Vec::new();
        while let Some(t) = self.peek() {
            if matches!(t, Tok::Punct(p) if *p == stop) {
                break;
            }
            let text = match t {
                Tok::Name(s) => s.clone(),
                Tok::Punct(p) => p.to_string(),
            };
            out.push(sp(self.pos(), text));
            self.at += 1;
        }
        out
    }

    fn element(&mut self) -> Result<ElementDecl, FormatError> {
        let generator = self.name()?;
        let word = if self.eat(".") { self.word()? } else { Vec::new() };
        Ok(ElementDecl { generator, word })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Monoid,
    Act,
    Presentation,
    Subact,
    Choices,
}

const SECTIONS: &[(&str, Section)] = &[
    ("monoid", Section::Monoid),
    ("act", Section::Act),
    ("act-presentation", Section::Presentation),
    ("subact", Section::Subact),
    ("choices", Section::Choices),
];

fn set_once<T>(slot: &mut Option<T>, value: T, pos: Pos, what: &str) -> Result<(), FormatError> {
    if slot.is_some() {
        return Err(resolve_err(pos, format!("`{what}` given twice")));
    }
    *slot = Some(value);
    Ok(())
}

fn parse_schema(c: &mut Cursor<'_>) -> Result<RuleDecl, FormatError> {
    let prefix = c.word()?;
    if !c.at_pumped() {
        return Err(c.error(&["a pumped factor `x^i`"]));
    }
    let pumped = c.name()?;
    c.expect("^")?;
    c.keyword("i")?;
    let suffix = c.word()?;
    c.expect("->")?;
    let rhs_prefix = c.word()?;
    let mut rhs_pumped = None;
    if c.at_pumped() {
        let y = c.name()?;
        c.expect("^")?;
        let exp = if c.eat("(") {
            c.keyword("i")?;
            let e = if c.eat("+") {
                ExpDecl::Shift(c.number()? as i64)
            } else if c.eat("-") {
                ExpDecl::Shift(-(c.number()? as i64))
            } else {
                return Err(c.error(&["`+`", "`-`"]));
            };
            c.expect(")")?;
            e
        } else if matches!(c.peek(), Some(Tok::Name(s)) if s == "i") {
            c.at += 1;
            ExpDecl::Shift(0)
        } else {
            ExpDecl::Const(c.number()?)
        };
        rhs_pumped = Some((y, exp));
    }
    let rhs_suffix = c.word()?;
    c.expect("(")?;
    c.keyword("i")?;
    c.expect(">=")?;
    let min = c.number()?;
    c.expect(")")?;
    Ok(RuleDecl::Schema {
        prefix,
        pumped,
        suffix,
        rhs_prefix,
        rhs_pumped,
        rhs_suffix,
        min,
    })
}

fn parse_line(doc: &mut Document, section: Section, c: &mut Cursor<'_>) -> Result<(), FormatError> {
    let start = c.pos();
    let key = c.name()?;
    match section {
        Section::Monoid => {
            let m = doc.monoid.as_mut().expect("section opened");
            match key.value.as_str() {
                "letters" => {
                    c.expect("=")?;
                    let names = c.names()?;
                    set_once(&mut m.letters, sp(start, names), start, "letters")?;
                }
                "elements" => {
                    c.expect("=")?;
                    let names = c.names()?;
                    set_once(&mut m.elements, sp(start, names), start, "elements")?;
                }
                "identity" => {
                    c.expect("=")?;
                    let n = c.name()?;
                    set_once(&mut m.identity, n, start, "identity")?;
                }
                "confluence" => {
                    c.expect("=")?;
                    let kind = c.name()?;
                    let decl = match kind.value.as_str() {
                        "asserted" => ConfluenceDecl::Asserted,
                        "unchecked" => ConfluenceDecl::Unchecked,
                        "checked" => ConfluenceDecl::Checked(c.number()?),
                        _ => {
                            c.at -= 1;
                            return Err(c.error(&["`asserted`", "`unchecked`", "`checked`"]));
                        }
                    };
                    set_once(&mut m.confluence, sp(start, decl), start, "confluence")?;
                }
                "letter" => {
                    c.expect(":")?;
                    let l = c.name()?;
                    c.expect("=")?;
                    let e = c.name()?;
                    m.letter_elements.push(sp(start, (l, e)));
                }
                "row" => {
                    c.expect(":")?;
                    let a = c.name()?;
                    c.expect("=")?;
                    let row = c.names()?;
                    m.rows.push(sp(start, (a, row)));
                }
                "rule" => {
                    c.expect(":")?;
                    let lhs = c.word()?;
                    c.expect("->")?;
                    let rhs = c.word()?;
                    m.rules.push(sp(start, RuleDecl::Plain { lhs, rhs }));
                }
                "schema" => {
                    c.expect(":")?;
                    let r = parse_schema(c)?;
                    m.rules.push(sp(start, r));
                }
                _ => {
                    c.at -= 1;
                    return Err(c.error(&[
                        "`letters`",
                        "`elements`",
                        "`identity`",
                        "`letter`",
                        "`row`",
                        "`rule`",
                        "`schema`",
                        "`confluence`",
                    ]));
                }
            }
        }
        Section::Act => {
            let a = doc.act.as_mut().expect("section opened");
            match key.value.as_str() {
                "regular" => {
                    if a.regular {
                        return Err(resolve_err(start, "`regular` given twice"));
                    }
                    a.regular = true;
                }
                "elements" => {
                    c.expect("=")?;
                    let names = c.names()?;
                    set_once(&mut a.elements, sp(start, names), start, "elements")?;
                }
                "action" => {
                    c.expect(":")?;
                    let p = c.name()?;
                    c.expect(".")?;
                    let l = c.name()?;
                    c.expect("=")?;
                    let q = c.name()?;
                    a.actions.push(sp(start, (p, l, q)));
                }
                _ => {
                    c.at -= 1;
                    return Err(c.error(&["`regular`", "`elements`", "`action`"]));
                }
            }
        }
        Section::Presentation => {
            let p = doc.presentation.as_mut().expect("section opened");
            match key.value.as_str() {
                "generators" => {
                    c.expect("=")?;
                    let names = c.names()?;
                    set_once(&mut p.generators, sp(start, names), start, "generators")?;
                }
                "relation" => {
                    c.expect(":")?;
                    let l = c.element()?;
                    c.expect("=")?;
                    let r = c.element()?;
                    p.relations.push(sp(start, (l, r)));
                }
                "image" => {
                    c.expect(":")?;
                    let x = c.name()?;
                    c.expect("=")?;
                    let w = c.word()?;
                    p.images.push(sp(start, (x, w)));
                }
                _ => {
                    c.at -= 1;
                    return Err(c.error(&["`generators`", "`relation`", "`image`"]));
                }
            }
        }
        Section::Subact => {
            c.expect("=")?;
            let mut generators = vec![c.word()?];
            while c.eat(",") {
                generators.push(c.word()?);
            }
            doc.subacts.push(sp(start, SubactDecl { name: key, generators }));
        }
        Section::Choices => {
            if key.value != "choice" {
                c.at -= 1;
                return Err(c.error(&["`choice`"]));
            }
            c.expect(":")?;
            let kind = c.name()?;
            let k = c.raw_until("=");
            if k.is_empty() {
                return Err(c.error(&["a key"]));
            }
            c.expect("=")?;
            let value = c.raw_until("\n");
            if value.is_empty() {
                return Err(c.error(&["a value"]));
            }
            doc.choices.push(sp(start, ChoiceDecl { kind, key: k, value }));
        }
    }
    c.finish()
}

/// Parses a document, checking the grammar only.
pub fn parse(text: &str) -> Result<Document, FormatError> {
    let mut doc = Document::default();
    let mut section = None;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim_start();
        if trimmed.starts_with('[') {
            let col = line.len() - trimmed.len() + 1;
            let pos = Pos { line: line_no, col };
            let body = trimmed.split('#').next().unwrap_or("").trim_end();
            let name = body
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .map(str::trim);
            let found = name.and_then(|n| SECTIONS.iter().find(|(s, _)| *s == n));
            let Some(&(_, s)) = found else {
                return Err(FormatError::Syntax {
                    pos,
                    expected: SECTIONS.iter().map(|(s, _)| format!("`[{s}]`")).collect(),
                    found: format!("`{body}`"),
                });
            };
            let dup = match s {
                Section::Monoid => doc.monoid.replace(MonoidSection { pos, ..Default::default() }).is_some(),
                Section::Act => doc.act.replace(ActSection { pos, ..Default::default() }).is_some(),
                Section::Presentation => doc
                    .presentation
                    .replace(PresentationSection { pos, ..Default::default() })
                    .is_some(),
                Section::Subact | Section::Choices => false,
            };
            if dup {
                return Err(resolve_err(pos, format!("section {body} given twice")));
            }
            section = Some(s);
            continue;
        }
        let toks = lex(line, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor {
            toks: &toks,
            at: 0,
            end: Pos { line: line_no, col: line.chars().count() + 1 },
        };
        let Some(s) = section else {
            return Err(c.error(&["a section header"]));
        };
        parse_line(&mut doc, s, &mut c)?;
    }
    Ok(doc)
}

/// Parses several documents as one; a section may appear in only one of them.
pub fn parse_all(texts: &[String]) -> Result<Document, (usize, FormatError)> {
    let mut out = Document::default();
    for (i, t) in texts.iter().enumerate() {
        let d = parse(t).map_err(|e| (i, e))?;
        let clash = |what: &'static str| (i, FormatError::Resolve { pos: Pos::default(), message: format!("section [{what}] given twice") });
        if d.monoid.is_some() {
            if out.monoid.is_some() {
                return Err(clash("monoid"));
            }
            out.monoid = d.monoid;
        }
        if d.act.is_some() {
            if out.act.is_some() {
                return Err(clash("act"));
            }
            out.act = d.act;
        }
        if d.presentation.is_some() {
            if out.presentation.is_some() {
                return Err(clash("act-presentation"));
            }
            out.presentation = d.presentation;
        }
        out.subacts.extend(d.subacts);
        out.choices.extend(d.choices);
    }
    Ok(out)
}

// ---------------------------------------------------------------- serializing

fn join(names: &[Name]) -> String {
    names.iter().map(|n| n.value.as_str()).collect::<Vec<_>>().join(" ")
}

fn word_text(w: &WordDecl) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        join(w)
    }
}

fn element_text(e: &ElementDecl) -> String {
    if e.word.is_empty() {
        e.generator.value.clone()
    } else {
        format!("{} . {}", e.generator.value, join(&e.word))
    }
}

fn push_words(out: &mut Vec<String>, w: &WordDecl) {
    out.extend(w.iter().map(|n| n.value.clone()));
}

fn rule_text(r: &RuleDecl) -> String {
    match r {
        RuleDecl::Plain { lhs, rhs } => format!("rule: {} -> {}", word_text(lhs), word_text(rhs)),
        RuleDecl::Schema {
            prefix,
            pumped,
            suffix,
            rhs_prefix,
            rhs_pumped,
            rhs_suffix,
            min,
        } => {
            let mut lhs = Vec::new();
            push_words(&mut lhs, prefix);
            lhs.push(format!("{}^i", pumped.value));
            push_words(&mut lhs, suffix);
            let mut rhs = Vec::new();
            push_words(&mut rhs, rhs_prefix);
            if let Some((y, e)) = rhs_pumped {
                rhs.push(match e {
                    ExpDecl::Const(c) => format!("{}^{c}", y.value),
                    ExpDecl::Shift(0) => format!("{}^i", y.value),
                    ExpDecl::Shift(c) if *c > 0 => format!("{}^(i+{c})", y.value),
                    ExpDecl::Shift(c) => format!("{}^(i-{})", y.value, -c),
                });
            }
            push_words(&mut rhs, rhs_suffix);
            if rhs.is_empty() {
                rhs.push("1".into());
            }
            format!("schema: {} -> {} (i >= {min})", lhs.join(" "), rhs.join(" "))
        }
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if let Some(m) = &self.monoid {
            out.push_str("[monoid]\n");
            if let Some(l) = &m.letters {
                let _ = writeln!(out, "letters = {}", join(&l.value));
            }
            if let Some(e) = &m.elements {
                let _ = writeln!(out, "elements = {}", join(&e.value));
            }
            if let Some(i) = &m.identity {
                let _ = writeln!(out, "identity = {}", i.value);
            }
            for l in &m.letter_elements {
                let _ = writeln!(out, "letter: {} = {}", l.value.0.value, l.value.1.value);
            }
            for r in &m.rows {
                let _ = writeln!(out, "row: {} = {}", r.value.0.value, join(&r.value.1));
            }
            for r in &m.rules {
                let _ = writeln!(out, "{}", rule_text(&r.value));
            }
            if let Some(c) = &m.confluence {
                let _ = match c.value {
                    ConfluenceDecl::Asserted => writeln!(out, "confluence = asserted"),
                    ConfluenceDecl::Unchecked => writeln!(out, "confluence = unchecked"),
                    ConfluenceDecl::Checked(b) => writeln!(out, "confluence = checked {b}"),
                };
            }
        }
        if let Some(a) = &self.act {
            out.push_str("[act]\n");
            if a.regular {
                out.push_str("regular\n");
            }
            if let Some(e) = &a.elements {
                let _ = writeln!(out, "elements = {}", join(&e.value));
            }
            for s in &a.actions {
                let (p, l, q) = &s.value;
                let _ = writeln!(out, "action: {} . {} = {}", p.value, l.value, q.value);
            }
        }
        if let Some(p) = &self.presentation {
            out.push_str("[act-presentation]\n");
            if let Some(g) = &p.generators {
                let _ = writeln!(out, "generators = {}", join(&g.value));
            }
            for r in &p.relations {
                let _ = writeln!(out, "relation: {} = {}", element_text(&r.value.0), element_text(&r.value.1));
            }
            for i in &p.images {
                let _ = writeln!(out, "image: {} = {}", i.value.0.value, word_text(&i.value.1));
            }
        }
        if !self.subacts.is_empty() {
            out.push_str("[subact]\n");
            for s in &self.subacts {
                let gens: Vec<String> = s.value.generators.iter().map(word_text).collect();
                let _ = writeln!(out, "{} = {}", s.value.name.value, gens.join(", "));
            }
        }
        if !self.choices.is_empty() {
            out.push_str("[choices]\n");
            for c in &self.choices {
                let _ = writeln!(
                    out,
                    "choice: {} {} = {}",
                    c.value.kind.value,
                    join(&c.value.key),
                    join(&c.value.value)
                );
            }
        }
        f.write_str(&out)
    }
}

fn names_of(v: &[String]) -> Vec<Name> {
    v.iter().map(|s| sp(Pos::default(), s.clone())).collect()
}

fn word_decl(alphabet: &Alphabet, w: &Word) -> WordDecl {
    w.letters().iter().map(|&l| sp(Pos::default(), alphabet.name(l).to_string())).collect()
}

/// The `[monoid]` section describing `m`.
pub fn monoid_section(m: &Monoid) -> MonoidSection {
    let z = m.alphabet();
    let mut s = MonoidSection {
        letters: Some(sp(Pos::default(), names_of(z.names()))),
        ..Default::default()
    };
    match m {
        Monoid::Free(_) => {}
        Monoid::Finite(f) => {
            let names = f.element_names();
            s.elements = Some(sp(Pos::default(), names_of(names)));
            s.identity = Some(sp(Pos::default(), names[f.identity()].clone()));
            for l in z.letters() {
                s.letter_elements.push(sp(
                    Pos::default(),
                    (
                        sp(Pos::default(), z.name(l).to_string()),
                        sp(Pos::default(), names[f.letter_element(l)].clone()),
                    ),
                ));
            }
            for a in 0..f.size() {
                let row = (0..f.size()).map(|b| names[f.mul(a, b)].clone()).collect::<Vec<_>>();
                s.rows.push(sp(Pos::default(), (sp(Pos::default(), names[a].clone()), names_of(&row))));
            }
        }
        Monoid::Rewriting(sys) => {
            for r in sys.rules() {
                let decl = match r {
                    Rule::Plain { lhs, rhs } => RuleDecl::Plain {
                        lhs: word_decl(z, lhs),
                        rhs: word_decl(z, rhs),
                    },
                    Rule::Schema(s) => {
                        let bare = s.exponent == Exponent::Const(0) && s.rhs_suffix.is_empty() && s.rhs_pumped == s.pumped;
                        RuleDecl::Schema {
                            prefix: word_decl(z, &s.prefix),
                            pumped: sp(Pos::default(), z.name(s.pumped).to_string()),
                            suffix: word_decl(z, &s.suffix),
                            rhs_prefix: word_decl(z, &s.rhs_prefix),
                            rhs_pumped: (!bare).then(|| {
                                let e = match s.exponent {
                                    Exponent::Const(c) => ExpDecl::Const(c),
                                    Exponent::Shift(c) => ExpDecl::Shift(c),
                                };
                                (sp(Pos::default(), z.name(s.rhs_pumped).to_string()), e)
                            }),
                            rhs_suffix: word_decl(z, &s.rhs_suffix),
                            min: s.min_exp,
                        }
                    }
                };
                s.rules.push(sp(Pos::default(), decl));
            }
            s.confluence = Some(sp(
                Pos::default(),
                match sys.confluence() {
                    ConfluenceStatus::Asserted => ConfluenceDecl::Asserted,
                    ConfluenceStatus::Unchecked => ConfluenceDecl::Unchecked,
                    ConfluenceStatus::Checked(b) => ConfluenceDecl::Checked(b),
                },
            ));
        }
    }
    s
}

/// The `[act]` section describing a finite act.
pub fn act_section(act: &FiniteAct) -> ActSection {
    let z = act.monoid().alphabet();
    let mut s = ActSection {
        elements: Some(sp(Pos::default(), names_of(act.names()))),
        ..Default::default()
    };
    for a in 0..act.len() {
        for l in z.letters() {
            s.actions.push(sp(
                Pos::default(),
                (
                    sp(Pos::default(), act.name(a).to_string()),
                    sp(Pos::default(), z.name(l).to_string()),
                    sp(Pos::default(), act.name(act.act_letter(a, l)).to_string()),
                ),
            ));
        }
    }
    s
}

fn element_decl(pres: &ActPresentation, e: &FreeActElement) -> ElementDecl {
    ElementDecl {
        generator: sp(Pos::default(), pres.generators().name(e.generator).to_string()),
        word: word_decl(pres.monoid().alphabet(), &e.word),
    }
}

/// The `[act-presentation]` section of `pres`, with optional generator images.
pub fn presentation_section(pres: &ActPresentation, images: &[String]) -> PresentationSection {
    let mut s = PresentationSection {
        generators: Some(sp(Pos::default(), names_of(pres.generators().names()))),
        ..Default::default()
    };
    for r in pres.relations() {
        s.relations.push(sp(Pos::default(), (element_decl(pres, &r.lhs), element_decl(pres, &r.rhs))));
    }
    for (x, img) in pres.generators().names().iter().zip(images) {
        let w = img.split_whitespace().filter(|t| *t != "1").map(|t| sp(Pos::default(), t.to_string())).collect();
        s.images.push(sp(Pos::default(), (sp(Pos::default(), x.clone()), w)));
    }
    s
}

// ---------------------------------------------------------------- resolving

fn resolve_word(alphabet: &Alphabet, w: &WordDecl) -> Result<Word, FormatError> {
    w.iter()
        .map(|n| {
            alphabet
                .lookup(&n.value)
                .ok_or_else(|| resolve_err(n.pos, format!("unknown letter `{}`", n.value)))
        })
        .collect::<Result<Vec<Letter>, _>>()
        .map(Word::from)
}

fn resolve_letter(alphabet: &Alphabet, n: &Name) -> Result<Letter, FormatError> {
    alphabet
        .lookup(&n.value)
        .ok_or_else(|| resolve_err(n.pos, format!("unknown letter `{}`", n.value)))
}

/// An act as declared in `[act]`.
#[derive(Clone, Debug)]
pub enum LoadedAct {
    Finite(FiniteAct),
    /// The right regular act of an infinite monoid.
    Regular(RightRegularAct),
}

impl Document {
    pub fn load_monoid(&self) -> Result<Arc<Monoid>, FormatError> {
        let m = self.monoid.as_ref().ok_or(FormatError::MissingSection("monoid"))?;
        let letters = m
            .letters
            .as_ref()
            .ok_or_else(|| resolve_err(m.pos, "the monoid declares no `letters`"))?;
        if let Some(elements) = &m.elements {
            return load_finite(m, letters, elements).map(Arc::new);
        }
        if !m.rows.is_empty() || m.identity.is_some() || !m.letter_elements.is_empty() {
            return Err(resolve_err(m.pos, "`row`, `letter` and `identity` need `elements`"));
        }
        let z = Alphabet::new(letters.value.iter().map(|n| n.value.clone()))
            .map_err(|e| resolve_err(letters.pos, e))?;
        if m.rules.is_empty() {
            if let Some(c) = &m.confluence {
                return Err(resolve_err(c.pos, "a free monoid has no rules to be confluent"));
            }
            return Ok(Arc::new(Monoid::Free(z)));
        }
        let mut rules = Vec::new();
        for r in &m.rules {
            rules.push(match &r.value {
                RuleDecl::Plain { lhs, rhs } => Rule::plain(resolve_word(&z, lhs)?, resolve_word(&z, rhs)?),
                RuleDecl::Schema {
                    prefix,
                    pumped,
                    suffix,
                    rhs_prefix,
                    rhs_pumped,
                    rhs_suffix,
                    min,
                } => {
                    let pumped = resolve_letter(&z, pumped)?;
                    let (rhs_pumped, exponent) = match rhs_pumped {
                        Some((y, ExpDecl::Const(c))) => (resolve_letter(&z, y)?, Exponent::Const(*c)),
                        Some((y, ExpDecl::Shift(c))) => (resolve_letter(&z, y)?, Exponent::Shift(*c)),
                        None => (pumped, Exponent::Const(0)),
                    };
                    Rule::Schema(RuleSchema {
                        prefix: resolve_word(&z, prefix)?,
                        pumped,
                        min_exp: *min,
                        suffix: resolve_word(&z, suffix)?,
                        rhs_prefix: resolve_word(&z, rhs_prefix)?,
                        rhs_pumped,
                        exponent,
                        rhs_suffix: resolve_word(&z, rhs_suffix)?,
                    })
                }
            });
        }
        let sys = RewritingSystem::new(z, rules).map_err(|e| resolve_err(m.pos, e))?;
        let sys = match m.confluence.as_ref().map(|c| c.value) {
            Some(ConfluenceDecl::Asserted) => sys.with_confluence(ConfluenceStatus::Asserted),
            Some(ConfluenceDecl::Unchecked) => sys.with_confluence(ConfluenceStatus::Unchecked),
            Some(ConfluenceDecl::Checked(b)) => sys.checked(b).0,
            None => sys.checked(8).0,
        };
        Ok(Arc::new(Monoid::Rewriting(sys)))
    }

    /// The act of `[act]`; `regular` over a finite monoid is materialised.
    pub fn load_act(&self, monoid: &Arc<Monoid>) -> Result<LoadedAct, FormatError> {
        let a = self.act.as_ref().ok_or(FormatError::MissingSection("act"))?;
        if a.regular {
            if a.elements.is_some() || !a.actions.is_empty() {
                return Err(resolve_err(a.pos, "a regular act takes no `elements` or `action`"));
            }
            if monoid.is_finite() {
                return Ok(LoadedAct::Finite(actpres::random::regular_act(monoid)));
            }
            return Ok(LoadedAct::Regular(RightRegularAct::new(monoid.clone())));
        }
        let elements = a
            .elements
            .as_ref()
            .ok_or_else(|| resolve_err(a.pos, "the act declares neither `regular` nor `elements`"))?;
        let names: Vec<String> = elements.value.iter().map(|n| n.value.clone()).collect();
        let z = monoid.alphabet();
        let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; z.len()]; names.len()];
        let find = |n: &Name| {
            names
                .iter()
                .position(|e| *e == n.value)
                .ok_or_else(|| resolve_err(n.pos, format!("unknown element `{}`", n.value)))
        };
        for s in &a.actions {
            let (p, l, q) = &s.value;
            let (p, l, q) = (find(p)?, resolve_letter(z, l)?, find(q)?);
            let cell = &mut table[p][l as usize];
            if cell.is_some() {
                return Err(resolve_err(s.pos, "action given twice"));
            }
            *cell = Some(q);
        }
        let mut action = Vec::new();
        for (p, row) in table.iter().enumerate() {
            let mut out = Vec::new();
            for (l, cell) in row.iter().enumerate() {
                out.push(cell.ok_or_else(|| {
                    resolve_err(a.pos, format!("no action for {} . {}", names[p], z.name(l as Letter)))
                })?);
            }
            action.push(out);
        }
        FiniteAct::new(monoid.clone(), names, action)
            .map(LoadedAct::Finite)
            .map_err(|e| resolve_err(a.pos, e))
    }

    pub fn load_presentation(&self, monoid: &Arc<Monoid>) -> Result<ActPresentation, FormatError> {
        let p = self
            .presentation
            .as_ref()
            .ok_or(FormatError::MissingSection("act-presentation"))?;
        let g = p
            .generators
            .as_ref()
            .ok_or_else(|| resolve_err(p.pos, "the presentation declares no `generators`"))?;
        let gens = Alphabet::new(g.value.iter().map(|n| n.value.clone())).map_err(|e| resolve_err(g.pos, e))?;
        let empty = ActPresentation::new(monoid.clone(), gens, Vec::new()).map_err(|e| resolve_err(g.pos, e))?;
        let mut rels = Vec::new();
        for r in &p.relations {
            let (l, rr) = &r.value;
            rels.push(Relation::new(self.element(&empty, l)?, self.element(&empty, rr)?));
        }
        empty.with_relations(rels).map_err(|e| resolve_err(p.pos, e))
    }

    fn element(&self, pres: &ActPresentation, e: &ElementDecl) -> Result<FreeActElement, FormatError> {
        let g = pres
            .generator(&e.generator.value)
            .map_err(|_| resolve_err(e.generator.pos, format!("unknown generator `{}`", e.generator.value)))?;
        Ok(FreeActElement::new(g, resolve_word(pres.monoid().alphabet(), &e.word)?))
    }

    /// Generator images from `image:` lines, one per generator.
    pub fn load_images<A>(&self, pres: &ActPresentation, act: &A) -> Result<Vec<A::Value>, FormatError>
    where
        A: ActModel + ValueParser,
    {
        let p = self
            .presentation
            .as_ref()
            .ok_or(FormatError::MissingSection("act-presentation"))?;
        let mut out: Vec<Option<A::Value>> = vec![None; pres.generators().len()];
        for i in &p.images {
            let (x, w) = &i.value;
            let g = pres
                .generator(&x.value)
                .map_err(|_| resolve_err(x.pos, format!("unknown generator `{}`", x.value)))?;
            out[g as usize] = Some(act.parse_value(w)?);
        }
        out.into_iter()
            .enumerate()
            .map(|(g, v)| {
                v.ok_or_else(|| {
                    resolve_err(p.pos, format!("no image for generator {}", pres.generators().name(g as Letter)))
                })
            })
            .collect()
    }

    /// Generators of the subact declared as `name = ...`.
    pub fn load_subact_generators<A: ValueParser>(&self, name: &str, act: &A) -> Result<Vec<A::Value>, FormatError> {
        let s = self
            .subacts
            .iter()
            .find(|s| s.value.name.value == name)
            .ok_or(FormatError::MissingSection("subact"))?;
        s.value.generators.iter().map(|w| act.parse_value(w)).collect()
    }

    pub fn load_subact(&self, name: &str, act: &FiniteAct) -> Result<Subact, FormatError> {
        let gens = self.load_subact_generators(name, act)?;
        Subact::generated(act, &gens).map_err(|e| resolve_err(Pos::default(), e))
    }

    pub fn subact_names(&self) -> Vec<String> {
        self.subacts.iter().map(|s| s.value.name.value.clone()).collect()
    }

    pub fn load_choices(&self) -> Choices {
        let mut out = Choices::new();
        for c in &self.choices {
            out.insert(&c.value.kind.value, &join(&c.value.key), &join(&c.value.value));
        }
        out
    }
}

fn load_finite(
    m: &MonoidSection,
    letters: &Spanned<Vec<Name>>,
    elements: &Spanned<Vec<Name>>,
) -> Result<Monoid, FormatError> {
    if !m.rules.is_empty() || m.confluence.is_some() {
        return Err(resolve_err(m.pos, "a finite table takes no rules"));
    }
    let names: Vec<String> = elements.value.iter().map(|n| n.value.clone()).collect();
    let find = |n: &Name| {
        names
            .iter()
            .position(|e| *e == n.value)
            .ok_or_else(|| resolve_err(n.pos, format!("unknown element `{}`", n.value)))
    };
    let identity = match &m.identity {
        Some(i) => find(i)?,
        None => return Err(resolve_err(m.pos, "a finite table needs `identity`")),
    };
    let mut table: Vec<Option<Vec<usize>>> = vec![None; names.len()];
    for r in &m.rows {
        let (a, row) = &r.value;
        let a = find(a)?;
        if table[a].is_some() {
            return Err(resolve_err(r.pos, "row given twice"));
        }
        if row.len() != names.len() {
            return Err(resolve_err(r.pos, format!("row has {} entries, expected {}", row.len(), names.len())));
        }
        table[a] = Some(row.iter().map(find).collect::<Result<_, _>>()?);
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(a, r)| r.ok_or_else(|| resolve_err(m.pos, format!("no row for {}", names[a]))))
        .collect::<Result<Vec<_>, _>>()?;
    for l in &m.letter_elements {
        if !letters.value.contains(&l.value.0) {
            return Err(resolve_err(l.value.0.pos, format!("unknown letter `{}`", l.value.0.value)));
        }
    }
    let letters = letters
        .value
        .iter()
        .map(|l| {
            let e = match m.letter_elements.iter().find(|d| d.value.0 == *l) {
                Some(d) => find(&d.value.1)?,
                None => find(l)?,
            };
            Ok((l.value.clone(), e))
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    FiniteMonoid::new(names, table, identity, letters)
        .map(Monoid::Finite)
        .map_err(|e| resolve_err(m.pos, e))
}

/// Reads act values as written in `image:` and `[subact]` lines.
pub trait ValueParser: ActModel {
    fn parse_value(&self, w: &WordDecl) -> Result<Self::Value, FormatError>;
}

impl ValueParser for FiniteAct {
    fn parse_value(&self, w: &WordDecl) -> Result<usize, FormatError> {
        match w.as_slice() {
            [n] => self
                .index_of(&n.value)
                .ok_or_else(|| resolve_err(n.pos, format!("unknown element `{}`", n.value))),
            [] => Err(resolve_err(Pos::default(), "expected an element name, found `1`")),
            [_, n, ..] => Err(resolve_err(n.pos, "expected a single element name")),
        }
    }
}

impl ValueParser for RightRegularAct {
    fn parse_value(&self, w: &WordDecl) -> Result<Word, FormatError> {
        let word = resolve_word(self.monoid().alphabet(), w)?;
        Ok(self.monoid().canonical(&word))
    }
}

/// Parses a word given on the command line; `1` is the identity.
pub fn parse_word_arg(monoid: &Monoid, text: &str) -> Result<Word, FormatError> {
    let toks = lex(text, 1)?;
    let mut c = Cursor {
        toks: &toks,
        at: 0,
        end: Pos { line: 1, col: text.chars().count() + 1 },
    };
    let w = c.word()?;
    c.finish()?;
    resolve_word(monoid.alphabet(), &w)
}

/// Parses `x`, `x . 1` or `x . a b` given on the command line.
pub fn parse_element_arg(pres: &ActPresentation, text: &str) -> Result<FreeActElement, FormatError> {
    let toks = lex(text, 1)?;
    let mut c = Cursor {
        toks: &toks,
        at: 0,
        end: Pos { line: 1, col: text.chars().count() + 1 },
    };
    let e = c.element()?;
    c.finish()?;
    Document::default().element(pres, &e)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PUMPED: &str = "\
[monoid]
letters = a b s t
schema: a b^i a -> a b a (i >= 2)
schema: b a^i b -> b a b (i >= 2)
rule: s a -> a
rule: t b -> b
confluence = asserted
";

    #[test]
    fn round_trip_of_a_rewriting_monoid() {
        let d = parse(PUMPED).unwrap();
        let text = d.to_string();
        assert_eq!(text, PUMPED);
        assert_eq!(parse(&text).unwrap(), d);
        let m = d.load_monoid().unwrap();
        let again = Document {
            monoid: Some(monoid_section(&m)),
            ..Default::default()
        };
        assert_eq!(again.to_string(), PUMPED);
    }

    #[test]
    fn shifted_exponents_round_trip() {
        let text = "[monoid]\nletters = a b c\nschema: a c^i a -> b c^(i-1) b (i >= 2)\nconfluence = unchecked\n";
        let d = parse(text).unwrap();
        assert_eq!(d.to_string(), text);
        let m = d.load_monoid().unwrap();
        let w = parse_word_arg(&m, "a c c a").unwrap();
        assert_eq!(m.render(&m.canonical(&w)), "b c b");
    }

    #[test]
    fn positions_point_at_the_offending_token() {
        let e = parse("[monoid]\nletters = a b\nrule: a b -> a )\n").unwrap_err();
        assert_eq!(e.pos(), Some(Pos { line: 3, col: 16 }));
        let e = parse("[monoid]\nletters = a\nrule: a a -> b\n").unwrap().load_monoid().unwrap_err();
        assert_eq!(e.pos(), Some(Pos { line: 3, col: 14 }));
        let e = parse("letters = a\n").unwrap_err();
        assert_eq!(e.pos(), Some(Pos { line: 1, col: 1 }));
        let e = parse("[monoid]\nletters = a $\n").unwrap_err();
        assert_eq!(e.pos(), Some(Pos { line: 2, col: 13 }));
    }

    #[test]
    fn empty_relations_give_a_free_presentation() {
        let text = "[monoid]\nletters = a b\n[act-presentation]\ngenerators = x y\n";
        let d = parse(text).unwrap();
        let m = d.load_monoid().unwrap();
        let p = d.load_presentation(&m).unwrap();
        assert!(p.relations().is_empty());
        assert_eq!(p.generators().len(), 2);
    }

    #[test]
    fn finite_tables_and_acts_load() {
        let text = "\
[monoid]
letters = z
elements = e z
identity = e
row: e = e z
row: z = z z
[act]
elements = p q
action: p . z = q
action: q . z = q
[act-presentation]
generators = x
relation: x . z = x . z z
image: x = p
[subact]
B = q
[choices]
choice: phi x . z = y . 1
";
        let d = parse(text).unwrap();
        assert_eq!(parse(&d.to_string()).unwrap(), d);
        let m = d.load_monoid().unwrap();
        let LoadedAct::Finite(act) = d.load_act(&m).unwrap() else { panic!() };
        let p = d.load_presentation(&m).unwrap();
        assert_eq!(d.load_images(&p, &act).unwrap(), vec![0]);
        assert_eq!(d.load_subact("B", &act).unwrap().elements(), vec![1]);
        assert_eq!(d.load_choices().get("phi", "x . z"), Some("y . 1"));
        let again = Document {
            monoid: Some(monoid_section(&m)),
            act: Some(act_section(&act)),
            ..Default::default()
        };
        let d2 = parse(&again.to_string()).unwrap();
        assert_eq!(d2.load_monoid().unwrap(), m);
    }

    #[test]
    fn missing_actions_are_reported() {
        let text = "[monoid]\nletters = a\n[act]\nelements = p q\naction: p . a = q\n";
        let d = parse(text).unwrap();
        let m = d.load_monoid().unwrap();
        let e = d.load_act(&m).unwrap_err();
        assert!(e.to_string().contains("no action for q . a"), "{e}");
    }
}
