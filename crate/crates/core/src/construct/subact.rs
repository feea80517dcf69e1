use std::collections::HashMap;

use super::{
    chosen, decide, find_witness, join_alphabets, search_words, Choices, ConstructBounds,
    ConstructError, Construction, Emitter,
};
use crate::act::{fresh_name, ActModel, Interpretation, Membership};
use crate::monoid::{Letter, Monoid, Rule, Word};
use crate::presentation::{ActPresentation, FreeActElement};

/// The rewriting map: sends an element of `F_X` lying in `B` to an element
/// of `F_Y` with the same value, memoised by value.
struct Rewriter<'a, 'b, A: ActModel> {
    pres_a: &'b ActPresentation,
    out_pres: &'b ActPresentation,
    ambient: &'b Interpretation<'a, A>,
    interp: Interpretation<'a, A>,
    words: Vec<Word>,
    choices: &'b Choices,
    cache: HashMap<A::Value, Option<FreeActElement>>,
    used: Vec<(String, String, String)>,
    gaps: Vec<String>,
}

impl<A: ActModel> Rewriter<'_, '_, A> {
    fn phi(&mut self, w: &FreeActElement) -> Result<Option<FreeActElement>, ConstructError> {
        let w = self.pres_a.canonical(w);
        let key = self.pres_a.render_element(&w);
        let value = self.ambient.eval(&w);
        let letters: Vec<Letter> = self.out_pres.generators().letters().collect();
        if let Some(e) = chosen(self.choices, "phi", &key, self.out_pres, &self.interp, &letters, &value)? {
            self.used.push(("phi".into(), key, self.out_pres.render_element(&e)));
            return Ok(Some(e));
        }
        if let Some(hit) = self.cache.get(&value) {
            return Ok(hit.clone());
        }
        let found = find_witness(&self.interp, &letters, &self.words, &value);
        if found.is_none() {
            self.gaps.push(format!("no rewriting of {key} over Y within the search bound"));
        }
        self.cache.insert(value, found.clone());
        Ok(found)
    }
}

/// Presentation of the subact `B` generated by `Y` from a presentation
/// `<X | R>` of `A`; `y` lists each new generator with its `w_y ∈ F_X`.
///
/// Emits `R1 = {y = w_yφ}`, `R2 = {(wm)φ = (wφ)m}` and
/// `R3 = {(um)φ = (vm)φ : (u, v) ∈ R, um ∈ B}`, with `φ` sending an element to
/// the least `y·n` of the same value. Over a finite monoid the families are
/// complete; otherwise `w` and `m` range over the ball of radius
/// `bounds.depth` and failures are reported as gaps.
pub fn subact_presentation<A: ActModel, B: Membership<A::Value>>(
    pres_a: &ActPresentation,
    ambient: &Interpretation<'_, A>,
    member: &B,
    y: &[(String, FreeActElement)],
    choices: &Choices,
    bounds: ConstructBounds,
) -> Result<Construction, ConstructError> {
    let monoid = pres_a.monoid();
    let names: Vec<String> = y.iter().map(|(n, _)| n.clone()).collect();
    let gens = join_alphabets(pres_a, &[&names])?;
    let mut images = Vec::new();
    for (name, w) in y {
        pres_a.check_element(w)?;
        let v = ambient.eval(w);
        if !decide(member, &v, || pres_a.render_element(w))? {
            return Err(ConstructError::InvalidWitness(format!("w_y of {name} lies outside the subact")));
        }
        images.push(v);
    }
    let out_pres = ActPresentation::new(monoid.clone(), gens, Vec::new())?;
    let ball = monoid.elements().unwrap_or_else(|| monoid.enumerate_elements(bounds.depth));
    let mut rw = Rewriter {
        pres_a,
        out_pres: &out_pres,
        ambient,
        interp: Interpretation::new(ambient.model, images),
        words: search_words(&out_pres, bounds.witness_len),
        choices,
        cache: HashMap::new(),
        used: y
            .iter()
            .map(|(n, w)| ("w_y".to_string(), n.clone(), pres_a.render_element(w)))
            .collect(),
        gaps: Vec::new(),
    };
    let mut emit = Emitter::new();

    for (k, (_, w)) in y.iter().enumerate() {
        if let Some(p) = rw.phi(w)? {
            emit.push(&out_pres, "R1", FreeActElement::generator(k as Letter), p);
        }
    }
    let in_b = |e: &FreeActElement, gaps: &mut Vec<String>| -> bool {
        match member.decide(&ambient.eval(e)) {
            crate::act::Decision::Yes => true,
            crate::act::Decision::No => false,
            crate::act::Decision::Unknown => {
                gaps.push(format!("membership of {} undecided", pres_a.render_element(e)));
                false
            }
        }
    };
    for x in pres_a.generators().letters() {
        for u in &ball {
            let w = FreeActElement::new(x, u.clone());
            if !in_b(&w, &mut rw.gaps) {
                continue;
            }
            let Some(wphi) = rw.phi(&w)? else { continue };
            for m in &ball {
                if let Some(lhs) = rw.phi(&w.times(m))? {
                    emit.push(&out_pres, "R2", lhs, wphi.times(m));
                }
            }
        }
    }
    for r in pres_a.relations() {
        for m in &ball {
            let (um, vm) = (r.lhs.times(m), r.rhs.times(m));
            if !in_b(&um, &mut rw.gaps) {
                continue;
            }
            if let (Some(l), Some(rr)) = (rw.phi(&um)?, rw.phi(&vm)?) {
                emit.push(&out_pres, "R3", l, rr);
            }
        }
    }
    let mut notes = Vec::new();
    if !monoid.is_finite() {
        notes.push(format!(
            "infinite monoid: R2 and R3 truncated to multipliers of length at most {}",
            bounds.depth
        ));
    }
    let mut gaps = rw.gaps;
    gaps.dedup();
    Ok(Construction {
        name: "subact",
        presentation: out_pres.with_relations(emit.relations)?,
        tags: emit.tags,
        choices: rw.used,
        gaps,
        notes,
    })
}

/// An act `A = <X | R>` with a large subact `B`, the input of the large
/// subact constructions.
pub struct LargeSubact<'a, A: ActModel, B> {
    pub presentation: &'a ActPresentation,
    pub ambient: Interpretation<'a, A>,
    pub member: &'a B,
    pub bounds: ConstructBounds,
}

/// Where a monoid letter takes an element of the complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edge {
    Complement(usize),
    /// Into `B`, at the given generator of `Y`.
    Subact(Letter),
}

/// Why a generator of `Y` is there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// A generator of `X` lying in `B`.
    Generator(Letter),
    /// `a·m` for a complement element `a` and a monoid letter `m`.
    Boundary { from: usize, letter: Letter },
}

/// The generating set `Y = (X ∩ B) ∪ S` of a large subact, with the action
/// table of the complement that the rewriting map `θ` walks.
#[derive(Clone, Debug)]
pub struct LargeSubactGenerators<V> {
    /// Complement elements with a word of `F_X` representing each.
    pub complement: Vec<(V, FreeActElement)>,
    /// `table[a][m]` for complement element `a` and monoid letter `m`.
    pub table: Vec<Vec<Edge>>,
    pub names: Vec<String>,
    pub images: Vec<V>,
    pub origins: Vec<Origin>,
    /// Generators of `Y` standing for elements of `S`, aliases included.
    pub boundary: Vec<Letter>,
    /// Per generator of `X`: its generator in `Y`, or its complement index.
    pub placement: Vec<Result<Letter, usize>>,
}

impl<V> LargeSubactGenerators<V> {
    /// `w_y ∈ F_X` for each generator of `Y`.
    pub fn witness(&self, y: Letter) -> FreeActElement {
        match &self.origins[y as usize] {
            Origin::Generator(x) => FreeActElement::generator(*x),
            Origin::Boundary { from, letter } => self.complement[*from].1.times(&Word::letter(*letter)),
        }
    }

    /// `θ(x·w)`: read `w` from the left until it enters `B`. `None` when `x·w`
    /// stays in the complement.
    pub fn theta(&self, monoid: &Monoid, x: Letter, w: &Word) -> Option<FreeActElement> {
        let mut cur = match self.placement[x as usize] {
            Ok(y) => return Some(FreeActElement::new(y, monoid.canonical(w))),
            Err(a) => a,
        };
        for (i, &l) in w.letters().iter().enumerate() {
            match self.table[cur][l as usize] {
                Edge::Complement(j) => cur = j,
                Edge::Subact(y) => return Some(FreeActElement::new(y, monoid.canonical(&w.suffix_from(i + 1)))),
            }
        }
        None
    }

    /// `φ(x·m) = θ(x·w_m)` with `w_m` the canonical word of `m`.
    pub fn phi(&self, monoid: &Monoid, e: &FreeActElement) -> Option<FreeActElement> {
        self.theta(monoid, e.generator, &monoid.canonical(&e.word))
    }
}

fn require_exact<A: ActModel>(model: &A) -> Result<(), ConstructError> {
    if model.exact() {
        Ok(())
    } else {
        Err(ConstructError::Refused(
            "equality in the act is not decidable with this backend".into(),
        ))
    }
}

/// Finds `S = {am ∈ B : a ∈ A \ B, m a monoid letter}` by exploring the
/// complement from the generators outside `B`, and returns `Y = (X ∩ B) ∪ S`.
/// Elements of `S` equal to a generator in `X ∩ B` reuse that generator.
pub fn large_subact_generators<A: ActModel, B: Membership<A::Value>>(
    ctx: &LargeSubact<'_, A, B>,
) -> Result<LargeSubactGenerators<A::Value>, ConstructError> {
    let model = ctx.ambient.model;
    require_exact(model)?;
    let pres = ctx.presentation;
    let monoid = pres.monoid();
    let xs = pres.generators();
    let mut out = LargeSubactGenerators {
        complement: Vec::new(),
        table: Vec::new(),
        names: Vec::new(),
        images: Vec::new(),
        origins: Vec::new(),
        boundary: Vec::new(),
        placement: Vec::new(),
    };
    let mut index: HashMap<A::Value, usize> = HashMap::new();
    let mut y_of: HashMap<A::Value, Letter> = HashMap::new();
    for x in xs.letters() {
        let v = ctx.ambient.images[x as usize].clone();
        if decide(ctx.member, &v, || format!("generator {}", xs.name(x)))? {
            let y = *y_of.entry(v.clone()).or_insert_with(|| {
                out.names.push(xs.name(x).to_string());
                out.images.push(v);
                out.origins.push(Origin::Generator(x));
                (out.names.len() - 1) as Letter
            });
            out.placement.push(Ok(y));
        } else {
            let a = *index.entry(v.clone()).or_insert_with(|| {
                out.complement.push((v, FreeActElement::generator(x)));
                out.complement.len() - 1
            });
            out.placement.push(Err(a));
        }
    }
    let mut taken: Vec<String> = xs.names().to_vec();
    taken.extend(monoid.alphabet().names().iter().cloned());
    let mut next = 0;
    while next < out.complement.len() {
        let (a, word_a) = out.complement[next].clone();
        let mut row = Vec::new();
        for m in monoid.alphabet().letters() {
            let v = model.act(&a, &Word::letter(m));
            let w = word_a.times(&Word::letter(m));
            if decide(ctx.member, &v, || pres.render_element(&w))? {
                let y = match y_of.get(&v) {
                    Some(&y) => y,
                    None => {
                        let base = format!(
                            "{}_{}",
                            xs.name(w.generator),
                            monoid.alphabet().render_compact(&w.word)
                        );
                        let name = fresh_name(&base, &taken);
                        taken.push(name.clone());
                        out.names.push(name);
                        out.images.push(v.clone());
                        out.origins.push(Origin::Boundary { from: next, letter: m });
                        let y = (out.names.len() - 1) as Letter;
                        y_of.insert(v, y);
                        y
                    }
                };
                if !out.boundary.contains(&y) {
                    out.boundary.push(y);
                }
                row.push(Edge::Subact(y));
            } else {
                let j = match index.get(&v) {
                    Some(&j) => j,
                    None => {
                        if out.complement.len() >= ctx.bounds.complement_limit {
                            return Err(ConstructError::Refused(format!(
                                "complement has more than {} elements",
                                ctx.bounds.complement_limit
                            )));
                        }
                        out.complement.push((v.clone(), w));
                        index.insert(v, out.complement.len() - 1);
                        out.complement.len() - 1
                    }
                };
                row.push(Edge::Complement(j));
            }
        }
        out.table.push(row);
        next += 1;
    }
    Ok(out)
}

/// Finite presentation `<Y | S1, S2>` of a large subact, where
/// `S1 = {uφ = vφ : (u, v) ∈ R, u ∈ B}` and `S2` collects `b·w = c·z` for
/// `b, c ∈ S` and suffixes `w`, `z` of the two sides of a defining relation
/// of the monoid, whenever the equation holds in `B`.
pub fn large_subact_presentation<A: ActModel, B: Membership<A::Value>>(
    ctx: &LargeSubact<'_, A, B>,
    gens: &LargeSubactGenerators<A::Value>,
) -> Result<Construction, ConstructError> {
    let model = ctx.ambient.model;
    require_exact(model)?;
    let pres = ctx.presentation;
    let monoid = pres.monoid();
    let relations_p = match monoid.as_ref() {
        Monoid::Rewriting(sys) => {
            let schemas = sys.rules().iter().any(|r| matches!(r, Rule::Schema(_)));
            match (schemas, ctx.bounds.schema_bound) {
                (true, None) => {
                    return Err(ConstructError::Refused(
                        "the monoid presentation has infinite relation families; declare an instantiation bound".into(),
                    ))
                }
                (_, bound) => monoid.defining_relations(bound.unwrap_or(0)),
            }
        }
        _ => monoid.defining_relations(0),
    };
    let y_names: Vec<String> = gens.names.clone();
    let alphabet = join_alphabets(pres, &[&y_names])?;
    let out_pres = ActPresentation::new(monoid.clone(), alphabet, Vec::new())?;
    let mut emit = Emitter::new();
    let mut used = Vec::new();
    for (k, o) in gens.origins.iter().enumerate() {
        if let Origin::Boundary { from, letter } = o {
            used.push(("u_y".into(), gens.names[k].clone(), pres.render_element(&gens.complement[*from].1)));
            used.push(("m_y".into(), gens.names[k].clone(), monoid.alphabet().name(*letter).to_string()));
        }
    }

    for r in pres.relations() {
        let u = ctx.ambient.eval(&r.lhs);
        if !decide(ctx.member, &u, || pres.render_element(&r.lhs))? {
            continue;
        }
        let (Some(l), Some(rr)) = (gens.phi(monoid, &r.lhs), gens.phi(monoid, &r.rhs)) else {
            return Err(ConstructError::InvalidWitness(format!(
                "relation {} leaves the subact on one side",
                pres.render_relation(r)
            )));
        };
        used.push(("phi".into(), pres.render_element(&r.lhs), out_pres.render_element(&l)));
        used.push(("phi".into(), pres.render_element(&r.rhs), out_pres.render_element(&rr)));
        emit.push(&out_pres, "S1", l, rr);
    }
    for (p, q) in &relations_p {
        for w in p.suffixes() {
            for z in q.suffixes() {
                for &b in &gens.boundary {
                    let bw = model.act(&gens.images[b as usize], &w);
                    for &c in &gens.boundary {
                        if bw == model.act(&gens.images[c as usize], &z) {
                            emit.push(&out_pres, "S2", FreeActElement::new(b, w.clone()), FreeActElement::new(c, z.clone()));
                        }
                    }
                }
            }
        }
    }
    Ok(Construction {
        name: "large-subact",
        presentation: out_pres.with_relations(emit.relations)?,
        tags: emit.tags,
        choices: used,
        gaps: Vec::new(),
        notes: vec![match gens.complement.len() {
            1 => "complement has 1 element".to_string(),
            n => format!("complement has {n} elements"),
        }],
    })
}
