//! Property checks shared by the randomized suite and the acceptance report.
//!
//! Each check decodes a vector of random choices into a concrete case and returns
//! `Err` with an explanation when the property fails. `Ok(false)` marks a case that
//! does not apply and should be discarded.

#![allow(dead_code)]

use std::collections::BTreeSet;

use moss::eval::{Binding, DEFAULT_FUEL};
use moss::fixtures::{fixture, CATALOG};
use moss::implsynth::{self, enumerate_candidates, SynthConfig, SynthResult, Verdict};
use moss::ir::{check_ias_wellformed, check_iss_wellformed, rules_of, LayeredSystem, Mode, VocabClass};
use moss::manifest::load_project;
use moss::pipeline::{check_layer, RunConfig, Status};
use moss::rewrite::{normalize, RewriteSystem};
use moss::term::{sym, FuncClass, FuncDecl, Node, Symbol, Term};

pub type Outcome = Result<bool, String>;

/// Reads choices as a stream, repeating zero once exhausted.
pub struct Choices<'a> {
    raw: &'a [u32],
    pos: usize,
}

impl<'a> Choices<'a> {
    pub fn new(raw: &'a [u32]) -> Self {
        Choices { raw, pos: 0 }
    }

    pub fn pick(&mut self, n: usize) -> usize {
        let c = self.raw.get(self.pos).copied().unwrap_or(0);
        self.pos += 1;
        if n == 0 {
            0
        } else {
            c as usize % n
        }
    }
}

/// Sort-directed random ground or open terms over `funcs`.
pub struct TermGen<'a> {
    pub funcs: Vec<FuncDecl>,
    pub vars: Vec<(Symbol, Symbol)>,
    pub choices: Choices<'a>,
}

impl TermGen<'_> {
    /// A term of `sort` whose root is an application.
    pub fn app_term(&mut self, sort: &str, depth: usize) -> Option<Term> {
        let producers: Vec<FuncDecl> = self.funcs.iter().filter(|d| &*d.result == sort).cloned().collect();
        if producers.is_empty() {
            return None;
        }
        let d = &producers[self.choices.pick(producers.len())];
        let mut args = Vec::with_capacity(d.args.len());
        for a in &d.args {
            args.push(self.term(a, depth.saturating_sub(1))?);
        }
        Some(Term::app(&d.name, args))
    }

    pub fn term(&mut self, sort: &str, depth: usize) -> Option<Term> {
        let mut leaves: Vec<Term> = match sort {
            "int" => (0..=10).map(Term::int).collect(),
            "bool" => vec![Term::bool(false), Term::bool(true)],
            _ => vec![],
        };
        leaves.extend(self.vars.iter().filter(|(_, s)| &**s == sort).map(|(n, _)| Term::var(n)));
        let producers: Vec<FuncDecl> =
            self.funcs.iter().filter(|d| &*d.result == sort && (depth > 0 || d.args.is_empty())).cloned().collect();
        let n = leaves.len() + producers.len();
        if n == 0 {
            return None;
        }
        let k = self.choices.pick(n);
        if k < leaves.len() {
            return Some(leaves[k].clone());
        }
        let d = &producers[k - leaves.len()];
        let mut args = Vec::with_capacity(d.args.len());
        for a in &d.args {
            args.push(self.term(a, depth.saturating_sub(1))?);
        }
        Some(Term::app(&d.name, args))
    }
}

/// Layers of bundled fixtures whose specification is known, after filling in goldens.
pub fn specified_layers() -> Vec<(LayeredSystem, usize)> {
    let mut out = Vec::new();
    for f in CATALOG {
        let sys = f.completed().expect("fixture loads");
        for i in 0..sys.layers() {
            // the sound ones only: a buggy implementation under a correct spec disagrees by design
            let sound = matches!(check_layer(&sys, i, &RunConfig::default()), Ok((Status::Ok, _)));
            if sys.modules[i].ias.is_some() && sound {
                out.push((sys.clone(), i));
            }
        }
    }
    out
}

fn callable(sys: &LayeredSystem, i: usize, class: VocabClass) -> Vec<FuncDecl> {
    let sig = sys.vocabulary_of(i, class).expect("vocabulary");
    sig.funcs.values().filter(|d| !matches!(d.class, FuncClass::Projection { .. })).cloned().collect()
}

fn observable(sort: &str, sys: &LayeredSystem) -> bool {
    matches!(sort, "int" | "bool") || sys.base_sorts.iter().any(|s| &*s.name == sort)
}

/// normalize(normalize(t)) = normalize(t) whenever the first call finishes.
pub fn normalize_idempotent(layers: &[(LayeredSystem, usize)], raw: &[u32]) -> Outcome {
    let mut ch = Choices::new(raw);
    let (sys, i) = &layers[ch.pick(layers.len())];
    let lower = sys.lower_rules(*i).map_err(|e| e.to_string())?;
    let rs: RewriteSystem = lower.extend(&rules_of(sys.modules[*i].ias.as_ref().unwrap()));
    let funcs = callable(sys, *i, VocabClass::Iss);
    let sorts: Vec<Symbol> = funcs.iter().map(|d| d.result.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let vars = sorts.iter().map(|s| (sym(&format!("v_{s}")), s.clone())).collect();
    let sort = sorts[ch.pick(sorts.len())].clone();
    let mut g = TermGen { funcs, vars, choices: ch };
    let Some(t) = g.app_term(&sort, 4) else { return Ok(false) };
    let Ok(once) = normalize(&t, &rs, DEFAULT_FUEL) else { return Ok(false) };
    let twice = normalize(&once, &rs, DEFAULT_FUEL).map_err(|e| format!("{t}: second pass failed: {e}"))?;
    if once != twice {
        return Err(format!("{}: {t} normalizes to {once}, then to {twice}", sys.modules[*i].name));
    }
    Ok(true)
}

fn is_literal(t: &Term, sys: &LayeredSystem) -> bool {
    match t.node() {
        Node::Int(_) | Node::Bool(_) => true,
        Node::App(f, args) => {
            sys.base_sorts.iter().flat_map(|s| &s.ctors).any(|c| c.name == *f)
                && args.iter().all(|a| is_literal(a, sys))
        }
        _ => false,
    }
}

/// Evaluating an observation with the layer's code agrees with rewriting it by the layer's spec.
pub fn eval_rewrite_agree(layers: &[(LayeredSystem, usize)], raw: &[u32]) -> Outcome {
    let mut ch = Choices::new(raw);
    let (sys, i) = &layers[ch.pick(layers.len())];
    let m = &sys.modules[*i];
    if !m.has_complete_impl() {
        return Ok(false);
    }
    let funcs = callable(sys, *i, VocabClass::Ias);
    let sorts: Vec<Symbol> = funcs
        .iter()
        .map(|d| d.result.clone())
        .filter(|s| observable(s, sys))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if sorts.is_empty() {
        return Ok(false);
    }
    let sort = sorts[ch.pick(sorts.len())].clone();
    let mut g = TermGen { funcs, vars: vec![], choices: ch };
    let Some(t) = g.app_term(&sort, 4) else { return Ok(false) };
    let sem = sys.semantics(*i, Mode::Modular).map_err(|e| e.to_string())?;
    let Ok(value) = sem.eval(&t, &Binding::new()) else { return Ok(false) };
    let rs = rules_of(m.ias.as_ref().unwrap());
    let Ok(nf) = normalize(&t, &rs, DEFAULT_FUEL) else { return Ok(false) };
    if !is_literal(&nf, sys) {
        return Ok(false);
    }
    if nf != value {
        return Err(format!("{}: {t} evaluates to {value} but rewrites to {nf}", m.name));
    }
    Ok(true)
}

fn names(sys: &LayeredSystem, i: usize, c: VocabClass) -> BTreeSet<Symbol> {
    sys.vocabulary_of(i, c).expect("vocabulary").funcs.keys().cloned().collect()
}

/// ias ⊆ iss ⊆ impl at every layer, and layer i's vocabulary and checks ignore layer i-1's code.
pub fn vocabulary_monotone(raw: &[u32]) -> Outcome {
    let mut ch = Choices::new(raw);
    let f = &CATALOG[ch.pick(CATALOG.len())];
    let sys = f.completed().map_err(|e| e.to_string())?;
    let i = ch.pick(sys.layers());
    let (ias, iss, imp) =
        (names(&sys, i, VocabClass::Ias), names(&sys, i, VocabClass::Iss), names(&sys, i, VocabClass::Impl));
    if !ias.is_subset(&iss) || !iss.is_subset(&imp) {
        return Err(format!("{} layer {i}: ias {ias:?} iss {iss:?} impl {imp:?}", f.name));
    }
    if i == 0 {
        return Ok(true);
    }
    let mut other = sys.clone();
    let below = &mut other.modules[i - 1].implementation;
    let keys: Vec<Symbol> = below.keys().cloned().collect();
    for k in keys {
        if ch.pick(2) == 0 {
            below.remove(&k);
        }
    }
    for c in [VocabClass::Ias, VocabClass::Iss, VocabClass::Impl] {
        if sys.vocabulary_of(i, c).unwrap() != other.vocabulary_of(i, c).unwrap() {
            return Err(format!("{} layer {i}: vocabulary depends on the code below", f.name));
        }
    }
    let m = &sys.modules[i];
    if let Some(iss) = &m.iss {
        let (a, b) = (check_iss_wellformed(iss, &sys, i).unwrap(), check_iss_wellformed(iss, &other, i).unwrap());
        if format!("{a:?}") != format!("{b:?}") {
            return Err(format!("{} layer {i}: ISS check depends on the code below", f.name));
        }
    }
    if let Some(eqs) = &m.ias {
        let (a, b) = (check_ias_wellformed(eqs, &sys, i).unwrap(), check_ias_wellformed(eqs, &other, i).unwrap());
        if format!("{a:?}") != format!("{b:?}") {
            return Err(format!("{} layer {i}: IAS check depends on the code below", f.name));
        }
    }
    Ok(true)
}

const INC: [&str; 5] = ["(n c)", "0", "(+ (n c) 1)", "(- (n c) 1)", "(+ (n c) 2)"];
const VALUE: [&str; 4] = ["0", "(n c)", "1", "(+ (n c) 1)"];

/// A counter synthesis problem with random grammars and random expected values.
pub fn counter_problem(raw: &[u32]) -> String {
    let mut ch = Choices::new(raw);
    let subset = |ch: &mut Choices, items: &[&str]| -> String {
        let mut picked: Vec<&str> = items.iter().copied().filter(|_| ch.pick(3) != 0).collect();
        if picked.is_empty() {
            picked.push(items[ch.pick(items.len())]);
        }
        picked.join(" ")
    };
    let inc = subset(&mut ch, &INC);
    let value = subset(&mut ch, &VALUE);
    let mut asserts = String::new();
    let mut term = "(zero)".to_string();
    for _ in 0..1 + ch.pick(4) {
        // mostly follow a line so that some problems are realizable
        let k = asserts.matches("assert").count() as i64;
        let expected = if ch.pick(4) == 0 { ch.pick(4) as i64 } else { k * (1 + ch.pick(2) as i64) };
        asserts.push_str(&format!("(assert (= (value {term}) {expected}))\n"));
        term = format!("(inc {term})");
    }
    format!(
        "(module Counter :layer 0
  (sort Counter (mkC (n int)))
  (export (zero () Counter) (inc (Counter) Counter) (value (Counter) int))
  (impl (define (zero) (mkC 0)))
  (iss {asserts})
  (search-space
    (sketch (inc c) (mkC (?? N)) (grammar (N int {inc})))
    (sketch (value c) (?? V) (grammar (V int {value}))))
  (bounds :int 0 3 :depth 3))"
    )
}

/// Plain enumeration and CEGIS return the same result, which replay confirms.
pub fn cegis_matches_enumeration(raw: &[u32]) -> Outcome {
    let src = counter_problem(raw);
    let sys = load_project(&src).map_err(|e| format!("{e}\n{src}"))?;
    let cfg = SynthConfig::default();
    let plain = implsynth::synthesize_impl(&sys, 0, &cfg).map_err(|e| e.to_string())?;
    let guided = implsynth::cegis(&sys, 0, &cfg).map_err(|e| e.to_string())?;
    if plain.result != guided.result {
        return Err(format!("plain {:?} vs cegis {:?}\n{src}", plain.result, guided.result));
    }
    let space = &sys.modules[0].search_space;
    match &plain.result {
        SynthResult::Solved(c) => {
            if implsynth::verify_candidate(c, &sys, 0, &cfg).map_err(|e| e.to_string())? != Verdict::Ok {
                return Err(format!("solution does not verify\n{src}"));
            }
            let first = enumerate_candidates(space)
                .unwrap()
                .find(|c| implsynth::verify_candidate(c, &sys, 0, &cfg).unwrap() == Verdict::Ok);
            if first.as_ref() != Some(c) {
                return Err(format!("not the first verifying candidate\n{src}"));
            }
        }
        SynthResult::Unrealizable => {
            for c in enumerate_candidates(space).unwrap() {
                if !matches!(implsynth::verify_candidate(&c, &sys, 0, &cfg).unwrap(), Verdict::Refuted(_)) {
                    return Err(format!("unrealizable but {:?} is not refuted\n{src}", c.choices));
                }
            }
        }
        SynthResult::Timeout => return Err(format!("timeout\n{src}")),
    }
    Ok(true)
}

pub fn ticketvendor() -> LayeredSystem {
    fixture("ticketvendor").unwrap().completed().unwrap()
}
