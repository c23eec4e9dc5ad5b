//! Specification synthesis: the strongest guarded equations a property grammar can express
//! that hold of a layer's implementation on every in-bounds sample.
//!
//! A property `g -> l = r` is sound when, on every sample where `g` holds, `l` and `r`
//! evaluate to equal values; a stuck or exhausted evaluation counts as a violation.
//! `p1` implies `p2` when, wherever `g2` holds, `g1` holds and the right-hand sides agree.
//! The result keeps one canonical representative of each maximal class under implication.

use crate::domain::DomainBuilder;
use crate::error::{Error, Result};
use crate::eval::{Binding, Evaluator, Semantics, DEFAULT_FUEL};
use crate::grammar::{Product, DEFAULT_CEILING};
use crate::ir::{Bounds, GuardedEquation, LayeredSystem, Mode, PropertyGrammar};
use crate::rewrite::{check_rule, RewriteRule};
use crate::term::{Symbol, Term, BOOL};

#[derive(Clone, Debug)]
pub struct SpecConfig {
    /// Overrides the module's own bounds.
    pub bounds: Option<Bounds>,
    pub fuel: u64,
}

impl Default for SpecConfig {
    fn default() -> Self {
        SpecConfig { bounds: None, fuel: DEFAULT_FUEL }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecStats {
    pub grammars: usize,
    pub candidates: usize,
    pub sound: usize,
    pub samples: usize,
    pub steps: u64,
}

#[derive(Clone, Debug)]
pub struct SpecOutcome {
    pub ias: Vec<GuardedEquation>,
    pub stats: SpecStats,
}

/// Sample-wise evaluation of every candidate a grammar derives.
pub struct PropertyTable {
    pub grammar: String,
    pub lhs: Term,
    pub guards: Vec<Term>,
    pub rhs: Vec<Term>,
    pub samples: Vec<Binding>,
    /// `guard_values[g][s]`; `None` when the guard does not evaluate.
    guard_values: Vec<Vec<Option<bool>>>,
    /// `rhs_values[r][s]`.
    rhs_values: Vec<Vec<Option<Term>>>,
    /// `agrees[r][s]`: lhs and rhs evaluate to equal values.
    agrees: Vec<Vec<bool>>,
    sem: Semantics,
    pub steps: u64,
}

/// Candidate index in canonical order: right-hand side outer, guard inner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PropId {
    pub rhs: usize,
    pub guard: usize,
}

impl PropertyTable {
    pub fn ids(&self) -> impl Iterator<Item = PropId> + '_ {
        (0..self.rhs.len()).flat_map(move |r| (0..self.guards.len()).map(move |g| PropId { rhs: r, guard: g }))
    }

    pub fn equation(&self, p: PropId) -> GuardedEquation {
        GuardedEquation::new(self.guards[p.guard].clone(), self.lhs.clone(), self.rhs[p.rhs].clone())
    }

    pub fn is_sound(&self, p: PropId) -> bool {
        (0..self.samples.len()).all(|s| match self.guard_values[p.guard][s] {
            Some(false) => true,
            Some(true) => self.agrees[p.rhs][s],
            None => false,
        })
    }

    /// First sample on which `p` fails.
    pub fn witness(&self, p: PropId) -> Option<&Binding> {
        (0..self.samples.len())
            .find(|&s| match self.guard_values[p.guard][s] {
                Some(false) => false,
                Some(true) => !self.agrees[p.rhs][s],
                None => true,
            })
            .map(|s| &self.samples[s])
    }

    /// The guard never holds, so the property says nothing.
    pub fn is_vacuous(&self, p: PropId) -> bool {
        self.guard_values[p.guard].iter().all(|v| *v == Some(false))
    }

    pub fn implies(&self, a: PropId, b: PropId) -> bool {
        let mut ev = Evaluator::new(&self.sem);
        (0..self.samples.len()).all(|s| {
            if self.guard_values[b.guard][s] != Some(true) {
                return true;
            }
            if self.guard_values[a.guard][s] != Some(true) {
                return false;
            }
            match (&self.rhs_values[a.rhs][s], &self.rhs_values[b.rhs][s]) {
                (Some(x), Some(y)) => {
                    x == y || {
                        ev.refuel();
                        ev.equal(x, y).unwrap_or(false)
                    }
                }
                _ => false,
            }
        })
    }

    pub fn equivalent(&self, a: PropId, b: PropId) -> bool {
        self.implies(a, b) && self.implies(b, a)
    }

    /// A sound candidate strictly stronger than `p`, first in canonical order.
    pub fn find_stronger(&self, p: PropId) -> Option<PropId> {
        self.ids().find(|&q| q != p && self.is_sound(q) && self.implies(q, p) && !self.implies(p, q))
    }

    /// The first canonical candidate equivalent to `p`.
    pub fn canonical(&self, p: PropId) -> PropId {
        self.ids().find(|&q| self.is_sound(q) && self.equivalent(q, p)).unwrap_or(p)
    }
}

/// `{true}` plus each boolean export of layer `i` applied to matching variables, and its negation.
pub fn default_guards(sys: &LayeredSystem, i: usize, vars: &[(Symbol, Symbol)]) -> Result<Vec<Term>> {
    let m = sys.module(i)?;
    let mut out = vec![Term::bool(true)];
    for d in m.exports.iter().filter(|d| &*d.result == BOOL && !d.args.is_empty()) {
        let pools: Vec<Vec<&Symbol>> =
            d.args.iter().map(|a| vars.iter().filter(|(_, s)| s == a).map(|(n, _)| n).collect()).collect();
        for combo in Product::new(pools.iter().map(Vec::len).collect()) {
            let call =
                Term::app_sym(d.name.clone(), combo.iter().enumerate().map(|(k, &c)| Term::var(pools[k][c])).collect());
            out.push(call.clone());
            out.push(Term::not(call));
        }
    }
    Ok(out)
}

fn module_bounds(sys: &LayeredSystem, i: usize, cfg: &SpecConfig) -> Bounds {
    cfg.bounds.or(sys.modules[i].bounds).unwrap_or_default()
}

/// Evaluates every candidate of `pg` on the layer's samples.
pub fn property_table(sys: &LayeredSystem, i: usize, pg: &PropertyGrammar, cfg: &SpecConfig) -> Result<PropertyTable> {
    let lhs = pg.expanded_lhs();
    let rhs: Vec<Term> = pg.grammar.expand(&pg.rhs, pg.depth, DEFAULT_CEILING)?.into_iter().map(|d| d.term).collect();
    for r in &rhs {
        check_rule(&RewriteRule::new(lhs.clone(), r.clone()))
            .map_err(|msg| Error::Grammar { name: pg.name.clone(), msg: format!("`{lhs} = {r}`: {msg}") })?;
    }
    let guards = match &pg.guards {
        Some(g) => g.clone(),
        None => default_guards(sys, i, &pg.vars)?,
    };
    let mut sem = sys.semantics(i, Mode::Modular)?;
    sem.fuel = cfg.fuel;
    let vars: Vec<_> = pg.vars.iter().map(|(n, s)| (n.clone(), s.clone(), None)).collect();
    let samples = DomainBuilder::new(sys, i, &sem, module_bounds(sys, i, cfg)).bindings(&vars)?;

    let mut ev = Evaluator::new(&sem);
    let mut value = |t: &Term, b: &Binding| -> Result<Option<Term>> {
        ev.refuel();
        match ev.eval(t, b) {
            Ok(v) => Ok(Some(v)),
            Err(Error::Stuck(_)) | Err(Error::Overflow(_)) => Ok(None),
            Err(e) if e.is_fuel() => Ok(None),
            Err(e) => Err(e),
        }
    };
    let lhs_values: Vec<Option<Term>> = samples.iter().map(|b| value(&lhs, b)).collect::<Result<_>>()?;
    let guard_values: Vec<Vec<Option<bool>>> = guards
        .iter()
        .map(|g| samples.iter().map(|b| Ok(value(g, b)?.and_then(|v| v.as_bool()))).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let rhs_values: Vec<Vec<Option<Term>>> =
        rhs.iter().map(|r| samples.iter().map(|b| value(r, b)).collect::<Result<_>>()).collect::<Result<_>>()?;
    let agrees = rhs_values
        .iter()
        .map(|vals| {
            vals.iter()
                .zip(&lhs_values)
                .map(|(r, l)| match (l, r) {
                    (Some(l), Some(r)) => {
                        l == r || {
                            ev.refuel();
                            ev.equal(l, r).unwrap_or(false)
                        }
                    }
                    _ => false,
                })
                .collect()
        })
        .collect();
    let steps = ev.steps();
    Ok(PropertyTable {
        grammar: pg.name.clone(),
        lhs,
        guards,
        rhs,
        samples,
        guard_values,
        rhs_values,
        agrees,
        sem,
        steps,
    })
}

/// Strengthening search over one table: take any sound candidate not yet implied, strengthen it
/// until nothing sound is strictly stronger, keep it.
pub fn synthesize_table(t: &PropertyTable) -> Vec<GuardedEquation> {
    let mut kept: Vec<PropId> = Vec::new();
    loop {
        let next = t.ids().find(|&p| t.is_sound(p) && !t.is_vacuous(p) && !kept.iter().any(|&k| t.implies(k, p)));
        let Some(mut p) = next else { break };
        while let Some(q) = t.find_stronger(p) {
            p = q;
        }
        kept.retain(|&k| !t.implies(p, k));
        kept.push(t.canonical(p));
    }
    kept.sort();
    kept.into_iter().map(|p| t.equation(p)).collect()
}

/// Brute force: canonical representatives of the maximal sound classes.
pub fn oracle_table(t: &PropertyTable) -> Vec<GuardedEquation> {
    let sound: Vec<PropId> = t.ids().filter(|&p| t.is_sound(p) && !t.is_vacuous(p)).collect();
    let mut out: Vec<PropId> = Vec::new();
    for &p in &sound {
        let dominated = sound.iter().any(|&q| t.implies(q, p) && !t.implies(p, q));
        let has_earlier_twin = sound.iter().take_while(|&&q| q < p).any(|&q| t.equivalent(q, p));
        if !dominated && !has_earlier_twin {
            out.push(p);
        }
    }
    out.into_iter().map(|p| t.equation(p)).collect()
}

fn over_grammars(
    sys: &LayeredSystem,
    i: usize,
    cfg: &SpecConfig,
    solve: impl Fn(&PropertyTable) -> Vec<GuardedEquation>,
) -> Result<SpecOutcome> {
    let m = sys.module(i)?;
    if !m.has_complete_impl() {
        return Err(Error::Config(format!("module `{}` has no complete implementation", m.name)));
    }
    let mut stats = SpecStats { grammars: m.grammars.len(), ..SpecStats::default() };
    let mut ias = Vec::new();
    for pg in &m.grammars {
        let t = property_table(sys, i, pg, cfg)?;
        stats.candidates += t.rhs.len() * t.guards.len();
        stats.sound += t.ids().filter(|&p| t.is_sound(p)).count();
        stats.samples += t.samples.len();
        stats.steps += t.steps;
        ias.extend(solve(&t));
    }
    Ok(SpecOutcome { ias, stats })
}

/// Strongest IAS for layer `i`, grammar by grammar in declaration order.
pub fn synthesize_spec(sys: &LayeredSystem, i: usize, cfg: &SpecConfig) -> Result<SpecOutcome> {
    over_grammars(sys, i, cfg, synthesize_table)
}

pub fn oracle_spec(sys: &LayeredSystem, i: usize, cfg: &SpecConfig) -> Result<Vec<GuardedEquation>> {
    Ok(over_grammars(sys, i, cfg, oracle_table)?.ias)
}

/// Outcome of checking one property on every sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Soundness {
    Holds,
    /// First failing sample and what went wrong there.
    Violated {
        binding: Binding,
        detail: String,
    },
    /// Some sample ran out of fuel and none failed.
    Fuel {
        binding: Binding,
    },
}

/// Variables of `eq` with the sorts the layer's vocabulary gives them.
pub fn equation_vars(eq: &GuardedEquation, sys: &LayeredSystem, i: usize) -> Result<Vec<(Symbol, Symbol)>> {
    let sig = sys.vocabulary_of(i, crate::ir::VocabClass::Iss)?;
    let mut ctx = crate::term::SortCtx::new();
    let holes = Default::default();
    let sort = sig.sort_of(&eq.lhs, &mut ctx, &holes, None)?;
    sig.sort_of(&eq.rhs, &mut ctx, &holes, Some(&sort))?;
    sig.sort_of(&eq.guard, &mut ctx, &holes, Some(&crate::term::sym(BOOL)))?;
    let order = [&eq.lhs, &eq.rhs, &eq.guard];
    let mut out: Vec<(Symbol, Symbol)> = Vec::new();
    for t in order {
        let mut names = Vec::new();
        t.visit(&mut |s| {
            if let crate::term::Node::Var(v) = s.node() {
                names.push(v.clone());
            }
        });
        for v in names {
            if !out.iter().any(|(n, _)| *n == v) {
                out.push((v.clone(), ctx[&v].clone()));
            }
        }
    }
    Ok(out)
}

fn describe(t: &Term, r: &Result<Term>) -> std::result::Result<Term, String> {
    match r {
        Ok(v) => Ok(v.clone()),
        Err(Error::Stuck(s)) => Err(format!("`{t}` is stuck at {s}")),
        Err(Error::Overflow(s)) => Err(format!("`{t}` overflowed in {s}")),
        Err(e) => Err(format!("`{t}`: {e}")),
    }
}

/// Checks `eq` on every sample of its variables at layer `i`, in domain order.
pub fn check_soundness(
    eq: &GuardedEquation,
    sys: &LayeredSystem,
    i: usize,
    bounds: Bounds,
    fuel: u64,
) -> Result<Soundness> {
    let vars = equation_vars(eq, sys, i)?;
    let mut sem = sys.semantics(i, Mode::Modular)?;
    sem.fuel = fuel;
    let vs: Vec<_> = vars.iter().map(|(n, s)| (n.clone(), s.clone(), None)).collect();
    let samples = DomainBuilder::new(sys, i, &sem, bounds).bindings(&vs)?;
    let mut ev = Evaluator::new(&sem);
    let mut fuel_hit = None;
    for b in samples {
        let mut run = |t: &Term| {
            ev.refuel();
            ev.eval(t, &b)
        };
        let g = run(&eq.guard);
        if matches!(&g, Err(e) if e.is_fuel()) {
            fuel_hit.get_or_insert(b.clone());
            continue;
        }
        match describe(&eq.guard, &g) {
            Ok(v) if v.as_bool() == Some(false) => continue,
            Ok(v) if v.as_bool() == Some(true) => {}
            Ok(v) => {
                let detail = format!("`{}` is stuck at {}", eq.guard, sem.blocking_subterm(&v));
                return Ok(Soundness::Violated { detail, binding: b });
            }
            Err(detail) => return Ok(Soundness::Violated { binding: b, detail }),
        }
        let (l, r) = (run(&eq.lhs), run(&eq.rhs));
        if [&l, &r].iter().any(|x| matches!(x, Err(e) if e.is_fuel())) {
            fuel_hit.get_or_insert(b.clone());
            continue;
        }
        let (l, r) = match (describe(&eq.lhs, &l), describe(&eq.rhs, &r)) {
            (Ok(l), Ok(r)) => (l, r),
            (Err(detail), _) | (_, Err(detail)) => return Ok(Soundness::Violated { binding: b, detail }),
        };
        ev.refuel();
        match ev.equal(&l, &r) {
            Ok(true) => {}
            Ok(false) => {
                return Ok(Soundness::Violated { detail: format!("left side is {l}, right side is {r}"), binding: b })
            }
            Err(e) if e.is_fuel() => {
                fuel_hit.get_or_insert(b.clone());
            }
            Err(e) => {
                let detail = describe(&Term::eq(l, r), &Err(e)).unwrap_err();
                return Ok(Soundness::Violated { binding: b, detail });
            }
        }
    }
    Ok(match fuel_hit {
        Some(binding) => Soundness::Fuel { binding },
        None => Soundness::Holds,
    })
}
