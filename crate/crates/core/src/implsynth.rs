//! Implementation synthesis: fill sketch holes so that the layer's ISS holds on every
//! in-bounds binding, with lower layers executed through their rewrite rules.
//!
//! Candidates are ordered function-major: sketches in declaration order, each sketch's
//! fillings by total size and then production index. The search is a depth-first walk
//! over that order which checks an assertion as soon as every function it depends on is
//! fixed, so it returns the first passing candidate of the full enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::domain::DomainBuilder;
use crate::error::{Error, Result};
use crate::eval::{Binding, Evaluator, FunDef, ImplEnv, Semantics};
use crate::grammar::{fill_in_order, Product, DEFAULT_CEILING};
use crate::ir::{check_impl_vocabulary, Bounds, ImplSpec, LayeredSystem, Mode, Sketch};
use crate::report::WellFormedReport;
use crate::term::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Every check enumerates all bindings.
    Plain,
    /// Bindings that refuted earlier candidates are tried first.
    Cegis,
}

#[derive(Clone, Debug)]
pub struct SynthConfig {
    pub bounds: Bounds,
    pub fuel: u64,
    pub jobs: usize,
    pub mode: Mode,
    pub strategy: Strategy,
    /// Budget on candidate checks before giving up with `Timeout`.
    pub max_checks: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            bounds: Bounds::default(),
            fuel: crate::eval::DEFAULT_FUEL,
            jobs: 1,
            mode: Mode::Modular,
            strategy: Strategy::Cegis,
            max_checks: 5_000_000,
        }
    }
}

/// A filling of every sketch: one index per sketch into its candidate list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub choices: Vec<usize>,
    pub definitions: Vec<(Symbol, Arc<FunDef>)>,
}

impl Candidate {
    /// `base` extended with this candidate's definitions.
    pub fn env(&self, base: &ImplEnv) -> ImplEnv {
        let mut env = base.clone();
        for (n, d) in &self.definitions {
            env.insert(n.clone(), d.clone());
        }
        env
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub binding: Binding,
    /// Index into the ISS assertions.
    pub assertion: usize,
    pub detail: String,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let b: Vec<String> = self.binding.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "assertion #{} with {{{}}}: {}", self.assertion + 1, b.join(", "), self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Refuted(Counterexample),
    /// Some evaluation ran out of fuel and none refuted.
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SynthResult {
    Solved(Candidate),
    Unrealizable,
    Timeout,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SynthStats {
    /// Full candidates in the enumeration.
    pub space: u128,
    /// Partial or full candidates whose newly checkable assertions were evaluated.
    pub checks: u64,
    pub counterexamples: usize,
    /// Evaluation steps across all checks.
    pub steps: u64,
}

#[derive(Clone, Debug)]
pub struct SynthOutcome {
    pub result: SynthResult,
    pub stats: SynthStats,
    /// Distinct refuting bindings, in discovery order (CEGIS only).
    pub counterexamples: Vec<Binding>,
    /// The most recent refutation, for explaining an unrealizable search.
    pub last_refutation: Option<Counterexample>,
}

/// Ordered fillings of one sketch.
pub fn sketch_candidates(sk: &Sketch) -> Result<Vec<Arc<FunDef>>> {
    let holes = sk.body.holes();
    let mut pools = Vec::with_capacity(holes.len());
    for h in &holes {
        pools.push(sk.grammar.expand(h, sk.depth, DEFAULT_CEILING)?);
    }
    let mut combos: Vec<(usize, Vec<usize>)> = Product::new(pools.iter().map(Vec::len).collect())
        .map(|c| (c.iter().enumerate().map(|(j, &k)| pools[j][k].size()).sum(), c))
        .collect();
    if combos.len() > DEFAULT_CEILING {
        return Err(Error::GrammarTooLarge {
            name: sk.name.to_string(),
            count: combos.len(),
            ceiling: DEFAULT_CEILING,
        });
    }
    combos.sort();
    Ok(combos
        .into_iter()
        .map(|(_, c)| {
            let body = fill_in_order(&sk.body, &mut c.iter().enumerate().map(|(j, &k)| &pools[j][k].term));
            Arc::new(FunDef { params: sk.params.clone(), body })
        })
        .collect())
}

/// Every candidate in canonical order. Materializes per-sketch lists, streams their product.
pub fn enumerate_candidates(space: &[Sketch]) -> Result<impl Iterator<Item = Candidate>> {
    let lists: Vec<Vec<Arc<FunDef>>> = space.iter().map(sketch_candidates).collect::<Result<_>>()?;
    let names: Vec<Symbol> = space.iter().map(|s| s.name.clone()).collect();
    Ok(Product::new(lists.iter().map(Vec::len).collect()).map(move |choices| Candidate {
        definitions: choices.iter().enumerate().map(|(k, &c)| (names[k].clone(), lists[k][c].clone())).collect(),
        choices,
    }))
}

pub fn space_size(space: &[Sketch]) -> Result<u128> {
    let mut n: u128 = 1;
    for sk in space {
        n = n.saturating_mul(sketch_candidates(sk)?.len() as u128);
    }
    Ok(n)
}

/// The ISS and its evaluation context for layer `i`.
struct Problem<'a> {
    sys: &'a LayeredSystem,
    layer: usize,
    iss: &'a ImplSpec,
    base_env: ImplEnv,
    cfg: &'a SynthConfig,
    /// Fixed bindings when no harness variable ranges over a sort the candidate defines.
    bindings: Option<Arc<Vec<Binding>>>,
    /// Semantics of the layer with only the given definitions; candidates extend its env.
    base: Semantics,
    /// Symbols of each assertion together with the assumptions, plus the equality function.
    assertion_syms: Vec<BTreeSet<Symbol>>,
    /// Symbols of each given body.
    body_syms: BTreeMap<Symbol, BTreeSet<Symbol>>,
    steps: AtomicU64,
    checks: AtomicU64,
}

/// Outcome of checking some assertions against one environment.
enum Check {
    Pass,
    Fail(Counterexample),
    Fuel(String),
}

impl<'a> Problem<'a> {
    fn new(sys: &'a LayeredSystem, layer: usize, cfg: &'a SynthConfig) -> Result<Self> {
        let m = sys.module(layer)?;
        let iss = m.iss.as_ref().ok_or_else(|| Error::Config(format!("module `{}` has no ISS", m.name)))?;
        let mut base = sys.semantics_with(layer, m.implementation.clone(), cfg.mode)?;
        base.fuel = cfg.fuel;
        let assumed: BTreeSet<Symbol> = iss.assumptions.iter().flat_map(|t| t.symbols()).collect();
        let assertion_syms = iss
            .assertions
            .iter()
            .map(|a| {
                let mut set = a.symbols();
                set.extend(assumed.iter().cloned());
                if set.iter().any(|s| &**s == "=") {
                    set.extend(m.equality.iter().cloned());
                }
                set
            })
            .collect();
        let body_syms = m.implementation.iter().map(|(k, d)| (k.clone(), d.body.symbols())).collect();
        let mut p = Problem {
            base,
            assertion_syms,
            body_syms,
            sys,
            layer,
            iss,
            base_env: m.implementation.clone(),
            cfg,
            bindings: None,
            steps: AtomicU64::new(0),
            checks: AtomicU64::new(0),
        };
        if !iss.vars.iter().any(|v| m.owns_sort(&v.sort)) {
            let sem = p.semantics(&p.base_env)?;
            p.bindings = Some(Arc::new(p.bindings_for(&sem)?));
        }
        Ok(p)
    }

    fn semantics(&self, env: &ImplEnv) -> Result<Semantics> {
        let mut sem = self.base.clone();
        sem.env.extend(env.iter().map(|(k, v)| (k.clone(), v.clone())));
        Ok(sem)
    }

    fn bindings_for(&self, sem: &Semantics) -> Result<Vec<Binding>> {
        let vars: Vec<_> = self.iss.vars.iter().map(|v| (v.name.clone(), v.sort.clone(), v.range)).collect();
        DomainBuilder::new(self.sys, self.layer, sem, self.cfg.bounds).bindings(&vars)
    }

    /// True when no function reachable from `syms` through bodies is still pending.
    fn ready<'s>(
        &self,
        syms: &BTreeSet<Symbol>,
        body: &dyn Fn(&Symbol) -> Option<&'s BTreeSet<Symbol>>,
        pending: &BTreeSet<Symbol>,
    ) -> bool {
        let mut todo: Vec<&Symbol> = syms.iter().collect();
        let mut seen: BTreeSet<&Symbol> = BTreeSet::new();
        while let Some(f) = todo.pop() {
            if !seen.insert(f) {
                continue;
            }
            if pending.contains(f) {
                return false;
            }
            if let Some(next) = body(f) {
                todo.extend(next.iter());
            }
        }
        true
    }

    /// Evaluates `assertions` on `bindings`, bindings outermost.
    fn check(&self, sem: &Semantics, assertions: &[usize], bindings: &[Binding]) -> Result<Check> {
        self.checks.fetch_add(1, Ordering::Relaxed);
        let mut ev = Evaluator::new(sem);
        let mut fuel_note = None;
        let result = 'outer: {
            for b in bindings {
                let mut skip = false;
                for a in &self.iss.assumptions {
                    ev.refuel();
                    match ev.eval(a, b) {
                        Ok(v) if v.is_true() => {}
                        Ok(_) | Err(Error::Stuck(_)) => {
                            skip = true;
                            break;
                        }
                        Err(e) if e.is_fuel() => {
                            fuel_note.get_or_insert_with(|| format!("assumption `{a}` ran out of fuel"));
                            skip = true;
                            break;
                        }
                        Err(e) => break 'outer Err(e),
                    }
                }
                if skip {
                    continue;
                }
                for &k in assertions {
                    let t = &self.iss.assertions[k];
                    ev.refuel();
                    let detail = match ev.eval(t, b) {
                        Ok(v) if v.is_true() => continue,
                        Ok(v) => format!("`{t}` evaluated to {v}"),
                        Err(Error::Stuck(s)) => format!("`{t}` is stuck at {s}"),
                        Err(Error::Overflow(s)) => format!("`{t}` overflowed in {s}"),
                        Err(e) if e.is_fuel() => {
                            fuel_note.get_or_insert_with(|| format!("`{t}` ran out of fuel"));
                            continue;
                        }
                        Err(e) => break 'outer Err(e),
                    };
                    break 'outer Ok(Check::Fail(Counterexample { binding: b.clone(), assertion: k, detail }));
                }
            }
            Ok(match fuel_note {
                Some(n) => Check::Fuel(n),
                None => Check::Pass,
            })
        };
        self.steps.fetch_add(ev.steps(), Ordering::Relaxed);
        result
    }
}

/// Checks a complete environment against the layer's ISS.
pub fn verify_candidate(c: &Candidate, sys: &LayeredSystem, i: usize, cfg: &SynthConfig) -> Result<Verdict> {
    let p = Problem::new(sys, i, cfg)?;
    let env = c.env(&p.base_env);
    verify_env(&p, &env)
}

fn verify_env(p: &Problem, env: &ImplEnv) -> Result<Verdict> {
    let sem = p.semantics(env)?;
    let bindings = match &p.bindings {
        Some(b) => b.clone(),
        None => Arc::new(p.bindings_for(&sem)?),
    };
    let all: Vec<usize> = (0..p.iss.assertions.len()).collect();
    Ok(match p.check(&sem, &all, &bindings)? {
        Check::Pass => Verdict::Ok,
        Check::Fail(cx) => Verdict::Refuted(cx),
        Check::Fuel(n) => Verdict::Inconclusive(n),
    })
}

/// Shared search state.
struct Search<'a> {
    p: Problem<'a>,
    sketches: &'a [Sketch],
    index: BTreeMap<Symbol, usize>,
    lists: Vec<Vec<Arc<FunDef>>>,
    /// Body symbols of each candidate, parallel to `lists`.
    list_syms: Vec<Vec<BTreeSet<Symbol>>>,
    /// Refuting bindings found so far.
    cex: Mutex<Vec<Binding>>,
    fuel_seen: AtomicBool,
    budget_hit: AtomicBool,
    last: Mutex<Option<Counterexample>>,
}

impl<'a> Search<'a> {
    fn pending_after(&self, level: usize) -> BTreeSet<Symbol> {
        self.sketches[level + 1..].iter().map(|s| s.name.clone()).collect()
    }

    /// Assertions that become checkable exactly when sketch `level` is fixed; level 0 also takes
    /// those that need no sketch at all. `prefix` holds the choices for sketches up to `level`.
    fn newly_checkable(&self, prefix: &[usize]) -> Vec<usize> {
        let level = prefix.len() - 1;
        let now = self.pending_after(level);
        let mut before = now.clone();
        before.insert(self.sketches[level].name.clone());
        let body = |f: &Symbol| -> Option<&BTreeSet<Symbol>> {
            match self.index.get(f) {
                Some(&k) if k < prefix.len() => Some(&self.list_syms[k][prefix[k]]),
                Some(_) => None,
                None => self.p.body_syms.get(f),
            }
        };
        (0..self.p.iss.assertions.len())
            .filter(|&k| {
                let syms = &self.p.assertion_syms[k];
                self.p.ready(syms, &body, &now) && (level == 0 || !self.p.ready(syms, &body, &before))
            })
            .collect()
    }

    /// First passing completion of `prefix`, in canonical order.
    fn dfs(&self, env: &ImplEnv, prefix: &[usize]) -> Result<Option<Vec<usize>>> {
        let level = prefix.len();
        if level == self.sketches.len() {
            return Ok(Some(prefix.to_vec()));
        }
        let try_one = |c: usize| -> Result<Option<Vec<usize>>> {
            if self.budget_hit.load(Ordering::Relaxed) {
                return Ok(None);
            }
            if self.p.checks.load(Ordering::Relaxed) >= self.p.cfg.max_checks {
                self.budget_hit.store(true, Ordering::Relaxed);
                return Ok(None);
            }
            let mut env = env.clone();
            env.insert(self.sketches[level].name.clone(), self.lists[level][c].clone());
            let mut next = prefix.to_vec();
            next.push(c);
            let assertions = self.newly_checkable(&next);
            if !assertions.is_empty() && !self.passes(&env, &assertions)? {
                return Ok(None);
            }
            self.dfs(&env, &next)
        };
        let n = self.lists[level].len();
        if self.p.cfg.jobs > 1 {
            (0..n)
                .into_par_iter()
                .map(try_one)
                .find_map_first(|r| match r {
                    Ok(None) => None,
                    other => Some(other),
                })
                .unwrap_or(Ok(None))
        } else {
            for c in 0..n {
                if let Some(found) = try_one(c)? {
                    return Ok(Some(found));
                }
            }
            Ok(None)
        }
    }

    fn passes(&self, env: &ImplEnv, assertions: &[usize]) -> Result<bool> {
        let sem = self.p.semantics(env)?;
        let bindings = match &self.p.bindings {
            Some(b) => b.clone(),
            None => Arc::new(self.p.bindings_for(&sem)?),
        };
        if self.p.cfg.strategy == Strategy::Cegis {
            let known = self.cex.lock().expect("counterexample set").clone();
            if !known.is_empty() {
                if let Check::Fail(cx) = self.p.check(&sem, assertions, &known)? {
                    *self.last.lock().expect("last refutation") = Some(cx);
                    return Ok(false);
                }
            }
        }
        match self.p.check(&sem, assertions, &bindings)? {
            Check::Pass => Ok(true),
            Check::Fail(cx) => {
                if self.p.cfg.strategy == Strategy::Cegis {
                    let mut set = self.cex.lock().expect("counterexample set");
                    if !set.contains(&cx.binding) {
                        set.push(cx.binding.clone());
                    }
                }
                *self.last.lock().expect("last refutation") = Some(cx);
                Ok(false)
            }
            Check::Fuel(_) => {
                self.fuel_seen.store(true, Ordering::Relaxed);
                Ok(false)
            }
        }
    }
}

/// Searches the layer's search space. `cfg.strategy` selects plain enumeration or CEGIS.
pub fn synthesize_with(sys: &LayeredSystem, i: usize, cfg: &SynthConfig) -> Result<SynthOutcome> {
    let m = sys.module(i)?;
    if i > 0 && cfg.mode == Mode::Modular && sys.modules[i - 1].ias.is_none() {
        return Err(Error::Config(format!("layer `{}` has no implementation-agnostic spec", sys.modules[i - 1].name)));
    }
    let sketches: Vec<Sketch> =
        m.search_space.iter().filter(|s| !m.implementation.contains_key(&s.name)).cloned().collect();
    let missing: Vec<Symbol> = m.missing_functions();
    if let Some(f) = missing.iter().find(|f| !sketches.iter().any(|s| &s.name == *f)) {
        return Err(Error::Config(format!("`{f}` has neither a definition nor a sketch")));
    }
    let lists: Vec<Vec<Arc<FunDef>>> = sketches.iter().map(sketch_candidates).collect::<Result<_>>()?;
    let space = lists.iter().fold(1u128, |n, l| n.saturating_mul(l.len() as u128));
    let p = Problem::new(sys, i, cfg)?;
    let list_syms = lists.iter().map(|l| l.iter().map(|d| d.body.symbols()).collect()).collect();
    let search = Search {
        p,
        index: sketch_index(&sketches),
        sketches: &sketches,
        lists,
        list_syms,
        cex: Mutex::new(Vec::new()),
        fuel_seen: AtomicBool::new(false),
        budget_hit: AtomicBool::new(false),
        last: Mutex::new(None),
    };
    let env = search.p.base_env.clone();
    let found = if cfg.jobs > 1 {
        let pool =
            rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().map_err(|e| Error::Config(e.to_string()))?;
        pool.install(|| search.dfs(&env, &[]))?
    } else {
        search.dfs(&env, &[])?
    };
    let counterexamples = search.cex.lock().expect("counterexample set").clone();
    let stats = SynthStats {
        space,
        checks: search.p.checks.load(Ordering::Relaxed),
        counterexamples: counterexamples.len(),
        steps: search.p.steps.load(Ordering::Relaxed),
    };
    let result = match found {
        Some(choices) => SynthResult::Solved(Candidate {
            definitions: choices
                .iter()
                .enumerate()
                .map(|(k, &c)| (sketches[k].name.clone(), search.lists[k][c].clone()))
                .collect(),
            choices,
        }),
        None if search.fuel_seen.load(Ordering::Relaxed) || search.budget_hit.load(Ordering::Relaxed) => {
            SynthResult::Timeout
        }
        None => SynthResult::Unrealizable,
    };
    let last_refutation = search.last.lock().expect("last refutation").clone();
    Ok(SynthOutcome { result, stats, counterexamples, last_refutation })
}

/// Plain enumeration with full verification of each candidate.
pub fn synthesize_impl(sys: &LayeredSystem, i: usize, cfg: &SynthConfig) -> Result<SynthOutcome> {
    synthesize_with(sys, i, &SynthConfig { strategy: Strategy::Plain, ..cfg.clone() })
}

/// Counterexample-guided variant; returns the same result as [`synthesize_impl`].
pub fn cegis(sys: &LayeredSystem, i: usize, cfg: &SynthConfig) -> Result<SynthOutcome> {
    synthesize_with(sys, i, &SynthConfig { strategy: Strategy::Cegis, ..cfg.clone() })
}

/// The candidate's bodies may only use the layer's implementation vocabulary.
pub fn check_information_hiding(c: &Candidate, sys: &LayeredSystem, i: usize) -> Result<WellFormedReport> {
    let env: ImplEnv = c.definitions.iter().cloned().collect();
    check_impl_vocabulary(&env, sys, i)
}

/// Index of each sketch by function name.
pub fn sketch_index(space: &[Sketch]) -> BTreeMap<Symbol, usize> {
    space.iter().enumerate().map(|(k, s)| (s.name.clone(), k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifest::load_project;

    const COUNTER: &str = r#"
(module Counter :layer 0
  (sort Counter (mkC (n int)))
  (export (zero () Counter) (inc (Counter) Counter) (value (Counter) int))
  (impl (define (zero) (mkC 0)))
  (iss
    (vars (x int :range 0 3))
    (assert (= (value (zero)) 0))
    (assert (= (value (inc (zero))) 1))
    (assert (= (value (inc (inc (zero)))) 2))
    ASSERT)
  (search-space
    (sketch (inc c) (mkC (?? N)) (grammar (N int (n c) 0 (+ (n c) 1) (- (n c) 1))))
    (sketch (value c) (?? V) (grammar (V int 0 (n c) 1))))
  (bounds :int 0 3 :depth 3))
"#;

    fn counter(extra: &str) -> LayeredSystem {
        load_project(&COUNTER.replace("ASSERT", extra)).unwrap()
    }

    fn bodies(c: &Candidate) -> Vec<String> {
        c.definitions.iter().map(|(n, d)| format!("{n}={}", d.body)).collect()
    }

    #[test]
    fn candidates_grow_by_size() {
        let sys = counter("");
        let sizes: Vec<usize> =
            sketch_candidates(&sys.modules[0].search_space[0]).unwrap().iter().map(|d| d.body.size()).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
        assert_eq!(space_size(&sys.modules[0].search_space).unwrap(), 12);
        assert_eq!(enumerate_candidates(&sys.modules[0].search_space).unwrap().count(), 12);
    }

    #[test]
    fn plain_and_cegis_agree_on_the_counter() {
        let sys = counter("");
        let cfg = SynthConfig::default();
        let plain = synthesize_impl(&sys, 0, &cfg).unwrap();
        let guided = cegis(&sys, 0, &cfg).unwrap();
        let SynthResult::Solved(c) = &plain.result else { panic!("{:?}", plain.result) };
        assert_eq!(bodies(c), ["inc=(mkC (+ (n c) 1))", "value=(n c)"]);
        assert_eq!(plain.result, guided.result);
    }

    #[test]
    fn solution_verifies_and_others_are_refuted() {
        let sys = counter("");
        let cfg = SynthConfig::default();
        for c in enumerate_candidates(&sys.modules[0].search_space).unwrap() {
            let ok = bodies(&c) == ["inc=(mkC (+ (n c) 1))", "value=(n c)"];
            match verify_candidate(&c, &sys, 0, &cfg).unwrap() {
                Verdict::Ok => assert!(ok, "{:?}", bodies(&c)),
                Verdict::Refuted(_) => assert!(!ok),
                Verdict::Inconclusive(why) => panic!("{why}"),
            }
        }
    }

    #[test]
    fn contradictory_assertion_is_unrealizable() {
        let sys = counter("(assert (= 0 1))");
        let out = cegis(&sys, 0, &SynthConfig::default()).unwrap();
        assert_eq!(out.result, SynthResult::Unrealizable);
        let cex = out.last_refutation.expect("a refutation");
        assert_eq!(cex.assertion, 3);
        assert!(cex.to_string().starts_with("assertion #4"), "{cex}");
    }

    #[test]
    fn check_budget_gives_timeout() {
        let sys = counter("(assert (= (value (zero)) 5))");
        let cfg = SynthConfig { max_checks: 2, ..SynthConfig::default() };
        assert_eq!(cegis(&sys, 0, &cfg).unwrap().result, SynthResult::Timeout);
    }

    #[test]
    fn parallel_search_finds_the_same_candidate() {
        let sys = counter("");
        let one = cegis(&sys, 0, &SynthConfig::default()).unwrap().result;
        let four = cegis(&sys, 0, &SynthConfig { jobs: 4, ..SynthConfig::default() }).unwrap().result;
        assert_eq!(one, four);
    }

    #[test]
    fn sketch_index_follows_declaration_order() {
        let sys = counter("");
        let idx = sketch_index(&sys.modules[0].search_space);
        assert_eq!(idx[&crate::term::sym("inc")], 0);
        assert_eq!(idx[&crate::term::sym("value")], 1);
    }
}
