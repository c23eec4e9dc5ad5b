//! Bounded value domains for harness and property variables.
//!
//! A data sort's domain is the set of values reachable from its producers: constructors for
//! base sorts, exported operations for module sorts. Producer nesting is bounded by the depth
//! bound and values are deduplicated, so the domain stays small while covering every shape.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::eval::{Binding, Evaluator, Semantics};
use crate::grammar::Product;
use crate::ir::{Bounds, LayeredSystem};
use crate::term::{FuncClass, FuncDecl, Symbol, Term, BOOL, INT};

/// Variable name and sort, with an optional narrower integer range.
pub type VarSpec = (Symbol, Symbol, Option<(i64, i64)>);

/// Domains larger than this are refused.
pub const MAX_DOMAIN: usize = 100_000;

pub struct DomainBuilder<'a> {
    sys: &'a LayeredSystem,
    layer: usize,
    sem: &'a Semantics,
    bounds: Bounds,
    cache: BTreeMap<Symbol, Vec<Term>>,
    visiting: Vec<Symbol>,
}

impl<'a> DomainBuilder<'a> {
    pub fn new(sys: &'a LayeredSystem, layer: usize, sem: &'a Semantics, bounds: Bounds) -> Self {
        DomainBuilder { sys, layer, sem, bounds, cache: BTreeMap::new(), visiting: Vec::new() }
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    fn producers(&self, sort: &str) -> Result<Vec<FuncDecl>> {
        if let Some(s) = self.sys.base_sorts.iter().find(|s| &*s.name == sort) {
            return Ok(s.decls().into_iter().filter(|d| d.class == FuncClass::Constructor).collect());
        }
        let owner = self.sys.modules[..=self.layer]
            .iter()
            .find(|m| m.owns_sort(sort))
            .ok_or_else(|| Error::Config(format!("sort `{sort}` is not visible at layer {}", self.layer)))?;
        Ok(owner.exports.iter().filter(|d| &*d.result == sort).cloned().collect())
    }

    /// Values of `sort`, in a fixed order.
    pub fn domain(&mut self, sort: &Symbol) -> Result<Vec<Term>> {
        if let Some(hit) = self.cache.get(sort) {
            return Ok(hit.clone());
        }
        let values = match &**sort {
            INT => (self.bounds.int_lo..=self.bounds.int_hi).map(Term::int).collect(),
            BOOL => vec![Term::bool(false), Term::bool(true)],
            _ => {
                if self.visiting.contains(sort) {
                    return Err(Error::Config(format!("sort `{sort}` is defined through itself indirectly")));
                }
                self.visiting.push(sort.clone());
                let out = self.reachable(sort);
                self.visiting.pop();
                out?
            }
        };
        self.cache.insert(sort.clone(), values.clone());
        Ok(values)
    }

    fn reachable(&mut self, sort: &Symbol) -> Result<Vec<Term>> {
        let producers = self.producers(sort)?;
        let mut others: BTreeMap<Symbol, Vec<Term>> = BTreeMap::new();
        for p in &producers {
            for a in &p.args {
                if a != sort && !others.contains_key(a) {
                    let d = self.domain(a)?;
                    others.insert(a.clone(), d);
                }
            }
        }
        let mut all: Vec<Term> = Vec::new();
        let mut seen: HashSet<Term> = HashSet::new();
        // values first reached in the previous round
        let mut frontier: Vec<Term> = Vec::new();
        let mut ev = Evaluator::new(self.sem);
        for round in 0..self.bounds.depth {
            let mut fresh = Vec::new();
            for p in &producers {
                let own: Vec<usize> = (0..p.args.len()).filter(|&k| &p.args[k] == sort).collect();
                if round == 0 && !own.is_empty() || round > 0 && own.is_empty() {
                    continue;
                }
                let pools: Vec<&[Term]> =
                    p.args.iter().map(|a| if a == sort { &all[..] } else { others[a].as_slice() }).collect();
                for combo in Product::new(pools.iter().map(|p| p.len()).collect()) {
                    // at least one own-sort argument must be new, so each tuple is tried once
                    if round > 0 && !own.iter().any(|&k| combo[k] >= all.len() - frontier.len()) {
                        continue;
                    }
                    let args: Vec<Term> = combo.iter().enumerate().map(|(k, &c)| pools[k][c].clone()).collect();
                    ev.refuel();
                    match ev.apply(&p.name, args) {
                        Ok(v) => {
                            if seen.insert(v.clone()) {
                                fresh.push(v);
                            }
                        }
                        Err(Error::Stuck(_)) | Err(Error::FuelExhausted { .. }) | Err(Error::Overflow(_)) => {}
                        Err(e) => return Err(e),
                    }
                    if seen.len() > MAX_DOMAIN {
                        return Err(Error::Config(format!("domain of `{sort}` exceeds {MAX_DOMAIN} values")));
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            all.extend(fresh.iter().cloned());
            frontier = fresh;
        }
        Ok(all)
    }

    /// All bindings of `vars`, first variable slowest. Integer variables may narrow their range.
    pub fn bindings(&mut self, vars: &[VarSpec]) -> Result<Vec<Binding>> {
        let mut pools = Vec::with_capacity(vars.len());
        for (_, sort, range) in vars {
            pools.push(match range {
                Some((lo, hi)) => (*lo..=*hi).map(Term::int).collect(),
                None => self.domain(sort)?,
            });
        }
        let mut out = Vec::new();
        for combo in Product::new(pools.iter().map(Vec::len).collect()) {
            out.push(
                vars.iter()
                    .zip(&combo)
                    .enumerate()
                    .map(|(k, ((n, _, _), &c))| (n.clone(), pools[k][c].clone()))
                    .collect(),
            );
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::Mode;
    use crate::manifest::load_project;
    use crate::term::sym;

    const SRC: &str = r#"
(base-sorts
  (sort Val :shared (err) (some (unsome int)))
  (sort List (nil) (cons (first int) (rest List))))
(module Bag :layer 0
  (sort Bag (mkBag (items List)))
  (export (emptyBag () Bag) (put (Bag int) Bag))
  (impl
    (define (emptyBag) (mkBag (nil)))
    (define (put b x) (ite (< x 1) (mkBag (cons x (items b))) b))))
"#;

    fn domain_of(sort: &str, b: Bounds) -> Vec<String> {
        let sys = load_project(SRC).unwrap();
        let sem = sys.semantics(0, Mode::Modular).unwrap();
        DomainBuilder::new(&sys, 0, &sem, b).domain(&sym(sort)).unwrap().iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn constructor_domains_grow_by_depth() {
        let lists = domain_of("List", Bounds { int_lo: 0, int_hi: 1, depth: 3 });
        assert_eq!(lists.len(), 1 + 2 + 4);
        assert_eq!(lists[0], "(nil)");
        assert_eq!(
            domain_of("Val", Bounds { int_lo: 0, int_hi: 2, depth: 3 }),
            ["(err)", "(some 0)", "(some 1)", "(some 2)"]
        );
    }

    #[test]
    fn module_domains_hold_only_reachable_values() {
        // `put` ignores elements above 0, so only lists of zeros are reachable
        let bags = domain_of("Bag", Bounds { int_lo: 0, int_hi: 5, depth: 4 });
        assert_eq!(
            bags,
            [
                "(mkBag (nil))",
                "(mkBag (cons 0 (nil)))",
                "(mkBag (cons 0 (cons 0 (nil))))",
                "(mkBag (cons 0 (cons 0 (cons 0 (nil)))))"
            ]
        );
    }

    #[test]
    fn bindings_vary_the_last_variable_fastest() {
        let sys = load_project(SRC).unwrap();
        let sem = sys.semantics(0, Mode::Modular).unwrap();
        let mut d = DomainBuilder::new(&sys, 0, &sem, Bounds { int_lo: 0, int_hi: 1, depth: 2 });
        let vars = [(sym("x"), sym("int"), None), (sym("p"), sym("bool"), None), (sym("y"), sym("int"), Some((7, 8)))];
        let bs = d.bindings(&vars).unwrap();
        assert_eq!(bs.len(), 2 * 2 * 2);
        let first: Vec<String> = ["x", "p", "y"].iter().map(|v| bs[1][&sym(v)].to_string()).collect();
        assert_eq!(first, ["0", "false", "8"]);
    }
}
