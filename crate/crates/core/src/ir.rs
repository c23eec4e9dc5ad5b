//! Modules, layered systems and the vocabulary discipline between layers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::eval::{ImplEnv, Semantics};
use crate::grammar::Grammar;
use crate::report::WellFormedReport;
use crate::rewrite::{check_rule, RewriteRule, RewriteSystem};
use crate::term::{is_builtin, sym, FuncClass, FuncDecl, Signature, SortCtx, Symbol, Term, BOOL};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    /// Projection symbol, when the field is named.
    pub name: Option<Symbol>,
    pub sort: Symbol,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtorDef {
    pub name: Symbol,
    pub fields: Vec<Field>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortDef {
    pub name: Symbol,
    /// Visible from every layer rather than only from layer 0.
    pub shared: bool,
    pub ctors: Vec<CtorDef>,
}

impl SortDef {
    /// Constructor and projection declarations introduced by this sort.
    pub fn decls(&self) -> Vec<FuncDecl> {
        let mut out = Vec::new();
        for c in &self.ctors {
            out.push(FuncDecl {
                name: c.name.clone(),
                args: c.fields.iter().map(|f| f.sort.clone()).collect(),
                result: self.name.clone(),
                class: FuncClass::Constructor,
            });
            for (index, f) in c.fields.iter().enumerate() {
                if let Some(p) = &f.name {
                    out.push(FuncDecl {
                        name: p.clone(),
                        args: vec![self.name.clone()],
                        result: f.sort.clone(),
                        class: FuncClass::Projection { ctor: c.name.clone(), index },
                    });
                }
            }
        }
        out
    }
}

/// A harness variable. Integer variables may carry an inclusive range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessVar {
    pub name: Symbol,
    pub sort: Symbol,
    pub range: Option<(i64, i64)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ImplSpec {
    pub assumptions: Vec<Term>,
    pub assertions: Vec<Term>,
    pub vars: Vec<HarnessVar>,
}

/// `guard -> lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GuardedEquation {
    pub guard: Term,
    pub lhs: Term,
    pub rhs: Term,
}

impl GuardedEquation {
    pub fn new(guard: Term, lhs: Term, rhs: Term) -> Self {
        GuardedEquation { guard, lhs, rhs }
    }

    pub fn unguarded(lhs: Term, rhs: Term) -> Self {
        Self::new(Term::bool(true), lhs, rhs)
    }

    pub fn to_rule(&self) -> RewriteRule {
        RewriteRule::guarded(self.lhs.clone(), self.rhs.clone(), self.guard.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.guard.as_bool() == Some(false) || self.lhs == self.rhs
    }
}

impl fmt::Display for GuardedEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.guard.is_true() {
            write!(f, "{} = {}", self.lhs, self.rhs)
        } else {
            write!(f, "{} -> {} = {}", self.guard, self.lhs, self.rhs)
        }
    }
}

pub fn rules_of(eqs: &[GuardedEquation]) -> RewriteSystem {
    RewriteSystem::new(eqs.iter().map(GuardedEquation::to_rule).collect())
}

/// Template for one function: `body` holds `Hole(nonterminal)` nodes filled from `grammar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sketch {
    pub name: Symbol,
    pub params: Vec<Symbol>,
    pub body: Term,
    pub grammar: Grammar,
    /// Maximum nested expansions per hole.
    pub depth: usize,
}

pub const DEFAULT_SKETCH_DEPTH: usize = 3;

/// Candidate properties `guard -> lhs = rhs` with `rhs` drawn from a grammar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyGrammar {
    pub name: String,
    pub vars: Vec<(Symbol, Symbol)>,
    /// Output variables defined by terms; `lhs` may mention them.
    pub relations: Vec<(Symbol, Term)>,
    pub lhs: Term,
    /// `None` selects the default guard universe.
    pub guards: Option<Vec<Term>>,
    pub rhs: Symbol,
    pub depth: usize,
    pub grammar: Grammar,
}

impl PropertyGrammar {
    /// `lhs` with relation outputs replaced by their defining terms.
    pub fn expanded_lhs(&self) -> Term {
        let mut t = self.lhs.clone();
        for (v, def) in self.relations.iter().rev() {
            let mut m = BTreeMap::new();
            m.insert(v.clone(), def.clone());
            t = t.subst(&m);
        }
        t
    }

    pub fn var_sorts(&self) -> SortCtx {
        self.vars.iter().cloned().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub int_lo: i64,
    pub int_hi: i64,
    /// Maximum depth of generated data values.
    pub depth: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { int_lo: 0, int_hi: 10, depth: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDef {
    pub name: Symbol,
    pub layer: usize,
    /// Representation sorts owned by this module.
    pub sorts: Vec<SortDef>,
    pub exports: Vec<FuncDecl>,
    pub private: Vec<FuncDecl>,
    /// Private function deciding equality on the module's representation sort.
    pub equality: Option<Symbol>,
    pub implementation: ImplEnv,
    pub iss: Option<ImplSpec>,
    pub ias: Option<Vec<GuardedEquation>>,
    pub search_space: Vec<Sketch>,
    pub grammars: Vec<PropertyGrammar>,
    pub bounds: Option<Bounds>,
}

impl ModuleDef {
    pub fn new(name: &str, layer: usize) -> Self {
        ModuleDef {
            name: sym(name),
            layer,
            sorts: Vec::new(),
            exports: Vec::new(),
            private: Vec::new(),
            equality: None,
            implementation: ImplEnv::new(),
            iss: None,
            ias: None,
            search_space: Vec::new(),
            grammars: Vec::new(),
            bounds: None,
        }
    }

    /// Constructors and projections of the module's own sorts.
    pub fn representation(&self) -> Vec<FuncDecl> {
        self.sorts.iter().flat_map(SortDef::decls).collect()
    }

    pub fn is_representation(&self, f: &str) -> bool {
        self.representation().iter().any(|d| &*d.name == f)
    }

    /// Exported or private functions that need a body but have none.
    pub fn missing_functions(&self) -> Vec<Symbol> {
        let rep: BTreeSet<Symbol> = self.representation().into_iter().map(|d| d.name).collect();
        self.exports
            .iter()
            .chain(&self.private)
            .filter(|d| !rep.contains(&d.name) && !self.implementation.contains_key(&d.name))
            .map(|d| d.name.clone())
            .collect()
    }

    pub fn has_complete_impl(&self) -> bool {
        self.missing_functions().is_empty()
    }

    pub fn owns_sort(&self, s: &str) -> bool {
        self.sorts.iter().any(|d| &*d.name == s)
    }

    /// Sort compared by the module's equality function.
    pub fn equality_sort(&self) -> Option<Symbol> {
        let f = self.equality.as_ref()?;
        self.private.iter().chain(&self.exports).find(|d| &d.name == f).and_then(|d| d.args.first().cloned())
    }

    /// Definitions in declaration order: exports, then private functions, then anything else.
    pub fn impl_order(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = Vec::new();
        for d in self.exports.iter().chain(&self.private) {
            if self.implementation.contains_key(&d.name) {
                out.push(d.name.clone());
            }
        }
        for k in self.implementation.keys() {
            if !out.contains(k) {
                out.push(k.clone());
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum VocabClass {
    Ias,
    Iss,
    Impl,
}

/// How lower layers are executed when running layer `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Lower exports are discharged by the lower layer's rewrite rules.
    Modular,
    /// Every lower implementation runs as code; only base rules remain.
    Monolithic,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LayeredSystem {
    pub base_sorts: Vec<SortDef>,
    pub base_functions: Vec<FuncDecl>,
    pub base_rules: RewriteSystem,
    /// Bodies for base functions, run only when lower layers are inlined.
    pub base_impl: ImplEnv,
    pub modules: Vec<ModuleDef>,
}

impl LayeredSystem {
    pub fn layers(&self) -> usize {
        self.modules.len()
    }

    pub fn module(&self, i: usize) -> Result<&ModuleDef> {
        self.modules.get(i).ok_or_else(|| Error::Index(i.to_string()))
    }

    pub fn module_mut(&mut self, i: usize) -> Result<&mut ModuleDef> {
        self.modules.get_mut(i).ok_or_else(|| Error::Index(i.to_string()))
    }

    pub fn layer_of(&self, name: &str) -> Result<usize> {
        self.modules.iter().position(|m| &*m.name == name).ok_or_else(|| Error::Index(name.to_string()))
    }

    fn base_decls(&self, shared_only: bool) -> Vec<FuncDecl> {
        let mut out: Vec<FuncDecl> =
            self.base_sorts.iter().filter(|s| s.shared || !shared_only).flat_map(SortDef::decls).collect();
        if !shared_only {
            out.extend(self.base_functions.iter().cloned());
        }
        out
    }

    /// Constructors of unshared base sorts that appear in module `i`'s export signatures.
    fn interface_constructors(&self, i: usize) -> Vec<FuncDecl> {
        let m = &self.modules[i];
        let mentioned = |name: &Symbol| m.exports.iter().any(|d| &d.result == name || d.args.contains(name));
        self.base_sorts
            .iter()
            .filter(|s| !s.shared && mentioned(&s.name))
            .flat_map(SortDef::decls)
            .filter(|d| d.class == FuncClass::Constructor)
            .collect()
    }

    fn all_sorts(&self) -> Vec<Symbol> {
        self.base_sorts.iter().chain(self.modules.iter().flat_map(|m| &m.sorts)).map(|s| s.name.clone()).collect()
    }

    /// Every declaration with its own class. Fails on duplicate names.
    pub fn full_signature(&self) -> Result<Signature> {
        let mut sig = Signature::new();
        for s in self.all_sorts() {
            sig.add_sort(&s)?;
        }
        for d in self.base_decls(false) {
            sig.add_func(d)?;
        }
        for m in &self.modules {
            let rep = m.representation();
            for d in &rep {
                sig.add_func(d.clone())?;
            }
            for d in m.exports.iter().chain(&m.private) {
                if rep.iter().any(|r| r.name == d.name) {
                    continue;
                }
                sig.add_func(FuncDecl { class: FuncClass::Defined, ..d.clone() })?;
            }
        }
        Ok(sig)
    }

    /// Symbols implemented below layer `i` that layer `i` may call.
    fn lower_decls(&self, i: usize) -> Result<Vec<FuncDecl>> {
        if i == 0 {
            return Ok(self.base_decls(false));
        }
        let below = self.module(i - 1)?;
        let mut out = self.base_decls(true);
        out.extend(self.interface_constructors(i - 1));
        for d in &below.exports {
            let class = match d.class {
                FuncClass::Constructor => FuncClass::Constructor,
                _ => FuncClass::Uninterpreted,
            };
            out.push(FuncDecl { class, ..d.clone() });
        }
        Ok(out)
    }

    /// The symbols a given class of artifact at layer `i` may mention. Builtins are implicit.
    pub fn vocabulary_of(&self, i: usize, class: VocabClass) -> Result<Signature> {
        let full = self.full_signature()?;
        let m = self.module(i)?;
        let mut sig = Signature { sorts: full.sorts.clone(), funcs: BTreeMap::new() };
        let mut add = |d: FuncDecl| {
            sig.funcs.entry(d.name.clone()).or_insert(d);
        };
        let exports = m.exports.iter().map(|d| full.func(&d.name).cloned().expect("declared"));
        match class {
            VocabClass::Ias => {
                self.base_decls(true).into_iter().for_each(&mut add);
                self.interface_constructors(i).into_iter().for_each(&mut add);
                exports.for_each(&mut add);
            }
            VocabClass::Iss | VocabClass::Impl => {
                self.lower_decls(i)?.into_iter().for_each(&mut add);
                self.interface_constructors(i).into_iter().for_each(&mut add);
                exports.for_each(&mut add);
                m.representation().into_iter().for_each(&mut add);
                if class == VocabClass::Impl {
                    m.private.iter().map(|d| full.func(&d.name).cloned().expect("declared")).for_each(&mut add);
                }
            }
        }
        Ok(sig)
    }

    /// Rewrite semantics of layer `i - 1`, or the base rules at layer 0.
    pub fn lower_rules(&self, i: usize) -> Result<RewriteSystem> {
        if i == 0 {
            return Ok(self.base_rules.clone());
        }
        match &self.module(i - 1)?.ias {
            Some(eqs) => Ok(rules_of(eqs)),
            None => {
                Err(Error::Config(format!("layer `{}` has no implementation-agnostic spec", self.modules[i - 1].name)))
            }
        }
    }

    /// Execution context for layer `i` running `env`.
    pub fn semantics_with(&self, i: usize, env: ImplEnv, mode: Mode) -> Result<Semantics> {
        let m = self.module(i)?;
        let mut equalities = BTreeMap::new();
        let sem = match mode {
            Mode::Modular => {
                let sig = self.vocabulary_of(i, VocabClass::Impl)?;
                if let (Some(s), Some(f)) = (m.equality_sort(), &m.equality) {
                    equalities.insert(s, f.clone());
                }
                Semantics::new(sig, env, self.lower_rules(i)?)
            }
            Mode::Monolithic => {
                let mut all = self.base_impl.clone();
                for lower in &self.modules[..i] {
                    all.extend(lower.implementation.iter().map(|(k, v)| (k.clone(), v.clone())));
                    if let (Some(s), Some(f)) = (lower.equality_sort(), &lower.equality) {
                        equalities.insert(s, f.clone());
                    }
                }
                if let (Some(s), Some(f)) = (m.equality_sort(), &m.equality) {
                    equalities.insert(s, f.clone());
                }
                all.extend(env);
                Semantics::new(self.full_signature()?, all, self.base_rules.clone())
            }
        };
        Ok(Semantics { equalities, ..sem })
    }

    pub fn semantics(&self, i: usize, mode: Mode) -> Result<Semantics> {
        self.semantics_with(i, self.module(i)?.implementation.clone(), mode)
    }

    /// Structural invariants checked on load.
    pub fn validate(&self) -> Result<()> {
        for (k, m) in self.modules.iter().enumerate() {
            if m.layer != k {
                return Err(Error::Validation(format!(
                    "module `{}` has layer {} but is at position {k}",
                    m.name, m.layer
                )));
            }
        }
        let sig = self.full_signature()?;
        sig.validate()?;
        let mut exported = BTreeSet::new();
        for m in &self.modules {
            for d in m.exports.iter().chain(&m.private) {
                if m.is_representation(&d.name) {
                    let own = sig.func(&d.name).expect("declared");
                    if own.args != d.args || own.result != d.result {
                        return Err(Error::Validation(format!(
                            "export `{}` disagrees with its sort declaration",
                            d.name
                        )));
                    }
                }
                if !exported.insert(d.name.clone()) {
                    return Err(Error::Validation(format!("duplicate symbol `{}`", d.name)));
                }
            }
            if let Some(f) = &m.equality {
                let d = m.private.iter().chain(&m.exports).find(|d| &d.name == f).ok_or_else(|| {
                    Error::Validation(format!("equality function `{f}` of `{}` is not declared", m.name))
                })?;
                if d.args.len() != 2 || d.args[0] != d.args[1] || &*d.result != BOOL {
                    return Err(Error::Validation(format!("equality function `{f}` must have type (S S) bool")));
                }
            }
        }
        self.validate_terms(&sig)
    }

    fn validate_terms(&self, sig: &Signature) -> Result<()> {
        let none = BTreeMap::new();
        let boolean = sym(BOOL);
        for r in self.base_rules.rules() {
            check_equation_sorts(sig, &r.lhs, &r.rhs, r.guard.as_ref(), &SortCtx::new())
                .map_err(|e| Error::Validation(format!("base rule `{r}`: {e}")))?;
        }
        for (name, def) in &self.base_impl {
            let decl = self.base_functions.iter().find(|d| &d.name == name).ok_or_else(|| {
                Error::Validation(format!("base-impl defines `{name}`, which is not a base function"))
            })?;
            let mut ctx: SortCtx = def.params.iter().cloned().zip(decl.args.iter().cloned()).collect();
            if def.params.len() != decl.args.len() {
                return Err(Error::Validation(format!("base-impl `{name}` has the wrong number of parameters")));
            }
            sig.sort_of(&def.body, &mut ctx, &none, Some(&decl.result))
                .map_err(|e| Error::Validation(format!("base-impl `{name}`: {e}")))?;
        }
        for m in &self.modules {
            let ctx_err = |what: &str, e: Error| Error::Validation(format!("module `{}`, {what}: {e}", m.name));
            for (name, def) in &m.implementation {
                let decl =
                    sig.func(name).ok_or_else(|| ctx_err("impl", Error::Sort(format!("undeclared `{name}`"))))?;
                if decl.args.len() != def.params.len() {
                    return Err(ctx_err("impl", Error::Sort(format!("`{name}` has the wrong number of parameters"))));
                }
                let mut ctx: SortCtx = def.params.iter().cloned().zip(decl.args.iter().cloned()).collect();
                sig.sort_of(&def.body, &mut ctx, &none, Some(&decl.result))
                    .map_err(|e| ctx_err(&format!("body of `{name}`"), e))?;
            }
            if let Some(iss) = &m.iss {
                let mut ctx: SortCtx = iss.vars.iter().map(|v| (v.name.clone(), v.sort.clone())).collect();
                for t in iss.assumptions.iter().chain(&iss.assertions) {
                    sig.sort_of(t, &mut ctx, &none, Some(&boolean)).map_err(|e| ctx_err("iss", e))?;
                }
            }
            for eq in m.ias.iter().flatten() {
                check_equation_sorts(sig, &eq.lhs, &eq.rhs, Some(&eq.guard), &SortCtx::new())
                    .map_err(|e| ctx_err(&format!("ias `{eq}`"), e))?;
            }
            for sk in &m.search_space {
                let decl = sig
                    .func(&sk.name)
                    .ok_or_else(|| ctx_err("search-space", Error::Sort(format!("undeclared `{}`", sk.name))))?;
                if decl.args.len() != sk.params.len() {
                    return Err(ctx_err("search-space", Error::Sort(format!("`{}` has the wrong arity", sk.name))));
                }
                let ctx: SortCtx = sk.params.iter().cloned().zip(decl.args.iter().cloned()).collect();
                let holes = sk.grammar.hole_sorts();
                sig.sort_of(&sk.body, &mut ctx.clone(), &holes, Some(&decl.result))
                    .map_err(|e| ctx_err(&format!("sketch `{}`", sk.name), e))?;
                check_grammar(sig, &sk.grammar, &ctx).map_err(|e| ctx_err(&format!("sketch `{}`", sk.name), e))?;
            }
            for g in &m.grammars {
                let mut ctx = g.var_sorts();
                for (v, def) in &g.relations {
                    let s = sig.sort_of(def, &mut ctx, &none, None).map_err(|e| ctx_err(&g.name, e))?;
                    ctx.insert(v.clone(), s);
                }
                let lhs_sort = sig.sort_of(&g.lhs, &mut ctx, &none, None).map_err(|e| ctx_err(&g.name, e))?;
                let rhs_sort = g
                    .grammar
                    .get(&g.rhs)
                    .map(|n| n.sort.clone())
                    .ok_or_else(|| ctx_err(&g.name, Error::Sort(format!("unknown nonterminal `{}`", g.rhs))))?;
                if lhs_sort != rhs_sort {
                    return Err(ctx_err(&g.name, Error::Sort(format!("lhs has sort `{lhs_sort}`, rhs `{rhs_sort}`"))));
                }
                for t in g.guards.iter().flatten() {
                    sig.sort_of(t, &mut ctx, &none, Some(&boolean)).map_err(|e| ctx_err(&g.name, e))?;
                }
                check_grammar(sig, &g.grammar, &ctx).map_err(|e| ctx_err(&g.name, e))?;
            }
        }
        Ok(())
    }
}

fn check_equation_sorts(sig: &Signature, lhs: &Term, rhs: &Term, guard: Option<&Term>, ctx: &SortCtx) -> Result<()> {
    let mut ctx = ctx.clone();
    let none = BTreeMap::new();
    let s = sig.sort_of(lhs, &mut ctx, &none, None)?;
    sig.sort_of(rhs, &mut ctx, &none, Some(&s))?;
    if let Some(g) = guard {
        sig.sort_of(g, &mut ctx, &none, Some(&sym(BOOL)))?;
    }
    Ok(())
}

fn check_grammar(sig: &Signature, g: &Grammar, ctx: &SortCtx) -> Result<()> {
    let holes = g.hole_sorts();
    for nt in &g.nonterminals {
        for p in &nt.productions {
            sig.sort_of(p, &mut ctx.clone(), &holes, Some(&nt.sort))?;
        }
    }
    Ok(())
}

fn vocabulary_violations(report: &mut WellFormedReport, t: &Term, vocab: &Signature, subject: &str) {
    for f in t.symbols() {
        if !is_builtin(&f) && vocab.func(&f).is_none() {
            report.violate(subject, format!("symbol `{f}` is outside the permitted vocabulary"), Some(&f));
        }
    }
}

/// Every ISS symbol must lie in the layer's `iss` vocabulary.
pub fn check_iss_wellformed(spec: &ImplSpec, sys: &LayeredSystem, i: usize) -> Result<WellFormedReport> {
    let vocab = sys.vocabulary_of(i, VocabClass::Iss)?;
    let mut report = WellFormedReport::new();
    for (k, t) in spec.assumptions.iter().enumerate() {
        vocabulary_violations(&mut report, t, &vocab, &format!("assume #{} {t}", k + 1));
    }
    for (k, t) in spec.assertions.iter().enumerate() {
        vocabulary_violations(&mut report, t, &vocab, &format!("assert #{} {t}", k + 1));
    }
    Ok(report)
}

/// Every IAS symbol must be exported by the layer, and each oriented equation must pass the rule discipline.
pub fn check_ias_wellformed(eqs: &[GuardedEquation], sys: &LayeredSystem, i: usize) -> Result<WellFormedReport> {
    let vocab = sys.vocabulary_of(i, VocabClass::Ias)?;
    let mut report = WellFormedReport::new();
    for eq in eqs {
        let subject = eq.to_string();
        for t in [&eq.guard, &eq.lhs, &eq.rhs] {
            vocabulary_violations(&mut report, t, &vocab, &subject);
        }
        if let Err(msg) = check_rule(&eq.to_rule()) {
            report.violate(&subject, msg, eq.lhs.head().map(|h| &**h));
        }
        if eq.is_trivial() {
            report.note(&subject, "trivial property");
        }
    }
    Ok(report)
}

/// Bodies in `env` may only call symbols from the layer's `impl` vocabulary.
pub fn check_impl_vocabulary(env: &ImplEnv, sys: &LayeredSystem, i: usize) -> Result<WellFormedReport> {
    let vocab = sys.vocabulary_of(i, VocabClass::Impl)?;
    let mut report = WellFormedReport::new();
    for (name, def) in env {
        vocabulary_violations(&mut report, &def.body, &vocab, &format!("{} :: {name}", sys.modules[i].name));
    }
    Ok(report)
}

pub fn check_modularity(sys: &LayeredSystem) -> Result<WellFormedReport> {
    let mut report = WellFormedReport::new();
    for (i, m) in sys.modules.iter().enumerate() {
        report.merge(check_impl_vocabulary(&m.implementation, sys, i)?);
    }
    Ok(report)
}

/// Shared handle to a function body, as stored in an [`ImplEnv`].
pub fn fun(params: &[&str], body: Term) -> Arc<crate::eval::FunDef> {
    Arc::new(crate::eval::FunDef { params: params.iter().map(|p| sym(p)).collect(), body })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load_fixture;
    use crate::manifest::load_project;

    fn names(sig: &Signature) -> Vec<&str> {
        sig.funcs.keys().map(|k| &**k).collect()
    }

    #[test]
    fn vocabularies_respect_layer_boundaries() {
        let sys = load_fixture("ticketvendor").unwrap();
        let q = sys.layer_of("Queue").unwrap();
        let iss = sys.vocabulary_of(q, VocabClass::Iss).unwrap();
        let imp = sys.vocabulary_of(q, VocabClass::Impl).unwrap();
        let ias = sys.vocabulary_of(q, VocabClass::Ias).unwrap();
        assert!(names(&iss).contains(&"push") && names(&iss).contains(&"st_out"));
        assert!(!names(&iss).contains(&"rev") && names(&imp).contains(&"rev"));
        for hidden in ["cons", "head", "mkStack", "l"] {
            assert!(!names(&imp).contains(&hidden), "{hidden}");
        }
        for hidden in ["st_in", "mkQueue", "rev", "push"] {
            assert!(!names(&ias).contains(&hidden), "{hidden}");
        }
        assert_eq!(names(&ias).len(), 6);
    }

    #[test]
    fn base_sorts_in_an_interface_expose_their_constructors() {
        let sys = load_fixture("list").unwrap();
        let ias = sys.vocabulary_of(0, VocabClass::Ias).unwrap();
        assert!(names(&ias).contains(&"cons") && names(&ias).contains(&"nil"));
        assert!(!names(&ias).contains(&"first"));
    }

    #[test]
    fn calling_past_the_layer_below_is_a_modularity_violation() {
        let mut sys = load_fixture("ticketvendor").unwrap();
        assert!(check_modularity(&sys).unwrap().is_ok());
        let q = sys.layer_of("Queue").unwrap();
        let leak =
            fun(&["q"], Term::app("lsize", vec![Term::app("l", vec![Term::app("st_in", vec![Term::var("q")])])]));
        sys.modules[q].implementation.insert(sym("qsize"), leak);
        let report = check_modularity(&sys).unwrap();
        assert!(!report.is_ok());
        let mut offending = report.offending_symbols();
        offending.sort();
        assert_eq!(offending, ["l", "lsize"]);
    }

    #[test]
    fn modular_rules_come_from_the_layer_below() {
        let sys = load_fixture("ticketvendor").unwrap();
        assert_eq!(sys.lower_rules(0).unwrap().rules().len(), 8);
        assert!(matches!(sys.lower_rules(1), Err(Error::Config(_))));
    }

    #[test]
    fn monolithic_semantics_inline_lower_code() {
        let sys = load_fixture("ticketvendor").unwrap();
        let sem = sys.semantics(1, Mode::Monolithic).unwrap();
        for f in ["snoc", "emptyStack", "emptyQueue"] {
            assert!(sem.env.contains_key(f), "{f}");
        }
        assert!(sys.semantics(1, Mode::Modular).is_err());
    }

    #[test]
    fn load_rejects_malformed_systems() {
        let layer = "(module A :layer 1 (export (a () int)))";
        assert!(matches!(load_project(layer), Err(Error::Validation(_))));
        let dup = "(module A :layer 0 (export (a () int))) (module B :layer 1 (export (a () int)))";
        assert!(matches!(load_project(dup), Err(Error::Validation(m)) if m.contains("duplicate")));
        let eq = "(module A :layer 0 (sort T (t)) (export (mk () T)) (private (same (T int) bool)) (equality same))";
        assert!(matches!(load_project(eq), Err(Error::Validation(m)) if m.contains("(S S) bool")));
        let body = "(module A :layer 0 (export (a () int)) (impl (define (a) true)))";
        assert!(load_project(body).is_err());
    }

    #[test]
    fn trivial_and_guarded_equations() {
        let x = Term::var("x");
        assert!(GuardedEquation::unguarded(x.clone(), x.clone()).is_trivial());
        let g = GuardedEquation::new(Term::bool(true), Term::app("f", vec![x.clone()]), x);
        assert!(!g.is_trivial());
        assert_eq!(g.to_rule().guard, None);
    }
}
