//! Call-by-value evaluation of terms under concrete implementations.
//!
//! Symbols defined in the [`ImplEnv`] run their bodies. Every other non-constructor
//! symbol is discharged by normalizing with the lower layer's rewrite rules, so a
//! module can be executed while its dependencies are known only through their specs.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rewrite::{apply_builtin, Builtin, RewriteSystem, Rewriter};
use crate::term::{is_builtin, FuncClass, Node, Signature, Symbol, Term};

pub const DEFAULT_FUEL: u64 = 10_000;
pub const DEFAULT_MAX_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunDef {
    pub params: Vec<Symbol>,
    pub body: Term,
}

/// Function bodies by name, in name order.
pub type ImplEnv = BTreeMap<Symbol, Arc<FunDef>>;

pub type Binding = BTreeMap<Symbol, Term>;

/// Everything needed to run code at one layer.
#[derive(Clone, Debug, Default)]
pub struct Semantics {
    /// Every symbol reachable from this layer, including lower exports.
    pub sig: Arc<Signature>,
    pub env: ImplEnv,
    pub lower: Arc<RewriteSystem>,
    /// Sort name to the private function deciding equality on it.
    pub equalities: BTreeMap<Symbol, Symbol>,
    pub fuel: u64,
    pub max_depth: usize,
}

impl Semantics {
    pub fn new(sig: Signature, env: ImplEnv, lower: RewriteSystem) -> Self {
        Semantics {
            sig: Arc::new(sig),
            env,
            lower: Arc::new(lower),
            equalities: BTreeMap::new(),
            fuel: DEFAULT_FUEL,
            max_depth: DEFAULT_MAX_DEPTH,
        }
    }

    pub fn with_env(&self, env: ImplEnv) -> Self {
        Semantics { env, ..self.clone() }
    }

    /// Evaluates a closed-by-binding term with a fresh budget.
    pub fn eval(&self, t: &Term, binding: &Binding) -> Result<Term> {
        Evaluator::new(self).eval(t, binding)
    }

    /// True for symbols whose applications are already values.
    pub fn is_value_head(&self, f: &str) -> bool {
        if is_builtin(f) || self.env.contains_key(f) || self.lower.defines(f) {
            return false;
        }
        !matches!(self.sig.func(f).map(|d| &d.class), Some(FuncClass::Projection { .. }))
    }

    pub fn is_value(&self, t: &Term) -> bool {
        match t.node() {
            Node::Int(_) | Node::Bool(_) => true,
            Node::App(f, args) => self.is_value_head(f) && args.iter().all(|a| self.is_value(a)),
            _ => false,
        }
    }

    /// Innermost subterm that blocks `t` from being a value.
    pub fn blocking_subterm(&self, t: &Term) -> Term {
        if let Node::App(_, args) = t.node() {
            if let Some(a) = args.iter().find(|a| !self.is_value(a)) {
                return self.blocking_subterm(a);
            }
        }
        t.clone()
    }
}

/// One evaluation run. Steps accumulate across calls for cost accounting.
pub struct Evaluator<'a> {
    sem: &'a Semantics,
    rw: Rewriter<'a>,
    depth: usize,
}

impl<'a> Evaluator<'a> {
    pub fn new(sem: &'a Semantics) -> Self {
        Evaluator { sem, rw: Rewriter::new(&sem.lower, sem.fuel), depth: 0 }
    }

    pub fn steps(&self) -> u64 {
        self.rw.steps
    }

    /// Restores the full budget, keeping the step count.
    pub fn refuel(&mut self) {
        self.rw.fuel = self.rw.steps + self.sem.fuel;
    }

    pub fn eval(&mut self, t: &Term, binding: &Binding) -> Result<Term> {
        match t.node() {
            Node::Int(_) | Node::Bool(_) => Ok(t.clone()),
            Node::Var(v) => binding.get(v).cloned().ok_or_else(|| Error::Unbound(v.to_string())),
            Node::Hole(h) => Err(Error::Validation(format!("unfilled hole `{h}`"))),
            Node::Ite(c, a, b) => match self.eval(c, binding)?.as_bool() {
                Some(true) => self.eval(a, binding),
                Some(false) => self.eval(b, binding),
                None => Err(Error::Stuck(t.clone())),
            },
            Node::App(f, args) => {
                self.rw.tick()?;
                match &**f {
                    "and" | "or" | "=>" => self.eval_connective(t, f, args, binding),
                    "=" => {
                        let l = self.eval(&args[0], binding)?;
                        let r = self.eval(&args[1], binding)?;
                        self.equal(&l, &r).map(Term::bool)
                    }
                    _ => {
                        let mut vals = Vec::with_capacity(args.len());
                        for a in args {
                            vals.push(self.eval(a, binding)?);
                        }
                        self.apply(f, vals)
                    }
                }
            }
        }
    }

    fn eval_connective(&mut self, t: &Term, f: &str, args: &[Term], binding: &Binding) -> Result<Term> {
        let mut last = true;
        for (i, a) in args.iter().enumerate() {
            let v = self.eval(a, binding)?.as_bool().ok_or_else(|| Error::Stuck(t.clone()))?;
            match (f, i, v) {
                ("and", _, false) => return Ok(Term::bool(false)),
                ("or", _, true) => return Ok(Term::bool(true)),
                ("=>", 0, false) => return Ok(Term::bool(true)),
                _ => last = v,
            }
        }
        Ok(Term::bool(match f {
            "and" => true,
            "or" => false,
            _ => last,
        }))
    }

    /// Equality of two values, through the sort's equality function when it has one.
    pub fn equal(&mut self, l: &Term, r: &Term) -> Result<bool> {
        if let Some(sort) = self.sem.sig.value_sort(l) {
            if let Some(eq) = self.sem.equalities.get(&sort) {
                if self.sem.env.contains_key(eq) {
                    let v = self.apply(eq, vec![l.clone(), r.clone()])?;
                    return v.as_bool().ok_or_else(|| Error::Stuck(Term::eq(l.clone(), r.clone())));
                }
            }
        }
        Ok(l == r)
    }

    /// Applies `f` to evaluated arguments.
    pub fn apply(&mut self, f: &Symbol, args: Vec<Term>) -> Result<Term> {
        if is_builtin(f) {
            return match apply_builtin(f, &args, |_| true)? {
                Builtin::Value(v) => Ok(v),
                Builtin::Blocked => Err(Error::Stuck(Term::app_sym(f.clone(), args))),
            };
        }
        if let Some(def) = self.sem.env.get(f) {
            if def.params.len() != args.len() {
                return Err(Error::Sort(format!("`{f}` expects {} arguments", def.params.len())));
            }
            if self.depth >= self.sem.max_depth {
                return Err(Error::FuelExhausted { steps: self.rw.steps });
            }
            let binding: Binding = def.params.iter().cloned().zip(args).collect();
            self.depth += 1;
            let out = self.eval(&def.body, &binding);
            self.depth -= 1;
            return out;
        }
        if let Some(decl) = self.sem.sig.func(f) {
            match &decl.class {
                FuncClass::Constructor => return Ok(Term::app_sym(f.clone(), args)),
                FuncClass::Projection { ctor, index } => {
                    return match args[0].node() {
                        Node::App(g, fields) if g == ctor => Ok(fields[*index].clone()),
                        _ => Err(Error::Stuck(Term::app_sym(f.clone(), args))),
                    };
                }
                _ => {}
            }
        }
        let out = self.rw.reduce_app(f, args)?;
        if self.sem.is_value(&out) {
            Ok(out)
        } else {
            Err(Error::Stuck(self.sem.blocking_subterm(&out)))
        }
    }
}

/// `evaluate(t, env, lower, binding, fuel)` as a single call.
pub fn evaluate(
    t: &Term,
    sig: &Signature,
    env: &ImplEnv,
    lower: &RewriteSystem,
    binding: &Binding,
    fuel: u64,
) -> Result<Term> {
    let mut sem = Semantics::new(sig.clone(), env.clone(), lower.clone());
    sem.fuel = fuel;
    sem.eval(t, binding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::RewriteRule;
    use crate::term::FuncDecl;

    fn a(f: &str, args: Vec<Term>) -> Term {
        Term::app(f, args)
    }
    fn v(n: &str) -> Term {
        Term::var(n)
    }
    fn nil() -> Term {
        Term::constant("nil")
    }
    fn cons(h: Term, t: Term) -> Term {
        a("cons", vec![h, t])
    }
    fn def(params: &[&str], body: Term) -> Arc<FunDef> {
        Arc::new(FunDef { params: params.iter().map(|p| crate::term::sym(p)).collect(), body })
    }

    fn list_semantics() -> Semantics {
        let mut sig = Signature::new();
        sig.add_sort("List").unwrap();
        sig.add_func(FuncDecl::new("nil", &[], "List", FuncClass::Constructor)).unwrap();
        sig.add_func(FuncDecl::new("cons", &["int", "List"], "List", FuncClass::Constructor)).unwrap();
        let ctor = crate::term::sym("cons");
        sig.add_func(FuncDecl::new("first", &["List"], "int", FuncClass::Projection { ctor: ctor.clone(), index: 0 }))
            .unwrap();
        sig.add_func(FuncDecl::new("rest", &["List"], "List", FuncClass::Projection { ctor, index: 1 })).unwrap();
        sig.add_func(FuncDecl::new("isEmptyList", &["List"], "bool", FuncClass::Defined)).unwrap();
        sig.add_func(FuncDecl::new("snoc", &["List", "int"], "List", FuncClass::Defined)).unwrap();
        sig.add_func(FuncDecl::new("lsize", &["List"], "int", FuncClass::Defined)).unwrap();
        sig.add_func(FuncDecl::new("spin", &["int"], "int", FuncClass::Defined)).unwrap();
        let mut env = ImplEnv::new();
        env.insert("isEmptyList".into(), def(&["l"], Term::eq(v("l"), nil())));
        env.insert(
            "snoc".into(),
            def(
                &["l", "x"],
                Term::ite(
                    a("isEmptyList", vec![v("l")]),
                    cons(v("x"), nil()),
                    cons(a("first", vec![v("l")]), a("snoc", vec![a("rest", vec![v("l")]), v("x")])),
                ),
            ),
        );
        env.insert(
            "lsize".into(),
            def(
                &["l"],
                Term::ite(
                    a("isEmptyList", vec![v("l")]),
                    Term::int(0),
                    a("+", vec![a("lsize", vec![a("rest", vec![v("l")])]), Term::int(1)]),
                ),
            ),
        );
        env.insert("spin".into(), def(&["n"], a("spin", vec![v("n")])));
        Semantics::new(sig, env, RewriteSystem::empty())
    }

    #[test]
    fn snoc_appends_at_the_end() {
        let sem = list_semantics();
        let t = a("snoc", vec![cons(Term::int(1), nil()), Term::int(2)]);
        assert_eq!(sem.eval(&t, &Binding::new()).unwrap(), cons(Term::int(1), cons(Term::int(2), nil())));
    }

    #[test]
    fn size_of_empty_list_is_zero() {
        let mut sem = list_semantics();
        sem.fuel = 10;
        assert_eq!(sem.eval(&a("lsize", vec![nil()]), &Binding::new()).unwrap(), Term::int(0));
    }

    #[test]
    fn unbounded_recursion_is_fuel_not_refutation() {
        let mut sem = list_semantics();
        sem.fuel = 10;
        assert!(sem.eval(&a("spin", vec![Term::int(0)]), &Binding::new()).unwrap_err().is_fuel());
    }

    #[test]
    fn projection_of_wrong_constructor_is_stuck() {
        let sem = list_semantics();
        assert!(matches!(sem.eval(&a("first", vec![nil()]), &Binding::new()), Err(Error::Stuck(_))));
    }

    #[test]
    fn lower_calls_are_discharged_by_rules() {
        let mut sig = Signature::new();
        sig.add_sort("Stack").unwrap();
        for (f, args, res) in
            [("emptyStack", &[][..], "Stack"), ("push", &["Stack", "int"][..], "Stack"), ("top", &["Stack"][..], "int")]
        {
            sig.add_func(FuncDecl::new(f, args, res, FuncClass::Uninterpreted)).unwrap();
        }
        let rules = RewriteSystem::new(vec![RewriteRule::new(a("top", vec![a("push", vec![v("s"), v("x")])]), v("x"))]);
        let sem = Semantics::new(sig, ImplEnv::new(), rules);
        let pushed = a("push", vec![Term::constant("emptyStack"), Term::int(7)]);
        assert_eq!(sem.eval(&pushed, &Binding::new()).unwrap(), pushed);
        assert_eq!(sem.eval(&a("top", vec![pushed]), &Binding::new()).unwrap(), Term::int(7));
        let err = sem.eval(&a("top", vec![Term::constant("emptyStack")]), &Binding::new()).unwrap_err();
        assert!(matches!(err, Error::Stuck(t) if t.to_string() == "(top (emptyStack))"));
    }
}
