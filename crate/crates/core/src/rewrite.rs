//! Rewrite rules used as executable semantics of a hidden layer.
//!
//! Normalization is leftmost-innermost with rules tried in declaration order.
//! `ite`, `and`, `or` and `=>` are lazy; every other symbol is strict.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::report::WellFormedReport;
use crate::term::{is_builtin, Node, Symbol, Term};

pub type Subst = BTreeMap<Symbol, Term>;

/// `lhs => rhs`, applicable only where `guard` normalizes to `true`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Term,
    pub rhs: Term,
    pub guard: Option<Term>,
}

impl RewriteRule {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        RewriteRule { lhs, rhs, guard: None }
    }

    pub fn guarded(lhs: Term, rhs: Term, guard: Term) -> Self {
        let guard = if guard.is_true() { None } else { Some(guard) };
        RewriteRule { lhs, rhs, guard }
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.guard {
            Some(g) => write!(f, "{g} -> {} => {}", self.lhs, self.rhs),
            None => write!(f, "{} => {}", self.lhs, self.rhs),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RewriteSystem {
    rules: Vec<RewriteRule>,
    by_head: HashMap<Symbol, Vec<usize>>,
}

impl PartialEq for RewriteSystem {
    fn eq(&self, other: &Self) -> bool {
        self.rules == other.rules
    }
}

impl RewriteSystem {
    pub fn new(rules: Vec<RewriteRule>) -> Self {
        let mut by_head: HashMap<Symbol, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            if let Some(h) = r.lhs.head() {
                by_head.entry(h.clone()).or_default().push(i);
            }
        }
        RewriteSystem { rules, by_head }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn extend(&self, more: &RewriteSystem) -> RewriteSystem {
        let mut rules = self.rules.clone();
        rules.extend(more.rules.iter().cloned());
        RewriteSystem::new(rules)
    }

    /// True if some rule has `f` as its outermost symbol.
    pub fn defines(&self, f: &str) -> bool {
        self.by_head.contains_key(f)
    }

    pub fn heads(&self) -> BTreeSet<Symbol> {
        self.by_head.keys().cloned().collect()
    }

    fn candidates(&self, f: &str) -> &[usize] {
        self.by_head.get(f).map(Vec::as_slice).unwrap_or(&[])
    }

    /// A closed term built only from symbols this system never rewrites.
    pub fn is_inert(&self, t: &Term) -> bool {
        match t.node() {
            Node::Int(_) | Node::Bool(_) => true,
            Node::App(f, args) => !is_builtin(f) && !self.defines(f) && args.iter().all(|a| self.is_inert(a)),
            _ => false,
        }
    }
}

/// Finds σ with σ(pattern) = subject. Repeated pattern variables must match equal subterms.
pub fn match_pattern(pattern: &Term, subject: &Term) -> Option<Subst> {
    let mut s = Subst::new();
    if match_into(pattern, subject, &mut s) {
        Some(s)
    } else {
        None
    }
}

fn match_into(p: &Term, t: &Term, s: &mut Subst) -> bool {
    match (p.node(), t.node()) {
        (Node::Var(v), _) => match s.get(v) {
            Some(bound) => bound == t,
            None => {
                s.insert(v.clone(), t.clone());
                true
            }
        },
        (Node::App(f, ps), Node::App(g, ts)) => {
            f == g && ps.len() == ts.len() && ps.iter().zip(ts).all(|(a, b)| match_into(a, b, s))
        }
        (Node::Ite(a, b, c), Node::Ite(x, y, z)) => match_into(a, x, s) && match_into(b, y, s) && match_into(c, z, s),
        _ => p == t,
    }
}

/// Outcome of applying a builtin to already-reduced arguments.
pub(crate) enum Builtin {
    Value(Term),
    /// Some argument is not a literal; the application stays as is.
    Blocked,
}

pub(crate) fn apply_builtin(f: &str, args: &[Term], inert: impl Fn(&Term) -> bool) -> Result<Builtin> {
    let ints = || -> Option<Vec<i64>> { args.iter().map(Term::as_int).collect() };
    let bools = || -> Option<Vec<bool>> { args.iter().map(Term::as_bool).collect() };
    let overflow = || Error::Overflow(f.to_string());
    let out = match f {
        "=" => {
            if inert(&args[0]) && inert(&args[1]) {
                Term::bool(args[0] == args[1])
            } else {
                return Ok(Builtin::Blocked);
            }
        }
        "not" => match bools() {
            Some(b) => Term::bool(!b[0]),
            None => return Ok(Builtin::Blocked),
        },
        "and" | "or" | "=>" => match bools() {
            Some(b) => Term::bool(match f {
                "and" => b.iter().all(|x| *x),
                "or" => b.iter().any(|x| *x),
                _ => !b[0] || b[1],
            }),
            None => return Ok(Builtin::Blocked),
        },
        _ => match ints() {
            None => return Ok(Builtin::Blocked),
            Some(v) => match (f, v.as_slice()) {
                ("-", [a]) => Term::int(a.checked_neg().ok_or_else(overflow)?),
                ("+", [a, b]) => Term::int(a.checked_add(*b).ok_or_else(overflow)?),
                ("-", [a, b]) => Term::int(a.checked_sub(*b).ok_or_else(overflow)?),
                ("*", [a, b]) => Term::int(a.checked_mul(*b).ok_or_else(overflow)?),
                ("mod", [a, b]) => {
                    if *b == 0 {
                        return Ok(Builtin::Blocked);
                    }
                    Term::int(a.rem_euclid(*b))
                }
                ("<", [a, b]) => Term::bool(a < b),
                ("<=", [a, b]) => Term::bool(a <= b),
                _ => return Err(Error::Sort(format!("bad builtin application `{f}`"))),
            },
        },
    };
    Ok(Builtin::Value(out))
}

/// Normalizer with a shared step budget.
pub struct Rewriter<'a> {
    rules: &'a RewriteSystem,
    pub steps: u64,
    pub fuel: u64,
}

impl<'a> Rewriter<'a> {
    pub fn new(rules: &'a RewriteSystem, fuel: u64) -> Self {
        Rewriter { rules, steps: 0, fuel }
    }

    pub fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.fuel {
            Err(Error::FuelExhausted { steps: self.steps })
        } else {
            Ok(())
        }
    }

    pub fn normalize(&mut self, t: &Term) -> Result<Term> {
        match t.node() {
            Node::Var(_) | Node::Int(_) | Node::Bool(_) | Node::Hole(_) => Ok(t.clone()),
            Node::Ite(c, a, b) => {
                let c = self.normalize(c)?;
                match c.as_bool() {
                    Some(true) => self.normalize(a),
                    Some(false) => self.normalize(b),
                    None => Ok(Term::ite(c, self.normalize(a)?, self.normalize(b)?)),
                }
            }
            Node::App(f, args) if matches!(&**f, "and" | "or" | "=>") => self.normalize_connective(t, f, args),
            Node::App(f, args) => {
                let mut out = Vec::with_capacity(args.len());
                for a in args {
                    out.push(self.normalize(a)?);
                }
                self.reduce_app(f, out)
            }
        }
    }

    fn normalize_connective(&mut self, t: &Term, f: &Symbol, args: &[Term]) -> Result<Term> {
        let mut out = Vec::with_capacity(args.len());
        for (i, a) in args.iter().enumerate() {
            let a = self.normalize(a)?;
            // short circuit on the left-most decisive literal
            let decisive = match (&**f, a.as_bool()) {
                ("and", Some(false)) => Some(false),
                ("or", Some(true)) => Some(true),
                ("=>", Some(false)) if i == 0 => Some(true),
                _ => None,
            };
            if let Some(v) = decisive {
                self.tick()?;
                return Ok(Term::bool(v));
            }
            out.push(a);
        }
        let _ = t;
        self.reduce_app(f, out)
    }

    /// Reduces `f(args)` at the root; `args` must already be normal.
    pub fn reduce_app(&mut self, f: &Symbol, args: Vec<Term>) -> Result<Term> {
        if is_builtin(f) {
            let rules = self.rules;
            return match apply_builtin(f, &args, |t| rules.is_inert(t))? {
                Builtin::Value(v) => {
                    self.tick()?;
                    Ok(v)
                }
                Builtin::Blocked => Ok(Term::app_sym(f.clone(), args)),
            };
        }
        let subject = Term::app_sym(f.clone(), args);
        for &i in self.rules.candidates(f) {
            let rule = &self.rules.rules[i];
            let Some(s) = match_pattern(&rule.lhs, &subject) else { continue };
            if let Some(g) = &rule.guard {
                if !self.normalize(&g.subst(&s))?.is_true() {
                    continue;
                }
            }
            self.tick()?;
            return self.normalize(&rule.rhs.subst(&s));
        }
        Ok(subject)
    }
}

/// Normal form of `t` under `rs`, failing once more than `fuel` steps were taken.
pub fn normalize(t: &Term, rs: &RewriteSystem, fuel: u64) -> Result<Term> {
    Rewriter::new(rs, fuel).normalize(t)
}

/// Syntactic termination discipline.
///
/// A rule passes if its right side is strictly smaller than its left side, or if every
/// right-side occurrence of the left side's head is applied to arguments that are no deeper
/// than the corresponding left-side arguments and strictly shallower in at least one place.
pub fn check_rule_system(rs: &RewriteSystem) -> WellFormedReport {
    let mut report = WellFormedReport::new();
    for rule in rs.rules() {
        if let Err(msg) = check_rule(rule) {
            report.violate(rule.to_string(), msg, rule.lhs.head().map(|h| &**h));
        }
    }
    report
}

pub fn check_rule(rule: &RewriteRule) -> std::result::Result<(), String> {
    let (head, lhs_args) = match rule.lhs.node() {
        Node::App(f, args) if !is_builtin(f) => (f, args),
        _ => return Err("left side must apply a defined symbol".into()),
    };
    let bound = rule.lhs.vars();
    let mut used = rule.rhs.vars();
    if let Some(g) = &rule.guard {
        used.extend(g.vars());
    }
    if let Some(v) = used.difference(&bound).next() {
        return Err(format!("variable `{v}` does not occur in the left side"));
    }
    if rule.rhs.size() < rule.lhs.size() {
        return Ok(());
    }
    let mut ok = true;
    rule.rhs.visit(&mut |t| {
        if let Node::App(f, args) = t.node() {
            if f == head && !strictly_smaller(args, lhs_args) {
                ok = false;
            }
        }
    });
    if ok {
        Ok(())
    } else {
        Err(format!("`{head}` is re-applied to an argument tuple that is not strictly smaller (may cycle)"))
    }
}

fn strictly_smaller(args: &[Term], than: &[Term]) -> bool {
    args.len() == than.len()
        && args.iter().zip(than).all(|(a, b)| a.depth() <= b.depth())
        && args.iter().zip(than).any(|(a, b)| a.depth() < b.depth())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }
    fn a(f: &str, args: Vec<Term>) -> Term {
        Term::app(f, args)
    }

    fn stack_rules() -> RewriteSystem {
        let push = || a("push", vec![v("st"), v("x")]);
        RewriteSystem::new(vec![
            RewriteRule::new(a("isEmptyStack", vec![Term::constant("emptyStack")]), Term::bool(true)),
            RewriteRule::new(a("isEmptyStack", vec![push()]), Term::bool(false)),
            RewriteRule::new(a("top", vec![push()]), v("x")),
            RewriteRule::new(a("pop", vec![push()]), v("st")),
            RewriteRule::new(a("stsize", vec![Term::constant("emptyStack")]), Term::int(0)),
            RewriteRule::new(a("stsize", vec![push()]), a("+", vec![a("stsize", vec![v("st")]), Term::int(1)])),
        ])
    }

    #[test]
    fn pop_of_push_rewrites_to_the_stack() {
        let t = a("pop", vec![a("push", vec![Term::constant("emptyStack"), Term::int(5)])]);
        assert_eq!(normalize(&t, &stack_rules(), 100).unwrap(), Term::constant("emptyStack"));
    }

    #[test]
    fn variables_are_normal() {
        assert_eq!(normalize(&v("x"), &stack_rules(), 1).unwrap(), v("x"));
    }

    #[test]
    fn size_counts_pushes() {
        let mut t = Term::constant("emptyStack");
        for i in 0..3 {
            t = a("push", vec![t, Term::int(i)]);
        }
        assert_eq!(normalize(&a("stsize", vec![t]), &stack_rules(), 100).unwrap(), Term::int(3));
    }

    #[test]
    fn matcher_binds_and_rejects() {
        let s = match_pattern(
            &a("push", vec![v("st"), v("x")]),
            &a("push", vec![Term::constant("emptyStack"), Term::int(3)]),
        )
        .unwrap();
        assert_eq!(s["st"], Term::constant("emptyStack"));
        assert_eq!(s["x"], Term::int(3));
        assert!(match_pattern(&a("push", vec![v("st"), v("x")]), &a("pop", vec![v("s")])).is_none());
        // non-linear patterns require equal subterms
        let p = a("f", vec![v("k"), v("k")]);
        assert!(match_pattern(&p, &a("f", vec![Term::int(1), Term::int(1)])).is_some());
        assert!(match_pattern(&p, &a("f", vec![Term::int(1), Term::int(2)])).is_none());
    }

    #[test]
    fn guarded_rule_fires_only_when_guard_holds() {
        let rs = RewriteSystem::new(vec![
            RewriteRule::guarded(a("g", vec![v("k"), v("j")]), Term::int(1), Term::eq(v("k"), v("j"))),
            RewriteRule::new(a("g", vec![v("k"), v("j")]), Term::int(0)),
        ]);
        assert_eq!(normalize(&a("g", vec![Term::int(2), Term::int(2)]), &rs, 10).unwrap(), Term::int(1));
        assert_eq!(normalize(&a("g", vec![Term::int(2), Term::int(3)]), &rs, 10).unwrap(), Term::int(0));
    }

    #[test]
    fn diverging_system_runs_out_of_fuel() {
        let rs = RewriteSystem::new(vec![RewriteRule::new(a("f", vec![v("x")]), a("f", vec![v("x")]))]);
        assert!(normalize(&a("f", vec![Term::int(0)]), &rs, 50).unwrap_err().is_fuel());
    }

    #[test]
    fn commutativity_is_rejected() {
        let rs = RewriteSystem::new(vec![RewriteRule::new(
            a("plus", vec![v("a"), v("b")]),
            a("plus", vec![v("b"), v("a")]),
        )]);
        let report = check_rule_system(&rs);
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].subject.contains("plus"));
        assert!(check_rule_system(&stack_rules()).is_ok());
        assert!(check_rule_system(&RewriteSystem::empty()).is_ok());
    }

    #[test]
    fn recursion_on_a_smaller_argument_is_accepted() {
        let lhs = a("deq", vec![a("enq", vec![v("q"), v("x")])]);
        let rhs = a("enq", vec![a("deq", vec![v("q")]), v("x")]);
        assert!(check_rule(&RewriteRule::new(lhs, rhs)).is_ok());
        let bad = RewriteRule::new(a("f", vec![v("x")]), v("y"));
        assert!(check_rule(&bad).is_err());
    }
}
