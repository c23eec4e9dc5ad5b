//! Sorted first-order terms and the signatures they are checked against.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type Symbol = Arc<str>;

pub fn sym(s: &str) -> Symbol {
    Arc::from(s)
}

pub const INT: &str = "int";
pub const BOOL: &str = "bool";

/// Builtin operators available at every layer.
pub const BUILTINS: &[&str] = &["=", "and", "or", "not", "=>", "+", "-", "*", "mod", "<", "<="];

pub fn is_builtin(name: &str) -> bool {
    BUILTINS.contains(&name)
}

/// A shared, immutable term. Cloning is a reference-count bump.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(Arc<Node>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Var(Symbol),
    Int(i64),
    Bool(bool),
    App(Symbol, Vec<Term>),
    Ite(Term, Term, Term),
    /// A named placeholder: a sketch hole, or a nonterminal reference inside a grammar production.
    Hole(Symbol),
}

impl Term {
    pub fn new(node: Node) -> Term {
        Term(Arc::new(node))
    }
    pub fn var(name: &str) -> Term {
        Term::new(Node::Var(sym(name)))
    }
    pub fn int(v: i64) -> Term {
        Term::new(Node::Int(v))
    }
    pub fn bool(v: bool) -> Term {
        Term::new(Node::Bool(v))
    }
    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::new(Node::App(sym(f), args))
    }
    pub fn app_sym(f: Symbol, args: Vec<Term>) -> Term {
        Term::new(Node::App(f, args))
    }
    pub fn constant(f: &str) -> Term {
        Term::app(f, Vec::new())
    }
    pub fn ite(c: Term, t: Term, e: Term) -> Term {
        Term::new(Node::Ite(c, t, e))
    }
    pub fn hole(name: &str) -> Term {
        Term::new(Node::Hole(sym(name)))
    }
    #[allow(clippy::should_implement_trait)]
    pub fn not(t: Term) -> Term {
        Term::app("not", vec![t])
    }
    pub fn eq(a: Term, b: Term) -> Term {
        Term::app("=", vec![a, b])
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn head(&self) -> Option<&Symbol> {
        match self.node() {
            Node::App(f, _) => Some(f),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self.node() {
            Node::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self.node() {
            Node::Int(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_true(&self) -> bool {
        self.as_bool() == Some(true)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self.node() {
            Node::Var(_) | Node::Int(_) | Node::Bool(_) | Node::Hole(_) => 1,
            Node::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Node::Ite(c, t, e) => 1 + c.size() + t.size() + e.size(),
        }
    }

    /// Nesting depth; leaves have depth 1.
    pub fn depth(&self) -> usize {
        match self.node() {
            Node::Var(_) | Node::Int(_) | Node::Bool(_) | Node::Hole(_) => 1,
            Node::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
            Node::Ite(c, t, e) => 1 + c.depth().max(t.depth()).max(e.depth()),
        }
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        match self.node() {
            Node::Var(v) => {
                out.insert(v.clone());
            }
            Node::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Node::Ite(c, t, e) => {
                c.collect_vars(out);
                t.collect_vars(out);
                e.collect_vars(out);
            }
            _ => {}
        }
    }

    /// Applied function symbols, builtins included.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let Node::App(f, _) = t.node() {
                out.insert(f.clone());
            }
        });
        out
    }

    pub fn holes(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.visit(&mut |t| {
            if let Node::Hole(h) = t.node() {
                out.push(h.clone());
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self.node() {
            Node::App(_, args) => args.iter().for_each(|a| a.visit(f)),
            Node::Ite(c, t, e) => {
                c.visit(f);
                t.visit(f);
                e.visit(f);
            }
            _ => {}
        }
    }

    pub fn contains_var(&self) -> bool {
        let mut found = false;
        self.visit(&mut |t| found |= matches!(t.node(), Node::Var(_)));
        found
    }

    pub fn subst(&self, map: &BTreeMap<Symbol, Term>) -> Term {
        self.rewrite_leaves(&mut |t| match t.node() {
            Node::Var(v) => map.get(v).cloned(),
            _ => None,
        })
    }

    pub fn fill_holes(&self, map: &BTreeMap<Symbol, Term>) -> Term {
        self.rewrite_leaves(&mut |t| match t.node() {
            Node::Hole(h) => map.get(h).cloned(),
            _ => None,
        })
    }

    fn rewrite_leaves(&self, f: &mut impl FnMut(&Term) -> Option<Term>) -> Term {
        if let Some(r) = f(self) {
            return r;
        }
        match self.node() {
            Node::App(g, args) => {
                let new: Vec<Term> = args.iter().map(|a| a.rewrite_leaves(f)).collect();
                if new.iter().zip(args).all(|(a, b)| a.ptr_eq(b)) {
                    self.clone()
                } else {
                    Term::app_sym(g.clone(), new)
                }
            }
            Node::Ite(c, t, e) => Term::ite(c.rewrite_leaves(f), t.rewrite_leaves(f), e.rewrite_leaves(f)),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Var(v) => write!(f, "{v}"),
            Node::Int(v) => write!(f, "{v}"),
            Node::Bool(b) => write!(f, "{b}"),
            Node::Hole(h) => write!(f, "{h}"),
            Node::App(g, args) => {
                write!(f, "({g}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
            Node::Ite(c, t, e) => write!(f, "(ite {c} {t} {e})"),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SortKind {
    BuiltinInt,
    BuiltinBool,
    Adt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sort {
    pub name: Symbol,
    pub kind: SortKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FuncClass {
    Constructor,
    /// Positional field access on values built by `ctor`.
    Projection {
        ctor: Symbol,
        index: usize,
    },
    Defined,
    Uninterpreted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncDecl {
    pub name: Symbol,
    pub args: Vec<Symbol>,
    pub result: Symbol,
    pub class: FuncClass,
}

impl FuncDecl {
    pub fn new(name: &str, args: &[&str], result: &str, class: FuncClass) -> FuncDecl {
        FuncDecl { name: sym(name), args: args.iter().map(|a| sym(a)).collect(), result: sym(result), class }
    }
}

/// Sorts plus function symbols. Builtins are implicit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub sorts: BTreeMap<Symbol, Sort>,
    pub funcs: BTreeMap<Symbol, FuncDecl>,
}

pub type SortCtx = BTreeMap<Symbol, Symbol>;

impl Signature {
    pub fn new() -> Signature {
        let mut sig = Signature::default();
        sig.sorts.insert(sym(INT), Sort { name: sym(INT), kind: SortKind::BuiltinInt });
        sig.sorts.insert(sym(BOOL), Sort { name: sym(BOOL), kind: SortKind::BuiltinBool });
        sig
    }

    pub fn add_sort(&mut self, name: &str) -> Result<()> {
        if self.sorts.contains_key(name) {
            return Err(Error::Validation(format!("duplicate sort `{name}`")));
        }
        self.sorts.insert(sym(name), Sort { name: sym(name), kind: SortKind::Adt });
        Ok(())
    }

    pub fn add_func(&mut self, decl: FuncDecl) -> Result<()> {
        if is_builtin(&decl.name) || &*decl.name == "ite" || self.funcs.contains_key(&decl.name) {
            return Err(Error::Validation(format!("duplicate symbol `{}`", decl.name)));
        }
        self.funcs.insert(decl.name.clone(), decl);
        Ok(())
    }

    pub fn func(&self, name: &str) -> Option<&FuncDecl> {
        self.funcs.get(name)
    }

    pub fn is_constructor(&self, name: &str) -> bool {
        matches!(self.func(name).map(|d| &d.class), Some(FuncClass::Constructor))
    }

    pub fn constructors_of(&self, sort: &str) -> Vec<&FuncDecl> {
        self.funcs.values().filter(|d| d.class == FuncClass::Constructor && &*d.result == sort).collect()
    }

    /// Checks the declaration-level invariants: sorts exist, ADTs have constructors.
    pub fn validate(&self) -> Result<()> {
        for d in self.funcs.values() {
            for s in d.args.iter().chain(std::iter::once(&d.result)) {
                if !self.sorts.contains_key(s) {
                    return Err(Error::Validation(format!("symbol `{}` uses undeclared sort `{s}`", d.name)));
                }
            }
        }
        for s in self.sorts.values() {
            if s.kind == SortKind::Adt && self.constructors_of(&s.name).is_empty() {
                return Err(Error::Validation(format!("sort `{}` has no constructor", s.name)));
            }
        }
        Ok(())
    }

    /// Keeps only the named function symbols.
    pub fn restrict<'a>(&self, names: impl IntoIterator<Item = &'a Symbol>) -> Signature {
        let mut out = Signature { sorts: self.sorts.clone(), funcs: BTreeMap::new() };
        for n in names {
            if let Some(d) = self.funcs.get(n) {
                out.funcs.insert(n.clone(), d.clone());
            }
        }
        out
    }

    /// Result sort of an already evaluated value, if it can be read off its head.
    pub fn value_sort(&self, v: &Term) -> Option<Symbol> {
        match v.node() {
            Node::Int(_) => Some(sym(INT)),
            Node::Bool(_) => Some(sym(BOOL)),
            Node::App(f, _) => self.funcs.get(f).map(|d| d.result.clone()),
            _ => None,
        }
    }

    /// Infers the sort of `t`, extending `ctx` with sorts of newly seen variables.
    /// `holes` gives sorts for placeholders.
    pub fn sort_of(
        &self,
        t: &Term,
        ctx: &mut SortCtx,
        holes: &BTreeMap<Symbol, Symbol>,
        expected: Option<&Symbol>,
    ) -> Result<Symbol> {
        let got = self.infer(t, ctx, holes, expected)?;
        if let Some(e) = expected {
            if *e != got {
                return Err(Error::Sort(format!("`{t}` has sort `{got}`, expected `{e}`")));
            }
        }
        Ok(got)
    }

    fn infer(
        &self,
        t: &Term,
        ctx: &mut SortCtx,
        holes: &BTreeMap<Symbol, Symbol>,
        expected: Option<&Symbol>,
    ) -> Result<Symbol> {
        let int = sym(INT);
        let boolean = sym(BOOL);
        match t.node() {
            Node::Int(_) => Ok(int),
            Node::Bool(_) => Ok(boolean),
            Node::Hole(h) => holes.get(h).cloned().ok_or_else(|| Error::Sort(format!("unknown placeholder `{h}`"))),
            Node::Var(v) => match ctx.get(v) {
                Some(s) => Ok(s.clone()),
                None => match expected {
                    Some(e) => {
                        ctx.insert(v.clone(), e.clone());
                        Ok(e.clone())
                    }
                    None => Err(Error::Sort(format!("cannot infer the sort of variable `{v}`"))),
                },
            },
            Node::Ite(c, a, b) => {
                self.sort_of(c, ctx, holes, Some(&boolean))?;
                match self.sort_of(a, ctx, holes, expected) {
                    Ok(s) => self.sort_of(b, ctx, holes, Some(&s)),
                    Err(_) if expected.is_none() => {
                        let s = self.sort_of(b, ctx, holes, None)?;
                        self.sort_of(a, ctx, holes, Some(&s))
                    }
                    Err(e) => Err(e),
                }
            }
            Node::App(f, args) => {
                let arity_err =
                    |n: usize| Error::Sort(format!("`{f}` expects {n} arguments, got {} in `{t}`", args.len()));
                match &**f {
                    "=" => {
                        if args.len() != 2 {
                            return Err(arity_err(2));
                        }
                        match self.sort_of(&args[0], ctx, holes, None) {
                            Ok(s) => {
                                self.sort_of(&args[1], ctx, holes, Some(&s))?;
                            }
                            Err(_) => {
                                let s = self.sort_of(&args[1], ctx, holes, None)?;
                                self.sort_of(&args[0], ctx, holes, Some(&s))?;
                            }
                        }
                        Ok(boolean)
                    }
                    "and" | "or" => {
                        for a in args {
                            self.sort_of(a, ctx, holes, Some(&boolean))?;
                        }
                        Ok(boolean)
                    }
                    "not" => {
                        if args.len() != 1 {
                            return Err(arity_err(1));
                        }
                        self.sort_of(&args[0], ctx, holes, Some(&boolean))?;
                        Ok(boolean)
                    }
                    "=>" => {
                        if args.len() != 2 {
                            return Err(arity_err(2));
                        }
                        for a in args {
                            self.sort_of(a, ctx, holes, Some(&boolean))?;
                        }
                        Ok(boolean)
                    }
                    "+" | "-" | "*" | "mod" | "<" | "<=" => {
                        if args.len() != 2 && !(&**f == "-" && args.len() == 1) {
                            return Err(arity_err(2));
                        }
                        for a in args {
                            self.sort_of(a, ctx, holes, Some(&int))?;
                        }
                        Ok(if matches!(&**f, "<" | "<=") { boolean } else { int })
                    }
                    _ => {
                        let d =
                            self.funcs.get(f).ok_or_else(|| Error::Sort(format!("unknown symbol `{f}` in `{t}`")))?;
                        if d.args.len() != args.len() {
                            return Err(arity_err(d.args.len()));
                        }
                        for (a, s) in args.iter().zip(&d.args) {
                            self.sort_of(a, ctx, holes, Some(s))?;
                        }
                        Ok(d.result.clone())
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stack_sig() -> Signature {
        let mut s = Signature::new();
        s.add_sort("Stack").unwrap();
        s.add_func(FuncDecl::new("emptyStack", &[], "Stack", FuncClass::Constructor)).unwrap();
        s.add_func(FuncDecl::new("push", &["Stack", "int"], "Stack", FuncClass::Constructor)).unwrap();
        s.add_func(FuncDecl::new("top", &["Stack"], "int", FuncClass::Defined)).unwrap();
        s
    }

    #[test]
    fn infers_variable_sorts_from_positions() {
        let sig = stack_sig();
        let t =
            Term::eq(Term::app("top", vec![Term::app("push", vec![Term::var("st"), Term::var("x")])]), Term::var("x"));
        let mut ctx = SortCtx::new();
        assert_eq!(&*sig.sort_of(&t, &mut ctx, &BTreeMap::new(), None).unwrap(), BOOL);
        assert_eq!(&*ctx["st"], "Stack");
        assert_eq!(&*ctx["x"], INT);
    }

    #[test]
    fn rejects_ill_sorted_application() {
        let sig = stack_sig();
        let t = Term::app("push", vec![Term::int(1), Term::int(2)]);
        assert!(matches!(sig.sort_of(&t, &mut SortCtx::new(), &BTreeMap::new(), None), Err(Error::Sort(_))));
        let ite = Term::ite(Term::int(0), Term::int(1), Term::int(2));
        assert!(sig.sort_of(&ite, &mut SortCtx::new(), &BTreeMap::new(), None).is_err());
    }

    #[test]
    fn duplicate_symbols_and_empty_sorts_are_invalid() {
        let mut sig = stack_sig();
        assert!(sig.add_func(FuncDecl::new("top", &["Stack"], "int", FuncClass::Defined)).is_err());
        sig.add_sort("Orphan").unwrap();
        assert!(sig.validate().is_err());
    }

    #[test]
    fn size_depth_and_substitution() {
        let t = Term::app("push", vec![Term::var("st"), Term::var("x")]);
        assert_eq!(t.size(), 3);
        assert_eq!(t.depth(), 2);
        let mut m = BTreeMap::new();
        m.insert(sym("x"), Term::int(4));
        assert_eq!(t.subst(&m).to_string(), "(push st 4)");
    }
}
