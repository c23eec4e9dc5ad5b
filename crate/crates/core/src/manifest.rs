//! The `.moss` project format: loading with validation, and canonical saving.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::eval::{FunDef, ImplEnv};
use crate::grammar::{Grammar, Nonterminal};
use crate::ir::{
    Bounds, CtorDef, Field, GuardedEquation, HarnessVar, ImplSpec, LayeredSystem, ModuleDef, PropertyGrammar, Sketch,
    SortDef, DEFAULT_SKETCH_DEPTH,
};
use crate::rewrite::{RewriteRule, RewriteSystem};
use crate::sexp::{parse, Sexp};
use crate::term::{sym, FuncClass, FuncDecl, Node, Symbol, Term};

const WIDTH: usize = 100;

/// Parses and validates a manifest.
pub fn load_project(text: &str) -> Result<LayeredSystem> {
    let sys = parse_project(text)?;
    sys.validate()?;
    Ok(sys)
}

pub fn load_file(path: &std::path::Path) -> Result<LayeredSystem> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    load_project(&text)
}

/// Parses without validating.
pub fn parse_project(text: &str) -> Result<LayeredSystem> {
    let mut sys = LayeredSystem::default();
    let mut rules = Vec::new();
    for form in parse(text)? {
        let items = list(&form)?;
        match form.head() {
            Some("base-sorts") => {
                for s in &items[1..] {
                    sys.base_sorts.push(parse_sort(s)?);
                }
            }
            Some("base-functions") => {
                for d in &items[1..] {
                    sys.base_functions.push(parse_decl(d, FuncClass::Uninterpreted)?);
                }
            }
            Some("base-rules") => {
                for r in &items[1..] {
                    rules.push(parse_rule(r)?);
                }
            }
            Some("base-impl") => sys.base_impl.extend(parse_impl_body(&items[1..])?),
            Some("module") => sys.modules.push(parse_module(&form)?),
            _ => return Err(form.error("expected base-sorts, base-functions, base-rules, base-impl or module")),
        }
    }
    sys.base_rules = RewriteSystem::new(rules);
    Ok(sys)
}

/// Parses a standalone `(impl ...)` form.
pub fn parse_impl(text: &str) -> Result<ImplEnv> {
    let forms = parse(text)?;
    match forms.as_slice() {
        [f] if f.head() == Some("impl") => parse_impl_form(f),
        _ => Err(Error::Parse { line: 1, col: 1, msg: "expected a single (impl ...) form".into() }),
    }
}

/// Expected artifacts for one module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Golden {
    pub module: Symbol,
    pub implementation: ImplEnv,
    pub ias: Option<Vec<GuardedEquation>>,
}

/// Parses `(golden Module [(impl ...)] [(ias ...)])` forms.
pub fn parse_goldens(text: &str) -> Result<Vec<Golden>> {
    let mut out = Vec::new();
    for f in parse(text)? {
        let items = list(&f)?;
        if f.head() != Some("golden") || items.len() < 2 {
            return Err(f.error("expected (golden Module (impl ...) (ias ...))"));
        }
        let mut g = Golden { module: sym(atom(&items[1])?), ..Golden::default() };
        for part in &items[2..] {
            match part.head() {
                Some("impl") => g.implementation.extend(parse_impl_form(part)?),
                Some("ias") => g.ias = Some(list(part)?[1..].iter().map(parse_eq).collect::<Result<Vec<_>>>()?),
                _ => return Err(part.error("expected (impl ...) or (ias ...)")),
            }
        }
        out.push(g);
    }
    Ok(out)
}

fn list(s: &Sexp) -> Result<&[Sexp]> {
    s.as_list().ok_or_else(|| s.error("expected a list"))
}

fn atom(s: &Sexp) -> Result<&str> {
    s.as_atom().ok_or_else(|| s.error("expected an atom"))
}

fn int_atom(s: &Sexp) -> Result<i64> {
    atom(s)?.parse().map_err(|_| s.error("expected an integer"))
}

fn usize_atom(s: &Sexp) -> Result<usize> {
    atom(s)?.parse().map_err(|_| s.error("expected a non-negative integer"))
}

/// Positional items and `:keyword value...` pairs, with fixed keyword arities.
struct Args<'a> {
    positional: Vec<&'a Sexp>,
    keywords: Vec<(&'a str, Vec<&'a Sexp>, &'a Sexp)>,
}

fn split_args<'a>(items: &'a [Sexp]) -> Result<Args<'a>> {
    let mut out = Args { positional: Vec::new(), keywords: Vec::new() };
    let mut i = 0;
    while i < items.len() {
        let it = &items[i];
        match it.as_atom() {
            Some(k) if k.starts_with(':') => {
                let arity = match k {
                    ":shared" => 0,
                    ":guard" | ":layer" | ":depth" => 1,
                    ":range" | ":int" => 2,
                    _ => return Err(it.error(format!("unknown keyword `{k}`"))),
                };
                if i + 1 + arity > items.len() {
                    return Err(it.error(format!("`{k}` needs {arity} argument(s)")));
                }
                out.keywords.push((k, items[i + 1..i + 1 + arity].iter().collect(), it));
                i += 1 + arity;
            }
            _ => {
                out.positional.push(it);
                i += 1;
            }
        }
    }
    Ok(out)
}

impl<'a> Args<'a> {
    fn kw(&self, k: &str) -> Option<&[&'a Sexp]> {
        self.keywords.iter().find(|(n, _, _)| *n == k).map(|(_, v, _)| v.as_slice())
    }

    fn has(&self, k: &str) -> bool {
        self.kw(k).is_some()
    }
}

/// Terms: integers, `true`/`false`, variables, `(ite c a b)`, `(?? N)` and applications.
/// Inside grammars, bare atoms naming a nonterminal are references to it.
pub fn parse_term(s: &Sexp, nonterminals: &BTreeSet<String>) -> Result<Term> {
    match s {
        Sexp::Atom(a, _) => {
            if let Ok(v) = a.parse::<i64>() {
                return Ok(Term::int(v));
            }
            Ok(match a.as_str() {
                "true" => Term::bool(true),
                "false" => Term::bool(false),
                _ if nonterminals.contains(a) => Term::hole(a),
                _ if a.starts_with(':') || a == "??" || a == "ite" => return Err(s.error(format!("misplaced `{a}`"))),
                _ => Term::var(a),
            })
        }
        Sexp::List(items, _) => {
            let head =
                items.first().and_then(Sexp::as_atom).ok_or_else(|| s.error("expected a symbol in head position"))?;
            let args = &items[1..];
            match head {
                "ite" => {
                    if args.len() != 3 {
                        return Err(s.error("ite takes three arguments"));
                    }
                    Ok(Term::ite(
                        parse_term(&args[0], nonterminals)?,
                        parse_term(&args[1], nonterminals)?,
                        parse_term(&args[2], nonterminals)?,
                    ))
                }
                "??" => match args {
                    [n] => Ok(Term::hole(atom(n)?)),
                    _ => Err(s.error("(?? N) takes one nonterminal")),
                },
                _ => {
                    let mut out = Vec::with_capacity(args.len());
                    for a in args {
                        out.push(parse_term(a, nonterminals)?);
                    }
                    Ok(Term::app(head, out))
                }
            }
        }
    }
}

fn term(s: &Sexp) -> Result<Term> {
    parse_term(s, &BTreeSet::new())
}

fn parse_sort(s: &Sexp) -> Result<SortDef> {
    let items = list(s)?;
    if s.head() != Some("sort") || items.len() < 2 {
        return Err(s.error("expected (sort Name ctor...)"));
    }
    let args = split_args(&items[2..])?;
    let mut ctors = Vec::new();
    for c in &args.positional {
        let citems = list(c)?;
        let name = atom(citems.first().ok_or_else(|| c.error("empty constructor"))?)?;
        let mut fields = Vec::new();
        for f in &citems[1..] {
            fields.push(match f {
                Sexp::Atom(sort, _) => Field { name: None, sort: sym(sort) },
                Sexp::List(pair, _) if pair.len() == 2 => {
                    Field { name: Some(sym(atom(&pair[0])?)), sort: sym(atom(&pair[1])?) }
                }
                _ => return Err(f.error("expected Sort or (field Sort)")),
            });
        }
        ctors.push(CtorDef { name: sym(name), fields });
    }
    Ok(SortDef { name: sym(atom(&items[1])?), shared: args.has(":shared"), ctors })
}

fn parse_decl(s: &Sexp, class: FuncClass) -> Result<FuncDecl> {
    match list(s)? {
        [name, args, result] => {
            let args = list(args)?.iter().map(|a| atom(a).map(sym)).collect::<Result<Vec<_>>>()?;
            Ok(FuncDecl { name: sym(atom(name)?), args, result: sym(atom(result)?), class })
        }
        _ => Err(s.error("expected (name (arg-sorts...) result-sort)")),
    }
}

fn parse_rule(s: &Sexp) -> Result<RewriteRule> {
    let items = list(s)?;
    if s.head() != Some("rule") {
        return Err(s.error("expected (rule lhs rhs [:guard g])"));
    }
    let args = split_args(&items[1..])?;
    match args.positional.as_slice() {
        [l, r] => {
            let guard = match args.kw(":guard") {
                Some([g]) => term(g)?,
                _ => Term::bool(true),
            };
            Ok(RewriteRule::guarded(term(l)?, term(r)?, guard))
        }
        _ => Err(s.error("expected (rule lhs rhs [:guard g])")),
    }
}

fn parse_eq(s: &Sexp) -> Result<GuardedEquation> {
    let items = list(s)?;
    if s.head() != Some("eq") {
        return Err(s.error("expected (eq [:guard g] lhs rhs)"));
    }
    let args = split_args(&items[1..])?;
    match args.positional.as_slice() {
        [l, r] => {
            let guard = match args.kw(":guard") {
                Some([g]) => term(g)?,
                _ => Term::bool(true),
            };
            Ok(GuardedEquation::new(guard, term(l)?, term(r)?))
        }
        _ => Err(s.error("expected (eq [:guard g] lhs rhs)")),
    }
}

fn parse_grammar(s: &Sexp) -> Result<Grammar> {
    let items = list(s)?;
    if s.head() != Some("grammar") {
        return Err(s.error("expected (grammar (N Sort production...)...)"));
    }
    let rules = &items[1..];
    let mut names = BTreeSet::new();
    for r in rules {
        names.insert(atom(list(r)?.first().ok_or_else(|| r.error("empty nonterminal"))?)?.to_string());
    }
    let mut nonterminals = Vec::new();
    for r in rules {
        let ritems = list(r)?;
        if ritems.len() < 2 {
            return Err(r.error("expected (N Sort production...)"));
        }
        let productions = ritems[2..].iter().map(|p| parse_term(p, &names)).collect::<Result<Vec<_>>>()?;
        nonterminals.push(Nonterminal { name: sym(atom(&ritems[0])?), sort: sym(atom(&ritems[1])?), productions });
    }
    Ok(Grammar { nonterminals })
}

fn parse_signature_head(s: &Sexp) -> Result<(Symbol, Vec<Symbol>)> {
    let items = list(s)?;
    let name = atom(items.first().ok_or_else(|| s.error("expected (f params...)"))?)?;
    let params = items[1..].iter().map(|p| atom(p).map(sym)).collect::<Result<Vec<_>>>()?;
    Ok((sym(name), params))
}

fn parse_impl_form(s: &Sexp) -> Result<ImplEnv> {
    parse_impl_body(&list(s)?[1..])
}

fn parse_impl_body(defs: &[Sexp]) -> Result<ImplEnv> {
    let mut env = ImplEnv::new();
    for d in defs {
        match list(d)? {
            [kw, head, body] if kw.as_atom() == Some("define") => {
                let (name, params) = parse_signature_head(head)?;
                if env.insert(name.clone(), Arc::new(FunDef { params, body: term(body)? })).is_some() {
                    return Err(d.error(format!("duplicate definition of `{name}`")));
                }
            }
            _ => return Err(d.error("expected (define (f params...) body)")),
        }
    }
    Ok(env)
}

fn parse_vars(s: &Sexp) -> Result<Vec<HarnessVar>> {
    let mut out = Vec::new();
    for v in &list(s)?[1..] {
        let items = list(v)?;
        let args = split_args(items)?;
        match args.positional.as_slice() {
            [name, sort] => {
                let range = match args.kw(":range") {
                    Some([lo, hi]) => Some((int_atom(lo)?, int_atom(hi)?)),
                    _ => None,
                };
                out.push(HarnessVar { name: sym(atom(name)?), sort: sym(atom(sort)?), range });
            }
            _ => return Err(v.error("expected (name Sort [:range lo hi])")),
        }
    }
    Ok(out)
}

fn parse_iss(s: &Sexp) -> Result<ImplSpec> {
    let mut spec = ImplSpec::default();
    for f in &list(s)?[1..] {
        let items = list(f)?;
        match (f.head(), items) {
            (Some("assume"), [_, t]) => spec.assumptions.push(term(t)?),
            (Some("assert"), [_, t]) => spec.assertions.push(term(t)?),
            (Some("vars"), _) => spec.vars.extend(parse_vars(f)?),
            _ => return Err(f.error("expected (assume t), (assert t) or (vars ...)")),
        }
    }
    Ok(spec)
}

fn parse_sketch(s: &Sexp) -> Result<Sketch> {
    let items = list(s)?;
    if s.head() != Some("sketch") {
        return Err(s.error("expected (sketch (f params...) body (grammar ...) [:depth d])"));
    }
    let args = split_args(&items[1..])?;
    match args.positional.as_slice() {
        [head, body, grammar] => {
            let (name, params) = parse_signature_head(head)?;
            let depth = match args.kw(":depth") {
                Some([d]) => usize_atom(d)?,
                _ => DEFAULT_SKETCH_DEPTH,
            };
            Ok(Sketch { name, params, body: term(body)?, grammar: parse_grammar(grammar)?, depth })
        }
        _ => Err(s.error("expected (sketch (f params...) body (grammar ...) [:depth d])")),
    }
}

fn parse_property_grammar(s: &Sexp) -> Result<PropertyGrammar> {
    let items = list(s)?;
    let name = atom(items.get(1).ok_or_else(|| s.error("property-grammar needs a name"))?)?;
    let (mut vars, mut relations, mut lhs, mut guards, mut rhs, mut grammar) =
        (Vec::new(), Vec::new(), None, None, None, None);
    for f in &items[2..] {
        let fitems = list(f)?;
        match f.head() {
            Some("vars") => {
                for v in parse_vars(f)? {
                    vars.push((v.name, v.sort));
                }
            }
            Some("relation") => {
                for r in &fitems[1..] {
                    match list(r)? {
                        [v, t] => relations.push((sym(atom(v)?), term(t)?)),
                        _ => return Err(r.error("expected (var term)")),
                    }
                }
            }
            Some("lhs") if fitems.len() == 2 => lhs = Some(term(&fitems[1])?),
            Some("guards") => guards = Some(fitems[1..].iter().map(term).collect::<Result<Vec<_>>>()?),
            Some("rhs") => {
                let args = split_args(&fitems[1..])?;
                let depth = match args.kw(":depth") {
                    Some([d]) => usize_atom(d)?,
                    _ => DEFAULT_SKETCH_DEPTH,
                };
                match args.positional.as_slice() {
                    [nt] => rhs = Some((sym(atom(nt)?), depth)),
                    _ => return Err(f.error("expected (rhs N [:depth d])")),
                }
            }
            Some("grammar") => grammar = Some(parse_grammar(f)?),
            _ => return Err(f.error("unexpected form in property-grammar")),
        }
    }
    let lhs = lhs.ok_or_else(|| s.error("property-grammar needs (lhs t)"))?;
    let (rhs, depth) = rhs.ok_or_else(|| s.error("property-grammar needs (rhs N)"))?;
    let grammar = grammar.ok_or_else(|| s.error("property-grammar needs (grammar ...)"))?;
    Ok(PropertyGrammar { name: name.to_string(), vars, relations, lhs, guards, rhs, depth, grammar })
}

fn parse_module(s: &Sexp) -> Result<ModuleDef> {
    let items = list(s)?;
    let name = atom(items.get(1).ok_or_else(|| s.error("module needs a name"))?)?;
    let args = split_args(&items[2..])?;
    let layer = match args.kw(":layer") {
        Some([k]) => usize_atom(k)?,
        _ => return Err(s.error("module needs :layer k")),
    };
    let mut m = ModuleDef::new(name, layer);
    for f in &args.positional {
        let fitems = list(f)?;
        match f.head() {
            Some("sort") => m.sorts.push(parse_sort(f)?),
            Some("export") => {
                for d in &fitems[1..] {
                    m.exports.push(parse_decl(d, FuncClass::Defined)?);
                }
            }
            Some("private") => {
                for d in &fitems[1..] {
                    m.private.push(parse_decl(d, FuncClass::Defined)?);
                }
            }
            Some("equality") if fitems.len() == 2 => m.equality = Some(sym(atom(&fitems[1])?)),
            Some("impl") => m.implementation.extend(parse_impl_form(f)?),
            Some("iss") => m.iss = Some(parse_iss(f)?),
            Some("ias") => m.ias = Some(fitems[1..].iter().map(parse_eq).collect::<Result<Vec<_>>>()?),
            Some("search-space") => {
                for sk in &fitems[1..] {
                    m.search_space.push(parse_sketch(sk)?);
                }
            }
            Some("property-grammar") => m.grammars.push(parse_property_grammar(f)?),
            Some("bounds") => {
                let b = split_args(&fitems[1..])?;
                let mut bounds = Bounds::default();
                if let Some([lo, hi]) = b.kw(":int") {
                    bounds.int_lo = int_atom(lo)?;
                    bounds.int_hi = int_atom(hi)?;
                }
                if let Some([d]) = b.kw(":depth") {
                    bounds.depth = usize_atom(d)?;
                }
                m.bounds = Some(bounds);
            }
            _ => return Err(f.error("unexpected form in module")),
        }
    }
    let rep = m.representation();
    for d in &mut m.exports {
        if let Some(r) = rep.iter().find(|r| r.name == d.name) {
            d.class = r.class.clone();
        }
    }
    Ok(m)
}

// ---------------------------------------------------------------- saving

fn a(s: impl Into<String>) -> Sexp {
    Sexp::atom(s)
}

fn l(items: Vec<Sexp>) -> Sexp {
    Sexp::list(items)
}

/// Holes print as `(?? N)` in bodies and as bare `N` inside grammars.
pub fn term_sexp(t: &Term, bare_holes: bool) -> Sexp {
    match t.node() {
        Node::Var(v) => a(&**v),
        Node::Int(i) => a(i.to_string()),
        Node::Bool(b) => a(b.to_string()),
        Node::Hole(h) if bare_holes => a(&**h),
        Node::Hole(h) => l(vec![a("??"), a(&**h)]),
        Node::App(f, args) => {
            let mut items = vec![a(&**f)];
            items.extend(args.iter().map(|x| term_sexp(x, bare_holes)));
            l(items)
        }
        Node::Ite(c, x, y) => {
            l(vec![a("ite"), term_sexp(c, bare_holes), term_sexp(x, bare_holes), term_sexp(y, bare_holes)])
        }
    }
}

fn sort_sexp(s: &SortDef) -> Sexp {
    let mut items = vec![a("sort"), a(&*s.name)];
    if s.shared {
        items.push(a(":shared"));
    }
    for c in &s.ctors {
        let mut ci = vec![a(&*c.name)];
        for f in &c.fields {
            ci.push(match &f.name {
                Some(n) => l(vec![a(&**n), a(&*f.sort)]),
                None => a(&*f.sort),
            });
        }
        items.push(l(ci));
    }
    l(items)
}

fn decl_sexp(d: &FuncDecl) -> Sexp {
    l(vec![a(&*d.name), l(d.args.iter().map(|s| a(&**s)).collect()), a(&*d.result)])
}

fn guard_kw(items: &mut Vec<Sexp>, g: &Term) {
    if !g.is_true() {
        items.push(a(":guard"));
        items.push(term_sexp(g, false));
    }
}

pub fn rule_sexp(r: &RewriteRule) -> Sexp {
    let mut items = vec![a("rule"), term_sexp(&r.lhs, false), term_sexp(&r.rhs, false)];
    if let Some(g) = &r.guard {
        guard_kw(&mut items, g);
    }
    l(items)
}

pub fn eq_sexp(e: &GuardedEquation) -> Sexp {
    let mut items = vec![a("eq")];
    guard_kw(&mut items, &e.guard);
    items.push(term_sexp(&e.lhs, false));
    items.push(term_sexp(&e.rhs, false));
    l(items)
}

fn grammar_sexp(g: &Grammar) -> Sexp {
    let mut items = vec![a("grammar")];
    for nt in &g.nonterminals {
        let mut ni = vec![a(&*nt.name), a(&*nt.sort)];
        ni.extend(nt.productions.iter().map(|p| term_sexp(p, true)));
        items.push(l(ni));
    }
    l(items)
}

fn vars_sexp(vars: impl Iterator<Item = (Symbol, Symbol, Option<(i64, i64)>)>) -> Sexp {
    let mut items = vec![a("vars")];
    for (n, s, r) in vars {
        let mut vi = vec![a(&*n), a(&*s)];
        if let Some((lo, hi)) = r {
            vi.extend([a(":range"), a(lo.to_string()), a(hi.to_string())]);
        }
        items.push(l(vi));
    }
    l(items)
}

fn head_sexp(name: &Symbol, params: &[Symbol]) -> Sexp {
    let mut items = vec![a(&**name)];
    items.extend(params.iter().map(|p| a(&**p)));
    l(items)
}

/// `(impl (define ...) ...)` with definitions in the given order.
pub fn impl_sexp(env: &ImplEnv, order: &[Symbol]) -> Sexp {
    let mut items = vec![a("impl")];
    for name in order {
        let def = &env[name];
        items.push(l(vec![a("define"), head_sexp(name, &def.params), term_sexp(&def.body, false)]));
    }
    l(items)
}

/// The module's definitions as a standalone `(impl ...)` form.
pub fn render_impl(m: &ModuleDef) -> String {
    impl_sexp(&m.implementation, &m.impl_order()).pretty(0, WIDTH)
}

pub fn render_ias(eqs: &[GuardedEquation]) -> String {
    let mut items = vec![a("ias")];
    items.extend(eqs.iter().map(eq_sexp));
    l(items).pretty(0, WIDTH)
}

fn module_sexp(m: &ModuleDef) -> Sexp {
    let mut items = vec![a("module"), a(&*m.name), a(":layer"), a(m.layer.to_string())];
    items.extend(m.sorts.iter().map(sort_sexp));
    if !m.exports.is_empty() {
        let mut e = vec![a("export")];
        e.extend(m.exports.iter().map(decl_sexp));
        items.push(l(e));
    }
    if !m.private.is_empty() {
        let mut p = vec![a("private")];
        p.extend(m.private.iter().map(decl_sexp));
        items.push(l(p));
    }
    if let Some(f) = &m.equality {
        items.push(l(vec![a("equality"), a(&**f)]));
    }
    if !m.implementation.is_empty() {
        items.push(impl_sexp(&m.implementation, &m.impl_order()));
    }
    if let Some(iss) = &m.iss {
        let mut s = vec![a("iss")];
        s.extend(iss.assumptions.iter().map(|t| l(vec![a("assume"), term_sexp(t, false)])));
        s.extend(iss.assertions.iter().map(|t| l(vec![a("assert"), term_sexp(t, false)])));
        if !iss.vars.is_empty() {
            s.push(vars_sexp(iss.vars.iter().map(|v| (v.name.clone(), v.sort.clone(), v.range))));
        }
        items.push(l(s));
    }
    if let Some(eqs) = &m.ias {
        let mut s = vec![a("ias")];
        s.extend(eqs.iter().map(eq_sexp));
        items.push(l(s));
    }
    if !m.search_space.is_empty() {
        let mut s = vec![a("search-space")];
        for sk in &m.search_space {
            let mut ski = vec![
                a("sketch"),
                head_sexp(&sk.name, &sk.params),
                term_sexp(&sk.body, false),
                grammar_sexp(&sk.grammar),
            ];
            if sk.depth != DEFAULT_SKETCH_DEPTH {
                ski.extend([a(":depth"), a(sk.depth.to_string())]);
            }
            s.push(l(ski));
        }
        items.push(l(s));
    }
    for g in &m.grammars {
        let mut gi = vec![a("property-grammar"), a(&g.name)];
        gi.push(vars_sexp(g.vars.iter().map(|(n, s)| (n.clone(), s.clone(), None))));
        if !g.relations.is_empty() {
            let mut r = vec![a("relation")];
            r.extend(g.relations.iter().map(|(v, t)| l(vec![a(&**v), term_sexp(t, false)])));
            gi.push(l(r));
        }
        gi.push(l(vec![a("lhs"), term_sexp(&g.lhs, false)]));
        if let Some(gs) = &g.guards {
            let mut gg = vec![a("guards")];
            gg.extend(gs.iter().map(|t| term_sexp(t, false)));
            gi.push(l(gg));
        }
        let mut r = vec![a("rhs"), a(&*g.rhs)];
        if g.depth != DEFAULT_SKETCH_DEPTH {
            r.extend([a(":depth"), a(g.depth.to_string())]);
        }
        gi.push(l(r));
        gi.push(grammar_sexp(&g.grammar));
        items.push(l(gi));
    }
    if let Some(b) = &m.bounds {
        items.push(l(vec![
            a("bounds"),
            a(":int"),
            a(b.int_lo.to_string()),
            a(b.int_hi.to_string()),
            a(":depth"),
            a(b.depth.to_string()),
        ]));
    }
    l(items)
}

/// Canonical text: base forms, then modules by layer, blank line between forms.
/// Canonical text of golden fragments, one form per module.
pub fn save_goldens(goldens: &[Golden]) -> String {
    let mut out = String::new();
    for (i, g) in goldens.iter().enumerate() {
        let mut items = vec![a("golden"), a(&*g.module)];
        if !g.implementation.is_empty() {
            let order: Vec<Symbol> = g.implementation.keys().cloned().collect();
            items.push(impl_sexp(&g.implementation, &order));
        }
        if let Some(eqs) = &g.ias {
            let mut e = vec![a("ias")];
            e.extend(eqs.iter().map(eq_sexp));
            items.push(l(e));
        }
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&l(items).pretty(0, WIDTH));
        out.push('\n');
    }
    out
}

pub fn save_project(sys: &LayeredSystem) -> String {
    let mut forms = Vec::new();
    if !sys.base_sorts.is_empty() {
        let mut items = vec![a("base-sorts")];
        items.extend(sys.base_sorts.iter().map(sort_sexp));
        forms.push(l(items));
    }
    if !sys.base_functions.is_empty() {
        let mut items = vec![a("base-functions")];
        items.extend(sys.base_functions.iter().map(decl_sexp));
        forms.push(l(items));
    }
    if !sys.base_rules.is_empty() {
        let mut items = vec![a("base-rules")];
        items.extend(sys.base_rules.rules().iter().map(rule_sexp));
        forms.push(l(items));
    }
    if !sys.base_impl.is_empty() {
        let order: Vec<Symbol> =
            sys.base_functions.iter().map(|d| d.name.clone()).filter(|n| sys.base_impl.contains_key(n)).collect();
        let mut f = impl_sexp(&sys.base_impl, &order);
        if let Sexp::List(items, _) = &mut f {
            items[0] = a("base-impl");
        }
        forms.push(f);
    }
    let mut modules: Vec<&ModuleDef> = sys.modules.iter().collect();
    modules.sort_by_key(|m| m.layer);
    forms.extend(modules.into_iter().map(module_sexp));
    let mut out = String::new();
    for (i, f) in forms.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&f.pretty(0, WIDTH));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
; a stack over lists
(base-sorts (sort List (nil) (cons int List)))
(base-functions (head (List) int) (tail (List) List))
(base-rules
  (rule (head (cons hd tl)) hd)
  (rule (tail (cons hd tl)) tl))
(module Stack :layer 0
  (sort Stack (mkStack (l List)))
  (export (emptyStack () Stack) (push (Stack int) Stack) (top (Stack) int) (pop (Stack) Stack))
  (impl
    (define (emptyStack) (mkStack (nil)))
    (define (push st x) (mkStack (cons x (l st)))))
  (iss (assert (= (top (push (emptyStack) x)) x)) (vars (x int :range 0 10)))
  (ias (eq (top (push st x)) x) (eq :guard true (pop (push st x)) st))
  (search-space
    (sketch (top st) (?? I) (grammar (I int (head (l st)) 0)))
    (sketch (pop st) (mkStack (?? M)) (grammar (M List (l st) (tail (l st)) (nil))) :depth 2))
  (bounds :int 0 3 :depth 3))
"#;

    #[test]
    fn loads_and_round_trips() {
        let sys = load_project(SMALL).unwrap();
        assert_eq!(sys.layers(), 1);
        let m = &sys.modules[0];
        assert_eq!(m.implementation.len(), 2);
        assert_eq!(m.missing_functions().iter().map(|s| s.to_string()).collect::<Vec<_>>(), ["top", "pop"]);
        assert_eq!(m.search_space[1].depth, 2);
        assert_eq!(m.bounds.unwrap().int_hi, 3);
        assert_eq!(m.ias.as_ref().unwrap()[1].guard, Term::bool(true));
        let saved = save_project(&sys);
        let again = load_project(&saved).unwrap();
        assert_eq!(again, sys);
        assert_eq!(save_project(&again), saved);
    }

    #[test]
    fn duplicate_symbols_are_rejected() {
        let text = SMALL.replace("(tail (List) List))", "(tail (List) List) (head (List) int))");
        assert!(matches!(load_project(&text), Err(Error::Validation(_))));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match load_project("(module M :layer 0\n  (export (f (int) int))\n  (bogus))") {
            Err(Error::Parse { line: 3, col: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ill_sorted_bodies_are_rejected() {
        let text = SMALL.replace("(mkStack (cons x (l st)))", "(mkStack (cons st (l st)))");
        assert!(matches!(load_project(&text), Err(Error::Validation(_))));
    }
}
