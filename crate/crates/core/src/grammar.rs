//! Finite regular-tree grammars and their canonical enumeration.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::term::{Node, Symbol, Term};

/// Above this many derivations a grammar is rejected rather than materialized.
pub const DEFAULT_CEILING: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nonterminal {
    pub name: Symbol,
    pub sort: Symbol,
    /// Productions may reference nonterminals through `Hole` nodes.
    pub productions: Vec<Term>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Grammar {
    pub nonterminals: Vec<Nonterminal>,
}

/// One derived term with its canonical sort key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub term: Term,
    /// Production indices in pre-order.
    pub choices: Vec<usize>,
}

impl Derivation {
    pub fn size(&self) -> usize {
        self.term.size()
    }
}

impl Grammar {
    pub fn get(&self, name: &str) -> Option<&Nonterminal> {
        self.nonterminals.iter().find(|n| &*n.name == name)
    }

    /// Sort of every nonterminal, for checking terms that mention them.
    pub fn hole_sorts(&self) -> BTreeMap<Symbol, Symbol> {
        self.nonterminals.iter().map(|n| (n.name.clone(), n.sort.clone())).collect()
    }

    /// Every term derivable from `start` with at most `depth` nested expansions,
    /// ordered by term size, then production indices; duplicates keep their first derivation.
    pub fn expand(&self, start: &str, depth: usize, ceiling: usize) -> Result<Vec<Derivation>> {
        let mut memo = HashMap::new();
        let mut all = self.expand_memo(start, depth, ceiling, &mut memo)?;
        all.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.choices.cmp(&b.choices)));
        let mut seen = std::collections::HashSet::new();
        all.retain(|d| seen.insert(d.term.clone()));
        Ok(all)
    }

    fn expand_memo(
        &self,
        nt: &str,
        depth: usize,
        ceiling: usize,
        memo: &mut HashMap<(Symbol, usize), Vec<Derivation>>,
    ) -> Result<Vec<Derivation>> {
        let rule =
            self.get(nt).ok_or_else(|| Error::Grammar { name: nt.to_string(), msg: "undefined nonterminal".into() })?;
        if let Some(hit) = memo.get(&(rule.name.clone(), depth)) {
            return Ok(hit.clone());
        }
        let mut out = Vec::new();
        if depth > 0 {
            for (k, prod) in rule.productions.iter().enumerate() {
                let holes = prod.holes();
                if holes.is_empty() {
                    out.push(Derivation { term: prod.clone(), choices: vec![k] });
                    continue;
                }
                if depth < 2 {
                    continue;
                }
                let mut parts = Vec::with_capacity(holes.len());
                for h in &holes {
                    parts.push(self.expand_memo(h, depth - 1, ceiling, memo)?);
                }
                for combo in Product::new(parts.iter().map(Vec::len).collect()) {
                    let mut choices = vec![k];
                    let fills: Vec<&Derivation> = combo.iter().enumerate().map(|(j, &c)| &parts[j][c]).collect();
                    for f in &fills {
                        choices.extend_from_slice(&f.choices);
                    }
                    out.push(Derivation { term: fill_in_order(prod, &mut fills.iter().map(|f| &f.term)), choices });
                    if out.len() > ceiling {
                        return Err(Error::GrammarTooLarge { name: nt.to_string(), count: out.len(), ceiling });
                    }
                }
            }
        }
        memo.insert((rule.name.clone(), depth), out.clone());
        Ok(out)
    }
}

/// Replaces holes left to right with successive terms.
pub fn fill_in_order<'a>(t: &Term, fills: &mut impl Iterator<Item = &'a Term>) -> Term {
    match t.node() {
        Node::Hole(_) => fills.next().expect("one fill per hole").clone(),
        Node::App(f, args) => Term::app_sym(f.clone(), args.iter().map(|a| fill_in_order(a, fills)).collect()),
        Node::Ite(c, a, b) => {
            let c = fill_in_order(c, fills);
            let a = fill_in_order(a, fills);
            Term::ite(c, a, fill_in_order(b, fills))
        }
        _ => t.clone(),
    }
}

/// Mixed-radix counter over index tuples, last position fastest.
pub struct Product {
    radices: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Product {
    pub fn new(radices: Vec<usize>) -> Self {
        let next = if radices.contains(&0) { None } else { Some(vec![0; radices.len()]) };
        Product { radices, next }
    }
}

impl Iterator for Product {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.radices[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(cur)
    }
}
