//! S-expressions with source positions, plus a pretty printer.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Sexp {
    pub fn atom(s: impl Into<String>) -> Sexp {
        Sexp::Atom(s.into(), Pos::default())
    }

    pub fn list(items: Vec<Sexp>) -> Sexp {
        Sexp::List(items, Pos::default())
    }

    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            _ => None,
        }
    }

    /// First element of a list when it is an atom.
    pub fn head(&self) -> Option<&str> {
        self.as_list().and_then(|l| l.first()).and_then(Sexp::as_atom)
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        let p = self.pos();
        Error::Parse { line: p.line, col: p.col, msg: msg.into() }
    }

    fn flat_len(&self) -> usize {
        match self {
            Sexp::Atom(s, _) => s.len(),
            Sexp::List(items, _) => 1 + items.iter().map(|i| i.flat_len() + 1).sum::<usize>(),
        }
    }

    /// Multi-line rendering: lists wider than `width` break one child per line.
    pub fn pretty(&self, indent: usize, width: usize) -> String {
        let mut out = String::new();
        self.pretty_into(&mut out, indent, width);
        out
    }

    fn pretty_into(&self, out: &mut String, indent: usize, width: usize) {
        match self {
            Sexp::List(items, _) if indent + self.flat_len() > width && items.len() > 1 => {
                out.push('(');
                // keep the head and any leading atoms (name, :layer k) on the first line
                let lead = items.iter().take_while(|i| matches!(i, Sexp::Atom(..))).count().max(1);
                for (i, item) in items[..lead].iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    item.pretty_into(out, indent + 1, width);
                }
                for item in &items[lead..] {
                    out.push('\n');
                    out.push_str(&" ".repeat(indent + 2));
                    item.pretty_into(out, indent + 2, width);
                }
                out.push(')');
            }
            _ => out.push_str(&self.to_string()),
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(s, _) => write!(f, "{s}"),
            Sexp::List(items, _) => {
                write!(f, "(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Parses every top-level form. `;` starts a comment running to end of line.
pub fn parse(text: &str) -> Result<Vec<Sexp>> {
    let mut stack: Vec<(Vec<Sexp>, Pos)> = Vec::new();
    let mut top = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    let err = |line, col, msg: &str| Error::Parse { line, col, msg: msg.to_string() };
    while let Some(&c) = chars.peek() {
        let here = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
                continue;
            }
            '(' => {
                chars.next();
                stack.push((Vec::new(), here));
            }
            ')' => {
                chars.next();
                let (items, pos) = stack.pop().ok_or_else(|| err(line, col, "unexpected `)`"))?;
                let node = Sexp::List(items, pos);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => top.push(node),
                }
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    s.push(c);
                    chars.next();
                    col += 1;
                }
                let node = Sexp::Atom(s, here);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => top.push(node),
                }
                continue;
            }
        }
        col += 1;
    }
    if let Some((_, pos)) = stack.last() {
        return Err(err(pos.line, pos.col, "unclosed `(`"));
    }
    Ok(top)
}
