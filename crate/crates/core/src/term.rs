//! Terms over an operation signature, written as s-expressions:
//! variables are `x0, x1, …` and applications are `(sym arg…)`,
//! e.g. `(p x0 (p x2 x1 x0) x3)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn app(sym: &str, args: Vec<Term>) -> Term {
        Term::App(sym.to_string(), args)
    }

    /// Largest variable index occurring in the term, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::App(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    /// Number of variable slots the term depends on (`max_var + 1`).
    pub fn var_span(&self) -> usize {
        self.max_var().map_or(0, |m| m + 1)
    }

    /// Simultaneous substitution of variables by terms.
    pub fn substitute(&self, subs: &[Term]) -> Result<Term> {
        match self {
            Term::Var(i) => subs.get(*i).cloned().ok_or(Error::EnvTooShort {
                needed: i + 1,
                got: subs.len(),
            }),
            Term::App(sym, args) => {
                let new_args: Result<Vec<Term>> =
                    args.iter().map(|a| a.substitute(subs)).collect();
                Ok(Term::App(sym.clone(), new_args?))
            }
        }
    }

    pub fn parse(input: &str) -> Result<Term> {
        let tokens = tokenize(input)?;
        let mut pos = 0;
        let term = parse_expr(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!(
                "trailing input after term: {:?}",
                &tokens[pos..]
            )));
        }
        Ok(term)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(sym, args) => {
                write!(f, "({sym}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut atom = String::new();
    for c in input.chars() {
        match c {
            '(' | ')' => {
                if !atom.is_empty() {
                    tokens.push(Token::Atom(std::mem::take(&mut atom)));
                }
                tokens.push(if c == '(' { Token::Open } else { Token::Close });
            }
            c if c.is_whitespace() => {
                if !atom.is_empty() {
                    tokens.push(Token::Atom(std::mem::take(&mut atom)));
                }
            }
            c => atom.push(c),
        }
    }
    if !atom.is_empty() {
        tokens.push(Token::Atom(atom));
    }
    if tokens.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    Ok(tokens)
}

fn parse_atom(atom: &str) -> Result<Term> {
    if let Some(idx) = atom.strip_prefix('x') {
        if let Ok(i) = idx.parse::<usize>() {
            return Ok(Term::Var(i));
        }
    }
    Err(Error::Parse(format!(
        "expected a variable like x0, got {atom:?} (operations need parentheses)"
    )))
}

fn parse_expr(tokens: &[Token], pos: &mut usize) -> Result<Term> {
    match tokens.get(*pos) {
        Some(Token::Atom(a)) => {
            *pos += 1;
            parse_atom(a)
        }
        Some(Token::Open) => {
            *pos += 1;
            let sym = match tokens.get(*pos) {
                Some(Token::Atom(a)) => a.clone(),
                other => {
                    return Err(Error::Parse(format!(
                        "expected operation symbol after '(', got {other:?}"
                    )))
                }
            };
            *pos += 1;
            let mut args = Vec::new();
            loop {
                match tokens.get(*pos) {
                    Some(Token::Close) => {
                        *pos += 1;
                        return Ok(Term::App(sym, args));
                    }
                    Some(_) => args.push(parse_expr(tokens, pos)?),
                    None => return Err(Error::Parse("unbalanced parentheses".into())),
                }
            }
        }
        other => Err(Error::Parse(format!("unexpected token {other:?}"))),
    }
}
