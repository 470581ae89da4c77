//! Problem files.
//!
//! ```text
//! # comment
//! ring x y
//! order 1,1
//! seed 0
//! trials 8
//! bound 12
//! mu 5..9
//! ideal I
//!   x^3*y + x*y^4 - x^3*y^2
//!   (x^2*y^3 + y^6)/(1 - y)
//! map phi
//!   rel x*y
//!   comp x + y
//! ```
//!
//! Header lines start in column 1. Lines of a block are indented. Every
//! generator is a polynomial or a germ `(g)/(u)` with `u` a unit; the ideal
//! generated by a germ is that of its numerator. An empty ideal block is the
//! zero ideal.

use std::collections::HashSet;
use std::fmt;

use staircase::algebra::parse::parse_germ_at;
use staircase::{Error as CoreError, Germ, OrderSpec, Ring, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Debug, Clone)]
pub struct IdealBlock {
    pub name: String,
    pub generators: Vec<Germ>,
}

#[derive(Debug, Clone)]
pub struct MapBlock {
    pub name: String,
    pub relations: Vec<Germ>,
    pub components: Vec<Germ>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Options {
    pub order: Option<Vec<u32>>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub bound: Option<u32>,
    pub mu: Option<(u32, u32)>,
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub ring: Ring,
    pub options: Options,
    pub ideals: Vec<IdealBlock>,
    pub maps: Vec<MapBlock>,
}

impl Problem {
    pub fn ideal(&self, name: &str) -> Option<&IdealBlock> {
        self.ideals.iter().find(|b| b.name == name)
    }

    pub fn map(&self, name: &str) -> Option<&MapBlock> {
        self.maps.iter().find(|b| b.name == name)
    }
}

/// Parses `a..b` with `a <= b`.
pub fn parse_range(text: &str) -> Result<(u32, u32), String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("expected a range `a..b`, found `{text}`"))?;
    let a: u32 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start `{a}`"))?;
    let b: u32 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

/// Parses comma-separated positive weights.
pub fn parse_weights(text: &str) -> Result<Vec<u32>, String> {
    text.split(',')
        .map(|w| {
            w.trim()
                .parse::<u32>()
                .ok()
                .filter(|w| *w > 0)
                .ok_or_else(|| format!("bad weight `{}`", w.trim()))
        })
        .collect()
}

enum Block {
    None,
    Ideal(usize),
    Map(usize),
}

fn from_core(e: CoreError, line: usize, column: usize) -> ParseError {
    match e {
        CoreError::Parse {
            line,
            column,
            message,
        } => err(line, column, message),
        other => err(line, column, other.to_string()),
    }
}

pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    let mut ring: Option<Ring> = None;
    let mut options = Options::default();
    let mut ideals: Vec<IdealBlock> = Vec::new();
    let mut maps: Vec<MapBlock> = Vec::new();
    let mut names: HashSet<String> = HashSet::new();
    let mut block = Block::None;

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split_once('#').map_or(raw, |(c, _)| c);
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let body = content.trim_end();
        if indent > 0 {
            let ring = ring
                .as_ref()
                .ok_or_else(|| err(line, indent + 1, "expected `ring` before any block"))?;
            let text = &body[indent..];
            let column = indent + 1;
            match block {
                Block::None => return Err(err(line, column, "indented line outside a block")),
                Block::Ideal(i) => {
                    let g = parse_germ_at(ring, text, line, column)
                        .map_err(|e| from_core(e, line, column))?;
                    ideals[i].generators.push(g);
                }
                Block::Map(i) => {
                    let (word, rest) = split_word(text);
                    let offset = column + (text.len() - rest.len());
                    let g = |rest: &str| {
                        if rest.trim().is_empty() {
                            return Err(err(line, offset, "expected a polynomial"));
                        }
                        parse_germ_at(ring, rest, line, offset)
                            .map_err(|e| from_core(e, line, offset))
                    };
                    match word {
                        "rel" => maps[i].relations.push(g(rest)?),
                        "comp" => maps[i].components.push(g(rest)?),
                        _ => {
                            return Err(err(
                                line,
                                column,
                                format!("expected `rel` or `comp`, found `{word}`"),
                            ))
                        }
                    }
                }
            }
            continue;
        }

        let (word, rest) = split_word(body);
        let arg_col = 1 + body.len() - rest.len();
        let arg = rest.trim();
        let need_arg = || {
            if arg.is_empty() {
                Err(err(line, arg_col, format!("`{word}` needs an argument")))
            } else {
                Ok(arg)
            }
        };
        block = Block::None;
        match word {
            "ring" => {
                if ring.is_some() {
                    return Err(err(line, 1, "duplicate `ring` declaration"));
                }
                let vars: Vec<&str> = need_arg()?
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|v| !v.is_empty())
                    .collect();
                for v in &vars {
                    if !is_identifier(v) {
                        return Err(err(line, arg_col, format!("bad variable name `{v}`")));
                    }
                }
                ring = Some(RingSpec::new(vars).map_err(|e| err(line, arg_col, e.to_string()))?);
            }
            "order" => {
                options.order =
                    Some(parse_weights(need_arg()?).map_err(|m| err(line, arg_col, m))?);
            }
            "seed" => options.seed = Some(number(need_arg()?, line, arg_col)?),
            "trials" => options.trials = Some(number(need_arg()?, line, arg_col)?),
            "bound" => options.bound = Some(number(need_arg()?, line, arg_col)?),
            "mu" => {
                options.mu = Some(parse_range(need_arg()?).map_err(|m| err(line, arg_col, m))?);
            }
            "ideal" | "map" => {
                if ring.is_none() {
                    return Err(err(line, 1, "expected `ring` before any block"));
                }
                let name = need_arg()?;
                if !is_identifier(name) {
                    return Err(err(line, arg_col, format!("bad block name `{name}`")));
                }
                if !names.insert(name.to_string()) {
                    return Err(err(line, arg_col, format!("duplicate name `{name}`")));
                }
                if word == "ideal" {
                    ideals.push(IdealBlock {
                        name: name.to_string(),
                        generators: Vec::new(),
                    });
                    block = Block::Ideal(ideals.len() - 1);
                } else {
                    maps.push(MapBlock {
                        name: name.to_string(),
                        relations: Vec::new(),
                        components: Vec::new(),
                    });
                    block = Block::Map(maps.len() - 1);
                }
            }
            _ => return Err(err(line, 1, format!("unknown keyword `{word}`"))),
        }
    }

    let ring = ring.ok_or_else(|| err(1, 1, "missing `ring` declaration"))?;
    if let Some(w) = &options.order {
        if w.len() != ring.arity() {
            return Err(err(
                1,
                1,
                format!(
                    "`order` has {} weights for {} variables",
                    w.len(),
                    ring.arity()
                ),
            ));
        }
    }
    for m in &maps {
        if m.relations.is_empty() && m.components.is_empty() {
            return Err(err(1, 1, format!("map `{}` is empty", m.name)));
        }
    }
    Ok(Problem {
        ring,
        options,
        ideals,
        maps,
    })
}

impl Options {
    pub fn order_spec(&self, arity: usize) -> Result<OrderSpec, String> {
        match &self.order {
            Some(w) if w.len() != arity => Err(format!(
                "order has {} weights for {arity} variables",
                w.len()
            )),
            Some(w) => OrderSpec::new(w.clone()).map_err(|e| e.to_string()),
            None => Ok(OrderSpec::standard(arity)),
        }
    }
}

fn split_word(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn number<T: std::str::FromStr>(s: &str, line: usize, column: usize) -> Result<T, ParseError> {
    s.parse()
        .map_err(|_| err(line, column, format!("expected a number, found `{s}`")))
}
