//! Line format:
//!
//! ```text
//! start S
//! # comment
//! 0 S -> S S
//! 0 S -> eps
//! 1 S -> 'a' S 'b'
//! ```

use super::{ScoredGrammar, Symbol};
use crate::error::{Error, Result};

fn strip_comment(line: &str) -> Vec<&str> {
    line.split_whitespace().take_while(|tok| !tok.starts_with('#')).collect()
}

fn quoted(tok: &str) -> Option<&str> {
    (tok.len() >= 2 && tok.starts_with('\'') && tok.ends_with('\'')).then(|| &tok[1..tok.len() - 1])
}

fn nonterminal_name(tok: &str, line: usize) -> Result<&str> {
    if tok == "eps" || tok == "->" || tok.starts_with('\'') {
        return Err(Error::format(line, format!("`{tok}` is not a non-terminal name")));
    }
    Ok(tok)
}

impl ScoredGrammar {
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut grammar: Option<ScoredGrammar> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let toks = strip_comment(raw);
            if toks.is_empty() {
                continue;
            }
            let Some(g) = grammar.as_mut() else {
                match toks.as_slice() {
                    ["start", name] => grammar = Some(ScoredGrammar::new(nonterminal_name(name, line)?)),
                    _ => return Err(Error::format(line, "expected `start <non-terminal>`")),
                }
                continue;
            };
            if toks.len() < 3 || toks[2] != "->" {
                return Err(Error::format(line, "expected `<score> <lhs> -> <symbols>`"));
            }
            let score: u64 = toks[0]
                .parse()
                .map_err(|_| Error::format(line, format!("bad score `{}`", toks[0])))?;
            let lhs = g.nonterminal(nonterminal_name(toks[1], line)?);
            let body = &toks[3..];
            let rhs = match body {
                [] => return Err(Error::format(line, "empty right-hand side; write `eps`")),
                ["eps"] => Vec::new(),
                _ => body
                    .iter()
                    .map(|tok| match quoted(tok) {
                        Some(t) if !t.is_empty() => Ok(Symbol::T(g.terminal(t))),
                        Some(_) => Err(Error::format(line, "empty terminal")),
                        None => Ok(Symbol::N(g.nonterminal(nonterminal_name(tok, line)?))),
                    })
                    .collect::<Result<_>>()?,
            };
            g.add_rule(lhs, rhs, score);
        }
        grammar.ok_or_else(|| Error::format(1, "missing `start` line"))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("start {}\n", self.nonterminal_name(self.start()));
        for (lhs, rhs, score) in self.rules() {
            s.push_str(&self.format_rule(lhs, rhs, score));
            s.push('\n');
        }
        s
    }
}
