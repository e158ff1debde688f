//! Scored context-free grammars: model, classification and conversion to
//! Chomsky normal form.

mod classify;
mod normalize;
mod oracle;
mod probe;
mod text;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub use classify::classify;
pub use normalize::{
    eliminate_epsilon, eliminate_start_rhs, eliminate_units, epsilon_scores, to_cnf, EpsilonFree,
};
pub use oracle::{derivation_score, span_scores};
pub use probe::{bd_width_exhaustive, bd_width_probe};

use crate::error::{Error, Result};

/// Prefix of generated non-terminal names. Parsed grammars may use it too;
/// [`ScoredGrammar::fresh`] skips names that are taken.
pub const FRESH_PREFIX: char = '$';

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    T(usize),
    N(usize),
}

impl Symbol {
    pub fn nonterminal(self) -> Option<usize> {
        match self {
            Symbol::N(x) => Some(x),
            Symbol::T(_) => None,
        }
    }

    pub fn terminal(self) -> Option<usize> {
        match self {
            Symbol::T(c) => Some(c),
            Symbol::N(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Production {
    pub lhs: usize,
    pub rhs: Vec<Symbol>,
    pub score: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GrammarKind {
    Cnf,
    AlmostCnf,
    General,
}

/// The tightest class a grammar belongs to. `witness` is the first
/// production (in rule order) that keeps it out of the next tighter class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrammarClass {
    pub kind: GrammarKind,
    pub witness: Option<Production>,
}

/// A grammar with non-negative integer scores on its productions. Holding at
/// most one production per `(lhs, rhs)`; re-adding keeps the lower score.
#[derive(Clone, PartialEq, Eq)]
pub struct ScoredGrammar {
    nonterminals: Vec<String>,
    terminals: Vec<String>,
    nt_index: HashMap<String, usize>,
    t_index: HashMap<String, usize>,
    start: usize,
    rules: BTreeMap<(usize, Vec<Symbol>), u64>,
}

impl ScoredGrammar {
    pub fn new(start: &str) -> Self {
        let mut g = ScoredGrammar {
            nonterminals: Vec::new(),
            terminals: Vec::new(),
            nt_index: HashMap::new(),
            t_index: HashMap::new(),
            start: 0,
            rules: BTreeMap::new(),
        };
        g.nonterminal(start);
        g
    }

    /// Interns a non-terminal.
    pub fn nonterminal(&mut self, name: &str) -> usize {
        if let Some(&x) = self.nt_index.get(name) {
            return x;
        }
        self.nonterminals.push(name.to_string());
        self.nt_index.insert(name.to_string(), self.nonterminals.len() - 1);
        self.nonterminals.len() - 1
    }

    /// Interns a terminal.
    pub fn terminal(&mut self, name: &str) -> usize {
        if let Some(&c) = self.t_index.get(name) {
            return c;
        }
        self.terminals.push(name.to_string());
        self.t_index.insert(name.to_string(), self.terminals.len() - 1);
        self.terminals.len() - 1
    }

    /// A new non-terminal named after `hint` that collides with nothing.
    pub fn fresh(&mut self, hint: &str) -> usize {
        let base = format!("{FRESH_PREFIX}{hint}");
        let mut name = base.clone();
        let mut n = 1;
        while self.nt_index.contains_key(&name) {
            name = format!("{base}{n}");
            n += 1;
        }
        self.nonterminal(&name)
    }

    /// Adds `lhs → rhs`, keeping the minimum if it already exists. Returns
    /// whether the grammar changed.
    pub fn add_rule(&mut self, lhs: usize, rhs: Vec<Symbol>, score: u64) -> bool {
        assert!(lhs < self.nonterminals.len(), "unknown non-terminal {lhs}");
        for s in &rhs {
            match *s {
                Symbol::N(x) => assert!(x < self.nonterminals.len(), "unknown non-terminal {x}"),
                Symbol::T(c) => assert!(c < self.terminals.len(), "unknown terminal {c}"),
            }
        }
        match self.rules.entry((lhs, rhs)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(score);
                true
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                if score < *e.get() {
                    e.insert(score);
                    true
                } else {
                    false
                }
            }
        }
    }

    /// Same symbol tables and start, no productions.
    pub fn without_rules(&self) -> Self {
        ScoredGrammar {
            rules: BTreeMap::new(),
            ..self.clone()
        }
    }

    pub fn rule_score(&self, lhs: usize, rhs: &[Symbol]) -> Option<u64> {
        self.rules.get(&(lhs, rhs.to_vec())).copied()
    }

    /// Productions ordered by `(lhs, rhs)`.
    pub fn rules(&self) -> impl Iterator<Item = (usize, &[Symbol], u64)> + '_ {
        self.rules.iter().map(|((l, r), &s)| (*l, r.as_slice(), s))
    }

    pub fn productions(&self) -> Vec<Production> {
        self.rules()
            .map(|(lhs, rhs, score)| Production {
                lhs,
                rhs: rhs.to_vec(),
                score,
            })
            .collect()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn set_start(&mut self, start: usize) {
        assert!(start < self.nonterminals.len());
        self.start = start;
    }

    pub fn nonterminal_count(&self) -> usize {
        self.nonterminals.len()
    }

    pub fn terminal_count(&self) -> usize {
        self.terminals.len()
    }

    pub fn nonterminal_name(&self, x: usize) -> &str {
        &self.nonterminals[x]
    }

    pub fn terminal_name(&self, c: usize) -> &str {
        &self.terminals[c]
    }

    pub fn nonterminal_id(&self, name: &str) -> Option<usize> {
        self.nt_index.get(name).copied()
    }

    pub fn terminal_id(&self, name: &str) -> Option<usize> {
        self.t_index.get(name).copied()
    }

    /// Splits an input line into terminals. Lines containing whitespace are
    /// split on it; otherwise every character is a symbol, with a trailing
    /// `'` attached to the character before it (`aa'` is `a`, `a'`).
    pub fn tokenize(&self, line: &str) -> Result<Vec<usize>> {
        split_symbols(line)
            .into_iter()
            .map(|tok| self.terminal_id(&tok).ok_or(Error::UnknownSymbol(tok)))
            .collect()
    }

    pub fn format_rule(&self, lhs: usize, rhs: &[Symbol], score: u64) -> String {
        let mut s = format!("{score} {} ->", self.nonterminals[lhs]);
        if rhs.is_empty() {
            s.push_str(" eps");
        }
        for sym in rhs {
            match *sym {
                Symbol::N(x) => {
                    s.push(' ');
                    s.push_str(&self.nonterminals[x]);
                }
                Symbol::T(c) => {
                    s.push_str(" '");
                    s.push_str(&self.terminals[c]);
                    s.push('\'');
                }
            }
        }
        s
    }
}

/// Symbol tokens of an input line; see [`ScoredGrammar::tokenize`].
pub fn split_symbols(line: &str) -> Vec<String> {
    let line = line.trim();
    if line.contains(char::is_whitespace) {
        return line.split_whitespace().map(str::to_string).collect();
    }
    let mut out: Vec<String> = Vec::new();
    for ch in line.chars() {
        match out.last_mut() {
            Some(last) if ch == '\'' => last.push(ch),
            _ => out.push(ch.to_string()),
        }
    }
    out
}

impl fmt::Debug for ScoredGrammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
