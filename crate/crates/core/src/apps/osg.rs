//! Optimal stack generation: print a string with push, emit and pop, ending
//! with an empty stack, in as few operations as possible.

use std::collections::{HashSet, VecDeque};

use super::{as_count, Solver};
use crate::error::{Error, Result};
use crate::grammar::{ScoredGrammar, Symbol};
use crate::parser::Engine;

/// Width handed to the parser for the OSG grammar.
pub const OSG_WIDTH: i64 = 5;

/// `S` is the empty stack, `X_c` a stack topped by `c`, `N_c` a pending
/// emit. Terminal ids follow the order of `alphabet`.
pub fn build_osg_grammar<S: AsRef<str>>(alphabet: &[S]) -> Result<ScoredGrammar> {
    if alphabet.is_empty() {
        return Err(Error::InvalidConfig("empty OSG alphabet".into()));
    }
    let mut g = ScoredGrammar::new("S");
    let s = g.start();
    let ids: Vec<usize> = alphabet.iter().map(|c| g.terminal(c.as_ref())).collect();
    if g.terminal_count() != alphabet.len() {
        return Err(Error::InvalidConfig("duplicate OSG symbol".into()));
    }
    let top: Vec<usize> = alphabet.iter().map(|c| g.nonterminal(&format!("X_{}", c.as_ref()))).collect();
    let emit: Vec<usize> = alphabet.iter().map(|c| g.nonterminal(&format!("N_{}", c.as_ref()))).collect();
    g.add_rule(s, Vec::new(), 0);
    for (c, &x) in top.iter().enumerate() {
        g.add_rule(s, vec![Symbol::N(x), Symbol::N(s)], 1);
        g.add_rule(x, vec![Symbol::N(emit[c]), Symbol::N(x)], 0);
        g.add_rule(x, Vec::new(), 1);
        g.add_rule(emit[c], vec![Symbol::T(ids[c])], 1);
        for &other in &top {
            g.add_rule(x, vec![Symbol::N(other), Symbol::N(x)], 1);
            g.add_rule(emit[c], vec![Symbol::N(other)], 1);
        }
    }
    Ok(g)
}

pub fn osg_solver<S: AsRef<str>>(alphabet: &[S]) -> Result<Solver> {
    Solver::new(&build_osg_grammar(alphabet)?, OSG_WIDTH)
}

/// Minimum number of operations; `σ` holds ids into `alphabet`.
pub fn osg_min_ops<S: AsRef<str>>(sigma: &[usize], alphabet: &[S], engine: Engine) -> Result<u64> {
    let solver = osg_solver(alphabet)?;
    ops_with(&solver, sigma, engine)
}

pub fn ops_with(solver: &Solver, sigma: &[usize], engine: Engine) -> Result<u64> {
    as_count(solver.score(sigma, engine)?).ok_or_else(|| Error::Internal("OSG string not printable".into()))
}

/// Breadth-first search over `(printed, stack)` with unit-cost operations
/// and stack depth at most `depth_cap` (default `|σ| + 1`).
pub fn osg_search_oracle(sigma: &[usize], alphabet_len: usize, depth_cap: Option<usize>) -> Result<u64> {
    let cap = depth_cap.unwrap_or(sigma.len() + 1);
    let start = (0usize, Vec::<usize>::new());
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0u64)]);
    while let Some(((printed, stack), d)) = queue.pop_front() {
        if printed == sigma.len() && stack.is_empty() {
            return Ok(d);
        }
        let mut next = Vec::new();
        if stack.len() < cap {
            for c in 0..alphabet_len {
                let mut s = stack.clone();
                s.push(c);
                next.push((printed, s));
            }
        }
        if let Some(&top) = stack.last() {
            if printed < sigma.len() && sigma[printed] == top {
                next.push((printed + 1, stack.clone()));
            }
            next.push((printed, stack[..stack.len() - 1].to_vec()));
        }
        for state in next {
            if seen.insert(state.clone()) {
                queue.push_back((state, d + 1));
            }
        }
    }
    Err(Error::SearchExhausted { cap })
}
