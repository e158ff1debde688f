//! Language edit distance: insertions, deletions and optionally
//! substitutions, each of cost 1.

use std::collections::{HashSet, VecDeque};

use super::{as_count, Solver};
use crate::error::{Error, Result};
use crate::grammar::{classify, GrammarKind, ScoredGrammar, Symbol};
use crate::parser::{cyk_oracle, CnfTables, Engine};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EditModel {
    pub allow_substitution: bool,
}

impl EditModel {
    pub const FULL: EditModel = EditModel {
        allow_substitution: true,
    };
    pub const INDEL: EditModel = EditModel {
        allow_substitution: false,
    };
}

/// Edit augmentation of a CNF grammar. The result is almost-CNF and its
/// score on `σ` is the edit distance from `σ` to the original language.
pub fn build_led_grammar(g: &ScoredGrammar, model: EditModel) -> Result<ScoredGrammar> {
    let class = classify(g);
    if class.kind != GrammarKind::Cnf {
        return Err(Error::WrongGrammarClass {
            expected: "CNF",
            found: class,
        });
    }
    Ok(augment(g, model))
}

/// The augmentation itself; also applied to the almost-CNF RNA grammar.
pub(crate) fn augment(g: &ScoredGrammar, model: EditModel) -> ScoredGrammar {
    let mut out = g.without_rules();
    for (x, rhs, _) in g.rules() {
        out.add_rule(x, rhs.to_vec(), 0);
    }
    let terminals = g.terminal_count();
    if model.allow_substitution {
        for (x, rhs, _) in g.rules() {
            if let [Symbol::T(_)] = rhs {
                for c in 0..terminals {
                    out.add_rule(x, vec![Symbol::T(c)], 1);
                }
            }
        }
    }
    // One pre-terminal per terminal whose only production emits it.
    let emit: Vec<usize> = (0..terminals)
        .map(|c| {
            let name = format!("X_{}", g.terminal_name(c));
            let x = out.fresh(&name);
            out.add_rule(x, vec![Symbol::T(c)], 0);
            x
        })
        .collect();
    let ins = out.fresh("I");
    out.add_rule(ins, Vec::new(), 0);
    for &x in &emit {
        out.add_rule(ins, vec![Symbol::N(x), Symbol::N(ins)], 1);
        out.add_rule(ins, vec![Symbol::N(ins), Symbol::N(x)], 1);
    }
    let has_terminal_rule: Vec<bool> = {
        let mut v = vec![false; out.nonterminal_count()];
        for (x, rhs, _) in out.rules() {
            if let [Symbol::T(_)] = rhs {
                v[x] = true;
            }
        }
        v
    };
    for x in (0..out.nonterminal_count()).filter(|&x| x != ins) {
        out.add_rule(x, vec![Symbol::N(x), Symbol::N(ins)], 0);
        out.add_rule(x, vec![Symbol::N(ins), Symbol::N(x)], 0);
        if has_terminal_rule[x] {
            out.add_rule(x, Vec::new(), 1);
        }
    }
    out
}

/// Solver for edit distances to `L(g)`; `g` is CNF.
pub fn led_solver(g: &ScoredGrammar, model: EditModel) -> Result<Solver> {
    Solver::new(&build_led_grammar(g, model)?, 1)
}

/// Edit distance from `σ` to `L(g)`; `None` if the language is empty.
pub fn led_distance(g: &ScoredGrammar, sigma: &[usize], model: EditModel, engine: Engine) -> Result<Option<u64>> {
    Ok(as_count(led_solver(g, model)?.score(sigma, engine)?))
}

/// Breadth-first search over edit sequences of length at most `max_edits`,
/// testing membership with the CYK table of `g` (CNF). `None` if no string
/// of the language is that close.
pub fn led_search_oracle(g: &ScoredGrammar, sigma: &[usize], model: EditModel, max_edits: u64) -> Result<Option<u64>> {
    let t = CnfTables::new(g)?;
    let member = |s: &[usize]| {
        if s.is_empty() {
            t.start_epsilon.is_some()
        } else {
            cyk_oracle(&t, s).get(0, s.len(), t.start).is_finite()
        }
    };
    let k = g.terminal_count();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([sigma.to_vec()]);
    let mut queue = VecDeque::from([(sigma.to_vec(), 0u64)]);
    while let Some((s, d)) = queue.pop_front() {
        if member(&s) {
            return Ok(Some(d));
        }
        if d == max_edits {
            continue;
        }
        let mut next = Vec::new();
        for p in 0..=s.len() {
            for c in 0..k {
                let mut v = s.clone();
                v.insert(p, c);
                next.push(v);
            }
        }
        for p in 0..s.len() {
            let mut v = s.clone();
            v.remove(p);
            next.push(v);
            if model.allow_substitution {
                for c in (0..k).filter(|&c| c != s[p]) {
                    let mut v = s.clone();
                    v[p] = c;
                    next.push(v);
                }
            }
        }
        for v in next {
            if seen.insert(v.clone()) {
                queue.push_back((v, d + 1));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::to_cnf;

    fn dyck() -> ScoredGrammar {
        let text = "start S\n0 S -> S S\n0 S -> L R\n0 S -> L T\n0 T -> S R\n0 L -> '('\n0 R -> ')'\n0 S -> eps";
        to_cnf(&ScoredGrammar::parse_text(text).unwrap()).unwrap()
    }

    #[test]
    fn augmented_grammar_is_almost_cnf() {
        let g = build_led_grammar(&dyck(), EditModel::FULL).unwrap();
        assert_eq!(classify(&g).kind, GrammarKind::AlmostCnf);
    }

    #[test]
    fn rejects_non_cnf() {
        let g = ScoredGrammar::parse_text("start S\n0 S -> S S\n0 S -> 'a'").unwrap();
        assert!(build_led_grammar(&g, EditModel::FULL).is_err());
    }

    #[test]
    fn small_distances() {
        let g = dyck();
        let cases = [
            ("", EditModel::INDEL, 0),
            ("()", EditModel::INDEL, 0),
            ("((", EditModel::INDEL, 2),
            ("(()", EditModel::INDEL, 1),
            (")(", EditModel::FULL, 2),
            ("((", EditModel::FULL, 1),
        ];
        for (text, model, want) in cases {
            let sigma = g.tokenize(text).unwrap();
            for engine in [Engine::Cyk, Engine::Valiant] {
                assert_eq!(led_distance(&g, &sigma, model, engine).unwrap(), Some(want), "{text:?} {engine:?}");
            }
            assert_eq!(led_search_oracle(&g, &sigma, model, 4).unwrap(), Some(want), "{text:?}");
        }
    }
}
