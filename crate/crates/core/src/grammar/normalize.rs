//! Almost-CNF to CNF, preserving scores of every non-empty string.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{classify, GrammarKind, ScoredGrammar, Symbol};
use crate::error::{Error, Result};

fn require_almost_cnf(g: &ScoredGrammar) -> Result<()> {
    let class = classify(g);
    if class.kind == GrammarKind::General {
        return Err(Error::WrongGrammarClass {
            expected: "CNF or almost-CNF",
            found: class,
        });
    }
    Ok(())
}

fn relax_round(g: &ScoredGrammar, s: &mut [Option<u64>]) -> bool {
    let mut changed = false;
    for (x, rhs, score) in g.rules() {
        let cand = match rhs {
            [] => Some(score),
            [Symbol::N(y)] => s[*y].map(|v| v + score),
            [Symbol::N(y), Symbol::N(z)] => s[*y].zip(s[*z]).map(|(a, b)| a + b + score),
            _ => None,
        };
        if let Some(c) = cand {
            if s[x].is_none_or(|v| c < v) {
                s[x] = Some(c);
                changed = true;
            }
        }
    }
    changed
}

/// Minimum score of a derivation `X →* ε` for every non-terminal.
///
/// Runs `|N|` relaxation rounds and then checks that one more round changes
/// nothing.
pub fn epsilon_scores(g: &ScoredGrammar) -> Result<Vec<Option<u64>>> {
    let mut s = vec![None; g.nonterminal_count()];
    for _ in 0..g.nonterminal_count() {
        relax_round(g, &mut s);
    }
    if relax_round(g, &mut s) {
        return Err(Error::Internal("epsilon scores not settled after |N| rounds".into()));
    }
    Ok(s)
}

/// An ε-free grammar together with the start symbol's ε score before the
/// ε-productions were removed.
#[derive(Debug, Clone)]
pub struct EpsilonFree {
    pub grammar: ScoredGrammar,
    pub start_epsilon: Option<u64>,
}

pub fn eliminate_epsilon(g: &ScoredGrammar) -> Result<EpsilonFree> {
    require_almost_cnf(g)?;
    let eps = epsilon_scores(g)?;
    let mut out = g.without_rules();
    for (x, rhs, score) in g.rules() {
        if !rhs.is_empty() {
            out.add_rule(x, rhs.to_vec(), score);
        }
    }
    for (x, rhs, score) in g.rules() {
        if let [Symbol::N(l), Symbol::N(r)] = *rhs {
            // Drop a nullable side, keep the other.
            for (gone, kept) in [(l, r), (r, l)] {
                if let Some(e) = eps[gone] {
                    if kept != x {
                        out.add_rule(x, vec![Symbol::N(kept)], score + e);
                    }
                }
            }
        }
    }
    Ok(EpsilonFree {
        grammar: out,
        start_epsilon: eps[g.start()],
    })
}

/// Fresh start `S′ → S` (score 0), plus `S′ → ε` when the original grammar
/// derived the empty string.
pub fn eliminate_start_rhs(g: &ScoredGrammar, start_epsilon: Option<u64>) -> ScoredGrammar {
    let mut out = g.clone();
    let hint = format!("{}'", g.nonterminal_name(g.start()).trim_start_matches(super::FRESH_PREFIX));
    let s2 = out.fresh(&hint);
    out.add_rule(s2, vec![Symbol::N(g.start())], 0);
    if let Some(e) = start_epsilon {
        out.add_rule(s2, Vec::new(), e);
    }
    out.set_start(s2);
    out
}

/// Unit-path distances `d[w][x]` over edges `X → Y`.
fn unit_distances(g: &ScoredGrammar) -> Vec<Vec<Option<u64>>> {
    let n = g.nonterminal_count();
    let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    for (x, rhs, score) in g.rules() {
        if let [Symbol::N(y)] = *rhs {
            adj[x].push((y, score));
        }
    }
    (0..n)
        .map(|src| {
            let mut d = vec![None; n];
            let mut heap = BinaryHeap::from([Reverse((0u64, src))]);
            while let Some(Reverse((dist, v))) = heap.pop() {
                if d[v].is_some() {
                    continue;
                }
                d[v] = Some(dist);
                for &(u, w) in &adj[v] {
                    if d[u].is_none() {
                        heap.push(Reverse((dist + w, u)));
                    }
                }
            }
            d
        })
        .collect()
}

pub fn eliminate_units(g: &ScoredGrammar) -> ScoredGrammar {
    let dist = unit_distances(g);
    let mut out = g.without_rules();
    for (x, rhs, score) in g.rules() {
        match rhs {
            [Symbol::N(_)] => {}
            [] => {
                out.add_rule(x, Vec::new(), score);
            }
            _ => {
                for (w, d) in dist.iter().enumerate() {
                    if let Some(d) = d[x] {
                        out.add_rule(w, rhs.to_vec(), d + score);
                    }
                }
            }
        }
    }
    out
}

/// The full conversion; the result classifies as CNF.
pub fn to_cnf(g: &ScoredGrammar) -> Result<ScoredGrammar> {
    let free = eliminate_epsilon(g)?;
    let lifted = eliminate_start_rhs(&free.grammar, free.start_epsilon);
    let out = eliminate_units(&lifted);
    let class = classify(&out);
    if class.kind != GrammarKind::Cnf {
        return Err(Error::Internal(format!("conversion produced {class:?}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> ScoredGrammar {
        ScoredGrammar::parse_text(text).unwrap()
    }

    fn score(g: &ScoredGrammar, lhs: &str, rhs: &[Symbol]) -> Option<u64> {
        g.rule_score(g.nonterminal_id(lhs).unwrap(), rhs)
    }

    #[test]
    fn nullable_side_becomes_a_unit_rule() {
        let g = parse("start S\n0 S -> A B\n1 A -> eps\n0 B -> 'b'");
        let out = eliminate_epsilon(&g).unwrap();
        let b = out.grammar.nonterminal_id("B").unwrap();
        assert_eq!(score(&out.grammar, "S", &[Symbol::N(b)]), Some(1));
        assert!(out.grammar.rules().all(|(_, rhs, _)| !rhs.is_empty()));
        assert_eq!(out.start_epsilon, None);
    }

    #[test]
    fn epsilon_free_input_is_unchanged() {
        let g = parse("start S\n0 S -> A B\n0 A -> 'a'\n0 B -> 'b'");
        assert_eq!(eliminate_epsilon(&g).unwrap().grammar, g);
    }

    #[test]
    fn chain_needs_two_rounds() {
        let g = parse("start A\n2 A -> B\n3 B -> eps");
        let mut s = vec![None; 2];
        relax_round(&g, &mut s);
        // Rules are visited A before B, so the first round only sees B.
        assert_eq!(s, [None, Some(3)]);
        relax_round(&g, &mut s);
        assert_eq!(s, [Some(5), Some(3)]);
        assert_eq!(epsilon_scores(&g).unwrap(), [Some(5), Some(3)]);
    }

    #[test]
    fn start_lift_records_epsilon() {
        let g = parse("start S\n0 S -> S S\n0 S -> eps\n0 S -> 'a'");
        let free = eliminate_epsilon(&g).unwrap();
        assert_eq!(free.start_epsilon, Some(0));
        let lifted = eliminate_start_rhs(&free.grammar, free.start_epsilon);
        assert_eq!(lifted.nonterminal_name(lifted.start()), "$S'");
        assert_eq!(lifted.rule_score(lifted.start(), &[]), Some(0));
        assert_eq!(lifted.rule_score(lifted.start(), &[Symbol::N(0)]), Some(0));
    }

    #[test]
    fn start_lift_without_epsilon() {
        let g = parse("start S\n0 S -> 'a'");
        let lifted = eliminate_start_rhs(&g, None);
        assert_eq!(lifted.rule_count(), 2);
        let twice = eliminate_start_rhs(&lifted, None);
        assert_eq!(twice.nonterminal_name(twice.start()), "$S''");
    }

    #[test]
    fn zero_weight_chain() {
        let g = parse("start T\n0 T -> S\n0 S -> 'a'");
        let out = eliminate_units(&g);
        assert_eq!(out.to_text(), "start T\n0 T -> 'a'\n0 S -> 'a'\n");
    }

    #[test]
    fn unit_cycle() {
        let g = parse("start A\n1 A -> B\n1 B -> A\n0 B -> 'b'");
        let out = eliminate_units(&g);
        assert_eq!(out.to_text(), "start A\n1 A -> 'b'\n0 B -> 'b'\n");
    }

    #[test]
    fn rejects_general_grammars() {
        let g = parse("start S\n0 S -> 'a' S 'b'");
        assert!(matches!(to_cnf(&g), Err(Error::WrongGrammarClass { .. })));
    }

    #[test]
    fn conversion_output_is_cnf() {
        let g = parse("start S\n0 S -> S S\n0 S -> eps\n0 S -> A S2\n0 S2 -> S B\n0 A -> 'a'\n0 B -> 'b'");
        let out = to_cnf(&g).unwrap();
        assert_eq!(classify(&out).kind, GrammarKind::Cnf);
        assert_eq!(out.rule_score(out.start(), &[]), Some(0));
    }
}
