//! Direct span scoring of almost-CNF grammars, without any conversion.

use super::{classify, GrammarKind, ScoredGrammar, Symbol};
use crate::error::{Error, Result};
use crate::score::Score;

/// `s(X, σ[i..j])` for every `i ≤ j` and non-terminal `X`, indexed
/// `[i][j - i][X]`. Each span is solved by relaxing to a fixpoint, which
/// handles unit rules and binary rules with an empty side.
pub fn span_scores(g: &ScoredGrammar, sigma: &[usize]) -> Result<Vec<Vec<Vec<Option<u64>>>>> {
    let class = classify(g);
    if class.kind == GrammarKind::General {
        return Err(Error::WrongGrammarClass {
            expected: "CNF or almost-CNF",
            found: class,
        });
    }
    let n = sigma.len();
    let nts = g.nonterminal_count();
    let rules: Vec<(usize, &[Symbol], u64)> = g.rules().collect();
    let mut t: Vec<Vec<Vec<Option<u64>>>> = (0..=n).map(|i| vec![vec![None; nts]; n - i + 1]).collect();
    for len in 0..=n {
        for i in 0..=n - len {
            let j = i + len;
            let mut cell = vec![None; nts];
            loop {
                let mut changed = false;
                for &(x, rhs, s) in &rules {
                    let best = match *rhs {
                        [] => (len == 0).then_some(0),
                        [Symbol::T(c)] => (len == 1 && sigma[i] == c).then_some(0),
                        [Symbol::N(y)] => cell[y],
                        [Symbol::N(y), Symbol::N(z)] => (i..=j)
                            .filter_map(|k| {
                                let left = if k == j { cell[y] } else { t[i][k - i][y] };
                                let right = if k == i { cell[z] } else { t[k][j - k][z] };
                                Some(left? + right?)
                            })
                            .min(),
                        _ => None,
                    };
                    if let Some(v) = best.map(|v| v + s) {
                        if cell[x].map_or(true, |old| v < old) {
                            cell[x] = Some(v);
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            t[i][len] = cell;
        }
    }
    Ok(t)
}

/// `s(S, σ)` for an almost-CNF grammar.
pub fn derivation_score(g: &ScoredGrammar, sigma: &[usize]) -> Result<Score> {
    let t = span_scores(g, sigma)?;
    Ok(t[0][sigma.len()][g.start()].map_or(Score::INF, |v| Score::finite(v as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sides_and_units() {
        let g = ScoredGrammar::parse_text("start S\n0 S -> A B\n1 A -> eps\n0 B -> 'b'\n2 S -> B").unwrap();
        let b = g.tokenize("b").unwrap();
        assert_eq!(derivation_score(&g, &b).unwrap(), Score::finite(1));
        assert_eq!(derivation_score(&g, &[]).unwrap(), Score::INF);
    }

    #[test]
    fn nested_dyck() {
        let g = ScoredGrammar::parse_text("start S\n0 S -> S S\n0 S -> L H\n0 H -> S R\n0 S -> eps\n0 L -> '('\n0 R -> ')'")
            .unwrap();
        for (text, finite) in [("", true), ("(())()", true), ("(()", false), (")(", false)] {
            let sigma = g.tokenize(text).unwrap();
            assert_eq!(derivation_score(&g, &sigma).unwrap().is_finite(), finite, "{text}");
        }
    }

    #[test]
    fn rejects_general() {
        let g = ScoredGrammar::parse_text("start S\n0 S -> 'a' S 'b'").unwrap();
        assert!(derivation_score(&g, &[]).is_err());
    }
}
