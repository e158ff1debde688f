//! Empirical bounded-difference width of a CNF grammar.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ScoredGrammar;
use crate::error::Result;
use crate::parser::{cyk_oracle, CnfTables};

/// Largest `|s(X, σ) − s(X, σx)|` and `|s(X, σ) − s(X, xσ)|` over the given
/// non-empty strings, every terminal `x` and every non-terminal `X`. Pairs
/// with an infinite side are skipped.
fn width_over(g: &ScoredGrammar, strings: impl Iterator<Item = Vec<usize>>) -> Result<i64> {
    let t = CnfTables::new(g)?;
    let mut w = 0i64;
    for sigma in strings {
        let n = sigma.len();
        for x in 0..g.terminal_count() {
            // One table over xσx holds σ, xσ and σx.
            let mut wrapped = Vec::with_capacity(n + 2);
            wrapped.push(x);
            wrapped.extend_from_slice(&sigma);
            wrapped.push(x);
            let m = cyk_oracle(&t, &wrapped);
            for nt in 0..t.nonterminals {
                let Some(base) = m.get(1, n + 1, nt).value() else { continue };
                for (i, j) in [(1, n + 2), (0, n + 1)] {
                    if let Some(v) = m.get(i, j, nt).value() {
                        w = w.max((v - base).abs());
                    }
                }
            }
        }
    }
    Ok(w)
}

/// Width observed on `samples` random strings of length `1..=max_len`.
pub fn bd_width_probe(g: &ScoredGrammar, max_len: usize, samples: usize, seed: u64) -> Result<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = g.terminal_count();
    if k == 0 || max_len == 0 {
        return Ok(0);
    }
    let strings: Vec<Vec<usize>> = (0..samples)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len).map(|_| rng.gen_range(0..k)).collect()
        })
        .collect();
    width_over(g, strings.into_iter())
}

/// Width observed on every string of length `1..=max_len`.
pub fn bd_width_exhaustive(g: &ScoredGrammar, max_len: usize) -> Result<i64> {
    let k = g.terminal_count();
    if k == 0 {
        return Ok(0);
    }
    let strings = (1..=max_len).flat_map(move |len| {
        (0..k.pow(len as u32)).map(move |mut code| {
            (0..len)
                .map(|_| {
                    let c = code % k;
                    code /= k;
                    c
                })
                .collect::<Vec<usize>>()
        })
    });
    width_over(g, strings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::to_cnf;

    fn cnf(text: &str) -> ScoredGrammar {
        to_cnf(&ScoredGrammar::parse_text(text).unwrap()).unwrap()
    }

    #[test]
    fn universal_zero_grammar_has_width_zero() {
        let g = cnf("start S\n0 S -> S S\n0 S -> 'a'\n0 S -> 'b'");
        assert_eq!(bd_width_exhaustive(&g, 5).unwrap(), 0);
        assert_eq!(bd_width_probe(&g, 8, 50, 1).unwrap(), 0);
    }

    #[test]
    fn counting_grammar_has_width_one() {
        // s(S, σ) = number of b's.
        let g = cnf("start S\n0 S -> S S\n0 S -> 'a'\n1 S -> 'b'");
        assert_eq!(bd_width_exhaustive(&g, 4).unwrap(), 1);
    }
}
