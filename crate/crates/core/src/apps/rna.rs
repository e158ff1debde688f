//! RNA folding: the largest set of non-crossing matched pairs, through the
//! insertion/deletion distance to the pairing language.

use super::led::{augment, EditModel};
use super::{as_count, Solver};
use crate::error::{Error, Result};
use crate::grammar::{split_symbols, ScoredGrammar, Symbol};
use crate::parser::Engine;

/// Bases `c` and their partners `c'`. Symbol ids are the bases in order,
/// then the partners in the same order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RnaAlphabet {
    bases: Vec<String>,
}

impl RnaAlphabet {
    pub fn new<S: AsRef<str>>(bases: &[S]) -> Result<Self> {
        let bases: Vec<String> = bases.iter().map(|b| b.as_ref().to_string()).collect();
        if bases.is_empty() {
            return Err(Error::InvalidConfig("empty RNA alphabet".into()));
        }
        for (i, b) in bases.iter().enumerate() {
            if b.is_empty() || b.ends_with('\'') || b.contains(char::is_whitespace) {
                return Err(Error::InvalidConfig(format!("bad base name {b:?}")));
            }
            if bases[..i].contains(b) {
                return Err(Error::InvalidConfig(format!("duplicate base {b:?}")));
            }
        }
        Ok(RnaAlphabet { bases })
    }

    /// Parses a header line listing the bases, e.g. `a b` or `ab`.
    pub fn parse_header(line: &str) -> Result<Self> {
        RnaAlphabet::new(&split_symbols(line))
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn symbol(&self, id: usize) -> String {
        let k = self.bases.len();
        if id < k {
            self.bases[id].clone()
        } else {
            format!("{}'", self.bases[id - k])
        }
    }

    pub fn symbols(&self) -> Vec<String> {
        (0..2 * self.bases.len()).map(|i| self.symbol(i)).collect()
    }

    /// The partner of a symbol id.
    pub fn partner(&self, id: usize) -> usize {
        let k = self.bases.len();
        if id < k {
            id + k
        } else {
            id - k
        }
    }

    pub fn pairs(&self, a: usize, b: usize) -> bool {
        self.partner(a) == b
    }

    pub fn encode(&self, line: &str) -> Result<Vec<usize>> {
        let symbols = self.symbols();
        split_symbols(line)
            .into_iter()
            .map(|tok| symbols.iter().position(|s| *s == tok).ok_or(Error::UnknownSymbol(tok)))
            .collect()
    }
}

/// `S → S S | ε | c S c' | c' S c`, binarized through pre-terminals and one
/// helper per pairing rule, then edit-augmented without substitutions.
/// Terminal ids match the alphabet's symbol ids.
pub fn build_rna_grammar(alphabet: &RnaAlphabet) -> ScoredGrammar {
    let mut g = ScoredGrammar::new("S");
    let s = g.start();
    let ids: Vec<usize> = alphabet.symbols().iter().map(|name| g.terminal(name)).collect();
    g.add_rule(s, vec![Symbol::N(s), Symbol::N(s)], 0);
    g.add_rule(s, Vec::new(), 0);
    let pre: Vec<usize> = ids
        .iter()
        .map(|&c| {
            let p = g.nonterminal(&format!("P_{}", alphabet.symbol(c)));
            g.add_rule(p, vec![Symbol::T(c)], 0);
            p
        })
        .collect();
    for &open in &ids {
        let close = alphabet.partner(open);
        let h = g.nonterminal(&format!("H_{}", alphabet.symbol(open)));
        g.add_rule(s, vec![Symbol::N(pre[open]), Symbol::N(h)], 0);
        g.add_rule(h, vec![Symbol::N(s), Symbol::N(pre[close])], 0);
    }
    augment(&g, EditModel::INDEL)
}

pub fn rna_solver(alphabet: &RnaAlphabet) -> Result<Solver> {
    Solver::new(&build_rna_grammar(alphabet), 1)
}

/// `(distance, max_pairs)` for `σ` given as symbol ids.
pub fn rna_fold(sigma: &[usize], alphabet: &RnaAlphabet, engine: Engine) -> Result<(u64, u64)> {
    fold_with(&rna_solver(alphabet)?, sigma, alphabet, engine)
}

pub fn fold_with(solver: &Solver, sigma: &[usize], alphabet: &RnaAlphabet, engine: Engine) -> Result<(u64, u64)> {
    if let Some(&bad) = sigma.iter().find(|&&c| c >= 2 * alphabet.len()) {
        return Err(Error::UnknownSymbol(format!("symbol #{bad}")));
    }
    let d = as_count(solver.score(sigma, engine)?)
        .ok_or_else(|| Error::Internal("pairing language has no finite distance".into()))?;
    let n = sigma.len() as u64;
    if d > n || (n - d) % 2 != 0 {
        return Err(Error::Internal(format!("distance {d} inconsistent with length {n}")));
    }
    Ok((d, (n - d) / 2))
}

/// Maximum number of non-crossing matched pairs by interval DP.
pub fn nussinov_oracle(sigma: &[usize], alphabet: &RnaAlphabet) -> u64 {
    let n = sigma.len();
    // p[i][j] covers σ[i..j].
    let mut p = vec![vec![0u64; n + 1]; n + 1];
    for len in 2..=n {
        for i in 0..=n - len {
            let j = i + len;
            let mut best = p[i + 1][j];
            for k in i + 1..j {
                if alphabet.pairs(sigma[i], sigma[k]) {
                    best = best.max(p[i + 1][k] + 1 + p[k + 1][j]);
                }
            }
            p[i][j] = best;
        }
    }
    if n == 0 {
        0
    } else {
        p[0][n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{classify, GrammarKind};

    fn ab() -> RnaAlphabet {
        RnaAlphabet::new(&["a", "b"]).unwrap()
    }

    /// Largest non-crossing matching by trying every pair set.
    fn brute(sigma: &[usize], alpha: &RnaAlphabet) -> u64 {
        fn go(s: &[usize], alpha: &RnaAlphabet, i: usize, open: &mut Vec<usize>, best: &mut u64, used: u64) {
            if i == s.len() {
                if open.is_empty() {
                    *best = (*best).max(used);
                }
                return;
            }
            go(s, alpha, i + 1, open, best, used);
            open.push(i);
            go(s, alpha, i + 1, open, best, used);
            open.pop();
            if let Some(&top) = open.last() {
                if alpha.pairs(s[top], s[i]) {
                    open.pop();
                    go(s, alpha, i + 1, open, best, used + 1);
                    open.push(top);
                }
            }
        }
        let mut best = 0;
        go(sigma, alpha, 0, &mut Vec::new(), &mut best, 0);
        best
    }

    #[test]
    fn alphabet_symbols() {
        let a = ab();
        assert_eq!(a.symbols(), ["a", "b", "a'", "b'"]);
        assert_eq!(a.encode("aa'b'").unwrap(), [0, 2, 3]);
        assert_eq!(a.encode("a a'").unwrap(), [0, 2]);
        assert!(a.encode("c").is_err());
        assert!(RnaAlphabet::new(&["a", "a"]).is_err());
        assert!(RnaAlphabet::new(&["a'"]).is_err());
    }

    #[test]
    fn nussinov_examples() {
        let a = ab();
        assert_eq!(nussinov_oracle(&a.encode("aa'").unwrap(), &a), 1);
        assert_eq!(nussinov_oracle(&a.encode("a'a").unwrap(), &a), 1);
        assert_eq!(nussinov_oracle(&a.encode("aa").unwrap(), &a), 0);
        assert_eq!(nussinov_oracle(&a.encode("aba'b'").unwrap(), &a), 1);
        assert_eq!(nussinov_oracle(&a.encode("aa'aa'").unwrap(), &a), 2);
    }

    #[test]
    fn nussinov_matches_brute_force_up_to_ten() {
        let a = ab();
        let mut state = 0x9e37_79b9u64;
        for len in 0..=10usize {
            for _ in 0..40 {
                let sigma: Vec<usize> = (0..len)
                    .map(|_| {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        (state >> 33) as usize % 4
                    })
                    .collect();
                assert_eq!(nussinov_oracle(&sigma, &a), brute(&sigma, &a), "{sigma:?}");
            }
        }
    }

    #[test]
    fn grammar_is_almost_cnf_with_terminal_ids_aligned() {
        let a = ab();
        let g = build_rna_grammar(&a);
        assert_eq!(classify(&g).kind, GrammarKind::AlmostCnf);
        for id in 0..4 {
            assert_eq!(g.terminal_name(id), a.symbol(id));
        }
    }

    #[test]
    fn fold_examples() {
        let a = ab();
        let s = rna_solver(&a).unwrap();
        for (text, want) in [("", (0, 0)), ("a a'", (0, 1)), ("aa", (2, 0)), ("aba'b'", (2, 1)), ("aa'aa'", (0, 2))] {
            let sigma = a.encode(text).unwrap();
            for engine in [Engine::Cyk, Engine::Valiant] {
                assert_eq!(fold_with(&s, &sigma, &a, engine).unwrap(), want, "{text:?}");
            }
        }
    }
}
