use super::{CnfTables, FunctionMatrix};
use crate::score::Score;

/// Interval DP: entry `(i, j)` holds `s(X, σ_i … σ_{j−1})` for `i < j`.
pub fn cyk_oracle(t: &CnfTables, sigma: &[usize]) -> FunctionMatrix {
    let n = sigma.len();
    let mut m = FunctionMatrix::infinite(n + 1, t.nonterminals);
    for (i, &c) in sigma.iter().enumerate() {
        for &(x, s) in &t.unary[c] {
            m.relax(i, i + 1, x, Score::finite(s));
        }
    }
    for len in 2..=n {
        for i in 0..=n - len {
            let j = i + len;
            for k in i + 1..j {
                for r in &t.binary {
                    let (l, rr) = (m.get(i, k, r.left), m.get(k, j, r.right));
                    if l.is_inf() || rr.is_inf() {
                        continue;
                    }
                    let v = Score::finite(r.score + l.value().unwrap() + rr.value().unwrap());
                    m.relax(i, j, r.lhs, v);
                }
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{to_cnf, ScoredGrammar};

    fn tables(text: &str) -> (ScoredGrammar, CnfTables) {
        let g = to_cnf(&ScoredGrammar::parse_text(text).unwrap()).unwrap();
        let t = CnfTables::new(&g).unwrap();
        (g, t)
    }

    #[test]
    fn single_terminal() {
        let (g, t) = tables("start S\n0 S -> 'a'");
        let m = cyk_oracle(&t, &g.tokenize("a").unwrap());
        assert_eq!(m.get(0, 1, t.start), 0);
    }

    #[test]
    fn dyck_pair_and_failure() {
        let (g, t) = tables("start S\n0 S -> S S\n0 S -> L R\n0 S -> L T\n0 T -> S R\n0 L -> '('\n0 R -> ')'");
        assert_eq!(cyk_oracle(&t, &g.tokenize("()").unwrap()).get(0, 2, t.start), 0);
        assert!(cyk_oracle(&t, &g.tokenize("((").unwrap()).get(0, 2, t.start).is_inf());
    }

    #[test]
    fn minimum_over_derivations() {
        let (g, t) = tables("start S\n5 S -> A A\n1 S -> A B\n0 A -> 'a'\n2 B -> 'a'");
        assert_eq!(cyk_oracle(&t, &g.tokenize("aa").unwrap()).get(0, 2, t.start), 3);
    }
}
