use std::collections::HashMap;

use super::{CnfTables, FunctionMatrix, ParserConfig};
use crate::bd::{bd_product, BdProductConfig};
use crate::bounded::first_violation;
use crate::error::{Error, Result};
use crate::matrix::ScoreMatrix;
use crate::product::naive_minplus;
use crate::score::Score;

/// Which kernel `dot` uses for its (min,+)-products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DotKernel {
    #[default]
    Bd,
    Naive,
}

/// Counters over the products issued by `dot`. Every block it multiplies
/// lies strictly above the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DotStats {
    pub calls: usize,
    pub bd_products: usize,
    pub naive_products: usize,
    /// Products where an operand failed the BD check and the cubic kernel
    /// ran instead. Always zero under [`DotKernel::Naive`].
    pub fallbacks: usize,
    /// Products skipped because an operand was all `∞`.
    pub skipped: usize,
}

impl DotStats {
    pub fn merge(&mut self, other: &DotStats) {
        self.calls += other.calls;
        self.bd_products += other.bd_products;
        self.naive_products += other.naive_products;
        self.fallbacks += other.fallbacks;
        self.skipped += other.skipped;
    }
}

/// `(M_rows^mids . M_mids^cols)` as one `rows × cols` plane per non-terminal
/// (`None` for `∞̄` planes).
pub fn dot(
    m: &FunctionMatrix,
    rows: &[usize],
    mids: &[usize],
    cols: &[usize],
    t: &CnfTables,
    cfg: &ParserConfig,
    stats: &mut DotStats,
) -> Result<Vec<Option<ScoreMatrix>>> {
    stats.calls += 1;
    let mut out: Vec<Option<ScoreMatrix>> = vec![None; t.nonterminals];
    if rows.is_empty() || mids.is_empty() || cols.is_empty() {
        return Ok(out);
    }
    let bd_cfg = BdProductConfig { w: cfg.w, ..cfg.bd.clone() };
    let mut left: HashMap<usize, Option<(ScoreMatrix, bool)>> = HashMap::new();
    let mut right: HashMap<usize, Option<(ScoreMatrix, bool)>> = HashMap::new();
    let mut products: HashMap<(usize, usize), Option<ScoreMatrix>> = HashMap::new();
    let operand = |x: usize, r: &[usize], c: &[usize]| {
        let b = m.block(x, r, c);
        if b.entries().iter().all(|s| s.is_inf()) {
            None
        } else {
            let ok = first_violation(&b, cfg.w).is_none();
            Some((b, ok))
        }
    };

    for rule in &t.binary {
        let key = (rule.left, rule.right);
        if !products.contains_key(&key) {
            let l = left.entry(rule.left).or_insert_with(|| operand(rule.left, rows, mids));
            let r = right.entry(rule.right).or_insert_with(|| operand(rule.right, mids, cols));
            let p = match (l.as_ref(), r.as_ref()) {
                (Some((a, a_ok)), Some((b, b_ok))) => Some(match cfg.kernel {
                    DotKernel::Bd if *a_ok && *b_ok => {
                        stats.bd_products += 1;
                        bd_product(a, b, &bd_cfg)?
                    }
                    kernel => {
                        if kernel == DotKernel::Bd {
                            stats.fallbacks += 1;
                        }
                        stats.naive_products += 1;
                        naive_minplus(a, b)?
                    }
                }),
                _ => {
                    stats.skipped += 1;
                    None
                }
            };
            products.insert(key, p);
        }
        let Some(p) = &products[&key] else { continue };
        let dst = out[rule.lhs].get_or_insert_with(|| ScoreMatrix::infinite(rows.len(), cols.len()));
        for i in 0..rows.len() {
            for (d, &v) in dst.row_mut(i).iter_mut().zip(p.row(i)) {
                if let Some(v) = v.value() {
                    let v = Score::finite(v + rule.score);
                    if v < *d {
                        *d = v;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Folds `planes` (from [`dot`]) into `m` at `rows × cols`.
pub(crate) fn fold_at(m: &mut FunctionMatrix, rows: &[usize], cols: &[usize], planes: &[Option<ScoreMatrix>]) {
    for (x, p) in planes.iter().enumerate() {
        let Some(p) = p else { continue };
        let dst = m.plane_mut(x);
        for (bi, &i) in rows.iter().enumerate() {
            for (bj, &j) in cols.iter().enumerate() {
                dst.relax(i, j, p.get(bi, bj));
            }
        }
    }
}

/// Entrywise, per-non-terminal minimum of `source` into `target`.
pub fn union_fold(target: &mut FunctionMatrix, source: &FunctionMatrix) -> Result<()> {
    if target.size() != source.size() || target.nonterminals() != source.nonterminals() {
        return Err(Error::DimensionMismatch {
            left_rows: target.size(),
            left_cols: target.nonterminals(),
            right_rows: source.size(),
            right_cols: source.nonterminals(),
        });
    }
    for x in 0..source.nonterminals() {
        target.plane_mut(x).min_assign(source.plane(x));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::ScoredGrammar;

    fn tables(text: &str) -> CnfTables {
        CnfTables::new(&ScoredGrammar::parse_text(text).unwrap()).unwrap()
    }

    #[test]
    fn no_binary_rules_gives_infinity() {
        let t = tables("start S\n0 S -> 'a'");
        let mut m = FunctionMatrix::infinite(3, 1);
        m.set(0, 1, 0, Score::ZERO);
        m.set(1, 2, 0, Score::ZERO);
        let out = dot(&m, &[0], &[1], &[2], &t, &ParserConfig::with_w(1), &mut DotStats::default()).unwrap();
        assert!(out.iter().all(Option::is_none));
    }

    #[test]
    fn scalar_case_is_the_definition() {
        let t = tables("start S\n3 S -> A B\n1 S -> B A\n0 A -> 'a'\n0 B -> 'b'");
        let mut m = FunctionMatrix::infinite(3, 3);
        m.set(0, 1, 1, Score::finite(2)); // A
        m.set(0, 1, 2, Score::finite(7)); // B
        m.set(1, 2, 1, Score::finite(4));
        m.set(1, 2, 2, Score::finite(5));
        let mut stats = DotStats::default();
        let out = dot(&m, &[0], &[1], &[2], &t, &ParserConfig::with_w(0), &mut stats).unwrap();
        // min(3 + 2 + 5, 1 + 7 + 4)
        assert_eq!(out[0].as_ref().unwrap().get(0, 0), 10);
        assert_eq!(stats.fallbacks, 0);
    }

    #[test]
    fn non_bd_blocks_fall_back() {
        let t = tables("start P\n0 P -> S S\n0 S -> S S\n0 S -> 'a'");
        let mut m = FunctionMatrix::infinite(4, 2);
        for (i, j, v) in [(0, 1, 0), (0, 2, 9), (1, 3, 0), (2, 3, 0)] {
            m.set(i, j, 1, Score::finite(v));
        }
        let mut stats = DotStats::default();
        let out = dot(&m, &[0], &[1, 2], &[3], &t, &ParserConfig::with_w(1), &mut stats).unwrap();
        assert_eq!(out[0].as_ref().unwrap().get(0, 0), 0);
        assert_eq!(stats.fallbacks, 1);
    }

    #[test]
    fn union_fold_laws() {
        let mut a = FunctionMatrix::infinite(2, 2);
        let mut b = FunctionMatrix::infinite(2, 2);
        b.set(0, 1, 1, Score::finite(3));
        let before = a.clone();
        union_fold(&mut a, &FunctionMatrix::infinite(2, 2)).unwrap();
        assert_eq!(a, before);
        union_fold(&mut a, &b).unwrap();
        assert_eq!(a, b);
        union_fold(&mut a, &b).unwrap();
        assert_eq!(a, b);
        assert!(union_fold(&mut a, &FunctionMatrix::infinite(3, 2)).is_err());
    }
}
