//! Products where only the left operand is structured: its entries vary by
//! at most a bound inside each group of rows (case 1) or each group of
//! columns (case 2). The right operand is arbitrary and may contain `∞`.
//!
//! Pivots are always drawn from the seeded RNG; the configuration's mode
//! only affects the square block algorithm.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bd::config::{auto_rho, BdProductConfig};
use crate::bd::phase2::{run_rounds, within, Perturbation, RoundRecord};
use crate::bitset::{for_each_one, or_into, words_for, BitMatrix};
use crate::error::{Error, Result};
use crate::matrix::ScoreMatrix;
use crate::product::naive_minplus;
use crate::score::{Score, MAX_FINITE};

/// A partition of `0..len` into non-empty groups. The first member of each
/// group is its representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Groups {
    len: usize,
    members: Vec<Vec<usize>>,
}

impl Groups {
    /// Consecutive runs of `size` indices; the last run may be shorter.
    pub fn contiguous(len: usize, size: usize) -> Self {
        let size = size.max(1);
        let members = (0..len.div_ceil(size))
            .map(|g| (g * size..((g + 1) * size).min(len)).collect())
            .collect();
        Groups { len, members }
    }

    pub fn new(len: usize, members: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; len];
        for g in &members {
            if g.is_empty() {
                return Err(Error::InvalidConfig("empty group".into()));
            }
            for &i in g {
                if i >= len || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidConfig(format!("index {i} is out of range or repeated")));
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidConfig("groups do not cover every index".into()));
        }
        Ok(Groups { len, members })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self, g: usize) -> &[usize] {
        &self.members[g]
    }

    fn rep(&self, g: usize) -> usize {
        self.members[g][0]
    }

    fn ranges_all(&self, rec: &RoundRecord, g: usize) -> bool {
        self.members[g].iter().all(|&k| rec.survived(k))
    }
}

fn spread(values: impl Iterator<Item = Score>) -> Option<i64> {
    let (mut lo, mut hi) = (i64::MAX, i64::MIN);
    for v in values {
        let v = v.value()?;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Some(hi.saturating_sub(lo).max(0))
}

fn check_operands(a: &ScoreMatrix, b: &ScoreMatrix) -> Result<()> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    if !a.entries().iter().chain(b.entries()).all(|s| s.in_product_range()) {
        return Err(Error::Overflow);
    }
    Ok(())
}

fn usable_unit(unit: i64) -> bool {
    unit.checked_mul(48).is_some_and(|t| t <= MAX_FINITE)
}

fn random_rounds(
    p: Perturbation<'_>,
    unit: i64,
    cfg: &BdProductConfig,
) -> Result<(ScoreMatrix, Vec<RoundRecord>)> {
    let (rows, cols) = (p.a.rows(), p.b.cols());
    let n = rows.max(cols).max(p.a.cols());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    run_rounds(
        p,
        unit,
        cfg.rho.unwrap_or_else(|| auto_rho(n)),
        cfg.improved_phase2,
        None,
        |_| (rng.gen_range(0..rows), rng.gen_range(0..cols)),
    )
}

/// Case 1: within each group of rows, every column of `a` varies by at most
/// `bound`. `a` must be finite.
pub fn bd_rows_product(
    a: &ScoreMatrix,
    b: &ScoreMatrix,
    groups: &Groups,
    bound: i64,
    cfg: &BdProductConfig,
) -> Result<ScoreMatrix> {
    check_operands(a, b)?;
    if groups.len() != a.rows() {
        return Err(Error::InvalidConfig(format!(
            "row groups cover {} indices, matrix has {} rows",
            groups.len(),
            a.rows()
        )));
    }
    for g in 0..groups.count() {
        for k in 0..a.cols() {
            let s = spread(groups.members(g).iter().map(|&i| a.get(i, k))).unwrap_or(i64::MAX);
            if s > bound {
                return Err(Error::GroupVariation {
                    group: g,
                    index: k,
                    spread: s,
                    bound,
                });
            }
        }
    }
    if !usable_unit(bound.max(0)) || a.rows() == 0 || b.cols() == 0 {
        return naive_minplus(a, b);
    }
    let unit = bound.max(0);
    let (rows, inner, cols) = (a.rows(), a.cols(), b.cols());

    // Phase 1: one exact output row per group.
    let reps: Vec<usize> = (0..groups.count()).map(|g| groups.rep(g)).collect();
    let rep_rows = naive_minplus(&ScoreMatrix::from_fn(reps.len(), inner, |g, k| a.get(reps[g], k)), b)?;
    let mut group_of = vec![0; rows];
    for g in 0..groups.count() {
        for &i in groups.members(g) {
            group_of[i] = g;
        }
    }
    let approx = ScoreMatrix::from_fn(rows, cols, |i, j| rep_rows.get(group_of[i], j));

    let p = Perturbation { a, b, approx: &approx };
    let (mut out, records) = random_rounds(p, unit, cfg)?;

    // Phase 3 over cells (group, k, j).
    let words = words_for(cols);
    let cover_b: Vec<BitMatrix> = records
        .iter()
        .map(|rec| BitMatrix::from_fn(inner, cols, |k, j| within(p.b_entry(rec.pick, k, j), 44 * unit)))
        .collect();
    let fixes: Vec<(usize, usize, Vec<u64>)> = (0..groups.count())
        .into_par_iter()
        .flat_map_iter(|g| {
            let i_star = reps[g];
            let (records, cover_b) = (&records, &cover_b);
            (0..inner).filter_map(move |k| {
                let mut covered = vec![0u64; words];
                for (rec, cb) in records.iter().zip(cover_b) {
                    if rec.survived(k) && within(p.a_entry(rec.pick, i_star, k), 44 * unit) {
                        or_into(&mut covered, cb.row(k));
                    }
                }
                let mut open = vec![0u64; words];
                let mut any = false;
                for j in 0..cols {
                    if covered[j / 64] >> (j % 64) & 1 == 0 && within(p.a_entry((0, j), i_star, k), 8 * unit) {
                        open[j / 64] |= 1 << (j % 64);
                        any = true;
                    }
                }
                any.then_some((g, k, open))
            })
        })
        .collect();
    for (g, k, open) in fixes {
        for &i in groups.members(g) {
            let aik = a.get(i, k);
            for_each_one(&open, |j| out.relax(i, j, aik.add_bounded(b.get(k, j))));
        }
    }
    Ok(out)
}

/// Case 2: within each group of columns, every row of `a` varies by at most
/// `bound`. `b` is first lowered to `min(b, v + 2·bound)` where `v` is the
/// group minimum of each column of `b`; this changes no output entry and
/// bounds the variation of `b` inside each group by `2·bound`.
pub fn bd_cols_product(
    a: &ScoreMatrix,
    b: &ScoreMatrix,
    groups: &Groups,
    bound: i64,
    cfg: &BdProductConfig,
) -> Result<ScoreMatrix> {
    check_operands(a, b)?;
    if groups.len() != a.cols() {
        return Err(Error::InvalidConfig(format!(
            "column groups cover {} indices, matrix has {} columns",
            groups.len(),
            a.cols()
        )));
    }
    for g in 0..groups.count() {
        for i in 0..a.rows() {
            let s = spread(groups.members(g).iter().map(|&k| a.get(i, k))).unwrap_or(i64::MAX);
            if s > bound {
                return Err(Error::GroupVariation {
                    group: g,
                    index: i,
                    spread: s,
                    bound,
                });
            }
        }
    }
    let unit = bound.max(0).saturating_mul(2);
    if !usable_unit(unit) || a.rows() == 0 || b.cols() == 0 {
        return naive_minplus(a, b);
    }
    let (rows, cols) = (a.rows(), b.cols());

    let mut clamped = b.clone();
    for g in 0..groups.count() {
        for j in 0..cols {
            let v = groups.members(g).iter().map(|&k| b.get(k, j)).min().unwrap_or(Score::INF);
            if let Some(v) = v.value() {
                let cap = Score::finite(v + unit);
                for &k in groups.members(g) {
                    clamped.relax(k, j, cap);
                }
            }
        }
    }
    let b = &clamped;

    // Phase 1: one inner index per group.
    let reps: Vec<usize> = (0..groups.count()).map(|g| groups.rep(g)).collect();
    let approx = naive_minplus(
        &ScoreMatrix::from_fn(rows, reps.len(), |i, g| a.get(i, reps[g])),
        &ScoreMatrix::from_fn(reps.len(), cols, |g, j| b.get(reps[g], j)),
    )?;

    let p = Perturbation { a, b, approx: &approx };
    let (mut out, records) = random_rounds(p, unit, cfg)?;

    // Phase 3 over cells (i, group, j).
    let words = words_for(cols);
    let cover_b: Vec<BitMatrix> = records
        .iter()
        .map(|rec| BitMatrix::from_fn(reps.len(), cols, |g, j| within(p.b_entry(rec.pick, reps[g], j), 44 * unit)))
        .collect();
    let fixes: Vec<(usize, usize, Vec<u64>)> = (0..rows)
        .into_par_iter()
        .flat_map_iter(|i| {
            let (records, cover_b, reps) = (&records, &cover_b, &reps);
            (0..reps.len()).filter_map(move |g| {
                let k_star = reps[g];
                let mut covered = vec![0u64; words];
                for (rec, cb) in records.iter().zip(cover_b) {
                    if groups.ranges_all(rec, g) && within(p.a_entry(rec.pick, i, k_star), 44 * unit) {
                        or_into(&mut covered, cb.row(g));
                    }
                }
                let mut open = vec![0u64; words];
                let mut any = false;
                for j in 0..cols {
                    if covered[j / 64] >> (j % 64) & 1 == 0 && within(p.a_entry((0, j), i, k_star), 8 * unit) {
                        open[j / 64] |= 1 << (j % 64);
                        any = true;
                    }
                }
                any.then_some((i, g, open))
            })
        })
        .collect();
    for (i, g, open) in fixes {
        for &k in groups.members(g) {
            let aik = a.get(i, k);
            for_each_one(&open, |j| out.relax(i, j, aik.add_bounded(b.get(k, j))));
        }
    }
    Ok(out)
}
