//! Deterministic pivot selection.
//!
//! For every inner representative `k′` we keep the bipartite graph on
//! (row representative, column representative) pairs whose block triple is
//! approximately relevant and not yet approximately covered. A pivot
//! `(i′, j′)` is scored by the number of 3-walks `i′ → j₁ → i₁ → j′` in each
//! graph (degenerate walks included), summed over `k′`.

use rayon::prelude::*;

use crate::bd::phase2::{within, Perturbation, RoundRecord};
use crate::bd::scheme::BlockScheme;
use crate::bitset::{for_each_one, BitMatrix};
use crate::matrix::ScoreMatrix;
use crate::score::Score;

#[inline]
pub(crate) fn rep_within(s: Score, bound: i64) -> bool {
    s.value().is_some_and(|v| v.unsigned_abs() <= bound as u64)
}

/// `M ∘ (M·Mᵀ·M)` as a row-major count matrix.
///
/// The Gram counts `P = M·Mᵀ` are split into bit planes so each edge `(i, j)`
/// costs a few popcounts of `P_b[i] ∧ Mᵀ[j]`.
pub(crate) fn walk_scores(m: &BitMatrix) -> Vec<u64> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut out = vec![0u64; rows * cols];
    if m.count_ones() == 0 {
        return out;
    }
    let gram = m.gram_counts();
    let top = gram.iter().copied().max().unwrap_or(0);
    let planes: Vec<BitMatrix> = (0..64 - top.leading_zeros())
        .map(|bit| BitMatrix::from_fn(rows, rows, |i, i1| gram[i * rows + i1] >> bit & 1 == 1))
        .collect();
    let mt = BitMatrix::from_fn(cols, rows, |j, i| m.get(i, j));
    for i in 0..rows {
        let dst = &mut out[i * cols..(i + 1) * cols];
        for_each_one(m.row(i), |j| {
            let col = mt.row(j);
            dst[j] = planes
                .iter()
                .enumerate()
                .map(|(bit, p)| {
                    let c: u32 = p.row(i).iter().zip(col).map(|(x, y)| (x & y).count_ones()).sum();
                    u64::from(c) << bit
                })
                .sum();
        });
    }
    out
}

/// Incrementally maintained coverage graphs, one per inner block.
pub(crate) struct DerandState {
    scheme: BlockScheme,
    unit: i64,
    relevant: Vec<BitMatrix>,
    uncovered: Vec<BitMatrix>,
    absorbed: usize,
}

impl DerandState {
    pub fn new(p: Perturbation<'_>, scheme: &BlockScheme, unit: i64) -> Self {
        let s = *scheme;
        let (xs, ys, zs) = (s.row_blocks(), s.inner_blocks(), s.col_blocks());
        let relevant = (0..ys)
            .map(|y| {
                let k = s.rep(y);
                BitMatrix::from_fn(xs, zs, |x, z| {
                    // Aʳ at a pivot in column rep(z) is exactly the triple's
                    // deviation from C̃.
                    within(p.a_entry((0, s.rep(z)), s.rep(x), k), 8 * unit)
                })
            })
            .collect();
        let uncovered = (0..ys).map(|_| BitMatrix::from_fn(xs, zs, |_, _| true)).collect();
        DerandState {
            scheme: s,
            unit,
            relevant,
            uncovered,
            absorbed: 0,
        }
    }

    /// Removes the block pairs covered by rounds not yet seen.
    pub fn absorb(&mut self, history: &[RoundRecord]) {
        let s = self.scheme;
        for rec in &history[self.absorbed..] {
            for (y, unc) in self.uncovered.iter_mut().enumerate() {
                if !rec.survived_all(s.block(y)) {
                    continue;
                }
                let cols_hit = BitMatrix::from_fn(1, s.col_blocks(), |_, z| {
                    rep_within(rec.rep_b.get(y, z), 44 * self.unit)
                });
                for x in 0..s.row_blocks() {
                    if rep_within(rec.rep_a.get(x, y), 44 * self.unit) {
                        for (w, hit) in unc.row_mut(x).iter_mut().zip(cols_hit.row(0)) {
                            *w &= !hit;
                        }
                    }
                }
            }
        }
        self.absorbed = history.len();
    }

    /// The graph for inner block `y`.
    pub fn graph(&self, y: usize) -> BitMatrix {
        let mut g = self.relevant[y].clone();
        for x in 0..g.rows() {
            for (w, u) in g.row_mut(x).iter_mut().zip(self.uncovered[y].row(x)) {
                *w &= u;
            }
        }
        g
    }

    /// The best pivot and its score. Ties go to the smallest `(i′, j′)`.
    pub fn best(&self) -> ((usize, usize), u64) {
        let s = self.scheme;
        let (xs, zs) = (s.row_blocks(), s.col_blocks());
        let totals = (0..self.relevant.len())
            .into_par_iter()
            .map(|y| walk_scores(&self.graph(y)))
            .reduce(
                || vec![0u64; xs * zs],
                |mut acc, part| {
                    acc.iter_mut().zip(part).for_each(|(a, p)| *a += p);
                    acc
                },
            );
        let mut best = (0usize, 0u64);
        for (idx, &score) in totals.iter().enumerate() {
            if score > best.1 {
                best = (idx, score);
            }
        }
        let (x, z) = (best.0 / zs.max(1), best.0 % zs.max(1));
        ((s.rep(x), s.rep(z)), best.1)
    }
}

/// The deterministic pivot for the round following `records`.
pub fn derandomized_pick(
    records: &[RoundRecord],
    approx: &ScoreMatrix,
    a: &ScoreMatrix,
    b: &ScoreMatrix,
    scheme: &BlockScheme,
    unit: i64,
) -> (usize, usize) {
    let mut state = DerandState::new(Perturbation { a, b, approx }, scheme, unit);
    state.absorb(records);
    state.best().0
}
