use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bd::config::{Mode, ResolvedConfig};
use crate::bd::derandomize::DerandState;
use crate::bd::scheme::BlockScheme;
use crate::error::{Error, Result};
use crate::matrix::ScoreMatrix;
use crate::product::small_entry_minplus;
use crate::score::Score;

/// What Phase 3 and the derandomized pivot choice need to know about one
/// perturbation round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundRecord {
    /// `(iʳ, jʳ)`.
    pub pick: (usize, usize),
    /// `Aʳ` at representative pairs `(i′, k′)`, clamped to `∞` beyond `48ΔW`.
    /// Empty for the structured generalizations.
    pub rep_a: ScoreMatrix,
    /// `Bʳ` at representative pairs `(k′, j′)`, clamped likewise.
    pub rep_b: ScoreMatrix,
    /// Inner indices kept by the surviving-k filter, if it was enabled.
    pub survivors: Option<Vec<bool>>,
}

impl RoundRecord {
    #[inline]
    pub fn survived(&self, k: usize) -> bool {
        self.survivors.as_ref().map_or(true, |s| s[k])
    }

    /// A round only covers a block of inner indices if none was filtered out.
    pub fn survived_all(&self, ks: Range<usize>) -> bool {
        self.survivors
            .as_ref()
            .map_or(true, |s| s[ks].iter().all(|&x| x))
    }
}

/// Marker for an entry involving `∞`.
pub(crate) const FAR: i128 = i128::MAX;

#[inline]
pub(crate) fn within(x: i128, bound: i64) -> bool {
    x != FAR && x.abs() <= bound as i128
}

#[inline]
fn wide(s: Score) -> Option<i128> {
    s.value().map(i128::from)
}

/// Entries of the perturbed matrices `Aʳ`, `Bʳ`, computed on demand from the
/// inputs, `C̃` and a pivot.
#[derive(Clone, Copy)]
pub(crate) struct Perturbation<'a> {
    pub a: &'a ScoreMatrix,
    pub b: &'a ScoreMatrix,
    pub approx: &'a ScoreMatrix,
}

impl Perturbation<'_> {
    /// `A[i][k] + B[k][jʳ] − C̃[i][jʳ]`.
    #[inline]
    pub fn a_entry(&self, (_, jr): (usize, usize), i: usize, k: usize) -> i128 {
        (|| Some(wide(self.a.get(i, k))? + wide(self.b.get(k, jr))? - wide(self.approx.get(i, jr))?))()
            .unwrap_or(FAR)
    }

    /// `B[k][j] − B[k][jʳ] + C̃[iʳ][jʳ] − C̃[iʳ][j]`.
    #[inline]
    pub fn b_entry(&self, (ir, jr): (usize, usize), k: usize, j: usize) -> i128 {
        (|| {
            Some(
                wide(self.b.get(k, j))? - wide(self.b.get(k, jr))? + wide(self.approx.get(ir, jr))?
                    - wide(self.approx.get(ir, j))?,
            )
        })()
        .unwrap_or(FAR)
    }

    fn clamped(x: i128, bound: i64) -> Score {
        if within(x, bound) {
            Score::from_raw(x as i64)
        } else {
            Score::INF
        }
    }

    /// The surviving-k test: `(iʳ, k, jʳ)` is close to `C̃` and no earlier
    /// round weakly covered it.
    fn survives(&self, history: &[RoundRecord], pick: (usize, usize), k: usize, unit: i64) -> bool {
        let (ir, jr) = pick;
        within(self.a_entry(pick, ir, k), 20 * unit)
            && !history.iter().any(|rec| {
                rec.survived(k)
                    && within(self.a_entry(rec.pick, ir, k), 40 * unit)
                    && within(self.b_entry(rec.pick, k, jr), 40 * unit)
            })
    }
}

/// Runs `rho` perturbation rounds. `pick` chooses each round's pivot from
/// the history so far. Representative slices are recorded when `scheme` is
/// given.
pub(crate) fn run_rounds(
    p: Perturbation<'_>,
    unit: i64,
    rho: usize,
    improved: bool,
    scheme: Option<&BlockScheme>,
    mut pick: impl FnMut(&[RoundRecord]) -> (usize, usize),
) -> Result<(ScoreMatrix, Vec<RoundRecord>)> {
    let (rows, inner, cols) = (p.a.rows(), p.a.cols(), p.b.cols());
    let bound = 48 * unit;
    let mut partial = ScoreMatrix::infinite(rows, cols);
    let mut records: Vec<RoundRecord> = Vec::with_capacity(rho);
    if rows == 0 || cols == 0 || inner == 0 {
        return Ok((partial, records));
    }

    for _ in 0..rho {
        let pivot = pick(&records);
        let (ir, jr) = pivot;
        let survivors = improved.then(|| {
            (0..inner)
                .map(|k| p.survives(&records, pivot, k, unit))
                .collect::<Vec<bool>>()
        });
        let ks: Vec<usize> = match &survivors {
            Some(s) => (0..inner).filter(|&k| s[k]).collect(),
            None => (0..inner).collect(),
        };

        if !ks.is_empty() {
            let ar = ScoreMatrix::from_fn(rows, ks.len(), |i, t| {
                Perturbation::clamped(p.a_entry(pivot, i, ks[t]), bound)
            });
            let br = ScoreMatrix::from_fn(ks.len(), cols, |t, j| {
                Perturbation::clamped(p.b_entry(pivot, ks[t], j), bound)
            });
            let cr = small_entry_minplus(&ar, &br, bound)?;
            let pivot_value = wide(p.approx.get(ir, jr));
            for i in 0..rows {
                let left = wide(p.approx.get(i, jr));
                for j in 0..cols {
                    let Some(v) = wide(cr.get(i, j)) else { continue };
                    let shift = left
                        .zip(pivot_value)
                        .zip(wide(p.approx.get(ir, j)))
                        .map(|((l, m), r)| l - m + r)
                        .ok_or_else(|| Error::Internal("finite round entry next to inf".into()))?;
                    let total = i64::try_from(v + shift).map_err(|_| Error::Overflow)?;
                    partial.relax(i, j, Score::finite(total));
                }
            }
        }

        let (rep_a, rep_b) = match scheme {
            Some(s) => (
                ScoreMatrix::from_fn(s.row_blocks(), s.inner_blocks(), |x, y| {
                    Perturbation::clamped(p.a_entry(pivot, s.rep(x), s.rep(y)), bound)
                }),
                ScoreMatrix::from_fn(s.inner_blocks(), s.col_blocks(), |y, z| {
                    Perturbation::clamped(p.b_entry(pivot, s.rep(y), s.rep(z)), bound)
                }),
            ),
            None => (ScoreMatrix::infinite(0, 0), ScoreMatrix::infinite(0, 0)),
        };
        records.push(RoundRecord {
            pick: pivot,
            rep_a,
            rep_b,
            survivors,
        });
    }
    Ok((partial, records))
}

/// Phase 2 of the block algorithm: `ρ` rounds of perturbation followed by a
/// small-entry product. The result never undercuts the true product.
pub fn phase2_rounds(
    a: &ScoreMatrix,
    b: &ScoreMatrix,
    approx: &ScoreMatrix,
    cfg: &ResolvedConfig,
    scheme: &BlockScheme,
) -> Result<(ScoreMatrix, Vec<RoundRecord>)> {
    let unit = cfg
        .unit()
        .ok_or_else(|| Error::InvalidConfig("48·delta·W exceeds the product range".into()))?;
    let p = Perturbation { a, b, approx };
    match cfg.mode {
        Mode::Randomized => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let (rows, cols) = (a.rows(), b.cols());
            run_rounds(p, unit, cfg.rho, cfg.improved_phase2, Some(scheme), |_| {
                (rng.gen_range(0..rows), rng.gen_range(0..cols))
            })
        }
        Mode::Deterministic => {
            let mut state = DerandState::new(p, scheme, unit);
            run_rounds(p, unit, cfg.rho, cfg.improved_phase2, Some(scheme), |history| {
                state.absorb(history);
                state.best().0
            })
        }
    }
}
