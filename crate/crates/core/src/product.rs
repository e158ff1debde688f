//! The (min,+)-product `C[i][j] = min_k A[i][k] + B[k][j]`: the cubic
//! reference kernel and the small-entry product.

use rayon::prelude::*;

use crate::bitset::{for_each_one, or_into, words_for, BitMatrix};
use crate::error::{Error, Result};
use crate::matrix::ScoreMatrix;
use crate::score::{Score, MAX_FINITE};

/// Dimensions at or below this size in any direction use the cubic kernel.
pub const SMALL_ENTRY_CUTOFF: usize = 64;

const INF: i64 = Score::INF.raw();

fn check_dims(a: &ScoreMatrix, b: &ScoreMatrix) -> Result<()> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    Ok(())
}

fn check_range(m: &ScoreMatrix) -> Result<()> {
    if m.entries().iter().all(|s| s.in_product_range()) {
        Ok(())
    } else {
        Err(Error::Overflow)
    }
}

/// Triple-loop (min,+)-product. Inputs must be within `±MAX_FINITE` so no
/// sum can overflow; larger finite entries are reported as [`Error::Overflow`].
pub fn naive_minplus(a: &ScoreMatrix, b: &ScoreMatrix) -> Result<ScoreMatrix> {
    check_dims(a, b)?;
    check_range(a)?;
    check_range(b)?;
    Ok(naive_unchecked(a, b))
}

pub(crate) fn naive_unchecked(a: &ScoreMatrix, b: &ScoreMatrix) -> ScoreMatrix {
    let mut out = ScoreMatrix::infinite(a.rows(), b.cols());
    if b.cols() == 0 {
        return out;
    }
    let work = a.rows() * a.cols() * b.cols();
    let kernel = |(i, row): (usize, &mut [Score])| {
        for (k, &aik) in a.row(i).iter().enumerate() {
            if aik.is_inf() {
                continue;
            }
            let aik = aik.raw();
            for (dst, &bkj) in row.iter_mut().zip(b.row(k)) {
                let bkj = bkj.raw();
                let s = if bkj == INF { INF } else { aik + bkj };
                if s < dst.raw() {
                    *dst = Score::from_raw(s);
                }
            }
        }
    };
    let rows = out.entries_mut().chunks_mut(b.cols()).enumerate();
    if work >= 1 << 18 {
        rows.par_bridge().for_each(kernel);
    } else {
        rows.for_each(kernel);
    }
    out
}

/// (min,+)-product of matrices whose finite entries lie in `[-bound, bound]`.
///
/// Above [`SMALL_ENTRY_CUTOFF`] this decomposes by value: `B` is split into
/// one bit matrix per distinct value, and for every output row the candidate
/// sums `s = u + v` are swept in ascending order, OR-ing the rows of the
/// `v`-plane selected by the columns where `A[i][·] = u`. An output cell is
/// settled by the first sum whose plane hits it.
pub fn small_entry_minplus(a: &ScoreMatrix, b: &ScoreMatrix, bound: i64) -> Result<ScoreMatrix> {
    check_dims(a, b)?;
    if !(0..=MAX_FINITE).contains(&bound) {
        return Err(Error::InvalidConfig(format!("entry bound {bound} out of range")));
    }
    for m in [a, b] {
        if let Some((row, col, value)) = m.first_out_of_range(bound) {
            return Err(Error::EntryOutOfRange {
                row,
                col,
                value,
                bound,
            });
        }
    }
    if a.rows().min(a.cols()).min(b.cols()) <= SMALL_ENTRY_CUTOFF {
        return Ok(naive_unchecked(a, b));
    }
    Ok(value_decomposed(a, b))
}

struct ValuePlanes {
    /// Sorted distinct finite values of `B`.
    values: Vec<i64>,
    /// `lookup[v - values[0]]` is the plane index of value `v`.
    lookup: Vec<u32>,
    /// One bit matrix (rows `k`, columns `j`) per value.
    planes: Vec<BitMatrix>,
}

impl ValuePlanes {
    fn build(b: &ScoreMatrix) -> Self {
        let mut values: Vec<i64> = b.entries().iter().filter_map(|s| s.value()).collect();
        values.sort_unstable();
        values.dedup();
        let mut lookup = Vec::new();
        if let (Some(&lo), Some(&hi)) = (values.first(), values.last()) {
            lookup = vec![u32::MAX; (hi - lo + 1) as usize];
            for (t, &v) in values.iter().enumerate() {
                lookup[(v - lo) as usize] = t as u32;
            }
        }
        let mut planes = vec![BitMatrix::zeros(b.rows(), b.cols()); values.len()];
        for k in 0..b.rows() {
            for (j, s) in b.row(k).iter().enumerate() {
                if let Some(v) = s.value() {
                    planes[lookup[(v - values[0]) as usize] as usize].set(k, j);
                }
            }
        }
        ValuePlanes {
            values,
            lookup,
            planes,
        }
    }

    #[inline]
    fn plane_of(&self, v: i64) -> Option<&BitMatrix> {
        let lo = *self.values.first()?;
        let off = v.checked_sub(lo)?;
        if off < 0 || off as usize >= self.lookup.len() {
            return None;
        }
        match self.lookup[off as usize] {
            u32::MAX => None,
            t => Some(&self.planes[t as usize]),
        }
    }
}

fn value_decomposed(a: &ScoreMatrix, b: &ScoreMatrix) -> ScoreMatrix {
    let cols = b.cols();
    let mut out = ScoreMatrix::infinite(a.rows(), cols);
    let planes = ValuePlanes::build(b);
    let (Some(&vmin), Some(&vmax)) = (planes.values.first(), planes.values.last()) else {
        return out;
    };
    let width = words_for(cols);
    let finite = BitMatrix::from_fn(b.rows(), cols, |k, j| !b.get(k, j).is_inf());

    out.entries_mut()
        .par_chunks_mut(cols)
        .enumerate()
        .for_each(|(i, dst)| {
            // Columns k of row i grouped by value u, ascending.
            let mut by_value: Vec<(i64, Vec<usize>)> = Vec::new();
            {
                let mut ks: Vec<(i64, usize)> = a
                    .row(i)
                    .iter()
                    .enumerate()
                    .filter_map(|(k, s)| s.value().map(|u| (u, k)))
                    .collect();
                ks.sort_unstable();
                for (u, k) in ks {
                    match by_value.last_mut() {
                        Some((last, group)) if *last == u => group.push(k),
                        _ => by_value.push((u, vec![k])),
                    }
                }
            }
            let (Some(&(umin, _)), Some(&(umax, _))) = (by_value.first(), by_value.last()) else {
                return;
            };

            // Columns with no finite sum would otherwise force a full sweep.
            let mut unresolved = vec![0u64; width];
            for (_, ks) in &by_value {
                for &k in ks {
                    or_into(&mut unresolved, finite.row(k));
                }
            }
            let mut acc = vec![0u64; width];
            for s in (umin + vmin)..=(umax + vmax) {
                acc.iter_mut().for_each(|w| *w = 0);
                for (u, ks) in &by_value {
                    let Some(plane) = planes.plane_of(s - u) else {
                        continue;
                    };
                    for &k in ks {
                        or_into(&mut acc, plane.row(k));
                    }
                }
                let mut any_left = false;
                for (un, hit) in unresolved.iter_mut().zip(acc.iter_mut()) {
                    *hit &= *un;
                    *un &= !*hit;
                    any_left |= *un != 0;
                }
                for_each_one(&acc, |j| dst[j] = Score::from_raw(s));
                if !any_left {
                    break;
                }
            }
        });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: the textbook definition with checked arithmetic.
    fn definition(a: &ScoreMatrix, b: &ScoreMatrix) -> ScoreMatrix {
        ScoreMatrix::from_fn(a.rows(), b.cols(), |i, j| {
            (0..a.cols())
                .map(|k| a.get(i, k).checked_add(b.get(k, j)).unwrap())
                .min()
                .unwrap_or(Score::INF)
        })
    }

    fn random(rng: &mut ChaCha8Rng, r: usize, c: usize, m: i64, inf_rate: f64) -> ScoreMatrix {
        ScoreMatrix::from_fn(r, c, |_, _| {
            if rng.gen_bool(inf_rate) {
                Score::INF
            } else {
                Score::finite(rng.gen_range(-m..=m))
            }
        })
    }

    #[test]
    fn two_by_two_example() {
        let a = ScoreMatrix::from_rows(&[[0, 1], [1, 2]]);
        let b = ScoreMatrix::from_rows(&[[0, 1], [1, 0]]);
        let want = ScoreMatrix::from_rows(&[[0, 1], [1, 2]]);
        assert_eq!(naive_minplus(&a, &b).unwrap(), want);
        assert_eq!(definition(&a, &b), want);
    }

    #[test]
    fn infinity_is_absorbing() {
        let a = ScoreMatrix::infinite(1, 1);
        let b = ScoreMatrix::from_rows(&[[5]]);
        assert!(naive_minplus(&a, &b).unwrap().get(0, 0).is_inf());
    }

    #[test]
    fn zeros_times_zeros() {
        let z = ScoreMatrix::filled(6, 6, Score::ZERO);
        assert_eq!(naive_minplus(&z, &z).unwrap(), z);
        let z4 = ScoreMatrix::filled(4, 4, Score::ZERO);
        assert_eq!(small_entry_minplus(&z4, &z4, 0).unwrap(), z4);
    }

    #[test]
    fn dimension_mismatch() {
        let a = ScoreMatrix::infinite(2, 3);
        assert!(matches!(
            naive_minplus(&a, &a),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(small_entry_minplus(&a, &a, 1).is_err());
    }

    #[test]
    fn oversized_inputs_overflow() {
        let a = ScoreMatrix::from_rows(&[[MAX_FINITE + 1]]);
        assert_eq!(naive_minplus(&a, &a), Err(Error::Overflow));
    }

    #[test]
    fn small_entry_rejects_out_of_range() {
        let a = ScoreMatrix::from_rows(&[[0, 4], [1, 0]]);
        let err = small_entry_minplus(&a, &a, 3).unwrap_err();
        assert_eq!(
            err,
            Error::EntryOutOfRange {
                row: 0,
                col: 1,
                value: 4,
                bound: 3
            }
        );
    }

    #[test]
    fn small_entry_example_m1() {
        let a = ScoreMatrix::from_rows(&[[0, 1], [1, 0]]);
        let b = ScoreMatrix::from_rows(&[[1, 0], [0, 1]]);
        let c = small_entry_minplus(&a, &b, 1).unwrap();
        assert_eq!(c, ScoreMatrix::from_rows(&[[1, 0], [0, 1]]));
        assert_eq!(c, naive_minplus(&a, &b).unwrap());
    }

    #[test]
    fn small_entry_random_16_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = random(&mut rng, 16, 16, 3, 0.2);
            let b = random(&mut rng, 16, 16, 3, 0.2);
            assert_eq!(small_entry_minplus(&a, &b, 3).unwrap(), naive_minplus(&a, &b).unwrap());
        }
    }

    #[test]
    fn value_decomposition_matches_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (r, q, c, m, inf) in [
            (65, 70, 66, 3, 0.1),
            (80, 65, 130, 20, 0.5),
            (100, 100, 100, 0, 0.3),
            (70, 90, 65, 1, 0.95),
            (66, 66, 66, 7, 1.0),
        ] {
            let a = random(&mut rng, r, q, m, inf);
            let b = random(&mut rng, q, c, m, inf);
            let fast = small_entry_minplus(&a, &b, m).unwrap();
            assert_eq!(fast, definition(&a, &b), "{r}x{q}x{c} M={m}");
        }
    }

    #[test]
    fn exhaustive_two_by_two() {
        let vals = [Score::finite(-1), Score::ZERO, Score::finite(1), Score::INF];
        let mat = |code: usize| {
            ScoreMatrix::from_fn(2, 2, |i, j| vals[(code >> (2 * (2 * i + j))) & 3])
        };
        for x in 0..256 {
            for y in 0..256 {
                let (a, b) = (mat(x), mat(y));
                let want = definition(&a, &b);
                assert_eq!(naive_minplus(&a, &b).unwrap(), want);
                assert_eq!(small_entry_minplus(&a, &b, 1).unwrap(), want);
            }
        }
    }
}
