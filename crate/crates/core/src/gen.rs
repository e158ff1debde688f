//! Seeded random instances for tests, benchmarks and the CLI.

use rand::Rng;

use crate::matrix::ScoreMatrix;
use crate::score::Score;

/// A `rows × cols` matrix with every adjacent pair within `w`. Each entry is
/// drawn uniformly from the range its upper and left neighbours allow.
pub fn bd_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, w: i64) -> ScoreMatrix {
    let mut m = ScoreMatrix::infinite(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let up = (i > 0).then(|| m.get(i - 1, j).value().unwrap());
            let left = (j > 0).then(|| m.get(i, j - 1).value().unwrap());
            let v = match (up, left) {
                (None, None) => rng.gen_range(-100..=100),
                (Some(u), None) | (None, Some(u)) => u + rng.gen_range(-w..=w),
                (Some(u), Some(l)) => rng.gen_range(u.max(l) - w..=u.min(l) + w),
            };
            m.set(i, j, Score::finite(v));
        }
    }
    m
}

/// A sequence whose consecutive entries differ by at most `w`.
pub fn bd_sequence<R: Rng + ?Sized>(rng: &mut R, n: usize, w: i64) -> Vec<i64> {
    let mut v = rng.gen_range(-100..=100);
    (0..n)
        .map(|_| {
            let out = v;
            v += rng.gen_range(-w..=w);
            out
        })
        .collect()
}

/// Entries uniform in `-magnitude..=magnitude`, each `∞` with probability
/// `inf_rate`.
pub fn arbitrary_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, magnitude: i64, inf_rate: f64) -> ScoreMatrix {
    ScoreMatrix::from_fn(rows, cols, |_, _| {
        if rng.gen_bool(inf_rate) {
            Score::INF
        } else {
            Score::finite(rng.gen_range(-magnitude..=magnitude))
        }
    })
}

pub fn arbitrary_sequence<R: Rng + ?Sized>(rng: &mut R, n: usize, magnitude: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-magnitude..=magnitude)).collect()
}

/// Rows that drift by at most `w` from one row to the next; columns are
/// unrelated. Every contiguous group of rows varies by at most
/// `w · (size - 1)` along each column.
pub fn row_walk_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, w: i64) -> ScoreMatrix {
    let mut m = ScoreMatrix::infinite(rows, cols);
    for k in 0..cols {
        let mut v = rng.gen_range(-100..=100);
        for i in 0..rows {
            m.set(i, k, Score::finite(v));
            v += rng.gen_range(-w..=w);
        }
    }
    m
}
