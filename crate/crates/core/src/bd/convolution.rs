//! (min,+)-convolution `c[t] = min_p a[p] + b[t − p]` of two length-`n`
//! sequences where one of them has bounded differences.
//!
//! With `m = ⌈√n⌉`, the BD sequence is laid out as a Hankel or Toeplitz
//! matrix whose `m` columns index the offset inside a window, and the other
//! sequence as a matrix of stride-`m` samples. One structured product then
//! yields every candidate sum except those of `O(m)` pairs near the ends,
//! which are added directly.

use crate::bd::config::{auto_delta, BdProductConfig};
use crate::bd::generalized::{bd_cols_product, bd_rows_product, Groups};
use crate::bounded::BdViolation;
use crate::error::{Error, Result};
use crate::matrix::ScoreMatrix;
use crate::score::{Score, MAX_FINITE};

/// Which operand of the convolution has bounded differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BdSide {
    A,
    B,
}

/// The quadratic definition. Output length is `2n − 1` (empty for `n = 0`).
pub fn naive_convolution(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![i64::MAX; a.len() + b.len() - 1];
    for (p, &x) in a.iter().enumerate() {
        for (q, &y) in b.iter().enumerate() {
            c[p + q] = c[p + q].min(x + y);
        }
    }
    c
}

fn check_sequence(s: &[i64], w: Option<i64>) -> Result<()> {
    if s.iter().any(|v| v.unsigned_abs() > MAX_FINITE as u64) {
        return Err(Error::Overflow);
    }
    if let Some(w) = w {
        for (i, pair) in s.windows(2).enumerate() {
            let diff = pair[0].abs_diff(pair[1]);
            if diff > w.max(0) as u64 {
                return Err(Error::NotBoundedDifference {
                    width: w,
                    violation: BdViolation::Adjacent {
                        first: (0, i),
                        second: (0, i + 1),
                        diff: diff as i64,
                    },
                });
            }
        }
    }
    Ok(())
}

fn at(s: &[i64], idx: isize) -> Score {
    usize::try_from(idx)
        .ok()
        .and_then(|i| s.get(i))
        .map_or(Score::INF, |&v| Score::finite(v))
}

/// Exact convolution via structured products. `cfg.w` is the BD width of
/// the sequence named by `side`.
pub fn bd_convolution(a: &[i64], b: &[i64], side: BdSide, cfg: &BdProductConfig) -> Result<Vec<i64>> {
    if a.len() != b.len() {
        return Err(Error::InvalidConfig(format!(
            "sequences have lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let bd_a = side == BdSide::A;
    check_sequence(a, bd_a.then_some(cfg.w))?;
    check_sequence(b, (!bd_a).then_some(cfg.w))?;
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut m = (n as f64).sqrt() as usize;
    while m * m < n {
        m += 1;
    }
    let g = auto_delta(m);
    let bound = (g as i64 - 1) * cfg.w.max(0);
    let mut c = vec![Score::INF; 2 * n - 1];

    if bd_a {
        // H[s][k] = a[s + k] over rows whose whole window is in range;
        // S[k][j] = b[jm − k]. Cell (s, j) covers t = s + jm.
        let windows = n + 1 - m;
        let cols = (n + m - 2) / m + 1;
        if windows > 0 {
            let h = ScoreMatrix::from_fn(windows, m, |s, k| Score::finite(a[s + k]));
            let s = ScoreMatrix::from_fn(m, cols, |k, j| at(b, (j * m) as isize - k as isize));
            let p = bd_rows_product(&h, &s, &Groups::contiguous(windows, g), bound, cfg)?;
            for row in 0..windows {
                for j in 0..cols {
                    let t = row + j * m;
                    if t < c.len() && p.get(row, j) < c[t] {
                        c[t] = p.get(row, j);
                    }
                }
            }
        }
        // Pair (p, q) sits in row p − ((−q) mod m), which may fall outside
        // the windows only near the ends of `a`.
        for p in (0..n).filter(|&p| p < m || p + m > n) {
            for q in 0..n {
                c[p + q] = c[p + q].min(Score::finite(a[p] + b[q]));
            }
        }
    } else {
        // X[j][k] = b[jm − k] for the rows that stay in range;
        // Y[k][s] = a[s + k] with s shifted by m − 1. Cell covers t = jm + s.
        let jmin = usize::from(m > 1);
        let jmax = (n - 1) / m;
        if jmax >= jmin {
            let rows = jmax - jmin + 1;
            let shift = m as isize - 1;
            let x = ScoreMatrix::from_fn(rows, m, |r, k| Score::finite(b[(r + jmin) * m - k]));
            let y = ScoreMatrix::from_fn(m, n + m - 1, |k, s| at(a, s as isize - shift + k as isize));
            let p = bd_cols_product(&x, &y, &Groups::contiguous(m, g), bound, cfg)?;
            for r in 0..rows {
                for s in 0..n + m - 1 {
                    let t = ((r + jmin) * m + s) as isize - shift;
                    if let Ok(t) = usize::try_from(t) {
                        if t < c.len() && p.get(r, s) < c[t] {
                            c[t] = p.get(r, s);
                        }
                    }
                }
            }
        }
        // Pairs whose b-index maps outside the sampled rows.
        let strip = (0..n).filter(|&q| q.div_ceil(m) < jmin || q.div_ceil(m) > jmax);
        for q in strip {
            for p in 0..n {
                c[p + q] = c[p + q].min(Score::finite(a[p] + b[q]));
            }
        }
    }
    c.into_iter()
        .map(|s| s.value().ok_or_else(|| Error::Internal("convolution entry left infinite".into())))
        .collect()
}
