//! Bounded-difference validation and replicate padding.

use std::fmt;

use crate::matrix::ScoreMatrix;

/// Why a matrix failed the bounded-difference check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BdViolation {
    /// An infinite entry; BD matrices are finite.
    Infinite { row: usize, col: usize },
    /// Two adjacent entries differing by more than the cap.
    Adjacent {
        first: (usize, usize),
        second: (usize, usize),
        diff: i64,
    },
}

impl fmt::Display for BdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BdViolation::Infinite { row, col } => write!(f, "entry ({row}, {col}) is inf"),
            BdViolation::Adjacent {
                first,
                second,
                diff,
            } => write!(
                f,
                "entries ({}, {}) and ({}, {}) differ by {diff}",
                first.0, first.1, second.0, second.1
            ),
        }
    }
}

/// Result of [`check_bd`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BdWitness {
    pub is_bd: bool,
    /// Smallest `W` for which the matrix is `W`-BD; `None` if it has an
    /// infinite entry.
    pub width: Option<i64>,
    /// First violation against the cap in row-major order (right neighbour
    /// before lower neighbour).
    pub violation: Option<BdViolation>,
}

/// The smallest `W` making `a` a `W`-BD matrix, or `None` if `a` has an
/// infinite entry.
pub fn bd_width(a: &ScoreMatrix) -> Option<i64> {
    let mut w = 0i64;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j).value()?;
            if j + 1 < a.cols() {
                let y = a.get(i, j + 1).value()?;
                w = w.max(x.abs_diff(y).min(i64::MAX as u64) as i64);
            }
            if i + 1 < a.rows() {
                let y = a.get(i + 1, j).value()?;
                w = w.max(x.abs_diff(y).min(i64::MAX as u64) as i64);
            }
        }
    }
    Some(w)
}

pub fn check_bd(a: &ScoreMatrix, cap: i64) -> BdWitness {
    let violation = first_violation(a, cap);
    BdWitness {
        is_bd: violation.is_none(),
        width: bd_width(a),
        violation,
    }
}

pub(crate) fn first_violation(a: &ScoreMatrix, cap: i64) -> Option<BdViolation> {
    let cap = cap.max(0) as u64;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let Some(x) = a.get(i, j).value() else {
                return Some(BdViolation::Infinite { row: i, col: j });
            };
            let neighbours = [(i, j + 1), (i + 1, j)];
            for (r, c) in neighbours {
                if r >= a.rows() || c >= a.cols() {
                    continue;
                }
                let Some(y) = a.get(r, c).value() else {
                    return Some(BdViolation::Infinite { row: r, col: c });
                };
                if x.abs_diff(y) > cap {
                    return Some(BdViolation::Adjacent {
                        first: (i, j),
                        second: (r, c),
                        diff: x.abs_diff(y).min(i64::MAX as u64) as i64,
                    });
                }
            }
        }
    }
    None
}

/// Original and padded shape; lets a caller crop a product back down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PaddingRecord {
    pub rows: usize,
    pub cols: usize,
    pub padded_rows: usize,
    pub padded_cols: usize,
}

impl PaddingRecord {
    pub fn is_empty(&self) -> bool {
        self.rows == self.padded_rows && self.cols == self.padded_cols
    }

    /// Restricts `m` to the leading `rows × cols` corner.
    pub fn crop(&self, m: &ScoreMatrix) -> ScoreMatrix {
        if m.rows() == self.rows && m.cols() == self.cols {
            return m.clone();
        }
        m.submatrix(0..self.rows, 0..self.cols)
    }
}

/// Replicates the last row and column until both dimensions are multiples
/// of `delta`. Replication preserves the BD property, and a duplicated inner
/// index repeats a candidate sum, so it cannot change a minimum.
pub fn pad_to_multiple(a: &ScoreMatrix, delta: usize) -> (ScoreMatrix, PaddingRecord) {
    assert!(delta >= 1, "delta must be positive");
    let up = |x: usize| x.div_ceil(delta) * delta;
    pad_to(a, up(a.rows()), up(a.cols()))
}

pub(crate) fn pad_to(a: &ScoreMatrix, rows: usize, cols: usize) -> (ScoreMatrix, PaddingRecord) {
    let record = PaddingRecord {
        rows: a.rows(),
        cols: a.cols(),
        padded_rows: rows,
        padded_cols: cols,
    };
    if record.is_empty() || a.rows() == 0 || a.cols() == 0 {
        return (a.clone(), record);
    }
    let padded = ScoreMatrix::from_fn(rows, cols, |i, j| {
        a.get(i.min(a.rows() - 1), j.min(a.cols() - 1))
    });
    (padded, record)
}
