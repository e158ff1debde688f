//! Dense row-major matrices of [`Score`]s and their text format.
//!
//! Text format: the first line holds `<rows> <cols>`, followed by `rows`
//! lines of `cols` whitespace-separated tokens, each a decimal integer or
//! the literal `inf`.

use std::fmt::Write as _;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::score::Score;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScoreMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Score>,
}

impl ScoreMatrix {
    pub fn filled(rows: usize, cols: usize, value: Score) -> Self {
        ScoreMatrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn infinite(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, Score::INF)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Score) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ScoreMatrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Score>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidConfig(format!(
                "{} entries cannot form a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ScoreMatrix { rows, cols, data })
    }

    /// Builds a finite matrix from nested rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| Score::finite(v)));
        }
        ScoreMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// 0 on the diagonal, `∞` elsewhere: the neutral element of `★`.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Score::ZERO } else { Score::INF })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Score {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Score) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    /// Lowers entry `(i, j)` to `v` if `v` is smaller.
    #[inline]
    pub fn relax(&mut self, i: usize, j: usize, v: Score) {
        let e = &mut self.data[i * self.cols + j];
        if v < *e {
            *e = v;
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Score] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Score] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Score] {
        &self.data
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [Score] {
        &mut self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j)
        })
    }

    /// Entrywise minimum of `other` into `self`.
    pub fn min_assign(&mut self, other: &ScoreMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if b < *a {
                *a = b;
            }
        }
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|s| s.is_finite())
    }

    /// The first entry with magnitude above `bound`, if any.
    pub(crate) fn first_out_of_range(&self, bound: i64) -> Option<(usize, usize, i64)> {
        self.data.iter().enumerate().find_map(|(idx, s)| {
            s.value()
                .filter(|v| v.unsigned_abs() > bound.unsigned_abs())
                .map(|v| (idx / self.cols, idx % self.cols, v))
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::format(1, "missing `<rows> <cols>` header"))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(Error::format(hline + 1, "header must be `<rows> <cols>`"));
        }
        let parse_dim = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::format(hline + 1, format!("bad dimension `{s}`")))
        };
        let (rows, cols) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
        let mut data = Vec::with_capacity(rows * cols);
        let mut seen_rows = 0;
        for (lno, line) in lines {
            if seen_rows == rows {
                return Err(Error::format(lno + 1, "more rows than declared"));
            }
            let before = data.len();
            for tok in line.split_whitespace() {
                data.push(parse_token(tok).ok_or_else(|| {
                    Error::format(lno + 1, format!("bad token `{tok}`"))
                })?);
            }
            if data.len() - before != cols {
                return Err(Error::format(
                    lno + 1,
                    format!("expected {cols} entries, found {}", data.len() - before),
                ));
            }
            seen_rows += 1;
        }
        if seen_rows != rows {
            return Err(Error::format(
                text.lines().count(),
                format!("expected {rows} rows, found {seen_rows}"),
            ));
        }
        Ok(ScoreMatrix { rows, cols, data })
    }
}

fn parse_token(tok: &str) -> Option<Score> {
    if tok == "inf" {
        return Some(Score::INF);
    }
    match tok.parse::<i64>() {
        Ok(i64::MAX) | Err(_) => None,
        Ok(v) => Some(Score::finite(v)),
    }
}

impl std::fmt::Debug for ScoreMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ScoreMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}
