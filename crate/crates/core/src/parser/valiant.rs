//! Valiant's closure recursion over one shared matrix.
//!
//! `Parse` splits into halves; `Parse₂` closes a matrix whose two halves are
//! already closed, through two `Parse₃` calls on overlapping three-quarter
//! windows and a final `Parse₄`. `Parse₃`/`Parse₄` fold one or two products
//! into the top-right block, drop the middle indices and recurse.

use super::dot::fold_at;
use super::{dot, CnfTables, Contiguity, DotStats, FunctionMatrix, IndexView, ParserConfig};
use crate::error::Result;
use crate::score::Score;

#[derive(Debug, Clone)]
pub struct Closure {
    /// `(A⁺)[i][j](X) = s(X, σ_i … σ_{j−1})`, size `n + 1`.
    pub matrix: FunctionMatrix,
    pub stats: DotStats,
}

/// The `(n+1) × (n+1)` seed: `A[i][i+1](X) = s(X → σ_i)`, `∞̄` elsewhere.
pub fn initial_matrix(t: &CnfTables, sigma: &[usize]) -> FunctionMatrix {
    let mut m = FunctionMatrix::infinite(sigma.len() + 1, t.nonterminals);
    for (i, &c) in sigma.iter().enumerate() {
        for &(x, s) in &t.unary[c] {
            m.relax(i, i + 1, x, Score::finite(s));
        }
    }
    m
}

/// Closes `seed`, padding it with `∞̄` to a power of two internally.
pub fn valiant_closure(seed: &FunctionMatrix, t: &CnfTables, cfg: &ParserConfig) -> Result<Closure> {
    let size = seed.size();
    let padded = size.next_power_of_two();
    let mut run = Run {
        m: seed.padded(padded),
        t,
        cfg,
        real: size,
        stats: DotStats::default(),
    };
    run.parse(&IndexView::full(padded))?;
    Ok(Closure {
        matrix: run.m.truncate(size),
        stats: run.stats,
    })
}

struct Run<'a> {
    m: FunctionMatrix,
    t: &'a CnfTables,
    cfg: &'a ParserConfig,
    /// Indices at or above this are padding.
    real: usize,
    stats: DotStats,
}

impl Run<'_> {
    fn parse(&mut self, b: &IndexView) -> Result<()> {
        debug_assert_eq!(b.contiguity(), Contiguity::Contiguous);
        let n = b.len();
        if n > 1 {
            self.parse(&b.slice(0..n / 2))?;
            self.parse(&b.slice(n / 2..n))?;
            self.parse2(b)?;
        }
        Ok(())
    }

    fn parse2(&mut self, b: &IndexView) -> Result<()> {
        let n = b.len();
        debug_assert!(match b.contiguity() {
            Contiguity::DiscontinuousAt(a) => a == n / 2,
            c => c == Contiguity::Contiguous,
        });
        if n > 2 {
            self.parse2(&b.slice(n / 4..3 * n / 4))?;
            self.parse3(&b.slice(0..3 * n / 4))?;
            self.parse3(&b.slice(n / 4..n))?;
            self.parse4(b)?;
        }
        Ok(())
    }

    fn parse3(&mut self, b: &IndexView) -> Result<()> {
        let n = b.len();
        let t = n / 3;
        debug_assert!(match b.contiguity() {
            Contiguity::DiscontinuousAt(a) => a == t || a == 2 * t,
            c => c == Contiguity::Contiguous,
        });
        self.dot_union(b, 0..t, t..2 * t, 2 * t..n)?;
        self.parse2(&b.without(t..2 * t))
    }

    fn parse4(&mut self, b: &IndexView) -> Result<()> {
        let n = b.len();
        let q = n / 4;
        debug_assert!(match b.contiguity() {
            Contiguity::DiscontinuousAt(a) => a == 2 * q,
            c => c == Contiguity::Contiguous,
        });
        self.dot_union(b, 0..q, q..2 * q, 3 * q..n)?;
        self.dot_union(b, 0..q, 2 * q..3 * q, 3 * q..n)?;
        self.parse2(&b.without(q..3 * q))
    }

    /// `B_I^K ← B_I^K ∪ (B_I^J . B_J^K)` for local ranges `I`, `J`, `K`.
    fn dot_union(
        &mut self,
        b: &IndexView,
        i: std::ops::Range<usize>,
        j: std::ops::Range<usize>,
        k: std::ops::Range<usize>,
    ) -> Result<()> {
        let real = |r: std::ops::Range<usize>| -> Vec<usize> {
            b.map()[r].iter().copied().filter(|&x| x < self.real).collect()
        };
        let (rows, mids, cols) = (real(i), real(j), real(k));
        if rows.is_empty() || mids.is_empty() || cols.is_empty() {
            return Ok(());
        }
        let planes = dot(&self.m, &rows, &mids, &cols, self.t, self.cfg, &mut self.stats)?;
        fold_at(&mut self.m, &rows, &cols, &planes);
        Ok(())
    }
}
