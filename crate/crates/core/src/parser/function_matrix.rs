use crate::matrix::ScoreMatrix;
use crate::score::Score;

/// Square matrix whose entries are functions from non-terminals to scores,
/// stored as one [`ScoreMatrix`] plane per non-terminal.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionMatrix {
    size: usize,
    planes: Vec<ScoreMatrix>,
}

impl FunctionMatrix {
    /// All entries `∞̄`.
    pub fn infinite(size: usize, nonterminals: usize) -> Self {
        FunctionMatrix {
            size,
            planes: vec![ScoreMatrix::infinite(size, size); nonterminals],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nonterminals(&self) -> usize {
        self.planes.len()
    }

    pub fn get(&self, i: usize, j: usize, x: usize) -> Score {
        self.planes[x].get(i, j)
    }

    pub fn set(&mut self, i: usize, j: usize, x: usize, v: Score) {
        self.planes[x].set(i, j, v);
    }

    pub fn relax(&mut self, i: usize, j: usize, x: usize, v: Score) {
        self.planes[x].relax(i, j, v);
    }

    pub fn entry(&self, i: usize, j: usize) -> Vec<Score> {
        self.planes.iter().map(|p| p.get(i, j)).collect()
    }

    pub fn plane(&self, x: usize) -> &ScoreMatrix {
        &self.planes[x]
    }

    pub(crate) fn plane_mut(&mut self, x: usize) -> &mut ScoreMatrix {
        &mut self.planes[x]
    }

    /// `M(X)` restricted to the given original indices.
    pub fn block(&self, x: usize, rows: &[usize], cols: &[usize]) -> ScoreMatrix {
        let p = &self.planes[x];
        ScoreMatrix::from_fn(rows.len(), cols.len(), |i, j| p.get(rows[i], cols[j]))
    }

    /// The leading `size × size` corner.
    pub fn truncate(&self, size: usize) -> Self {
        FunctionMatrix {
            size,
            planes: self.planes.iter().map(|p| p.submatrix(0..size, 0..size)).collect(),
        }
    }

    /// Copy with `∞̄` rows and columns appended up to `size`.
    pub fn padded(&self, size: usize) -> Self {
        let mut out = FunctionMatrix::infinite(size.max(self.size), self.planes.len());
        for (dst, src) in out.planes.iter_mut().zip(&self.planes) {
            for i in 0..self.size {
                dst.row_mut(i)[..self.size].copy_from_slice(src.row(i));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contiguity {
    Contiguous,
    /// The first `a` and the remaining local indices are each contiguous.
    DiscontinuousAt(usize),
    /// More than one gap.
    Fragmented,
}

/// Local-to-original index map of a recursive sub-matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexView {
    map: Vec<usize>,
}

impl IndexView {
    pub fn new(map: Vec<usize>) -> Self {
        debug_assert!(map.windows(2).all(|w| w[0] < w[1]));
        IndexView { map }
    }

    pub fn full(size: usize) -> Self {
        IndexView { map: (0..size).collect() }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> IndexView {
        IndexView {
            map: self.map[range].to_vec(),
        }
    }

    /// The view without local indices in `range`.
    pub fn without(&self, range: std::ops::Range<usize>) -> IndexView {
        let mut map = self.map[..range.start].to_vec();
        map.extend_from_slice(&self.map[range.end..]);
        IndexView { map }
    }

    pub fn contiguity(&self) -> Contiguity {
        let mut gaps = self.map.windows(2).enumerate().filter(|(_, w)| w[1] != w[0] + 1);
        match (gaps.next(), gaps.next()) {
            (None, _) => Contiguity::Contiguous,
            (Some((a, _)), None) => Contiguity::DiscontinuousAt(a + 1),
            _ => Contiguity::Fragmented,
        }
    }

    /// Original indices skipped by the single gap, if any.
    pub fn missing(&self) -> Vec<usize> {
        match self.contiguity() {
            Contiguity::DiscontinuousAt(a) => (self.map[a - 1] + 1..self.map[a]).collect(),
            _ => Vec::new(),
        }
    }
}
