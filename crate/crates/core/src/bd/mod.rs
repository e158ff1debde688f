//! Exact (min,+)-products of bounded-difference matrices by blocking,
//! random perturbation and exhaustive repair.

pub mod config;
pub mod convolution;
pub mod derandomize;
pub mod generalized;
pub mod phase1;
pub mod phase2;
pub mod phase3;
pub mod scheme;

use std::time::Instant;

pub use config::{auto_delta, auto_rho, BdProductConfig, Mode, ResolvedConfig};
pub use convolution::{bd_convolution, naive_convolution, BdSide};
pub use derandomize::derandomized_pick;
pub use generalized::{bd_cols_product, bd_rows_product, Groups};
pub use phase1::phase1_block_approx;
pub use phase2::{phase2_rounds, RoundRecord};
pub use phase3::{phase3_repair, uncovered_blocks};
pub use scheme::BlockScheme;

use crate::bounded::{first_violation, pad_to};
use crate::error::{Error, Result};
use crate::matrix::ScoreMatrix;
use crate::product::naive_minplus;

/// What a [`bd_product_report`] call did.
#[derive(Debug, Clone, PartialEq)]
pub struct BdReport {
    pub config: ResolvedConfig,
    pub picks: Vec<(usize, usize)>,
    pub repaired_blocks: usize,
    /// Wall-clock seconds spent in each of the three phases.
    pub phase_seconds: [f64; 3],
    /// Set when `48ΔW` does not fit the product range and the cubic kernel
    /// was used instead.
    pub used_naive: bool,
}

/// `a ★ b` for `W`-BD matrices. Any configuration yields the exact product.
pub fn bd_product(a: &ScoreMatrix, b: &ScoreMatrix, cfg: &BdProductConfig) -> Result<ScoreMatrix> {
    bd_product_report(a, b, cfg).map(|(c, _)| c)
}

pub fn bd_product_report(
    a: &ScoreMatrix,
    b: &ScoreMatrix,
    cfg: &BdProductConfig,
) -> Result<(ScoreMatrix, BdReport)> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    for m in [a, b] {
        if let Some(violation) = first_violation(m, cfg.w) {
            return Err(Error::NotBoundedDifference { width: cfg.w, violation });
        }
        if !m.entries().iter().all(|s| s.in_product_range()) {
            return Err(Error::Overflow);
        }
    }
    let n = a.rows().max(a.cols()).max(b.cols());
    let rc = cfg.resolve(n)?;
    let mut report = BdReport {
        config: rc,
        picks: Vec::new(),
        repaired_blocks: 0,
        phase_seconds: [0.0; 3],
        used_naive: false,
    };
    let Some(unit) = rc.unit().filter(|_| n > 0) else {
        report.used_naive = true;
        return Ok((naive_minplus(a, b)?, report));
    };

    let d = rc.delta;
    let up = |x: usize| x.div_ceil(d) * d;
    let (pa, record) = pad_to(a, up(a.rows()), up(a.cols()));
    let (pb, _) = pad_to(b, up(b.rows()), up(b.cols()));
    let scheme = BlockScheme::new(pa.rows(), pa.cols(), pb.cols(), d)?;

    let t = Instant::now();
    let approx = phase1_block_approx(&pa, &pb, &scheme)?;
    report.phase_seconds[0] = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let (partial, records) = phase2_rounds(&pa, &pb, &approx, &rc, &scheme)?;
    report.phase_seconds[1] = t.elapsed().as_secs_f64();
    report.picks = records.iter().map(|r| r.pick).collect();

    let t = Instant::now();
    let open = phase3::open_blocks(&pa, &pb, &approx, &records, &scheme, unit);
    report.repaired_blocks = open.iter().map(|m| m.count_ones()).sum();
    let mut out = partial;
    phase3::repair_blocks(&pa, &pb, &mut out, &open, &rc, &scheme)?;
    report.phase_seconds[2] = t.elapsed().as_secs_f64();

    let out = crate::bounded::PaddingRecord {
        rows: record.rows,
        cols: b.cols(),
        padded_rows: out.rows(),
        padded_cols: out.cols(),
    }
    .crop(&out);
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::score::Score;

    #[test]
    fn small_example() {
        let a = ScoreMatrix::from_rows(&[[0, 1], [1, 2]]);
        let b = ScoreMatrix::from_rows(&[[0, 1], [1, 0]]);
        let c = bd_product(&a, &b, &BdProductConfig::with_w(1)).unwrap();
        assert_eq!(c, ScoreMatrix::from_rows(&[[0, 1], [1, 2]]));
    }

    #[test]
    fn zero_right_operand_gives_row_minima() {
        let a = ScoreMatrix::from_rows(&[[3, 2, 4], [2, 1, 2], [1, 0, 1]]);
        let b = ScoreMatrix::filled(3, 3, Score::ZERO);
        let c = bd_product(&a, &b, &BdProductConfig::with_w(2)).unwrap();
        for i in 0..3 {
            let m = *a.row(i).iter().min().unwrap();
            assert!(c.row(i).iter().all(|&v| v == m));
        }
    }

    #[test]
    fn rejects_non_bd_inputs() {
        let a = ScoreMatrix::from_rows(&[[0, 2], [0, 0]]);
        let err = bd_product(&a, &a, &BdProductConfig::with_w(1)).unwrap_err();
        assert!(matches!(err, Error::NotBoundedDifference { width: 1, .. }));
        let mut inf = ScoreMatrix::filled(2, 2, Score::ZERO);
        inf.set(1, 1, Score::INF);
        assert!(bd_product(&inf, &inf, &BdProductConfig::with_w(5)).is_err());
    }

    #[test]
    fn huge_width_falls_back_to_naive() {
        let a = ScoreMatrix::from_rows(&[[0, 1 << 60], [0, 0]]);
        let (c, rep) = bd_product_report(&a, &a, &BdProductConfig::with_w(1 << 60)).unwrap();
        assert!(rep.used_naive);
        assert_eq!(c, naive_minplus(&a, &a).unwrap());
    }
}
