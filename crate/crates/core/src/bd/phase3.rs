use rayon::prelude::*;

use crate::bd::config::{BdProductConfig, ResolvedConfig};
use crate::bd::derandomize::rep_within;
use crate::bd::phase2::RoundRecord;
use crate::bd::scheme::BlockScheme;
use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::matrix::ScoreMatrix;
use crate::score::Score;

/// Block triples `(x, y, z)` (row, inner and column block indices) that are
/// approximately relevant and approximately uncovered by every round, in
/// lexicographic order.
pub fn uncovered_blocks(
    a: &ScoreMatrix,
    b: &ScoreMatrix,
    approx: &ScoreMatrix,
    records: &[RoundRecord],
    scheme: &BlockScheme,
    unit: i64,
) -> Vec<(usize, usize, usize)> {
    let open = open_blocks(a, b, approx, records, scheme, unit);
    let mut all = Vec::new();
    for x in 0..scheme.row_blocks() {
        for (y, m) in open.iter().enumerate() {
            for z in 0..scheme.col_blocks() {
                if m.get(x, z) {
                    all.push((x, y, z));
                }
            }
        }
    }
    all.sort_unstable();
    all
}

/// For each inner block `y`, the `(x, z)` pairs to repair.
///
/// `U[x][r]` marks rounds whose `Aʳ` is within `44ΔW` at `(x, y)` and
/// `V[r][z]` likewise for `Bʳ`; the block is covered iff the boolean product
/// `U·V` is set at `(x, z)`. Rounds whose surviving-k filter dropped any
/// index of block `y` never count as covering it.
pub(crate) fn open_blocks(
    a: &ScoreMatrix,
    b: &ScoreMatrix,
    approx: &ScoreMatrix,
    records: &[RoundRecord],
    scheme: &BlockScheme,
    unit: i64,
) -> Vec<BitMatrix> {
    let s = *scheme;
    let (xs, ys, zs, rounds) = (s.row_blocks(), s.inner_blocks(), s.col_blocks(), records.len());
    let wide = |m: &ScoreMatrix, i: usize, j: usize| m.get(i, j).value().map(i128::from);
    let a_rep: Vec<Option<i128>> = (0..xs * ys).map(|t| wide(a, s.rep(t / ys), s.rep(t % ys))).collect();
    let b_rep: Vec<Option<i128>> = (0..ys * zs).map(|t| wide(b, s.rep(t / zs), s.rep(t % zs))).collect();
    let c_rep: Vec<Option<i128>> = (0..xs * zs).map(|t| wide(approx, s.rep(t / zs), s.rep(t % zs))).collect();
    let limit = 8 * unit as i128;
    (0..ys)
        .into_par_iter()
        .map(|y| {
            let u = BitMatrix::from_fn(xs, rounds, |x, r| {
                records[r].survived_all(s.block(y)) && rep_within(records[r].rep_a.get(x, y), 44 * unit)
            });
            let v = BitMatrix::from_fn(rounds, zs, |r, z| rep_within(records[r].rep_b.get(y, z), 44 * unit));
            let covered = u.mul(&v);
            BitMatrix::from_fn(xs, zs, |x, z| {
                !covered.get(x, z)
                    && match (a_rep[x * ys + y], b_rep[y * zs + z], c_rep[x * zs + z]) {
                        (Some(p), Some(q), Some(c)) => (p + q - c).abs() <= limit,
                        _ => false,
                    }
            })
        })
        .collect()
}

/// Exhaustive search over every approximately relevant block triple that no
/// round covered. The result is the exact product.
pub fn phase3_repair(
    a: &ScoreMatrix,
    b: &ScoreMatrix,
    approx: &ScoreMatrix,
    partial: &ScoreMatrix,
    records: &[RoundRecord],
    cfg: &ResolvedConfig,
    scheme: &BlockScheme,
) -> Result<ScoreMatrix> {
    let unit = cfg
        .unit()
        .ok_or_else(|| Error::InvalidConfig("48·delta·W exceeds the product range".into()))?;
    let open = open_blocks(a, b, approx, records, scheme, unit);
    let mut out = partial.clone();
    repair_blocks(a, b, &mut out, &open, cfg, scheme)?;
    Ok(out)
}

pub(crate) fn repair_blocks(
    a: &ScoreMatrix,
    b: &ScoreMatrix,
    out: &mut ScoreMatrix,
    open: &[BitMatrix],
    cfg: &ResolvedConfig,
    scheme: &BlockScheme,
) -> Result<()> {
    let d = scheme.delta;
    let groups: Vec<((usize, usize), Vec<usize>)> = (0..scheme.row_blocks())
        .flat_map(|x| (0..scheme.col_blocks()).map(move |z| (x, z)))
        .filter_map(|(x, z)| {
            let ys: Vec<usize> = (0..open.len()).filter(|&y| open[y].get(x, z)).collect();
            (!ys.is_empty()).then_some(((x, z), ys))
        })
        .collect();

    let repaired: Vec<((usize, usize), Vec<Score>)> = groups
        .par_iter()
        .map(|&((x, z), ref ys)| {
            let (ri, rj) = (scheme.block(x), scheme.block(z));
            let mut block: Vec<Score> = ri.clone().flat_map(|i| out.row(i)[rj.clone()].to_vec()).collect();
            for &y in ys {
                let rk = scheme.block(y);
                if d > cfg.recursion_cutoff {
                    let sub = crate::bd::bd_product(
                        &a.submatrix(ri.clone(), rk.clone()),
                        &b.submatrix(rk.clone(), rj.clone()),
                        &child_config(cfg, x, y, z),
                    )?;
                    for (dst, &v) in block.iter_mut().zip(sub.entries()) {
                        if v < *dst {
                            *dst = v;
                        }
                    }
                } else {
                    for (bi, i) in ri.clone().enumerate() {
                        let dst = &mut block[bi * d..(bi + 1) * d];
                        for k in rk.clone() {
                            let aik = a.get(i, k);
                            if aik.is_inf() {
                                continue;
                            }
                            for (t, &bkj) in dst.iter_mut().zip(&b.row(k)[rj.clone()]) {
                                let s = aik.add_bounded(bkj);
                                if s < *t {
                                    *t = s;
                                }
                            }
                        }
                    }
                }
            }
            Ok(((x, z), block))
        })
        .collect::<Result<_>>()?;

    for ((x, z), block) in repaired {
        let rj = scheme.block(z);
        for (bi, i) in scheme.block(x).enumerate() {
            out.row_mut(i)[rj.clone()].copy_from_slice(&block[bi * d..(bi + 1) * d]);
        }
    }
    Ok(())
}

/// Configuration for a recursive repair of one `Δ×Δ×Δ` block.
fn child_config(cfg: &ResolvedConfig, x: usize, y: usize, z: usize) -> BdProductConfig {
    let mut seed = cfg.seed;
    for v in [x, y, z] {
        seed = splitmix(seed ^ v as u64);
    }
    BdProductConfig {
        w: cfg.w,
        delta: None,
        rho: None,
        mode: cfg.mode,
        seed,
        recursion_cutoff: cfg.recursion_cutoff,
        improved_phase2: cfg.improved_phase2,
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
