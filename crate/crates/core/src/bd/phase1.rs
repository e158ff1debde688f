use crate::bd::scheme::BlockScheme;
use crate::error::{Error, Result};
use crate::matrix::ScoreMatrix;
use crate::product::naive_minplus;

/// `C̃`: the product restricted to representative indices, replicated over
/// each `Δ×Δ` output block. For `W`-BD inputs it is within `4ΔW` of the
/// true product.
pub fn phase1_block_approx(
    a: &ScoreMatrix,
    b: &ScoreMatrix,
    scheme: &BlockScheme,
) -> Result<ScoreMatrix> {
    if (a.rows(), a.cols(), b.rows(), b.cols())
        != (scheme.rows, scheme.inner, scheme.inner, scheme.cols)
    {
        return Err(Error::InvalidConfig(format!(
            "operands {}x{} and {}x{} do not match the block scheme",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let reps = phase1_reps(a, b, scheme)?;
    let d = scheme.delta;
    Ok(ScoreMatrix::from_fn(scheme.rows, scheme.cols, |i, j| {
        reps.get(i / d, j / d)
    }))
}

/// The representative-level product, one entry per block pair.
pub(crate) fn phase1_reps(
    a: &ScoreMatrix,
    b: &ScoreMatrix,
    scheme: &BlockScheme,
) -> Result<ScoreMatrix> {
    let (xs, ys, zs) = (
        scheme.representatives(scheme.rows),
        scheme.representatives(scheme.inner),
        scheme.representatives(scheme.cols),
    );
    let ar = ScoreMatrix::from_fn(xs.len(), ys.len(), |x, y| a.get(xs[x], ys[y]));
    let br = ScoreMatrix::from_fn(ys.len(), zs.len(), |y, z| b.get(ys[y], zs[z]));
    naive_minplus(&ar, &br)
}
