//! Ground-truth utilities: random instances and exhaustive minimization.

use rand::{Rng, RngCore};

use crate::enumerate::{minimizers, tolerance};
use crate::{Error, QuboProblem, SpinVector, MAX_ENUMERATION_DIM};

/// Random symmetric instance. Diagonal entries are uniform in `range`; each
/// unordered off-diagonal pair is nonzero with probability `density` and then
/// uniform in `range`, mirrored into both triangles.
///
/// Draw order is row-major over the upper triangle, diagonal included.
pub fn random_qubo<R: RngCore + ?Sized>(
    n: usize,
    density: f64,
    range: (f64, f64),
    rng: &mut R,
) -> Result<QuboProblem, Error> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParameter { name: "density", reason: "must lie in [0, 1]" });
    }
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::InvalidParameter { name: "coefficient range", reason: "need finite lo <= hi" });
    }
    let uniform = |rng: &mut R| lo + (hi - lo) * rng.random::<f64>();
    let mut q = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = if i == j || rng.random_bool(density) { uniform(rng) } else { 0.0 };
            q[i * n + j] = v;
            q[j * n + i] = v;
        }
    }
    QuboProblem::new(n, q)
}

/// Exhaustive minimum of `zᵀQz`. Among tied minimizers the lexicographically
/// smallest one (with `-1 < +1`) is returned.
pub fn brute_force_min(problem: &QuboProblem) -> Result<(SpinVector, f64), Error> {
    let n = problem.dim();
    if n > MAX_ENUMERATION_DIM {
        return Err(Error::Capacity { n, max: MAX_ENUMERATION_DIM });
    }
    let magnitude: f64 = problem.as_slice().iter().map(|v| v.abs()).sum();
    let found = minimizers(
        n,
        tolerance(4.0 * magnitude),
        |z, b| {
            let row = &problem.as_slice()[b * n..(b + 1) * n];
            let field: f64 =
                row.iter().zip(z).enumerate().filter(|&(j, _)| j != b).map(|(_, (&q, &zj))| q * f64::from(zj)).sum();
            -4.0 * f64::from(z[b]) * field
        },
        |z| problem.evaluate_unchecked(z),
    );
    // spin 0 is the most significant position in lexicographic order
    let lex_key = |code: u32| (0..n).fold(0u32, |key, i| (key << 1) | (code >> i & 1));
    let code = found.codes.iter().copied().min_by_key(|&c| lex_key(c)).expect("enumeration visits at least one state");
    Ok((SpinVector::from_code(n, code), found.value))
}
