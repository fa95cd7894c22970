//! Exhaustive minimization over `{-1,1}ⁿ` in Gray-code order.
//!
//! A running value is updated with single-flip deltas and resynchronized
//! periodically; states whose running value is within `tol` of the best seen
//! are re-evaluated exactly, so the reported minimum and minimizer set are
//! those of the exact evaluator.

use alloc::vec::Vec;

const RESYNC_PERIOD: u32 = 1024;

/// Minimizers as codes: bit `i` set means spin `i` is `+1`.
pub(crate) struct Minimizers {
    pub value: f64,
    pub codes: Vec<u32>,
}

pub(crate) fn minimizers(
    n: usize,
    tol: f64,
    delta: impl Fn(&[i8], usize) -> f64,
    exact: impl Fn(&[i8]) -> f64,
) -> Minimizers {
    debug_assert!((1..=crate::MAX_ENUMERATION_DIM).contains(&n));
    let mut z = alloc::vec![-1i8; n];
    let mut code = 0u32;
    let mut running = exact(&z);
    let mut best_running = running;
    let mut best = Minimizers { value: running, codes: alloc::vec![0] };

    for step in 1..(1u32 << n) {
        let bit = step.trailing_zeros() as usize;
        running += delta(&z, bit);
        z[bit] = -z[bit];
        code ^= 1 << bit;
        if step % RESYNC_PERIOD == 0 {
            running = exact(&z);
        }
        if running < best_running {
            best_running = running;
        }
        if running <= best_running + tol {
            let value = exact(&z);
            if value < best.value {
                best.value = value;
                best.codes.clear();
                best.codes.push(code);
            } else if value == best.value {
                best.codes.push(code);
            }
        }
    }
    best
}

/// Absolute slack for the running-value filter given the total coefficient
/// magnitude of the function being minimized.
pub(crate) fn tolerance(magnitude: f64) -> f64 {
    1e-9 * (1.0 + magnitude)
}
