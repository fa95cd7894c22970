#![allow(dead_code)]

use qals_core::rng::StreamRng;
use qals_core::{SpinVector, TopologyGraph, WeightMatrix};
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StreamRng {
    StreamRng::seed_from_u64(seed)
}

/// Every spin vector of length `n`, spin 0 most significant, `-1 < +1`.
pub fn all_spins(n: usize) -> impl Iterator<Item = SpinVector> {
    (0u32..1 << n).map(move |code| {
        SpinVector::new((0..n).map(|i| if code >> (n - 1 - i) & 1 == 1 { 1 } else { -1 }).collect()).unwrap()
    })
}

/// Minimum energy and minimizer set by direct evaluation of every state.
pub fn enumerate_energy(theta: &WeightMatrix<'_>) -> (f64, Vec<SpinVector>) {
    let mut min = f64::INFINITY;
    let mut argmin = Vec::new();
    for z in all_spins(theta.dim()) {
        let e = theta.energy(&z).unwrap();
        if e < min {
            min = e;
            argmin.clear();
        }
        if e == min {
            argmin.push(z);
        }
    }
    (min, argmin)
}

pub fn random_weights<'g>(graph: &'g TopologyGraph, rng: &mut impl Rng) -> WeightMatrix<'g> {
    let n = graph.node_count();
    let biases: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let couplings: Vec<(usize, usize, f64)> =
        graph.edges().iter().map(|&(i, j)| (i, j, rng.random_range(-1.0..1.0))).collect();
    WeightMatrix::from_parts(graph, &biases, &couplings).unwrap()
}

/// ±J ensemble: every bias and coupling independently `-1` or `+1`.
pub fn random_pm_one_weights<'g>(graph: &'g TopologyGraph, rng: &mut impl Rng) -> WeightMatrix<'g> {
    let mut sign = || if rng.random::<bool>() { 1.0 } else { -1.0 };
    let biases: Vec<f64> = (0..graph.node_count()).map(|_| sign()).collect();
    let couplings: Vec<(usize, usize, f64)> = graph.edges().iter().map(|&(i, j)| (i, j, sign())).collect();
    WeightMatrix::from_parts(graph, &biases, &couplings).unwrap()
}
