//! Permutation encodings between logical variables and annealer qubits.

use alloc::vec::Vec;

use crate::{Error, Permutation, QuboProblem, SpinVector, TopologyGraph, WeightMatrix};

/// `Θ = PᵀQ′P ∘ A`: logical entry `(i, j)` lands on qubits `(σ(i), σ(j))`
/// and survives only where the topology has a coupler (or on the diagonal).
pub fn encode<'g>(
    qprime: &QuboProblem,
    sigma: &Permutation,
    graph: &'g TopologyGraph,
) -> Result<WeightMatrix<'g>, Error> {
    let n = qprime.dim();
    if sigma.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: sigma.len() });
    }
    if graph.node_count() != n {
        return Err(Error::DimensionMismatch { expected: n, found: graph.node_count() });
    }
    let mut theta = alloc::vec![0.0; n * n];
    for i in 0..n {
        let a = sigma.image(i);
        for j in 0..n {
            let b = sigma.image(j);
            if graph.adjacent(a, b) {
                theta[a * n + b] = qprime.get(i, j);
            }
        }
    }
    Ok(WeightMatrix::from_raw(graph, theta))
}

/// Reads an annealer sample back in logical order: `z_i = y_{σ(i)}`.
pub fn decode(y: &SpinVector, sigma: &Permutation) -> Result<SpinVector, Error> {
    if y.len() != sigma.len() {
        return Err(Error::DimensionMismatch { expected: sigma.len(), found: y.len() });
    }
    Ok(SpinVector::from_raw(sigma.images().iter().map(|&q| y[q]).collect()))
}

/// Inverse of [`decode`]: places `z_i` on qubit `σ(i)`.
pub fn map_to_qubits(z: &SpinVector, sigma: &Permutation) -> Result<SpinVector, Error> {
    if z.len() != sigma.len() {
        return Err(Error::DimensionMismatch { expected: sigma.len(), found: z.len() });
    }
    let mut y: Vec<i8> = alloc::vec![0; z.len()];
    for (i, v) in z.iter().enumerate() {
        y[sigma.image(i)] = v;
    }
    Ok(SpinVector::from_raw(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{complete_graph, graph_from_edge_list};
    use alloc::vec;

    fn spins(v: &[i8]) -> SpinVector {
        SpinVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn complete_graph_identity_keeps_everything() {
        let q = QuboProblem::from_rows(&[&[1.0, 2.0, 3.0], &[2.0, 4.0, 5.0], &[3.0, 5.0, 6.0]]).unwrap();
        let g = complete_graph(3).unwrap();
        let w = encode(&q, &Permutation::identity(3), &g).unwrap();
        assert_eq!(w.as_slice(), q.as_slice());
    }

    #[test]
    fn edgeless_graph_keeps_permuted_diagonal() {
        let q = QuboProblem::from_rows(&[&[1.0, 2.0, 3.0], &[2.0, 4.0, 5.0], &[3.0, 5.0, 6.0]]).unwrap();
        let g = graph_from_edge_list(3, &[]).unwrap();
        let sigma = Permutation::new(vec![2, 0, 1]).unwrap();
        let w = encode(&q, &sigma, &g).unwrap();
        assert_eq!(w.as_slice(), &[4.0, 0.0, 0.0, 0.0, 6.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn masked_coupling_vanishes() {
        let q = QuboProblem::from_rows(&[&[0.0, 5.0], &[5.0, 0.0]]).unwrap();
        let g = graph_from_edge_list(2, &[]).unwrap();
        let w = encode(&q, &Permutation::identity(2), &g).unwrap();
        assert!(w.is_zero());
    }

    #[test]
    fn permuted_entries_follow_images() {
        let q = QuboProblem::from_rows(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 7.0], &[0.0, 7.0, 0.0]]).unwrap();
        // path 0 - 1 - 2 on the qubits; variables 1,2 land on qubits 0,1
        let g = graph_from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let sigma = Permutation::new(vec![2, 0, 1]).unwrap();
        let w = encode(&q, &sigma, &g).unwrap();
        assert_eq!(w.get(0, 1), 7.0);
        assert_eq!(w.get(2, 0), 0.0);
    }

    #[test]
    fn decode_relabels() {
        let y = spins(&[1, -1]);
        assert_eq!(decode(&y, &Permutation::identity(2)).unwrap(), y);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(decode(&y, &swap).unwrap(), spins(&[-1, 1]));
    }

    #[test]
    fn decode_inverts_qubit_mapping() {
        let z = spins(&[1, -1, -1, 1, 1]);
        let sigma = Permutation::new(vec![3, 0, 4, 1, 2]).unwrap();
        assert_eq!(decode(&map_to_qubits(&z, &sigma).unwrap(), &sigma).unwrap(), z);
    }
}
