//! Annealer topology graphs.
//!
//! Every graph carries an adjacency mask with a unit diagonal so that the
//! Hadamard masking in the encoder keeps the linear biases.

use alloc::vec::Vec;

use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyGraph {
    n: usize,
    /// Sorted, deduplicated, each pair stored as `(i, j)` with `i < j`.
    edges: Vec<(usize, usize)>,
    mask: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
}

impl TopologyGraph {
    fn build(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut mask = alloc::vec![false; n * n];
        let mut neighbors = alloc::vec![Vec::new(); n];
        for i in 0..n {
            mask[i * n + i] = true;
        }
        for &(i, j) in &edges {
            mask[i * n + j] = true;
            mask[j * n + i] = true;
            neighbors[i].push(j);
            neighbors[j].push(i);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Self { n, edges, mask, neighbors }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Mask entry `A_ij`; `true` on the diagonal and on every edge.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.mask[i * self.n + j]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adjacent(i, j)
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }
}

/// Chimera grid size: `m × m` unit cells of `K₄,₄`, `8m²` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChimeraSpec {
    m: usize,
}

impl ChimeraSpec {
    pub fn new(m: usize) -> Result<Self, Error> {
        if m == 0 {
            return Err(Error::InvalidParameter { name: "chimera size", reason: "must be at least 1" });
        }
        Ok(Self { m })
    }

    pub fn cells_per_side(&self) -> usize {
        self.m
    }

    pub fn node_count(&self) -> usize {
        8 * self.m * self.m
    }

    /// Index of qubit `t` (0..8) in cell `(row, col)`.
    pub fn index(&self, row: usize, col: usize, t: usize) -> usize {
        8 * (row * self.m + col) + t
    }
}

pub fn complete_graph(n: usize) -> Result<TopologyGraph, Error> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Ok(TopologyGraph::build(n, edges))
}

/// Standard Chimera layout. Qubits `0..4` of a cell form the left shore and
/// couple vertically to the same qubit of the neighboring cells; qubits `4..8`
/// form the right shore and couple horizontally.
pub fn chimera_graph(spec: ChimeraSpec) -> TopologyGraph {
    let m = spec.m;
    let mut edges = Vec::with_capacity(16 * m * m + 8 * m * (m - 1));
    for row in 0..m {
        for col in 0..m {
            for left in 0..4 {
                for right in 4..8 {
                    edges.push((spec.index(row, col, left), spec.index(row, col, right)));
                }
            }
            if row + 1 < m {
                for t in 0..4 {
                    edges.push((spec.index(row, col, t), spec.index(row + 1, col, t)));
                }
            }
            if col + 1 < m {
                for t in 4..8 {
                    edges.push((spec.index(row, col, t), spec.index(row, col + 1, t)));
                }
            }
        }
    }
    TopologyGraph::build(spec.node_count(), edges)
}

pub fn graph_from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<TopologyGraph, Error> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    let mut edges = Vec::with_capacity(pairs.len());
    for &(i, j) in pairs {
        if i >= n || j >= n || i == j {
            return Err(Error::InvalidEdge { i, j, n });
        }
        edges.push((i.min(j), i.max(j)));
    }
    Ok(TopologyGraph::build(n, edges))
}
