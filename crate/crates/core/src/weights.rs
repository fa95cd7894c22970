use alloc::vec::Vec;
use core::ops::Add;

use crate::{Error, SpinVector, TopologyGraph};

/// Annealer weights: biases on the diagonal, couplings on the edges of the
/// supporting topology, zero elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix<'g> {
    graph: &'g TopologyGraph,
    theta: Vec<f64>,
}

impl<'g> WeightMatrix<'g> {
    pub fn zeros(graph: &'g TopologyGraph) -> Self {
        let n = graph.node_count();
        Self { graph, theta: alloc::vec![0.0; n * n] }
    }

    /// Validates symmetry and that every off-edge entry is zero.
    pub fn from_dense(graph: &'g TopologyGraph, theta: Vec<f64>) -> Result<Self, Error> {
        let n = graph.node_count();
        if theta.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: theta.len() });
        }
        for row in 0..n {
            for col in 0..n {
                let v = theta[row * n + col];
                if !v.is_finite() {
                    return Err(Error::NonFinite { row, col });
                }
                if v != theta[col * n + row] {
                    return Err(Error::NotSymmetric { row, col });
                }
                if v != 0.0 && !graph.adjacent(row, col) {
                    return Err(Error::OffSupport { row, col });
                }
            }
        }
        Ok(Self { graph, theta })
    }

    /// Biases `θ_i` and couplings `θ_ij` (each edge once, `i < j`).
    pub fn from_parts(
        graph: &'g TopologyGraph,
        biases: &[f64],
        couplings: &[(usize, usize, f64)],
    ) -> Result<Self, Error> {
        let n = graph.node_count();
        if biases.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: biases.len() });
        }
        let mut w = Self::zeros(graph);
        for (i, &b) in biases.iter().enumerate() {
            w.theta[i * n + i] = b;
        }
        for &(i, j, v) in couplings {
            if i >= n || j >= n || !graph.has_edge(i, j) {
                return Err(Error::OffSupport { row: i, col: j });
            }
            w.theta[i * n + j] = v;
            w.theta[j * n + i] = v;
        }
        Ok(w)
    }

    /// Caller guarantees symmetry and support.
    pub(crate) fn from_raw(graph: &'g TopologyGraph, theta: Vec<f64>) -> Self {
        Self { graph, theta }
    }

    pub fn graph(&self) -> &'g TopologyGraph {
        self.graph
    }

    pub fn dim(&self) -> usize {
        self.graph.node_count()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.theta[i * self.dim() + j]
    }

    pub fn bias(&self, i: usize) -> f64 {
        self.get(i, i)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.theta
    }

    /// `(i, j, θ_ij)` for every edge of the support.
    pub fn couplings(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.graph.edges().iter().map(move |&(i, j)| (i, j, self.get(i, j)))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { graph: self.graph, theta: self.theta.iter().map(|v| v * factor).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.theta.iter().all(|&v| v == 0.0)
    }

    pub fn energy(&self, z: &SpinVector) -> Result<f64, Error> {
        if z.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: z.len() });
        }
        Ok(self.energy_unchecked(z.as_slice()))
    }

    pub(crate) fn energy_unchecked(&self, z: &[i8]) -> f64 {
        let n = self.dim();
        let mut e = 0.0;
        for (i, &zi) in z.iter().enumerate() {
            e += self.theta[i * n + i] * f64::from(zi);
        }
        for &(i, j) in self.graph.edges() {
            e += self.theta[i * n + j] * f64::from(z[i] * z[j]);
        }
        e
    }

    /// Energy change from flipping spin `i` of `z`.
    pub(crate) fn flip_delta(&self, z: &[i8], i: usize) -> f64 {
        let n = self.dim();
        let row = &self.theta[i * n..(i + 1) * n];
        let mut field = row[i];
        for &j in self.graph.neighbors(i) {
            field += row[j] * f64::from(z[j]);
        }
        -2.0 * f64::from(z[i]) * field
    }

    /// Sum of absolute weights over the diagonal and the edges.
    pub(crate) fn magnitude(&self) -> f64 {
        let diag: f64 = (0..self.dim()).map(|i| self.bias(i).abs()).sum();
        diag + self.couplings().map(|(_, _, v)| v.abs()).sum::<f64>()
    }
}

impl<'g> Add for &WeightMatrix<'g> {
    type Output = Result<WeightMatrix<'g>, Error>;

    fn add(self, rhs: Self) -> Self::Output {
        if self.graph != rhs.graph {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: rhs.dim() });
        }
        let theta = self.theta.iter().zip(&rhs.theta).map(|(a, b)| a + b).collect();
        Ok(WeightMatrix { graph: self.graph, theta })
    }
}

/// `E(Θ, z) = Σ θ_i z_i + Σ_{edges} θ_ij z_i z_j`, each edge counted once.
pub fn energy(theta: &WeightMatrix<'_>, z: &SpinVector) -> Result<f64, Error> {
    theta.energy(z)
}
