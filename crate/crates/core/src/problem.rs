use alloc::vec::Vec;

use crate::{Error, SpinVector, TabuMatrix};

/// Anything the search can evaluate on a candidate.
///
/// [`QuboProblem`] is the canonical implementation; other objectives are only
/// useful for driving the search loop with a hand-written landscape.
pub trait Objective {
    fn dim(&self) -> usize;
    fn evaluate(&self, z: &SpinVector) -> f64;
}

/// A symmetric real matrix `Q` defining `f(z) = zᵀQz` over `z ∈ {-1,1}ⁿ`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct QuboProblem {
    n: usize,
    q: Vec<f64>,
}

impl QuboProblem {
    /// Builds from a row-major `n × n` buffer; symmetry is checked exactly.
    pub fn new(n: usize, q: Vec<f64>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if q.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: q.len() });
        }
        for row in 0..n {
            for col in 0..n {
                let v = q[row * n + col];
                if !v.is_finite() {
                    return Err(Error::NonFinite { row, col });
                }
                if col > row && v != q[col * n + row] {
                    return Err(Error::NotSymmetric { row, col });
                }
            }
        }
        Ok(Self { n, q })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self, Error> {
        let n = rows.len();
        let mut q = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            q.extend_from_slice(row);
        }
        Self::new(n, q)
    }

    pub fn zeros(n: usize) -> Result<Self, Error> {
        Self::new(n, alloc::vec![0.0; n * n])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.q[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.q
    }

    /// `Q + λS`, the tabu-deformed matrix handed to the encoder.
    pub fn with_tabu(&self, tabu: &TabuMatrix, lambda: f64) -> Result<Self, Error> {
        if tabu.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: tabu.dim() });
        }
        let q = self.q.iter().zip(tabu.as_slice()).map(|(&q, &s)| q + lambda * s as f64).collect();
        Ok(Self { n: self.n, q })
    }

    /// `f(z) = zᵀQz`, summed over all ordered pairs.
    pub fn evaluate(&self, z: &SpinVector) -> Result<f64, Error> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: z.len() });
        }
        Ok(self.evaluate_unchecked(z.as_slice()))
    }

    pub(crate) fn evaluate_unchecked(&self, z: &[i8]) -> f64 {
        let mut total = 0.0;
        for (i, row) in self.q.chunks_exact(self.n).enumerate() {
            let mut acc = 0.0;
            for (&q, &zj) in row.iter().zip(z) {
                acc += q * f64::from(zj);
            }
            total += f64::from(z[i]) * acc;
        }
        total
    }
}

impl Objective for QuboProblem {
    fn dim(&self) -> usize {
        self.n
    }

    fn evaluate(&self, z: &SpinVector) -> f64 {
        self.evaluate_unchecked(z.as_slice())
    }
}

/// Free-function form of [`QuboProblem::evaluate`].
pub fn objective(problem: &QuboProblem, z: &SpinVector) -> Result<f64, Error> {
    problem.evaluate(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn spins(v: &[i8]) -> SpinVector {
        SpinVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn off_diagonal_pair_counts_twice() {
        let q = QuboProblem::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert_eq!(objective(&q, &spins(&[1, -1])).unwrap(), -2.0);
    }

    #[test]
    fn identity_is_constant() {
        let q = QuboProblem::from_rows(&[&[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        for z in [[1, 1], [1, -1], [-1, 1], [-1, -1]] {
            assert_eq!(objective(&q, &spins(&z)).unwrap(), 2.0);
        }
    }

    #[test]
    fn mixed_matrix_minimum() {
        let q = QuboProblem::from_rows(&[&[0.5, -1.0], &[-1.0, 0.5]]).unwrap();
        assert_eq!(objective(&q, &spins(&[1, 1])).unwrap(), -1.0);
        assert_eq!(objective(&q, &spins(&[-1, -1])).unwrap(), -1.0);
        assert_eq!(objective(&q, &spins(&[1, -1])).unwrap(), 3.0);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let q = QuboProblem::zeros(3).unwrap();
        assert_eq!(objective(&q, &spins(&[1, 1])), Err(Error::DimensionMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn asymmetric_input_rejected() {
        let err = QuboProblem::new(2, vec![0.0, 1.0, 2.0, 0.0]).unwrap_err();
        assert_eq!(err, Error::NotSymmetric { row: 0, col: 1 });
        assert_eq!(QuboProblem::new(0, vec![]).unwrap_err(), Error::EmptyDimension);
    }
}
