//! The tabu matrix `S = Σ_α [z⁽ᵅ⁾⊗z⁽ᵅ⁾ − I + diag(z⁽ᵅ⁾)]` of penalized candidates.

use alloc::vec::Vec;

use crate::{Error, Permutation, SpinVector};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TabuMatrix {
    n: usize,
    s: Vec<i64>,
    count: u64,
}

impl TabuMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, s: alloc::vec![0; n * n], count: 0 }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of candidates folded into the matrix.
    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.s[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.s
    }

    /// Adds `z⊗z − I + diag(z)`: `z_i` on the diagonal, `z_i z_j` elsewhere.
    pub fn accumulate(&mut self, z: &SpinVector) -> Result<(), Error> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: z.len() });
        }
        let z = z.as_slice();
        for i in 0..self.n {
            let row = &mut self.s[i * self.n..(i + 1) * self.n];
            for (j, cell) in row.iter_mut().enumerate() {
                *cell += if i == j { i64::from(z[i]) } else { i64::from(z[i] * z[j]) };
            }
        }
        self.count += 1;
        Ok(())
    }

    /// Checks symmetry, `|S_ij| ≤ m` and `S_ij ≡ m (mod 2)`.
    pub fn check_invariants(&self) -> bool {
        let m = self.count as i64;
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let v = self.get(i, j);
                v == self.get(j, i) && v.abs() <= m && (v - m).rem_euclid(2) == 0
            })
        })
    }
}

pub fn tabu_init(z: &SpinVector) -> TabuMatrix {
    let mut s = TabuMatrix::zeros(z.len());
    s.accumulate(z).expect("dimension matches by construction");
    s
}

pub fn tabu_update(mut s: TabuMatrix, z: &SpinVector) -> Result<TabuMatrix, Error> {
    s.accumulate(z)?;
    Ok(s)
}

/// `S_π = P_πᵀ S P_π`, i.e. `S'[σ(i)][σ(j)] = S[i][j]`.
pub fn conjugate_tabu(s: &TabuMatrix, sigma: &Permutation) -> Result<TabuMatrix, Error> {
    let n = s.n;
    if sigma.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: sigma.len() });
    }
    let mut out = alloc::vec![0; n * n];
    for i in 0..n {
        let si = sigma.image(i);
        for j in 0..n {
            out[si * n + sigma.image(j)] = s.s[i * n + j];
        }
    }
    Ok(TabuMatrix { n, s: out, count: s.count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn spins(v: &[i8]) -> SpinVector {
        SpinVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn init_from_toy_candidate() {
        let s = tabu_init(&spins(&[1, -1]));
        assert_eq!(s.as_slice(), &[1, -1, -1, -1]);
        assert_eq!(s.count(), 1);

        let s = tabu_init(&spins(&[-1, 1]));
        assert_eq!(s.as_slice(), &[-1, -1, -1, 1]);

        let s = tabu_init(&spins(&[1, 1, 1]));
        assert!(s.as_slice().iter().all(|&v| v == 1));
    }

    #[test]
    fn update_reproduces_toy_second_step() {
        let s = tabu_update(tabu_init(&spins(&[1, -1])), &spins(&[1, 1])).unwrap();
        assert_eq!(s.as_slice(), &[2, 0, 0, 0]);
        assert_eq!(s.count(), 2);
    }

    #[test]
    fn update_of_zero_equals_init() {
        let z = spins(&[1, -1, -1, 1]);
        assert_eq!(tabu_update(TabuMatrix::zeros(4), &z).unwrap(), tabu_init(&z));
    }

    #[test]
    fn opposite_pair_cancels_diagonal() {
        let z = spins(&[1, -1, 1]);
        let s = tabu_update(tabu_init(&z), &-z.clone()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 0 } else { 2 * i64::from(z[i] * z[j]) };
                assert_eq!(s.get(i, j), expected);
            }
        }
        assert!(s.check_invariants());
    }

    #[test]
    fn swap_conjugation() {
        let s = tabu_init(&spins(&[1, -1]));
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let c = conjugate_tabu(&s, &swap).unwrap();
        assert_eq!(c.as_slice(), &[-1, -1, -1, 1]);
        assert_eq!(c, tabu_init(&spins(&[-1, 1])));
        assert_eq!(conjugate_tabu(&s, &Permutation::identity(2)).unwrap(), s);
    }

    #[test]
    fn dimension_checked() {
        assert!(tabu_update(TabuMatrix::zeros(3), &spins(&[1, 1])).is_err());
        assert!(conjugate_tabu(&TabuMatrix::zeros(3), &Permutation::identity(2)).is_err());
    }
}
