use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use crate::Error;

/// Variable-to-qubit assignment: `image(i)` is the qubit hosting variable `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(transparent))]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, Error> {
        let mut seen = alloc::vec![false; images.len()];
        for &v in &images {
            if v >= images.len() || core::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation);
            }
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.0.len()];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s] = i;
        }
        Self(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&i| self.0[i]).collect())
    }
}

/// Marks each position independently with probability `pr` and shuffles the
/// images of the marked positions among themselves.
///
/// `pr = 0` returns the input unchanged; `pr = 1` returns a uniformly random
/// rearrangement of the input's images.
pub fn modify_permutation<R: RngCore + ?Sized>(sigma: &Permutation, pr: f64, rng: &mut R) -> Permutation {
    let pr = pr.clamp(0.0, 1.0);
    let marked: Vec<usize> = (0..sigma.len()).filter(|_| rng.random_bool(pr)).collect();
    let mut sources = marked.clone();
    sources.shuffle(rng);
    let mut out = sigma.0.clone();
    for (&dst, &src) in marked.iter().zip(&sources) {
        out[dst] = sigma.0[src];
    }
    Permutation(out)
}
