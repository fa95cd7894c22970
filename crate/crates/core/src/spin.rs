use alloc::vec::Vec;
use core::ops::{Index, Neg};

use rand::{Rng, RngCore};

use crate::Error;

/// A candidate solution: every entry is exactly `-1` or `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(transparent))]
pub struct SpinVector(Vec<i8>);

impl SpinVector {
    pub fn new(values: Vec<i8>) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !matches!(v, -1 | 1)) {
            return Err(Error::InvalidSpin { index, value });
        }
        Ok(Self(values))
    }

    /// All spins set to `value` (which must be `-1` or `+1`).
    pub fn uniform(n: usize, value: i8) -> Result<Self, Error> {
        Self::new(alloc::vec![value; n])
    }

    pub fn random<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self((0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect())
    }

    /// Bits of `code` read as spins: bit `i` set means `+1` at position `i`.
    pub(crate) fn from_code(n: usize, code: u32) -> Self {
        Self((0..n).map(|i| if code >> i & 1 == 1 { 1 } else { -1 }).collect())
    }

    pub(crate) fn from_raw(values: Vec<i8>) -> Self {
        debug_assert!(values.iter().all(|v| matches!(v, -1 | 1)));
        Self(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = i8> + '_ {
        self.0.iter().copied()
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] = -self.0[i];
    }

    pub fn into_inner(self) -> Vec<i8> {
        self.0
    }
}

impl Index<usize> for SpinVector {
    type Output = i8;

    fn index(&self, i: usize) -> &i8 {
        &self.0[i]
    }
}

impl Neg for SpinVector {
    type Output = SpinVector;

    fn neg(mut self) -> SpinVector {
        self.0.iter_mut().for_each(|v| *v = -*v);
        self
    }
}

impl TryFrom<Vec<i8>> for SpinVector {
    type Error = Error;

    fn try_from(values: Vec<i8>) -> Result<Self, Error> {
        Self::new(values)
    }
}

impl core::fmt::Display for SpinVector {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_non_spin_entries() {
        assert_eq!(SpinVector::new(vec![1, 0, -1]), Err(Error::InvalidSpin { index: 1, value: 0 }));
        assert_eq!(SpinVector::new(vec![]), Err(Error::EmptyDimension));
    }

    #[test]
    fn negation_flips_every_entry() {
        let z = SpinVector::new(vec![1, -1, 1]).unwrap();
        assert_eq!((-z).as_slice(), &[-1, 1, -1]);
    }

    #[test]
    fn code_bits_map_to_positions() {
        assert_eq!(SpinVector::from_code(3, 0b101).as_slice(), &[1, -1, 1]);
    }
}
