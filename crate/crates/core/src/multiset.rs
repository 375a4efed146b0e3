//! Multisets over a finite index set, stored as multiplicity vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A multiset over element indices `0..k`, stored as its multiplicity vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multiset {
    counts: Vec<u64>,
}

impl Multiset {
    pub fn zero(k: usize) -> Self {
        Multiset { counts: vec![0; k] }
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        Multiset { counts }
    }

    /// `mult` copies of element `index`.
    pub fn singleton(k: usize, index: usize, mult: u64) -> Self {
        let mut m = Self::zero(k);
        m.counts[index] = mult;
        m
    }

    /// Builds a multiset from a list of elements, repetitions allowed.
    pub fn from_elements(k: usize, elements: &[usize]) -> Result<Self> {
        let mut m = Self::zero(k);
        for &e in elements {
            if e >= k {
                return Err(Error::Malformed(format!("element {e} out of range 0..{k}")));
            }
            m.counts[e] += 1;
        }
        Ok(m)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.counts
    }

    /// Number of element indices this multiset ranges over.
    pub fn universe(&self) -> usize {
        self.counts.len()
    }

    pub fn get(&self, index: usize) -> u64 {
        self.counts.get(index).copied().unwrap_or(0)
    }

    pub fn contains(&self, index: usize) -> bool {
        self.get(index) > 0
    }

    /// Total number of elements counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn checked_size(&self) -> Result<u64> {
        self.counts
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or(Error::Overflow("multiset size"))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Iterates `(index, multiplicity)` over the support.
    pub fn support(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i, c))
    }

    /// Elements in ascending order, repeated by multiplicity.
    pub fn elements(&self) -> Vec<usize> {
        self.support()
            .flat_map(|(i, c)| std::iter::repeat_n(i, c as usize))
            .collect()
    }

    pub fn checked_scale(&self, factor: u64) -> Result<Multiset> {
        let counts = self
            .counts
            .iter()
            .map(|&c| c.checked_mul(factor).ok_or(Error::Overflow("multiset scaling")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Multiset { counts })
    }

    /// `self += factor * other`, componentwise.
    pub fn checked_add_scaled(&mut self, other: &Multiset, factor: u64) -> Result<()> {
        if other.counts.len() != self.counts.len() {
            return Err(Error::Malformed(format!(
                "multiset universes differ: {} vs {}",
                self.counts.len(),
                other.counts.len()
            )));
        }
        for (a, &b) in self.counts.iter_mut().zip(&other.counts) {
            *a = b
                .checked_mul(factor)
                .and_then(|v| a.checked_add(v))
                .ok_or(Error::Overflow("multiset sum"))?;
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Multiset) -> Result<Multiset> {
        let mut out = self.clone();
        out.checked_add_scaled(other, 1)?;
        Ok(out)
    }

    /// Relabels elements: the result has multiplicity `self[i]` at `map[i]`.
    pub fn relabel(&self, map: &[usize]) -> Multiset {
        let mut out = Self::zero(self.counts.len());
        for (i, &c) in self.counts.iter().enumerate() {
            out.counts[map[i]] += c;
        }
        out
    }

    pub(crate) fn divide_exact(&self, d: u64) -> Multiset {
        Multiset {
            counts: self.counts.iter().map(|&c| c / d).collect(),
        }
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_elements_counts_repeats() {
        let m = Multiset::from_elements(5, &[4, 4, 1, 2]).unwrap();
        assert_eq!(m.counts(), &[0, 1, 1, 0, 2]);
        assert_eq!(m.size(), 4);
        assert_eq!(m.elements(), vec![1, 2, 4, 4]);
        assert_eq!(m.to_string(), "{1, 2, 4, 4}");
    }

    #[test]
    fn from_elements_rejects_out_of_range() {
        assert!(Multiset::from_elements(3, &[3]).is_err());
    }

    #[test]
    fn add_and_scale() {
        let a = Multiset::from_counts(vec![1, 0, 2]);
        let b = Multiset::from_counts(vec![0, 3, 1]);
        assert_eq!(a.checked_add(&b).unwrap().counts(), &[1, 3, 3]);
        assert_eq!(a.checked_scale(3).unwrap().counts(), &[3, 0, 6]);
        assert!(a.checked_scale(u64::MAX).is_err());
    }

    #[test]
    fn relabel_swap() {
        let a = Multiset::from_counts(vec![1, 0, 2]);
        assert_eq!(a.relabel(&[0, 2, 1]).counts(), &[1, 2, 0]);
    }
}
