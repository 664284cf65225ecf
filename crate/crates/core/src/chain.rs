//! Sparse chain vectors.

use crate::field::Field;

/// A sparse vector with strictly increasing indices and no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(index: usize) -> Self {
        SparseVec {
            entries: vec![(index, F::one())],
        }
    }

    /// Entries may come in any order; duplicates are summed.
    pub fn from_entries(mut entries: Vec<(usize, F)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, F)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.add(&v),
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: out }
    }

    pub fn from_dense(values: &[F]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, F)> {
        self.entries.iter()
    }

    /// Largest index with a nonzero entry.
    pub fn low(&self) -> Option<(usize, &F)> {
        self.entries.last().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, index: usize) -> F {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn scaled(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.mul(s))).collect(),
        }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &F, other: &SparseVec<F>) {
        if s.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = self.entries.iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, va)), Some((ib, vb))) => {
                    if ia < ib {
                        out.push((*ia, va.clone()));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, vb.mul(s)));
                        b.next();
                    } else {
                        let v = va.add(&vb.mul(s));
                        if !v.is_zero() {
                            out.push((*ia, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ia, va)), None) => {
                    out.push((*ia, va.clone()));
                    a.next();
                }
                (None, Some((ib, vb))) => {
                    out.push((*ib, vb.mul(s)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    /// Apply an index map; entries mapped to `None` must be zero or the call panics.
    pub fn reindex(&self, map: impl Fn(usize) -> Option<usize>) -> Option<Self> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for (i, v) in &self.entries {
            entries.push((map(*i)?, v.clone()));
        }
        Some(Self::from_entries(entries))
    }
}
