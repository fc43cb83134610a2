//! Sparse vectors and an incremental echelon basis, used by the symmetrizer
//! code where operators on V^{⊗m} are too large to handle densely.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use super::field::CycNum;
use super::matrix::CycMatrix;

/// Sparse vector indexed by `u32`. Never stores zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: BTreeMap<u32, CycNum>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(idx: u32, order: u32) -> Self {
        let mut v = Self::new();
        v.entries.insert(idx, CycNum::one(order));
        v
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, idx: u32) -> Option<&CycNum> {
        self.entries.get(&idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &CycNum)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn leading(&self) -> Option<(u32, &CycNum)> {
        self.entries.iter().next().map(|(k, v)| (*k, v))
    }

    /// `self[idx] += c`.
    pub fn add_term(&mut self, idx: u32, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self[idx] += a·b`.
    pub fn add_product(&mut self, idx: u32, a: &CycNum, b: &CycNum) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let c = a * b;
        match self.entries.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += s·o`.
    pub fn axpy(&mut self, s: &CycNum, o: &SparseVec) {
        for (k, v) in o.iter() {
            self.add_product(k, s, v);
        }
    }

    pub fn scale(&self, s: &CycNum) -> SparseVec {
        let mut out = SparseVec::new();
        out.axpy(s, self);
        out
    }

    pub fn to_dense(&self, order: u32, len: usize) -> Vec<CycNum> {
        let mut d = vec![CycNum::zero(order); len];
        for (k, v) in self.iter() {
            d[k as usize] = v.clone();
        }
        d
    }

    pub fn from_dense(v: &[CycNum]) -> Self {
        let mut s = SparseVec::new();
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                s.entries.insert(k as u32, x.clone());
            }
        }
        s
    }
}

/// Column-sparse square or rectangular operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn identity(order: u32, size: usize) -> Self {
        SparseMatrix {
            rows: size,
            columns: (0..size as u32).map(|k| SparseVec::unit(k, order)).collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (k, c) in v.iter() {
            out.axpy(c, &self.columns[k as usize]);
        }
        out
    }

    /// `self · o` (apply `o` first).
    pub fn compose(&self, o: &SparseMatrix) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            columns: o.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add_assign(&mut self, o: &SparseMatrix) {
        for (a, b) in self.columns.iter_mut().zip(&o.columns) {
            for (k, v) in b.iter() {
                a.add_term(k, v);
            }
        }
    }

    pub fn to_dense(&self, order: u32) -> CycMatrix {
        let mut m = CycMatrix::zeros(order, self.rows, self.cols());
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col.iter() {
                m.set(r as usize, c, v.clone());
            }
        }
        m
    }

    pub fn from_dense(m: &CycMatrix) -> Self {
        SparseMatrix {
            rows: m.rows(),
            columns: (0..m.cols()).map(|c| SparseVec::from_dense(&m.column(c))).collect(),
        }
    }
}

/// Semi-echelon basis grown one vector at a time. Each stored row has
/// leading coefficient 1 at its pivot.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    pivots: HashMap<u32, SparseVec>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        // Subtracting a row with pivot p only touches indices >= p, so
        // walking the support upwards terminates.
        let mut cursor: Option<u32> = None;
        loop {
            let next = match cursor {
                None => v.leading().map(|(k, _)| k),
                Some(c) => v.entries.range(c + 1..).next().map(|(k, _)| *k),
            };
            let Some(k) = next else { break };
            if let Some(row) = self.pivots.get(&k) {
                let f = v.get(k).expect("present").neg_ref();
                v.axpy(&f, row);
            }
            cursor = Some(k);
        }
        v
    }

    /// Inserts `v`; returns true iff the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((k, lead)) = r.leading() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading entry");
        let row = r.scale(&inv);
        self.pivots.insert(k, row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn basis(&self) -> Vec<SparseVec> {
        let mut keys: Vec<u32> = self.pivots.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter().map(|k| self.pivots[&k].clone()).collect()
    }
}
