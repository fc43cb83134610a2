//! Dense matrices over ℚ(ζₙ) with exact elimination.

use std::fmt;

use serde::{Serialize, Serializer};

use super::field::CycNum;
use crate::error::{Error, Result};

/// Row-major dense matrix. All entries are expected to share one order;
/// [`mat_rank`] and [`CycMatrix::null_space`] verify this.
#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    order: u32,
    entries: Vec<CycNum>,
}

impl CycMatrix {
    pub fn zeros(order: u32, rows: usize, cols: usize) -> Self {
        CycMatrix {
            rows,
            cols,
            order,
            entries: vec![CycNum::zero(order); rows * cols],
        }
    }

    pub fn identity(order: u32, size: usize) -> Self {
        let mut m = Self::zeros(order, size, size);
        for k in 0..size {
            m.set(k, k, CycNum::one(order));
        }
        m
    }

    /// Builds from row-major entries. Orders are not checked here.
    pub fn from_entries(order: u32, rows: usize, cols: usize, entries: Vec<CycNum>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(CycMatrix {
            rows,
            cols,
            order,
            entries,
        })
    }

    pub fn from_rows(order: u32, rows: Vec<Vec<CycNum>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Self::from_entries(order, r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &CycNum {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut CycNum {
        &mut self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycNum) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[CycNum] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<CycNum> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycNum::is_zero)
    }

    fn check_orders(&self) -> Result<()> {
        match self.entries.iter().find(|e| e.order() != self.order) {
            Some(e) => Err(Error::DomainMismatch(format!(
                "matrix of order {} holds an entry of order {}",
                self.order,
                e.order()
            ))),
            None => Ok(()),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.order, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        if self.order != o.order {
            return Err(Error::DomainMismatch("matrix orders differ".into()));
        }
        let mut out = Self::zeros(self.order, self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * o.cols + c].add_mul_assign(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::InvalidArgument("shape mismatch".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(self.order, self.rows, self.cols, entries)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&CycNum::from_int(o.order, -1)))
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.order, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Kronecker product `self ⊗ o` with index `r_self·o.rows + r_o`.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.order, self.rows * o.rows, self.cols * o.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..o.rows {
                    for c2 in 0..o.cols {
                        let b = o.get(r2, c2);
                        if !b.is_zero() {
                            out.set(r1 * o.rows + r2, c1 * o.cols + c2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[CycNum]) -> Result<Vec<CycNum>> {
        if v.len() != self.cols {
            return Err(Error::InvalidArgument("vector length mismatch".into()));
        }
        let mut out = vec![CycNum::zero(self.order); self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            for (c, x) in v.iter().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() && !x.is_zero() {
                    slot.add_mul_assign(a, x);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and pivot columns. Pivot choice is the first
    /// nonzero entry in column order.
    pub fn rref(&self) -> Result<(Self, Vec<usize>)> {
        self.check_orders()?;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.entries.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m.get(row, col).inv()?;
            for c in col..m.cols {
                let v = m.get(row, c);
                if !v.is_zero() {
                    let s = v * &inv;
                    m.set(row, c, s);
                }
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in col..m.cols {
                    let pv = m.get(row, c).clone();
                    if !pv.is_zero() {
                        let t = &f * &pv;
                        m.get_mut(r, c).sub_assign_ref(&t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok((m, pivots))
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn null_space(&self) -> Result<Vec<Vec<CycNum>>> {
        let (r, pivots) = self.rref()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![CycNum::zero(self.order); self.cols];
            v[f] = CycNum::one(self.order);
            for (prow, &pc) in pivots.iter().enumerate() {
                v[pc] = r.get(prow, f).neg_ref();
            }
            basis.push(v);
        }
        Ok(basis)
    }

    /// Text grid, one row per line.
    pub fn render(&self) -> String {
        let cells: Vec<String> = self.entries.iter().map(CycNum::render).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for r in 0..self.rows {
            out.push('[');
            for c in 0..self.cols {
                let s = &cells[r * self.cols + c];
                if c > 0 {
                    out.push_str(", ");
                }
                out.push_str(&format!("{s:>width$}"));
            }
            out.push_str("]\n");
        }
        out
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycMatrix {}x{} over Q(zeta_{})\n{}", self.rows, self.cols, self.order, self.render())
    }
}

impl Serialize for CycMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[CycNum]> = (0..self.rows).map(|r| self.row(r)).collect();
        rows.serialize(s)
    }
}

/// Exact rank over ℚ(ζₙ).
pub fn mat_rank(m: &CycMatrix) -> Result<usize> {
    Ok(m.rref()?.1.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(mat_rank(&CycMatrix::identity(5, 3)).unwrap(), 3);
        assert_eq!(mat_rank(&CycMatrix::zeros(5, 2, 5)).unwrap(), 0);
        let z = |e| CycNum::root_power(3, e);
        let m = CycMatrix::from_rows(3, vec![vec![z(0), z(1)], vec![z(2), z(0)]]).unwrap();
        assert_eq!(mat_rank(&m).unwrap(), 1);
    }

    #[test]
    fn mixed_entries_rejected() {
        let m = CycMatrix::from_rows(3, vec![vec![CycNum::one(3), CycNum::one(4)]]).unwrap();
        assert!(matches!(mat_rank(&m), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn null_space_is_kernel() {
        let z = |e| CycNum::root_power(4, e);
        let m = CycMatrix::from_rows(4, vec![vec![z(0), z(1), z(2)], vec![z(1), z(2), z(3)]]).unwrap();
        let ns = m.null_space().unwrap();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.apply(&v).unwrap().iter().all(CycNum::is_zero));
        }
    }
}
