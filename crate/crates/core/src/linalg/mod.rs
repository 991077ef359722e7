//! Dense exact linear algebra over `F_q`.

mod packed;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{BaseField, Fq};

/// Elimination backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kernel {
    /// Bit-packed rows for `q = 2` and `q = 4`, table arithmetic otherwise.
    Auto,
    /// Table arithmetic on one byte per entry, for every `q`.
    Generic,
}

/// Result of Gauss–Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: GfMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-major matrix over a base field.
#[derive(Clone)]
pub struct GfMatrix {
    field: &'static BaseField,
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl GfMatrix {
    pub fn zeros(field: &'static BaseField, rows: usize, cols: usize) -> Self {
        GfMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &'static BaseField, n: usize) -> Self {
        let mut m = GfMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics if `data.len() != rows * cols` or an entry is not in the field.
    pub fn from_vec(field: &'static BaseField, rows: usize, cols: usize, data: Vec<Fq>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        assert!(
            data.iter().all(|&x| (x as usize) < field.order()),
            "entry outside F_{}",
            field.order()
        );
        GfMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Checked construction from nested rows of integers.
    pub fn from_rows(field: &'static BaseField, rows: &[Vec<usize>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for &v in r {
                data.push(field.check(v)?);
            }
        }
        Ok(GfMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> &'static BaseField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[Fq] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fq {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fq) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fq] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Fq] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Fq]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_field(&self, other: &GfMatrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn scale(&self, c: Fq) -> GfMatrix {
        let table = self.field.mul_table(c);
        GfMatrix {
            data: self.data.iter().map(|&x| table[x as usize]).collect(),
            ..self.clone()
        }
    }

    pub fn checked_add(&self, other: &GfMatrix) -> Result<GfMatrix> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{:?} + {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let f = self.field;
        Ok(GfMatrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn checked_mul(&self, other: &GfMatrix) -> Result<GfMatrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{:?} * {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let f = self.field;
        let mut out = GfMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for (l, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let table = f.mul_table(a);
                let src = other.row(l);
                let dst = out.row_mut(i);
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d = f.add(*d, table[b as usize]);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product: block `(i, j)` is `self[i, j] · other`.
    pub fn kron(&self, other: &GfMatrix) -> GfMatrix {
        assert!(self.field == other.field, "kron over different fields");
        let f = self.field;
        let (br, bc) = other.shape();
        let mut out = GfMatrix::zeros(f, self.rows * br, self.cols * bc);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for r in 0..br {
                    for c in 0..bc {
                        out.set(i * br + r, j * bc + c, f.mul(a, other.get(r, c)));
                    }
                }
            }
        }
        out
    }

    /// Column-major vectorization as an `(rows·cols) × 1` matrix.
    pub fn vec(&self) -> GfMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c));
            }
        }
        GfMatrix {
            field: self.field,
            rows: self.data.len(),
            cols: 1,
            data,
        }
    }

    /// Inverse of [`GfMatrix::vec`] applied to a flat column-major slice.
    pub fn unvec(field: &'static BaseField, entries: &[Fq], rows: usize, cols: usize) -> GfMatrix {
        assert_eq!(entries.len(), rows * cols);
        let mut m = GfMatrix::zeros(field, rows, cols);
        for c in 0..cols {
            for r in 0..rows {
                m.set(r, c, entries[c * rows + r]);
            }
        }
        m
    }

    pub fn hstack(&self, other: &GfMatrix) -> Result<GfMatrix> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = GfMatrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            let dst = out.row_mut(r);
            dst[..self.cols].copy_from_slice(self.row(r));
            dst[self.cols..].copy_from_slice(other.row(r));
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &GfMatrix) -> Result<GfMatrix> {
        self.same_field(other)?;
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(GfMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> GfMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        GfMatrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> GfMatrix {
        let mut out = GfMatrix::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &GfMatrix) {
        for r in 0..block.rows {
            let dst = &mut self.data[(r0 + r) * self.cols + c0..(r0 + r) * self.cols + c0 + block.cols];
            dst.copy_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> GfMatrix {
        let mut out = GfMatrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            out.row_mut(r)
                .copy_from_slice(&self.row(r0 + r)[c0..c0 + cols]);
        }
        out
    }

    pub fn trace(&self) -> Fq {
        assert!(self.is_square());
        (0..self.rows).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    pub fn determinant(&self) -> Fq {
        assert!(self.is_square());
        let f = self.field;
        let mut m = self.clone();
        let n = self.rows;
        let mut det = 1;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| m.get(r, col) != 0) else {
                return 0;
            };
            if p != col {
                m.swap_rows(p, col);
                det = f.neg(det);
            }
            let pv = m.get(col, col);
            det = f.mul(det, pv);
            let inv = f.inv(pv).unwrap();
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), inv);
                if factor != 0 {
                    m.axpy_row(r, col, f.neg(factor));
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * c);
        head[lo * c..(lo + 1) * c].swap_with_slice(&mut tail[..c]);
    }

    /// `row[dst] += factor · row[src]`.
    fn axpy_row(&mut self, dst: usize, src: usize, factor: Fq) {
        let f = self.field;
        let table = f.mul_table(factor);
        let c = self.cols;
        for j in 0..c {
            let s = self.data[src * c + j];
            if s != 0 {
                let d = &mut self.data[dst * c + j];
                *d = f.add(*d, table[s as usize]);
            }
        }
    }

    /// Gauss–Jordan elimination on one byte per entry. The pivot in each
    /// column is the first nonzero entry at or below the current row.
    fn rref_generic(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = f.inv(m.get(row, col)).unwrap();
            if inv != 1 {
                let table = f.mul_table(inv);
                for x in m.row_mut(row) {
                    *x = table[*x as usize];
                }
            }
            for r in 0..m.rows {
                if r != row {
                    let v = m.get(r, col);
                    if v != 0 {
                        m.axpy_row(r, row, f.neg(v));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rref_with(&self, kernel: Kernel) -> Rref {
        match (kernel, self.field.order()) {
            (Kernel::Auto, 2) => packed::rref_gf2(self),
            (Kernel::Auto, 4) => packed::rref_gf4(self),
            _ => self.rref_generic(),
        }
    }

    pub fn rref(&self) -> Rref {
        self.rref_with(Kernel::Auto)
    }

    pub fn rank(&self) -> usize {
        match self.field.order() {
            2 => packed::rank_gf2(self),
            4 => packed::rank_gf4(self),
            _ => self.rref_generic().rank(),
        }
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Rows form a basis of `{x : self · xᵀ = 0}`.
    pub fn null_space(&self) -> GfMatrix {
        null_space_from_rref(&self.rref(), self.cols)
    }

    pub fn null_space_with(&self, kernel: Kernel) -> GfMatrix {
        null_space_from_rref(&self.rref_with(kernel), self.cols)
    }

    /// Nonzero rows of the reduced echelon form.
    pub fn row_basis(&self) -> GfMatrix {
        let rref = self.rref();
        let idx: Vec<usize> = (0..rref.rank()).collect();
        rref.matrix.select_rows(&idx)
    }

    pub fn invert(&self) -> Result<GfMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = self.hstack(&GfMatrix::identity(self.field, n))?;
        let rref = aug.rref();
        if rref.pivots.iter().take(n).copied().ne(0..n) {
            return Err(Error::Singular);
        }
        Ok(rref.matrix.block(0, n, n, n))
    }

    /// Some `X` with `self · X = rhs`, if the system is consistent.
    pub fn solve_right(&self, rhs: &GfMatrix) -> Result<Option<GfMatrix>> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve with {} and {} rows",
                self.rows, rhs.rows
            )));
        }
        let n = self.cols;
        let rref = self.hstack(rhs)?.rref();
        if rref.pivots.last().is_some_and(|&p| p >= n) {
            return Ok(None);
        }
        let mut x = GfMatrix::zeros(self.field, n, rhs.cols);
        for (r, &p) in rref.pivots.iter().enumerate() {
            x.row_mut(p).copy_from_slice(&rref.matrix.row(r)[n..]);
        }
        Ok(Some(x))
    }

    /// Some `X` with `X · self = rhs`, if the system is consistent.
    pub fn solve_left(&self, rhs: &GfMatrix) -> Result<Option<GfMatrix>> {
        Ok(self
            .transpose()
            .solve_right(&rhs.transpose())?
            .map(|x| x.transpose()))
    }

    /// Whether every row of `other` lies in the row space of `self`.
    pub fn row_space_contains(&self, other: &GfMatrix) -> bool {
        if other.rows == 0 {
            return true;
        }
        let r = self.rank();
        self.vstack(other).map(|s| s.rank() == r).unwrap_or(false)
    }

    pub fn same_row_space(&self, other: &GfMatrix) -> bool {
        self.row_space_contains(other) && other.row_space_contains(self)
    }

    /// Basis of the intersection of the two row spaces, from the left null
    /// space of the stacked bases.
    pub fn row_space_intersection(&self, other: &GfMatrix) -> Result<GfMatrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "intersection of spaces in F^{} and F^{}",
                self.cols, other.cols
            )));
        }
        let a = self.row_basis();
        let b = other.row_basis();
        if a.rows == 0 || b.rows == 0 {
            return Ok(GfMatrix::zeros(self.field, 0, self.cols));
        }
        let stacked = a.vstack(&b.scale(self.field.neg(1)))?;
        let left_null = stacked.transpose().null_space();
        let coeffs = left_null.block(0, 0, left_null.rows, a.rows);
        Ok(&coeffs * &a)
    }
}

fn null_space_from_rref(rref: &Rref, cols: usize) -> GfMatrix {
    let m = &rref.matrix;
    let f = m.field;
    let mut is_pivot = vec![false; cols];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut out = GfMatrix::zeros(f, free.len(), cols);
    for (i, &fc) in free.iter().enumerate() {
        out.set(i, fc, 1);
        for (r, &p) in rref.pivots.iter().enumerate() {
            out.set(i, p, f.neg(m.get(r, fc)));
        }
    }
    out
}

impl PartialEq for GfMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for GfMatrix {}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in self.row_iter() {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl Mul for &GfMatrix {
    type Output = GfMatrix;
    fn mul(self, rhs: &GfMatrix) -> GfMatrix {
        self.checked_mul(rhs).expect("matrix product")
    }
}

impl Add for &GfMatrix {
    type Output = GfMatrix;
    fn add(self, rhs: &GfMatrix) -> GfMatrix {
        self.checked_add(rhs).expect("matrix sum")
    }
}

impl Neg for &GfMatrix {
    type Output = GfMatrix;
    fn neg(self) -> GfMatrix {
        self.scale(self.field.neg(1))
    }
}

impl Sub for &GfMatrix {
    type Output = GfMatrix;
    fn sub(self, rhs: &GfMatrix) -> GfMatrix {
        self + &(-rhs)
    }
}

#[cfg(test)]
mod tests;
