//! Dense matrices over GF(q) and row-space operations.

use crate::error::{Error, Result};
use crate::field::Field;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
    pub fn zeros(field: &Arc<Field>, rows: usize, cols: usize) -> Self {
        Mat { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of length `cols`.
    pub fn from_rows(field: &Arc<Field>, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Mismatch(format!("row {i} has length {}, expected {cols}", r.len())));
            }
            if let Some(&bad) = r.iter().find(|&&x| !field.contains(x)) {
                return Err(Error::InvalidParameter(format!("{bad} is not an element of GF({})", field.q())));
            }
            data.extend_from_slice(r);
        }
        Ok(Mat { field: field.clone(), rows: rows.len(), cols, data })
    }

    pub fn from_flat(field: &Arc<Field>, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Mismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|&x| !field.contains(x)) {
            return Err(Error::InvalidParameter("entry outside the field".into()));
        }
        Ok(Mat { field: field.clone(), rows, cols, data })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(self.field.contains(v));
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows || *self.field != *other.field {
            return Err(Error::Mismatch("matrix product shapes or fields differ".into()));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    let (start, end) = (i * other.cols, (i + 1) * other.cols);
                    f.axpy(&mut out.data[start..end], other.row(k), a);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, x: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.cols];
        for (i, &c) in x.iter().enumerate().take(self.rows) {
            self.field.axpy(&mut out, self.row(i), c);
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.data[i * cols.len() + jj] = self.get(i, j);
            }
        }
        m
    }

    pub fn stack(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.cols || *self.field != *other.field {
            return Err(Error::Mismatch("stacked matrices differ in width or field".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// `row[dst] -= c * row[src]`, touching columns from `from` on.
    fn row_op(&mut self, dst: usize, src: usize, c: u32, from: usize) {
        let cols = self.cols;
        let (d, s) = if dst < src {
            let (a, b) = self.data.split_at_mut(src * cols);
            (&mut a[dst * cols + from..(dst + 1) * cols], &b[from..cols])
        } else {
            let (a, b) = self.data.split_at_mut(dst * cols);
            (&mut b[from..cols], &a[src * cols + from..(src + 1) * cols])
        };
        self.field.axpy_neg(d, s, c);
    }

    /// Reduced row echelon form in place; zero rows end up at the bottom.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(pr, r);
            let inv = f.inv_nonzero(self.get(r, c));
            if inv != 1 {
                let cols = self.cols;
                f.scale(&mut self.data[r * cols + c..(r + 1) * cols], inv);
            }
            for i in 0..self.rows {
                if i != r {
                    let v = self.get(i, c);
                    if v != 0 {
                        self.row_op(i, r, v, c);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The first `n` rows as a new matrix.
    pub fn top_rows(&self, n: usize) -> Mat {
        Mat { field: self.field.clone(), rows: n, cols: self.cols, data: self.data[..n * self.cols].to_vec() }
    }

    /// Canonical basis of the row space: rref with zero rows dropped.
    pub fn row_basis(&self) -> Mat {
        let (m, piv) = self.rref();
        m.top_rows(piv.len())
    }

    /// Basis of the right null space `{v : M v = 0}`, one vector per row.
    pub fn kernel(&self) -> Mat {
        let (r, piv) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &piv {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut k = Mat::zeros(f, free.len(), self.cols);
        for (t, &fc) in free.iter().enumerate() {
            k.data[t * self.cols + fc] = 1;
            for (i, &pc) in piv.iter().enumerate() {
                k.data[t * self.cols + pc] = f.neg(r.get(i, fc));
            }
        }
        k
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            aug.data[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let piv = aug.rref_in_place();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(&self.field, n, n);
        for i in 0..n {
            inv.data[i * n..(i + 1) * n].copy_from_slice(&aug.data[i * 2 * n + n..(i + 1) * 2 * n]);
        }
        Some(inv)
    }

    /// Some `x` with `x · M = rhs`, i.e. a witness that `rhs` lies in the row space.
    pub fn solve(&self, rhs: &[u32]) -> Option<Vec<u32>> {
        if rhs.len() != self.cols {
            return None;
        }
        // Transposed system M^T x = rhs, augmented with rhs as last column.
        let w = self.rows + 1;
        let mut aug = Mat::zeros(&self.field, self.cols, w);
        for j in 0..self.cols {
            for i in 0..self.rows {
                aug.data[j * w + i] = self.get(i, j);
            }
            aug.data[j * w + self.rows] = rhs[j];
        }
        let piv = aug.rref_in_place();
        if piv.last() == Some(&self.rows) {
            return None;
        }
        let mut x = vec![0; self.rows];
        for (i, &pc) in piv.iter().enumerate() {
            x[pc] = aug.get(i, self.rows);
        }
        Some(x)
    }

    pub fn rowspace_sum(&self, other: &Mat) -> Result<Mat> {
        Ok(self.stack(other)?.row_basis())
    }

    /// Basis of the intersection of the two row spaces, as `(A^⊥ + B^⊥)^⊥`.
    pub fn rowspace_intersect(&self, other: &Mat) -> Result<Mat> {
        let both = self.kernel().stack(&other.kernel())?;
        Ok(both.kernel().row_basis())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in self.row_iter() {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Incrementally built subspace kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Arc<Field>,
    cols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &Arc<Field>, cols: usize) -> Self {
        Echelon { field: field.clone(), cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_mat(m: &Mat) -> Self {
        let mut e = Self::new(m.field(), m.cols());
        for r in m.row_iter() {
            e.insert(r.to_vec());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn reduce(&self, v: &mut [u32]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                self.field.axpy_neg(v, row, c);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv_nonzero(v[pc]);
        self.field.scale(&mut v, inv);
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                self.field.axpy_neg(row, &v, c);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, v);
        true
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The rref basis matrix.
    pub fn to_mat(&self) -> Mat {
        let data = self.rows.concat();
        Mat { field: self.field.clone(), rows: self.rows.len(), cols: self.cols, data }
    }
}
