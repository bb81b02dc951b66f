//! Dense matrices over GF(p).

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};

/// Row-major dense matrix with entries in a prime field.
///
/// Zero-sized shapes are allowed so that a `[n, n]` code can carry an empty
/// `A` block.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixGF {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Wire form: `{"p": int, "rows": int, "cols": int, "entries": [[int]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<i64>>,
}

impl MatrixGF {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    /// Builds a matrix from rows of integers, reducing each entry mod p.
    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        Ok(Self { field, rows: rows.len(), cols, data })
    }

    /// Like [`from_rows`](Self::from_rows) but with an explicit shape, so
    /// `rows x 0` matrices can be expressed.
    pub fn from_shape(field: PrimeField, rows: usize, cols: usize, entries: &[Vec<i64>]) -> Result<Self> {
        if entries.len() != rows {
            return Err(Error::Dimension(format!("expected {rows} rows, got {}", entries.len())));
        }
        let mut m = Self::zeros(field, rows, cols);
        for (i, r) in entries.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = field.reduce(v);
            }
        }
        Ok(m)
    }

    pub(crate) fn from_raw(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&v| v < field.p()));
        Self { field, rows, cols, data }
    }

    pub fn field(&self) -> PrimeField {
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

    #[inline]
    pub fn raw(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn get(&self, i: usize, j: usize) -> Fp {
        self.field.elem(self.raw(i, j) as i64)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fp) -> Result<()> {
        if v.field() != self.field {
            return Err(Error::FieldMismatch(self.field.p(), v.field().p()));
        }
        self.data[i * self.cols + j] = v.value();
        Ok(())
    }

    pub(crate) fn set_raw(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.raw(i, j);
            }
        }
        t
    }

    /// Entry-wise negation mod p.
    pub fn neg(&self) -> Self {
        let f = self.field;
        Self { data: self.data.iter().map(|&v| f.neg_raw(v)).collect(), ..self.clone() }
    }

    pub fn mul(&self, rhs: &MatrixGF) -> Result<MatrixGF> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field.p(), rhs.field.p()));
        }
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.raw(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = f.add_raw(out.raw(i, j), f.mul_raw(a, rhs.raw(l, j)));
                    out.set_raw(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// `x · M` for a row vector `x`.
    pub fn left_mul_vec(&self, x: &[u32]) -> Vec<u32> {
        debug_assert_eq!(x.len(), self.rows);
        let f = self.field;
        let mut out = vec![0u32; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add_raw(*o, f.mul_raw(xi, self.raw(i, j)));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.raw(i, j) == self.raw(j, i)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| self.raw(i, i) == 0)
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &MatrixGF) -> Result<MatrixGF> {
        if self.rows != rhs.rows {
            return Err(Error::Dimension("hstack needs equal row counts".into()));
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + rhs.cols));
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(rhs.row(i));
        }
        Ok(Self::from_raw(self.field, self.rows, self.cols + rhs.cols, data))
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &MatrixGF) -> Result<MatrixGF> {
        if self.cols != rhs.cols {
            return Err(Error::Dimension("vstack needs equal column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(Self::from_raw(self.field, self.rows + rhs.rows, self.cols, data))
    }

    /// Row-reduces a working copy; returns the rank and the product of the
    /// pivots with the sign of the row permutation applied.
    fn eliminate(&self) -> (usize, u32) {
        let f = self.field;
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        let mut det = 1 % f.p();
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..cols {
                    m.swap(piv * cols + j, rank * cols + j);
                }
                det = f.neg_raw(det);
            }
            let pv = m[rank * cols + c];
            det = f.mul_raw(det, pv);
            let inv = f.inv_raw(pv).expect("pivot is nonzero");
            for r in rank + 1..rows {
                let factor = f.mul_raw(m[r * cols + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = f.sub_raw(m[r * cols + j], f.mul_raw(factor, m[rank * cols + j]));
                    m[r * cols + j] = v;
                }
            }
            rank += 1;
        }
        if rank < rows {
            det = 0;
        }
        (rank, det)
    }

    /// Rank over GF(p) by Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn determinant(&self) -> Result<Fp> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(self.field.one());
        }
        Ok(self.field.elem(self.eliminate().1 as i64))
    }

    /// The minor selected by `row_idx` x `col_idx`, in the given order.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<MatrixGF> {
        if row_idx.is_empty() || col_idx.is_empty() {
            return Err(Error::EmptySelection);
        }
        check_indices(row_idx, self.rows)?;
        check_indices(col_idx, self.cols)?;
        let mut data = Vec::with_capacity(row_idx.len() * col_idx.len());
        for &i in row_idx {
            data.extend(col_idx.iter().map(|&j| self.raw(i, j)));
        }
        Ok(Self::from_raw(self.field, row_idx.len(), col_idx.len(), data))
    }

    /// True iff every square submatrix (any row subset by any column subset
    /// of equal size) has a nonzero determinant.
    pub fn all_square_submatrices_nonsingular(&self) -> bool {
        self.first_singular_submatrix().is_none()
    }

    /// Row and column indices of the first singular square submatrix, in
    /// order of size then lexicographic index.
    pub fn first_singular_submatrix(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        for t in 1..=self.rows.min(self.cols) {
            for ri in (0..self.rows).combinations(t) {
                for ci in (0..self.cols).combinations(t) {
                    let minor = self.submatrix(&ri, &ci).expect("indices in range");
                    if minor.eliminate().0 < t {
                        return Some((ri, ci));
                    }
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            p: self.field.p() as u64,
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(|&v| v as i64).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let field = PrimeField::new(json.p)?;
        Self::from_shape(field, json.rows, json.cols, &json.entries)
    }
}

fn check_indices(idx: &[usize], bound: usize) -> Result<()> {
    let mut seen = vec![false; bound];
    for &i in idx {
        if i >= bound {
            return Err(Error::IndexOutOfRange { index: i, bound });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::DuplicateIndex(i));
        }
    }
    Ok(())
}

impl fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixGF<{}>{:?}", self.field, self.to_rows())
    }
}

impl fmt::Display for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row = self.row(i).iter().map(|v| v.to_string()).join(" ");
            writeln!(f, "[{row}]")?;
        }
        Ok(())
    }
}

impl Serialize for MatrixGF {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixGF {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = MatrixJson::deserialize(d)?;
        Self::from_json(&json).map_err(serde::de::Error::custom)
    }
}
