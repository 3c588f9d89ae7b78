//! Dense exact linear algebra over a finite field: rank, determinant,
//! inverse, and linear solving by Gaussian elimination. Entries are field
//! representatives stored row-major.

use crate::error::{Error, Result};
use crate::field::FieldRef;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

#[derive(Clone)]
pub struct Matrix {
    field: FieldRef,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Serialized matrix shape `{rows, cols, entries}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u32>>,
}

/// Outcome of solving `M x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// One particular solution and a basis of the nullspace.
    Consistent {
        particular: Vec<u32>,
        nullspace: Vec<Vec<u32>>,
    },
    Inconsistent,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && *self.field == *other.field
    }
}
impl Eq for Matrix {}

impl Matrix {
    pub fn zeros(field: FieldRef, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldRef, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of representatives, validating shape and
    /// entry range.
    pub fn from_rows(field: FieldRef, rows: &[Vec<u32>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: format!("row length {c}"),
                    got: format!("{}", row.len()),
                });
            }
            for &e in row {
                if e >= field.size() {
                    return Err(Error::InvalidParams(format!(
                        "entry {e} out of range for field of size {}",
                        field.size()
                    )));
                }
                data.push(e);
            }
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(Arc::clone(&self.field), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                got: format!("{}", other.rows),
            });
        }
        let f = &self.field;
        let mut out = Matrix::zeros(Arc::clone(f), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let cur = out.get(r, c);
                    out.set(r, c, f.add(cur, f.mul(a, other.get(k, c))));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", self.rows),
                got: format!("{}", v.len()),
            });
        }
        let f = &self.field;
        let mut out = vec![0u32; self.cols];
        for (r, &vr) in v.iter().enumerate() {
            if vr == 0 {
                continue;
            }
            for c in 0..self.cols {
                out[c] = f.add(out[c], f.mul(vr, self.get(r, c)));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", self.cols),
                got: format!("{}", v.len()),
            });
        }
        let f = &self.field;
        let mut out = vec![0u32; self.rows];
        for r in 0..self.rows {
            let mut acc = 0u32;
            for c in 0..self.cols {
                acc = f.add(acc, f.mul(self.get(r, c), v[c]));
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = Arc::clone(&self.field);
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(sel) = (pivot_row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if sel != pivot_row {
                for c in 0..m.cols {
                    let (a, b) = (m.get(pivot_row, c), m.get(sel, c));
                    m.set(pivot_row, c, b);
                    m.set(sel, c, a);
                }
            }
            let inv = f.inv(m.get(pivot_row, col)).expect("pivot nonzero");
            for c in 0..m.cols {
                m.set(pivot_row, c, f.mul(inv, m.get(pivot_row, c)));
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(pivot_row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn det(&self) -> Result<u32> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: "square matrix".into(),
                got: format!("{}x{}", self.rows, self.cols),
            });
        }
        let f = Arc::clone(&self.field);
        let mut m = self.clone();
        let n = m.rows;
        let mut det = 1u32;
        for col in 0..n {
            let Some(sel) = (col..n).find(|&r| m.get(r, col) != 0) else {
                return Ok(0);
            };
            if sel != col {
                for c in 0..n {
                    let (a, b) = (m.get(col, c), m.get(sel, c));
                    m.set(col, c, b);
                    m.set(sel, c, a);
                }
                det = f.neg(det);
            }
            let pivot = m.get(col, col);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("pivot nonzero");
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: "square matrix".into(),
                got: format!("{}x{}", self.rows, self.cols),
            });
        }
        let n = self.rows;
        let f = Arc::clone(&self.field);
        // eliminate on [self | I]
        let mut aug = Matrix::zeros(Arc::clone(&f), n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).any(|&p| p >= n) {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Matrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c));
            }
        }
        Ok(inv)
    }

    /// Solves `self * x = b` for a column vector `b`.
    pub fn solve(&self, b: &[u32]) -> Result<SolveOutcome> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("rhs of length {}", self.rows),
                got: format!("{}", b.len()),
            });
        }
        let f = Arc::clone(&self.field);
        let mut aug = Matrix::zeros(Arc::clone(&f), self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(SolveOutcome::Inconsistent);
        }
        let mut particular = vec![0u32; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            particular[p] = red.get(i, self.cols);
        }
        let nullspace = nullspace_from_rref(&red, &pivots, self.cols, &f);
        Ok(SolveOutcome::Consistent {
            particular,
            nullspace,
        })
    }

    /// A basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let (red, pivots) = self.rref();
        nullspace_from_rref(&red, &pivots, self.cols, &self.field)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.row_vecs(),
        }
    }

    pub fn from_json(field: FieldRef, json: &MatrixJson) -> Result<Matrix> {
        if json.entries.len() != json.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", json.rows),
                got: format!("{}", json.entries.len()),
            });
        }
        let m = Matrix::from_rows(field, &json.entries)?;
        if m.cols != json.cols && json.rows > 0 {
            return Err(Error::DimensionMismatch {
                expected: format!("{} cols", json.cols),
                got: format!("{}", m.cols),
            });
        }
        Ok(m)
    }
}

fn nullspace_from_rref(
    red: &Matrix,
    pivots: &[usize],
    ncols: usize,
    field: &FieldRef,
) -> Vec<Vec<u32>> {
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![0u32; ncols];
        v[fc] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(red.get(i, fc));
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn identity_and_zero() {
        let f3 = Field::new(3, 1).unwrap();
        let id = Matrix::identity(Arc::clone(&f3), 4);
        assert_eq!(id.rank(), 4);
        assert_eq!(id.det().unwrap(), 1);
        let z = Matrix::zeros(f3, 3, 5);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn row_and_column_rank_agree() {
        // dual elimination oracle on a fixed 5x5 over F_3
        let f3 = Field::new(3, 1).unwrap();
        let m = Matrix::from_rows(
            Arc::clone(&f3),
            &[
                vec![1, 2, 0, 1, 1],
                vec![0, 1, 2, 2, 0],
                vec![1, 0, 1, 0, 1],
                vec![2, 1, 2, 0, 2],
                vec![1, 1, 1, 1, 1],
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn det_rank_nonsingular_consistency() {
        let f4 = Field::new(2, 2).unwrap();
        // all 2x2 matrices over F_4
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let m = Matrix::from_rows(
                            Arc::clone(&f4),
                            &[vec![a, b], vec![c, d]],
                        )
                        .unwrap();
                        let det = m.det().unwrap();
                        assert_eq!(det != 0, m.rank() == 2);
                        assert_eq!(det != 0, m.is_nonsingular());
                        assert_eq!(det != 0, m.inverse().is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f5 = Field::new(5, 1).unwrap();
        let m = Matrix::from_rows(
            Arc::clone(&f5),
            &[vec![1, 2, 3], vec![0, 1, 4], vec![2, 0, 1]],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv).unwrap();
        assert_eq!(prod, Matrix::identity(f5, 3));
    }

    #[test]
    fn solve_particular_and_nullspace() {
        let f2 = Field::new(2, 1).unwrap();
        let m = Matrix::from_rows(
            Arc::clone(&f2),
            &[vec![1, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        match m.solve(&[1, 1]).unwrap() {
            SolveOutcome::Consistent {
                particular,
                nullspace,
            } => {
                let b = m.mul_vec(&particular).unwrap();
                assert_eq!(b, vec![1, 1]);
                assert_eq!(nullspace.len(), 1);
                for v in nullspace {
                    assert_eq!(m.mul_vec(&v).unwrap(), vec![0, 0]);
                }
            }
            SolveOutcome::Inconsistent => panic!("expected consistent system"),
        }
        // inconsistent: x + y = 0 and x + y = 1
        let m2 = Matrix::from_rows(Arc::clone(&f2), &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(m2.solve(&[0, 1]).unwrap(), SolveOutcome::Inconsistent);
    }

    #[test]
    fn singular_inverse_rejected() {
        let f2 = Field::new(2, 1).unwrap();
        let m = Matrix::from_rows(f2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.inverse().unwrap_err(), Error::SingularMatrix);
    }
}
