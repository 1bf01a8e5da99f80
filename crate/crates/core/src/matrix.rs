//! Dense exact matrices over Q(zeta_p) and the block-diagonal matrices used
//! to model the algebra on the direct sum of its irreducible modules.
//!
//! The linear algebra is deliberately plain: exact Gaussian elimination over
//! the field, with a solver object that factors once and answers repeated
//! solves.  Desk-scale dimensions keep this comfortably fast.

use crate::exactfield::CycloRational;
use crate::{HeckeError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloRational>,
}

impl Matrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![CycloRational::zero(p); rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = CycloRational::one(p);
        }
        m
    }

    pub fn diagonal(entries: Vec<CycloRational>) -> Self {
        let p = entries.first().map(|e| e.conductor()).unwrap_or(1);
        let n = entries.len();
        let mut m = Self::zero(p, n, n);
        for (i, e) in entries.into_iter().enumerate() {
            *m.at_mut(i, i) = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &CycloRational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut CycloRational {
        &mut self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &CycloRational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let p = self.data.first().map(|e| e.conductor()).unwrap_or(1);
        let mut out = Matrix::zero(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    *out.at_mut(i, j) += &prod;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let p = self.data.first().map(|e| e.conductor()).unwrap_or(1);
        let mut out = Matrix::zero(p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Exact determinant by elimination on a copy.
    pub fn determinant(&self) -> CycloRational {
        assert_eq!(self.rows, self.cols);
        let p = self.data.first().map(|e| e.conductor()).unwrap_or(1);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = CycloRational::one(p);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a.at(i, col).is_zero());
            let pivot = match pivot {
                Some(i) => i,
                None => return CycloRational::zero(p),
            };
            if pivot != col {
                for j in 0..n {
                    let tmp = a.at(pivot, j).clone();
                    *a.at_mut(pivot, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                }
                det = -det;
            }
            let piv = a.at(col, col).clone();
            det *= &piv;
            let inv = piv.inv().expect("pivot is nonzero");
            for i in (col + 1)..n {
                let factor = a.at(i, col).mul_ref(&inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = a.at(col, j).mul_ref(&factor);
                    *a.at_mut(i, j) -= &t;
                }
            }
        }
        det
    }

    pub fn serialize_rows(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| {
                    serde_json::Value::Array(
                        (0..self.cols).map(|j| serde_json::to_value(self.at(i, j)).unwrap()).collect(),
                    )
                })
                .collect(),
        )
    }
}

/// A square exact solver: Gauss-Jordan inversion performed once, and then
/// every solve is a single matrix-vector multiplication.
pub struct SquareSolver {
    n: usize,
    inverse: Matrix,
}

impl SquareSolver {
    pub fn new(a: &Matrix) -> Result<Self> {
        assert_eq!(a.rows(), a.cols());
        let n = a.rows();
        let p = if n > 0 { a.at(0, 0).conductor() } else { 1 };
        let mut work = a.clone();
        let mut inv = Matrix::identity(p, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&i| !work.at(i, col).is_zero())
                .ok_or_else(|| HeckeError::Internal(format!("singular system at column {col}")))?;
            if pivot != col {
                for j in 0..n {
                    let tw = work.at(pivot, j).clone();
                    *work.at_mut(pivot, j) = work.at(col, j).clone();
                    *work.at_mut(col, j) = tw;
                    let ti = inv.at(pivot, j).clone();
                    *inv.at_mut(pivot, j) = inv.at(col, j).clone();
                    *inv.at_mut(col, j) = ti;
                }
            }
            let piv_inv = work.at(col, col).inv().expect("pivot nonzero");
            for j in 0..n {
                let w = work.at(col, j).mul_ref(&piv_inv);
                *work.at_mut(col, j) = w;
                let v = inv.at(col, j).mul_ref(&piv_inv);
                *inv.at_mut(col, j) = v;
            }
            for i in 0..n {
                if i == col || work.at(i, col).is_zero() {
                    continue;
                }
                let factor = work.at(i, col).clone();
                for j in 0..n {
                    let t = work.at(col, j).mul_ref(&factor);
                    *work.at_mut(i, j) -= &t;
                    let t = inv.at(col, j).mul_ref(&factor);
                    *inv.at_mut(i, j) -= &t;
                }
            }
        }
        Ok(SquareSolver { n, inverse: inv })
    }

    pub fn solve(&self, rhs: &[CycloRational]) -> Vec<CycloRational> {
        assert_eq!(rhs.len(), self.n);
        let p = if self.n > 0 { rhs[0].conductor() } else { 1 };
        let mut out = vec![CycloRational::zero(p); self.n];
        for (j, r) in rhs.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let t = self.inverse.at(i, j).mul_ref(r);
                *o += &t;
            }
        }
        out
    }
}

/// Incremental row reduction used for rank and nullspace computations: rows
/// are fed one at a time and reduced against the pivots seen so far.
pub struct RowReducer {
    width: usize,
    /// reduced rows, each with its pivot column; kept pivot-normalized
    rows: Vec<(usize, Vec<CycloRational>)>,
}

impl RowReducer {
    pub fn new(width: usize) -> Self {
        RowReducer { width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the current basis; if a new pivot remains, store
    /// it and return true.
    pub fn offer(&mut self, mut row: Vec<CycloRational>) -> bool {
        assert_eq!(row.len(), self.width);
        for (pivot_col, pivot_row) in &self.rows {
            if row[*pivot_col].is_zero() {
                continue;
            }
            let factor = row[*pivot_col].clone();
            for j in *pivot_col..self.width {
                let t = pivot_row[j].mul_ref(&factor);
                row[j] -= &t;
            }
        }
        let pivot_col = match row.iter().position(|e| !e.is_zero()) {
            Some(c) => c,
            None => return false,
        };
        let inv = row[pivot_col].inv().expect("nonzero pivot");
        for e in row.iter_mut() {
            *e = e.mul_ref(&inv);
        }
        self.rows.push((pivot_col, row));
        self.rows.sort_by_key(|(c, _)| *c);
        true
    }

    /// A basis of the nullspace of the offered rows, as vectors of the full
    /// width (free columns get unit entries).
    pub fn nullspace_basis(&self, p: u32) -> Vec<Vec<CycloRational>> {
        // back-substitute to reduced row echelon form
        let mut rref = self.rows.clone();
        for i in (0..rref.len()).rev() {
            let (pc, row) = rref[i].clone();
            for (qc, other) in rref.iter_mut().take(i) {
                let _ = qc;
                if other[pc].is_zero() {
                    continue;
                }
                let factor = other[pc].clone();
                for j in 0..self.width {
                    let t = row[j].mul_ref(&factor);
                    other[j] -= &t;
                }
            }
        }
        let pivot_cols: Vec<usize> = rref.iter().map(|(c, _)| *c).collect();
        let mut basis = Vec::new();
        for free in 0..self.width {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![CycloRational::zero(p); self.width];
            v[free] = CycloRational::one(p);
            for (pc, row) in &rref {
                v[*pc] = -&row[free];
            }
            basis.push(v);
        }
        basis
    }
}

/// An element of the direct sum of matrix blocks, one per irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrix {
    pub blocks: Vec<Matrix>,
}

impl BlockMatrix {
    pub fn zero(p: u32, dims: &[usize]) -> Self {
        BlockMatrix { blocks: dims.iter().map(|&d| Matrix::zero(p, d, d)).collect() }
    }

    pub fn identity(p: u32, dims: &[usize]) -> Self {
        BlockMatrix { blocks: dims.iter().map(|&d| Matrix::identity(p, d)).collect() }
    }

    pub fn add(&self, other: &BlockMatrix) -> BlockMatrix {
        BlockMatrix {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &BlockMatrix) -> BlockMatrix {
        BlockMatrix {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn mul(&self, other: &BlockMatrix) -> BlockMatrix {
        BlockMatrix {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn scale(&self, c: &CycloRational) -> BlockMatrix {
        BlockMatrix { blocks: self.blocks.iter().map(|m| m.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|m| m.is_zero())
    }

    /// self += other * c, skipping zero entries of `other`.
    pub fn add_scaled_assign(&mut self, other: &BlockMatrix, c: &CycloRational) {
        for (mine, theirs) in self.blocks.iter_mut().zip(&other.blocks) {
            for i in 0..theirs.rows() {
                for j in 0..theirs.cols() {
                    let e = theirs.at(i, j);
                    if !e.is_zero() {
                        *mine.at_mut(i, j) += &e.mul_ref(c);
                    }
                }
            }
        }
    }

    pub fn commutator_is_zero(&self, other: &BlockMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Flatten all blocks row-major into one coordinate vector.
    pub fn to_vec(&self) -> Vec<CycloRational> {
        let mut out = Vec::new();
        for m in &self.blocks {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.push(m.at(i, j).clone());
                }
            }
        }
        out
    }

    pub fn from_vec(p: u32, dims: &[usize], vec: &[CycloRational]) -> Self {
        let mut out = BlockMatrix::zero(p, dims);
        let mut idx = 0;
        for m in out.blocks.iter_mut() {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    *m.at_mut(i, j) = vec[idx].clone();
                    idx += 1;
                }
            }
        }
        assert_eq!(idx, vec.len());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn c(v: i64) -> CycloRational {
        CycloRational::from_integer(4, v)
    }

    fn rat(n: i64, d: i64) -> CycloRational {
        CycloRational::from_rational(4, BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn solver_inverts_small_system() {
        let mut a = Matrix::zero(4, 2, 2);
        *a.at_mut(0, 0) = c(2);
        *a.at_mut(0, 1) = c(1);
        *a.at_mut(1, 0) = c(5);
        *a.at_mut(1, 1) = c(3);
        let solver = SquareSolver::new(&a).unwrap();
        // solve [2 1; 5 3] x = [1, 2]: x = (1, -1)... check: 2*1 + 1*(-1) = 1, 5 - 3 = 2
        let x = solver.solve(&[c(1), c(2)]);
        assert_eq!(x, vec![c(1), c(-1)]);
        assert_eq!(a.determinant(), c(1));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let mut a = Matrix::zero(4, 2, 2);
        *a.at_mut(0, 0) = c(1);
        *a.at_mut(0, 1) = c(2);
        *a.at_mut(1, 0) = c(2);
        *a.at_mut(1, 1) = c(4);
        assert!(SquareSolver::new(&a).is_err());
        assert!(a.determinant().is_zero());
    }

    #[test]
    fn row_reducer_rank_and_nullspace() {
        let mut red = RowReducer::new(3);
        assert!(red.offer(vec![c(1), c(1), c(0)]));
        assert!(red.offer(vec![c(0), c(1), c(1)]));
        assert!(!red.offer(vec![c(1), c(2), c(1)]));
        assert_eq!(red.rank(), 2);
        let basis = red.nullspace_basis(4);
        assert_eq!(basis.len(), 1);
        // the kernel vector satisfies both equations
        let v = &basis[0];
        assert!((v[0].clone() + &v[1]).is_zero());
        assert!((v[1].clone() + &v[2]).is_zero());
    }

    #[test]
    fn rational_pivots_stay_exact() {
        let mut a = Matrix::zero(4, 2, 2);
        *a.at_mut(0, 0) = rat(1, 3);
        *a.at_mut(0, 1) = rat(1, 2);
        *a.at_mut(1, 0) = rat(2, 7);
        *a.at_mut(1, 1) = rat(5, 11);
        let det = a.determinant();
        // 1/3 * 5/11 - 1/2 * 2/7 = 5/33 - 1/7 = (35 - 33) / 231
        assert_eq!(det, rat(2, 231));
    }
}
