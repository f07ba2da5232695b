use std::fmt;

use super::scalar::{Field, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {op} on {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
}

/// Dense matrix over a single field, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vector>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix { field, rows: n, cols, data }
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_ints(field: Field, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            field,
            cols,
            rows.iter().map(|r| r.iter().map(|&v| field.from_int(v)).collect()).collect(),
        )
    }

    pub fn field(&self) -> Field {
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
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn checked_mul(&self, o: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != o.field {
            return Err(LinalgError::FieldMismatch(self.field, o.field));
        }
        if self.cols != o.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: o.shape(),
            });
        }
        let mut out = Self::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Matrix product. Panics on shape or field mismatch; use
    /// [`Matrix::checked_mul`] for a fallible version.
    pub fn mul(&self, o: &Matrix) -> Matrix {
        self.checked_mul(o).expect("matrix product")
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        let mut out = vec![self.field.zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o = &*o + &(a * x);
                }
            }
        }
        out
    }

    pub fn checked_add(&self, o: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != o.field {
            return Err(LinalgError::FieldMismatch(self.field, o.field));
        }
        if self.shape() != o.shape() {
            return Err(LinalgError::DimensionMismatch {
                op: "add",
                left: self.shape(),
                right: o.shape(),
            });
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        self.checked_add(o).expect("matrix sum")
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.add(&o.scale(&-self.field.one()))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// `self += s * o`, in place.
    pub fn add_scaled(&mut self, s: &Scalar, o: &Matrix) {
        assert_eq!(self.shape(), o.shape());
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a = &*a + &(b * s);
            }
        }
    }

    pub fn kron(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.field, o.field);
        let mut out = Self::zeros(self.field, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn direct_sum(&self, o: &Matrix) -> Matrix {
        Self::block_diagonal(self.field, &[self.clone(), o.clone()])
    }

    pub fn block_diagonal(field: Field, blocks: &[Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Self::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let mut out = Self::zeros(self.field, self.rows, self.cols + o.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, o);
        out
    }

    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut out = Self::zeros(self.field, self.rows + o.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, o);
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Self::from_rows(self.field, self.cols, idx.iter().map(|&r| self.row(r).to_vec()).collect())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let cols: Vec<Vector> = idx.iter().map(|&c| self.column(c)).collect();
        Self::from_columns(self.field, self.rows, &cols)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = row_reduce(&mut rows, self.cols);
        (Matrix::from_rows(self.field, self.cols, rows), pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        row_reduce(&mut rows, self.cols).len()
    }

    /// Basis of the right null space. Each vector has a 1 in its own free
    /// coordinate and 0 in every other free coordinate, so the basis is
    /// canonical for the subspace.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let mut rows = self.row_vecs();
        let pivots = row_reduce(&mut rows, self.cols);
        kernel_from_rref(self.field, &rows, &pivots, self.cols)
    }

    /// Some `x` with `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "solve",
                left: self.shape(),
                right: (b.len(), 1),
            });
        }
        if let Some(s) = b.iter().find(|s| s.field() != self.field) {
            return Err(LinalgError::FieldMismatch(self.field, s.field()));
        }
        let mut rows: Vec<Vector> = (0..self.rows)
            .map(|r| {
                let mut v = self.row(r).to_vec();
                v.push(b[r].clone());
                v
            })
            .collect();
        let pivots = row_reduce(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rows[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Solves `self * X = B` column by column with a single elimination.
    pub fn solve_many(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows);
        let n = self.cols;
        let rows_aug = self.hstack(b);
        let (r, pivots) = rows_aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, n, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(i, n + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve_many(&Matrix::identity(self.field, self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Column-major flattening.
    pub fn vec(&self) -> Vector {
        let mut out = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                out.push(self.get(r, c).clone());
            }
        }
        out
    }

    pub fn from_vec(field: Field, rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
        let mut m = Self::zeros(field, rows, cols);
        for c in 0..cols {
            for r in 0..rows {
                m.set(r, c, v[c * rows + r].clone());
            }
        }
        m
    }
}

/// In-place reduction to RREF. Nonzero rows end up first; returns the pivot
/// columns in order. Rows beyond the rank are left zero.
pub(crate) fn row_reduce(rows: &mut [Vector], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = rows[rank][col].inv();
        if !inv.is_one() {
            for v in rows[rank][col..].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let support: Vec<usize> = (col..ncols).filter(|&c| !rows[rank][c].is_zero()).collect();
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &c in &support {
                let d = &pivot_row[c] * &f;
                row[c] = &row[c] - &d;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

pub(crate) fn kernel_from_rref(field: Field, rows: &[Vector], pivots: &[usize], ncols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            let e = &rows[r][free];
            if !e.is_zero() {
                v[p] = -e;
            }
        }
        basis.push(v);
    }
    basis
}

pub mod vector {
    use super::{Scalar, Vector};
    use crate::linalg::Field;

    pub fn zeros(field: Field, n: usize) -> Vector {
        vec![field.zero(); n]
    }

    pub fn unit(field: Field, n: usize, i: usize) -> Vector {
        let mut v = zeros(field, n);
        v[i] = field.one();
        v
    }

    pub fn is_zero(v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_zero)
    }

    pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(a: &[Scalar], s: &Scalar) -> Vector {
        a.iter().map(|x| x * s).collect()
    }

    /// `acc += s * v`.
    pub fn axpy(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
        if s.is_zero() {
            return;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            if !x.is_zero() {
                *a = &*a + &(x * s);
            }
        }
    }

    pub fn kron(a: &[Scalar], b: &[Scalar]) -> Vector {
        let field = a.first().or(b.first()).map(Scalar::field);
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                out.push(if x.is_zero() || y.is_zero() {
                    field.expect("nonempty").zero()
                } else {
                    x * y
                });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn identity_and_zero_ranks() {
        assert_eq!(Matrix::identity(q(), 2).rank(), 2);
        assert_eq!(Matrix::zeros(q(), 3, 4).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(q(), 3).kernel_basis().is_empty());
        let k = Matrix::zeros(q(), 3, 3).kernel_basis();
        assert_eq!(k, (0..3).map(|i| vector::unit(q(), 3, i)).collect::<Vec<_>>());
        let k = Matrix::from_ints(q(), &[vec![1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![q().from_int(-1), q().from_int(1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q().from_int(3), q().from_int(-2)];
        assert_eq!(Matrix::identity(q(), 2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Matrix::zeros(q(), 2, 2).solve(&b).unwrap(), None);
        assert!(Matrix::identity(q(), 3).solve(&b).is_err());
    }

    #[test]
    fn inverse_of_rational_matrix() {
        let m = Matrix::from_ints(q(), &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q(), 2));
        let s = Matrix::from_ints(q(), &[vec![1, 2], vec![2, 4]]);
        assert!(s.inverse().is_none());
    }

    #[test]
    fn mixed_field_product_rejected() {
        let a = Matrix::identity(q(), 2);
        let b = Matrix::identity(Field::Prime(3), 2);
        assert!(matches!(a.checked_mul(&b), Err(LinalgError::FieldMismatch(..))));
    }

    #[test]
    fn rank_over_prime_field_differs() {
        let m = Matrix::from_ints(q(), &[vec![1, 1], vec![1, 4]]);
        assert_eq!(m.rank(), 2);
        let m3 = Matrix::from_ints(Field::Prime(3), &[vec![1, 1], vec![1, 4]]);
        assert_eq!(m3.rank(), 1);
    }

    #[test]
    fn fractional_solution() {
        let m = Matrix::from_ints(q(), &[vec![2, 0], vec![0, 3]]);
        let x = m.solve(&[q().one(), q().one()]).unwrap().unwrap();
        assert_eq!(x[0], Scalar::Q(Rational::new(1, 2)));
        assert_eq!(x[1], Scalar::Q(Rational::new(1, 3)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, cols), rows)
                .prop_map(move |r| Matrix::from_ints(Field::Rational, &r))
        }

        proptest! {
            #[test]
            fn rank_nullity(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
                prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
                for k in m.kernel_basis() {
                    prop_assert!(crate::linalg::vector::is_zero(&m.mul_vec(&k)));
                }
            }

            #[test]
            fn inverse_is_two_sided(m in (1usize..5).prop_flat_map(|n| matrix(n, n))) {
                let n = m.rows();
                match m.inverse() {
                    Some(inv) => {
                        prop_assert_eq!(m.mul(&inv), Matrix::identity(Field::Rational, n));
                        prop_assert_eq!(inv.mul(&m), Matrix::identity(Field::Rational, n));
                    }
                    None => prop_assert!(m.rank() < n),
                }
            }

            #[test]
            fn rank_of_product_is_bounded(a in matrix(3, 4), b in matrix(4, 2)) {
                prop_assert!(a.mul(&b).rank() <= a.rank().min(b.rank()));
            }
        }
    }
}
