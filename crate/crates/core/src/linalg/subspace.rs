use super::matrix::{row_reduce, vector, Matrix, Vector};
use super::scalar::{Field, Scalar};

/// A subspace of `field^ambient` held in canonical reduced echelon form:
/// each basis vector carries a 1 at its pivot coordinate and 0 at every
/// other pivot, so coordinates of a member are read off at the pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self::span(field, ambient, (0..ambient).map(|i| vector::unit(field, ambient, i)).collect())
    }

    pub fn span(field: Field, ambient: usize, mut vecs: Vec<Vector>) -> Self {
        vecs.retain(|v| !vector::is_zero(v));
        for v in &vecs {
            assert_eq!(v.len(), ambient, "vector length");
        }
        let pivots = row_reduce(&mut vecs, ambient);
        vecs.truncate(pivots.len());
        Subspace { field, ambient, basis: vecs, pivots }
    }

    /// Column space of `m`.
    pub fn column_space(m: &Matrix) -> Self {
        Self::span(m.field(), m.rows(), m.columns())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `ambient x dim` matrix whose columns are the basis.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient, &self.basis)
    }

    /// Coordinates of `v` with respect to the basis, assuming `v` lies in
    /// the subspace.
    pub fn coords_unchecked(&self, v: &[Scalar]) -> Vector {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        let c = self.coords_unchecked(v);
        (self.combine(&c) == v).then_some(c)
    }

    /// `dim x ambient` matrix reading coordinates of members.
    pub fn coord_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim(), self.ambient);
        for (i, &p) in self.pivots.iter().enumerate() {
            m.set(i, p, self.field.one());
        }
        m
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Vector {
        let mut out = vector::zeros(self.field, self.ambient);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            vector::axpy(&mut out, c, b);
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut vecs = self.basis.clone();
        vecs.extend(o.basis.iter().cloned());
        Self::span(self.field, self.ambient, vecs)
    }

    /// Intersection by the Zassenhaus algorithm.
    pub fn intersection(&self, o: &Subspace) -> Subspace {
        let n = self.ambient;
        let mut rows: Vec<Vector> = Vec::new();
        for u in &self.basis {
            let mut r = u.clone();
            r.extend(u.iter().cloned());
            rows.push(r);
        }
        for w in &o.basis {
            let mut r = w.clone();
            r.extend(vector::zeros(self.field, n));
            rows.push(r);
        }
        let pivots = row_reduce(&mut rows, 2 * n);
        let vecs = rows
            .iter()
            .zip(&pivots)
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        Self::span(self.field, n, vecs)
    }

    /// Coordinates not used as pivots; the standard vectors there span a
    /// complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Projection `ambient -> ambient / self` in the coordinates of the
    /// standard complement.
    pub fn quotient_projection(&self) -> Matrix {
        let comp = self.complement_indices();
        let mut m = Matrix::zeros(self.field, comp.len(), self.ambient);
        for (i, &c) in comp.iter().enumerate() {
            m.set(i, c, self.field.one());
        }
        // v - sum_p v[p] b_p, read off at the complement.
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            for (i, &c) in comp.iter().enumerate() {
                if !b[c].is_zero() {
                    m.set(i, p, -&b[c]);
                }
            }
        }
        m
    }

    /// Section `ambient / self -> ambient` by standard complement vectors.
    pub fn quotient_section(&self) -> Matrix {
        let comp = self.complement_indices();
        let mut m = Matrix::zeros(self.field, self.ambient, comp.len());
        for (i, &c) in comp.iter().enumerate() {
            m.set(c, i, self.field.one());
        }
        m
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, m: &Matrix) -> Subspace {
        Self::span(self.field, m.rows(), self.basis.iter().map(|b| m.mul_vec(b)).collect())
    }
}

/// Matrix `X` with `to * X = from`, when the columns of `from` lie in the
/// column space of `to` and `to` has full column rank.
pub fn change_of_basis(from: &Matrix, to: &Matrix) -> Option<Matrix> {
    if to.rank() != to.cols() {
        return None;
    }
    to.solve_many(from)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q().from_int(x)).collect()
    }

    #[test]
    fn sum_and_intersection() {
        let u = Subspace::span(q(), 3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let w = Subspace::span(q(), 3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(u.sum(&w).dim(), 3);
        let i = u.intersection(&w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0, 5, 0])));
    }

    #[test]
    fn quotient_maps() {
        let u = Subspace::span(q(), 3, vec![v(&[1, 1, 0])]);
        let p = u.quotient_projection();
        let s = u.quotient_section();
        assert_eq!(p.shape(), (2, 3));
        assert!(p.mul_vec(&v(&[2, 2, 0])).iter().all(Scalar::is_zero));
        assert_eq!(p.mul(&s), Matrix::identity(q(), 2));
    }

    #[test]
    fn coordinates_roundtrip() {
        let u = Subspace::span(q(), 3, vec![v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let x = vector::add(&vector::scale(&u.basis()[0], &q().from_int(3)), &u.basis()[1]);
        let c = u.coords(&x).unwrap();
        assert_eq!(u.combine(&c), x);
        assert!(u.coords(&v(&[0, 0, 1])).is_none());
    }
}
