//! Raw multiplication tables and the computations that only need them:
//! products, the trace-form radical, minimal polynomials, and splitting of
//! idempotents along coprime factors.

use crate::error::{Error, Result};
use crate::linalg::poly::Poly;
use crate::linalg::{vector, Field, Matrix, Scalar, Subspace, Vector};

/// Multiplication of a finite-dimensional algebra in a fixed basis:
/// `left[i]` is the matrix of left multiplication by basis element `i`, so
/// column `j` of `left[i]` expands `b_i * b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub(crate) field: Field,
    pub(crate) left: Vec<Matrix>,
    pub(crate) right: Vec<Matrix>,
}

impl Structure {
    pub fn new(field: Field, left: Vec<Matrix>) -> Self {
        let n = left.len();
        let mut right = vec![Matrix::zeros(field, n, n); n];
        for (j, lj) in left.iter().enumerate() {
            for (i, r) in right.iter_mut().enumerate() {
                // b_j * b_i is column i of left[j]; it is column j of right[i].
                for k in 0..n {
                    r.set(k, j, lj.get(k, i).clone());
                }
            }
        }
        Structure { field, left, right }
    }

    pub fn dim(&self) -> usize {
        self.left.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        self.left[i].column(j)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.left_mult(x).mul_vec(y)
    }

    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        combine(self.field, self.dim(), &self.left, x)
    }

    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        combine(self.field, self.dim(), &self.right, x)
    }

    pub fn unit_vec(&self, i: usize) -> Vector {
        vector::unit(self.field, self.dim(), i)
    }

    /// Span of `{ u x v : x in A }`.
    pub fn corner(&self, u: &[Scalar], v: &[Scalar]) -> Subspace {
        Subspace::column_space(&self.left_mult(u).mul(&self.right_mult(v)))
    }

    /// First `(i, j, k)` with `(b_i b_j) b_k != b_i (b_j b_k)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let prod = self.basis_product(i, j);
                let lhs = self.left_mult(&prod);
                let rhs = self.left[i].mul(&self.left[j]);
                if lhs != rhs {
                    let k = (0..n).find(|&k| lhs.column(k) != rhs.column(k)).unwrap();
                    return Some((i, j, k));
                }
            }
        }
        None
    }

    /// Radical via the trace form; valid in characteristic zero.
    pub fn trace_radical(&self) -> Result<Subspace> {
        if self.field != Field::Rational {
            return Err(Error::Unsupported(
                "trace-form radical needs characteristic zero; use a quiver presentation".into(),
            ));
        }
        let n = self.dim();
        let mut gram = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in i..n {
                let t = self.left[i].mul(&self.left[j]).trace();
                gram.set(i, j, t.clone());
                gram.set(j, i, t);
            }
        }
        Ok(Subspace::span(self.field, n, gram.kernel_basis()))
    }

    /// Checks that the span `rad` is a nilpotent subspace closed under
    /// multiplication by the algebra on both sides.
    pub fn is_nilpotent_ideal(&self, rad: &Subspace) -> bool {
        for r in rad.basis() {
            for i in 0..self.dim() {
                if !rad.contains(&self.left[i].mul_vec(r)) || !rad.contains(&self.right[i].mul_vec(r)) {
                    return false;
                }
            }
        }
        let mut power = rad.clone();
        for _ in 0..=self.dim() {
            if power.is_zero() {
                return true;
            }
            let mut vecs = Vec::new();
            for p in power.basis() {
                for r in rad.basis() {
                    vecs.push(self.mul(p, r));
                }
            }
            power = Subspace::span(self.field, self.dim(), vecs);
        }
        power.is_zero()
    }

    /// Minimal polynomial of `x` inside the corner algebra with unit `u`.
    pub fn minimal_polynomial(&self, x: &[Scalar], u: &[Scalar]) -> Poly {
        let mut powers: Vec<Vector> = vec![u.to_vec()];
        loop {
            let next = self.mul(x, powers.last().unwrap());
            let m = Matrix::from_columns(self.field, self.dim(), &powers);
            if let Some(c) = m.solve(&next).expect("shape") {
                let mut coeffs: Vec<Scalar> = c.iter().map(|s| -s).collect();
                coeffs.push(self.field.one());
                return Poly::new(self.field, coeffs);
            }
            powers.push(next);
        }
    }

    pub fn eval_poly(&self, p: &Poly, x: &[Scalar], u: &[Scalar]) -> Vector {
        let mut acc = vector::zeros(self.field, self.dim());
        for c in p.coeffs().iter().rev() {
            acc = self.mul(x, &acc);
            vector::axpy(&mut acc, c, u);
        }
        acc
    }

    /// Tries to write the idempotent `u` as a sum of two nonzero orthogonal
    /// idempotents. Candidates are corner elements `u b u` and small integer
    /// combinations of them; a candidate works when its minimal polynomial
    /// has a root in the field and a coprime cofactor.
    pub fn split_idempotent(&self, u: &[Scalar], rad: &Subspace, budget: usize) -> Option<(Vector, Vector)> {
        let corner = self.corner(u, u);
        let rad_corner = corner.intersection(rad);
        if corner.dim() - rad_corner.dim() <= 1 {
            return None;
        }
        let basis: Vec<Vector> = corner.basis().to_vec();
        let mut tried = 0;
        let mut candidates: Vec<Vector> = basis.clone();
        'outer: for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i != j {
                    for c in 2..4 {
                        let mut v = basis[i].clone();
                        vector::axpy(&mut v, &self.field.from_int(c), &basis[j]);
                        candidates.push(v);
                        if candidates.len() > budget {
                            break 'outer;
                        }
                    }
                }
            }
        }
        for x in candidates {
            tried += 1;
            if tried > budget {
                break;
            }
            let mp = self.minimal_polynomial(&x, u);
            let Some(roots) = mp.roots() else { continue };
            for r in roots {
                let lin = Poly::linear(self.field, &r);
                let mut k = 0;
                let mut rest = mp.clone();
                loop {
                    let (q, rem) = rest.div_rem(&lin);
                    if !rem.is_zero() {
                        break;
                    }
                    rest = q;
                    k += 1;
                }
                if rest.degree() == Some(0) {
                    continue;
                }
                let head = lin.pow(k);
                let (g, _a, b) = head.ext_gcd(&rest);
                debug_assert_eq!(g.degree(), Some(0));
                // b*rest == 1 mod head, == 0 mod rest.
                let e = self.eval_poly(&b.mul(&rest), &x, u);
                let f = vector::sub(u, &e);
                if !vector::is_zero(&e) && !vector::is_zero(&f) && self.mul(&e, &e) == e {
                    return Some((e, f));
                }
            }
        }
        None
    }

    /// Decomposes `u` into pairwise orthogonal idempotents none of which can
    /// be split further by [`Structure::split_idempotent`].
    pub fn decompose_idempotent(&self, u: &[Scalar], rad: &Subspace, budget: usize) -> Vec<Vector> {
        let mut done = Vec::new();
        let mut todo = vec![u.to_vec()];
        while let Some(e) = todo.pop() {
            match self.split_idempotent(&e, rad, budget) {
                Some((a, b)) => {
                    todo.push(b);
                    todo.push(a);
                }
                None => done.push(e),
            }
        }
        done
    }
}

fn combine(field: Field, n: usize, mats: &[Matrix], x: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, n, n);
    for (c, m) in x.iter().zip(mats) {
        out.add_scaled(c, m);
    }
    out
}
