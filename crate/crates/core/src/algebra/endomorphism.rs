//! `End_A(M_1 ⊕ … ⊕ M_n)` for indecomposable summands, multiplied by
//! composition: `f * g = f ∘ g`.

use super::{AlgebraData, FDAlgebra, Structure};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace, Vector};
use crate::modules::{find_isomorphism, hom_matrices, FDModule};

/// The algebra together with the block matrices its basis stands for.
#[derive(Clone, Debug)]
pub struct EndomorphismAlgebra {
    pub algebra: FDAlgebra,
    /// `basis[k]` acts on `M_1 ⊕ … ⊕ M_n`.
    pub basis: Vec<Matrix>,
    pub offsets: Vec<usize>,
}

impl EndomorphismAlgebra {
    /// The endomorphism of the direct sum with coordinates `x`.
    pub fn matrix_of(&self, x: &[crate::linalg::Scalar]) -> Matrix {
        let f = self.algebra.field();
        let n = self.basis.first().map_or(0, |b| b.rows());
        let mut out = Matrix::zeros(f, n, n);
        for (c, b) in x.iter().zip(&self.basis) {
            out.add_scaled(c, b);
        }
        out
    }

    /// Coordinates of an endomorphism of the direct sum, if it is one.
    pub fn element_of(&self, m: &Matrix) -> Option<Vector> {
        coordinates(self.algebra.field(), &self.basis, m).ok()
    }

    /// `h: M_j -> M_i` placed in block `(i, j)`.
    pub fn block(&self, i: usize, j: usize, h: &Matrix) -> Matrix {
        let f = self.algebra.field();
        let n = self.basis.first().map_or(0, |b| b.rows());
        let mut out = Matrix::zeros(f, n, n);
        out.set_block(self.offsets[i], self.offsets[j], h);
        out
    }
}

/// Radical of a local endomorphism ring with one-dimensional top, as the
/// kernel of a normalised trace; `None` if no such ideal is found.
fn split_local_radical(f: Field, st: &Structure, mats: &[Matrix], m: &FDModule) -> Option<Subspace> {
    let layers = m.radical_series();
    // Traces on the layers `rad^i M / rad^{i+1} M`; an endomorphism `λ + n`
    // has trace `λ · dim` there.
    for w in layers.windows(2).map(|w| (w[0].clone(), w[1].clone())).chain(std::iter::once((
        Subspace::full(f, m.dim()),
        Subspace::zero(f, m.dim()),
    ))) {
        let (upper, lower) = w;
        let d = upper.dim() - lower.dim();
        if d == 0 || f.from_int(d as i64).is_zero() {
            continue;
        }
        // Basis of upper modulo lower.
        let mut comp = lower.clone();
        let mut extra = Vec::new();
        for v in upper.basis() {
            if !comp.contains(v) {
                comp = comp.sum(&Subspace::span(f, m.dim(), vec![v.clone()]));
                extra.push(v.clone());
            }
        }
        let mut all = lower.basis().to_vec();
        all.extend(extra.iter().cloned());
        let coords = Matrix::from_columns(f, m.dim(), &all);
        let skip = lower.dim();
        let traces: Vec<_> = mats
            .iter()
            .map(|g| {
                let mut t = f.zero();
                for (k, v) in extra.iter().enumerate() {
                    let c = coords.solve(&g.mul_vec(v)).ok().flatten().expect("endomorphisms preserve the layers");
                    t = &t + &c[skip + k];
                }
                t
            })
            .collect();
        let row = Matrix::from_rows(f, mats.len(), vec![traces]);
        let rad = Subspace::span(f, mats.len(), row.kernel_basis());
        if rad.dim() + 1 == mats.len() && st.is_nilpotent_ideal(&rad) {
            return Some(rad);
        }
    }
    None
}

/// `labels` names the summands; isomorphic summands fall into one class.
pub fn endomorphism_algebra(summands: &[FDModule], labels: &[String]) -> Result<EndomorphismAlgebra> {
    let Some(first) = summands.first() else {
        return Err(Error::InvalidModule("empty decomposition".into()));
    };
    if labels.len() != summands.len() {
        return Err(Error::InvalidModule("one label per summand is required".into()));
    }
    let f = first.field();
    for s in summands {
        first.same_algebra(s)?;
        if s.is_zero() {
            return Err(Error::InvalidModule("zero summand".into()));
        }
    }
    let k = summands.len();
    let mut offsets = Vec::with_capacity(k);
    let mut total = 0;
    for s in summands {
        offsets.push(total);
        total += s.dim();
    }

    // Local radicals of the summand endomorphism rings.
    let mut local_rads: Vec<(Vec<Matrix>, Subspace)> = Vec::with_capacity(k);
    for (s, label) in summands.iter().zip(labels) {
        let mats = hom_matrices(s, s)?;
        let st = matrix_structure(f, &mats)?;
        match split_local_radical(f, &st, &mats, s) {
            Some(r) => local_rads.push((mats, r)),
            None => {
                let unit = coordinates(f, &mats, &Matrix::identity(f, s.dim()))?;
                let rad = if f == Field::Rational { st.trace_radical()? } else { Subspace::zero(f, mats.len()) };
                if st.split_idempotent(&unit, &rad, super::SPLIT_BUDGET).is_some() {
                    return Err(Error::InvalidModule(format!("summand {label} has a non-local endomorphism ring")));
                }
                return Err(Error::Unsupported(format!(
                    "cannot certify that the endomorphism ring of summand {label} is local"
                )));
            }
        }
    }

    let embed = |i: usize, j: usize, b: &Matrix| {
        let mut big = Matrix::zeros(f, total, total);
        big.set_block(offsets[i], offsets[j], b);
        big
    };
    let mut basis = Vec::new();
    let mut basis_labels = Vec::new();
    let mut rad_vecs: Vec<(usize, usize, Matrix)> = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let homs = if i == j { local_rads[i].0.clone() } else { hom_matrices(&summands[j], &summands[i])? };
            for (n, h) in homs.iter().enumerate() {
                basis.push(embed(i, j, h));
                basis_labels.push(format!("{}<-{}#{}", labels[i], labels[j], n + 1));
            }
            // Radical part of block (i, j).
            if i == j {
                let (mats, r) = &local_rads[i];
                for c in r.basis() {
                    rad_vecs.push((i, j, combine(f, mats, c, summands[i].dim())));
                }
            } else if let Some(iso) = find_isomorphism(&summands[j], &summands[i])? {
                let (mats, r) = &local_rads[j];
                for c in r.basis() {
                    rad_vecs.push((i, j, iso.matrix.mul(&combine(f, mats, c, summands[j].dim()))));
                }
            } else {
                for h in &homs {
                    rad_vecs.push((i, j, h.clone()));
                }
            }
        }
    }
    let n = basis.len();
    let st = matrix_structure(f, &basis)?;
    let radical = Subspace::span(
        f,
        n,
        rad_vecs.iter().map(|(i, j, m)| coordinates(f, &basis, &embed(*i, *j, m))).collect::<Result<Vec<_>>>()?,
    );
    let unit = coordinates(f, &basis, &Matrix::identity(f, total))?;
    let idempotents = (0..k)
        .map(|i| coordinates(f, &basis, &embed(i, i, &Matrix::identity(f, summands[i].dim()))))
        .collect::<Result<Vec<_>>>()?;
    let names = labels.iter().cloned().zip(idempotents.iter().cloned()).collect();
    let algebra = FDAlgebra::from_data(AlgebraData {
        field: f,
        basis_labels,
        left_mult: st.left.clone(),
        unit,
        idempotents,
        idempotent_labels: labels.to_vec(),
        radical: Some(radical),
        generators: None,
        quiver: None,
        names,
    })?;
    Ok(EndomorphismAlgebra { algebra, basis, offsets })
}

fn combine(f: Field, mats: &[Matrix], c: &[crate::linalg::Scalar], n: usize) -> Matrix {
    let mut out = Matrix::zeros(f, n, n);
    for (x, m) in c.iter().zip(mats) {
        out.add_scaled(x, m);
    }
    out
}

fn flatten(m: &Matrix) -> Vector {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for c in m.columns() {
        v.extend(c);
    }
    v
}

/// Coordinates of `target` in the span of `mats`.
fn coordinates(f: Field, mats: &[Matrix], target: &Matrix) -> Result<Vector> {
    let len = target.rows() * target.cols();
    let a = Matrix::from_columns(f, len, &mats.iter().map(flatten).collect::<Vec<_>>());
    a.solve(&flatten(target))?
        .ok_or_else(|| Error::TheoremViolation("endomorphisms are not closed under composition".into()))
}

/// Structure constants of a span of matrices closed under composition.
fn matrix_structure(f: Field, mats: &[Matrix]) -> Result<Structure> {
    let n = mats.len();
    if n == 0 {
        return Ok(Structure::new(f, Vec::new()));
    }
    let len = mats[0].rows() * mats[0].cols();
    let a = Matrix::from_columns(f, len, &mats.iter().map(flatten).collect::<Vec<_>>());
    let left = mats
        .iter()
        .map(|x| {
            let cols = mats
                .iter()
                .map(|y| {
                    a.solve(&flatten(&x.mul(y)))?.ok_or_else(|| {
                        Error::TheoremViolation("endomorphisms are not closed under composition".into())
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(f, n, &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Structure::new(f, left))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{Quiver, QuiverPresentation};
    use crate::modules::{projective, simple, FDModule};

    fn a3() -> Arc<FDAlgebra> {
        let q = Quiver::from_triples(&["1", "2", "3"], &[("g", "1", "2"), ("a", "2", "3")]).unwrap();
        let p = QuiverPresentation::parse(Field::Rational, q, &[], 2).unwrap();
        Arc::new(FDAlgebra::from_quiver(Field::Rational, p).unwrap())
    }

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("M{i}")).collect()
    }

    #[test]
    fn end_of_simple_is_ground_field() {
        let a = a3();
        let e = endomorphism_algebra(&[simple(&a, 1)], &labels(1)).unwrap();
        assert_eq!(e.algebra.dim(), 1);
        assert!(e.algebra.is_semisimple());
    }

    #[test]
    fn end_of_doubled_projective_is_matrix_algebra() {
        let a = a3();
        let p = projective(&a, 0).0;
        let e = endomorphism_algebra(&[p.clone(), p], &labels(2)).unwrap();
        assert_eq!(e.algebra.dim(), 4);
        assert_eq!(e.algebra.num_classes(), 1);
        assert!(e.algebra.is_semisimple());
    }

    #[test]
    fn regular_module_endomorphisms_recover_the_opposite_dimension() {
        let a = a3();
        let ps: Vec<FDModule> = (0..3).map(|c| projective(&a, c).0).collect();
        let e = endomorphism_algebra(&ps, &labels(3)).unwrap();
        assert_eq!(e.algebra.dim(), a.dim());
        assert_eq!(e.algebra.num_classes(), 3);
        assert_eq!(e.algebra.radical().dim(), a.radical().dim());
    }

    #[test]
    fn decomposable_summand_is_rejected() {
        let a = a3();
        let m = simple(&a, 0).direct_sum(&simple(&a, 0)).unwrap();
        let err = endomorphism_algebra(&[m], &labels(1)).unwrap_err();
        assert!(matches!(err, Error::InvalidModule(_)), "{err}");
    }
}
