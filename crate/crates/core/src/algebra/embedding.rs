use std::sync::Arc;

use super::{parse_combination, AlgebraData, FDAlgebra, SPLIT_BUDGET};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, Subspace, Vector};

/// An injective unital algebra map `B -> Λ`, stored as the matrix whose
/// column `j` is the image of the `j`-th basis element of `B`.
#[derive(Clone, Debug)]
pub struct AlgebraEmbedding {
    source: Arc<FDAlgebra>,
    target: Arc<FDAlgebra>,
    matrix: Matrix,
}

/// How the idempotents of a generated subalgebra are chosen.
#[derive(Clone, Debug, Default)]
pub enum IdempotentChoice {
    /// Reuse the target's idempotents when they all lie in the subalgebra,
    /// otherwise split the unit.
    #[default]
    Auto,
    /// Labelled elements of the target, validated inside the subalgebra.
    Supplied(Vec<(String, Vector)>),
}

impl AlgebraEmbedding {
    pub fn new(source: impl Into<Arc<FDAlgebra>>, target: impl Into<Arc<FDAlgebra>>, matrix: Matrix) -> Result<Self> {
        let (source, target) = (source.into(), target.into());
        if source.field() != target.field() {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::InvalidAlgebra("embedding matrix has the wrong shape".into()));
        }
        if matrix.rank() != source.dim() {
            return Err(Error::InvalidAlgebra("embedding is not injective".into()));
        }
        if &matrix.mul_vec(source.unit()) != target.unit() {
            return Err(Error::InvalidAlgebra("embedding is not unital".into()));
        }
        for i in 0..source.dim() {
            let li = matrix.column(i);
            for j in 0..source.dim() {
                let lhs = matrix.mul_vec(&source.structure().basis_product(i, j));
                let rhs = target.mul(&li, &matrix.column(j));
                if lhs != rhs {
                    return Err(Error::InvalidAlgebra(format!(
                        "embedding is not multiplicative on ({}, {})",
                        source.basis_labels()[i],
                        source.basis_labels()[j]
                    )));
                }
            }
        }
        Ok(AlgebraEmbedding { source, target, matrix })
    }

    pub fn identity(a: &Arc<FDAlgebra>) -> Self {
        AlgebraEmbedding {
            source: a.clone(),
            target: a.clone(),
            matrix: Matrix::identity(a.field(), a.dim()),
        }
    }

    /// Embedding of a quiver-presented `B` given the images of its trivial
    /// paths (`e<vertex>`) and arrows.
    pub fn from_quiver_images(
        source: impl Into<Arc<FDAlgebra>>,
        target: impl Into<Arc<FDAlgebra>>,
        images: &[(String, Vector)],
    ) -> Result<Self> {
        let (source, target) = (source.into(), target.into());
        if source.quiver().is_none() {
            return Err(Error::Precondition("source must be quiver-presented".into()));
        }
        let mut cols = Vec::new();
        for label in source.basis_labels() {
            let terms = parse_combination(label).map_err(Error::InvalidAlgebra)?;
            let img = target
                .eval_terms(&terms, |n| images.iter().find(|(k, _)| k == n).map(|(_, v)| v.clone()))
                .map_err(|m| Error::InvalidAlgebra(format!("image of {label}: {m}")))?;
            cols.push(img);
        }
        let m = Matrix::from_columns(target.field(), target.dim(), &cols);
        Self::new(source, target, m)
    }

    pub fn source(&self) -> &Arc<FDAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FDAlgebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn map(&self, b: &[Scalar]) -> Vector {
        self.matrix.mul_vec(b)
    }

    pub fn is_identity(&self) -> bool {
        super::same_algebra(&self.source, &self.target) && self.matrix == Matrix::identity(self.field(), self.source.dim())
    }

    /// Image `ι(B)` as a subspace of `Λ`.
    pub fn image(&self) -> Subspace {
        Subspace::column_space(&self.matrix)
    }

    /// Preimage of an element of `ι(B)`.
    pub fn preimage(&self, x: &[Scalar]) -> Option<Vector> {
        self.matrix.solve(x).expect("shape")
    }
}

/// The subalgebra of `Λ` generated by `generators` and the unit.
pub fn subalgebra(
    lambda: &Arc<FDAlgebra>,
    generators: &[Vector],
    idempotents: IdempotentChoice,
    budget: usize,
) -> Result<AlgebraEmbedding> {
    let field = lambda.field();
    let span = lambda.closure(generators, budget)?;
    let basis: Vec<Vector> = span.basis().to_vec();
    let n = basis.len();
    let coords = |x: &Vector| -> Result<Vector> {
        span.coords(x)
            .ok_or_else(|| Error::InvalidAlgebra("element does not lie in the subalgebra".into()))
    };
    let mut left = Vec::with_capacity(n);
    for a in &basis {
        let cols: Vec<Vector> = basis.iter().map(|b| coords(&lambda.mul(a, b))).collect::<Result<_>>()?;
        left.push(Matrix::from_columns(field, n, &cols));
    }
    let labels: Vec<String> = basis
        .iter()
        .map(|b| {
            let nz: Vec<usize> = (0..b.len()).filter(|&i| !b[i].is_zero()).collect();
            if nz.len() == 1 && b[nz[0]].is_one() {
                lambda.basis_labels()[nz[0]].clone()
            } else {
                format!("({})", lambda.format_element(b))
            }
        })
        .collect();
    let unit = coords(lambda.unit())?;
    let (idem, idem_labels): (Vec<Vector>, Vec<String>) = match idempotents {
        IdempotentChoice::Supplied(list) => {
            let mut v = Vec::new();
            let mut l = Vec::new();
            for (label, e) in list {
                v.push(coords(&e).map_err(|_| Error::InvalidAlgebra(format!("idempotent {label} is not in the subalgebra")))?);
                l.push(label);
            }
            (v, l)
        }
        IdempotentChoice::Auto => {
            if lambda.idempotents().iter().all(|e| span.contains(e)) {
                (
                    lambda.idempotents().iter().map(|e| span.coords_unchecked(e)).collect(),
                    lambda.idempotent_labels().to_vec(),
                )
            } else {
                let st = super::Structure::new(field, left.clone());
                let rad = subalgebra_radical(lambda, &span, &st)?;
                let parts = st.decompose_idempotent(&unit, &rad, SPLIT_BUDGET);
                let labels = (1..=parts.len()).map(|i| format!("b{i}")).collect();
                (parts, labels)
            }
        }
    };
    let st = super::Structure::new(field, left.clone());
    let radical = subalgebra_radical(lambda, &span, &st)?;
    let source = FDAlgebra::from_data(AlgebraData {
        field,
        basis_labels: labels,
        left_mult: left,
        unit,
        idempotents: idem,
        idempotent_labels: idem_labels,
        radical: Some(radical),
        generators: None,
        quiver: None,
        names: lambda
            .names()
            .iter()
            .filter_map(|(k, v)| span.coords(v).map(|c| (k.clone(), c)))
            .collect(),
    })?;
    let matrix = Matrix::from_columns(field, lambda.dim(), &basis);
    AlgebraEmbedding::new(source, lambda.clone(), matrix)
}

/// Over Q the trace form decides; otherwise `B ∩ rad Λ` is the radical
/// whenever `Λ / rad Λ` is a product of copies of the field, because every
/// subalgebra of such a product is semisimple.
fn subalgebra_radical(lambda: &FDAlgebra, span: &Subspace, st: &super::Structure) -> Result<Subspace> {
    if lambda.field() == Field::Rational {
        return st.trace_radical();
    }
    if !(lambda.is_basic() && lambda.is_split()) {
        return Err(Error::Unsupported(
            "radical of a subalgebra over a prime field needs a basic split ambient algebra".into(),
        ));
    }
    let inter = span.intersection(lambda.radical());
    Ok(Subspace::span(
        lambda.field(),
        span.dim(),
        inter.basis().iter().map(|v| span.coords_unchecked(v)).collect(),
    ))
}

/// Elements of `Λ` from strings, for building generator lists.
pub fn parse_elements(lambda: &FDAlgebra, items: &[&str]) -> Result<Vec<Vector>> {
    items
        .iter()
        .map(|s| lambda.parse_element(s).map_err(|m| Error::InvalidAlgebra(format!("{s}: {m}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_triangular_and_diagonal() {
        let m2 = Arc::new(FDAlgebra::matrix_algebra(Field::Rational, 2));
        let gens = parse_elements(&m2, &["E11", "E12", "E22"]).unwrap();
        let e = subalgebra(&m2, &gens, IdempotentChoice::Auto, 100).unwrap();
        assert_eq!(e.source().dim(), 3);
        assert_eq!(e.source().num_classes(), 2);
        assert_eq!(e.source().radical().dim(), 1);
        let gens = parse_elements(&m2, &["E11", "E22"]).unwrap();
        let d = subalgebra(&m2, &gens, IdempotentChoice::Auto, 100).unwrap();
        assert_eq!(d.source().dim(), 2);
        assert!(d.source().is_semisimple());
    }

    #[test]
    fn full_generators_give_identity_image() {
        let m2 = Arc::new(FDAlgebra::matrix_algebra(Field::Rational, 2));
        let gens: Vec<Vector> = (0..4).map(|i| m2.basis_element(i)).collect();
        let e = subalgebra(&m2, &gens, IdempotentChoice::Auto, 100).unwrap();
        assert_eq!(e.source().dim(), 4);
        assert_eq!(e.image().dim(), 4);
        assert!(AlgebraEmbedding::identity(&m2).is_identity());
    }

    #[test]
    fn budget_is_enforced() {
        let m2 = Arc::new(FDAlgebra::matrix_algebra(Field::Rational, 2));
        let gens = parse_elements(&m2, &["E12", "E21"]).unwrap();
        assert!(matches!(subalgebra(&m2, &gens, IdempotentChoice::Auto, 3), Err(Error::Budget(_))));
    }

    #[test]
    fn split_unit_when_idempotents_missing() {
        let m2 = Arc::new(FDAlgebra::matrix_algebra(Field::Rational, 2));
        // diag(1,2) generates the diagonal algebra without containing E11 literally as a generator
        let x = m2.parse_element("E11 + 2 E22").unwrap();
        let e = subalgebra(&m2, &[x], IdempotentChoice::Auto, 10).unwrap();
        assert_eq!(e.source().idempotents().len(), 2);
    }
}
