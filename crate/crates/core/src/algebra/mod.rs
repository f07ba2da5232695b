//! Finite-dimensional unital associative algebras with a complete set of
//! primitive orthogonal idempotents.

mod endomorphism;
mod embedding;
mod quiver;
mod structure;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use endomorphism::{endomorphism_algebra, EndomorphismAlgebra};
pub use embedding::{parse_elements, subalgebra, AlgebraEmbedding, IdempotentChoice};
pub use quiver::{parse_combination, Arrow, Path, Quiver, QuiverPresentation, Term};
pub use structure::Structure;

use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Scalar, Subspace, Vector};

/// Number of corner candidates tried when splitting an idempotent.
pub const SPLIT_BUDGET: usize = 200;

/// An algebra generator sitting in a Peirce corner: `element = e_target * element * e_source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub element: Vector,
    pub target: usize,
    pub source: usize,
}

/// A validated finite-dimensional algebra.
#[derive(Clone, Debug)]
pub struct FDAlgebra {
    structure: Structure,
    basis_labels: Vec<String>,
    unit: Vector,
    idempotents: Vec<Vector>,
    idempotent_labels: Vec<String>,
    class_of: Vec<usize>,
    class_labels: Vec<String>,
    generators: Vec<Generator>,
    radical: Subspace,
    split: bool,
    quiver: Option<QuiverPresentation>,
    names: Vec<(String, Vector)>,
    digest: u64,
}

impl PartialEq for FDAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.digest == o.digest && self.structure == o.structure && self.idempotents == o.idempotents
    }
}

impl Eq for FDAlgebra {}

/// Raw ingredients of an algebra prior to validation.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub field: Field,
    pub basis_labels: Vec<String>,
    pub left_mult: Vec<Matrix>,
    pub unit: Vector,
    pub idempotents: Vec<Vector>,
    pub idempotent_labels: Vec<String>,
    pub radical: Option<Subspace>,
    pub generators: Option<Vec<Generator>>,
    pub quiver: Option<QuiverPresentation>,
    /// Extra named elements (arrows, trivial paths) for parsing.
    pub names: Vec<(String, Vector)>,
}

impl FDAlgebra {
    /// Validates the axioms exhaustively: associativity on all basis
    /// triples, the unit on all basis elements, orthogonality and
    /// completeness of the idempotents, and their primitivity.
    pub fn from_data(data: AlgebraData) -> Result<Self> {
        let n = data.left_mult.len();
        let field = data.field;
        if data.basis_labels.len() != n {
            return Err(Error::InvalidAlgebra("basis label count differs from dimension".into()));
        }
        for (i, m) in data.left_mult.iter().enumerate() {
            if m.shape() != (n, n) || m.field() != field {
                return Err(Error::InvalidAlgebra(format!("multiplication matrix {i} has wrong shape or field")));
            }
        }
        if data.unit.len() != n || data.idempotents.iter().any(|e| e.len() != n) {
            return Err(Error::InvalidAlgebra("element length differs from dimension".into()));
        }
        if data.idempotent_labels.len() != data.idempotents.len() {
            return Err(Error::InvalidAlgebra("idempotent label count mismatch".into()));
        }
        let st = Structure::new(field, data.left_mult);
        let lbl = |i: usize| data.basis_labels[i].clone();
        if let Some((i, j, k)) = st.associativity_witness() {
            return Err(Error::InvalidAlgebra(format!(
                "associativity fails on ({}, {}, {})",
                lbl(i),
                lbl(j),
                lbl(k)
            )));
        }
        let id = Matrix::identity(field, n);
        if st.left_mult(&data.unit) != id || st.right_mult(&data.unit) != id {
            let bad = (0..n)
                .find(|&i| st.mul(&data.unit, &st.unit_vec(i)) != st.unit_vec(i) || st.mul(&st.unit_vec(i), &data.unit) != st.unit_vec(i))
                .unwrap_or(0);
            return Err(Error::InvalidAlgebra(format!("unit fails on basis element {}", lbl(bad))));
        }
        let m = data.idempotents.len();
        if m == 0 && n > 0 {
            return Err(Error::InvalidAlgebra("no idempotents supplied".into()));
        }
        let mut total = vector::zeros(field, n);
        for (i, e) in data.idempotents.iter().enumerate() {
            for (j, f) in data.idempotents.iter().enumerate() {
                let p = st.mul(e, f);
                let expect = if i == j { e.clone() } else { vector::zeros(field, n) };
                if p != expect {
                    return Err(Error::InvalidAlgebra(format!(
                        "idempotents {} and {} are not orthogonal idempotents",
                        data.idempotent_labels[i], data.idempotent_labels[j]
                    )));
                }
            }
            if vector::is_zero(e) {
                return Err(Error::InvalidAlgebra(format!("idempotent {} is zero", data.idempotent_labels[i])));
            }
            total = vector::add(&total, e);
        }
        if total != data.unit {
            return Err(Error::InvalidAlgebra("idempotents do not sum to the unit".into()));
        }
        let radical = match data.radical {
            Some(r) => r,
            None => st.trace_radical()?,
        };
        if !st.is_nilpotent_ideal(&radical) {
            return Err(Error::InvalidAlgebra("radical candidate is not a nilpotent ideal".into()));
        }
        let mut split = true;
        for (i, e) in data.idempotents.iter().enumerate() {
            let corner = st.corner(e, e);
            let top = corner.dim() - corner.intersection(&radical).dim();
            if top != 1 {
                if let Some((a, _)) = st.split_idempotent(e, &radical, SPLIT_BUDGET) {
                    return Err(Error::InvalidAlgebra(format!(
                        "idempotent {} is not primitive; it splits off {:?}",
                        data.idempotent_labels[i],
                        a.iter().map(|s| s.to_string()).collect::<Vec<_>>()
                    )));
                }
                split = false;
            }
        }
        let class_of = simple_classes(&st, &data.idempotents, &radical);
        let nclasses = class_of.iter().max().map_or(0, |c| c + 1);
        // Split: A / rad A is a product of M_{m_c}, so a smaller nilpotent
        // ideal shows up in the dimension count.
        let top: usize = (0..nclasses).map(|c| class_of.iter().filter(|&&k| k == c).count().pow(2)).sum();
        if split && n - radical.dim() != top {
            return Err(Error::InvalidAlgebra(format!(
                "radical candidate of dimension {} is not the radical: A/R has dimension {}, expected {top}",
                radical.dim(),
                n - radical.dim()
            )));
        }
        let class_labels = (0..nclasses)
            .map(|c| data.idempotent_labels[class_of.iter().position(|&k| k == c).unwrap()].clone())
            .collect();
        let generators = match data.generators {
            Some(g) => g,
            None => peirce_generators(&st, &data.idempotents),
        };
        let mut h = DefaultHasher::new();
        field.hash(&mut h);
        st.left.hash(&mut h);
        data.idempotents.hash(&mut h);
        let digest = h.finish();
        Ok(FDAlgebra {
            structure: st,
            basis_labels: data.basis_labels,
            unit: data.unit,
            idempotents: data.idempotents,
            idempotent_labels: data.idempotent_labels,
            class_of,
            class_labels,
            generators,
            radical,
            split,
            quiver: data.quiver,
            names: data.names,
            digest,
        })
    }

    /// Builds an algebra from a table of basis products, `products[i][j]`
    /// expanding `b_i * b_j`.
    pub fn from_structure_constants(
        field: Field,
        basis_labels: Vec<String>,
        products: &[Vec<Vector>],
        unit: Vector,
        idempotents: Vec<Vector>,
        idempotent_labels: Vec<String>,
    ) -> Result<Self> {
        Self::from_structure_constants_with_radical(field, basis_labels, products, unit, idempotents, idempotent_labels, None)
    }

    /// As [`FDAlgebra::from_structure_constants`], with a known radical.
    /// It is checked to be a nilpotent ideal of the right codimension.
    pub fn from_structure_constants_with_radical(
        field: Field,
        basis_labels: Vec<String>,
        products: &[Vec<Vector>],
        unit: Vector,
        idempotents: Vec<Vector>,
        idempotent_labels: Vec<String>,
        radical: Option<Subspace>,
    ) -> Result<Self> {
        let n = basis_labels.len();
        if products.len() != n || products.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidAlgebra("product table must be n x n".into()));
        }
        let left = products.iter().map(|row| Matrix::from_columns(field, n, row)).collect();
        Self::from_data(AlgebraData {
            field,
            basis_labels,
            left_mult: left,
            unit,
            idempotents,
            idempotent_labels,
            radical,
            generators: None,
            quiver: None,
            names: Vec::new(),
        })
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Self {
        let one = vec![field.one()];
        Self::from_data(AlgebraData {
            field,
            basis_labels: vec!["1".into()],
            left_mult: vec![Matrix::identity(field, 1)],
            unit: one.clone(),
            idempotents: vec![one],
            idempotent_labels: vec!["1".into()],
            radical: Some(Subspace::zero(field, 1)),
            generators: Some(Vec::new()),
            quiver: None,
            names: Vec::new(),
        })
        .expect("ground field is an algebra")
    }

    /// Full matrix algebra `M_n` with matrix-unit basis `E{i}{j}` and the
    /// diagonal units as idempotents.
    pub fn matrix_algebra(field: Field, n: usize) -> Self {
        let idx = |i: usize, j: usize| i * n + j;
        let dim = n * n;
        let mut products = vec![vec![vector::zeros(field, dim); dim]; dim];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    products[idx(i, j)][idx(j, l)] = vector::unit(field, dim, idx(i, l));
                }
            }
        }
        let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1))).collect();
        let mut unit = vector::zeros(field, dim);
        let mut idem = Vec::new();
        for i in 0..n {
            unit[idx(i, i)] = field.one();
            idem.push(vector::unit(field, dim, idx(i, i)));
        }
        let idem_labels = (0..n).map(|i| format!("E{}{}", i + 1, i + 1)).collect();
        let left_mult = products.iter().map(|row| Matrix::from_columns(field, dim, row)).collect();
        // Simple, so the radical is known in every characteristic.
        Self::from_data(AlgebraData {
            field,
            basis_labels: labels,
            left_mult,
            unit,
            idempotents: idem,
            idempotent_labels: idem_labels,
            radical: Some(Subspace::zero(field, dim)),
            generators: None,
            quiver: None,
            names: Vec::new(),
        })
        .expect("matrix algebra is valid")
    }

    pub fn field(&self) -> Field {
        self.structure.field
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn basis_element(&self, i: usize) -> Vector {
        self.structure.unit_vec(i)
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn zero(&self) -> Vector {
        vector::zeros(self.field(), self.dim())
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.structure.mul(x, y)
    }

    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        self.structure.left_mult(x)
    }

    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        self.structure.right_mult(x)
    }

    pub fn left_basis_mult(&self) -> &[Matrix] {
        &self.structure.left
    }

    pub fn right_basis_mult(&self) -> &[Matrix] {
        &self.structure.right
    }

    pub fn idempotents(&self) -> &[Vector] {
        &self.idempotents
    }

    pub fn idempotent_labels(&self) -> &[String] {
        &self.idempotent_labels
    }

    pub fn class_of(&self, idempotent: usize) -> usize {
        self.class_of[idempotent]
    }

    pub fn num_classes(&self) -> usize {
        self.class_labels.len()
    }

    pub fn class_labels(&self) -> &[String] {
        &self.class_labels
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.class_labels.iter().position(|l| l == label)
    }

    /// First idempotent of a simple class.
    pub fn class_representative(&self, class: usize) -> usize {
        self.class_of.iter().position(|&c| c == class).expect("class has an idempotent")
    }

    pub fn class_idempotents(&self, class: usize) -> Vec<usize> {
        (0..self.idempotents.len()).filter(|&i| self.class_of[i] == class).collect()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    /// Whether every `e A e / e rad(A) e` is one-dimensional, i.e. the
    /// ground field splits the algebra.
    pub fn is_split(&self) -> bool {
        self.split
    }

    pub fn is_basic(&self) -> bool {
        self.num_classes() == self.idempotents.len()
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn quiver(&self) -> Option<&QuiverPresentation> {
        self.quiver.as_ref()
    }

    pub fn names(&self) -> &[(String, Vector)] {
        &self.names
    }

    pub fn digest(&self) -> u64 {
        self.digest
    }

    /// `e_t A e_s`.
    pub fn corner(&self, t: usize, s: usize) -> Subspace {
        self.structure.corner(&self.idempotents[t], &self.idempotents[s])
    }

    /// Opposite algebra: same basis, transposed products.
    pub fn opposite(&self) -> FDAlgebra {
        let st = &self.structure;
        let generators = self
            .generators
            .iter()
            .map(|g| Generator { element: g.element.clone(), target: g.source, source: g.target })
            .collect();
        let left_mult = st.right.clone();
        let mut h = DefaultHasher::new();
        st.field.hash(&mut h);
        left_mult.hash(&mut h);
        self.idempotents.hash(&mut h);
        FDAlgebra {
            structure: Structure { field: st.field, left: left_mult, right: st.left.clone() },
            basis_labels: self.basis_labels.clone(),
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            idempotent_labels: self.idempotent_labels.clone(),
            class_of: self.class_of.clone(),
            class_labels: self.class_labels.clone(),
            generators,
            radical: self.radical.clone(),
            split: self.split,
            quiver: None,
            names: self.names.clone(),
            digest: h.finish(),
        }
    }

    /// Quotient by the two-sided ideal generated by `elements`, together
    /// with the projection matrix.
    pub fn quotient(&self, elements: &[Vector]) -> Result<(FDAlgebra, Matrix)> {
        let ideal = self.two_sided_ideal(elements);
        if ideal.dim() == self.dim() {
            return Err(Error::Precondition("ideal is the whole algebra".into()));
        }
        let proj = ideal.quotient_projection();
        let sect = ideal.quotient_section();
        let m = proj.rows();
        let field = self.field();
        let left: Vec<Matrix> = (0..m)
            .map(|i| proj.mul(&self.left_mult(&sect.column(i))).mul(&sect))
            .collect();
        let labels: Vec<String> = ideal.complement_indices().iter().map(|&i| self.basis_labels[i].clone()).collect();
        let mut kept = Vec::new();
        let mut remap = vec![None; self.idempotents.len()];
        for (i, e) in self.idempotents.iter().enumerate() {
            let img = proj.mul_vec(e);
            if !vector::is_zero(&img) {
                remap[i] = Some(kept.len());
                kept.push((img, self.idempotent_labels[i].clone()));
            }
        }
        let generators = self
            .generators
            .iter()
            .filter_map(|g| {
                let img = proj.mul_vec(&g.element);
                match (vector::is_zero(&img), remap[g.target], remap[g.source]) {
                    (false, Some(t), Some(s)) => Some(Generator { element: img, target: t, source: s }),
                    _ => None,
                }
            })
            .collect();
        let radical = self.radical.image(&proj);
        let alg = FDAlgebra::from_data(AlgebraData {
            field,
            basis_labels: labels,
            left_mult: left,
            unit: proj.mul_vec(&self.unit),
            idempotent_labels: kept.iter().map(|k| k.1.clone()).collect(),
            idempotents: kept.into_iter().map(|k| k.0).collect(),
            radical: Some(radical),
            generators: Some(generators),
            quiver: None,
            names: self.names.iter().map(|(n, v)| (n.clone(), proj.mul_vec(v))).collect(),
        })?;
        Ok((alg, proj))
    }

    pub fn two_sided_ideal(&self, elements: &[Vector]) -> Subspace {
        let n = self.dim();
        let mut vecs = Vec::new();
        for x in elements {
            for i in 0..n {
                let bx = self.structure.left[i].mul_vec(x);
                for j in 0..n {
                    vecs.push(self.structure.right[j].mul_vec(&bx));
                }
            }
        }
        Subspace::span(self.field(), n, vecs)
    }

    /// Span of all products of two radical elements.
    pub fn radical_squared(&self) -> Subspace {
        let mut vecs = Vec::new();
        for a in self.radical.basis() {
            for b in self.radical.basis() {
                vecs.push(self.mul(a, b));
            }
        }
        Subspace::span(self.field(), self.dim(), vecs)
    }

    /// Human-readable expansion of an element over basis labels.
    pub fn format_element(&self, x: &[Scalar]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.basis_labels[i].clone()
                } else {
                    format!("{}*{}", c, self.basis_labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.basis_labels.iter().position(|l| l == label)
    }

    /// Sub-span closed under multiplication generated by `gens` and the unit.
    pub fn closure(&self, gens: &[Vector], budget: usize) -> Result<Subspace> {
        let mut vecs = vec![self.unit.clone()];
        vecs.extend(gens.iter().cloned());
        let mut span = Subspace::span(self.field(), self.dim(), vecs);
        loop {
            let basis = span.basis().to_vec();
            let mut grown = span.clone();
            for a in &basis {
                for b in &basis {
                    let p = self.mul(a, b);
                    if !grown.contains(&p) {
                        grown = grown.sum(&Subspace::span(self.field(), self.dim(), vec![p]));
                    }
                }
            }
            if grown.dim() > budget {
                return Err(Error::Budget(format!("subalgebra closure exceeds {budget} dimensions")));
            }
            if grown.dim() == span.dim() {
                return Ok(span);
            }
            span = grown;
        }
    }
}

/// Two primitive idempotents are equivalent iff `e_i A e_j * e_j A e_i`
/// reaches outside the radical.
fn simple_classes(st: &Structure, idem: &[Vector], rad: &Subspace) -> Vec<usize> {
    let m = idem.len();
    let mut class = vec![usize::MAX; m];
    let mut next = 0;
    for i in 0..m {
        if class[i] != usize::MAX {
            continue;
        }
        class[i] = next;
        for j in i + 1..m {
            if class[j] != usize::MAX {
                continue;
            }
            let ij = st.corner(&idem[i], &idem[j]);
            let ji = st.corner(&idem[j], &idem[i]);
            let linked = ij
                .basis()
                .iter()
                .any(|x| ji.basis().iter().any(|y| !rad.contains(&st.mul(x, y))));
            if linked {
                class[j] = next;
            }
        }
        next += 1;
    }
    class
}

/// Bases of every Peirce corner, as generators.
pub(crate) fn peirce_generators(st: &Structure, idem: &[Vector]) -> Vec<Generator> {
    let mut out = Vec::new();
    for (t, et) in idem.iter().enumerate() {
        for (s, es) in idem.iter().enumerate() {
            for b in st.corner(et, es).basis() {
                if t == s && b == es {
                    continue;
                }
                out.push(Generator { element: b.clone(), target: t, source: s });
            }
        }
    }
    out
}

pub type AlgebraRef = Arc<FDAlgebra>;

/// Same algebra, by pointer or by content.
pub fn same_algebra(a: &FDAlgebra, b: &FDAlgebra) -> bool {
    std::ptr::eq(a, b) || a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn matrix_algebra_is_valid_with_one_class() {
        let m2 = FDAlgebra::matrix_algebra(q(), 2);
        assert_eq!(m2.dim(), 4);
        assert_eq!(m2.num_classes(), 1);
        assert!(m2.is_semisimple());
        assert!(m2.is_split());
    }

    #[test]
    fn product_of_fields_has_two_classes() {
        let f = q();
        let e1 = vec![f.one(), f.zero()];
        let e2 = vec![f.zero(), f.one()];
        let z = vec![f.zero(), f.zero()];
        let products = vec![vec![e1.clone(), z.clone()], vec![z, e2.clone()]];
        let a = FDAlgebra::from_structure_constants(
            f,
            vec!["a".into(), "b".into()],
            &products,
            vec![f.one(), f.one()],
            vec![e1, e2],
            vec!["1".into(), "2".into()],
        )
        .unwrap();
        assert_eq!(a.num_classes(), 2);
        assert_eq!(a.opposite(), a);
    }

    #[test]
    fn broken_associativity_is_named() {
        let f = q();
        let n = 2;
        // basis 1, x with x*x = 1 but also 1*x = 0: breaks unit/associativity
        let one = vector::unit(f, n, 0);
        let x = vector::unit(f, n, 1);
        let products = vec![vec![one.clone(), x.clone()], vec![x.clone(), x.clone()]];
        let err = FDAlgebra::from_structure_constants(
            f,
            vec!["1".into(), "x".into()],
            &products,
            one.clone(),
            vec![one.clone()],
            vec!["1".into()],
        );
        // x*x = x makes x idempotent: the unit is not primitive.
        assert!(err.is_err());
        let products = vec![vec![one.clone(), x.clone()], vec![x.clone(), vector::add(&one, &x)]];
        let err = FDAlgebra::from_structure_constants(
            f,
            vec!["1".into(), "x".into()],
            &products,
            one.clone(),
            vec![one.clone()],
            vec!["1".into()],
        );
        // x^2 = x + 1 gives Q(sqrt 5): valid, but not split over Q.
        assert!(!err.unwrap().is_split());
        let mut tampered = FDAlgebra::matrix_algebra(f, 2).structure().left.clone();
        tampered[1].set(0, 2, f.zero()); // E12 * E21 = 0 instead of E11
        let products: Vec<Vec<Vector>> = tampered.iter().map(|m| m.columns()).collect();
        let mut unit = vector::zeros(f, 4);
        unit[0] = f.one();
        unit[3] = f.one();
        let err = FDAlgebra::from_structure_constants(
            f,
            ["E11", "E12", "E21", "E22"].iter().map(|s| s.to_string()).collect(),
            &products,
            unit,
            vec![vector::unit(f, 4, 0), vector::unit(f, 4, 3)],
            vec!["E11".into(), "E22".into()],
        )
        .unwrap_err();
        assert!(err.to_string().contains("associativity fails on"), "{err}");
    }

    #[test]
    fn opposite_is_involutive_on_raw_data() {
        let m2 = FDAlgebra::matrix_algebra(q(), 2);
        let back = m2.opposite().opposite();
        assert_eq!(back, m2);
        assert_eq!(m2.opposite().radical().dim(), m2.radical().dim());
    }

    #[test]
    fn splitting_the_unit_of_m2() {
        let m2 = FDAlgebra::matrix_algebra(q(), 2);
        let parts = m2.structure().decompose_idempotent(m2.unit(), m2.radical(), SPLIT_BUDGET);
        assert_eq!(parts.len(), 2);
        let sum = vector::add(&parts[0], &parts[1]);
        assert_eq!(&sum, m2.unit());
    }
}
