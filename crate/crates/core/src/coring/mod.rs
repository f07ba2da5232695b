//! Corings over a finite-dimensional algebra, and the right dual coring
//! `W = Hom_{B^op}(Λ, B)` of an extension `B ⊆ Λ`.
//!
//! Conventions: `(b·f·b')(λ) = b·f(b'λ)` on `W`, and `W ⊗_B W` is
//! identified with `Hom_{B^op}(Λ ⊗_B Λ, B)` through
//! `ψ(f ⊗ g)(λ ⊗ λ') = f(g(λ)·λ')`.

mod grouplike;
mod kernel;
mod right;

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{same_algebra, AlgebraEmbedding, FDAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Scalar, Subspace, Vector};
use crate::modules::{
    hom_matrices, lambda_as_right_module, projective_decomposition_right, tensor, Bimodule, RightDecomposition,
    Tensor,
};

pub use grouplike::{
    group_like_search, group_like_verify, normality, GroupLikeSearch, GroupLikeVerdict, ModpEvidence, NormalityReport,
    SearchBudget,
};
pub use kernel::{
    hom_into_injective, is_directed_bocs, kernel_of_counit, projectivising_tests, BimoduleDecomposition,
    CounitKernel, DirectedBocsVerdict, ProjectivisingReport,
};
pub use right::{bocs_compose, bocs_hom, bocs_identity, right_algebra, right_algebra_of_dual, BocsHom, RightAlgebra};

/// A span of `rows x cols` matrices, with coordinates read from a reduced
/// echelon basis of the flattened matrices.
#[derive(Clone, Debug)]
pub struct MatrixSpace {
    rows: usize,
    cols: usize,
    space: Subspace,
}

impl MatrixSpace {
    pub fn new(field: Field, rows: usize, cols: usize, mats: &[Matrix]) -> Self {
        MatrixSpace { rows, cols, space: Subspace::span(field, rows * cols, mats.iter().map(Matrix::vec).collect()) }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_matrix(&self, k: usize) -> Matrix {
        Matrix::from_vec(self.space.field(), self.rows, self.cols, &self.space.basis()[k])
    }

    pub fn combine(&self, c: &[Scalar]) -> Matrix {
        Matrix::from_vec(self.space.field(), self.rows, self.cols, &self.space.combine(c))
    }

    pub fn coords(&self, m: &Matrix) -> Option<Vector> {
        self.space.coords(&m.vec())
    }
}

/// A `B`-coring: a `B`-bimodule `W` with comultiplication into the stored
/// balanced square and a counit into `B`.
#[derive(Clone, Debug)]
pub struct Coring {
    base: Arc<FDAlgebra>,
    bimodule: Bimodule,
    square: Tensor,
    comult: Matrix,
    counit: Matrix,
}

fn mismatch(what: &str) -> Error {
    Error::TheoremViolation(format!("coring axiom fails: {what}"))
}

impl Coring {
    /// Checks bilinearity, coassociativity and both counit laws exactly.
    pub fn new(bimodule: Bimodule, square: Tensor, comult: Matrix, counit: Matrix) -> Result<Self> {
        let base = bimodule.left().clone();
        if !same_algebra(&base, bimodule.right()) {
            return Err(Error::AlgebraMismatch);
        }
        let c = Coring { base, bimodule, square, comult, counit };
        c.verify()?;
        Ok(c)
    }

    /// Builds `W ⊗_B W` and reads `μ(w_k)` from sums of pure tensors
    /// `(c, a, b)` meaning `c · w_a ⊗ w_b`.
    pub fn from_pure_tensors(bimodule: Bimodule, comult: &[Vec<(Scalar, usize, usize)>], counit: Matrix) -> Result<Self> {
        bimodule.validate()?;
        let square = tensor(&bimodule, &bimodule)?;
        let f = bimodule.left().field();
        let n = bimodule.dim();
        if comult.len() != n {
            return Err(Error::InvalidModule(format!("comultiplication given on {} of {n} basis elements", comult.len())));
        }
        let mut cols = Vec::with_capacity(n);
        for terms in comult {
            let mut v = vector::zeros(f, square.dim());
            for (c, a, b) in terms {
                if *a >= n || *b >= n {
                    return Err(Error::InvalidModule(format!("tensor term index ({a}, {b}) out of range")));
                }
                vector::axpy(&mut v, c, &square.elem(&vector::unit(f, n, *a), &vector::unit(f, n, *b)));
            }
            cols.push(v);
        }
        let comult = Matrix::from_columns(f, square.dim(), &cols);
        Coring::new(bimodule, square, comult, counit)
    }

    /// `W = B`, `μ(b) = b ⊗ 1`, `ε = id`.
    pub fn regular(b: &Arc<FDAlgebra>) -> Result<Self> {
        let w = Bimodule::regular(b);
        let square = tensor(&w, &w)?;
        let f = b.field();
        let cols: Vec<Vector> = (0..b.dim()).map(|i| square.elem(&vector::unit(f, b.dim(), i), b.unit())).collect();
        let comult = Matrix::from_columns(f, square.dim(), &cols);
        Coring::new(w, square, comult, Matrix::identity(f, b.dim()))
    }

    pub fn base(&self) -> &Arc<FDAlgebra> {
        &self.base
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    pub fn dim(&self) -> usize {
        self.bimodule.dim()
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn square(&self) -> &Tensor {
        &self.square
    }

    pub fn comult(&self) -> &Matrix {
        &self.comult
    }

    pub fn counit(&self) -> &Matrix {
        &self.counit
    }

    pub fn comultiply(&self, w: &[Scalar]) -> Vector {
        self.comult.mul_vec(w)
    }

    pub fn epsilon(&self, w: &[Scalar]) -> Vector {
        self.counit.mul_vec(w)
    }

    /// `b · w · b'`.
    pub fn act(&self, b: &[Scalar], w: &[Scalar], b2: &[Scalar]) -> Vector {
        self.bimodule.left_act(b).mul_vec(&self.bimodule.right_act(b2).mul_vec(w))
    }

    /// `W ⊗_B W -> W`, `w ⊗ v ↦ ε(w)·v`.
    pub fn counit_left(&self) -> Matrix {
        self.square.bilinear_out(self.dim(), |w, v| self.bimodule.left_act(&self.counit.mul_vec(w)).mul_vec(v))
    }

    /// `W ⊗_B W -> W`, `w ⊗ v ↦ w·ε(v)`.
    pub fn counit_right(&self) -> Matrix {
        self.square.bilinear_out(self.dim(), |w, v| self.bimodule.right_act(&self.counit.mul_vec(v)).mul_vec(w))
    }

    pub fn verify(&self) -> Result<()> {
        let b = &self.base;
        let w = &self.bimodule;
        let n = w.dim();
        let f = self.field();
        if self.counit.shape() != (b.dim(), n) || self.comult.shape() != (self.square.dim(), n) {
            return Err(mismatch("structure maps have the wrong shape"));
        }
        let sq = &self.square.result;
        for i in 0..b.dim() {
            if self.comult.mul(&w.left_actions()[i]) != sq.left_actions()[i].mul(&self.comult)
                || self.comult.mul(&w.right_actions()[i]) != sq.right_actions()[i].mul(&self.comult)
            {
                return Err(mismatch("μ is not B-bilinear"));
            }
            if self.counit.mul(&w.left_actions()[i]) != b.left_basis_mult()[i].mul(&self.counit)
                || self.counit.mul(&w.right_actions()[i]) != b.right_basis_mult()[i].mul(&self.counit)
            {
                return Err(mismatch("ε is not B-bilinear"));
            }
        }
        let id = Matrix::identity(f, n);
        if self.counit_left().mul(&self.comult) != id {
            return Err(mismatch("(ε⊗1)∘μ ≠ 1"));
        }
        if self.counit_right().mul(&self.comult) != id {
            return Err(mismatch("(1⊗ε)∘μ ≠ 1"));
        }
        if n == 0 {
            return Ok(());
        }
        // Coassociativity inside (W⊗W)⊗W.
        let cube_l = tensor(sq, w)?;
        let cube_r = tensor(w, sq)?;
        let assoc = cube_r.bilinear_out(cube_l.dim(), |x, t| {
            let mut out = vector::zeros(f, cube_l.dim());
            for (c, u, v) in self.square.pure_terms(t) {
                vector::axpy(&mut out, &c, &cube_l.elem(&self.square.elem(x, u), v));
            }
            out
        });
        let left = self.square.map(&cube_l, &self.comult, &id).mul(&self.comult);
        let right = assoc.mul(&self.square.map(&cube_r, &id, &self.comult)).mul(&self.comult);
        if left != right {
            return Err(mismatch("μ is not coassociative"));
        }
        Ok(())
    }
}

/// Counit surjectivity with a witness: a preimage of `1`, or a basis of a
/// complement of the image.
#[derive(Clone, Debug, Serialize)]
pub struct CounitSurjectivity {
    pub surjective: bool,
    pub rank: usize,
    #[serde(skip)]
    pub preimage_of_one: Option<Vector>,
    #[serde(skip)]
    pub cokernel: Vec<Vector>,
}

pub fn counit_surjective(c: &Coring) -> Result<CounitSurjectivity> {
    let rank = c.counit.rank();
    let surjective = rank == c.base.dim();
    let preimage_of_one = c.counit.solve(c.base.unit())?;
    let image = Subspace::column_space(&c.counit);
    let f = c.field();
    let cokernel = image.complement_indices().into_iter().map(|i| vector::unit(f, c.base.dim(), i)).collect();
    if surjective != preimage_of_one.is_some() {
        return Err(Error::TheoremViolation("counit image is a left ideal containing 1 iff it is everything".into()));
    }
    Ok(CounitSurjectivity { surjective, rank, preimage_of_one, cokernel })
}

/// `W = Hom_{B^op}(Λ, B)` with its coring structure and the maps its
/// elements stand for.
#[derive(Clone, Debug)]
pub struct DualCoring {
    pub coring: Coring,
    pub embedding: AlgebraEmbedding,
    /// The elements of `W` as `dim B x dim Λ` matrices.
    pub maps: MatrixSpace,
    pub decomposition: RightDecomposition,
}

impl DualCoring {
    pub fn map_of(&self, w: &[Scalar]) -> Matrix {
        self.maps.combine(w)
    }

    pub fn element_of(&self, m: &Matrix) -> Option<Vector> {
        self.maps.coords(m)
    }
}

/// `W` as a bimodule with its counit, without the comultiplication.
pub(crate) struct DualBimodule {
    pub bimodule: Bimodule,
    pub counit: Matrix,
    pub maps: MatrixSpace,
}

pub(crate) fn dual_bimodule(e: &AlgebraEmbedding) -> Result<DualBimodule> {
    let b = e.source();
    let lam = e.target();
    let f = b.field();
    let lam_r = lambda_as_right_module(e);
    let b_r = Bimodule::regular(b).as_right_module();
    let homs = hom_matrices(&lam_r, &b_r)?;
    let maps = MatrixSpace::new(f, b.dim(), lam.dim(), &homs);
    let n = maps.dim();
    let basis: Vec<Matrix> = (0..n).map(|k| maps.basis_matrix(k)).collect();
    let coords = |m: &Matrix| {
        maps.coords(m).ok_or_else(|| Error::TheoremViolation("W is not closed under the bimodule actions".into()))
    };
    let left = (0..b.dim())
        .map(|i| {
            let l = &b.left_basis_mult()[i];
            let cols = basis.iter().map(|fk| coords(&l.mul(fk))).collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(f, n, &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    let right = (0..b.dim())
        .map(|j| {
            let l = lam.left_mult(&e.matrix().column(j));
            let cols = basis.iter().map(|fk| coords(&fk.mul(&l))).collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(f, n, &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    let bimodule = if n == 0 {
        Bimodule::new_unchecked(b.clone(), b.clone(), vec![Matrix::zeros(f, 0, 0); b.dim()], vec![Matrix::zeros(f, 0, 0); b.dim()])
    } else {
        Bimodule::new(b.clone(), b.clone(), left, right)?
    };
    let counit_cols: Vec<Vector> = basis.iter().map(|fk| fk.mul_vec(lam.unit())).collect();
    let counit = Matrix::from_columns(f, b.dim(), &counit_cols);
    Ok(DualBimodule { bimodule, counit, maps })
}

/// The right dual coring, with `μ = ψ⁻¹ ∘ Hom(m, B)`.
pub fn dual_coring(e: &AlgebraEmbedding) -> Result<DualCoring> {
    let decomposition = projective_decomposition_right(e);
    if !decomposition.projective {
        return Err(Error::Precondition("Λ is not projective as a right B-module".into()));
    }
    let b = e.source();
    let lam = e.target();
    let f = b.field();
    let DualBimodule { bimodule, counit, maps } = dual_bimodule(e)?;
    let n = maps.dim();
    let square = tensor(&bimodule, &bimodule)?;
    let ll = tensor(&Bimodule::target_over_source(e), &Bimodule::source_over_target(e))?;
    let pairs = ll.raw_basis();
    // u[p] has columns ι(g_k(λ))·λ' for the pair p = (λ, λ').
    let basis: Vec<Matrix> = (0..n).map(|k| maps.basis_matrix(k)).collect();
    let u: Vec<Matrix> = pairs
        .iter()
        .map(|(l1, l2)| {
            let cols: Vec<Vector> = basis.iter().map(|g| lam.mul(&e.map(&g.mul_vec(l1)), l2)).collect();
            Matrix::from_columns(f, lam.dim(), &cols)
        })
        .collect();
    let rows = b.dim() * pairs.len();
    let psi = square.bilinear_out(rows, |x, y| {
        let fx = maps.combine(x);
        let mut out = Vec::with_capacity(rows);
        for up in &u {
            out.extend(fx.mul_vec(&up.mul_vec(y)));
        }
        out
    });
    if psi.rank() != square.dim() {
        return Err(Error::TheoremViolation("ψ: W⊗W -> Hom(Λ⊗Λ, B) is not injective".into()));
    }
    let products: Vec<Vector> = pairs.iter().map(|(l1, l2)| lam.mul(l1, l2)).collect();
    let target_cols: Vec<Vector> =
        basis.iter().map(|fk| products.iter().flat_map(|p| fk.mul_vec(p)).collect()).collect();
    let target = Matrix::from_columns(f, rows, &target_cols);
    let comult = if n == 0 {
        Matrix::zeros(f, square.dim(), 0)
    } else {
        psi.solve_many(&target)
            .ok_or_else(|| Error::TheoremViolation("f∘m is not in the image of ψ".into()))?
    };
    let coring = Coring::new(bimodule, square, comult, counit)?;
    Ok(DualCoring { coring, embedding: e.clone(), maps, decomposition })
}

/// The four equivalent statements about `ι: B -> Λ`, each computed on its
/// own, with the certificates found.
#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    /// A right `B`-linear `π: Λ -> B` with `π∘ι = 1`.
    pub splits: bool,
    /// `Λ/ι(B)` is a projective right `B`-module.
    pub quotient_projective: bool,
    pub progenerator: bool,
    pub counit_surjective: bool,
    pub decomposition: RightDecomposition,
    #[serde(skip)]
    pub splitting: Option<Matrix>,
}

impl SplittingReport {
    pub fn verdicts(&self) -> [bool; 4] {
        [self.splits, self.quotient_projective, self.progenerator, self.counit_surjective]
    }
}

/// All four verdicts, which must agree.
pub fn splitting_equivalences(e: &AlgebraEmbedding) -> Result<SplittingReport> {
    let decomposition = projective_decomposition_right(e);
    if !decomposition.projective {
        return Err(Error::Precondition("Λ is not projective as a right B-module".into()));
    }
    let b = e.source();
    let lam = e.target();
    let f = b.field();
    let (nb, nl) = (b.dim(), lam.dim());

    // (1) Unknown π as a dim B x dim Λ matrix, column-major.
    let var = |r: usize, c: usize| c * nb + r;
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for j in 0..nb {
        // π ∘ R_Λ(ι b_j) = R_B(b_j) ∘ π.
        let rl = lam.right_mult(&e.matrix().column(j));
        let rb = &b.right_basis_mult()[j];
        for r in 0..nb {
            for c in 0..nl {
                let mut row = vector::zeros(f, nb * nl);
                for k in 0..nl {
                    let v = rl.get(k, c);
                    if !v.is_zero() {
                        let i = var(r, k);
                        row[i] = &row[i] + v;
                    }
                }
                for k in 0..nb {
                    let v = rb.get(r, k);
                    if !v.is_zero() {
                        let i = var(k, c);
                        row[i] = &row[i] - v;
                    }
                }
                if !vector::is_zero(&row) {
                    rows.push(row);
                    rhs.push(f.zero());
                }
            }
        }
    }
    // π ∘ ι = 1.
    for j in 0..nb {
        let col = e.matrix().column(j);
        for r in 0..nb {
            let mut row = vector::zeros(f, nb * nl);
            for (k, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    row[var(r, k)] = v.clone();
                }
            }
            rows.push(row);
            rhs.push(if r == j { f.one() } else { f.zero() });
        }
    }
    let system = Matrix::from_rows(f, nb * nl, rows);
    let splitting = system.solve(&rhs)?.map(|x| Matrix::from_vec(f, nb, nl, &x));

    // (2) Λ/ι(B) as a right B-module.
    let lam_r = lambda_as_right_module(e);
    let image = Subspace::column_space(e.matrix());
    let (quotient, _, _) = lam_r.quotient(&image);
    let quotient_projective = quotient.is_projective();

    // (4) from the counit of the dual bimodule.
    let dual = dual_bimodule(e)?;
    let counit_surjective = dual.counit.rank() == nb;

    let report = SplittingReport {
        splits: splitting.is_some(),
        quotient_projective,
        progenerator: decomposition.progenerator,
        counit_surjective,
        decomposition,
        splitting,
    };
    let v = report.verdicts();
    if v.iter().any(|&x| x != v[0]) {
        return Err(Error::TheoremViolation(format!(
            "splitting, quotient projectivity, progenerator and counit surjectivity disagree: {v:?}"
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
