//! The right algebra of a coring and the hom-spaces of a bocs.
//!
//! `R` consists of the left `B`-linear maps `s: W -> B`, multiplied by
//! `s ⋆ t = t ∘ (1 ⊗ s) ∘ μ`. With this order `ev(λ)(f) = f(λ)` is an
//! algebra map `Λ -> R` for a dual coring, and `b ↦ (w ↦ ε(w·b))` is an
//! algebra map `B -> R` for every coring.

use std::sync::Arc;

use super::{Coring, DualCoring, MatrixSpace};
use crate::algebra::{AlgebraData, AlgebraEmbedding, FDAlgebra, Generator, SPLIT_BUDGET};
use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Subspace, Vector};
use crate::modules::{hom_matrices, tensor, Bimodule, FDModule, Tensor};

#[derive(Clone, Debug)]
pub struct RightAlgebra {
    pub algebra: Arc<FDAlgebra>,
    /// Elements of `R` as `dim B x dim W` matrices.
    pub maps: MatrixSpace,
    /// `B -> R`, `b ↦ (w ↦ ε(w·b))`.
    pub unit_embedding: AlgebraEmbedding,
    /// `Λ -> R` when built from a dual coring; certified an isomorphism.
    pub ev: Option<AlgebraEmbedding>,
}

fn not_closed() -> Error {
    Error::TheoremViolation("left B-linear maps W -> B are not closed under the right-algebra product".into())
}

/// `w ⊗ v ↦ w·s(v)` as a map `W ⊗_B W -> W`.
fn one_tensor(c: &Coring, s: &Matrix) -> Matrix {
    let w = c.bimodule();
    c.square().bilinear_out(c.dim(), |x, y| w.right_act(&s.mul_vec(y)).mul_vec(x))
}

struct Product {
    maps: MatrixSpace,
    basis: Vec<Matrix>,
    left_mult: Vec<Matrix>,
    unit: Vector,
}

fn product_table(c: &Coring) -> Result<Product> {
    let b = c.base();
    let f = c.field();
    let homs = if c.dim() == 0 {
        Vec::new()
    } else {
        hom_matrices(&c.bimodule().as_left_module(), &FDModule::regular(b.clone()))?
    };
    let maps = MatrixSpace::new(f, b.dim(), c.dim(), &homs);
    let n = maps.dim();
    let basis: Vec<Matrix> = (0..n).map(|k| maps.basis_matrix(k)).collect();
    let left_mult = basis
        .iter()
        .map(|s| {
            let tail = one_tensor(c, s).mul(c.comult());
            let cols = basis.iter().map(|t| maps.coords(&t.mul(&tail)).ok_or_else(not_closed)).collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(f, n, &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = maps.coords(c.counit()).ok_or_else(|| Error::TheoremViolation("ε is not left B-linear".into()))?;
    Ok(Product { maps, basis, left_mult, unit })
}

/// `b ↦ (w ↦ ε(w·b))` in the coordinates of `R`.
fn unit_matrix(c: &Coring, maps: &MatrixSpace) -> Result<Matrix> {
    let b = c.base();
    let f = c.field();
    let cols = (0..b.dim())
        .map(|j| {
            let r = c.counit().mul(&c.bimodule().right_actions()[j]);
            maps.coords(&r).ok_or_else(|| Error::TheoremViolation("w ↦ ε(w·b) is not left B-linear".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(f, maps.dim(), &cols))
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("s{k}")).collect()
}

/// The right algebra of a standalone coring; its idempotents refine the
/// images of those of `B`.
pub fn right_algebra(c: &Coring) -> Result<RightAlgebra> {
    let f = c.field();
    if f != Field::Rational {
        return Err(Error::Unsupported("right algebras of standalone corings need the rational radical".into()));
    }
    let b = c.base();
    let Product { maps, left_mult, unit, .. } = product_table(c)?;
    let n = maps.dim();
    let st = crate::algebra::Structure::new(f, left_mult.clone());
    let radical = st.trace_radical()?;
    let um = unit_matrix(c, &maps)?;
    let mut idempotents = Vec::new();
    let mut idempotent_labels = Vec::new();
    for (e, l) in b.idempotents().iter().zip(b.idempotent_labels()) {
        let img = um.mul_vec(e);
        if vector::is_zero(&img) {
            continue;
        }
        let parts = st.decompose_idempotent(&img, &radical, SPLIT_BUDGET);
        let many = parts.len() > 1;
        for (k, p) in parts.into_iter().enumerate() {
            idempotents.push(p);
            idempotent_labels.push(if many { format!("{l}.{}", k + 1) } else { l.clone() });
        }
    }
    let names = b.names().iter().map(|(s, x)| (s.clone(), um.mul_vec(x))).collect();
    let algebra = Arc::new(FDAlgebra::from_data(AlgebraData {
        field: f,
        basis_labels: labels(n),
        left_mult,
        unit,
        idempotents,
        idempotent_labels,
        radical: Some(radical),
        generators: None,
        quiver: None,
        names,
    })?);
    let unit_embedding = AlgebraEmbedding::new(b.clone(), algebra.clone(), um)?;
    Ok(RightAlgebra { algebra, maps, unit_embedding, ev: None })
}

/// The right algebra of a dual coring, with `ev: Λ -> R` certified as an
/// algebra isomorphism. Idempotents, radical and generators of `R` are
/// transported from `Λ` along `ev`.
pub fn right_algebra_of_dual(d: &DualCoring) -> Result<RightAlgebra> {
    let c = &d.coring;
    let f = c.field();
    let lam = d.embedding.target();
    let Product { maps, basis, left_mult, unit } = product_table(c)?;
    let n = maps.dim();
    let w_basis: Vec<Matrix> = (0..c.dim()).map(|k| d.maps.basis_matrix(k)).collect();
    // ev(λ) as a map W -> B: column k is g_k(λ).
    let ev_cols = (0..lam.dim())
        .map(|i| {
            let l = lam.basis_element(i);
            let cols: Vec<Vector> = w_basis.iter().map(|g| g.mul_vec(&l)).collect();
            let m = Matrix::from_columns(f, c.base().dim(), &cols);
            maps.coords(&m).ok_or_else(|| Error::TheoremViolation("ev(λ) is not left B-linear".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let ev = Matrix::from_columns(f, n, &ev_cols);
    if !ev.is_invertible() {
        return Err(Error::TheoremViolation(format!(
            "ev: Λ -> R is not bijective (dim Λ = {}, dim R = {n}, rank {})",
            lam.dim(),
            ev.rank()
        )));
    }
    debug_assert_eq!(basis.len(), n);
    let radical = Subspace::span(f, n, lam.radical().basis().iter().map(|r| ev.mul_vec(r)).collect());
    let generators = lam
        .generators()
        .iter()
        .map(|g| Generator { element: ev.mul_vec(&g.element), target: g.target, source: g.source })
        .collect();
    let algebra = Arc::new(FDAlgebra::from_data(AlgebraData {
        field: f,
        basis_labels: labels(n),
        left_mult,
        unit,
        idempotents: lam.idempotents().iter().map(|e| ev.mul_vec(e)).collect(),
        idempotent_labels: lam.idempotent_labels().to_vec(),
        radical: Some(radical),
        generators: Some(generators),
        quiver: None,
        names: lam.names().iter().map(|(s, x)| (s.clone(), ev.mul_vec(x))).collect(),
    })?);
    let ev = AlgebraEmbedding::new(lam.clone(), algebra.clone(), ev)
        .map_err(|e| Error::TheoremViolation(format!("ev: Λ -> R is not an algebra map: {e}")))?;
    let um = unit_matrix(c, &maps)?;
    let unit_embedding = AlgebraEmbedding::new(c.base().clone(), algebra.clone(), um)
        .map_err(|e| Error::TheoremViolation(format!("B -> R is not an algebra map: {e}")))?;
    Ok(RightAlgebra { algebra, maps, unit_embedding, ev: Some(ev) })
}

/// `Hom_B(W ⊗_B M, N)`; morphisms are matrices on the stored tensor basis.
#[derive(Clone, Debug)]
pub struct BocsHom {
    pub tensor: Tensor,
    pub basis: Vec<Matrix>,
}

impl BocsHom {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn w_tensor(c: &Coring, m: &FDModule) -> Result<Tensor> {
    if !crate::algebra::same_algebra(m.algebra(), c.base()) {
        return Err(Error::AlgebraMismatch);
    }
    tensor(c.bimodule(), &Bimodule::from_left(m))
}

pub fn bocs_hom(c: &Coring, m: &FDModule, n: &FDModule) -> Result<BocsHom> {
    let t = w_tensor(c, m)?;
    let basis = if t.dim() == 0 || n.dim() == 0 { Vec::new() } else { hom_matrices(&t.result.as_left_module(), n)? };
    Ok(BocsHom { tensor: t, basis })
}

/// The identity of `M` as a bocs morphism, `w ⊗ m ↦ ε(w)·m`.
pub fn bocs_identity(c: &Coring, m: &FDModule) -> Result<Matrix> {
    let t = w_tensor(c, m)?;
    Ok(t.bilinear_out(m.dim(), |w, x| m.act_vec(&c.epsilon(w), x)))
}

/// `g ∘ f = g ∘ (1 ⊗ f) ∘ (μ ⊗ 1)` for `f: L -> M`, `g: M -> N`.
pub fn bocs_compose(c: &Coring, l: &FDModule, m: &FDModule, f: &Matrix, g: &Matrix) -> Result<Matrix> {
    let tl = w_tensor(c, l)?;
    let tm = w_tensor(c, m)?;
    let lb = Bimodule::from_left(l);
    let cube = tensor(&c.square().result, &lb)?;
    let id_l = Matrix::identity(c.field(), l.dim());
    let mu1 = tl.map(&cube, c.comult(), &id_l);
    let field = c.field();
    let one_f = cube.bilinear_out(tm.dim(), |t, x| {
        let mut out = vector::zeros(field, tm.dim());
        for (s, w, v) in c.square().pure_terms(t) {
            vector::axpy(&mut out, &s, &tm.elem(w, &f.mul_vec(&tl.elem(v, x))));
        }
        out
    });
    Ok(g.mul(&one_f).mul(&mu1))
}
