//! Bimodules and balanced tensor products.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{projective_cover, FDModule, Side};
use crate::algebra::{same_algebra, AlgebraEmbedding, FDAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, Scalar, Subspace, Vector};

/// An `(A, C)`-bimodule. The right action is stored as matrices
/// `σ(c)` with `v·c = σ(c) v`, so `σ(c c') = σ(c') σ(c)`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left: Arc<FDAlgebra>,
    right: Arc<FDAlgebra>,
    dim: usize,
    left_action: Arc<Vec<Matrix>>,
    right_action: Arc<Vec<Matrix>>,
}

impl Bimodule {
    pub fn new(
        left: Arc<FDAlgebra>,
        right: Arc<FDAlgebra>,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Self> {
        let b = Self::new_unchecked(left, right, left_action, right_action);
        b.validate()?;
        Ok(b)
    }

    pub(crate) fn new_unchecked(
        left: Arc<FDAlgebra>,
        right: Arc<FDAlgebra>,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Self {
        let dim = left_action.first().map_or(0, Matrix::rows);
        Bimodule { left, right, dim, left_action: Arc::new(left_action), right_action: Arc::new(right_action) }
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.left.field();
        let id = Matrix::identity(f, self.dim);
        if self.left_act(self.left.unit()) != id || self.right_act(self.right.unit()) != id {
            return Err(Error::InvalidModule("bimodule actions are not unital".into()));
        }
        let a = &self.left;
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if self.left_action[i].mul(&self.left_action[j]) != self.left_act(&a.structure().basis_product(i, j)) {
                    return Err(Error::InvalidModule("left action is not multiplicative".into()));
                }
            }
        }
        let c = &self.right;
        for i in 0..c.dim() {
            for j in 0..c.dim() {
                if self.right_action[j].mul(&self.right_action[i]) != self.right_act(&c.structure().basis_product(i, j)) {
                    return Err(Error::InvalidModule("right action is not multiplicative".into()));
                }
            }
        }
        for l in self.left_action.iter() {
            for r in self.right_action.iter() {
                if l.mul(r) != r.mul(l) {
                    return Err(Error::InvalidModule("left and right actions do not commute".into()));
                }
            }
        }
        Ok(())
    }

    pub fn left(&self) -> &Arc<FDAlgebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FDAlgebra> {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_actions(&self) -> &[Matrix] {
        &self.left_action
    }

    pub fn right_actions(&self) -> &[Matrix] {
        &self.right_action
    }

    pub fn left_act(&self, x: &[Scalar]) -> Matrix {
        combine(self.left.field(), self.dim, &self.left_action, x)
    }

    pub fn right_act(&self, x: &[Scalar]) -> Matrix {
        combine(self.left.field(), self.dim, &self.right_action, x)
    }

    /// A left module as an `(A, k)`-bimodule.
    pub fn from_left(m: &FDModule) -> Bimodule {
        let k = Arc::new(FDAlgebra::ground(m.field()));
        Bimodule::new_unchecked(
            m.algebra().clone(),
            k,
            m.actions().to_vec(),
            vec![Matrix::identity(m.field(), m.dim())],
        )
    }

    /// `A` as an `(A, A)`-bimodule.
    pub fn regular(a: &Arc<FDAlgebra>) -> Bimodule {
        Bimodule::new_unchecked(a.clone(), a.clone(), a.left_basis_mult().to_vec(), a.right_basis_mult().to_vec())
    }

    /// `Λ` as a `(Λ, B)`-bimodule through `ι`.
    pub fn target_over_source(e: &AlgebraEmbedding) -> Bimodule {
        let lam = e.target();
        let right = (0..e.source().dim())
            .map(|j| lam.right_mult(&e.matrix().column(j)))
            .collect();
        Bimodule::new_unchecked(lam.clone(), e.source().clone(), lam.left_basis_mult().to_vec(), right)
    }

    /// `Λ` as a `(B, Λ)`-bimodule through `ι`.
    pub fn source_over_target(e: &AlgebraEmbedding) -> Bimodule {
        let lam = e.target();
        let left = (0..e.source().dim())
            .map(|j| lam.left_mult(&e.matrix().column(j)))
            .collect();
        Bimodule::new_unchecked(e.source().clone(), lam.clone(), left, lam.right_basis_mult().to_vec())
    }

    /// The left module obtained by forgetting the right action.
    pub fn as_left_module(&self) -> FDModule {
        if self.dim == 0 {
            return FDModule::zero(self.left.clone(), Side::Left);
        }
        FDModule::new_unchecked(self.left.clone(), self.left_action.to_vec(), Side::Left)
    }

    /// The right module over `C`, as a left module over `C^op`.
    pub fn as_right_module(&self) -> FDModule {
        let op = Arc::new(self.right.opposite());
        if self.dim == 0 {
            return FDModule::zero(op, Side::Right);
        }
        FDModule::new_unchecked(op, self.right_action.to_vec(), Side::Right)
    }

    /// Sub-bimodule on an invariant subspace.
    pub fn sub(&self, s: &Subspace) -> (Bimodule, Matrix) {
        let incl = s.basis_matrix();
        let coord = s.coord_matrix();
        let restrict = |m: &Matrix| coord.mul(&m.mul(&incl));
        let b = Bimodule::new_unchecked(
            self.left.clone(),
            self.right.clone(),
            self.left_action.iter().map(restrict).collect(),
            self.right_action.iter().map(restrict).collect(),
        );
        (b, incl)
    }

    pub fn quotient(&self, s: &Subspace) -> (Bimodule, Matrix, Matrix) {
        let p = s.quotient_projection();
        let sec = s.quotient_section();
        let induce = |m: &Matrix| p.mul(&m.mul(&sec));
        let b = Bimodule::new_unchecked(
            self.left.clone(),
            self.right.clone(),
            self.left_action.iter().map(induce).collect(),
            self.right_action.iter().map(induce).collect(),
        );
        (b, p, sec)
    }

    pub fn is_sub_bimodule(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| {
            self.left_action.iter().chain(self.right_action.iter()).all(|m| s.contains(&m.mul_vec(v)))
        })
    }

    /// Smallest sub-bimodule containing `vecs`.
    pub fn generated(&self, vecs: &[Vector]) -> Subspace {
        let mut out = Vec::new();
        for v in vecs {
            for r in self.right_action.iter() {
                let w = r.mul_vec(v);
                for l in self.left_action.iter() {
                    out.push(l.mul_vec(&w));
                }
            }
        }
        Subspace::span(self.left.field(), self.dim, out)
    }

    /// `rad(A)·X + X·rad(C)`.
    pub fn radical(&self) -> Subspace {
        let mut vecs = Vec::new();
        for r in self.left.radical().basis() {
            vecs.extend(self.left_act(r).columns());
        }
        for r in self.right.radical().basis() {
            vecs.extend(self.right_act(r).columns());
        }
        Subspace::span(self.left.field(), self.dim, vecs)
    }
}

fn combine(f: crate::linalg::Field, n: usize, mats: &[Matrix], x: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(f, n, n);
    for (c, m) in x.iter().zip(mats) {
        if !c.is_zero() {
            out.add_scaled(c, m);
        }
    }
    out
}

/// `X ⊗_B Y` realised inside `⊕_j X e_j ⊗_k e_j Y` modulo the balancing
/// relations `(x g) ⊗ y - x ⊗ (g y)` for the generators `g` of `B`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub result: Bimodule,
    /// From raw coordinates to the quotient.
    pub projection: Matrix,
    /// Quotient to raw coordinates.
    pub section: Matrix,
    x_proj: Vec<Matrix>,
    y_proj: Vec<Matrix>,
    offsets: Vec<usize>,
    raw_dim: usize,
    raw_pairs: Vec<(Vector, Vector)>,
}

pub fn tensor(x: &Bimodule, y: &Bimodule) -> Result<Tensor> {
    if !same_algebra(&x.right, &y.left) {
        return Err(Error::AlgebraMismatch);
    }
    let b = x.right.clone();
    let f = b.field();
    let mut x_spaces = Vec::new();
    let mut y_spaces = Vec::new();
    let mut x_proj = Vec::new();
    let mut y_proj = Vec::new();
    let mut offsets = Vec::new();
    let mut raw = 0;
    for e in b.idempotents() {
        let px = x.right_act(e);
        let py = y.left_act(e);
        let sx = Subspace::column_space(&px);
        let sy = Subspace::column_space(&py);
        x_proj.push(sx.coord_matrix().mul(&px));
        y_proj.push(sy.coord_matrix().mul(&py));
        offsets.push(raw);
        raw += sx.dim() * sy.dim();
        x_spaces.push(sx);
        y_spaces.push(sy);
    }
    let idx = |j: usize, a: usize, c: usize| offsets[j] + a * y_spaces[j].dim() + c;
    let mut rels = Vec::new();
    for g in b.generators() {
        let (t, s) = (g.target, g.source);
        // x ∈ X e_t: x g ∈ X e_s.  y ∈ e_s Y: g y ∈ e_t Y.
        let xg = x_proj[s].mul(&x.right_act(&g.element)).mul(&x_spaces[t].basis_matrix());
        let gy = y_proj[t].mul(&y.left_act(&g.element)).mul(&y_spaces[s].basis_matrix());
        for a in 0..x_spaces[t].dim() {
            for c in 0..y_spaces[s].dim() {
                let mut v = vector::zeros(f, raw);
                for a2 in 0..x_spaces[s].dim() {
                    let k = xg.get(a2, a);
                    if !k.is_zero() {
                        let i = idx(s, a2, c);
                        v[i] = &v[i] + k;
                    }
                }
                for c2 in 0..y_spaces[t].dim() {
                    let k = gy.get(c2, c);
                    if !k.is_zero() {
                        let i = idx(t, a, c2);
                        v[i] = &v[i] - k;
                    }
                }
                rels.push(v);
            }
        }
    }
    let rel = Subspace::span(f, raw, rels);
    let projection = rel.quotient_projection();
    let section = rel.quotient_section();
    let n = projection.rows();
    // Actions on raw coordinates, block by block, then induced.
    let induce = |blocks: Vec<Matrix>| -> Matrix { projection.mul(&Matrix::block_diagonal(f, &blocks)).mul(&section) };
    let left_action = x
        .left_actions()
        .iter()
        .map(|m| {
            induce(
                (0..offsets.len())
                    .map(|j| {
                        let mj = x_proj[j].mul(m).mul(&x_spaces[j].basis_matrix());
                        mj.kron(&Matrix::identity(f, y_spaces[j].dim()))
                    })
                    .collect(),
            )
        })
        .collect::<Vec<_>>();
    let right_action = y
        .right_actions()
        .iter()
        .map(|m| {
            induce(
                (0..offsets.len())
                    .map(|j| {
                        let mj = y_proj[j].mul(m).mul(&y_spaces[j].basis_matrix());
                        Matrix::identity(f, x_spaces[j].dim()).kron(&mj)
                    })
                    .collect(),
            )
        })
        .collect::<Vec<_>>();
    let left_action = if n == 0 { vec![Matrix::zeros(f, 0, 0); x.left.dim()] } else { left_action };
    let right_action = if n == 0 { vec![Matrix::zeros(f, 0, 0); y.right.dim()] } else { right_action };
    let result = Bimodule::new_unchecked(x.left.clone(), y.right.clone(), left_action, right_action);
    let mut raw_pairs = Vec::with_capacity(raw);
    for j in 0..offsets.len() {
        for a in x_spaces[j].basis() {
            for c in y_spaces[j].basis() {
                raw_pairs.push((a.clone(), c.clone()));
            }
        }
    }
    Ok(Tensor { result, projection, section, x_proj, y_proj, offsets, raw_dim: raw, raw_pairs })
}

impl Tensor {
    pub fn dim(&self) -> usize {
        self.result.dim()
    }

    pub fn raw_dim(&self) -> usize {
        self.raw_dim
    }

    fn raw_elem(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let f = self.result.left().field();
        let mut v = vector::zeros(f, self.raw_dim);
        for j in 0..self.offsets.len() {
            let a = self.x_proj[j].mul_vec(x);
            if vector::is_zero(&a) {
                continue;
            }
            let c = self.y_proj[j].mul_vec(y);
            let k = vector::kron(&a, &c);
            for (i, s) in k.into_iter().enumerate() {
                v[self.offsets[j] + i] = s;
            }
        }
        v
    }

    /// The class of `x ⊗ y`.
    pub fn elem(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.projection.mul_vec(&self.raw_elem(x, y))
    }

    /// Raw basis elements `(x, y)` of every block, in raw order.
    pub fn raw_basis(&self) -> &[(Vector, Vector)] {
        &self.raw_pairs
    }

    /// `t` written as a sum of pure tensors `c · x ⊗ y`.
    pub fn pure_terms(&self, t: &[Scalar]) -> Vec<(Scalar, &Vector, &Vector)> {
        self.section
            .mul_vec(t)
            .into_iter()
            .zip(&self.raw_pairs)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, (x, y))| (c, x, y))
            .collect()
    }

    /// Matrix of `f ⊗ g: self -> other`, for a right-linear `f` and a
    /// left-linear `g` given as matrices on the factors.
    pub fn map(&self, other: &Tensor, f: &Matrix, g: &Matrix) -> Matrix {
        let cols: Vec<Vector> = self
            .raw_basis()
            .iter()
            .map(|(x, y)| other.elem(&f.mul_vec(x), &g.mul_vec(y)))
            .collect();
        let field = self.result.left().field();
        Matrix::from_columns(field, other.dim(), &cols).mul(&self.section)
    }

    /// Matrix of a map `X ⊗_B Y -> Z` given on pure tensors by `h(x, y)`.
    pub fn bilinear_out(&self, rows: usize, h: impl Fn(&Vector, &Vector) -> Vector + Sync) -> Matrix {
        let cols: Vec<Vector> = self.raw_pairs.par_iter().map(|(x, y)| h(x, y)).collect();
        Matrix::from_columns(self.result.left().field(), rows, &cols).mul(&self.section)
    }

    /// Matrix of the same map on raw coordinates, before reduction.
    pub fn bilinear_raw(&self, rows: usize, h: impl Fn(&Vector, &Vector) -> Vector + Sync) -> Matrix {
        let cols: Vec<Vector> = self.raw_pairs.par_iter().map(|(x, y)| h(x, y)).collect();
        Matrix::from_columns(self.result.left().field(), rows, &cols)
    }
}

/// `Λ ⊗_B M` with the map `m ↦ 1 ⊗ m`.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub module: FDModule,
    pub unit_map: Matrix,
    pub tensor: Tensor,
}

pub fn induct(e: &AlgebraEmbedding, m: &FDModule) -> Result<InducedModule> {
    if !same_algebra(m.algebra(), e.source()) {
        return Err(Error::AlgebraMismatch);
    }
    let x = Bimodule::target_over_source(e);
    let y = Bimodule::from_left(m);
    let t = tensor(&x, &y)?;
    let module = FDModule::new_unchecked(e.target().clone(), t.result.left_actions().to_vec(), Side::Left);
    let module = if t.dim() == 0 { FDModule::zero(e.target().clone(), Side::Left) } else { module };
    let f = m.field();
    let cols: Vec<Vector> = (0..m.dim()).map(|i| t.elem(e.target().unit(), &vector::unit(f, m.dim(), i))).collect();
    let unit_map = Matrix::from_columns(f, t.dim(), &cols);
    Ok(InducedModule { module, unit_map, tensor: t })
}

/// Restriction along `ι`. Right modules (over `Λ^op`) restrict to `B^op`.
pub fn restrict(e: &AlgebraEmbedding, m: &FDModule) -> Result<FDModule> {
    let source = match m.side() {
        Side::Left if same_algebra(m.algebra(), e.target()) => e.source().clone(),
        Side::Right if same_algebra(m.algebra(), &e.target().opposite()) => Arc::new(e.source().opposite()),
        _ => return Err(Error::AlgebraMismatch),
    };
    if m.is_zero() {
        return Ok(FDModule::zero(source, m.side()));
    }
    let action = (0..e.source().dim()).map(|j| m.act(&e.matrix().column(j))).collect();
    Ok(FDModule::new_unchecked(source, action, m.side()))
}

/// Decomposition of `Λ` as a right `B`-module.
#[derive(Clone, Debug, Serialize)]
pub struct RightDecomposition {
    /// `(class label of B, multiplicity of e_c B)`, for every class.
    pub multiplicities: Vec<(String, usize)>,
    pub projective: bool,
    pub progenerator: bool,
    pub cover_dim: usize,
    pub module_dim: usize,
}

/// `Λ_B` as a left `B^op`-module, restricted from the right regular module.
pub fn lambda_as_right_module(e: &AlgebraEmbedding) -> FDModule {
    Bimodule::target_over_source(e).as_right_module()
}

pub fn projective_decomposition_right(e: &AlgebraEmbedding) -> RightDecomposition {
    let m = lambda_as_right_module(e);
    let cover = projective_cover(&m);
    let b = e.source();
    let mut counts = vec![0; b.num_classes()];
    for &c in &cover.classes {
        counts[c] += 1;
    }
    let projective = cover.projective.dim() == m.dim();
    RightDecomposition {
        multiplicities: b.class_labels().iter().cloned().zip(counts.iter().copied()).collect(),
        projective,
        progenerator: projective && counts.iter().all(|&c| c > 0),
        cover_dim: cover.projective.dim(),
        module_dim: m.dim(),
    }
}
