//! Finite-dimensional modules given by action matrices, hom-spaces and the
//! basic constructions built on them.
//!
//! Right modules are left modules over the opposite algebra; the `side`
//! tag only records which reading was intended.

mod comparison;
mod oracle;
mod projective;
mod resolution;
mod tensor;

use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

pub use comparison::{eckmann_shapiro_check, ext_comparison, ExtComparison};
pub use oracle::ext1_cocycle_oracle;
pub use projective::{projective_cover, ProjectiveCover, ProjectiveSum};
pub use resolution::{ext_dim, ext_space, global_dimension, minimal_resolution, ExtSpace, GlobalDimension, Resolution};
pub use tensor::{
    induct, lambda_as_right_module, projective_decomposition_right, restrict, tensor, Bimodule, InducedModule,
    RightDecomposition, Tensor,
};

use crate::algebra::{same_algebra, FDAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Scalar, Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A module over `algebra`, acting from the left; `action[i]` is the
/// matrix of the `i`-th basis element.
#[derive(Clone, Debug)]
pub struct FDModule {
    algebra: Arc<FDAlgebra>,
    side: Side,
    dim: usize,
    action: Arc<Vec<Matrix>>,
}

impl FDModule {
    /// Checks shapes, the unit and multiplicativity on every basis pair.
    pub fn new(algebra: Arc<FDAlgebra>, action: Vec<Matrix>, side: Side) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule("one action matrix per basis element is required".into()));
        }
        let dim = action.first().map_or(0, |m| m.rows());
        for m in &action {
            if m.shape() != (dim, dim) || m.field() != algebra.field() {
                return Err(Error::InvalidModule("action matrices must be square of equal size".into()));
            }
        }
        let module = Self::new_unchecked(algebra, action, side);
        module.validate()?;
        Ok(module)
    }

    pub(crate) fn new_unchecked(algebra: Arc<FDAlgebra>, action: Vec<Matrix>, side: Side) -> Self {
        let dim = action.first().map_or(0, |m| m.rows());
        FDModule { algebra, side, dim, action: Arc::new(action) }
    }

    /// A zero-dimensional module, for which the action list is empty matrices.
    pub fn zero(algebra: Arc<FDAlgebra>, side: Side) -> Self {
        let f = algebra.field();
        let action = vec![Matrix::zeros(f, 0, 0); algebra.dim()];
        FDModule { algebra, side, dim: 0, action: Arc::new(action) }
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        if self.act(a.unit()) != Matrix::identity(self.field(), self.dim) {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.act(&a.structure().basis_product(i, j));
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action is not multiplicative on ({}, {})",
                        a.basis_labels()[i],
                        a.basis_labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        &self.algebra
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// `ρ(x)` for an algebra element `x`.
    pub fn act(&self, x: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field(), self.dim, self.dim);
        for (c, m) in x.iter().zip(self.action.iter()) {
            if !c.is_zero() {
                out.add_scaled(c, m);
            }
        }
        out
    }

    pub fn act_vec(&self, x: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = vector::zeros(self.field(), self.dim);
        for (c, m) in x.iter().zip(self.action.iter()) {
            if !c.is_zero() {
                vector::axpy(&mut out, c, &m.mul_vec(v));
            }
        }
        out
    }

    /// `eM` for an idempotent `e`.
    pub fn idempotent_space(&self, e: &[Scalar]) -> Subspace {
        Subspace::column_space(&self.act(e))
    }

    /// `dim e_c M` for the representative idempotent of every simple class.
    pub fn dimension_vector(&self) -> Vec<usize> {
        (0..self.algebra.num_classes())
            .map(|c| {
                let e = &self.algebra.idempotents()[self.algebra.class_representative(c)];
                self.act(e).rank()
            })
            .collect()
    }

    pub fn submodule_generated(&self, vecs: &[Vector]) -> Subspace {
        let mut out = Vec::new();
        for v in vecs {
            for m in self.action.iter() {
                out.push(m.mul_vec(v));
            }
        }
        Subspace::span(self.field(), self.dim, out)
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| self.action.iter().all(|m| s.contains(&m.mul_vec(v))))
    }

    /// The submodule on `s` and its inclusion matrix.
    pub fn submodule(&self, s: &Subspace) -> (FDModule, Matrix) {
        let incl = s.basis_matrix();
        let coord = s.coord_matrix();
        let action = self.action.iter().map(|m| coord.mul(&m.mul(&incl))).collect();
        (FDModule::new_unchecked(self.algebra.clone(), action, self.side), incl)
    }

    /// The quotient by `s` with projection and section matrices.
    pub fn quotient(&self, s: &Subspace) -> (FDModule, Matrix, Matrix) {
        let p = s.quotient_projection();
        let sec = s.quotient_section();
        let action = self.action.iter().map(|m| p.mul(&m.mul(&sec))).collect();
        (FDModule::new_unchecked(self.algebra.clone(), action, self.side), p, sec)
    }

    pub fn direct_sum(&self, o: &FDModule) -> Result<FDModule> {
        self.same_algebra(o)?;
        let action = self.action.iter().zip(o.action.iter()).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(FDModule::new_unchecked(self.algebra.clone(), action, self.side))
    }

    pub fn direct_sum_all(algebra: Arc<FDAlgebra>, side: Side, parts: &[FDModule]) -> FDModule {
        let f = algebra.field();
        let action = (0..algebra.dim())
            .map(|i| Matrix::block_diagonal(f, &parts.iter().map(|p| p.action[i].clone()).collect::<Vec<_>>()))
            .collect();
        FDModule::new_unchecked(algebra, action, side)
    }

    pub(crate) fn same_algebra(&self, o: &FDModule) -> Result<()> {
        if same_algebra(&self.algebra, &o.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// `rad(A) M`.
    pub fn radical(&self) -> Subspace {
        let mut vecs = Vec::new();
        for r in self.algebra.radical().basis() {
            let m = self.act(r);
            vecs.extend(m.columns());
        }
        Subspace::span(self.field(), self.dim, vecs)
    }

    /// `M / rad M` with its projection.
    pub fn top(&self) -> (FDModule, Matrix) {
        let (t, p, _) = self.quotient(&self.radical());
        (t, p)
    }

    /// Vectors annihilated by the radical.
    pub fn socle(&self) -> Subspace {
        let f = self.field();
        let mut stacked = Matrix::zeros(f, 0, self.dim);
        for r in self.algebra.radical().basis() {
            stacked = stacked.vstack(&self.act(r));
        }
        Subspace::span(f, self.dim, stacked.kernel_basis())
    }

    /// `M ⊇ rad M ⊇ rad² M ⊇ … ⊇ 0`.
    pub fn radical_series(&self) -> Vec<Subspace> {
        let mut out = vec![Subspace::full(self.field(), self.dim)];
        loop {
            let last = out.last().unwrap();
            if last.is_zero() {
                return out;
            }
            let mut vecs = Vec::new();
            for r in self.algebra.radical().basis() {
                let m = self.act(r);
                for v in last.basis() {
                    vecs.push(m.mul_vec(v));
                }
            }
            out.push(Subspace::span(self.field(), self.dim, vecs));
        }
    }

    /// Vector-space dual, a module over the opposite algebra.
    pub fn dual(&self) -> FDModule {
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        let action = self.action.iter().map(Matrix::transpose).collect();
        FDModule::new_unchecked(Arc::new(self.algebra.opposite()), action, side)
    }

    /// The same module read over an algebra equal in content; used after
    /// round trips through the opposite algebra.
    pub fn over(&self, algebra: Arc<FDAlgebra>) -> Result<FDModule> {
        if !same_algebra(&self.algebra, &algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(FDModule { algebra, side: self.side, dim: self.dim, action: self.action.clone() })
    }

    /// The left regular module.
    pub fn regular(algebra: Arc<FDAlgebra>) -> FDModule {
        let action = algebra.left_basis_mult().to_vec();
        FDModule::new_unchecked(algebra, action, Side::Left)
    }

    /// `Ae` for an idempotent `e`, with the basis of the corner.
    pub fn left_ideal(algebra: Arc<FDAlgebra>, e: &[Scalar]) -> (FDModule, Subspace) {
        let space = algebra.structure().corner(algebra.unit(), e);
        let regular = FDModule::regular(algebra);
        let (m, _) = regular.submodule(&space);
        (m, space)
    }
}

/// A module homomorphism, as a `target.dim x source.dim` matrix.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    pub source: FDModule,
    pub target: FDModule,
    pub matrix: Matrix,
}

impl ModuleHom {
    pub fn new(source: FDModule, target: FDModule, matrix: Matrix) -> Result<Self> {
        source.same_algebra(&target)?;
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::InvalidModule("homomorphism matrix has the wrong shape".into()));
        }
        let h = ModuleHom { source, target, matrix };
        if !h.is_intertwiner() {
            return Err(Error::InvalidModule("matrix does not intertwine the actions".into()));
        }
        Ok(h)
    }

    pub fn is_intertwiner(&self) -> bool {
        self.source
            .actions()
            .iter()
            .zip(self.target.actions())
            .all(|(a, b)| self.matrix.mul(a) == b.mul(&self.matrix))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.matrix.is_invertible()
    }
}

/// Bases of `e_j M` for every idempotent of the algebra, and the maps
/// reading `e_j`-components in those bases.
struct Blocks {
    spaces: Vec<Subspace>,
    proj: Vec<Matrix>,
}

impl Blocks {
    fn new(m: &FDModule) -> Self {
        let mut spaces = Vec::new();
        let mut proj = Vec::new();
        for e in m.algebra.idempotents() {
            let pe = m.act(e);
            let s = Subspace::column_space(&pe);
            proj.push(s.coord_matrix().mul(&pe));
            spaces.push(s);
        }
        Blocks { spaces, proj }
    }
}

/// Basis of `Hom_A(M, N)`.
///
/// Homomorphisms respect the idempotent decomposition, so the unknowns are
/// blocks `Y_j: e_j M -> e_j N`; each generator `g = e_t g e_s` imposes
/// `Y_t G_M = G_N Y_s`.
pub fn hom_space(m: &FDModule, n: &FDModule) -> Result<Vec<ModuleHom>> {
    Ok(hom_matrices(m, n)?
        .into_iter()
        .map(|matrix| ModuleHom { source: m.clone(), target: n.clone(), matrix })
        .collect())
}

pub fn hom_dim(m: &FDModule, n: &FDModule) -> Result<usize> {
    Ok(hom_matrices(m, n)?.len())
}

pub fn hom_matrices(m: &FDModule, n: &FDModule) -> Result<Vec<Matrix>> {
    m.same_algebra(n)?;
    let f = m.field();
    let a = m.algebra();
    let bm = Blocks::new(m);
    let bn = Blocks::new(n);
    let k = a.idempotents().len();
    let mut offset = Vec::with_capacity(k + 1);
    let mut total = 0;
    for j in 0..k {
        offset.push(total);
        total += bm.spaces[j].dim() * bn.spaces[j].dim();
    }
    if total == 0 {
        return Ok(Vec::new());
    }
    // Unknown (r, c) of Y_j at offset_j + r * cols_j + c.
    let var = |j: usize, r: usize, c: usize| offset[j] + r * bm.spaces[j].dim() + c;
    let mut rows: Vec<Vector> = Vec::new();
    for g in a.generators() {
        let (t, s) = (g.target, g.source);
        let gm = bm.proj[t].mul(&m.act(&g.element)).mul(&bm.spaces[s].basis_matrix());
        let gn = bn.proj[t].mul(&n.act(&g.element)).mul(&bn.spaces[s].basis_matrix());
        // (Y_t G_M - G_N Y_s)[p, q] = 0
        for p in 0..bn.spaces[t].dim() {
            for q in 0..bm.spaces[s].dim() {
                let mut row = vector::zeros(f, total);
                for c in 0..bm.spaces[t].dim() {
                    let v = gm.get(c, q);
                    if !v.is_zero() {
                        let i = var(t, p, c);
                        row[i] = &row[i] + v;
                    }
                }
                for c in 0..bn.spaces[s].dim() {
                    let v = gn.get(p, c);
                    if !v.is_zero() {
                        let i = var(s, c, q);
                        row[i] = &row[i] - v;
                    }
                }
                if !vector::is_zero(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_rows(f, total, rows);
    let mut out = Vec::new();
    for sol in system.kernel_basis() {
        let mut h = Matrix::zeros(f, n.dim(), m.dim());
        for j in 0..k {
            let (rj, cj) = (bn.spaces[j].dim(), bm.spaces[j].dim());
            if rj == 0 || cj == 0 {
                continue;
            }
            let mut y = Matrix::zeros(f, rj, cj);
            for r in 0..rj {
                for c in 0..cj {
                    y.set(r, c, sol[var(j, r, c)].clone());
                }
            }
            h = h.add(&bn.spaces[j].basis_matrix().mul(&y).mul(&bm.proj[j]));
        }
        out.push(h);
    }
    Ok(out)
}

/// An explicit isomorphism `M -> N`, if one is found among the hom-space
/// basis and a fixed sequence of combinations of it.
pub fn find_isomorphism(m: &FDModule, n: &FDModule) -> Result<Option<ModuleHom>> {
    m.same_algebra(n)?;
    if m.dim() != n.dim() || m.dimension_vector() != n.dimension_vector() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(ModuleHom { source: m.clone(), target: n.clone(), matrix: Matrix::zeros(m.field(), 0, 0) }));
    }
    let basis = hom_matrices(m, n)?;
    Ok(first_invertible(m.field(), &basis).map(|matrix| ModuleHom { source: m.clone(), target: n.clone(), matrix }))
}

/// First invertible matrix among `basis` and the combinations
/// `Σ_j c^j B_j` for `c = 1, 2, …`; over an infinite field a generic
/// combination is invertible as soon as any element of the span is.
pub(crate) fn first_invertible(f: Field, basis: &[Matrix]) -> Option<Matrix> {
    if let Some(b) = basis.iter().find(|b| b.is_invertible()) {
        return Some(b.clone());
    }
    let values: Vec<Scalar> = match f.elements() {
        Some(all) => all.into_iter().skip(1).take(40).collect(),
        None => (1..=40).map(|c| f.from_int(c)).collect(),
    };
    for c in &values {
        let mut acc = basis.first()?.clone();
        let mut pow = f.one();
        for b in &basis[1..] {
            pow = &pow * c;
            acc.add_scaled(&pow, b);
        }
        if acc.is_invertible() {
            return Some(acc);
        }
    }
    // Pairs of basis elements, for small prime fields where powers repeat.
    for (i, j) in (0..basis.len()).tuple_combinations() {
        for c in &values {
            let mut acc = basis[i].clone();
            acc.add_scaled(c, &basis[j]);
            if acc.is_invertible() {
                return Some(acc);
            }
        }
    }
    None
}

/// One simple module per class, as the top of the projective cover of the
/// class representative.
pub fn simples(a: &Arc<FDAlgebra>) -> Vec<FDModule> {
    (0..a.num_classes()).map(|c| simple(a, c)).collect()
}

pub fn simple(a: &Arc<FDAlgebra>, class: usize) -> FDModule {
    let (p, _) = projective(a, class);
    p.top().0
}

/// `P(c) = A e` for the class representative `e`, with its basis inside `A`.
pub fn projective(a: &Arc<FDAlgebra>, class: usize) -> (FDModule, Subspace) {
    let e = &a.idempotents()[a.class_representative(class)];
    FDModule::left_ideal(a.clone(), e)
}

pub fn projectives(a: &Arc<FDAlgebra>) -> Vec<FDModule> {
    (0..a.num_classes()).map(|c| projective(a, c).0).collect()
}

/// `I(c) = D(e A)`, built as the dual of a projective over the opposite
/// algebra and read back over `a`.
pub fn injective(a: &Arc<FDAlgebra>, class: usize) -> FDModule {
    let op = Arc::new(a.opposite());
    let (p, _) = projective(&op, class);
    p.dual().over(a.clone()).expect("double opposite is the algebra")
}

pub fn injectives(a: &Arc<FDAlgebra>) -> Vec<FDModule> {
    (0..a.num_classes()).map(|c| injective(a, c)).collect()
}

/// Composition multiplicities `[M : L(c)]`, counted along the radical
/// series with the top of each layer split by idempotents.
pub fn composition_multiplicities(m: &FDModule) -> Vec<usize> {
    let a = m.algebra();
    let simples = simples(a);
    let mut mult = vec![0; a.num_classes()];
    for c in 0..a.num_classes() {
        let e = &a.idempotents()[a.class_representative(c)];
        let per = simples[c].act(e).rank();
        mult[c] = m.act(e).rank() / per.max(1);
    }
    mult
}

#[cfg(test)]
mod tests;
