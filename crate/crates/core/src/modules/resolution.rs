use std::sync::Arc;

use serde::Serialize;

use super::projective::{projective_cover, ProjectiveSum};
use super::FDModule;
use crate::algebra::FDAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};

/// `… -> P_1 -> P_0 -> M -> 0`, minimal, computed up to a requested length.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: FDModule,
    pub terms: Vec<ProjectiveSum>,
    /// Images in `M` of the generators of `P_0`.
    pub augmentation: Vec<Vector>,
    /// `differentials[i]` describes `P_{i+1} -> P_i`: entry `[s][t]` is the
    /// `t`-component of the image of the `s`-th generator, an element of
    /// `u_s A u_t`.
    pub differentials: Vec<Vec<Vec<Vector>>>,
    /// Whether the last computed syzygy was zero, so the resolution is
    /// complete and `P_i = 0` beyond the stored terms.
    pub complete: bool,
}

impl Resolution {
    /// `P_i`, empty beyond the stored range of a complete resolution.
    pub fn term(&self, i: usize) -> Option<&ProjectiveSum> {
        self.terms.get(i)
    }

    pub fn rank(&self, i: usize) -> usize {
        self.terms.get(i).map_or(0, |p| p.rank())
    }

    /// Matrix of `d_{i+1}: P_{i+1} -> P_i`.
    pub fn differential_matrix(&self, i: usize) -> Matrix {
        let src = &self.terms[i + 1];
        let tgt = &self.terms[i];
        let images: Vec<Vector> = self.differentials[i].iter().map(|parts| tgt.to_vector(parts)).collect();
        src.map_to(tgt.module(), &images)
    }

    pub fn augmentation_matrix(&self) -> Matrix {
        self.terms[0].map_to(&self.module, &self.augmentation)
    }

    /// Projective dimension when complete.
    pub fn length(&self) -> Option<usize> {
        self.complete.then(|| self.terms.len().saturating_sub(1))
    }

    /// Checks exactness and minimality of every stored degree.
    pub fn verify(&self) -> Result<()> {
        if self.terms.is_empty() {
            return if self.module.is_zero() { Ok(()) } else { Err(Error::TheoremViolation("empty resolution of a nonzero module".into())) };
        }
        let aug = self.augmentation_matrix();
        if aug.rank() != self.module.dim() {
            return Err(Error::TheoremViolation("augmentation is not surjective".into()));
        }
        let mut prev_kernel = aug.kernel_basis().len();
        for i in 0..self.differentials.len() {
            let d = self.differential_matrix(i);
            let composite = if i == 0 { aug.mul(&d) } else { self.differential_matrix(i - 1).mul(&d) };
            if !composite.is_zero() {
                return Err(Error::TheoremViolation(format!("d∘d ≠ 0 at degree {i}")));
            }
            if d.rank() != prev_kernel {
                return Err(Error::TheoremViolation(format!("resolution not exact at degree {i}")));
            }
            let rad = self.terms[i].module().radical();
            if !d.columns().iter().all(|c| rad.contains(c)) {
                return Err(Error::TheoremViolation(format!("differential {} is not radical", i + 1)));
            }
            prev_kernel = d.kernel_basis().len();
        }
        if self.complete && prev_kernel != 0 {
            return Err(Error::TheoremViolation("resolution marked complete with a nonzero syzygy".into()));
        }
        Ok(())
    }
}

/// Iterated projective covers of syzygies, up to `P_len`.
pub fn minimal_resolution(m: &FDModule, len: usize) -> Resolution {
    if m.is_zero() {
        return Resolution { module: m.clone(), terms: Vec::new(), augmentation: Vec::new(), differentials: Vec::new(), complete: true };
    }
    let cover = projective_cover(m);
    let mut kernel = Subspace::span(m.field(), cover.projective.dim(), cover.map.kernel_basis());
    let mut terms = vec![cover.projective];
    let augmentation = cover.images;
    let mut differentials = Vec::new();
    let mut complete = kernel.is_zero();
    while !complete && terms.len() <= len {
        let last = terms.last().unwrap();
        let (k, incl) = last.module().submodule(&kernel);
        let c = projective_cover(&k);
        let parts: Vec<Vec<Vector>> = c.images.iter().map(|img| last.to_parts(&incl.mul_vec(img))).collect();
        let p = c.projective;
        let images: Vec<Vector> = parts.iter().map(|x| last.to_vector(x)).collect();
        let d = p.map_to(last.module(), &images);
        kernel = Subspace::span(m.field(), p.dim(), d.kernel_basis());
        complete = kernel.is_zero();
        differentials.push(parts);
        terms.push(p);
    }
    Resolution { module: m.clone(), terms, augmentation, differentials, complete }
}

/// Cohomology of `Hom(P_•, N)` in one degree, with chosen cocycle
/// representatives.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub degree: usize,
    pub dim: usize,
    /// Cochains are tuples `(n_t)` with `n_t ∈ u_t N`, in coordinates of
    /// the bases of `u_t N`.
    pub cochain_dim: usize,
    pub representatives: Vec<Vector>,
    pub coboundaries: Subspace,
    pub cocycles: Subspace,
    bases: Vec<Subspace>,
    offsets: Vec<usize>,
}

impl ExtSpace {
    /// Coordinates of the class of a cocycle.
    pub fn class_of(&self, z: &[crate::linalg::Scalar]) -> Result<Vector> {
        if !self.cocycles.contains(z) {
            return Err(Error::TheoremViolation("cochain is not a cocycle".into()));
        }
        let f = self.coboundaries.field();
        let mut cols = self.representatives.clone();
        cols.extend(self.coboundaries.basis().iter().cloned());
        let m = Matrix::from_columns(f, self.cochain_dim, &cols);
        let x = m.solve(z)?.ok_or_else(|| Error::TheoremViolation("cocycle outside representatives".into()))?;
        Ok(x[..self.dim].to_vec())
    }

    /// Images `n_t ∈ N` of the generators for a cochain.
    pub fn cochain_images(&self, c: &[crate::linalg::Scalar]) -> Vec<Vector> {
        self.bases
            .iter()
            .zip(&self.offsets)
            .map(|(b, &o)| b.combine(&c[o..o + b.dim()]))
            .collect()
    }

    /// Cochain coordinates of generator images.
    pub fn cochain_from_images(&self, imgs: &[Vector]) -> Vector {
        let mut out = Vec::with_capacity(self.cochain_dim);
        for (b, img) in self.bases.iter().zip(imgs) {
            out.extend(b.coords_unchecked(img));
        }
        out
    }
}

fn cochain_bases(res: &Resolution, i: usize, n: &FDModule) -> Vec<Subspace> {
    match res.terms.get(i) {
        Some(p) => (0..p.rank()).map(|t| p.generator_space(t, n)).collect(),
        None => Vec::new(),
    }
}

/// `δ^i: C^i -> C^{i+1}`, `(δ n)_s = Σ_t ρ_N(x_st) n_t`.
fn coboundary(res: &Resolution, i: usize, n: &FDModule) -> Matrix {
    let src = cochain_bases(res, i, n);
    let tgt = cochain_bases(res, i + 1, n);
    let rows: usize = tgt.iter().map(Subspace::dim).sum();
    let cols: usize = src.iter().map(Subspace::dim).sum();
    let mut m = Matrix::zeros(n.field(), rows, cols);
    if rows == 0 || cols == 0 {
        return m;
    }
    let mut r0 = 0;
    for (s, ts) in tgt.iter().enumerate() {
        let mut c0 = 0;
        for (t, bt) in src.iter().enumerate() {
            let x = &res.differentials[i][s][t];
            let block = ts.coord_matrix().mul(&n.act(x)).mul(&bt.basis_matrix());
            m.set_block(r0, c0, &block);
            c0 += bt.dim();
        }
        r0 += ts.dim();
    }
    m
}

/// `Ext^i(M, N)` from a resolution of `M` that reaches `P_{i+1}` (or is
/// complete).
pub fn ext_space(res: &Resolution, n: &FDModule, i: usize) -> Result<ExtSpace> {
    res.module.same_algebra(n)?;
    if !res.complete && res.terms.len() < i + 2 {
        return Err(Error::Precondition(format!("resolution too short for degree {i}")));
    }
    let f = n.field();
    let bases = cochain_bases(res, i, n);
    let mut offsets = Vec::new();
    let mut dim = 0;
    for b in &bases {
        offsets.push(dim);
        dim += b.dim();
    }
    let d_i = coboundary(res, i, n);
    let cocycles = if d_i.rows() == 0 {
        Subspace::full(f, dim)
    } else {
        Subspace::span(f, dim, d_i.kernel_basis())
    };
    let coboundaries = if i == 0 || dim == 0 {
        Subspace::zero(f, dim)
    } else {
        Subspace::column_space(&coboundary(res, i - 1, n))
    };
    let mut reps = Vec::new();
    let mut acc = coboundaries.clone();
    for z in cocycles.basis() {
        if !acc.contains(z) {
            acc = acc.sum(&Subspace::span(f, dim, vec![z.clone()]));
            reps.push(z.clone());
        }
    }
    let ext_dim = cocycles.dim() - coboundaries.dim();
    if reps.len() != ext_dim || d_i.rank() + cocycles.dim() != dim {
        return Err(Error::TheoremViolation(format!("inconsistent Ext dimension in degree {i}")));
    }
    Ok(ExtSpace { degree: i, dim: ext_dim, cochain_dim: dim, representatives: reps, coboundaries, cocycles, bases, offsets })
}

pub fn ext_dim(m: &FDModule, n: &FDModule, i: usize) -> Result<usize> {
    let res = minimal_resolution(m, i + 1);
    Ok(ext_space(&res, n, i)?.dim)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GlobalDimension {
    Finite(usize),
    /// Some simple module still has a nonzero syzygy after this many steps.
    Exceeds(usize),
}

impl GlobalDimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            GlobalDimension::Finite(n) => Some(n),
            GlobalDimension::Exceeds(_) => None,
        }
    }
}

/// Maximum projective dimension of the simples, computed up to `cap`.
pub fn global_dimension(a: &Arc<FDAlgebra>, cap: usize) -> GlobalDimension {
    let mut best = 0;
    for l in super::simples(a) {
        let res = minimal_resolution(&l, cap);
        match res.length() {
            Some(n) => best = best.max(n),
            None => return GlobalDimension::Exceeds(cap),
        }
    }
    GlobalDimension::Finite(best)
}
