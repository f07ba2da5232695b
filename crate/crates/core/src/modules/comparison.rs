//! The map `Ext^i_B(M, N) -> Ext^i_Λ(Λ⊗M, Λ⊗N)` induced by induction.

use serde::Serialize;

use super::projective::ProjectiveSum;
use super::resolution::{ext_space, minimal_resolution};
use super::tensor::{induct, projective_decomposition_right, restrict};
use super::FDModule;
use crate::algebra::AlgebraEmbedding;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

#[derive(Clone, Debug, Serialize)]
pub struct ExtComparison {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub epi: bool,
    pub mono: bool,
    pub iso: bool,
    #[serde(skip)]
    pub matrix: Matrix,
}

/// Lifts of generators through a surjection onto the image: for each
/// generator `v_s` of `q`, an element `y ∈ v_s P` with `d(y) = target_s`.
fn lift_generators(q: &ProjectiveSum, p: &ProjectiveSum, d: &Matrix, targets: &[Vector]) -> Result<Vec<Vector>> {
    let mut out = Vec::with_capacity(q.rank());
    for (s, target) in targets.iter().enumerate() {
        let v = p.module().idempotent_space(&q.idempotents()[s]).basis_matrix();
        let dv = d.mul(&v);
        let c = dv
            .solve(target)?
            .ok_or_else(|| Error::TheoremViolation("comparison chain map cannot be lifted".into()))?;
        out.push(v.mul_vec(&c));
    }
    Ok(out)
}

/// Builds the induced map in degree `i`. Requires `Λ_B` projective so that
/// the induced resolution is a projective resolution of `Λ ⊗_B M`.
pub fn ext_comparison(e: &AlgebraEmbedding, m: &FDModule, n: &FDModule, i: usize) -> Result<ExtComparison> {
    if !projective_decomposition_right(e).projective {
        return Err(Error::Precondition("Λ is not projective as a right B-module".into()));
    }
    let lam = e.target().clone();
    let res_b = minimal_resolution(m, i + 1);
    let ext_b = ext_space(&res_b, n, i)?;
    let lm = induct(e, m)?;
    let ln = induct(e, n)?;
    let res_l = minimal_resolution(&lm.module, i + 1);
    let ext_l = ext_space(&res_l, &ln.module, i)?;

    let f = lam.field();
    let mut psi_images: Vec<Vec<Vector>> = Vec::new();
    let mut induced: Vec<ProjectiveSum> = Vec::new();
    for j in 0..=i {
        let Some(pj) = res_b.terms.get(j) else { break };
        let ip = ProjectiveSum::new(lam.clone(), pj.idempotents().iter().map(|u| e.map(u)).collect());
        let Some(qj) = res_l.terms.get(j) else {
            induced.push(ip);
            break;
        };
        let (d, targets): (Matrix, Vec<Vector>) = if j == 0 {
            let aug: Vec<Vector> = res_b.augmentation.iter().map(|mt| lm.unit_map.mul_vec(mt)).collect();
            (ip.map_to(&lm.module, &aug), res_l.augmentation.clone())
        } else {
            let prev = &induced[j - 1];
            let imgs: Vec<Vector> = res_b.differentials[j - 1]
                .iter()
                .map(|parts| prev.to_vector(&parts.iter().map(|x| e.map(x)).collect::<Vec<_>>()))
                .collect();
            let d = ip.map_to(prev.module(), &imgs);
            let psi_prev = res_l.terms[j - 1].map_to(prev.module(), &psi_images[j - 1]);
            let dq = res_l.differential_matrix(j - 1);
            let targets = (0..qj.rank()).map(|s| psi_prev.mul(&dq).mul_vec(&qj.generator(s))).collect();
            (d, targets)
        };
        psi_images.push(lift_generators(qj, &ip, &d, &targets)?);
        induced.push(ip);
    }

    let mut cols = Vec::new();
    for rep in &ext_b.representatives {
        if res_l.terms.len() <= i {
            cols.push(Vec::new());
            continue;
        }
        let ns = ext_b.cochain_images(rep);
        let lifted: Vec<Vector> = ns.iter().map(|x| ln.unit_map.mul_vec(x)).collect();
        let qi = &res_l.terms[i];
        let ipi = &induced[i];
        let mut g = Vec::with_capacity(qi.rank());
        for s in 0..qi.rank() {
            let parts = ipi.to_parts(&psi_images[i][s]);
            let mut acc = crate::linalg::vector::zeros(f, ln.module.dim());
            for (y, l) in parts.iter().zip(&lifted) {
                acc = crate::linalg::vector::add(&acc, &ln.module.act_vec(y, l));
            }
            g.push(acc);
        }
        let cochain = ext_l.cochain_from_images(&g);
        cols.push(ext_l.class_of(&cochain)?);
    }
    let matrix = Matrix::from_columns(f, ext_l.dim, &cols);
    let rank = matrix.rank();
    Ok(ExtComparison {
        degree: i,
        source_dim: ext_b.dim,
        target_dim: ext_l.dim,
        rank,
        epi: rank == ext_l.dim,
        mono: rank == ext_b.dim,
        iso: rank == ext_l.dim && rank == ext_b.dim,
        matrix,
    })
}

/// Compares `dim Ext^i_B(M, res Λ⊗N)` with `dim Ext^i_Λ(Λ⊗M, Λ⊗N)`.
pub fn eckmann_shapiro_check(e: &AlgebraEmbedding, m: &FDModule, n: &FDModule, i: usize) -> Result<(usize, usize)> {
    if !projective_decomposition_right(e).projective {
        return Err(Error::Precondition("Λ is not projective as a right B-module".into()));
    }
    let lm = induct(e, m)?;
    let ln = induct(e, n)?;
    let rn = restrict(e, &ln.module)?;
    let left = ext_space(&minimal_resolution(m, i + 1), &rn, i)?.dim;
    let right = ext_space(&minimal_resolution(&lm.module, i + 1), &ln.module, i)?.dim;
    Ok((left, right))
}
