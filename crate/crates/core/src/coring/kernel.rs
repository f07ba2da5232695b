//! The kernel of the counit and its projectivity as a bimodule.

use serde::Serialize;

use super::{Coring, MatrixSpace};
use crate::algebra::FDAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::modules::{hom_matrices, tensor, Bimodule, FDModule, Side};
use crate::quasihereditary::{is_directed, SimpleOrder};

#[derive(Clone, Debug)]
pub struct CounitKernel {
    pub bimodule: Bimodule,
    /// Columns are the basis of `W̄` inside `W`.
    pub inclusion: Matrix,
}

pub fn kernel_of_counit(c: &Coring) -> Result<CounitKernel> {
    let b = c.base();
    if c.counit().rank() != b.dim() {
        return Err(Error::Precondition("the counit is not surjective".into()));
    }
    let space = Subspace::span(c.field(), c.dim(), c.counit().kernel_basis());
    if !c.bimodule().is_sub_bimodule(&space) {
        return Err(Error::TheoremViolation("ker ε is not a sub-bimodule".into()));
    }
    let (bimodule, inclusion) = c.bimodule().sub(&space);
    Ok(CounitKernel { bimodule, inclusion })
}

/// `W̄ ≅ ⊕ (B e_i ⊗ e_j B)^{m[i][j]}`, indexed by classes of `B`.
#[derive(Clone, Debug, Serialize)]
pub struct BimoduleDecomposition {
    pub labels: Vec<String>,
    pub multiplicities: Vec<Vec<usize>>,
    pub projective: bool,
    pub free_dim: usize,
    pub module_dim: usize,
    /// `(i, j, w)` with `w ∈ e_i W̄ e_j` generating one summand each.
    #[serde(skip)]
    pub generators: Vec<(usize, usize, Vector)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectivisingReport {
    pub right_projective: bool,
    /// `W̄ ⊗_B (B / rad B)` is projective; with right projectivity this
    /// decides bimodule projectivity when `B` is split.
    pub left_projectivising: bool,
    pub split_base: bool,
    pub decomposition: BimoduleDecomposition,
}

impl ProjectivisingReport {
    pub fn bimodule_projective(&self) -> bool {
        self.decomposition.projective
    }
}

fn decompose(w: &Bimodule) -> BimoduleDecomposition {
    let b = w.left();
    let f = b.field();
    let k = b.num_classes();
    let reps: Vec<&Vector> = (0..k).map(|c| &b.idempotents()[b.class_representative(c)]).collect();
    let rad = w.radical();
    let proj = rad.quotient_projection();
    let mut multiplicities = vec![vec![0; k]; k];
    let mut generators = Vec::new();
    let mut free_dim = 0;
    for i in 0..k {
        let dim_bei = b.right_mult(reps[i]).rank();
        for j in 0..k {
            // Lifts in e_i W̄ e_j of a basis of e_i top(W̄) e_j.
            let corner = Subspace::column_space(&w.left_act(reps[i]).mul(&w.right_act(reps[j])));
            let mut seen = Subspace::zero(f, proj.rows());
            for v in corner.basis() {
                let t = proj.mul_vec(v);
                if !seen.contains(&t) {
                    seen = seen.sum(&Subspace::span(f, proj.rows(), vec![t]));
                    generators.push((i, j, v.clone()));
                    multiplicities[i][j] += 1;
                }
            }
            free_dim += multiplicities[i][j] * dim_bei * b.left_mult(reps[j]).rank();
        }
    }
    let mut image = Vec::new();
    for (_, _, g) in &generators {
        for r in w.right_actions() {
            let gr = r.mul_vec(g);
            for l in w.left_actions() {
                image.push(l.mul_vec(&gr));
            }
        }
    }
    let spanned = Subspace::span(f, w.dim(), image).dim();
    BimoduleDecomposition {
        labels: b.class_labels().to_vec(),
        multiplicities,
        projective: free_dim == w.dim() && spanned == w.dim(),
        free_dim,
        module_dim: w.dim(),
        generators,
    }
}

fn top_of(b: &std::sync::Arc<FDAlgebra>) -> FDModule {
    FDModule::regular(b.clone()).top().0
}

pub fn projectivising_tests(w: &Bimodule) -> Result<ProjectivisingReport> {
    let b = w.left();
    let right_projective = w.as_right_module().is_projective();
    let t = tensor(w, &Bimodule::from_left(&top_of(b)))?;
    let left_projectivising = t.dim() == 0 || t.result.as_left_module().is_projective();
    let decomposition = decompose(w);
    if decomposition.projective && !(right_projective && left_projectivising) {
        return Err(Error::TheoremViolation("a projective bimodule fails a one-sided projectivity test".into()));
    }
    Ok(ProjectivisingReport { right_projective, left_projectivising, split_base: b.is_split(), decomposition })
}

/// `Hom_B(W̄, X)` as a left module, `(b·h)(w) = h(w·b)`.
pub fn hom_into_injective(w: &Bimodule, x: &FDModule) -> Result<FDModule> {
    let b = w.left();
    let homs = hom_matrices(&w.as_left_module(), x)?;
    let f = b.field();
    if homs.is_empty() {
        return Ok(FDModule::zero(b.clone(), Side::Left));
    }
    let space = MatrixSpace::new(f, x.dim(), w.dim(), &homs);
    let n = space.dim();
    let basis: Vec<Matrix> = (0..n).map(|k| space.basis_matrix(k)).collect();
    let actions = w
        .right_actions()
        .iter()
        .map(|r| {
            let cols = basis
                .iter()
                .map(|h| {
                    space.coords(&h.mul(r)).ok_or_else(|| Error::TheoremViolation("Hom_B(W̄, X) is not a module".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(f, n, &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    FDModule::new(b.clone(), actions, Side::Left)
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectedBocsVerdict {
    pub directed: bool,
    pub base_directed: bool,
    pub counit_surjective: bool,
    pub kernel_dim: Option<usize>,
    pub report: Option<ProjectivisingReport>,
    /// Summands `B e_i ⊗ e_j B` with `j` not below `i`.
    pub violations: Vec<(String, String)>,
}

pub fn is_directed_bocs(c: &Coring, order: &SimpleOrder) -> Result<DirectedBocsVerdict> {
    let b = c.base();
    let base_directed = is_directed(b, order)?;
    let counit_surjective = c.counit().rank() == b.dim();
    let mut v = DirectedBocsVerdict {
        directed: false,
        base_directed,
        counit_surjective,
        kernel_dim: None,
        report: None,
        violations: Vec::new(),
    };
    if !counit_surjective {
        return Ok(v);
    }
    let k = kernel_of_counit(c)?;
    let report = projectivising_tests(&k.bimodule)?;
    let labels = b.class_labels();
    for (i, row) in report.decomposition.multiplicities.iter().enumerate() {
        for (j, &m) in row.iter().enumerate() {
            if m > 0 && !order.less(j, i) {
                v.violations.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    v.directed = base_directed && report.bimodule_projective() && v.violations.is_empty();
    v.kernel_dim = Some(k.bimodule.dim());
    v.report = Some(report);
    Ok(v)
}
