//! One reduction of a normal bocs: pick `a` in `rad B` whose differential
//! `∂₀(a) = ωa − aω` has a nonzero coefficient `λ` on a top generator `ψ`
//! of `W̄`, then pass to `B/(a)` and `W/(BψB + (a)W + W(a))`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::FDAlgebra;
use crate::coring::{
    group_like_verify, is_directed_bocs, kernel_of_counit, projectivising_tests, right_algebra, Coring,
};
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, Scalar, Subspace, Vector};
use crate::modules::{composition_multiplicities, ext_dim, induct, simple, tensor, Bimodule};
use crate::quasihereditary::SimpleOrder;

pub fn delta_zero(c: &Coring, omega: &[Scalar], a: &[Scalar]) -> Result<Vector> {
    if !group_like_verify(c, omega) {
        return Err(Error::Precondition("ω is not group-like".into()));
    }
    let w = c.bimodule();
    let d = vector::sub(&w.right_act(a).mul_vec(omega), &w.left_act(a).mul_vec(omega));
    if !vector::is_zero(&c.epsilon(&d)) {
        return Err(Error::TheoremViolation("ωa − aω is not in the kernel of ε".into()));
    }
    Ok(d)
}

/// A lifted basis of `rad B / rad² B`, preferring the algebra's generators,
/// sorted by label.
pub fn minimal_radical_generators(b: &FDAlgebra) -> Vec<(String, Vector)> {
    let f = b.field();
    let n = b.dim();
    let rad2 = b.radical_squared();
    let label = |x: &Vector| {
        b.names().iter().find(|(_, v)| v == x).map(|(s, _)| s.clone()).unwrap_or_else(|| b.format_element(x))
    };
    let mut span = rad2.clone();
    let mut out = Vec::new();
    let candidates = b.generators().iter().map(|g| g.element.clone()).chain(b.radical().basis().iter().cloned());
    for x in candidates {
        if b.radical().contains(&x) && !span.contains(&x) {
            span = span.sum(&Subspace::span(f, n, vec![x.clone()]));
            out.push((label(&x), x));
        }
    }
    out.sort_by(|p, q| p.0.cmp(&q.0));
    out
}

/// The first `(a, ψ)` in label order with `∂₀(a)` having a nonzero
/// coefficient `λ` on `ψ` in `top(W̄)`.
#[derive(Clone, Debug, Serialize)]
pub struct Applicable {
    pub a_label: String,
    #[serde(skip)]
    pub a: Vector,
    pub psi_index: usize,
    /// Classes `(i, j)` with `ψ ∈ e_i W̄ e_j`.
    pub psi_classes: (String, String),
    pub lambda: String,
    #[serde(skip)]
    pub psi: Vector,
}

pub fn regularisation_applicable(c: &Coring, omega: &[Scalar], widen: bool) -> Result<Option<Applicable>> {
    let b = c.base();
    let f = c.field();
    let kernel = kernel_of_counit(c)?;
    if kernel.bimodule.dim() == 0 {
        return Ok(None);
    }
    let rep = projectivising_tests(&kernel.bimodule)?;
    if !rep.bimodule_projective() {
        return Err(Error::Precondition("W̄ is not a projective bimodule".into()));
    }
    let gens = &rep.decomposition.generators;
    let rad = kernel.bimodule.radical();
    let proj = rad.quotient_projection();
    let top_basis = Matrix::from_columns(f, proj.rows(), &gens.iter().map(|(_, _, g)| proj.mul_vec(g)).collect::<Vec<_>>());
    let candidates: Vec<(String, Vector)> = if widen {
        let mut v: Vec<(String, Vector)> =
            b.radical().basis().iter().map(|x| (b.format_element(x), x.clone())).collect();
        v.sort_by(|p, q| p.0.cmp(&q.0));
        v
    } else {
        minimal_radical_generators(b)
    };
    for (label, a) in candidates {
        let d = delta_zero(c, omega, &a)?;
        let dk = kernel
            .inclusion
            .solve(&d)?
            .ok_or_else(|| Error::TheoremViolation("∂₀(a) is not in ker ε".into()))?;
        let coeffs = top_basis.solve(&proj.mul_vec(&dk))?.ok_or_else(|| {
            Error::Unsupported("top generators of W̄ at class representatives do not span top(W̄)".into())
        })?;
        if let Some(k) = coeffs.iter().position(|x| !x.is_zero()) {
            let (i, j, g) = &gens[k];
            return Ok(Some(Applicable {
                a_label: label,
                a,
                psi_index: k,
                psi_classes: (b.class_labels()[*i].clone(), b.class_labels()[*j].clone()),
                lambda: coeffs[k].to_string(),
                psi: kernel.inclusion.mul_vec(g),
            }));
        }
    }
    Ok(None)
}

/// Morita invariants of a split algebra, indexed by the given class order:
/// the Cartan matrix `[P(i) : L(j)]` and `dim Ext¹(L(i), L(j))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoritaInvariants {
    pub classes: Vec<String>,
    pub cartan: Vec<Vec<usize>>,
    pub ext1: Vec<Vec<usize>>,
}

pub fn morita_invariants(r: &Arc<FDAlgebra>, sequence: &[usize]) -> Result<MoritaInvariants> {
    let k = sequence.len();
    let mut cartan = vec![vec![0; k]; k];
    let mut ext1 = vec![vec![0; k]; k];
    for (x, &i) in sequence.iter().enumerate() {
        for (y, &j) in sequence.iter().enumerate() {
            cartan[x][y] = r.corner(r.class_representative(j), r.class_representative(i)).dim();
            ext1[x][y] = ext_dim(&simple(r, i), &simple(r, j), 1)?;
        }
    }
    Ok(MoritaInvariants { classes: sequence.iter().map(|&c| r.class_labels()[c].clone()).collect(), cartan, ext1 })
}

/// Classes of the right algebra in the order of `order` on `B`: class `i`
/// of `B` goes to the top of `R ⊗_B L(i)`.
pub(crate) fn transported_order(c: &Coring, order: &SimpleOrder, r: &crate::coring::RightAlgebra) -> Result<SimpleOrder> {
    let b = c.base();
    let mut seq = Vec::new();
    for &cb in order.sequence() {
        let induced = induct(&r.unit_embedding, &simple(b, cb))?.module;
        let top = composition_multiplicities(&induced.top().0);
        let hits: Vec<usize> = (0..top.len()).filter(|&k| top[k] > 0).collect();
        match hits.as_slice() {
            [k] if top[*k] == 1 => seq.push(*k),
            _ => {
                return Err(Error::Precondition(format!(
                    "R ⊗ L({}) does not have a simple top",
                    b.class_labels()[cb]
                )))
            }
        }
    }
    SimpleOrder::new(seq).map_err(|_| Error::Precondition("simples of B and of the right algebra are not in bijection".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularisationStep {
    pub applied: Applicable,
    pub base_dim: (usize, usize),
    pub coring_dim: (usize, usize),
    pub kernel_dim: (usize, usize),
    pub directed: (bool, bool),
    pub invariants: (MoritaInvariants, MoritaInvariants),
    /// Morita equivalence is checked on invariants only.
    pub verification: &'static str,
    #[serde(skip)]
    pub coring: Coring,
    #[serde(skip)]
    pub omega: Vector,
    #[serde(skip)]
    pub order: SimpleOrder,
}

pub fn regularise_step(c: &Coring, omega: &[Scalar], order: &SimpleOrder, app: &Applicable) -> Result<RegularisationStep> {
    let b = c.base();
    let f = c.field();
    let w = c.bimodule();
    let d = delta_zero(c, omega, &app.a)?;
    if vector::is_zero(&d) {
        return Err(Error::Precondition(format!("∂₀({}) vanishes", app.a_label)));
    }
    let ideal = b.two_sided_ideal(std::slice::from_ref(&app.a));
    let (bt, pb) = b.quotient(std::slice::from_ref(&app.a))?;
    let bt = Arc::new(bt);
    let sb = ideal.quotient_section();

    // K = BψB + IW + WI.
    let mut kv = w.generated(std::slice::from_ref(&app.psi)).basis().to_vec();
    for x in ideal.basis() {
        kv.extend(w.left_act(x).columns());
        kv.extend(w.right_act(x).columns());
    }
    let k = Subspace::span(f, w.dim(), kv);
    let q = k.quotient_projection();
    let s = k.quotient_section();
    let act = |mats: &dyn Fn(&Vector) -> Matrix| -> Vec<Matrix> {
        (0..bt.dim()).map(|j| q.mul(&mats(&sb.column(j))).mul(&s)).collect()
    };
    let left = act(&|x| w.left_act(x));
    let right = act(&|x| w.right_act(x));
    for (name, mats) in [("left", &left), ("right", &right)] {
        for (j, mj) in mats.iter().enumerate() {
            let lift = sb.column(j);
            let full = if name == "left" { w.left_act(&lift) } else { w.right_act(&lift) };
            if q.mul(&full) != mj.mul(&q) {
                return Err(Error::TheoremViolation(format!("{name} action does not descend to W/K")));
            }
        }
    }
    let wt = Bimodule::new(bt.clone(), bt.clone(), left, right)?;
    let counit = pb.mul(c.counit()).mul(&s);
    if !pb.mul(c.counit()).mul(&k.basis_matrix()).is_zero() {
        return Err(Error::TheoremViolation("ε does not descend to W/K".into()));
    }
    let square = tensor(&wt, &wt)?;
    let qq = c.square().bilinear_out(square.dim(), |x, y| square.elem(&q.mul_vec(x), &q.mul_vec(y)));
    let mu_full = qq.mul(c.comult());
    for v in k.basis() {
        if !vector::is_zero(&mu_full.mul_vec(v)) {
            return Err(Error::TheoremViolation(format!(
                "μ does not descend: (π⊗π)μ is nonzero on {:?}",
                v.iter().map(ToString::to_string).collect::<Vec<_>>()
            )));
        }
    }
    let comult = mu_full.mul(&s);
    let reduced = Coring::new(wt, square, comult, counit)?;
    let omega_t = q.mul_vec(omega);
    if !group_like_verify(&reduced, &omega_t) {
        return Err(Error::TheoremViolation("the image of ω is not group-like".into()));
    }
    let labels: Vec<String> = order.sequence().iter().map(|&cl| b.class_labels()[cl].clone()).collect();
    let order_t = SimpleOrder::from_labels(&bt, &labels)?;

    let before = is_directed_bocs(c, order)?;
    let after = is_directed_bocs(&reduced, &order_t)?;
    if before.directed && !after.directed {
        return Err(Error::TheoremViolation("regularisation destroyed directedness".into()));
    }
    let r0 = right_algebra(c)?;
    let r1 = right_algebra(&reduced)?;
    let i0 = morita_invariants(&r0.algebra, transported_order(c, order, &r0)?.sequence())?;
    let i1 = morita_invariants(&r1.algebra, transported_order(&reduced, &order_t, &r1)?.sequence())?;
    if i0.cartan != i1.cartan || i0.ext1 != i1.ext1 {
        return Err(Error::TheoremViolation(format!(
            "right algebras are not Morita equivalent: Cartan {:?} vs {:?}, Ext¹ {:?} vs {:?}",
            i0.cartan, i1.cartan, i0.ext1, i1.ext1
        )));
    }
    Ok(RegularisationStep {
        applied: app.clone(),
        base_dim: (b.dim(), bt.dim()),
        coring_dim: (c.dim(), reduced.dim()),
        kernel_dim: (c.dim() - b.dim(), reduced.dim() - bt.dim()),
        directed: (before.directed, after.directed),
        invariants: (i0, i1),
        verification: "invariant-level",
        coring: reduced,
        omega: omega_t,
        order: order_t,
    })
}

/// Reduces until no step applies, or `max_steps` is reached.
pub fn regularise(
    c: &Coring,
    omega: &[Scalar],
    order: &SimpleOrder,
    widen: bool,
    max_steps: usize,
) -> Result<Vec<RegularisationStep>> {
    let mut steps: Vec<RegularisationStep> = Vec::new();
    let (mut cur, mut om, mut ord) = (c.clone(), omega.to_vec(), order.clone());
    while steps.len() < max_steps {
        let Some(app) = regularisation_applicable(&cur, &om, widen)? else { break };
        let step = regularise_step(&cur, &om, &ord, &app)?;
        cur = step.coring.clone();
        om = step.omega.clone();
        ord = step.order.clone();
        steps.push(step);
    }
    Ok(steps)
}
