//! Extension -> dual bocs -> right algebra, and bocs -> right algebra ->
//! dual bocs. Both directions are checked on the Borel flags.

use serde::Serialize;

use super::regularise::transported_order;
use super::{borel_check, regularisation_applicable, BorelOptions, BorelReport, Status};
use crate::algebra::AlgebraEmbedding;
use crate::coring::{
    dual_coring, group_like_search, is_directed_bocs, right_algebra, right_algebra_of_dual, Coring, GroupLikeVerdict,
};
use crate::error::{Error, Result};
use crate::quasihereditary::SimpleOrder;

#[derive(Clone, Debug, Serialize)]
pub struct RoundtripReport {
    /// Flags of the input extension; absent when starting from a bocs.
    pub original: Option<BorelReport>,
    /// Flags of `B -> R` for the right algebra `R`.
    pub reconstructed: BorelReport,
    /// `(dim W, dim W')` for the input and the rebuilt coring.
    pub coring_dims: (usize, usize),
    pub right_algebra_dim: usize,
}

fn flags_agree(a: Status, b: Status) -> bool {
    a == b || a == Status::Undetermined || b == Status::Undetermined
}

pub fn roundtrip_extension(
    e: &AlgebraEmbedding,
    order_b: &SimpleOrder,
    order_l: &SimpleOrder,
    opts: &BorelOptions,
) -> Result<RoundtripReport> {
    let original = borel_check(e, order_b, order_l, opts)?;
    if !original.exact_borel() || !original.h.passed() {
        return Err(Error::Precondition("the round trip needs a homological exact Borel subalgebra".into()));
    }
    let d = dual_coring(e)?;
    let directed = is_directed_bocs(&d.coring, order_b)?;
    if !directed.directed {
        return Err(Error::TheoremViolation(format!(
            "the dual bocs of a homological exact Borel subalgebra is not directed: {:?}",
            directed.violations
        )));
    }
    let r = right_algebra_of_dual(&d)?;
    let lam = e.target();
    let labels: Vec<String> = order_l.sequence().iter().map(|&c| lam.class_labels()[c].clone()).collect();
    let order_r = SimpleOrder::from_labels(&r.algebra, &labels)?;
    let reconstructed = borel_check(&r.unit_embedding, order_b, &order_r, opts)?;
    if let Some(k) = (0..6).find(|&k| !flags_agree(original.flags()[k], reconstructed.flags()[k])) {
        return Err(Error::TheoremViolation(format!(
            "flag {k} changes along Λ ≅ R: {:?} vs {:?}",
            original.flags()[k],
            reconstructed.flags()[k]
        )));
    }
    let back = dual_coring(&r.unit_embedding)?;
    Ok(RoundtripReport {
        original: Some(original),
        reconstructed,
        coring_dims: (d.coring.dim(), back.coring.dim()),
        right_algebra_dim: r.algebra.dim(),
    })
}

pub fn roundtrip_bocs(c: &Coring, order_b: &SimpleOrder, opts: &BorelOptions) -> Result<RoundtripReport> {
    let directed = is_directed_bocs(c, order_b)?;
    if !directed.directed {
        return Err(Error::Precondition(format!("the bocs is not directed: {:?}", directed.violations)));
    }
    let search = group_like_search(c, &opts.budget)?;
    let r = right_algebra(c)?;
    let order_r = transported_order(c, order_b, &r)?;
    let reconstructed = borel_check(&r.unit_embedding, order_b, &order_r, opts)?;
    if !reconstructed.exact_borel() || !reconstructed.h.passed() {
        return Err(Error::TheoremViolation(format!(
            "B is not a homological exact Borel subalgebra of the right algebra of a directed bocs: {:?}",
            reconstructed.flags()
        )));
    }
    let expected_n = match search.verdict {
        GroupLikeVerdict::Found => Status::Pass,
        GroupLikeVerdict::ProvenAbsent => Status::Fail,
        GroupLikeVerdict::Undetermined => Status::Undetermined,
    };
    if !flags_agree(expected_n, reconstructed.n.status) {
        return Err(Error::TheoremViolation(format!(
            "normality of the bocs ({expected_n:?}) differs from N of the extension ({:?})",
            reconstructed.n.status
        )));
    }
    // The reduction criterion concerns degree one only.
    if let (Some(omega), Some(reg)) = (search.omega.as_ref(), reconstructed.regularity.as_ref()) {
        let reducible = regularisation_applicable(c, omega, opts.widen_regularisation)?.is_some();
        if reg.cross_checked && reducible == reg.iso_in_degree_one {
            return Err(Error::TheoremViolation("the reduction criterion on the bocs disagrees with the extension".into()));
        }
    }
    let back = dual_coring(&r.unit_embedding)?;
    if back.coring.dim() != c.dim() {
        return Err(Error::TheoremViolation(format!(
            "the dual bocs of B -> R has dimension {}, the bocs {}",
            back.coring.dim(),
            c.dim()
        )));
    }
    Ok(RoundtripReport {
        original: None,
        reconstructed,
        coring_dims: (c.dim(), back.coring.dim()),
        right_algebra_dim: r.algebra.dim(),
    })
}
