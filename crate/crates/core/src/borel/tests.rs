use std::sync::Arc;

use super::*;
use crate::algebra::FDAlgebra;
use crate::coring::{dual_coring, group_like_search, right_algebra, GroupLikeVerdict};
use crate::fixtures::{self, quiver_algebra};
use crate::linalg::Field;

fn opts() -> BorelOptions {
    BorelOptions::default()
}

fn check(fx: &fixtures::Fixture) -> BorelReport {
    borel_check(&fx.embedding, fx.order_b.as_ref().unwrap(), &fx.order_lambda, &opts()).unwrap()
}

#[test]
fn identity_on_one_vertex_passes_everything() {
    let r = check(&fixtures::f0().unwrap());
    assert_eq!(r.flags(), [Status::Pass; 6], "{r:?}");
}

#[test]
fn identity_on_a3_passes_everything() {
    let a = quiver_algebra(Field::Rational, &["1", "2", "3"], &[("g", "1", "2"), ("a", "2", "3")], &[], 3).unwrap();
    let e = AlgebraEmbedding::identity(&a);
    let o = SimpleOrder::natural(&a);
    let r = borel_check(&e, &o, &o, &opts()).unwrap();
    assert_eq!(r.flags(), [Status::Pass; 6], "{r:?}");
    let rt = roundtrip_extension(&e, &o, &o, &opts()).unwrap();
    assert_eq!(rt.coring_dims, (a.dim(), a.dim()));
}

#[test]
fn f5_is_normal_but_not_regular() {
    let fx = fixtures::f5().unwrap();
    let r = check(&fx);
    assert!(r.exact_borel(), "{r:?}");
    assert_eq!(r.h.status, Status::Pass);
    assert_eq!(r.n.status, Status::Pass);
    assert_eq!(r.r.status, Status::Fail);
    let table = r.comparisons.as_ref().unwrap();
    let w = table.regular_witness().unwrap();
    assert_eq!(w.degree, 1);
    assert_eq!(w.target_dim, 0);
    assert!(w.source_dim > 0);
    let reg = r.regularity.as_ref().unwrap();
    assert!(reg.cross_checked);
    assert!(reg.applicable.is_some());
}

#[test]
fn f5_regularises_in_one_step() {
    let fx = fixtures::f5().unwrap();
    let d = dual_coring(&fx.embedding).unwrap();
    let order = fx.order_b.clone().unwrap();
    let s = group_like_search(&d.coring, &Default::default()).unwrap();
    assert_eq!(s.verdict, GroupLikeVerdict::Found);
    let omega = s.omega.unwrap();
    let steps = regularise(&d.coring, &omega, &order, false, 5).unwrap();
    assert_eq!(steps.len(), 1);
    let last = &steps[0];
    assert!(regularisation_applicable(&last.coring, &last.omega, false).unwrap().is_none());
    // Invariants of k × M₂: two simples, identity Cartan matrix, no Ext¹.
    let lam = fx.embedding.target();
    let target = morita_invariants(lam, SimpleOrder::natural(lam).sequence()).unwrap();
    assert_eq!(last.invariants.1.cartan, target.cartan);
    assert_eq!(last.invariants.1.ext1, target.ext1);
    assert_eq!(last.verification, "invariant-level");
}

#[test]
fn f5_round_trips_both_ways() {
    let fx = fixtures::f5().unwrap();
    let order = fx.order_b.clone().unwrap();
    let rt = roundtrip_extension(&fx.embedding, &order, &fx.order_lambda, &opts()).unwrap();
    let flags = rt.reconstructed.flags();
    assert_eq!(flags[4], Status::Pass);
    assert_eq!(flags[5], Status::Fail);
    let d = dual_coring(&fx.embedding).unwrap();
    let back = roundtrip_bocs(&d.coring, &order, &opts()).unwrap();
    assert_eq!(back.reconstructed.flags(), flags);
    assert_eq!(back.right_algebra_dim, 5);
}

#[test]
fn f3_fails_h_at_degree_one() {
    let r = check(&fixtures::f3().unwrap());
    assert!(r.b2.passed());
    assert_eq!(r.h.status, Status::Fail);
    let w = r.comparisons.as_ref().unwrap().homological_witness().unwrap();
    assert_eq!((w.degree, w.from.as_str(), w.to.as_str()), (1, "1", "3"));
    assert_eq!((w.source_dim, w.target_dim), (0, 1));
}

#[test]
fn f4_pair_is_a_regular_exact_borel_subalgebra() {
    let fx = fixtures::f4().unwrap();
    let r = check(&fx);
    assert!(r.exact_borel(), "{:?}", (&r.b1, &r.b2, &r.b3, &r.standards));
    assert_eq!(r.h.status, Status::Pass);
    assert_eq!(r.r.status, Status::Pass);
    let order = fx.order_b.clone().unwrap();
    let rt = roundtrip_extension(&fx.embedding, &order, &fx.order_lambda, &opts()).unwrap();
    assert_eq!(rt.reconstructed.flags(), r.flags());
    let d = dual_coring(&fx.embedding).unwrap();
    let back = roundtrip_bocs(&d.coring, &order, &opts()).unwrap();
    assert_eq!(back.reconstructed.flags(), r.flags());
}

#[test]
fn regularising_a_regular_bocs_is_refused() {
    let a = Arc::new(FDAlgebra::ground(Field::Rational));
    let c = crate::coring::Coring::regular(&a).unwrap();
    assert!(regularisation_applicable(&c, a.unit(), false).unwrap().is_none());
    assert!(right_algebra(&c).is_ok());
}
