use std::sync::Arc;

use super::*;
use crate::algebra::{parse_elements, subalgebra, FDAlgebra, IdempotentChoice, Quiver, QuiverPresentation};
use crate::linalg::{vector, Field, Matrix};
use crate::modules::{hom_dim, simples, FDModule, Side};
use crate::quasihereditary::SimpleOrder;

fn q() -> Field {
    Field::Rational
}

fn a3() -> Arc<FDAlgebra> {
    let qv = Quiver::from_triples(&["1", "2", "3"], &[("g", "1", "2"), ("a", "2", "3")]).unwrap();
    let p = QuiverPresentation::parse(q(), qv, &[], 2).unwrap();
    Arc::new(FDAlgebra::from_quiver(q(), p).unwrap())
}

fn m2_sub(gens: &[&str]) -> AlgebraEmbedding {
    let m2 = Arc::new(FDAlgebra::matrix_algebra(q(), 2));
    let g = parse_elements(&m2, gens).unwrap();
    subalgebra(&m2, &g, IdempotentChoice::Auto, 100).unwrap()
}

fn upper() -> AlgebraEmbedding {
    m2_sub(&["E11", "E12", "E22"])
}

fn diagonal() -> AlgebraEmbedding {
    m2_sub(&["E11", "E22"])
}

/// Over `k`: `W = k ω ⊕ k x`, `μ(ω) = ω⊗ω`, `μ(x) = ω⊗x + x⊗ω`.
fn dual_numbers_coring() -> Coring {
    let k = Arc::new(FDAlgebra::ground(q()));
    let id = Matrix::identity(q(), 2);
    let w = Bimodule::new(k.clone(), k, vec![id.clone()], vec![id]).unwrap();
    let one = q().one();
    let comult = vec![vec![(one.clone(), 0, 0)], vec![(one.clone(), 0, 1), (one, 1, 0)]];
    Coring::from_pure_tensors(w, &comult, Matrix::from_ints(q(), &[vec![1, 0]])).unwrap()
}

#[test]
fn identity_embedding_gives_the_regular_coring() {
    let b = a3();
    let e = AlgebraEmbedding::identity(&b);
    let d = dual_coring(&e).unwrap();
    assert_eq!(d.coring.dim(), b.dim());
    assert!(d.coring.counit().is_invertible());
    let s = splitting_equivalences(&e).unwrap();
    assert_eq!(s.verdicts(), [true; 4]);
    let n = normality(&d, &SearchBudget::default()).unwrap();
    assert_eq!(n.verdict(), GroupLikeVerdict::Found);
    assert_eq!(kernel_of_counit(&d.coring).unwrap().bimodule.dim(), 0);
    let r = right_algebra_of_dual(&d).unwrap();
    assert_eq!(r.algebra.dim(), b.dim());
    let v = is_directed_bocs(&d.coring, &SimpleOrder::natural(&b)).unwrap();
    assert!(v.directed, "{v:?}");
}

#[test]
fn upper_triangular_extension_does_not_split() {
    let e = upper();
    let d = dual_coring(&e).unwrap();
    // Λ_B is two copies of one indecomposable projective eB, and
    // Hom(eB, B) ≅ Be.
    let row = &e.source().idempotents()[0];
    let be = e.source().right_mult(row).rank();
    assert_eq!(d.coring.dim(), 2 * be);
    let cs = counit_surjective(&d.coring).unwrap();
    assert!(!cs.surjective);
    assert_eq!(cs.cokernel.len() + cs.rank, 3);
    assert_eq!(splitting_equivalences(&e).unwrap().verdicts(), [false; 4]);
    let n = normality(&d, &SearchBudget::default()).unwrap();
    assert_eq!(n.verdict(), GroupLikeVerdict::ProvenAbsent);
}

#[test]
fn diagonal_extension_splits() {
    let e = diagonal();
    let d = dual_coring(&e).unwrap();
    assert_eq!(d.coring.dim(), 4);
    assert!(counit_surjective(&d.coring).unwrap().surjective);
    assert_eq!(splitting_equivalences(&e).unwrap().verdicts(), [true; 4]);
    let r = right_algebra_of_dual(&d).unwrap();
    assert_eq!(r.algebra.dim(), 4);
    assert_eq!(r.algebra.num_classes(), 1);
    assert_eq!(kernel_of_counit(&d.coring).unwrap().bimodule.dim(), 2);
}

#[test]
fn group_likes_of_diagonal_coring_match_right_ideal_complements() {
    // Λ = B ⊕ I for the right ideal I of matrices with columns in k(1, 1).
    let e = diagonal();
    let d = dual_coring(&e).unwrap();
    let n = normality(&d, &SearchBudget::default()).unwrap();
    assert_eq!(n.coring_search.verdict, GroupLikeVerdict::Found);
    assert_eq!(n.splitting_search.verdict, GroupLikeVerdict::Found);
    let w = n.omega().unwrap();
    assert!(group_like_verify(&d.coring, w));
    assert_eq!(n.kernel_right_ideal, Some(true));
    // Independently: the projection onto B along I is right B-linear, so it
    // is an element of W, and it is group-like.
    let lam = e.target();
    let m2 = |v: [i64; 4]| v.iter().map(|&x| q().from_int(x)).collect::<Vec<_>>();
    let ims = [m2([1, 0, 0, 0]), m2([0, 0, 0, 1]), m2([1, 0, 1, 0]), m2([0, 1, 0, 1])];
    let basis = Matrix::from_columns(q(), 4, &ims);
    let mut pi = Matrix::zeros(q(), 2, 4);
    // Coordinates of E11, E22 in B.
    let b1 = e.preimage(&ims[0]).unwrap();
    let b2 = e.preimage(&ims[1]).unwrap();
    let inv = basis.inverse().unwrap();
    for c in 0..4 {
        let coords = inv.mul_vec(&lam.basis_element(c));
        let mut col = vector::scale(&b1, &coords[0]);
        vector::axpy(&mut col, &coords[1], &b2);
        for r in 0..2 {
            pi.set(r, c, col[r].clone());
        }
    }
    let omega = d.element_of(&pi).expect("the projection is right B-linear");
    assert!(group_like_verify(&d.coring, &omega));
}

#[test]
fn regular_coring_and_its_hom_spaces() {
    let b = a3();
    let c = Coring::regular(&b).unwrap();
    assert!(group_like_verify(&c, b.unit()));
    let ss = simples(&b);
    let p = FDModule::regular(b.clone());
    for m in ss.iter().chain(std::iter::once(&p)) {
        for n in &ss {
            assert_eq!(bocs_hom(&c, m, n).unwrap().dim(), hom_dim(m, n).unwrap());
        }
    }
    let r = right_algebra(&c).unwrap();
    assert_eq!(r.algebra.dim(), b.dim());
    assert_eq!(r.algebra.num_classes(), b.num_classes());
}

#[test]
fn bocs_identity_is_neutral() {
    let c = dual_numbers_coring();
    let k = c.base().clone();
    let m = FDModule::new(k.clone(), vec![Matrix::identity(q(), 2)], Side::Left).unwrap();
    let id = bocs_identity(&c, &m).unwrap();
    let h = bocs_hom(&c, &m, &m).unwrap();
    assert_eq!(h.dim(), 8);
    for f in &h.basis {
        assert_eq!(&bocs_compose(&c, &m, &m, f, &id).unwrap(), f);
        assert_eq!(&bocs_compose(&c, &m, &m, &id, f).unwrap(), f);
    }
}

#[test]
fn dual_numbers_coring_structure() {
    let c = dual_numbers_coring();
    let s = group_like_search(&c, &SearchBudget::default()).unwrap();
    assert_eq!(s.verdict, GroupLikeVerdict::Found);
    assert_eq!(s.omega.unwrap(), vec![q().one(), q().zero()]);
    let r = right_algebra(&c).unwrap();
    assert_eq!(r.algebra.dim(), 2);
    assert_eq!(r.algebra.radical().dim(), 1);
    // W̄ = k x is the summand B e ⊗ e B with equal indices.
    let k = c.base().clone();
    let v = is_directed_bocs(&c, &SimpleOrder::natural(&k)).unwrap();
    assert!(!v.directed);
    assert_eq!(v.violations.len(), 1);
    let rep = v.report.unwrap();
    assert!(rep.bimodule_projective());
    assert_eq!(rep.decomposition.multiplicities, vec![vec![1]]);
}

#[test]
fn tampered_comultiplication_is_rejected() {
    let c = dual_numbers_coring();
    let mut bad = c.comult().clone();
    let v = bad.get(0, 1).clone();
    bad.set(0, 1, &v + &q().one());
    let err = Coring::new(c.bimodule().clone(), c.square().clone(), bad, c.counit().clone()).unwrap_err();
    assert!(matches!(err, Error::TheoremViolation(_)), "{err}");
}

#[test]
fn injectivising_lemma_on_a_projective_kernel() {
    let c = dual_numbers_coring();
    let k = kernel_of_counit(&c).unwrap();
    let rep = projectivising_tests(&k.bimodule).unwrap();
    assert!(rep.right_projective && rep.left_projectivising);
    for l in simples(c.base()) {
        let h = hom_into_injective(&k.bimodule, &l).unwrap();
        assert!(h.dual().is_projective());
    }
}
