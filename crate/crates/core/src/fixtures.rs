//! The built-in corpus F0–F5.
//!
//! - F0: the identity embedding of the ground field.
//! - F1, F2: upper triangular and diagonal subalgebras of `M₂(Q)`.
//! - F3: the four-arrow quiver with `γδ = 0 = αβ` and `B = ⟨α, γ⟩`.
//! - F4: the kite algebra, and `B′ ⊆ Γ = End(Λ ⊕ P(4))`.
//! - F5: the three-dimensional subalgebra of `k × M₂(Q)`.

use std::sync::Arc;

use crate::algebra::{
    endomorphism_algebra, parse_elements, subalgebra, AlgebraEmbedding, EndomorphismAlgebra, FDAlgebra,
    IdempotentChoice, Quiver, QuiverPresentation,
};
use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Vector};
use crate::modules::projective;
use crate::quasihereditary::SimpleOrder;

pub const NAMES: [&str; 6] = ["F0", "F1", "F2", "F3", "F4", "F5"];

/// An extension with orders on both sides, paired by position.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub embedding: AlgebraEmbedding,
    pub order_b: Option<SimpleOrder>,
    pub order_lambda: SimpleOrder,
}

pub fn quiver_algebra(
    field: Field,
    vertices: &[&str],
    arrows: &[(&str, &str, &str)],
    relations: &[&str],
    bound: usize,
) -> Result<Arc<FDAlgebra>> {
    let q = Quiver::from_triples(vertices, arrows)?;
    let p = QuiverPresentation::parse(field, q, relations, bound)?;
    Ok(Arc::new(FDAlgebra::from_quiver(field, p)?))
}

fn sub(lambda: &Arc<FDAlgebra>, gens: &[&str], idem: &[(&str, &str)]) -> Result<AlgebraEmbedding> {
    let g = parse_elements(lambda, gens)?;
    let choice = if idem.is_empty() {
        IdempotentChoice::Auto
    } else {
        let parsed = parse_elements(lambda, &idem.iter().map(|x| x.1).collect::<Vec<_>>())?;
        IdempotentChoice::Supplied(idem.iter().map(|x| x.0.to_string()).zip(parsed).collect())
    };
    subalgebra(lambda, &g, choice, 1000)
}

fn natural(a: &FDAlgebra) -> SimpleOrder {
    SimpleOrder::natural(a)
}

pub fn f0() -> Result<Fixture> {
    let k = Arc::new(FDAlgebra::ground(Field::Rational));
    Ok(Fixture {
        name: "F0",
        description: "identity embedding of the ground field",
        order_b: Some(natural(&k)),
        order_lambda: natural(&k),
        embedding: AlgebraEmbedding::identity(&k),
    })
}

fn m2() -> Arc<FDAlgebra> {
    Arc::new(FDAlgebra::matrix_algebra(Field::Rational, 2))
}

pub fn f1() -> Result<Fixture> {
    let l = m2();
    let e = sub(&l, &["E11", "E12", "E22"], &[])?;
    Ok(Fixture {
        name: "F1",
        description: "upper triangular matrices in M2(Q)",
        order_b: Some(natural(e.source())),
        order_lambda: natural(&l),
        embedding: e,
    })
}

pub fn f2() -> Result<Fixture> {
    let l = m2();
    let e = sub(&l, &["E11", "E22"], &[])?;
    Ok(Fixture {
        name: "F2",
        description: "diagonal matrices in M2(Q)",
        order_b: Some(natural(e.source())),
        order_lambda: natural(&l),
        embedding: e,
    })
}

/// `α: 2→3, β: 3→2, δ: 3→1, γ: 1→2` with `γδ = 0 = αβ`.
pub fn f3_algebra() -> Result<Arc<FDAlgebra>> {
    quiver_algebra(
        Field::Rational,
        &["1", "2", "3"],
        &[("α", "2", "3"), ("β", "3", "2"), ("δ", "3", "1"), ("γ", "1", "2")],
        &["γ*δ", "α*β"],
        6,
    )
}

pub fn f3() -> Result<Fixture> {
    let l = f3_algebra()?;
    let e = sub(&l, &["e1", "e2", "e3", "α", "γ"], &[])?;
    Ok(Fixture {
        name: "F3",
        description: "B = <α, γ> in the quiver algebra with γδ = 0 = αβ",
        order_b: Some(natural(e.source())),
        order_lambda: natural(&l),
        embedding: e,
    })
}

/// `a: 3→4, c: 3→1, d: 1→2, b: 4→2, e: 2→3` with `dc − ba, ae, eb`.
pub fn kite() -> Result<Arc<FDAlgebra>> {
    quiver_algebra(
        Field::Rational,
        &["1", "2", "3", "4"],
        &[("a", "3", "4"), ("c", "3", "1"), ("d", "1", "2"), ("b", "4", "2"), ("e", "2", "3")],
        &["d*c - b*a", "a*e", "e*b"],
        8,
    )
}

/// `End` of the right module `Λ ⊕ e₄Λ` for the kite, as endomorphisms of
/// left `Λ^op`-modules; summands `e₁Λ, …, e₄Λ, e₄Λ`.
pub fn f4_gamma() -> Result<(Arc<FDAlgebra>, EndomorphismAlgebra)> {
    let lam = kite()?;
    let op = Arc::new(lam.opposite());
    let idx: Vec<usize> = ["1", "2", "3", "4", "4"].iter().map(|l| op.class_index(l).expect("kite vertex")).collect();
    let summands: Vec<_> = idx.iter().map(|&c| projective(&op, c).0).collect();
    let labels: Vec<String> = ["1", "2", "3", "4", "4'"].iter().map(|s| s.to_string()).collect();
    let end = endomorphism_algebra(&summands, &labels)?;
    Ok((lam, end))
}

/// `x ∈ e_i Λ e_j` as the map `e_jΛ -> e_iΛ`, `v ↦ xv`, in block `(s, t)`
/// of the summands.
fn kite_map(lam: &Arc<FDAlgebra>, end: &EndomorphismAlgebra, s: usize, t: usize, x: &str) -> Result<Vector> {
    let op = Arc::new(lam.opposite());
    let class = |k: usize| op.class_index(["1", "2", "3", "4", "4"][k]).expect("kite vertex");
    let (_, target) = projective(&op, class(s));
    let (_, source) = projective(&op, class(t));
    let x = &parse_elements(lam, &[x])?[0];
    let h = target.coord_matrix().mul(&lam.left_mult(x)).mul(&source.basis_matrix());
    end.element_of(&end.block(s, t, &h))
        .ok_or_else(|| Error::TheoremViolation(format!("{x:?} does not give an endomorphism")))
}

/// The Borel subalgebra `B′` of `Γ`: arrows `a′: 1→2, e′: 1→4, f′: 2→3,
/// d′: 3→4` with `d′f′ = 0`. Its vertex `1` is `id(e₁Λ) + id(e₄Λ)′`,
/// `a′ = d + b` reaches both parts of it, `e′` identifies the two copies of
/// `e₄Λ`, `f′ = e` and `d′ = a`. Without the `b` term the degree-one map on
/// `(L(1), L(4))` vanishes.
pub fn f4() -> Result<Fixture> {
    let (lam, end) = f4_gamma()?;
    let gamma = Arc::new(end.algebra.clone());
    let id = |k: usize| gamma.idempotents()[k].clone();
    let eps = [vector::add(&id(0), &id(4)), id(1), id(2), id(3)];
    let a1 = vector::add(&kite_map(&lam, &end, 1, 0, "d")?, &kite_map(&lam, &end, 1, 4, "b")?);
    let f1 = kite_map(&lam, &end, 2, 1, "e")?;
    let d1 = kite_map(&lam, &end, 3, 2, "a")?;
    let e1 = kite_map(&lam, &end, 3, 4, "e4")?;
    let mut gens = eps.to_vec();
    gens.extend([a1, e1, f1, d1]);
    let labels = ["1", "2", "3", "4"].map(String::from);
    let choice = IdempotentChoice::Supplied(labels.iter().cloned().zip(eps.iter().cloned()).collect());
    let e = subalgebra(&gamma, &gens, choice, 1000)?;
    if e.source().dim() != 9 {
        return Err(Error::TheoremViolation(format!("B′ has dimension {}, expected 9", e.source().dim())));
    }
    Ok(Fixture {
        name: "F4",
        description: "B′ in End(Λ ⊕ P(4)) for the kite algebra",
        order_b: Some(natural(e.source())),
        order_lambda: natural(&gamma),
        embedding: e,
    })
}

/// `k × M₂(Q)` on the basis `u, E11, E12, E21, E22`.
pub fn k_times_m2() -> Result<Arc<FDAlgebra>> {
    let f = Field::Rational;
    let n = 5;
    let unit = |i| vector::unit(f, n, i);
    let mut products = vec![vec![vector::zeros(f, n); n]; n];
    products[0][0] = unit(0);
    let idx = |i: usize, j: usize| 1 + 2 * i + j;
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                products[idx(i, j)][idx(j, l)] = unit(idx(i, l));
            }
        }
    }
    let labels = ["u", "E11", "E12", "E21", "E22"].map(String::from).to_vec();
    let one = vector::add(&vector::add(&unit(0), &unit(1)), &unit(4));
    let a = FDAlgebra::from_structure_constants(
        f,
        labels,
        &products,
        one,
        vec![unit(0), unit(1), unit(4)],
        vec!["1".into(), "2".into(), "2'".into()],
    )?;
    Ok(Arc::new(a))
}

/// `B = {(a, [[c, b], [0, a]])}`, with idempotents `(1, E22)` and
/// `(0, E11)` and radical spanned by `(0, E12)`.
pub fn f5() -> Result<Fixture> {
    let l = k_times_m2()?;
    let e = sub(&l, &["u + E22", "E11", "E12"], &[("1", "u + E22"), ("2", "E11")])?;
    Ok(Fixture {
        name: "F5",
        description: "the three-dimensional subalgebra of k × M2(Q)",
        order_b: Some(natural(e.source())),
        order_lambda: natural(&l),
        embedding: e,
    })
}

pub fn by_name(name: &str) -> Result<Fixture> {
    match name {
        "F0" => f0(),
        "F1" => f1(),
        "F2" => f2(),
        "F3" => f3(),
        "F4" => f4(),
        "F5" => f5(),
        _ => Err(Error::Precondition(format!("unknown fixture {name}; expected one of {NAMES:?}"))),
    }
}

pub fn all() -> Result<Vec<Fixture>> {
    NAMES.iter().map(|n| by_name(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f3_has_dimension_twelve() {
        assert_eq!(f3_algebra().unwrap().dim(), 12);
        let b = f3().unwrap();
        assert_eq!(b.embedding.source().dim(), 6);
        assert_eq!(b.embedding.source().radical().dim(), 3);
    }

    #[test]
    fn gamma_for_the_kite() {
        let (lam, end) = f4_gamma().unwrap();
        assert_eq!(lam.dim(), 13);
        assert_eq!(end.algebra.dim(), 18);
        assert_eq!(end.algebra.idempotents().len(), 5);
        assert_eq!(end.algebra.num_classes(), 4);
    }

    #[test]
    fn f4_borel_is_the_nine_dimensional_path_algebra() {
        let fx = f4().unwrap();
        let b = fx.embedding.source();
        assert_eq!(b.dim(), 9);
        assert_eq!(b.num_classes(), 4);
        assert_eq!(b.radical().dim(), 5);
    }

    #[test]
    fn f5_radical_is_one_dimensional() {
        let fx = f5().unwrap();
        assert_eq!(fx.embedding.source().dim(), 3);
        assert_eq!(fx.embedding.source().radical().dim(), 1);
        assert_eq!(fx.embedding.target().num_classes(), 2);
    }
}
