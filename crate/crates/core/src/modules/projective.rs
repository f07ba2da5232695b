use std::sync::Arc;

use super::{FDModule, Side};
use crate::algebra::FDAlgebra;
use crate::linalg::{Matrix, Scalar, Subspace, Vector};

/// `⊕_t A u_t` for idempotents `u_t` of `A` (not necessarily from the
/// algebra's chosen list). Elements are tuples of algebra elements with
/// the `t`-th one in `A u_t`.
#[derive(Clone, Debug)]
pub struct ProjectiveSum {
    algebra: Arc<FDAlgebra>,
    idempotents: Vec<Vector>,
    spaces: Vec<Subspace>,
    offsets: Vec<usize>,
    module: FDModule,
}

impl ProjectiveSum {
    pub fn new(algebra: Arc<FDAlgebra>, idempotents: Vec<Vector>) -> Self {
        let f = algebra.field();
        let mut spaces = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0;
        for u in &idempotents {
            let s = algebra.structure().corner(algebra.unit(), u);
            offsets.push(total);
            total += s.dim();
            spaces.push(s);
        }
        let action = (0..algebra.dim())
            .map(|i| {
                let l = &algebra.left_basis_mult()[i];
                let blocks: Vec<Matrix> =
                    spaces.iter().map(|s| s.coord_matrix().mul(&l.mul(&s.basis_matrix()))).collect();
                Matrix::block_diagonal(f, &blocks)
            })
            .collect();
        let module = if idempotents.is_empty() {
            FDModule::zero(algebra.clone(), Side::Left)
        } else {
            FDModule::new_unchecked(algebra.clone(), action, Side::Left)
        };
        ProjectiveSum { algebra, idempotents, spaces, offsets, module }
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        &self.algebra
    }

    pub fn module(&self) -> &FDModule {
        &self.module
    }

    pub fn idempotents(&self) -> &[Vector] {
        &self.idempotents
    }

    pub fn rank(&self) -> usize {
        self.idempotents.len()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn space(&self, t: usize) -> &Subspace {
        &self.spaces[t]
    }

    pub fn offset(&self, t: usize) -> usize {
        self.offsets[t]
    }

    /// Vector of the tuple of algebra elements.
    pub fn to_vector(&self, parts: &[Vector]) -> Vector {
        let mut v = Vec::with_capacity(self.dim());
        for (s, x) in self.spaces.iter().zip(parts) {
            v.extend(s.coords_unchecked(x));
        }
        v
    }

    /// Tuple of algebra elements of a vector.
    pub fn to_parts(&self, v: &[Scalar]) -> Vec<Vector> {
        self.spaces
            .iter()
            .zip(&self.offsets)
            .map(|(s, &o)| s.combine(&v[o..o + s.dim()]))
            .collect()
    }

    /// The generator `u_t` as a vector.
    pub fn generator(&self, t: usize) -> Vector {
        let mut parts: Vec<Vector> = (0..self.rank()).map(|_| self.algebra.zero()).collect();
        parts[t] = self.idempotents[t].clone();
        self.to_vector(&parts)
    }

    /// Matrix of the homomorphism to `n` sending `u_t` to `images[t]`
    /// (each `images[t]` must lie in `u_t N`).
    pub fn map_to(&self, n: &FDModule, images: &[Vector]) -> Matrix {
        let mut cols = Vec::with_capacity(self.dim());
        for (s, img) in self.spaces.iter().zip(images) {
            for y in s.basis() {
                cols.push(n.act_vec(y, img));
            }
        }
        Matrix::from_columns(n.field(), n.dim(), &cols)
    }

    /// `u_t N` as a subspace of `n`.
    pub fn generator_space(&self, t: usize, n: &FDModule) -> Subspace {
        n.idempotent_space(&self.idempotents[t])
    }
}

/// A surjection `⊕ A u_t -> M` with images `m_t` of the generators.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: ProjectiveSum,
    pub images: Vec<Vector>,
    pub map: Matrix,
    /// Simple class of each summand.
    pub classes: Vec<usize>,
}

/// Minimal projective cover: generators are lifts of a basis of the top,
/// chosen greedily among `e_c top(M)` for class representatives `e_c`.
pub fn projective_cover(m: &FDModule) -> ProjectiveCover {
    let a = m.algebra().clone();
    let (top, proj) = m.top();
    let sec = m.radical().quotient_section();
    let mut gens_top: Vec<Vector> = Vec::new();
    let mut idems = Vec::new();
    let mut images = Vec::new();
    let mut classes = Vec::new();
    let mut generated = Subspace::zero(m.field(), top.dim());
    for c in 0..a.num_classes() {
        let e = a.idempotents()[a.class_representative(c)].clone();
        let et = top.idempotent_space(&e);
        for t in et.basis() {
            if generated.contains(t) {
                continue;
            }
            gens_top.push(t.clone());
            generated = top.submodule_generated(&gens_top);
            // e * section(t) lies in eM and maps to e t = t.
            let lift = m.act_vec(&e, &sec.mul_vec(t));
            debug_assert_eq!(&proj.mul_vec(&lift), t);
            idems.push(e.clone());
            images.push(lift);
            classes.push(c);
        }
    }
    let projective = ProjectiveSum::new(a, idems);
    let map = projective.map_to(m, &images);
    ProjectiveCover { projective, images, map, classes }
}

/// Projective iff the projective cover is injective.
pub fn is_projective(m: &FDModule) -> bool {
    projective_cover(m).projective.dim() == m.dim()
}

impl FDModule {
    pub fn is_projective(&self) -> bool {
        is_projective(self)
    }

    pub fn projective_cover(&self) -> ProjectiveCover {
        projective_cover(self)
    }
}
