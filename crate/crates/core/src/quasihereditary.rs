//! Standard and costandard modules, Δ-filtrations and the quasi-hereditary
//! and directedness verdicts for an explicit order on the simple classes.

use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::algebra::FDAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, Subspace, Vector};
use crate::modules::{ext_dim, find_isomorphism, hom_dim, injective, projective, simple, FDModule, ModuleHom};

/// A total order on the simple classes. `sequence` lists classes from the
/// smallest to the largest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleOrder {
    sequence: Vec<usize>,
    position: Vec<usize>,
}

impl SimpleOrder {
    pub fn new(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        let mut position = vec![usize::MAX; n];
        for (p, &c) in sequence.iter().enumerate() {
            if c >= n || position[c] != usize::MAX {
                return Err(Error::Precondition(format!("{sequence:?} is not a permutation of the simple classes")));
            }
            position[c] = p;
        }
        Ok(SimpleOrder { sequence, position })
    }

    /// Class order of the algebra.
    pub fn natural(a: &FDAlgebra) -> Self {
        SimpleOrder::new((0..a.num_classes()).collect()).expect("identity permutation")
    }

    /// An order from class labels, smallest first.
    pub fn from_labels(a: &FDAlgebra, labels: &[String]) -> Result<Self> {
        if labels.len() != a.num_classes() {
            return Err(Error::Precondition(format!(
                "order names {} classes, the algebra has {}",
                labels.len(),
                a.num_classes()
            )));
        }
        let seq = labels
            .iter()
            .map(|l| {
                a.class_index(l).ok_or_else(|| Error::Precondition(format!("{l} is not a simple class label")))
            })
            .collect::<Result<Vec<_>>>()?;
        SimpleOrder::new(seq)
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.position[i] < self.position[j]
    }

    fn check(&self, a: &FDAlgebra) -> Result<()> {
        if self.len() != a.num_classes() {
            return Err(Error::Precondition(format!(
                "order has {} classes, the algebra has {}",
                self.len(),
                a.num_classes()
            )));
        }
        Ok(())
    }
}

/// A standard module `Δ(i) = P(i) / U` with the data needed to map it.
#[derive(Clone, Debug)]
pub struct Standard {
    pub class: usize,
    pub module: FDModule,
    /// Basis of `P(i) = A e` inside `A`.
    pub projective_basis: Subspace,
    /// `Δ(i)` coordinates to `P(i)` coordinates.
    pub section: Matrix,
}

impl Standard {
    /// The element of `A e` lifting a vector of `Δ(i)`.
    fn lift(&self, v: &[crate::linalg::Scalar]) -> Vector {
        self.projective_basis.combine(&self.section.mul_vec(v))
    }

    /// The map `Δ(i) -> N` sending the generator `ē` to `n`, when it is
    /// well defined.
    fn map_generator(&self, n: &FDModule, target: &[crate::linalg::Scalar]) -> Matrix {
        let f = n.field();
        let cols: Vec<Vector> =
            (0..self.module.dim()).map(|k| n.act_vec(&self.lift(&vector::unit(f, self.module.dim(), k)), target)).collect();
        Matrix::from_columns(f, n.dim(), &cols)
    }
}

#[derive(Clone, Debug)]
pub struct StandardSystem {
    pub algebra: Arc<FDAlgebra>,
    pub order: SimpleOrder,
    /// Indexed by class.
    pub delta: Vec<Standard>,
    pub nabla: Vec<FDModule>,
}

impl StandardSystem {
    pub fn delta_dims(&self) -> Vec<Vec<usize>> {
        self.delta.iter().map(|d| d.module.dimension_vector()).collect()
    }

    pub fn nabla_dims(&self) -> Vec<Vec<usize>> {
        self.nabla.iter().map(FDModule::dimension_vector).collect()
    }
}

fn class_idempotent(a: &FDAlgebra, c: usize) -> &Vector {
    &a.idempotents()[a.class_representative(c)]
}

/// `Δ(i) = P(i) / Σ_{j>i} tr_{P(j)} P(i)`.
pub fn standard_module(a: &Arc<FDAlgebra>, order: &SimpleOrder, i: usize) -> Standard {
    let (p, basis) = projective(a, i);
    let higher: Vec<Vector> = (0..a.num_classes())
        .filter(|&j| order.less(i, j))
        .flat_map(|j| p.idempotent_space(class_idempotent(a, j)).basis().to_vec())
        .collect();
    let trace = p.submodule_generated(&higher);
    let (module, _, section) = p.quotient(&trace);
    Standard { class: i, module, projective_basis: basis, section }
}

/// Largest submodule of `I(i)` with composition factors `L(j)`, `j ≤ i`,
/// by climbing the socle series and keeping only the allowed classes.
pub fn costandard_module(a: &Arc<FDAlgebra>, order: &SimpleOrder, i: usize) -> FDModule {
    let inj = injective(a, i);
    let allowed: Vec<usize> = (0..a.num_classes()).filter(|&j| j == i || order.less(j, i)).collect();
    let f = a.field();
    let mut current = Subspace::zero(f, inj.dim());
    loop {
        let (q, _, sec) = inj.quotient(&current);
        let soc = q.socle();
        let (s, incl) = q.submodule(&soc);
        let gens: Vec<Vector> =
            allowed.iter().flat_map(|&j| s.idempotent_space(class_idempotent(a, j)).basis().to_vec()).collect();
        let good = s.submodule_generated(&gens);
        if good.is_zero() {
            break;
        }
        let lifted: Vec<Vector> = good.basis().iter().map(|v| sec.mul_vec(&incl.mul_vec(v))).collect();
        current = current.sum(&Subspace::span(f, inj.dim(), lifted));
    }
    inj.submodule(&current).0
}

pub fn standard_modules(a: &Arc<FDAlgebra>, order: &SimpleOrder) -> Result<StandardSystem> {
    order.check(a)?;
    let delta = (0..a.num_classes()).map(|i| standard_module(a, order, i)).collect();
    let nabla = (0..a.num_classes()).map(|i| costandard_module(a, order, i)).collect();
    Ok(StandardSystem { algebra: a.clone(), order: order.clone(), delta, nabla })
}

/// One layer `M_t / M_{t-1} ≅ Δ(class)`, witnessed by a map `Δ(class) -> M`
/// that becomes an isomorphism onto the layer modulo `M_{t-1}`.
#[derive(Clone, Debug, Serialize)]
pub struct FiltrationLayer {
    pub class: usize,
    pub label: String,
    pub dim: usize,
    #[serde(skip)]
    pub map: Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationCertificate {
    pub layers: Vec<FiltrationLayer>,
    /// `M_0 = 0 ⊆ M_1 ⊆ … ⊆ M_s = M`.
    #[serde(skip)]
    pub chain: Vec<Subspace>,
}

impl FiltrationCertificate {
    /// Multiplicity `(M : Δ(i))` per class.
    pub fn multiplicities(&self, classes: usize) -> Vec<usize> {
        let mut out = vec![0; classes];
        for l in &self.layers {
            out[l.class] += 1;
        }
        out
    }

    /// Checks the certificate independently of how it was found.
    pub fn verify(&self, m: &FDModule, system: &StandardSystem) -> Result<()> {
        let f = m.field();
        let bad = |t: usize, why: &str| Err(Error::TheoremViolation(format!("filtration layer {t}: {why}")));
        if self.chain.len() != self.layers.len() + 1 || !self.chain[0].is_zero() {
            return bad(0, "chain does not start at zero");
        }
        if self.chain.last().map(Subspace::dim) != Some(m.dim()) {
            return bad(self.layers.len(), "chain does not end at the module");
        }
        let total: usize = self.layers.iter().map(|l| system.delta[l.class].module.dim()).sum();
        if total != m.dim() {
            return bad(self.layers.len(), "layer dimensions do not add up");
        }
        for (t, layer) in self.layers.iter().enumerate() {
            let (lower, upper) = (&self.chain[t], &self.chain[t + 1]);
            let delta = &system.delta[layer.class].module;
            if !m.is_submodule(upper) || !upper.contains_space(lower) {
                return bad(t + 1, "not a chain of submodules");
            }
            let image = Subspace::span(f, m.dim(), layer.map.columns());
            if lower.sum(&image) != *upper || upper.dim() - lower.dim() != delta.dim() {
                return bad(t + 1, "map does not cover the layer bijectively");
            }
            for (x, d) in m.actions().iter().zip(delta.actions()) {
                let diff = x.mul(&layer.map).sub(&layer.map.mul(d));
                if !diff.columns().iter().all(|c| lower.contains(c)) {
                    return bad(t + 1, "map does not intertwine modulo the previous step");
                }
            }
        }
        Ok(())
    }
}

/// Where the greedy extraction stopped.
#[derive(Clone, Debug, Serialize)]
pub struct FiltrationFailure {
    pub stage: usize,
    pub class: usize,
    pub label: String,
    pub reason: String,
    /// The offending submodule, as vectors of the original module.
    #[serde(skip)]
    pub submodule: Subspace,
}

/// Greedy Δ-filtration: the largest class present generates the bottom
/// layer, which must be a direct sum of copies of its standard module.
pub fn delta_filtration(
    m: &FDModule,
    system: &StandardSystem,
) -> Result<std::result::Result<FiltrationCertificate, FiltrationFailure>> {
    let a = m.algebra().clone();
    if !crate::algebra::same_algebra(&a, &system.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let mut chain = vec![Subspace::zero(f, m.dim())];
    let mut layers = Vec::new();
    let mut current = m.clone();
    // `current` coordinates to `m` coordinates, modulo the last chain entry.
    let mut lift = Matrix::identity(f, m.dim());
    let mut stage = 0;
    while current.dim() > 0 {
        stage += 1;
        let j = *system
            .order
            .sequence()
            .iter()
            .rev()
            .find(|&&c| current.act(class_idempotent(&a, c)).rank() > 0)
            .expect("a nonzero module has a nonzero idempotent component");
        let std = &system.delta[j];
        let ej = class_idempotent(&a, j);
        let top = current.idempotent_space(ej);
        let n = current.submodule_generated(top.basis());
        let fail = |reason: String| FiltrationFailure {
            stage,
            class: j,
            label: a.class_labels()[j].clone(),
            reason,
            submodule: Subspace::span(f, m.dim(), n.basis().iter().map(|v| lift.mul_vec(v)).collect()),
        };
        let per = std.module.act(ej).rank();
        if per == 0 || top.dim() % per != 0 {
            return Ok(Err(fail(format!("dim e M = {} is not a multiple of dim e Δ = {per}", top.dim()))));
        }
        let mult = top.dim() / per;
        if n.dim() != mult * std.module.dim() {
            return Ok(Err(fail(format!(
                "generated submodule has dimension {}, expected {} copies of Δ of dimension {}",
                n.dim(),
                mult,
                std.module.dim()
            ))));
        }
        let maps: Vec<Matrix> = if per == 1 {
            top.basis().iter().map(|t| std.map_generator(&current, t)).collect()
        } else {
            // Several basis vectors per copy: fall back to a searched isomorphism.
            let (nm, incl) = current.submodule(&n);
            let sum = FDModule::direct_sum_all(a.clone(), m.side(), &vec![std.module.clone(); mult]);
            match find_isomorphism(&sum, &nm)? {
                Some(iso) => {
                    let whole = incl.mul(&iso.matrix);
                    (0..mult)
                        .map(|c| whole.select_cols(&(c * std.module.dim()..(c + 1) * std.module.dim()).collect_vec()))
                        .collect()
                }
                None => return Ok(Err(fail("no isomorphism to a sum of standard modules was found".into()))),
            }
        };
        let stacked = maps.iter().skip(1).fold(maps[0].clone(), |acc, x| acc.hstack(x));
        let ok = stacked.rank() == n.dim()
            && maps.iter().all(|mp| {
                current.actions().iter().zip(std.module.actions()).all(|(x, d)| x.mul(mp) == mp.mul(d))
            });
        if !ok {
            return Ok(Err(fail(format!("the bottom layer is not a sum of copies of Δ({})", a.class_labels()[j]))));
        }
        for mp in &maps {
            let in_m = lift.mul(mp);
            let prev = chain.last().unwrap().clone();
            chain.push(prev.sum(&Subspace::span(f, m.dim(), in_m.columns())));
            layers.push(FiltrationLayer {
                class: j,
                label: a.class_labels()[j].clone(),
                dim: std.module.dim(),
                map: in_m,
            });
        }
        let (q, _, sec) = current.quotient(&n);
        lift = lift.mul(&sec);
        current = q;
    }
    Ok(Ok(FiltrationCertificate { layers, chain }))
}

#[derive(Clone, Debug, Serialize)]
pub struct QhVerdict {
    pub quasi_hereditary: bool,
    pub order: Vec<String>,
    /// Dimension vectors of `Δ(i)` in class order.
    pub delta_dims: Vec<Vec<usize>>,
    pub nabla_dims: Vec<Vec<usize>>,
    /// `dim End(Δ(i))`.
    pub end_dims: Vec<usize>,
    pub qh1: bool,
    pub qh4: bool,
    /// Checked only when (QH1) and (QH4) hold.
    pub qh2: Option<bool>,
    pub qh3: Option<bool>,
    pub certificates: Vec<Option<FiltrationCertificate>>,
    pub failures: Vec<FiltrationFailure>,
    /// False when some simple has a larger endomorphism ring; the verdict
    /// is then conditional.
    pub split: bool,
}

pub fn is_quasi_hereditary(a: &Arc<FDAlgebra>, order: &SimpleOrder) -> Result<(QhVerdict, StandardSystem)> {
    let system = standard_modules(a, order)?;
    let n = a.num_classes();
    let end_dims = system.delta.iter().map(|d| hom_dim(&d.module, &d.module)).collect::<Result<Vec<_>>>()?;
    let qh1 = end_dims.iter().all(|&d| d == 1);
    let mut certificates = Vec::new();
    let mut failures = Vec::new();
    for c in 0..n {
        let (p, _) = projective(a, c);
        match delta_filtration(&p, &system)? {
            Ok(cert) => {
                cert.verify(&p, &system)?;
                certificates.push(Some(cert));
            }
            Err(fail) => {
                certificates.push(None);
                failures.push(fail);
            }
        }
    }
    let qh4 = failures.is_empty();
    let (mut qh2, mut qh3) = (None, None);
    if qh1 && qh4 {
        let mut h = true;
        let mut e = true;
        for (i, j) in (0..n).cartesian_product(0..n) {
            let (di, dj) = (&system.delta[i].module, &system.delta[j].module);
            if hom_dim(di, dj)? != 0 && !(i == j || order.less(i, j)) {
                h = false;
            }
            if ext_dim(di, dj, 1)? != 0 && !order.less(i, j) {
                e = false;
            }
        }
        if !h || !e {
            return Err(Error::TheoremViolation(format!(
                "(QH1) and (QH4) hold but (QH2) = {h}, (QH3) = {e}"
            )));
        }
        qh2 = Some(h);
        qh3 = Some(e);
    }
    let verdict = QhVerdict {
        quasi_hereditary: qh1 && qh4,
        order: order.sequence().iter().map(|&c| a.class_labels()[c].clone()).collect(),
        delta_dims: system.delta_dims(),
        nabla_dims: system.nabla_dims(),
        end_dims,
        qh1,
        qh4,
        qh2,
        qh3,
        certificates,
        failures,
        split: a.is_split(),
    };
    Ok((verdict, system))
}

/// Quasi-hereditary with `Δ(i) ≅ L(i)`, certified by explicit isomorphisms.
pub fn is_directed(a: &Arc<FDAlgebra>, order: &SimpleOrder) -> Result<bool> {
    let (v, system) = is_quasi_hereditary(a, order)?;
    if !v.quasi_hereditary {
        return Ok(false);
    }
    for (c, d) in system.delta.iter().enumerate() {
        let l = simple(a, c);
        match find_isomorphism(&d.module, &l)? {
            Some(h) if ModuleHom::new(h.source.clone(), h.target.clone(), h.matrix.clone()).is_ok() => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Brute force over all orders; only for at most six classes.
pub fn order_search(a: &Arc<FDAlgebra>) -> Result<Option<SimpleOrder>> {
    let n = a.num_classes();
    if n > 6 {
        return Err(Error::Precondition(format!("order search is limited to 6 classes, got {n}")));
    }
    for perm in (0..n).permutations(n) {
        let order = SimpleOrder::new(perm)?;
        if is_quasi_hereditary(a, &order)?.0.quasi_hereditary {
            return Ok(Some(order));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Quiver, QuiverPresentation};
    use crate::linalg::Field;

    fn quiver_algebra(vertices: &[&str], arrows: &[(&str, &str, &str)], rels: &[&str], bound: usize) -> Arc<FDAlgebra> {
        let q = Quiver::from_triples(vertices, arrows).unwrap();
        let p = QuiverPresentation::parse(Field::Rational, q, rels, bound).unwrap();
        Arc::new(FDAlgebra::from_quiver(Field::Rational, p).unwrap())
    }

    fn kite() -> Arc<FDAlgebra> {
        quiver_algebra(
            &["1", "2", "3", "4"],
            &[("a", "3", "4"), ("c", "3", "1"), ("d", "1", "2"), ("b", "4", "2"), ("e", "2", "3")],
            &["d*c - b*a", "a*e", "e*b"],
            8,
        )
    }

    #[test]
    fn kite_standard_modules() {
        let a = kite();
        let (v, system) = is_quasi_hereditary(&a, &SimpleOrder::natural(&a)).unwrap();
        assert!(v.quasi_hereditary, "{v:?}");
        assert_eq!(
            system.delta_dims(),
            vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 0, 1, 0], vec![0, 1, 0, 1]]
        );
        let reg = FDModule::regular(a.clone());
        let cert = delta_filtration(&reg, &system).unwrap().unwrap();
        cert.verify(&reg, &system).unwrap();
        assert!(!is_directed(&a, &SimpleOrder::natural(&a)).unwrap());
    }

    #[test]
    fn loop_algebra_is_not_quasi_hereditary() {
        let a = quiver_algebra(&["1"], &[("x", "1", "1")], &["x*x"], 3);
        let (v, _) = is_quasi_hereditary(&a, &SimpleOrder::natural(&a)).unwrap();
        assert!(!v.qh1);
        assert!(!v.quasi_hereditary);
        assert_eq!(v.end_dims, vec![2]);
        assert!(order_search(&a).unwrap().is_none());
    }

    #[test]
    fn semisimple_is_directed() {
        let m2 = Arc::new(FDAlgebra::matrix_algebra(Field::Rational, 2));
        assert!(is_directed(&m2, &SimpleOrder::natural(&m2)).unwrap());
        let a = quiver_algebra(&["1", "2"], &[], &[], 2);
        assert!(is_directed(&a, &SimpleOrder::new(vec![1, 0]).unwrap()).unwrap());
    }

    #[test]
    fn costandard_is_dual_of_opposite_standard() {
        let a = kite();
        let order = SimpleOrder::natural(&a);
        let system = standard_modules(&a, &order).unwrap();
        let op = Arc::new(a.opposite());
        let op_system = standard_modules(&op, &order).unwrap();
        for c in 0..4 {
            let d = op_system.delta[c].module.dual().over(a.clone()).unwrap();
            assert!(find_isomorphism(&d, &system.nabla[c]).unwrap().is_some(), "class {c}");
        }
    }

    #[test]
    fn a3_is_directed_only_in_the_natural_order() {
        let a = quiver_algebra(&["1", "2", "3"], &[("g", "1", "2"), ("a", "2", "3")], &[], 3);
        assert!(is_directed(&a, &SimpleOrder::natural(&a)).unwrap());
        let reversed = SimpleOrder::new(vec![2, 1, 0]).unwrap();
        let (v, _) = is_quasi_hereditary(&a, &reversed).unwrap();
        assert!(v.quasi_hereditary);
        assert!(!is_directed(&a, &reversed).unwrap());
    }

    #[test]
    fn bad_order_is_rejected() {
        assert!(SimpleOrder::new(vec![0, 0]).is_err());
    }
}
