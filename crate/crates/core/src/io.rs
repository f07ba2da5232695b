//! JSON problem files.
//!
//! ```json
//! {
//!   "field": "Q",
//!   "algebra": {"quiver": {"vertices": ["1", "2"], "arrows": [{"label": "x", "source": "1", "target": "2"}],
//!                          "relations": [], "bound": 4}},
//!   "subalgebra": {"arrows": ["x"]},
//!   "order": ["1", "2"],
//!   "options": {"extCutoffOverride": 3}
//! }
//! ```
//!
//! Scalars are integers or strings such as `"-1/2"`. Elements are either
//! coordinate lists or expressions over basis, idempotent and arrow labels
//! (`"d*c - b*a"`, products right to left).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    parse_elements, subalgebra, AlgebraEmbedding, FDAlgebra, IdempotentChoice, Quiver, QuiverPresentation,
};
use crate::borel::BorelOptions;
use crate::coring::{Coring, SearchBudget};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::linalg::{Field, Matrix, Rational, Scalar, Subspace, Vector};
use crate::modules::Bimodule;
use crate::quasihereditary::SimpleOrder;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ProblemFile {
    pub field: Field,
    /// A built-in fixture supplying algebra, subalgebra and orders.
    #[serde(default)]
    pub fixture: Option<String>,
    #[serde(default)]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default)]
    pub subalgebra: Option<SubalgebraSpec>,
    /// Simple-class labels of `Λ`, smallest first.
    #[serde(default)]
    pub order: Option<Vec<String>>,
    /// Simple-class labels of `B`, paired with `order` by position.
    #[serde(default)]
    pub order_b: Option<Vec<String>>,
    #[serde(default)]
    pub bocs: Option<BocsSpec>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum AlgebraSpec {
    Quiver(QuiverSpec),
    Structure(StructureSpec),
    /// The full matrix algebra `M_n`.
    Matrix(usize),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<crate::algebra::Arrow>,
    #[serde(default)]
    pub relations: Vec<String>,
    /// Falls back to `options.pathLengthBound`, then 8.
    #[serde(default)]
    pub bound: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureSpec {
    pub basis: Vec<String>,
    /// `products[i][j]` expands `b_i * b_j`.
    pub products: Vec<Vec<Vec<JsonScalar>>>,
    pub unit: Vec<JsonScalar>,
    pub idempotents: Vec<NamedElement>,
    /// A basis of the radical. Required over prime fields, where it cannot
    /// be computed from the trace form; it is certified on loading.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<Vec<Vec<JsonScalar>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonScalar {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Expr(String),
    Coords(Vec<JsonScalar>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedElement {
    pub label: String,
    pub element: ElementSpec,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubalgebraSpec {
    #[serde(default)]
    pub generators: Vec<ElementSpec>,
    /// Subquiver arrows; all trivial paths are added.
    #[serde(default)]
    pub arrows: Vec<String>,
    #[serde(default)]
    pub idempotents: Option<Vec<NamedElement>>,
}

/// A coring given by its base, bimodule actions on the basis of the base,
/// `μ` as sums of pure tensors `[coefficient, i, j]` of basis vectors, and
/// `ε` as a `dim B x dim W` matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BocsSpec {
    pub base: AlgebraSpec,
    pub dim: usize,
    pub left: Vec<Vec<Vec<JsonScalar>>>,
    pub right: Vec<Vec<Vec<JsonScalar>>>,
    pub comult: Vec<Vec<(JsonScalar, usize, usize)>>,
    pub counit: Vec<Vec<JsonScalar>>,
    #[serde(default)]
    pub order: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct Options {
    #[serde(default)]
    pub path_length_bound: Option<usize>,
    #[serde(default)]
    pub ext_cutoff_override: Option<usize>,
    #[serde(default)]
    pub group_like_budget: Option<usize>,
    #[serde(default)]
    pub primes_for_enumeration: Option<Vec<u64>>,
}

impl Options {
    pub fn borel(&self) -> BorelOptions {
        let mut o = BorelOptions { cutoff_override: self.ext_cutoff_override, ..BorelOptions::default() };
        if let Some(n) = self.group_like_budget {
            o.budget.nodes = n;
        }
        if let Some(p) = &self.primes_for_enumeration {
            o.budget.primes = p.clone();
        }
        o
    }

    pub fn budget(&self) -> SearchBudget {
        self.borel().budget
    }
}

/// A parsed problem with every structure built and validated.
#[derive(Clone, Debug)]
pub struct Problem {
    pub field: Field,
    pub lambda: Option<Arc<FDAlgebra>>,
    pub embedding: Option<AlgebraEmbedding>,
    pub order_lambda: Option<SimpleOrder>,
    pub order_b: Option<SimpleOrder>,
    pub bocs: Option<Coring>,
    pub options: Options,
}

fn input(pointer: &str, e: impl std::fmt::Display) -> Error {
    Error::Input { pointer: pointer.into(), message: e.to_string() }
}

/// Wraps construction errors with a location; hard errors pass through.
fn at<T>(pointer: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::TheoremViolation(_) | Error::Input { .. } => e,
        other => input(pointer, other),
    })
}

/// serde paths such as `algebra.quiver.arrows[0]` as JSON pointers.
fn json_pointer(path: &str) -> String {
    if path == "." {
        return String::new();
    }
    let mut out = String::new();
    for seg in path.split('.') {
        let (name, rest) = seg.split_once('[').map_or((seg, ""), |(a, b)| (a, b));
        if !name.is_empty() {
            out.push('/');
            out.push_str(&name.replace('~', "~0").replace('/', "~1"));
        }
        for idx in rest.split('[').filter(|s| !s.is_empty()) {
            out.push('/');
            out.push_str(idx.trim_end_matches(']'));
        }
    }
    out
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = json_pointer(&e.path().to_string());
        input(&pointer, e.into_inner())
    })
}

fn scalar(f: Field, s: &JsonScalar, pointer: &str) -> Result<Scalar> {
    let r = match s {
        JsonScalar::Int(n) => Rational::from_int(*n),
        JsonScalar::Text(t) => t.trim().parse::<Rational>().map_err(|e| input(pointer, e))?,
    };
    f.from_rational(&r).ok_or_else(|| input(pointer, format!("{r} has no image in {f}")))
}

fn scalars(f: Field, v: &[JsonScalar], pointer: &str) -> Result<Vector> {
    v.iter().enumerate().map(|(i, s)| scalar(f, s, &format!("{pointer}/{i}"))).collect()
}

/// Rows of a matrix.
fn matrix(f: Field, rows: &[Vec<JsonScalar>], cols: usize, pointer: &str) -> Result<Matrix> {
    let rs = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            if r.len() != cols {
                return Err(input(&format!("{pointer}/{i}"), format!("expected {cols} entries, found {}", r.len())));
            }
            scalars(f, r, &format!("{pointer}/{i}"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(f, cols, rs))
}

fn element(a: &FDAlgebra, e: &ElementSpec, pointer: &str) -> Result<Vector> {
    match e {
        ElementSpec::Expr(s) => Ok(at(pointer, parse_elements(a, &[s.as_str()]))?.remove(0)),
        ElementSpec::Coords(c) => {
            if c.len() != a.dim() {
                return Err(input(pointer, format!("expected {} coordinates, found {}", a.dim(), c.len())));
            }
            scalars(a.field(), c, pointer)
        }
    }
}

pub fn build_algebra(f: Field, spec: &AlgebraSpec, opts: &Options, pointer: &str) -> Result<Arc<FDAlgebra>> {
    match spec {
        AlgebraSpec::Matrix(n) => {
            if *n == 0 {
                return Err(input(&format!("{pointer}/matrix"), "size must be positive"));
            }
            Ok(Arc::new(FDAlgebra::matrix_algebra(f, *n)))
        }
        AlgebraSpec::Quiver(q) => {
            let p = format!("{pointer}/quiver");
            let quiver = at(&p, Quiver::new(q.vertices.clone(), q.arrows.clone()))?;
            let rels: Vec<&str> = q.relations.iter().map(String::as_str).collect();
            let bound = q.bound.or(opts.path_length_bound).unwrap_or(8);
            let pres = at(&format!("{p}/relations"), QuiverPresentation::parse(f, quiver, &rels, bound))?;
            Ok(Arc::new(at(&p, FDAlgebra::from_quiver(f, pres))?))
        }
        AlgebraSpec::Structure(s) => {
            let p = format!("{pointer}/structure");
            let n = s.basis.len();
            if s.products.len() != n {
                return Err(input(&format!("{p}/products"), format!("expected {n} rows")));
            }
            let mut products = Vec::with_capacity(n);
            for (i, row) in s.products.iter().enumerate() {
                if row.len() != n {
                    return Err(input(&format!("{p}/products/{i}"), format!("expected {n} entries")));
                }
                let row = row
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let q = format!("{p}/products/{i}/{j}");
                        if v.len() != n {
                            return Err(input(&q, format!("expected {n} coordinates")));
                        }
                        scalars(f, v, &q)
                    })
                    .collect::<Result<Vec<_>>>()?;
                products.push(row);
            }
            if s.unit.len() != n {
                return Err(input(&format!("{p}/unit"), format!("expected {n} coordinates")));
            }
            let unit = scalars(f, &s.unit, &format!("{p}/unit"))?;
            let mut idem = Vec::new();
            let mut labels = Vec::new();
            for (i, e) in s.idempotents.iter().enumerate() {
                let q = format!("{p}/idempotents/{i}/element");
                match &e.element {
                    ElementSpec::Coords(c) if c.len() == n => idem.push(scalars(f, c, &q)?),
                    _ => return Err(input(&q, format!("idempotents are given by {n} coordinates"))),
                }
                labels.push(e.label.clone());
            }
            let radical = match &s.radical {
                None => None,
                Some(rows) => {
                    let q = format!("{p}/radical");
                    let vecs = rows
                        .iter()
                        .enumerate()
                        .map(|(i, r)| {
                            if r.len() != n {
                                return Err(input(&format!("{q}/{i}"), format!("expected {n} coordinates")));
                            }
                            scalars(f, r, &format!("{q}/{i}"))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Some(Subspace::span(f, n, vecs))
                }
            };
            Ok(Arc::new(at(
                &p,
                FDAlgebra::from_structure_constants_with_radical(f, s.basis.clone(), &products, unit, idem, labels, radical),
            )?))
        }
    }
}

fn build_subalgebra(lambda: &Arc<FDAlgebra>, s: &SubalgebraSpec) -> Result<AlgebraEmbedding> {
    let p = "/subalgebra";
    let mut gens = Vec::new();
    for (i, g) in s.generators.iter().enumerate() {
        gens.push(element(lambda, g, &format!("{p}/generators/{i}"))?);
    }
    if !s.arrows.is_empty() {
        let Some(q) = lambda.quiver() else {
            return Err(input(&format!("{p}/arrows"), "subquiver arrows need a quiver-presented algebra"));
        };
        for v in 0..q.quiver.vertices().len() {
            gens.push(lambda.resolve_name(&q.quiver.trivial_label(v)).expect("trivial paths are named"));
        }
        for (i, a) in s.arrows.iter().enumerate() {
            let v = lambda.resolve_name(a).ok_or_else(|| input(&format!("{p}/arrows/{i}"), format!("unknown arrow {a}")))?;
            gens.push(v);
        }
    }
    let choice = match &s.idempotents {
        None => IdempotentChoice::Auto,
        Some(list) => IdempotentChoice::Supplied(
            list.iter()
                .enumerate()
                .map(|(i, e)| Ok((e.label.clone(), element(lambda, &e.element, &format!("{p}/idempotents/{i}/element"))?)))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    at(p, subalgebra(lambda, &gens, choice, 10_000))
}

fn build_order(a: &FDAlgebra, labels: Option<&Vec<String>>, pointer: &str) -> Result<SimpleOrder> {
    match labels {
        None => Ok(SimpleOrder::natural(a)),
        Some(l) => at(pointer, SimpleOrder::from_labels(a, l)),
    }
}

fn build_bocs(f: Field, spec: &BocsSpec, opts: &Options) -> Result<(Coring, SimpleOrder)> {
    let p = "/bocs";
    let base = build_algebra(f, &spec.base, opts, &format!("{p}/base"))?;
    let n = base.dim();
    let actions = |list: &[Vec<Vec<JsonScalar>>], name: &str| -> Result<Vec<Matrix>> {
        if list.len() != n {
            return Err(input(&format!("{p}/{name}"), format!("expected one matrix per basis element of the base ({n})")));
        }
        list.iter()
            .enumerate()
            .map(|(i, m)| {
                let q = format!("{p}/{name}/{i}");
                if m.len() != spec.dim {
                    return Err(input(&q, format!("expected {} rows", spec.dim)));
                }
                matrix(f, m, spec.dim, &q)
            })
            .collect()
    };
    let left = actions(&spec.left, "left")?;
    let right = actions(&spec.right, "right")?;
    let w = at(p, Bimodule::new(base.clone(), base.clone(), left, right))?;
    if spec.comult.len() != spec.dim {
        return Err(input(&format!("{p}/comult"), format!("expected {} entries", spec.dim)));
    }
    let mut comult = Vec::new();
    for (k, terms) in spec.comult.iter().enumerate() {
        let mut out = Vec::new();
        for (t, (c, i, j)) in terms.iter().enumerate() {
            let q = format!("{p}/comult/{k}/{t}");
            if *i >= spec.dim || *j >= spec.dim {
                return Err(input(&q, "basis index out of range"));
            }
            out.push((scalar(f, c, &format!("{q}/0"))?, *i, *j));
        }
        comult.push(out);
    }
    if spec.counit.len() != n {
        return Err(input(&format!("{p}/counit"), format!("expected {n} rows")));
    }
    let counit = matrix(f, &spec.counit, spec.dim, &format!("{p}/counit"))?;
    let c = at(p, Coring::from_pure_tensors(w, &comult, counit))?;
    let order = build_order(&base, spec.order.as_ref(), &format!("{p}/order"))?;
    Ok((c, order))
}

pub fn build_problem(file: &ProblemFile) -> Result<Problem> {
    let f = file.field;
    let mut problem = Problem {
        field: f,
        lambda: None,
        embedding: None,
        order_lambda: None,
        order_b: None,
        bocs: None,
        options: file.options.clone(),
    };
    if let Some(name) = &file.fixture {
        if f != Field::Rational {
            return Err(input("/field", "built-in fixtures are defined over Q"));
        }
        if file.algebra.is_some() || file.subalgebra.is_some() {
            return Err(input("/fixture", "a fixture replaces algebra and subalgebra"));
        }
        let fx = at("/fixture", fixtures::by_name(name))?;
        problem.lambda = Some(fx.embedding.target().clone());
        problem.order_lambda = Some(fx.order_lambda.clone());
        problem.order_b = fx.order_b.clone();
        problem.embedding = Some(fx.embedding);
    } else if let Some(spec) = &file.algebra {
        let lambda = build_algebra(f, spec, &file.options, "/algebra")?;
        problem.order_lambda = Some(build_order(&lambda, file.order.as_ref(), "/order")?);
        if let Some(s) = &file.subalgebra {
            let e = build_subalgebra(&lambda, s)?;
            problem.order_b = Some(build_order(e.source(), file.order_b.as_ref(), "/orderB")?);
            problem.embedding = Some(e);
        }
        problem.lambda = Some(lambda);
    } else if file.subalgebra.is_some() {
        return Err(input("/subalgebra", "a subalgebra needs an algebra"));
    }
    if let (Some(lambda), Some(o), Some(_)) = (&problem.lambda, &file.order, &file.fixture) {
        problem.order_lambda = Some(build_order(lambda, Some(o), "/order")?);
    }
    if let Some(spec) = &file.bocs {
        let (c, order) = build_bocs(f, spec, &file.options)?;
        problem.bocs = Some(c);
        if problem.order_b.is_none() {
            problem.order_b = Some(order);
        }
    }
    Ok(problem)
}

pub fn load_problem(text: &str) -> Result<Problem> {
    build_problem(&parse_problem(text)?)
}

fn text(v: &[Scalar]) -> Vec<JsonScalar> {
    v.iter().map(|x| JsonScalar::Text(x.to_string())).collect()
}

fn rows(m: &Matrix) -> Vec<Vec<JsonScalar>> {
    m.row_vecs().iter().map(|r| text(r)).collect()
}

/// Structure constants of `a`, readable back by [`build_algebra`].
pub fn algebra_spec(a: &FDAlgebra) -> AlgebraSpec {
    let n = a.dim();
    let products = (0..n)
        .map(|i| (0..n).map(|j| text(&a.mul(&a.basis_element(i), &a.basis_element(j)))).collect())
        .collect();
    AlgebraSpec::Structure(StructureSpec {
        basis: a.basis_labels().to_vec(),
        products,
        unit: text(a.unit()),
        idempotents: a
            .idempotents()
            .iter()
            .zip(a.idempotent_labels())
            .map(|(e, l)| NamedElement { label: l.clone(), element: ElementSpec::Coords(text(e)) })
            .collect(),
        radical: Some(a.radical().basis().iter().map(|r| text(r)).collect()),
    })
}

/// A coring in the input format, with `μ` expanded into pure tensors of
/// basis vectors.
pub fn bocs_spec(c: &Coring, order: Option<&SimpleOrder>) -> BocsSpec {
    let b = c.base();
    let w = c.bimodule();
    let n = c.dim();
    let comult = (0..n)
        .map(|k| {
            let image = c.comultiply(&crate::linalg::vector::unit(c.field(), n, k));
            let mut acc = std::collections::BTreeMap::<(usize, usize), Scalar>::new();
            for (s, u, v) in c.square().pure_terms(&image) {
                for (i, ui) in u.iter().enumerate().filter(|x| !x.1.is_zero()) {
                    for (j, vj) in v.iter().enumerate().filter(|x| !x.1.is_zero()) {
                        let t = &(&s * ui) * vj;
                        let e = acc.entry((i, j)).or_insert_with(|| c.field().zero());
                        *e = &*e + &t;
                    }
                }
            }
            acc.into_iter().filter(|(_, s)| !s.is_zero()).map(|((i, j), s)| (JsonScalar::Text(s.to_string()), i, j)).collect()
        })
        .collect();
    BocsSpec {
        base: algebra_spec(b),
        dim: n,
        left: w.left_actions().iter().map(rows).collect(),
        right: w.right_actions().iter().map(rows).collect(),
        comult,
        counit: rows(c.counit()),
        order: order.map(|o| o.sequence().iter().map(|&k| b.class_labels()[k].clone()).collect()),
    }
}

impl Problem {
    pub fn lambda(&self) -> Result<&Arc<FDAlgebra>> {
        self.lambda.as_ref().ok_or_else(|| input("/algebra", "this command needs an algebra"))
    }

    pub fn embedding(&self) -> Result<&AlgebraEmbedding> {
        self.embedding.as_ref().ok_or_else(|| input("/subalgebra", "this command needs a subalgebra"))
    }

    /// For correspondence commands: exactly one of an extension or a bocs.
    pub fn source(&self) -> Result<Source<'_>> {
        match (&self.embedding, &self.bocs) {
            (Some(e), None) => Ok(Source::Extension(e)),
            (None, Some(c)) => Ok(Source::Bocs(c)),
            (Some(_), Some(_)) => Err(input("", "give exactly one of subalgebra and bocs")),
            (None, None) => Err(input("", "this command needs a subalgebra or a bocs")),
        }
    }

    pub fn order_b(&self) -> Result<&SimpleOrder> {
        self.order_b.as_ref().ok_or_else(|| input("/orderB", "no order on B"))
    }

    pub fn order_lambda(&self) -> Result<&SimpleOrder> {
        self.order_lambda.as_ref().ok_or_else(|| input("/order", "no order on the algebra"))
    }
}

pub enum Source<'a> {
    Extension(&'a AlgebraEmbedding),
    Bocs(&'a Coring),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quiver_problem_with_subquiver() {
        let text = r#"{
            "field": "Q",
            "algebra": {"quiver": {"vertices": ["1", "2", "3"],
                "arrows": [{"label": "a", "source": "2", "target": "3"}, {"label": "b", "source": "3", "target": "2"},
                           {"label": "d", "source": "3", "target": "1"}, {"label": "g", "source": "1", "target": "2"}],
                "relations": ["g*d", "a*b"], "bound": 6}},
            "subalgebra": {"arrows": ["a", "g"]}
        }"#;
        let p = load_problem(text).unwrap();
        assert_eq!(p.lambda().unwrap().dim(), 12);
        assert_eq!(p.embedding().unwrap().source().dim(), 6);
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let text = r#"{"field": "Q", "algebra": {"quiver": {"vertices": ["1"], "arrows": [{"label": "x", "source": 1}]}}}"#;
        match parse_problem(text).unwrap_err() {
            Error::Input { pointer, .. } => assert_eq!(pointer, "/algebra/quiver/arrows/0/source"),
            e => panic!("{e}"),
        }
        let text = r#"{"field": "Q", "algebra": {"quiver": {"vertices": ["1"], "arrows": [{"label": "x", "source": "1", "target": "7"}]}}}"#;
        match load_problem(text).unwrap_err() {
            Error::Input { pointer, .. } => assert_eq!(pointer, "/algebra/quiver"),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn explicit_bocs_round_trips_through_json() {
        let text = r#"{
            "field": "Q",
            "bocs": {"base": {"matrix": 1}, "dim": 2,
                     "left": [[[1, 0], [0, 1]]], "right": [[[1, 0], [0, 1]]],
                     "comult": [[[1, 0, 0]], [[1, 0, 1], [1, 1, 0]]],
                     "counit": [[1, 0]]}
        }"#;
        let p = load_problem(text).unwrap();
        assert_eq!(p.bocs.as_ref().unwrap().dim(), 2);
        assert!(matches!(p.source().unwrap(), Source::Bocs(_)));
    }

    #[test]
    fn fixtures_load_by_name() {
        let p = load_problem(r#"{"field": "Q", "fixture": "F5"}"#).unwrap();
        assert_eq!(p.lambda().unwrap().dim(), 5);
        assert!(load_problem(r#"{"field": "Q", "fixture": "F9"}"#).is_err());
    }

    #[test]
    fn dual_coring_survives_serialisation() {
        let fx = fixtures::f5().unwrap();
        let d = crate::coring::dual_coring(&fx.embedding).unwrap();
        let spec = bocs_spec(&d.coring, fx.order_b.as_ref());
        let file = serde_json::json!({"field": "Q", "bocs": spec});
        let p = load_problem(&file.to_string()).unwrap();
        let c = p.bocs.as_ref().unwrap();
        assert_eq!(c.dim(), d.coring.dim());
        assert_eq!(c.counit(), d.coring.counit());
        assert_eq!(c.comult(), d.coring.comult());
        c.verify().unwrap();
    }
}
