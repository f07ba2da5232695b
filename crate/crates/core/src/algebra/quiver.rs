//! Quivers, bounded path algebras and their quotients by homogeneous
//! relations.
//!
//! Composition is right to left: the product `p*q` traverses `q` first and
//! then `p`, so `g*d` is defined when `d` ends where `g` starts.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{AlgebraData, FDAlgebra, Generator};
use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Rational, Scalar, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Arrow {
    pub label: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    source: Vec<usize>,
    target: Vec<usize>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidAlgebra(format!("duplicate vertex label {v}")));
            }
        }
        let vidx = |v: &str| vertices.iter().position(|w| w == v);
        let mut source = Vec::new();
        let mut target = Vec::new();
        for a in &arrows {
            if !seen.insert(a.label.clone()) {
                return Err(Error::InvalidAlgebra(format!("duplicate label {}", a.label)));
            }
            let (Some(s), Some(t)) = (vidx(&a.source), vidx(&a.target)) else {
                return Err(Error::InvalidAlgebra(format!("arrow {} has an undeclared endpoint", a.label)));
            };
            source.push(s);
            target.push(t);
        }
        Ok(Quiver { vertices, arrows, source, target })
    }

    /// Convenience constructor from `(label, source, target)` triples.
    pub fn from_triples(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        Self::new(
            vertices.iter().map(|s| s.to_string()).collect(),
            arrows
                .iter()
                .map(|(l, s, t)| Arrow { label: l.to_string(), source: s.to_string(), target: t.to_string() })
                .collect(),
        )
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, v: &str) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    pub fn arrow_index(&self, a: &str) -> Option<usize> {
        self.arrows.iter().position(|b| b.label == a)
    }

    pub fn arrow_source(&self, a: usize) -> usize {
        self.source[a]
    }

    pub fn arrow_target(&self, a: usize) -> usize {
        self.target[a]
    }

    /// Label of the trivial path at a vertex.
    pub fn trivial_label(&self, v: usize) -> String {
        format!("e{}", self.vertices[v])
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return self.trivial_label(p.source);
        }
        p.arrows.iter().rev().map(|&a| self.arrows[a].label.as_str()).collect::<Vec<_>>().join("*")
    }

    /// Path from factors written right to left (`["d", "c"]` is `c` then `d`).
    pub fn path_from_factors(&self, factors: &[String]) -> Result<Path> {
        let mut arrows = Vec::new();
        for f in factors.iter().rev() {
            let a = self
                .arrow_index(f)
                .ok_or_else(|| Error::InvalidAlgebra(format!("unknown arrow {f}")))?;
            arrows.push(a);
        }
        let Some(&first) = arrows.first() else {
            return Err(Error::InvalidAlgebra("empty path".into()));
        };
        for w in arrows.windows(2) {
            if self.target[w[0]] != self.source[w[1]] {
                return Err(Error::InvalidAlgebra(format!(
                    "{} is not composable",
                    factors.join("*")
                )));
            }
        }
        Ok(Path { source: self.source[first], target: self.target[*arrows.last().unwrap()], arrows })
    }
}

/// A path, stored in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self * q`: `q` first, then `self`.
    pub fn after(&self, q: &Path) -> Option<Path> {
        if q.target != self.source {
            return None;
        }
        let mut arrows = q.arrows.clone();
        arrows.extend(&self.arrows);
        Some(Path { source: q.source, target: self.target, arrows })
    }
}

/// One summand of a parsed linear combination: a rational coefficient times
/// a product of named factors, written left to right as in the source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<String>,
}

/// Parses strings such as `"d*c - b*a"`, `"2*x"`, `"-1/2 e1 + a"`.
/// A term with no factors stands for a multiple of the unit.
pub fn parse_combination(s: &str) -> std::result::Result<Vec<Term>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut terms = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let is_ident = |c: char| c.is_alphanumeric() || c == '_' || c == '\'';
    loop {
        skip_ws(&mut i);
        if i >= chars.len() {
            break;
        }
        let mut sign = 1i64;
        while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
            skip_ws(&mut i);
        }
        if i == chars.len() {
            return Err("dangling sign".into());
        }
        let mut coeff = Rational::from_int(sign);
        if chars[i].is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let r: Rational = text.parse().map_err(|_| format!("bad coefficient {text}"))?;
            coeff = coeff.mul(&r);
            skip_ws(&mut i);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            }
        }
        let mut factors = Vec::new();
        loop {
            skip_ws(&mut i);
            if i < chars.len() && is_ident(chars[i]) {
                let start = i;
                while i < chars.len() && is_ident(chars[i]) {
                    i += 1;
                }
                factors.push(chars[start..i].iter().collect::<String>());
                skip_ws(&mut i);
                if i < chars.len() && chars[i] == '*' {
                    i += 1;
                    continue;
                }
                if i < chars.len() && is_ident(chars[i]) {
                    return Err(format!("missing '*' before position {i}"));
                }
            }
            break;
        }
        skip_ws(&mut i);
        if i < chars.len() && chars[i] != '+' && chars[i] != '-' {
            return Err(format!("unexpected character '{}' at position {i}", chars[i]));
        }
        terms.push(Term { coeff, factors });
    }
    if terms.is_empty() {
        return Err("empty expression".into());
    }
    Ok(terms)
}

/// A quiver with relations, truncated at a path-length bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub quiver: Quiver,
    pub relations: Vec<Vec<(Scalar, Path)>>,
    pub bound: usize,
}

impl QuiverPresentation {
    /// Builds a presentation from relation strings.
    pub fn parse(field: Field, quiver: Quiver, relations: &[&str], bound: usize) -> Result<Self> {
        let mut rels = Vec::new();
        for (k, r) in relations.iter().enumerate() {
            let terms = parse_combination(r).map_err(|m| Error::input(format!("/relations/{k}"), m))?;
            let mut rel = Vec::new();
            for t in terms {
                let c = field
                    .from_rational(&t.coeff)
                    .ok_or_else(|| Error::input(format!("/relations/{k}"), "coefficient not defined in the field"))?;
                let p = quiver
                    .path_from_factors(&t.factors)
                    .map_err(|e| Error::input(format!("/relations/{k}"), e.to_string()))?;
                rel.push((c, p));
            }
            rels.push(rel);
        }
        Ok(QuiverPresentation { quiver, relations: rels, bound })
    }

    fn check_homogeneous(&self) -> Result<()> {
        for (k, rel) in self.relations.iter().enumerate() {
            if let Some((_, p0)) = rel.first() {
                for (_, p) in rel {
                    if (p.source, p.target) != (p0.source, p0.target) {
                        return Err(Error::NonHomogeneous {
                            index: k,
                            detail: format!(
                                "{} and {} have different endpoints",
                                self.quiver.path_label(p0),
                                self.quiver.path_label(p)
                            ),
                        });
                    }
                    if p.len() != p0.len() {
                        return Err(Error::NonHomogeneous {
                            index: k,
                            detail: format!(
                                "{} and {} have different lengths",
                                self.quiver.path_label(p0),
                                self.quiver.path_label(p)
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Paths of one length with their coordinate positions.
struct Degree {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl Degree {
    fn new(mut paths: Vec<Path>, q: &Quiver) -> Self {
        paths.sort_by_cached_key(|p| {
            p.arrows.iter().rev().map(|&a| q.arrows[a].label.clone()).collect::<Vec<_>>()
        });
        let index = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Degree { paths, index }
    }
}

impl FDAlgebra {
    /// Quotient of the path algebra by the ideal generated by the relations,
    /// computed degree by degree up to the bound. Every path of length
    /// `bound + 1` must lie in the ideal.
    pub fn from_quiver(field: Field, p: QuiverPresentation) -> Result<Self> {
        if p.bound < 1 {
            return Err(Error::Precondition("path length bound must be at least 1".into()));
        }
        p.check_homogeneous()?;
        let q = &p.quiver;
        let nv = q.vertices.len();
        let na = q.arrows.len();
        let mut degrees = vec![Degree::new((0..nv).map(Path::trivial).collect(), q)];
        for n in 1..=p.bound + 1 {
            let mut next = Vec::new();
            for path in &degrees[n - 1].paths {
                for a in 0..na {
                    if q.source[a] == path.target {
                        let mut arrows = path.arrows.clone();
                        arrows.push(a);
                        next.push(Path { source: path.source, target: q.target[a], arrows });
                    }
                }
            }
            degrees.push(Degree::new(next, q));
        }
        // Ideal, degree by degree.
        let mut ideal: Vec<Subspace> = Vec::new();
        for (n, deg) in degrees.iter().enumerate() {
            let dim = deg.paths.len();
            let mut vecs: Vec<Vector> = Vec::new();
            for rel in &p.relations {
                if rel.first().is_some_and(|(_, p0)| p0.len() == n) {
                    let mut v = vector::zeros(field, dim);
                    for (c, path) in rel {
                        let k = deg.index[path];
                        v[k] = &v[k] + c;
                    }
                    vecs.push(v);
                }
            }
            if n > 0 {
                let prev = &degrees[n - 1];
                for u in ideal[n - 1].basis() {
                    for a in 0..na {
                        let arrow = Path { source: q.source[a], target: q.target[a], arrows: vec![a] };
                        let mut left = vector::zeros(field, dim);
                        let mut right = vector::zeros(field, dim);
                        for (k, c) in u.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let path = &prev.paths[k];
                            if let Some(r) = arrow.after(path) {
                                let j = deg.index[&r];
                                left[j] = &left[j] + c;
                            }
                            if let Some(r) = path.after(&arrow) {
                                let j = deg.index[&r];
                                right[j] = &right[j] + c;
                            }
                        }
                        vecs.push(left);
                        vecs.push(right);
                    }
                }
            }
            ideal.push(Subspace::span(field, dim, vecs));
        }
        let top = &ideal[p.bound + 1];
        if top.dim() != degrees[p.bound + 1].paths.len() {
            let idx = top.complement_indices()[0];
            return Err(Error::NotAdmissible {
                bound: p.bound,
                path: q.path_label(&degrees[p.bound + 1].paths[idx]),
            });
        }
        let mut basis: Vec<(usize, Path)> = Vec::new();
        let mut offset = Vec::new();
        let mut proj = Vec::new();
        for n in 0..=p.bound {
            offset.push(basis.len());
            for &k in &ideal[n].complement_indices() {
                basis.push((n, degrees[n].paths[k].clone()));
            }
            proj.push(ideal[n].quotient_projection());
        }
        let dim = basis.len();
        let mut left = vec![Matrix::zeros(field, dim, dim); dim];
        for (i, (ni, pi)) in basis.iter().enumerate() {
            for (j, (nj, pj)) in basis.iter().enumerate() {
                let n = ni + nj;
                if n > p.bound {
                    continue;
                }
                if let Some(r) = pi.after(pj) {
                    let k = degrees[n].index[&r];
                    for row in 0..proj[n].rows() {
                        let c = proj[n].get(row, k);
                        if !c.is_zero() {
                            left[i].set(offset[n] + row, j, c.clone());
                        }
                    }
                }
            }
        }
        let labels: Vec<String> = basis.iter().map(|(_, path)| q.path_label(path)).collect();
        let idempotents: Vec<Vector> = (0..nv).map(|v| vector::unit(field, dim, offset[0] + v)).collect();
        let mut unit = vector::zeros(field, dim);
        for e in &idempotents {
            unit = vector::add(&unit, e);
        }
        let radical = Subspace::span(
            field,
            dim,
            (offset[1]..dim).map(|i| vector::unit(field, dim, i)).collect(),
        );
        let mut generators = Vec::new();
        let mut names: Vec<(String, Vector)> =
            (0..nv).map(|v| (q.trivial_label(v), idempotents[v].clone())).collect();
        for a in 0..na {
            let path = Path { source: q.source[a], target: q.target[a], arrows: vec![a] };
            let k = degrees[1].index[&path];
            let col = proj[1].column(k);
            let mut el = vector::zeros(field, dim);
            for (r, c) in col.into_iter().enumerate() {
                el[offset[1] + r] = c;
            }
            names.push((q.arrows[a].label.clone(), el.clone()));
            if vector::is_zero(&el) {
                continue;
            }
            generators.push(Generator { element: el, target: q.target[a], source: q.source[a] });
        }
        FDAlgebra::from_data(AlgebraData {
            field,
            basis_labels: labels,
            left_mult: left,
            unit,
            idempotents,
            idempotent_labels: q.vertices.clone(),
            radical: Some(radical),
            generators: Some(generators),
            quiver: Some(p),
            names,
        })
    }

    /// Evaluates a parsed combination in the algebra, resolving each factor
    /// name to an element; factors multiply left to right as written.
    pub fn eval_terms(&self, terms: &[Term], resolve: impl Fn(&str) -> Option<Vector>) -> std::result::Result<Vector, String> {
        let mut out = self.zero();
        for t in terms {
            let c = self
                .field()
                .from_rational(&t.coeff)
                .ok_or_else(|| "coefficient not defined in the field".to_string())?;
            let mut prod = self.unit().clone();
            for f in &t.factors {
                let x = resolve(f).ok_or_else(|| format!("unknown name {f}"))?;
                prod = self.mul(&prod, &x);
            }
            vector::axpy(&mut out, &c, &prod);
        }
        Ok(out)
    }

    /// Element named by a string, resolving arrow labels, trivial-path labels
    /// (`e<vertex>`), idempotent labels and basis labels in that order.
    pub fn parse_element(&self, s: &str) -> std::result::Result<Vector, String> {
        let terms = parse_combination(s)?;
        self.eval_terms(&terms, |name| self.resolve_name(name))
    }

    pub fn resolve_name(&self, name: &str) -> Option<Vector> {
        if let Some((_, v)) = self.names().iter().find(|(n, _)| n == name) {
            return Some(v.clone());
        }
        if let Some(i) = self.idempotent_labels().iter().position(|l| l == name) {
            return Some(self.idempotents()[i].clone());
        }
        self.basis_index(name).map(|i| self.basis_element(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first_nonzero(v: &[Scalar]) -> usize {
        v.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn parser_handles_signs_and_fractions() {
        let t = parse_combination("d*c - b*a").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[1].coeff, Rational::from_int(-1));
        assert_eq!(t[1].factors, vec!["b".to_string(), "a".to_string()]);
        let t = parse_combination("-1/2 x + 3*y*z").unwrap();
        assert_eq!(t[0].coeff, Rational::new(-1, 2));
        assert_eq!(t[1].factors.len(), 2);
        assert!(parse_combination("a b").is_err());
        assert!(parse_combination("").is_err());
    }

    #[test]
    fn single_vertex_is_ground_field() {
        let quiver = Quiver::from_triples(&["1"], &[]).unwrap();
        let p = QuiverPresentation::parse(q(), quiver, &[], 1).unwrap();
        let a = FDAlgebra::from_quiver(q(), p).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.is_semisimple());
    }

    #[test]
    fn linear_a3_has_dimension_six() {
        let quiver = Quiver::from_triples(&["1", "2", "3"], &[("g", "1", "2"), ("a", "2", "3")]).unwrap();
        let p = QuiverPresentation::parse(q(), quiver, &[], 2).unwrap();
        let a = FDAlgebra::from_quiver(q(), p).unwrap();
        assert_eq!(a.dim(), 6);
        assert_eq!(a.radical().dim(), 3);
        let ag = a.parse_element("a*g").unwrap();
        assert_eq!(a.basis_labels()[first_nonzero(&ag)], "a*g");
        assert!(vector::is_zero(&a.parse_element("g*a").unwrap()));
    }

    #[test]
    fn loop_without_relations_is_not_admissible() {
        let quiver = Quiver::from_triples(&["1"], &[("x", "1", "1")]).unwrap();
        let p = QuiverPresentation::parse(q(), quiver, &[], 3).unwrap();
        match FDAlgebra::from_quiver(q(), p) {
            Err(Error::NotAdmissible { bound, path }) => {
                assert_eq!(bound, 3);
                assert_eq!(path, "x*x*x*x");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mixed_endpoints_rejected() {
        let quiver = Quiver::from_triples(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let p = QuiverPresentation::parse(q(), quiver, &["a*b - b*a"], 3).unwrap();
        assert!(matches!(FDAlgebra::from_quiver(q(), p), Err(Error::NonHomogeneous { index: 0, .. })));
    }
}
