//! Seeded random quiver algebras, unital subalgebras and modules.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use borelbocs::algebra::{parse_elements, subalgebra, AlgebraEmbedding, FDAlgebra, IdempotentChoice};
use borelbocs::fixtures::quiver_algebra;
use borelbocs::linalg::{Field, Scalar, Vector};
use borelbocs::modules::{projective, projective_decomposition_right, FDModule};

const BOUND: usize = 4;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random admissible quiver algebra of dimension at most `max_dim`, or
/// `None` when the draw is infinite-dimensional or too large.
pub fn random_algebra(rng: &mut ChaCha8Rng, max_dim: usize) -> Option<Arc<FDAlgebra>> {
    let nv = rng.gen_range(1..=4usize);
    let na = rng.gen_range(0..=5usize);
    let vertices: Vec<String> = (1..=nv).map(|v| v.to_string()).collect();
    let arrows: Vec<(String, String, String)> = (0..na)
        .map(|k| (format!("x{k}"), vertices[rng.gen_range(0..nv)].clone(), vertices[rng.gen_range(0..nv)].clone()))
        .collect();
    // Length-two paths "y*x" (x first), grouped by endpoints.
    let mut paths: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
    for x in &arrows {
        for y in &arrows {
            if x.2 == y.1 {
                paths.entry((x.1.clone(), y.2.clone())).or_default().push(format!("{}*{}", y.0, x.0));
            }
        }
    }
    let mut relations = Vec::new();
    for group in paths.values() {
        let mut rest: Vec<&String> = group.iter().collect();
        if rest.len() >= 2 && rng.gen_bool(0.4) {
            relations.push(format!("{} - {}", rest[0], rest[1]));
            rest.drain(..2);
        }
        for p in rest {
            if rng.gen_bool(0.6) {
                relations.push(p.clone());
            }
        }
    }
    // Reject draws whose free path count up to the bound is unmanageable.
    let mut layer = vec![1usize; nv];
    let mut total = nv;
    for _ in 0..=BOUND {
        let mut next = vec![0usize; nv];
        for (_, s, t) in &arrows {
            let (s, t) = (s.parse::<usize>().unwrap() - 1, t.parse::<usize>().unwrap() - 1);
            next[t] += layer[s];
        }
        layer = next;
        total += layer.iter().sum::<usize>();
        if total > 400 {
            return None;
        }
    }
    let v: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let a: Vec<(&str, &str, &str)> = arrows.iter().map(|(l, s, t)| (l.as_str(), s.as_str(), t.as_str())).collect();
    let r: Vec<&str> = relations.iter().map(String::as_str).collect();
    let alg = quiver_algebra(Field::Rational, &v, &a, &r, BOUND).ok()?;
    (alg.dim() <= max_dim).then_some(alg)
}

/// A random unital subalgebra: vertex idempotents merged into random
/// blocks, some arrows, and some sums of two arrows.
pub fn random_subalgebra(rng: &mut ChaCha8Rng, lambda: &Arc<FDAlgebra>) -> Option<AlgebraEmbedding> {
    let q = &lambda.quiver()?.quiver;
    let nv = q.vertices().len();
    let blocks: Vec<usize> = (0..nv).map(|_| rng.gen_range(0..nv)).collect();
    let mut gens: Vec<String> = Vec::new();
    for b in 0..nv {
        let members: Vec<String> = (0..nv).filter(|&v| blocks[v] == b).map(|v| q.trivial_label(v)).collect();
        if !members.is_empty() {
            gens.push(members.join(" + "));
        }
    }
    let labels: Vec<String> = q.arrows().iter().map(|a| a.label.clone()).collect();
    for l in &labels {
        if rng.gen_bool(0.5) {
            gens.push(l.clone());
        }
    }
    if labels.len() >= 2 && rng.gen_bool(0.3) {
        let pair: Vec<&String> = labels.choose_multiple(rng, 2).collect();
        gens.push(format!("{} + {}", pair[0], pair[1]));
    }
    let g: Vec<&str> = gens.iter().map(String::as_str).collect();
    let vecs = parse_elements(lambda, &g).ok()?;
    subalgebra(lambda, &vecs, IdempotentChoice::Auto, 10_000).ok()
}

/// A unital subalgebra of `M_n` spanned by merged diagonal blocks and
/// some strictly upper matrix units. These rarely split.
pub fn random_matrix_extension(rng: &mut ChaCha8Rng) -> Option<AlgebraEmbedding> {
    let n = rng.gen_range(2..=3usize);
    let lambda = Arc::new(FDAlgebra::matrix_algebra(Field::Rational, n));
    let blocks: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let mut gens: Vec<String> = (0..n)
        .map(|b| (0..n).filter(|&i| blocks[i] == b).map(|i| format!("E{0}{0}", i + 1)).collect::<Vec<_>>())
        .filter(|m| !m.is_empty())
        .map(|m| m.join(" + "))
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                gens.push(format!("E{}{}", i + 1, j + 1));
            }
        }
    }
    let g: Vec<&str> = gens.iter().map(String::as_str).collect();
    let vecs = parse_elements(&lambda, &g).ok()?;
    subalgebra(&lambda, &vecs, IdempotentChoice::Auto, 10_000).ok()
}

/// A random extension with `Λ_B` projective: mostly quiver algebras, one
/// draw in four inside a full matrix algebra.
pub fn random_extension(rng: &mut ChaCha8Rng, max_dim: usize) -> AlgebraEmbedding {
    loop {
        let drawn = if rng.gen_bool(0.25) {
            random_matrix_extension(rng)
        } else {
            random_algebra(rng, max_dim).and_then(|l| random_subalgebra(rng, &l))
        };
        let Some(e) = drawn else { continue };
        if projective_decomposition_right(&e).projective {
            return e;
        }
    }
}

fn small_vector(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    let f = Field::Rational;
    (0..n).map(|_| f.from_int(rng.gen_range(-2..=2))).collect::<Vec<Scalar>>()
}

/// A submodule or quotient of a projective, cut out by one or two random
/// vectors of its radical.
pub fn random_module(rng: &mut ChaCha8Rng, a: &Arc<FDAlgebra>) -> FDModule {
    let quotient = rng.gen_bool(0.5);
    random_module_of_kind(rng, a, quotient)
}

/// As [`random_module`], choosing quotient or submodule explicitly.
pub fn random_module_of_kind(rng: &mut ChaCha8Rng, a: &Arc<FDAlgebra>, quotient: bool) -> FDModule {
    let (p, _) = projective(a, rng.gen_range(0..a.num_classes()));
    // Random combinations inside rad P, so neither side is all of P.
    let rad = p.radical();
    let k = rng.gen_range(1..=2);
    let vecs: Vec<Vector> = (0..k).map(|_| rad.combine(&small_vector(rng, rad.dim()))).collect();
    let s = p.submodule_generated(&vecs);
    if quotient {
        p.quotient(&s).0
    } else {
        p.submodule(&s).0
    }
}

/// Paths of a quiver avoiding forbidden consecutive arrow pairs
/// `(first, then)`, counted by depth-first search. Trivial paths count.
pub fn count_paths(vertices: usize, arrows: &[(&str, usize, usize)], forbidden: &[(&str, &str)], cap: usize) -> usize {
    fn extend(
        last: usize,
        depth: usize,
        arrows: &[(&str, usize, usize)],
        forbidden: &[(&str, &str)],
        cap: usize,
    ) -> usize {
        if depth == cap {
            return 1;
        }
        let (label, _, end) = arrows[last];
        1 + arrows
            .iter()
            .enumerate()
            .filter(|(_, b)| b.1 == end && !forbidden.contains(&(label, b.0)))
            .map(|(k, _)| extend(k, depth + 1, arrows, forbidden, cap))
            .sum::<usize>()
    }
    vertices + (0..arrows.len()).map(|k| extend(k, 1, arrows, forbidden, cap)).sum::<usize>()
}
