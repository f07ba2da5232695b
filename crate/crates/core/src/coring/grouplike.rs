//! Group-like elements: solutions of `ε(ω) = 1`, `μ(ω) = ω ⊗ ω`.
//!
//! The system is quadratic. Each node linearises it (monomials `x_i x_j`
//! become fresh unknowns), eliminates, substitutes every forced affine
//! relation and repeats. Branching is complete when a row is univariate
//! or the field is finite; over Q it otherwise tries a fixed grid of
//! values, and exhausting an incomplete tree yields `Undetermined`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Coring, DualCoring};
use crate::error::{Error, Result};
use crate::linalg::{poly::Poly, vector, Field, Matrix, Rational, Scalar, Vector};

/// `c + lin·x + Σ q_ij x_i x_j` with `i <= j`.
#[derive(Clone, Debug)]
struct Poly2 {
    c: Scalar,
    lin: Vec<Scalar>,
    quad: BTreeMap<(usize, usize), Scalar>,
}

impl Poly2 {
    fn zero(f: Field, n: usize) -> Self {
        Poly2 { c: f.zero(), lin: vector::zeros(f, n), quad: BTreeMap::new() }
    }

    fn field(&self) -> Field {
        self.c.field()
    }

    fn add_quad(&mut self, i: usize, j: usize, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        let key = (i.min(j), i.max(j));
        let f = self.field();
        let v = self.quad.entry(key).or_insert_with(|| f.zero());
        *v = &*v + s;
        if v.is_zero() {
            self.quad.remove(&key);
        }
    }

    fn is_zero(&self) -> bool {
        self.c.is_zero() && self.quad.is_empty() && vector::is_zero(&self.lin)
    }

    fn eval(&self, x: &[Scalar]) -> Scalar {
        let mut acc = self.c.clone();
        for (a, xi) in self.lin.iter().zip(x) {
            if !a.is_zero() {
                acc = &acc + &(a * xi);
            }
        }
        for ((i, j), q) in &self.quad {
            acc = &acc + &(&(q * &x[*i]) * &x[*j]);
        }
        acc
    }

    fn vars(&self) -> BTreeSet<usize> {
        let mut out: BTreeSet<usize> =
            self.lin.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(i, _)| i).collect();
        for (i, j) in self.quad.keys() {
            out.insert(*i);
            out.insert(*j);
        }
        out
    }

    /// Replaces `x_v` by `c + Σ a_k x_k`.
    fn substitute(&self, sub: &Substitution) -> Poly2 {
        let Substitution { var: v, constant: c, terms: a } = sub;
        let mut out = Poly2 { c: self.c.clone(), lin: self.lin.clone(), quad: BTreeMap::new() };
        let f = self.field();
        let lv = std::mem::replace(&mut out.lin[*v], f.zero());
        if !lv.is_zero() {
            out.c = &out.c + &(&lv * c);
            for (k, ak) in a {
                out.lin[*k] = &out.lin[*k] + &(&lv * ak);
            }
        }
        for (&(i, j), q) in &self.quad {
            match (i == *v, j == *v) {
                (false, false) => out.add_quad(i, j, q),
                (true, true) => {
                    out.c = &out.c + &(&(q * c) * c);
                    let two_qc = &(&f.from_int(2) * q) * c;
                    for (k, ak) in a {
                        out.lin[*k] = &out.lin[*k] + &(&two_qc * ak);
                    }
                    for (k, ak) in a {
                        for (l, al) in a {
                            if k <= l {
                                let mut s = &(q * ak) * al;
                                if k != l {
                                    s = &s * &f.from_int(2);
                                }
                                out.add_quad(*k, *l, &s);
                            }
                        }
                    }
                }
                _ => {
                    let o = if i == *v { j } else { i };
                    out.lin[o] = &out.lin[o] + &(q * c);
                    for (k, ak) in a {
                        out.add_quad(*k, o, &(q * ak));
                    }
                }
            }
        }
        out
    }

    fn reduce_mod(&self, p: u64) -> Option<Poly2> {
        let fp = Field::Prime(p);
        let red = |s: &Scalar| fp.from_rational(s.as_rational()?);
        let mut out = Poly2::zero(fp, self.lin.len());
        out.c = red(&self.c)?;
        for (k, a) in self.lin.iter().enumerate() {
            out.lin[k] = red(a)?;
        }
        for (&(i, j), q) in &self.quad {
            out.add_quad(i, j, &red(q)?);
        }
        Some(out)
    }
}

#[derive(Clone, Debug)]
struct Substitution {
    var: usize,
    constant: Scalar,
    terms: Vec<(usize, Scalar)>,
}

enum Simplified {
    Inconsistent,
    Solved,
    Open(Vec<Poly2>),
}

/// Linearise, eliminate and substitute until no affine relation remains.
fn simplify(mut eqs: Vec<Poly2>, subs: &mut Vec<Substitution>) -> Simplified {
    loop {
        eqs.retain(|e| !e.is_zero());
        let Some(first) = eqs.first() else { return Simplified::Solved };
        let f = first.field();
        let monos: Vec<(usize, usize)> =
            eqs.iter().flat_map(|e| e.quad.keys().copied()).collect::<BTreeSet<_>>().into_iter().collect();
        let lins: Vec<usize> = eqs.iter().flat_map(|e| e.vars()).collect::<BTreeSet<_>>().into_iter().collect();
        let mono_col: BTreeMap<(usize, usize), usize> = monos.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let lin_col: BTreeMap<usize, usize> = lins.iter().enumerate().map(|(k, v)| (*v, monos.len() + k)).collect();
        let width = monos.len() + lins.len() + 1;
        let rows: Vec<Vector> = eqs
            .iter()
            .map(|e| {
                let mut r = vector::zeros(f, width);
                for (m, q) in &e.quad {
                    r[mono_col[m]] = q.clone();
                }
                for (v, a) in e.lin.iter().enumerate() {
                    if !a.is_zero() {
                        r[lin_col[&v]] = a.clone();
                    }
                }
                r[width - 1] = e.c.clone();
                r
            })
            .collect();
        let (rref, pivots) = Matrix::from_rows(f, width, rows).rref();
        let n = first.lin.len();
        let mut quads = Vec::new();
        let mut new_subs = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            let row = rref.row(r);
            if p == width - 1 {
                return Simplified::Inconsistent;
            }
            let mut e = Poly2::zero(f, n);
            e.c = row[width - 1].clone();
            for (k, m) in monos.iter().enumerate() {
                e.add_quad(m.0, m.1, &row[k]);
            }
            for (k, v) in lins.iter().enumerate() {
                e.lin[*v] = row[monos.len() + k].clone();
            }
            if p < monos.len() {
                quads.push(e);
            } else {
                // Pivot coefficient is one.
                let var = lins[p - monos.len()];
                let terms = lins
                    .iter()
                    .filter(|&&v| v != var && !e.lin[v].is_zero())
                    .map(|&v| (v, -&e.lin[v]))
                    .collect();
                new_subs.push(Substitution { var, constant: -&e.c, terms });
            }
        }
        if new_subs.is_empty() {
            return Simplified::Open(quads);
        }
        for s in &new_subs {
            quads = quads.iter().map(|e| e.substitute(s)).collect();
        }
        subs.extend(new_subs);
        eqs = quads;
    }
}

fn back_substitute(f: Field, n: usize, subs: &[Substitution]) -> Vector {
    let mut x = vector::zeros(f, n);
    for s in subs.iter().rev() {
        let mut v = s.constant.clone();
        for (k, a) in &s.terms {
            v = &v + &(a * &x[*k]);
        }
        x[s.var] = v;
    }
    x
}

fn grid(f: Field) -> (Vec<Scalar>, bool) {
    match f.elements() {
        Some(all) => (all, true),
        None => {
            let vals = [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2)];
            (vals.iter().map(|&(p, q)| Scalar::Q(Rational::new(p, q))).collect(), false)
        }
    }
}

struct Search {
    f: Field,
    n: usize,
    nodes: usize,
    limit: usize,
    complete: bool,
}

enum Outcome {
    Found(Vector),
    None,
    Budget,
}

impl Search {
    fn run(&mut self, eqs: Vec<Poly2>, mut subs: Vec<Substitution>) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Outcome::Budget;
        }
        let f = self.f;
        let eqs = match simplify(eqs, &mut subs) {
            Simplified::Inconsistent => return Outcome::None,
            Simplified::Solved => return Outcome::Found(back_substitute(f, self.n, &subs)),
            Simplified::Open(eqs) => eqs,
        };
        // A univariate row has finitely many roots, all found exactly.
        let mut branch: Option<(usize, Vec<Scalar>)> = None;
        for e in &eqs {
            let vars = e.vars();
            if vars.len() == 1 {
                let v = *vars.iter().next().unwrap();
                let a = e.quad.get(&(v, v)).cloned().unwrap_or_else(|| f.zero());
                if let Some(roots) = Poly::new(f, vec![e.c.clone(), e.lin[v].clone(), a]).roots() {
                    branch = Some((v, roots));
                    break;
                }
            }
        }
        let (v, values) = match branch {
            Some(b) => b,
            None => {
                let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
                for e in &eqs {
                    for (i, j) in e.quad.keys() {
                        *counts.entry(*i).or_default() += 1;
                        *counts.entry(*j).or_default() += 1;
                    }
                }
                let v = counts.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).map(|(v, _)| *v).unwrap();
                let (values, complete) = grid(f);
                if !complete {
                    self.complete = false;
                }
                (v, values)
            }
        };
        let mut budget_hit = false;
        for val in values {
            let s = Substitution { var: v, constant: val, terms: Vec::new() };
            let next: Vec<Poly2> = eqs.iter().map(|e| e.substitute(&s)).collect();
            let mut sub2 = subs.clone();
            sub2.push(s);
            match self.run(next, sub2) {
                Outcome::Found(x) => return Outcome::Found(x),
                Outcome::Budget => budget_hit = true,
                Outcome::None => {}
            }
            if budget_hit {
                return Outcome::Budget;
            }
        }
        Outcome::None
    }
}

/// Limits of the search. `primes` are used for mod-p evidence when the
/// rational search is inconclusive.
#[derive(Clone, Debug, Serialize)]
pub struct SearchBudget {
    pub nodes: usize,
    pub primes: Vec<u64>,
    pub modp_nodes: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { nodes: 4000, primes: vec![2, 3, 5, 7], modp_nodes: 20_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupLikeVerdict {
    Found,
    ProvenAbsent,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModpEvidence {
    pub prime: u64,
    /// `None` when the system does not reduce mod p or the budget ran out.
    pub solvable: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupLikeSearch {
    pub verdict: GroupLikeVerdict,
    #[serde(skip)]
    pub omega: Option<Vector>,
    pub omega_text: Option<Vec<String>>,
    pub unknowns: usize,
    pub nodes: usize,
    pub modp: Vec<ModpEvidence>,
}

fn solve_system(f: Field, n: usize, eqs: Vec<Poly2>, budget: &SearchBudget) -> Result<GroupLikeSearch> {
    let mut s = Search { f, n, nodes: 0, limit: budget.nodes, complete: true };
    let outcome = s.run(eqs.clone(), Vec::new());
    let (verdict, omega) = match outcome {
        Outcome::Found(x) => (GroupLikeVerdict::Found, Some(x)),
        Outcome::None if s.complete => (GroupLikeVerdict::ProvenAbsent, None),
        _ => (GroupLikeVerdict::Undetermined, None),
    };
    if let Some(x) = &omega {
        if eqs.iter().any(|e| !e.eval(x).is_zero()) {
            return Err(Error::TheoremViolation("elimination produced a non-solution".into()));
        }
    }
    let mut modp = Vec::new();
    if verdict == GroupLikeVerdict::Undetermined && f == Field::Rational {
        for &p in &budget.primes {
            let reduced: Option<Vec<Poly2>> = eqs.iter().map(|e| e.reduce_mod(p)).collect();
            let solvable = reduced.and_then(|r| {
                let mut sp = Search { f: Field::Prime(p), n, nodes: 0, limit: budget.modp_nodes, complete: true };
                match sp.run(r, Vec::new()) {
                    Outcome::Found(_) => Some(true),
                    Outcome::None => Some(false),
                    Outcome::Budget => None,
                }
            });
            modp.push(ModpEvidence { prime: p, solvable });
        }
    }
    let omega_text = omega.as_ref().map(|x| x.iter().map(ToString::to_string).collect());
    Ok(GroupLikeSearch { verdict, omega, omega_text, unknowns: n, nodes: s.nodes, modp })
}

/// `ε(x) = 1` and `μ(x) = x ⊗ x` in the coordinates of `W`.
fn coring_system(c: &Coring) -> Vec<Poly2> {
    let f = c.field();
    let n = c.dim();
    let b = c.base();
    let mut eqs = Vec::new();
    for r in 0..b.dim() {
        let mut e = Poly2::zero(f, n);
        e.c = -&b.unit()[r];
        for k in 0..n {
            e.lin[k] = c.counit().get(r, k).clone();
        }
        eqs.push(e);
    }
    let units: Vec<Vector> = (0..n).map(|i| vector::unit(f, n, i)).collect();
    let sq = c.square();
    let mut mu: Vec<Poly2> = (0..sq.dim())
        .map(|s| {
            let mut e = Poly2::zero(f, n);
            for k in 0..n {
                e.lin[k] = c.comult().get(s, k).clone();
            }
            e
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            let t = sq.elem(&units[i], &units[j]);
            for (s, v) in t.iter().enumerate() {
                mu[s].add_quad(i, j, &-v);
            }
        }
    }
    eqs.extend(mu);
    eqs
}

/// `ω(1) = 1` and `ω(λλ') = ω(ω(λ)λ')` for `ω = Σ x_k g_k`.
fn splitting_system(d: &DualCoring) -> Vec<Poly2> {
    let e = &d.embedding;
    let lam = e.target();
    let b = e.source();
    let f = b.field();
    let n = d.maps.dim();
    let g: Vec<Matrix> = (0..n).map(|k| d.maps.basis_matrix(k)).collect();
    let mut eqs = Vec::new();
    for r in 0..b.dim() {
        let mut p = Poly2::zero(f, n);
        p.c = -&b.unit()[r];
        for k in 0..n {
            p.lin[k] = g[k].mul_vec(lam.unit())[r].clone();
        }
        eqs.push(p);
    }
    for a1 in 0..lam.dim() {
        let la = lam.basis_element(a1);
        let gla: Vec<Vector> = g.iter().map(|gl| e.map(&gl.mul_vec(&la))).collect();
        for a2 in 0..lam.dim() {
            let lb = lam.basis_element(a2);
            let prod = lam.mul(&la, &lb);
            let mut ps: Vec<Poly2> = (0..b.dim()).map(|_| Poly2::zero(f, n)).collect();
            for (k, gk) in g.iter().enumerate() {
                for (r, v) in gk.mul_vec(&prod).into_iter().enumerate() {
                    ps[r].lin[k] = v;
                }
            }
            for (l, il) in gla.iter().enumerate() {
                let u = lam.mul(il, &lb);
                for (k, gk) in g.iter().enumerate() {
                    for (r, v) in gk.mul_vec(&u).iter().enumerate() {
                        ps[r].add_quad(k, l, &-v);
                    }
                }
            }
            eqs.extend(ps);
        }
    }
    eqs
}

pub fn group_like_verify(c: &Coring, omega: &[Scalar]) -> bool {
    omega.len() == c.dim()
        && &c.epsilon(omega) == c.base().unit()
        && c.comultiply(omega) == c.square().elem(omega, omega)
}

pub fn group_like_search(c: &Coring, budget: &SearchBudget) -> Result<GroupLikeSearch> {
    let out = solve_system(c.field(), c.dim(), coring_system(c), budget)?;
    if let Some(w) = &out.omega {
        if !group_like_verify(c, w) {
            return Err(Error::TheoremViolation("group-like search returned a non-solution".into()));
        }
    }
    Ok(out)
}

/// Both formulations of normality for a dual coring, cross-checked, with
/// the kernel of the found splitting checked to be a right ideal.
#[derive(Clone, Debug, Serialize)]
pub struct NormalityReport {
    pub coring_search: GroupLikeSearch,
    pub splitting_search: GroupLikeSearch,
    pub kernel_right_ideal: Option<bool>,
}

impl NormalityReport {
    pub fn verdict(&self) -> GroupLikeVerdict {
        match (self.coring_search.verdict, self.splitting_search.verdict) {
            (GroupLikeVerdict::Found, _) | (_, GroupLikeVerdict::Found) => GroupLikeVerdict::Found,
            (GroupLikeVerdict::ProvenAbsent, _) | (_, GroupLikeVerdict::ProvenAbsent) => GroupLikeVerdict::ProvenAbsent,
            _ => GroupLikeVerdict::Undetermined,
        }
    }

    pub fn omega(&self) -> Option<&Vector> {
        self.coring_search.omega.as_ref().or(self.splitting_search.omega.as_ref())
    }
}

pub fn normality(d: &DualCoring, budget: &SearchBudget) -> Result<NormalityReport> {
    let c = &d.coring;
    let coring_search = group_like_search(c, budget)?;
    let f = c.field();
    let splitting_search = solve_system(f, c.dim(), splitting_system(d), budget)?;
    use GroupLikeVerdict::*;
    let clash = matches!(
        (coring_search.verdict, splitting_search.verdict),
        (Found, ProvenAbsent) | (ProvenAbsent, Found)
    );
    if clash {
        return Err(Error::TheoremViolation("group-like and splitting formulations disagree".into()));
    }
    let mut report = NormalityReport { coring_search, splitting_search, kernel_right_ideal: None };
    for w in [&report.coring_search.omega, &report.splitting_search.omega].into_iter().flatten() {
        if !group_like_verify(c, w) {
            return Err(Error::TheoremViolation("a splitting with right-ideal kernel is not group-like".into()));
        }
    }
    if let Some(w) = report.omega().cloned() {
        if c.counit().rank() != c.base().dim() {
            return Err(Error::TheoremViolation("a group-like exists but the counit is not surjective".into()));
        }
        let pi = d.map_of(&w);
        let lam = d.embedding.target();
        let ok = pi.kernel_basis().iter().all(|k| {
            (0..lam.dim()).all(|j| vector::is_zero(&pi.mul_vec(&lam.mul(k, &lam.basis_element(j)))))
        });
        if !ok {
            return Err(Error::TheoremViolation("the splitting of a group-like has a kernel that is not a right ideal".into()));
        }
        report.kernel_right_ideal = Some(true);
    }
    Ok(report)
}
