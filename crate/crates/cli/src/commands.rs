use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};

use borelbocs::algebra::{AlgebraEmbedding, FDAlgebra};
use borelbocs::borel::{self, regularisation_applicable, regularise, roundtrip_bocs, roundtrip_extension};
use borelbocs::coring::{
    counit_surjective, dual_coring, group_like_search, group_like_verify, is_directed_bocs, right_algebra_of_dual,
    splitting_equivalences, Coring, GroupLikeVerdict,
};
use borelbocs::io::{algebra_spec, bocs_spec, build_algebra, load_problem, Problem, ProblemFile, Source};
use borelbocs::linalg::{Matrix, Scalar};
use borelbocs::modules::{
    ext1_cocycle_oracle, ext_comparison, ext_dim, global_dimension, induct, projective, simple,
};
use borelbocs::quasihereditary::{is_quasi_hereditary, SimpleOrder};
use borelbocs::{Error, Result};

use crate::report::{Envelope, Outcome};
use crate::{CmdResult, Over};

pub struct Flags {
    pub recheck: bool,
    pub timings: bool,
}

pub struct Body {
    pub verdict: Outcome,
    pub result: Value,
    pub recheck: Option<Value>,
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialise")
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    m.row_vecs().iter().map(|r| r.iter().map(Scalar::to_string).collect()).collect()
}

/// Runs `f` on the parsed file. Unreadable or invalid files are input
/// errors; everything else is reported by `f`.
pub fn run_file(path: &Path, flags: &Flags, f: impl FnOnce(&Problem, &Flags) -> Result<Body>) -> CmdResult {
    let start = Instant::now();
    let shown = path.display().to_string();
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => {
            let err = Error::Input { pointer: String::new(), message: format!("cannot read {shown}: {e}") };
            return Err((Envelope::new(Some(shown), None), err));
        }
    };
    let env = Envelope::new(Some(shown), Some(&bytes));
    let text = match String::from_utf8(bytes) {
        Ok(t) => t,
        Err(e) => return Err((env, Error::Input { pointer: String::new(), message: e.to_string() })),
    };
    let problem = match load_problem(&text) {
        Ok(p) => p,
        Err(e) => return Err((env, e)),
    };
    let loaded = start.elapsed();
    match f(&problem, flags) {
        Ok(body) => {
            let mut env = env.with_result(body.verdict, body.result, body.recheck);
            if flags.timings {
                env = env.with_timings(json!({
                    "load_ms": loaded.as_secs_f64() * 1e3,
                    "total_ms": start.elapsed().as_secs_f64() * 1e3,
                }));
            }
            Ok((env, body.verdict))
        }
        Err(e) => Err((env, e)),
    }
}

/// Collects named recheck results; any failure is a theorem violation.
#[derive(Default)]
struct Recheck(Vec<(String, bool)>);

impl Recheck {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.0.push((name.into(), ok));
    }

    fn finish(self) -> Result<Value> {
        if let Some((name, _)) = self.0.iter().find(|x| !x.1) {
            return Err(Error::TheoremViolation(format!("recheck failed: {name}")));
        }
        Ok(Value::Array(self.0.into_iter().map(|(n, ok)| json!({ "certificate": n, "ok": ok })).collect()))
    }
}

fn algebra_summary(a: &FDAlgebra) -> Value {
    json!({
        "field": a.field().to_string(),
        "dim": a.dim(),
        "basis": a.basis_labels(),
        "idempotents": a.idempotent_labels(),
        "classes": a.class_labels(),
        "radical_dim": a.radical().dim(),
        "radical_squared_dim": a.radical_squared().dim(),
        "split": a.is_split(),
        "basic": a.is_basic(),
        "semisimple": a.is_semisimple(),
    })
}

/// Unit, associativity and nilpotent radical, from the structure constants.
fn recheck_algebra(r: &mut Recheck, name: &str, a: &FDAlgebra) {
    let s = a.structure();
    r.check(format!("{name}: associative"), s.associativity_witness().is_none());
    let unital = (0..a.dim()).all(|i| {
        let b = a.basis_element(i);
        a.mul(a.unit(), &b) == b && a.mul(&b, a.unit()) == b
    });
    r.check(format!("{name}: unit"), unital);
    r.check(format!("{name}: radical nilpotent"), s.is_nilpotent_ideal(a.radical()));
}

pub fn algebra_validate(p: &Problem, fl: &Flags) -> Result<Body> {
    let a = p.lambda()?;
    let mut result = json!({ "algebra": algebra_summary(a) });
    result["algebra"]["global_dimension"] = to_value(&global_dimension(a, 8));
    if let Some(e) = &p.embedding {
        result["subalgebra"] = algebra_summary(e.source());
    }
    let recheck = if fl.recheck {
        let mut r = Recheck::default();
        recheck_algebra(&mut r, "algebra", a);
        if let Some(e) = &p.embedding {
            recheck_algebra(&mut r, "subalgebra", e.source());
            r.check("inclusion multiplicative", AlgebraEmbedding::new(e.source().clone(), a.clone(), e.matrix().clone()).is_ok());
        }
        Some(r.finish()?)
    } else {
        None
    };
    Ok(Body { verdict: Outcome::Pass, result, recheck })
}

pub fn qh_check(p: &Problem, fl: &Flags) -> Result<Body> {
    let a = p.lambda()?;
    let order = p.order_lambda()?;
    let (verdict, system) = is_quasi_hereditary(a, order)?;
    let recheck = if fl.recheck {
        let mut r = Recheck::default();
        for (c, cert) in verdict.certificates.iter().enumerate() {
            if let Some(cert) = cert {
                let label = &a.class_labels()[c];
                r.check(format!("Δ-filtration of P({label})"), cert.verify(&projective(a, c).0, &system).is_ok());
            }
        }
        Some(r.finish()?)
    } else {
        None
    };
    Ok(Body { verdict: Outcome::of(verdict.quasi_hereditary), result: to_value(&verdict), recheck })
}

/// The coring of a bocs input, or the dual coring of an extension.
fn coring_of(p: &Problem) -> Result<(Coring, SimpleOrder)> {
    match p.source()? {
        Source::Bocs(c) => Ok((c.clone(), p.order_b()?.clone())),
        Source::Extension(e) => Ok((dual_coring(e)?.coring, p.order_b()?.clone())),
    }
}

/// Rebuilds a coring from its serialised form alone.
fn rebuild(c: &Coring, order: &SimpleOrder) -> Result<Coring> {
    let file: ProblemFile = serde_json::from_value(json!({
        "field": c.field(),
        "bocs": bocs_spec(c, Some(order)),
    }))
    .map_err(|e| Error::TheoremViolation(format!("serialised coring does not parse: {e}")))?;
    let p = borelbocs::io::build_problem(&file)?;
    p.bocs.ok_or_else(|| Error::TheoremViolation("serialised coring lost its bocs".into()))
}

pub fn coring_build(p: &Problem, fl: &Flags) -> Result<Body> {
    let e = p.embedding()?;
    let order = p.order_b()?;
    let d = dual_coring(e)?;
    d.coring.verify()?;
    let cs = counit_surjective(&d.coring)?;
    let split = match splitting_equivalences(e) {
        Ok(s) => Some(s),
        Err(Error::Precondition(_)) => None,
        Err(err) => return Err(err),
    };
    let agree = split.as_ref().map(|s| s.verdicts().iter().all(|&v| v == s.verdicts()[0]));
    if agree == Some(false) {
        return Err(Error::TheoremViolation(format!("the four splitting verdicts disagree: {:?}", split.unwrap().verdicts())));
    }
    let result = json!({
        "coring": bocs_spec(&d.coring, Some(order)),
        "dim": d.coring.dim(),
        "axioms": "verified",
        "counit": cs,
        "equivalences": split,
    });
    let recheck = if fl.recheck {
        let mut r = Recheck::default();
        let c = rebuild(&d.coring, order)?;
        r.check("coring axioms on the serialised coring", c.verify().is_ok());
        if let Some(x) = &cs.preimage_of_one {
            r.check("ε(w) = 1", &c.epsilon(x) == c.base().unit());
        }
        if let Some(pi) = split.as_ref().and_then(|s| s.splitting.as_ref()) {
            let b = e.source();
            let id = pi.mul(e.matrix()) == Matrix::identity(b.field(), b.dim());
            let linear = (0..b.dim()).all(|j| {
                pi.mul(&e.target().right_mult(&e.matrix().column(j))) == b.right_basis_mult()[j].mul(pi)
            });
            r.check("π∘ι = 1 with π right B-linear", id && linear);
        }
        Some(r.finish()?)
    } else {
        None
    };
    Ok(Body { verdict: Outcome::Pass, result, recheck })
}

pub fn bocs_check(p: &Problem, fl: &Flags) -> Result<Body> {
    let (c, order) = coring_of(p)?;
    let budget = p.options.budget();
    let directed = is_directed_bocs(&c, &order)?;
    let search = group_like_search(&c, &budget)?;
    // The reduction criterion needs a projective W̄.
    let projective = directed.report.as_ref().is_some_and(|r| r.bimodule_projective());
    let reduction = match &search.omega {
        Some(w) if projective => Some(regularisation_applicable(&c, w, false)?),
        _ => None,
    };
    let normal = search.verdict == GroupLikeVerdict::Found;
    let regular = reduction.as_ref().map(Option::is_none);
    let result = json!({
        "dim": c.dim(),
        "directed": directed,
        "normal": search.verdict,
        "group_like": search,
        "regular_in_degree_one": regular,
        "reduction": reduction.flatten(),
    });
    let recheck = if fl.recheck {
        let mut r = Recheck::default();
        let rebuilt = rebuild(&c, &order)?;
        r.check("coring axioms", rebuilt.verify().is_ok());
        if let Some(w) = &search.omega {
            r.check("ω group-like", group_like_verify(&rebuilt, w));
        }
        Some(r.finish()?)
    } else {
        None
    };
    let verdict = Outcome::of(directed.directed && normal && regular == Some(true));
    Ok(Body { verdict, result, recheck })
}

pub fn bocs_regularize(p: &Problem, fl: &Flags, widen: bool, max_steps: usize) -> Result<Body> {
    let (c, order) = coring_of(p)?;
    let search = group_like_search(&c, &p.options.budget())?;
    let omega = search
        .omega
        .ok_or_else(|| Error::Precondition(format!("regularisation needs a group-like element ({:?})", search.verdict)))?;
    let steps = regularise(&c, &omega, &order, widen, max_steps)?;
    let (last_c, last_w) = steps.last().map_or((&c, &omega), |s| (&s.coring, &s.omega));
    let remaining = regularisation_applicable(last_c, last_w, widen)?;
    let recheck = if fl.recheck {
        let mut r = Recheck::default();
        for (k, s) in steps.iter().enumerate() {
            r.check(format!("step {}: coring axioms", k + 1), s.coring.verify().is_ok());
            r.check(format!("step {}: ω group-like", k + 1), group_like_verify(&s.coring, &s.omega));
        }
        r.check("no reduction left", regularisation_applicable(last_c, last_w, widen)?.is_none());
        Some(r.finish()?)
    } else {
        None
    };
    let result = json!({
        "widened": widen,
        "steps": steps,
        "regular": remaining.is_none(),
        "final": { "base_dim": last_c.base().dim(), "coring_dim": last_c.dim() },
    });
    Ok(Body { verdict: Outcome::of(remaining.is_none()), result, recheck })
}

pub fn right_algebra(p: &Problem, fl: &Flags) -> Result<Body> {
    let r = match p.source()? {
        Source::Extension(e) => right_algebra_of_dual(&dual_coring(e)?)?,
        Source::Bocs(c) => borelbocs::coring::right_algebra(c)?,
    };
    let result = json!({
        "algebra": algebra_spec(&r.algebra),
        "summary": algebra_summary(&r.algebra),
        "unit_embedding": matrix_rows(r.unit_embedding.matrix()),
        "ev": r.ev.as_ref().map(|ev| json!({
            "matrix": matrix_rows(ev.matrix()),
            "certificate": "bijective algebra map",
        })),
    });
    let recheck = if fl.recheck {
        let mut rc = Recheck::default();
        let rebuilt = build_algebra(r.algebra.field(), &algebra_spec(&r.algebra), &p.options, "")?;
        recheck_algebra(&mut rc, "R", &rebuilt);
        rc.check(
            "B -> R multiplicative",
            AlgebraEmbedding::new(r.unit_embedding.source().clone(), r.algebra.clone(), r.unit_embedding.matrix().clone())
                .is_ok(),
        );
        if let Some(ev) = &r.ev {
            let ok = ev.matrix().is_invertible()
                && AlgebraEmbedding::new(ev.source().clone(), r.algebra.clone(), ev.matrix().clone()).is_ok();
            rc.check("ev: Λ -> R bijective and multiplicative", ok);
        }
        Some(rc.finish()?)
    } else {
        None
    };
    Ok(Body { verdict: Outcome::Pass, result, recheck })
}

pub fn borel_check(p: &Problem, fl: &Flags) -> Result<Body> {
    let e = p.embedding()?;
    let (ob, ol) = (p.order_b()?, p.order_lambda()?);
    let report = borel::borel_check(e, ob, ol, &p.options.borel())?;
    let recheck = if fl.recheck {
        let mut r = Recheck::default();
        if let Some(w) = report.normality.as_ref().and_then(|n| n.omega()) {
            let c = rebuild(&dual_coring(e)?.coring, ob)?;
            r.check("ω group-like in the dual coring", group_like_verify(&c, w));
        }
        let b = e.source();
        let witness = report.comparisons.as_ref().and_then(|t| t.regular_witness());
        if let Some(w) = witness {
            let (i, j) = (class(b, &w.from)?, class(b, &w.to)?);
            let x = ext_comparison(e, &simple(b, i), &simple(b, j), w.degree)?;
            r.check(
                format!("comparison witness in degree {} at ({}, {})", w.degree, w.from, w.to),
                (x.source_dim, x.target_dim, x.rank) == (w.source_dim, w.target_dim, w.rank),
            );
        }
        Some(r.finish()?)
    } else {
        None
    };
    let verdict = Outcome::of(report.flags().iter().all(|&s| s == borel::Status::Pass));
    Ok(Body { verdict, result: to_value(&report), recheck })
}

pub fn roundtrip(p: &Problem, _fl: &Flags) -> Result<Body> {
    let opts = p.options.borel();
    let report = match p.source()? {
        Source::Extension(e) => roundtrip_extension(e, p.order_b()?, p.order_lambda()?, &opts)?,
        Source::Bocs(c) => roundtrip_bocs(c, p.order_b()?, &opts)?,
    };
    Ok(Body { verdict: Outcome::Pass, result: to_value(&report), recheck: None })
}

fn class(b: &FDAlgebra, label: &str) -> Result<usize> {
    b.class_index(label).ok_or_else(|| {
        Error::Precondition(format!("{label} is not a simple class of B; expected one of {:?}", b.class_labels()))
    })
}

pub fn ext(p: &Problem, fl: &Flags, from: &str, to: &str, degree: usize, over: Over) -> Result<Body> {
    let e = p.embedding()?;
    let b = e.source();
    let (i, j) = (class(b, from)?, class(b, to)?);
    let (li, lj) = (simple(b, i), simple(b, j));
    let mut rc = Recheck::default();
    let (verdict, result) = match over {
        Over::B => {
            let d = ext_dim(&li, &lj, degree)?;
            if fl.recheck && degree == 1 {
                rc.check("cocycle oracle over B", ext1_cocycle_oracle(&li, &lj)? == d);
            }
            (Outcome::Pass, json!({ "over": "B", "dim": d }))
        }
        Over::Lambda => {
            let (mi, mj) = (induct(e, &li)?.module, induct(e, &lj)?.module);
            let d = ext_dim(&mi, &mj, degree)?;
            if fl.recheck && degree == 1 {
                rc.check("cocycle oracle over Λ", ext1_cocycle_oracle(&mi, &mj)? == d);
            }
            (Outcome::Pass, json!({ "over": "Lambda", "dim": d }))
        }
        Over::Compare => {
            let x = ext_comparison(e, &li, &lj, degree)?;
            if fl.recheck {
                let (mi, mj) = (induct(e, &li)?.module, induct(e, &lj)?.module);
                rc.check("source dimension", ext_dim(&li, &lj, degree)? == x.source_dim);
                rc.check("target dimension", ext_dim(&mi, &mj, degree)? == x.target_dim);
                rc.check("rank bounded by both sides", x.rank <= x.source_dim.min(x.target_dim));
            }
            (Outcome::of(x.iso), json!({ "over": "compare", "comparison": x }))
        }
    };
    let mut result = result;
    result["from"] = json!(from);
    result["to"] = json!(to);
    result["degree"] = json!(degree);
    let recheck = if fl.recheck { Some(rc.finish()?) } else { None };
    Ok(Body { verdict, result, recheck })
}
