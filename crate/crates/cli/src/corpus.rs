//! `fixtures run`: the built-in corpus against its expected values.

use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use borelbocs::borel::{
    borel_check, morita_invariants, regularisation_applicable, regularise, roundtrip_bocs, roundtrip_extension,
    BorelOptions, BorelReport, Status,
};
use borelbocs::coring::{
    counit_surjective, dual_coring, group_like_search, kernel_of_counit, projectivising_tests, splitting_equivalences,
    GroupLikeVerdict,
};
use borelbocs::fixtures::{self, Fixture};
use borelbocs::modules::{ext_dim, induct, projective_decomposition_right, simple};
use borelbocs::quasihereditary::{is_quasi_hereditary, SimpleOrder};
use borelbocs::{Error, Result};

use crate::commands::Flags;
use crate::report::{emit, Envelope, Outcome};

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub found: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct FixtureRun {
    pub fixture: String,
    pub description: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub exit_code: Option<i32>,
    #[serde(skip)]
    pub millis: f64,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn eq<T: std::fmt::Debug + PartialEq>(&mut self, name: &str, expected: T, found: T) {
        let pass = expected == found;
        self.0.push(Check { name: name.into(), expected: format!("{expected:?}"), found: format!("{found:?}"), pass });
    }
}

fn flags_of(r: &BorelReport) -> [Status; 6] {
    r.flags()
}

fn check_b(fx: &Fixture) -> Result<BorelReport> {
    borel_check(&fx.embedding, order_b(fx)?, &fx.order_lambda, &BorelOptions::default())
}

fn order_b(fx: &Fixture) -> Result<&SimpleOrder> {
    fx.order_b.as_ref().ok_or_else(|| Error::Precondition("fixture has no order on B".into()))
}

fn splitting_table(c: &mut Checks, fx: &Fixture, expected: bool) -> Result<()> {
    let s = splitting_equivalences(&fx.embedding)?;
    c.eq("equivalence verdicts", [expected; 4], s.verdicts());
    Ok(())
}

fn f0(c: &mut Checks, fx: &Fixture) -> Result<()> {
    c.eq("flags B1 B2 B3 H N R", [Status::Pass; 6], flags_of(&check_b(fx)?));
    Ok(())
}

fn f1(c: &mut Checks, fx: &Fixture) -> Result<()> {
    let d = projective_decomposition_right(&fx.embedding);
    let b = fx.embedding.source();
    // The idempotent called e_2 in the example is the matrix unit E11.
    let two = b.class_index("E11").ok_or_else(|| Error::Precondition("F1 lost its class E11".into()))?;
    let mults: Vec<usize> = d.multiplicities.iter().map(|x| x.1).collect();
    let mut expected = vec![0; b.num_classes()];
    expected[two] = 2;
    c.eq("Λ_B ≅ (E11·B)^2", expected, mults);
    c.eq("progenerator", false, d.progenerator);
    c.eq("counit surjective", false, counit_surjective(&dual_coring(&fx.embedding)?.coring)?.surjective);
    splitting_table(c, fx, false)
}

fn f2(c: &mut Checks, fx: &Fixture) -> Result<()> {
    let d = projective_decomposition_right(&fx.embedding);
    c.eq("progenerator", true, d.progenerator);
    let w = dual_coring(&fx.embedding)?;
    c.eq("counit surjective", true, counit_surjective(&w.coring)?.surjective);
    splitting_table(c, fx, true)?;
    let s = group_like_search(&w.coring, &Default::default())?;
    c.eq("group-like", GroupLikeVerdict::ProvenAbsent, s.verdict);
    Ok(())
}

fn f3(c: &mut Checks, fx: &Fixture) -> Result<()> {
    let e = &fx.embedding;
    c.eq("dim Λ", 12, e.target().dim());
    c.eq("progenerator", true, projective_decomposition_right(e).progenerator);
    let b = e.source();
    let (i, j) = (b.class_index("1").unwrap_or(0), b.class_index("3").unwrap_or(2));
    let (l1, l3) = (simple(b, i), simple(b, j));
    c.eq("Ext¹_B(L1, L3)", 0, ext_dim(&l1, &l3, 1)?);
    c.eq("Ext¹_Λ(Λ⊗L1, Λ⊗L3)", 1, ext_dim(&induct(e, &l1)?.module, &induct(e, &l3)?.module, 1)?);
    let r = check_b(fx)?;
    c.eq("H", Status::Fail, r.h.status);
    let w = r.comparisons.as_ref().and_then(|t| t.homological_witness()).map(|w| (w.degree, w.from.clone(), w.to.clone()));
    c.eq("H witness", Some((1, "1".to_string(), "3".to_string())), w);
    let k = kernel_of_counit(&dual_coring(e)?.coring)?;
    c.eq("W̄ projective bimodule", false, projectivising_tests(&k.bimodule)?.bimodule_projective());
    Ok(())
}

fn f4(c: &mut Checks, fx: &Fixture) -> Result<()> {
    let kite = fixtures::kite()?;
    let (v, _) = is_quasi_hereditary(&kite, &SimpleOrder::natural(&kite))?;
    c.eq("kite quasi-hereditary", true, v.quasi_hereditary);
    c.eq(
        "Δ dimension vectors",
        vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 0, 1, 0], vec![0, 1, 0, 1]],
        v.delta_dims,
    );
    let r = check_b(fx)?;
    c.eq("B1 B2 B3", [Status::Pass; 3], [r.b1.status, r.b2.status, r.b3.status]);
    let rt = roundtrip_extension(&fx.embedding, order_b(fx)?, &fx.order_lambda, &BorelOptions::default())?;
    c.eq("round trip flags", r.flags(), rt.reconstructed.flags());
    let d = dual_coring(&fx.embedding)?;
    let back = roundtrip_bocs(&d.coring, order_b(fx)?, &BorelOptions::default())?;
    c.eq("bocs round trip flags", r.flags(), back.reconstructed.flags());
    Ok(())
}

fn f5(c: &mut Checks, fx: &Fixture) -> Result<()> {
    let r = check_b(fx)?;
    c.eq("B1 B2 B3 H N", [Status::Pass; 5], [r.b1.status, r.b2.status, r.b3.status, r.h.status, r.n.status]);
    c.eq("R", Status::Fail, r.r.status);
    let w = r.comparisons.as_ref().and_then(|t| t.regular_witness()).map(|w| w.degree);
    c.eq("R witness degree", Some(1), w);
    let d = dual_coring(&fx.embedding)?;
    let s = group_like_search(&d.coring, &Default::default())?;
    let omega = s.omega.ok_or_else(|| Error::Precondition("no group-like".into()))?;
    c.eq("reduction applicable", true, regularisation_applicable(&d.coring, &omega, false)?.is_some());
    let steps = regularise(&d.coring, &omega, order_b(fx)?, false, 5)?;
    c.eq("reduction steps", 1, steps.len());
    if let Some(last) = steps.last() {
        c.eq("regular afterwards", true, regularisation_applicable(&last.coring, &last.omega, false)?.is_none());
        let lam = fx.embedding.target();
        let target = morita_invariants(lam, SimpleOrder::natural(lam).sequence())?;
        c.eq("Cartan matrix of R", target.cartan, last.invariants.1.cartan.clone());
        c.eq("Ext¹ quiver of R", target.ext1, last.invariants.1.ext1.clone());
    }
    Ok(())
}

fn run_one(fx: Fixture) -> FixtureRun {
    let start = Instant::now();
    let mut checks = Checks::default();
    let r = match fx.name {
        "F0" => f0(&mut checks, &fx),
        "F1" => f1(&mut checks, &fx),
        "F2" => f2(&mut checks, &fx),
        "F3" => f3(&mut checks, &fx),
        "F4" => f4(&mut checks, &fx),
        "F5" => f5(&mut checks, &fx),
        _ => Ok(()),
    };
    let (error, exit_code) = match r {
        Ok(()) => (None, None),
        Err(e) => (Some(e.to_string()), Some(e.exit_code())),
    };
    FixtureRun {
        fixture: fx.name.into(),
        description: fx.description.into(),
        checks: checks.0,
        error,
        exit_code,
        millis: start.elapsed().as_secs_f64() * 1e3,
    }
}

pub fn run(name: Option<&str>, as_json: bool, flags: &Flags) -> ExitCode {
    let names: Vec<&str> = match name {
        Some(n) => vec![n],
        None => fixtures::NAMES.to_vec(),
    };
    let built: Result<Vec<Fixture>> = names.iter().map(|n| fixtures::by_name(n)).collect();
    let built = match built {
        Ok(b) => b,
        Err(e) => {
            emit(Envelope::new(None, None).with_error(&e).render("fixtures run"));
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    // Collected in input order whatever the scheduling.
    let runs: Vec<FixtureRun> = built.into_par_iter().map(run_one).collect();
    let code = runs
        .iter()
        .map(|r| match r.exit_code {
            Some(c) => c,
            None if r.checks.iter().all(|c| c.pass) => 0,
            None => 1,
        })
        .max()
        .unwrap_or(0);
    if as_json {
        let mut env = Envelope::new(None, None).with_result(Outcome::of(code == 0), json!(runs), None);
        if flags.timings {
            env = env.with_timings(json!(runs.iter().map(|r| (r.fixture.clone(), r.millis)).collect::<Vec<_>>()));
        }
        emit(env.render("fixtures run"));
    } else {
        for r in &runs {
            for c in &r.checks {
                let tag = if c.pass { "pass" } else { "FAIL" };
                if c.pass {
                    emit(format!("{tag} {} {}: {}", r.fixture, c.name, c.found));
                } else {
                    emit(format!("{tag} {} {}: expected {}, found {}", r.fixture, c.name, c.expected, c.found));
                }
            }
            if let Some(e) = &r.error {
                emit(format!("FAIL {} error: {e}", r.fixture));
            }
            if flags.timings {
                emit(format!("time {} {:.1} ms", r.fixture, r.millis));
            }
        }
    }
    ExitCode::from(code as u8)
}
