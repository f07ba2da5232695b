//! Exact Borel subalgebras: the flags B1–B3, H, N and R of an extension
//! `B ⊆ Λ`, bocs regularisation, and the round trip between extensions
//! and directed bocses.

mod regularise;
mod roundtrip;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::AlgebraEmbedding;
use crate::coring::{dual_coring, normality, GroupLikeVerdict, NormalityReport, SearchBudget};
use crate::error::{Error, Result};
use crate::modules::{
    ext_comparison, find_isomorphism, global_dimension, induct, projective_decomposition_right, simple,
    RightDecomposition,
};
use crate::quasihereditary::{is_directed, standard_modules, SimpleOrder};

pub use regularise::{
    delta_zero, minimal_radical_generators, morita_invariants, regularisation_applicable, regularise,
    regularise_step, Applicable, MoritaInvariants, RegularisationStep,
};
pub use roundtrip::{roundtrip_bocs, roundtrip_extension, RoundtripReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Undetermined,
    NotChecked,
}

impl Status {
    fn of(b: bool) -> Self {
        if b {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Flag {
    pub status: Status,
    pub note: String,
}

impl Flag {
    fn new(status: Status, note: impl Into<String>) -> Self {
        Flag { status, note: note.into() }
    }

    fn unchecked() -> Self {
        Flag::new(Status::NotChecked, "")
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug)]
pub struct BorelOptions {
    /// Replaces `max(gldim B, gldim Λ)` as the last degree compared.
    pub cutoff_override: Option<usize>,
    pub gldim_cap: usize,
    pub budget: SearchBudget,
    /// Search all of `rad B` for regularisation, not only minimal generators.
    pub widen_regularisation: bool,
}

impl Default for BorelOptions {
    fn default() -> Self {
        BorelOptions { cutoff_override: None, gldim_cap: 8, budget: SearchBudget::default(), widen_regularisation: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StandardMatch {
    pub b_class: String,
    pub lambda_class: String,
    pub induced_dim: usize,
    pub standard_dim: usize,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonEntry {
    pub degree: usize,
    pub from: String,
    pub to: String,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub epi: bool,
    pub mono: bool,
}

/// Induced maps `Ext^i_B(L(j), L(k)) -> Ext^i_Λ(Λ⊗L(j), Λ⊗L(k))` for all
/// simple pairs and `1 <= i <= cutoff`. Beyond the cutoff both sides vanish.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonTable {
    pub cutoff: usize,
    pub gldim_b: Option<usize>,
    pub gldim_lambda: Option<usize>,
    pub entries: Vec<ComparisonEntry>,
}

impl ComparisonTable {
    /// Epi for `i >= 1`, iso for `i >= 2`; the first offending entry.
    pub fn homological_witness(&self) -> Option<&ComparisonEntry> {
        self.entries.iter().find(|c| !c.epi || (c.degree >= 2 && !c.mono))
    }

    pub fn regular_witness(&self) -> Option<&ComparisonEntry> {
        self.entries.iter().find(|c| !(c.epi && c.mono))
    }

    pub fn iso_in_degree_one(&self) -> bool {
        self.entries.iter().filter(|c| c.degree == 1).all(|c| c.epi && c.mono)
    }
}

/// The regularity verdict cross-checked against the reduction criterion.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityCheck {
    pub iso_in_degree_one: bool,
    pub applicable: Option<Applicable>,
    pub cross_checked: bool,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BorelReport {
    pub order_b: Vec<String>,
    pub order_lambda: Vec<String>,
    pub b1: Flag,
    pub b2: Flag,
    pub b3: Flag,
    pub h: Flag,
    pub n: Flag,
    pub r: Flag,
    pub decomposition: RightDecomposition,
    pub standards: Vec<StandardMatch>,
    /// `𝕃`: the simples of `B`, in order.
    pub simple_sum: Vec<String>,
    /// `Δ`: the standard modules of `Λ`, in order.
    pub standard_sum: Vec<String>,
    pub comparisons: Option<ComparisonTable>,
    pub normality: Option<NormalityReport>,
    pub regularity: Option<RegularityCheck>,
}

impl BorelReport {
    pub fn flags(&self) -> [Status; 6] {
        [self.b1.status, self.b2.status, self.b3.status, self.h.status, self.n.status, self.r.status]
    }

    pub fn exact_borel(&self) -> bool {
        self.b1.passed() && self.b2.passed() && self.b3.passed()
    }
}

fn labels_in_order(a: &crate::algebra::FDAlgebra, o: &SimpleOrder) -> Vec<String> {
    o.sequence().iter().map(|&c| a.class_labels()[c].clone()).collect()
}

/// B1–B3. Position `k` of the two orders pairs the classes.
pub fn check_exact_borel(e: &AlgebraEmbedding, order_b: &SimpleOrder, order_l: &SimpleOrder) -> Result<BorelReport> {
    let b = e.source();
    let lam = e.target();
    if b.num_classes() != lam.num_classes() || order_b.len() != b.num_classes() || order_l.len() != lam.num_classes() {
        return Err(Error::Precondition(format!(
            "simple classes do not match: B has {}, Λ has {}",
            b.num_classes(),
            lam.num_classes()
        )));
    }
    let b1 = is_directed(b, order_b)?;
    let decomposition = projective_decomposition_right(e);
    let b2 = decomposition.projective;
    let system = standard_modules(lam, order_l)?;
    let mut standards = Vec::new();
    if b2 {
        for (&cb, &cl) in order_b.sequence().iter().zip(order_l.sequence()) {
            let induced = induct(e, &simple(b, cb))?.module;
            let delta = &system.delta[cl].module;
            let iso = induced.dim() == delta.dim() && find_isomorphism(&induced, delta)?.is_some();
            standards.push(StandardMatch {
                b_class: b.class_labels()[cb].clone(),
                lambda_class: lam.class_labels()[cl].clone(),
                induced_dim: induced.dim(),
                standard_dim: delta.dim(),
                isomorphic: iso,
            });
        }
    }
    let b3 = b2 && standards.iter().all(|s| s.isomorphic);
    if b1 && b2 && b3 && !decomposition.progenerator {
        return Err(Error::TheoremViolation("an exact Borel subalgebra with Λ_B not a progenerator".into()));
    }
    let b3_note = match standards.iter().find(|s| !s.isomorphic) {
        Some(s) => format!("Λ⊗L({}) is not isomorphic to Δ({})", s.b_class, s.lambda_class),
        None if !b2 => "induction is not exact".into(),
        None => String::new(),
    };
    Ok(BorelReport {
        order_b: labels_in_order(b, order_b),
        order_lambda: labels_in_order(lam, order_l),
        b1: Flag::new(Status::of(b1), if b1 { "" } else { "B is not directed under the order" }),
        b2: Flag::new(Status::of(b2), if b2 { "" } else { "Λ is not projective as a right B-module" }),
        b3: Flag::new(Status::of(b3), b3_note),
        h: Flag::unchecked(),
        n: Flag::unchecked(),
        r: Flag::unchecked(),
        decomposition,
        standards,
        simple_sum: labels_in_order(b, order_b),
        standard_sum: labels_in_order(lam, order_l),
        comparisons: None,
        normality: None,
        regularity: None,
    })
}

pub fn comparison_table(e: &AlgebraEmbedding, opts: &BorelOptions) -> Result<ComparisonTable> {
    if !projective_decomposition_right(e).projective {
        return Err(Error::Precondition("Λ is not projective as a right B-module".into()));
    }
    let b = e.source();
    let gldim_b = global_dimension(b, opts.gldim_cap).finite();
    let gldim_lambda = global_dimension(e.target(), opts.gldim_cap).finite();
    let cutoff = opts.cutoff_override.unwrap_or_else(|| match (gldim_b, gldim_lambda) {
        (Some(x), Some(y)) => x.max(y),
        _ => opts.gldim_cap,
    });
    let k = b.num_classes();
    let jobs: Vec<(usize, usize, usize)> =
        (1..=cutoff).flat_map(|i| (0..k).flat_map(move |j| (0..k).map(move |l| (i, j, l)))).collect();
    let entries = jobs
        .par_iter()
        .map(|&(i, j, l)| {
            let c = ext_comparison(e, &simple(b, j), &simple(b, l), i)?;
            Ok(ComparisonEntry {
                degree: i,
                from: b.class_labels()[j].clone(),
                to: b.class_labels()[l].clone(),
                source_dim: c.source_dim,
                target_dim: c.target_dim,
                rank: c.rank,
                epi: c.epi,
                mono: c.mono,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonTable { cutoff, gldim_b, gldim_lambda, entries })
}

pub fn check_homological(table: &ComparisonTable) -> Flag {
    match table.homological_witness() {
        None => Flag::new(Status::Pass, format!("checked 1 <= i <= {}", table.cutoff)),
        Some(w) => Flag::new(
            Status::Fail,
            format!("degree {} on ({}, {}): source {}, target {}, rank {}", w.degree, w.from, w.to, w.source_dim, w.target_dim, w.rank),
        ),
    }
}

pub fn check_normal(e: &AlgebraEmbedding, budget: &SearchBudget) -> Result<(Flag, NormalityReport)> {
    let d = dual_coring(e)?;
    let n = normality(&d, budget)?;
    let flag = match n.verdict() {
        GroupLikeVerdict::Found => Flag::new(Status::Pass, "group-like found"),
        GroupLikeVerdict::ProvenAbsent => Flag::new(Status::Fail, "no group-like: the system is inconsistent"),
        GroupLikeVerdict::Undetermined => Flag::new(Status::Undetermined, "search budget exhausted"),
    };
    Ok((flag, n))
}

/// R, and the equivalence of degree-one regularity with the absence of an
/// applicable reduction on the dual bocs.
pub fn check_regular(
    e: &AlgebraEmbedding,
    order_b: &SimpleOrder,
    table: &ComparisonTable,
    normal: &NormalityReport,
    opts: &BorelOptions,
) -> Result<(Flag, RegularityCheck)> {
    let Some(omega) = normal.omega() else {
        return Err(Error::Precondition("regularity is defined for normal Borel subalgebras".into()));
    };
    let flag = match table.regular_witness() {
        None => Flag::new(Status::Pass, format!("isomorphisms for 1 <= i <= {}", table.cutoff)),
        Some(w) => Flag::new(
            Status::Fail,
            format!("degree {} on ({}, {}): source {}, target {}", w.degree, w.from, w.to, w.source_dim, w.target_dim),
        ),
    };
    let iso1 = table.iso_in_degree_one();
    let d = dual_coring(e)?;
    let directed = crate::coring::is_directed_bocs(&d.coring, order_b)?;
    let mut check =
        RegularityCheck { iso_in_degree_one: iso1, applicable: None, cross_checked: false, note: String::new() };
    if !directed.directed {
        check.note = "dual bocs is not directed; reduction criterion not applied".into();
        return Ok((flag, check));
    }
    let app = regularisation_applicable(&d.coring, omega, opts.widen_regularisation)?;
    if app.is_none() != iso1 {
        return Err(Error::TheoremViolation(format!(
            "degree-one comparison is {} but a reduction is {}",
            if iso1 { "an isomorphism" } else { "not an isomorphism" },
            if app.is_some() { "applicable" } else { "not applicable" }
        )));
    }
    check.applicable = app;
    check.cross_checked = true;
    Ok((flag, check))
}

/// All six flags.
pub fn borel_check(
    e: &AlgebraEmbedding,
    order_b: &SimpleOrder,
    order_l: &SimpleOrder,
    opts: &BorelOptions,
) -> Result<BorelReport> {
    let mut report = check_exact_borel(e, order_b, order_l)?;
    if !report.b2.passed() {
        report.h = Flag::new(Status::NotChecked, "needs Λ_B projective");
        report.n = Flag::new(Status::NotChecked, "needs Λ_B projective");
        report.r = Flag::new(Status::NotChecked, "needs Λ_B projective");
        return Ok(report);
    }
    let table = comparison_table(e, opts)?;
    report.h = check_homological(&table);
    let (n, normal) = check_normal(e, &opts.budget)?;
    report.n = n;
    if report.n.passed() {
        let (r, reg) = check_regular(e, order_b, &table, &normal, opts)?;
        if r.passed() && !report.h.passed() {
            return Err(Error::TheoremViolation("regular but not homological".into()));
        }
        report.r = r;
        report.regularity = Some(reg);
    } else {
        report.r = Flag::new(Status::NotChecked, "defined for normal Borel subalgebras");
    }
    report.comparisons = Some(table);
    report.normality = Some(normal);
    Ok(report)
}

#[cfg(test)]
mod tests;
