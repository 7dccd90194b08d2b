use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use trigal_core::harness::{
    bv_error_bound, target, ChebotarevPlan, Factor, PopulationSummary, SampleReport, SampleSettings,
    Verdict,
};
use trigal_core::model::{ModelConfig, ModelKind};
use trigal_core::poly::height;
use trigal_core::IntPoly;

use super::Outcome;
use crate::error::CliError;
use crate::output::Checks;
use crate::parallel;
use crate::records::{emit_records, parse_records, sig17};

/// `A_k` must land in `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Expectation {
    pub k: u32,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Clone, Debug)]
pub struct ChebotarevParams {
    pub poly: IntPoly,
    pub x: u64,
    pub k_max: u32,
    pub exclude_zero: bool,
    pub min_prime: u64,
    pub offdiag: Vec<i64>,
    pub expect: Vec<Expectation>,
}

impl ChebotarevParams {
    pub fn new(poly: IntPoly, x: u64, k_max: u32) -> Self {
        Self { poly, x, k_max, exclude_zero: false, min_prime: 2, offdiag: Vec::new(), expect: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateRow {
    pub k: u32,
    pub value: f64,
    pub std_error: f64,
    pub bv_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChebotarevReport {
    pub poly: String,
    pub degree: usize,
    pub x: u64,
    pub k_max: u32,
    pub exclude_zero: bool,
    pub primes_used: u64,
    pub primes_skipped: BTreeMap<String, u64>,
    pub estimates: Vec<EstimateRow>,
}

fn plain_a1(records: &[trigal_core::harness::ChebotarevRecord], x: u64, exclude_zero: bool) -> f64 {
    let mut sum = 0.0;
    for r in records {
        sum += r.log_p * r.roots(exclude_zero) as f64;
    }
    sum / x as f64
}

pub fn chebotarev(params: &ChebotarevParams) -> Result<Outcome<ChebotarevReport>, CliError> {
    let degree = params
        .poly
        .degree()
        .filter(|&d| d > 0 && params.poly.is_monic())
        .ok_or_else(|| CliError::Config("poly: must be monic of positive degree".into()))?;
    let mut plan = ChebotarevPlan::new(params.x, params.k_max, params.exclude_zero);
    plan.min_prime = params.min_prime;
    plan.offdiag = params.offdiag.clone();
    let run = parallel::chebotarev(&params.poly, &plan)?;
    let csv = emit_records(&run.records);

    let h = height(&params.poly)?;
    let estimates: Vec<EstimateRow> = run
        .estimates
        .iter()
        .map(|e| EstimateRow {
            k: e.k,
            value: e.value,
            std_error: e.std_error,
            bv_bound: bv_error_bound(e.k, degree as u64, &h, params.x as f64, 1.0),
        })
        .collect();

    let mut checks = Checks::default();
    let parsed = parse_records(&csv)?;
    checks.add("csv_round_trip", parsed == run.records);
    if let Some(a1) = run.estimates.first() {
        checks.add("a1_from_csv", plain_a1(&parsed, params.x, params.exclude_zero) == a1.value);
    }
    checks.add(
        "record_invariants",
        run.records.iter().all(|r| r.r_nonzero <= r.r_all && r.r_all as usize <= degree),
    );
    for e in &params.expect {
        let value = run.estimates.iter().find(|est| est.k == e.k).map(|est| est.value);
        let ok = value.is_some_and(|v| (e.lo..=e.hi).contains(&v));
        checks.add(format!("A{}_in_[{},{}]", e.k, e.lo, e.hi), ok);
    }

    let report = ChebotarevReport {
        poly: params.poly.to_string(),
        degree,
        x: params.x,
        k_max: params.k_max,
        exclude_zero: params.exclude_zero,
        primes_used: run.records.len() as u64,
        primes_skipped: run.skip_counts().into_iter().map(|(k, v)| (k.name().to_string(), v)).collect(),
        estimates,
    };
    Ok(Outcome::new(checks, report).with_file("records.csv", csv))
}

#[derive(Clone, Debug)]
pub struct PopulationParams {
    pub model: ModelConfig,
    pub seed: u64,
    pub samples: u64,
    /// `(x, k_max)` for root statistics; `None` skips them.
    pub chebotarev: Option<(u64, u32)>,
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WithinRow {
    pub k: u32,
    pub target: f64,
    pub samples: u64,
    pub fraction: f64,
    pub mean_estimate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PopulationReport {
    pub kind: String,
    pub n: usize,
    pub seed: u64,
    pub samples: u64,
    pub x: Option<u64>,
    pub k_max: Option<u32>,
    pub budget: u64,
    pub height_bound_failures: u64,
    pub perfect_powers: u64,
    pub reducibility_evidence: u64,
    pub reducibility_fraction: f64,
    pub zero_roots: u64,
    pub r_nonzero_odd: u64,
    pub verdicts: BTreeMap<String, u64>,
    pub within_half: Vec<WithinRow>,
}

const SAMPLE_HEADER: &str =
    "index,verdict,irreducible_at,jordan_p,jordan_q,disc_square,integer_factor,perfect_power,zero_root,height_bound_ok";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn emit_samples(reports: &[SampleReport], k_max: u32) -> String {
    let mut out = String::from(SAMPLE_HEADER);
    for k in 1..=k_max {
        write!(out, ",A{k},se{k}").expect("writing to a string");
    }
    out.push('\n');
    for r in reports {
        let c = &r.certificate;
        let factor = match c.factor {
            Some(Factor::PerfectPower(m)) => format!("power:{m}"),
            Some(Factor::IntegerRoot(z)) => format!("root:{z}"),
            None => String::new(),
        };
        write!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.index,
            c.verdict.name(),
            opt(c.irreducible_at),
            opt(c.jordan.map(|j| j.p)),
            opt(c.jordan.map(|j| j.q)),
            opt(c.disc_square),
            factor,
            opt(r.perfect_power),
            r.zero_root,
            r.height_bound_ok
        )
        .expect("writing to a string");
        if let Some(run) = &r.run {
            for e in &run.estimates {
                write!(out, ",{},{}", sig17(e.value), sig17(e.std_error)).expect("writing to a string");
            }
        }
        out.push('\n');
    }
    out
}

fn summarize(params: &PopulationParams, reports: &[SampleReport]) -> PopulationReport {
    let s = PopulationSummary::aggregate(reports);
    let kind = params.model.kind();
    let within_half = s
        .within
        .iter()
        .enumerate()
        .map(|(i, &count)| {
            let k = i as u32 + 1;
            let values: Vec<f64> = reports
                .iter()
                .filter_map(|r| r.run.as_ref().and_then(|run| run.estimates.get(i)).map(|e| e.value))
                .collect();
            WithinRow {
                k,
                target: target(kind, k),
                samples: count,
                fraction: s.fraction(count),
                mean_estimate: values.iter().sum::<f64>() / values.len().max(1) as f64,
            }
        })
        .collect();
    PopulationReport {
        kind: kind.name().into(),
        n: params.model.n(),
        seed: params.seed,
        samples: s.samples,
        x: params.chebotarev.map(|c| c.0),
        k_max: params.chebotarev.map(|c| c.1),
        budget: params.budget,
        height_bound_failures: s.height_bound_failures,
        perfect_powers: s.perfect_powers,
        reducibility_evidence: s.reducibility_evidence,
        reducibility_fraction: s.fraction(s.reducibility_evidence),
        zero_roots: s.zero_roots,
        r_nonzero_odd: s.r_nonzero_odd,
        verdicts: s.verdicts.iter().map(|(v, &c)| (v.name().to_string(), c)).collect(),
        within_half,
    }
}

fn population_checks(report: &PopulationReport, kind: ModelKind, checks: &mut Checks, prefix: &str) {
    let frac = |c: u64| if report.samples == 0 { 0.0 } else { c as f64 / report.samples as f64 };
    let mut add = |name: &str, ok: bool| {
        checks.add(format!("{prefix}{name}"), ok);
    };
    add("height_bound", report.height_bound_failures == 0);
    for row in &report.within_half {
        add(&format!("within_half_k{}", row.k), row.fraction >= 0.9);
    }
    match kind {
        ModelKind::IidDiag => {
            let sn_an = report.verdicts[Verdict::Sn.name()] + report.verdicts[Verdict::An.name()];
            add("perfect_powers_zero", report.perfect_powers == 0);
            add("reducibility_at_most_2pct", report.reducibility_fraction <= 0.02);
            add("verdict_sn_or_an_at_least_90pct", frac(sn_an) >= 0.9);
        }
        ModelKind::Dyson => {
            add("r_nonzero_even", report.r_nonzero_odd == 0);
            if report.n % 2 == 1 {
                add("zero_root_detected_all", report.zero_roots == report.samples);
            } else {
                add("irreducible_at_least_95pct", frac(report.samples - report.reducibility_evidence) >= 0.95);
            }
        }
    }
}

fn run_population(params: &PopulationParams) -> Result<(PopulationReport, String), CliError> {
    let settings = SampleSettings { chebotarev: params.chebotarev, budget: params.budget };
    let reports = parallel::population(&params.model, params.seed, params.samples, &settings)?;
    let csv = emit_samples(&reports, params.chebotarev.map_or(0, |c| c.1));
    Ok((summarize(params, &reports), csv))
}

pub fn population(params: &PopulationParams) -> Result<Outcome<PopulationReport>, CliError> {
    let (report, csv) = run_population(params)?;
    let mut checks = Checks::default();
    population_checks(&report, params.model.kind(), &mut checks, "");
    Ok(Outcome::new(checks, report).with_file("samples.csv", csv))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DysonReport {
    pub even: PopulationReport,
    pub odd: PopulationReport,
}

/// The population at the configured size plus its opposite-parity
/// neighbour, the odd one analysed without root statistics.
pub fn dyson(params: &PopulationParams) -> Result<Outcome<DysonReport>, CliError> {
    if params.model.kind() != ModelKind::Dyson {
        return Err(CliError::Config("kind: the dyson experiment needs a dyson config".into()));
    }
    let n = params.model.n();
    let (even_n, odd_n) = if n % 2 == 0 { (n, n + 1) } else { (n + 1, n) };
    let even_params = PopulationParams { model: params.model.with_n(even_n), ..params.clone() };
    let odd_params = PopulationParams { model: params.model.with_n(odd_n), chebotarev: None, ..params.clone() };
    let (even, even_csv) = run_population(&even_params)?;
    let (odd, odd_csv) = run_population(&odd_params)?;
    let mut checks = Checks::default();
    population_checks(&even, ModelKind::Dyson, &mut checks, "even_");
    population_checks(&odd, ModelKind::Dyson, &mut checks, "odd_");
    Ok(Outcome::new(checks, DysonReport { even, odd })
        .with_file("even_samples.csv", even_csv)
        .with_file("odd_samples.csv", odd_csv))
}
