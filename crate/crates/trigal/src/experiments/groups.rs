use std::collections::BTreeMap;

use serde::Serialize;
use trigal_core::arith::is_prime;
use trigal_core::psl2::{
    dyson_gen_check, dyson_genprod_check, lemma_gen_check, lemma_genprod_check, CheckOutcome,
};

use super::Outcome;
use crate::error::CliError;
use crate::output::Checks;
use crate::parallel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupCheck {
    Gen,
    Dyson,
    GenProd,
    DysonProd,
}

impl GroupCheck {
    pub fn name(self) -> &'static str {
        match self {
            GroupCheck::Gen => "gen",
            GroupCheck::Dyson => "dyson",
            GroupCheck::GenProd => "genprod",
            GroupCheck::DysonProd => "dysonprod",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroupsParams {
    pub check: GroupCheck,
    pub v: i64,
    pub vp: i64,
    pub pmin: u64,
    pub pmax: u64,
    /// Factors of a product check, in descending order.
    pub primes: Vec<u64>,
    /// Spectral parameters of a product check; every tuple when `None`.
    pub lambdas: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub primes: Vec<u64>,
    pub lambdas: Vec<u64>,
    pub found: u64,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupsReport {
    pub check: GroupCheck,
    pub v: i64,
    pub vp: i64,
    pub primes: Vec<u64>,
    pub instances: u64,
    pub passed: u64,
    pub failed: Vec<Failure>,
    pub skipped: BTreeMap<String, u64>,
}

type Instance = (Vec<u64>, Vec<u64>);

fn all_tuples(primes: &[u64]) -> Vec<Vec<u64>> {
    primes.iter().fold(vec![Vec::new()], |acc, &p| {
        acc.into_iter()
            .flat_map(|t| {
                (0..p).map(move |l| {
                    let mut t = t.clone();
                    t.push(l);
                    t
                })
            })
            .collect()
    })
}

fn instances(params: &GroupsParams) -> Result<(Vec<u64>, Vec<Instance>), CliError> {
    match params.check {
        GroupCheck::Gen | GroupCheck::Dyson => {
            if params.pmin > params.pmax {
                return Err(CliError::Config(format!("pmin: {} exceeds pmax {}", params.pmin, params.pmax)));
            }
            let primes: Vec<u64> = (params.pmin..=params.pmax).filter(|&p| is_prime(p)).collect();
            let first = if params.check == GroupCheck::Dyson { 1 } else { 0 };
            let list = primes.iter().flat_map(|&p| (first..p).map(move |l| (vec![p], vec![l]))).collect();
            Ok((primes, list))
        }
        GroupCheck::GenProd | GroupCheck::DysonProd => {
            if params.primes.is_empty() {
                return Err(CliError::Config("primes: required for product checks".into()));
            }
            let lambdas = match &params.lambdas {
                Some(l) if l.len() != params.primes.len() => {
                    return Err(CliError::Config(format!(
                        "lambdas: {} values for {} primes",
                        l.len(),
                        params.primes.len()
                    )))
                }
                Some(l) => vec![l.clone()],
                None => all_tuples(&params.primes),
            };
            let list = lambdas.into_iter().map(|l| (params.primes.clone(), l)).collect();
            Ok((params.primes.clone(), list))
        }
    }
}

pub fn groups(params: &GroupsParams) -> Result<Outcome<GroupsReport>, CliError> {
    let (primes, list) = instances(params)?;
    let (v, vp) = (params.v, params.vp);
    let outcomes = parallel::map(&list, |(ps, ls)| match params.check {
        GroupCheck::Gen => lemma_gen_check(v, vp, ps[0], ls[0]),
        GroupCheck::Dyson => dyson_gen_check(v, vp, ps[0], ls[0]),
        GroupCheck::GenProd => lemma_genprod_check((v, vp), ps, ls),
        GroupCheck::DysonProd => dyson_genprod_check((v, vp), ps, ls),
    });
    let mut report = GroupsReport {
        check: params.check,
        v,
        vp,
        primes,
        instances: list.len() as u64,
        passed: 0,
        failed: Vec::new(),
        skipped: BTreeMap::new(),
    };
    for ((ps, ls), outcome) in list.iter().zip(outcomes) {
        match outcome {
            CheckOutcome::Pass => report.passed += 1,
            CheckOutcome::Fail { found, order } => {
                report.failed.push(Failure { primes: ps.clone(), lambdas: ls.clone(), found, order })
            }
            CheckOutcome::Skipped(reason) => *report.skipped.entry(reason).or_insert(0) += 1,
        }
    }
    let mut checks = Checks::default();
    checks.add(format!("{}_sweep", params.check.name()), report.failed.is_empty() && report.passed > 0);
    Ok(Outcome::new(checks, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_enumerate_the_product() {
        let t = all_tuples(&[3, 2]);
        assert_eq!(t, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 0], vec![2, 1]]);
    }

    #[test]
    fn small_gen_sweep() {
        let params = GroupsParams {
            check: GroupCheck::Gen,
            v: 0,
            vp: 1,
            pmin: 2,
            pmax: 13,
            primes: Vec::new(),
            lambdas: None,
        };
        let out = groups(&params).unwrap();
        assert_eq!(out.results.primes, vec![2, 3, 5, 7, 11, 13]);
        assert_eq!(out.results.passed, 5 + 7 + 11 + 13);
        assert_eq!(out.results.skipped.values().sum::<u64>(), 2 + 3);
        assert!(out.checks.all_pass());
    }
}
