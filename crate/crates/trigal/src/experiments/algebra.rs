use serde::Serialize;
use trigal_core::cohomology::{witness_cocycle, CocycleSystem, Module, SymGroup};
use trigal_core::wreath::{
    brute_orbits, complement_block_check, derived_subgroup_check, involution_count, orbit_count_formula,
    WreathSubgroup,
};

use super::Outcome;
use crate::error::CliError;
use crate::output::Checks;

#[derive(Clone, Copy, Debug)]
pub struct WreathParams {
    pub m: usize,
    pub k: usize,
    pub subgroup: WreathSubgroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WreathReport {
    pub m: usize,
    pub k: usize,
    pub subgroup: &'static str,
    pub orbits: u64,
    /// The involution-count formula, when it applies (full group, `k <= m`).
    pub formula: Option<u64>,
    pub derived_order: Option<u64>,
    pub group_order: Option<u64>,
    pub complement_orders: Option<[u64; 4]>,
}

/// Largest `k` for which the formula is compared against a direct count of
/// involutions.
const INVOLUTION_K: usize = 8;

pub fn wreath(params: &WreathParams) -> Result<Outcome<WreathReport>, CliError> {
    let WreathParams { m, k, subgroup } = *params;
    let orbits = brute_orbits(m, k, subgroup)?;
    let formula = (subgroup == WreathSubgroup::Full).then(|| orbit_count_formula(k as u64) as u64);
    let mut checks = Checks::default();
    if let Some(f) = formula {
        checks.add("orbits_match_formula", orbits == f);
    }
    checks.add(
        "formula_counts_involutions",
        (1..=INVOLUTION_K).all(|j| orbit_count_formula(j as u64) == involution_count(j) as u128),
    );
    let derived = (2..=6).contains(&m).then(|| derived_subgroup_check(m)).transpose()?;
    if let Some(d) = &derived {
        checks.add("derived_subgroup", d.pass());
    }
    let complement = (4..=6).contains(&m).then(|| complement_block_check(m)).transpose()?;
    if let Some(c) = &complement {
        checks.add("complement_blocks", c.pass());
    }
    let report = WreathReport {
        m,
        k,
        subgroup: match subgroup {
            WreathSubgroup::Full => "full",
            WreathSubgroup::UA => "ua",
        },
        orbits,
        formula,
        derived_order: derived.as_ref().map(|d| d.derived_order),
        group_order: derived.as_ref().map(|d| d.group_order),
        complement_orders: complement.map(|c| [c.k, c.twisted, c.k_with_center, c.control]),
    };
    Ok(Outcome::new(checks, report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    pub group: &'static str,
    pub n: usize,
    pub module: &'static str,
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
    pub expected: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub rows: Vec<CohomologyRow>,
    pub mismatches: Vec<String>,
    /// `(n, is cocycle, is coboundary)` for the explicit witness.
    pub witnesses: Vec<(usize, bool, bool)>,
}

fn expected(group: SymGroup, n: usize, module: Module) -> Option<usize> {
    match (module, group) {
        (Module::Full, SymGroup::Symmetric) => Some(1),
        (Module::Full, SymGroup::Alternating) => Some(0),
        (Module::FullModConst, _) => Some(0),
        (Module::PerpModConst, SymGroup::Alternating) if n == 4 || n == 6 => Some(1),
        (Module::PerpModConst, _) => None,
    }
}

pub fn cohomology(ns: &[usize]) -> Result<Outcome<CohomologyReport>, CliError> {
    let mut rows = Vec::new();
    for &n in ns {
        for group in [SymGroup::Symmetric, SymGroup::Alternating] {
            for module in [Module::Full, Module::FullModConst, Module::PerpModConst] {
                if module == Module::PerpModConst && n % 2 == 1 {
                    continue;
                }
                let h = CocycleSystem::new(group, n, module)?.h1();
                rows.push(CohomologyRow {
                    group: match group {
                        SymGroup::Symmetric => "S",
                        SymGroup::Alternating => "A",
                    },
                    n,
                    module: match module {
                        Module::Full => "full",
                        Module::FullModConst => "full/const",
                        Module::PerpModConst => "perp/const",
                    },
                    z1: h.z1,
                    b1: h.b1,
                    h1: h.dim(),
                    expected: expected(group, n, module),
                });
            }
        }
    }
    let mismatches: Vec<String> = rows
        .iter()
        .filter(|r| r.expected.is_some_and(|e| e != r.h1))
        .map(|r| format!("{}_{} {}: h1 = {}, expected {}", r.group, r.n, r.module, r.h1, r.expected.unwrap_or(0)))
        .collect();
    let witnesses = ns
        .iter()
        .filter(|&&n| n == 4 || n == 6)
        .map(|&n| witness_cocycle(n).map(|(z, b)| (n, z, b)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut checks = Checks::default();
    checks.add("h1_table", mismatches.is_empty());
    checks.add("witness_cocycle_not_coboundary", witnesses.iter().all(|&(_, z, b)| z && !b));
    Ok(Outcome::new(checks, CohomologyReport { rows, mismatches, witnesses }))
}
