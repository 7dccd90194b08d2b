use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::Serialize;
use trigal_core::harness::height_bound_holds;
use trigal_core::model::stream_seed;
use trigal_core::poly::{char_poly, char_poly_oracle, chebyshev_u};
use trigal_core::{IntPoly, TridiagMatrix};

use super::Outcome;
use crate::error::CliError;
use crate::output::Checks;
use crate::parallel;

#[derive(Clone, Copy, Debug)]
pub struct IdentityParams {
    pub seed: u64,
    pub matrices: u64,
    pub max_n: usize,
    pub max_entry: i64,
    pub chebyshev_max_n: usize,
    pub dyson_max_n: usize,
}

impl Default for IdentityParams {
    fn default() -> Self {
        Self { seed: 0, matrices: 500, max_n: 30, max_entry: 5, chebyshev_max_n: 200, dyson_max_n: 100 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub matrices: u64,
    pub oracle_mismatches: u64,
    pub height_bound_failures: u64,
    pub chebyshev_cases: u64,
    pub chebyshev_mismatches: u64,
    pub dyson_cases: u64,
    pub dyson_constant_term_mismatches: u64,
    pub dyson_symmetry_mismatches: u64,
    pub dyson_scaling_mismatches: u64,
    pub block_splits: u64,
    pub block_split_mismatches: u64,
}

const CHEBYSHEV_SHIFTS: [i64; 3] = [-3, 0, 2];
const DYSON_SCALES: [i64; 3] = [1, 2, 3];

fn rng(seed: u64, stream: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(stream_seed(seed, stream))
}

fn random_matrix(r: &mut Xoshiro256StarStar, n: usize, e: i64) -> TridiagMatrix {
    let diag = (0..n).map(|_| r.gen_range(-e..=e)).collect();
    let off = (1..n).map(|_| r.gen_range(-e..=e)).collect();
    TridiagMatrix::new(diag, off).expect("lengths agree")
}

/// `c_i 2^i b^i == u_i b^n` for every coefficient, i.e. `p(x) = b^n U_n(x / 2b)`.
fn matches_scaled_chebyshev(p: &IntPoly, u: &IntPoly, b: i64, n: usize) -> bool {
    let b = BigInt::from(b);
    let bn = b.pow(n as u32);
    p.degree() == u.degree()
        && (0..=n).all(|i| {
            let lhs = p.coeff(i) * (BigInt::from(2) * &b).pow(i as u32);
            lhs == u.coeff(i) * &bn
        })
}

fn count(flags: impl IntoIterator<Item = bool>) -> u64 {
    flags.into_iter().filter(|&b| b).count() as u64
}

pub fn identities(params: &IdentityParams) -> Result<Outcome<IdentityReport>, CliError> {
    let seed = params.seed;
    let indices: Vec<u64> = (0..params.matrices).collect();
    let random = parallel::map(&indices, |&i| -> Result<(bool, bool), CliError> {
        let mut r = rng(seed, i);
        let n = r.gen_range(1..=params.max_n);
        let m = random_matrix(&mut r, n, params.max_entry);
        let p = char_poly(&m);
        let oracle_ok = p == char_poly_oracle(&m);
        let height_ok = height_bound_holds(m.diag(), m.offdiag(), &p)?;
        Ok((oracle_ok, height_ok))
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;

    let ns: Vec<usize> = (1..=params.chebyshev_max_n).collect();
    let chebyshev = parallel::map(&ns, |&n| {
        let u = chebyshev_u(n);
        CHEBYSHEV_SHIFTS
            .iter()
            .map(|&v| {
                let m = TridiagMatrix::with_unit_offdiag(vec![v; n]);
                matches_scaled_chebyshev(&char_poly(&m).shift(v), &u, 1, n)
            })
            .collect::<Vec<_>>()
    });

    let ns: Vec<usize> = (1..=params.dyson_max_n).collect();
    let dyson = parallel::map(&ns, |&n| {
        let mut r = rng(seed ^ 0xD1CE, n as u64);
        let w: Vec<i64> = (1..n).map(|_| r.gen_range(1..=params.max_entry)).collect();
        let p = char_poly(&TridiagMatrix::new(vec![0; n], w.clone()).expect("lengths agree"));
        let expected_constant = if n % 2 == 1 {
            BigInt::from(0)
        } else {
            let prod: BigInt = w.iter().step_by(2).map(|&x| BigInt::from(x * x)).product();
            if (n / 2) % 2 == 1 { -prod } else { prod }
        };
        let reflected = p.reflect();
        let symmetric = if n % 2 == 0 { reflected == p } else { reflected == -&p };
        let u = chebyshev_u(n);
        let scaling = DYSON_SCALES.iter().all(|&b| {
            let m = TridiagMatrix::new(vec![0; n], vec![b; n - 1]).expect("lengths agree");
            matches_scaled_chebyshev(&char_poly(&m), &u, b, n)
        });
        (p.constant_term() == expected_constant, symmetric, scaling)
    });

    let splits: Vec<u64> = (0..params.matrices).collect();
    let blocks = parallel::map(&splits, |&i| {
        let mut r = rng(seed ^ 0xB10C, i);
        let n = r.gen_range(2..=params.max_n);
        let m = random_matrix(&mut r, n, params.max_entry);
        let j = r.gen_range(1..n);
        let mut off = m.offdiag().to_vec();
        off[j - 1] = 0;
        let whole = char_poly(&TridiagMatrix::new(m.diag().to_vec(), off.clone()).expect("lengths agree"));
        let top = TridiagMatrix::new(m.diag()[..j].to_vec(), off[..j - 1].to_vec()).expect("lengths agree");
        let bottom = TridiagMatrix::new(m.diag()[j..].to_vec(), off[j..].to_vec()).expect("lengths agree");
        whole == &char_poly(&top) * &char_poly(&bottom)
    });

    let report = IdentityReport {
        matrices: params.matrices,
        oracle_mismatches: count(random.iter().map(|r| !r.0)),
        height_bound_failures: count(random.iter().map(|r| !r.1)),
        chebyshev_cases: chebyshev.iter().map(|c| c.len() as u64).sum(),
        chebyshev_mismatches: count(chebyshev.iter().flatten().map(|ok| !ok)),
        dyson_cases: dyson.len() as u64,
        dyson_constant_term_mismatches: count(dyson.iter().map(|d| !d.0)),
        dyson_symmetry_mismatches: count(dyson.iter().map(|d| !d.1)),
        dyson_scaling_mismatches: count(dyson.iter().map(|d| !d.2)),
        block_splits: blocks.len() as u64,
        block_split_mismatches: count(blocks.iter().map(|ok| !ok)),
    };
    let mut checks = Checks::default();
    checks
        .add("oracle_equality", report.oracle_mismatches == 0)
        .add("height_bound", report.height_bound_failures == 0)
        .add("chebyshev", report.chebyshev_mismatches == 0)
        .add("dyson_constant_term", report.dyson_constant_term_mismatches == 0)
        .add("dyson_symmetry", report.dyson_symmetry_mismatches == 0)
        .add("dyson_scaling", report.dyson_scaling_mismatches == 0)
        .add("block_splitting", report.block_split_mismatches == 0);
    Ok(Outcome::new(checks, report))
}
