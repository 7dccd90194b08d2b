//! Experiment kernels: root statistics over prime ranges, Galois-group
//! certificates from factorization patterns, and per-sample analysis of the
//! random matrix models.
//!
//! Everything here is sequential and deterministic. Work that can be split
//! (primes of a range, samples of a population) is exposed one unit at a
//! time so a caller can distribute it and merge the results in index order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::model::{ModelConfig, ModelKind};
use crate::modp::{self, falling_factorial, sieve_range};
use crate::poly::{self, char_poly, IntPoly};
use crate::psl2;
use crate::wreath::orbit_count_formula;

/// Root and factorization data of one polynomial at one prime.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebotarevRecord {
    pub p: u64,
    pub log_p: f64,
    pub r_all: u64,
    pub r_nonzero: u64,
    /// Degrees of the distinct irreducible factors, ascending.
    pub degrees: Vec<usize>,
    pub squarefree: bool,
}

impl ChebotarevRecord {
    pub fn roots(&self, exclude_zero: bool) -> u64 {
        if exclude_zero {
            self.r_nonzero
        } else {
            self.r_all
        }
    }
}

/// Reduces `f` at `p` and records its distinct roots and factor degrees.
pub fn chebotarev_record(f: &IntPoly, p: u64) -> Result<ChebotarevRecord> {
    let fp = f.reduce_mod(p)?;
    let pattern = modp::factor_degree_multiset(&fp)?;
    let r_all = if pattern.squarefree {
        pattern.linear_count()
    } else {
        modp::count_distinct_roots(&fp)?
    } as u64;
    let zero_root = fp.coeffs().first().is_none_or(|&c| c == 0);
    Ok(ChebotarevRecord {
        p,
        log_p: libm::log(p as f64),
        r_all,
        r_nonzero: r_all - zero_root as u64,
        degrees: pattern.degrees,
        squarefree: pattern.squarefree,
    })
}

/// Why a prime of the range did not contribute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SkipReason {
    /// At or below the generation threshold of the model.
    BelowThreshold,
    /// Divides a sampled off-diagonal entry.
    DividesOffdiagonal,
}

impl SkipReason {
    pub fn name(&self) -> &'static str {
        match self {
            SkipReason::BelowThreshold => "below_threshold",
            SkipReason::DividesOffdiagonal => "divides_offdiagonal",
        }
    }
}

/// A prime left out of the averages, with the reason.
pub type Skipped = (u64, SkipReason);

/// Which primes of `(x, 2x]` to use and how to weight roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebotarevPlan {
    pub x: u64,
    pub k_max: u32,
    pub exclude_zero: bool,
    /// Primes `<= min_prime` are skipped.
    pub min_prime: u64,
    /// Primes dividing any of these are skipped.
    pub offdiag: Vec<i64>,
}

impl ChebotarevPlan {
    pub fn new(x: u64, k_max: u32, exclude_zero: bool) -> Self {
        Self { x, k_max, exclude_zero, min_prime: 5, offdiag: Vec::new() }
    }

    /// Splits the prime range into used and skipped primes.
    pub fn primes(&self) -> Result<(Vec<u64>, Vec<Skipped>)> {
        let range = sieve_range(self.x)?;
        let mut used = Vec::with_capacity(range.primes.len());
        let mut skipped = Vec::new();
        for p in range.primes {
            if p <= self.min_prime {
                skipped.push((p, SkipReason::BelowThreshold));
            } else if self.offdiag.iter().any(|&w| w.unsigned_abs() % p == 0) {
                skipped.push((p, SkipReason::DividesOffdiagonal));
            } else {
                used.push(p);
            }
        }
        Ok((used, skipped))
    }
}

/// `A_k` with the standard error of its weighted mean.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub k: u32,
    pub value: f64,
    pub std_error: f64,
}

/// `A_k = (1/x) sum log p (r_p)_k` over records sorted by `p`.
///
/// The error treats `(r_p)_k` as independent draws with the weighted sample
/// variance `s^2`, giving `s sqrt(sum log^2 p) / x`.
pub fn estimates(records: &[ChebotarevRecord], x: u64, k_max: u32, exclude_zero: bool) -> Vec<Estimate> {
    let xf = x as f64;
    (1..=k_max)
        .map(|k| {
            let mut sum_w = 0.0;
            let mut sum_w2 = 0.0;
            let mut sum_wy = 0.0;
            for r in records {
                let y = falling_factorial(r.roots(exclude_zero), k as u64) as f64;
                sum_w += r.log_p;
                sum_w2 += r.log_p * r.log_p;
                sum_wy += r.log_p * y;
            }
            if records.is_empty() {
                return Estimate { k, value: 0.0, std_error: 0.0 };
            }
            let mean = sum_wy / sum_w;
            let var = records
                .iter()
                .map(|r| {
                    let d = falling_factorial(r.roots(exclude_zero), k as u64) as f64 - mean;
                    r.log_p * d * d
                })
                .sum::<f64>()
                / sum_w;
            Estimate { k, value: sum_wy / xf, std_error: libm::sqrt(var * sum_w2) / xf }
        })
        .collect()
}

/// Records and estimates over one prime range.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebotarevRun {
    pub records: Vec<ChebotarevRecord>,
    pub skipped: Vec<(u64, SkipReason)>,
    pub estimates: Vec<Estimate>,
}

impl ChebotarevRun {
    /// Assembles a run from records produced in any order.
    pub fn assemble(plan: &ChebotarevPlan, mut records: Vec<ChebotarevRecord>, skipped: Vec<(u64, SkipReason)>) -> Self {
        records.sort_by_key(|r| r.p);
        let estimates = estimates(&records, plan.x, plan.k_max, plan.exclude_zero);
        Self { records, skipped, estimates }
    }

    pub fn skip_counts(&self) -> BTreeMap<SkipReason, u64> {
        let mut out = BTreeMap::new();
        for (_, why) in &self.skipped {
            *out.entry(*why).or_insert(0) += 1;
        }
        out
    }
}

pub fn run_chebotarev(f: &IntPoly, plan: &ChebotarevPlan) -> Result<ChebotarevRun> {
    if !f.is_monic() {
        return Err(Error::Invalid("root statistics need a monic polynomial".into()));
    }
    let (used, skipped) = plan.primes()?;
    let records = used.iter().map(|&p| chebotarev_record(f, p)).collect::<Result<Vec<_>>>()?;
    Ok(ChebotarevRun::assemble(plan, records, skipped))
}

/// `C k n^k log(H n) log^2 x / sqrt(x)`.
pub fn bv_error_bound(k: u32, n: u64, height: &BigUint, x: f64, c: f64) -> f64 {
    let log_hn = ln_big(height) + libm::log(n as f64);
    let lx = libm::log(x);
    c * k as f64 * libm::pow(n as f64, k as f64) * log_hn * lx * lx / libm::sqrt(x)
}

fn ln_big(h: &BigUint) -> f64 {
    let shift = h.bits().saturating_sub(64);
    let top = (h >> shift).to_f64().unwrap_or(f64::INFINITY);
    libm::log(top) + shift as f64 * core::f64::consts::LN_2
}

/// Galois-group classification of a monic integer polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    /// Irreducible with a Jordan cycle; the discriminant was not examined.
    ContainsAn,
    Sn,
    An,
    Undetermined,
    Reducible,
}

impl Verdict {
    pub const ALL: [Verdict; 5] =
        [Verdict::ContainsAn, Verdict::Sn, Verdict::An, Verdict::Undetermined, Verdict::Reducible];

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::ContainsAn => "contains_An",
            Verdict::Sn => "Sn",
            Verdict::An => "An",
            Verdict::Undetermined => "undetermined",
            Verdict::Reducible => "reducible",
        }
    }
}

/// An explicit factor over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    PerfectPower(u32),
    IntegerRoot(i64),
}

/// A prime whose factorization pattern has an irreducible factor of prime
/// degree `q` with `n/2 < q <= n - 3`, no other degree divisible by `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JordanWitness {
    pub p: u64,
    pub q: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisCertificate {
    pub verdict: Verdict,
    pub degree: usize,
    /// The prime at which the possible factor degrees ran out.
    pub irreducible_at: Option<u64>,
    pub jordan: Option<JordanWitness>,
    pub disc_square: Option<bool>,
    pub factor: Option<Factor>,
    pub primes_tried: u64,
}

impl GaloisCertificate {
    pub fn irreducible(&self) -> bool {
        self.irreducible_at.is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub budget: u64,
    /// Stop at irreducibility instead of also hunting a Jordan cycle.
    pub irreducibility_only: bool,
    pub discriminant: bool,
}

impl CertifyOptions {
    pub fn new(budget: u64) -> Self {
        Self { budget, irreducibility_only: false, discriminant: true }
    }
}

pub fn certify_galois(f: &IntPoly, budget: u64) -> Result<GaloisCertificate> {
    certify_galois_with(f, CertifyOptions::new(budget))
}

/// Tries primes upward from the degree, keeping the set of factor degrees
/// still compatible with every square-free pattern seen so far.
pub fn certify_galois_with(f: &IntPoly, opts: CertifyOptions) -> Result<GaloisCertificate> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if !f.is_monic() || n == 0 {
        return Err(Error::Invalid("certification needs a monic polynomial of positive degree".into()));
    }
    let mut cert = GaloisCertificate {
        verdict: Verdict::Undetermined,
        degree: n,
        irreducible_at: None,
        jordan: None,
        disc_square: None,
        factor: find_factor(f),
        primes_tried: 0,
    };
    if cert.factor.is_some() {
        cert.verdict = Verdict::Reducible;
        return Ok(cert);
    }
    if n == 1 {
        cert.irreducible_at = Some(0);
    }
    let mut possible = vec![true; n];
    possible[0] = false;
    let mut p = arith::next_prime(n.max(3) as u64);
    while cert.primes_tried < opts.budget {
        let done_irr = cert.irreducible_at.is_some();
        if done_irr && (opts.irreducibility_only || cert.jordan.is_some()) {
            break;
        }
        cert.primes_tried += 1;
        let fp = f.reduce_mod(p)?;
        let pattern = modp::factor_degree_multiset(&fp)?;
        if pattern.squarefree {
            if !done_irr {
                let sums = subset_sums(&pattern.degrees, n);
                for d in 1..n {
                    possible[d] &= sums[d];
                }
                if !possible.iter().any(|&b| b) {
                    cert.irreducible_at = Some(p);
                }
            }
            if cert.jordan.is_none() {
                cert.jordan = jordan_prime(&pattern.degrees, n).map(|q| JordanWitness { p, q });
            }
        }
        p = arith::next_prime(p + 1);
    }
    if cert.irreducible_at.is_some() && cert.jordan.is_some() {
        cert.verdict = if opts.discriminant {
            let square = disc_square_test(f)?;
            cert.disc_square = Some(square);
            if square {
                Verdict::An
            } else {
                Verdict::Sn
            }
        } else {
            Verdict::ContainsAn
        };
    }
    Ok(cert)
}

fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

fn jordan_prime(degrees: &[usize], n: usize) -> Option<usize> {
    degrees.iter().copied().find(|&q| {
        2 * q > n
            && q + 3 <= n
            && arith::is_prime(q as u64)
            && degrees.iter().filter(|&&d| d % q == 0).count() == 1
    })
}

/// Perfect powers and small integer roots.
fn find_factor(f: &IntPoly) -> Option<Factor> {
    if f.degree()? < 2 {
        return None;
    }
    if let Some((m, _)) = poly::is_perfect_power(f) {
        return Some(Factor::PerfectPower(m));
    }
    let c = f.constant_term();
    if c.is_zero() {
        return Some(Factor::IntegerRoot(0));
    }
    (1..=16i64)
        .flat_map(|r| [r, -r])
        .filter(|&r| (&c % BigInt::from(r)).is_zero())
        .find(|&r| f.eval(&BigInt::from(r)).is_zero())
        .map(Factor::IntegerRoot)
}

/// Whether the discriminant of `f` is a perfect square.
pub fn disc_square_test(f: &IntPoly) -> Result<bool> {
    let d = discriminant_checked(f)?;
    Ok(poly::is_square(&d))
}

fn discriminant_checked(f: &IntPoly) -> Result<BigInt> {
    if f.degree().is_none() || !f.is_monic() {
        return Err(Error::Invalid("discriminant needs a monic polynomial".into()));
    }
    let d = poly::discriminant(f);
    if d.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    Ok(d)
}

/// `H(P) <= (2 + max|V| + max|W|^2)^n` for a sampled matrix.
pub fn height_bound_holds(diag: &[i64], offdiag: &[i64], f: &IntPoly) -> Result<bool> {
    let v = diag.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    let w = offdiag.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    let base = BigUint::from(2u32) + BigUint::from(v) + BigUint::from(w) * BigUint::from(w);
    Ok(poly::height(f)? <= base.pow(diag.len() as u32))
}

/// The polynomial whose roots are compared with the orbit counts: `P(x + a)`
/// for the Dyson model, divided by `x` when the dimension is odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisPoly {
    pub poly: IntPoly,
    /// `P(a) = 0`, i.e. the centred polynomial has the root `0`.
    pub zero_root: bool,
    pub zero_root_removed: bool,
}

pub fn analysis_poly(model: &ModelConfig, p: &IntPoly) -> AnalysisPoly {
    match model.kind() {
        ModelKind::IidDiag => AnalysisPoly {
            poly: p.clone(),
            zero_root: p.constant_term().is_zero(),
            zero_root_removed: false,
        },
        ModelKind::Dyson => {
            let centred = p.shift(model.shift());
            let zero_root = centred.constant_term().is_zero();
            if model.n() % 2 == 1 {
                if let Some(q) = centred.div_x() {
                    return AnalysisPoly { poly: q, zero_root, zero_root_removed: true };
                }
            }
            AnalysisPoly { poly: centred, zero_root, zero_root_removed: false }
        }
    }
}

/// `1` for the diagonal model, the orbit count `O(k)` for the Dyson model.
pub fn target(kind: ModelKind, k: u32) -> f64 {
    match kind {
        ModelKind::IidDiag => 1.0,
        ModelKind::Dyson => orbit_count_formula(k as u64) as f64,
    }
}

/// Smallest prime allowed in root statistics for a model.
pub fn skip_threshold(model: &ModelConfig) -> u64 {
    let (v, vp, _) = model.atom_pair();
    let c = match model.kind() {
        ModelKind::IidDiag => psl2::gen_threshold(v, vp),
        ModelKind::Dyson => psl2::dyson_threshold(v, vp),
    };
    c.max(5)
}

/// What to compute for each sample of a population.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleSettings {
    /// Root statistics over `(x, 2x]` up to `k_max`, if any.
    pub chebotarev: Option<(u64, u32)>,
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub index: u64,
    pub degree: usize,
    pub height_bound_ok: bool,
    pub perfect_power: Option<u32>,
    pub zero_root: bool,
    pub zero_root_removed: bool,
    pub certificate: GaloisCertificate,
    pub run: Option<ChebotarevRun>,
    /// Whether `|A_k - target| < 1/2`, for `k = 1..=k_max`.
    pub within: Vec<bool>,
}

impl SampleReport {
    /// No irreducibility certificate within the prime budget.
    pub fn reducibility_evidence(&self) -> bool {
        !self.certificate.irreducible()
    }

    pub fn r_nonzero_even(&self) -> bool {
        self.run.as_ref().is_none_or(|r| r.records.iter().all(|rec| rec.r_nonzero % 2 == 0))
    }
}

/// The Chebotarev plan for the analysis polynomial of one draw.
pub fn sample_plan(model: &ModelConfig, offdiag: &[i64], x: u64, k_max: u32) -> ChebotarevPlan {
    let mut plan = ChebotarevPlan::new(x, k_max, model.kind() == ModelKind::Dyson);
    plan.min_prime = skip_threshold(model);
    if model.kind() == ModelKind::Dyson {
        plan.offdiag = offdiag.to_vec();
    }
    plan
}

/// Draws sample `index` and runs the full analysis on it.
pub fn analyze_sample(model: &ModelConfig, seed: u64, index: u64, settings: &SampleSettings) -> Result<SampleReport> {
    analyze_sample_with(model, seed, index, settings, run_chebotarev)
}

/// As [`analyze_sample`] with a caller-supplied root statistics runner.
pub fn analyze_sample_with<F>(
    model: &ModelConfig,
    seed: u64,
    index: u64,
    settings: &SampleSettings,
    chebotarev: F,
) -> Result<SampleReport>
where
    F: FnOnce(&IntPoly, &ChebotarevPlan) -> Result<ChebotarevRun>,
{
    let draw = model.sample(seed, index);
    let p = char_poly(&draw.matrix());
    let height_bound_ok = height_bound_holds(&draw.diag, &draw.offdiag, &p)?;
    let perfect_power = poly::is_perfect_power(&p).map(|(m, _)| m);
    let analysis = analysis_poly(model, &p);
    let opts = CertifyOptions {
        budget: settings.budget,
        irreducibility_only: model.kind() == ModelKind::Dyson,
        discriminant: true,
    };
    let certificate = certify_galois_with(&analysis.poly, opts)?;
    let (run, within) = match settings.chebotarev {
        Some((x, k_max)) => {
            let plan = sample_plan(model, &draw.offdiag, x, k_max);
            let run = chebotarev(&analysis.poly, &plan)?;
            let within = run
                .estimates
                .iter()
                .map(|e| libm::fabs(e.value - target(model.kind(), e.k)) < 0.5)
                .collect();
            (Some(run), within)
        }
        None => (None, Vec::new()),
    };
    Ok(SampleReport {
        index,
        degree: model.n(),
        height_bound_ok,
        perfect_power,
        zero_root: analysis.zero_root,
        zero_root_removed: analysis.zero_root_removed,
        certificate,
        run,
        within,
    })
}

/// Counts over a population of sample reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PopulationSummary {
    pub samples: u64,
    pub height_bound_failures: u64,
    pub perfect_powers: u64,
    pub reducibility_evidence: u64,
    pub zero_roots: u64,
    pub verdicts: BTreeMap<Verdict, u64>,
    /// Samples with `|A_k - target| < 1/2`, indexed by `k - 1`.
    pub within: Vec<u64>,
    pub r_nonzero_odd: u64,
}

impl PopulationSummary {
    pub fn aggregate(reports: &[SampleReport]) -> Self {
        let k_max = reports.iter().map(|r| r.within.len()).max().unwrap_or(0);
        let mut s = Self {
            samples: reports.len() as u64,
            height_bound_failures: 0,
            perfect_powers: 0,
            reducibility_evidence: 0,
            zero_roots: 0,
            verdicts: Verdict::ALL.iter().map(|&v| (v, 0)).collect(),
            within: vec![0; k_max],
            r_nonzero_odd: 0,
        };
        for r in reports {
            s.height_bound_failures += !r.height_bound_ok as u64;
            s.perfect_powers += r.perfect_power.is_some() as u64;
            s.reducibility_evidence += r.reducibility_evidence() as u64;
            s.zero_roots += r.zero_root as u64;
            *s.verdicts.entry(r.certificate.verdict).or_insert(0) += 1;
            for (slot, &ok) in s.within.iter_mut().zip(&r.within) {
                *slot += ok as u64;
            }
            s.r_nonzero_odd += !r.r_nonzero_even() as u64;
        }
        s
    }

    pub fn fraction(&self, count: u64) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            count as f64 / self.samples as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Table;
    use crate::poly::TridiagMatrix;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn record_of_quadratic() {
        // x^2 + 1 splits at 13
        let r = chebotarev_record(&poly(&[1, 0, 1]), 13).unwrap();
        assert_eq!((r.r_all, r.r_nonzero, r.degrees.clone(), r.squarefree), (2, 2, vec![1, 1], true));
        let r = chebotarev_record(&poly(&[0, -1, 0, 1]), 11).unwrap();
        assert_eq!((r.r_all, r.r_nonzero), (3, 2));
        // x^2 (x - 1) at 7: not square-free
        let r = chebotarev_record(&poly(&[0, 0, -1, 1]), 7).unwrap();
        assert_eq!((r.r_all, r.r_nonzero, r.squarefree), (2, 1, false));
    }

    #[test]
    fn linear_polynomial_has_unit_density() {
        let run = run_chebotarev(&IntPoly::linear(3), &ChebotarevPlan::new(1000, 2, false)).unwrap();
        assert!((run.estimates[0].value - 1.0).abs() < 0.1);
        assert_eq!(run.estimates[1].value, 0.0);
        assert!(run.records.windows(2).all(|w| w[0].p < w[1].p));
    }

    #[test]
    fn skips_are_counted() {
        let mut plan = ChebotarevPlan::new(10, 1, true);
        plan.min_prime = 13;
        plan.offdiag = vec![17 * 3, -19];
        let (used, skipped) = plan.primes().unwrap();
        assert_eq!(used, vec![]);
        assert_eq!(
            skipped,
            vec![
                (11, SkipReason::BelowThreshold),
                (13, SkipReason::BelowThreshold),
                (17, SkipReason::DividesOffdiagonal),
                (19, SkipReason::DividesOffdiagonal),
            ]
        );
    }

    #[test]
    fn bv_bound_arithmetic() {
        let e4 = libm::exp(4.0);
        let b = bv_error_bound(1, 2, &BigUint::from(1u32), e4, 1.0);
        assert!((b - 2.0 * core::f64::consts::LN_2 * 16.0 / libm::exp(2.0)).abs() < 1e-12);
        assert!((bv_error_bound(1, 2, &BigUint::from(1u32), e4, 2.0) - 2.0 * b).abs() < 1e-12);
        assert!(bv_error_bound(2, 2, &BigUint::from(1u32), e4, 1.0) > b);
        assert!(bv_error_bound(1, 3, &BigUint::from(1u32), e4, 1.0) > b);
        assert!(bv_error_bound(1, 2, &BigUint::from(5u32), e4, 1.0) > b);
        let big = BigUint::from(3u32).pow(500);
        let l = ln_big(&big);
        assert!((l - 500.0 * libm::log(3.0)).abs() < 1e-9);
    }

    #[test]
    fn square_discriminants() {
        assert!(disc_square_test(&poly(&[-1, -3, 0, 1])).unwrap());
        assert!(disc_square_test(&poly(&[-1, 0, 1])).unwrap());
        assert!(!disc_square_test(&poly(&[1, 0, 1])).unwrap());
        assert_eq!(disc_square_test(&poly(&[1, 2, 1])), Err(Error::ZeroDiscriminant));
    }

    #[test]
    fn reducible_inputs() {
        let q = poly(&[-2, 0, 1]);
        let c = certify_galois(&q.pow(2), 100).unwrap();
        assert_eq!((c.verdict, c.factor), (Verdict::Reducible, Some(Factor::PerfectPower(2))));
        let f = &poly(&[0, 1]) * &trinomial(9);
        assert_eq!(certify_galois(&f, 100).unwrap().factor, Some(Factor::IntegerRoot(0)));
        let f = &IntPoly::linear(-3) * &trinomial(9);
        assert_eq!(certify_galois(&f, 100).unwrap().factor, Some(Factor::IntegerRoot(-3)));
    }

    fn trinomial(n: usize) -> IntPoly {
        // x^n - x - 1 is irreducible with Galois group S_n
        let mut c = vec![0i64; n + 1];
        c[0] = -1;
        c[1] = -1;
        c[n] = 1;
        poly(&c)
    }

    #[test]
    fn symmetric_trinomial() {
        let c = certify_galois(&trinomial(11), 1000).unwrap();
        assert_eq!(c.verdict, Verdict::Sn);
        assert!(c.irreducible() && c.jordan.is_some());
        assert_eq!(c.disc_square, Some(false));
        let mut o = CertifyOptions::new(1000);
        o.discriminant = false;
        assert_eq!(certify_galois_with(&trinomial(11), o).unwrap().verdict, Verdict::ContainsAn);
    }

    #[test]
    fn product_of_irreducibles_is_never_certified() {
        let f = &trinomial(5) * &trinomial(7);
        let c = certify_galois(&f, 300).unwrap();
        assert_eq!(c.verdict, Verdict::Undetermined);
        assert!(!c.irreducible());
        assert_eq!(c.primes_tried, 300);
    }

    #[test]
    fn small_degree_stays_undetermined() {
        let c = certify_galois(&poly(&[-1, -3, 0, 1]), 50).unwrap();
        assert!(c.irreducible());
        assert_eq!(c.verdict, Verdict::Undetermined);
    }

    #[test]
    fn dyson_odd_dimension_loses_zero_root() {
        let model = ModelConfig::dyson(Table::uniform(&[1, 2]).unwrap(), 3, 7).unwrap();
        let draw = model.sample(1, 0);
        let p = char_poly(&draw.matrix());
        let a = analysis_poly(&model, &p);
        assert!(a.zero_root && a.zero_root_removed);
        assert_eq!(a.poly.degree(), Some(6));
        assert_eq!(a.poly.reflect(), a.poly);
    }

    #[test]
    fn shifted_dyson_matches_centred() {
        let shifted = ModelConfig::dyson(Table::uniform(&[1, 2]).unwrap(), -4, 10).unwrap();
        let centred = ModelConfig::dyson(Table::uniform(&[1, 2]).unwrap(), 0, 10).unwrap();
        let settings = SampleSettings { chebotarev: Some((200, 3)), budget: 200 };
        let a = analyze_sample(&shifted, 9, 2, &settings).unwrap();
        let b = analyze_sample(&centred, 9, 2, &settings).unwrap();
        assert_eq!(a.run, b.run);
        assert_eq!(a.certificate, b.certificate);
    }

    #[test]
    fn height_bound_on_draws() {
        let m = ModelConfig::bernoulli(25);
        for i in 0..20 {
            let d = m.sample(3, i);
            let f = char_poly(&d.matrix());
            assert!(height_bound_holds(&d.diag, &d.offdiag, &f).unwrap());
        }
        let t = TridiagMatrix::new(vec![0, 0], vec![0]).unwrap();
        assert!(height_bound_holds(t.diag(), t.offdiag(), &char_poly(&t)).unwrap());
    }

    #[test]
    fn population_counts() {
        let m = ModelConfig::bernoulli(12);
        let settings = SampleSettings { chebotarev: Some((100, 2)), budget: 500 };
        let reports: Vec<_> = (0..6).map(|i| analyze_sample(&m, 5, i, &settings).unwrap()).collect();
        let s = PopulationSummary::aggregate(&reports);
        assert_eq!(s.samples, 6);
        assert_eq!(s.within.len(), 2);
        assert_eq!(s.verdicts.values().sum::<u64>(), 6);
        assert_eq!(s.height_bound_failures, 0);
    }
}
