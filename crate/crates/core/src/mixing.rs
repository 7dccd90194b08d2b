//! Random walks on products of `PSL_2(p)` driven by transfer matrices.
//!
//! A chain moves from `h` to `g h` where the increment `g` is drawn from a
//! finitely supported measure `mu`. Distributions are dense vectors indexed by
//! element rank, and the transition operator acts on them by
//! `(Pi w)(x) = sum_g mu(g) w(g^-1 x)`, i.e. the matrix entry `Pi[x][y]` is the
//! probability of moving from `y` to `x`. Group walks are doubly stochastic,
//! so this matrix has unit row and column sums.
//!
//! Four chains are built from a model at spectral parameters
//! `lambda_1..lambda_k`:
//!
//! 1. one transfer step `g = (T(lambda_i - V))_i`;
//! 2. three steps `g = g_1 g_2 g_3`;
//! 3. `g = g_1^-1 g_2^-1 g_3^-1 g_4 g_5 g_6` with independent steps;
//! 4. as 3, with each `g_j` uniform on the two heaviest atoms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::{ModelConfig, ModelKind};
use crate::psl2::{self, Packed, ProductGroup, Tuple};

/// Default cap on the number of states of a chain.
pub const DEFAULT_STATE_CAP: u64 = 1 << 25;

/// Increment tables are precomputed while `increments * states` stays below
/// this many entries; larger operators multiply on the fly.
const TABLE_BUDGET: u64 = 1 << 26;

/// Which of the four chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainId {
    One = 1,
    Two = 2,
    Three = 3,
    Four = 4,
}

impl ChainId {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(ChainId::One),
            2 => Ok(ChainId::Two),
            3 => Ok(ChainId::Three),
            4 => Ok(ChainId::Four),
            _ => Err(Error::Invalid(format!("chain id {i} is not in 1..=4"))),
        }
    }

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn is_reversible(self) -> bool {
        matches!(self, ChainId::Three | ChainId::Four)
    }
}

/// A finitely supported measure on a product group, keyed by element rank.
pub type Measure = BTreeMap<u64, BigRational>;

/// A random walk on a product group.
#[derive(Clone, Debug)]
pub struct ChainSpec {
    group: ProductGroup,
    lambdas: Vec<u64>,
    chain: ChainId,
    increments: Measure,
    alpha: BigRational,
}

impl ChainSpec {
    /// A chain with an explicit increment measure.
    pub fn from_measure(group: ProductGroup, chain: ChainId, increments: Measure) -> Result<Self> {
        if increments.values().any(|w| !w.is_positive()) {
            return Err(Error::Invalid("increment probabilities must be positive".into()));
        }
        let total: BigRational = increments.values().cloned().sum();
        if !total.is_one() {
            return Err(Error::Invalid(format!("increment probabilities sum to {total}")));
        }
        let k = group.k();
        Ok(Self { group, lambdas: vec![0; k], chain, increments, alpha: BigRational::zero() })
    }

    pub fn group(&self) -> &ProductGroup {
        &self.group
    }

    pub fn primes(&self) -> Vec<u64> {
        self.group.primes()
    }

    pub fn lambdas(&self) -> &[u64] {
        &self.lambdas
    }

    pub fn chain(&self) -> ChainId {
        self.chain
    }

    pub fn increments(&self) -> &Measure {
        &self.increments
    }

    /// Smaller mass of the two heaviest atoms of the driving distribution.
    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn states(&self) -> u64 {
        self.group.order()
    }

    /// Support of the increment measure as tuples.
    pub fn support(&self) -> Vec<Tuple> {
        self.increments.keys().map(|&r| self.group.unrank(r)).collect()
    }

    /// Whether the increment measure is invariant under inversion.
    pub fn is_symmetric(&self) -> bool {
        self.increments.iter().all(|(&r, w)| {
            let inv = self.group.rank_packed(&self.group.inv_packed(&self.group.unrank_packed(r)));
            self.increments.get(&inv) == Some(w)
        })
    }
}

/// Builds chain `chain` for `model` at the given primes and spectral
/// parameters.
pub fn build_chain(model: &ModelConfig, chain: ChainId, primes: &[u64], lambdas: &[u64]) -> Result<ChainSpec> {
    if primes.len() != lambdas.len() {
        return Err(Error::Invalid(format!(
            "{} primes but {} spectral parameters",
            primes.len(),
            lambdas.len()
        )));
    }
    let group = ProductGroup::new(primes)?;
    let table = model.driving_table();
    let (v, vp, alpha) = table
        .top_two()
        .ok_or_else(|| Error::Degenerate("the chain needs two atoms".into()))?;
    let step = |value: i64| -> Result<Tuple> {
        primes
            .iter()
            .zip(lambdas)
            .map(|(&p, &l)| match model.kind() {
                ModelKind::IidDiag => Ok(psl2::transfer_mat(l, value, p)),
                ModelKind::Dyson => psl2::dyson_transfer_mat(l, value, p),
            })
            .collect()
    };
    let mut mu = Measure::new();
    let atoms: Vec<(i64, BigRational)> = match chain {
        ChainId::Four => {
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            vec![(v, half.clone()), (vp, half)]
        }
        _ => table.atoms().to_vec(),
    };
    for (value, w) in atoms {
        let r = group.rank(&step(value)?)?;
        *mu.entry(r).or_insert_with(BigRational::zero) += w;
    }
    let increments = match chain {
        ChainId::One => mu,
        ChainId::Two => convolve(&group, &convolve(&group, &mu, &mu), &mu),
        ChainId::Three | ChainId::Four => {
            let three = convolve(&group, &convolve(&group, &mu, &mu), &mu);
            convolve(&group, &invert(&group, &three), &three)
        }
    };
    Ok(ChainSpec { group, lambdas: lambdas.to_vec(), chain, increments, alpha })
}

/// Law of `a b` for independent `a ~ m1`, `b ~ m2`.
pub fn convolve(group: &ProductGroup, m1: &Measure, m2: &Measure) -> Measure {
    let mut out = Measure::new();
    for (&a, wa) in m1 {
        let pa = group.unrank_packed(a);
        for (&b, wb) in m2 {
            let ab = group.rank_packed(&group.mul_packed(&pa, &group.unrank_packed(b)));
            *out.entry(ab).or_insert_with(BigRational::zero) += wa * wb;
        }
    }
    out
}

/// Law of `a^-1` for `a ~ m`.
pub fn invert(group: &ProductGroup, m: &Measure) -> Measure {
    m.iter()
        .map(|(&a, w)| (group.rank_packed(&group.inv_packed(&group.unrank_packed(a))), w.clone()))
        .collect()
}

/// Sparse exact matrix, one map per row.
pub type SparseMatrix = Vec<BTreeMap<u64, BigRational>>;

/// The transition matrix of a chain, `Pi[x][y] = mu(x y^-1)`.
pub fn exact_matrix(spec: &ChainSpec) -> Result<SparseMatrix> {
    let g = &spec.group;
    let n = guard_states(g.order(), 1 << 16)?;
    let incs: Vec<(Packed, &BigRational)> = spec
        .increments
        .iter()
        .map(|(&r, w)| (g.inv_packed(&g.unrank_packed(r)), w))
        .collect();
    Ok((0..n)
        .map(|x| {
            let px = g.unrank_packed(x);
            let mut row = BTreeMap::new();
            for (ginv, w) in &incs {
                let y = g.rank_packed(&g.mul_packed(ginv, &px));
                *row.entry(y).or_insert_with(BigRational::zero) += *w;
            }
            row
        })
        .collect())
}

pub fn sparse_mul(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a.iter()
        .map(|row| {
            let mut out: BTreeMap<u64, BigRational> = BTreeMap::new();
            for (&k, wa) in row {
                for (&j, wb) in &b[k as usize] {
                    *out.entry(j).or_insert_with(BigRational::zero) += wa * wb;
                }
            }
            out.retain(|_, w| !w.is_zero());
            out
        })
        .collect()
}

pub fn sparse_transpose(a: &SparseMatrix) -> SparseMatrix {
    let mut out: SparseMatrix = vec![BTreeMap::new(); a.len()];
    for (i, row) in a.iter().enumerate() {
        for (&j, w) in row {
            out[j as usize].insert(i as u64, w.clone());
        }
    }
    out
}

fn guard_states(order: u64, cap: u64) -> Result<u64> {
    if order > cap {
        Err(Error::CapExceeded { states: order, cap })
    } else {
        Ok(order)
    }
}

/// A probability vector indexed by element rank.
#[derive(Clone, Debug, PartialEq)]
pub struct DistVector {
    pub probs: Vec<f64>,
}

impl DistVector {
    pub fn point_mass(states: usize, at: usize) -> Self {
        let mut probs = vec![0.0; states];
        probs[at] = 1.0;
        Self { probs }
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// `sum_x |w(x) - 1/N|`.
    pub fn l1_to_uniform(&self) -> f64 {
        let u = 1.0 / self.probs.len() as f64;
        self.probs.iter().map(|&w| libm::fabs(w - u)).sum()
    }
}

/// Exact-rational counterpart of [`DistVector`].
#[derive(Clone, Debug, PartialEq)]
pub struct ExactDist {
    pub probs: Vec<BigRational>,
}

impl ExactDist {
    pub fn l1_to_uniform(&self) -> BigRational {
        let u = BigRational::new(BigInt::one(), BigInt::from(self.probs.len()));
        self.probs.iter().map(|w| (w - &u).abs()).sum()
    }

    pub fn to_f64(&self) -> DistVector {
        DistVector { probs: self.probs.iter().map(|w| w.to_f64().unwrap_or(f64::NAN)).collect() }
    }
}

/// The transition operator of a chain in floating point.
#[derive(Clone, Debug)]
pub struct Operator {
    group: ProductGroup,
    states: usize,
    /// `(g^-1, g, mu(g))` per increment.
    incs: Vec<(Packed, Packed, f64)>,
    /// `gather[i][x] = rank(g_i^-1 x)` when tabulated.
    gather: Option<Vec<Vec<u32>>>,
    scatter: Option<Vec<Vec<u32>>>,
}

impl Operator {
    pub fn new(spec: &ChainSpec, cap: u64) -> Result<Self> {
        let g = spec.group.clone();
        let states = guard_states(g.order(), cap)?;
        let incs: Vec<(Packed, Packed, f64)> = spec
            .increments
            .iter()
            .map(|(&r, w)| {
                let p = g.unrank_packed(r);
                (g.inv_packed(&p), p, w.to_f64().expect("finite probability"))
            })
            .collect();
        let tabulate = states <= u32::MAX as u64 && incs.len() as u64 * states <= TABLE_BUDGET;
        let (gather, scatter) = if tabulate {
            let table = |pick: fn(&(Packed, Packed, f64)) -> &Packed| -> Vec<Vec<u32>> {
                incs.iter()
                    .map(|inc| (0..states).map(|x| g.left_mul_rank(pick(inc), x) as u32).collect())
                    .collect()
            };
            (Some(table(|i| &i.0)), Some(table(|i| &i.1)))
        } else {
            (None, None)
        };
        Ok(Self { group: g, states: states as usize, incs, gather, scatter })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    /// Writes `(Pi src)(x)` for `x` in `start..start + dst.len()`.
    pub fn apply_range(&self, src: &[f64], dst: &mut [f64], start: usize) {
        self.apply_impl(src, dst, start, false);
    }

    /// Writes `(Pi^t src)(x)` for `x` in `start..start + dst.len()`.
    pub fn apply_transpose_range(&self, src: &[f64], dst: &mut [f64], start: usize) {
        self.apply_impl(src, dst, start, true);
    }

    fn apply_impl(&self, src: &[f64], dst: &mut [f64], start: usize, transpose: bool) {
        let table = if transpose { &self.scatter } else { &self.gather };
        match table {
            Some(t) => {
                for (off, out) in dst.iter_mut().enumerate() {
                    let x = start + off;
                    let mut acc = 0.0;
                    for (tab, inc) in t.iter().zip(&self.incs) {
                        acc += inc.2 * src[tab[x] as usize];
                    }
                    *out = acc;
                }
            }
            None => {
                for (off, out) in dst.iter_mut().enumerate() {
                    let px = self.group.unrank_packed((start + off) as u64);
                    let mut acc = 0.0;
                    for (ginv, g, w) in &self.incs {
                        let h = if transpose { g } else { ginv };
                        let y = self.group.rank_packed(&self.group.mul_packed(h, &px));
                        acc += w * src[y as usize];
                    }
                    *out = acc;
                }
            }
        }
    }

    pub fn apply(&self, src: &[f64], dst: &mut [f64]) {
        self.apply_range(src, dst, 0);
    }

    pub fn apply_transpose(&self, src: &[f64], dst: &mut [f64]) {
        self.apply_transpose_range(src, dst, 0);
    }
}

/// Distribution after `n` steps from the identity, with the accumulated
/// floating-point error bound `n * states * 2^-53`.
#[derive(Clone, Debug)]
pub struct Evolution {
    pub dist: DistVector,
    pub error_bound: f64,
}

pub fn evolve(spec: &ChainSpec, n: u64) -> Result<Evolution> {
    evolve_capped(spec, n, DEFAULT_STATE_CAP)
}

pub fn evolve_capped(spec: &ChainSpec, n: u64, cap: u64) -> Result<Evolution> {
    let op = Operator::new(spec, cap)?;
    let mut cur = DistVector::point_mass(op.states(), spec.group.identity_rank() as usize);
    let mut next = vec![0.0; op.states()];
    for _ in 0..n {
        op.apply(&cur.probs, &mut next);
        core::mem::swap(&mut cur.probs, &mut next);
    }
    Ok(Evolution { dist: cur, error_bound: error_bound(n, op.states()) })
}

pub fn error_bound(n: u64, states: usize) -> f64 {
    n as f64 * states as f64 * libm::ldexp(1.0, -53)
}

/// Exact distribution after `n` steps from the identity.
pub fn evolve_exact(spec: &ChainSpec, n: u64) -> Result<ExactDist> {
    let m = exact_matrix(spec)?;
    let states = m.len();
    let mut cur = vec![BigRational::zero(); states];
    cur[spec.group.identity_rank() as usize] = BigRational::one();
    for _ in 0..n {
        cur = m
            .iter()
            .map(|row| row.iter().map(|(&y, w)| w * &cur[y as usize]).sum())
            .collect();
    }
    Ok(ExactDist { probs: cur })
}

/// `d_k(n)`: the l1 distance between the law after `n` steps and uniform.
pub fn d_k(spec: &ChainSpec, n: u64) -> Result<f64> {
    Ok(evolve(spec, n)?.dist.l1_to_uniform())
}

/// `d_k(0), ..., d_k(steps)` in one pass.
pub fn decay_curve(spec: &ChainSpec, steps: u64) -> Result<Vec<f64>> {
    let op = Operator::new(spec, DEFAULT_STATE_CAP)?;
    let mut cur = DistVector::point_mass(op.states(), spec.group.identity_rank() as usize);
    let mut next = vec![0.0; op.states()];
    let mut out = Vec::with_capacity(steps as usize + 1);
    out.push(cur.l1_to_uniform());
    for _ in 0..steps {
        op.apply(&cur.probs, &mut next);
        core::mem::swap(&mut cur.probs, &mut next);
        out.push(cur.l1_to_uniform());
    }
    Ok(out)
}

/// Least-squares fit of `ln y` against `x` over the given points; returns
/// `(slope, r_squared)`.
pub fn fit_log_slope(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let ys: Vec<f64> = points.iter().map(|&(_, y)| libm::log(y)).collect();
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&(x, _), &y) in points.iter().zip(&ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, r2)
}

/// Result of the spectral computation.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectral {
    /// `max(|lambda_2|, |lambda_min|)` for reversible chains, the second
    /// singular value otherwise.
    pub value: f64,
    pub lambda2: Option<f64>,
    pub lambda_min: Option<f64>,
    pub iterations: u64,
    pub residual: f64,
    pub converged: bool,
}

/// Power-iteration settings.
#[derive(Clone, Copy, Debug)]
pub struct PowerSettings {
    pub tol: f64,
    pub max_iter: u64,
    pub cap: u64,
}

impl Default for PowerSettings {
    fn default() -> Self {
        Self { tol: 1e-10, max_iter: 100_000, cap: DEFAULT_STATE_CAP }
    }
}

pub fn second_eigenvalue(spec: &ChainSpec) -> Result<Spectral> {
    second_eigenvalue_with(spec, PowerSettings::default())
}

pub fn second_eigenvalue_with(spec: &ChainSpec, s: PowerSettings) -> Result<Spectral> {
    let op = Operator::new(spec, s.cap)?;
    let n = op.states();
    let mut tmp = vec![0.0; n];
    if spec.chain.is_reversible() {
        if !spec.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let mut plus = |x: &[f64], y: &mut [f64]| {
            op.apply(x, y);
            for (yi, xi) in y.iter_mut().zip(x) {
                *yi = 0.5 * (*xi + *yi);
            }
        };
        let hi = power_iterate(n, &mut plus, s, 1);
        let mut minus = |x: &[f64], y: &mut [f64]| {
            op.apply(x, y);
            for (yi, xi) in y.iter_mut().zip(x) {
                *yi = 0.5 * (*xi - *yi);
            }
        };
        let lo = power_iterate(n, &mut minus, s, 2);
        let l2 = 2.0 * hi.0 - 1.0;
        let lmin = 1.0 - 2.0 * lo.0;
        Ok(Spectral {
            value: libm::fabs(l2).max(libm::fabs(lmin)),
            lambda2: Some(l2),
            lambda_min: Some(lmin),
            iterations: hi.1 + lo.1,
            residual: hi.2.max(lo.2),
            converged: hi.3 && lo.3,
        })
    } else {
        let mut gram = |x: &[f64], y: &mut [f64]| {
            op.apply(x, &mut tmp);
            op.apply_transpose(&tmp, y);
        };
        let (r, it, res, conv) = power_iterate(n, &mut gram, s, 3);
        let sigma = libm::sqrt(r.max(0.0));
        Ok(Spectral {
            value: sigma,
            lambda2: None,
            lambda_min: None,
            iterations: it,
            residual: res,
            converged: conv,
        })
    }
}

/// Largest eigenvalue of a symmetric positive semidefinite map restricted
/// to the vectors of zero sum. Returns `(rayleigh, iterations, residual,
/// converged)`.
fn power_iterate(
    n: usize,
    apply: &mut dyn FnMut(&[f64], &mut [f64]),
    s: PowerSettings,
    seed: u64,
) -> (f64, u64, f64, bool) {
    let mut state = 0x2545_F491_4F6C_DD1D ^ seed.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut x: Vec<f64> = (0..n)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect();
    project_and_normalize(&mut x);
    let mut y = vec![0.0; n];
    let mut prev = f64::NAN;
    let mut rayleigh = 0.0;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < s.max_iter {
        iterations += 1;
        apply(&x, &mut y);
        center(&mut y);
        rayleigh = dot(&x, &y);
        if libm::fabs(rayleigh - prev) < s.tol && iterations > 10 {
            converged = true;
        }
        prev = rayleigh;
        core::mem::swap(&mut x, &mut y);
        if project_and_normalize(&mut x) == 0.0 {
            // the complement is annihilated
            return (0.0, iterations, 0.0, true);
        }
        if converged {
            break;
        }
    }
    apply(&x, &mut y);
    center(&mut y);
    let r = dot(&x, &y);
    let residual = libm::sqrt(y.iter().zip(&x).map(|(a, b)| (a - r * b) * (a - r * b)).sum());
    (rayleigh.max(r), iterations, residual, converged)
}

fn center(v: &mut [f64]) {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    for x in v.iter_mut() {
        *x -= mean;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn project_and_normalize(v: &mut [f64]) -> f64 {
    center(v);
    let norm = libm::sqrt(dot(v, v));
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    norm
}

/// `1 - c / (64 Delta^2)`.
pub fn dsc_bound(c: f64, diameter: u32) -> f64 {
    1.0 - c / (64.0 * (diameter as f64) * (diameter as f64))
}

/// Cayley diameter of the support of the increment measure.
pub fn support_diameter(spec: &ChainSpec) -> Result<u32> {
    psl2::cayley_diameter(&spec.group, &spec.support())
}

/// Outcome of writing `Pi_3 = alpha Pi_4 + (1 - alpha) Pi'`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub alpha: BigRational,
    /// Increment measure of `Pi'`.
    pub remainder: Measure,
    pub nonnegative: bool,
    pub rows_sum_to_one: bool,
}

impl Decomposition {
    pub fn pass(&self) -> bool {
        self.nonnegative && self.rows_sum_to_one
    }
}

/// Exact check that `(Pi_3 - alpha Pi_4) / (1 - alpha)` is stochastic.
pub fn decomposition_check(spec3: &ChainSpec, spec4: &ChainSpec) -> Result<Decomposition> {
    if spec3.chain != ChainId::Three || spec4.chain != ChainId::Four {
        return Err(Error::Invalid("expected chains 3 and 4".into()));
    }
    if spec3.primes() != spec4.primes() || spec3.lambdas != spec4.lambdas || spec3.alpha != spec4.alpha {
        return Err(Error::Invalid("chains come from different models or parameters".into()));
    }
    let alpha = spec3.alpha.clone();
    let one_minus = BigRational::one() - &alpha;
    if !one_minus.is_positive() {
        return Err(Error::Degenerate("alpha must be below 1".into()));
    }
    let mut keys: Vec<u64> = spec3.increments.keys().chain(spec4.increments.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let mut remainder = Measure::new();
    let mut nonnegative = true;
    for k in keys {
        let a = spec3.increments.get(&k).cloned().unwrap_or_else(BigRational::zero);
        let b = spec4.increments.get(&k).cloned().unwrap_or_else(BigRational::zero);
        let w = (a - &alpha * b) / &one_minus;
        if w.is_negative() {
            nonnegative = false;
        }
        if !w.is_zero() {
            remainder.insert(k, w);
        }
    }
    // each row of a convolution operator carries the full increment mass
    let rows_sum_to_one = remainder.values().cloned().sum::<BigRational>().is_one();
    Ok(Decomposition { alpha, remainder, nonnegative, rows_sum_to_one })
}
