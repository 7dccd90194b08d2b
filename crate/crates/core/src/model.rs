//! Finite-support matrix models and reproducible sampling.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256StarStar};

use crate::error::{Error, Result};
use crate::poly::TridiagMatrix;

/// A finite probability table on the integers with exact rational weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    atoms: Vec<(i64, BigRational)>,
}

impl Table {
    /// Validates positivity, distinct values and total mass one.
    pub fn new(atoms: Vec<(i64, BigRational)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidConfig("empty distribution".into()));
        }
        for (i, (v, w)) in atoms.iter().enumerate() {
            if !w.is_positive() {
                return Err(Error::InvalidConfig(format!("weight of value {v} is not positive")));
            }
            if atoms[..i].iter().any(|(u, _)| u == v) {
                return Err(Error::InvalidConfig(format!("value {v} listed twice")));
            }
        }
        let total: BigRational = atoms.iter().map(|(_, w)| w.clone()).sum();
        if !total.is_one() {
            return Err(Error::InvalidConfig(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { atoms })
    }

    /// Builds a table from `(value, numerator, denominator)` triples.
    pub fn from_ratios(atoms: &[(i64, i64, i64)]) -> Result<Self> {
        let mut out = Vec::with_capacity(atoms.len());
        for &(v, num, den) in atoms {
            if den <= 0 {
                return Err(Error::InvalidConfig(format!("weight of value {v} has denominator {den}")));
            }
            out.push((v, BigRational::new(num.into(), den.into())));
        }
        Self::new(out)
    }

    /// Equal weights on the given values.
    pub fn uniform(values: &[i64]) -> Result<Self> {
        let w = BigRational::new(BigInt::one(), BigInt::from(values.len().max(1)));
        Self::new(values.iter().map(|&v| (v, w.clone())).collect())
    }

    pub fn atoms(&self) -> &[(i64, BigRational)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.atoms.iter().map(|(v, _)| *v)
    }

    pub fn max_abs(&self) -> u64 {
        self.values().map(i64::unsigned_abs).max().unwrap_or(0)
    }

    pub fn mean(&self) -> BigRational {
        self.atoms.iter().map(|(v, w)| w * BigInt::from(*v)).sum()
    }

    /// The two values with the largest masses (heaviest first, ties broken by
    /// smaller value) and the smaller of the two masses.
    pub fn top_two(&self) -> Option<(i64, i64, BigRational)> {
        let mut sorted: Vec<&(i64, BigRational)> = self.atoms.iter().collect();
        sorted.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        match sorted.as_slice() {
            [first, second, ..] => Some((first.0, second.0, second.1.clone())),
            _ => None,
        }
    }
}

/// Which family of tridiagonal matrices is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// Independent diagonal entries, unit off-diagonal.
    IidDiag,
    /// Constant diagonal `a`, independent positive off-diagonal entries.
    Dyson,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::IidDiag => "iid-diag",
            ModelKind::Dyson => "dyson",
        }
    }
}

/// A validated matrix model of dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelConfig {
    kind: ModelKind,
    diag: Option<Table>,
    offdiag: Option<Table>,
    shift: i64,
    n: usize,
    sampler_diag: Option<Sampler>,
    sampler_off: Option<Sampler>,
}

impl ModelConfig {
    pub fn iid_diag(diag: Table, n: usize) -> Result<Self> {
        if diag.len() < 2 {
            return Err(Error::InvalidConfig(
                "the diagonal distribution needs at least two atoms".into(),
            ));
        }
        let sampler_diag = Some(Sampler::new(&diag)?);
        Ok(Self {
            kind: ModelKind::IidDiag,
            diag: Some(diag),
            offdiag: None,
            shift: 0,
            n,
            sampler_diag,
            sampler_off: None,
        })
    }

    pub fn dyson(offdiag: Table, shift: i64, n: usize) -> Result<Self> {
        if offdiag.len() < 2 {
            return Err(Error::InvalidConfig(
                "the off-diagonal distribution needs at least two atoms".into(),
            ));
        }
        if let Some(v) = offdiag.values().find(|&v| v <= 0) {
            return Err(Error::InvalidConfig(format!(
                "off-diagonal value {v} is not a positive integer"
            )));
        }
        let sampler_off = Some(Sampler::new(&offdiag)?);
        Ok(Self {
            kind: ModelKind::Dyson,
            diag: None,
            offdiag: Some(offdiag),
            shift,
            n,
            sampler_diag: None,
            sampler_off,
        })
    }

    /// Bernoulli{0,1} diagonal, the running example.
    pub fn bernoulli(n: usize) -> Self {
        Self::iid_diag(Table::uniform(&[0, 1]).expect("two atoms"), n).expect("valid model")
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn with_n(&self, n: usize) -> Self {
        Self { n, ..self.clone() }
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn diag_table(&self) -> Option<&Table> {
        self.diag.as_ref()
    }

    pub fn offdiag_table(&self) -> Option<&Table> {
        self.offdiag.as_ref()
    }

    /// The distribution whose two heaviest atoms drive generation: the
    /// diagonal for `IidDiag`, the off-diagonal for `Dyson`.
    pub fn driving_table(&self) -> &Table {
        match self.kind {
            ModelKind::IidDiag => self.diag.as_ref(),
            ModelKind::Dyson => self.offdiag.as_ref(),
        }
        .expect("validated model")
    }

    /// `(v, v', alpha)` for the driving distribution.
    pub fn atom_pair(&self) -> (i64, i64, BigRational) {
        self.driving_table().top_two().expect("validated model has two atoms")
    }

    /// Draws sample number `index` of the stream rooted at `master_seed`.
    pub fn sample(&self, master_seed: u64, index: u64) -> SampleDraw {
        let mut rng = Xoshiro256StarStar::seed_from_u64(stream_seed(master_seed, index));
        let n = self.n;
        let (diag, offdiag) = match self.kind {
            ModelKind::IidDiag => {
                let s = self.sampler_diag.as_ref().expect("validated model");
                let d = (0..n).map(|_| s.draw(&mut rng)).collect();
                (d, alloc::vec![1; n.saturating_sub(1)])
            }
            ModelKind::Dyson => {
                let s = self.sampler_off.as_ref().expect("validated model");
                let o = (0..n.saturating_sub(1)).map(|_| s.draw(&mut rng)).collect();
                (alloc::vec![self.shift; n], o)
            }
        };
        SampleDraw { master_seed, index, diag, offdiag }
    }
}

/// `SplitMix64(master_seed ^ (index + 1) * 0x9E3779B97F4A7C15)`.
pub fn stream_seed(master_seed: u64, index: u64) -> u64 {
    let mixed = master_seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    SplitMix64::seed_from_u64(mixed).next_u64()
}

/// Cumulative-weight inversion on a 53-bit uniform, exact over a common
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Sampler {
    values: Vec<i64>,
    cumulative: Vec<u64>,
    denom: u64,
}

impl Sampler {
    fn new(table: &Table) -> Result<Self> {
        let mut denom = BigInt::one();
        for (_, w) in table.atoms() {
            denom = denom.lcm(w.denom());
        }
        let denom_u = denom
            .to_u64()
            .ok_or_else(|| Error::InvalidConfig("weight denominators exceed 64 bits".into()))?;
        let mut acc = BigInt::zero();
        let mut cumulative = Vec::with_capacity(table.len());
        for (_, w) in table.atoms() {
            acc += w.numer() * (&denom / w.denom());
            cumulative.push(acc.to_u64().expect("bounded by the denominator"));
        }
        Ok(Self { values: table.values().collect(), cumulative, denom: denom_u })
    }

    fn draw<R: RngCore>(&self, rng: &mut R) -> i64 {
        let u = (rng.next_u64() >> 11) as u128;
        let lhs = u * self.denom as u128;
        for (v, &c) in self.values.iter().zip(&self.cumulative) {
            if lhs < (c as u128) << 53 {
                return *v;
            }
        }
        *self.values.last().expect("nonempty table")
    }
}

/// One sampled matrix together with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleDraw {
    pub master_seed: u64,
    pub index: u64,
    pub diag: Vec<i64>,
    pub offdiag: Vec<i64>,
}

impl SampleDraw {
    pub fn matrix(&self) -> TridiagMatrix {
        TridiagMatrix::new(self.diag.clone(), self.offdiag.clone()).expect("consistent lengths")
    }
}
