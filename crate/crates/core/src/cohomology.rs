//! First cohomology of `S_n` and `A_n` with coefficients in permutation
//! modules over `F_2`.
//!
//! A 1-cocycle is determined by its values on generators. Walking the group
//! breadth-first and applying `f(s g) = f(s) + s f(g)` writes every `f(x)` as
//! a linear function of those values; imposing `f(gh) = f(g) + g f(h)` for
//! every pair `(g, h)` then cuts out `Z^1` exactly, without trusting a
//! presentation.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::wreath::{closure, Perm};

/// `S_n` or `A_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymGroup {
    Symmetric,
    Alternating,
}

/// Coefficient module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Module {
    /// `F_2^n` with permuted coordinates.
    Full,
    /// `F_2^n` modulo the constant vectors.
    FullModConst,
    /// Zero-sum vectors modulo constants; needs `n` even.
    PerpModConst,
}

impl Module {
    pub fn dim(self, n: usize) -> usize {
        match self {
            Module::Full => n,
            Module::FullModConst => n - 1,
            Module::PerpModConst => n - 2,
        }
    }

    /// Coordinates in the module of a vector of `F_2^n` (bit `i` is
    /// coordinate `i`) lying in the relevant subspace.
    fn project(self, n: usize, v: u64) -> u64 {
        let bit = |i: usize| v >> i & 1;
        match self {
            Module::Full => v,
            Module::FullModConst => (0..n - 1).fold(0, |acc, i| acc | (bit(i) ^ bit(n - 1)) << i),
            Module::PerpModConst => (0..n - 2).fold(0, |acc, i| acc | (bit(i) ^ bit(n - 2)) << i),
        }
    }

    /// A vector of `F_2^n` representing module coordinates `c`.
    fn lift(self, n: usize, c: u64) -> u64 {
        match self {
            Module::Full | Module::FullModConst => c,
            Module::PerpModConst => {
                let parity = c.count_ones() as u64 & 1;
                c | parity << (n - 1)
            }
        }
    }
}

/// Permutes the coordinates: `g e_i = e_{g(i)}`.
fn permute(g: &Perm, v: u64) -> u64 {
    (0..g.degree()).filter(|&i| v >> i & 1 == 1).fold(0, |acc, i| acc | 1 << g.apply(i))
}

/// A linear action on `F_2^d`, stored column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Action {
    cols: Vec<u64>,
}

impl Action {
    fn of(g: &Perm, module: Module) -> Self {
        let n = g.degree();
        let d = module.dim(n);
        Self {
            cols: (0..d).map(|j| module.project(n, permute(g, module.lift(n, 1 << j)))).collect(),
        }
    }

    fn apply(&self, v: u64) -> u64 {
        self.cols.iter().enumerate().filter(|&(j, _)| v >> j & 1 == 1).fold(0, |acc, (_, &c)| acc ^ c)
    }
}

/// An `F_2`-linear map into the module from the space of generator values,
/// one bit mask per module coordinate.
type Linear = Vec<u64>;

fn act_linear(a: &Action, f: &Linear) -> Linear {
    // (A f)_i = sum_j A[i][j] f_j
    let d = a.cols.len();
    (0..d)
        .map(|i| {
            (0..d).filter(|&j| a.cols[j] >> i & 1 == 1).fold(0, |acc, j| acc ^ f[j])
        })
        .collect()
}

fn add_linear(a: &Linear, b: &Linear) -> Linear {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

/// Incremental row echelon basis over `F_2`.
#[derive(Clone, Debug, Default)]
pub struct Gf2Basis {
    rows: Vec<u64>,
}

impl Gf2Basis {
    /// Inserts a row, returning whether the rank grew.
    pub fn insert(&mut self, mut v: u64) -> bool {
        for &r in &self.rows {
            v = v.min(v ^ r);
        }
        if v == 0 {
            return false;
        }
        self.rows.push(v);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, mut v: u64) -> bool {
        for &r in &self.rows {
            v = v.min(v ^ r);
        }
        v == 0
    }
}

/// Dimensions of cocycles, coboundaries and cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct H1 {
    pub z1: usize,
    pub b1: usize,
}

impl H1 {
    pub fn dim(&self) -> usize {
        self.z1 - self.b1
    }
}

pub fn group_generators(group: SymGroup, n: usize) -> Vec<Perm> {
    let all: Vec<usize> = (0..n).collect();
    match group {
        SymGroup::Symmetric => vec![Perm::cycle(n, &[0, 1]), Perm::cycle(n, &all)],
        SymGroup::Alternating => {
            let odd: Vec<usize> = if n % 2 == 1 { all } else { (1..n).collect() };
            vec![Perm::cycle(n, &[0, 1, 2]), Perm::cycle(n, &odd)]
        }
    }
}

/// The cocycle system of a group acting on a module.
pub struct CocycleSystem {
    n: usize,
    module: Module,
    gens: Vec<Perm>,
    elems: Vec<Perm>,
    index: HashMap<u64, usize>,
    actions: Vec<Action>,
    /// `f(x)` in terms of generator values.
    values: Vec<Linear>,
}

impl CocycleSystem {
    pub fn new(group: SymGroup, n: usize, module: Module) -> Result<Self> {
        if !(3..=6).contains(&n) {
            return Err(Error::TooLarge(format!("cohomology is computed for 3 <= n <= 6, got {n}")));
        }
        if module == Module::PerpModConst && n % 2 == 1 {
            return Err(Error::Invalid(format!(
                "constants are not zero-sum for odd n = {n}"
            )));
        }
        let mut gens = group_generators(group, n);
        gens.dedup();
        let d = module.dim(n);
        let unknowns = gens.len() * d;
        let elems = closure(&gens, n);
        let index: HashMap<u64, usize> = elems.iter().enumerate().map(|(i, p)| (p.key(), i)).collect();
        let actions: Vec<Action> = elems.iter().map(|g| Action::of(g, module)).collect();
        let gen_actions: Vec<Action> = gens.iter().map(|g| Action::of(g, module)).collect();
        let gen_values: Vec<Linear> = (0..gens.len())
            .map(|s| (0..d).map(|i| 1u64 << (s * d + i)).collect())
            .collect();
        debug_assert!(unknowns <= 64);
        let mut values: Vec<Option<Linear>> = vec![None; elems.len()];
        let id = index[&Perm::identity(n).key()];
        values[id] = Some(vec![0; d]);
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (s, g) in gens.iter().enumerate() {
                let y = index[&g.compose(&elems[x]).key()];
                if values[y].is_none() {
                    let fx = values[x].as_ref().unwrap();
                    values[y] = Some(add_linear(&gen_values[s], &act_linear(&gen_actions[s], fx)));
                    queue.push(y);
                }
            }
        }
        Ok(Self {
            n,
            module,
            gens,
            index,
            actions,
            values: values.into_iter().map(|v| v.expect("connected")).collect(),
            elems,
        })
    }

    pub fn group_order(&self) -> usize {
        self.elems.len()
    }

    fn d(&self) -> usize {
        self.module.dim(self.n)
    }

    /// Dimension of `Z^1`: unknowns minus the rank of all pair equations.
    pub fn cocycle_dim(&self) -> usize {
        let mut basis = Gf2Basis::default();
        let d = self.d();
        let unknowns = self.gens.len() * d;
        // a generator reached first through another one still has its own value
        for (s, g) in self.gens.iter().enumerate() {
            for (i, &mask) in self.values[self.index[&g.key()]].iter().enumerate() {
                basis.insert(mask ^ 1 << (s * d + i));
            }
        }
        for (g, pg) in self.elems.iter().enumerate() {
            for (h, ph) in self.elems.iter().enumerate() {
                let gh = self.index[&pg.compose(ph).key()];
                let rhs = add_linear(&self.values[g], &act_linear(&self.actions[g], &self.values[h]));
                for (a, b) in self.values[gh].iter().zip(&rhs) {
                    basis.insert(a ^ b);
                    if basis.rank() == unknowns {
                        return 0;
                    }
                }
            }
        }
        unknowns - basis.rank()
    }

    /// Generator values `(v + s v)_s` of the coboundary of `v`, packed.
    fn coboundary_word(&self, v: u64) -> u64 {
        let d = self.d();
        self.gens
            .iter()
            .enumerate()
            .fold(0, |acc, (s, g)| acc | (v ^ Action::of(g, self.module).apply(v)) << (s * d))
    }

    pub fn coboundary_dim(&self) -> usize {
        let mut basis = Gf2Basis::default();
        for j in 0..self.d() {
            basis.insert(self.coboundary_word(1 << j));
        }
        basis.rank()
    }

    pub fn h1(&self) -> H1 {
        H1 { z1: self.cocycle_dim(), b1: self.coboundary_dim() }
    }

    /// Checks an explicit function `f` on the group: whether it satisfies the
    /// cocycle identity everywhere, and whether it is a coboundary.
    pub fn classify(&self, f: impl Fn(&Perm) -> u64) -> (bool, bool) {
        let vals: Vec<u64> = self.elems.iter().map(&f).collect();
        let mut cocycle = true;
        'outer: for (g, pg) in self.elems.iter().enumerate() {
            for (h, ph) in self.elems.iter().enumerate() {
                let gh = self.index[&pg.compose(ph).key()];
                if vals[gh] != vals[g] ^ self.actions[g].apply(vals[h]) {
                    cocycle = false;
                    break 'outer;
                }
            }
        }
        let d = self.d();
        let word = self.gens.iter().enumerate().fold(0, |acc, (s, g)| acc | f(g) << (s * d));
        let mut basis = Gf2Basis::default();
        for j in 0..d {
            basis.insert(self.coboundary_word(1 << j));
        }
        // a cocycle is a coboundary iff its generator values are
        (cocycle, cocycle && basis.contains(word))
    }

    /// Module coordinates of a vector of `F_2^n` from the relevant subspace.
    pub fn coordinates(&self, v: u64) -> u64 {
        self.module.project(self.n, v)
    }
}

pub fn h1_dimension(group: SymGroup, n: usize, module: Module) -> Result<usize> {
    Ok(CocycleSystem::new(group, n, module)?.h1().dim())
}

/// For even `n`, the function `tau -> e_n + e_tau(n)` on `A_n` with values
/// in zero-sum vectors modulo constants: `(is_cocycle, is_coboundary)`.
pub fn witness_cocycle(n: usize) -> Result<(bool, bool)> {
    let sys = CocycleSystem::new(SymGroup::Alternating, n, Module::PerpModConst)?;
    let last = n - 1;
    Ok(sys.classify(|tau| sys.coordinates((1u64 << last) ^ (1u64 << tau.apply(last)))))
}
