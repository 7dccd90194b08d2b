//! `PSL_2(p)` and its small direct products: canonical elements, the action
//! on the projective line, closure and Cayley-graph diameters, and the
//! generation checks for transfer matrices.
//!
//! Elements of `PSL_2(p)` are ranked bijectively onto `0..p(p^2-1)/2`, and
//! tuples over `PSL_2(p_1) x ... x PSL_2(p_k)` by mixed radix, so that
//! closures and random walks can be run over dense integer indices.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::arith::{self, Modulus};
use crate::error::{Error, Result};

/// Largest number of factors in a product group.
pub const MAX_FACTORS: usize = 3;

/// Default element cap for closures.
pub const DEFAULT_CAP: u64 = 1 << 28;

/// `p(p^2 - 1)/2`.
pub fn group_order(p: u64) -> u64 {
    p * (p * p - 1) / 2
}

/// A matrix of determinant one over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SL2Mat {
    p: u64,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

impl SL2Mat {
    pub fn new(p: u64, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if p < 3 || !arith::is_prime(p) || p >= 1 << 21 {
            return Err(Error::BadModulus(p));
        }
        let r = |x: i64| x.rem_euclid(p as i64) as u64;
        let m = Self { p, a: r(a), b: r(b), c: r(c), d: r(d) };
        if (m.a * m.d + p * p - m.b * m.c) % p != 1 {
            return Err(Error::Invalid(format!("matrix {m:?} does not have determinant 1")));
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// `[a, b, c, d]` for the matrix `[[a, b], [c, d]]`.
    pub fn entries(&self) -> [u64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "matrices over different primes");
        let p = self.p;
        Self {
            p,
            a: (self.a * o.a + self.b * o.c) % p,
            b: (self.a * o.b + self.b * o.d) % p,
            c: (self.c * o.a + self.d * o.c) % p,
            d: (self.c * o.b + self.d * o.d) % p,
        }
    }

    pub fn inv(&self) -> Self {
        let p = self.p;
        Self { p, a: self.d, b: (p - self.b) % p, c: (p - self.c) % p, d: self.a }
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Self { p, a: (p - self.a) % p, b: (p - self.b) % p, c: (p - self.c) % p, d: (p - self.d) % p }
    }
}

/// An element of `PSL_2(p)`, stored as the representative of `{M, -M}`
/// whose first nonzero entry among `(a, b, c, d)` lies in `1..=(p-1)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PSL2Elem {
    rep: SL2Mat,
}

impl PSL2Elem {
    pub fn from_sl2(m: SL2Mat) -> Self {
        let half = (m.p - 1) / 2;
        let first = m.entries().into_iter().find(|&x| x != 0).expect("nonzero determinant");
        Self { rep: if first <= half { m } else { m.neg() } }
    }

    pub fn new(p: u64, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        SL2Mat::new(p, a, b, c, d).map(Self::from_sl2)
    }

    pub fn identity(p: u64) -> Self {
        Self::new(p, 1, 0, 0, 1).expect("identity matrix")
    }

    pub fn rep(&self) -> &SL2Mat {
        &self.rep
    }

    pub fn modulus(&self) -> u64 {
        self.rep.p
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_sl2(self.rep.mul(&o.rep))
    }

    pub fn inv(&self) -> Self {
        Self::from_sl2(self.rep.inv())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rep.p)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::identity(self.rep.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Order in `PSL_2(p)`, by repeated multiplication.
    pub fn order(&self) -> u64 {
        let mut x = *self;
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self);
            k += 1;
        }
        k
    }
}

/// A point of the projective line over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjPoint {
    Finite(u64),
    Infinity,
}

impl ProjPoint {
    /// All `p + 1` points, finite ones first.
    pub fn all(p: u64) -> impl Iterator<Item = ProjPoint> {
        (0..p).map(ProjPoint::Finite).chain(core::iter::once(ProjPoint::Infinity))
    }
}

/// Möbius action `[x : 1] -> [ax + b : cx + d]`.
pub fn act(g: &PSL2Elem, pt: ProjPoint) -> ProjPoint {
    let m = Modulus::new(g.modulus());
    let [a, b, c, d] = g.rep.entries();
    let (num, den) = match pt {
        ProjPoint::Finite(x) => (m.add(m.mul(a, x), b), m.add(m.mul(c, x), d)),
        ProjPoint::Infinity => (a, c),
    };
    match m.inv(den) {
        Some(inv) => ProjPoint::Finite(m.mul(num, inv)),
        None => ProjPoint::Infinity,
    }
}

/// Image of `[[lambda - v, -1], [1, 0]]`.
pub fn transfer_mat(lambda: u64, v: i64, p: u64) -> PSL2Elem {
    let t = (lambda as i64 - v).rem_euclid(p as i64);
    PSL2Elem::new(p, t, -1, 1, 0).expect("transfer matrix over an odd prime")
}

/// Image of `[[lambda / w, -w], [1 / w, 0]]`; `w` must be a unit mod `p`.
pub fn dyson_transfer_mat(lambda: u64, w: i64, p: u64) -> Result<PSL2Elem> {
    if p < 3 || !arith::is_prime(p) || p >= 1 << 21 {
        return Err(Error::BadModulus(p));
    }
    let m = Modulus::new(p);
    let wr = m.from_i64(w);
    let wi = m.inv(wr).ok_or(Error::NotInvertible { p })?;
    let a = m.mul(m.reduce(lambda), wi);
    PSL2Elem::new(p, a as i64, -(wr as i64), wi as i64, 0)
}

/// A tuple of elements over `PSL_2(p_1) x ... x PSL_2(p_k)`.
pub type Tuple = Vec<PSL2Elem>;

/// One factor of a product group, with the data needed to rank elements.
#[derive(Clone, Debug)]
struct Factor {
    m: Modulus,
    p: u64,
    half: u64,
    inv: Vec<u32>,
}

type Quad = [u64; 4];

impl Factor {
    fn new(p: u64) -> Self {
        let m = Modulus::new(p);
        let mut inv = vec![0u32; p as usize];
        for x in 1..p {
            inv[x as usize] = m.inv(x).unwrap() as u32;
        }
        Self { m, p, half: (p - 1) / 2, inv }
    }

    fn order(&self) -> u64 {
        group_order(self.p)
    }

    #[inline]
    fn rank(&self, q: Quad) -> u64 {
        let [mut a, mut b, mut c, mut d] = q;
        let p = self.p;
        if c != 0 {
            if c > self.half {
                a = self.m.neg(a);
                c = p - c;
                d = self.m.neg(d);
            }
            (c - 1) * p * p + a * p + d
        } else {
            if a > self.half {
                a = p - a;
                b = self.m.neg(b);
            }
            self.half * p * p + (a - 1) * p + b
        }
    }

    #[inline]
    fn unrank(&self, idx: u64) -> Quad {
        let p = self.p;
        let pp = p * p;
        if idx < self.half * pp {
            let c = idx / pp + 1;
            let a = (idx / p) % p;
            let d = idx % p;
            let ad1 = self.m.sub(self.m.mul(a, d), 1);
            let b = self.m.mul(ad1, self.inv[c as usize] as u64);
            [a, b, c, d]
        } else {
            let r = idx - self.half * pp;
            let a = r / p + 1;
            let b = r % p;
            [a, b, 0, self.inv[a as usize] as u64]
        }
    }

    #[inline]
    fn mul(&self, x: Quad, y: Quad) -> Quad {
        let m = &self.m;
        [
            m.reduce(x[0] * y[0] + x[1] * y[2]),
            m.reduce(x[0] * y[1] + x[1] * y[3]),
            m.reduce(x[2] * y[0] + x[3] * y[2]),
            m.reduce(x[2] * y[1] + x[3] * y[3]),
        ]
    }
}

/// The group `PSL_2(p_1) x ... x PSL_2(p_k)` for `1 <= k <= 3`, with a dense
/// ranking of its elements.
#[derive(Clone, Debug)]
pub struct ProductGroup {
    factors: Vec<Factor>,
    order: u64,
}

/// A tuple in the internal layout used by the hot loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Packed {
    quads: [Quad; MAX_FACTORS],
}

impl ProductGroup {
    pub fn new(primes: &[u64]) -> Result<Self> {
        if primes.is_empty() || primes.len() > MAX_FACTORS {
            return Err(Error::Invalid(format!(
                "product groups need 1 to {MAX_FACTORS} factors, got {}",
                primes.len()
            )));
        }
        let mut order: u64 = 1;
        for &p in primes {
            if p < 3 || !arith::is_prime(p) || p >= 1 << 21 {
                return Err(Error::BadModulus(p));
            }
            order = order
                .checked_mul(group_order(p))
                .filter(|&o| o < 1 << 63)
                .ok_or_else(|| Error::TooLarge(format!("product over {primes:?}")))?;
        }
        Ok(Self { factors: primes.iter().map(|&p| Factor::new(p)).collect(), order })
    }

    pub fn single(p: u64) -> Result<Self> {
        Self::new(&[p])
    }

    pub fn primes(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.p).collect()
    }

    pub fn k(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> Tuple {
        self.factors.iter().map(|f| PSL2Elem::identity(f.p)).collect()
    }

    pub fn pack(&self, t: &[PSL2Elem]) -> Result<Packed> {
        if t.len() != self.k() {
            return Err(Error::Invalid(format!(
                "tuple of length {} in a product of {} factors",
                t.len(),
                self.k()
            )));
        }
        let mut quads = [[1, 0, 0, 1]; MAX_FACTORS];
        for (i, (g, f)) in t.iter().zip(&self.factors).enumerate() {
            if g.modulus() != f.p {
                return Err(Error::Invalid(format!(
                    "element over F_{} in factor over F_{}",
                    g.modulus(),
                    f.p
                )));
            }
            quads[i] = g.rep.entries();
        }
        Ok(Packed { quads })
    }

    pub fn unpack(&self, x: &Packed) -> Tuple {
        self.factors
            .iter()
            .zip(&x.quads)
            .map(|(f, q)| {
                PSL2Elem::from_sl2(SL2Mat { p: f.p, a: q[0], b: q[1], c: q[2], d: q[3] })
            })
            .collect()
    }

    pub fn rank(&self, t: &[PSL2Elem]) -> Result<u64> {
        Ok(self.rank_packed(&self.pack(t)?))
    }

    pub fn unrank(&self, idx: u64) -> Tuple {
        self.unpack(&self.unrank_packed(idx))
    }

    #[inline]
    pub fn rank_packed(&self, x: &Packed) -> u64 {
        let mut idx = 0;
        for (f, q) in self.factors.iter().zip(&x.quads) {
            idx = idx * f.order() + f.rank(*q);
        }
        idx
    }

    #[inline]
    pub fn unrank_packed(&self, mut idx: u64) -> Packed {
        let mut quads = [[1, 0, 0, 1]; MAX_FACTORS];
        for (i, f) in self.factors.iter().enumerate().rev() {
            let o = f.order();
            quads[i] = f.unrank(idx % o);
            idx /= o;
        }
        Packed { quads }
    }

    #[inline]
    pub fn mul_packed(&self, x: &Packed, y: &Packed) -> Packed {
        let mut quads = [[1, 0, 0, 1]; MAX_FACTORS];
        for (i, f) in self.factors.iter().enumerate() {
            quads[i] = f.mul(x.quads[i], y.quads[i]);
        }
        Packed { quads }
    }

    pub fn inv_packed(&self, x: &Packed) -> Packed {
        let mut quads = [[1, 0, 0, 1]; MAX_FACTORS];
        for (i, f) in self.factors.iter().enumerate() {
            let [a, b, c, d] = x.quads[i];
            quads[i] = [d, f.m.neg(b), f.m.neg(c), a];
        }
        Packed { quads }
    }

    /// Rank of `g * x` for `x` given by rank.
    #[inline]
    pub fn left_mul_rank(&self, g: &Packed, x: u64) -> u64 {
        self.rank_packed(&self.mul_packed(g, &self.unrank_packed(x)))
    }

    pub fn identity_rank(&self) -> u64 {
        self.rank(&self.identity()).expect("identity tuple")
    }

    pub fn mul(&self, x: &[PSL2Elem], y: &[PSL2Elem]) -> Tuple {
        x.iter().zip(y).map(|(a, b)| a.mul(b)).collect()
    }

    pub fn inv(&self, x: &[PSL2Elem]) -> Tuple {
        x.iter().map(PSL2Elem::inv).collect()
    }
}

enum Visited {
    Bits(Vec<u64>),
    Hash(HashSet<u64>),
}

impl Visited {
    fn new(order: u64) -> Self {
        if order <= 1 << 32 {
            Visited::Bits(vec![0; order.div_ceil(64) as usize])
        } else {
            Visited::Hash(HashSet::new())
        }
    }

    /// Marks `x`, returning whether it was new.
    #[inline]
    fn insert(&mut self, x: u64) -> bool {
        match self {
            Visited::Bits(bits) => {
                let (w, b) = ((x >> 6) as usize, x & 63);
                let fresh = bits[w] >> b & 1 == 0;
                bits[w] |= 1 << b;
                fresh
            }
            Visited::Hash(set) => set.insert(x),
        }
    }

    fn contains(&self, x: u64) -> bool {
        match self {
            Visited::Bits(bits) => bits[(x >> 6) as usize] >> (x & 63) & 1 == 1,
            Visited::Hash(set) => set.contains(&x),
        }
    }
}

/// Result of a closure computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Closure {
    /// Number of elements found; a lower bound when `complete` is false.
    pub size: u64,
    pub complete: bool,
}

/// Size of the subgroup generated by `gens`, giving up once more than `cap`
/// elements have been found.
///
/// Generators already contained in the subgroup built so far are skipped,
/// and the search stops as soon as the whole group is reached, so redundant
/// generating sets cost little more than a minimal one.
pub fn closure_size(group: &ProductGroup, gens: &[Tuple], cap: u64) -> Result<Closure> {
    let packed = gens.iter().map(|g| group.pack(g)).collect::<Result<Vec<_>>>()?;
    Ok(closure_packed(group, &packed, cap.max(1)))
}

pub(crate) fn closure_packed(group: &ProductGroup, gens: &[Packed], cap: u64) -> Closure {
    let order = group.order();
    let mut visited = Visited::new(order);
    let id = group.identity_rank();
    visited.insert(id);
    let mut elems = vec![id];
    let mut active: Vec<Packed> = Vec::new();
    for g in gens {
        if elems.len() as u64 == order {
            break;
        }
        if visited.contains(group.rank_packed(g)) {
            continue;
        }
        active.push(*g);
        let mut i = 0;
        while i < elems.len() {
            let x = group.unrank_packed(elems[i]);
            for h in &active {
                let y = group.rank_packed(&group.mul_packed(h, &x));
                if visited.insert(y) {
                    elems.push(y);
                    let n = elems.len() as u64;
                    if n == order {
                        return Closure { size: n, complete: true };
                    }
                    if n > cap {
                        return Closure { size: n, complete: false };
                    }
                }
            }
            i += 1;
        }
    }
    Closure { size: elems.len() as u64, complete: true }
}

/// Diameter of the Cayley graph of the group with respect to a symmetric
/// generating set.
pub fn cayley_diameter(group: &ProductGroup, gens: &[Tuple]) -> Result<u32> {
    let packed = gens.iter().map(|g| group.pack(g)).collect::<Result<Vec<_>>>()?;
    let ranks: HashSet<u64> = packed.iter().map(|g| group.rank_packed(g)).collect();
    if packed.iter().any(|g| !ranks.contains(&group.rank_packed(&group.inv_packed(g)))) {
        return Err(Error::NotSymmetric);
    }
    let order = group.order();
    if order > 1 << 32 {
        return Err(Error::TooLarge(format!("Cayley graph with {order} vertices")));
    }
    let mut dist = vec![u32::MAX; order as usize];
    let id = group.identity_rank();
    dist[id as usize] = 0;
    let mut frontier = vec![id];
    let mut reached = 1u64;
    let mut depth = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            let xp = group.unrank_packed(x);
            for g in &packed {
                let y = group.rank_packed(&group.mul_packed(g, &xp));
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = depth + 1;
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        reached += next.len() as u64;
        depth += 1;
        frontier = next;
    }
    if reached != order {
        return Err(Error::NotGenerating { found: reached, order });
    }
    Ok(depth)
}

/// Outcome of a generation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    /// The closure of one of the word sets was a proper subgroup.
    Fail { found: u64, order: u64 },
    /// The instance does not satisfy the hypotheses.
    Skipped(String),
}

impl CheckOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, CheckOutcome::Skipped(_))
    }
}

/// All products `s_1 ... s_j t_1^-1 ... t_j^-1` (or the inverse-first
/// variant) with letters from `letters`, in lexicographic order.
pub fn word_set(group: &ProductGroup, letters: &[Tuple], j: usize, inverse_first: bool) -> Vec<Tuple> {
    let inverses: Vec<Tuple> = letters.iter().map(|s| group.inv(s)).collect();
    let (left, right) = if inverse_first { (&inverses[..], letters) } else { (letters, &inverses[..]) };
    let left_words = words(group, left, j);
    let right_words = words(group, right, j);
    let mut out = Vec::with_capacity(left_words.len() * right_words.len());
    for l in &left_words {
        for r in &right_words {
            out.push(group.mul(l, r));
        }
    }
    out
}

fn words(group: &ProductGroup, letters: &[Tuple], j: usize) -> Vec<Tuple> {
    let mut cur = vec![group.identity()];
    for _ in 0..j {
        let mut next = Vec::with_capacity(cur.len() * letters.len());
        for w in &cur {
            for s in letters {
                next.push(group.mul(w, s));
            }
        }
        cur = next;
    }
    cur
}

/// Closure sizes of `S^j S^-j` and `S^-j S^j`.
pub fn word_closures(group: &ProductGroup, letters: &[Tuple], j: usize) -> (Closure, Closure) {
    let run = |inv_first| {
        let w = word_set(group, letters, j, inv_first);
        closure_size(group, &w, DEFAULT_CAP).expect("words live in the group")
    };
    (run(false), run(true))
}

fn judge(group: &ProductGroup, letters: &[Tuple], j: usize) -> CheckOutcome {
    let (a, b) = word_closures(group, letters, j);
    let order = group.order();
    let found = a.size.min(b.size);
    if a.complete && b.complete && found == order {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Fail { found, order }
    }
}

/// Smallest prime for which generation by the two diagonal values `v`,
/// `v'` is asserted: `max(5, |v - v'| + 1)`.
pub fn gen_threshold(v: i64, vp: i64) -> u64 {
    5u64.max(v.abs_diff(vp) + 1)
}

/// Whether `S^2 S^-2` and `S^-2 S^2` both generate `PSL_2(p)` for
/// `S = {T(lambda - v), T(lambda - v')}`.
pub fn lemma_gen_check(v: i64, vp: i64, p: u64, lambda: u64) -> CheckOutcome {
    if v == vp {
        return CheckOutcome::Skipped(format!("v = v' = {v}"));
    }
    if !arith::is_prime(p) {
        return CheckOutcome::Skipped(format!("{p} is not prime"));
    }
    let c = gen_threshold(v, vp);
    if p < c {
        return CheckOutcome::Skipped(format!("p = {p} is below the threshold {c}"));
    }
    gen_explore(v, vp, p, lambda)
}

/// The check of [`lemma_gen_check`] without the threshold on `p`.
pub fn gen_explore(v: i64, vp: i64, p: u64, lambda: u64) -> CheckOutcome {
    let group = match ProductGroup::single(p) {
        Ok(g) => g,
        Err(e) => return CheckOutcome::Skipped(format!("{e}")),
    };
    let s = [vec![transfer_mat(lambda, v, p)], vec![transfer_mat(lambda, vp, p)]];
    judge(&group, &s, 2)
}

/// Whether `S^3 S^-3` and `S^-3 S^3` generate the full product for
/// `S = {(T(lambda_i - v))_i, (T(lambda_i - v'))_i}`.
pub fn lemma_genprod_check(vs: (i64, i64), primes: &[u64], lambdas: &[u64]) -> CheckOutcome {
    let (v, vp) = vs;
    if let Some(reason) = product_precondition(primes, lambdas, gen_threshold(v, vp), false) {
        return CheckOutcome::Skipped(reason);
    }
    if v == vp {
        return CheckOutcome::Skipped(format!("v = v' = {v}"));
    }
    let group = match ProductGroup::new(primes) {
        Ok(g) => g,
        Err(e) => return CheckOutcome::Skipped(format!("{e}")),
    };
    let tup = |v: i64| -> Tuple {
        primes.iter().zip(lambdas).map(|(&p, &l)| transfer_mat(l, v, p)).collect()
    };
    judge(&group, &[tup(v), tup(vp)], 3)
}

fn product_precondition(primes: &[u64], lambdas: &[u64], threshold: u64, plus_minus: bool) -> Option<String> {
    if primes.len() != lambdas.len() {
        return Some(format!("{} primes but {} spectral parameters", primes.len(), lambdas.len()));
    }
    if primes.is_empty() || primes.len() > MAX_FACTORS {
        return Some(format!("need 1 to {MAX_FACTORS} factors"));
    }
    if primes.windows(2).any(|w| w[0] < w[1]) {
        return Some(format!("primes {primes:?} are not in descending order"));
    }
    for &p in primes {
        if !arith::is_prime(p) {
            return Some(format!("{p} is not prime"));
        }
        if p < threshold {
            return Some(format!("p = {p} is below the threshold {threshold}"));
        }
    }
    for i in 0..primes.len() {
        for j in i + 1..primes.len() {
            if primes[i] != primes[j] {
                continue;
            }
            let p = primes[i];
            let (a, b) = (lambdas[i] % p, lambdas[j] % p);
            if a == b {
                return Some(format!("lambda_{} = lambda_{} over the same prime {p}", i + 1, j + 1));
            }
            if plus_minus && (a + b) % p == 0 {
                return Some(format!("lambda_{} = -lambda_{} over the same prime {p}", i + 1, j + 1));
            }
        }
    }
    None
}

/// Smallest prime for which generation by the normalized transfers with
/// weights `w`, `w'` is asserted: `max(7, |w| + |w'| + 1)`, which keeps
/// `w`, `w'` and `w ± w'` invertible.
pub fn dyson_threshold(w: i64, wp: i64) -> u64 {
    7u64.max(w.unsigned_abs() + wp.unsigned_abs() + 1)
}

fn dyson_weights_admissible(w: i64, wp: i64, p: u64) -> Option<String> {
    let m = Modulus::new(p);
    let (a, b) = (m.from_i64(w), m.from_i64(wp));
    if a == 0 || b == 0 {
        return Some(format!("a weight vanishes mod {p}"));
    }
    if a == b || m.add(a, b) == 0 {
        return Some(format!("w = ±w' mod {p}"));
    }
    None
}

/// Whether `S^3 S^-3` and `S^-3 S^3` generate `PSL_2(p)` for
/// `S = {T~(lambda, w), T~(lambda, w')}`.
pub fn dyson_gen_check(w: i64, wp: i64, p: u64, lambda: u64) -> CheckOutcome {
    dyson_genprod_check((w, wp), &[p], &[lambda])
}

/// Product version of [`dyson_gen_check`] over up to two primes.
pub fn dyson_genprod_check(ws: (i64, i64), primes: &[u64], lambdas: &[u64]) -> CheckOutcome {
    let (w, wp) = ws;
    if primes.len() > 2 {
        return CheckOutcome::Skipped(String::from("at most two factors"));
    }
    if let Some(reason) = product_precondition(primes, lambdas, dyson_threshold(w, wp), true) {
        return CheckOutcome::Skipped(reason);
    }
    for (&p, &l) in primes.iter().zip(lambdas) {
        if let Some(reason) = dyson_weights_admissible(w, wp, p) {
            return CheckOutcome::Skipped(reason);
        }
        if l % p == 0 {
            return CheckOutcome::Skipped(format!("lambda = 0 mod {p}"));
        }
    }
    dyson_explore(ws, primes, lambdas)
}

/// The Dyson check without any hypotheses on the primes.
pub fn dyson_explore(ws: (i64, i64), primes: &[u64], lambdas: &[u64]) -> CheckOutcome {
    let group = match ProductGroup::new(primes) {
        Ok(g) => g,
        Err(e) => return CheckOutcome::Skipped(format!("{e}")),
    };
    let tup = |w: i64| -> Result<Tuple> {
        primes.iter().zip(lambdas).map(|(&p, &l)| dyson_transfer_mat(l, w, p)).collect()
    };
    match (tup(ws.0), tup(ws.1)) {
        (Ok(a), Ok(b)) => judge(&group, &[a, b], 3),
        (Err(e), _) | (_, Err(e)) => CheckOutcome::Skipped(format!("{e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(p: u64, a: i64, b: i64, c: i64, d: i64) -> PSL2Elem {
        PSL2Elem::new(p, a, b, c, d).unwrap()
    }

    fn lcg(state: &mut u64) -> u64 {
        *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        *state >> 33
    }

    fn random_elem(p: u64, s: &mut u64) -> PSL2Elem {
        loop {
            let (a, b, c) = (lcg(s) % p, lcg(s) % p, lcg(s) % p);
            if a == 0 {
                continue;
            }
            let m = Modulus::new(p);
            let d = m.mul(m.add(1, m.mul(b, c)), m.inv(a).unwrap());
            return e(p, a as i64, b as i64, c as i64, d as i64);
        }
    }

    #[test]
    fn canonical_form() {
        let t = transfer_mat(0, 0, 5);
        assert_eq!(t.rep().entries(), [0, 1, 4, 0]);
        let mut s = 7;
        for _ in 0..10_000 {
            let g = random_elem(13, &mut s);
            let h = random_elem(13, &mut s);
            assert_eq!(PSL2Elem::from_sl2(g.rep().neg()), g);
            assert_eq!(PSL2Elem::from_sl2(g.rep().mul(&h.rep().neg())), g.mul(&h));
            assert_eq!(PSL2Elem::from_sl2(g.rep().neg().inv()), g.inv());
            assert!(g.mul(&g.inv()).is_identity());
        }
        assert!(SL2Mat::new(5, 1, 1, 1, 1).is_err());
    }

    #[test]
    fn ranking_is_a_bijection() {
        for p in [3u64, 5, 7, 11] {
            let g = ProductGroup::single(p).unwrap();
            let mut seen = vec![false; g.order() as usize];
            for idx in 0..g.order() {
                let x = g.unrank(idx);
                assert_eq!(g.rank(&x).unwrap(), idx);
                let r = g.rank(&[PSL2Elem::from_sl2(x[0].rep().neg())]).unwrap();
                assert!(!seen[r as usize]);
                seen[r as usize] = true;
            }
        }
        let g = ProductGroup::new(&[7, 5]).unwrap();
        assert_eq!(g.order(), 168 * 60);
        for idx in (0..g.order()).step_by(37) {
            assert_eq!(g.rank(&g.unrank(idx)).unwrap(), idx);
        }
    }

    #[test]
    fn known_generators_give_full_group() {
        for p in [5u64, 7, 11, 13] {
            let g = ProductGroup::single(p).unwrap();
            let gens = [vec![e(p, 1, 1, 0, 1)], vec![e(p, 1, 0, 1, 1)]];
            let c = closure_size(&g, &gens, DEFAULT_CAP).unwrap();
            assert_eq!(c, Closure { size: group_order(p), complete: true });
        }
        let g = ProductGroup::single(7).unwrap();
        let c = closure_size(&g, &[vec![e(7, 1, 1, 0, 1)], vec![e(7, 1, 0, 1, 1)]], 10).unwrap();
        assert!(!c.complete);
        assert_eq!(closure_size(&g, &[g.identity()], 5).unwrap().size, 1);
    }

    #[test]
    fn transfer_relations() {
        for p in [5u64, 7, 11, 13, 101] {
            for lam in 0..p.min(20) {
                for (v, vp) in [(0i64, 1i64), (0, 2), (1, 3), (-2, 3)] {
                    if (vp - v) % p as i64 == 0 {
                        continue;
                    }
                    let u = transfer_mat(lam, v, p).mul(&transfer_mat(lam, vp, p).inv());
                    assert_eq!(u, e(p, 1, vp - v, 0, 1));
                    assert_eq!(u.order(), p);
                    let t = transfer_mat(lam, v, p);
                    let conj = t.mul(&u).mul(&t.inv());
                    let fixed: Vec<ProjPoint> =
                        ProjPoint::all(p).filter(|&x| act(&conj, x) == x).collect();
                    let target = (lam as i64 - v).rem_euclid(p as i64) as u64;
                    assert_eq!(fixed, vec![ProjPoint::Finite(target)]);
                    assert_eq!(act(&t, ProjPoint::Infinity), ProjPoint::Finite(target));
                }
            }
        }
    }

    #[test]
    fn projective_action() {
        let p = 11;
        let id = PSL2Elem::identity(p);
        assert!(ProjPoint::all(p).all(|x| act(&id, x) == x));
        assert_eq!(ProjPoint::all(p).count(), 12);
        let u = e(p, 1, 1, 0, 1);
        let fixed: Vec<_> = ProjPoint::all(p).filter(|&x| act(&u, x) == x).collect();
        assert_eq!(fixed, vec![ProjPoint::Infinity]);
        let mut s = 99;
        for _ in 0..200 {
            let g = random_elem(p, &mut s);
            let h = random_elem(p, &mut s);
            for x in ProjPoint::all(p) {
                assert_eq!(act(&g.mul(&h), x), act(&g, act(&h, x)));
            }
        }
    }

    #[test]
    fn dyson_transfer_relations() {
        for p in [7u64, 11, 13, 29] {
            let m = Modulus::new(p);
            for lam in 1..p {
                for (w, wp) in [(1i64, 2i64), (2, 3), (1, 3)] {
                    let t = dyson_transfer_mat(lam, w, p).unwrap();
                    assert_eq!(act(&t, ProjPoint::Finite(0)), ProjPoint::Infinity);
                    assert_eq!(act(&t, ProjPoint::Infinity), ProjPoint::Finite(lam));
                    let w2_over_lam = m.mul(m.mul(m.from_i64(w), m.from_i64(w)), m.inv(lam).unwrap());
                    assert_eq!(act(&t, ProjPoint::Finite(w2_over_lam)), ProjPoint::Finite(0));
                    let u = t.mul(&dyson_transfer_mat(lam, wp, p).unwrap().inv());
                    let r = m.mul(m.from_i64(w), m.inv(m.from_i64(wp)).unwrap());
                    let [a, _, c, d] = u.rep().entries();
                    assert_eq!(c, 0);
                    assert!(
                        (a, d) == (r, m.inv(r).unwrap())
                            || (a, d) == (m.neg(r), m.neg(m.inv(r).unwrap()))
                    );
                    assert_eq!(u.order(), arith::multiplicative_order(m.mul(r, r), p).unwrap());
                }
            }
        }
        assert_eq!(dyson_transfer_mat(1, 7, 7), Err(Error::NotInvertible { p: 7 }));
    }

    #[test]
    fn generation_goldens() {
        let g5 = ProductGroup::single(5).unwrap();
        let s = [vec![transfer_mat(0, 0, 5)], vec![transfer_mat(0, 1, 5)]];
        let words = word_set(&g5, &s, 2, false);
        assert_eq!(words.len(), 16);
        let c = closure_size(&g5, &words, DEFAULT_CAP).unwrap();
        assert_eq!(c.size, 60);
        let ss = word_set(&g5, &s, 1, false);
        assert_eq!(closure_size(&g5, &ss, DEFAULT_CAP).unwrap().size, 5);
        for lam in 0..5 {
            assert!(lemma_gen_check(0, 1, 5, lam).is_pass());
        }
        assert!(lemma_gen_check(0, 1, 7, 3).is_pass());
        assert!(lemma_gen_check(0, 4, 3, 0).is_skipped());
        assert!(lemma_gen_check(0, 0, 7, 0).is_skipped());
    }

    #[test]
    fn product_generation_goldens() {
        assert!(lemma_genprod_check((0, 1), &[5, 5], &[0, 1]).is_pass());
        assert!(lemma_genprod_check((0, 1), &[5, 5], &[2, 2]).is_skipped());
        assert!(lemma_genprod_check((0, 1), &[7, 5], &[0, 0]).is_pass());
        assert!(lemma_genprod_check((0, 1), &[5, 7], &[0, 0]).is_skipped());
        let g = ProductGroup::new(&[7, 7]).unwrap();
        let tup = |v| vec![transfer_mat(1, v, 7), transfer_mat(2, v, 7)];
        let w = word_set(&g, &[tup(0), tup(1)], 3, false);
        assert_eq!(w.len(), 64);
        assert_eq!(closure_size(&g, &w, DEFAULT_CAP).unwrap().size, 28_224);
        // the same prime twice with equal parameters only generates a diagonal
        let diag = word_set(&g, &[vec![transfer_mat(1, 0, 7); 2], vec![transfer_mat(1, 1, 7); 2]], 3, false);
        assert_eq!(closure_size(&g, &diag, DEFAULT_CAP).unwrap().size, 168);
    }

    #[test]
    fn dyson_generation_goldens() {
        for lam in 1..7 {
            assert!(dyson_gen_check(1, 2, 7, lam).is_pass(), "lambda = {lam}");
        }
        assert!(dyson_gen_check(1, 2, 7, 0).is_skipped());
        assert!(dyson_gen_check(1, 2, 5, 1).is_skipped());
        assert!(dyson_gen_check(2, 2, 11, 1).is_skipped());
        assert!(dyson_genprod_check((1, 2), &[11, 11], &[1, 10]).is_skipped());
        assert!(dyson_genprod_check((1, 2), &[7, 7], &[1, 2]).is_pass());
    }

    #[test]
    fn diameters() {
        let p = 5;
        let g = ProductGroup::single(p).unwrap();
        let gens = vec![
            vec![e(p, 1, 1, 0, 1)],
            vec![e(p, 1, -1, 0, 1)],
            vec![e(p, 1, 0, 1, 1)],
            vec![e(p, 1, 0, -1, 1)],
        ];
        assert_eq!(cayley_diameter(&g, &gens).unwrap(), 6);
        let h = vec![e(p, 2, 1, 1, 1)];
        let conj: Vec<Tuple> = gens.iter().map(|x| g.mul(&g.mul(&h, x), &g.inv(&h))).collect();
        assert_eq!(cayley_diameter(&g, &conj).unwrap(), 6);
        let all: Vec<Tuple> = (0..g.order()).map(|i| g.unrank(i)).collect();
        assert_eq!(cayley_diameter(&g, &all).unwrap(), 1);
        assert_eq!(cayley_diameter(&g, &gens[..1]), Err(Error::NotSymmetric));
        assert!(matches!(
            cayley_diameter(&g, &gens[..2]),
            Err(Error::NotGenerating { found: 5, order: 60 })
        ));
    }
}
