//! Polynomials over prime fields, root counting, distinct-degree
//! factorization, and prime ranges.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::{self, Modulus};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Default switch point for [`count_distinct_roots`]: primes below
/// `ROOT_SCAN_FACTOR * deg f` are handled by scanning every residue.
pub const ROOT_SCAN_FACTOR: u64 = 64;

/// Polynomial over `F_p`, coefficients ascending and fully reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    m: Modulus,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Builds a polynomial from residues already reduced modulo `p`.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let m = Modulus::new(p);
        let mut f = Self { m, coeffs };
        for c in &mut f.coeffs {
            *c = m.reduce(*c);
        }
        f.trim();
        f
    }

    fn from_raw(m: Modulus, coeffs: Vec<u64>) -> Self {
        let mut f = Self { m, coeffs };
        f.trim();
        f
    }

    pub fn zero(p: u64) -> Self {
        Self { m: Modulus::new(p), coeffs: Vec::new() }
    }

    /// Coefficientwise reduction of an integer polynomial; `q` must be an odd
    /// prime below 2^32.
    pub fn from_int_poly(f: &IntPoly, q: u64) -> Result<Self> {
        if !(3..1 << 32).contains(&q) || !arith::is_prime(q) {
            return Err(Error::BadModulus(q));
        }
        let qb = BigInt::from(q);
        let m = Modulus::new(q);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(&qb);
                r.to_u64_digits().1.first().copied().unwrap_or(0)
            })
            .collect();
        Ok(Self::from_raw(m, coeffs))
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn like(&self, coeffs: Vec<u64>) -> Self {
        Self::from_raw(self.m, coeffs)
    }

    fn monomial_x(&self) -> Self {
        self.like(vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.m.value()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = self.m.reduce(x);
        self.coeffs.iter().rev().fold(0, |acc, &c| self.m.add(self.m.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let m = self.m;
        self.like(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| m.mul(m.reduce(i as u64), c))
                .collect(),
        )
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.m.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> Self {
        self.like(self.coeffs.iter().map(|&c| self.m.mul(c, k)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        self.like(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    self.m.add(a, b)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        self.like(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    self.m.sub(a, b)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.like(Vec::new());
        }
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (slot, &b) in acc[i..].iter_mut().zip(&other.coeffs) {
                *slot += (a * b) as u128;
            }
        }
        self.like(acc.into_iter().map(|x| self.m.reduce_wide(x)).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let m = self.m;
        if self.coeffs.len() <= dd {
            return (self.like(Vec::new()), self.clone());
        }
        let inv = m.inv(d.leading()).expect("nonzero leading coefficient");
        // r - c d is accumulated as r + c (p - d), reduced only when read
        let neg: Vec<u64> = d.coeffs[..dd].iter().map(|&c| m.neg(c)).collect();
        let mut r: Vec<u128> = self.coeffs.iter().map(|&c| c as u128).collect();
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = m.mul(m.reduce_wide(r[i]), inv);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (slot, &nc) in r[i - dd..i].iter_mut().zip(&neg) {
                *slot += (c * nc) as u128;
            }
        }
        let rem = r[..dd].iter().map(|&x| m.reduce_wide(x)).collect();
        (self.like(q), self.like(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let m = self.m;
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        while !b.is_empty() {
            rem_in_place(m, &mut a, &b);
            core::mem::swap(&mut a, &mut b);
        }
        self.like(a).make_monic()
    }

    /// `self * other mod f`.
    pub fn mul_mod(&self, other: &Self, f: &Self) -> Self {
        self.mul(other).rem(f)
    }

    /// `self^e mod f` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, f: &Self) -> Self {
        let mut base = self.rem(f);
        let mut acc = self.like(vec![1]).rem(f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, f);
            }
        }
        acc
    }

    /// `x^e mod f`, scanning `e` from the top so that the multiplications
    /// by `x` are shifts.
    pub fn x_pow_mod(&self, e: u64) -> Self {
        let m = self.m;
        let one = self.like(vec![1]).rem(self);
        if e == 0 {
            return one;
        }
        let mut acc = one;
        for bit in (0..64 - e.leading_zeros()).rev() {
            acc = acc.mul_mod(&acc, self);
            if e >> bit & 1 == 1 {
                let mut c = acc.coeffs.clone();
                c.insert(0, 0);
                rem_in_place(m, &mut c, &self.coeffs);
                acc = self.like(c);
            }
        }
        acc
    }

    /// Resultant `Res(self, other)` by the Euclidean algorithm.
    pub fn resultant(&self, other: &Self) -> u64 {
        let m = self.m;
        if self.is_zero() || other.is_zero() {
            return 0;
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut res = 1u64;
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            if db == 0 {
                return m.mul(res, m.pow(b.leading(), da as u64));
            }
            let r = a.rem(&b);
            let Some(dr) = r.degree() else {
                return 0;
            };
            res = m.mul(res, m.pow(b.leading(), (da - dr) as u64));
            if (da * db) % 2 == 1 {
                res = m.neg(res);
            }
            a = b;
            b = r;
        }
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Self {
        let f = self.make_monic();
        if f.degree().unwrap_or(0) == 0 {
            return f;
        }
        let df = f.derivative();
        if df.is_zero() {
            return f.pth_root().radical();
        }
        let g = f.gcd(&df);
        if g.degree() == Some(0) {
            return f;
        }
        let h = f.div_rem(&g).0;
        let rg = g.radical();
        let common = h.gcd(&rg);
        h.mul(&rg).div_rem(&common).0.make_monic()
    }

    /// For `f = g(x^p)`, returns `g`, which is the `p`-th root of `f` over `F_p`.
    fn pth_root(&self) -> Self {
        let p = self.modulus() as usize;
        self.like(self.coeffs.iter().step_by(p).copied().collect())
    }

    /// Matrix whose `i`-th row is `x^(i p) mod f`, `0 <= i < deg f`.
    fn frobenius_rows(&self) -> Vec<Self> {
        let n = self.degree().unwrap_or(0);
        let xp = self.x_pow_mod(self.modulus());
        let mut rows = Vec::with_capacity(n);
        let mut cur = self.like(vec![1]).rem(self);
        for _ in 0..n {
            rows.push(cur.clone());
            cur = cur.mul_mod(&xp, self);
        }
        rows
    }
}

/// Replaces `a` by `a mod b` (`b` trimmed and nonzero) without allocating.
fn rem_in_place(m: Modulus, a: &mut Vec<u64>, b: &[u64]) {
    let db = b.len() - 1;
    let inv = m.inv(b[db]).expect("nonzero leading coefficient");
    while a.len() > db {
        let top = a.pop().expect("nonempty");
        if top != 0 {
            let c = m.neg(m.mul(top, inv));
            let base = a.len() - db;
            for (slot, &bc) in a[base..].iter_mut().zip(b) {
                *slot = m.add(*slot, m.mul(c, bc));
            }
        }
    }
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Reduction of `f` modulo the odd prime `q`.
pub fn reduce_mod(f: &IntPoly, q: u64) -> Result<FpPoly> {
    FpPoly::from_int_poly(f, q)
}

/// Number of distinct roots of `f` in `F_p`.
pub fn count_distinct_roots(f: &FpPoly) -> Result<usize> {
    count_distinct_roots_with(f, ROOT_SCAN_FACTOR)
}

/// As [`count_distinct_roots`] with an explicit scan/gcd switch point.
pub fn count_distinct_roots_with(f: &FpPoly, scan_factor: u64) -> Result<usize> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(0);
    }
    let p = f.modulus();
    if p < scan_factor.saturating_mul(deg as u64) {
        return Ok((0..p).filter(|&a| f.eval(a) == 0).count());
    }
    let fm = f.make_monic();
    let x = fm.monomial_x();
    let xp = fm.x_pow_mod(p);
    let g = xp.sub(&x).gcd(&fm);
    Ok(g.degree().unwrap_or(0))
}

/// Degrees of the irreducible factors of the square-free part of a
/// polynomial, together with whether the polynomial was square-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorDegrees {
    pub degrees: Vec<usize>,
    pub squarefree: bool,
}

impl FactorDegrees {
    pub fn linear_count(&self) -> usize {
        self.degrees.iter().filter(|&&d| d == 1).count()
    }
}

/// Distinct-degree factorization of the square-free part of `f`.
pub fn factor_degree_multiset(f: &FpPoly) -> Result<FactorDegrees> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    let monic = f.make_monic();
    let df = monic.derivative();
    let squarefree = deg == 0 || (!df.is_zero() && monic.gcd(&df).degree() == Some(0));
    let base = if squarefree { monic } else { monic.radical() };
    let mut degrees = distinct_degree(&base);
    degrees.sort_unstable();
    Ok(FactorDegrees { degrees, squarefree })
}

/// Irreducible factor degrees of a monic square-free polynomial.
fn distinct_degree(f: &FpPoly) -> Vec<usize> {
    let mut out = Vec::new();
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return out;
    }
    let rows = f.frobenius_rows();
    let x = f.monomial_x().rem(f);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0usize;
    while let Some(rd) = rest.degree() {
        if rd == 0 {
            break;
        }
        d += 1;
        if 2 * d > rd {
            out.push(rd);
            break;
        }
        h = apply_frobenius(&h, &rows, f);
        let g = h.sub(&x).rem(&rest).gcd(&rest);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 {
            out.extend(core::iter::repeat_n(d, gd / d));
            rest = rest.div_rem(&g).0;
        }
    }
    out
}

/// `h^p mod f` as the linear map `h -> sum h_i x^(i p)`.
fn apply_frobenius(h: &FpPoly, rows: &[FpPoly], f: &FpPoly) -> FpPoly {
    let mut acc = vec![0u128; rows.len()];
    for (&c, row) in h.coeffs.iter().zip(rows) {
        if c == 0 {
            continue;
        }
        for (slot, &r) in acc.iter_mut().zip(&row.coeffs) {
            *slot += (c * r) as u128;
        }
    }
    f.like(acc.into_iter().map(|x| f.m.reduce_wide(x)).collect())
}

/// Falling factorial `r (r-1) ... (r-k+1)`.
pub fn falling_factorial(r: u64, k: u64) -> u128 {
    if r < k {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((r - i) as u128))
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `A(k) = sum_l C(k,l)^2 l!`, the second moment constant of `(N)_k`.
pub fn moment_constant(k: u64) -> u128 {
    (0..=k)
        .map(|l| {
            let b = binomial(k, l);
            b * b * falling_factorial(l, l)
        })
        .sum()
}

/// The set `{a^m mod p}`; requires `m | p - 1`.
pub fn mth_power_residues(p: u64, m: u64) -> Result<BTreeSet<u64>> {
    if p < 3 || !arith::is_prime(p) || p >= 1 << 32 {
        return Err(Error::BadModulus(p));
    }
    if m < 2 || (p - 1) % m != 0 {
        return Err(Error::NotDivisor { m, pm1: p - 1 });
    }
    let md = Modulus::new(p);
    Ok((0..p).map(|a| md.pow(a, m)).collect())
}

/// The primes in `(x, 2x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeRange {
    pub x: u64,
    pub primes: Vec<u64>,
}

const SEGMENT: u64 = 1 << 16;

/// Segmented sieve of Eratosthenes over `(x, 2x]`; requires `x >= 5`.
pub fn sieve_range(x: u64) -> Result<PrimeRange> {
    if x < 5 {
        return Err(Error::Invalid(alloc::format!("prime range needs x >= 5, got {x}")));
    }
    let hi = 2 * x;
    let root = hi.isqrt();
    let base = small_primes(root);
    let mut primes = Vec::new();
    let mut lo = x + 1;
    while lo <= hi {
        let top = (lo + SEGMENT - 1).min(hi);
        let mut composite = vec![false; (top - lo + 1) as usize];
        for &q in &base {
            let start = (q * q).max(lo.div_ceil(q) * q);
            let mut j = start;
            while j <= top {
                composite[(j - lo) as usize] = true;
                j += q;
            }
        }
        primes.extend(
            composite
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| lo + i as u64),
        );
        lo = top + 1;
    }
    Ok(PrimeRange { x, primes })
}

/// All primes `<= n` by a plain sieve.
pub fn small_primes(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n as usize + 1];
    let mut out = Vec::new();
    for i in 2..=n as usize {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n as usize {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64, c: &[i64]) -> FpPoly {
        reduce_mod(&IntPoly::from_i64s(c), p).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(fp(7, &[-1, 0, 1]).coeffs(), &[6, 0, 1]);
        assert_eq!(fp(3, &[-2, 9, -6, 1]).coeffs(), &[1, 0, 0, 1]);
        assert!(reduce_mod(&IntPoly::x(), 2).is_err());
        assert!(fp(101, &[17, -3, 5, 1]).is_monic());
    }

    #[test]
    fn root_count_examples() {
        assert_eq!(count_distinct_roots(&fp(7, &[-1, 0, 1])).unwrap(), 2);
        assert_eq!(count_distinct_roots(&fp(7, &[1, 0, 1])).unwrap(), 0);
        assert_eq!(count_distinct_roots(&fp(13, &[1, 0, 1])).unwrap(), 2);
        // force the gcd path on the same inputs
        assert_eq!(count_distinct_roots_with(&fp(13, &[1, 0, 1]), 0).unwrap(), 2);
        assert_eq!(count_distinct_roots_with(&fp(7, &[1, 0, 1]), 0).unwrap(), 0);
        assert!(count_distinct_roots(&FpPoly::zero(7)).is_err());
    }

    #[test]
    fn factor_degree_examples() {
        let d = factor_degree_multiset(&fp(3, &[1, 0, 1])).unwrap();
        assert_eq!(d.degrees, vec![2]);
        assert!(d.squarefree);
        assert_eq!(factor_degree_multiset(&fp(7, &[-1, 0, 1])).unwrap().degrees, vec![1, 1]);
        assert_eq!(
            factor_degree_multiset(&fp(11, &[1, 1, 1, 1, 1])).unwrap().degrees,
            vec![1, 1, 1, 1]
        );
        // (x-1)^2 (x^2+1) over F_7
        let sq = fp(7, &[-1, 1]).mul(&fp(7, &[-1, 1])).mul(&fp(7, &[1, 0, 1]));
        let d = factor_degree_multiset(&sq).unwrap();
        assert!(!d.squarefree);
        assert_eq!(d.degrees, vec![1, 2]);
    }

    #[test]
    fn radical_handles_pth_powers() {
        // (x^2 + 1)^3 over F_3 has zero derivative
        let base = fp(3, &[1, 0, 1]);
        let f = base.mul(&base).mul(&base);
        assert!(f.derivative().is_zero());
        assert_eq!(f.radical(), base);
        let d = factor_degree_multiset(&f).unwrap();
        assert_eq!(d.degrees, vec![2]);
        assert!(!d.squarefree);
    }

    #[test]
    fn falling_factorials_and_moments() {
        assert_eq!(falling_factorial(5, 2), 20);
        assert_eq!(falling_factorial(1, 2), 0);
        assert_eq!(falling_factorial(6, 6), 720);
        assert_eq!(falling_factorial(9, 0), 1);
        assert_eq!(moment_constant(1), 2);
        assert_eq!(moment_constant(2), 7);
        for n in 0..=60u64 {
            for k in 0..=6u64 {
                let lhs = falling_factorial(n, k).pow(2);
                let rhs: u128 = (0..=k)
                    .map(|l| binomial(k, l).pow(2) * falling_factorial(l, l) * falling_factorial(n, 2 * k - l))
                    .sum();
                assert_eq!(lhs, rhs, "N={n} k={k}");
            }
        }
        // for large N the leading coefficient of (N)_k^2 / (N)_{2k} sums to A(k)
        for k in 1..=6u64 {
            let brute: u128 = (0..=k).map(|l| binomial(k, l).pow(2) * falling_factorial(l, l)).sum();
            assert_eq!(moment_constant(k), brute);
        }
    }

    #[test]
    fn power_residue_sets() {
        assert_eq!(mth_power_residues(7, 3).unwrap().into_iter().collect::<Vec<_>>(), vec![0, 1, 6]);
        assert_eq!(mth_power_residues(5, 2).unwrap().into_iter().collect::<Vec<_>>(), vec![0, 1, 4]);
        assert_eq!(mth_power_residues(7, 2).unwrap().len(), 4);
        assert!(matches!(mth_power_residues(7, 4), Err(Error::NotDivisor { .. })));
        for p in [11u64, 13, 31, 101] {
            for m in 2..p {
                if (p - 1) % m == 0 {
                    assert_eq!(mth_power_residues(p, m).unwrap().len() as u64, (p - 1) / m + 1);
                }
            }
        }
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(sieve_range(10).unwrap().primes, vec![11, 13, 17, 19]);
        assert_eq!(sieve_range(100).unwrap().primes.len(), 21);
        let r = sieve_range(200_000).unwrap();
        let brute: Vec<u64> = (200_001..=400_000).filter(|&n| arith::is_prime(n)).collect();
        assert_eq!(r.primes, brute);
        assert!(sieve_range(4).is_err());
    }

    #[test]
    fn resultant_small_cases() {
        // Res(x^2 - 1, 2x) = 2^2 * (-1) ... check via discriminant relation
        let f = fp(101, &[-1, 0, 1]);
        let r = f.resultant(&f.derivative());
        // disc = (-1)^1 * Res = 4
        assert_eq!(Modulus::new(101).neg(r), 4);
        let g = fp(101, &[1, 1]);
        // Res(x^2-1, x+1) = 0
        assert_eq!(f.resultant(&g), 0);
    }

    #[test]
    fn transfer_products_carry_char_poly() {
        use crate::poly::{char_poly, TridiagMatrix};
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            seed >> 33
        };
        for p in [5u64, 7, 11, 101, 197] {
            let md = Modulus::new(p);
            for n in [1usize, 2, 7, 20, 50] {
                let diag: Vec<i64> = (0..n).map(|_| (next() % 11) as i64 - 5).collect();
                let pn = char_poly(&TridiagMatrix::with_unit_offdiag(diag.clone()));
                let f = reduce_mod(&pn, p).unwrap();
                for lam in 0..p {
                    // Φ = T(λ-V_n) ... T(λ-V_1), T(t) = [[t, -1], [1, 0]]
                    let (mut a, mut b, mut c, mut d) = (1u64, 0u64, 0u64, 1u64);
                    for &v in &diag {
                        let t = md.sub(lam, md.from_i64(v));
                        let (na, nb) = (md.sub(md.mul(t, a), c), md.sub(md.mul(t, b), d));
                        c = a;
                        d = b;
                        a = na;
                        b = nb;
                    }
                    assert_eq!(a, f.eval(lam), "p={p} n={n} λ={lam}");
                }
            }
        }
    }

    fn brute_roots(f: &FpPoly) -> usize {
        (0..f.modulus()).filter(|&a| f.eval(a) == 0).count()
    }

    proptest! {
        #[test]
        fn gcd_method_matches_scan(
            coeffs in proptest::collection::vec(-50i64..50, 1..12),
            pidx in 0usize..300,
        ) {
            let primes = small_primes(2000);
            let p = primes[(pidx % (primes.len() - 1)) + 1];
            let mut c = coeffs;
            c.push(1);
            let f = fp(p, &c);
            prop_assert_eq!(count_distinct_roots_with(&f, 0).unwrap(), brute_roots(&f));
            prop_assert_eq!(count_distinct_roots(&f).unwrap(), brute_roots(&f));
        }

        #[test]
        fn degree_multiset_consistency(
            coeffs in proptest::collection::vec(-50i64..50, 1..16),
            pidx in 1usize..100,
        ) {
            let primes = small_primes(600);
            let p = primes[pidx % primes.len()].max(3);
            let mut c = coeffs;
            c.push(1);
            let f = fp(p, &c);
            let d = factor_degree_multiset(&f).unwrap();
            let rad = f.radical();
            prop_assert_eq!(d.degrees.iter().sum::<usize>(), rad.degree().unwrap());
            prop_assert_eq!(d.linear_count(), brute_roots(&f));
            prop_assert_eq!(d.squarefree, rad.degree() == f.degree());
        }
    }
}
