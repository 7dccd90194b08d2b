//! Exact integer polynomials and characteristic polynomials of tridiagonal
//! matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, Modulus};
use crate::error::{Error, Result};
use crate::modp::FpPoly;

/// Polynomial with arbitrary-precision integer coefficients, stored in
/// ascending order of degree. The zero polynomial has no coefficients and
/// degree `None`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![BigInt::one()] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x - c`.
    pub fn linear(c: i64) -> Self {
        Self::from_i64s(&[-c, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the end.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(x + a)`, by Horner's rule.
    pub fn shift(&self, a: i64) -> Self {
        let xa = Self::new(vec![BigInt::from(a), BigInt::one()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * &xa;
            acc = &acc + &Self::new(vec![c.clone()]);
        }
        acc
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p / x` when the constant term vanishes.
    pub fn div_x(&self) -> Option<Self> {
        match self.coeffs.first() {
            Some(c) if c.is_zero() => Some(Self::new(self.coeffs[1..].to_vec())),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Sum of squared coefficients.
    pub fn norm_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn reduce_mod(&self, q: u64) -> Result<FpPoly> {
        FpPoly::from_int_poly(self, q)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 if show_mag => f.write_str("*x")?,
                1 => f.write_str("x")?,
                _ if show_mag => write!(f, "*x^{i}")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

/// Symmetric tridiagonal integer matrix: diagonal `V_1..V_n` and
/// off-diagonal `W_1..W_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TridiagMatrix {
    diag: Vec<i64>,
    offdiag: Vec<i64>,
}

impl TridiagMatrix {
    pub fn new(diag: Vec<i64>, offdiag: Vec<i64>) -> Result<Self> {
        if offdiag.len() != diag.len().saturating_sub(1) {
            return Err(Error::Invalid(alloc::format!(
                "off-diagonal has length {} but the diagonal has length {}",
                offdiag.len(),
                diag.len()
            )));
        }
        Ok(Self { diag, offdiag })
    }

    /// Unit off-diagonal.
    pub fn with_unit_offdiag(diag: Vec<i64>) -> Self {
        let m = diag.len().saturating_sub(1);
        Self { diag, offdiag: vec![1; m] }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[i64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[i64] {
        &self.offdiag
    }

    /// Largest `|V_j|` and `|W_j|`.
    pub fn max_abs(&self) -> (u64, u64) {
        let v = self.diag.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
        let w = self.offdiag.iter().map(|w| w.unsigned_abs()).max().unwrap_or(0);
        (v, w)
    }

    /// Dense `x*Id - M` evaluated at an integer point.
    fn shifted_dense(&self, x: i64) -> Vec<Vec<BigInt>> {
        let n = self.dim();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            m[i][i] = BigInt::from(x - self.diag[i]);
            if i + 1 < n {
                m[i][i + 1] = BigInt::from(-self.offdiag[i]);
                m[i + 1][i] = BigInt::from(-self.offdiag[i]);
            }
        }
        m
    }
}

/// `det(x*Id - M)` through the three-term recurrence
/// `P_k = (x - V_k) P_{k-1} - W_{k-1}^2 P_{k-2}` with `P_0 = 1`, `P_{-1} = 0`.
pub fn char_poly(m: &TridiagMatrix) -> IntPoly {
    let n = m.dim();
    let mut prev: Vec<BigInt> = Vec::new(); // P_{-1}
    let mut cur: Vec<BigInt> = vec![BigInt::one()]; // P_0
    for k in 0..n {
        let v = BigInt::from(m.diag[k]);
        let w2 = if k == 0 {
            BigInt::zero()
        } else {
            let w = BigInt::from(m.offdiag[k - 1]);
            &w * &w
        };
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &v;
        }
        if !w2.is_zero() {
            for (i, c) in prev.iter().enumerate() {
                next[i] -= c * &w2;
            }
        }
        prev = cur;
        cur = next;
    }
    IntPoly::new(cur)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Independent route to [`char_poly`]: exact determinants of `x*Id - M` at
/// `x = 0..=n` followed by Newton interpolation. Quadratically more expensive;
/// meant for cross-checking.
pub fn char_poly_oracle(m: &TridiagMatrix) -> IntPoly {
    let n = m.dim();
    let values: Vec<BigInt> = (0..=n as i64).map(|x| bareiss_det(m.shifted_dense(x))).collect();
    // forward differences: diffs[k] = Δ^k f(0)
    let mut table = values;
    let mut diffs = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        diffs.push(table[0].clone());
        table = table.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // p(x) = Σ Δ^k f(0) * (x)_k / k!; scale by n! to stay integral.
    let mut fact = vec![BigInt::one(); n + 1];
    for k in 1..=n {
        fact[k] = &fact[k - 1] * BigInt::from(k);
    }
    let mut acc = IntPoly::zero();
    let mut falling = IntPoly::one();
    for (k, d) in diffs.iter().enumerate() {
        let weight = d * (&fact[n] / &fact[k]);
        acc = &acc + &falling.scale(&weight);
        falling = &falling * &IntPoly::linear(k as i64);
    }
    let coeffs = acc
        .into_coeffs()
        .into_iter()
        .map(|c| {
            let (q, r) = c.div_rem(&fact[n]);
            debug_assert!(r.is_zero(), "interpolated coefficient is not integral");
            q
        })
        .collect();
    IntPoly::new(coeffs)
}

/// Chebyshev polynomial of the second kind `U_n(y)`.
pub fn chebyshev_u(n: usize) -> IntPoly {
    let two_y = IntPoly::from_i64s(&[0, 2]);
    let mut prev = IntPoly::zero();
    let mut cur = IntPoly::one();
    for _ in 0..n {
        let next = &(&two_y * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Largest absolute value of a coefficient.
pub fn height(p: &IntPoly) -> Result<BigUint> {
    p.coeffs()
        .iter()
        .map(|c| c.magnitude().clone())
        .max()
        .ok_or(Error::ZeroPolynomial)
}

/// Tests whether `p = q^m` for some `m >= 2`, returning the largest such `m`
/// with its monic witness `q`.
///
/// Prime exponents dividing the degree are tried from the largest down; a hit
/// is peeled off and the search repeats on the root, so the exponents multiply
/// up to the maximal one.
pub fn is_perfect_power(p: &IntPoly) -> Option<(u32, IntPoly)> {
    let n = p.degree()?;
    if n == 0 || !p.is_monic() {
        return None;
    }
    let mut m = 1u32;
    let mut cur = p.clone();
    'outer: loop {
        let d = cur.degree().unwrap_or(0) as u64;
        if d < 2 {
            break;
        }
        let mut primes = arith::prime_factors(d);
        primes.reverse();
        for l in primes {
            if let Some(root) = monic_root(&cur, l as u32) {
                m *= l as u32;
                cur = root;
                continue 'outer;
            }
        }
        break;
    }
    (m > 1).then_some((m, cur))
}

/// Monic `q` with `q^l = p`, via the power-series `l`-th root of the reversed
/// polynomial, confirmed by full expansion.
fn monic_root(p: &IntPoly, l: u32) -> Option<IntPoly> {
    let n = p.degree()?;
    if n % l as usize != 0 {
        return None;
    }
    let d = n / l as usize;
    // reversed coefficients: a_j = coefficient of x^(n - j)
    let a: Vec<BigInt> = (0..=d).map(|j| p.coeff(n - j)).collect();
    let lb = BigInt::from(l);
    let mut b: Vec<BigInt> = vec![BigInt::one()];
    for k in 1..=d {
        let mut s = BigInt::zero();
        for j in 1..=k {
            let w = BigInt::from((1 + l as i64) * j as i64) - &lb * BigInt::from(k);
            s += w * &a[j] * &b[k - j];
        }
        let den = &lb * BigInt::from(k);
        let (q, r) = s.div_rem(&den);
        if !r.is_zero() {
            return None;
        }
        b.push(q);
    }
    let q = IntPoly::new(b.into_iter().rev().collect());
    (q.pow(l) == *p).then_some(q)
}

/// Discriminant of a monic polynomial, `(-1)^(n(n-1)/2) Res(p, p')`.
///
/// The resultant is computed modulo primes just below 2^31 and lifted by
/// Chinese remaindering once the modulus exceeds twice the bound
/// `|disc| <= n^n ||p||_2^(2n-2)`; one further prime is used as a check.
pub fn discriminant(p: &IntPoly) -> BigInt {
    let n = p.degree().expect("discriminant of the zero polynomial");
    assert!(p.is_monic(), "discriminant expects a monic polynomial");
    if n <= 1 {
        return BigInt::one();
    }
    let bound = BigInt::from(n).pow(n as u32) * p.norm_sq().pow(n as u32 - 1);
    let target = bound * 2;
    let dp = p.derivative();
    let mut modulus = BigInt::one();
    let mut value = BigInt::zero();
    let mut q = 1u64 << 31;
    while modulus <= target {
        q = arith::prev_prime(q).expect("ran out of CRT primes");
        let r = disc_mod(p, &dp, q);
        value = crt_step(&value, &modulus, r, q);
        modulus *= BigInt::from(q);
    }
    let half = &modulus >> 1;
    if value > half {
        value -= &modulus;
    }
    let check = arith::prev_prime(q).expect("ran out of CRT primes");
    let expect = disc_mod(p, &dp, check);
    let got = value.mod_floor(&BigInt::from(check));
    assert_eq!(
        got,
        BigInt::from(expect),
        "discriminant reconstruction disagrees with check prime {check}"
    );
    value
}

fn disc_mod(p: &IntPoly, dp: &IntPoly, q: u64) -> u64 {
    let n = p.degree().unwrap();
    let f = FpPoly::from_int_poly(p, q).expect("CRT prime");
    let g = FpPoly::from_int_poly(dp, q).expect("CRT prime");
    let m = Modulus::new(q);
    let res = f.resultant(&g);
    if (n * (n - 1) / 2) % 2 == 1 {
        m.neg(res)
    } else {
        res
    }
}

/// Combines `x ≡ value (mod modulus)` with `x ≡ r (mod q)`.
fn crt_step(value: &BigInt, modulus: &BigInt, r: u64, q: u64) -> BigInt {
    let qb = BigInt::from(q);
    let m = Modulus::new(q);
    let mmod = to_u64(&modulus.mod_floor(&qb));
    let vmod = to_u64(&value.mod_floor(&qb));
    let inv = m.inv(mmod).expect("CRT moduli are coprime");
    let t = m.mul(m.sub(r, vmod), inv);
    value + modulus * BigInt::from(t)
}

fn to_u64(x: &BigInt) -> u64 {
    let (sign, digits) = x.to_u64_digits();
    debug_assert!(sign != Sign::Minus);
    digits.first().copied().unwrap_or(0)
}

/// Exact integer square root test.
pub fn is_square(x: &BigInt) -> bool {
    if x.is_negative() {
        return false;
    }
    let r = x.sqrt();
    &r * &r == *x
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn tri(diag: &[i64], off: &[i64]) -> TridiagMatrix {
        TridiagMatrix::new(diag.to_vec(), off.to_vec()).unwrap()
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&tri(&[0, 0], &[1])), p(&[-1, 0, 1]));
        assert_eq!(char_poly(&tri(&[], &[])), IntPoly::one());
        assert_eq!(char_poly(&tri(&[1, 2, 3], &[1, 1])), p(&[-2, 9, -6, 1]));
        assert_eq!(char_poly(&tri(&[0, 0, 0], &[1, 2])), p(&[0, -5, 0, 1]));
        assert_eq!(char_poly_oracle(&tri(&[5], &[])), p(&[-5, 1]));
        assert_eq!(char_poly_oracle(&tri(&[0, 0], &[1])), p(&[-1, 0, 1]));
        assert_eq!(char_poly_oracle(&tri(&[1, 2, 3], &[1, 1])), p(&[-2, 9, -6, 1]));
        assert!(TridiagMatrix::new(vec![1, 2], vec![]).is_err());
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_u(0), IntPoly::one());
        assert_eq!(chebyshev_u(1), p(&[0, 2]));
        assert_eq!(chebyshev_u(3), p(&[0, -4, 0, 8]));
        let u = chebyshev_u(12);
        assert_eq!(u.leading(), Some(&BigInt::from(1 << 12)));
    }

    #[test]
    fn height_examples() {
        assert_eq!(height(&p(&[-2, 9, -6, 1])).unwrap(), BigUint::from(9u32));
        assert_eq!(height(&IntPoly::one()).unwrap(), BigUint::from(1u32));
        assert_eq!(height(&IntPoly::zero()), Err(Error::ZeroPolynomial));
        // U_10(x/2) has coefficients u_k / 2^k
        let u = chebyshev_u(10);
        let scaled = IntPoly::new(
            u.coeffs().iter().enumerate().map(|(k, c)| c >> k).collect(),
        );
        let pn = char_poly(&TridiagMatrix::with_unit_offdiag(vec![0; 10]));
        assert_eq!(pn, scaled);
        assert_eq!(height(&pn).unwrap(), height(&scaled).unwrap());
    }

    #[test]
    fn perfect_power_examples() {
        assert_eq!(is_perfect_power(&p(&[4, 0, -4, 0, 1])), Some((2, p(&[-2, 0, 1]))));
        assert_eq!(is_perfect_power(&p(&[-1, 0, 1])), None);
        assert_eq!(is_perfect_power(&p(&[1, 3, 3, 1])), Some((3, p(&[1, 1]))));
        let q = p(&[3, -1, 0, 1]);
        assert_eq!(is_perfect_power(&q.pow(6)), Some((6, q.clone())));
        assert_eq!(is_perfect_power(&q.pow(4)), Some((4, q)));
        assert_eq!(is_perfect_power(&p(&[7, 1])), None);
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[-1, 0, 1])), BigInt::from(4));
        assert_eq!(discriminant(&p(&[0, -1, 0, 1])), BigInt::from(4));
        assert_eq!(discriminant(&p(&[-1, -3, 0, 1])), BigInt::from(81));
        assert_eq!(discriminant(&p(&[1, 0, 1])), BigInt::from(-4));
        assert_eq!(discriminant(&p(&[1, 2, 1])), BigInt::zero());
        // x^5 - x - 1: disc = 2869
        assert_eq!(discriminant(&p(&[-1, -1, 0, 0, 0, 1])), BigInt::from(2869));
        assert!(is_square(&BigInt::from(81)));
        assert!(!is_square(&BigInt::from(-4)));
    }

    #[test]
    fn shift_reflect_and_display() {
        let f = p(&[-2, 9, -6, 1]);
        assert_eq!(f.shift(2).shift(-2), f);
        assert_eq!(f.shift(1).eval(&BigInt::from(3)), f.eval(&BigInt::from(4)));
        assert_eq!(f.reflect().eval(&BigInt::from(5)), f.eval(&BigInt::from(-5)));
        assert_eq!(p(&[0, -5, 0, 1]).div_x(), Some(p(&[-5, 0, 1])));
        assert_eq!(f.div_x(), None);
        assert_eq!(f.to_string(), "x^3 - 6*x^2 + 9*x - 2");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::zero().degree(), None);
    }

    fn small_matrix() -> impl Strategy<Value = TridiagMatrix> {
        (0usize..=30).prop_flat_map(|n| {
            (
                proptest::collection::vec(-5i64..=5, n),
                proptest::collection::vec(-5i64..=5, n.saturating_sub(1)),
            )
                .prop_map(|(d, o)| TridiagMatrix::new(d, o).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn recurrence_matches_determinants(m in small_matrix()) {
            let pn = char_poly(&m);
            prop_assert_eq!(&pn, &char_poly_oracle(&m));
            prop_assert_eq!(pn.degree(), Some(m.dim()));
            prop_assert!(pn.is_monic());
        }

        #[test]
        fn perfect_power_round_trip(c in proptest::collection::vec(-4i64..=4, 1..5), e in 2u32..=4) {
            let mut c = c;
            c.push(1);
            let q = p(&c);
            let (m, w) = is_perfect_power(&q.pow(e)).unwrap();
            prop_assert_eq!(m % e, 0);
            prop_assert_eq!(w.pow(m), q.pow(e));
        }

        #[test]
        fn discriminant_agrees_mod_small_primes(c in proptest::collection::vec(-20i64..=20, 1..8), q in 0usize..20) {
            let mut c = c;
            c.push(1);
            let f = p(&c);
            let d = discriminant(&f);
            let primes = [1_000_003u64, 998_244_353, 2_147_483_629, 65_537, 4_294_967_291,
                          104_729, 1_299_709, 15_485_863, 179_424_673, 32_452_843,
                          49_979_687, 86_028_121, 122_949_823, 160_481_183, 198_491_317,
                          236_887_691, 275_604_541, 314_606_869, 353_868_013, 393_342_739];
            let qq = primes[q];
            let n = f.degree().unwrap();
            let fq = f.reduce_mod(qq).unwrap();
            let m = Modulus::new(qq);
            let mut r = fq.resultant(&fq.derivative());
            if n >= 2 && (n * (n - 1) / 2) % 2 == 1 {
                r = m.neg(r);
            }
            if n < 2 {
                r = 1;
            }
            prop_assert_eq!(d.mod_floor(&BigInt::from(qq)), BigInt::from(r));
        }
    }
}
