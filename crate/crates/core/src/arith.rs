//! Word-size modular arithmetic.
//!
//! [`Modulus`] does Barrett reduction for moduli below 2^32, which is what every
//! inner loop in the crate runs on. Primality testing is deterministic
//! Miller-Rabin over the full `u64` range.

/// A modulus `p < 2^32` with a precomputed Barrett constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Modulus {
    p: u64,
    barrett: u64,
    /// `2^64 mod p`.
    wide: u64,
}

impl Modulus {
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 32)).contains(&p), "modulus {p} out of range");
        Self { p, barrett: u64::MAX / p, wide: ((1u128 << 64) % p as u128) as u64 }
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.p
    }

    /// Reduces any `x < 2^64`.
    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    /// Reduces a 128-bit accumulator, e.g. a sum of products of residues.
    #[inline]
    pub fn reduce_wide(&self, x: u128) -> u64 {
        let hi = self.reduce((x >> 64) as u64);
        self.add(self.reduce(hi * self.wide), self.reduce(x as u64))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base = self.reduce(base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue (`p` must be prime).
    pub fn inv(&self, a: u64) -> Option<u64> {
        let a = self.reduce(a);
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    /// Residue of a signed integer.
    #[inline]
    pub fn from_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64);
        r as u64
    }
}

#[inline]
fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(mut n: u64) -> u64 {
    loop {
        n += 1;
        if is_prime(n) {
            return n;
        }
    }
}

/// Largest prime strictly below `n`, if any.
pub fn prev_prime(mut n: u64) -> Option<u64> {
    while n > 2 {
        n -= 1;
        if is_prime(n) {
            return Some(n);
        }
    }
    None
}

/// Distinct prime divisors in ascending order.
pub fn prime_factors(mut n: u64) -> alloc::vec::Vec<u64> {
    let mut out = alloc::vec::Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `a` modulo prime `p`.
pub fn multiplicative_order(a: u64, p: u64) -> Option<u64> {
    let m = Modulus::new(p);
    let a = m.reduce(a);
    if a == 0 {
        return None;
    }
    let mut ord = p - 1;
    for q in prime_factors(p - 1) {
        while ord % q == 0 && m.pow(a, ord / q) == 1 {
            ord /= q;
        }
    }
    Some(ord)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barrett_matches_division() {
        for &p in &[3u64, 5, 7, 65_521, 2_147_483_647, 4_294_967_291] {
            let m = Modulus::new(p);
            let mut x: u64 = 0x9E37_79B9_7F4A_7C15;
            for _ in 0..10_000 {
                x = x.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1);
                assert_eq!(m.reduce(x), x % p);
                let a = x % p;
                let b = (x >> 17) % p;
                assert_eq!(m.mul(a, b), (a as u128 * b as u128 % p as u128) as u64);
            }
        }
    }

    #[test]
    fn primality_against_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn inverse_and_order() {
        let m = Modulus::new(101);
        for a in 1..101 {
            assert_eq!(m.mul(a, m.inv(a).unwrap()), 1);
        }
        assert_eq!(m.inv(0), None);
        assert_eq!(multiplicative_order(4, 7), Some(3));
        assert_eq!(multiplicative_order(3, 7), Some(6));
        assert_eq!(multiplicative_order(1, 13), Some(1));
    }
}
