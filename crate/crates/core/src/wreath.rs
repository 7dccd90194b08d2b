//! The hyperoctahedral group `C_2 wr S_m` acting on `2m` points, orbit
//! counts on ordered tuples, and structural checks on its subgroups.
//!
//! Point `2i + b` is the point of block `i` with sign bit `b`. Every group
//! here is a permutation group on at most 16 points, so elements pack into a
//! `u64` with four bits per image.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::error::{Error, Result};

/// A permutation of `0..n`, `n <= 16`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// The cycle `(c_0 c_1 ... c_r)` on `n` points.
    pub fn cycle(n: usize, c: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for (i, &x) in c.iter().enumerate() {
            p.0[x] = c[(i + 1) % c.len()] as u8;
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Parity: true for odd permutations.
    pub fn is_odd(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        let mut transpositions = 0;
        for s in 0..self.0.len() {
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 1
    }

    pub fn key(&self) -> u64 {
        self.0.iter().enumerate().fold(0, |k, (i, &x)| k | (x as u64) << (4 * i))
    }

    pub fn from_key(key: u64, n: usize) -> Self {
        Perm((0..n).map(|i| (key >> (4 * i) & 15) as u8).collect())
    }
}

/// An element `(signs; perm)` of `C_2 wr S_m`: block `i` goes to block
/// `perm(i)`, and its two points are swapped when `signs[i]` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    pub signs: Vec<bool>,
    pub perm: Perm,
}

impl SignedPerm {
    pub fn new(signs: Vec<bool>, perm: Perm) -> Result<Self> {
        if signs.len() != perm.degree() {
            return Err(Error::Invalid(format!(
                "{} signs for a permutation of {} blocks",
                signs.len(),
                perm.degree()
            )));
        }
        Ok(Self { signs, perm })
    }

    pub fn m(&self) -> usize {
        self.signs.len()
    }

    /// The induced permutation of the `2m` points.
    pub fn to_points(&self) -> Perm {
        let m = self.m();
        let mut img = vec![0u8; 2 * m];
        for i in 0..m {
            for b in 0..2 {
                img[2 * i + b] = (2 * self.perm.apply(i) + (b ^ self.signs[i] as usize)) as u8;
            }
        }
        Perm(img)
    }

    /// Reads back a point permutation that preserves the block system.
    pub fn from_points(p: &Perm) -> Option<Self> {
        let m = p.degree() / 2;
        let mut signs = vec![false; m];
        let mut perm = vec![0u8; m];
        for i in 0..m {
            let (x, y) = (p.apply(2 * i), p.apply(2 * i + 1));
            if x / 2 != y / 2 {
                return None;
            }
            perm[i] = (x / 2) as u8;
            signs[i] = x % 2 == 1;
        }
        Some(Self { signs, perm: Perm(perm) })
    }

    /// Product of the signs is `+1`.
    pub fn in_u(&self) -> bool {
        self.signs.iter().filter(|&&s| s).count() % 2 == 0
    }
}

/// Elements of the group generated by `gens`, by breadth-first search.
pub fn closure(gens: &[Perm], n: usize) -> Vec<Perm> {
    let id = Perm::identity(n);
    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(id.key());
    let mut elems = vec![id];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let y = g.compose(&elems[i]);
            if seen.insert(y.key()) {
                elems.push(y);
            }
        }
        i += 1;
    }
    elems
}

/// The two families of groups whose orbits are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WreathSubgroup {
    /// `C_2 wr S_m`.
    Full,
    /// `U[m] ⋊ A_m`, sign vectors of product one with even block permutations.
    UA,
}

/// Generators as point permutations on `2m` points.
pub fn generators(m: usize, which: WreathSubgroup) -> Vec<Perm> {
    let block = |perm: Perm| SignedPerm { signs: vec![false; m], perm }.to_points();
    let flips = |blocks: &[usize]| {
        let mut signs = vec![false; m];
        for &b in blocks {
            signs[b] = true;
        }
        SignedPerm { signs, perm: Perm::identity(m) }.to_points()
    };
    let all: Vec<usize> = (0..m).collect();
    match which {
        WreathSubgroup::Full => {
            let mut g = vec![flips(&[0])];
            if m >= 2 {
                g.push(block(Perm::cycle(m, &[0, 1])));
                g.push(block(Perm::cycle(m, &all)));
            }
            g
        }
        WreathSubgroup::UA => {
            let mut g = Vec::new();
            if m >= 2 {
                g.push(flips(&[0, 1]));
            }
            if m >= 3 {
                g.push(block(Perm::cycle(m, &[0, 1, 2])));
                let odd_cycle: Vec<usize> = if m % 2 == 1 { all.clone() } else { (1..m).collect() };
                g.push(block(Perm::cycle(m, &odd_cycle)));
            }
            g
        }
    }
}

/// `sum over k2 of k! / ((k - 2 k2)! 2^k2 k2!)`, the number of involutions
/// in `S_k` and the orbit count of `C_2 wr S_m` on ordered distinct
/// `k`-tuples when `m >= k`.
pub fn orbit_count_formula(k: u64) -> u128 {
    let fact = |n: u64| (1..=n as u128).product::<u128>();
    (0..=k / 2)
        .map(|k2| fact(k) / (fact(k - 2 * k2) * (1u128 << k2) * fact(k2)))
        .sum()
}

/// Involutions of `S_k` counted by enumerating all permutations.
pub fn involution_count(k: usize) -> u64 {
    let mut count = 0;
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        if (0..k).all(|i| perm[perm[i]] == i) {
            count += 1;
        }
        if !next_permutation(&mut perm) {
            return count;
        }
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Orbits of the chosen subgroup on ordered `k`-tuples of distinct points
/// of the `2m`-point set, by union-find over generator moves.
pub fn brute_orbits(m: usize, k: usize, which: WreathSubgroup) -> Result<u64> {
    if m == 0 || m > 6 || k == 0 || k > 6 || k > m {
        return Err(Error::TooLarge(format!("orbit enumeration needs 1 <= k <= m <= 6, got m={m}, k={k}")));
    }
    let base = 2 * m;
    let total = base.pow(k as u32);
    let gens = generators(m, which);
    let mut uf = UnionFind::new(total);
    let mut digits = vec![0usize; k];
    let distinct = |d: &[usize]| (0..d.len()).all(|i| (0..i).all(|j| d[i] != d[j]));
    let encode = |d: &[usize]| d.iter().fold(0usize, |acc, &x| acc * base + x);
    for idx in 0..total {
        let mut r = idx;
        for slot in digits.iter_mut().rev() {
            *slot = r % base;
            r /= base;
        }
        if !distinct(&digits) {
            continue;
        }
        for g in &gens {
            let img: Vec<usize> = digits.iter().map(|&x| g.apply(x)).collect();
            uf.union(idx as u32, encode(&img) as u32);
        }
    }
    let mut count = 0;
    for idx in 0..total {
        let mut r = idx;
        for slot in digits.iter_mut().rev() {
            *slot = r % base;
            r /= base;
        }
        if distinct(&digits) && uf.find(idx as u32) == idx as u32 {
            count += 1;
        }
    }
    Ok(count)
}

/// Outcome of the derived-subgroup computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedCheck {
    pub group_order: u64,
    pub derived_order: u64,
    pub equals_ua: bool,
}

impl DerivedCheck {
    pub fn pass(&self) -> bool {
        self.equals_ua && self.group_order == 4 * self.derived_order
    }
}

/// Computes the commutator subgroup of `C_2 wr S_m` as the normal closure of
/// the commutators of its generators and compares it with `U[m] ⋊ A_m`.
pub fn derived_subgroup_check(m: usize) -> Result<DerivedCheck> {
    if !(2..=6).contains(&m) {
        return Err(Error::TooLarge(format!("derived subgroup check needs 2 <= m <= 6, got {m}")));
    }
    let n = 2 * m;
    let gens = generators(m, WreathSubgroup::Full);
    let group = closure(&gens, n);
    let mut normal_gens: Vec<Perm> = Vec::new();
    for a in &gens {
        for b in &gens {
            let c = a.inverse().compose(&b.inverse()).compose(a).compose(b);
            if !c.is_identity() {
                normal_gens.push(c);
            }
        }
    }
    let mut derived = closure(&normal_gens, n);
    loop {
        let keys: HashSet<u64> = derived.iter().map(Perm::key).collect();
        let extra: Vec<Perm> = gens
            .iter()
            .flat_map(|g| normal_gens.iter().map(move |h| g.compose(h).compose(&g.inverse())))
            .filter(|c| !keys.contains(&c.key()))
            .collect();
        if extra.is_empty() {
            break;
        }
        normal_gens.extend(extra);
        derived = closure(&normal_gens, n);
    }
    let derived_keys: HashSet<u64> = derived.iter().map(Perm::key).collect();
    let ua_keys: HashSet<u64> = group
        .iter()
        .filter(|p| {
            let s = SignedPerm::from_points(p).expect("block preserving");
            s.in_u() && !s.perm.is_odd()
        })
        .map(Perm::key)
        .collect();
    Ok(DerivedCheck {
        group_order: group.len() as u64,
        derived_order: derived.len() as u64,
        equals_ua: derived_keys == ua_keys,
    })
}

/// Orders of the groups induced on the four points of blocks 0 and 1 by
/// their setwise stabilizers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementCheck {
    /// The block-permuting copy `K` of `S_m`.
    pub k: u64,
    /// `K` twisted by the sign character.
    pub twisted: u64,
    /// `<(-1, ..., -1), K>`.
    pub k_with_center: u64,
    /// The full wreath product, which must induce all of `C_2 wr S_2`.
    pub control: u64,
}

impl ComplementCheck {
    pub fn pass(&self) -> bool {
        self.k < 8 && self.twisted < 8 && self.k_with_center < 8 && self.control == 8
    }
}

pub fn complement_block_check(m: usize) -> Result<ComplementCheck> {
    if !(4..=6).contains(&m) {
        return Err(Error::TooLarge(format!("complement check needs 4 <= m <= 6, got {m}")));
    }
    let n = 2 * m;
    let lift = |perm: Perm, twist: bool| {
        let odd = twist && perm.is_odd();
        SignedPerm { signs: vec![odd; m], perm }.to_points()
    };
    let transposition = Perm::cycle(m, &[0, 1]);
    let long = Perm::cycle(m, &(0..m).collect::<Vec<_>>());
    let center = SignedPerm { signs: vec![true; m], perm: Perm::identity(m) }.to_points();
    let k = closure(&[lift(transposition.clone(), false), lift(long.clone(), false)], n);
    let twisted = closure(&[lift(transposition.clone(), true), lift(long.clone(), true)], n);
    let k_center = closure(&[lift(transposition, false), lift(long, false), center], n);
    let full = closure(&generators(m, WreathSubgroup::Full), n);
    Ok(ComplementCheck {
        k: induced_on_two_blocks(&k),
        twisted: induced_on_two_blocks(&twisted),
        k_with_center: induced_on_two_blocks(&k_center),
        control: induced_on_two_blocks(&full),
    })
}

fn induced_on_two_blocks(group: &[Perm]) -> u64 {
    let induced: HashSet<[u8; 4]> = group
        .iter()
        .map(|g| [g.0[0], g.0[1], g.0[2], g.0[3]])
        .filter(|img| img.iter().all(|&x| x < 4))
        .collect();
    induced.len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_matches_involutions() {
        assert_eq!(orbit_count_formula(1), 1);
        assert_eq!(orbit_count_formula(2), 2);
        assert_eq!(orbit_count_formula(6), 76);
        for k in 1..=8 {
            assert_eq!(orbit_count_formula(k as u64), involution_count(k) as u128);
        }
    }

    #[test]
    fn signed_perm_round_trip() {
        let s = SignedPerm::new(vec![true, false, true], Perm::cycle(3, &[0, 2])).unwrap();
        let p = s.to_points();
        assert_eq!(SignedPerm::from_points(&p), Some(s));
        assert!(SignedPerm::from_points(&Perm::cycle(6, &[0, 2])).is_none());
        assert!(SignedPerm::new(vec![true], Perm::identity(2)).is_err());
    }

    #[test]
    fn group_orders() {
        for m in 2..=5usize {
            let fact: usize = (1..=m).product();
            assert_eq!(closure(&generators(m, WreathSubgroup::Full), 2 * m).len(), fact << m);
            assert_eq!(
                closure(&generators(m, WreathSubgroup::UA), 2 * m).len(),
                (fact / 2) << (m - 1)
            );
        }
    }

    #[test]
    fn u_is_normal_of_the_right_size() {
        for m in 2..=5usize {
            let n = 2 * m;
            let u: Vec<Perm> = closure(&generators(m, WreathSubgroup::Full), n)
                .into_iter()
                .filter(|p| {
                    let s = SignedPerm::from_points(p).unwrap();
                    s.perm.is_identity() && s.in_u()
                })
                .collect();
            assert_eq!(u.len(), 1 << (m - 1));
            let keys: HashSet<u64> = u.iter().map(Perm::key).collect();
            for g in generators(m, WreathSubgroup::Full) {
                for x in &u {
                    assert!(keys.contains(&g.compose(x).compose(&g.inverse()).key()));
                }
            }
        }
    }

    #[test]
    fn small_orbit_counts() {
        assert_eq!(brute_orbits(3, 2, WreathSubgroup::Full).unwrap(), 2);
        assert_eq!(brute_orbits(4, 3, WreathSubgroup::Full).unwrap(), 4);
        assert!(brute_orbits(3, 4, WreathSubgroup::Full).is_err());
        assert!(brute_orbits(7, 2, WreathSubgroup::Full).is_err());
    }

    #[test]
    fn derived_subgroup_small() {
        let d = derived_subgroup_check(2).unwrap();
        assert_eq!((d.group_order, d.derived_order), (8, 2));
        assert!(d.pass());
        let d = derived_subgroup_check(3).unwrap();
        assert_eq!((d.group_order, d.derived_order), (48, 12));
        assert!(d.pass());
    }

    #[test]
    fn complements_at_four() {
        let c = complement_block_check(4).unwrap();
        assert_eq!(c, ComplementCheck { k: 2, twisted: 4, k_with_center: 4, control: 8 });
        assert!(c.pass());
    }
}
