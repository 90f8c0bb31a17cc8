//! Exact integer primitives: checked binomials, k-sets as bitmasks, colex
//! ranking and the shifting partial order.
//!
//! Elements are 1-based everywhere outside this module's mask arithmetic:
//! element `i` lives at bit `i - 1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest supported ground set.
pub const MAX_N: usize = 64;

/// Exact non-negative integer backed by `u128`. Arithmetic is checked and
/// reports overflow instead of wrapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(u128);

impl BigCount {
    pub const ZERO: BigCount = BigCount(0);
    pub const ONE: BigCount = BigCount(1);

    pub fn new(v: u128) -> Self {
        BigCount(v)
    }

    pub fn get(self) -> u128 {
        self.0
    }

    pub fn checked_add(self, rhs: BigCount) -> Result<BigCount> {
        self.0
            .checked_add(rhs.0)
            .map(BigCount)
            .ok_or_else(|| Error::Overflow(format!("{} + {}", self.0, rhs.0)))
    }

    pub fn checked_sub(self, rhs: BigCount) -> Result<BigCount> {
        self.0
            .checked_sub(rhs.0)
            .map(BigCount)
            .ok_or_else(|| Error::Overflow(format!("{} - {} is negative", self.0, rhs.0)))
    }

    pub fn checked_mul(self, rhs: BigCount) -> Result<BigCount> {
        self.0
            .checked_mul(rhs.0)
            .map(BigCount)
            .ok_or_else(|| Error::Overflow(format!("{} * {}", self.0, rhs.0)))
    }

    pub fn to_u64(self) -> Result<u64> {
        u64::try_from(self.0).map_err(|_| Error::Overflow(format!("{} exceeds u64", self.0)))
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    pub fn to_rational(self) -> Rational {
        Rational::from_integer(self.to_bigint())
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(v as u128)
    }
}

/// Binomial coefficient `C(m, s)`, zero when `s > m`.
///
/// Multiplicative formula; every intermediate value is itself a binomial
/// coefficient, and the gcd split keeps the products from overflowing before
/// the result does.
pub fn binom(m: u64, s: u64) -> Result<BigCount> {
    if s > m {
        return Ok(BigCount::ZERO);
    }
    let s = s.min(m - s);
    let mut acc: u128 = 1;
    for i in 1..=s as u128 {
        let num = (m - s) as u128 + i;
        let g = acc.gcd(&i);
        let (a, d) = (acc / g, i / g);
        debug_assert_eq!(num % d, 0);
        acc = a
            .checked_mul(num / d)
            .ok_or_else(|| Error::Overflow(format!("C({m}, {s}) exceeds u128")))?;
    }
    Ok(BigCount(acc))
}

/// `C(m, s)` as `u64`, for indexing.
pub fn binom_u64(m: u64, s: u64) -> Result<u64> {
    binom(m, s)?.to_u64()
}

/// A subset of `[n]`, `n <= 64`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSet {
    mask: u64,
    k: u8,
}

impl KSet {
    pub fn from_mask(mask: u64) -> Self {
        KSet { mask, k: mask.count_ones() as u8 }
    }

    /// Builds a set from 1-based elements. Duplicates and out-of-range
    /// elements are rejected.
    pub fn from_elements(elements: &[usize], n: usize) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::InvalidParameter(format!("n = {n} exceeds {MAX_N}")));
        }
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::InvalidKSet(format!("element {e} outside [1, {n}]")));
            }
            let bit = 1u64 << (e - 1);
            if mask & bit != 0 {
                return Err(Error::InvalidKSet(format!("duplicate element {e}")));
            }
            mask |= bit;
        }
        Ok(Self::from_mask(mask))
    }

    /// `{1, ..., k}`
    pub fn initial(k: usize) -> Self {
        Self::from_mask(low_mask(k))
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn len(self) -> usize {
        self.k as usize
    }

    pub fn is_empty(self) -> bool {
        self.k == 0
    }

    #[inline]
    pub fn contains(self, element: usize) -> bool {
        (1..=MAX_N).contains(&element) && self.mask & (1u64 << (element - 1)) != 0
    }

    #[inline]
    pub fn is_disjoint(self, other: KSet) -> bool {
        self.mask & other.mask == 0
    }

    /// Elements in increasing order, 1-based.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut m = self.mask;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(b + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }

    /// Largest element, or 0 for the empty set.
    pub fn max_element(self) -> usize {
        64 - self.mask.leading_zeros() as usize
    }

    /// Whether all elements lie in `[n]`.
    pub fn fits(self, n: usize) -> bool {
        self.max_element() <= n
    }

    /// Replaces element `from` by `to`; the caller guarantees `from ∈ self`,
    /// `to ∉ self`.
    pub fn replace(self, from: usize, to: usize) -> KSet {
        KSet {
            mask: (self.mask & !(1u64 << (from - 1))) | (1u64 << (to - 1)),
            k: self.k,
        }
    }

    /// Immediate predecessors under the shifting order: decrement one
    /// element to a free smaller value.
    pub fn shift_predecessors(self) -> impl Iterator<Item = KSet> {
        self.elements()
            .filter(move |&e| e > 1 && !self.contains(e - 1))
            .map(move |e| self.replace(e, e - 1))
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

#[inline]
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Colex rank: `sum_j C(c_j, j + 1)` over the 0-based elements `c_0 < c_1 < ...`.
/// Colex order on k-sets coincides with numeric order of the masks.
pub fn colex_rank(x: KSet) -> u64 {
    let mut r = 0u64;
    for (j, e) in x.elements().enumerate() {
        // C(e - 1, j + 1) <= C(63, 32) fits u64
        r += binom_u64((e - 1) as u64, (j + 1) as u64).expect("fits u64");
    }
    r
}

/// Inverse of [`colex_rank`] on k-subsets of `[n]`.
pub fn colex_unrank(rank: u64, n: usize, k: usize) -> Result<KSet> {
    if n > MAX_N || k > n {
        return Err(Error::InvalidParameter(format!("n = {n}, k = {k}")));
    }
    let count = binom_u64(n as u64, k as u64)?;
    if rank >= count {
        return Err(Error::RankOutOfRange { rank, count });
    }
    let mut r = rank;
    let mut mask = 0u64;
    let mut top = n;
    for j in (1..=k).rev() {
        // largest c < top with C(c, j) <= r
        let mut c = top - 1;
        loop {
            let b = binom_u64(c as u64, j as u64)?;
            if b <= r {
                r -= b;
                break;
            }
            c -= 1;
        }
        mask |= 1u64 << c;
        top = c;
    }
    Ok(KSet::from_mask(mask))
}

/// All k-subsets of `[n]` in colex order (Gosper's hack).
pub fn ksets(n: usize, k: usize) -> Result<Vec<KSet>> {
    if n > MAX_N || k > n {
        return Err(Error::InvalidParameter(format!("n = {n}, k = {k}")));
    }
    let count = binom_u64(n as u64, k as u64)?;
    let mut out = Vec::with_capacity(count as usize);
    if k == 0 {
        out.push(KSet::from_mask(0));
        return Ok(out);
    }
    let mut m = low_mask(k);
    for idx in 0..count {
        out.push(KSet::from_mask(m));
        if idx + 1 == count {
            break;
        }
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    Ok(out)
}

/// The shifting partial order: sorted elements compared coordinatewise.
pub fn shift_leq(x: KSet, y: KSet) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::SizeMismatch(x.len(), y.len()));
    }
    Ok(x.elements().zip(y.elements()).all(|(a, b)| a <= b))
}
