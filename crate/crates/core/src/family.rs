//! Families of k-sets, nested chains, compression, shifting, shifted-family
//! enumeration and the extremal constructions.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::bounds::WeightVector;
use crate::combinatorics::{binom_u64, colex_rank, colex_unrank, ksets, low_mask, KSet, MAX_N};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Largest `C(n, k)` a [`Family`] bitset may address.
pub const MAX_UNIVERSE: u64 = 1 << 26;

/// A family of k-subsets of `[n]`, stored as a bitset over colex ranks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    n: usize,
    k: usize,
    count: u64,
    bits: Vec<u64>,
}

impl Family {
    pub fn empty(n: usize, k: usize) -> Result<Self> {
        if n > MAX_N || k > n {
            return Err(Error::InvalidParameter(format!("family over n = {n}, k = {k}")));
        }
        let count = binom_u64(n as u64, k as u64)?;
        if count > MAX_UNIVERSE {
            return Err(Error::InstanceTooLarge {
                solver: "family",
                detail: format!("C({n}, {k}) = {count} exceeds {MAX_UNIVERSE}"),
            });
        }
        Ok(Family { n, k, count, bits: vec![0; count.div_ceil(64) as usize] })
    }

    pub fn full(n: usize, k: usize) -> Result<Self> {
        let mut f = Self::empty(n, k)?;
        for r in 0..f.count {
            f.set_rank(r);
        }
        Ok(f)
    }

    pub fn from_sets(n: usize, k: usize, sets: impl IntoIterator<Item = KSet>) -> Result<Self> {
        let mut f = Self::empty(n, k)?;
        for x in sets {
            f.insert(x)?;
        }
        Ok(f)
    }

    /// Convenience constructor from 1-based element lists.
    pub fn from_lists<S: AsRef<[usize]>>(n: usize, k: usize, sets: &[S]) -> Result<Self> {
        let mut f = Self::empty(n, k)?;
        for s in sets {
            f.insert(KSet::from_elements(s.as_ref(), n)?)?;
        }
        Ok(f)
    }

    pub fn from_ranks(n: usize, k: usize, ranks: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut f = Self::empty(n, k)?;
        for r in ranks {
            if r >= f.count {
                return Err(Error::RankOutOfRange { rank: r, count: f.count });
            }
            f.set_rank(r);
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn params(&self) -> (usize, usize) {
        (self.n, self.k)
    }

    /// `C(n, k)`, the number of addressable k-sets.
    pub fn universe_size(&self) -> u64 {
        self.count
    }

    #[inline]
    pub(crate) fn set_rank(&mut self, r: u64) {
        self.bits[(r / 64) as usize] |= 1u64 << (r % 64);
    }

    #[inline]
    pub(crate) fn clear_rank(&mut self, r: u64) {
        self.bits[(r / 64) as usize] &= !(1u64 << (r % 64));
    }

    #[inline]
    pub fn contains_rank(&self, r: u64) -> bool {
        r < self.count && self.bits[(r / 64) as usize] & (1u64 << (r % 64)) != 0
    }

    fn check(&self, x: KSet) -> Result<()> {
        if x.len() != self.k {
            return Err(Error::SizeMismatch(x.len(), self.k));
        }
        if !x.fits(self.n) {
            return Err(Error::InvalidKSet(format!("{x:?} not inside [{}]", self.n)));
        }
        Ok(())
    }

    pub fn insert(&mut self, x: KSet) -> Result<bool> {
        self.check(x)?;
        let r = colex_rank(x);
        let fresh = !self.contains_rank(r);
        self.set_rank(r);
        Ok(fresh)
    }

    pub fn remove(&mut self, x: KSet) -> Result<bool> {
        self.check(x)?;
        let r = colex_rank(x);
        let present = self.contains_rank(r);
        self.clear_rank(r);
        Ok(present)
    }

    pub fn contains(&self, x: KSet) -> bool {
        x.len() == self.k && x.fits(self.n) && self.contains_rank(colex_rank(x))
    }

    pub fn len(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Member colex ranks in increasing order.
    pub fn ranks(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as u64;
                    w &= w - 1;
                    Some(i as u64 * 64 + b)
                }
            })
        })
    }

    /// Members in colex order.
    pub fn members(&self) -> Vec<KSet> {
        self.ranks()
            .map(|r| colex_unrank(r, self.n, self.k).expect("rank in range"))
            .collect()
    }

    pub fn max_rank(&self) -> Option<u64> {
        self.bits
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i as u64 * 64 + 63 - w.leading_zeros() as u64)
    }

    fn same_params(&self, other: &Family) -> Result<()> {
        if self.params() != other.params() {
            return Err(Error::ParamMismatch(
                format!("n={}, k={}", self.n, self.k),
                format!("n={}, k={}", other.n, other.k),
            ));
        }
        Ok(())
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        self.same_params(other)?;
        let mut out = self.clone();
        out.bits.iter_mut().zip(&other.bits).for_each(|(a, b)| *a |= b);
        Ok(out)
    }

    pub fn intersection(&self, other: &Family) -> Result<Family> {
        self.same_params(other)?;
        let mut out = self.clone();
        out.bits.iter_mut().zip(&other.bits).for_each(|(a, b)| *a &= b);
        Ok(out)
    }

    /// Subset test; families over different parameters are never subsets.
    pub fn is_subset_of(&self, other: &Family) -> bool {
        self.params() == other.params()
            && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.members().into_iter().map(KSet::to_vec).collect()
    }
}

impl std::fmt::Debug for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Family(n={}, k={}, ", self.n, self.k)?;
        f.debug_set().entries(self.members()).finish()?;
        f.write_str(")")
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    n: usize,
    k: usize,
    sets: Vec<Vec<usize>>,
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyJson { n: self.n, k: self.k, sets: self.to_lists() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FamilyJson::deserialize(d)?;
        Family::from_lists(j.n, j.k, &j.sets).map_err(serde::de::Error::custom)
    }
}

/// A nested chain `B_0 ⊆ B_1 ⊆ ... ⊆ B_s`, optionally weighted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    families: Vec<Family>,
    weights: Option<WeightVector>,
}

impl Chain {
    pub fn new(families: Vec<Family>, weights: Option<WeightVector>) -> Result<Self> {
        let first = families
            .first()
            .ok_or_else(|| Error::InvalidParameter("a chain needs at least one family".into()))?;
        for f in &families[1..] {
            first.same_params(f)?;
        }
        if let Some(i) = families.windows(2).position(|w| !w[0].is_subset_of(&w[1])) {
            return Err(Error::NotNested(i));
        }
        if let Some(w) = &weights {
            if w.len() != families.len() {
                return Err(Error::InvalidWeights(format!(
                    "{} weights for {} families",
                    w.len(),
                    families.len()
                )));
            }
        }
        Ok(Chain { families, weights })
    }

    pub fn n(&self) -> usize {
        self.families[0].n
    }

    pub fn k(&self) -> usize {
        self.families[0].k
    }

    /// Index of the top family; the chain has `s + 1` members.
    pub fn s(&self) -> usize {
        self.families.len() - 1
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn weights(&self) -> Option<&WeightVector> {
        self.weights.as_ref()
    }

    pub fn with_weights(mut self, weights: WeightVector) -> Result<Self> {
        if weights.len() != self.families.len() {
            return Err(Error::InvalidWeights(format!(
                "{} weights for {} families",
                weights.len(),
                self.families.len()
            )));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.families.iter().map(Family::len).collect()
    }

    /// `sum_i p_i |B_i|` under the given weights.
    pub fn weighted_value(&self, weights: &WeightVector) -> Result<Rational> {
        if weights.len() != self.families.len() {
            return Err(Error::InvalidWeights(format!(
                "{} weights for {} families",
                weights.len(),
                self.families.len()
            )));
        }
        Ok(weights
            .iter()
            .zip(self.sizes())
            .map(|(p, c)| p * rational::int(c))
            .sum())
    }

    /// Value under the attached weights; unit weights when none are attached.
    pub fn value(&self) -> Rational {
        match &self.weights {
            Some(w) => self.weighted_value(w).expect("length checked at construction"),
            None => rational::int(self.sizes().iter().sum::<u64>()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ChainJson {
    n: usize,
    k: usize,
    families: Vec<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<WeightVector>,
}

impl Serialize for Chain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChainJson {
            n: self.n(),
            k: self.k(),
            families: self.families.iter().map(Family::to_lists).collect(),
            weights: self.weights.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Chain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ChainJson::deserialize(d)?;
        let families = j
            .families
            .iter()
            .map(|sets| Family::from_lists(j.n, j.k, sets))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Chain::new(families, j.weights).map_err(serde::de::Error::custom)
    }
}

/// Weights `(m - s, 1, ..., 1)` under which `f(n, k, m, s) = f_p(n, k, s)`.
pub fn reduce_to_weighted(m: usize, s: usize) -> Result<WeightVector> {
    if m <= s {
        return Err(Error::InvalidParameter(format!("need m > s, got m = {m}, s = {s}")));
    }
    WeightVector::leading((m - s) as u64, s)
}

/// Replaces `(A, B)` by `(A ∩ B, A ∪ B)`.
pub fn compress_pair(a: &Family, b: &Family) -> Result<(Family, Family)> {
    Ok((a.intersection(b)?, a.union(b)?))
}

/// Compresses adjacent pairs in repeated sweeps until the sequence is nested.
///
/// Each effective compression strictly increases `sum_i i |A_i|`, so the
/// sweeps terminate.
pub fn nestify(seq: &[Family]) -> Result<Vec<Family>> {
    let mut out = seq.to_vec();
    if let Some(first) = out.first() {
        for f in &out[1..] {
            first.same_params(f)?;
        }
    }
    loop {
        let mut changed = false;
        for i in 0..out.len().saturating_sub(1) {
            if !out[i].is_subset_of(&out[i + 1]) {
                let (lo, hi) = compress_pair(&out[i], &out[i + 1])?;
                out[i] = lo;
                out[i + 1] = hi;
                changed = true;
            }
        }
        if !changed {
            return Ok(out);
        }
    }
}

/// The (i, j)-shift: every member containing `j` but not `i` moves to
/// `A - j + i` unless that set is already present.
pub fn shift_ij(f: &Family, i: usize, j: usize) -> Result<Family> {
    if i == 0 || i >= j || j > f.n {
        return Err(Error::InvalidShift { i, j });
    }
    let mut out = f.clone();
    for x in f.members() {
        if x.contains(j) && !x.contains(i) {
            let y = x.replace(j, i);
            if !f.contains(y) {
                out.clear_rank(colex_rank(x));
                out.set_rank(colex_rank(y));
            }
        }
    }
    Ok(out)
}

/// Applies all (i, j)-shifts until none changes the family: `j` ascending
/// from 2, `i` ascending below `j`, restarting after every effective shift.
pub fn shift_closure(f: &Family) -> Family {
    let mut cur = f.clone();
    'restart: loop {
        for j in 2..=cur.n {
            for i in 1..j {
                let next = shift_ij(&cur, i, j).expect("valid shift");
                if next != cur {
                    cur = next;
                    continue 'restart;
                }
            }
        }
        return cur;
    }
}

/// Simultaneous shift closure of a sequence: each `(i, j)`-shift is
/// applied to every family at once, in the order of [`shift_closure`].
pub fn shift_closure_all(seq: &[Family]) -> Vec<Family> {
    let mut cur = seq.to_vec();
    let Some(n) = seq.first().map(Family::n) else { return cur };
    'restart: loop {
        for j in 2..=n {
            for i in 1..j {
                let next: Vec<Family> =
                    cur.iter().map(|f| shift_ij(f, i, j).expect("valid shift")).collect();
                if next != cur {
                    cur = next;
                    continue 'restart;
                }
            }
        }
        return cur;
    }
}

/// Whether `f` is a downset of the shifting order.
pub fn is_shifted(f: &Family) -> bool {
    f.members()
        .into_iter()
        .all(|x| x.shift_predecessors().all(|y| f.contains(y)))
}

/// Default cap on the number of shifted families enumerated.
pub const DEFAULT_DOWNSET_LIMIT: u64 = 10_000_000;

/// Streams every shifted family over `(n, k)` exactly once, level by level
/// in nondecreasing cardinality.
///
/// A downset `D` of size `c + 1` is generated from `D - x` where `x` is its
/// colex-largest member; colex order extends the shifting order, so `x` is
/// always maximal and each downset has exactly one parent.
pub struct ShiftedFamilies {
    universe: Vec<KSet>,
    // immediate predecessors of each k-set, by colex rank
    preds: Vec<Vec<u64>>,
    level: VecDeque<(Family, Option<u64>)>,
    next_level: Vec<(Family, Option<u64>)>,
    emitted: u64,
    limit: u64,
    done: bool,
}

impl ShiftedFamilies {
    pub fn new(n: usize, k: usize, limit: u64) -> Result<Self> {
        let empty = Family::empty(n, k)?;
        let universe = ksets(n, k)?;
        let preds = universe
            .iter()
            .map(|x| x.shift_predecessors().map(colex_rank).collect())
            .collect();
        Ok(ShiftedFamilies {
            universe,
            preds,
            level: VecDeque::from([(empty, None)]),
            next_level: Vec::new(),
            emitted: 0,
            limit,
            done: false,
        })
    }

    fn expand(&mut self, d: &Family, max: Option<u64>) {
        let start = max.map_or(0, |m| m + 1);
        for r in start..self.universe.len() as u64 {
            if self.preds[r as usize].iter().all(|&p| d.contains_rank(p)) {
                let mut child = d.clone();
                child.set_rank(r);
                self.next_level.push((child, Some(r)));
            }
        }
    }
}

impl Iterator for ShiftedFamilies {
    type Item = Result<Family>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if self.level.is_empty() {
            self.level = std::mem::take(&mut self.next_level).into();
        }
        let (d, max) = self.level.pop_front()?;
        if self.emitted >= self.limit {
            self.done = true;
            return Some(Err(Error::EnumerationCap { limit: self.limit }));
        }
        self.emitted += 1;
        self.expand(&d, max);
        Some(Ok(d))
    }
}

/// Collects all shifted families over `(n, k)`, failing above `limit`.
pub fn enumerate_shifted_families(n: usize, k: usize, limit: u64) -> Result<Vec<Family>> {
    ShiftedFamilies::new(n, k, limit)?.collect()
}

/// `E(n, k, s)`: all k-sets meeting `[s]`.
pub fn cover_family(n: usize, k: usize, s: usize) -> Result<Family> {
    if s > n {
        return Err(Error::InvalidParameter(format!("s = {s} exceeds n = {n}")));
    }
    let head = low_mask(s);
    Family::from_sets(n, k, ksets(n, k)?.into_iter().filter(|x| x.mask() & head != 0))
}

/// Named extremal constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    /// `B_0 = ∅`, `B_1 = ... = B_s = C([n], k)`.
    EmptyThenFull,
    /// `B_0 = ... = B_s = E(n, k, s)`.
    Cover,
    /// `B_0 = ... = B_s = C([(s + 1)k - 1], k)`.
    Clique,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 3] =
        [ConstructionKind::EmptyThenFull, ConstructionKind::Cover, ConstructionKind::Clique];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::EmptyThenFull => "empty-then-full",
            ConstructionKind::Cover => "cover",
            ConstructionKind::Clique => "clique",
        }
    }
}

impl std::str::FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown construction {s:?}")))
    }
}

pub fn construction_chain(
    kind: ConstructionKind,
    n: usize,
    k: usize,
    s: usize,
    weights: &WeightVector,
) -> Result<Chain> {
    if weights.len() != s + 1 {
        return Err(Error::InvalidWeights(format!("{} weights for s = {s}", weights.len())));
    }
    let families = match kind {
        ConstructionKind::EmptyThenFull => {
            let mut v = vec![Family::empty(n, k)?];
            v.extend(std::iter::repeat_n(Family::full(n, k)?, s));
            v
        }
        ConstructionKind::Cover => vec![cover_family(n, k, s.min(n))?; s + 1],
        ConstructionKind::Clique => {
            let y = ((s + 1) * k).checked_sub(1).ok_or_else(|| {
                Error::InvalidParameter("clique construction needs (s + 1)k >= 1".into())
            })?;
            if n < y {
                return Err(Error::InvalidParameter(format!(
                    "clique construction needs n >= (s + 1)k - 1 = {y}, got n = {n}"
                )));
            }
            let inside = low_mask(y);
            let f = Family::from_sets(
                n,
                k,
                ksets(n, k)?.into_iter().filter(|x| x.mask() & !inside == 0),
            )?;
            vec![f; s + 1]
        }
    };
    Chain::new(families, Some(weights.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::shift_leq;
    use crate::rational::int;

    fn fam(n: usize, k: usize, sets: &[&[usize]]) -> Family {
        Family::from_lists(n, k, sets).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_to_weighted(3, 1).unwrap(), WeightVector::from_integers(&[2, 1]).unwrap());
        assert_eq!(reduce_to_weighted(4, 3).unwrap(), WeightVector::uniform(3));
        assert_eq!(
            reduce_to_weighted(7, 3).unwrap(),
            WeightVector::from_integers(&[4, 1, 1, 1]).unwrap()
        );
        assert!(reduce_to_weighted(2, 2).is_err());
    }

    #[test]
    fn compress_examples() {
        let a = fam(4, 2, &[&[1, 2]]);
        let b = fam(4, 2, &[&[3, 4]]);
        let (lo, hi) = compress_pair(&a, &b).unwrap();
        assert!(lo.is_empty());
        assert_eq!(hi, fam(4, 2, &[&[1, 2], &[3, 4]]));
        assert_eq!(compress_pair(&a, &a).unwrap(), (a.clone(), a.clone()));
        let a = fam(3, 2, &[&[1, 2], &[1, 3]]);
        let b = fam(3, 2, &[&[1, 2], &[2, 3]]);
        let (lo, hi) = compress_pair(&a, &b).unwrap();
        assert_eq!(lo, fam(3, 2, &[&[1, 2]]));
        assert_eq!(hi, fam(3, 2, &[&[1, 2], &[1, 3], &[2, 3]]));
        assert!(compress_pair(&a, &Family::empty(4, 2).unwrap()).is_err());
    }

    #[test]
    fn nestify_examples() {
        let a = fam(4, 2, &[&[1, 2]]);
        let b = fam(4, 2, &[&[3, 4]]);
        let out = nestify(&[a, b]).unwrap();
        assert!(out[0].is_empty());
        assert_eq!(out[1].len(), 2);
        let nested = vec![fam(4, 2, &[&[1, 2]]), fam(4, 2, &[&[1, 2], &[1, 3]])];
        assert_eq!(nestify(&nested).unwrap(), nested);
        let three = vec![
            fam(5, 2, &[&[4, 5], &[1, 2]]),
            fam(5, 2, &[&[1, 3]]),
            fam(5, 2, &[&[2, 3], &[1, 2]]),
        ];
        let out = nestify(&three).unwrap();
        assert!(out.windows(2).all(|w| w[0].is_subset_of(&w[1])));
        let before: u64 = three.iter().map(Family::len).sum();
        assert_eq!(out.iter().map(Family::len).sum::<u64>(), before);
    }

    #[test]
    fn shift_examples() {
        let f = fam(3, 2, &[&[2, 3]]);
        assert_eq!(shift_ij(&f, 1, 2).unwrap(), fam(3, 2, &[&[1, 3]]));
        let g = fam(3, 2, &[&[1, 3], &[2, 3]]);
        assert_eq!(shift_ij(&g, 1, 2).unwrap(), g);
        assert!(matches!(shift_ij(&g, 2, 2), Err(Error::InvalidShift { .. })));
        assert!(matches!(shift_ij(&g, 3, 2), Err(Error::InvalidShift { .. })));
        assert_eq!(shift_closure(&f), fam(3, 2, &[&[1, 2]]));
        let shifted = fam(4, 2, &[&[1, 2], &[1, 3]]);
        assert_eq!(shift_closure(&shifted), shifted);
    }

    #[test]
    fn shifted_predicate() {
        assert!(is_shifted(&fam(3, 2, &[&[1, 2], &[1, 3]])));
        assert!(!is_shifted(&fam(3, 2, &[&[1, 3]])));
        assert!(is_shifted(&Family::empty(5, 2).unwrap()));
        assert!(is_shifted(&Family::full(5, 2).unwrap()));
    }

    /// Brute force: every subset of C([n], k) tested for downward closure.
    fn brute_downset_count(n: usize, k: usize) -> u64 {
        let all = ksets(n, k).unwrap();
        let m = all.len();
        assert!(m <= 20);
        let mut count = 0;
        for bits in 0u32..(1 << m) {
            let closed = (0..m).all(|a| {
                bits & (1 << a) == 0
                    || (0..m).all(|b| !shift_leq(all[b], all[a]).unwrap() || bits & (1 << b) != 0)
            });
            count += closed as u64;
        }
        count
    }

    #[test]
    fn downset_enumeration_examples() {
        let d = enumerate_shifted_families(3, 2, 100).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d[1], fam(3, 2, &[&[1, 2]]));
        assert_eq!(d[2], fam(3, 2, &[&[1, 2], &[1, 3]]));
        assert_eq!(d[3], Family::full(3, 2).unwrap());
        assert_eq!(enumerate_shifted_families(4, 4, 100).unwrap().len(), 2);
        assert_eq!(enumerate_shifted_families(4, 2, 100).unwrap().len(), 8);
    }

    #[test]
    fn downset_enumeration_matches_brute_force() {
        for n in 1..=7 {
            for k in 1..=n {
                if binom_u64(n as u64, k as u64).unwrap() > 20 {
                    continue;
                }
                let d = enumerate_shifted_families(n, k, 1 << 20).unwrap();
                assert_eq!(d.len() as u64, brute_downset_count(n, k), "n={n} k={k}");
                assert!(d.iter().all(is_shifted));
                assert!(d.windows(2).all(|w| w[0].len() <= w[1].len()));
                let unique: std::collections::HashSet<_> = d.iter().collect();
                assert_eq!(unique.len(), d.len());
            }
        }
    }

    #[test]
    fn downset_cap_aborts() {
        let err = enumerate_shifted_families(6, 2, 5).unwrap_err();
        assert!(matches!(err, Error::EnumerationCap { limit: 5 }));
    }

    #[test]
    fn cover_family_sizes() {
        assert_eq!(cover_family(6, 2, 2).unwrap().len(), 9);
        assert_eq!(cover_family(6, 2, 6).unwrap(), Family::full(6, 2).unwrap());
        assert!(cover_family(6, 2, 0).unwrap().is_empty());
        assert!(cover_family(6, 2, 7).is_err());
    }

    #[test]
    fn constructions() {
        let w = WeightVector::uniform(2);
        let c = construction_chain(ConstructionKind::EmptyThenFull, 6, 2, 2, &w).unwrap();
        assert_eq!(c.value(), int(30));
        let c = construction_chain(ConstructionKind::Cover, 6, 2, 2, &w).unwrap();
        assert_eq!(c.value(), int(27));
        let c = construction_chain(ConstructionKind::Clique, 6, 2, 1, &WeightVector::uniform(1))
            .unwrap();
        assert_eq!(c.families()[0].to_lists(), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(c.value(), int(6));
        assert!(construction_chain(ConstructionKind::Clique, 4, 2, 2, &w).is_err());
        assert!("nope".parse::<ConstructionKind>().is_err());
    }

    #[test]
    fn chain_validation_and_json() {
        let a = fam(4, 2, &[&[1, 2]]);
        let b = fam(4, 2, &[&[3, 4]]);
        assert!(matches!(Chain::new(vec![a.clone(), b.clone()], None), Err(Error::NotNested(0))));
        let w = WeightVector::new(vec![rational::ratio(3, 2), int(1)]).unwrap();
        let c = Chain::new(vec![a.clone(), a.union(&b).unwrap()], Some(w)).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(
            text,
            r#"{"n":4,"k":2,"families":[[[1,2]],[[1,2],[3,4]]],"weights":["3/2",1]}"#
        );
        let back: Chain = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(c.value(), rational::ratio(7, 2));
        let fj = serde_json::to_string(&a).unwrap();
        assert_eq!(fj, r#"{"n":4,"k":2,"sets":[[1,2]]}"#);
        assert!(serde_json::from_str::<Family>(r#"{"n":4,"k":2,"sets":[[1,5]]}"#).is_err());
        assert!(serde_json::from_str::<Family>(r#"{"n":4,"k":2,"sets":[[1,2,3]]}"#).is_err());
    }
}
