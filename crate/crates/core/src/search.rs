//! Exact computation of `f_p(n, k, s)` at desk scale.
//!
//! Two independent solvers:
//!
//! * [`oracle_f`] searches every nested chain, encoded as a level map that
//!   sends each k-set to the first index at which it enters the chain (or to
//!   "never"). It assumes nothing about the structure of optimal chains.
//! * [`exact_f_shifted`] searches only chains of shifted families, top-down
//!   from `B_s`. Simultaneous shifting of all members of a chain keeps it
//!   nested, keeps every size, and never increases the rainbow matching
//!   number, so both solvers must agree; the test suite treats that
//!   agreement as a checked invariant.
//!
//! Both run a depth-first branch and bound over exact integer objectives
//! (weights are scaled to a common denominator) and keep the first optimum
//! found in their deterministic visiting order.

use std::rc::Rc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::bounds::{self, WeightVector};
use crate::combinatorics::{binom_u64, ksets, KSet};
use crate::error::{Error, Result};
use crate::family::{
    construction_chain, enumerate_shifted_families, reduce_to_weighted, Chain, ConstructionKind,
    Family, DEFAULT_DOWNSET_LIMIT,
};
use crate::matching::{self, full_rainbow_masks};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Oracle,
    Shifted,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Oracle => "oracle",
            SolverKind::Shifted => "shifted",
        }
    }
}

/// Default cap on `(s + 2)^C(n, k)` level maps for the oracle.
pub const DEFAULT_ORACLE_CANDIDATES: u128 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchLimits {
    /// Stop after this many search nodes; the record is then incomplete.
    pub max_nodes: Option<u64>,
    /// Cap on enumerated shifted families.
    pub max_downsets: u64,
    /// Cap on `(s + 2)^C(n, k)`, the size of the oracle's raw search space.
    pub max_oracle_candidates: u128,
    /// Seed the incumbent with the best extremal construction.
    pub warm_start: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: None,
            max_downsets: DEFAULT_DOWNSET_LIMIT,
            max_oracle_candidates: DEFAULT_ORACLE_CANDIDATES,
            warm_start: true,
        }
    }
}

/// Exact optimum of one instance with its witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub weights: WeightVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(with = "rational::serde_rational")]
    pub optimum: Rational,
    pub witness: Chain,
    pub solver: SolverKind,
    pub nodes_explored: u64,
    /// False when a node limit stopped the search; `optimum` is then only a
    /// lower bound.
    pub complete: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Weights scaled by the lcm of their denominators.
struct ScaledWeights {
    scale: BigInt,
    // suffix[l] = w_l + ... + w_s; suffix[s + 1] = 0
    suffix: Vec<u128>,
}

impl ScaledWeights {
    fn new(weights: &WeightVector) -> Result<Self> {
        let scale = weights.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
        let mut w = Vec::with_capacity(weights.len());
        for p in weights.iter() {
            let v = (p * Rational::from_integer(scale.clone())).to_integer();
            w.push(v.to_u128().ok_or_else(|| Error::Overflow(format!("scaled weight {v}")))?);
        }
        let mut suffix = vec![0u128; w.len() + 1];
        for i in (0..w.len()).rev() {
            suffix[i] = suffix[i + 1]
                .checked_add(w[i])
                .ok_or_else(|| Error::Overflow("weight sum".into()))?;
        }
        Ok(ScaledWeights { scale, suffix })
    }

    fn weight(&self, i: usize) -> u128 {
        self.suffix[i] - self.suffix[i + 1]
    }

    fn unscale(&self, v: u128) -> Rational {
        Rational::new(BigInt::from(v), self.scale.clone())
    }

    fn scale_value(&self, r: &Rational) -> u128 {
        (r * Rational::from_integer(self.scale.clone()))
            .to_integer()
            .to_u128()
            .expect("construction value fits")
    }
}

fn validate(n: usize, k: usize, weights: &WeightVector) -> Result<usize> {
    if k == 0 || k > n || n > crate::combinatorics::MAX_N {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n <= 64, got n={n}, k={k}")));
    }
    Ok(weights.s())
}

/// Best construction chain, or the all-empty chain when `warm_start` is off.
fn initial_incumbent(
    n: usize,
    k: usize,
    weights: &WeightVector,
    warm_start: bool,
) -> Result<(Chain, Rational)> {
    let s = weights.s();
    let empty = Chain::new(vec![Family::empty(n, k)?; s + 1], Some(weights.clone()))?;
    let mut best = (empty, Rational::from_integer(0.into()));
    if !warm_start {
        return Ok(best);
    }
    for kind in ConstructionKind::ALL {
        let Ok(chain) = construction_chain(kind, n, k, s, weights) else { continue };
        let v = chain.value();
        if v > best.1 && matching::is_overlapping(&chain) {
            best = (chain, v);
        }
    }
    Ok(best)
}

fn chain_from_levels(
    n: usize,
    k: usize,
    s: usize,
    sets: &[KSet],
    levels: &[u8],
    weights: &WeightVector,
) -> Result<Chain> {
    let families = (0..=s)
        .map(|i| {
            Family::from_sets(
                n,
                k,
                sets.iter().zip(levels).filter(|(_, &l)| (l as usize) <= i).map(|(&x, _)| x),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Chain::new(families, Some(weights.clone()))
}

struct Oracle<'a> {
    n: usize,
    k: usize,
    s: usize,
    sets: Vec<u64>,
    weights: &'a ScaledWeights,
    levels: Vec<u8>,
    by_level: Vec<Vec<u64>>,
    assigned: usize,
    best: u128,
    best_levels: Option<Vec<u8>>,
    nodes: u64,
    max_nodes: Option<u64>,
    aborted: bool,
}

impl Oracle<'_> {
    fn never(&self) -> u8 {
        (self.s + 1) as u8
    }

    /// Whether adding `x` with entry level `level` keeps the chain
    /// overlapping. `x` sits in every `B_i`, `i >= level`; a full rainbow
    /// matching through `x` may as well use index `level` for it, leaving
    /// the other `s` indices to be filled by disjoint assigned sets whose
    /// sorted entry levels fit under the sorted free indices.
    fn can_enter(&self, x: u64, level: usize) -> bool {
        if self.assigned < self.s {
            return true;
        }
        let slots: Vec<usize> = (0..=self.s).filter(|&i| i != level).collect();
        !self.fill(&slots, 0, x, 0, 0)
    }

    fn fill(&self, slots: &[usize], j: usize, used: u64, lvl: usize, idx: usize) -> bool {
        if j == slots.len() {
            return true;
        }
        if (self.n - used.count_ones() as usize) / self.k < slots.len() - j {
            return false;
        }
        for l in lvl..=slots[j] {
            let start = if l == lvl { idx } else { 0 };
            for (t, &m) in self.by_level[l].iter().enumerate().skip(start) {
                if m & used == 0 && self.fill(slots, j + 1, used | m, l, t + 1) {
                    return true;
                }
            }
        }
        false
    }

    fn dfs(&mut self, pos: usize, value: u128, parent_lmin: &[u8]) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.max_nodes.is_some_and(|cap| self.nodes > cap) {
            self.aborted = true;
            return;
        }
        if pos == self.sets.len() {
            if value > self.best {
                self.best = value;
                self.best_levels = Some(self.levels.clone());
            }
            return;
        }
        // lowest feasible entry level for every unassigned set; only grows
        // with depth
        let mut lmin = parent_lmin.to_vec();
        let mut bound = value;
        for (slot, &x) in lmin[pos..].iter_mut().zip(&self.sets[pos..]) {
            let mut l = *slot as usize;
            while l <= self.s && !self.can_enter(x, l) {
                l += 1;
            }
            *slot = l as u8;
            bound += self.weights.suffix[l];
        }
        if bound <= self.best {
            return;
        }
        let x = self.sets[pos];
        for l in lmin[pos] as usize..=self.s {
            self.levels[pos] = l as u8;
            self.by_level[l].push(x);
            self.assigned += 1;
            self.dfs(pos + 1, value + self.weights.suffix[l], &lmin);
            self.assigned -= 1;
            self.by_level[l].pop();
        }
        self.levels[pos] = self.never();
        self.dfs(pos + 1, value, &lmin);
    }
}

/// Exact `f_p(n, k, s)` by exhaustive search over all nested chains.
pub fn oracle_f(n: usize, k: usize, weights: &WeightVector, limits: &SearchLimits) -> Result<ExtremalRecord> {
    let start = Instant::now();
    let s = validate(n, k, weights)?;
    let count = binom_u64(n as u64, k as u64)?;
    let candidates = u32::try_from(count)
        .ok()
        .and_then(|c| ((s + 2) as u128).checked_pow(c))
        .filter(|&c| c <= limits.max_oracle_candidates);
    if candidates.is_none() {
        return Err(Error::InstanceTooLarge {
            solver: "oracle",
            detail: format!(
                "{}^{count} level maps exceed the limit {}",
                s + 2,
                limits.max_oracle_candidates
            ),
        });
    }
    let scaled = ScaledWeights::new(weights)?;
    let (warm, warm_value) = initial_incumbent(n, k, weights, limits.warm_start)?;
    let universe = ksets(n, k)?;
    let mut oracle = Oracle {
        n,
        k,
        s,
        sets: universe.iter().map(|x| x.mask()).collect(),
        weights: &scaled,
        levels: vec![(s + 1) as u8; universe.len()],
        by_level: vec![Vec::new(); s + 1],
        assigned: 0,
        best: scaled.scale_value(&warm_value),
        best_levels: None,
        nodes: 0,
        max_nodes: limits.max_nodes,
        aborted: false,
    };
    oracle.dfs(0, 0, &vec![0u8; universe.len()]);
    let (witness, optimum) = match &oracle.best_levels {
        Some(levels) => (
            chain_from_levels(n, k, s, &universe, levels, weights)?,
            scaled.unscale(oracle.best),
        ),
        None => (warm, warm_value),
    };
    Ok(ExtremalRecord {
        n,
        k,
        s,
        weights: weights.clone(),
        m: None,
        optimum,
        witness,
        solver: SolverKind::Oracle,
        nodes_explored: oracle.nodes,
        complete: !oracle.aborted,
        wall_time: start.elapsed(),
    })
}

struct Downset {
    family: Family,
    size: u64,
    masks: Vec<u64>,
}

fn prepare_downsets(downsets: &[Family]) -> Vec<Downset> {
    let mut out: Vec<Downset> = downsets
        .iter()
        .map(|f| Downset {
            family: f.clone(),
            size: f.len(),
            masks: f.members().into_iter().map(KSet::mask).collect(),
        })
        .collect();
    // stable: ties keep enumeration order
    out.sort_by_key(|d| std::cmp::Reverse(d.size));
    out
}

struct ShiftedSearch<'a> {
    n: usize,
    k: usize,
    downsets: &'a [Downset],
    // children[i]: downsets contained in downset i, largest first
    children: Vec<Option<Rc<[u32]>>>,
    weights: &'a ScaledWeights,
    // no family with s + 1 pairwise disjoint members is larger
    base_cap: u64,
    chosen: Vec<usize>,
    best: u128,
    best_chain: Option<(Vec<usize>, Vec<u64>)>,
    nodes: u64,
    max_nodes: Option<u64>,
    aborted: bool,
}

impl ShiftedSearch<'_> {
    fn children(&mut self, parent: usize) -> Rc<[u32]> {
        if let Some(c) = &self.children[parent] {
            return c.clone();
        }
        let pd = &self.downsets[parent];
        let first = self.downsets.partition_point(|d| d.size > pd.size);
        let list: Rc<[u32]> = (first..self.downsets.len())
            .filter(|&j| self.downsets[j].family.is_subset_of(&pd.family))
            .map(|j| j as u32)
            .collect();
        self.children[parent] = Some(list.clone());
        list
    }

    /// Largest possible `sum_{j < level} w_j |B_j|` below a family of size `size`.
    fn completion_bound(&self, level: usize, size: u64) -> u128 {
        if level == 0 {
            return 0;
        }
        let mid = self.weights.suffix[1] - self.weights.suffix[level];
        mid * size as u128 + self.weights.weight(0) * size.min(self.base_cap) as u128
    }

    /// Chooses `B_level` inside `parent`; `chosen` holds `B_s, ..., B_{level+1}`.
    /// Level 1 is the last branching level: `B_0` is then computed directly.
    fn dfs(&mut self, level: usize, parent: Option<usize>, value: u128) {
        let w = self.weights.weight(level);
        let candidates: Rc<[u32]> = match parent {
            Some(p) => self.children(p),
            None => (0..self.downsets.len() as u32).collect(),
        };
        for &idx in candidates.iter() {
            let idx = idx as usize;
            if self.aborted {
                return;
            }
            let size = self.downsets[idx].size;
            let v = value + w * size as u128;
            if v + self.completion_bound(level, size) <= self.best {
                // candidates come in nonincreasing size
                return;
            }
            self.nodes += 1;
            if self.max_nodes.is_some_and(|cap| self.nodes > cap) {
                self.aborted = true;
                return;
            }
            self.chosen.push(idx);
            if level == 1 {
                let base = self.best_base();
                let total = v + self.weights.weight(0) * base.len() as u128;
                if total > self.best {
                    self.best = total;
                    self.best_chain = Some((self.chosen.clone(), base));
                }
            } else {
                self.dfs(level - 1, Some(idx), v);
            }
            self.chosen.pop();
        }
    }

    /// Largest `B_0` completing the chosen `B_s, ..., B_1`.
    ///
    /// A full rainbow matching takes some `x` from `B_0` and a rainbow
    /// matching of `B_1, ..., B_s` avoiding `x`. Whether `x` is admissible
    /// therefore does not depend on the rest of `B_0`, and the best `B_0` is
    /// the set of all admissible members of `B_1`.
    fn best_base(&self) -> Vec<u64> {
        let mut upper: Vec<&[u64]> = self.chosen.iter().map(|&i| self.downsets[i].masks.as_slice()).collect();
        // smallest family first
        upper.reverse();
        let b1 = upper[0];
        let mut base: Vec<u64> = Vec::new();
        for &x in b1 {
            let avoiding: Vec<Vec<u64>> =
                upper.iter().map(|f| f.iter().copied().filter(|&m| m & x == 0).collect()).collect();
            if !full_rainbow_masks(&avoiding, self.n - self.k, self.k) {
                base.push(x);
            }
        }
        base
    }
}

/// Size of the largest family (in nonincreasing size order) without `s + 1`
/// pairwise disjoint members.
fn matching_cap(downsets: &[Downset], n: usize, k: usize, s: usize) -> u64 {
    downsets
        .iter()
        .find(|d| !full_rainbow_masks(&vec![d.masks.clone(); s + 1], n, k))
        .map_or(0, |d| d.size)
}

/// Exact `f_p(n, k, s)` over chains of shifted families, enumerating them
/// internally.
pub fn exact_f_shifted(
    n: usize,
    k: usize,
    weights: &WeightVector,
    limits: &SearchLimits,
) -> Result<ExtremalRecord> {
    validate(n, k, weights)?;
    let downsets = enumerate_shifted_families(n, k, limits.max_downsets)?;
    exact_f_shifted_with(&downsets, n, k, weights, limits)
}

/// As [`exact_f_shifted`] with a precomputed list of all shifted families
/// over `(n, k)`.
pub fn exact_f_shifted_with(
    downsets: &[Family],
    n: usize,
    k: usize,
    weights: &WeightVector,
    limits: &SearchLimits,
) -> Result<ExtremalRecord> {
    let start = Instant::now();
    let s = validate(n, k, weights)?;
    if let Some(f) = downsets.iter().find(|f| f.params() != (n, k)) {
        return Err(Error::ParamMismatch(format!("n={n}, k={k}"), format!("n={}, k={}", f.n(), f.k())));
    }
    let scaled = ScaledWeights::new(weights)?;
    let (warm, warm_value) = initial_incumbent(n, k, weights, limits.warm_start)?;
    let prepared = prepare_downsets(downsets);
    let mut search = ShiftedSearch {
        n,
        k,
        downsets: &prepared,
        children: vec![None; prepared.len()],
        weights: &scaled,
        base_cap: matching_cap(&prepared, n, k, s),
        chosen: Vec::with_capacity(s + 1),
        best: scaled.scale_value(&warm_value),
        best_chain: None,
        nodes: 0,
        max_nodes: limits.max_nodes,
        aborted: false,
    };
    if s > 0 {
        search.dfs(s, None, 0);
    }
    let (witness, optimum) = match &search.best_chain {
        Some((idx, base)) => {
            let mut families = vec![Family::from_sets(n, k, base.iter().map(|&m| KSet::from_mask(m)))?];
            families.extend(idx.iter().rev().map(|&i| prepared[i].family.clone()));
            (Chain::new(families, Some(weights.clone()))?, scaled.unscale(search.best))
        }
        None => (warm, warm_value),
    };
    Ok(ExtremalRecord {
        n,
        k,
        s,
        weights: weights.clone(),
        m: None,
        optimum,
        witness,
        solver: SolverKind::Shifted,
        nodes_explored: search.nodes,
        complete: !search.aborted,
        wall_time: start.elapsed(),
    })
}

pub fn solve(
    solver: SolverKind,
    n: usize,
    k: usize,
    weights: &WeightVector,
    limits: &SearchLimits,
) -> Result<ExtremalRecord> {
    match solver {
        SolverKind::Oracle => oracle_f(n, k, weights, limits),
        SolverKind::Shifted => exact_f_shifted(n, k, weights, limits),
    }
}

/// `f(n, k, m, s)`: the unweighted maximum of `|A_1| + ... + |A_m|`.
///
/// For `m <= s` the constraint is vacuous and the value is `m C(n, k)`
/// with no search (`None` record). Otherwise the nested weighted form
/// with weights `(m - s, 1, ..., 1)` is solved.
pub fn f_unweighted(
    solver: SolverKind,
    n: usize,
    k: usize,
    m: usize,
    s: usize,
    limits: &SearchLimits,
) -> Result<(Rational, Option<ExtremalRecord>)> {
    if m <= s {
        let c = binom_u64(n as u64, k as u64)?;
        return Ok((rational::int(m as u64 * c), None));
    }
    let weights = reduce_to_weighted(m, s)?;
    let mut rec = solve(solver, n, k, &weights, limits)?;
    rec.m = Some(m);
    Ok((rec.optimum.clone(), Some(rec)))
}

/// Result of maximizing `min_i |B_i|` over overlapping (not necessarily
/// nested) sequences of `s + 1` families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinSizeRecord {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub optimum: u64,
    pub witness: Vec<Family>,
    pub nodes_explored: u64,
    pub complete: bool,
}

/// Maximum of `min_i |B_i|` over overlapping sequences `B_0, ..., B_s`.
///
/// Simultaneous shifting preserves all sizes and does not increase the
/// rainbow matching number, so the search runs over multisets of shifted
/// families, largest first, abandoning a branch once its smallest member
/// cannot beat the incumbent.
pub fn max_min_family_size(
    n: usize,
    k: usize,
    s: usize,
    limits: &SearchLimits,
) -> Result<MinSizeRecord> {
    validate(n, k, &WeightVector::uniform(s))?;
    let downsets = enumerate_shifted_families(n, k, limits.max_downsets)?;
    let prepared = prepare_downsets(&downsets);

    let mut best = 0u64;
    let mut witness = vec![Family::empty(n, k)?; s + 1];
    if limits.warm_start {
        let w = WeightVector::uniform(s);
        for kind in [ConstructionKind::Cover, ConstructionKind::Clique] {
            let Ok(chain) = construction_chain(kind, n, k, s, &w) else { continue };
            let size = chain.families()[0].len();
            if size > best && matching::is_overlapping(&chain) {
                best = size;
                witness = chain.families().to_vec();
            }
        }
    }

    struct Ctx<'a> {
        n: usize,
        k: usize,
        s: usize,
        d: &'a [Downset],
        chosen: Vec<usize>,
        best: u64,
        best_idx: Option<Vec<usize>>,
        nodes: u64,
        max_nodes: Option<u64>,
        aborted: bool,
    }

    fn go(c: &mut Ctx<'_>, from: usize) {
        for idx in from..c.d.len() {
            if c.aborted || c.d[idx].size <= c.best {
                return;
            }
            c.nodes += 1;
            if c.max_nodes.is_some_and(|cap| c.nodes > cap) {
                c.aborted = true;
                return;
            }
            c.chosen.push(idx);
            if c.chosen.len() == c.s + 1 {
                let mut fams: Vec<Vec<u64>> =
                    c.chosen.iter().map(|&i| c.d[i].masks.clone()).collect();
                fams.sort_by_key(Vec::len);
                if !full_rainbow_masks(&fams, c.n, c.k) {
                    c.best = c.d[idx].size;
                    c.best_idx = Some(c.chosen.clone());
                }
            } else {
                go(c, idx);
            }
            c.chosen.pop();
        }
    }

    let mut ctx = Ctx {
        n,
        k,
        s,
        d: &prepared,
        chosen: Vec::new(),
        best,
        best_idx: None,
        nodes: 0,
        max_nodes: limits.max_nodes,
        aborted: false,
    };
    go(&mut ctx, 0);
    if let Some(idx) = &ctx.best_idx {
        witness = idx.iter().map(|&i| prepared[i].family.clone()).collect();
        best = ctx.best;
    }
    Ok(MinSizeRecord {
        n,
        k,
        s,
        optimum: best,
        witness,
        nodes_explored: ctx.nodes,
        complete: !ctx.aborted,
    })
}

/// How a solver optimum compares with a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Equal,
    Bounded,
    Violation,
    Incomplete,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Equal => "equal",
            Relation::Bounded => "bounded",
            Relation::Violation => "VIOLATION",
            Relation::Incomplete => "incomplete",
        }
    }
}

/// Statements that can be checked against the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// `f(n, k, m, 1) = max{C(n, k), m C(n-1, k-1)}`.
    Hilton,
    /// Upper bound for `(p, 1, ..., 1)`.
    Thm1,
    /// Exact value for `(p, 1, ..., 1)`, `n >= 4k^2 s`.
    Thm2,
    /// Exact value at `n = (s + 1)k`.
    Thm3,
    /// Exact value for `n >= max{(s + 1)k, ceil(d) k}`.
    Thm4,
    /// Conjectured exact value for `(p, 1, ..., 1)`.
    Conj1,
}

/// One instance: `m` is used by [`Theorem::Hilton`], the weights by the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPoint {
    pub n: usize,
    pub k: usize,
    pub weights: WeightVector,
    pub m: Option<usize>,
}

impl GridPoint {
    pub fn weighted(n: usize, k: usize, weights: WeightVector) -> Self {
        GridPoint { n, k, weights, m: None }
    }

    pub fn hilton(n: usize, k: usize, m: usize) -> Self {
        GridPoint { n, k, weights: WeightVector::uniform(1), m: Some(m) }
    }

    pub fn key(&self) -> String {
        match self.m {
            Some(m) => format!("n={},k={},m={m}", self.n, self.k),
            None => format!("n={},k={},p={}", self.n, self.k, self.weights.label()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub key: String,
    #[serde(with = "rational::serde_rational")]
    pub expected: Rational,
    #[serde(with = "rational::serde_rational")]
    pub observed: Rational,
    pub relation: Relation,
    /// Witness attached to violations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Chain>,
}

fn leading_p(point: &GridPoint) -> Result<u64> {
    point
        .weights
        .leading_weight()
        .filter(|p| p.is_integer())
        .and_then(|p| p.to_integer().to_u64())
        .ok_or_else(|| {
            Error::InvalidWeights(format!("expected (p, 1, ..., 1), got {}", point.weights.label()))
        })
}

fn expected_value(theorem: Theorem, point: &GridPoint) -> Result<Rational> {
    let (n, k) = (point.n as u64, point.k as u64);
    let s = point.weights.s() as u64;
    Ok(match theorem {
        Theorem::Hilton => {
            let m = point.m.ok_or_else(|| Error::InvalidParameter("Hilton needs m".into()))?;
            bounds::hilton_bound(n, k, m as u64)?.value
        }
        Theorem::Thm1 => bounds::thm1_bound(n, k, leading_p(point)?, s)?.value,
        Theorem::Thm2 => bounds::thm2_value(n, k, leading_p(point)?, s)?.value,
        Theorem::Thm3 => bounds::thm3_value(k, &point.weights)?.value,
        Theorem::Thm4 => bounds::thm4_value(n, k, &point.weights)?.value,
        Theorem::Conj1 => bounds::conj1_value(n, k, leading_p(point)?, s)?.value,
    })
}

/// Compares solver optima with the statement over `points`.
pub fn verify_theorem(
    theorem: Theorem,
    points: &[GridPoint],
    solver: SolverKind,
    limits: &SearchLimits,
) -> Result<Vec<VerifyRow>> {
    points
        .iter()
        .map(|point| {
            let expected = expected_value(theorem, point)?;
            let (observed, record) = match (theorem, point.m) {
                (Theorem::Hilton, Some(m)) => f_unweighted(solver, point.n, point.k, m, 1, limits)?,
                _ => {
                    let r = solve(solver, point.n, point.k, &point.weights, limits)?;
                    (r.optimum.clone(), Some(r))
                }
            };
            let complete = record.as_ref().is_none_or(|r| r.complete);
            let relation = if !complete {
                Relation::Incomplete
            } else if theorem == Theorem::Thm1 {
                if observed <= expected {
                    Relation::Bounded
                } else {
                    Relation::Violation
                }
            } else if observed == expected {
                Relation::Equal
            } else {
                Relation::Violation
            };
            let witness = (relation == Relation::Violation)
                .then(|| record.map(|r| r.witness))
                .flatten();
            Ok(VerifyRow { key: point.key(), expected, observed, relation, witness })
        })
        .collect()
}

/// Counterexample hunts. `hunt_conj1` expects equality with the three-term
/// maximum at each `(n, k, s, p)` point; `hunt_conj2` expects
/// `max min_i |B_i|` not to exceed its bound.
pub fn hunt_conj1(points: &[GridPoint], limits: &SearchLimits) -> Result<Vec<VerifyRow>> {
    verify_theorem(Theorem::Conj1, points, SolverKind::Shifted, limits)
}

pub fn hunt_conj2(points: &[(usize, usize, usize)], limits: &SearchLimits) -> Result<Vec<VerifyRow>> {
    points
        .iter()
        .map(|&(n, k, s)| {
            let expected = bounds::conj2_bound(n as u64, k as u64, s as u64)?.value;
            let rec = max_min_family_size(n, k, s, limits)?;
            let observed = rational::int(rec.optimum);
            let relation = if !rec.complete {
                Relation::Incomplete
            } else if observed > expected {
                Relation::Violation
            } else if observed == expected {
                Relation::Equal
            } else {
                Relation::Bounded
            };
            // the witness is a sequence, not necessarily nested; report it
            // as a chain only when it happens to be one
            let witness = (relation == Relation::Violation)
                .then(|| Chain::new(rec.witness.clone(), None).ok())
                .flatten();
            Ok(VerifyRow { key: format!("n={n},k={k},s={s}"), expected, observed, relation, witness })
        })
        .collect()
}
