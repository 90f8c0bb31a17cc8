//! Cyclic orders, arcs and the randomized harnesses built on them.
//!
//! Every harness is seeded. Trials run in shards of [`SHARD_SIZE`]; shard
//! `i` draws from a ChaCha8 stream `i` of the master seed, so a report
//! depends only on `(seed, trials)` and never on how shards are scheduled.

use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, WeightVector};
use crate::combinatorics::{binom_u64, KSet};
use crate::error::{Error, Result};
use crate::family::{Chain, Family};
use crate::matching::{full_rainbow_masks, max_bipartite_matching, min_vertex_cover, BipartiteGraph};
use crate::rational::{self, Rational};

pub const SHARD_SIZE: u64 = 1024;

/// Level marking a set outside every family of a chain.
const NEVER: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicOrder {
    sigma: Vec<u8>,
}

impl CyclicOrder {
    /// `sigma` lists `x_0, ..., x_{n-1}`, a permutation of `1..=n`.
    pub fn new(sigma: Vec<u8>) -> Result<Self> {
        let n = sigma.len();
        if n == 0 || n > crate::combinatorics::MAX_N {
            return Err(Error::InvalidParameter(format!("cyclic order of length {n}")));
        }
        let mut seen = 0u64;
        for &x in &sigma {
            let x = x as usize;
            if x == 0 || x > n || seen >> (x - 1) & 1 == 1 {
                return Err(Error::InvalidParameter(format!("{sigma:?} is not a permutation of [{n}]")));
            }
            seen |= 1 << (x - 1);
        }
        Ok(CyclicOrder { sigma })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n as u8).collect())
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let mut sigma: Vec<u8> = (1..=n as u8).collect();
        sigma.shuffle(rng);
        Self::new(sigma)
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.sigma
    }
}

/// The `n` arcs `A_k(x_i)` of a cyclic order, indexed by head position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcFamily {
    order: CyclicOrder,
    k: usize,
    arcs: Vec<KSet>,
}

impl ArcFamily {
    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> &CyclicOrder {
        &self.order
    }

    pub fn arcs(&self) -> &[KSet] {
        &self.arcs
    }

    pub fn arc(&self, head: usize) -> KSet {
        self.arcs[head % self.n()]
    }

    /// `t = floor(n / k)`.
    pub fn t(&self) -> usize {
        self.n() / self.k
    }

    /// `r = n - t k`.
    pub fn r(&self) -> usize {
        self.n() - self.t() * self.k
    }

    /// Head positions of `block_matching(head)`.
    pub fn block_positions(&self, head: usize) -> Vec<usize> {
        (0..self.t()).map(|j| (head + j * self.k) % self.n()).collect()
    }

    pub fn to_family(&self) -> Family {
        Family::from_sets(self.n(), self.k, self.arcs.iter().copied()).expect("arcs are k-sets")
    }
}

pub fn arcs(sigma: &CyclicOrder, k: usize) -> Result<ArcFamily> {
    let n = sigma.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("arcs need 1 <= k < n, got n={n}, k={k}")));
    }
    let s = sigma.as_slice();
    let arcs = (0..n)
        .map(|i| {
            let mask = (0..k).fold(0u64, |m, j| m | 1 << (s[(i + j) % n] - 1));
            KSet::from_mask(mask)
        })
        .collect();
    Ok(ArcFamily { order: sigma.clone(), k, arcs })
}

/// The `t` disjoint arcs starting at `head` and stepping by `k`.
pub fn block_matching(arcs: &ArcFamily, head: usize) -> Vec<KSet> {
    arcs.block_positions(head).into_iter().map(|i| arcs.arcs[i]).collect()
}

/// Nested chain inside a pool of k-sets, stored as entry levels:
/// `levels[i] = l` puts set `i` in `B_l, ..., B_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct LevelChain {
    s: usize,
    levels: Vec<u8>,
}

impl LevelChain {
    fn family_masks(&self, pool: &[KSet]) -> Vec<Vec<u64>> {
        (0..=self.s)
            .map(|i| {
                pool.iter()
                    .zip(&self.levels)
                    .filter(|(_, &l)| l != NEVER && (l as usize) <= i)
                    .map(|(x, _)| x.mask())
                    .collect()
            })
            .collect()
    }

    fn overlapping(&self, pool: &[KSet], n: usize, k: usize) -> bool {
        !full_rainbow_masks(&self.family_masks(pool), n, k)
    }

    fn to_chain(&self, pool: &[KSet], n: usize, k: usize) -> Result<Chain> {
        let families = self
            .family_masks(pool)
            .into_iter()
            .map(|masks| Family::from_sets(n, k, masks.into_iter().map(KSet::from_mask)))
            .collect::<Result<Vec<_>>>()?;
        Chain::new(families, None)
    }
}

/// Random overlapping nested chain on `pool`: sets are visited in random
/// order and each gets a random level at or above the lowest one that
/// keeps the chain overlapping, with a bias toward that lowest level.
fn random_overlapping_chain<R: Rng + ?Sized>(
    pool: &[KSet],
    n: usize,
    k: usize,
    s: usize,
    rng: &mut R,
) -> LevelChain {
    let mut chain = LevelChain { s, levels: vec![NEVER; pool.len()] };
    let mut order: Vec<usize> = (0..pool.len()).collect();
    order.shuffle(rng);
    for idx in order {
        let mut lowest = None;
        for l in 0..=s {
            chain.levels[idx] = l as u8;
            if chain.overlapping(pool, n, k) {
                lowest = Some(l);
                break;
            }
        }
        chain.levels[idx] = match lowest {
            None => NEVER,
            Some(l) if rng.gen_bool(0.5) => l as u8,
            Some(l) => {
                let pick = rng.gen_range(l..=s + 1);
                if pick > s { NEVER } else { pick as u8 }
            }
        };
    }
    chain
}

fn chain_levels(chain: &Chain, pool: &[KSet]) -> Result<LevelChain> {
    let s = chain.s();
    let mut levels = vec![NEVER; pool.len()];
    for (i, x) in pool.iter().enumerate() {
        if let Some(l) = chain.families().iter().position(|f| f.contains(*x)) {
            levels[i] = l as u8;
        }
    }
    let total: u64 = chain.families().last().map_or(0, Family::len);
    let placed = levels.iter().filter(|&&l| l != NEVER).count() as u64;
    if placed != total {
        return Err(Error::InvalidParameter("chain is not contained in the given sets".into()));
    }
    Ok(LevelChain { s, levels })
}

fn shard_rng(seed: u64, shard: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    rng
}

/// Runs `trials` seeded trials in shards.
fn run_trials(seed: u64, trials: u64, mut trial: impl FnMut(u64, &mut ChaCha8Rng)) {
    let shards = trials.div_ceil(SHARD_SIZE);
    for shard in 0..shards {
        let mut rng = shard_rng(seed, shard);
        let end = ((shard + 1) * SHARD_SIZE).min(trials);
        for t in shard * SHARD_SIZE..end {
            trial(t, &mut rng);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: u64,
    pub kind: String,
    pub detail: String,
}

/// Outcome of one randomized harness run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub harness: String,
    pub params: String,
    pub seed: u64,
    pub trials: u64,
    pub violations: Vec<Violation>,
    /// Sample mean of the harness statistic.
    pub mean: f64,
    /// Closed-form expectation of the statistic, when there is one.
    #[serde(with = "opt_rational")]
    pub exact_expectation: Option<Rational>,
    #[serde(with = "rational::serde_rational")]
    pub max_observed: Rational,
    #[serde(with = "rational::serde_rational")]
    pub bound: Rational,
    /// Whether every Monte Carlo estimate fell within three standard errors.
    pub within_tolerance: bool,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.within_tolerance
    }
}

mod opt_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "rational::serde_rational")] Rational);

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        r.as_ref().map(|v| Wrap(v.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

/// Running mean and variance (Welford).
#[derive(Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    fn std_error(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        (self.m2 / (self.count - 1) as f64 / self.count as f64).sqrt()
    }

    /// `|mean - target| <= 3 sigma`, with `sigma` the standard error (or the
    /// supplied exact one).
    fn within_3_sigma(&self, target: f64, sigma: Option<f64>) -> bool {
        let sigma = sigma.unwrap_or_else(|| self.std_error());
        (self.mean - target).abs() <= 3.0 * sigma + 1e-9 * target.abs().max(1.0)
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact quantities of the arc-chain lemma for one chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcCheck {
    /// `e(X, Y) = p|B_0| + |B_1| + ... + |B_s|`.
    pub lhs: u64,
    /// `max{ns, (p + s)ks}`.
    pub bound: u64,
    /// `e(M_i, Y)` for every head `i`.
    pub head_edges: Vec<u64>,
    /// `sum_i e(M_i, Y) == t e(X, Y)`.
    pub identity_holds: bool,
    /// Largest `nu(G[M_i, Y])` over heads.
    pub max_head_matching: usize,
    /// König covers had the size of the matching and covered every edge.
    pub covers_valid: bool,
}

/// Degree-sorted construction used when `p + s >= t + 1`, replayed on a
/// given chain. Ties in degree are broken by head position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2Replay {
    /// `(head, degree)` in nondecreasing degree order.
    pub sorted_degrees: Vec<(usize, u64)>,
    /// Degree of `J_r`; absent when `r = 0`.
    pub deg_jr: Option<u64>,
    /// Heads `y_1 < ... < y_{kt}` of the arcs in `U`.
    pub heads: Vec<usize>,
    /// Head positions of `M_1, ..., M_k`.
    pub matchings: Vec<Vec<usize>>,
    /// `e(M_j, Y)`.
    pub edge_counts: Vec<u64>,
    /// Every `M_j` consists of pairwise disjoint arcs.
    pub disjoint: bool,
    /// `sum_j e(M_j, Y) + sum_{r removed arcs} deg == e(X, Y)`.
    pub partition_holds: bool,
}

/// Nested overlapping chain inside the arcs of a cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcChain {
    arcs: ArcFamily,
    chain: LevelChain,
}

impl ArcChain {
    /// Restricts `chain` to `arcs`; fails unless every member is an arc and
    /// the chain is overlapping.
    pub fn new(arcs: ArcFamily, chain: &Chain) -> Result<Self> {
        if chain.n() != arcs.n() || chain.k() != arcs.k() {
            return Err(Error::ParamMismatch(
                format!("n={}, k={}", arcs.n(), arcs.k()),
                format!("n={}, k={}", chain.n(), chain.k()),
            ));
        }
        let levels = chain_levels(chain, &arcs.arcs)?;
        if !levels.overlapping(&arcs.arcs, arcs.n(), arcs.k()) {
            return Err(Error::InvalidParameter("arc chain is not overlapping".into()));
        }
        Ok(ArcChain { arcs, chain: levels })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, k: usize, s: usize, rng: &mut R) -> Result<Self> {
        let arcs = arcs(&CyclicOrder::random(n, rng)?, k)?;
        let chain = random_overlapping_chain(&arcs.arcs, n, k, s, rng);
        Ok(ArcChain { arcs, chain })
    }

    pub fn arcs(&self) -> &ArcFamily {
        &self.arcs
    }

    pub fn s(&self) -> usize {
        self.chain.s
    }

    pub fn to_chain(&self) -> Chain {
        self.chain.to_chain(&self.arcs.arcs, self.arcs.n(), self.arcs.k()).expect("valid chain")
    }

    /// Number of families of `Y` containing the arc at `head`: `p + s` for
    /// `B_0`, `s - l + 1` for an arc entering at `l >= 1`.
    pub fn degree(&self, head: usize, p: u64) -> u64 {
        match self.chain.levels[head] {
            NEVER => 0,
            0 => p + self.s() as u64,
            l => (self.s() - l as usize + 1) as u64,
        }
    }

    /// `G[M, Y]` for the arcs at `positions`; right vertices `0..p` are the
    /// copies of `B_0`, then `B_1, ..., B_s`.
    fn graph(&self, positions: &[usize], p: u64) -> BipartiteGraph {
        let p = p as usize;
        let mut g = BipartiteGraph::new(positions.len(), p + self.s());
        for (a, &head) in positions.iter().enumerate() {
            let l = self.chain.levels[head];
            if l == NEVER {
                continue;
            }
            let l = l as usize;
            if l == 0 {
                (0..p).for_each(|r| g.add_edge(a, r).expect("in range"));
            }
            for i in l.max(1)..=self.s() {
                g.add_edge(a, p + i - 1).expect("in range");
            }
        }
        g
    }

    pub fn check(&self, p: u64) -> ArcCheck {
        let (n, k, s) = (self.arcs.n() as u64, self.arcs.k() as u64, self.s() as u64);
        let t = self.arcs.t() as u64;
        let lhs: u64 = (0..self.arcs.n()).map(|h| self.degree(h, p)).sum();
        let mut head_edges = Vec::with_capacity(self.arcs.n());
        let mut max_head_matching = 0;
        let mut covers_valid = true;
        for head in 0..self.arcs.n() {
            let positions = self.arcs.block_positions(head);
            head_edges.push(positions.iter().map(|&h| self.degree(h, p)).sum());
            let g = self.graph(&positions, p);
            let m = max_bipartite_matching(&g).len();
            let cover = min_vertex_cover(&g);
            covers_valid &= cover.len() == m && g.covers(&cover);
            max_head_matching = max_head_matching.max(m);
        }
        let identity_holds = head_edges.iter().sum::<u64>() == t * lhs;
        ArcCheck {
            lhs,
            bound: (n * s).max((p + s) * k * s),
            head_edges,
            identity_holds,
            max_head_matching,
            covers_valid,
        }
    }

    pub fn case2_replay(&self, p: u64) -> Case2Replay {
        let n = self.arcs.n();
        let (k, t, r) = (self.arcs.k(), self.arcs.t(), self.arcs.r());
        let mut sorted: Vec<(usize, u64)> = (0..n).map(|h| (h, self.degree(h, p))).collect();
        sorted.sort_by_key(|&(h, d)| (d, h));
        let deg_jr = (r > 0).then(|| sorted[r - 1].1);
        let mut heads: Vec<usize> = sorted[r..].iter().map(|&(h, _)| h).collect();
        heads.sort_unstable();
        let matchings: Vec<Vec<usize>> =
            (0..k).map(|j| (0..t).map(|i| heads[j + i * k]).collect()).collect();
        let disjoint = matchings.iter().all(|m| {
            let mut used = 0u64;
            m.iter().all(|&h| {
                let a = self.arcs.arcs[h].mask();
                let ok = a & used == 0;
                used |= a;
                ok
            })
        });
        let edge_counts: Vec<u64> =
            matchings.iter().map(|m| m.iter().map(|&h| self.degree(h, p)).sum()).collect();
        let removed: u64 = sorted[..r].iter().map(|&(_, d)| d).sum();
        let total: u64 = (0..n).map(|h| self.degree(h, p)).sum();
        Case2Replay {
            partition_holds: edge_counts.iter().sum::<u64>() + removed == total,
            sorted_degrees: sorted,
            deg_jr,
            heads,
            matchings,
            edge_counts,
            disjoint,
        }
    }
}

/// Random overlapping nested arc chains with weights `(p, 1, ..., 1)`:
/// checks the inequality `p|B_0| + |B_1| + ... + |B_s| <= max{ns, (p+s)ks}`,
/// the exact head-average identity, the per-head matching and cover facts,
/// and the Case 2 replay.
pub fn verify_cyclic_lemma(n: usize, k: usize, s: usize, p: u64, trials: u64, seed: u64) -> Result<HarnessReport> {
    if k == 0 || k >= n || s == 0 || p == 0 || n < (k + 1) * s {
        return Err(Error::InvalidParameter(format!(
            "lemma needs 1 <= k < n, s, p >= 1 and n >= (k+1)s; got n={n}, k={k}, s={s}, p={p}"
        )));
    }
    let mut violations = Vec::new();
    let mut moments = Moments::default();
    let mut max_observed = 0u64;
    let mut bound = 0u64;
    let mut error = None;
    run_trials(seed, trials, |trial, rng| {
        if error.is_some() {
            return;
        }
        let chain = match ArcChain::random(n, k, s, rng) {
            Ok(c) => c,
            Err(e) => {
                error = Some(e);
                return;
            }
        };
        let detail = || format!("sigma={:?} chain={}", chain.arcs.order.as_slice(), chain_json(&chain.to_chain()));
        let mut flag = |kind: &str| violations.push(Violation { trial, kind: kind.into(), detail: detail() });
        if !chain.chain.overlapping(&chain.arcs.arcs, n, k) {
            flag("not-overlapping");
        }
        let c = chain.check(p);
        bound = c.bound;
        moments.push(c.lhs as f64);
        max_observed = max_observed.max(c.lhs);
        if c.lhs > c.bound {
            flag("inequality");
        }
        if !c.identity_holds {
            flag("head-average-identity");
        }
        if c.max_head_matching > s || !c.covers_valid {
            flag("head-matching");
        }
        let t = chain.arcs.t() as u64;
        if c.head_edges.iter().any(|&e| e > s as u64 * t.max(p + s as u64)) {
            flag("head-edges");
        }
        let replay = chain.case2_replay(p);
        if !replay.disjoint || !replay.partition_holds {
            flag("case2-replay");
        }
    });
    if let Some(e) = error {
        return Err(e);
    }
    Ok(HarnessReport {
        harness: "cyclic".into(),
        params: format!("n={n},k={k},s={s},p={p}"),
        seed,
        trials,
        violations,
        mean: moments.mean,
        exact_expectation: None,
        max_observed: rational::int(max_observed),
        bound: rational::int(bound),
        within_tolerance: true,
    })
}

fn chain_json(chain: &Chain) -> String {
    serde_json::to_string(chain).unwrap_or_default()
}

fn weights_for(chain: &Chain, weights: &WeightVector) -> Result<()> {
    if weights.len() != chain.families().len() {
        return Err(Error::SizeMismatch(weights.len(), chain.families().len()));
    }
    if !crate::matching::is_overlapping(chain) {
        return Err(Error::InvalidParameter("chain is not overlapping".into()));
    }
    Ok(())
}

/// Random partitions of `[n]`, `n = (s + 1)k`, into `s + 1` blocks: the
/// weighted block/family graph must carry total weight at most
/// `s (p_0 + ... + p_s)`, and the mean weight must match
/// `sum_j p_j |B_j| (s + 1) / C(n, k)`.
pub fn verify_partition_bound(chain: &Chain, weights: &WeightVector, trials: u64, seed: u64) -> Result<HarnessReport> {
    let (n, k, s) = (chain.n(), chain.k(), chain.s());
    if n != (s + 1) * k {
        return Err(Error::InvalidParameter(format!("partition bound needs n = (s+1)k, got n={n}, k={k}, s={s}")));
    }
    weights_for(chain, weights)?;
    let bound = Rational::from_integer((s as u64).into()) * weights.total();
    let c = binom_u64(n as u64, k as u64)?;
    let exact = chain
        .families()
        .iter()
        .zip(weights.iter())
        .fold(Rational::zero(), |acc, (f, p)| acc + p * rational::int(f.len()))
        * rational::ratio((s + 1) as u64, c);
    let mut violations = Vec::new();
    let mut moments = Moments::default();
    let mut max_observed = Rational::zero();
    let mut elements: Vec<u8> = (1..=n as u8).collect();
    run_trials(seed, trials, |trial, rng| {
        elements.shuffle(rng);
        let blocks: Vec<KSet> = elements
            .chunks(k)
            .map(|b| KSet::from_mask(b.iter().fold(0u64, |m, &x| m | 1 << (x - 1))))
            .collect();
        let mut g = BipartiteGraph::new(s + 1, s + 1)
            .with_right_weights(weights.entries().to_vec())
            .expect("one weight per family");
        for (i, b) in blocks.iter().enumerate() {
            for (j, f) in chain.families().iter().enumerate() {
                if f.contains(*b) {
                    g.add_edge(i, j).expect("in range");
                }
            }
        }
        let w = g.total_weight();
        let m = max_bipartite_matching(&g).len();
        let cover = min_vertex_cover(&g);
        if w > bound || m > s || cover.len() != m || !g.covers(&cover) {
            violations.push(Violation {
                trial,
                kind: if w > bound { "weight" } else { "cover" }.into(),
                detail: format!("blocks={:?} weight={}", blocks, rational::format(&w)),
            });
        }
        moments.push(to_f64(&w));
        if w > max_observed {
            max_observed = w;
        }
    });
    Ok(HarnessReport {
        harness: "partition".into(),
        params: format!("n={n},k={k},p={}", weights.label()),
        seed,
        trials,
        violations,
        mean: moments.mean,
        within_tolerance: moments.within_3_sigma(to_f64(&exact), None),
        exact_expectation: Some(exact),
        max_observed,
        bound,
    })
}

/// Uniform random matchings of `t = floor(n/k)` disjoint k-sets (ordered
/// blocks of a shuffled ground set). Once `n >= max{(s+1)k, ceil(d)k}` the
/// weight `sum_j p_j #{i : F_i in B_j}` of every sample must be at most
/// `t (p_1 + ... + p_s)`; in every regime the frequency of `F_1 in B_j` must
/// match `|B_j| / C(n, k)`.
pub fn verify_random_matching_bound(
    chain: &Chain,
    weights: &WeightVector,
    trials: u64,
    seed: u64,
) -> Result<HarnessReport> {
    let (n, k, s) = (chain.n(), chain.k(), chain.s());
    weights_for(chain, weights)?;
    if n < (s + 1) * k {
        return Err(Error::InvalidParameter(format!("need n >= (s+1)k, got n={n}, k={k}, s={s}")));
    }
    let t = n / k;
    let threshold = if s == 0 { 0 } else { bounds::thm4_threshold(k as u64, weights)? };
    let applies = n as u64 >= threshold;
    let bound = rational::int(t as u64) * weights.tail_total();
    let c = binom_u64(n as u64, k as u64)?;
    let q: Vec<f64> = chain.families().iter().map(|f| f.len() as f64 / c as f64).collect();
    let mut hits = vec![0u64; s + 1];
    let mut violations = Vec::new();
    let mut moments = Moments::default();
    let mut max_observed = Rational::zero();
    let mut elements: Vec<u8> = (1..=n as u8).collect();
    run_trials(seed, trials, |trial, rng| {
        let blocks = sample_matching(&mut elements, k, t, rng);
        let mut w = Rational::zero();
        for (j, (f, p)) in chain.families().iter().zip(weights.iter()).enumerate() {
            let count = blocks.iter().filter(|b| f.contains(**b)).count() as u64;
            w += p * rational::int(count);
            if f.contains(blocks[0]) {
                hits[j] += 1;
            }
        }
        if applies && w > bound {
            violations.push(Violation {
                trial,
                kind: "weight".into(),
                detail: format!("blocks={:?} weight={}", blocks, rational::format(&w)),
            });
        }
        moments.push(to_f64(&w));
        if w > max_observed {
            max_observed = w;
        }
    });
    let within_tolerance = trials == 0
        || hits.iter().zip(&q).all(|(&h, &q)| {
            let freq = h as f64 / trials as f64;
            let sigma = (q * (1.0 - q) / trials as f64).sqrt();
            (freq - q).abs() <= 3.0 * sigma + 1e-12
        });
    // each of the t blocks is a uniform k-set
    let exact = chain
        .families()
        .iter()
        .zip(weights.iter())
        .fold(Rational::zero(), |acc, (f, p)| acc + p * rational::int(f.len()))
        * rational::ratio(t as u64, c);
    Ok(HarnessReport {
        harness: "random-matching".into(),
        params: format!("n={n},k={k},p={}", weights.label()),
        seed,
        trials,
        violations,
        mean: moments.mean,
        within_tolerance: within_tolerance && moments.within_3_sigma(to_f64(&exact), None),
        exact_expectation: Some(exact),
        max_observed,
        bound: if applies { bound } else { rational::int(0) },
    })
}

/// First `t` blocks of size `k` of a uniformly shuffled ground set.
fn sample_matching<R: Rng + ?Sized>(elements: &mut [u8], k: usize, t: usize, rng: &mut R) -> Vec<KSet> {
    elements.shuffle(rng);
    elements
        .chunks(k)
        .take(t)
        .map(|b| KSet::from_mask(b.iter().fold(0u64, |m, &x| m | 1 << (x - 1))))
        .collect()
}

/// Random overlapping nested chain over all k-sets of `[n]`, for feeding
/// the partition and random-matching harnesses.
pub fn random_chain(n: usize, k: usize, s: usize, seed: u64) -> Result<Chain> {
    let pool = crate::combinatorics::ksets(n, k)?;
    let mut rng = shard_rng(seed, u64::MAX);
    random_overlapping_chain(&pool, n, k, s, &mut rng).to_chain(&pool, n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{construction_chain, ConstructionKind};
    use std::collections::HashMap;

    fn lists(a: &ArcFamily) -> Vec<Vec<usize>> {
        a.arcs().iter().map(|x| x.elements().collect()).collect()
    }

    #[test]
    fn identity_arcs() {
        let a = arcs(&CyclicOrder::identity(6).unwrap(), 2).unwrap();
        assert_eq!(
            lists(&a),
            vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![5, 6], vec![1, 6]]
        );
        assert!(arcs(&CyclicOrder::identity(4).unwrap(), 4).is_err());
        assert!(CyclicOrder::new(vec![1, 1, 2]).is_err());
    }

    #[test]
    fn arc_incidence() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=20 {
            for k in 1..n {
                let a = arcs(&CyclicOrder::random(n, &mut rng).unwrap(), k).unwrap();
                assert_eq!(a.arcs().len(), n);
                for x in 1..=n {
                    assert_eq!(a.arcs().iter().filter(|s| s.contains(x)).count(), k);
                }
                // k consecutive arcs pairwise intersect
                for i in 0..n {
                    for j in 1..k {
                        assert!(!a.arc(i).is_disjoint(a.arc(i + j)));
                    }
                }
                for head in 0..n {
                    let m = block_matching(&a, head);
                    assert_eq!(m.len(), n / k);
                    let mut used = 0;
                    for x in m {
                        assert_eq!(used & x.mask(), 0);
                        used |= x.mask();
                    }
                }
            }
        }
    }

    #[test]
    fn block_matching_examples() {
        let a = arcs(&CyclicOrder::identity(6).unwrap(), 2).unwrap();
        let m: Vec<Vec<usize>> = block_matching(&a, 0).iter().map(|x| x.elements().collect()).collect();
        assert_eq!(m, vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        let a = arcs(&CyclicOrder::identity(7).unwrap(), 2).unwrap();
        let m: Vec<Vec<usize>> = block_matching(&a, 0).iter().map(|x| x.elements().collect()).collect();
        assert_eq!(m, vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
    }

    #[test]
    fn full_arcs_above_empty_base() {
        let (n, k, s, p) = (9, 2, 2, 3);
        let a = arcs(&CyclicOrder::identity(n).unwrap(), k).unwrap();
        let all = a.to_family();
        let mut fams = vec![Family::empty(n, k).unwrap()];
        fams.extend(std::iter::repeat_n(all, s));
        let chain = Chain::new(fams, None).unwrap();
        // ν(∅, arcs, arcs) = 2 = s
        let ac = ArcChain::new(a, &chain).unwrap();
        let c = ac.check(p);
        assert_eq!(c.lhs, (n * s) as u64);
        assert!(c.lhs <= c.bound);
        assert!(c.identity_holds);
    }

    #[test]
    fn non_arc_chain_rejected() {
        let a = arcs(&CyclicOrder::identity(6).unwrap(), 2).unwrap();
        let f = Family::from_lists(6, 2, &[[1, 3]]).unwrap();
        let chain = Chain::new(vec![f.clone(), f], None).unwrap();
        assert!(ArcChain::new(a, &chain).is_err());
    }

    #[test]
    fn lemma_harness_small_run() {
        for (n, k, s) in [(9, 2, 2), (8, 2, 1), (12, 3, 1)] {
            for p in 1..=3 {
                let r = verify_cyclic_lemma(n, k, s, p, 300, 11).unwrap();
                assert!(r.passed(), "{:?}", r.violations.first());
            }
        }
    }

    #[test]
    fn random_chains_are_overlapping_and_nested() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let c = ArcChain::random(9, 2, 2, &mut rng).unwrap();
            let chain = c.to_chain();
            assert!(crate::matching::is_overlapping(&chain));
        }
    }

    #[test]
    fn case2_replay_quantities() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let c = ArcChain::random(9, 2, 2, &mut rng).unwrap();
            let r = c.case2_replay(3);
            assert_eq!(r.heads.len(), 8);
            assert!(r.heads.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(r.matchings.len(), 2);
            assert!(r.disjoint && r.partition_holds);
            assert!(r.deg_jr.is_some());
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = verify_cyclic_lemma(8, 2, 1, 2, 2000, 42).unwrap();
        let b = verify_cyclic_lemma(8, 2, 1, 2, 2000, 42).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let c = verify_cyclic_lemma(8, 2, 1, 2, 2000, 43).unwrap();
        assert_ne!(a.mean, c.mean);
        let text = serde_json::to_string(&a).unwrap();
        assert!(text.contains(r#""seed":42"#));
        assert!(text.contains(r#""exact_expectation":null"#));
    }

    #[test]
    fn partition_bound_clique_and_empty() {
        let w = WeightVector::from_integers(&[2, 1]).unwrap();
        let chain = construction_chain(ConstructionKind::Clique, 4, 2, 1, &w).unwrap();
        let r = verify_partition_bound(&chain, &w, 20_000, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.max_observed, r.bound);
        let empty = Chain::new(vec![Family::empty(4, 2).unwrap(); 2], None).unwrap();
        let r = verify_partition_bound(&empty, &w, 100, 1).unwrap();
        assert_eq!(r.max_observed, rational::int(0));
        assert!(r.passed());
        assert!(verify_partition_bound(&construction_chain(ConstructionKind::Cover, 5, 2, 1, &w).unwrap(), &w, 1, 1).is_err());
    }

    #[test]
    fn random_matching_cover_chain() {
        let w = WeightVector::uniform(2);
        let chain = construction_chain(ConstructionKind::Cover, 12, 2, 2, &w).unwrap();
        let r = verify_random_matching_bound(&chain, &w, 20_000, 7).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.bound, rational::int(12));
        let empty = Chain::new(vec![Family::empty(6, 2).unwrap(); 3], None).unwrap();
        let r = verify_random_matching_bound(&empty, &w, 100, 7).unwrap();
        assert_eq!(r.max_observed, rational::int(0));
    }

    #[test]
    fn matching_sampler_is_uniform() {
        // n = 4, k = 2: six ordered pairs of disjoint 2-sets
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut elements: Vec<u8> = (1..=4).collect();
        let mut counts: HashMap<(u64, u64), u64> = HashMap::new();
        let draws = 60_000u64;
        for _ in 0..draws {
            let b = sample_matching(&mut elements, 2, 2, &mut rng);
            *counts.entry((b[0].mask(), b[1].mask())).or_default() += 1;
        }
        assert_eq!(counts.len(), 6);
        let e = draws as f64 / 6.0;
        let chi2: f64 = counts.values().map(|&c| (c as f64 - e).powi(2) / e).sum();
        // 5 degrees of freedom, 0.1% critical value
        assert!(chi2 < 20.515, "chi2 = {chi2}");
    }
}
