//! Matching numbers of families and chains, and bipartite matching with
//! König vertex covers.

use std::collections::HashMap;

use num_traits::Zero;

use crate::combinatorics::KSet;
use crate::error::{Error, Result};
use crate::family::{Chain, Family};
use crate::rational::{self, Rational};

/// A maximum set of pairwise disjoint members of `f`; the colex-lexicographically
/// least one among those of maximum size.
pub fn max_matching(f: &Family) -> Vec<KSet> {
    let sets = f.members();
    let mut best = Vec::new();
    let mut cur = Vec::new();
    matching_dfs(&sets, f.n(), f.k(), 0, 0, &mut cur, &mut best);
    best
}

fn matching_dfs(
    sets: &[KSet],
    n: usize,
    k: usize,
    start: usize,
    used: u64,
    cur: &mut Vec<KSet>,
    best: &mut Vec<KSet>,
) {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    let free = n - used.count_ones() as usize;
    let room = free.checked_div(k).map_or(sets.len() - start, |r| r.min(sets.len() - start));
    if cur.len() + room <= best.len() {
        return;
    }
    for (idx, &x) in sets.iter().enumerate().skip(start) {
        if x.mask() & used == 0 {
            cur.push(x);
            matching_dfs(sets, n, k, idx + 1, used | x.mask(), cur, best);
            cur.pop();
        }
    }
}

/// `ν(F)`: the maximum number of pairwise disjoint members.
pub fn matching_number(f: &Family) -> usize {
    max_matching(f).len()
}

/// Exact solver for the rainbow matching number of a sequence of families.
///
/// Dynamic programme over (index, used elements): at each index either skip
/// the family or take a representative disjoint from everything used so far.
struct RainbowSolver<'a> {
    fams: &'a [Vec<u64>],
    n: usize,
    k: usize,
    memo: HashMap<(usize, u64), usize>,
}

impl RainbowSolver<'_> {
    fn bound(&self, i: usize, used: u64) -> usize {
        let left = self.fams.len() - i;
        (self.n - used.count_ones() as usize).checked_div(self.k).map_or(left, |r| left.min(r))
    }

    fn best(&mut self, i: usize, used: u64) -> usize {
        if i == self.fams.len() {
            return 0;
        }
        if let Some(&v) = self.memo.get(&(i, used)) {
            return v;
        }
        let cap = self.bound(i, used);
        let mut best = 0;
        if cap > 0 {
            best = self.best(i + 1, used);
            let fams = self.fams;
            for &m in &fams[i] {
                if best == cap {
                    break;
                }
                if m & used == 0 {
                    best = best.max(1 + self.best(i + 1, used | m));
                }
            }
        }
        self.memo.insert((i, used), best);
        best
    }
}

fn masks_of(seq: &[Family]) -> Result<(usize, usize, Vec<Vec<u64>>)> {
    let first = seq
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty family sequence".into()))?;
    for f in seq {
        if f.params() != first.params() {
            return Err(Error::ParamMismatch(
                format!("n={}, k={}", first.n(), first.k()),
                format!("n={}, k={}", f.n(), f.k()),
            ));
        }
    }
    let masks = seq
        .iter()
        .map(|f| f.members().into_iter().map(KSet::mask).collect())
        .collect();
    Ok((first.n(), first.k(), masks))
}

/// A maximum rainbow matching: entry `i` is the representative taken from
/// family `i`, if any. Among maximum matchings, representatives are taken as
/// early and as colex-small as possible.
pub fn rainbow_matching(seq: &[Family]) -> Result<Vec<Option<KSet>>> {
    let (n, k, fams) = masks_of(seq)?;
    let mut solver = RainbowSolver { fams: &fams, n, k, memo: HashMap::new() };
    let mut used = 0u64;
    let mut out = Vec::with_capacity(fams.len());
    for (i, fam) in fams.iter().enumerate() {
        let target = solver.best(i, used);
        let pick = fam
            .iter()
            .copied()
            .find(|&m| m & used == 0 && target > 0 && 1 + solver.best(i + 1, used | m) == target);
        match pick {
            Some(m) => {
                used |= m;
                out.push(Some(KSet::from_mask(m)));
            }
            None => out.push(None),
        }
    }
    Ok(out)
}

/// `ν(A_1, ..., A_m)`: the largest number of distinct indices admitting
/// pairwise disjoint representatives.
pub fn rainbow_matching_number(seq: &[Family]) -> Result<usize> {
    let (n, k, fams) = masks_of(seq)?;
    let mut solver = RainbowSolver { fams: &fams, n, k, memo: HashMap::new() };
    Ok(solver.best(0, 0))
}

/// Whether every family of the sequence can contribute a representative,
/// pairwise disjoint. Families are processed from smallest to largest.
pub fn has_full_rainbow(seq: &[Family]) -> Result<bool> {
    let (n, k, mut fams) = masks_of(seq)?;
    fams.sort_by_key(Vec::len);
    Ok(full_rainbow_masks(&fams, n, k))
}

pub(crate) fn full_rainbow_masks(fams: &[Vec<u64>], n: usize, k: usize) -> bool {
    fn go(fams: &[Vec<u64>], i: usize, used: u64, n: usize, k: usize) -> bool {
        if i == fams.len() {
            return true;
        }
        if k > 0 && (n - used.count_ones() as usize) / k < fams.len() - i {
            return false;
        }
        fams[i].iter().any(|&m| m & used == 0 && go(fams, i + 1, used | m, n, k))
    }
    go(fams, 0, 0, n, k)
}

/// Whether the chain `B_0, ..., B_s` is overlapping: `ν(B_0, ..., B_s) <= s`.
pub fn is_overlapping(chain: &Chain) -> bool {
    !has_full_rainbow(chain.families()).expect("chain families share parameters")
}

/// Bipartite graph with optional per-right-vertex weights. A weighted edge
/// carries the weight of its right endpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteGraph {
    n_left: usize,
    n_right: usize,
    adj: Vec<Vec<usize>>,
    right_weights: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    /// `(left, right)` pairs sorted by left vertex.
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexCover {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl VertexCover {
    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl BipartiteGraph {
    pub fn new(n_left: usize, n_right: usize) -> Self {
        BipartiteGraph { n_left, n_right, adj: vec![Vec::new(); n_left], right_weights: None }
    }

    pub fn with_right_weights(mut self, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != self.n_right {
            return Err(Error::InvalidWeights(format!(
                "{} weights for {} right vertices",
                weights.len(),
                self.n_right
            )));
        }
        self.right_weights = Some(weights);
        Ok(self)
    }

    pub fn add_edge(&mut self, left: usize, right: usize) -> Result<()> {
        if left >= self.n_left || right >= self.n_right {
            return Err(Error::InvalidParameter(format!(
                "edge ({left}, {right}) outside {}x{}",
                self.n_left, self.n_right
            )));
        }
        if let Err(pos) = self.adj[left].binary_search(&right) {
            self.adj[left].insert(pos, right);
        }
        Ok(())
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn neighbors(&self, left: usize) -> &[usize] {
        &self.adj[left]
    }

    pub fn has_edge(&self, left: usize, right: usize) -> bool {
        self.adj[left].binary_search(&right).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(l, rs)| rs.iter().map(move |&r| (l, r)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn left_degree(&self, left: usize) -> usize {
        self.adj[left].len()
    }

    /// Sum of edge weights; the edge count when unweighted.
    pub fn total_weight(&self) -> Rational {
        match &self.right_weights {
            None => rational::int(self.edge_count() as u64),
            Some(w) => self.edges().fold(Rational::zero(), |acc, (_, r)| acc + &w[r]),
        }
    }

    /// Induced subgraph on the given left vertices (all right vertices kept).
    pub fn restrict_left(&self, lefts: &[usize]) -> BipartiteGraph {
        BipartiteGraph {
            n_left: lefts.len(),
            n_right: self.n_right,
            adj: lefts.iter().map(|&l| self.adj[l].clone()).collect(),
            right_weights: self.right_weights.clone(),
        }
    }

    pub fn covers(&self, cover: &VertexCover) -> bool {
        let mut in_left = vec![false; self.n_left];
        let mut in_right = vec![false; self.n_right];
        cover.left.iter().for_each(|&l| in_left[l] = true);
        cover.right.iter().for_each(|&r| in_right[r] = true);
        self.edges().all(|(l, r)| in_left[l] || in_right[r])
    }

    fn mates(&self) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        let mut left_mate = vec![None; self.n_left];
        let mut right_mate = vec![None; self.n_right];
        for u in 0..self.n_left {
            let mut seen = vec![false; self.n_right];
            self.augment(u, &mut seen, &mut left_mate, &mut right_mate);
        }
        (left_mate, right_mate)
    }

    fn augment(
        &self,
        u: usize,
        seen: &mut [bool],
        left_mate: &mut [Option<usize>],
        right_mate: &mut [Option<usize>],
    ) -> bool {
        for &v in &self.adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let free = match right_mate[v] {
                None => true,
                Some(w) => self.augment(w, seen, left_mate, right_mate),
            };
            if free {
                left_mate[u] = Some(v);
                right_mate[v] = Some(u);
                return true;
            }
        }
        false
    }
}

/// Maximum-cardinality matching by augmenting paths.
pub fn max_bipartite_matching(g: &BipartiteGraph) -> Matching {
    let (left_mate, _) = g.mates();
    Matching {
        pairs: left_mate.iter().enumerate().filter_map(|(l, m)| m.map(|r| (l, r))).collect(),
    }
}

/// Minimum vertex cover via König's construction: with `Z` the vertices
/// reachable from unmatched left vertices by alternating paths, the cover is
/// `(L \ Z) ∪ (R ∩ Z)`.
pub fn min_vertex_cover(g: &BipartiteGraph) -> VertexCover {
    let (left_mate, right_mate) = g.mates();
    let mut z_left = vec![false; g.n_left];
    let mut z_right = vec![false; g.n_right];
    let mut stack: Vec<usize> = (0..g.n_left).filter(|&l| left_mate[l].is_none()).collect();
    stack.iter().for_each(|&l| z_left[l] = true);
    while let Some(l) = stack.pop() {
        for &r in &g.adj[l] {
            if left_mate[l] == Some(r) || z_right[r] {
                continue;
            }
            z_right[r] = true;
            if let Some(w) = right_mate[r] {
                if !z_left[w] {
                    z_left[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    VertexCover {
        left: (0..g.n_left).filter(|&l| !z_left[l]).collect(),
        right: (0..g.n_right).filter(|&r| z_right[r]).collect(),
    }
}
