//! Isomorph-free enumeration of connected locally linear graphs.
//!
//! Graphs grow one vertex at a time by canonical augmentation. Every
//! intermediate graph is connected and every neighborhood in it induces a
//! linear forest; both properties are inherited by induced subgraphs obtained
//! by deleting a non-cut vertex, so each final graph is reached along exactly
//! one chain of canonical deletions.
//!
//! The deletion vertex of a graph is chosen among its non-cut vertices by
//! least `(degree, sum of neighbor degrees)`, ties broken by greatest
//! canonical position. A child is accepted when deleting its deletion vertex
//! gives back the parent's isomorphism class; accepted siblings are
//! deduplicated by canonical form.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_form, canonical_labeling};
use crate::error::SizeLimitError;
use crate::graph::{bit, low_mask, Bits, Graph};
use crate::graph6::encode;
use crate::hamilton::{find_hamilton_cycle, find_hamilton_path, hamiltonicity_oracle, Certificate};
use crate::local::is_locally_linear;

pub const SEARCH_MAX_VERTICES: usize = 16;
pub const BRUTE_FORCE_MAX_VERTICES: usize = 8;
pub const DEFAULT_BUDGET_NODES: u64 = 2_000_000_000;
pub const DEFAULT_SPLIT_DEPTH: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Requirement {
    /// Always enforced; accepted for completeness.
    Connected,
    Nonhamiltonian,
    Nontraceable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConstraints {
    pub n: usize,
    pub m_max: Option<usize>,
    pub delta_max: Option<usize>,
    pub require: BTreeSet<Requirement>,
}

impl SearchConstraints {
    pub fn new(n: usize) -> Self {
        SearchConstraints {
            n,
            m_max: None,
            delta_max: None,
            require: BTreeSet::from([Requirement::Connected]),
        }
    }

    pub fn with_m_max(mut self, m: usize) -> Self {
        self.m_max = Some(m);
        self
    }

    pub fn with_delta_max(mut self, d: usize) -> Self {
        self.delta_max = Some(d);
        self
    }

    pub fn requiring(mut self, r: Requirement) -> Self {
        self.require.insert(r);
        self
    }

    fn wants_nonhamiltonian(&self) -> bool {
        self.require.contains(&Requirement::Nonhamiltonian)
            || self.require.contains(&Requirement::Nontraceable)
    }

    fn matches(&self, hamiltonian: bool, traceable: bool) -> bool {
        !(self.wants_nonhamiltonian() && hamiltonian)
            && !(self.require.contains(&Requirement::Nontraceable) && traceable)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub workers: usize,
    pub budget_nodes: u64,
    /// Depth at which the tree is cut into independent tasks.
    pub split_depth: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: rayon::current_num_threads(),
            budget_nodes: DEFAULT_BUDGET_NODES,
            split_depth: DEFAULT_SPLIT_DEPTH,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCounts {
    pub classes: u64,
    pub nonhamiltonian: u64,
    pub nontraceable: u64,
}

impl SizeCounts {
    fn add(&mut self, o: &SizeCounts) {
        self.classes += o.classes;
        self.nonhamiltonian += o.nonhamiltonian;
        self.nontraceable += o.nontraceable;
    }
}

/// Counts surviving each successive filter.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterCounts {
    /// Connected locally linear classes within the caps.
    pub classes: u64,
    pub nonhamiltonian: u64,
    pub nontraceable: u64,
    /// Classes meeting `require`.
    pub matching: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub hamiltonian: bool,
    pub traceable: bool,
    pub certificate: Option<Certificate>,
    /// Verdict of the subset-DP oracle.
    pub oracle_hamiltonian: bool,
}

impl Witness {
    pub fn graph(&self) -> Graph {
        crate::graph6::parse_graph6(&self.graph6).expect("witnesses store valid graph6")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchReport {
    pub constraints: SearchConstraints,
    pub filters: FilterCounts,
    pub by_size: BTreeMap<usize, SizeCounts>,
    /// Classes with `m - 2n` not divisible by 3.
    pub divisibility_violations: u64,
    /// Witnesses where the solver and the DP oracle disagree.
    pub oracle_disagreements: u64,
    /// Classes meeting `require`, sorted by graph6.
    pub witnesses: Vec<Witness>,
    /// Intermediate states accepted, including the root.
    pub nodes: u64,
    pub complete: bool,
    pub elapsed_secs: f64,
    pub workers: usize,
}

impl SearchReport {
    /// Everything except timing and worker count.
    pub fn same_outcome(&self, other: &SearchReport) -> bool {
        self.constraints == other.constraints
            && self.filters == other.filters
            && self.by_size == other.by_size
            && self.divisibility_violations == other.divisibility_violations
            && self.oracle_disagreements == other.oracle_disagreements
            && self.witnesses == other.witnesses
            && self.nodes == other.nodes
            && self.complete == other.complete
    }

    pub fn min_witness_size(&self) -> Option<usize> {
        self.witnesses.iter().map(|w| w.m).min()
    }
}

#[derive(Debug, Clone, Error)]
pub enum SearchError {
    #[error("order {n} outside the supported range 1..={SEARCH_MAX_VERTICES}")]
    Order { n: usize },
    #[error("node budget of {budget} exhausted after {} nodes", partial.nodes)]
    Budget {
        budget: u64,
        partial: Box<SearchReport>,
    },
}

/// A partial graph on vertices `0..k`, stored canonically labeled.
#[derive(Clone)]
struct State {
    adj: [u64; SEARCH_MAX_VERTICES],
    k: usize,
}

impl State {
    fn rows(&self) -> &[u64] {
        &self.adj[..self.k]
    }
}

#[derive(Default)]
struct Tally {
    by_size: BTreeMap<usize, SizeCounts>,
    divisibility_violations: u64,
    oracle_disagreements: u64,
    witnesses: Vec<Witness>,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        for (m, c) in o.by_size {
            self.by_size.entry(m).or_default().add(&c);
        }
        self.divisibility_violations += o.divisibility_violations;
        self.oracle_disagreements += o.oracle_disagreements;
        self.witnesses.extend(o.witnesses);
        self
    }
}

type Sink<'a> = &'a (dyn Fn(&Graph) + Sync);

struct Engine<'a> {
    c: &'a SearchConstraints,
    n: usize,
    dcap: usize,
    /// 2 from order 3 on: a degree-1 vertex would sit isolated in its
    /// neighbor's neighborhood. `K2` is the exception.
    min_degree: usize,
    m_max: usize,
    budget: u64,
    nodes: AtomicU64,
    aborted: AtomicBool,
    sink: Sink<'a>,
}

fn edges_within(adj: &[u64], mask: u64) -> u32 {
    Bits(mask).map(|w| (adj[w] & mask).count_ones()).sum::<u32>() / 2
}

/// Whether `mask` induces a linear forest, given that it has no vertex of
/// induced degree above 2.
fn is_acyclic(adj: &[u64], mask: u64) -> bool {
    let mut left = mask;
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut comp = bit(start);
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= adj[v] & mask;
            }
            frontier = next & !comp;
            comp |= next;
        }
        if edges_within(adj, comp) >= comp.count_ones() {
            return false;
        }
        left &= !comp;
    }
    true
}

fn is_connected_without(adj: &[u64], all: u64, v: usize) -> bool {
    let within = all & !bit(v);
    if within == 0 {
        return true;
    }
    let mut comp = within & within.wrapping_neg();
    let mut frontier = comp;
    while frontier != 0 {
        let mut next = 0;
        for w in Bits(frontier) {
            next |= adj[w];
        }
        next &= within & !comp;
        comp |= next;
        frontier = next;
    }
    comp == within
}

/// Neighbors `v` still has to gain: one per extra path in its neighborhood,
/// and enough to reach `min_degree`. Assumes the neighborhood is a linear
/// forest.
#[inline]
fn neighborhood_need(adj: &[u64], v: usize, min_degree: usize) -> usize {
    let d = adj[v].count_ones() as usize;
    let components = d - edges_within(adj, adj[v]) as usize;
    components.saturating_sub(1).max(min_degree.saturating_sub(d))
}

/// Deletion priority key; smaller is preferred.
#[inline]
fn deletion_key(adj: &[u64], v: usize) -> (u32, u32) {
    let d = adj[v].count_ones();
    let s = Bits(adj[v]).map(|w| adj[w].count_ones()).sum();
    (d, s)
}

/// Non-cut vertices of least deletion key.
fn deletion_candidates(adj: &[u64]) -> u64 {
    let all = low_mask(adj.len());
    let mut keyed: Vec<((u32, u32), usize)> = (0..adj.len()).map(|v| (deletion_key(adj, v), v)).collect();
    keyed.sort_unstable();
    let mut best = None;
    let mut out = 0u64;
    for (key, v) in keyed {
        if let Some(b) = best {
            if key != b {
                break;
            }
        }
        if is_connected_without(adj, all, v) {
            best = Some(key);
            out |= bit(v);
        }
    }
    out
}

/// Removes vertex `w` from `adj`, shifting later vertices down.
fn delete_vertex(adj: &[u64], w: usize) -> Vec<u64> {
    let low = low_mask(w);
    adj.iter()
        .enumerate()
        .filter(|&(v, _)| v != w)
        .map(|(_, &row)| (row & low) | ((row >> 1) & !low))
        .collect()
}

impl<'a> Engine<'a> {
    fn new(c: &'a SearchConstraints, opts: &SearchOptions, sink: Sink<'a>) -> Self {
        Engine {
            c,
            n: c.n,
            dcap: c.delta_max.unwrap_or(usize::MAX).min(c.n - 1),
            min_degree: 2.min(c.n - 1),
            m_max: c.m_max.unwrap_or(usize::MAX),
            budget: opts.budget_nodes,
            nodes: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
            sink,
        }
    }

    fn count_node(&self) -> bool {
        let seen = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if seen > self.budget {
            self.aborted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn root(&self) -> State {
        State {
            adj: [0; SEARCH_MAX_VERTICES],
            k: 1,
        }
    }

    /// Necessary conditions for the `k`-vertex graph `adj` to extend to a
    /// locally linear graph of order `n` within the caps.
    fn feasible(&self, adj: &[u64], m: usize) -> bool {
        let r = self.n - adj.len();
        let mut need_total = 0usize;
        for (v, &row) in adj.iter().enumerate() {
            let d = row.count_ones() as usize;
            if d > self.dcap {
                return false;
            }
            let need = neighborhood_need(adj, v, self.min_degree);
            if need > r || d + need > self.dcap {
                return false;
            }
            need_total += need;
        }
        if r == 0 {
            return m <= self.m_max;
        }
        let future_future = (2 * r).saturating_sub(need_total).div_ceil(2);
        m + need_total + future_future <= self.m_max
    }

    /// Accepted children of `parent`, canonically labeled, in order of
    /// ascending neighbor set.
    fn children(&self, parent: &State) -> Vec<State> {
        let k = parent.k;
        let padj = parent.rows();
        let m_parent = padj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        // Vertices of N(v) that can still take a new neighbor inside N(v).
        let open: Vec<u64> = padj
            .iter()
            .map(|&nb| Bits(nb).filter(|&w| (padj[w] & nb).count_ones() <= 1).fold(0, |a, w| a | bit(w)))
            .collect();
        let full: u64 = (0..k).filter(|&v| padj[v].count_ones() as usize >= self.dcap).fold(0, |a, v| a | bit(v));
        // Vertices that need every remaining vertex as a neighbor.
        let remaining = self.n - k;
        let forced = (0..k)
            .filter(|&v| neighborhood_need(padj, v, self.min_degree) >= remaining)
            .fold(0, |a, v| a | bit(v));
        // A non-cut vertex of the parent stays non-cut in the child unless it
        // is the only neighbor, so the new vertex may exceed its degree by at
        // most one.
        let all = low_mask(k);
        let size_cap = if k == 1 {
            1
        } else {
            (0..k)
                .filter(|&v| is_connected_without(padj, all, v))
                .map(|v| padj[v].count_ones() as usize + 1)
                .min()
                .expect("a connected graph has a non-cut vertex")
        };

        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut out = Vec::new();
        let mut child = [0u64; SEARCH_MAX_VERTICES];
        let mut sets = Vec::new();
        let admissible = Admissible {
            adj: padj,
            open: &open,
            allowed: all & !full,
            forced,
            max_size: self.dcap.min(size_cap),
        };
        if forced & full != 0 {
            return Vec::new();
        }
        admissible.grow(0, 0, &mut sets);
        sets.sort_unstable();
        'subsets: for s in sets {
            let size = s.count_ones() as usize;
            child[..k].copy_from_slice(padj);
            for v in Bits(s) {
                child[v] |= bit(k);
            }
            child[k] = s;
            let cadj = &child[..=k];
            if !self.feasible(cadj, m_parent + size) {
                continue;
            }

            // Cheap necessary condition: the new vertex is a deletion candidate.
            let key_k = deletion_key(cadj, k);
            let all = low_mask(k + 1);
            let mut candidates = bit(k);
            for v in 0..k {
                let key = deletion_key(cadj, v);
                if key < key_k && is_connected_without(cadj, all, v) {
                    continue 'subsets;
                }
                if key == key_k && is_connected_without(cadj, all, v) {
                    candidates |= bit(v);
                }
            }
            let lab = canonical_labeling(cadj);
            let w = Bits(candidates)
                .max_by_key(|&v| lab.position[v])
                .expect("k is a candidate");
            if w != k && canonical_labeling(&delete_vertex(cadj, w)).adjacency != padj {
                continue;
            }
            if !seen.insert(lab.adjacency.clone()) {
                continue;
            }
            let mut next = State {
                adj: [0; SEARCH_MAX_VERTICES],
                k: k + 1,
            };
            next.adj[..=k].copy_from_slice(&lab.adjacency);
            out.push(next);
        }
        out
    }

    fn expand(&self, state: &State, tally: &mut Tally) {
        if self.aborted.load(Ordering::Relaxed) {
            return;
        }
        if state.k == self.n {
            self.finish(state, tally);
            return;
        }
        for child in self.children(state) {
            if !self.count_node() {
                return;
            }
            self.expand(&child, tally);
        }
    }

    /// Expands breadth-first down to `depth`, returning the frontier. Final
    /// graphs met on the way are finished into `tally`.
    fn frontier(&self, depth: usize, tally: &mut Tally) -> Vec<State> {
        let mut level = vec![self.root()];
        while let Some(first) = level.first() {
            if first.k >= depth.max(1) || first.k == self.n {
                break;
            }
            let mut next = Vec::new();
            for s in &level {
                for child in self.children(s) {
                    if !self.count_node() {
                        return Vec::new();
                    }
                    next.push(child);
                }
            }
            level = next;
        }
        if level.first().is_some_and(|s| s.k == self.n) {
            for s in &level {
                self.finish(s, tally);
            }
            return Vec::new();
        }
        level
    }

    fn finish(&self, state: &State, tally: &mut Tally) {
        let g = Graph::from_adjacency_unchecked(state.rows().to_vec());
        debug_assert!(is_locally_linear(&g) && g.is_connected());
        let n = g.order();
        let m = g.size();
        let cycle = find_hamilton_cycle(&g);
        let hamiltonian = cycle.is_some();
        let path = if hamiltonian { None } else { find_hamilton_path(&g) };
        let traceable = hamiltonian || path.is_some();

        let entry = tally.by_size.entry(m).or_default();
        entry.classes += 1;
        entry.nonhamiltonian += u64::from(!hamiltonian);
        entry.nontraceable += u64::from(!traceable);
        if (m as i64 - 2 * n as i64).rem_euclid(3) != 0 {
            tally.divisibility_violations += 1;
        }
        if self.c.matches(hamiltonian, traceable) && self.c.wants_nonhamiltonian() {
            let oracle = hamiltonicity_oracle(&g).expect("search orders are within the oracle limit");
            if oracle != hamiltonian {
                tally.oracle_disagreements += 1;
            }
            tally.witnesses.push(Witness {
                graph6: String::from_utf8(encode(state.rows())).expect("graph6 is ASCII"),
                n,
                m,
                delta: g.max_degree(),
                hamiltonian,
                traceable,
                certificate: cycle.or(path),
                oracle_hamiltonian: oracle,
            });
        }
        (self.sink)(&g);
    }
}

/// Generates the neighbor sets a new vertex may take: every vertex of the set
/// sees at most two others in it, all at ends of distinct paths of its own
/// neighborhood, and the set itself induces a linear forest. All of these
/// conditions are inherited by subsets, so sets grow one vertex at a time.
struct Admissible<'a> {
    adj: &'a [u64],
    open: &'a [u64],
    allowed: u64,
    /// Vertices every set must contain.
    forced: u64,
    max_size: usize,
}

impl Admissible<'_> {
    fn grow(&self, s: u64, from: usize, out: &mut Vec<u64>) {
        if s.count_ones() as usize == self.max_size {
            return;
        }
        let pending = self.forced & !low_mask(from);
        // Skipping past a forced vertex can never yield a valid set.
        let limit = if pending == 0 { u64::MAX } else { low_mask(pending.trailing_zeros() as usize + 1) };
        for x in Bits(self.allowed & !low_mask(from) & limit) {
            let t = s | bit(x);
            if self.fits(t, x) {
                if self.forced & !t & !low_mask(x + 1) == 0 {
                    out.push(t);
                }
                self.grow(t, x + 1, out);
            }
        }
    }

    /// Checks the conditions touched by adding `x` to get `t`.
    fn fits(&self, t: u64, x: usize) -> bool {
        let adj = self.adj;
        let touched = (adj[x] & t) | bit(x);
        for v in Bits(touched) {
            let inside = t & adj[v];
            if inside.count_ones() > 2 || inside & !self.open[v] != 0 {
                return false;
            }
            if inside.count_ones() == 2 {
                let a = inside.trailing_zeros() as usize;
                if component_within(adj, a, adj[v]) & inside == inside {
                    return false;
                }
            }
        }
        adj[x] & t == 0 || is_acyclic(adj, component_within(adj, x, t))
    }
}

fn component_within(adj: &[u64], start: usize, within: u64) -> u64 {
    let mut comp = bit(start);
    let mut frontier = comp;
    while frontier != 0 {
        let mut next = 0;
        for v in Bits(frontier) {
            next |= adj[v] & within;
        }
        frontier = next & !comp;
        comp |= next;
    }
    comp
}

/// Enumerates one representative per isomorphism class of connected locally
/// linear graphs meeting `c`, passing each to `sink`. With more than one
/// worker the order of sink calls is unspecified; the report is not.
pub fn enumerate_locally_linear(
    c: &SearchConstraints,
    opts: &SearchOptions,
    sink: Sink<'_>,
) -> Result<SearchReport, SearchError> {
    if c.n == 0 || c.n > SEARCH_MAX_VERTICES {
        return Err(SearchError::Order { n: c.n });
    }
    let started = Instant::now();
    let workers = opts.workers.max(1);
    let engine = Engine::new(c, opts, sink);
    let mut tally = Tally::default();
    engine.count_node();
    if c.n == 1 {
        // The single vertex has an empty neighborhood, which counts as a path.
        engine.finish(&engine.root(), &mut tally);
    } else {
        let frontier = engine.frontier(opts.split_depth, &mut tally);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        let parts: Vec<Tally> = pool.install(|| {
            frontier
                .par_iter()
                .map(|s| {
                    let mut t = Tally::default();
                    engine.expand(s, &mut t);
                    t
                })
                .collect()
        });
        tally = parts.into_iter().fold(tally, Tally::merge);
    }

    let mut filters = FilterCounts::default();
    for sc in tally.by_size.values() {
        filters.classes += sc.classes;
        filters.nonhamiltonian += sc.nonhamiltonian;
        filters.nontraceable += sc.nontraceable;
    }
    filters.matching = if c.require.contains(&Requirement::Nontraceable) {
        filters.nontraceable
    } else if c.wants_nonhamiltonian() {
        filters.nonhamiltonian
    } else {
        filters.classes
    };
    tally.witnesses.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    let aborted = engine.aborted.load(Ordering::Relaxed);
    let report = SearchReport {
        constraints: c.clone(),
        filters,
        by_size: tally.by_size,
        divisibility_violations: tally.divisibility_violations,
        oracle_disagreements: tally.oracle_disagreements,
        witnesses: tally.witnesses,
        nodes: engine.nodes.load(Ordering::Relaxed).min(engine.budget),
        complete: !aborted,
        elapsed_secs: started.elapsed().as_secs_f64(),
        workers,
    };
    if aborted {
        return Err(SearchError::Budget {
            budget: opts.budget_nodes,
            partial: Box::new(report),
        });
    }
    Ok(report)
}

/// Collects every class into a vector sorted by graph6.
pub fn collect_locally_linear(
    c: &SearchConstraints,
    opts: &SearchOptions,
) -> Result<(SearchReport, Vec<Graph>), SearchError> {
    let found = std::sync::Mutex::new(Vec::new());
    let report = enumerate_locally_linear(c, opts, &|g| {
        found.lock().expect("no poisoning").push(g.clone())
    })?;
    let mut graphs = found.into_inner().expect("no poisoning");
    graphs.sort_by_cached_key(crate::graph6::emit_graph6);
    Ok((report, graphs))
}

/// The accepted intermediate states on `k < c.n` vertices, in generation
/// order. These are the graphs the search extends towards order `c.n`.
pub fn intermediate_states(c: &SearchConstraints, k: usize) -> Vec<Graph> {
    assert!(k >= 1 && k < c.n && c.n <= SEARCH_MAX_VERTICES, "need 1 <= k < n <= {SEARCH_MAX_VERTICES}");
    let opts = SearchOptions {
        budget_nodes: u64::MAX,
        ..SearchOptions::default()
    };
    let engine = Engine::new(c, &opts, &|_| {});
    engine
        .frontier(k, &mut Tally::default())
        .iter()
        .map(|s| Graph::from_adjacency_unchecked(s.rows().to_vec()))
        .collect()
}

/// The graph obtained by deleting the deletion vertex of `g`, canonically
/// labeled. `None` for graphs of order at most 1.
pub fn canonical_parent(g: &Graph) -> Option<Graph> {
    if g.order() <= 1 {
        return None;
    }
    let adj = g.adjacency();
    let lab = canonical_labeling(adj);
    let w = Bits(deletion_candidates(adj)).max_by_key(|&v| lab.position[v])?;
    let parent = canonical_labeling(&delete_vertex(adj, w));
    Some(Graph::from_adjacency_unchecked(parent.adjacency))
}

/// Whether `mask` induces a path, with zero or one vertices counting as one.
fn induces_path(adj: &[u64], mask: u64) -> bool {
    let count = mask.count_ones();
    if count <= 1 {
        return true;
    }
    let mut ends = 0;
    for v in Bits(mask) {
        match (adj[v] & mask).count_ones() {
            1 => ends += 1,
            2 => {}
            _ => return false,
        }
    }
    ends == 2 && component_within(adj, mask.trailing_zeros() as usize, mask) == mask
}

/// Every connected locally linear graph of order `n`, found by testing all
/// labeled graphs, keyed by canonical graph6.
pub fn brute_force_enumerate(n: usize) -> Result<BTreeMap<String, Graph>, SizeLimitError> {
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(SizeLimitError {
            routine: "brute_force_enumerate",
            limit: BRUTE_FORCE_MAX_VERTICES,
            n,
        });
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let total: u64 = 1 << pairs.len();
    let chunk = 1u64 << pairs.len().saturating_sub(8);
    let found: Vec<Graph> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .flat_map_iter(|c| {
            let pairs = &pairs;
            let first = c * chunk;
            let mut adj = [0u64; BRUTE_FORCE_MAX_VERTICES];
            let mut code = 0u64;
            (first..((c + 1) * chunk).min(total)).filter_map(move |next| {
                // Toggle only the pairs whose bits changed.
                for i in Bits(code ^ next) {
                    let (a, b) = pairs[i];
                    adj[a] ^= bit(b);
                    adj[b] ^= bit(a);
                }
                code = next;
                let rows = &adj[..n];
                let linear = rows.iter().all(|&nb| induces_path(rows, nb));
                (linear && n > 0 && component_within(rows, 0, low_mask(n)) == low_mask(n))
                    .then(|| Graph::from_adjacency_unchecked(rows.to_vec()))
            })
        })
        .collect();
    Ok(found
        .into_iter()
        .map(|g| {
            let c = canonical_form(&g);
            (c.as_graph6().to_string(), c.graph())
        })
        .collect())
}
