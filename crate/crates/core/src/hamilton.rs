//! Exact Hamilton cycle and path search with checkable certificates.
//!
//! The solvers are depth-first backtracking searches over bit masks. A branch
//! is cut when some unvisited vertex can no longer be threaded through (too
//! few usable neighbors) or when the unvisited region stops being connected
//! to the current end of the path. A `None` answer is therefore a completed
//! exhaustive search. [`hamiltonicity_oracle`] is an independent subset
//! dynamic program used to cross-check the backtracking solver.

use serde::{Deserialize, Serialize};

use crate::error::SizeLimitError;
use crate::graph::{bit, Bits, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Cycle,
    Path,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub seq: Vec<usize>,
}

impl Certificate {
    pub fn cycle(seq: Vec<usize>) -> Self {
        Certificate {
            kind: CertificateKind::Cycle,
            seq,
        }
    }

    pub fn path(seq: Vec<usize>) -> Self {
        Certificate {
            kind: CertificateKind::Path,
            seq,
        }
    }
}

/// Checks a certificate against `g` from scratch.
pub fn verify_certificate(g: &Graph, c: &Certificate) -> bool {
    let n = g.order();
    if c.seq.len() != n {
        return false;
    }
    let mut seen = 0u64;
    for &v in &c.seq {
        if v >= n || seen & bit(v) != 0 {
            return false;
        }
        seen |= bit(v);
    }
    if !c.seq.windows(2).all(|w| g.has_edge(w[0], w[1])) {
        return false;
    }
    match c.kind {
        CertificateKind::Path => true,
        CertificateKind::Cycle => n >= 3 && g.has_edge(c.seq[n - 1], c.seq[0]),
    }
}

/// Per-vertex neighbor lists sorted by ascending degree, ties by id.
fn neighbor_orders(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.order())
        .map(|v| {
            let mut ns = g.neighbor_list(v);
            ns.sort_by_key(|&w| (g.degree(w), w));
            ns
        })
        .collect()
}

struct CycleSearch<'a> {
    g: &'a Graph,
    order: Vec<Vec<usize>>,
    start: usize,
    path: Vec<usize>,
}

impl CycleSearch<'_> {
    fn extend(&mut self, current: usize, unvisited: u64) -> bool {
        let adj = self.g.adjacency();
        if unvisited == 0 {
            return adj[current] & bit(self.start) != 0;
        }
        let usable = unvisited | bit(current) | bit(self.start);
        for w in Bits(unvisited) {
            if (adj[w] & usable).count_ones() < 2 {
                return false;
            }
        }
        if !self.g.is_connected_within(unvisited | bit(current)) {
            return false;
        }
        for i in 0..self.order[current].len() {
            let next = self.order[current][i];
            if unvisited & bit(next) == 0 {
                continue;
            }
            self.path.push(next);
            if self.extend(next, unvisited & !bit(next)) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

/// A Hamilton cycle of `g`, or `None` when none exists.
pub fn find_hamilton_cycle(g: &Graph) -> Option<Certificate> {
    let n = g.order();
    if n < 3 || g.min_degree() < 2 || !g.is_connected() {
        return None;
    }
    let start = (0..n).min_by_key(|&v| (g.degree(v), v))?;
    let mut search = CycleSearch {
        g,
        order: neighbor_orders(g),
        start,
        path: vec![start],
    };
    let all = g.vertex_mask() & !bit(start);
    if search.extend(start, all) {
        Some(Certificate::cycle(search.path))
    } else {
        None
    }
}

struct PathSearch<'a> {
    g: &'a Graph,
    order: Vec<Vec<usize>>,
    path: Vec<usize>,
}

impl PathSearch<'_> {
    fn extend(&mut self, current: usize, unvisited: u64, end: Option<usize>) -> bool {
        let adj = self.g.adjacency();
        if unvisited == 0 {
            return end.is_none_or(|e| e == current);
        }
        // Every vertex still to be threaded needs two usable neighbors,
        // except the final endpoint, which needs one.
        let usable = unvisited | bit(current);
        let mut thin = 0;
        for w in Bits(unvisited) {
            match (adj[w] & usable).count_ones() {
                0 => return false,
                1 => {
                    if end.is_some_and(|e| e != w) {
                        return false;
                    }
                    thin += 1;
                    if thin > 1 {
                        return false;
                    }
                }
                _ => {}
            }
        }
        if !self.g.is_connected_within(usable) {
            return false;
        }
        for i in 0..self.order[current].len() {
            let next = self.order[current][i];
            if unvisited & bit(next) == 0 {
                continue;
            }
            if end == Some(next) && unvisited != bit(next) {
                continue;
            }
            self.path.push(next);
            if self.extend(next, unvisited & !bit(next), end) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

fn path_from(g: &Graph, start: usize, end: Option<usize>, order: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut search = PathSearch {
        g,
        order: order.to_vec(),
        path: vec![start],
    };
    let unvisited = g.vertex_mask() & !bit(start);
    search
        .extend(start, unvisited, end)
        .then_some(search.path)
}

/// A Hamilton path of `g`, or `None` when none exists. The empty graph and
/// `K1` are traceable.
pub fn find_hamilton_path(g: &Graph) -> Option<Certificate> {
    let n = g.order();
    if n <= 1 {
        return Some(Certificate::path((0..n).collect()));
    }
    if !g.is_connected() {
        return None;
    }
    let leaves: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 1).collect();
    if leaves.len() > 2 {
        return None;
    }
    let order = neighbor_orders(g);
    // A degree-one vertex can only be an endpoint.
    let starts: Vec<usize> = if let Some(&leaf) = leaves.first() {
        vec![leaf]
    } else {
        let mut all: Vec<usize> = (0..n).collect();
        all.sort_by_key(|&v| (g.degree(v), v));
        all
    };
    starts
        .into_iter()
        .find_map(|s| path_from(g, s, None, &order))
        .map(Certificate::path)
}

/// A Hamilton path of `g` that starts at `start` (and ends at `end`, if
/// given).
pub fn find_hamilton_path_between(g: &Graph, start: usize, end: Option<usize>) -> Option<Vec<usize>> {
    let n = g.order();
    if start >= n || end.is_some_and(|e| e >= n || (e == start && n > 1)) {
        return None;
    }
    if n == 1 {
        return Some(vec![start]);
    }
    if !g.is_connected() {
        return None;
    }
    path_from(g, start, end, &neighbor_orders(g))
}

pub fn is_hamiltonian(g: &Graph) -> bool {
    find_hamilton_cycle(g).is_some()
}

pub fn is_traceable(g: &Graph) -> bool {
    find_hamilton_path(g).is_some()
}

pub const ORACLE_MAX_VERTICES: usize = 24;

/// Hamiltonicity by dynamic programming over (visited set, endpoint)
/// states, with paths anchored at vertex 0.
pub fn hamiltonicity_oracle(g: &Graph) -> Result<bool, SizeLimitError> {
    let n = g.order();
    if n > ORACLE_MAX_VERTICES {
        return Err(SizeLimitError {
            routine: "hamiltonicity_oracle",
            limit: ORACLE_MAX_VERTICES,
            n,
        });
    }
    if n < 3 {
        return Ok(false);
    }
    let adj = g.adjacency();
    // reach[s] = endpoints e such that a path from 0 covers exactly
    // {0} ∪ {v+1 : v in s} and ends at e. Bit 0 of s is vertex 1.
    let rest = n - 1;
    let mut reach = vec![0u32; 1 << rest];
    for v in 1..n {
        if adj[0] & bit(v) != 0 {
            reach[1 << (v - 1)] = 1 << v;
        }
    }
    for s in 1usize..(1 << rest) {
        let ends = reach[s];
        if ends == 0 {
            continue;
        }
        let mut forward = 0u64;
        for e in Bits(ends as u64) {
            forward |= adj[e];
        }
        let fresh = (forward >> 1) & !(s as u64) & ((1u64 << rest) - 1);
        for v in Bits(fresh) {
            reach[s | (1 << v)] |= 1 << (v + 1);
        }
    }
    let full = reach[(1 << rest) - 1] as u64;
    Ok(full & adj[0] != 0)
}

pub const CYCLE_EXTENDABLE_MAX_VERTICES: usize = 16;

/// For every vertex set, whether some cycle passes through exactly it.
fn cyclable_sets(g: &Graph) -> Vec<bool> {
    let n = g.order();
    let adj = g.adjacency();
    let mut cyclable = vec![false; 1 << n];
    for s in 0..n {
        // Paths starting at s through vertices above s.
        let above = g.vertex_mask() & !((bit(s) << 1) - 1);
        let width = n - s - 1;
        let mut reach = vec![0u64; 1 << width];
        // Index bit i stands for vertex s+1+i.
        for v in Bits(adj[s] & above) {
            reach[1 << (v - s - 1)] = bit(v);
        }
        for idx in 1usize..(1 << width) {
            let ends = reach[idx];
            if ends == 0 {
                continue;
            }
            let members = (idx as u64) << (s + 1);
            if idx.count_ones() >= 2 && ends & adj[s] != 0 {
                cyclable[(members | bit(s)) as usize] = true;
            }
            let mut forward = 0u64;
            for e in Bits(ends) {
                forward |= adj[e];
            }
            for v in Bits(forward & above & !members) {
                reach[idx | (1 << (v - s - 1))] |= bit(v);
            }
        }
    }
    cyclable
}

/// Every vertex lies on a triangle and every non-spanning cycle's vertex set
/// extends by one vertex to the vertex set of another cycle.
pub fn is_fully_cycle_extendable(g: &Graph) -> Result<bool, SizeLimitError> {
    let n = g.order();
    if n > CYCLE_EXTENDABLE_MAX_VERTICES {
        return Err(SizeLimitError {
            routine: "is_fully_cycle_extendable",
            limit: CYCLE_EXTENDABLE_MAX_VERTICES,
            n,
        });
    }
    let adj = g.adjacency();
    let on_triangle = (0..n).all(|v| Bits(adj[v]).any(|w| adj[v] & adj[w] != 0));
    if !on_triangle {
        return Ok(false);
    }
    let cyclable = cyclable_sets(g);
    let all = g.vertex_mask();
    for s in 0..(1u64 << n) {
        if s == all || !cyclable[s as usize] {
            continue;
        }
        let extends = Bits(all & !s).any(|w| cyclable[(s | bit(w)) as usize]);
        if !extends {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn cycle_examples() {
        let c5 = cycle(5);
        let cert = find_hamilton_cycle(&c5).unwrap();
        assert!(verify_certificate(&c5, &cert));
        assert!(find_hamilton_cycle(&complete(2)).is_none());
        assert!(find_hamilton_cycle(&petersen()).is_none());
        assert!(find_hamilton_cycle(&complete_bipartite(3, 3)).is_some());
        assert!(find_hamilton_cycle(&complete_bipartite(2, 3)).is_none());
    }

    #[test]
    fn path_examples() {
        let p4 = path(4);
        let cert = find_hamilton_path(&p4).unwrap();
        assert!(verify_certificate(&p4, &cert));
        let pet = petersen();
        let cert = find_hamilton_path(&pet).unwrap();
        assert!(verify_certificate(&pet, &cert));
        assert!(find_hamilton_path(&Graph::empty(2).unwrap()).is_none());
        assert!(find_hamilton_path(&Graph::empty(1).unwrap()).is_some());
        assert!(find_hamilton_path(&complete_bipartite(1, 3)).is_none());
    }

    #[test]
    fn fixed_endpoints() {
        let p = path(5);
        assert_eq!(find_hamilton_path_between(&p, 0, Some(4)), Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(find_hamilton_path_between(&p, 1, None), None);
        assert_eq!(find_hamilton_path_between(&complete(2), 1, Some(0)), Some(vec![1, 0]));
        assert_eq!(find_hamilton_path_between(&cycle(4), 0, Some(2)), None);
    }

    #[test]
    fn certificate_checks() {
        let c4 = cycle(4);
        assert!(verify_certificate(&c4, &Certificate::cycle(vec![0, 1, 2, 3])));
        assert!(!verify_certificate(&c4, &Certificate::cycle(vec![0, 2, 1, 3])));
        assert!(!verify_certificate(&c4, &Certificate::cycle(vec![0, 1, 2])));
        assert!(!verify_certificate(&c4, &Certificate::cycle(vec![0, 1, 1, 3])));
        let p3 = path(3);
        assert!(verify_certificate(&p3, &Certificate::path(vec![0, 1, 2])));
        assert!(!verify_certificate(&complete(2), &Certificate::cycle(vec![0, 1])));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(hamiltonicity_oracle(&complete_bipartite(3, 3)), Ok(true));
        assert_eq!(hamiltonicity_oracle(&complete_bipartite(2, 3)), Ok(false));
        assert_eq!(hamiltonicity_oracle(&petersen()), Ok(false));
        assert_eq!(hamiltonicity_oracle(&complete(2)), Ok(false));
        assert_eq!(hamiltonicity_oracle(&cycle(24)), Ok(true));
        assert!(hamiltonicity_oracle(&cycle(25)).is_err());
    }

    #[test]
    fn cycle_extendability() {
        assert_eq!(is_fully_cycle_extendable(&complete(4)), Ok(true));
        assert_eq!(is_fully_cycle_extendable(&cycle(5)), Ok(false));
        assert_eq!(is_fully_cycle_extendable(&diamond()), Ok(true));
        assert!(is_fully_cycle_extendable(&path(17)).is_err());
        // Two triangles sharing a vertex: every vertex is on a triangle but
        // neither triangle extends.
        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(is_fully_cycle_extendable(&bowtie), Ok(false));
    }
}
