//! Immutable simple undirected graphs on at most 64 vertices.
//!
//! Every neighbor set is a single `u64` bit mask, so adjacency tests and
//! neighborhood intersections are one machine instruction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub const MAX_VERTICES: usize = 64;

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An edge `{u, v}` stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph { adj: vec![0; n] })
    }

    /// Builds the graph with exactly the listed edges. Repeated pairs and
    /// loops are rejected rather than silently dropped.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if g.adj[a] & bit(b) != 0 {
                return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
            }
            g.adj[a] |= bit(b);
            g.adj[b] |= bit(a);
        }
        Ok(g)
    }

    /// Builds a graph from neighbor masks, validating symmetry and range.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        for (v, &row) in adj.iter().enumerate() {
            if row & !low_mask(n) != 0 {
                let bad = (row & !low_mask(n)).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex: bad, n });
            }
            if row & bit(v) != 0 {
                return Err(GraphError::SelfLoop(v));
            }
            for w in Bits(row) {
                if adj[w] & bit(v) == 0 {
                    return Err(GraphError::Asymmetric(v, w));
                }
            }
        }
        Ok(Graph { adj })
    }

    /// Caller guarantees the mask invariants.
    pub(crate) fn from_adjacency_unchecked(adj: Vec<u64>) -> Self {
        debug_assert!(Graph::from_adjacency(adj.clone()).is_ok());
        Graph { adj }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbor_list(&self, v: usize) -> Vec<usize> {
        Bits(self.adj[v]).collect()
    }

    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.order())
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.order()).flat_map(move |u| {
            Bits(self.adj[u] & !low_mask(u + 1)).map(move |v| Edge { u, v })
        })
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().map(|e| (e.u, e.v)).collect()
    }

    /// Vertices reachable from the lowest vertex of `within` inside `within`.
    pub fn component_of(&self, start: usize, within: u64) -> u64 {
        let mut seen = bit(start) & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Whether the subgraph induced by `within` is connected (empty counts).
    pub fn is_connected_within(&self, within: u64) -> bool {
        if within == 0 {
            return true;
        }
        self.component_of(within.trailing_zeros() as usize, within) == within
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertex_mask())
    }

    /// Connected with no cut vertex, on at least three vertices.
    pub fn is_two_connected(&self) -> bool {
        self.cut_vertex().is_none() && self.order() >= 3 && self.is_connected()
    }

    /// Some vertex whose removal disconnects the graph, if one exists.
    pub fn cut_vertex(&self) -> Option<usize> {
        let all = self.vertex_mask();
        (0..self.order()).find(|&v| !self.is_connected_within(all & !bit(v)))
    }

    /// `perm[v]` is the new label of vertex `v`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order());
        let mut adj = vec![0u64; self.order()];
        for (v, &row) in self.adj.iter().enumerate() {
            for w in Bits(row) {
                adj[perm[v]] |= bit(perm[w]);
            }
        }
        Graph { adj }
    }

    /// Subgraph induced by `vertices`; new vertex `i` is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let n = self.order();
        let mut position = [usize::MAX; MAX_VERTICES];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if position[v] != usize::MAX {
                return Err(GraphError::DuplicateVertex(v));
            }
            position[v] = i;
        }
        Ok((self.induced_by_positions(vertices, &position), vertices.to_vec()))
    }

    /// Subgraph induced by a vertex mask, vertices kept in ascending order.
    pub fn induced_by_mask(&self, mask: u64) -> (Graph, Vec<usize>) {
        let vertices: Vec<usize> = Bits(mask & self.vertex_mask()).collect();
        let mut position = [usize::MAX; MAX_VERTICES];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let g = self.induced_by_positions(&vertices, &position);
        (g, vertices)
    }

    fn induced_by_positions(&self, vertices: &[usize], position: &[usize; MAX_VERTICES]) -> Graph {
        let adj = vertices
            .iter()
            .map(|&v| {
                Bits(self.adj[v])
                    .filter(|&w| position[w] != usize::MAX)
                    .fold(0u64, |acc, w| acc | bit(position[w]))
            })
            .collect();
        Graph { adj }
    }

    /// Adds a vertex adjacent to every existing vertex.
    pub fn with_apex(&self) -> Result<Graph, GraphError> {
        let n = self.order();
        if n + 1 > MAX_VERTICES {
            return Err(GraphError::TooManyVertices {
                n: n + 1,
                max: MAX_VERTICES,
            });
        }
        let mut adj: Vec<u64> = self.adj.iter().map(|r| r | bit(n)).collect();
        adj.push(low_mask(n));
        Ok(Graph { adj })
    }

    /// Number of triangles.
    pub fn triangle_count(&self) -> usize {
        self.edges()
            .map(|e| (self.adj[e.u] & self.adj[e.v]).count_ones() as usize)
            .sum::<usize>()
            / 3
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edge_list())
    }
}

/// Small named graphs used throughout the tests and examples.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(n, &edges).expect("valid complete graph")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("valid cycle")
    }

    /// K4 minus the edge 2-3: vertices 0 and 1 have degree 3.
    pub fn diamond() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).expect("valid diamond")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges: Vec<_> = (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(a + b, &edges).expect("valid complete bipartite graph")
    }

    /// K_{2,2,2}.
    pub fn octahedron() -> Graph {
        let edges: Vec<_> = (0..6)
            .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
            .filter(|&(u, v)| v != u + 3)
            .collect();
        Graph::from_edges(6, &edges).expect("valid octahedron")
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("valid Petersen graph")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn builds_triangle() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.size(), 3);
        assert_eq!(g, complete(3));
    }

    #[test]
    fn single_vertex() {
        let g = Graph::from_edges(1, &[]).unwrap();
        assert_eq!((g.order(), g.size()), (1, 0));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert!(matches!(
            Graph::empty(65),
            Err(GraphError::TooManyVertices { .. })
        ));
    }

    #[test]
    fn from_adjacency_validates() {
        assert!(Graph::from_adjacency(vec![0b10, 0b01]).is_ok());
        assert_eq!(
            Graph::from_adjacency(vec![0b10, 0b00]),
            Err(GraphError::Asymmetric(0, 1))
        );
        assert_eq!(
            Graph::from_adjacency(vec![0b1]),
            Err(GraphError::SelfLoop(0))
        );
    }

    #[test]
    fn induced_subgraphs() {
        let (k3, map) = complete(4).induced_subgraph(&[0, 2, 3]).unwrap();
        assert_eq!(k3, complete(3));
        assert_eq!(map, vec![0, 2, 3]);
        let (k2, _) = cycle(5).induced_subgraph(&[1, 2]).unwrap();
        assert_eq!(k2, complete(2));
        let (two, _) = diamond().induced_subgraph(&[2, 3]).unwrap();
        assert_eq!((two.order(), two.size()), (2, 0));
        assert!(matches!(
            complete(3).induced_subgraph(&[0, 5]),
            Err(GraphError::VertexOutOfRange { vertex: 5, n: 3 })
        ));
    }

    #[test]
    fn connectivity() {
        assert!(cycle(5).is_two_connected());
        assert!(!path(4).is_two_connected());
        assert_eq!(path(3).cut_vertex(), Some(1));
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
    }

    #[test]
    fn triangles() {
        assert_eq!(complete(4).triangle_count(), 4);
        assert_eq!(diamond().triangle_count(), 2);
        assert_eq!(petersen().triangle_count(), 0);
        assert_eq!(octahedron().triangle_count(), 8);
    }
}
