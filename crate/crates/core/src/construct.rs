//! Gluing graphs along suitable edges, and the triangle chain that grows a
//! nonhamiltonian locally linear graph one vertex and two edges at a time.
//!
//! An edge `uv` is suitable when `G[N(u)]` has a Hamilton path ending at `v`
//! and `G[N(v)]` has one ending at `u`. Identifying a suitable edge of one
//! graph with a suitable edge of another keeps local traceability, and a
//! hamiltonian result forces both parts to be hamiltonian.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::canonical_form;
use crate::graph::{bit, named, Edge, Graph, MAX_VERTICES};
use crate::hamilton::{find_hamilton_path_between, is_hamiltonian};
use crate::local::{first_nonlinear_vertex, is_locally_traceable};

/// Chain graphs up to this order are re-checked for hamiltonicity directly.
pub const DIRECT_HAMILTONICITY_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("edge {0} is not suitable")]
    NotSuitable(Edge),
    #[error("identification needs both graphs of order at least 3")]
    TooSmall,
    #[error("result would have {0} vertices, more than {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("chain step {step} failed: {property}")]
    StepFailed { step: usize, property: String },
}

/// A suitable edge together with the two neighborhood Hamilton paths that
/// make it suitable, in the owning graph's vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuitableEdge {
    pub edge: Edge,
    /// Hamilton path of `G[N(u)]` ending at `v`.
    pub path_at_u: Vec<usize>,
    /// Hamilton path of `G[N(v)]` ending at `u`.
    pub path_at_v: Vec<usize>,
}

fn is_neighborhood_path_ending(g: &Graph, center: usize, path: &[usize], end: usize) -> bool {
    let mut seen = 0u64;
    for &x in path {
        if x >= g.order() || seen & bit(x) != 0 {
            return false;
        }
        seen |= bit(x);
    }
    seen == g.neighbors(center)
        && path.last() == Some(&end)
        && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

impl SuitableEdge {
    /// Re-checks both witness paths against `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let Edge { u, v } = self.edge;
        v < g.order()
            && g.has_edge(u, v)
            && is_neighborhood_path_ending(g, u, &self.path_at_u, v)
            && is_neighborhood_path_ending(g, v, &self.path_at_v, u)
    }
}

/// Hamilton path of `G[N(center)]` that ends at `end`, in `g`'s ids.
fn neighborhood_path_ending_at(g: &Graph, center: usize, end: usize) -> Option<Vec<usize>> {
    let (sub, ids) = g.induced_by_mask(g.neighbors(center));
    let local_end = ids.iter().position(|&x| x == end)?;
    let mut path = find_hamilton_path_between(&sub, local_end, None)?;
    path.reverse();
    Some(path.into_iter().map(|i| ids[i]).collect())
}

pub fn suitable_edge(g: &Graph, e: Edge) -> Option<SuitableEdge> {
    if !g.has_edge(e.u, e.v) {
        return None;
    }
    Some(SuitableEdge {
        edge: e,
        path_at_u: neighborhood_path_ending_at(g, e.u, e.v)?,
        path_at_v: neighborhood_path_ending_at(g, e.v, e.u)?,
    })
}

/// Every suitable edge of `g`, in edge order, with witnesses.
pub fn suitable_edges(g: &Graph) -> Vec<SuitableEdge> {
    g.edges().filter_map(|e| suitable_edge(g, e)).collect()
}

/// How the second graph's edge lands on the first graph's edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `u2 -> u1`, `v2 -> v1`.
    Aligned,
    /// `u2 -> v1`, `v2 -> u1`.
    Crossed,
}

/// Glues `g2` onto `g1` along the given suitable edges. The first graph keeps
/// its vertex ids; the remaining vertices of `g2` follow in ascending order.
pub fn edge_identify(
    g1: &Graph,
    e1: &SuitableEdge,
    g2: &Graph,
    e2: &SuitableEdge,
    orientation: Orientation,
) -> Result<Graph, ConstructError> {
    if g1.order() < 3 || g2.order() < 3 {
        return Err(ConstructError::TooSmall);
    }
    if !e1.is_valid_for(g1) {
        return Err(ConstructError::NotSuitable(e1.edge));
    }
    if !e2.is_valid_for(g2) {
        return Err(ConstructError::NotSuitable(e2.edge));
    }
    let n1 = g1.order();
    let order = n1 + g2.order() - 2;
    if order > MAX_VERTICES {
        return Err(ConstructError::TooLarge(order));
    }
    let (to_u, to_v) = match orientation {
        Orientation::Aligned => (e1.edge.u, e1.edge.v),
        Orientation::Crossed => (e1.edge.v, e1.edge.u),
    };
    let mut map = vec![0; g2.order()];
    let mut next = n1;
    for (x, slot) in map.iter_mut().enumerate() {
        *slot = if x == e2.edge.u {
            to_u
        } else if x == e2.edge.v {
            to_v
        } else {
            next += 1;
            next - 1
        };
    }
    let mut edges = g1.edge_list();
    let glued = Edge::new(to_u, to_v);
    edges.extend(
        g2.edges()
            .map(|e| (map[e.u], map[e.v]))
            .filter(|&(a, b)| Edge::new(a, b) != glued),
    );
    Ok(Graph::from_edges(order, &edges).expect("identification yields a simple graph"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpec {
    pub seed: Graph,
    pub start_edge: Edge,
    pub steps: usize,
}

/// One validated graph of a triangle chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLink {
    pub step: usize,
    pub graph: Graph,
    /// Edge of the previous graph the new triangle was glued onto.
    pub attached_edge: Edge,
    pub new_vertex: usize,
    /// `None` above [`DIRECT_HAMILTONICITY_LIMIT`], where it is not re-checked.
    pub hamiltonian: Option<bool>,
}

fn require_nonhamiltonian_locally_linear(seed: &Graph) -> Result<(), ConstructError> {
    if seed.order() < 3 || !seed.is_connected() {
        return Err(ConstructError::Precondition(
            "seed must be connected of order at least 3".into(),
        ));
    }
    if let Some(v) = first_nonlinear_vertex(seed) {
        return Err(ConstructError::Precondition(format!(
            "seed is not locally linear at vertex {v}"
        )));
    }
    if is_hamiltonian(seed) {
        return Err(ConstructError::Precondition("seed is hamiltonian".into()));
    }
    Ok(())
}

fn step_failure(step: usize, property: impl Into<String>) -> ConstructError {
    ConstructError::StepFailed {
        step,
        property: property.into(),
    }
}

/// Glues `steps` triangles one after another. The first goes onto
/// `start_edge`; each later one goes onto the edge joining the degree-2 and
/// degree-3 vertices of the triangle added just before. Every produced graph
/// is checked for connectivity, local linearity and the order/size increments,
/// and for nonhamiltonicity while its order is at most
/// [`DIRECT_HAMILTONICITY_LIMIT`].
pub fn attach_triangle_chain(spec: &ChainSpec) -> Result<Vec<ChainLink>, ConstructError> {
    require_nonhamiltonian_locally_linear(&spec.seed)?;
    if spec.seed.order() + spec.steps > MAX_VERTICES {
        return Err(ConstructError::TooLarge(spec.seed.order() + spec.steps));
    }
    let triangle = named::complete(3);
    let triangle_edge =
        suitable_edge(&triangle, Edge::new(0, 1)).expect("every edge of K3 is suitable");

    let mut links = Vec::with_capacity(spec.steps);
    let mut current = spec.seed.clone();
    let mut edge = spec.start_edge;
    for step in 1..=spec.steps {
        let suitable = suitable_edge(&current, edge)
            .ok_or_else(|| step_failure(step, format!("edge {edge} is not suitable")))?;
        let next = edge_identify(&current, &suitable, &triangle, &triangle_edge, Orientation::Aligned)
            .map_err(|e| step_failure(step, e.to_string()))?;
        let x = current.order();

        if next.order() != current.order() + 1 || next.size() != current.size() + 2 {
            return Err(step_failure(step, "order/size increment"));
        }
        if !next.is_connected() {
            return Err(step_failure(step, "connected"));
        }
        if let Some(v) = first_nonlinear_vertex(&next) {
            return Err(step_failure(step, format!("locally linear (vertex {v})")));
        }
        let hamiltonian = (next.order() <= DIRECT_HAMILTONICITY_LIMIT).then(|| is_hamiltonian(&next));
        if hamiltonian == Some(true) {
            return Err(step_failure(step, "nonhamiltonian"));
        }

        // The new triangle is {edge.u, edge.v, x}; x has degree 2.
        let three = [edge.u, edge.v]
            .into_iter()
            .filter(|&w| next.degree(w) == 3)
            .min();
        links.push(ChainLink {
            step,
            graph: next.clone(),
            attached_edge: edge,
            new_vertex: x,
            hamiltonian,
        });
        current = next;
        if step < spec.steps {
            let w = three.ok_or_else(|| {
                step_failure(step + 1, "no degree-3 vertex on the last added triangle")
            })?;
            edge = Edge::new(w, x);
        }
    }
    Ok(links)
}

/// All 1-edges of `seed` (in canonical order) from which a three-step chain
/// validates, each with the orientation that worked first.
pub fn chain_start_candidates(seed: &Graph) -> Result<Vec<Edge>, ConstructError> {
    require_nonhamiltonian_locally_linear(seed)?;
    let position = canonical_form(seed).labeling().to_vec();
    let mut edges: Vec<SuitableEdge> = suitable_edges(seed);
    edges.sort_by_key(|s| {
        let (a, b) = (position[s.edge.u], position[s.edge.v]);
        (a.min(b), a.max(b))
    });
    let steps = 3.min(MAX_VERTICES - seed.order());
    Ok(edges
        .into_iter()
        .filter(|s| {
            attach_triangle_chain(&ChainSpec {
                seed: seed.clone(),
                start_edge: s.edge,
                steps,
            })
            .is_ok()
        })
        .map(|s| s.edge)
        .collect())
}

/// The canonically least suitable edge of `seed` from which a three-step
/// chain validates.
pub fn find_chain_start(seed: &Graph) -> Result<Option<Edge>, ConstructError> {
    Ok(chain_start_candidates(seed)?.into_iter().next())
}

/// Whether `g` qualifies as an input to identification.
pub fn is_identifiable(g: &Graph) -> bool {
    g.order() >= 3 && is_locally_traceable(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::graph::named::*;
    use crate::local::is_locally_linear;

    #[test]
    fn triangle_edges_are_all_suitable() {
        let s = suitable_edges(&complete(3));
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|e| e.is_valid_for(&complete(3))));
    }

    #[test]
    fn diamond_suitable_edges_are_its_one_edges() {
        let d = diamond();
        let edges: Vec<Edge> = suitable_edges(&d).into_iter().map(|s| s.edge).collect();
        assert_eq!(edges.len(), 4);
        assert!(!edges.contains(&Edge::new(0, 1)));
    }

    #[test]
    fn two_triangles_make_a_diamond() {
        let k3 = complete(3);
        let e = suitable_edge(&k3, Edge::new(0, 1)).unwrap();
        let d = edge_identify(&k3, &e, &k3, &e, Orientation::Aligned).unwrap();
        assert_eq!((d.order(), d.size()), (4, 5));
        assert!(are_isomorphic(&d, &diamond()));
    }

    #[test]
    fn diamond_plus_triangle() {
        let d = diamond();
        let k3 = complete(3);
        let e1 = suitable_edge(&d, Edge::new(0, 2)).unwrap();
        let e2 = suitable_edge(&k3, Edge::new(0, 1)).unwrap();
        let a = edge_identify(&d, &e1, &k3, &e2, Orientation::Aligned).unwrap();
        let b = edge_identify(&d, &e1, &k3, &e2, Orientation::Crossed).unwrap();
        for g in [&a, &b] {
            assert_eq!((g.order(), g.size()), (5, 7));
            assert!(is_locally_traceable(g));
            assert!(is_locally_linear(g));
        }
    }

    #[test]
    fn rejects_unsuitable_and_oversized() {
        let d = diamond();
        let k3 = complete(3);
        let e2 = suitable_edge(&k3, Edge::new(0, 1)).unwrap();
        let fake = SuitableEdge {
            edge: Edge::new(0, 1),
            path_at_u: vec![2, 1, 3],
            path_at_v: vec![2, 0, 3],
        };
        assert_eq!(
            edge_identify(&d, &fake, &k3, &e2, Orientation::Aligned),
            Err(ConstructError::NotSuitable(Edge::new(0, 1)))
        );
        assert_eq!(
            edge_identify(&complete(2), &e2, &k3, &e2, Orientation::Aligned),
            Err(ConstructError::TooSmall)
        );
        let big = path(40);
        let fan = {
            let mut edges = big.edge_list();
            edges.extend((0..40).map(|v| (v, 40)));
            Graph::from_edges(41, &edges).unwrap()
        };
        let e = suitable_edge(&fan, Edge::new(0, 40)).unwrap();
        assert_eq!(
            edge_identify(&fan, &e, &fan, &e, Orientation::Aligned),
            Err(ConstructError::TooLarge(80))
        );
    }

    #[test]
    fn chain_rejects_hamiltonian_seed() {
        let spec = ChainSpec {
            seed: complete(3),
            start_edge: Edge::new(0, 1),
            steps: 2,
        };
        assert!(matches!(
            attach_triangle_chain(&spec),
            Err(ConstructError::Precondition(_))
        ));
        assert!(matches!(
            find_chain_start(&complete(3)),
            Err(ConstructError::Precondition(_))
        ));
    }
}
