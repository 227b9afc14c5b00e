//! Local structure: induced neighborhoods, triangle counts per edge, and the
//! invariant suite every connected locally linear graph must satisfy.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::SizeLimitError;
use crate::graph::{bit, Bits, Edge, Graph};
use crate::hamilton::{find_hamilton_cycle, find_hamilton_path};

/// The neighbors of `center` listed along the induced path they form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodPath {
    pub center: usize,
    pub order: Vec<usize>,
}

impl NeighborhoodPath {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn endpoints(&self) -> Option<(usize, usize)> {
        Some((*self.order.first()?, *self.order.last()?))
    }

    /// Consecutive pairs `(v_i, v_{i+1})`.
    pub fn consecutive_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.order.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Walks the induced path through `within`, if `within` induces one.
/// Zero or one vertices count as a path.
pub(crate) fn induced_path_order(adj: &[u64], within: u64) -> Option<Vec<usize>> {
    let count = within.count_ones() as usize;
    if count <= 1 {
        return Some(Bits(within).collect());
    }
    let mut endpoint = None;
    let mut ends = 0;
    for v in Bits(within) {
        match (adj[v] & within).count_ones() {
            1 => {
                ends += 1;
                endpoint.get_or_insert(v);
            }
            2 => {}
            _ => return None,
        }
    }
    if ends != 2 {
        return None;
    }
    let mut order = Vec::with_capacity(count);
    let mut prev = usize::MAX;
    let mut cur = endpoint?;
    loop {
        order.push(cur);
        let next = adj[cur] & within & !bit(cur) & if prev == usize::MAX { u64::MAX } else { !bit(prev) };
        if next == 0 {
            break;
        }
        prev = cur;
        cur = next.trailing_zeros() as usize;
    }
    // A path plus disjoint cycles also has two degree-one vertices.
    (order.len() == count).then_some(order)
}

pub fn neighborhood_path(g: &Graph, v: usize) -> Option<NeighborhoodPath> {
    induced_path_order(g.adjacency(), g.neighbors(v)).map(|order| NeighborhoodPath { center: v, order })
}

/// First vertex whose neighborhood does not induce a path.
pub fn first_nonlinear_vertex(g: &Graph) -> Option<usize> {
    (0..g.order()).find(|&v| induced_path_order(g.adjacency(), g.neighbors(v)).is_none())
}

pub fn is_locally_linear(g: &Graph) -> bool {
    first_nonlinear_vertex(g).is_none()
}

pub fn is_locally_traceable(g: &Graph) -> bool {
    (0..g.order()).all(|v| find_hamilton_path(&g.induced_by_mask(g.neighbors(v)).0).is_some())
}

pub fn is_locally_hamiltonian(g: &Graph) -> bool {
    (0..g.order()).all(|v| find_hamilton_cycle(&g.induced_by_mask(g.neighbors(v)).0).is_some())
}

/// `t(uv) = |N(u) ∩ N(v)|` for every edge.
pub fn edge_triangle_classes(g: &Graph) -> BTreeMap<Edge, usize> {
    g.edges()
        .map(|e| (e, (g.neighbors(e.u) & g.neighbors(e.v)).count_ones() as usize))
        .collect()
}

pub const INDEPENDENCE_MAX_VERTICES: usize = 32;

pub fn independence_number(g: &Graph) -> Result<usize, SizeLimitError> {
    if g.order() > INDEPENDENCE_MAX_VERTICES {
        return Err(SizeLimitError {
            routine: "independence_number",
            limit: INDEPENDENCE_MAX_VERTICES,
            n: g.order(),
        });
    }
    let mut best = 0;
    max_independent(g.adjacency(), g.vertex_mask(), 0, &mut best);
    Ok(best)
}

fn max_independent(adj: &[u64], candidates: u64, taken: usize, best: &mut usize) {
    if taken + candidates.count_ones() as usize <= *best {
        return;
    }
    if candidates == 0 {
        *best = taken;
        return;
    }
    // A vertex with at most one candidate neighbor can always be taken.
    if let Some(v) = Bits(candidates).find(|&v| (adj[v] & candidates).count_ones() <= 1) {
        max_independent(adj, candidates & !adj[v] & !bit(v), taken + 1, best);
        return;
    }
    let v = Bits(candidates)
        .max_by_key(|&v| (adj[v] & candidates).count_ones())
        .expect("nonempty");
    max_independent(adj, candidates & !adj[v] & !bit(v), taken + 1, best);
    max_independent(adj, candidates & !bit(v), taken, best);
}

/// Witness attached to a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Counterexample {
    Vertex(usize),
    Edge(Edge),
    VertexPair(usize, usize),
    Note(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

impl CheckOutcome {
    fn from(counterexample: Option<Counterexample>) -> Self {
        CheckOutcome {
            pass: counterexample.is_none(),
            counterexample,
        }
    }
}

pub const CHECK_TRIANGLES_PER_EDGE: &str = "triangles_per_edge";
pub const CHECK_ONE_EDGES_PER_VERTEX: &str = "two_one_edges_per_vertex";
pub const CHECK_TRIANGLE_IDENTITY: &str = "triangle_count_identity";
pub const CHECK_MIN_DEGREE: &str = "min_degree_at_least_two";
pub const CHECK_TWO_CONNECTED: &str = "two_connected";
pub const CHECK_NEIGHBORHOOD_INDEPENDENCE: &str = "neighborhood_independence";
pub const CHECK_NONADJACENT_COVER: &str = "nonadjacent_cover";
pub const CHECK_EDGE_DIAMOND: &str = "edge_diamond";

/// Outcome of [`check_local_linear_invariants`]. When the precondition
/// (connected, locally linear, order at least 3) fails, no check is run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub precondition: CheckOutcome,
    pub checks: BTreeMap<String, CheckOutcome>,
}

impl InvariantReport {
    pub fn all_pass(&self) -> bool {
        self.precondition.pass && self.checks.values().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.get(name)
    }

    pub fn failures(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self
            .checks
            .iter()
            .filter(|(_, c)| !c.pass)
            .map(|(k, _)| k.as_str())
            .collect();
        if !self.precondition.pass {
            out.insert(0, "precondition");
        }
        out
    }
}

/// Serializes as one flat object: `{check_name: {pass, counterexample}}`,
/// with the precondition under the key `"precondition"`.
impl Serialize for InvariantReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.checks.len() + 1))?;
        map.serialize_entry("precondition", &self.precondition)?;
        for (k, v) in &self.checks {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

pub fn check_local_linear_invariants(g: &Graph) -> InvariantReport {
    let precondition = if g.order() < 3 {
        Some(Counterexample::Note(format!("order {} is below 3", g.order())))
    } else if !g.is_connected() {
        Some(Counterexample::Note("graph is disconnected".into()))
    } else {
        first_nonlinear_vertex(g).map(Counterexample::Vertex)
    };
    if precondition.is_some() {
        return InvariantReport {
            precondition: CheckOutcome::from(precondition),
            checks: BTreeMap::new(),
        };
    }

    let adj = g.adjacency();
    let n = g.order();
    let t = edge_triangle_classes(g);
    let paths: Vec<NeighborhoodPath> = (0..n)
        .map(|v| neighborhood_path(g, v).expect("precondition ensures paths"))
        .collect();
    let mut checks = BTreeMap::new();
    let mut put = |name: &str, c: Option<Counterexample>| {
        checks.insert(name.to_string(), CheckOutcome::from(c));
    };

    put(
        CHECK_TRIANGLES_PER_EDGE,
        t.iter()
            .find(|(_, &c)| !(1..=2).contains(&c))
            .map(|(e, _)| Counterexample::Edge(*e)),
    );

    put(
        CHECK_ONE_EDGES_PER_VERTEX,
        (0..n)
            .find(|&v| {
                Bits(adj[v])
                    .filter(|&w| (adj[v] & adj[w]).count_ones() == 1)
                    .count()
                    != 2
            })
            .map(Counterexample::Vertex),
    );

    let m = g.size();
    let triangles = g.triangle_count();
    put(
        CHECK_TRIANGLE_IDENTITY,
        (3 * triangles + n != 2 * m || (m as i64 - 2 * n as i64).rem_euclid(3) != 0).then(|| {
            Counterexample::Note(format!("t={triangles}, n={n}, m={m}"))
        }),
    );

    put(
        CHECK_MIN_DEGREE,
        (0..n).find(|&v| g.degree(v) < 2).map(Counterexample::Vertex),
    );

    put(
        CHECK_TWO_CONNECTED,
        g.cut_vertex().map(Counterexample::Vertex),
    );

    put(
        CHECK_NEIGHBORHOOD_INDEPENDENCE,
        (0..n)
            .find(|&u| {
                let nb = g.induced_by_mask(adj[u]).0;
                let alpha = independence_number(&nb).expect("neighborhoods are small");
                alpha > g.degree(u).div_ceil(2)
            })
            .map(Counterexample::Vertex),
    );

    put(CHECK_NONADJACENT_COVER, nonadjacent_cover_violation(g, &paths));
    put(CHECK_EDGE_DIAMOND, edge_diamond_violation(g, &paths));

    InvariantReport {
        precondition: CheckOutcome::from(None),
        checks,
    }
}

/// For `v` not in `N[u]` with `N(v) ⊆ N(u)`, some consecutive pair of
/// `u`'s neighborhood path lies in `N(v)`.
fn nonadjacent_cover_violation(g: &Graph, paths: &[NeighborhoodPath]) -> Option<Counterexample> {
    let adj = g.adjacency();
    for (u, path) in paths.iter().enumerate() {
        let closed = adj[u] | bit(u);
        for v in Bits(g.vertex_mask() & !closed) {
            if adj[v] & !adj[u] != 0 {
                continue;
            }
            let covered = path
                .consecutive_pairs()
                .any(|(a, b)| adj[v] & bit(a) != 0 && adj[v] & bit(b) != 0);
            if !covered {
                return Some(Counterexample::VertexPair(u, v));
            }
        }
    }
    None
}

/// For an edge `xy` with both ends outside `N[u]` and `N({x,y}) ⊆ N(u)`,
/// some consecutive pair `v_i v_{i+1}` makes `{v_i, v_{i+1}, x, y}` a diamond.
fn edge_diamond_violation(g: &Graph, paths: &[NeighborhoodPath]) -> Option<Counterexample> {
    let adj = g.adjacency();
    for (u, path) in paths.iter().enumerate() {
        let closed = adj[u] | bit(u);
        for e in g.edges() {
            if closed & (bit(e.u) | bit(e.v)) != 0 {
                continue;
            }
            let outer = (adj[e.u] | adj[e.v]) & !(bit(e.u) | bit(e.v));
            if outer & !adj[u] != 0 {
                continue;
            }
            let found = path.consecutive_pairs().any(|(a, b)| {
                let quad = bit(a) | bit(b) | bit(e.u) | bit(e.v);
                let edges: u32 = Bits(quad).map(|w| (adj[w] & quad).count_ones()).sum();
                edges == 10
            });
            if !found {
                return Some(Counterexample::Edge(e));
            }
        }
    }
    None
}
