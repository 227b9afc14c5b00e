//! Canonical labeling by partition refinement and individualization.
//!
//! The vertex partition is refined to an equitable one, then a non-singleton
//! cell is individualized vertex by vertex until every cell is a singleton.
//! Each discrete partition is a labeling; the canonical one is the labeling
//! whose relabeled graph has the lexicographically least graph6 bit string.
//! Leaves that tie with the current best yield automorphisms, which prune
//! sibling branches lying in the same orbit.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::graph::{bit, low_mask, Bits, Graph};
use crate::graph6;

/// Canonical bytes (the graph6 text of the canonically relabeled graph) plus
/// the labeling that produced them. Equality and ordering use the bytes only.
#[derive(Clone)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
    labeling: Vec<usize>,
}

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn as_graph6(&self) -> &str {
        std::str::from_utf8(&self.bytes).expect("graph6 is ASCII")
    }

    /// `labeling()[v]` is the canonical position of input vertex `v`.
    pub fn labeling(&self) -> &[usize] {
        &self.labeling
    }

    pub fn graph(&self) -> Graph {
        graph6::parse_graph6(self.as_graph6()).expect("canonical bytes are valid graph6")
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.bytes == other.bytes
    }
}

impl Eq for CanonicalForm {}

impl Hash for CanonicalForm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bytes.hash(state)
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bytes.cmp(&other.bytes)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_graph6())
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let lab = canonical_labeling(g.adjacency());
    CanonicalForm {
        bytes: graph6::encode(&lab.adjacency),
        labeling: lab.position,
    }
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.size() != h.size() {
        return false;
    }
    let mut dg: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.order()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    canonical_labeling(g.adjacency()).adjacency == canonical_labeling(h.adjacency()).adjacency
}

/// Result of [`canonical_labeling`].
#[derive(Debug, Clone)]
pub(crate) struct Labeling {
    /// `position[v]` is the canonical label of input vertex `v`.
    pub position: Vec<usize>,
    /// Adjacency masks of the relabeled graph.
    pub adjacency: Vec<u64>,
}

/// Lexicographic comparison of the graph6 bit strings of two same-order
/// adjacency tables.
#[inline]
pub(crate) fn cmp_graph6_bits(a: &[u64], b: &[u64]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    for j in 1..a.len() {
        let m = low_mask(j);
        let x = (a[j] & m).reverse_bits();
        let y = (b[j] & m).reverse_bits();
        if x != y {
            return x.cmp(&y);
        }
    }
    Ordering::Equal
}

pub(crate) fn canonical_labeling(adj: &[u64]) -> Labeling {
    let n = adj.len();
    if n == 0 {
        return Labeling {
            position: Vec::new(),
            adjacency: Vec::new(),
        };
    }
    let mut cells = vec![low_mask(n)];
    refine(adj, &mut cells, vec![low_mask(n)]);
    let mut search = Search {
        adj,
        best: None,
        automorphisms: Vec::new(),
        prefix: Vec::new(),
        scratch: vec![0; n],
        unwind_to: None,
    };
    search.descend(cells);
    let best = search.best.expect("at least one leaf");
    let mut position = vec![0; n];
    for (i, &v) in best.order.iter().enumerate() {
        position[v] = i;
    }
    Labeling {
        position,
        adjacency: best.adjacency,
    }
}

/// Splits cells until every vertex in a cell has the same number of
/// neighbors in every cell. Cells stay ordered; pieces are ordered by
/// ascending neighbor count, so the result is labeling-invariant.
fn refine(adj: &[u64], cells: &mut Vec<u64>, mut queue: Vec<u64>) {
    let mut head = 0;
    let mut groups: Vec<(u32, u64)> = Vec::with_capacity(8);
    while head < queue.len() {
        let splitter = queue[head];
        head += 1;
        let mut i = 0;
        while i < cells.len() {
            let cell = cells[i];
            if cell & (cell - 1) == 0 {
                i += 1;
                continue;
            }
            groups.clear();
            for v in Bits(cell) {
                let c = (adj[v] & splitter).count_ones();
                match groups.binary_search_by_key(&c, |g| g.0) {
                    Ok(k) => groups[k].1 |= bit(v),
                    Err(k) => groups.insert(k, (c, bit(v))),
                }
            }
            if groups.len() == 1 {
                i += 1;
                continue;
            }
            let pieces = groups.len();
            cells.splice(i..=i, groups.iter().map(|g| g.1));
            queue.extend(groups.iter().map(|g| g.1));
            i += pieces;
        }
        if cells.len() == adj.len() {
            return;
        }
    }
}

struct Leaf {
    order: Vec<usize>,
    /// Individualized vertices on the way to this leaf.
    path: Vec<usize>,
    adjacency: Vec<u64>,
}

struct Search<'a> {
    adj: &'a [u64],
    best: Option<Leaf>,
    /// Stored as image arrays: `a[v]` is the image of `v`.
    automorphisms: Vec<Vec<usize>>,
    prefix: Vec<usize>,
    scratch: Vec<u64>,
    /// Set when a leaf ties with the best one: the subtree below this depth
    /// is an automorphic image of an explored one.
    unwind_to: Option<usize>,
}

const MAX_STORED_AUTOMORPHISMS: usize = 128;

impl Search<'_> {
    fn descend(&mut self, cells: Vec<u64>) {
        let n = self.adj.len();
        if cells.len() == n {
            self.leaf(&cells);
            return;
        }
        let target = cells
            .iter()
            .position(|c| c & (c - 1) != 0)
            .expect("non-discrete partition has a non-singleton cell");
        let candidates = cells[target];
        let mut explored = 0u64;
        for v in Bits(candidates) {
            if explored != 0 && self.orbit_of(v, candidates) & explored != 0 {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(bit(v));
            child.push(candidates & !bit(v));
            child.extend_from_slice(&cells[target + 1..]);
            refine(self.adj, &mut child, vec![bit(v)]);
            self.prefix.push(v);
            self.descend(child);
            self.prefix.pop();
            explored |= bit(v);
            match self.unwind_to {
                Some(d) if d == self.prefix.len() => self.unwind_to = None,
                Some(_) => return,
                None => {}
            }
        }
    }

    /// Orbit of `v` under the stored automorphisms that fix the current
    /// prefix pointwise, restricted to `within`.
    fn orbit_of(&self, v: usize, within: u64) -> u64 {
        let usable: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|a| self.prefix.iter().all(|&p| a[p] == p))
            .collect();
        let mut orbit = bit(v);
        loop {
            let mut grown = orbit;
            for a in &usable {
                for w in Bits(orbit) {
                    grown |= bit(a[w]);
                }
            }
            if grown == orbit {
                return orbit & within;
            }
            orbit = grown;
        }
    }

    fn leaf(&mut self, cells: &[u64]) {
        let n = self.adj.len();
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut position = [0usize; 64];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        for (i, &v) in order.iter().enumerate() {
            self.scratch[i] = Bits(self.adj[v]).fold(0u64, |acc, w| acc | bit(position[w]));
        }
        let ordering = match &self.best {
            None => Ordering::Less,
            Some(best) => cmp_graph6_bits(&self.scratch, &best.adjacency),
        };
        match ordering {
            Ordering::Less => {
                self.best = Some(Leaf {
                    order,
                    path: self.prefix.clone(),
                    adjacency: self.scratch.clone(),
                });
            }
            Ordering::Equal => {
                let best = self.best.as_ref().expect("equal implies a best leaf");
                let common = best
                    .path
                    .iter()
                    .zip(&self.prefix)
                    .take_while(|(a, b)| a == b)
                    .count();
                if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS {
                    let image: Vec<usize> = (0..n).map(|v| best.order[position[v]]).collect();
                    self.automorphisms.push(image);
                }
                self.unwind_to = Some(common);
            }
            Ordering::Greater => {}
        }
    }
}
