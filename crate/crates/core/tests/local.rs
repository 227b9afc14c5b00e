mod common;

use std::collections::BTreeSet;

use common::random_graph;
use loclin::construct::suitable_edges;
use loclin::local::{
    check_local_linear_invariants, edge_triangle_classes, is_locally_linear, is_locally_traceable,
};
use loclin::search::{collect_locally_linear, SearchConstraints, SearchOptions};
use loclin::{emit_graph6, Edge, Graph};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn corpus(max_n: usize) -> Vec<Graph> {
    (3..=max_n)
        .flat_map(|n| {
            collect_locally_linear(&SearchConstraints::new(n), &SearchOptions::default())
                .unwrap()
                .1
        })
        .collect()
}

fn one_edges(g: &Graph) -> BTreeSet<Edge> {
    edge_triangle_classes(g)
        .into_iter()
        .filter(|&(_, t)| t == 1)
        .map(|(e, _)| e)
        .collect()
}

#[test]
fn invariants_hold_on_small_corpus() {
    for g in corpus(9) {
        let r = check_local_linear_invariants(&g);
        assert!(r.all_pass(), "{}: {:?}", emit_graph6(&g), r.failures());
    }
}

#[test]
fn suitable_edges_are_the_one_edges() {
    for g in corpus(9) {
        let suitable: BTreeSet<Edge> = suitable_edges(&g).into_iter().map(|s| s.edge).collect();
        assert_eq!(suitable, one_edges(&g), "{}", emit_graph6(&g));
    }
}

#[test]
fn edges_at_degree_two_vertices_are_suitable() {
    let mut rng = StdRng::seed_from_u64(9);
    let mut checked = 0;
    while checked < 300 {
        let n = rng.gen_range(3..=9);
        let g = random_graph(&mut rng, n, 0.55);
        if !is_locally_traceable(&g) {
            continue;
        }
        let suitable: BTreeSet<Edge> = suitable_edges(&g).into_iter().map(|s| s.edge).collect();
        for v in (0..n).filter(|&v| g.degree(v) == 2) {
            for w in g.neighbor_list(v) {
                assert!(suitable.contains(&Edge::new(v, w)), "{}", emit_graph6(&g));
            }
        }
        checked += 1;
    }
}

#[test]
fn invariant_failures_are_reported() {
    // Two triangles sharing a vertex: locally linear fails at the shared vertex.
    let bowtie = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
    assert!(!is_locally_linear(&bowtie));
    let r = check_local_linear_invariants(&bowtie);
    assert!(!r.all_pass());
    assert!(r.checks.is_empty());
}
