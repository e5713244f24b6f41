//! Brute-force oracles and random instances shared by the integration tests.
#![allow(dead_code)]

use dicut_core::generate::{generate, Family};
use dicut_core::{Capacity, DiGraph, VertexCapGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Value of `∂⁻S` by direct summation over the arc list.
pub fn in_cut(g: &DiGraph, sink: u64) -> Capacity {
    g.arcs()
        .iter()
        .filter(|a| sink >> a.head & 1 == 1 && sink >> a.tail & 1 == 0)
        .map(|a| a.cap)
        .sum()
}

/// Minimum `(s,t)`-cut by enumerating every sink set containing `t`.
pub fn brute_st_cut(g: &DiGraph, s: usize, t: usize) -> Capacity {
    (0u64..1 << g.n())
        .filter(|&m| m >> t & 1 == 1 && m >> s & 1 == 0)
        .map(|m| in_cut(g, m))
        .min()
        .unwrap()
}

/// Minimum `r`-cut by enumerating every nonempty sink set avoiding `r`.
pub fn brute_rooted_cut(g: &DiGraph, r: usize) -> Capacity {
    (1u64..1 << g.n())
        .filter(|&m| m >> r & 1 == 0)
        .map(|m| in_cut(g, m))
        .min()
        .unwrap()
}

fn reaches(g: &VertexCapGraph, s: usize, t: usize, removed: u64) -> bool {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(u) = stack.pop() {
        if u == t {
            return true;
        }
        for &v in g.out_neighbors(u) {
            if !seen[v] && removed >> v & 1 == 0 {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    false
}

/// Cheapest separator `W ⊆ V − s − t` with no `s → t` path in `G − W`.
pub fn brute_separator(g: &VertexCapGraph, s: usize, t: usize) -> Capacity {
    (0u64..1 << g.n())
        .filter(|&w| w >> s & 1 == 0 && w >> t & 1 == 0 && !reaches(g, s, t, w))
        .map(|w| (0..g.n()).filter(|&v| w >> v & 1 == 1).map(|v| g.vcap(v)).sum())
        .min()
        .unwrap()
}

/// Random digraph with `n` vertices, arc probability `p`, caps in `0..=max_cap`.
pub fn random_digraph(r: &mut impl Rng, n: usize, p: f64, max_cap: u128) -> DiGraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && r.gen_bool(p) {
                arcs.push((u, v, r.gen_range(0..=max_cap)));
            }
        }
    }
    DiGraph::new(n, arcs).unwrap()
}

pub fn random_vertex_graph(r: &mut impl Rng, n: usize, p: f64, max_cap: u128) -> VertexCapGraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && r.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    let caps: Vec<u128> = (0..n).map(|_| r.gen_range(1..=max_cap)).collect();
    VertexCapGraph::new(n, arcs, caps).unwrap()
}

/// Strongly connected weighted digraph with at most about 200 arcs.
pub fn strongly_connected(seed: u64, n: usize, max_cap: u128) -> DiGraph {
    let p = (3.0 / n as f64).min(0.5);
    generate(&Family::ErdosRenyi { n, p, max_cap }, seed).unwrap().graph
}

/// A directed ring plus chords with probability `p`, capacities in
/// `1..=max_cap`; strongly connected by construction.
pub fn ring_with_chords(seed: u64, n: usize, p: f64, max_cap: u128) -> VertexCapGraph {
    let mut r = rng(seed);
    let mut arcs: Vec<(usize, usize)> = (0..n).map(|u| (u, (u + 1) % n)).collect();
    for u in 0..n {
        for v in 0..n {
            if u != v && r.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    let caps: Vec<u128> = (0..n).map(|_| r.gen_range(1..=max_cap)).collect();
    VertexCapGraph::new(n, arcs, caps).unwrap()
}

pub fn strongly_connected_vertex(seed: u64, n: usize, max_cap: u128) -> VertexCapGraph {
    ring_with_chords(seed, n, (4.0 / n as f64).min(0.6), max_cap)
}

/// `value ≤ (num/den)·oracle`, exactly.
pub fn within(value: Capacity, oracle: Capacity, num: u128, den: u128) -> bool {
    value.0 * den <= oracle.0 * num
}
