//! Rooted Steiner connectivity by shrink-wrapping.
//!
//! For a root `r`, terminals `T` and a level `λ`, every terminal is either
//! certified to have `(r,t)`-connectivity at least `λ` or receives an
//! `(r,t)`-cut of value below `λ`. Terminal sets are halved; each half is
//! tested with one flow into a supersink, the source side of that flow's
//! minimum cut is contracted into the root, and the recursion continues on
//! the unsaturated terminals only.

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{ArcCap, CutCertificate, DiGraph, VertexId};
use crate::maxflow::max_flow;

#[derive(Clone, Debug)]
pub struct SteinerInstance<'a> {
    graph: &'a DiGraph,
    root: VertexId,
    terminals: Vec<VertexId>,
    lambda: Capacity,
}

impl<'a> SteinerInstance<'a> {
    pub fn new(
        graph: &'a DiGraph,
        root: VertexId,
        terminals: impl IntoIterator<Item = VertexId>,
        lambda: Capacity,
    ) -> Result<SteinerInstance<'a>> {
        graph.check_vertex(root)?;
        let mut terminals: Vec<VertexId> = terminals.into_iter().collect();
        terminals.sort_unstable();
        terminals.dedup();
        for &t in &terminals {
            graph.check_vertex(t)?;
        }
        if terminals.is_empty() || terminals.binary_search(&root).is_ok() {
            return Err(Error::InvalidTerminals);
        }
        if lambda == Capacity::ZERO {
            return Err(Error::InvalidLambda);
        }
        Ok(SteinerInstance {
            graph,
            root,
            terminals,
            lambda,
        })
    }

    pub fn graph(&self) -> &DiGraph {
        self.graph
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn terminals(&self) -> &[VertexId] {
        &self.terminals
    }

    pub fn lambda(&self) -> Capacity {
        self.lambda
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TerminalOutcome {
    /// Connectivity at least λ; `flow` is the amount routed to the terminal.
    Certified { flow: Capacity },
    /// A cut of value below λ whose sink set contains the terminal.
    Below(CutCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerOutcome {
    /// One entry per terminal, sorted by terminal id.
    pub results: Vec<(VertexId, TerminalOutcome)>,
}

impl SteinerOutcome {
    pub fn get(&self, t: VertexId) -> Option<&TerminalOutcome> {
        self.results
            .binary_search_by_key(&t, |(v, _)| *v)
            .ok()
            .map(|i| &self.results[i].1)
    }

    pub fn below(&self) -> impl Iterator<Item = (VertexId, &CutCertificate)> {
        self.results.iter().filter_map(|(t, o)| match o {
            TerminalOutcome::Below(c) => Some((*t, c)),
            TerminalOutcome::Certified { .. } => None,
        })
    }

    pub fn certified(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.results.iter().filter_map(|(t, o)| match o {
            TerminalOutcome::Certified { .. } => Some(*t),
            TerminalOutcome::Below(_) => None,
        })
    }
}

/// One call of the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecursionNode {
    pub depth: usize,
    pub terminals: usize,
    pub edges: usize,
    pub leaf: bool,
}

/// Instrumentation collected by [`shrink_wrap_traced`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShrinkWrapTrace {
    /// Max-flow invocations actually performed.
    pub flow_calls: u64,
    pub nodes: Vec<RecursionNode>,
}

impl ShrinkWrapTrace {
    pub fn leaves(&self) -> usize {
        self.nodes.iter().filter(|n| n.leaf).count()
    }

    fn levels(&self, leaf: bool) -> usize {
        let mut depths: Vec<usize> = self.nodes.iter().filter(|n| n.leaf == leaf).map(|n| n.depth).collect();
        depths.sort_unstable();
        depths.dedup();
        depths.len()
    }

    /// Number of distinct depths holding a non-leaf node.
    pub fn internal_levels(&self) -> usize {
        self.levels(false)
    }

    /// Number of distinct depths holding a leaf.
    pub fn leaf_levels(&self) -> usize {
        self.levels(true)
    }

    /// Flow count when the independent flow problems at each depth are
    /// solved as one flow over the disjoint union of their graphs: two per
    /// internal level, one per level of leaves.
    pub fn batched_flow_rounds(&self) -> u64 {
        2 * self.internal_levels() as u64 + self.leaf_levels() as u64
    }

    /// `2⌈log₂ k⌉ + leaves` for a group of `k` terminals.
    pub fn flow_budget(&self, k: usize) -> u64 {
        2 * ceil_log2(k) as u64 + self.leaves() as u64
    }
}

pub(crate) fn ceil_log2(k: usize) -> u32 {
    if k <= 1 {
        0
    } else {
        usize::BITS - (k - 1).leading_zeros()
    }
}

/// The `(λ,T)`-flow network: `g` plus a supersink with an arc `(t, t*)` of
/// capacity λ for every terminal.
pub fn build_lambda_t_network(inst: &SteinerInstance<'_>) -> (DiGraph, VertexId) {
    lambda_t_network(inst.graph, &inst.terminals, inst.lambda)
}

fn lambda_t_network(g: &DiGraph, terminals: &[VertexId], lambda: Capacity) -> (DiGraph, VertexId) {
    let sink = g.n();
    let arcs = g
        .arc_caps()
        .chain(terminals.iter().map(|&t| (t, sink, ArcCap::Finite(lambda))));
    let net = DiGraph::from_arc_caps(g.n() + 1, arcs, g.scale()).expect("terminal arcs stay in range");
    (net, sink)
}

/// Minimum `(r,t*)`-cut of the `(λ,T)`-flow network. Returns the source side
/// restricted to the vertices of `g` and the cut value.
pub fn lambda_t_min_cut(
    g: &DiGraph,
    root: VertexId,
    terminals: &[VertexId],
    lambda: Capacity,
) -> Result<(Vec<bool>, Capacity)> {
    let (net, sink) = lambda_t_network(g, terminals, lambda);
    let res = max_flow(&net, root, sink)?;
    let mut side = res.source_side;
    side.truncate(g.n());
    Ok((side, res.value))
}

/// Splits sorted terminals into consecutive groups of at most `cap`.
pub fn partition_terminals(terminals: &[VertexId], cap: usize) -> Vec<Vec<VertexId>> {
    let cap = cap.max(1);
    let mut sorted = terminals.to_vec();
    sorted.sort_unstable();
    sorted.chunks(cap).map(<[VertexId]>::to_vec).collect()
}

pub fn shrink_wrap(inst: &SteinerInstance<'_>) -> SteinerOutcome {
    shrink_wrap_traced(inst, &mut ShrinkWrapTrace::default())
}

pub fn shrink_wrap_traced(inst: &SteinerInstance<'_>, trace: &mut ShrinkWrapTrace) -> SteinerOutcome {
    let mut results = Vec::with_capacity(inst.terminals.len());
    let identity: Vec<VertexId> = (0..inst.graph.n()).collect();
    let mut ctx = Context {
        original: inst.graph,
        lambda: inst.lambda,
        results: &mut results,
        trace,
    };
    ctx.recurse(inst.graph, inst.root, inst.terminals.clone(), &identity, 0);
    results.sort_unstable_by_key(|(t, _)| *t);
    SteinerOutcome { results }
}

struct Context<'a, 'b> {
    original: &'a DiGraph,
    lambda: Capacity,
    results: &'b mut Vec<(VertexId, TerminalOutcome)>,
    trace: &'b mut ShrinkWrapTrace,
}

impl Context<'_, '_> {
    /// `orig[v]` is the instance vertex behind vertex `v` of `g`.
    fn recurse(&mut self, g: &DiGraph, root: VertexId, terminals: Vec<VertexId>, orig: &[VertexId], depth: usize) {
        let leaf = terminals.len() == 1;
        self.trace.nodes.push(RecursionNode {
            depth,
            terminals: terminals.len(),
            edges: g.m(),
            leaf,
        });

        if leaf {
            let t = terminals[0];
            let res = max_flow(g, root, t).expect("root and terminal are distinct vertices");
            self.trace.flow_calls += 1;
            let outcome = if res.value >= self.lambda {
                TerminalOutcome::Certified { flow: res.value }
            } else {
                let sink = res.sink_side().into_iter().map(|v| orig[v]);
                let cert = CutCertificate::from_sink_set(self.original, sink);
                debug_assert_eq!(cert.value, res.value);
                TerminalOutcome::Below(cert)
            };
            self.results.push((orig[t], outcome));
            return;
        }

        let mid = terminals.len().div_ceil(2);
        for half in [&terminals[..mid], &terminals[mid..]] {
            let (source_side, _) = lambda_t_min_cut(g, root, half, self.lambda).expect("root is a vertex of g");
            self.trace.flow_calls += 1;
            let mut pending = Vec::new();
            for &t in half {
                if source_side[t] {
                    self.results
                        .push((orig[t], TerminalOutcome::Certified { flow: self.lambda }));
                } else {
                    pending.push(t);
                }
            }
            if pending.is_empty() {
                continue;
            }
            let (h, map) = g.contract_mask(&source_side);
            let mut h_orig = vec![orig[root]; h.n()];
            for v in 0..g.n() {
                if !source_side[v] {
                    h_orig[map.image(v)] = orig[v];
                }
            }
            let pending = pending.into_iter().map(|t| map.image(t)).collect();
            self.recurse(&h, map.root(), pending, &h_orig, depth + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn network_has_terminal_arcs() {
        let g = g1();
        let inst = SteinerInstance::new(&g, R, [A, B], Capacity(3)).unwrap();
        let (net, sink) = build_lambda_t_network(&inst);
        assert_eq!(sink, 3);
        assert_eq!(net.n(), 4);
        let extra: Vec<_> = net.arcs()[g.m()..].iter().map(|a| (a.tail, a.head, a.cap.0)).collect();
        assert_eq!(extra, vec![(A, 3, 3), (B, 3, 3)]);
    }

    #[test]
    fn singleton_network_flow_is_clamped() {
        let g = g1();
        for lambda in [1u128, 2, 5] {
            let inst = SteinerInstance::new(&g, R, [B], Capacity(lambda)).unwrap();
            let (net, sink) = build_lambda_t_network(&inst);
            let v = max_flow(&net, R, sink).unwrap().value;
            assert_eq!(v, Capacity(lambda.min(2)));
        }
    }

    #[test]
    fn instance_validation() {
        let g = g1();
        assert_eq!(
            SteinerInstance::new(&g, R, [A], Capacity(0)).err(),
            Some(Error::InvalidLambda)
        );
        assert_eq!(
            SteinerInstance::new(&g, R, [R, A], Capacity(1)).err(),
            Some(Error::InvalidTerminals)
        );
        assert_eq!(
            SteinerInstance::new(&g, R, [], Capacity(1)).err(),
            Some(Error::InvalidTerminals)
        );
    }

    #[test]
    fn shrink_wrap_g1() {
        let g = g1();
        let inst = SteinerInstance::new(&g, R, [A, B], Capacity(3)).unwrap();
        let out = shrink_wrap(&inst);
        assert_eq!(out.results.len(), 2);
        assert_eq!(out.get(A), Some(&TerminalOutcome::Certified { flow: Capacity(3) }));
        match out.get(B) {
            Some(TerminalOutcome::Below(c)) => {
                assert_eq!(c.sink_set, vec![B]);
                assert_eq!(c.value, Capacity(2));
                assert!(c.check(&g, R).is_ok());
            }
            other => panic!("unexpected {other:?}"),
        }

        let inst = SteinerInstance::new(&g, R, [B], Capacity(1)).unwrap();
        assert!(matches!(
            shrink_wrap(&inst).get(B),
            Some(TerminalOutcome::Certified { .. })
        ));
    }

    #[test]
    fn unreachable_terminal_gets_zero_cut() {
        let g = DiGraph::new(3, [(0, 1, 4), (2, 1, 1)]).unwrap();
        let inst = SteinerInstance::new(&g, 0, [1, 2], Capacity(2)).unwrap();
        let out = shrink_wrap(&inst);
        match out.get(2) {
            Some(TerminalOutcome::Below(c)) => assert_eq!(c.value, Capacity(0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trace_counts() {
        // Root with thin arcs to four terminals: nothing is certified early.
        let g = DiGraph::new(5, (1..5).map(|t| (0, t, 1))).unwrap();
        let inst = SteinerInstance::new(&g, 0, 1..5, Capacity(2)).unwrap();
        let mut trace = ShrinkWrapTrace::default();
        let out = shrink_wrap_traced(&inst, &mut trace);
        assert_eq!(out.below().count(), 4);
        // Root node, two halves of two, four leaves.
        assert_eq!(trace.nodes.len(), 7);
        assert_eq!(trace.flow_calls, 2 * 3 + 4);
        assert_eq!((trace.internal_levels(), trace.leaf_levels()), (2, 1));
        assert_eq!(trace.batched_flow_rounds(), 5);
        assert_eq!(trace.flow_budget(4), 2 * 2 + 4);
    }

    #[test]
    fn partition_examples() {
        let ts: Vec<usize> = (0..10).collect();
        let sizes: Vec<usize> = partition_terminals(&ts, 4).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![4, 4, 2]);
        assert_eq!(partition_terminals(&[5, 1, 3], 8), vec![vec![1, 3, 5]]);
        assert_eq!(partition_terminals(&[2, 1], 1), vec![vec![1], vec![2]]);
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!([1, 2, 3, 4, 5, 8, 9].map(ceil_log2), [0, 1, 2, 2, 3, 3, 4]);
    }
}
