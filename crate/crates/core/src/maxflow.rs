//! Exact max-flow / min-cut by blocking flows (Dinic).
//!
//! The engine works on `u128` numerators so flow values and cut values are
//! compared exactly. The returned source side is the set of vertices
//! reachable from the source in the final residual graph.

use std::collections::VecDeque;

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{CutCertificate, DiGraph, VertexId};

/// Flow on every arc of the input graph, in input arc order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowAssignment {
    pub source: VertexId,
    pub sink: VertexId,
    pub flow: Vec<Capacity>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxFlowResult {
    pub value: Capacity,
    pub flow: FlowAssignment,
    /// `source_side[v]` iff `v` is residual-reachable from the source.
    pub source_side: Vec<bool>,
}

impl MaxFlowResult {
    pub fn sink_side(&self) -> Vec<VertexId> {
        (0..self.source_side.len()).filter(|&v| !self.source_side[v]).collect()
    }
}

/// Residual network in CSR form; arc `2i` is input arc `i`, `2i+1` its reverse.
struct Network {
    start: Vec<usize>,
    order: Vec<usize>,
    to: Vec<usize>,
    residual: Vec<u128>,
}

impl Network {
    fn build(g: &DiGraph) -> Network {
        let n = g.n();
        let m = g.m();
        let mut to = Vec::with_capacity(2 * m);
        let mut residual = Vec::with_capacity(2 * m);
        let mut count = vec![0usize; n + 1];
        for a in g.arcs() {
            to.push(a.head);
            residual.push(a.cap.0);
            to.push(a.tail);
            residual.push(0);
            count[a.tail + 1] += 1;
            count[a.head + 1] += 1;
        }
        for v in 0..n {
            count[v + 1] += count[v];
        }
        let start = count.clone();
        let mut fill = count;
        let mut order = vec![0; 2 * m];
        for (i, a) in g.arcs().iter().enumerate() {
            order[fill[a.tail]] = 2 * i;
            fill[a.tail] += 1;
            order[fill[a.head]] = 2 * i + 1;
            fill[a.head] += 1;
        }
        Network {
            start,
            order,
            to,
            residual,
        }
    }

    fn levels(&self, s: usize, t: usize, level: &mut [u32]) -> bool {
        level.fill(u32::MAX);
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.order[self.start[u]..self.start[u + 1]] {
                let v = self.to[e];
                if self.residual[e] > 0 && level[v] == u32::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level[t] != u32::MAX
    }

    fn augment(&mut self, u: usize, t: usize, limit: u128, level: &[u32], cursor: &mut [usize]) -> u128 {
        if u == t {
            return limit;
        }
        while cursor[u] < self.start[u + 1] {
            let e = self.order[cursor[u]];
            let v = self.to[e];
            if self.residual[e] > 0 && level[v] == level[u] + 1 {
                let pushed = self.augment(v, t, limit.min(self.residual[e]), level, cursor);
                if pushed > 0 {
                    self.residual[e] -= pushed;
                    self.residual[e ^ 1] += pushed;
                    return pushed;
                }
            }
            cursor[u] += 1;
        }
        0
    }
}

/// Maximum `s`-`t` flow with a minimum cut.
pub fn max_flow(g: &DiGraph, s: VertexId, t: VertexId) -> Result<MaxFlowResult> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::SameSourceSink(s));
    }
    let n = g.n();
    let mut net = Network::build(g);
    let mut level = vec![0u32; n];
    let mut value: u128 = 0;
    while net.levels(s, t, &mut level) {
        let mut cursor = net.start[..n].to_vec();
        loop {
            let pushed = net.augment(s, t, u128::MAX, &level, &mut cursor);
            if pushed == 0 {
                break;
            }
            value += pushed;
        }
    }
    // Residual reachability from s; after termination t is unreachable.
    let mut source_side = vec![false; n];
    source_side[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &e in &net.order[net.start[u]..net.start[u + 1]] {
            let v = net.to[e];
            if net.residual[e] > 0 && !source_side[v] {
                source_side[v] = true;
                queue.push_back(v);
            }
        }
    }
    let flow = g
        .arcs()
        .iter()
        .enumerate()
        .map(|(i, a)| Capacity(a.cap.0 - net.residual[2 * i]))
        .collect();
    Ok(MaxFlowResult {
        value: Capacity(value),
        flow: FlowAssignment {
            source: s,
            sink: t,
            flow,
        },
        source_side,
    })
}

/// The minimum cut of a max-flow result, as a sink-side certificate.
pub fn min_cut_sink_side(g: &DiGraph, res: &MaxFlowResult) -> CutCertificate {
    let mask: Vec<bool> = res.source_side.iter().map(|&a| !a).collect();
    let cert = CutCertificate::from_mask(g, &mask, res.sink_side());
    debug_assert_eq!(cert.value, res.value);
    cert
}

/// Checks capacity feasibility and conservation exactly.
pub fn verify_flow(g: &DiGraph, flow: &FlowAssignment) -> bool {
    if flow.flow.len() != g.m() || flow.source >= g.n() || flow.sink >= g.n() {
        return false;
    }
    let mut inflow = vec![0u128; g.n()];
    let mut outflow = vec![0u128; g.n()];
    for (a, f) in g.arcs().iter().zip(&flow.flow) {
        if *f > a.cap {
            return false;
        }
        outflow[a.tail] += f.0;
        inflow[a.head] += f.0;
    }
    (0..g.n())
        .filter(|&v| v != flow.source && v != flow.sink)
        .all(|v| inflow[v] == outflow[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn single_arc() {
        let g = DiGraph::new(2, [(0, 1, 5)]).unwrap();
        let res = max_flow(&g, 0, 1).unwrap();
        assert_eq!(res.value, Capacity(5));
        assert_eq!(res.source_side, vec![true, false]);
        let cut = min_cut_sink_side(&g, &res);
        assert_eq!(cut.sink_set, vec![1]);
        assert_eq!(cut.value, Capacity(5));
        assert!(verify_flow(&g, &res.flow));
    }

    #[test]
    fn g1_root_to_b() {
        let g = g1();
        let res = max_flow(&g, R, B).unwrap();
        assert_eq!(res.value, Capacity(2));
        assert_eq!(res.source_side, vec![true, true, false]);
        let cut = min_cut_sink_side(&g, &res);
        assert_eq!(cut.sink_set, vec![B]);
        let mut crossing: Vec<_> = cut.crossing_arcs.iter().map(|a| (a.tail, a.head)).collect();
        crossing.sort_unstable();
        assert_eq!(crossing, vec![(R, B), (A, B)]);
        assert!(verify_flow(&g, &res.flow));
    }

    #[test]
    fn g1_root_to_a() {
        let g = g1();
        let res = max_flow(&g, R, A).unwrap();
        assert_eq!(res.value, Capacity(3));
        assert_eq!(res.source_side, vec![true, false, false]);
        let cut = min_cut_sink_side(&g, &res);
        assert_eq!(cut.sink_set, vec![A, B]);
        let mut crossing: Vec<_> = cut.crossing_arcs.iter().map(|a| (a.tail, a.head)).collect();
        crossing.sort_unstable();
        assert_eq!(crossing, vec![(R, A), (R, B)]);
    }

    #[test]
    fn verify_rejects_bad_flows() {
        let g = g1();
        let res = max_flow(&g, R, B).unwrap();
        let mut over = res.flow.clone();
        over.flow[0] = Capacity(g.arcs()[0].cap.0 + 1);
        assert!(!verify_flow(&g, &over));

        // r→a:1, a→b:1 pushes 1 through a; dropping a→b breaks conservation at a.
        let path = DiGraph::new(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let mut f = max_flow(&path, 0, 2).unwrap().flow;
        assert!(verify_flow(&path, &f));
        f.flow[1] = Capacity(0);
        assert!(!verify_flow(&path, &f));
    }

    #[test]
    fn same_source_sink_rejected() {
        assert_eq!(max_flow(&g1(), 1, 1), Err(Error::SameSourceSink(1)));
    }

    #[test]
    fn disconnected_sink() {
        let g = DiGraph::new(4, [(0, 1, 10), (2, 3, 5)]).unwrap();
        assert_eq!(max_flow(&g, 0, 3).unwrap().value, Capacity(0));
    }
}
