//! Directed multigraph with exact capacities.
//!
//! Graphs are immutable once built; every transformation returns a new
//! graph. Arcs of "infinite" capacity are stored with a sentinel numerator
//! equal to one more than the sum of all finite capacities, so no finite
//! cut can ever reach it.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::capacity::{format_ratio, Capacity};
use crate::error::{Error, Result};

pub type VertexId = usize;

/// Capacity of an arc before the sentinel is resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArcCap {
    Finite(Capacity),
    Infinite,
}

impl From<u128> for ArcCap {
    fn from(v: u128) -> Self {
        ArcCap::Finite(Capacity(v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
    pub cap: Capacity,
}

/// Which graph a rooted cut was computed in: the input or its reversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Forward,
    Reverse,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Forward => "forward",
            Orientation::Reverse => "reverse",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    arcs: Vec<Arc>,
    infinite: Capacity,
    scale: u128,
}

impl DiGraph {
    /// Integer-capacity graph (scale 1). Self-loops are dropped.
    pub fn new<I>(n: usize, arcs: I) -> Result<DiGraph>
    where
        I: IntoIterator<Item = (VertexId, VertexId, u128)>,
    {
        DiGraph::from_arc_caps(n, arcs.into_iter().map(|(u, v, c)| (u, v, c.into())), 1)
    }

    /// General constructor: capacities are numerators over `scale`.
    pub fn from_arc_caps<I>(n: usize, arcs: I, scale: u128) -> Result<DiGraph>
    where
        I: IntoIterator<Item = (VertexId, VertexId, ArcCap)>,
    {
        if scale == 0 {
            return Err(Error::InvalidParams("scale must be positive".into()));
        }
        let raw: Vec<(VertexId, VertexId, ArcCap)> = arcs.into_iter().collect();
        let mut finite = Capacity::ZERO;
        for &(u, v, c) in &raw {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u != v {
                if let ArcCap::Finite(c) = c {
                    finite = finite.checked_add(c)?;
                }
            }
        }
        let infinite = finite.checked_add(Capacity(1))?;
        let arcs = raw
            .into_iter()
            .filter(|&(u, v, _)| u != v)
            .map(|(tail, head, c)| Arc {
                tail,
                head,
                cap: match c {
                    ArcCap::Finite(c) => c,
                    ArcCap::Infinite => infinite,
                },
            })
            .collect();
        Ok(DiGraph {
            n,
            arcs,
            infinite,
            scale,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Common denominator of all capacities.
    pub fn scale(&self) -> u128 {
        self.scale
    }

    /// The infinite-capacity sentinel of this graph.
    pub fn infinite(&self) -> Capacity {
        self.infinite
    }

    pub fn is_infinite(&self, arc: &Arc) -> bool {
        arc.cap == self.infinite
    }

    pub fn arc_cap(&self, arc: &Arc) -> ArcCap {
        if self.is_infinite(arc) {
            ArcCap::Infinite
        } else {
            ArcCap::Finite(arc.cap)
        }
    }

    pub fn arc_caps(&self) -> impl Iterator<Item = (VertexId, VertexId, ArcCap)> + '_ {
        self.arcs.iter().map(|a| (a.tail, a.head, self.arc_cap(a)))
    }

    /// Renders a numerator of this graph as an exact decimal string.
    pub fn format_value(&self, c: Capacity) -> String {
        format_ratio(c.0, self.scale)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn reverse(&self) -> DiGraph {
        DiGraph {
            n: self.n,
            arcs: self
                .arcs
                .iter()
                .map(|a| Arc {
                    tail: a.head,
                    head: a.tail,
                    cap: a.cap,
                })
                .collect(),
            infinite: self.infinite,
            scale: self.scale,
        }
    }

    /// Unweighted in-degree of every vertex, counting stored arcs.
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for a in &self.arcs {
            deg[a.head] += 1;
        }
        deg
    }

    /// Number of arcs whose head lies in `set`.
    pub fn in_volume(&self, set: &[VertexId]) -> Result<usize> {
        let mask = self.mask(set)?;
        Ok(self.arcs.iter().filter(|a| mask[a.head]).count())
    }

    pub fn mask(&self, set: &[VertexId]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n];
        for &v in set {
            self.check_vertex(v)?;
            mask[v] = true;
        }
        Ok(mask)
    }

    /// Contracts `set` (which must contain `root`) into a single root vertex.
    /// Arcs inside the set and arcs into the new root are dropped.
    pub fn contract_into_root(&self, root: VertexId, set: &[VertexId]) -> Result<(DiGraph, ContractionMap)> {
        self.check_vertex(root)?;
        let mask = self.mask(set)?;
        if !mask[root] {
            return Err(Error::RootNotInSet(root));
        }
        Ok(self.contract_mask(&mask))
    }

    /// Contraction by membership mask. The new root has id 0; surviving
    /// vertices keep their relative order.
    pub(crate) fn contract_mask(&self, mask: &[bool]) -> (DiGraph, ContractionMap) {
        let mut map = vec![0; self.n];
        let mut next = 1;
        for (v, &inside) in mask.iter().enumerate() {
            if !inside {
                map[v] = next;
                next += 1;
            }
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|a| !mask[a.head])
            .map(|a| (map[a.tail], map[a.head], self.arc_cap(a)));
        let g = DiGraph::from_arc_caps(next, arcs, self.scale)
            .expect("contraction keeps ids in range and sums bounded by the parent");
        (
            g,
            ContractionMap {
                map,
                root: 0,
                n_new: next,
            },
        )
    }

    /// At most one arc per ordered pair, with summed capacity. Any parallel
    /// group containing an infinite arc stays infinite.
    pub fn merge_parallel(&self) -> DiGraph {
        let mut keyed: Vec<(VertexId, VertexId, ArcCap)> = Vec::with_capacity(self.arcs.len());
        let mut order: Vec<&Arc> = self.arcs.iter().collect();
        order.sort_by_key(|a| (a.tail, a.head));
        for a in order {
            let c = self.arc_cap(a);
            match keyed.last_mut() {
                Some(last) if last.0 == a.tail && last.1 == a.head => {
                    last.2 = match (last.2, c) {
                        (ArcCap::Finite(x), ArcCap::Finite(y)) => ArcCap::Finite(x + y),
                        _ => ArcCap::Infinite,
                    };
                }
                _ => keyed.push((a.tail, a.head, c)),
            }
        }
        DiGraph::from_arc_caps(self.n, keyed, self.scale).expect("merging preserves validity")
    }

    /// Drops arcs of capacity zero; every cut value is unchanged.
    pub fn without_zero_arcs(&self) -> DiGraph {
        let arcs = self.arc_caps().filter(|&(_, _, c)| c != ArcCap::Finite(Capacity::ZERO));
        DiGraph::from_arc_caps(self.n, arcs, self.scale).expect("subset of a valid graph")
    }

    /// Multiplies every finite capacity and the scale by `k`.
    pub fn scaled_by(&self, k: u128) -> Result<DiGraph> {
        let mut arcs = Vec::with_capacity(self.arcs.len());
        for (u, v, c) in self.arc_caps() {
            arcs.push((
                u,
                v,
                match c {
                    ArcCap::Finite(c) => ArcCap::Finite(c.checked_mul(k)?),
                    ArcCap::Infinite => ArcCap::Infinite,
                },
            ));
        }
        let scale = self.scale.checked_mul(k).ok_or(Error::CapacityOverflow)?;
        DiGraph::from_arc_caps(self.n, arcs, scale)
    }

    /// Same graph, reinterpreted over a different denominator.
    pub fn with_scale(mut self, scale: u128) -> DiGraph {
        assert!(scale > 0);
        self.scale = scale;
        self
    }

    /// Total capacity of arcs entering the set marked in `sink`.
    pub fn cut_value(&self, sink: &[bool]) -> Capacity {
        self.arcs
            .iter()
            .filter(|a| sink[a.head] && !sink[a.tail])
            .map(|a| a.cap)
            .sum()
    }

    /// Vertices reachable from `s` along arcs of positive capacity.
    pub fn reachable_from(&self, s: VertexId) -> Vec<bool> {
        let adj = self.out_lists(true);
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    pub(crate) fn out_lists(&self, positive_only: bool) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.n];
        for a in &self.arcs {
            if !positive_only || a.cap > Capacity::ZERO {
                adj[a.tail].push(a.head);
            }
        }
        adj
    }

    pub fn min_positive_cap(&self) -> Option<Capacity> {
        self.arcs
            .iter()
            .filter(|a| a.cap > Capacity::ZERO && !self.is_infinite(a))
            .map(|a| a.cap)
            .min()
    }
}

/// Old-to-new vertex map produced by [`DiGraph::contract_into_root`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    map: Vec<VertexId>,
    root: VertexId,
    n_new: usize,
}

impl ContractionMap {
    pub fn image(&self, v: VertexId) -> VertexId {
        self.map[v]
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn new_len(&self) -> usize {
        self.n_new
    }

    pub fn preimage(&self, w: VertexId) -> Vec<VertexId> {
        (0..self.map.len()).filter(|&v| self.map[v] == w).collect()
    }

    /// Preimage of a set of contracted vertices.
    pub fn lift(&self, set: &[VertexId]) -> Vec<VertexId> {
        let mut mark = vec![false; self.n_new];
        for &w in set {
            mark[w] = true;
        }
        (0..self.map.len()).filter(|&v| mark[self.map[v]]).collect()
    }
}

/// A rooted edge cut identified by its sink component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CutCertificate {
    pub sink_set: Vec<VertexId>,
    pub crossing_arcs: Vec<Arc>,
    pub value: Capacity,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateViolation {
    #[error("sink set is empty")]
    EmptySink,
    #[error("sink set contains the root")]
    RootInSink,
    #[error("vertex {0} out of range")]
    OutOfRange(VertexId),
    #[error("crossing arcs do not match the arcs entering the sink set")]
    WrongArcs,
    #[error("reported value {reported} differs from recomputed value {actual}")]
    WrongValue { reported: Capacity, actual: Capacity },
}

impl CutCertificate {
    /// Builds the certificate for `sink` by scanning the arc list.
    pub fn from_sink_set(g: &DiGraph, sink: impl IntoIterator<Item = VertexId>) -> CutCertificate {
        let mut sink_set: Vec<VertexId> = sink.into_iter().collect();
        sink_set.sort_unstable();
        sink_set.dedup();
        let mut mask = vec![false; g.n()];
        for &v in &sink_set {
            mask[v] = true;
        }
        Self::from_mask(g, &mask, sink_set)
    }

    pub(crate) fn from_mask(g: &DiGraph, mask: &[bool], sink_set: Vec<VertexId>) -> CutCertificate {
        let crossing_arcs: Vec<Arc> = g
            .arcs()
            .iter()
            .filter(|a| mask[a.head] && !mask[a.tail])
            .copied()
            .collect();
        let value = crossing_arcs.iter().map(|a| a.cap).sum();
        CutCertificate {
            sink_set,
            crossing_arcs,
            value,
        }
    }

    /// Independently re-derives the crossing arcs and value from `g`.
    pub fn check(&self, g: &DiGraph, root: VertexId) -> Result<(), CertificateViolation> {
        if self.sink_set.is_empty() {
            return Err(CertificateViolation::EmptySink);
        }
        let mut mask = vec![false; g.n()];
        for &v in &self.sink_set {
            if v >= g.n() {
                return Err(CertificateViolation::OutOfRange(v));
            }
            mask[v] = true;
        }
        if mask[root] {
            return Err(CertificateViolation::RootInSink);
        }
        let mut expected: Vec<Arc> = g
            .arcs()
            .iter()
            .filter(|a| mask[a.head] && !mask[a.tail])
            .copied()
            .collect();
        let mut got = self.crossing_arcs.clone();
        expected.sort_unstable();
        got.sort_unstable();
        if expected != got {
            return Err(CertificateViolation::WrongArcs);
        }
        let mut actual = Capacity::ZERO;
        for a in &expected {
            actual += a.cap;
        }
        if actual != self.value {
            return Err(CertificateViolation::WrongValue {
                reported: self.value,
                actual,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub const R: usize = 0;
    pub const A: usize = 1;
    pub const B: usize = 2;

    /// r→a:2, r→b:1, a→b:1, b→a:1
    pub fn g1() -> DiGraph {
        DiGraph::new(3, [(R, A, 2), (R, B, 1), (A, B, 1), (B, A, 1)]).unwrap()
    }
}
