//! Vertex-capacitated connectivity through the split-graph reduction.
//!
//! Each vertex `v` becomes `v_in = 2v` and `v_out = 2v + 1` joined by an arc
//! of capacity `c(v)`; each arc `(u,v)` becomes an infinite arc
//! `(u_out, v_in)`. Rooted cuts are found by shrink-wrap on the
//! preconditioned split graph and translated back to separators.

use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::capacity::{format_ratio, Capacity, Rational};
use crate::edge::{group_cap, run_groups, sample_probability, ConditionedGraph, CutMode, ProbeConfig};
use crate::error::{Error, Result};
use crate::graph::{ArcCap, DiGraph, Orientation, VertexId};
use crate::maxflow::max_flow;
use crate::search::{
    self, below_threshold, derive_seed, doubling_search, geometric_search, mu_values, Hit, LevelProbe, ProbeStats,
    SolveStats, SolverConfig,
};

/// A digraph with vertex capacities `vcap[v] / scale`. Arcs are simple:
/// self-loops and parallel copies are dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCapGraph {
    n: usize,
    arcs: Vec<(VertexId, VertexId)>,
    vcap: Vec<Capacity>,
    scale: u128,
    out_adj: Vec<Vec<VertexId>>,
    in_adj: Vec<Vec<VertexId>>,
}

impl VertexCapGraph {
    pub fn new<A, C>(n: usize, arcs: A, vcap: C) -> Result<VertexCapGraph>
    where
        A: IntoIterator<Item = (VertexId, VertexId)>,
        C: IntoIterator<Item = u128>,
    {
        let vcap: Vec<Capacity> = vcap.into_iter().map(Capacity).collect();
        if vcap.len() != n {
            return Err(Error::InvalidParams(format!(
                "expected {n} vertex capacities, got {}",
                vcap.len()
            )));
        }
        let mut list = Vec::new();
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u != v {
                list.push((u, v));
            }
        }
        list.sort_unstable();
        list.dedup();
        vcap.iter().try_fold(Capacity::ZERO, |acc, &c| acc.checked_add(c))?;
        Ok(Self::assemble(n, list, vcap, 1))
    }

    fn assemble(n: usize, arcs: Vec<(VertexId, VertexId)>, vcap: Vec<Capacity>, scale: u128) -> VertexCapGraph {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        VertexCapGraph {
            n,
            arcs,
            vcap,
            scale,
            out_adj,
            in_adj,
        }
    }

    /// Reinterprets capacities as multiples of `1/scale`.
    pub fn with_scale(mut self, scale: u128) -> VertexCapGraph {
        assert!(scale > 0, "scale must be positive");
        self.scale = scale;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    /// Sorted, simple arc list.
    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    pub fn vcap(&self, v: VertexId) -> Capacity {
        self.vcap[v]
    }

    pub fn vcaps(&self) -> &[Capacity] {
        &self.vcap
    }

    pub fn scale(&self) -> u128 {
        self.scale
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v]
    }

    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }

    pub fn format_value(&self, c: Capacity) -> String {
        format_ratio(c.0, self.scale)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    pub fn total_cap(&self) -> Capacity {
        self.vcap.iter().copied().sum()
    }

    pub fn cap_of(&self, set: &[VertexId]) -> Capacity {
        set.iter().map(|&v| self.vcap[v]).sum()
    }

    pub fn reverse(&self) -> VertexCapGraph {
        let mut arcs: Vec<_> = self.arcs.iter().map(|&(u, v)| (v, u)).collect();
        arcs.sort_unstable();
        Self::assemble(self.n, arcs, self.vcap.clone(), self.scale)
    }

    /// `N⁻(U)`: vertices outside `U` with an arc into `U`, sorted.
    pub fn in_neighborhood(&self, set: &[VertexId]) -> Vec<VertexId> {
        let mut inside = vec![false; self.n];
        for &u in set {
            inside[u] = true;
        }
        let mut mark = vec![false; self.n];
        for &u in set {
            for &w in &self.in_adj[u] {
                if !inside[w] {
                    mark[w] = true;
                }
            }
        }
        (0..self.n).filter(|&v| mark[v]).collect()
    }

    /// `V' = V − r − N⁺(r)` as a mask.
    pub fn admissible_sinks(&self, root: VertexId) -> Vec<bool> {
        let mut ok = vec![true; self.n];
        ok[root] = false;
        for &v in &self.out_adj[root] {
            ok[v] = false;
        }
        ok
    }

    fn map_caps(&self, f: impl Fn(Capacity) -> Result<Capacity>, scale: u128) -> Result<VertexCapGraph> {
        let vcap = self.vcap.iter().map(|&c| f(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(self.n, self.arcs.clone(), vcap, scale))
    }

    fn scaled_by(&self, k: u128) -> Result<VertexCapGraph> {
        self.map_caps(
            |c| c.checked_mul(k),
            self.scale.checked_mul(k).ok_or(Error::CapacityOverflow)?,
        )
    }

    /// Same graph with capacities in integer units; fails on fractions.
    pub fn integer_units(&self) -> Result<VertexCapGraph> {
        let s = self.scale;
        self.map_caps(
            |c| {
                if c.0 % s == 0 {
                    Ok(Capacity(c.0 / s))
                } else {
                    Err(Error::NonIntegerCapacities)
                }
            },
            1,
        )
    }

    fn without_arcs(&self, drop: impl Fn(VertexId, VertexId) -> bool) -> VertexCapGraph {
        let arcs = self.arcs.iter().copied().filter(|&(u, v)| !drop(u, v)).collect();
        Self::assemble(self.n, arcs, self.vcap.clone(), self.scale)
    }

    fn is_complete(&self) -> bool {
        self.arcs.len() == self.n * (self.n - 1)
    }
}

/// Index maps between a vertex-capacitated graph and its split graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitMaps {
    n: usize,
}

impl SplitMaps {
    pub fn to_in(&self, v: VertexId) -> VertexId {
        2 * v
    }

    pub fn to_out(&self, v: VertexId) -> VertexId {
        2 * v + 1
    }

    /// The original vertex of split vertex `x`.
    pub fn vertex_of(&self, x: VertexId) -> VertexId {
        x / 2
    }

    pub fn is_in(&self, x: VertexId) -> bool {
        x % 2 == 0
    }

    pub fn original_len(&self) -> usize {
        self.n
    }
}

/// Split graph with `2n` vertices: arcs `(v_in, v_out)` first, in vertex
/// order, followed by one infinite arc `(u_out, v_in)` per arc of `g`.
pub fn split_transform(g: &VertexCapGraph) -> (DiGraph, SplitMaps) {
    let maps = SplitMaps { n: g.n };
    let vertex_arcs = (0..g.n).map(|v| (maps.to_in(v), maps.to_out(v), ArcCap::Finite(g.vcap[v])));
    let arc_arcs = g
        .arcs
        .iter()
        .map(|&(u, v)| (maps.to_out(u), maps.to_in(v), ArcCap::Infinite));
    let h =
        DiGraph::from_arc_caps(2 * g.n, vertex_arcs.chain(arc_arcs), g.scale).expect("split of a valid graph is valid");
    (h, maps)
}

/// A vertex cut given by its sink component `U` and separator `W = N⁻(U)`.
///
/// With `Reverse` orientation both sets refer to the reversed graph, so in
/// the input `U` is a source component and `W = N⁺(U)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexCutCertificate {
    pub separator: Vec<VertexId>,
    pub sink_component: Vec<VertexId>,
    pub value: Capacity,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VertexCertViolation {
    #[error("sink component is empty")]
    EmptyComponent,
    #[error("vertex {0} out of range")]
    OutOfRange(VertexId),
    #[error("root lies in the separator or the sink component")]
    RootInCut,
    #[error("separator is not the in-neighborhood of the sink component")]
    WrongSeparator,
    #[error("separator and sink component cover every vertex")]
    NoSourceSide,
    #[error("reported value {reported} differs from recomputed value {actual}")]
    WrongValue { reported: Capacity, actual: Capacity },
}

impl VertexCutCertificate {
    /// Certificate for sink component `U` in `g` (already oriented).
    pub fn from_component(
        g: &VertexCapGraph,
        component: impl IntoIterator<Item = VertexId>,
        orientation: Orientation,
    ) -> VertexCutCertificate {
        let mut sink_component: Vec<VertexId> = component.into_iter().collect();
        sink_component.sort_unstable();
        sink_component.dedup();
        let separator = g.in_neighborhood(&sink_component);
        let value = g.cap_of(&separator);
        VertexCutCertificate {
            separator,
            sink_component,
            value,
            orientation,
        }
    }

    /// Re-derives the separator and value from the input graph `g`. With a
    /// root, checks a rooted cut; without, checks a global one.
    pub fn check(&self, g: &VertexCapGraph, root: Option<VertexId>) -> Result<(), VertexCertViolation> {
        let oriented;
        let g = match self.orientation {
            Orientation::Forward => g,
            Orientation::Reverse => {
                oriented = g.reverse();
                &oriented
            }
        };
        if self.sink_component.is_empty() {
            return Err(VertexCertViolation::EmptyComponent);
        }
        if let Some(&v) = self.sink_component.iter().chain(&self.separator).find(|&&v| v >= g.n) {
            return Err(VertexCertViolation::OutOfRange(v));
        }
        let mut u = self.sink_component.clone();
        u.sort_unstable();
        u.dedup();
        let mut w = self.separator.clone();
        w.sort_unstable();
        w.dedup();
        if g.in_neighborhood(&u) != w {
            return Err(VertexCertViolation::WrongSeparator);
        }
        match root {
            Some(r) if u.binary_search(&r).is_ok() || w.binary_search(&r).is_ok() => {
                return Err(VertexCertViolation::RootInCut)
            }
            None if u.len() + w.len() == g.n => return Err(VertexCertViolation::NoSourceSide),
            _ => {}
        }
        let actual = g.cap_of(&w);
        if actual != self.value {
            return Err(VertexCertViolation::WrongValue {
                reported: self.value,
                actual,
            });
        }
        Ok(())
    }
}

/// Adds arcs `(r_out, x)` of capacity `ελ·deg⁻_H(x)/6μ` to the split graph
/// and clamps the finite arcs into `[ελ/4n, 2λ]`.
pub fn precondition_split_rooted(
    g: &VertexCapGraph,
    root: VertexId,
    lambda: Capacity,
    mu: usize,
    epsilon: Rational,
) -> Result<ConditionedGraph> {
    g.check_vertex(root)?;
    if lambda == Capacity::ZERO {
        return Err(Error::InvalidLambda);
    }
    if epsilon.is_zero() {
        return Err(Error::InvalidEpsilon(epsilon.to_string()));
    }
    if mu == 0 || !mu.is_power_of_two() {
        return Err(Error::InvalidMu(mu));
    }
    let mul = |xs: &[u128]| {
        xs.iter()
            .try_fold(1u128, |a, &x| a.checked_mul(x))
            .ok_or(Error::CapacityOverflow)
    };
    let (ep, eq) = (epsilon.num(), epsilon.den());
    let (n, mu, lam) = (g.n as u128, mu as u128, lambda.0);
    // 12·q·μ·n clears the denominators of ελ/6μ, ελ/4n and ελ/12μ.
    let factor = mul(&[12, eq, mu, n])?;
    let floor = mul(&[3, ep, lam, mu])?;
    let ceiling = mul(&[2, lam, factor])?;
    let (split, maps) = split_transform(g);
    let deg = split.in_degrees();
    let r_out = maps.to_out(root);

    let mut arcs = Vec::with_capacity(split.m() + split.n());
    let mut auxiliary = Vec::with_capacity(split.m() + split.n());
    for (u, v, c) in split.arc_caps() {
        let c = match c {
            ArcCap::Finite(c) => ArcCap::Finite(Capacity(mul(&[c.0, factor])?.clamp(floor, ceiling))),
            ArcCap::Infinite => ArcCap::Infinite,
        };
        arcs.push((u, v, c));
        auxiliary.push(false);
    }
    for x in (0..split.n()).filter(|&x| x != r_out && deg[x] > 0) {
        arcs.push((
            r_out,
            x,
            ArcCap::Finite(Capacity(mul(&[2, ep, lam, deg[x] as u128, n])?)),
        ));
        auxiliary.push(true);
    }
    Ok(ConditionedGraph {
        h: DiGraph::from_arc_caps(split.n(), arcs, mul(&[g.scale, factor])?)?,
        phi: Capacity(mul(&[ep, lam, n])?),
        lambda: Capacity(mul(&[lam, factor])?),
        connectivity: Capacity(mul(&[eq + ep, lam, 12, mu, n])?),
        auxiliary,
        factor,
    })
}

/// Samples each `v ∈ V'` with probability `min(1, c·ln(n)·deg⁻_g(v)/μ)`.
pub fn sample_vertex_terminals<R: Rng + ?Sized>(
    g: &VertexCapGraph,
    root: VertexId,
    mu: usize,
    sample_const: f64,
    rng: &mut R,
) -> Vec<VertexId> {
    let admissible = g.admissible_sinks(root);
    (0..g.n)
        .filter(|&v| admissible[v])
        .filter(|&v| {
            let draw: f64 = rng.gen();
            draw < sample_probability(g.n, g.in_adj[v].len(), mu, sample_const)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct VertexProbeOutcome {
    pub cut: Option<VertexCutCertificate>,
    pub stats: ProbeStats,
}

/// One (λ, μ) probe. Any cut returned has value `< (1+ε)λ` in `g`.
pub fn probe_rooted_vertex(g: &VertexCapGraph, root: VertexId, cfg: &ProbeConfig) -> Result<VertexProbeOutcome> {
    let cond = precondition_split_rooted(g, root, cfg.lambda, cfg.mu, cfg.epsilon)?;
    let mut rng = search::rng(cfg.seed);
    let maps = SplitMaps { n: g.n };
    let terminals: Vec<VertexId> = sample_vertex_terminals(g, root, cfg.mu, cfg.sample_const, &mut rng)
        .into_iter()
        .map(|t| maps.to_in(t))
        .collect();
    let admissible = g.admissible_sinks(root);
    let mut best: Option<VertexCutCertificate> = None;
    let cap = group_cap(cond.phi, cond.h.m(), cond.connectivity);
    let (stats, _) = run_groups(&cond.h, maps.to_out(root), &terminals, cap, cond.connectivity, |cut| {
        let component: Vec<VertexId> = cut
            .sink_set
            .iter()
            .filter(|&&x| maps.is_in(x) && admissible[maps.vertex_of(x)])
            .map(|&x| maps.vertex_of(x))
            .collect();
        if component.is_empty() {
            return;
        }
        let cert = VertexCutCertificate::from_component(g, component, Orientation::Forward);
        if below_threshold(cert.value, cfg.lambda, cfg.epsilon)
            && best
                .as_ref()
                .is_none_or(|b| (cert.value, &cert.sink_component) < (b.value, &b.sink_component))
        {
            best = Some(cert);
        }
    })?;
    Ok(VertexProbeOutcome { cut: best, stats })
}

/// A vertex cut with the roots that were tried and aggregate counters.
#[derive(Clone, Debug)]
pub struct VertexCut {
    pub cert: VertexCutCertificate,
    pub roots: Vec<VertexId>,
    pub stats: SolveStats,
}

struct VertexProber<'a> {
    work: &'a VertexCapGraph,
    root: VertexId,
    mus: Vec<usize>,
    sample_const: f64,
    seed: u64,
}

impl LevelProbe for VertexProber<'_> {
    type Cert = VertexCutCertificate;

    fn mus(&self) -> &[usize] {
        &self.mus
    }

    fn master_seed(&self) -> u64 {
        self.seed
    }

    fn probe_mu(
        &self,
        lambda: Capacity,
        mu: usize,
        eps: Rational,
        seed: u64,
    ) -> Result<(Option<Hit<VertexCutCertificate>>, ProbeStats)> {
        let cfg = ProbeConfig {
            lambda,
            mu,
            epsilon: eps,
            sample_const: self.sample_const,
            seed,
        };
        let out = probe_rooted_vertex(self.work, self.root, &cfg)?;
        Ok((
            out.cut.map(|cert| Hit {
                value: cert.value,
                cert,
            }),
            out.stats,
        ))
    }
}

/// Vertices not reachable from `r` when zero-capacity vertices other than
/// `r` are deleted; nonempty exactly when a zero-value `r`-cut exists.
fn zero_cut_component(g: &VertexCapGraph, root: VertexId) -> Vec<VertexId> {
    let mut seen = vec![false; g.n];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        if u != root && g.vcap[u] == Capacity::ZERO {
            continue;
        }
        for &v in &g.out_adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    (0..g.n).filter(|&v| !seen[v]).collect()
}

fn best_singleton_rooted(g: &VertexCapGraph, admissible: &[bool]) -> Option<VertexCutCertificate> {
    (0..g.n)
        .filter(|&v| admissible[v])
        .map(|v| VertexCutCertificate::from_component(g, [v], Orientation::Forward))
        .min_by(|a, b| a.value.cmp(&b.value))
}

/// Returns `None` when `V'` is empty. `g` must already be in the units the
/// search should use; `exact` selects the integer doubling search.
fn rooted_vertex_impl(
    g: &VertexCapGraph,
    root: VertexId,
    cfg: &SolverConfig,
    exact: bool,
) -> Result<Option<(VertexCutCertificate, SolveStats)>> {
    g.check_vertex(root)?;
    cfg.check_sample_const()?;
    let admissible = g.admissible_sinks(root);
    let Some(initial) = best_singleton_rooted(g, &admissible) else {
        return Ok(None);
    };
    let zero = zero_cut_component(g, root);
    if !zero.is_empty() {
        let cert = VertexCutCertificate::from_component(g, zero, Orientation::Forward);
        debug_assert_eq!(cert.value, Capacity::ZERO);
        return Ok(Some((cert, SolveStats::default())));
    }
    if exact {
        let prober = VertexProber {
            work: g,
            root,
            mus: mu_values(g.m()),
            sample_const: cfg.sample_const,
            seed: cfg.seed,
        };
        let start = Hit {
            value: initial.value,
            cert: initial,
        };
        let (best, stats) = doubling_search(&prober, start)?;
        return Ok(Some((best.cert, stats)));
    }
    let eps = cfg.effective_epsilon()?;
    // Every cut has a positive-capacity vertex, since no zero cut exists.
    let lower = g
        .vcap
        .iter()
        .copied()
        .filter(|c| c.0 > 0)
        .min()
        .expect("positive capacity");
    if initial.value <= lower {
        return Ok(Some((initial, SolveStats::default())));
    }
    let eps = eps.div_int(3);
    let factor = (64 * eps.den()).div_ceil(lower.0).max(1);
    let work = g.scaled_by(factor)?;
    let prober = VertexProber {
        work: &work,
        root,
        mus: mu_values(g.m()),
        sample_const: cfg.sample_const,
        seed: cfg.seed,
    };
    let start = Hit {
        value: initial.value.checked_mul(factor)?,
        cert: initial,
    };
    let (best, stats) = geometric_search(&prober, lower.checked_mul(factor)?, start, eps)?;
    Ok(Some((best.cert, stats)))
}

fn restate(g: &VertexCapGraph, cert: &VertexCutCertificate) -> VertexCutCertificate {
    let oriented;
    let h = match cert.orientation {
        Orientation::Forward => g,
        Orientation::Reverse => {
            oriented = g.reverse();
            &oriented
        }
    };
    VertexCutCertificate::from_component(h, cert.sink_component.iter().copied(), cert.orientation)
}

const NO_ADMISSIBLE: &str = "the root is adjacent to every other vertex";

/// `(1+ε)`-approximate minimum vertex `r`-cut, with high probability. The
/// separator is always a valid `r`-cut of `g` with its exact value.
pub fn approx_rooted_vertex_cut(g: &VertexCapGraph, root: VertexId, cfg: &SolverConfig) -> Result<VertexCut> {
    let out = search::install(cfg.threads, || rooted_vertex_impl(g, root, cfg, false))?;
    let (cert, stats) = out.ok_or(Error::NoVertexCut(NO_ADMISSIBLE))?;
    Ok(VertexCut {
        cert: restate(g, &cert),
        roots: vec![root],
        stats,
    })
}

/// `δ = min_v min(c(N⁻(v)), c(N⁺(v)))`.
pub fn singleton_bound(g: &VertexCapGraph) -> Capacity {
    (0..g.n)
        .map(|v| g.cap_of(&g.in_adj[v]).min(g.cap_of(&g.out_adj[v])))
        .min()
        .unwrap_or(Capacity::ZERO)
}

/// Number of roots `ℓ = min(⌈2 ln n/ε⌉, ⌈2 c(V) ln n/(c(V) − δ)⌉)`,
/// clamped to `[1, n]`.
pub fn root_count(g: &VertexCapGraph, epsilon: Rational) -> usize {
    const K: f64 = 2.0;
    let ln_n = (g.n.max(2) as f64).ln();
    let by_eps = (K * ln_n / epsilon.to_f64()).ceil();
    let total = g.total_cap();
    let delta = singleton_bound(g);
    let by_delta = if total > delta {
        let frac = (total.0 - delta.0) as f64 / total.0 as f64;
        (K * ln_n / frac).ceil()
    } else {
        f64::INFINITY
    };
    (by_eps.min(by_delta) as usize).clamp(1, g.n.max(1))
}

/// Draws `root_count` roots i.i.d. proportionally to capacity; returns the
/// distinct roots in draw order.
pub fn sample_roots<R: Rng + ?Sized>(g: &VertexCapGraph, epsilon: Rational, rng: &mut R) -> Result<Vec<VertexId>> {
    if g.n < 2 {
        return Err(Error::NoSinkCandidate);
    }
    if epsilon.is_zero() {
        return Err(Error::InvalidEpsilon(epsilon.to_string()));
    }
    let mut prefix = Vec::with_capacity(g.n);
    let mut acc = 0u128;
    for c in &g.vcap {
        acc += c.0;
        prefix.push(acc);
    }
    if acc == 0 {
        return Err(Error::ZeroCapacities);
    }
    let mut roots = Vec::new();
    for _ in 0..root_count(g, epsilon) {
        let x = rng.gen_range(0..acc);
        let v = prefix.partition_point(|&p| p <= x);
        if !roots.contains(&v) {
            roots.push(v);
        }
    }
    Ok(roots)
}

/// Deletes every arc `(u,v)` with `v ∈ N⁺(r)` and `u ≠ r`, and every arc
/// into `r`. Neither kind can lie on a path that matters to an `r`-cut.
pub fn prune_for_root(g: &VertexCapGraph, root: VertexId) -> VertexCapGraph {
    let mut hit = vec![false; g.n];
    for &v in &g.out_adj[root] {
        hit[v] = true;
    }
    g.without_arcs(|u, v| v == root || (hit[v] && u != root))
}

/// A value-0 global cut if `g` minus its zero-capacity vertices is not
/// strongly connected, or if everything has zero capacity.
fn global_zero_cut(g: &VertexCapGraph) -> Option<VertexCutCertificate> {
    let positive: Vec<VertexId> = (0..g.n).filter(|&v| g.vcap[v].0 > 0).collect();
    let &s = positive.first()?;
    for (h, orientation) in [(g.clone(), Orientation::Forward), (g.reverse(), Orientation::Reverse)] {
        let zero = zero_cut_component(&h, s);
        if !zero.is_empty() {
            return Some(VertexCutCertificate::from_component(&h, zero, orientation));
        }
    }
    None
}

/// Cheapest `N⁻(v)` or `N⁺(v)` that leaves a source side.
fn best_singleton_global(g: &VertexCapGraph) -> Option<VertexCutCertificate> {
    let rev = g.reverse();
    let mut best: Option<VertexCutCertificate> = None;
    for (h, orientation) in [(g, Orientation::Forward), (&rev, Orientation::Reverse)] {
        for v in 0..g.n {
            if h.in_adj[v].len() + 1 < g.n {
                let c = VertexCutCertificate::from_component(h, [v], orientation);
                if best.as_ref().is_none_or(|b| c.value < b.value) {
                    best = Some(c);
                }
            }
        }
    }
    best
}

fn check_global(g: &VertexCapGraph) -> Result<()> {
    if g.n < 2 {
        return Err(Error::NoSinkCandidate);
    }
    if g.is_complete() {
        return Err(Error::NoVertexCut("the graph is complete"));
    }
    Ok(())
}

fn global_vertex_impl(g: &VertexCapGraph, cfg: &SolverConfig, exact: bool) -> Result<VertexCut> {
    check_global(g)?;
    let initial = best_singleton_global(g).expect("incomplete graph has a singleton cut");
    if initial.value == Capacity::ZERO {
        return Ok(VertexCut {
            cert: initial,
            roots: Vec::new(),
            stats: SolveStats::default(),
        });
    }
    if let Some(cert) = global_zero_cut(g) {
        return Ok(VertexCut {
            cert,
            roots: Vec::new(),
            stats: SolveStats::default(),
        });
    }
    let root_eps = if exact {
        Rational::new(1, 1 + initial.value.0.div_ceil(g.scale))
    } else {
        cfg.effective_epsilon()?
    };
    let roots = sample_roots(g, root_eps, &mut search::rng(derive_seed(cfg.seed, u64::MAX, 0)))?;
    let rev = g.reverse();
    let jobs: Vec<(usize, VertexId, Orientation)> = roots
        .iter()
        .enumerate()
        .flat_map(|(i, &r)| [(i, r, Orientation::Forward), (i, r, Orientation::Reverse)])
        .collect();
    let results: Vec<Result<Option<(VertexCutCertificate, SolveStats)>>> = jobs
        .par_iter()
        .map(|&(i, r, orientation)| {
            let base = match orientation {
                Orientation::Forward => g,
                Orientation::Reverse => &rev,
            };
            let sub = SolverConfig {
                seed: derive_seed(cfg.seed, i as u64, orientation as u64),
                ..cfg.clone()
            };
            let pruned = prune_for_root(base, r);
            let out = rooted_vertex_impl(&pruned, r, &sub, exact)?;
            Ok(out.map(|(c, s)| {
                (
                    VertexCutCertificate::from_component(base, c.sink_component, orientation),
                    s,
                )
            }))
        })
        .collect();
    let mut best = initial;
    let mut stats = SolveStats::default();
    for r in results {
        if let Some((cert, s)) = r? {
            stats += s;
            if cert.value < best.value {
                best = cert;
            }
        }
    }
    Ok(VertexCut {
        cert: best,
        roots,
        stats,
    })
}

/// `(1+ε)`-approximate minimum global vertex cut, with high probability.
pub fn approx_global_vertex_cut(g: &VertexCapGraph, cfg: &SolverConfig) -> Result<VertexCut> {
    search::install(cfg.threads, || global_vertex_impl(g, cfg, false))
}

/// Exact minimum vertex cut for integer capacities, with high probability.
pub fn exact_small_vertex_cut(g: &VertexCapGraph, mode: CutMode, cfg: &SolverConfig) -> Result<VertexCut> {
    let int = g.integer_units()?;
    let mut out = match mode {
        CutMode::Rooted(root) => {
            let out = search::install(cfg.threads, || rooted_vertex_impl(&int, root, cfg, true))?;
            let (cert, stats) = out.ok_or(Error::NoVertexCut(NO_ADMISSIBLE))?;
            VertexCut {
                cert,
                roots: vec![root],
                stats,
            }
        }
        CutMode::Global => search::install(cfg.threads, || global_vertex_impl(&int, cfg, true))?,
    };
    out.cert = restate(g, &out.cert);
    Ok(out)
}

/// Minimum vertex `(s,t)`-cut through a max flow from `s_out` to `t_in`.
fn pair_cut(
    g: &VertexCapGraph,
    split: &DiGraph,
    maps: SplitMaps,
    s: VertexId,
    t: VertexId,
) -> Result<VertexCutCertificate> {
    let res = max_flow(split, maps.to_out(s), maps.to_in(t))?;
    let admissible = g.admissible_sinks(s);
    let component = (0..g.n).filter(|&u| admissible[u] && !res.source_side[maps.to_in(u)]);
    let cert = VertexCutCertificate::from_component(g, component, Orientation::Forward);
    debug_assert_eq!(cert.value, res.value);
    Ok(cert)
}

fn rooted_oracle(g: &VertexCapGraph, root: VertexId) -> Result<Option<VertexCutCertificate>> {
    g.check_vertex(root)?;
    let (split, maps) = split_transform(g);
    let admissible = g.admissible_sinks(root);
    let mut best: Option<VertexCutCertificate> = None;
    for t in (0..g.n).filter(|&t| admissible[t]) {
        let c = pair_cut(g, &split, maps, root, t)?;
        if best.as_ref().is_none_or(|b| c.value < b.value) {
            best = Some(c);
        }
    }
    Ok(best)
}

/// Exact minimum vertex cut by one split-graph max flow per admissible
/// pair. Global mode tries every ordered nonadjacent pair.
pub fn exact_vertex_cut_oracle(g: &VertexCapGraph, mode: CutMode) -> Result<VertexCutCertificate> {
    match mode {
        CutMode::Rooted(root) => rooted_oracle(g, root)?.ok_or(Error::NoVertexCut(NO_ADMISSIBLE)),
        CutMode::Global => {
            check_global(g)?;
            let mut best: Option<VertexCutCertificate> = None;
            for s in 0..g.n {
                if let Some(c) = rooted_oracle(g, s)? {
                    if best.as_ref().is_none_or(|b| c.value < b.value) {
                        best = Some(c);
                    }
                }
            }
            Ok(best.expect("incomplete graph has a nonadjacent pair"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const R: usize = 0;

    /// r→a, r→b, a→t, b→t with c(a)=1, c(b)=2.
    fn g2() -> VertexCapGraph {
        VertexCapGraph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)], [5, 1, 2, 5]).unwrap()
    }

    fn path() -> VertexCapGraph {
        VertexCapGraph::new(3, [(0, 1), (1, 2)], [4, 3, 4]).unwrap()
    }

    #[test]
    fn construction_drops_loops_and_duplicates() {
        let g = VertexCapGraph::new(2, [(0, 1), (0, 1), (1, 1)], [1, 1]).unwrap();
        assert_eq!(g.arcs(), &[(0, 1)]);
        assert!(VertexCapGraph::new(2, [(0, 2)], [1, 1]).is_err());
        assert!(VertexCapGraph::new(2, [(0, 1)], [1]).is_err());
    }

    #[test]
    fn split_shape() {
        let (h, maps) = split_transform(&g2());
        assert_eq!((h.n(), h.m()), (8, 8));
        assert_eq!(h.arcs()[1].tail, maps.to_in(1));
        assert_eq!(h.arcs()[1].head, maps.to_out(1));
        assert_eq!(h.arcs()[1].cap, Capacity(1));
        assert!(h.arcs()[4..].iter().all(|a| h.is_infinite(a)));
        assert_eq!(maps.vertex_of(7), 3);
    }

    #[test]
    fn split_flow_examples() {
        let g = path();
        let (h, maps) = split_transform(&g);
        assert_eq!(max_flow(&h, maps.to_out(0), maps.to_in(2)).unwrap().value, Capacity(3));
        let g = g2();
        let (h, maps) = split_transform(&g);
        assert_eq!(max_flow(&h, maps.to_out(0), maps.to_in(3)).unwrap().value, Capacity(3));
    }

    #[test]
    fn oracle_examples() {
        let c = exact_vertex_cut_oracle(&g2(), CutMode::Rooted(R)).unwrap();
        assert_eq!((c.separator.clone(), c.value), (vec![1, 2], Capacity(3)));
        let c = exact_vertex_cut_oracle(&path(), CutMode::Rooted(R)).unwrap();
        assert_eq!((c.separator.clone(), c.value), (vec![1], Capacity(3)));
        let k4 = VertexCapGraph::new(4, (0..4).flat_map(|u| (0..4).map(move |v| (u, v))), [1; 4]).unwrap();
        assert!(matches!(
            exact_vertex_cut_oracle(&k4, CutMode::Global),
            Err(Error::NoVertexCut(_))
        ));
    }

    #[test]
    fn certificate_check() {
        let g = g2();
        let c = VertexCutCertificate::from_component(&g, [3], Orientation::Forward);
        assert_eq!(c.check(&g, Some(R)), Ok(()));
        let mut bad = c.clone();
        bad.separator = vec![1];
        assert_eq!(bad.check(&g, Some(R)), Err(VertexCertViolation::WrongSeparator));
        let mut bad = c.clone();
        bad.value = Capacity(2);
        assert!(matches!(
            bad.check(&g, Some(R)),
            Err(VertexCertViolation::WrongValue { .. })
        ));
        let root_in = VertexCutCertificate::from_component(&g, [1], Orientation::Forward);
        assert_eq!(root_in.check(&g, Some(R)), Err(VertexCertViolation::RootInCut));
        let rev = VertexCutCertificate::from_component(&g.reverse(), [0], Orientation::Reverse);
        assert_eq!(rev.separator, vec![1, 2]);
        assert_eq!(rev.check(&g, None), Ok(()));
    }

    #[test]
    fn precondition_caps() {
        let g = g2();
        let cond = precondition_split_rooted(&g, R, Capacity(3), 2, Rational::new(1, 5)).unwrap();
        let k = cond.factor;
        // ελ/4n = 3/80 and 2λ = 6 leave every capacity as is.
        let caps: Vec<u128> = cond.h.arcs()[..4].iter().map(|a| a.cap.0).collect();
        assert_eq!(caps, vec![5 * k, k, 2 * k, 5 * k]);
        // Auxiliary arc to t_in (in-degree 2): ελ·2/6μ = 1/10.
        let aux = cond
            .h
            .arcs()
            .iter()
            .zip(&cond.auxiliary)
            .find(|(a, &x)| x && a.head == 6)
            .unwrap()
            .0;
        assert_eq!(aux.cap.0 * 10, k);
        assert_eq!(cond.connectivity.0 * 5, 18 * k);
        // φ = ελ/12μ.
        assert_eq!(cond.phi.0 * 40, k);
    }

    #[test]
    fn precondition_floor() {
        let g = VertexCapGraph::new(2, [(0, 1)], [0, 0]).unwrap();
        let cond = precondition_split_rooted(&g, R, Capacity(8), 1, Rational::new(1, 2)).unwrap();
        // ελ/4n = 1/2.
        assert_eq!(cond.h.arcs()[0].cap.0 * 2, cond.factor);
    }

    #[test]
    fn rooted_examples() {
        for seed in 0..20 {
            let cfg = SolverConfig::new(Rational::new(1, 5), seed);
            let c = approx_rooted_vertex_cut(&g2(), R, &cfg).unwrap();
            assert_eq!((c.cert.separator.clone(), c.cert.value), (vec![1, 2], Capacity(3)));
            let cfg = SolverConfig::new(Rational::new(1, 2), seed);
            let c = approx_rooted_vertex_cut(&path(), R, &cfg).unwrap();
            assert_eq!((c.cert.separator.clone(), c.cert.value), (vec![1], Capacity(3)));
        }
        let full = VertexCapGraph::new(3, [(0, 1), (0, 2)], [1, 1, 1]).unwrap();
        assert!(matches!(
            approx_rooted_vertex_cut(&full, R, &SolverConfig::default()),
            Err(Error::NoVertexCut(_))
        ));
    }

    #[test]
    fn rooted_zero_cut() {
        let g = VertexCapGraph::new(4, [(0, 1), (1, 2), (2, 3)], [1, 1, 0, 1]).unwrap();
        let c = approx_rooted_vertex_cut(&g, R, &SolverConfig::default()).unwrap();
        assert_eq!((c.cert.separator.clone(), c.cert.value), (vec![2], Capacity(0)));
        assert!(c.cert.check(&g, Some(R)).is_ok());
    }

    #[test]
    fn delta_on_cycle() {
        let g = VertexCapGraph::new(3, [(0, 1), (1, 2), (2, 0)], [3, 1, 2]).unwrap();
        assert_eq!(singleton_bound(&g), Capacity(1));
        let eps = Rational::new(1, 100);
        assert!(root_count(&g, eps) <= (2.0 * 3f64.ln() / 0.01).ceil() as usize);
    }

    #[test]
    fn roots_are_proportional() {
        let g = VertexCapGraph::new(3, [(0, 1), (1, 2), (2, 0)], [1, 0, 3]).unwrap();
        let mut rng = search::rng(5);
        let mut counts = [0usize; 3];
        for _ in 0..4000 {
            let x = sample_roots(&g, Rational::new(1, 1), &mut rng).unwrap();
            counts[x[0]] += 1;
        }
        assert_eq!(counts[1], 0);
        assert!((2800..3200).contains(&counts[2]), "{counts:?}");
        let zero = VertexCapGraph::new(2, [(0, 1)], [0, 0]).unwrap();
        assert_eq!(
            sample_roots(&zero, Rational::new(1, 2), &mut rng),
            Err(Error::ZeroCapacities)
        );
    }

    #[test]
    fn prune_examples() {
        assert_eq!(prune_for_root(&g2(), R).arcs(), g2().arcs());
        let extra = VertexCapGraph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 1)], [5, 1, 2, 5]).unwrap();
        assert_eq!(prune_for_root(&extra, R).arcs(), g2().arcs());
        let n = 5;
        let star = VertexCapGraph::new(
            n,
            (1..n)
                .map(|v| (0, v))
                .chain((1..n).flat_map(|u| (1..n).filter(move |&v| v != u).map(move |v| (u, v)))),
            [1; 5],
        )
        .unwrap();
        assert_eq!(star.m(), n - 1 + (n - 1) * (n - 2));
        assert_eq!(prune_for_root(&star, R).m(), n - 1);
    }

    #[test]
    fn global_examples() {
        let g = g2();
        let c = approx_global_vertex_cut(&g, &SolverConfig::default()).unwrap();
        assert_eq!(c.cert.value, Capacity(0));
        assert!(c.cert.check(&g, None).is_ok());

        let cyc = VertexCapGraph::new(
            4,
            [(0, 1), (1, 2), (2, 3), (3, 0), (1, 0), (2, 1), (3, 2), (0, 3)],
            [5, 1, 5, 1],
        )
        .unwrap();
        let oracle = exact_vertex_cut_oracle(&cyc, CutMode::Global).unwrap();
        assert_eq!(oracle.value, Capacity(2));
        for seed in 0..10 {
            let c = approx_global_vertex_cut(&cyc, &SolverConfig::new(Rational::new(1, 5), seed)).unwrap();
            assert!(c.cert.check(&cyc, None).is_ok());
            assert!(c.cert.value.0 * 5 <= oracle.value.0 * 6);
        }
        let k4 = VertexCapGraph::new(4, (0..4).flat_map(|u| (0..4).map(move |v| (u, v))), [1; 4]).unwrap();
        assert!(matches!(
            approx_global_vertex_cut(&k4, &SolverConfig::default()),
            Err(Error::NoVertexCut(_))
        ));
    }

    #[test]
    fn exact_small_examples() {
        let c = exact_small_vertex_cut(&path(), CutMode::Rooted(R), &SolverConfig::default()).unwrap();
        assert_eq!(c.cert.value, Capacity(3));
        let unit = VertexCapGraph::new(3, [(0, 1), (1, 2)], [1, 1, 1]).unwrap();
        let c = exact_small_vertex_cut(&unit, CutMode::Rooted(R), &SolverConfig::default()).unwrap();
        assert_eq!((c.cert.separator.clone(), c.cert.value), (vec![1], Capacity(1)));
        assert_eq!(c.stats.lambda_probes, 0);
        let frac = path().with_scale(2);
        assert_eq!(
            exact_small_vertex_cut(&frac, CutMode::Rooted(R), &SolverConfig::default()).err(),
            Some(Error::NonIntegerCapacities)
        );
    }
}
