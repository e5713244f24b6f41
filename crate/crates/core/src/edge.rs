//! Approximate minimum rooted and global edge cuts.
//!
//! A λ-probe runs, for every in-volume guess μ, shrink-wrap on the graph
//! preconditioned with root arcs `(r,v)` of weight `ελ·deg⁻(v)/2μ`, with
//! terminals sampled proportionally to in-degree. Any cut it reports is
//! re-evaluated on the untouched input graph before it is trusted.

use rand::Rng;

use crate::capacity::{Capacity, Rational};
use crate::error::{Error, Result};
use crate::graph::{ArcCap, CutCertificate, DiGraph, Orientation, VertexId};
use crate::maxflow::{max_flow, min_cut_sink_side};
use crate::search::{
    self, below_threshold, derive_seed, doubling_search, geometric_search, mu_values, Hit, LevelProbe, ProbeStats,
    SolveStats, SolverConfig,
};
use crate::steiner::{partition_terminals, shrink_wrap_traced, ShrinkWrapTrace, SteinerInstance};

/// Rooted or global problem selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutMode {
    Rooted(VertexId),
    Global,
}

/// Parameters of one well-conditioned Steiner probe.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeConfig {
    /// Connectivity guess, in the units of the probed graph.
    pub lambda: Capacity,
    /// In-volume guess; a power of two.
    pub mu: usize,
    pub epsilon: Rational,
    pub sample_const: f64,
    pub seed: u64,
}

/// A preconditioned graph `H_{λ,μ}`.
///
/// `h` is the input rescaled by `factor` so every derived weight is an
/// integer; `phi`, `lambda` and `connectivity` are in the units of `h`.
#[derive(Clone, Debug)]
pub struct ConditionedGraph {
    pub h: DiGraph,
    /// Rooted conditioning: `c(∂⁻U) ≥ phi · vol⁻_h(U)` for all `U ⊆ V − r`.
    pub phi: Capacity,
    pub lambda: Capacity,
    /// `(1+ε)λ`, the level passed to shrink-wrap.
    pub connectivity: Capacity,
    /// `auxiliary[i]` marks arc `i` of `h` as an added root arc.
    pub auxiliary: Vec<bool>,
    pub factor: u128,
}

fn mul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::CapacityOverflow)
}

fn mul_all(xs: &[u128]) -> Result<u128> {
    xs.iter().try_fold(1u128, |acc, &x| mul(acc, x))
}

fn check_mu(mu: usize) -> Result<()> {
    if mu == 0 || !mu.is_power_of_two() {
        return Err(Error::InvalidMu(mu));
    }
    Ok(())
}

/// Adds root arcs of capacity `ελ·deg⁻(v)/2μ` and clamps original arcs into
/// `[ελ/2m, 2λ]`. Expects `g` with parallel arcs merged.
pub fn precondition_rooted(
    g: &DiGraph,
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
    check_mu(mu)?;
    let (ep, eq) = (epsilon.num(), epsilon.den());
    let m = g.m().max(1) as u128;
    let mu = mu as u128;
    let lam = lambda.0;
    // Common factor 4·q·μ·m makes ελ/2m, ελ·deg/2μ and ελ/4μ integral.
    let factor = mul_all(&[4, eq, mu, m])?;
    let floor = mul_all(&[2, ep, lam, mu])?;
    let ceiling = mul_all(&[2, lam, factor])?;
    let phi = mul_all(&[ep, lam, m])?;
    let connectivity = mul_all(&[eq + ep, lam, 4, mu, m])?;

    let deg = g.in_degrees();
    let mut arcs = Vec::with_capacity(g.m() + g.n());
    let mut auxiliary = Vec::with_capacity(g.m() + g.n());
    for (u, v, c) in g.arc_caps() {
        let c = match c {
            ArcCap::Finite(c) => ArcCap::Finite(Capacity(mul(c.0, factor)?.clamp(floor, ceiling))),
            ArcCap::Infinite => ArcCap::Infinite,
        };
        arcs.push((u, v, c));
        auxiliary.push(false);
    }
    for v in (0..g.n()).filter(|&v| v != root && deg[v] > 0) {
        let cap = mul_all(&[2, ep, lam, deg[v] as u128, m])?;
        arcs.push((root, v, ArcCap::Finite(Capacity(cap))));
        auxiliary.push(true);
    }
    let scale = mul(g.scale(), factor)?;
    Ok(ConditionedGraph {
        h: DiGraph::from_arc_caps(g.n(), arcs, scale)?,
        phi: Capacity(phi),
        lambda: Capacity(mul(lam, factor)?),
        connectivity: Capacity(connectivity),
        auxiliary,
        factor,
    })
}

/// Inclusion probability `min(1, c·ln(n)·deg/μ)`.
pub(crate) fn sample_probability(n: usize, deg: usize, mu: usize, sample_const: f64) -> f64 {
    let p = sample_const * (n.max(2) as f64).ln() * deg as f64 / mu as f64;
    p.min(1.0)
}

/// Samples each non-root vertex independently with probability
/// `min(1, c·ln(n)·deg⁻(v)/μ)`, using the in-degrees of `g`.
pub fn sample_terminals<R: Rng + ?Sized>(
    g: &DiGraph,
    root: VertexId,
    mu: usize,
    sample_const: f64,
    rng: &mut R,
) -> Vec<VertexId> {
    let deg = g.in_degrees();
    let n = g.n();
    (0..n)
        .filter(|&v| v != root)
        .filter(|&v| {
            let draw: f64 = rng.gen();
            draw < sample_probability(n, deg[v], mu, sample_const)
        })
        .collect()
}

/// Outcome of [`probe_rooted_edge`].
#[derive(Clone, Debug)]
pub struct ProbeOutcome {
    /// A cut of `g` with value `< (1+ε)λ`, if one was found.
    pub cut: Option<CutCertificate>,
    pub stats: ProbeStats,
    /// One trace per terminal group.
    pub traces: Vec<ShrinkWrapTrace>,
}

/// Terminal group size `⌊φ·m/λ⌋`, at least 1.
pub(crate) fn group_cap(phi: Capacity, m: usize, connectivity: Capacity) -> usize {
    let top = phi.0.saturating_mul(m as u128) / connectivity.0.max(1);
    top.clamp(1, usize::MAX as u128) as usize
}

pub(crate) fn run_groups<F>(
    h: &DiGraph,
    root: VertexId,
    terminals: &[VertexId],
    cap: usize,
    connectivity: Capacity,
    mut on_below: F,
) -> Result<(ProbeStats, Vec<ShrinkWrapTrace>)>
where
    F: FnMut(&CutCertificate),
{
    let mut stats = ProbeStats {
        terminals: terminals.len() as u64,
        ..ProbeStats::default()
    };
    let mut traces = Vec::new();
    for group in partition_terminals(terminals, cap) {
        let inst = SteinerInstance::new(h, root, group.iter().copied(), connectivity)?;
        let mut trace = ShrinkWrapTrace::default();
        let outcome = shrink_wrap_traced(&inst, &mut trace);
        for (_, cut) in outcome.below() {
            on_below(cut);
        }
        stats.groups += 1;
        stats.flow_calls += trace.flow_calls;
        stats.batched_flow_rounds += trace.batched_flow_rounds();
        stats.flow_budget += trace.flow_budget(group.len());
        traces.push(trace);
    }
    Ok((stats, traces))
}

fn smaller_cut(best: &mut Option<CutCertificate>, cand: CutCertificate) {
    let replace = match best {
        None => true,
        Some(b) => (cand.value, &cand.sink_set) < (b.value, &b.sink_set),
    };
    if replace {
        *best = Some(cand);
    }
}

/// One (λ, μ) probe on a merged graph `g`.
pub fn probe_rooted_edge(g: &DiGraph, root: VertexId, cfg: &ProbeConfig) -> Result<ProbeOutcome> {
    let cond = precondition_rooted(g, root, cfg.lambda, cfg.mu, cfg.epsilon)?;
    let mut rng = search::rng(cfg.seed);
    let terminals = sample_terminals(g, root, cfg.mu, cfg.sample_const, &mut rng);
    let mut best: Option<CutCertificate> = None;
    let cap = group_cap(cond.phi, cond.h.m(), cond.connectivity);
    let (stats, traces) = run_groups(&cond.h, root, &terminals, cap, cond.connectivity, |cut| {
        let cert = CutCertificate::from_sink_set(g, cut.sink_set.iter().copied());
        if below_threshold(cert.value, cfg.lambda, cfg.epsilon) {
            smaller_cut(&mut best, cert);
        }
    })?;
    Ok(ProbeOutcome {
        cut: best,
        stats,
        traces,
    })
}

/// A rooted edge cut in the graph named by `orientation`.
#[derive(Clone, Debug)]
pub struct EdgeCut {
    pub root: VertexId,
    /// `Reverse` means `cert` is a cut of the reversed input: its sink set
    /// is a source component of the input.
    pub orientation: Orientation,
    pub cert: CutCertificate,
    pub stats: SolveStats,
}

impl EdgeCut {
    /// The crossing arcs as arcs of the input graph.
    pub fn input_arcs(&self) -> Vec<(VertexId, VertexId, Capacity)> {
        self.cert
            .crossing_arcs
            .iter()
            .map(|a| match self.orientation {
                Orientation::Forward => (a.tail, a.head, a.cap),
                Orientation::Reverse => (a.head, a.tail, a.cap),
            })
            .collect()
    }
}

struct EdgeProber<'a> {
    work: &'a DiGraph,
    input: &'a DiGraph,
    root: VertexId,
    /// work units per input unit.
    factor: u128,
    mus: Vec<usize>,
    sample_const: f64,
    seed: u64,
}

impl LevelProbe for EdgeProber<'_> {
    type Cert = CutCertificate;

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
    ) -> Result<(Option<Hit<CutCertificate>>, ProbeStats)> {
        let cfg = ProbeConfig {
            lambda,
            mu,
            epsilon: eps,
            sample_const: self.sample_const,
            seed,
        };
        let out = probe_rooted_edge(self.work, self.root, &cfg)?;
        let hit = match out.cut {
            Some(c) => {
                let cert = CutCertificate::from_sink_set(self.input, c.sink_set);
                Some(Hit {
                    value: cert.value.checked_mul(self.factor)?,
                    cert,
                })
            }
            None => None,
        };
        Ok((hit, out.stats))
    }
}

/// Cheapest singleton in-cut `∂⁻{v}`, `v ≠ r`.
fn best_singleton(g: &DiGraph, root: VertexId) -> CutCertificate {
    let mut into = vec![Capacity::ZERO; g.n()];
    for a in g.arcs() {
        into[a.head] += a.cap;
    }
    let v = (0..g.n())
        .filter(|&v| v != root)
        .min_by_key(|&v| (into[v], v))
        .expect("at least two vertices");
    CutCertificate::from_sink_set(g, [v])
}

/// Handles the cases with an immediate exact answer. Returns the merged
/// positive-arc working graph otherwise.
fn prepare_rooted(g: &DiGraph, root: VertexId) -> Result<std::result::Result<DiGraph, CutCertificate>> {
    g.check_vertex(root)?;
    if g.n() < 2 {
        return Err(Error::NoSinkCandidate);
    }
    let work = g.without_zero_arcs().merge_parallel();
    let reach = work.reachable_from(root);
    if reach.iter().any(|&r| !r) {
        let unreachable = (0..g.n()).filter(|&v| !reach[v]);
        return Ok(Err(CutCertificate::from_sink_set(g, unreachable)));
    }
    Ok(Ok(work))
}

fn rooted_edge_impl(g: &DiGraph, root: VertexId, cfg: &SolverConfig) -> Result<(CutCertificate, SolveStats)> {
    let eps = cfg.effective_epsilon()?;
    cfg.check_sample_const()?;
    let work = match prepare_rooted(g, root)? {
        Ok(w) => w,
        Err(cert) => return Ok((cert, SolveStats::default())),
    };
    let initial = best_singleton(g, root);
    let lower = work.min_positive_cap().expect("reachable graph has a positive arc");
    if initial.value <= lower {
        return Ok((initial, SolveStats::default()));
    }
    // Two grid steps of (1+ε/3) stay within 1+ε.
    let eps = eps.div_int(3);
    let factor = (64 * eps.den()).div_ceil(lower.0).max(1);
    let scaled = work.scaled_by(factor)?;
    let prober = EdgeProber {
        work: &scaled,
        input: g,
        root,
        factor,
        mus: mu_values(work.m()),
        sample_const: cfg.sample_const,
        seed: cfg.seed,
    };
    let start = Hit {
        value: initial.value.checked_mul(factor)?,
        cert: initial,
    };
    let (best, stats) = geometric_search(&prober, lower.checked_mul(factor)?, start, eps)?;
    Ok((best.cert, stats))
}

/// `(1+ε)`-approximate minimum `r`-cut, with high probability. The result is
/// always a valid `r`-cut of `g` carrying its exact value.
pub fn approx_rooted_edge_cut(g: &DiGraph, root: VertexId, cfg: &SolverConfig) -> Result<EdgeCut> {
    let (cert, stats) = search::install(cfg.threads, || rooted_edge_impl(g, root, cfg))?;
    Ok(EdgeCut {
        root,
        orientation: Orientation::Forward,
        cert,
        stats,
    })
}

const GLOBAL_ROOT: VertexId = 0;

fn both_orientations<F>(g: &DiGraph, cfg: &SolverConfig, solve: F) -> Result<EdgeCut>
where
    F: Fn(&DiGraph, &SolverConfig) -> Result<(CutCertificate, SolveStats)> + Sync,
{
    if g.n() < 2 {
        return Err(Error::NoSinkCandidate);
    }
    let rev = g.reverse();
    let rev_cfg = SolverConfig {
        seed: derive_seed(cfg.seed, u64::MAX, 1),
        ..cfg.clone()
    };
    let (fwd, bwd) = search::install(cfg.threads, || rayon::join(|| solve(g, cfg), || solve(&rev, &rev_cfg)));
    let (fwd, mut stats) = fwd?;
    let (bwd, bstats) = bwd?;
    stats += bstats;
    let (orientation, cert) = if bwd.value < fwd.value {
        (Orientation::Reverse, bwd)
    } else {
        (Orientation::Forward, fwd)
    };
    Ok(EdgeCut {
        root: GLOBAL_ROOT,
        orientation,
        cert,
        stats,
    })
}

/// `(1+ε)`-approximate minimum global cut: the better of the rooted cuts
/// at vertex 0 in `g` and in its reversal.
pub fn approx_global_edge_cut(g: &DiGraph, cfg: &SolverConfig) -> Result<EdgeCut> {
    both_orientations(g, cfg, |h, c| rooted_edge_impl(h, GLOBAL_ROOT, c))
}

/// Exact minimum `r`-cut by one max-flow per non-root vertex.
pub fn exact_rooted_edge_cut_oracle(g: &DiGraph, root: VertexId) -> Result<CutCertificate> {
    g.check_vertex(root)?;
    let mut best: Option<CutCertificate> = None;
    for t in (0..g.n()).filter(|&t| t != root) {
        let res = max_flow(g, root, t)?;
        if best.as_ref().is_none_or(|b| res.value < b.value) {
            best = Some(min_cut_sink_side(g, &res));
        }
    }
    best.ok_or(Error::NoSinkCandidate)
}

/// Exact minimum global cut via the rooted oracle in both orientations.
pub fn exact_global_edge_cut_oracle(g: &DiGraph) -> Result<EdgeCut> {
    both_orientations(
        g,
        &SolverConfig {
            threads: 0,
            ..SolverConfig::default()
        },
        |h, _| Ok((exact_rooted_edge_cut_oracle(h, GLOBAL_ROOT)?, SolveStats::default())),
    )
}

/// Divides numerators by the scale; fails unless every capacity is an integer.
pub(crate) fn integer_units(g: &DiGraph) -> Result<DiGraph> {
    let s = g.scale();
    let mut arcs = Vec::with_capacity(g.m());
    for (u, v, c) in g.arc_caps() {
        arcs.push((
            u,
            v,
            match c {
                ArcCap::Finite(c) if c.0 % s == 0 => ArcCap::Finite(Capacity(c.0 / s)),
                ArcCap::Finite(_) => return Err(Error::NonIntegerCapacities),
                ArcCap::Infinite => ArcCap::Infinite,
            },
        ));
    }
    DiGraph::from_arc_caps(g.n(), arcs, 1)
}

fn small_rooted_edge_impl(g: &DiGraph, root: VertexId, cfg: &SolverConfig) -> Result<(CutCertificate, SolveStats)> {
    cfg.check_sample_const()?;
    let int = integer_units(g)?;
    let work = match prepare_rooted(&int, root)? {
        Ok(w) => w,
        Err(cert) => return Ok((CutCertificate::from_sink_set(g, cert.sink_set), SolveStats::default())),
    };
    let initial = best_singleton(&int, root);
    let prober = EdgeProber {
        work: &work,
        input: &int,
        root,
        factor: 1,
        mus: mu_values(work.m()),
        sample_const: cfg.sample_const,
        seed: cfg.seed,
    };
    let start = Hit {
        value: initial.value,
        cert: initial,
    };
    let (best, stats) = doubling_search(&prober, start)?;
    Ok((CutCertificate::from_sink_set(g, best.cert.sink_set), stats))
}

/// Exact minimum edge cut for integer capacities, with high probability:
/// doubling then binary search on λ with per-probe ε = 1/(1+λ).
pub fn exact_small_edge_cut(g: &DiGraph, mode: CutMode, cfg: &SolverConfig) -> Result<EdgeCut> {
    match mode {
        CutMode::Rooted(root) => {
            let (cert, stats) = search::install(cfg.threads, || small_rooted_edge_impl(g, root, cfg))?;
            Ok(EdgeCut {
                root,
                orientation: Orientation::Forward,
                cert,
                stats,
            })
        }
        CutMode::Global => both_orientations(g, cfg, |h, c| small_rooted_edge_impl(h, GLOBAL_ROOT, c)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn precondition_g1_aux_caps() {
        let g = g1();
        let cond = precondition_rooted(&g, R, Capacity(2), 4, Rational::new(1, 2)).unwrap();
        let aux: Vec<_> = cond
            .h
            .arcs()
            .iter()
            .zip(&cond.auxiliary)
            .filter(|(_, &x)| x)
            .map(|(a, _)| (a.tail, a.head, a.cap))
            .collect();
        assert_eq!(aux.len(), 2);
        for (t, _, c) in &aux {
            assert_eq!(*t, R);
            // 1/4 in real units.
            assert_eq!(c.0 * 4, cond.factor);
        }
        // (1+ε)λ = 3, φ = ελ/4μ = 1/16 in real units.
        assert_eq!(cond.connectivity.0, 3 * cond.factor);
        assert_eq!(cond.phi.0 * 16, cond.factor);
    }

    #[test]
    fn precondition_g1_conditioning_by_enumeration() {
        let g = g1();
        let cond = precondition_rooted(&g, R, Capacity(2), 4, Rational::new(1, 2)).unwrap();
        for sub in [vec![A], vec![B], vec![A, B]] {
            let mut mask = vec![false; 3];
            for &v in &sub {
                mask[v] = true;
            }
            let cut = cond.h.cut_value(&mask);
            let vol = cond.h.in_volume(&sub).unwrap() as u128;
            assert!(cut.0 >= cond.phi.0 * vol, "U={sub:?}");
        }
        // The literal ελ/2μ also holds on {b}: 9/4 ≥ (1/4)·3.
        let mask = [false, false, true];
        assert!(cond.h.cut_value(&mask).0 * 4 >= cond.factor * 3);
    }

    #[test]
    fn precondition_truncates_original_arcs() {
        let g = DiGraph::new(3, [(0, 1, 1000), (1, 2, 1)]).unwrap();
        let cond = precondition_rooted(&g, 0, Capacity(4), 2, Rational::new(1, 10)).unwrap();
        let orig: Vec<_> = cond
            .h
            .arcs()
            .iter()
            .zip(&cond.auxiliary)
            .filter(|(_, &x)| !x)
            .map(|(a, _)| a.cap.0)
            .collect();
        assert_eq!(orig[0], 2 * 4 * cond.factor);
        assert_eq!(orig[1], cond.factor);
        // Floor ελ/2m = 0.1, below 1.
        let g = DiGraph::new(2, [(0, 1, 1)]).unwrap();
        let cond = precondition_rooted(&g, 0, Capacity(100), 1, Rational::new(1, 2)).unwrap();
        // ελ/2m = 25.
        assert_eq!(cond.h.arcs()[0].cap.0, 25 * cond.factor);
    }

    #[test]
    fn precondition_rejects_bad_params() {
        let g = g1();
        assert_eq!(
            precondition_rooted(&g, R, Capacity(0), 1, Rational::new(1, 2)).err(),
            Some(Error::InvalidLambda)
        );
        assert_eq!(
            precondition_rooted(&g, R, Capacity(1), 3, Rational::new(1, 2)).err(),
            Some(Error::InvalidMu(3))
        );
    }

    #[test]
    fn sampling_edge_cases() {
        let g = DiGraph::new(4, [(0, 1, 1), (0, 2, 1), (1, 2, 1)]).unwrap();
        let mut rng = search::rng(3);
        // μ = 1: every vertex with an in-arc is taken; vertex 3 has none.
        let t = sample_terminals(&g, 0, 1, 2.0, &mut rng);
        assert_eq!(t, vec![1, 2]);
        for seed in 0..50 {
            let t = sample_terminals(&g, 0, 1024, 2.0, &mut search::rng(seed));
            assert!(!t.contains(&3) && !t.contains(&0));
        }
    }

    #[test]
    fn probe_g1_finds_sink_b() {
        let g = g1();
        let cfg = ProbeConfig {
            lambda: Capacity(2),
            mu: 4,
            epsilon: Rational::new(1, 2),
            sample_const: 50.0,
            seed: 1,
        };
        let out = probe_rooted_edge(&g, R, &cfg).unwrap();
        let cut = out.cut.expect("cut found");
        assert!(cut.value < Capacity(3));
        assert!(cut.sink_set.contains(&B));
        assert!(cut.check(&g, R).is_ok());
    }

    #[test]
    fn probe_single_arc() {
        let g = DiGraph::new(2, [(0, 1, 5)]).unwrap();
        let cfg = ProbeConfig {
            lambda: Capacity(5),
            mu: 2,
            epsilon: Rational::new(1, 5),
            sample_const: 10.0,
            seed: 0,
        };
        let out = probe_rooted_edge(&g, 0, &cfg).unwrap();
        assert_eq!(out.cut.map(|c| c.value), Some(Capacity(5)));
    }

    #[test]
    fn probe_is_sound_below_optimum() {
        let g = g1();
        for seed in 0..20 {
            let cfg = ProbeConfig {
                lambda: Capacity(1),
                mu: 4,
                epsilon: Rational::new(1, 2),
                sample_const: 2.0,
                seed,
            };
            if let Some(c) = probe_rooted_edge(&g, R, &cfg).unwrap().cut {
                assert!(c.value.0 * 2 < 3);
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let g = g1();
        let c = exact_rooted_edge_cut_oracle(&g, R).unwrap();
        assert_eq!((c.value, c.sink_set.clone()), (Capacity(2), vec![B]));

        let star = DiGraph::new(4, [(0, 1, 7), (0, 2, 7), (0, 3, 7)]).unwrap();
        assert_eq!(exact_rooted_edge_cut_oracle(&star, 0).unwrap().value, Capacity(7));

        let split = DiGraph::new(3, [(0, 1, 7)]).unwrap();
        assert_eq!(exact_rooted_edge_cut_oracle(&split, 0).unwrap().value, Capacity(0));
    }

    #[test]
    fn approx_rooted_g1() {
        let g = g1();
        let mut exact = 0;
        for seed in 0..100 {
            let cut = approx_rooted_edge_cut(&g, R, &SolverConfig::new(Rational::new(1, 5), seed)).unwrap();
            assert!(cut.cert.check(&g, R).is_ok());
            assert!(cut.cert.value.0 * 5 <= 12);
            if cut.cert.sink_set == vec![B] && cut.cert.value == Capacity(2) {
                exact += 1;
            }
        }
        assert!(exact >= 95);
    }

    #[test]
    fn approx_rooted_star() {
        let g = DiGraph::new(5, [(0, 1, 7), (0, 2, 7), (0, 3, 7), (0, 4, 7)]).unwrap();
        let cut = approx_rooted_edge_cut(&g, 0, &SolverConfig::default()).unwrap();
        assert_eq!(cut.cert.value, Capacity(7));
    }

    #[test]
    fn approx_rooted_unreachable() {
        let g = DiGraph::new(3, [(0, 1, 3), (2, 1, 3)]).unwrap();
        let cut = approx_rooted_edge_cut(&g, 0, &SolverConfig::default()).unwrap();
        assert_eq!(cut.cert.value, Capacity(0));
        assert_eq!(cut.cert.sink_set, vec![2]);
    }

    #[test]
    fn global_examples() {
        let cycle = DiGraph::new(3, [(0, 1, 1), (1, 2, 2), (2, 0, 3)]).unwrap();
        for seed in 0..10 {
            let cut = approx_global_edge_cut(&cycle, &SolverConfig::new(Rational::new(1, 5), seed)).unwrap();
            assert_eq!(cut.cert.value, Capacity(1));
        }
        let two = DiGraph::new(2, [(0, 1, 4), (1, 0, 9)]).unwrap();
        let cut = approx_global_edge_cut(&two, &SolverConfig::default()).unwrap();
        assert_eq!(cut.cert.value, Capacity(4));
        assert_eq!(exact_global_edge_cut_oracle(&two).unwrap().cert.value, Capacity(4));
        let rev_min = DiGraph::new(2, [(0, 1, 9), (1, 0, 4)]).unwrap();
        let cut = approx_global_edge_cut(&rev_min, &SolverConfig::default()).unwrap();
        assert_eq!(cut.orientation, Orientation::Reverse);
        assert_eq!(cut.input_arcs(), vec![(1, 0, Capacity(4))]);
    }

    #[test]
    fn exact_small_matches_oracle_on_g1() {
        let mut g = g1()
            .arcs()
            .iter()
            .map(|a| (a.tail, a.head, a.cap.0))
            .collect::<Vec<_>>();
        g.extend([(A, R, 10), (B, R, 10)]);
        let g = DiGraph::new(3, g).unwrap();
        let oracle = exact_global_edge_cut_oracle(&g).unwrap();
        let cut = exact_small_edge_cut(&g, CutMode::Global, &SolverConfig::default()).unwrap();
        assert_eq!(cut.cert.value, oracle.cert.value);
        let cut = exact_small_edge_cut(&g, CutMode::Rooted(R), &SolverConfig::default()).unwrap();
        assert_eq!(cut.cert.value, Capacity(2));
    }

    #[test]
    fn exact_small_rejects_fractions() {
        let g = DiGraph::new(2, [(0, 1, 5)]).unwrap().with_scale(2);
        assert_eq!(
            exact_small_edge_cut(&g, CutMode::Rooted(0), &SolverConfig::default()).err(),
            Some(Error::NonIntegerCapacities)
        );
    }
}
