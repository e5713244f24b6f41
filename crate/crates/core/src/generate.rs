//! Random instance families. Every generator is a pure function of its
//! parameters and seed.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{DiGraph, VertexId};
use crate::search;
use crate::vertex::VertexCapGraph;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// Each ordered pair independently with probability `p`, plus the cycle
    /// `0 → 1 → … → n−1 → 0`; capacities uniform in `1..=max_cap`.
    ErdosRenyi { n: usize, p: f64, max_cap: u128 },
    /// A sink set `S` of in-volume `vol` entered by arcs of total capacity
    /// `value`, inside an ambient graph whose singleton in-cuts exceed it.
    PlantedSink { n: usize, vol: usize, value: u128 },
    /// `0 → 1 → … → k−1 → 0` with the given capacities.
    Cycle { caps: Vec<u128> },
    /// Arcs `0 → v` for every `v`, all of capacity `cap`.
    Star { n: usize, cap: u128 },
    /// `layers × width` vertices, forward arcs between consecutive layers
    /// with probability `p` on top of fixed column arcs, and arcs from the
    /// last layer back to the first.
    LayeredDag {
        layers: usize,
        width: usize,
        p: f64,
        max_cap: u128,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::ErdosRenyi { .. } => "erdos-renyi",
            Family::PlantedSink { .. } => "planted-sink",
            Family::Cycle { .. } => "cycle",
            Family::Star { .. } => "star",
            Family::LayeredDag { .. } => "layered-dag",
        }
    }
}

/// The cut planted by [`Family::PlantedSink`], rooted at `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Planted {
    pub root: VertexId,
    pub sink: Vec<VertexId>,
    pub value: u128,
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: DiGraph,
    pub planted: Option<Planted>,
}

fn bad(msg: &str) -> Error {
    Error::InvalidParams(msg.to_string())
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(bad("p must lie in [0, 1]"));
    }
    Ok(())
}

pub fn generate(family: &Family, seed: u64) -> Result<Generated> {
    let mut rng = search::rng(seed);
    let mut planted = None;
    let (n, arcs) = match family {
        &Family::ErdosRenyi { n, p, max_cap } => {
            check_p(p)?;
            if n < 2 || max_cap == 0 {
                return Err(bad("erdos-renyi needs n >= 2 and max_cap >= 1"));
            }
            let mut arcs = Vec::new();
            for u in 0..n {
                arcs.push((u, (u + 1) % n, rng.gen_range(1..=max_cap)));
                for v in 0..n {
                    if v != u && v != (u + 1) % n && rng.gen_bool(p) {
                        arcs.push((u, v, rng.gen_range(1..=max_cap)));
                    }
                }
            }
            (n, arcs)
        }
        &Family::PlantedSink { n, vol, value } => {
            let (arcs, p) = planted_sink(n, vol, value, &mut rng)?;
            planted = Some(p);
            (n, arcs)
        }
        Family::Cycle { caps } => {
            let k = caps.len();
            if k < 2 {
                return Err(bad("cycle needs at least two capacities"));
            }
            (k, caps.iter().enumerate().map(|(u, &c)| (u, (u + 1) % k, c)).collect())
        }
        &Family::Star { n, cap } => {
            if n < 2 {
                return Err(bad("star needs n >= 2"));
            }
            (n, (1..n).map(|v| (0, v, cap)).collect())
        }
        &Family::LayeredDag {
            layers,
            width,
            p,
            max_cap,
        } => {
            check_p(p)?;
            if layers < 2 || width == 0 || max_cap == 0 {
                return Err(bad("layered-dag needs layers >= 2, width >= 1, max_cap >= 1"));
            }
            let id = |l: usize, i: usize| l * width + i;
            let mut arcs = Vec::new();
            for l in 0..layers - 1 {
                for i in 0..width {
                    // Column arcs plus the back arcs below make the graph strongly connected.
                    arcs.push((id(l, i), id(l + 1, i), rng.gen_range(1..=max_cap)));
                    for j in 0..width {
                        if j != i && rng.gen_bool(p) {
                            arcs.push((id(l, i), id(l + 1, j), rng.gen_range(1..=max_cap)));
                        }
                    }
                }
            }
            for i in 0..width {
                arcs.push((id(layers - 1, i), id(0, (i + 1) % width), rng.gen_range(1..=max_cap)));
            }
            (layers * width, arcs)
        }
    };
    Ok(Generated {
        graph: DiGraph::new(n, arcs)?,
        planted,
    })
}

type Arcs = Vec<(VertexId, VertexId, u128)>;

/// Root 0; the sink is the last `k` vertices.
fn planted_sink<R: Rng>(n: usize, vol: usize, value: u128, rng: &mut R) -> Result<(Arcs, Planted)> {
    if value == 0 || vol < 2 {
        return Err(bad("planted-sink needs value >= 1 and vol >= 2"));
    }
    let entering = (vol / 4).clamp(1, value.min(usize::MAX as u128) as usize);
    let internal = vol - entering;
    let mut k = 2;
    while k * (k - 1) < internal.max(k) {
        k += 1;
    }
    if internal < k {
        // A cycle through S already uses k internal arcs.
        return Err(bad("vol too small for a strongly connected sink"));
    }
    if n < k + 3 {
        return Err(bad("n too small for the requested sink volume"));
    }
    let outside = n - k;
    let heavy = || 4 * value + 4;
    let mut arcs: Arcs = Vec::new();
    // Ambient part: cycle plus sparse random arcs, every arc heavier than value.
    let p = (6.0 / outside as f64).min(1.0);
    for u in 0..outside {
        arcs.push((u, (u + 1) % outside, rng.gen_range(value + 1..=heavy())));
        for v in 0..outside {
            if v != u && v != (u + 1) % outside && rng.gen_bool(p) {
                arcs.push((u, v, rng.gen_range(value + 1..=heavy())));
            }
        }
    }
    let sink: Vec<VertexId> = (outside..n).collect();
    for i in 0..k {
        arcs.push((sink[i], sink[(i + 1) % k], heavy()));
    }
    let mut pairs: Vec<(VertexId, VertexId)> = sink
        .iter()
        .flat_map(|&u| sink.iter().map(move |&v| (u, v)))
        .filter(|&(u, v)| u != v && v != outside + (u - outside + 1) % k)
        .collect();
    pairs.shuffle(rng);
    for &(u, v) in pairs.iter().take(internal - k) {
        arcs.push((u, v, heavy()));
    }
    let base = value / entering as u128;
    for i in 0..entering {
        let c = base + u128::from((i as u128) < value % entering as u128);
        let u = rng.gen_range(0..outside);
        let v = sink[rng.gen_range(0..k)];
        arcs.push((u, v, c));
    }
    for &s in &sink {
        arcs.push((s, rng.gen_range(0..outside), heavy()));
    }
    Ok((arcs, Planted { root: 0, sink, value }))
}

/// Same topology with vertex capacities uniform in `1..=max_cap`.
pub fn with_vertex_caps(g: &DiGraph, max_cap: u128, seed: u64) -> Result<VertexCapGraph> {
    if max_cap == 0 {
        return Err(bad("max_cap must be at least 1"));
    }
    let mut rng = search::rng(seed);
    let caps: Vec<u128> = (0..g.n()).map(|_| rng.gen_range(1..=max_cap)).collect();
    VertexCapGraph::new(g.n(), g.arcs().iter().map(|a| (a.tail, a.head)), caps)
}
