//! Outer searches over the connectivity guess λ, shared by the edge and
//! vertex algorithms.

use std::ops::AddAssign;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::capacity::{Capacity, Rational};
use crate::error::{Error, Result};

/// Tunables shared by every randomized entry point.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub epsilon: Rational,
    pub seed: u64,
    /// Multiplier on `ln n` in the sampling probabilities.
    pub sample_const: f64,
    /// Worker threads; 0 uses the ambient rayon pool.
    pub threads: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            epsilon: Rational::new(1, 5),
            seed: 0,
            sample_const: 2.0,
            threads: 1,
        }
    }
}

impl SolverConfig {
    pub fn new(epsilon: Rational, seed: u64) -> SolverConfig {
        SolverConfig {
            epsilon,
            seed,
            ..SolverConfig::default()
        }
    }

    /// ε ≤ 0 is rejected; ε ≥ 1 is clamped to 0.99.
    pub fn effective_epsilon(&self) -> Result<Rational> {
        if self.epsilon.is_zero() {
            return Err(Error::InvalidEpsilon(self.epsilon.to_string()));
        }
        if self.epsilon.num() >= self.epsilon.den() {
            return Ok(Rational::new(99, 100));
        }
        Ok(self.epsilon)
    }

    pub(crate) fn check_sample_const(&self) -> Result<()> {
        if self.sample_const.is_finite() && self.sample_const > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "sample constant must be positive, got {}",
                self.sample_const
            )))
        }
    }
}

/// Counters for one full run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// λ levels probed.
    pub lambda_probes: u64,
    /// (λ, μ) pairs run.
    pub probe_runs: u64,
    pub terminals: u64,
    pub groups: u64,
    /// Max-flow invocations actually performed.
    pub flow_calls: u64,
    /// Flow count with same-depth shrink-wrap flows batched.
    pub batched_flow_rounds: u64,
    /// Sum over groups of `2⌈log₂ k⌉ + leaves`.
    pub flow_budget: u64,
}

impl AddAssign for SolveStats {
    fn add_assign(&mut self, o: SolveStats) {
        self.lambda_probes += o.lambda_probes;
        self.probe_runs += o.probe_runs;
        self.terminals += o.terminals;
        self.groups += o.groups;
        self.flow_calls += o.flow_calls;
        self.batched_flow_rounds += o.batched_flow_rounds;
        self.flow_budget += o.flow_budget;
    }
}

/// Counters for one (λ, μ) probe.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProbeStats {
    pub terminals: u64,
    pub groups: u64,
    pub flow_calls: u64,
    pub batched_flow_rounds: u64,
    pub flow_budget: u64,
}

impl From<ProbeStats> for SolveStats {
    fn from(p: ProbeStats) -> Self {
        SolveStats {
            lambda_probes: 0,
            probe_runs: 1,
            terminals: p.terminals,
            groups: p.groups,
            flow_calls: p.flow_calls,
            batched_flow_rounds: p.batched_flow_rounds,
            flow_budget: p.flow_budget,
        }
    }
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Sub-seed for a (λ-index, μ-index) style coordinate pair.
pub fn derive_seed(master: u64, a: u64, b: u64) -> u64 {
    mix(mix(mix(master) ^ a) ^ b.rotate_left(32))
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Runs `f` on a pool with `threads` workers (ambient pool for 0).
pub(crate) fn install<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// μ values: powers of two from 1 up to `2^⌈log₂ m⌉`.
pub(crate) fn mu_values(m: usize) -> Vec<usize> {
    let top = m.max(1).next_power_of_two();
    std::iter::successors(Some(1usize), |&mu| (mu < top).then(|| mu * 2)).collect()
}

/// A cut candidate with its exact value in the search's working units.
#[derive(Clone, Debug)]
pub(crate) struct Hit<C> {
    pub value: Capacity,
    pub cert: C,
}

/// Keeps the smaller value; ties keep `a`.
pub(crate) fn better<C>(a: Option<Hit<C>>, b: Option<Hit<C>>) -> Option<Hit<C>> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.value < x.value { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// One probe of the λ search: look for a cut of value `< (1+ε)λ`.
pub(crate) trait LevelProbe: Sync {
    type Cert: Send + Clone;

    fn mus(&self) -> &[usize];

    /// Runs the fixed-(λ, μ) subroutine with the given seed.
    fn probe_mu(
        &self,
        lambda: Capacity,
        mu: usize,
        eps: Rational,
        seed: u64,
    ) -> Result<(Option<Hit<Self::Cert>>, ProbeStats)>;

    fn master_seed(&self) -> u64;

    /// All μ for one λ, merged by minimum value (ties to the smaller μ).
    fn probe(
        &self,
        lambda: Capacity,
        eps: Rational,
        lambda_index: u64,
    ) -> Result<(Option<Hit<Self::Cert>>, SolveStats)> {
        let master = self.master_seed();
        let results: Vec<_> = self
            .mus()
            .par_iter()
            .enumerate()
            .map(|(i, &mu)| self.probe_mu(lambda, mu, eps, derive_seed(master, lambda_index, i as u64)))
            .collect();
        let mut best = None;
        let mut stats = SolveStats {
            lambda_probes: 1,
            ..SolveStats::default()
        };
        for r in results {
            let (hit, s) = r?;
            stats += s.into();
            best = better(best, hit);
        }
        Ok((best, stats))
    }
}

/// `value < (1+ε)λ`, exactly.
pub(crate) fn below_threshold(value: Capacity, lambda: Capacity, eps: Rational) -> bool {
    let lhs = value.0.checked_mul(eps.den());
    let rhs = lambda.0.checked_mul(eps.den() + eps.num());
    match (lhs, rhs) {
        (Some(l), Some(r)) => l < r,
        (None, Some(_)) => false,
        (Some(_), None) => true,
        (None, None) => {
            // Both overflow; fall back to wide comparison via division.
            let q = lambda.0 / eps.den();
            value.0 < lambda.0 + q * eps.num()
        }
    }
}

/// Geometric grid `⌈lower·(1+ε)^k⌉` up to the first value ≥ `upper`.
pub(crate) fn geometric_grid(lower: Capacity, upper: Capacity, eps: Rational) -> Vec<Capacity> {
    let ratio = 1.0 + eps.to_f64();
    let mut grid = vec![lower];
    let mut x = lower.0 as f64;
    while grid.last().unwrap() < &upper {
        x *= ratio;
        let prev = grid.last().unwrap().0;
        let next = (x.ceil() as u128).max(prev + 1);
        grid.push(Capacity(next));
    }
    grid
}

/// Binary search over the geometric grid. `initial` must be a valid cut of
/// value at least the true optimum; the result is the best cut seen.
pub(crate) fn geometric_search<P: LevelProbe>(
    prober: &P,
    lower: Capacity,
    initial: Hit<P::Cert>,
    eps: Rational,
) -> Result<(Hit<P::Cert>, SolveStats)> {
    let grid = geometric_grid(lower, initial.value, eps);
    let mut best = initial;
    let mut stats = SolveStats::default();
    // Grid index -1 stands for "below the lower bound": known to fail.
    let (mut lo, mut hi) = (-1isize, grid.len() as isize - 1);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let lambda = grid[mid as usize];
        let (hit, s) = prober.probe(lambda, eps, mid as u64)?;
        stats += s;
        match hit {
            Some(h) if below_threshold(h.value, lambda, eps) => {
                hi = mid;
                if h.value < best.value {
                    best = h;
                }
            }
            _ => lo = mid,
        }
    }
    Ok((best, stats))
}

/// Exact search for integer connectivities: double λ from 1, then binary
/// search on integers, probing level λ with ε = 1/(1+λ). Assumes the optimum
/// is at least 1.
pub(crate) fn doubling_search<P: LevelProbe>(prober: &P, initial: Hit<P::Cert>) -> Result<(Hit<P::Cert>, SolveStats)> {
    let mut best = initial;
    let mut stats = SolveStats::default();
    let mut index = 0u64;
    let mut probe = |lambda: u128, best: &mut Hit<P::Cert>, stats: &mut SolveStats| -> Result<bool> {
        let eps = Rational::new(1, 1 + lambda);
        let (hit, s) = prober.probe(Capacity(lambda), eps, index)?;
        index += 1;
        *stats += s;
        if let Some(h) = hit {
            let ok = h.value.0 <= lambda;
            if h.value < best.value {
                *best = h;
            }
            return Ok(ok);
        }
        Ok(false)
    };

    let mut lo: u128 = 0;
    let mut hi: Option<u128> = None;
    let mut lambda: u128 = 1;
    while lambda < best.value.0 {
        if probe(lambda, &mut best, &mut stats)? {
            hi = Some(lambda);
            break;
        }
        lo = lambda;
        lambda *= 2;
    }
    let mut hi = hi.unwrap_or(best.value.0).min(best.value.0);
    while hi > lo + 1 {
        let mid = lo + (hi - lo) / 2;
        if probe(mid, &mut best, &mut stats)? {
            hi = mid.min(best.value.0);
        } else {
            lo = mid;
        }
    }
    Ok((best, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_values_cover_m() {
        assert_eq!(mu_values(1), vec![1]);
        assert_eq!(mu_values(4), vec![1, 2, 4]);
        assert_eq!(mu_values(5), vec![1, 2, 4, 8]);
        assert_eq!(mu_values(0), vec![1]);
    }

    #[test]
    fn grid_is_increasing_and_covers_upper() {
        let g = geometric_grid(Capacity(10), Capacity(1000), Rational::new(1, 10));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(*g.last().unwrap() >= Capacity(1000));
        assert!(g[g.len() - 2] < Capacity(1000));
        assert_eq!(
            geometric_grid(Capacity(5), Capacity(5), Rational::new(1, 2)),
            vec![Capacity(5)]
        );
    }

    #[test]
    fn threshold_is_strict() {
        let half = Rational::new(1, 2);
        assert!(below_threshold(Capacity(2), Capacity(2), half));
        assert!(!below_threshold(Capacity(3), Capacity(2), half));
        assert!(!below_threshold(Capacity(2), Capacity(1), Rational::new(99, 100)));
        assert!(below_threshold(Capacity(199), Capacity(100), Rational::new(1, 1)));
    }

    #[test]
    fn seeds_differ_by_coordinate() {
        let a = derive_seed(7, 0, 0);
        assert_ne!(a, derive_seed(7, 0, 1));
        assert_ne!(a, derive_seed(7, 1, 0));
        assert_eq!(a, derive_seed(7, 0, 0));
    }

    #[test]
    fn epsilon_normalization() {
        let mut cfg = SolverConfig::default();
        cfg.epsilon = Rational::integer(2);
        assert_eq!(cfg.effective_epsilon().unwrap(), Rational::new(99, 100));
        cfg.epsilon = Rational::integer(0);
        assert!(cfg.effective_epsilon().is_err());
    }

    /// Probe that answers from a fixed optimum: finds a cut of value `opt`
    /// whenever `opt < (1+ε)λ`.
    struct Oracle {
        opt: u128,
        mus: Vec<usize>,
    }

    impl LevelProbe for Oracle {
        type Cert = ();
        fn mus(&self) -> &[usize] {
            &self.mus
        }
        fn master_seed(&self) -> u64 {
            0
        }
        fn probe_mu(
            &self,
            lambda: Capacity,
            _mu: usize,
            eps: Rational,
            _seed: u64,
        ) -> Result<(Option<Hit<()>>, ProbeStats)> {
            let v = Capacity(self.opt);
            Ok((
                below_threshold(v, lambda, eps).then_some(Hit { value: v, cert: () }),
                ProbeStats::default(),
            ))
        }
    }

    #[test]
    fn doubling_search_is_exact() {
        for opt in 1..40u128 {
            let p = Oracle { opt, mus: vec![1] };
            let (best, _) = doubling_search(
                &p,
                Hit {
                    value: Capacity(100),
                    cert: (),
                },
            )
            .unwrap();
            assert_eq!(best.value, Capacity(opt));
        }
    }

    #[test]
    fn geometric_search_within_factor() {
        let eps = Rational::new(1, 10);
        for opt in [10u128, 11, 57, 400, 999] {
            let p = Oracle { opt, mus: vec![1, 2] };
            let (best, stats) = geometric_search(
                &p,
                Capacity(10),
                Hit {
                    value: Capacity(1000),
                    cert: (),
                },
                eps,
            )
            .unwrap();
            assert!(best.value.0 as f64 <= opt as f64 * 1.1 * 1.1);
            assert!(stats.lambda_probes <= 8);
        }
    }
}
