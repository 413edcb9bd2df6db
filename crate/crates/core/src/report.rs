//! Identity-check reports and the tuple sweeps that feed them.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::mub::CompositeIndex;

/// How a check walks its tuple space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SweepPlan {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

impl SweepPlan {
    pub const DEFAULT_SAMPLES: u64 = 10_000;

    /// Exhaustive while the rank-4 tuple space stays at or below 12⁴ (d ≤ 3),
    /// otherwise `DEFAULT_SAMPLES` seeded samples.
    pub fn default_for(dim: usize, seed: u64) -> Self {
        let n = (dim * (dim + 1)) as u64;
        if n.pow(4) <= 12u64.pow(4) {
            SweepPlan::Exhaustive
        } else {
            SweepPlan::Sampled { count: Self::DEFAULT_SAMPLES, seed }
        }
    }

    /// Calls `f` with every tuple (or every sampled tuple) of `rank` indices
    /// in `0..n`. Exhaustive order is lexicographic; sampled order is fixed
    /// by the seed.
    pub fn for_each_tuple(&self, n: usize, rank: usize, mut f: impl FnMut(&[usize])) -> u64 {
        let mut tuple = vec![0usize; rank];
        match *self {
            SweepPlan::Exhaustive => {
                if n == 0 {
                    return 0;
                }
                let mut count = 0;
                loop {
                    f(&tuple);
                    count += 1;
                    let mut pos = rank;
                    loop {
                        if pos == 0 {
                            return count;
                        }
                        pos -= 1;
                        tuple[pos] += 1;
                        if tuple[pos] < n {
                            break;
                        }
                        tuple[pos] = 0;
                    }
                }
            }
            SweepPlan::Sampled { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..count {
                    for slot in tuple.iter_mut() {
                        *slot = rng.gen_range(0..n);
                    }
                    f(&tuple);
                }
                count
            }
        }
    }
}

/// Outcome of one identity sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub tolerance: f64,
    pub max_violation: f64,
    /// Tuple at which `max_violation` occurred, as (basis, state) pairs.
    pub argmax: Vec<CompositeIndex>,
    pub tuples_checked: u64,
    pub plan: SweepPlan,
}

/// Running maximum of a violation measure over a sweep.
#[derive(Debug, Clone)]
pub struct ViolationTracker {
    dim: usize,
    worst: f64,
    argmax: Vec<usize>,
}

impl ViolationTracker {
    pub fn new(dim: usize) -> Self {
        ViolationTracker { dim, worst: 0.0, argmax: Vec::new() }
    }

    pub fn record(&mut self, violation: f64, tuple: &[usize]) {
        // NaN must surface as a failure, never be swallowed by a comparison.
        if violation > self.worst || (violation.is_nan() && !self.worst.is_nan()) {
            self.worst = violation;
            self.argmax = tuple.to_vec();
        }
    }

    pub fn worst(&self) -> f64 {
        self.worst
    }

    pub fn finish(self, name: &str, tolerance: f64, tuples_checked: u64, plan: SweepPlan) -> CheckReport {
        let dim = self.dim;
        CheckReport {
            name: name.to_string(),
            passed: self.worst <= tolerance,
            tolerance,
            max_violation: self.worst,
            argmax: self.argmax.iter().map(|&k| CompositeIndex::from_flat(k, dim)).collect(),
            tuples_checked,
            plan,
        }
    }
}
