//! Ground-truth engines: exhaustive minimum-boundary and extra-connectivity
//! searches on small cubes, plus a seeded randomized fault-injection harness
//! for the small-component guarantee.
//!
//! Everything here answers from first principles (subset enumeration and
//! traversal), never from the formula modules, so agreement between the two
//! routes is evidence rather than tautology.
//!
//! # Reproducibility
//!
//! Randomized trials draw from ChaCha8 keyed per trial: the 32-byte key is
//! the little-endian seed (bytes 0..8), the little-endian trial index
//! (bytes 8..16), and an 8-byte harness tag (bytes 16..24); the rest is
//! zero. Uniform integers come from unbiased rejection sampling on 64-bit
//! outputs, and size-k subsets from Floyd's algorithm. Reports therefore
//! depend only on (n, h, trials, seed), not on worker count or platform.
//!
//! Subset enumeration is lexicographic over ascending label tuples and
//! reported witnesses are the first optimum encountered, so oracle outputs
//! are byte-stable.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::binomial::choose;
use crate::error::{Error, Result};
use crate::hypercube::{components, vertex_boundary, CubeDim, FaultSet, VertexId};
use crate::isoperimetry::{boundary_cascade, witness_set};
use crate::reliability::{f_of_h, structure_check, structure_guard};

/// Default cap on enumerated candidates (a guard, not a hard n-cap).
pub const DEFAULT_BUDGET: u64 = 20_000_000;

const STRUCTURE_TAG: [u8; 8] = *b"HQXSTRUC";
const ADVERSARY_TAG: [u8; 8] = *b"HQXADVRS";

/// Outcome of an exhaustive search, with a witness that re-certifies the
/// value using the graph operations alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub n: u32,
    /// m for boundary searches, h - 1 for cut searches.
    pub parameter: u64,
    pub value: u64,
    pub witness: FaultSet,
    pub explored: u64,
}

/// Result of a smallest-cut search that may legitimately find nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutSearch {
    Found(OracleResult),
    NotFound { explored: u64, max_size_tried: u64 },
}

/// Tally of one randomized harness run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialReport {
    pub n: u32,
    pub h: u64,
    pub trials: u64,
    pub seed: u64,
    pub violations: u64,
    pub worst_small_total: u64,
}

/// Lexicographic enumeration of k-subsets of 0..total as ascending index
/// tuples.
struct Combinations {
    total: u32,
    idx: Vec<u32>,
    started: bool,
    done: bool,
}

impl Combinations {
    fn new(total: u64, k: u64) -> Combinations {
        let done = k > total;
        Combinations {
            total: total as u32,
            idx: (0..k as u32).collect(),
            started: false,
            done,
        }
    }

    fn next(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.idx[i] != i as u32 + self.total - k as u32 {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
    }
}

/// Bitmask of each vertex's neighborhood; only built when 2^n <= 64.
fn neighbor_masks(dim: CubeDim) -> Vec<u64> {
    let n = dim.n();
    (0..dim.vertex_count())
        .map(|v| {
            let mut mask = 0u64;
            for i in 0..n {
                mask |= 1 << (v ^ (1 << i));
            }
            mask
        })
        .collect()
}

fn faults_from_indices(dim: CubeDim, idx: &[u32]) -> FaultSet {
    FaultSet::from_labels(dim, idx.iter().map(|&l| VertexId(l)))
        .expect("enumerated labels are in range")
}

/// Exhaustive minimum of |N(S)| over all m-subsets of V(Q_n), reporting the
/// lexicographically first minimizer.
pub fn min_boundary_bruteforce(dim: CubeDim, m: u64, budget: u64) -> Result<OracleResult> {
    if m < 1 || m > dim.vertex_count() - 1 {
        return Err(Error::Domain(format!(
            "order must satisfy 1 <= m <= 2^n - 1, got m = {m} for {dim}"
        )));
    }
    let needed = choose(dim.vertex_count(), m);
    if needed > budget as u128 {
        return Err(Error::Budget { budget, needed });
    }

    let mut combos = Combinations::new(dim.vertex_count(), m);
    let mut best: Option<(u64, Vec<u32>)> = None;
    let mut explored = 0u64;

    if dim.n() <= 6 {
        let masks = neighbor_masks(dim);
        while let Some(idx) = combos.next() {
            explored += 1;
            let mut set_mask = 0u64;
            let mut nbr_mask = 0u64;
            for &v in idx {
                set_mask |= 1 << v;
                nbr_mask |= masks[v as usize];
            }
            let size = (nbr_mask & !set_mask).count_ones() as u64;
            if best.as_ref().map(|(b, _)| size < *b).unwrap_or(true) {
                best = Some((size, idx.to_vec()));
            }
        }
    } else {
        while let Some(idx) = combos.next() {
            explored += 1;
            let faults = faults_from_indices(dim, idx);
            let size = vertex_boundary(&faults)?.len();
            if best.as_ref().map(|(b, _)| size < *b).unwrap_or(true) {
                best = Some((size, idx.to_vec()));
            }
        }
    }

    let (value, idx) = best.expect("at least one subset was enumerated");
    Ok(OracleResult {
        n: dim.n(),
        parameter: m,
        value,
        witness: faults_from_indices(dim, &idx),
        explored,
    })
}

/// True when the surviving mask splits into at least two components, each of
/// order at least `min_comp`.
fn mask_is_extra_cut(alive: u64, masks: &[u64], min_comp: u64) -> bool {
    let mut remaining = alive;
    let mut comps = 0u32;
    while remaining != 0 {
        let seed = remaining.trailing_zeros();
        let mut comp = 1u64 << seed;
        loop {
            let mut frontier = 0u64;
            let mut scan = comp;
            while scan != 0 {
                let v = scan.trailing_zeros();
                scan &= scan - 1;
                frontier |= masks[v as usize];
            }
            let grown = (comp | frontier) & remaining;
            if grown == comp {
                break;
            }
            comp = grown;
        }
        if (comp.count_ones() as u64) < min_comp {
            return false;
        }
        comps += 1;
        remaining &= !comp;
    }
    comps >= 2
}

fn faults_are_extra_cut(faults: &FaultSet, min_comp: u64) -> bool {
    let profile = components(faults);
    profile.sizes.len() >= 2 && profile.sizes.iter().all(|&s| s >= min_comp)
}

/// Smallest k admitting an (h-1)-extra vertex cut of Q_n, by exhausting
/// k-subsets in ascending k until one disconnects the cube into components
/// of order >= h_minus_1 + 1 apiece.
pub fn extra_conn_bruteforce(dim: CubeDim, h_minus_1: u64, budget: u64) -> Result<CutSearch> {
    let min_comp = h_minus_1 + 1;
    let total = dim.vertex_count();
    if 2 * min_comp > total {
        // No cut can leave two components this large.
        return Ok(CutSearch::NotFound {
            explored: 0,
            max_size_tried: 0,
        });
    }
    let max_k = total - 2 * min_comp;
    let masks = if dim.n() <= 6 {
        Some(neighbor_masks(dim))
    } else {
        None
    };
    let full_mask = if dim.n() <= 6 {
        u64::MAX >> (64 - total)
    } else {
        0
    };

    let mut explored = 0u64;
    for k in 1..=max_k {
        let level = choose(total, k);
        if explored as u128 + level > budget as u128 {
            return Err(Error::Budget {
                budget,
                needed: explored as u128 + level,
            });
        }
        let mut combos = Combinations::new(total, k);
        while let Some(idx) = combos.next() {
            explored += 1;
            let accepted = match &masks {
                Some(masks) => {
                    let mut set_mask = 0u64;
                    for &v in idx {
                        set_mask |= 1 << v;
                    }
                    mask_is_extra_cut(full_mask & !set_mask, masks, min_comp)
                }
                None => faults_are_extra_cut(&faults_from_indices(dim, idx), min_comp),
            };
            if accepted {
                let witness = faults_from_indices(dim, idx);
                return Ok(CutSearch::Found(OracleResult {
                    n: dim.n(),
                    parameter: h_minus_1,
                    value: k,
                    witness,
                    explored,
                }));
            }
        }
    }
    Ok(CutSearch::NotFound {
        explored,
        max_size_tried: max_k,
    })
}

fn trial_rng(seed: u64, trial: u64, tag: [u8; 8]) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    key[16..24].copy_from_slice(&tag);
    ChaCha8Rng::from_seed(key)
}

/// Unbiased uniform draw from [0, bound) by rejection.
fn uniform_below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    assert!(bound > 0);
    // 2^64 mod bound; draws at or above 2^64 - r would bias the remainder.
    let r = ((u64::MAX % bound) + 1) % bound;
    loop {
        let x = rng.next_u64();
        if r == 0 || x < r.wrapping_neg() {
            return x % bound;
        }
    }
}

/// Floyd's uniform k-subset of 0..universe, in draw order.
fn floyd_sample(rng: &mut ChaCha8Rng, universe: u64, k: u64) -> Vec<u64> {
    debug_assert!(k <= universe);
    let mut chosen = std::collections::HashSet::with_capacity(k as usize);
    let mut picks = Vec::with_capacity(k as usize);
    for j in universe - k..universe {
        let t = uniform_below(rng, j + 1);
        let pick = if chosen.insert(t) { t } else { j };
        if pick != t {
            chosen.insert(pick);
        }
        picks.push(pick);
    }
    picks
}

fn run_trials<S>(
    h: u64,
    trials: u64,
    seed: u64,
    workers: usize,
    tag: [u8; 8],
    n: u32,
    sample: S,
) -> Result<TrialReport>
where
    S: Fn(&mut ChaCha8Rng) -> FaultSet + Sync,
{
    if workers == 0 {
        return Err(Error::Domain("worker count must be at least 1".into()));
    }
    let run_range = |lo: u64, hi: u64| -> (u64, u64) {
        let mut violations = 0u64;
        let mut worst = 0u64;
        for t in lo..hi {
            let mut rng = trial_rng(seed, t, tag);
            let faults = sample(&mut rng);
            let verdict =
                structure_check(h, &faults).expect("sampler keeps |S| below the threshold");
            if !verdict.pass {
                violations += 1;
            }
            worst = worst.max(verdict.profile.small_total);
        }
        (violations, worst)
    };

    // Each trial's stream depends only on (seed, index) and the merge is a
    // sum plus a max, so any partition of the index range yields the same
    // report.
    let (violations, worst) = if workers == 1 || trials == 0 {
        run_range(0, trials)
    } else {
        let chunk = trials.div_ceil(workers as u64);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers as u64)
                .map(|w| {
                    let lo = (w * chunk).min(trials);
                    let hi = ((w + 1) * chunk).min(trials);
                    scope.spawn(move || run_range(lo, hi))
                })
                .collect();
            handles
                .into_iter()
                .map(|handle| handle.join().expect("trial worker panicked"))
                .fold((0u64, 0u64), |(v, w), (pv, pw)| (v + pv, w.max(pw)))
        })
    };

    Ok(TrialReport {
        n,
        h,
        trials,
        seed,
        violations,
        worst_small_total: worst,
    })
}

fn check_trial_dim(dim: CubeDim, h: u64) -> Result<()> {
    if dim.n() < 5 || dim.n() > 16 {
        return Err(Error::Range(format!(
            "randomized trials support 5 <= n <= 16, got n = {}",
            dim.n()
        )));
    }
    structure_guard(dim.n(), h)
}

/// Uniform fault-injection trials: each trial draws |S| uniformly from
/// [0, b_v(h; Q_n) - 1], then S uniformly among subsets of that size, and
/// checks the small-component bound.
pub fn structure_trials(
    dim: CubeDim,
    h: u64,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<TrialReport> {
    check_trial_dim(dim, h)?;
    let threshold = boundary_cascade(dim.n(), h)?.value;
    let sample = move |rng: &mut ChaCha8Rng| -> FaultSet {
        let size = uniform_below(rng, threshold);
        let mut faults = FaultSet::new(dim);
        for label in floyd_sample(rng, dim.vertex_count(), size) {
            faults
                .insert(VertexId(label as u32))
                .expect("sampled labels are in range");
        }
        faults
    };
    run_trials(h, trials, seed, workers, STRUCTURE_TAG, dim.n(), sample)
}

/// Biased fault-injection trials: each trial takes a random subset of the
/// boundary of a witness of random order j <= f(h) + 1, padded with uniform
/// vertices, so full witness boundaries (the tight case) are reachable.
pub fn adversarial_trials(
    dim: CubeDim,
    h: u64,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<TrialReport> {
    check_trial_dim(dim, h)?;
    let threshold = boundary_cascade(dim.n(), h)?.value;
    let bound = f_of_h(dim.n(), h)?;
    let boundaries: Vec<Vec<VertexId>> = (1..=bound + 1)
        .map(|j| {
            let witness = witness_set(dim, j).expect("f(h) + 1 <= 3n - 2");
            vertex_boundary(&witness.vertices)
                .expect("witness sets are nonempty")
                .to_labels()
        })
        .collect();
    let sample = move |rng: &mut ChaCha8Rng| -> FaultSet {
        let size = uniform_below(rng, threshold);
        let j = 1 + uniform_below(rng, bound + 1);
        let labels = &boundaries[(j - 1) as usize];
        let take = size.min(labels.len() as u64);
        let mut faults = FaultSet::new(dim);
        for i in floyd_sample(rng, labels.len() as u64, take) {
            faults
                .insert(labels[i as usize])
                .expect("boundary labels are in range");
        }
        while faults.len() < size {
            let v = VertexId(uniform_below(rng, dim.vertex_count()) as u32);
            faults.insert(v).expect("sampled labels are in range");
        }
        faults
    };
    run_trials(h, trials, seed, workers, ADVERSARY_TAG, dim.n(), sample)
}
