//! Exhaustive and sampled sweeps of [`theorem_check`] over many subsets.
//!
//! Reports come back in task order: ring, then size, then subset (lexicographic
//! combinations for exhaustive mode, trial index for sampled mode). Sampled
//! task `i` draws from `derive_seed(master, i)`, so output does not depend on
//! the number of workers.

use rayon::prelude::*;
use serde::Serialize;

use super::{theorem_check, TheoremReport};
use crate::chain_ring::{Ring, RingElement, RingSpec};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, seeded};

pub const DEFAULT_EXHAUSTIVE_CAP: u64 = 9;
pub const DEFAULT_MAX_SUBSETS: u64 = 1_000_000;
/// Largest ring the theorem harness accepts.
pub const MAX_HARNESS_ORDER: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum SweepMode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub rings: Vec<RingSpec>,
    /// Subset sizes to visit; `None` means every size from 1 to |R|.
    pub sizes: Option<Vec<usize>>,
    pub mode: SweepMode,
    /// Largest ring order allowed in exhaustive mode.
    pub exhaustive_cap: u64,
    /// Largest number of subsets an exhaustive sweep may visit.
    pub max_subsets: u64,
}

impl SweepConfig {
    pub fn exhaustive(rings: Vec<RingSpec>) -> Self {
        SweepConfig {
            rings,
            sizes: None,
            mode: SweepMode::Exhaustive,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            max_subsets: DEFAULT_MAX_SUBSETS,
        }
    }

    pub fn sampled(
        rings: Vec<RingSpec>,
        sizes: Option<Vec<usize>>,
        trials: usize,
        seed: u64,
    ) -> Self {
        SweepConfig {
            rings,
            sizes,
            mode: SweepMode::Sampled { trials, seed },
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            max_subsets: DEFAULT_MAX_SUBSETS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepEntry {
    pub index: usize,
    /// Derived per-task seed; `None` in exhaustive mode.
    pub seed: Option<u64>,
    /// Trial number within (ring, size) for sampled mode, subset number for exhaustive mode.
    pub trial: usize,
    #[serde(flatten)]
    pub report: TheoremReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeStats {
    pub ring: RingSpec,
    pub size: usize,
    pub count: usize,
    pub min_ratio: f64,
    /// Lower median.
    pub median_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Argmin {
    pub index: usize,
    pub ring: RingSpec,
    pub subset: Vec<RingElement>,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub reports: usize,
    /// Smallest observed `max_pinned / bound`.
    pub c_min: f64,
    pub argmin: Option<Argmin>,
    pub per_size: Vec<SizeStats>,
    pub lemma_failures: usize,
    pub chain_failures: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub entries: Vec<SweepEntry>,
    pub summary: SweepSummary,
}

struct Task {
    ring: usize,
    codes: Vec<u64>,
    seed: Option<u64>,
    trial: usize,
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    match cfg.mode {
        SweepMode::Exhaustive => exhaustive_sweep(cfg),
        SweepMode::Sampled { .. } => sampled_sweep(cfg),
    }
}

fn sizes_for(cfg: &SweepConfig, order: u64) -> Vec<usize> {
    match &cfg.sizes {
        Some(s) => {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            s
        }
        None => (1..=order as usize).collect(),
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Calls `f` on every k-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn exhaustive_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    let rings = build_rings(cfg)?;
    let mut tasks = Vec::new();
    for (ri, ring) in rings.iter().enumerate() {
        let n = ring.order();
        if n > cfg.exhaustive_cap {
            return Err(Error::Capacity(format!(
                "{} has order {n}, exhaustive cap is {}",
                ring.spec(),
                cfg.exhaustive_cap
            )));
        }
        let sizes = sizes_for(cfg, n);
        if let Some(&bad) = sizes.iter().find(|&&s| s == 0 || s as u64 > n) {
            return Err(Error::Validation(format!(
                "subset size {bad} not in [1, {n}] for {}",
                ring.spec()
            )));
        }
        let count: u128 = sizes.iter().map(|&s| binomial(n, s as u64)).sum();
        if count + tasks.len() as u128 > cfg.max_subsets as u128 {
            return Err(Error::Capacity(format!(
                "{} needs {count} subsets, cap is {}",
                ring.spec(),
                cfg.max_subsets
            )));
        }
        let mut trial = 0;
        for &size in &sizes {
            for_each_combination(n as usize, size, |idx| {
                tasks.push(Task {
                    ring: ri,
                    codes: idx.iter().map(|&i| i as u64).collect(),
                    seed: None,
                    trial,
                });
                trial += 1;
            });
        }
    }
    execute(&rings, tasks)
}

pub fn sampled_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    let SweepMode::Sampled { trials, seed } = cfg.mode else {
        return Err(Error::Validation("sampled sweep needs sampled mode".into()));
    };
    if trials == 0 {
        return Err(Error::Validation("trials must be >= 1".into()));
    }
    let rings = build_rings(cfg)?;
    let mut tasks = Vec::new();
    for (ri, ring) in rings.iter().enumerate() {
        let n = ring.order();
        let sizes = sizes_for(cfg, n);
        if let Some(&bad) = sizes.iter().find(|&&s| s == 0 || s as u64 > n) {
            return Err(Error::Validation(format!(
                "subset size {bad} not in [1, {n}] for {}",
                ring.spec()
            )));
        }
        for &size in &sizes {
            for trial in 0..trials {
                let task_seed = derive_seed(seed, tasks.len() as u64);
                tasks.push(Task {
                    ring: ri,
                    codes: sample_subset(n, size, task_seed),
                    seed: Some(task_seed),
                    trial,
                });
            }
        }
    }
    execute(&rings, tasks)
}

/// Uniform `size`-subset of `0..order` by a partial Fisher-Yates shuffle
/// driven by `seeded(seed)`; returned sorted.
pub fn sample_subset(order: u64, size: usize, seed: u64) -> Vec<u64> {
    use rand::Rng;
    let mut rng = seeded(seed);
    let mut pool: Vec<u64> = (0..order).collect();
    for i in 0..size {
        let j = rng.random_range(i..pool.len());
        pool.swap(i, j);
    }
    let mut out = pool[..size].to_vec();
    out.sort_unstable();
    out
}

fn build_rings(cfg: &SweepConfig) -> Result<Vec<Ring>> {
    if cfg.rings.is_empty() {
        return Err(Error::Validation("no rings to sweep".into()));
    }
    cfg.rings
        .iter()
        .map(|&spec| {
            if spec.order() > MAX_HARNESS_ORDER {
                return Err(Error::Capacity(format!(
                    "{spec} has order {}, harness limit is {MAX_HARNESS_ORDER}",
                    spec.order()
                )));
            }
            Ring::new(spec)
        })
        .collect()
}

fn execute(rings: &[Ring], tasks: Vec<Task>) -> Result<SweepResult> {
    let entries = tasks
        .par_iter()
        .enumerate()
        .map(|(index, task)| {
            let ring = &rings[task.ring];
            let a: Vec<RingElement> = task
                .codes
                .iter()
                .map(|&c| ring.from_code(c))
                .collect::<Result<_>>()?;
            Ok(SweepEntry {
                index,
                seed: task.seed,
                trial: task.trial,
                report: theorem_check(ring, &a)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(&entries);
    Ok(SweepResult { entries, summary })
}

pub fn summarize(entries: &[SweepEntry]) -> SweepSummary {
    let argmin = entries
        .iter()
        .fold(None::<&SweepEntry>, |best, e| match best {
            Some(b) if b.report.ratio <= e.report.ratio => Some(b),
            _ => Some(e),
        })
        .map(|e| Argmin {
            index: e.index,
            ring: e.report.ring,
            subset: e.report.subset.clone(),
            ratio: e.report.ratio,
        });

    let mut per_size: Vec<SizeStats> = Vec::new();
    let mut i = 0;
    while i < entries.len() {
        let key = (entries[i].report.ring, entries[i].report.subset_size);
        let mut j = i;
        while j < entries.len() && (entries[j].report.ring, entries[j].report.subset_size) == key {
            j += 1;
        }
        let mut ratios: Vec<f64> = entries[i..j].iter().map(|e| e.report.ratio).collect();
        ratios.sort_by(f64::total_cmp);
        per_size.push(SizeStats {
            ring: key.0,
            size: key.1,
            count: ratios.len(),
            min_ratio: ratios[0],
            median_ratio: ratios[(ratios.len() - 1) / 2],
        });
        i = j;
    }

    let lemma_failures = entries.iter().filter(|e| !e.report.lemma_holds).count();
    let chain_failures = entries.iter().filter(|e| !e.report.chain.holds).count();
    let c_min = argmin.as_ref().map_or(f64::INFINITY, |a| a.ratio);
    SweepSummary {
        reports: entries.len(),
        c_min,
        argmin,
        per_size,
        lemma_failures,
        chain_failures,
        pass: c_min > 0.0 && lemma_failures == 0 && chain_failures == 0,
    }
}
