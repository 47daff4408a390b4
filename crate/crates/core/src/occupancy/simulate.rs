//! Monte Carlo estimate of the pmf of `X`.
//!
//! Trials are grouped into fixed blocks of [`TRIALS_PER_BLOCK`]; block `b` draws from the
//! substream `mix(seed, b)` (see [`crate::rng::substream_seed`]). Shards are contiguous runs
//! of blocks, so the counts depend only on `(seed, trials)` and not on the shard count or on
//! thread scheduling.

use std::thread;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::prob::{ExperimentConfig, ProbVector};
use crate::rng;
use crate::scalar::Scalar;

pub const TRIALS_PER_BLOCK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDistribution {
    pub n: usize,
    pub balls: usize,
    pub trials: u64,
    pub seed: u64,
    pub shards: usize,
    /// Occurrences of `X = k` for `k = 0..=n`.
    pub counts: Vec<u64>,
    pub pmf_hat: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn mean(&self) -> f64 {
        self.pmf_hat.iter().enumerate().map(|(k, x)| k as f64 * x).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,probability\n");
        for (k, x) in self.pmf_hat.iter().enumerate() {
            out.push_str(&format!("{k},{x}\n"));
        }
        out
    }
}

/// Drops `cfg.balls` balls per trial by inverse-CDF sampling and tallies distinct boxes.
pub fn simulate<T: Scalar>(p: &ProbVector<T>, cfg: &ExperimentConfig) -> Result<EmpiricalDistribution> {
    cfg.check()?;
    let n = p.len();
    let mut cumulative = Vec::with_capacity(n);
    let mut acc = 0.0f64;
    for x in p.iter() {
        acc += x.as_f64();
        cumulative.push(acc);
    }

    let blocks = cfg.trials.div_ceil(TRIALS_PER_BLOCK);
    let shards = (cfg.shards as u64).min(blocks).max(1);
    let ranges: Vec<(u64, u64)> = (0..shards)
        .map(|s| (blocks * s / shards, blocks * (s + 1) / shards))
        .collect();

    let run = |range: (u64, u64)| run_blocks(&cumulative, cfg, range);
    let per_shard: Vec<Vec<u64>> = if ranges.len() == 1 {
        vec![run(ranges[0])]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = ranges.iter().map(|&r| scope.spawn(move || run(r))).collect();
            handles.into_iter().map(|h| h.join().expect("shard thread panicked")).collect()
        })
    };

    let mut counts = vec![0u64; n + 1];
    for shard in &per_shard {
        for (total, c) in counts.iter_mut().zip(shard) {
            *total += c;
        }
    }
    let pmf_hat = counts.iter().map(|&c| c as f64 / cfg.trials as f64).collect();
    Ok(EmpiricalDistribution {
        n,
        balls: cfg.balls,
        trials: cfg.trials,
        seed: cfg.seed,
        shards: cfg.shards,
        counts,
        pmf_hat,
    })
}

fn run_blocks(cumulative: &[f64], cfg: &ExperimentConfig, (start, end): (u64, u64)) -> Vec<u64> {
    let n = cumulative.len();
    let total = cumulative[n - 1];
    let mut counts = vec![0u64; n + 1];
    // last_seen[b] == stamp marks box b as hit in the current trial.
    let mut last_seen = vec![0u64; n];
    let mut stamp = 0u64;
    for block in start..end {
        let mut stream = rng::substream(cfg.seed, block);
        let first = block * TRIALS_PER_BLOCK;
        let last = (first + TRIALS_PER_BLOCK).min(cfg.trials);
        for _ in first..last {
            stamp += 1;
            let mut distinct = 0usize;
            for _ in 0..cfg.balls {
                let u = stream.random::<f64>() * total;
                let b = cumulative.partition_point(|&c| c <= u).min(n - 1);
                if last_seen[b] != stamp {
                    last_seen[b] = stamp;
                    distinct += 1;
                }
            }
            counts[distinct] += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::validate;

    #[test]
    fn point_mass_single_trial() {
        let p = validate(&[1.0, 0.0, 0.0]).unwrap();
        let cfg = ExperimentConfig::new(5).with_trials(1).with_seed(17);
        let e = simulate(&p, &cfg).unwrap();
        assert_eq!(e.counts, vec![0, 1, 0, 0]);
    }

    #[test]
    fn zero_boxes_never_hit() {
        let p = validate(&[0.0, 0.5, 0.0, 0.5, 0.0]).unwrap();
        let cfg = ExperimentConfig::new(10).with_trials(5000).with_seed(1);
        let e = simulate(&p, &cfg).unwrap();
        assert_eq!(e.counts[3..].iter().sum::<u64>(), 0);
        assert_eq!(e.counts.iter().sum::<u64>(), 5000);
    }

    #[test]
    fn zero_balls() {
        let p = validate(&[0.5, 0.5]).unwrap();
        let e = simulate(&p, &ExperimentConfig::new(0).with_trials(10)).unwrap();
        assert_eq!(e.counts, vec![10, 0, 0]);
    }

    #[test]
    fn reproducible_and_shard_independent() {
        let p = validate(&[0.5, 0.3, 0.2]).unwrap();
        let cfg = ExperimentConfig::new(4).with_trials(20_000).with_seed(5);
        let a = simulate(&p, &cfg).unwrap();
        let b = simulate(&p, &cfg).unwrap();
        assert_eq!(a.counts, b.counts);
        for shards in [2, 3, 8, 64] {
            let c = simulate(&p, &cfg.with_shards(shards)).unwrap();
            assert_eq!(a.counts, c.counts, "shards = {shards}");
        }
        let other = simulate(&p, &cfg.with_seed(6)).unwrap();
        assert_ne!(a.counts, other.counts);
    }

    #[test]
    fn rejects_zero_trials() {
        let p = validate(&[1.0]).unwrap();
        assert!(simulate(&p, &ExperimentConfig::new(1).with_trials(0)).is_err());
    }
}
