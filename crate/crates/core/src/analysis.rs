//! Monte-Carlo estimates of how often a random family has zero, one, or
//! several common sums.

use std::io;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::solver::{solve_missp, ItemMultiset, SetFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OutcomeCounts {
    pub none: u64,
    pub unique: u64,
    pub multi: u64,
}

impl OutcomeCounts {
    fn merge(self, other: Self) -> Self {
        Self {
            none: self.none + other.none,
            unique: self.unique + other.unique,
            multi: self.multi + other.multi,
        }
    }

    pub fn total(&self) -> u64 {
        self.none + self.unique + self.multi
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniquenessStats {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub trials: u64,
    pub counts: OutcomeCounts,
}

impl UniquenessStats {
    pub fn p_none(&self) -> f64 {
        self.counts.none as f64 / self.trials as f64
    }

    pub fn p_unique(&self) -> f64 {
        self.counts.unique as f64 / self.trials as f64
    }

    pub fn p_multi(&self) -> f64 {
        self.counts.multi as f64 / self.trials as f64
    }

    /// Probability of at least one common sum.
    pub fn p_any(&self) -> f64 {
        (self.counts.unique + self.counts.multi) as f64 / self.trials as f64
    }

    /// Binomial standard error of `p_any`.
    pub fn p_any_std_err(&self) -> f64 {
        let p = self.p_any();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

#[derive(Serialize)]
struct CsvRow {
    n: usize,
    m: usize,
    d: usize,
    trials: u64,
    p_none: f64,
    p_unique: f64,
    p_multi: f64,
}

/// Mixes the sweep seed with a trial index (splitmix64 finalizer).
fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A family of `n` sets of `m` uniform `d`-digit items without leading zeros.
pub fn random_family<R: Rng + ?Sized>(n: usize, m: usize, d: usize, rng: &mut R) -> SetFamily {
    let lo = 10u64.pow(d as u32 - 1);
    let hi = 10u64.pow(d as u32) - 1;
    let sets = (0..n)
        .map(|_| ItemMultiset::new((0..m).map(|_| rng.gen_range(lo..=hi)).collect()))
        .collect();
    SetFamily::new(sets).expect("n >= 1")
}

/// Classifies `trials` random families. Trial `i` draws from its own stream
/// seeded by `(seed, i)`, so the result does not depend on scheduling.
///
/// Panics if any of `n`, `m`, `d`, `trials` is zero.
pub fn estimate_uniqueness(
    n: usize,
    m: usize,
    d: usize,
    trials: u64,
    seed: u64,
) -> UniquenessStats {
    assert!(n >= 1 && m >= 1 && d >= 1 && trials >= 1);
    let counts = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, trial));
            let family = random_family(n, m, d, &mut rng);
            match solve_missp(&family).count() {
                0 => OutcomeCounts {
                    none: 1,
                    ..Default::default()
                },
                1 => OutcomeCounts {
                    unique: 1,
                    ..Default::default()
                },
                _ => OutcomeCounts {
                    multi: 1,
                    ..Default::default()
                },
            }
        })
        .reduce(OutcomeCounts::default, OutcomeCounts::merge);
    UniquenessStats {
        n,
        m,
        d,
        trials,
        counts,
    }
}

/// Runs every `(n, m, d)` combination, in that nesting order.
pub fn sweep(
    ns: &[usize],
    ms: &[usize],
    ds: &[usize],
    trials: u64,
    seed: u64,
) -> Vec<UniquenessStats> {
    let mut out = Vec::with_capacity(ns.len() * ms.len() * ds.len());
    for &n in ns {
        for &m in ms {
            for &d in ds {
                out.push(estimate_uniqueness(n, m, d, trials, seed));
            }
        }
    }
    out
}

/// Writes `n,m,d,trials,p_none,p_unique,p_multi` rows with a header.
pub fn write_csv<W: io::Write>(stats: &[UniquenessStats], writer: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for s in stats {
        w.serialize(CsvRow {
            n: s.n,
            m: s.m,
            d: s.d,
            trials: s.trials,
            p_none: s.p_none(),
            p_unique: s.p_unique(),
            p_multi: s.p_multi(),
        })?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_set_always_has_sums() {
        let stats = estimate_uniqueness(1, 3, 2, 500, 4);
        assert_eq!(stats.counts.none, 0);
        assert_eq!(stats.p_none(), 0.0);
    }

    #[test]
    fn counts_partition_trials() {
        let stats = estimate_uniqueness(3, 5, 2, 777, 1);
        assert_eq!(stats.counts.total(), 777);
        let sum = stats.p_none() + stats.p_unique() + stats.p_multi();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_per_seed() {
        let a = estimate_uniqueness(2, 4, 2, 400, 99);
        let b = estimate_uniqueness(2, 4, 2, 400, 99);
        assert_eq!(a, b);
        let sequential = (0..400)
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(99, t));
                solve_missp(&random_family(2, 4, 2, &mut rng)).count()
            })
            .filter(|&c| c == 0)
            .count() as u64;
        assert_eq!(a.counts.none, sequential);
    }

    #[test]
    fn csv_layout() {
        let stats = [UniquenessStats {
            n: 3,
            m: 4,
            d: 2,
            trials: 4,
            counts: OutcomeCounts {
                none: 2,
                unique: 1,
                multi: 1,
            },
        }];
        let mut out = Vec::new();
        write_csv(&stats, &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "n,m,d,trials,p_none,p_unique,p_multi\n3,4,2,4,0.5,0.25,0.25\n"
        );
    }
}
