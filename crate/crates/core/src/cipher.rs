//! Encryption of one plaintext integer into a block whose family has that
//! integer as its only common sum, and the matching decryption.
//!
//! Encryption plants, in every set, a random sub-multiset of `k` items that
//! sums to the plaintext, fills the rest of the set with random items, and
//! shuffles. The whole family is regenerated until the solver reports the
//! plaintext as the unique common sum.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::codec::{compose, decompose, CipherBlock, CodecError, Keys, MAX_DIGITS};
use crate::solver::{solve_missp, ItemMultiset, MisspResult, SetFamily};

pub const DEFAULT_MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CipherError {
    #[error("plaintext {value} outside encryptable range [{lo}, {hi}]")]
    PlaintextOutOfRange { value: u64, lo: u64, hi: u64 },
    #[error("no family with unique common sum {value} found in {attempts} attempts")]
    GenerationBudgetExhausted { value: u64, attempts: usize },
    #[error("block has no common sum")]
    NoSolution,
    #[error("block has {} common sums", .0.len())]
    AmbiguousPlaintext(Vec<u64>),
    #[error("invalid cipher parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Codec(#[from] CodecError),
}

/// Shape of generated blocks: `n` sets of `m` items with `d` digits each.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CipherParams {
    n: usize,
    m: usize,
    d: usize,
    max_attempts: usize,
}

impl CipherParams {
    pub fn new(n: usize, m: usize, d: usize) -> Result<Self, CipherError> {
        if n < 2 {
            return Err(CipherError::InvalidParams("n must be at least 2".into()));
        }
        if m < 2 {
            return Err(CipherError::InvalidParams("m must be at least 2".into()));
        }
        if d == 0 || d > MAX_DIGITS {
            return Err(CipherError::InvalidParams(format!(
                "d must be in 1..={MAX_DIGITS}"
            )));
        }
        if (m as u128) * (10u128.pow(d as u32) - 1) > u64::MAX as u128 {
            return Err(CipherError::InvalidParams("m * 10^d overflows".into()));
        }
        Ok(Self {
            n,
            m,
            d,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        })
    }

    pub fn with_keys(keys: Keys, m: usize) -> Result<Self, CipherError> {
        Self::new(keys.n(), m, keys.d())
    }

    pub fn with_max_attempts(mut self, max_attempts: usize) -> Result<Self, CipherError> {
        if max_attempts == 0 {
            return Err(CipherError::InvalidParams(
                "max_attempts must be at least 1".into(),
            ));
        }
        self.max_attempts = max_attempts;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn max_attempts(&self) -> usize {
        self.max_attempts
    }

    pub fn keys(&self) -> Keys {
        Keys::new(self.n, self.d).expect("validated on construction")
    }

    pub fn block_len(&self) -> usize {
        self.n * self.m * self.d
    }

    pub fn plaintext_range(&self) -> (u64, u64) {
        plaintext_range(self.m, self.d)
    }
}

/// Seeded pseudorandom stream. Equal seeds give equal streams.
#[derive(Debug, Clone)]
pub struct RandomSource(ChaCha8Rng);

impl RandomSource {
    pub fn from_seed(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn from_entropy() -> Self {
        Self(ChaCha8Rng::from_entropy())
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.0.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.0.try_fill_bytes(dest)
    }
}

/// Inclusive bounds on the plaintexts that `m` items of `d` digits can carry.
/// Necessary, not sufficient: some values in range cannot be made unique.
pub fn plaintext_range(m: usize, d: usize) -> (u64, u64) {
    let lo = 10u64.pow(d as u32 - 1);
    let hi = m as u64 * (10u64.pow(d as u32) - 1);
    (lo, hi)
}

/// Uniform sampler of `k`-part compositions of a target with every part in
/// `[lo, hi]`.
///
/// Parts are shifted to `[0, width]`. `ways[j][t]` is proportional to the
/// number of `j`-part compositions of `t`; each row is rescaled
/// independently, which leaves the ratios used for sampling intact.
struct CompositionSampler {
    lo: u64,
    width: usize,
    ways: Vec<Vec<f64>>,
}

impl CompositionSampler {
    fn new(lo: u64, hi: u64, max_parts: usize, max_shifted_total: usize) -> Self {
        let width = (hi - lo) as usize;
        let mut ways = Vec::with_capacity(max_parts + 1);
        let mut row = vec![0.0; max_shifted_total + 1];
        row[0] = 1.0;
        ways.push(row);
        for j in 1..=max_parts {
            let prev = &ways[j - 1];
            let mut prefix = Vec::with_capacity(prev.len() + 1);
            prefix.push(0.0);
            for &v in prev {
                prefix.push(prefix.last().unwrap() + v);
            }
            let mut row: Vec<f64> = (0..=max_shifted_total)
                .map(|t| prefix[t + 1] - prefix[t.saturating_sub(width)])
                .collect();
            let peak = row.iter().copied().fold(0.0, f64::max);
            if peak > 0.0 {
                row.iter_mut().for_each(|v| *v /= peak);
            }
            ways.push(row);
        }
        Self { lo, width, ways }
    }

    fn sample<R: Rng + ?Sized>(&self, parts: usize, total: u64, rng: &mut R) -> Vec<u64> {
        let mut remaining = (total - parts as u64 * self.lo) as usize;
        let mut out = Vec::with_capacity(parts);
        for j in (1..=parts).rev() {
            let rest = &self.ways[j - 1];
            let low = remaining.saturating_sub((j - 1) * self.width);
            let high = self.width.min(remaining);
            let weight: f64 = (low..=high).map(|y| rest[remaining - y]).sum();
            let mut target = rng.gen::<f64>() * weight;
            let mut chosen = high;
            for y in low..=high {
                let w = rest[remaining - y];
                if target < w {
                    chosen = y;
                    break;
                }
                target -= w;
            }
            // Guard against landing on a zero-weight tail through rounding.
            while rest[remaining - chosen] == 0.0 {
                chosen -= 1;
            }
            out.push(self.lo + chosen as u64);
            remaining -= chosen;
        }
        out
    }
}

/// Encrypts `value` into a block whose decomposition under `params.keys()`
/// has `value` as its unique common sum.
pub fn encrypt_value<R: Rng + ?Sized>(
    value: u64,
    params: &CipherParams,
    rng: &mut R,
) -> Result<CipherBlock, CipherError> {
    let (lo, hi_total) = params.plaintext_range();
    let out_of_range = CipherError::PlaintextOutOfRange {
        value,
        lo,
        hi: hi_total,
    };
    if value < lo || value > hi_total {
        return Err(out_of_range);
    }
    let hi = 10u64.pow(params.d as u32) - 1;
    let plant_sizes: Vec<usize> = (1..=params.m)
        .filter(|&k| k as u64 * lo <= value && value <= k as u64 * hi)
        .collect();
    let Some(&max_parts) = plant_sizes.last() else {
        return Err(out_of_range);
    };
    let sampler = CompositionSampler::new(lo, hi, max_parts, (value - lo) as usize);

    for _ in 0..params.max_attempts {
        let sets = (0..params.n)
            .map(|_| {
                let k = *plant_sizes.choose(rng).unwrap();
                let mut items = sampler.sample(k, value, rng);
                items.extend((k..params.m).map(|_| rng.gen_range(lo..=hi)));
                items.shuffle(rng);
                ItemMultiset::new(items)
            })
            .collect();
        let family = SetFamily::new(sets).expect("n >= 2");
        if solve_missp(&family) == MisspResult::Unique(value) {
            return Ok(compose(&family, params.d)?);
        }
    }
    Err(CipherError::GenerationBudgetExhausted {
        value,
        attempts: params.max_attempts,
    })
}

/// Recovers the unique common sum of a block.
pub fn decrypt_block(block: &CipherBlock, keys: &Keys) -> Result<u64, CipherError> {
    let family = decompose(block, keys)?;
    match solve_missp(&family) {
        MisspResult::Unique(s) => Ok(s),
        MisspResult::Empty => Err(CipherError::NoSolution),
        MisspResult::Ambiguous(sums) => Err(CipherError::AmbiguousPlaintext(sums)),
    }
}
