//! Instance families with known or certifiable optima.
//!
//! The complementary-pair and triplet families realize the extremal inputs
//! of the range-matching heuristic: their total size is an exact multiple of
//! the capacity, so the declared optimum is certified by the size ceiling
//! alone. The range and uniform families are random workloads for property
//! and ratio testing.
//!
//! All generators are pure functions of their parameters and seed.

use crate::model::{range_index, Instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Default capacity: fine enough integer resolution for small spreads inside
/// a decile.
pub const DEFAULT_CAPACITY: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("count must be at least 1")]
    ZeroCount,
    #[error("decile for the large items must be in 5..=9, got {0}")]
    BadLargeDecile(u8),
    #[error("decile must be in 0..=9, got {0}")]
    BadDecile(u8),
    #[error("spread {delta} with count {k} overflows the decile at capacity {capacity}")]
    DecileOverflow { k: usize, delta: u64, capacity: u64 },
    #[error("delta must be at least 1")]
    ZeroDelta,
    #[error("decile {decile} contains no integer size at capacity {capacity}")]
    EmptyDecile { decile: u8, capacity: u64 },
    #[error("size bounds must satisfy 1 <= lo <= hi <= capacity, got [{lo}, {hi}] at capacity {capacity}")]
    BadBounds { lo: u64, hi: u64, capacity: u64 },
    #[error("capacity {0} is too small for three-item splits")]
    CapacityTooSmall(u64),
}

/// A fully parameterized generation request, as front ends describe it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    ComplementaryPair {
        k: usize,
        m_decile: u8,
        delta: u64,
        capacity: u64,
    },
    RangeFamily {
        n: usize,
        decile: u8,
        seed: u64,
        capacity: u64,
    },
    Triplet {
        m: usize,
        seed: u64,
        capacity: u64,
    },
    Uniform {
        n: usize,
        lo: u64,
        hi: u64,
        seed: u64,
        capacity: u64,
    },
}

impl FamilySpec {
    /// Builds the instance, returning the declared optimum for the families
    /// that certify one.
    pub fn generate(&self) -> Result<(Instance, Option<usize>), GenError> {
        match *self {
            FamilySpec::ComplementaryPair {
                k,
                m_decile,
                delta,
                capacity,
            } => {
                let gen = gen_complementary_pair(k, m_decile, delta, capacity)?;
                Ok((gen.instance, Some(gen.optimum)))
            }
            FamilySpec::RangeFamily {
                n,
                decile,
                seed,
                capacity,
            } => Ok((gen_range_family(n, decile, seed, capacity)?, None)),
            FamilySpec::Triplet { m, seed, capacity } => {
                let gen = gen_triplets(m, seed, capacity)?;
                Ok((gen.instance, Some(gen.optimum)))
            }
            FamilySpec::Uniform {
                n,
                lo,
                hi,
                seed,
                capacity,
            } => Ok((gen_uniform(n, lo, hi, seed, capacity)?, None)),
        }
    }
}

/// An instance bundled with the optimum its construction guarantees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedInstance {
    pub instance: Instance,
    pub optimum: usize,
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sample(rng: &mut ChaCha8Rng, lo: u64, hi: u64) -> u64 {
    debug_assert!(lo <= hi);
    rng.random_range(lo..=hi)
}

/// `k` exact complement pairs: large sizes `L_i = lower(m_decile) + i*delta`
/// and small sizes `S_i = capacity - L_i`, so `L_i + S_i = capacity` and
/// `L_i + S_j > capacity` whenever `j < i`. The optimum is `k`.
///
/// The item order is adversarial for the pop-last strategy: larges come
/// largest-first, and the small side is ordered so the first drawn large
/// item grabs the complement of the largest one. Every remaining large item
/// then probes the smallest small item, fails, and closes alone, leaving
/// `k - 1` smalls to pair among themselves — the worst packing the family
/// admits.
pub fn gen_complementary_pair(
    k: usize,
    m_decile: u8,
    delta: u64,
    capacity: u64,
) -> Result<CertifiedInstance, GenError> {
    if k == 0 {
        return Err(GenError::ZeroCount);
    }
    if !(5..=9).contains(&m_decile) {
        return Err(GenError::BadLargeDecile(m_decile));
    }
    if delta == 0 {
        return Err(GenError::ZeroDelta);
    }
    // All larges must stay inside the chosen decile.
    let overflow = (10u128 * k as u128 * delta as u128) >= capacity as u128;
    if overflow {
        return Err(GenError::DecileOverflow { k, delta, capacity });
    }

    let base = m_decile as u64 * capacity / 10;
    let large = |i: usize| base + i as u64 * delta; // i in 1..=k
    let small = |i: usize| capacity - large(i);

    let mut sizes = Vec::with_capacity(2 * k);
    for i in (1..=k).rev() {
        sizes.push(large(i));
    }
    match k {
        1 => sizes.push(small(1)),
        _ => {
            for i in (3..=k).rev() {
                sizes.push(small(i));
            }
            sizes.push(small(1));
            sizes.push(small(2));
        }
    }

    let instance = Instance::new(capacity, sizes)
        .expect("constructed sizes are within range")
        .with_name(format!("complementary-k{k}-m{m_decile}-d{delta}"));
    debug_assert!(instance
        .sizes()
        .iter()
        .take(k)
        .all(|&s| range_index(s, capacity) == m_decile as usize));
    Ok(CertifiedInstance {
        instance,
        optimum: k,
    })
}

/// `n` sizes drawn uniformly from one decile's integer range.
pub fn gen_range_family(
    n: usize,
    decile: u8,
    seed: u64,
    capacity: u64,
) -> Result<Instance, GenError> {
    if n == 0 {
        return Err(GenError::ZeroCount);
    }
    if decile > 9 {
        return Err(GenError::BadDecile(decile));
    }
    let (lo, hi) = decile_bounds(decile, capacity)?;
    let mut rng = rng_for(seed);
    let sizes = (0..n).map(|_| sample(&mut rng, lo, hi)).collect();
    Ok(Instance::new(capacity, sizes)
        .expect("decile bounds are within range")
        .with_name(format!("range-d{decile}-n{n}-s{seed}")))
}

/// Integer sizes whose loads classify into `decile`: the half-open tenth
/// `[decile/10, (decile+1)/10)`, with weight 1 folded into the top bucket.
fn decile_bounds(decile: u8, capacity: u64) -> Result<(u64, u64), GenError> {
    let d = decile as u128;
    let cap = capacity as u128;
    // Smallest s with 10*s >= d*cap, but at least 1.
    let lo = (d * cap).div_ceil(10).max(1);
    // Largest s with 10*s < (d+1)*cap; the top decile keeps s = capacity.
    let hi = if decile == 9 {
        cap
    } else {
        ((d + 1) * cap).div_ceil(10) - 1
    };
    if lo > hi {
        return Err(GenError::EmptyDecile { decile, capacity });
    }
    Ok((lo as u64, hi as u64))
}

/// `3m` sizes forming `m` triples that each sum exactly to the capacity,
/// every size strictly between a quarter and half of it. The optimum is `m`
/// (the total size is `m * capacity`, so the ceiling bound is tight).
pub fn gen_triplets(m: usize, seed: u64, capacity: u64) -> Result<CertifiedInstance, GenError> {
    if m == 0 {
        return Err(GenError::ZeroCount);
    }
    // Strict interior (capacity/4, capacity/2) in integers.
    let lo = capacity / 4 + 1;
    let hi = (capacity - 1) / 2;
    if lo > hi || 3 * lo > capacity || capacity > 3 * hi {
        return Err(GenError::CapacityTooSmall(capacity));
    }
    let mut rng = rng_for(seed);
    let mut sizes = Vec::with_capacity(3 * m);
    for _ in 0..m {
        let a = sample(&mut rng, lo.max(capacity - 2 * hi), hi.min(capacity - 2 * lo));
        let rest = capacity - a;
        let b = sample(&mut rng, lo.max(rest - hi), hi.min(rest - lo));
        let c = rest - b;
        debug_assert!((lo..=hi).contains(&b) && (lo..=hi).contains(&c));
        sizes.extend([a, b, c]);
    }
    let instance = Instance::new(capacity, sizes)
        .expect("split sizes are within range")
        .with_name(format!("triplets-m{m}-s{seed}"));
    Ok(CertifiedInstance {
        instance,
        optimum: m,
    })
}

/// `n` independent sizes uniform on `[lo, hi]`.
pub fn gen_uniform(
    n: usize,
    lo: u64,
    hi: u64,
    seed: u64,
    capacity: u64,
) -> Result<Instance, GenError> {
    if lo == 0 || lo > hi || hi > capacity {
        return Err(GenError::BadBounds { lo, hi, capacity });
    }
    let mut rng = rng_for(seed);
    let sizes = (0..n).map(|_| sample(&mut rng, lo, hi)).collect();
    Ok(Instance::new(capacity, sizes)
        .expect("bounds are within range")
        .with_name(format!("uniform-n{n}-{lo}-{hi}-s{seed}")))
}
