//! Exact-arithmetic data model shared by all packing algorithms.
//!
//! All item weights are rationals `size / capacity` over positive integers,
//! so decile boundaries and capacity checks are exact integer comparisons.
//! A load sits in decile bucket `min(10 * load / capacity, 9)`; the deciles
//! are half-open on the left (a load of exactly half the capacity counts as
//! large) and the top bucket additionally absorbs full-capacity loads.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Number of weight-decile buckets.
pub const NUM_BUCKETS: usize = 10;

/// Errors raised when constructing an [`Instance`] from raw data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("capacity must be at least 1")]
    ZeroCapacity,
    #[error("size {size} at index {index} is out of range [1, {capacity}]")]
    SizeOutOfRange {
        index: usize,
        size: u64,
        capacity: u64,
    },
}

/// A bin-packing instance: a capacity and item sizes in integer units.
///
/// Item `i` has weight `sizes[i] / capacity`, which lies in `(0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    capacity: u64,
    sizes: Vec<u64>,
    name: Option<String>,
}

impl Instance {
    /// Builds an instance, validating `capacity >= 1` and every size in `[1, capacity]`.
    pub fn new(capacity: u64, sizes: Vec<u64>) -> Result<Self, InstanceError> {
        if capacity == 0 {
            return Err(InstanceError::ZeroCapacity);
        }
        for (index, &size) in sizes.iter().enumerate() {
            if size == 0 || size > capacity {
                return Err(InstanceError::SizeOutOfRange {
                    index,
                    size,
                    capacity,
                });
            }
        }
        Ok(Instance {
            capacity,
            sizes,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Number of items.
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn item(&self, id: usize) -> Item {
        Item {
            id,
            size: self.sizes[id],
        }
    }

    pub fn items(&self) -> impl Iterator<Item = Item> + '_ {
        self.sizes
            .iter()
            .enumerate()
            .map(|(id, &size)| Item { id, size })
    }

    /// Sum of all item sizes. Wide type so it never overflows.
    pub fn total_size(&self) -> u128 {
        self.sizes.iter().map(|&s| s as u128).sum()
    }

    /// The same instance with capacity and every size multiplied by `factor`.
    ///
    /// Weights are unchanged, so every deterministic algorithm in this crate
    /// produces the same bin count on the scaled instance.
    pub fn scaled(&self, factor: u64) -> Instance {
        assert!(factor >= 1, "scale factor must be positive");
        Instance {
            capacity: self.capacity * factor,
            sizes: self.sizes.iter().map(|&s| s * factor).collect(),
            name: self.name.clone(),
        }
    }
}

/// One input item: a dense id and its integer size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Item {
    pub id: usize,
    pub size: u64,
}

/// Decile bucket of a load: `min(10 * load / capacity, 9)` in exact integer
/// arithmetic.
///
/// Loads on a decile boundary belong to the upper decile (half-open ranges),
/// and a full-capacity load clamps into the top bucket.
pub fn range_index(load: u64, capacity: u64) -> usize {
    assert!(load >= 1, "load must be positive");
    assert!(capacity >= 1, "capacity must be positive");
    let idx = (10 * load as u128) / capacity as u128;
    idx.min(9) as usize
}

/// A partially built bin: member item ids plus their exact total size.
///
/// Composites are treated as single items and reinserted into the range
/// buckets as they grow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeItem {
    members: Vec<usize>,
    load: u64,
}

impl CompositeItem {
    pub fn single(item: Item) -> Self {
        CompositeItem {
            members: vec![item.id],
            load: item.size,
        }
    }

    /// Combines two composites. The caller checks capacity beforehand.
    pub fn merge(mut self, other: CompositeItem) -> CompositeItem {
        self.members.extend(other.members);
        self.load += other.load;
        self
    }

    pub fn load(&self) -> u64 {
        self.load
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }
}

/// Ten stacks of composite items indexed by weight decile.
#[derive(Debug, Clone)]
pub struct RangeBuckets {
    capacity: u64,
    buckets: [Vec<CompositeItem>; NUM_BUCKETS],
}

impl RangeBuckets {
    pub fn new(capacity: u64) -> Self {
        assert!(capacity >= 1, "capacity must be positive");
        RangeBuckets {
            capacity,
            buckets: Default::default(),
        }
    }

    /// Inserts a composite into the bucket matching its load.
    pub fn insert(&mut self, composite: CompositeItem) {
        debug_assert!(composite.load() <= self.capacity);
        let bucket = range_index(composite.load(), self.capacity);
        self.buckets[bucket].push(composite);
    }

    /// Pre-sizes a bucket for `additional` more composites.
    pub fn reserve(&mut self, bucket: usize, additional: usize) {
        self.buckets[bucket].reserve(additional);
    }

    pub fn len(&self, bucket: usize) -> usize {
        self.buckets[bucket].len()
    }

    pub fn is_empty(&self, bucket: usize) -> bool {
        self.buckets[bucket].is_empty()
    }

    pub fn get(&self, bucket: usize, index: usize) -> &CompositeItem {
        &self.buckets[bucket][index]
    }

    /// Removes and returns the composite at `index` in O(1) (swap-remove).
    pub fn take(&mut self, bucket: usize, index: usize) -> CompositeItem {
        self.buckets[bucket].swap_remove(index)
    }

    /// Total number of original items held across all buckets.
    pub fn member_count(&self) -> usize {
        self.buckets
            .iter()
            .flatten()
            .map(CompositeItem::member_count)
            .sum()
    }

    /// Empties every bucket, yielding the remaining composites.
    pub fn drain_all(&mut self) -> Vec<CompositeItem> {
        let mut out = Vec::new();
        for bucket in &mut self.buckets {
            out.append(bucket);
        }
        out
    }
}

/// A closed bin: member item ids (sorted) and their total load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bin {
    pub members: Vec<usize>,
    pub load: u64,
}

impl Bin {
    pub fn from_composite(composite: CompositeItem) -> Self {
        let mut members = composite.members;
        members.sort_unstable();
        Bin {
            members,
            load: composite.load,
        }
    }
}

/// Summary statistics of a packing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionStats {
    pub bin_count: usize,
    /// Sum of `capacity - load` over all bins.
    pub total_slack: u64,
    /// Load of the emptiest bin; `None` for an empty packing.
    pub min_load: Option<u64>,
    pub capacity: u64,
}

impl SolutionStats {
    /// Fill fraction of the emptiest bin, for reporting only.
    pub fn min_fill(&self) -> Option<f64> {
        self.min_load.map(|l| l as f64 / self.capacity as f64)
    }
}

/// A complete packing: closed bins plus provenance and statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub bins: Vec<Bin>,
    pub algorithm: String,
    pub seed: Option<u64>,
    pub stats: SolutionStats,
}

impl Solution {
    pub fn from_bins(
        bins: Vec<Bin>,
        capacity: u64,
        algorithm: impl Into<String>,
        seed: Option<u64>,
    ) -> Self {
        // Saturating: hand-built solutions may carry overfull bins that the
        // validator reports later.
        let total_slack = bins.iter().map(|b| capacity.saturating_sub(b.load)).sum();
        let min_load = bins.iter().map(|b| b.load).min();
        let stats = SolutionStats {
            bin_count: bins.len(),
            total_slack,
            min_load,
            capacity,
        };
        Solution {
            bins,
            algorithm: algorithm.into(),
            seed,
            stats,
        }
    }

    pub fn bin_count(&self) -> usize {
        self.bins.len()
    }
}

/// One defect found by [`validate_solution`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingItem { id: usize },
    DuplicateItem { id: usize },
    UnknownItem { id: usize },
    OverfullBin { bin: usize, load: u64, capacity: u64 },
    LoadMismatch { bin: usize, stored: u64, computed: u64 },
    EmptyBin { bin: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::MissingItem { id } => write!(f, "item {id} is not packed in any bin"),
            Violation::DuplicateItem { id } => write!(f, "item {id} is packed more than once"),
            Violation::UnknownItem { id } => write!(f, "item {id} does not exist in the instance"),
            Violation::OverfullBin {
                bin,
                load,
                capacity,
            } => write!(f, "bin {bin} is overfull ({load} > {capacity})"),
            Violation::LoadMismatch {
                bin,
                stored,
                computed,
            } => write!(
                f,
                "bin {bin} stores load {stored} but its members sum to {computed}"
            ),
            Violation::EmptyBin { bin } => write!(f, "bin {bin} has no members"),
        }
    }
}

/// Outcome of checking a solution against its instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks that a solution is an exact partition of the instance's items into
/// feasible bins: every id packed exactly once, no bin over capacity, stored
/// loads consistent with member sizes. Never panics on malformed input.
pub fn validate_solution(instance: &Instance, solution: &Solution) -> ValidationReport {
    let n = instance.len();
    let capacity = instance.capacity();
    let mut seen = vec![0usize; n];
    let mut violations = Vec::new();

    for (bin_idx, bin) in solution.bins.iter().enumerate() {
        if bin.members.is_empty() {
            violations.push(Violation::EmptyBin { bin: bin_idx });
        }
        let mut computed: u128 = 0;
        for &id in &bin.members {
            if id >= n {
                violations.push(Violation::UnknownItem { id });
                continue;
            }
            seen[id] += 1;
            computed += instance.sizes()[id] as u128;
        }
        if computed != bin.load as u128 {
            violations.push(Violation::LoadMismatch {
                bin: bin_idx,
                stored: bin.load,
                computed: computed.min(u64::MAX as u128) as u64,
            });
        }
        if computed > capacity as u128 {
            violations.push(Violation::OverfullBin {
                bin: bin_idx,
                load: computed.min(u64::MAX as u128) as u64,
                capacity,
            });
        }
    }

    for (id, &count) in seen.iter().enumerate() {
        if count == 0 {
            violations.push(Violation::MissingItem { id });
        } else if count > 1 {
            violations.push(Violation::DuplicateItem { id });
        }
    }

    ValidationReport {
        ok: violations.is_empty(),
        violations,
    }
}
