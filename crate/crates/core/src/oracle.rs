//! Exact minimum-bin solving for small instances, plus cheap lower bounds.
//!
//! The solver is a depth-first branch and bound over item placements: items
//! in decreasing size order, each placed into every open bin it fits, or one
//! new bin per level. It either proves the optimum and returns a certificate
//! packing, or reports that a limit was hit — never a silent approximation.

use crate::model::{Bin, Instance, Solution};

/// Caps on the exact search. Exceeding either yields [`OracleOutcome::NotSolved`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_items: usize,
    pub node_budget: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_items: 16,
            node_budget: 5_000_000,
        }
    }
}

/// Why the exact search gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotSolved {
    TooManyItems { n: usize, max_items: usize },
    NodeBudgetExhausted { node_budget: u64 },
}

/// Result of [`optimal_bins`].
#[derive(Debug, Clone, PartialEq)]
pub enum OracleOutcome {
    /// Proven minimum bin count with one optimal packing as certificate.
    Solved { bins: usize, solution: Solution },
    NotSolved(NotSolved),
}

impl OracleOutcome {
    pub fn bins(&self) -> Option<usize> {
        match self {
            OracleOutcome::Solved { bins, .. } => Some(*bins),
            OracleOutcome::NotSolved(_) => None,
        }
    }
}

/// Exact minimum number of bins, or `NotSolved` when the instance exceeds
/// the limits.
pub fn optimal_bins(instance: &Instance, limits: OracleLimits) -> OracleOutcome {
    let n = instance.len();
    if n > limits.max_items {
        return OracleOutcome::NotSolved(NotSolved::TooManyItems {
            n,
            max_items: limits.max_items,
        });
    }

    // Decreasing size order; ties by id for reproducible certificates.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&id| (std::cmp::Reverse(instance.sizes()[id]), id));
    let sizes: Vec<u64> = order.iter().map(|&id| instance.sizes()[id]).collect();

    // suffix[i] = total size of items i.. still to place.
    let mut suffix = vec![0u128; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + sizes[i] as u128;
    }

    let mut search = Search {
        capacity: instance.capacity(),
        sizes: &sizes,
        suffix: &suffix,
        best_count: n + 1,
        best_assign: Vec::new(),
        nodes_left: limits.node_budget,
        exhausted: false,
    };
    let mut loads: Vec<u64> = Vec::new();
    let mut assign: Vec<usize> = vec![usize::MAX; n];
    search.dfs(0, &mut loads, &mut assign);

    if search.exhausted {
        return OracleOutcome::NotSolved(NotSolved::NodeBudgetExhausted {
            node_budget: limits.node_budget,
        });
    }

    let bins = search.best_count;
    let mut bin_members: Vec<Vec<usize>> = vec![Vec::new(); bins];
    for (sorted_idx, &bin) in search.best_assign.iter().enumerate() {
        bin_members[bin].push(order[sorted_idx]);
    }
    let bins_out: Vec<Bin> = bin_members
        .into_iter()
        .map(|mut members| {
            members.sort_unstable();
            let load = members.iter().map(|&id| instance.sizes()[id]).sum();
            Bin { members, load }
        })
        .collect();
    let solution = Solution::from_bins(bins_out, instance.capacity(), "oracle", None);
    OracleOutcome::Solved { bins, solution }
}

struct Search<'a> {
    capacity: u64,
    sizes: &'a [u64],
    suffix: &'a [u128],
    best_count: usize,
    best_assign: Vec<usize>,
    nodes_left: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn dfs(&mut self, item: usize, loads: &mut Vec<u64>, assign: &mut Vec<usize>) {
        if self.exhausted {
            return;
        }
        if self.nodes_left == 0 {
            self.exhausted = true;
            return;
        }
        self.nodes_left -= 1;

        let count = loads.len();
        if item == self.sizes.len() {
            if count < self.best_count {
                self.best_count = count;
                self.best_assign = assign.clone();
            }
            return;
        }
        if count >= self.best_count {
            return;
        }
        // Remaining items need at least ceil((remaining - free slack) / cap)
        // additional bins beyond the ones already open.
        let free: u128 = loads
            .iter()
            .map(|&load| (self.capacity - load) as u128)
            .sum();
        let remaining = self.suffix[item];
        let extra = remaining.saturating_sub(free);
        let needed = extra.div_ceil(self.capacity as u128) as usize;
        if count + needed >= self.best_count {
            return;
        }

        let size = self.sizes[item];
        for bin in 0..count {
            if loads[bin] + size <= self.capacity {
                loads[bin] += size;
                assign[item] = bin;
                self.dfs(item + 1, loads, assign);
                loads[bin] -= size;
            }
        }
        // Exactly one fresh bin per level breaks the empty-bin symmetry.
        loads.push(size);
        assign[item] = count;
        self.dfs(item + 1, loads, assign);
        loads.pop();
    }
}

/// Fast lower bound on the optimum: the size ceiling and the count of items
/// too large to share a bin, whichever is greater.
pub fn lower_bound(instance: &Instance) -> usize {
    let capacity = instance.capacity() as u128;
    let ceiling = instance.total_size().div_ceil(capacity) as usize;
    let big_items = instance
        .sizes()
        .iter()
        .filter(|&&s| 2 * s as u128 > capacity)
        .count();
    ceiling.max(big_items)
}
