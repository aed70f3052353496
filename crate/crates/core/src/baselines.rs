//! Classic decreasing-order fit heuristics, used as comparison baselines.

use crate::model::{Bin, Instance, Solution};
use std::cmp::Reverse;

/// First-Fit-Decreasing: items in nonincreasing size order (ties by lower
/// id), each placed into the lowest-indexed bin with room, else a new bin.
pub fn ffd(instance: &Instance) -> Solution {
    pack_decreasing(instance, "ffd", |bins, size, capacity| {
        bins.iter()
            .position(|bin: &Bin| bin.load + size <= capacity)
    })
}

/// Best-Fit-Decreasing: like [`ffd`], but each item goes to the feasible bin
/// with the highest current load (ties by lower bin index).
pub fn bfd(instance: &Instance) -> Solution {
    pack_decreasing(instance, "bfd", |bins, size, capacity| {
        bins.iter()
            .enumerate()
            .filter(|(_, bin)| bin.load + size <= capacity)
            .max_by_key(|(idx, bin)| (bin.load, Reverse(*idx)))
            .map(|(idx, _)| idx)
    })
}

fn pack_decreasing(
    instance: &Instance,
    label: &str,
    choose: impl Fn(&[Bin], u64, u64) -> Option<usize>,
) -> Solution {
    let capacity = instance.capacity();
    let mut order: Vec<usize> = (0..instance.len()).collect();
    // Stable sort keeps equal sizes in id order.
    order.sort_by_key(|&id| Reverse(instance.sizes()[id]));

    let mut bins: Vec<Bin> = Vec::new();
    for id in order {
        let size = instance.sizes()[id];
        match choose(&bins, size, capacity) {
            Some(idx) => {
                bins[idx].members.push(id);
                bins[idx].load += size;
            }
            None => bins.push(Bin {
                members: vec![id],
                load: size,
            }),
        }
    }
    for bin in &mut bins {
        bin.members.sort_unstable();
    }
    Solution::from_bins(bins, capacity, label, None)
}
