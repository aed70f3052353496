//! Linear-time packing by decile ranges and complementary matching.
//!
//! Items are classified into ten weight-decile buckets. The algorithm then
//! runs as an explicit state machine over those buckets:
//!
//! * **Drain states** (buckets 5..=9): repeatedly draw one composite `a` from
//!   the large bucket and probe its complementary buckets from the highest
//!   down to bucket 0, drawing one candidate `b` per bucket. The first
//!   candidate that fits is merged with `a` and the merged composite is
//!   reinserted by its new load; if no candidate fits, `a` is closed as a
//!   bin. A drained bucket hands over to the next drain state, and bucket 9
//!   hands over to the pair states.
//! * **Pair states** (buckets 4..=0): merge two composites of the same small
//!   bucket (two sub-half loads always fit) and jump back to the drain or
//!   pair state responsible for the merged load's range. A bucket holding a
//!   single composite merges it downward into the highest nonempty lower
//!   bucket, or closes it alone when none exists.
//!
//! Every step removes at least one composite, so the machine halts after at
//! most `n` merge-or-close steps with at most five probes each — the whole
//! run is O(n).
//!
//! Candidate draws go through an injectable [`ProbeStrategy`], so adversarial
//! instances can pin the unlucky draws deterministically instead of waiting
//! for them.

use crate::model::{range_index, Bin, CompositeItem, Instance, RangeBuckets, Solution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// How the machine picks a composite out of a bucket.
///
/// For a fixed instance, strategy, and seed the packing is fully
/// deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeStrategy {
    /// Uniform draws from a seeded stream; the default.
    SeededRandom(u64),
    /// Always the most recently inserted composite.
    PopLast,
    /// Always the oldest composite (by swap-remove position).
    PopFirst,
}

impl ProbeStrategy {
    pub fn label(&self) -> &'static str {
        match self {
            ProbeStrategy::SeededRandom(_) => "random",
            ProbeStrategy::PopLast => "pop-last",
            ProbeStrategy::PopFirst => "pop-first",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            ProbeStrategy::SeededRandom(seed) => Some(*seed),
            _ => None,
        }
    }
}

/// States of the packing machine.
///
/// `Drain(b)` empties large bucket `b` by complementary matching; `Pair(b)`
/// pairs up small bucket `b`; `End` flushes whatever is left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum State {
    Drain(u8),
    Pair(u8),
    End,
}

/// One step of a packing run, sufficient to replay the whole solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    /// Input item `item` entered bucket `bucket`.
    Classified { item: usize, bucket: usize },
    /// Drawn composite `a` tested candidate `b` from `bucket`.
    Probe {
        a: CompositeItem,
        bucket: usize,
        b: CompositeItem,
        fit: bool,
    },
    /// `a` and `b` merged into a composite now sitting in `to_bucket`.
    Merge {
        a: CompositeItem,
        b: CompositeItem,
        to_bucket: usize,
    },
    /// Composite closed as a finished bin.
    CloseBin { composite: CompositeItem },
    /// A lone pair-phase composite merged downward into `to_bucket`.
    LeftoverMerge {
        a: CompositeItem,
        b: CompositeItem,
        to_bucket: usize,
    },
    /// A lone pair-phase composite closed with no partner available.
    LeftoverClose { composite: CompositeItem },
    /// The machine moved between states.
    Transition { from: State, to: State },
}

/// Packs the instance and returns the solution alone.
pub fn pack(instance: &Instance, strategy: ProbeStrategy) -> Solution {
    let mut sink = NoTrace;
    run(instance, strategy, &mut sink)
}

/// Packs the instance and additionally returns the full event trace.
///
/// The solution is identical to [`pack`] with the same inputs.
pub fn pack_with_trace(instance: &Instance, strategy: ProbeStrategy) -> (Solution, Vec<TraceEvent>) {
    let mut trace = Vec::new();
    let solution = run(instance, strategy, &mut trace);
    (solution, trace)
}

/// Event totals for one packing run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TraceCounts {
    pub classified: usize,
    pub probes: usize,
    pub merges: usize,
    pub closes: usize,
    pub transitions: usize,
}

impl TraceCounts {
    /// Merge-or-close steps; at most one per input item.
    pub fn steps(&self) -> usize {
        self.merges + self.closes
    }
}

/// Packs the instance while tallying events, without materializing a trace.
/// Suited to probe-budget checks on large instances.
pub fn pack_counting(instance: &Instance, strategy: ProbeStrategy) -> (Solution, TraceCounts) {
    let mut counts = TraceCounts::default();
    let solution = run(instance, strategy, &mut counts);
    (solution, counts)
}

impl TraceSink for TraceCounts {
    #[inline]
    fn record(&mut self, event: impl FnOnce() -> TraceEvent) {
        match event() {
            TraceEvent::Classified { .. } => self.classified += 1,
            TraceEvent::Probe { .. } => self.probes += 1,
            TraceEvent::Merge { .. } | TraceEvent::LeftoverMerge { .. } => self.merges += 1,
            TraceEvent::CloseBin { .. } | TraceEvent::LeftoverClose { .. } => self.closes += 1,
            TraceEvent::Transition { .. } => self.transitions += 1,
        }
    }
}

/// Rebuilds the solution a trace describes, independent of bucket mechanics.
///
/// Only the merge and close events matter; probes and transitions are
/// ignored.
pub fn replay_trace(instance: &Instance, trace: &[TraceEvent], algorithm: &str) -> Solution {
    let mut bins = Vec::new();
    for event in trace {
        match event {
            TraceEvent::CloseBin { composite } | TraceEvent::LeftoverClose { composite } => {
                bins.push(Bin::from_composite(composite.clone()));
            }
            _ => {}
        }
    }
    Solution::from_bins(bins, instance.capacity(), algorithm, None)
}

trait TraceSink {
    fn record(&mut self, event: impl FnOnce() -> TraceEvent);
}

struct NoTrace;

impl TraceSink for NoTrace {
    #[inline]
    fn record(&mut self, _event: impl FnOnce() -> TraceEvent) {}
}

impl TraceSink for Vec<TraceEvent> {
    #[inline]
    fn record(&mut self, event: impl FnOnce() -> TraceEvent) {
        self.push(event());
    }
}

enum Picker {
    Rng(Box<ChaCha8Rng>),
    Last,
    First,
}

impl Picker {
    fn new(strategy: ProbeStrategy) -> Self {
        match strategy {
            ProbeStrategy::SeededRandom(seed) => {
                Picker::Rng(Box::new(ChaCha8Rng::seed_from_u64(seed)))
            }
            ProbeStrategy::PopLast => Picker::Last,
            ProbeStrategy::PopFirst => Picker::First,
        }
    }

    /// Index of the next draw from a bucket of `len` composites.
    fn pick(&mut self, len: usize) -> usize {
        debug_assert!(len >= 1);
        match self {
            // Sampled as u64 so the stream is identical on every platform.
            Picker::Rng(rng) => rng.random_range(0..len as u64) as usize,
            Picker::Last => len - 1,
            Picker::First => 0,
        }
    }
}

/// Complementary buckets probed for a composite drawn from `large_bucket`,
/// highest first.
fn probe_targets(large_bucket: u8) -> &'static [usize] {
    match large_bucket {
        5 => &[4, 3, 2, 1, 0],
        6 => &[3, 2, 1, 0],
        7 => &[2, 1, 0],
        8 => &[1, 0],
        9 => &[0],
        _ => unreachable!("drain states only exist for buckets 5..=9"),
    }
}

struct Machine<'a, S: TraceSink> {
    capacity: u64,
    buckets: RangeBuckets,
    bins: Vec<Bin>,
    picker: Picker,
    sink: &'a mut S,
    // Members still in buckets; live + closed == n at every step.
    live_members: usize,
    closed_members: usize,
}

impl<'a, S: TraceSink> Machine<'a, S> {
    fn new(instance: &Instance, strategy: ProbeStrategy, sink: &'a mut S) -> Self {
        let mut buckets = RangeBuckets::new(instance.capacity());
        // Size the buckets up front so classification never reallocates.
        let mut tally = [0usize; crate::model::NUM_BUCKETS];
        for item in instance.items() {
            tally[range_index(item.size, instance.capacity())] += 1;
        }
        for (bucket, &count) in tally.iter().enumerate() {
            buckets.reserve(bucket, count);
        }
        for item in instance.items() {
            let bucket = range_index(item.size, instance.capacity());
            sink.record(|| TraceEvent::Classified {
                item: item.id,
                bucket,
            });
            buckets.insert(CompositeItem::single(item));
        }
        Machine {
            capacity: instance.capacity(),
            buckets,
            bins: Vec::new(),
            picker: Picker::new(strategy),
            sink,
            live_members: instance.len(),
            closed_members: 0,
        }
    }

    fn fits(&self, a: &CompositeItem, b: &CompositeItem) -> bool {
        a.load() as u128 + b.load() as u128 <= self.capacity as u128
    }

    fn draw(&mut self, bucket: usize) -> CompositeItem {
        let index = self.picker.pick(self.buckets.len(bucket));
        self.buckets.take(bucket, index)
    }

    fn close(&mut self, composite: CompositeItem, leftover: bool) {
        self.live_members -= composite.member_count();
        self.closed_members += composite.member_count();
        self.sink.record(|| {
            if leftover {
                TraceEvent::LeftoverClose {
                    composite: composite.clone(),
                }
            } else {
                TraceEvent::CloseBin {
                    composite: composite.clone(),
                }
            }
        });
        self.bins.push(Bin::from_composite(composite));
    }

    /// Empties large bucket `b`: each drawn composite either merges with the
    /// first fitting candidate from its complementary buckets or closes as a
    /// bin. Merged composites reenter the buckets by their new load, which
    /// may be bucket `b` itself, so the loop rechecks emptiness every round.
    fn drain(&mut self, b: u8) {
        let bucket = b as usize;
        while !self.buckets.is_empty(bucket) {
            let a = self.draw(bucket);
            match self.probe_for(&a, b) {
                Some((target, index)) => {
                    let partner = self.buckets.take(target, index);
                    self.merge_and_insert(a, partner, false);
                }
                None => self.close(a, false),
            }
        }
    }

    /// Probes the complementary buckets for `a`, one candidate per bucket,
    /// and returns the position of the first that fits. A miss leaves the
    /// candidate in place and falls through to the next lower bucket.
    fn probe_for(&mut self, a: &CompositeItem, b: u8) -> Option<(usize, usize)> {
        for &target in probe_targets(b) {
            if self.buckets.is_empty(target) {
                continue;
            }
            let index = self.picker.pick(self.buckets.len(target));
            let fit = self.fits(a, self.buckets.get(target, index));
            self.sink.record(|| TraceEvent::Probe {
                a: a.clone(),
                bucket: target,
                b: self.buckets.get(target, index).clone(),
                fit,
            });
            if fit {
                return Some((target, index));
            }
        }
        None
    }

    fn merge_and_insert(&mut self, a: CompositeItem, b: CompositeItem, leftover: bool) {
        debug_assert!(self.fits(&a, &b));
        let to_bucket = range_index(a.load() + b.load(), self.capacity);
        self.sink.record(|| {
            if leftover {
                TraceEvent::LeftoverMerge {
                    a: a.clone(),
                    b: b.clone(),
                    to_bucket,
                }
            } else {
                TraceEvent::Merge {
                    a: a.clone(),
                    b: b.clone(),
                    to_bucket,
                }
            }
        });
        self.buckets.insert(a.merge(b));
    }

    /// One action in pair state `b`, returning the next state.
    fn step_pair(&mut self, b: u8) -> State {
        let bucket = b as usize;
        match self.buckets.len(bucket) {
            0 => pair_empty_target(b),
            1 => {
                // Lone composite: merge it into the highest nonempty lower
                // bucket (both loads are below half capacity, so the pair
                // always fits); close it alone when nothing is below. The
                // merged result then goes to the state that owns its new
                // range, like every other merge target: large results enter
                // the drain chain, small ones rejoin the pair chain at their
                // bucket.
                let lower = (0..bucket).rev().find(|&j| !self.buckets.is_empty(j));
                match lower {
                    Some(j) => {
                        let a = self.buckets.take(bucket, 0);
                        let index = self.picker.pick(self.buckets.len(j));
                        let partner = self.buckets.take(j, index);
                        let load = a.load() + partner.load();
                        self.merge_and_insert(a, partner, true);
                        let landed = range_index(load, self.capacity) as u8;
                        if landed >= 5 {
                            State::Drain(landed)
                        } else {
                            State::Pair(landed)
                        }
                    }
                    None => {
                        let a = self.buckets.take(bucket, 0);
                        self.close(a, true);
                        pair_empty_target(b)
                    }
                }
            }
            _ => {
                let first = self.draw(bucket);
                let second = self.draw(bucket);
                let load = first.load() + second.load();
                self.merge_and_insert(first, second, false);
                pair_merge_target(b, load, self.capacity)
            }
        }
    }

    /// Closes everything still sitting in the buckets. Every merge routes
    /// its result to the state that owns the new bucket, so by the time the
    /// pair chain bottoms out the buckets are expected to be empty; this is
    /// the safety net for that expectation, and the trace tests assert it
    /// stays a no-op.
    fn flush(&mut self) {
        for composite in self.buckets.drain_all() {
            self.close(composite, false);
        }
    }

    fn run(mut self, algorithm_seed: Option<u64>, label: &str) -> Solution {
        let mut state = State::Drain(5);
        loop {
            let next = match state {
                State::Drain(b) => {
                    self.drain(b);
                    if b < 9 {
                        State::Drain(b + 1)
                    } else {
                        State::Pair(4)
                    }
                }
                State::Pair(b) => self.step_pair(b),
                State::End => {
                    self.flush();
                    break;
                }
            };
            self.sink.record(|| TraceEvent::Transition {
                from: state,
                to: next,
            });
            state = next;
        }
        debug_assert_eq!(self.live_members, 0);
        debug_assert_eq!(self.buckets.member_count(), 0);
        Solution::from_bins(self.bins, self.capacity, label, algorithm_seed)
    }
}

/// Target after merging a pair from bucket `b` with combined `load`.
fn pair_merge_target(b: u8, load: u64, capacity: u64) -> State {
    match b {
        4 => State::Drain(8),
        3 => State::Drain(6),
        // A pair of sub-0.3 loads sums below 0.6: route large results back
        // through the top drain chain, small ones onward to bucket 4.
        2 => {
            if 2 * load as u128 >= capacity as u128 {
                State::Drain(5)
            } else {
                State::Pair(4)
            }
        }
        1 => State::Pair(4),
        0 => State::Pair(2),
        _ => unreachable!("pair states only exist for buckets 0..=4"),
    }
}

/// Target when pair bucket `b` has nothing left to pair.
fn pair_empty_target(b: u8) -> State {
    match b {
        4 => State::Pair(3),
        3 => State::Pair(2),
        2 => State::Pair(1),
        1 => State::Pair(0),
        0 => State::End,
        _ => unreachable!("pair states only exist for buckets 0..=4"),
    }
}

fn run<S: TraceSink>(instance: &Instance, strategy: ProbeStrategy, sink: &mut S) -> Solution {
    let machine = Machine::new(instance, strategy, sink);
    machine.run(strategy.seed(), "ranger")
}
