//! Sweep-line evaluation of anchor energy cross-sums.
//!
//! The cross-sum `Σ_ij w1_i w2_j OT_1(ρ1_i, ρ2_j)` equals the integral over
//! the real line of the total CDF variation
//! `f(x) = Σ_ij w1_i w2_j |H1_i(x) - H2_j(x)|`. All CDFs are piecewise
//! constant and change only at atom values, so sweeping the `L` sorted atom
//! values from left to right moves exactly one anchor's CDF per event. The
//! change in `f` caused by moving anchor `i` from CDF value `c` to `c'` is
//!
//! ```text
//! w_i * (g(c') - g(c)),   g(x) = Σ_j w_j |x - H_j| over the opposite side
//!                              = x (2 S(<x) - S) + T - 2 T(<x)
//! ```
//!
//! where `S(<x)` and `T(<x)` are the anchor weight and weight·CDF mass of
//! opposite-side anchors currently below `x`. Both are prefix queries on a
//! Fenwick tree indexed by the (precomputed, deduplicated) table of every CDF
//! value an anchor can take, so each event costs `O(log L)`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::ops::{Add, AddAssign, Sub};

use crate::anchor::{anchor_family, AnchorFamily};
use crate::error::{Error, Result};
use crate::fenwick::FenwickTree;
use crate::mmset::MMSet;
use crate::ot1d::{ot1d, Exponent};

/// Events between two from-scratch recomputations of `f`.
pub const RESYNC_INTERVAL: usize = 1 << 16;

/// Which family an event belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    First = 0,
    Second = 1,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

/// One change point of one anchor CDF.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepEvent {
    pub value: f64,
    pub anchor: u32,
    /// Table coordinate of the anchor's CDF just after this change point.
    pub coord: u32,
    pub side: Side,
}

/// An event of one family, before merging.
#[derive(Debug, Clone, Copy)]
struct Atom {
    value: f64,
    anchor: u32,
    coord: u32,
}

/// One family ready for sweeping: events sorted by `(value, anchor, atom)`
/// and the accumulator with every anchor registered at CDF value 0.
#[derive(Debug, Clone)]
pub struct PreparedFamily<'a> {
    weights: &'a [f64],
    atoms: Vec<Atom>,
    acc: PrefixAccumulator,
    start: Vec<u32>,
}

impl<'a> PreparedFamily<'a> {
    pub fn new(family: &'a AnchorFamily) -> Self {
        let (acc, coords) = PrefixAccumulator::new(family);
        let mut atoms = Vec::with_capacity(family.atom_count());
        for (i, anchor) in family.anchors().iter().enumerate() {
            let c = coords.anchor(i);
            atoms.extend(
                anchor
                    .values()
                    .iter()
                    .zip(&c[1..])
                    .map(|(&value, &coord)| Atom {
                        value,
                        anchor: i as u32,
                        coord,
                    }),
            );
        }
        // built in (anchor, atom) order; a stable sort by value keeps it for ties
        radsort::sort_by_key(&mut atoms, |a| a.value);
        let start = (0..family.len()).map(|i| coords.anchor(i)[0]).collect();
        Self {
            weights: family.weights(),
            atoms,
            acc,
            start,
        }
    }
}

/// Two sorted atom lists merged into events; ties go to the first side.
struct Merge<'a> {
    first: &'a [Atom],
    second: &'a [Atom],
}

impl Iterator for Merge<'_> {
    type Item = SweepEvent;

    #[inline]
    fn next(&mut self) -> Option<SweepEvent> {
        let side = match (self.first.first(), self.second.first()) {
            (Some(a), Some(b)) if a.value.total_cmp(&b.value).is_le() => Side::First,
            (Some(_), None) => Side::First,
            (_, Some(_)) => Side::Second,
            (None, None) => return None,
        };
        let list = match side {
            Side::First => &mut self.first,
            Side::Second => &mut self.second,
        };
        let atom = list[0];
        *list = &list[1..];
        Some(SweepEvent {
            value: atom.value,
            anchor: atom.anchor,
            coord: atom.coord,
            side,
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.first.len() + self.second.len();
        (n, Some(n))
    }
}

fn merge<'a>(p1: &'a PreparedFamily, p2: &'a PreparedFamily) -> Merge<'a> {
    Merge {
        first: &p1.atoms,
        second: &p2.atoms,
    }
}

/// All `L` events of both families, ordered by `(value, side, anchor)` and
/// then by atom order within an anchor.
///
/// Events of one anchor with equal value are interchangeable up to their
/// coordinates, which always increase along the processing order.
pub fn build_events(f1: &AnchorFamily, f2: &AnchorFamily) -> Vec<SweepEvent> {
    let (p1, p2) = (PreparedFamily::new(f1), PreparedFamily::new(f2));
    merge(&p1, &p2).collect()
}

/// Anchor weight and weight·CDF mass registered at one coordinate.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    pub weight: f64,
    pub weighted_cdf: f64,
}

impl Add for Moments {
    type Output = Moments;
    fn add(self, o: Moments) -> Moments {
        Moments {
            weight: self.weight + o.weight,
            weighted_cdf: self.weighted_cdf + o.weighted_cdf,
        }
    }
}

impl Sub for Moments {
    type Output = Moments;
    fn sub(self, o: Moments) -> Moments {
        Moments {
            weight: self.weight - o.weight,
            weighted_cdf: self.weighted_cdf - o.weighted_cdf,
        }
    }
}

impl AddAssign for Moments {
    fn add_assign(&mut self, o: Moments) {
        self.weight += o.weight;
        self.weighted_cdf += o.weighted_cdf;
    }
}

/// Partial sums `S(<v)` and `T(<v)` over the anchors of one side, indexed
/// by position in the side's coordinate table.
#[derive(Debug, Clone)]
pub struct PrefixAccumulator {
    table: Vec<f64>,
    tree: FenwickTree<Moments>,
    total: Moments,
}

impl PrefixAccumulator {
    /// Builds the coordinate table from every attainable CDF value (including
    /// 0) and registers each anchor, with its weight, at CDF value 0.
    pub fn new(family: &AnchorFamily) -> (Self, Coordinates) {
        let mut offsets = Vec::with_capacity(family.len() + 1);
        let mut cumulative = Vec::with_capacity(family.atom_count() + family.len());
        offsets.push(0);
        for a in family.anchors() {
            cumulative.extend(a.cumulative());
            offsets.push(cumulative.len());
        }
        let mut table = cumulative.clone();
        radsort::sort(&mut table);
        table.dedup();

        let data = cumulative
            .iter()
            .map(|v| {
                table
                    .binary_search_by(|t| t.total_cmp(v))
                    .expect("every prefix value is in the table") as u32
            })
            .collect();
        let coords = Coordinates { offsets, data };

        let mut slots = vec![Moments::default(); table.len()];
        let mut total = Moments::default();
        for (i, w) in family.weights().iter().enumerate() {
            let c = coords.anchor(i)[0] as usize;
            let m = Moments {
                weight: *w,
                weighted_cdf: w * table[c],
            };
            slots[c] += m;
            total += m;
        }
        let acc = Self {
            tree: FenwickTree::from_slice(&slots),
            table,
            total,
        };
        (acc, coords)
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    /// Total registered anchor weight (1 for a valid family).
    pub fn total_weight(&self) -> f64 {
        self.total.weight
    }

    /// `(S, T)` over coordinates `[0, end)`.
    #[inline]
    pub fn below(&self, end: usize) -> Moments {
        self.tree.prefix(end)
    }

    /// `Σ_anchors w |x - H|`, where `end` is the number of table entries `< x`.
    #[inline]
    pub fn distance_sum(&self, x: f64, end: usize) -> f64 {
        let b = self.below(end);
        x * (2.0 * b.weight - self.total.weight) + self.total.weighted_cdf - 2.0 * b.weighted_cdf
    }

    /// Moves an anchor of weight `w` from coordinate `from` to `to`.
    #[inline]
    pub fn relocate(&mut self, from: usize, to: usize, w: f64) {
        let old = Moments {
            weight: w,
            weighted_cdf: w * self.table[from],
        };
        let new = Moments {
            weight: w,
            weighted_cdf: w * self.table[to],
        };
        self.tree.add(from, Moments::default() - old);
        self.tree.add(to, new);
        self.total += new - old;
    }
}

/// Table coordinates of every anchor's successive CDF values, stored flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coordinates {
    offsets: Vec<usize>,
    data: Vec<u32>,
}

impl Coordinates {
    /// Coordinates of anchor `i`, one per atom plus the initial 0.
    pub fn anchor(&self, i: usize) -> &[u32] {
        &self.data[self.offsets[i]..self.offsets[i + 1]]
    }
}

/// For each entry of `table`, the number of entries of `other` strictly below it.
fn lower_bounds(table: &[f64], other: &[f64]) -> Vec<u32> {
    let mut out = Vec::with_capacity(table.len());
    let mut k = 0;
    for &v in table {
        while k < other.len() && other[k] < v {
            k += 1;
        }
        out.push(k as u32);
    }
    out
}

struct SideState<'a> {
    weights: &'a [f64],
    /// Current table coordinate of each anchor's CDF.
    current: Vec<u32>,
    cross: Vec<u32>,
    acc: PrefixAccumulator,
}

impl SideState<'_> {
    fn current_cdf(&self, i: usize) -> f64 {
        self.acc.table[self.current[i] as usize]
    }
}

/// Tuning and instrumentation knobs for [`cross_sum_sweep_with`].
#[derive(Debug, Clone)]
pub struct SweepOptions {
    /// Shuffle the processing order within every group of equal-valued
    /// events using this seed.
    pub tie_shuffle: Option<u64>,
    /// Recompute `f` from scratch after this many events.
    pub resync_interval: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            tie_shuffle: None,
            resync_interval: RESYNC_INTERVAL,
        }
    }
}

/// Result of one sweep, with diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOutcome {
    pub value: f64,
    /// Smallest running total variation seen at an accumulation step.
    pub min_variation: f64,
    pub events: usize,
}

/// Exact `Σ_ij w1_i w2_j OT_1(ρ1_i, ρ2_j)` in `O(L log L)`, `L` = total atoms.
pub fn cross_sum_sweep(f1: &AnchorFamily, f2: &AnchorFamily) -> f64 {
    cross_sum_sweep_with(f1, f2, &SweepOptions::default()).value
}

pub fn cross_sum_sweep_with(
    f1: &AnchorFamily,
    f2: &AnchorFamily,
    opts: &SweepOptions,
) -> SweepOutcome {
    sweep_prepared(&PreparedFamily::new(f1), &PreparedFamily::new(f2), opts)
}

/// [`cross_sum_sweep_with`] on prepared families, so that a family taking
/// part in several cross-sums is sorted once.
pub fn sweep_prepared(
    p1: &PreparedFamily,
    p2: &PreparedFamily,
    opts: &SweepOptions,
) -> SweepOutcome {
    let sides = [side_state(p1, p2), side_state(p2, p1)];
    let interval = opts.resync_interval.max(1);
    match opts.tie_shuffle {
        None => run_sweep(sides, merge(p1, p2), interval),
        Some(seed) => {
            let mut events: Vec<SweepEvent> = merge(p1, p2).collect();
            shuffle_ties(&mut events, seed);
            run_sweep(sides, events.into_iter(), interval)
        }
    }
}

fn side_state<'a>(own: &PreparedFamily<'a>, opp: &PreparedFamily) -> SideState<'a> {
    SideState {
        weights: own.weights,
        current: own.start.clone(),
        cross: lower_bounds(&own.acc.table, &opp.acc.table),
        acc: own.acc.clone(),
    }
}

fn run_sweep(
    mut sides: [SideState; 2],
    events: impl Iterator<Item = SweepEvent>,
    interval: usize,
) -> SweepOutcome {
    // every CDF starts at 0, so f = 0
    let mut f = 0.0;
    let mut total = 0.0;
    let mut min_f = f64::INFINITY;
    let mut count = 0;
    let mut events = events.peekable();

    while let Some(ev) = events.next() {
        let i = ev.anchor as usize;
        let (own, opp) = match ev.side {
            Side::First => {
                let (a, b) = sides.split_at_mut(1);
                (&mut a[0], &b[0])
            }
            Side::Second => {
                let (a, b) = sides.split_at_mut(1);
                (&mut b[0], &a[0])
            }
        };
        let from = own.current[i] as usize;
        let to = ev.coord as usize;
        own.current[i] = ev.coord;
        if from != to {
            let w = own.weights[i];
            let c = own.acc.table[from];
            let c_new = own.acc.table[to];
            f -= w * opp.acc.distance_sum(c, own.cross[from] as usize);
            own.acc.relocate(from, to, w);
            f += w * opp.acc.distance_sum(c_new, own.cross[to] as usize);
        }

        count += 1;
        if count % interval == 0 {
            f = variation_from_scratch(&sides[0], &sides[1]);
        }

        if let Some(next) = events.peek() {
            let gap = next.value - ev.value;
            if gap != 0.0 {
                min_f = min_f.min(f);
                total += gap * f;
            }
        }
    }

    SweepOutcome {
        value: total,
        min_variation: if min_f.is_finite() { min_f } else { 0.0 },
        events: count,
    }
}

/// `Σ_ij w1_i w2_j |H1_i - H2_j|` for the current CDF values, O((n+m) log(n+m)).
fn variation_from_scratch(s1: &SideState, s2: &SideState) -> f64 {
    let mut opp: Vec<(f64, f64)> = (0..s2.weights.len())
        .map(|j| (s2.current_cdf(j), s2.weights[j]))
        .collect();
    opp.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
    let mut prefix_w = Vec::with_capacity(opp.len() + 1);
    let mut prefix_t = Vec::with_capacity(opp.len() + 1);
    let (mut sw, mut st) = (0.0, 0.0);
    prefix_w.push(sw);
    prefix_t.push(st);
    for &(h, w) in &opp {
        sw += w;
        st += w * h;
        prefix_w.push(sw);
        prefix_t.push(st);
    }
    (0..s1.weights.len())
        .map(|i| {
            let x = s1.current_cdf(i);
            let k = opp.partition_point(|p| p.0 < x);
            let g = x * (2.0 * prefix_w[k] - sw) + st - 2.0 * prefix_t[k];
            s1.weights[i] * g
        })
        .sum()
}

/// Shuffles every group of equal-valued events, then hands each anchor's
/// coordinates within a group back out in increasing order.
fn shuffle_ties(events: &mut [SweepEvent], seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut start = 0;
    while start < events.len() {
        let mut end = start + 1;
        while end < events.len() && events[end].value == events[start].value {
            end += 1;
        }
        let group = &mut events[start..end];
        group.shuffle(&mut rng);
        let keys: Vec<(Side, u32)> = group.iter().map(|e| (e.side, e.anchor)).collect();
        let mut order: Vec<usize> = (0..group.len()).collect();
        order.sort_by_key(|&k| keys[k]);
        for run in order.chunk_by(|&x, &y| keys[x] == keys[y]) {
            let mut coords: Vec<u32> = run.iter().map(|&k| group[k].coord).collect();
            coords.sort_unstable();
            for (&k, c) in run.iter().zip(coords) {
                group[k].coord = c;
            }
        }
        start = end;
    }
}

/// Reference cross-sum: `nm` independent 1D transports, `O(nm(n+m))`.
pub fn cross_sum_naive(f1: &AnchorFamily, f2: &AnchorFamily, p: Exponent) -> f64 {
    let mut total = 0.0;
    for (w1, a) in f1.weights().iter().zip(f1.anchors()) {
        let mut row = 0.0;
        for (w2, b) in f2.weights().iter().zip(f2.anchors()) {
            row += w2 * ot1d(a, b, p);
        }
        total += w1 * row;
    }
    total
}

/// How the cross-sums of an anchor energy are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Pairwise 1D transports; any supported exponent.
    Naive,
    /// Sweep line; `p = 1` only.
    Sweep,
}

impl Method {
    /// Sweep for `p = 1`, naive otherwise.
    pub fn fastest_for(p: Exponent) -> Method {
        if p == Exponent::ONE {
            Method::Sweep
        } else {
            Method::Naive
        }
    }
}

/// Cross-sum between two families with the chosen evaluator.
pub fn cross_sum(f1: &AnchorFamily, f2: &AnchorFamily, p: Exponent, method: Method) -> Result<f64> {
    match method {
        Method::Naive => Ok(cross_sum_naive(f1, f2, p)),
        Method::Sweep if p == Exponent::ONE => Ok(cross_sum_sweep(f1, f2)),
        Method::Sweep => Err(Error::MethodExponentMismatch(p.get())),
    }
}

/// Energy distance between two families with `OT_p^p` as the ground distance:
/// `2 E[d(X, Y)] - E[d(X, X')] - E[d(Y, Y')]`. Within-family terms include
/// diagonal pairs. May be slightly negative through roundoff.
pub fn family_energy(
    f1: &AnchorFamily,
    f2: &AnchorFamily,
    p: Exponent,
    method: Method,
) -> Result<f64> {
    debug_assert!(f1.mass_ok() && f2.mass_ok());
    if method == Method::Sweep && p == Exponent::ONE {
        let (p1, p2) = (PreparedFamily::new(f1), PreparedFamily::new(f2));
        let opts = SweepOptions::default();
        let cross = sweep_prepared(&p1, &p2, &opts).value;
        let within1 = sweep_prepared(&p1, &p1, &opts).value;
        let within2 = sweep_prepared(&p2, &p2, &opts).value;
        return Ok(2.0 * cross - within1 - within2);
    }
    let cross = cross_sum(f1, f2, p, method)?;
    let within1 = cross_sum(f1, f1, p, method)?;
    let within2 = cross_sum(f2, f2, p, method)?;
    Ok(2.0 * cross - within1 - within2)
}

/// Anchor energy `AE_p(S1, S2)`.
pub fn anchor_energy(s1: &MMSet, s2: &MMSet, p: Exponent, method: Method) -> Result<f64> {
    if method == Method::Sweep && p != Exponent::ONE {
        return Err(Error::MethodExponentMismatch(p.get()));
    }
    family_energy(&anchor_family(s1), &anchor_family(s2), p, method)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anchor::AnchorDistribution;
    use ndarray::array;

    fn two_point(scale: f64) -> MMSet {
        MMSet::uniform(array![[0.0, scale], [scale, 0.0]]).unwrap()
    }

    fn single(value: f64) -> AnchorFamily {
        AnchorFamily::uniform(vec![AnchorDistribution::uniform(&[value]).unwrap()]).unwrap()
    }

    #[test]
    fn trivial_families() {
        let f = single(0.0);
        assert_eq!(cross_sum_naive(&f, &f, Exponent::ONE), 0.0);
        assert_eq!(cross_sum_sweep(&f, &f), 0.0);
    }

    #[test]
    fn singleton_segment() {
        assert_eq!(cross_sum_sweep(&single(0.0), &single(7.25)), 7.25);
        assert_eq!(cross_sum_sweep(&single(7.25), &single(0.0)), 7.25);
    }

    #[test]
    fn two_point_cross_sum() {
        let f1 = anchor_family(&two_point(1.0));
        let f2 = anchor_family(&two_point(2.0));
        assert_eq!(cross_sum_naive(&f1, &f2, Exponent::ONE), 0.5);
        assert!((cross_sum_sweep(&f1, &f2) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn shared_distribution_is_zero() {
        let d = AnchorDistribution::new(&[0.0, 1.0, 3.0], &[0.2, 0.3, 0.5]).unwrap();
        let f = AnchorFamily::new(vec![0.1, 0.4, 0.5], vec![d.clone(), d.clone(), d]).unwrap();
        assert_eq!(cross_sum_naive(&f, &f, Exponent::ONE), 0.0);
        assert!(cross_sum_sweep(&f, &f).abs() < 1e-15);
    }

    #[test]
    fn anchor_energy_two_point() {
        let s1 = two_point(1.0);
        let s2 = two_point(2.0);
        let naive = anchor_energy(&s1, &s2, Exponent::ONE, Method::Naive).unwrap();
        let sweep = anchor_energy(&s1, &s2, Exponent::ONE, Method::Sweep).unwrap();
        assert_eq!(naive, 1.0);
        assert!((sweep - 1.0).abs() < 1e-12);
    }

    #[test]
    fn anchor_energy_self_is_zero() {
        let s = MMSet::new(
            Some(array![0.2, 0.3, 0.5]),
            array![[0.0, 1.0, 2.5], [1.0, 0.0, 0.5], [2.5, 0.5, 0.0]],
        )
        .unwrap();
        assert_eq!(
            anchor_energy(&s, &s, Exponent::ONE, Method::Sweep).unwrap(),
            0.0
        );
        assert_eq!(
            anchor_energy(&s, &s, Exponent::TWO, Method::Naive).unwrap(),
            0.0
        );
    }

    #[test]
    fn ranked_inputs_are_scale_free() {
        let c = array![[0.0, 1.0, 4.0], [1.0, 0.0, 2.0], [4.0, 2.0, 0.0]];
        let s1 = MMSet::uniform(c.clone()).unwrap().ranked();
        let s2 = MMSet::uniform(c * 5.0).unwrap().ranked();
        assert_eq!(
            anchor_energy(&s1, &s2, Exponent::ONE, Method::Sweep).unwrap(),
            0.0
        );
    }

    #[test]
    fn sweep_rejects_p2() {
        let s = two_point(1.0);
        assert_eq!(
            anchor_energy(&s, &s, Exponent::TWO, Method::Sweep).unwrap_err(),
            Error::MethodExponentMismatch(2)
        );
    }

    #[test]
    fn events_cover_all_atoms() {
        let f1 = anchor_family(&two_point(1.0));
        let f2 = anchor_family(&MMSet::uniform(ndarray::Array2::zeros((3, 3))).unwrap());
        let ev = build_events(&f1, &f2);
        assert_eq!(ev.len(), 4 + 9);
        assert!(ev.windows(2).all(|w| w[0].value <= w[1].value));
        for side in [Side::First, Side::Second] {
            let n = if side == Side::First { 2 } else { 3 };
            for i in 0..n {
                let count = ev
                    .iter()
                    .filter(|e| e.side == side && e.anchor == i as u32)
                    .count();
                assert_eq!(count, n);
            }
        }
    }

    #[test]
    fn accumulator_queries() {
        let f = AnchorFamily::new(
            vec![0.25, 0.75],
            vec![
                AnchorDistribution::uniform(&[0.0, 1.0]).unwrap(),
                AnchorDistribution::new(&[0.0, 1.0], &[0.25, 0.75]).unwrap(),
            ],
        )
        .unwrap();
        let (mut acc, coords) = PrefixAccumulator::new(&f);
        assert_eq!(acc.table(), &[0.0, 0.25, 0.5, 1.0]);
        assert_eq!(coords.anchor(0), &[0, 2, 3]);
        assert_eq!(coords.anchor(1), &[0, 1, 3]);
        assert_eq!(acc.total_weight(), 1.0);
        // both anchors at 0: Σ w |0.5 - 0| = 0.5
        assert_eq!(acc.distance_sum(0.5, 2), 0.5);
        acc.relocate(0, 2, 0.25);
        assert_eq!(acc.below(2).weight, 0.75);
        assert_eq!(acc.below(3).weight, 1.0);
        assert_eq!(acc.below(3).weighted_cdf, 0.125);
        // |0.5-0.5|*0.25 + |0.5-0|*0.75
        assert_eq!(acc.distance_sum(0.5, 2), 0.375);
        assert_eq!(acc.total_weight(), 1.0);
    }

    #[test]
    fn resync_does_not_change_result() {
        let f1 = anchor_family(&two_point(1.0));
        let f2 = anchor_family(&two_point(3.0));
        let base = cross_sum_sweep(&f1, &f2);
        let opts = SweepOptions {
            resync_interval: 1,
            ..Default::default()
        };
        let synced = cross_sum_sweep_with(&f1, &f2, &opts).value;
        assert!((base - synced).abs() < 1e-15);
    }
}
