//! Finite-truncation order-type diagnostics: adjacency stability under
//! depth refinement, block decomposition by barycentric coordinate,
//! coordinate-range and density certification, and the dihedral
//! interval-growth diagnostic separating the affine and non-affine
//! regimes.
//!
//! None of these claim anything transfinite: "infinite interval" is
//! operationalized as "strictly-between count grows along a depth
//! ladder", and the reports carry the observed trends only.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::orders::TruncatedOrder;
use crate::projective::first_coordinate;
use crate::roots::{RootId, RootSlice};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjacencyStatus {
    Stable,
    /// The probe order holds this many roots strictly between the pair.
    Split(usize),
}

/// Stability of each adjacency of the base order against a deeper probe
/// order built by the same construction.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub base_depth: u32,
    pub probe_depth: u32,
    pub adjacencies: Vec<(RootId, RootId, AdjacencyStatus)>,
    pub split_count: usize,
}

impl StabilityReport {
    pub fn splits(&self) -> impl Iterator<Item = &(RootId, RootId, AdjacencyStatus)> {
        self.adjacencies.iter().filter(|(_, _, s)| *s != AdjacencyStatus::Stable)
    }
}

/// Sorts the order at both depths and counts, for every adjacent pair at
/// the base depth, the probe-slice roots strictly between them. Root ids
/// are stable across depths, so positions compare directly.
pub fn stability<S, F>(build: F, base_depth: u32, probe_depth: u32) -> Result<StabilityReport>
where
    S: Scalar,
    F: Fn(u32) -> Result<TruncatedOrder<S>>,
{
    assert!(probe_depth >= base_depth, "probe depth below base depth");
    let base = build(base_depth)?;
    let probe = build(probe_depth)?;
    let mut adjacencies = Vec::with_capacity(base.len().saturating_sub(1));
    let mut split_count = 0;
    for w in base.sorted().windows(2) {
        let (a, b) = (w[0], w[1]);
        let pa = probe.position(a);
        let pb = probe.position(b);
        debug_assert!(pa < pb, "common roots must keep their relative order");
        let between = pb - pa - 1;
        let status =
            if between == 0 { AdjacencyStatus::Stable } else { AdjacencyStatus::Split(between) };
        if status != AdjacencyStatus::Stable {
            split_count += 1;
        }
        adjacencies.push((a, b, status));
    }
    Ok(StabilityReport {
        base_depth,
        probe_depth,
        adjacencies,
        split_count,
    })
}

/// Stability of the order restricted to a member set: adjacencies of the
/// base members, probed against the deeper member set. This is the
/// two-growing-ends witness: a truncation of an omega + omega* chain
/// splits only at its interior junction.
pub fn restriction_stability<S: Scalar>(
    base: &TruncatedOrder<S>,
    base_members: &[RootId],
    probe: &TruncatedOrder<S>,
    probe_members: &[RootId],
) -> StabilityReport {
    let mut base_sorted = base_members.to_vec();
    base_sorted.sort_by_key(|&id| base.position(id));
    let mut probe_sorted = probe_members.to_vec();
    probe_sorted.sort_by_key(|&id| probe.position(id));
    let probe_index: HashMap<RootId, usize> =
        probe_sorted.iter().enumerate().map(|(i, &id)| (id, i)).collect();

    let mut adjacencies = Vec::new();
    let mut split_count = 0;
    for w in base_sorted.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (Some(&ia), Some(&ib)) = (probe_index.get(&a), probe_index.get(&b)) else {
            continue;
        };
        debug_assert!(ia < ib);
        let between = ib - ia - 1;
        let status =
            if between == 0 { AdjacencyStatus::Stable } else { AdjacencyStatus::Split(between) };
        if status != AdjacencyStatus::Stable {
            split_count += 1;
        }
        adjacencies.push((a, b, status));
    }
    StabilityReport {
        base_depth: base.slice().depth_bound(),
        probe_depth: probe.slice().depth_bound(),
        adjacencies,
        split_count,
    }
}

/// Interval growth of consecutive pairs of a subgroup restriction,
/// measured in the full order: one entry per consecutive pair of
/// `members` (ordered by the base order) with the strictly-between counts
/// at base and probe depth.
#[derive(Debug, Clone)]
pub struct IntervalGrowthReport {
    pub base_depth: u32,
    pub probe_depth: u32,
    /// (lower, upper, base interval size, probe interval size).
    pub pairs: Vec<(RootId, RootId, usize, usize)>,
    pub growing: usize,
}

impl IntervalGrowthReport {
    pub fn total(&self) -> usize {
        self.pairs.len()
    }

    pub fn all_grow(&self) -> bool {
        self.growing == self.pairs.len()
    }
}

/// The finite-scale face of the interval-finiteness dichotomy: restrict
/// the order to a dihedral subgroup's members, take consecutive pairs
/// there, and compare the full-slice interval sizes at two depths. In
/// the affine regime the growing count stays bounded; over a transverse
/// fiber of the universal group every pair grows at every rung.
pub fn dihedral_interval_growth<S: Scalar>(
    base: &TruncatedOrder<S>,
    probe: &TruncatedOrder<S>,
    members_at_base: &[RootId],
) -> IntervalGrowthReport {
    let mut members = members_at_base.to_vec();
    members.sort_by_key(|&id| base.position(id));
    let mut pairs = Vec::new();
    let mut growing = 0;
    for w in members.windows(2) {
        let (a, b) = (w[0], w[1]);
        let base_size = base.position(b) - base.position(a) - 1;
        let probe_size = probe.position(b) - probe.position(a) - 1;
        if probe_size > base_size {
            growing += 1;
        }
        pairs.push((a, b, base_size, probe_size));
    }
    IntervalGrowthReport {
        base_depth: base.slice().depth_bound(),
        probe_depth: probe.slice().depth_bound(),
        pairs,
        growing,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BlockLabel<S> {
    Parabolic,
    Fiber(S),
    Apex,
}

/// The order partitioned into contiguous runs of equal first barycentric
/// coordinate.
#[derive(Debug, Clone)]
pub struct BlockDecomposition<S> {
    pub blocks: Vec<(BlockLabel<S>, Vec<RootId>)>,
}

/// Decomposes a rank-3 order sorted by a standard-basis lexicographic
/// spec: the parabolic block (first coordinate 0) comes first, fibers
/// follow in increasing coordinate order, and the lone apex root closes
/// the order. Any non-contiguous fiber or out-of-order block is a
/// [`Error::BlockViolation`].
pub fn block_decompose_universal<S: Scalar>(
    t: &TruncatedOrder<S>,
) -> Result<BlockDecomposition<S>> {
    let slice = t.slice().as_ref();
    if slice.rank() != 3 {
        return Err(Error::RankUnsupported {
            rank: slice.rank(),
            needed: "block decomposition works on rank-3 slices",
        });
    }
    let mut blocks: Vec<(BlockLabel<S>, Vec<RootId>)> = Vec::new();
    let mut current: Option<(S, Vec<RootId>)> = None;
    for &id in t.sorted() {
        let c = first_coordinate(id, slice, 0);
        match current.take() {
            None => current = Some((c, vec![id])),
            Some((prev, mut ids)) => match prev.compare(&c) {
                Ordering::Equal => {
                    ids.push(id);
                    current = Some((prev, ids));
                }
                Ordering::Less => {
                    blocks.push((label_of(&prev), ids));
                    current = Some((c, vec![id]));
                }
                Ordering::Greater => {
                    return Err(Error::BlockViolation {
                        detail: format!(
                            "coordinate {c} of root {id} drops below the running block value {prev}"
                        ),
                    });
                }
            },
        }
    }
    if let Some((c, ids)) = current {
        blocks.push((label_of(&c), ids));
    }

    // A non-decreasing coordinate makes every fiber one contiguous run;
    // still insist on the boundary shape.
    match blocks.first() {
        Some((BlockLabel::Parabolic, _)) => {}
        _ => {
            return Err(Error::BlockViolation {
                detail: "order does not start with the parabolic block".into(),
            })
        }
    }
    match blocks.last() {
        Some((BlockLabel::Apex, ids)) if ids.len() == 1 => {}
        _ => {
            return Err(Error::BlockViolation {
                detail: "order does not end with the single apex root".into(),
            })
        }
    }
    Ok(BlockDecomposition { blocks })
}

fn label_of<S: Scalar>(c: &S) -> BlockLabel<S> {
    if c.is_zero() {
        BlockLabel::Parabolic
    } else if c.compare(&S::one()) == Ordering::Equal {
        BlockLabel::Apex
    } else {
        BlockLabel::Fiber(c.clone())
    }
}

/// Outcome of scanning first barycentric coordinates against the
/// forbidden open interval (2/3, 1).
#[derive(Debug, Clone)]
pub struct CoordinateRangeReport<S> {
    pub total_roots: usize,
    /// Roots whose coordinate falls inside the forbidden interval.
    pub violations: Vec<RootId>,
    /// Distinct observed coordinates with multiplicities, ascending.
    pub observed: Vec<(S, usize)>,
    pub pass: bool,
}

/// Asserts no root has first barycentric coordinate strictly between 2/3
/// and 1, reporting the full observed multiset.
pub fn certify_coordinate_range<S: Scalar>(slice: &RootSlice<S>) -> CoordinateRangeReport<S> {
    let lo = S::from_ratio(2, 3);
    let hi = S::one();
    let mut groups: HashMap<S::Key, (S, usize)> = HashMap::new();
    let mut violations = Vec::new();
    for id in slice.ids() {
        let c = first_coordinate(id, slice, 0);
        if c.compare(&lo) == Ordering::Greater && c.compare(&hi) == Ordering::Less {
            violations.push(id);
        }
        groups.entry(c.key()).or_insert_with(|| (c.clone(), 0)).1 += 1;
    }
    let mut observed: Vec<(S, usize)> = groups.into_values().collect();
    observed.sort_by(|(a, _), (b, _)| a.compare(b));
    CoordinateRangeReport {
        total_roots: slice.len(),
        pass: violations.is_empty(),
        violations,
        observed,
    }
}

/// Density certification: every pair of coordinate values adjacent at the
/// shallow depth must acquire a strictly intermediate value by the deep
/// depth. Unwitnessed pairs are reported as inconclusive, not failures.
#[derive(Debug, Clone)]
pub struct DensityReport<S> {
    pub depth_lo: u32,
    pub depth_hi: u32,
    pub pairs_total: usize,
    pub witnessed: usize,
    pub unwitnessed: Vec<(S, S)>,
    /// Distinct coordinate count inside (0, 2/3) per depth from lo to hi.
    pub distinct_by_depth: Vec<(u32, usize)>,
}

impl<S> DensityReport<S> {
    pub fn all_witnessed(&self) -> bool {
        self.unwitnessed.is_empty()
    }

    pub fn strictly_increasing_counts(&self) -> bool {
        self.distinct_by_depth.windows(2).all(|w| w[0].1 < w[1].1)
    }
}

fn distinct_open_interval_values<S: Scalar>(
    slice: &RootSlice<S>,
    max_depth: u32,
) -> Vec<S> {
    let lo = S::zero();
    let hi = S::from_ratio(2, 3);
    let mut groups: HashMap<S::Key, S> = HashMap::new();
    for id in slice.ids() {
        if slice.root(id).depth > max_depth {
            continue;
        }
        let c = first_coordinate(id, slice, 0);
        if c.compare(&lo) == Ordering::Greater && c.compare(&hi) == Ordering::Less {
            groups.entry(c.key()).or_insert(c);
        }
    }
    let mut values: Vec<S> = groups.into_values().collect();
    values.sort_by(|a, b| a.compare(b));
    values
}

/// Checks density of the observed coordinate set in (0, 2/3): adjacent
/// values at `depth_lo` must have a strictly intermediate observed value
/// at `depth_hi`. The deep slice must extend to `depth_hi`.
pub fn certify_density<S: Scalar>(
    slice: &RootSlice<S>,
    depth_lo: u32,
    depth_hi: u32,
) -> DensityReport<S> {
    assert!(depth_lo <= depth_hi, "depth_lo must not exceed depth_hi");
    assert!(depth_hi <= slice.depth_bound(), "slice too shallow for depth_hi");
    let shallow = distinct_open_interval_values(slice, depth_lo);
    let deep = distinct_open_interval_values(slice, depth_hi);

    let mut unwitnessed = Vec::new();
    let mut witnessed = 0;
    let mut pairs_total = 0;
    for w in shallow.windows(2) {
        pairs_total += 1;
        let has_between = deep.iter().any(|c| {
            c.compare(&w[0]) == Ordering::Greater && c.compare(&w[1]) == Ordering::Less
        });
        if has_between {
            witnessed += 1;
        } else {
            unwitnessed.push((w[0].clone(), w[1].clone()));
        }
    }

    let distinct_by_depth = (depth_lo..=depth_hi)
        .map(|d| (d, distinct_open_interval_values(slice, d).len()))
        .collect();
    DensityReport { depth_lo, depth_hi, pairs_total, witnessed, unwitnessed, distinct_by_depth }
}
