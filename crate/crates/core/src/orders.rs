//! Reflection orders on root slices: construction, verification of the
//! defining betweenness axiom, upper s-conjugates, inversion-prefix
//! extraction, and the near-cone interval builder.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use crate::affine;
use crate::error::{Error, Result};
use crate::planes::PlaneIndex;
use crate::projective::{normalize, qform};
use crate::roots::{cmp_coeff_vecs, cmp_coeff_vecs_total, depth_of_vector, reflect, RootId, RootSlice, Word};
use crate::scalar::Scalar;
use crate::subgroups::{dihedral_closure, DihedralSubgroup};

/// How a slice gets totally ordered.
#[derive(Debug, Clone)]
pub enum OrderSpec<S> {
    /// Compare normalized roots coordinate-wise in an ordered basis.
    Lexicographic { basis: Vec<Vec<S>> },
    /// The two-sided order of an affine slice built from a pair of
    /// infinite reduced words; `swap_sides` exchanges the roles of the
    /// chosen positive system and its negative.
    AffineTwoSided { swap_sides: bool },
    /// The block order on a type-A slice listing interval roots by upper
    /// endpoint.
    AInfinityBlock { n_max: usize },
    /// An explicit permutation of the slice ids.
    Explicit { sequence: Vec<RootId> },
}

impl<S: Scalar> OrderSpec<S> {
    /// Lexicographic spec whose basis is the simple roots in the given
    /// order (a permutation of 0..n).
    pub fn lex_permutation(n: usize, perm: &[usize]) -> Self {
        let basis = perm
            .iter()
            .map(|&i| {
                let mut v = vec![S::zero(); n];
                v[i] = S::one();
                v
            })
            .collect();
        OrderSpec::Lexicographic { basis }
    }

    pub fn lex_standard(n: usize) -> Self {
        let perm: Vec<usize> = (0..n).collect();
        Self::lex_permutation(n, &perm)
    }

    pub fn label(&self) -> String {
        match self {
            OrderSpec::Lexicographic { basis } => format!("lex[{} vectors]", basis.len()),
            OrderSpec::AffineTwoSided { swap_sides } => {
                format!("two-sided{}", if *swap_sides { "-swapped" } else { "" })
            }
            OrderSpec::AInfinityBlock { n_max } => format!("block-a{n_max}"),
            OrderSpec::Explicit { .. } => "explicit".into(),
        }
    }
}

/// A slice totally ordered by some spec; the unit all order-type
/// diagnostics work on.
#[derive(Debug, Clone)]
pub struct TruncatedOrder<S: Scalar> {
    slice: Arc<RootSlice<S>>,
    sorted: Vec<RootId>,
    positions: Vec<u32>,
    label: String,
}

impl<S: Scalar> TruncatedOrder<S> {
    pub(crate) fn from_sorted(slice: Arc<RootSlice<S>>, sorted: Vec<RootId>, label: String) -> Self {
        let mut positions = vec![0u32; slice.len()];
        for (pos, id) in sorted.iter().enumerate() {
            positions[id.idx()] = pos as u32;
        }
        TruncatedOrder { slice, sorted, positions, label }
    }

    pub fn slice(&self) -> &Arc<RootSlice<S>> {
        &self.slice
    }

    pub fn sorted(&self) -> &[RootId] {
        &self.sorted
    }

    pub fn position(&self, id: RootId) -> usize {
        self.positions[id.idx()] as usize
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The reversed order (still a reflection order when this one is).
    pub fn backward(&self) -> TruncatedOrder<S> {
        let sorted: Vec<RootId> = self.sorted.iter().rev().copied().collect();
        Self::from_sorted(self.slice.clone(), sorted, format!("{}-backward", self.label))
    }
}

/// Gauss-Jordan inverse of the matrix whose columns are the given basis
/// vectors. None when the basis is linearly dependent.
fn invert_basis<S: Scalar>(basis: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = basis.len();
    if basis.iter().any(|v| v.len() != n) {
        return None;
    }
    let mut m: Vec<Vec<S>> =
        (0..n).map(|r| (0..n).map(|c| basis[c][r].clone()).collect()).collect();
    let mut inv: Vec<Vec<S>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { S::one() } else { S::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let lead = m[col][col].clone();
        for j in 0..n {
            m[col][j] = m[col][j].div(&lead);
            inv[col][j] = inv[col][j].div(&lead);
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in 0..n {
                m[r][j] = m[r][j].sub(&factor.mul(&m[col][j]));
                inv[r][j] = inv[r][j].sub(&factor.mul(&inv[col][j]));
            }
        }
    }
    Some(inv)
}

/// Normalized roots expressed in the spec basis, one coordinate vector
/// per root id.
fn lex_coordinates<S: Scalar>(slice: &RootSlice<S>, basis: &[Vec<S>]) -> Result<Vec<Vec<S>>> {
    let n = slice.rank();
    if basis.len() != n {
        return Err(Error::InvalidSpec {
            detail: format!("lexicographic basis needs {n} vectors, got {}", basis.len()),
        });
    }
    let inv = invert_basis(basis).ok_or(Error::InvalidSpec {
        detail: "lexicographic basis is linearly dependent".into(),
    })?;
    let mut out = Vec::with_capacity(slice.len());
    for id in slice.ids() {
        let hat = normalize(id, slice).coords;
        let coords: Vec<S> = (0..n)
            .map(|i| {
                let mut acc = S::zero();
                for (j, h) in hat.iter().enumerate() {
                    if !h.is_zero() {
                        acc = acc.add(&inv[i][j].mul(h));
                    }
                }
                acc
            })
            .collect();
        out.push(coords);
    }
    Ok(out)
}

/// Compares two roots under a lexicographic basis: both normalized
/// roots are expressed in the basis and their coordinate sequences
/// compared position by position. Equal coordinates signal numeric
/// breakdown, since distinct positive roots are never proportional.
pub fn compare_reflex<S: Scalar>(
    a: RootId,
    b: RootId,
    basis: &[Vec<S>],
    slice: &RootSlice<S>,
) -> Result<Ordering> {
    let n = slice.rank();
    let inv = invert_basis(basis).ok_or(Error::InvalidSpec {
        detail: "lexicographic basis is linearly dependent".into(),
    })?;
    let coords = |id: RootId| -> Vec<S> {
        let hat = normalize(id, slice).coords;
        (0..n)
            .map(|i| {
                let mut acc = S::zero();
                for (j, h) in hat.iter().enumerate() {
                    if !h.is_zero() {
                        acc = acc.add(&inv[i][j].mul(h));
                    }
                }
                acc
            })
            .collect()
    };
    match cmp_coeff_vecs_total(&coords(a), &coords(b)) {
        Ordering::Equal => Err(Error::EqualNormalizedCoordinates { a, b }),
        ord => Ok(ord),
    }
}

/// Totally orders the slice by the spec comparator. Deterministic; equal
/// normalized coordinates (impossible for genuine roots) are reported as
/// [`Error::EqualNormalizedCoordinates`].
pub fn sort_truncation<S: Scalar>(
    slice: &Arc<RootSlice<S>>,
    spec: &OrderSpec<S>,
) -> Result<TruncatedOrder<S>> {
    match spec {
        OrderSpec::Lexicographic { basis } => {
            let coords = lex_coordinates(slice.as_ref(), basis)?;
            let mut ids: Vec<RootId> = slice.ids().collect();
            ids.sort_by(|a, b| cmp_coeff_vecs_total(&coords[a.idx()], &coords[b.idx()]));
            for w in ids.windows(2) {
                if cmp_coeff_vecs_total(&coords[w[0].idx()], &coords[w[1].idx()])
                    == Ordering::Equal
                {
                    return Err(Error::EqualNormalizedCoordinates { a: w[0], b: w[1] });
                }
            }
            Ok(TruncatedOrder::from_sorted(slice.clone(), ids, spec.label()))
        }
        OrderSpec::Explicit { sequence } => {
            if sequence.len() != slice.len() {
                return Err(Error::InvalidSpec {
                    detail: format!(
                        "explicit sequence has {} entries for {} roots",
                        sequence.len(),
                        slice.len()
                    ),
                });
            }
            let mut seen = vec![false; slice.len()];
            for id in sequence {
                if id.idx() >= slice.len() || seen[id.idx()] {
                    return Err(Error::InvalidSpec {
                        detail: "explicit sequence is not a permutation of the slice".into(),
                    });
                }
                seen[id.idx()] = true;
            }
            Ok(TruncatedOrder::from_sorted(slice.clone(), sequence.clone(), spec.label()))
        }
        OrderSpec::AffineTwoSided { swap_sides } => {
            let (pos_word, neg_word) = affine::standard_words(slice)?;
            let (first, second) =
                if *swap_sides { (neg_word, pos_word) } else { (pos_word, neg_word) };
            affine::two_sided_order(slice, &first, &second)
        }
        OrderSpec::AInfinityBlock { n_max } => {
            let sequence = block_sequence(slice.as_ref(), *n_max)?;
            Ok(TruncatedOrder::from_sorted(slice.clone(), sequence, spec.label()))
        }
    }
}

fn block_sequence<S: Scalar>(slice: &RootSlice<S>, n_max: usize) -> Result<Vec<RootId>> {
    let n = slice.rank();
    if n != n_max {
        return Err(Error::InvalidSpec {
            detail: format!("block order for n_max={n_max} needs a rank-{n_max} type-A slice"),
        });
    }
    let mut sequence = Vec::new();
    for j in 0..n {
        for i in 0..=j {
            let v: Vec<S> =
                (0..n).map(|t| if t >= i && t <= j { S::one() } else { S::zero() }).collect();
            let id = slice.lookup(&v).ok_or(Error::InvalidSpec {
                detail: format!(
                    "interval root [{},{}] missing; slice is not saturated type A",
                    i + 1,
                    j + 1
                ),
            })?;
            sequence.push(id);
        }
    }
    if sequence.len() != slice.len() {
        return Err(Error::InvalidSpec {
            detail: "slice has roots outside the type-A interval family".into(),
        });
    }
    Ok(sequence)
}

/// The block order on the type-A system of the given rank: block j lists
/// the interval roots ending at j by ascending start.
pub fn a_infinity_order<S: Scalar>(n_max: usize, cap: usize) -> Result<TruncatedOrder<S>> {
    let matrix = crate::matrix::CoxeterMatrix::type_a(n_max);
    let slice = Arc::new(RootSlice::<S>::generate_saturated(&matrix, n_max as u32 + 1, cap)?);
    sort_truncation(&slice, &OrderSpec::AInfinityBlock { n_max })
}

/// One failed betweenness instance: `middle` is a positive combination of
/// `lower` and `upper` but is not ordered between them.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BetweennessViolation {
    pub lower: RootId,
    pub middle: RootId,
    pub upper: RootId,
}

/// A maximal dihedral family whose restriction is not one of the two
/// alternating chain orders.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DihedralViolation {
    pub extremes: (RootId, RootId),
    pub detail: String,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct VerificationReport {
    pub betweenness_violations: Vec<BetweennessViolation>,
    pub dihedral_violations: Vec<DihedralViolation>,
    pub families_checked: usize,
    pub dihedral_families_checked: usize,
    pub triples_checked: u64,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.betweenness_violations.is_empty() && self.dihedral_violations.is_empty()
    }
}

const MAX_REPORTED_VIOLATIONS: usize = 1000;

/// Checks the reflection-order axiom on every root pair of the slice:
/// any root in the cone of two roots must be ordered between them. Roots
/// outside the plane of a pair are never cone members, so the check runs
/// per plane family via chain positions. Additionally the restriction to
/// every determinable maximal dihedral family must be monotone along the
/// chain (one of the two alternating orders, truncated).
pub fn verify_reflection_order<S: Scalar>(
    t: &TruncatedOrder<S>,
    planes: &PlaneIndex<S>,
) -> VerificationReport {
    let mut report = VerificationReport {
        betweenness_violations: Vec::new(),
        dihedral_violations: Vec::new(),
        families_checked: 0,
        dihedral_families_checked: 0,
        triples_checked: 0,
    };

    for family in planes.families() {
        report.families_checked += 1;
        let pos: Vec<usize> = family.members.iter().map(|&id| t.position(id)).collect();
        let m = pos.len();

        // Betweenness on angular triples: members strictly inside the
        // angular range of a pair are exactly its cone members.
        for i in 0..m {
            for j in (i + 2)..m {
                let (lo, hi) = if pos[i] < pos[j] { (pos[i], pos[j]) } else { (pos[j], pos[i]) };
                for (k, &pk) in pos.iter().enumerate().take(j).skip(i + 1) {
                    report.triples_checked += 1;
                    if !(lo < pk && pk < hi)
                        && report.betweenness_violations.len() < MAX_REPORTED_VIOLATIONS
                    {
                        report.betweenness_violations.push(BetweennessViolation {
                            lower: family.members[i],
                            middle: family.members[k],
                            upper: family.members[j],
                        });
                    }
                }
            }
        }

        // Dihedral restriction on determinable families.
        let (e1, e2) = family.extremes();
        if family.chain_certified && m >= 2 {
            report.dihedral_families_checked += 1;
            let ascending = pos.windows(2).all(|w| w[0] < w[1]);
            let descending = pos.windows(2).all(|w| w[0] > w[1]);
            if !ascending && !descending && report.dihedral_violations.len() < MAX_REPORTED_VIOLATIONS
            {
                report.dihedral_violations.push(DihedralViolation {
                    extremes: (e1, e2),
                    detail: format!("restriction to the {m}-member chain is not monotone"),
                });
            }
        }
    }
    report
}

/// The upper s-conjugate: roots below a_s keep their order, roots above
/// are re-keyed through s, and a_s becomes maximal. Since s can push a
/// depth-d root to depth d+1, the result is declared on the depth-(d-1)
/// subslice, where it is exact.
pub fn upper_s_conjugate<S: Scalar>(t: &TruncatedOrder<S>, s: usize) -> Result<TruncatedOrder<S>> {
    let parent = t.slice().as_ref();
    let depth = parent.depth_bound();
    if depth == 0 {
        return Err(Error::InvalidSpec {
            detail: "upper s-conjugate needs depth >= 1 to truncate honestly".into(),
        });
    }
    let sub = Arc::new(RootSlice::<S>::generate(parent.matrix(), depth - 1, parent.cap())?);
    let alpha_s = parent.simple_root(s);
    let pos_s = t.position(alpha_s);

    let mut keyed: Vec<(u8, usize, RootId)> = Vec::with_capacity(sub.len());
    for id in sub.ids() {
        debug_assert_eq!(sub.coeffs(id), parent.coeffs(id));
        if id == alpha_s {
            continue;
        }
        let pos = t.position(id);
        if pos < pos_s {
            keyed.push((0, pos, id));
        } else {
            let image = reflect(parent.coeffs(id), s, parent.gram());
            let image_id = parent
                .lookup(&image)
                .expect("s-image of a depth-(d-1) root stays within depth d");
            keyed.push((1, t.position(image_id), id));
        }
    }
    keyed.sort();
    let mut sorted: Vec<RootId> = keyed.into_iter().map(|(_, _, id)| id).collect();
    sorted.push(alpha_s);
    Ok(TruncatedOrder::from_sorted(sub, sorted, format!("{}-upper-s{}", t.label(), s + 1)))
}

/// Greedily peels the order minimum to reconstruct a reduced word whose
/// prefix inversion roots are exactly the first `n` elements of the
/// order. Fails with [`Error::NotAnInversionPrefix`] at the first element
/// that is not simple in the transformed order.
pub fn initial_segment_word<S: Scalar>(t: &TruncatedOrder<S>, n: usize) -> Result<Word> {
    assert!(n <= t.len(), "initial segment longer than the truncation");
    let slice = t.slice().as_ref();
    let gram = slice.gram();
    let mut letters: Vec<usize> = Vec::with_capacity(n);
    for j in 0..n {
        let e = t.sorted()[j];
        let mut v = slice.coeffs(e).to_vec();
        for &l in &letters {
            v = reflect(&v, l, gram);
        }
        let mut simple = None;
        let mut tmp = vec![S::zero(); slice.rank()];
        for i in 0..slice.rank() {
            tmp[i] = S::one();
            if cmp_coeff_vecs(&v, &tmp) == Ordering::Equal {
                simple = Some(i);
            }
            tmp[i] = S::zero();
        }
        match simple {
            Some(i) => letters.push(i),
            None => return Err(Error::NotAnInversionPrefix { index: j + 1 }),
        }
    }
    Ok(Word { letters, reduced: true })
}

/// The near-cone interval construction: `chosen` are k+1 roots close to
/// the isotropic cone, pairwise at form value <= -1 and ascending in the
/// order; `intervals[i]` lists the slice roots of the dihedral subgroup
/// of the i-th consecutive pair that lie strictly between them.
#[derive(Debug)]
pub struct NearConeIntervals<S> {
    pub chosen: Vec<RootId>,
    pub intervals: Vec<Vec<RootId>>,
    pub subgroups: Vec<DihedralSubgroup<S>>,
}

/// Interior members required of every consecutive pair during selection;
/// fewer leaves no junction for the two-growing-ends signature.
const MIN_INTERVAL_INTERIOR: usize = 2;

/// Depth margin within which a selected interval's chain must extend
/// beyond the slice; matches the d -> d+3 probe ladders used by the
/// stability diagnostics.
const JUNCTION_PROBE_MARGIN: u32 = 3;

/// Does the dihedral chain of the canonical pair grow back into view on
/// the standard probe ladder? True when the first chain member beyond
/// the slice (on either end) has depth at most depth + margin.
fn junction_active<S: Scalar>(
    slice: &RootSlice<S>,
    sub: &DihedralSubgroup<S>,
) -> bool {
    let g1 = slice.coeffs(sub.canonical_pair.0);
    let g2 = slice.coeffs(sub.canonical_pair.1);
    let two_abs = S::from_int(2).mul(&sub.bform).neg(); // 2|B|, B <= -1
    let extended = slice
        .max_coeff_sum()
        .mul(&two_abs.add(&S::from_int(2)));
    let cutoff = slice.depth_bound() + JUNCTION_PROBE_MARGIN;
    for from_first in [true, false] {
        let vectors =
            crate::subgroups::ladder_vectors(g1, g2, &sub.bform, from_first, &extended);
        if let Some(v) = vectors.iter().find(|v| slice.lookup(v).is_none()) {
            if depth_of_vector(v, slice.gram()).is_some_and(|d| d <= cutoff) {
                return true;
            }
        }
    }
    false
}

/// Selects k+1 near-cone roots (qform of the normalized root below
/// `closeness`) that pairwise span infinite dihedral subgroups with
/// canonical form value <= -1 and whose consecutive closures keep at
/// least two interior members inside the slice, then collects the
/// interval members of each consecutive pair. The endpoints are
/// excluded, which makes consecutive intervals disjoint and elementwise
/// ordered.
pub fn build_near_cone_intervals<S: Scalar>(
    t: &TruncatedOrder<S>,
    k: usize,
    closeness: &S,
) -> Result<NearConeIntervals<S>> {
    assert!(k >= 1, "need at least one interval");
    let slice = t.slice().as_ref();
    let gram = slice.gram();
    let needed = k + 1;

    let mut chosen: Vec<RootId> = Vec::with_capacity(needed);
    let mut subgroups: Vec<DihedralSubgroup<S>> = Vec::with_capacity(k);
    let minus_one = S::from_int(-1);
    for &id in t.sorted() {
        let hat = normalize(id, slice);
        let q = qform(&hat.coords, gram);
        if q.compare(closeness) != Ordering::Less {
            continue;
        }
        let compatible = chosen
            .iter()
            .all(|&prev| slice.bilinear(prev, id).compare(&minus_one) != Ordering::Greater);
        if !compatible {
            continue;
        }
        if let Some(&prev) = chosen.last() {
            let Ok(sub) = dihedral_closure(prev, id, slice) else { continue };
            let interior =
                sub.members.iter().filter(|&&m| m != prev && m != id).count();
            if interior < MIN_INTERVAL_INTERIOR || !junction_active(slice, &sub) {
                continue;
            }
            subgroups.push(sub);
        }
        chosen.push(id);
        if chosen.len() == needed {
            break;
        }
    }
    if chosen.len() < needed {
        return Err(Error::InsufficientCandidates { found: chosen.len(), needed });
    }

    let mut intervals = Vec::with_capacity(k);
    for (pair, sub) in chosen.windows(2).zip(subgroups.iter()) {
        let (a, b) = (pair[0], pair[1]);
        let lo = t.position(a);
        let hi = t.position(b);
        let mut members: Vec<RootId> =
            sub.members.iter().copied().filter(|&m| m != a && m != b).collect();
        for &m in &members {
            let p = t.position(m);
            if !(lo < p && p < hi) {
                return Err(Error::InvalidSpec {
                    detail: format!(
                        "root {m} of the dihedral subgroup of ({a}, {b}) is not ordered                          between them; the order is not a reflection order"
                    ),
                });
            }
        }
        members.sort_by_key(|&m| t.position(m));
        intervals.push(members);
    }

    // Disjointness follows from the open intervals being disjoint; check
    // anyway so a broken order cannot smuggle overlaps through.
    let mut seen: HashSet<RootId> = HashSet::new();
    for interval in &intervals {
        for &m in interval {
            if !seen.insert(m) {
                return Err(Error::InvalidSpec {
                    detail: "near-cone intervals overlap; the order is not a reflection order"
                        .into(),
                });
            }
        }
    }
    Ok(NearConeIntervals { chosen, intervals, subgroups })
}
