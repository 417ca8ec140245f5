//! Dihedral reflection subgroups: canonical pairs, finite/infinite
//! classification, member enumeration inside a slice, and coordinate
//! fibers.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::GramMatrix;
use crate::planes::{sort_by_angle, PlaneBasis};
use crate::projective::first_coordinate;
use crate::roots::{RootId, RootSlice};
use crate::scalar::{coeff_sum, Scalar, Sign};

/// Orbit-size guard for finite dihedral saturation.
const MAX_ORBIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Finite dihedral of order 2m; the subgroup has m positive roots.
    Finite(u32),
    Infinite,
}

/// A rank-2 reflection subgroup seen through a slice.
#[derive(Debug, Clone)]
pub struct DihedralSubgroup<S> {
    /// The pair from which every positive root of the subgroup is a
    /// nonnegative combination.
    pub canonical_pair: (RootId, RootId),
    /// Form value B of the canonical pair.
    pub bform: S,
    pub classification: Classification,
    /// Subgroup positive roots stored in the slice, in chain order
    /// starting from `canonical_pair.0`.
    pub members: Vec<RootId>,
}

fn positive_rep<S: Scalar>(mut v: Vec<S>) -> Result<Vec<S>> {
    let mut pos = false;
    let mut neg = false;
    for c in &v {
        match c.sign() {
            Sign::Positive => pos = true,
            Sign::Negative => neg = true,
            Sign::Zero => {}
        }
    }
    if pos && neg {
        return Err(Error::Parse { detail: "mixed-sign root vector in dihedral orbit".into() });
    }
    if neg {
        for c in v.iter_mut() {
            *c = c.neg();
        }
    }
    Ok(v)
}

fn reflect_by_vector<S: Scalar>(v: &[S], mirror: &[S], gram: &GramMatrix<S>) -> Vec<S> {
    let b = gram.bilinear(v, mirror);
    let two_b = S::from_int(2).mul(&b);
    v.iter().zip(mirror.iter()).map(|(vi, mi)| vi.sub(&two_b.mul(mi))).collect()
}

/// All positive roots of the finite group generated by two reflections
/// with |B| < 1, as vectors.
pub(crate) fn saturate_orbit<S: Scalar>(
    va: &[S],
    vb: &[S],
    gram: &GramMatrix<S>,
) -> Result<Vec<Vec<S>>> {
    let mut collected: HashMap<Vec<S::Key>, Vec<S>> = HashMap::new();
    let key = |v: &[S]| v.iter().map(|c| c.key()).collect::<Vec<_>>();
    let mut frontier = vec![va.to_vec(), vb.to_vec()];
    for v in &frontier {
        collected.insert(key(v), v.clone());
    }
    while let Some(v) = frontier.pop() {
        if collected.len() > MAX_ORBIT {
            return Err(Error::Parse { detail: "dihedral orbit failed to saturate".into() });
        }
        for mirror in [va, vb] {
            let image = positive_rep(reflect_by_vector(&v, mirror, gram))?;
            let k = key(&image);
            if let std::collections::hash_map::Entry::Vacant(slot) = collected.entry(k) {
                slot.insert(image.clone());
                frontier.push(image);
            }
        }
    }
    Ok(collected.into_values().collect())
}

/// Chain ladder of the dihedral system with canonical vectors g1, g2 and
/// form value c: plane coordinates follow z(k+1) = -2c z(k) - z(k-1).
/// Yields ambient vectors walking inward from one end; the closure uses
/// a coefficient-sum bound to stop in the infinite case and cone exit in
/// the finite case.
pub(crate) fn ladder_vectors<S: Scalar>(
    g1: &[S],
    g2: &[S],
    c: &S,
    from_first: bool,
    max_sum: &S,
) -> Vec<Vec<S>> {
    let (mut prev, mut cur) = if from_first {
        ((S::zero(), S::from_int(-1)), (S::one(), S::zero()))
    } else {
        ((S::from_int(-1), S::zero()), (S::zero(), S::one()))
    };
    let minus_two_c = S::from_int(-2).mul(c);
    let mut out = Vec::new();
    loop {
        if cur.0.is_negative() || cur.1.is_negative() {
            break;
        }
        let ambient: Vec<S> = g1
            .iter()
            .zip(g2.iter())
            .map(|(x, y)| cur.0.mul(x).add(&cur.1.mul(y)))
            .collect();
        if coeff_sum(&ambient).compare(max_sum) == Ordering::Greater {
            break;
        }
        out.push(ambient);
        let next = (
            minus_two_c.mul(&cur.0).sub(&prev.0),
            minus_two_c.mul(&cur.1).sub(&prev.1),
        );
        prev = cur;
        cur = next;
    }
    out
}

/// Collects the in-slice members of the dihedral system with the given
/// canonical vectors, in chain order starting at g1.
fn collect_members<S: Scalar>(
    slice: &RootSlice<S>,
    g1: &[S],
    g2: &[S],
    c: &S,
) -> Result<Vec<RootId>> {
    let max_sum = slice.max_coeff_sum().clone();
    let mut ids = Vec::new();
    for vec in ladder_vectors(g1, g2, c, true, &max_sum) {
        if let Some(id) = slice.lookup(&vec) {
            ids.push(id);
        }
    }
    for vec in ladder_vectors(g1, g2, c, false, &max_sum) {
        if let Some(id) = slice.lookup(&vec) {
            ids.push(id);
        }
    }
    ids.sort();
    ids.dedup();
    let basis = PlaneBasis::from_pair(g1, g2).ok_or(Error::Parse {
        detail: "canonical pair is proportional".into(),
    })?;
    let mut pts: Vec<(RootId, (S, S))> = ids
        .into_iter()
        .map(|id| {
            let coords = basis
                .coords_of(slice.coeffs(id))
                .expect("ladder members lie in their plane");
            (id, coords)
        })
        .collect();
    sort_by_angle(&mut pts);
    let mut members: Vec<RootId> = pts.into_iter().map(|(id, _)| id).collect();
    let first = slice.lookup(g1).expect("canonical root is in slice");
    if members.last() == Some(&first) {
        members.reverse();
    }
    Ok(members)
}

fn is_positive_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|c| c.sign() != Sign::Negative) && v.iter().any(|c| c.sign() == Sign::Positive)
}

/// The subgroup generated by the reflections in two roots.
///
/// The canonical pair is found exactly: a pair with B <= -1 is already
/// canonical; a pair with B >= 1 either converts in one reflection (a
/// positive image s_a(b) pairs with a at form value -B) or, when both
/// images are negative, contracts to a pair of smaller coefficient sum
/// generating the same subgroup; |B| < 1 saturates to a finite system
/// whose extremes are canonical. Fails with
/// [`Error::ClosureEscapesSlice`] when a canonical root lies beyond the
/// slice depth.
pub fn dihedral_closure<S: Scalar>(
    a: RootId,
    b: RootId,
    slice: &RootSlice<S>,
) -> Result<DihedralSubgroup<S>> {
    assert_ne!(a, b, "dihedral closure needs two distinct roots");
    let gram = slice.gram();
    let mut va = slice.coeffs(a).to_vec();
    let mut vb = slice.coeffs(b).to_vec();
    let minus_one = S::from_int(-1);
    let one = S::one();

    let mut rounds = 0usize;
    let (g1, g2, total_finite) = loop {
        rounds += 1;
        if rounds > 256 {
            return Err(Error::Parse { detail: "dihedral contraction did not stabilize".into() });
        }
        let c = gram.bilinear(&va, &vb);
        if c.compare(&minus_one) != Ordering::Greater {
            break (va, vb, None);
        }
        if c.compare(&one) == Ordering::Less {
            let orbit = saturate_orbit(&va, &vb, gram)?;
            let basis = PlaneBasis::from_pair(&va, &vb).ok_or(Error::Parse {
                detail: "closure roots are proportional".into(),
            })?;
            let mut pts: Vec<(usize, (S, S))> = orbit
                .iter()
                .enumerate()
                .map(|(i, v)| (i, basis.coords_of(v).expect("orbit stays in the plane")))
                .collect();
            sort_by_angle(&mut pts);
            let lo = orbit[pts.first().unwrap().0].clone();
            let hi = orbit[pts.last().unwrap().0].clone();
            break (lo, hi, Some(orbit.len() as u32));
        }
        // c >= 1. A positive image pairs with its mirror at form value -c.
        let img_a = reflect_by_vector(&vb, &va, gram); // s_a(b)
        if is_positive_vec(&img_a) {
            break (img_a, va, None);
        }
        let img_b = reflect_by_vector(&va, &vb, gram); // s_b(a)
        if is_positive_vec(&img_b) {
            break (img_b, vb, None);
        }
        // Both images negative: replace one generator by the positive
        // representative of an image (the reflections generate the same
        // subgroup) and keep the pair of smaller total coefficient sum.
        let rep_a = positive_rep(img_b)?; // 2c b - a, replaces a
        let rep_b = positive_rep(img_a)?; // 2c a - b, replaces b
        let sum_with_rep_a = coeff_sum(&rep_a).add(&coeff_sum(&vb));
        let sum_with_rep_b = coeff_sum(&va).add(&coeff_sum(&rep_b));
        let current = coeff_sum(&va).add(&coeff_sum(&vb));
        let (next_a, next_b, next_sum) =
            if sum_with_rep_a.compare(&sum_with_rep_b) != Ordering::Greater {
                (rep_a, vb, sum_with_rep_a)
            } else {
                (va, rep_b, sum_with_rep_b)
            };
        if next_sum.compare(&current) != Ordering::Less {
            return Err(Error::Parse { detail: "dihedral contraction did not descend".into() });
        }
        va = next_a;
        vb = next_b;
    };

    let depth = slice.depth_bound();
    let id1 = slice.lookup(&g1).ok_or(Error::ClosureEscapesSlice { depth })?;
    let id2 = slice.lookup(&g2).ok_or(Error::ClosureEscapesSlice { depth })?;
    let bform = gram.bilinear(&g1, &g2);
    let classification = match total_finite {
        Some(m) => Classification::Finite(m),
        None => Classification::Infinite,
    };
    let members = collect_members(slice, &g1, &g2, &bform)?;
    Ok(DihedralSubgroup { canonical_pair: (id1, id2), bform, classification, members })
}

/// The dihedral subgroup whose positive roots are all slice roots in the
/// plane spanned by the pair, with the canonical pair recomputed over
/// that larger set.
pub fn maximal_dihedral<S: Scalar>(
    a: RootId,
    b: RootId,
    slice: &RootSlice<S>,
) -> Result<DihedralSubgroup<S>> {
    assert_ne!(a, b, "maximal dihedral needs two distinct roots");
    let gram = slice.gram();
    let basis = PlaneBasis::from_pair(slice.coeffs(a), slice.coeffs(b)).ok_or(Error::Parse {
        detail: "plane generators are proportional".into(),
    })?;
    let mut pts: Vec<(RootId, (S, S))> = Vec::new();
    for id in slice.ids() {
        if let Some(coords) = basis.coords_of(slice.coeffs(id)) {
            pts.push((id, coords));
        }
    }
    sort_by_angle(&mut pts);
    let members: Vec<RootId> = pts.iter().map(|(id, _)| *id).collect();
    let e1 = members[0];
    let e2 = *members.last().unwrap();
    let bform = slice.bilinear(e1, e2);
    let minus_one = S::from_int(-1);

    if bform.compare(&minus_one) != Ordering::Greater {
        return Ok(DihedralSubgroup {
            canonical_pair: (e1, e2),
            bform,
            classification: Classification::Infinite,
            members,
        });
    }

    // Extremes with |B| < 1: the plane set must be a saturated finite
    // system entirely inside the slice, otherwise the canonical pair is
    // not determined by this slice.
    if bform.compare(&S::one()) != Ordering::Less {
        return Err(Error::ClosureEscapesSlice { depth: slice.depth_bound() });
    }
    let orbit = saturate_orbit(slice.coeffs(e1), slice.coeffs(e2), gram)?;
    let mut orbit_ids = Vec::with_capacity(orbit.len());
    for v in &orbit {
        match slice.lookup(v) {
            Some(id) => orbit_ids.push(id),
            None => return Err(Error::ClosureEscapesSlice { depth: slice.depth_bound() }),
        }
    }
    orbit_ids.sort();
    let mut sorted_members = members.clone();
    sorted_members.sort();
    if orbit_ids != sorted_members {
        return Err(Error::ClosureEscapesSlice { depth: slice.depth_bound() });
    }
    Ok(DihedralSubgroup {
        canonical_pair: (e1, e2),
        bform,
        classification: Classification::Finite(orbit.len() as u32),
        members,
    })
}

/// All slice roots whose barycentric coordinate along `axis` equals `c`.
pub fn fiber<S: Scalar>(slice: &RootSlice<S>, axis: usize, c: &S) -> Vec<RootId> {
    slice
        .ids()
        .filter(|&id| first_coordinate(id, slice, axis).compare(c) == Ordering::Equal)
        .collect()
}

/// Distinct observed barycentric values along `axis`, each with its
/// fiber, sorted by value.
pub fn observed_fibers<S: Scalar>(slice: &RootSlice<S>, axis: usize) -> Vec<(S, Vec<RootId>)> {
    let mut groups: HashMap<S::Key, (S, Vec<RootId>)> = HashMap::new();
    for id in slice.ids() {
        let c = first_coordinate(id, slice, axis);
        groups.entry(c.key()).or_insert_with(|| (c.clone(), Vec::new())).1.push(id);
    }
    let mut out: Vec<(S, Vec<RootId>)> = groups.into_values().collect();
    out.sort_by(|(c1, _), (c2, _)| c1.compare(c2));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::CoxeterMatrix;
    use crate::roots::DEFAULT_ROOT_CAP;
    use crate::scalar::Rat;

    fn universal3(depth: u32) -> RootSlice<Rat> {
        RootSlice::generate(&CoxeterMatrix::universal(3), depth, DEFAULT_ROOT_CAP).unwrap()
    }

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn parabolic_pair_is_its_own_canonical_pair() {
        let slice = universal3(3);
        let a2 = slice.simple_root(1);
        let a3 = slice.simple_root(2);
        let sub = dihedral_closure(a2, a3, &slice).unwrap();
        assert_eq!(sub.canonical_pair, (a2, a3));
        assert_eq!(sub.bform, Rat::from_int(-1));
        assert_eq!(sub.classification, Classification::Infinite);
        assert_eq!(sub.members.first(), Some(&a2));
        // Every parabolic root of depth <= 3 shows up: a2, a3 and the
        // ladder (0,1,2), (0,2,1), (0,2,3), (0,3,2), (0,3,4), (0,4,3).
        assert_eq!(sub.members.len(), 8);
    }

    #[test]
    fn deep_fiber_pair_is_canonical() {
        let slice = universal3(3);
        let a = slice.lookup(&rv(&[2, 1, 0])).unwrap();
        let b = slice.lookup(&rv(&[2, 0, 1])).unwrap();
        let sub = dihedral_closure(a, b, &slice).unwrap();
        assert_eq!(sub.canonical_pair, (a, b));
        assert_eq!(sub.bform, Rat::from_int(-1));
        assert_eq!(sub.classification, Classification::Infinite);
    }

    #[test]
    fn a2_closure_is_finite_three() {
        let slice =
            RootSlice::<Rat>::generate(&CoxeterMatrix::type_a(2), 5, DEFAULT_ROOT_CAP).unwrap();
        let a1 = slice.simple_root(0);
        let a2 = slice.simple_root(1);
        let sub = dihedral_closure(a1, a2, &slice).unwrap();
        assert_eq!(sub.classification, Classification::Finite(3));
        assert_eq!(sub.bform, Rat::new(-1, 2));
        assert_eq!(sub.members.len(), 3);
        let mid = slice.lookup(&rv(&[1, 1])).unwrap();
        assert_eq!(sub.members[1], mid);
    }

    #[test]
    fn dominance_pair_converts_to_canonical() {
        // B((1,0,0),(2,1,0)) = 1: the canonical pair is (a1, a2).
        let slice = universal3(2);
        let a = slice.simple_root(0);
        let b = slice.lookup(&rv(&[2, 1, 0])).unwrap();
        let sub = dihedral_closure(a, b, &slice).unwrap();
        let a2 = slice.simple_root(1);
        let pair = [sub.canonical_pair.0, sub.canonical_pair.1];
        assert!(pair.contains(&a));
        assert!(pair.contains(&a2));
        assert_eq!(sub.bform, Rat::from_int(-1));
    }

    #[test]
    fn same_ladder_pair_contracts_to_parabolic_pair() {
        // B((3,2,0),(2,1,0)) = 1 and both reflected images are negative;
        // the contraction descends to the parabolic pair (a1, a2), which
        // generates the same subgroup.
        let slice = universal3(2);
        let a = slice.lookup(&rv(&[3, 2, 0])).unwrap();
        let b = slice.lookup(&rv(&[2, 1, 0])).unwrap();
        let sub = dihedral_closure(a, b, &slice).unwrap();
        let pair = [sub.canonical_pair.0, sub.canonical_pair.1];
        assert!(pair.contains(&slice.simple_root(0)));
        assert!(pair.contains(&slice.simple_root(1)));
        assert_eq!(sub.bform, Rat::from_int(-1));
        assert_eq!(sub.classification, Classification::Infinite);
    }

    #[test]
    fn maximal_contains_closure() {
        let slice = universal3(4);
        let a = slice.lookup(&rv(&[1, 2, 0])).unwrap();
        let b = slice.lookup(&rv(&[1, 0, 2])).unwrap();
        let closure = dihedral_closure(a, b, &slice).unwrap();
        let maximal = maximal_dihedral(a, b, &slice).unwrap();
        assert_eq!(maximal.classification, Classification::Infinite);
        for id in &closure.members {
            assert!(maximal.members.contains(id));
        }
        // Every member of this fiber plane has first coordinate 1/3.
        for &id in &maximal.members {
            assert_eq!(first_coordinate(id, &slice, 0), Rat::new(1, 3));
        }
    }

    #[test]
    fn maximal_of_parabolic_pair_is_the_parabolic_plane() {
        let slice = universal3(3);
        let a1 = slice.simple_root(0);
        let a2 = slice.simple_root(1);
        let sub = maximal_dihedral(a1, a2, &slice).unwrap();
        for &id in &sub.members {
            assert!(slice.coeffs(id)[2].is_zero());
        }
        assert_eq!(sub.canonical_pair, (a1, a2));
    }

    #[test]
    fn fiber_examples() {
        let slice = universal3(4);
        // c = 0 along axis 1 is exactly the <s2, s3> parabolic.
        let zero_fiber = fiber(&slice, 0, &Rat::from_int(0));
        assert!(!zero_fiber.is_empty());
        for &id in &zero_fiber {
            assert!(slice.coeffs(id)[0].is_zero());
        }
        // c = 2/3 is nonempty and coplanar.
        let f = fiber(&slice, 0, &Rat::new(2, 3));
        assert!(f.len() >= 2);
        let basis =
            PlaneBasis::from_pair(slice.coeffs(f[0]), slice.coeffs(f[1])).unwrap();
        for &id in &f[2..] {
            assert!(basis.coords_of(slice.coeffs(id)).is_some());
        }
        // c = 5/6 is empty at every depth tested.
        assert!(fiber(&slice, 0, &Rat::new(5, 6)).is_empty());
    }
}
