//! Two-dimensional planes through the origin spanned by root pairs.
//!
//! Every dihedral computation reduces to exact work inside such a plane:
//! membership, cone tests, and the chain (angular) order of the roots it
//! contains. The index groups all slice roots by the plane they span so
//! that order verification is quadratic per plane instead of cubic
//! overall. Rank-3 planes key on the normalized cross-product normal;
//! higher ranks fall back to the echelon form.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::roots::{RootId, RootSlice};
use crate::scalar::{Scalar, Sign};
use crate::subgroups::saturate_orbit;

/// Reduced row-echelon basis of the plane spanned by two independent
/// vectors. The two rows have a 1 at their pivot column and a 0 at the
/// other pivot, which makes coordinates of members directly readable.
#[derive(Debug, Clone)]
pub struct PlaneBasis<S> {
    pub pivots: (usize, usize),
    pub rows: [Vec<S>; 2],
}

/// Canonical plane identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PlaneKey<K> {
    /// Rank 3: the cross-product normal scaled to leading coefficient 1.
    Normal(Vec<K>),
    /// General rank: pivot columns plus the non-pivot entries of the
    /// echelon rows.
    Echelon(usize, usize, Vec<K>),
}

impl<S: Scalar> PlaneBasis<S> {
    /// None when the vectors are proportional.
    pub fn from_pair(a: &[S], b: &[S]) -> Option<Self> {
        let n = a.len();
        let mut r0 = a.to_vec();
        let mut r1 = b.to_vec();
        let p0 = (0..n).find(|&j| !r0[j].is_zero() || !r1[j].is_zero())?;
        if r0[p0].is_zero() {
            std::mem::swap(&mut r0, &mut r1);
        }
        let lead = r0[p0].clone();
        for x in r0.iter_mut() {
            *x = x.div(&lead);
        }
        let factor = r1[p0].clone();
        if !factor.is_zero() {
            for (x, y) in r1.iter_mut().zip(r0.iter()) {
                *x = x.sub(&factor.mul(y));
            }
        }
        let p1 = (p0 + 1..n).find(|&j| !r1[j].is_zero())?;
        let lead = r1[p1].clone();
        for x in r1.iter_mut() {
            *x = x.div(&lead);
        }
        let factor = r0[p1].clone();
        if !factor.is_zero() {
            for (x, y) in r0.iter_mut().zip(r1.iter()) {
                *x = x.sub(&factor.mul(y));
            }
        }
        Some(PlaneBasis { pivots: (p0, p1), rows: [r0, r1] })
    }

    /// Plane coordinates of `v`, or None when `v` lies outside the plane.
    pub fn coords_of(&self, v: &[S]) -> Option<(S, S)> {
        let x = v[self.pivots.0].clone();
        let y = v[self.pivots.1].clone();
        for (j, vj) in v.iter().enumerate() {
            let expect = x.mul(&self.rows[0][j]).add(&y.mul(&self.rows[1][j]));
            if expect.compare(vj) != Ordering::Equal {
                return None;
            }
        }
        Some((x, y))
    }

    fn key(&self) -> PlaneKey<S::Key> {
        let mut extras = Vec::new();
        for row in &self.rows {
            for (j, x) in row.iter().enumerate() {
                if j != self.pivots.0 && j != self.pivots.1 {
                    extras.push(x.key());
                }
            }
        }
        PlaneKey::Echelon(self.pivots.0, self.pivots.1, extras)
    }
}

/// Canonical key of the plane spanned by two vectors; None when they are
/// proportional.
pub fn plane_key<S: Scalar>(a: &[S], b: &[S]) -> Option<PlaneKey<S::Key>> {
    if a.len() == 3 {
        let mut normal = [
            a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
            a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
            a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
        ];
        let lead = normal.iter().find(|x| !x.is_zero())?.clone();
        for x in normal.iter_mut() {
            *x = x.div(&lead);
        }
        Some(PlaneKey::Normal(normal.iter().map(|x| x.key()).collect()))
    } else {
        PlaneBasis::from_pair(a, b).map(|basis| basis.key())
    }
}

pub fn cross<S: Scalar>(u: &(S, S), v: &(S, S)) -> S {
    u.0.mul(&v.1).sub(&u.1.mul(&v.0))
}

/// Is `g` a nonnegative combination of `u` and `v` (2D plane coords)?
/// Returns the combination when it exists.
pub fn cone_combination<S: Scalar>(u: &(S, S), v: &(S, S), g: &(S, S)) -> Option<(S, S)> {
    let det = cross(u, v);
    if det.is_zero() {
        return None;
    }
    let alpha = cross(g, v).div(&det);
    let beta = cross(u, g).div(&det);
    if alpha.is_negative() || beta.is_negative() {
        None
    } else {
        Some((alpha, beta))
    }
}

/// The slice roots spanning one plane, in chain (angular) order. Roots of
/// a dihedral positive system are salient, so the angular order is total
/// and its ends are the extreme rays.
#[derive(Debug)]
pub struct PlaneFamily<S> {
    /// Members in angular order.
    pub members: Vec<RootId>,
    /// Form value of the angular extremes.
    pub extremes_bform: S,
    /// Whether the extremes are certified as the canonical pair of the
    /// family's dihedral subgroup within this slice: B <= -1, or a finite
    /// saturated system entirely equal to the member set.
    pub chain_certified: bool,
}

impl<S: Scalar> PlaneFamily<S> {
    pub fn extremes(&self) -> (RootId, RootId) {
        (self.members[0], *self.members.last().unwrap())
    }

    pub fn angular_position(&self, id: RootId) -> Option<usize> {
        self.members.iter().position(|&m| m == id)
    }
}

/// All plane families of a slice with at least two member roots.
#[derive(Debug)]
pub struct PlaneIndex<S: Scalar> {
    families: Vec<PlaneFamily<S>>,
    by_key: HashMap<PlaneKey<S::Key>, usize>,
}

impl<S: Scalar> PlaneIndex<S> {
    pub fn build(slice: &RootSlice<S>) -> Self {
        let ids: Vec<RootId> = slice.ids().collect();
        let mut groups: HashMap<PlaneKey<S::Key>, Vec<RootId>> = HashMap::new();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let Some(key) = plane_key(slice.coeffs(a), slice.coeffs(b)) else {
                    continue;
                };
                let entry = groups.entry(key).or_default();
                entry.push(a);
                entry.push(b);
            }
        }
        let mut keyed: Vec<(PlaneKey<S::Key>, Vec<RootId>)> = groups
            .into_iter()
            .map(|(k, mut members)| {
                members.sort();
                members.dedup();
                (k, members)
            })
            .collect();
        // Deterministic family ids: order by least member, then next.
        keyed.sort_by_key(|(_, members)| (members[0], members[1]));

        let minus_one = S::from_int(-1);
        let one = S::one();
        let mut families = Vec::with_capacity(keyed.len());
        let mut by_key = HashMap::with_capacity(keyed.len());
        for (key, mut members) in keyed {
            if members.len() > 2 {
                // Angular order needs plane coordinates; pairs are already
                // trivially ordered.
                let basis =
                    PlaneBasis::from_pair(slice.coeffs(members[0]), slice.coeffs(members[1]))
                        .expect("family generators are independent");
                let mut pts: Vec<(RootId, (S, S))> = members
                    .into_iter()
                    .map(|id| {
                        let c = basis
                            .coords_of(slice.coeffs(id))
                            .expect("grouped member lies in its plane");
                        (id, c)
                    })
                    .collect();
                sort_by_angle(&mut pts);
                members = pts.into_iter().map(|(id, _)| id).collect();
            }
            let e1 = members[0];
            let e2 = *members.last().unwrap();
            let extremes_bform = slice.bilinear(e1, e2);
            let chain_certified =
                if extremes_bform.compare(&minus_one) != Ordering::Greater {
                    true
                } else if extremes_bform.compare(&one) == Ordering::Less {
                    saturate_orbit(slice.coeffs(e1), slice.coeffs(e2), slice.gram())
                        .ok()
                        .map(|orbit| {
                            orbit.len() == members.len()
                                && orbit.iter().all(|v| {
                                    slice
                                        .lookup(v)
                                        .map(|id| members.contains(&id))
                                        .unwrap_or(false)
                                })
                        })
                        .unwrap_or(false)
                } else {
                    false
                };
            by_key.insert(key, families.len());
            families.push(PlaneFamily { members, extremes_bform, chain_certified });
        }
        PlaneIndex { families, by_key }
    }

    pub fn families(&self) -> &[PlaneFamily<S>] {
        &self.families
    }

    /// The family of the plane spanned by two roots, if indexed.
    pub fn family_of_pair(
        &self,
        slice: &RootSlice<S>,
        a: RootId,
        b: RootId,
    ) -> Option<&PlaneFamily<S>> {
        let key = plane_key(slice.coeffs(a), slice.coeffs(b))?;
        self.by_key.get(&key).map(|&i| &self.families[i])
    }
}

/// Angular sort of plane points lying in a common salient cone.
pub fn sort_by_angle<S: Scalar, T>(pts: &mut [(T, (S, S))]) {
    pts.sort_by(|(_, u), (_, v)| match cross(u, v).sign() {
        Sign::Positive => Ordering::Less,
        Sign::Negative => Ordering::Greater,
        Sign::Zero => Ordering::Equal,
    });
}
