//! Normalized roots on the standard affine hyperplane and the
//! segment-vs-isotropic-cone test.

use crate::error::{Error, Result};
use crate::matrix::GramMatrix;
use crate::roots::{RootId, RootSlice};
use crate::scalar::{coeff_sum, Scalar, Sign};

/// A positive root rescaled so its coordinates sum to 1.
#[derive(Debug, Clone)]
pub struct NormalizedRoot<S> {
    pub coords: Vec<S>,
    pub source: RootId,
}

/// Barycentric coordinates of a stored root.
pub fn normalize<S: Scalar>(id: RootId, slice: &RootSlice<S>) -> NormalizedRoot<S> {
    let coeffs = slice.coeffs(id);
    let sum = coeff_sum(coeffs);
    debug_assert!(sum.is_positive());
    NormalizedRoot {
        coords: coeffs.iter().map(|c| c.div(&sum)).collect(),
        source: id,
    }
}

/// B(p, p) for a point on the standard hyperplane.
pub fn qform<S: Scalar>(point: &[S], gram: &GramMatrix<S>) -> S {
    gram.bilinear(point, point)
}

/// Barycentric coordinate of a root along one axis.
pub fn first_coordinate<S: Scalar>(id: RootId, slice: &RootSlice<S>, axis: usize) -> S {
    let coeffs = slice.coeffs(id);
    coeffs[axis].div(&coeff_sum(coeffs))
}

/// Outcome of intersecting the segment `[p, q]` with the isotropic cone.
#[derive(Debug, Clone)]
pub struct ConeReport<S> {
    /// Q at t = 0 and t = 1.
    pub qvalue_endpoints: (S, S),
    pub intersects: bool,
    /// Parameters in [0, 1] where the segment meets the cone, when they
    /// are representable in the scalar domain (up to 2).
    pub t_roots: Vec<S>,
}

/// Solves B((1-t)p + tq, (1-t)p + tq) = 0 over t in [0, 1].
///
/// The decision uses signs only, so it is exact in exact mode even when
/// the crossing parameters are irrational; tangency counts as
/// intersecting. Errors with [`Error::DegenerateQuadratic`] when the whole
/// segment is isotropic.
pub fn segment_meets_cone<S: Scalar>(
    p: &[S],
    q: &[S],
    gram: &GramMatrix<S>,
) -> Result<ConeReport<S>> {
    // f(t) = a t^2 + b t + c with
    //   c = B(p,p), b = 2(B(p,q) - B(p,p)), a = B(p,p) - 2B(p,q) + B(q,q).
    let qpp = gram.bilinear(p, p);
    let qpq = gram.bilinear(p, q);
    let qqq = gram.bilinear(q, q);
    let two = S::from_int(2);
    let c = qpp.clone();
    let b = two.mul(&qpq.sub(&qpp));
    let a = qpp.sub(&two.mul(&qpq)).add(&qqq);
    let f1 = a.add(&b).add(&c);

    let mut t_roots: Vec<S> = Vec::new();
    let intersects;

    if a.is_zero() {
        if b.is_zero() {
            if c.is_zero() {
                return Err(Error::DegenerateQuadratic);
            }
            intersects = false;
        } else {
            let t = c.neg().div(&b);
            let in_range =
                !t.is_negative() && t.compare(&S::one()) != std::cmp::Ordering::Greater;
            if in_range {
                t_roots.push(t);
            }
            intersects = in_range;
        }
    } else {
        let four = S::from_int(4);
        let disc = b.mul(&b).sub(&four.mul(&a).mul(&c));
        if disc.is_negative() {
            intersects = false;
        } else {
            if let Some(sq) = disc.sqrt_in_domain() {
                let two_a = two.mul(&a);
                for t in [b.neg().sub(&sq).div(&two_a), b.neg().add(&sq).div(&two_a)] {
                    let in_range =
                        !t.is_negative() && t.compare(&S::one()) != std::cmp::Ordering::Greater;
                    let fresh =
                        !t_roots.iter().any(|u| u.compare(&t) == std::cmp::Ordering::Equal);
                    if in_range && fresh {
                        t_roots.push(t);
                    }
                }
                t_roots.sort_by(|x, y| x.compare(y));
                intersects = !t_roots.is_empty();
            } else {
                // Irrational crossings: decide from signs at the endpoints
                // and the vertex t* = -b / 2a.
                let fp_sign = c.sign();
                let fq_sign = f1.sign();
                if fp_sign == Sign::Zero || fq_sign == Sign::Zero || fp_sign != fq_sign {
                    intersects = true;
                } else {
                    // Both endpoints on the same side; the parabola dips
                    // through zero between them only if it opens toward
                    // that side and the vertex lies inside the segment.
                    let opens_with_endpoints = a.sign() == fp_sign;
                    let vertex_num = b.neg();
                    let two_a = two.mul(&a);
                    // 0 <= -b/2a <= 1 without dividing: compare against the
                    // sign of 2a.
                    let lo_ok;
                    let hi_ok;
                    if two_a.is_positive() {
                        lo_ok = !vertex_num.is_negative();
                        hi_ok = vertex_num.compare(&two_a) != std::cmp::Ordering::Greater;
                    } else {
                        lo_ok = !vertex_num.is_positive();
                        hi_ok = vertex_num.compare(&two_a) != std::cmp::Ordering::Less;
                    }
                    intersects = opens_with_endpoints && lo_ok && hi_ok;
                }
            }
        }
    }

    Ok(ConeReport { qvalue_endpoints: (c, f1), intersects, t_roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::CoxeterMatrix;
    use crate::roots::DEFAULT_ROOT_CAP;
    use crate::scalar::Rat;

    fn universal3_slice(depth: u32) -> RootSlice<Rat> {
        RootSlice::generate(&CoxeterMatrix::universal(3), depth, DEFAULT_ROOT_CAP).unwrap()
    }

    fn rat_vec(nums: &[(i64, i64)]) -> Vec<Rat> {
        nums.iter().map(|&(p, q)| Rat::new(p, q)).collect()
    }

    #[test]
    fn normalize_examples() {
        let slice = universal3_slice(2);
        let id = slice.lookup(&[Rat::from_int(2), Rat::from_int(1), Rat::from_int(0)]).unwrap();
        assert_eq!(normalize(id, &slice).coords, rat_vec(&[(2, 3), (1, 3), (0, 1)]));
        let id = slice.lookup(&[Rat::from_int(1), Rat::from_int(0), Rat::from_int(0)]).unwrap();
        assert_eq!(normalize(id, &slice).coords, rat_vec(&[(1, 1), (0, 1), (0, 1)]));
        let id = slice.lookup(&[Rat::from_int(1), Rat::from_int(2), Rat::from_int(0)]).unwrap();
        assert_eq!(normalize(id, &slice).coords, rat_vec(&[(1, 3), (2, 3), (0, 1)]));
    }

    #[test]
    fn qform_examples() {
        let slice = universal3_slice(1);
        let g = slice.gram();
        // Midpoint of an edge of the triangle lies on the inscribed circle.
        assert_eq!(qform(&rat_vec(&[(1, 2), (1, 2), (0, 1)]), g), Rat::from_int(0));
        // The barycenter is inside the cone.
        assert_eq!(qform(&rat_vec(&[(1, 3), (1, 3), (1, 3)]), g), Rat::new(-1, 3));
        // Normalized roots have Q = 1 / (coefficient sum)^2 > 0.
        for id in slice.ids() {
            let nr = normalize(id, &slice);
            let q = qform(&nr.coords, g);
            assert!(q.is_positive());
            let sum = coeff_sum(slice.coeffs(id));
            assert_eq!(q.mul(&sum).mul(&sum), Rat::from_int(1));
        }
    }

    #[test]
    fn first_coordinate_examples() {
        let slice = universal3_slice(2);
        let id = slice.lookup(&[Rat::from_int(2), Rat::from_int(1), Rat::from_int(0)]).unwrap();
        assert_eq!(first_coordinate(id, &slice, 0), Rat::new(2, 3));
        let id = slice.lookup(&[Rat::from_int(0), Rat::from_int(1), Rat::from_int(2)]).unwrap();
        assert_eq!(first_coordinate(id, &slice, 0), Rat::from_int(0));
        let id = slice.lookup(&[Rat::from_int(1), Rat::from_int(2), Rat::from_int(0)]).unwrap();
        assert_eq!(first_coordinate(id, &slice, 0), Rat::new(1, 3));
    }

    #[test]
    fn edge_segment_is_tangent_at_midpoint() {
        let slice = universal3_slice(1);
        let p = rat_vec(&[(0, 1), (1, 1), (0, 1)]);
        let q = rat_vec(&[(0, 1), (0, 1), (1, 1)]);
        let report = segment_meets_cone(&p, &q, slice.gram()).unwrap();
        assert!(report.intersects);
        assert_eq!(report.t_roots, vec![Rat::new(1, 2)]);
        assert_eq!(report.qvalue_endpoints.0, Rat::from_int(1));
    }

    #[test]
    fn vertex_to_edge_midpoint_touches_only_at_end() {
        let slice = universal3_slice(1);
        let p = rat_vec(&[(1, 1), (0, 1), (0, 1)]);
        let q = rat_vec(&[(1, 2), (1, 2), (0, 1)]);
        let report = segment_meets_cone(&p, &q, slice.gram()).unwrap();
        assert!(report.intersects);
        assert_eq!(report.t_roots, vec![Rat::from_int(1)]);
    }

    #[test]
    fn fiber_pair_segment_crosses() {
        let slice = universal3_slice(2);
        let a = slice.lookup(&[Rat::from_int(2), Rat::from_int(1), Rat::from_int(0)]).unwrap();
        let b = slice.lookup(&[Rat::from_int(1), Rat::from_int(2), Rat::from_int(0)]).unwrap();
        let p = normalize(a, &slice);
        let q = normalize(b, &slice);
        let report = segment_meets_cone(&p.coords, &q.coords, slice.gram()).unwrap();
        assert!(report.intersects);
    }

    #[test]
    fn segment_test_is_symmetric() {
        let slice = universal3_slice(3);
        let ids: Vec<_> = slice.ids().collect();
        for (k, &a) in ids.iter().enumerate().step_by(5) {
            let b = ids[(k * 7 + 3) % ids.len()];
            if a == b {
                continue;
            }
            let p = normalize(a, &slice).coords;
            let q = normalize(b, &slice).coords;
            let r1 = segment_meets_cone(&p, &q, slice.gram()).unwrap();
            let r2 = segment_meets_cone(&q, &p, slice.gram()).unwrap();
            assert_eq!(r1.intersects, r2.intersects);
        }
    }

    #[test]
    fn interior_grid_points_are_negative() {
        // Points strictly inside the inscribed circle have Q < 0.
        let slice = universal3_slice(1);
        let g = slice.gram();
        let center = rat_vec(&[(1, 3), (1, 3), (1, 3)]);
        for (dx, dy) in [(0i64, 0i64), (1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)] {
            let p = vec![
                center[0].add(&Rat::new(dx, 30)),
                center[1].add(&Rat::new(dy, 30)),
                center[2].sub(&Rat::new(dx + dy, 30)),
            ];
            assert!(qform(&p, g).is_negative());
        }
    }

    #[test]
    fn definite_form_segment_misses() {
        // In type A2 the form is positive definite: no crossing anywhere.
        let slice =
            RootSlice::<Rat>::generate(&CoxeterMatrix::type_a(2), 5, DEFAULT_ROOT_CAP).unwrap();
        let p = rat_vec(&[(1, 1), (0, 1)]);
        let q = rat_vec(&[(0, 1), (1, 1)]);
        let report = segment_meets_cone(&p, &q, slice.gram()).unwrap();
        assert!(!report.intersects);
        assert!(report.t_roots.is_empty());
    }
}
