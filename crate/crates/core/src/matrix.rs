//! Coxeter matrices and the associated bilinear form.

use num::rational::BigRational;
use num::BigInt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One entry m(s, s') of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

/// Presentation data: bond labels plus optional exact weights for
/// infinite bonds (the form value B(a_i, a_j) <= -1 there; default -1).
#[derive(Debug, Clone)]
pub struct CoxeterMatrix {
    rank: usize,
    bonds: Vec<Bond>,
    weights: Vec<Option<BigRational>>,
}

impl CoxeterMatrix {
    /// Builds from row-major bond labels. Checks symmetry, diagonal 1 and
    /// off-diagonal labels >= 2; weights must sit exactly on infinite
    /// bonds and be <= -1.
    pub fn new(
        rank: usize,
        bonds: Vec<Bond>,
        weights: Option<Vec<Option<BigRational>>>,
    ) -> Result<Self> {
        let bad = |detail: String| Error::Parse { detail };
        if rank == 0 {
            return Err(bad("rank must be positive".into()));
        }
        if bonds.len() != rank * rank {
            return Err(bad(format!(
                "expected {} entries for rank {rank}, got {}",
                rank * rank,
                bonds.len()
            )));
        }
        for i in 0..rank {
            for j in 0..rank {
                let m = bonds[i * rank + j];
                if m != bonds[j * rank + i] {
                    return Err(bad(format!("entries not symmetric at ({i},{j})")));
                }
                match (i == j, m) {
                    (true, Bond::Finite(1)) => {}
                    (true, _) => return Err(bad(format!("diagonal entry at {i} must be 1"))),
                    (false, Bond::Finite(k)) if k < 2 => {
                        return Err(bad(format!("off-diagonal entry at ({i},{j}) must be >= 2")))
                    }
                    _ => {}
                }
            }
        }
        let weights = match weights {
            None => vec![None; rank * rank],
            Some(w) => {
                if w.len() != rank * rank {
                    return Err(bad("infinity_weights has wrong length".into()));
                }
                for i in 0..rank {
                    for j in 0..rank {
                        let here = &w[i * rank + j];
                        if *here != w[j * rank + i] {
                            return Err(bad(format!("weights not symmetric at ({i},{j})")));
                        }
                        match (bonds[i * rank + j], here) {
                            (Bond::Infinite, Some(v)) => {
                                if *v > BigRational::from_integer(BigInt::from(-1)) {
                                    return Err(bad(format!(
                                        "weight at ({i},{j}) must be <= -1, got {v}"
                                    )));
                                }
                            }
                            (Bond::Infinite, None) => {}
                            (_, Some(_)) => {
                                return Err(bad(format!(
                                    "weight given at ({i},{j}) where the bond is finite"
                                )))
                            }
                            _ => {}
                        }
                    }
                }
                w
            }
        };
        Ok(CoxeterMatrix { rank, bonds, weights })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.bonds[i * self.rank + j]
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<&BigRational> {
        self.weights[i * self.rank + j].as_ref()
    }

    /// All bond labels infinite (weight -1): the universal group.
    pub fn universal(rank: usize) -> Self {
        let bonds = (0..rank * rank)
            .map(|k| {
                if k / rank == k % rank {
                    Bond::Finite(1)
                } else {
                    Bond::Infinite
                }
            })
            .collect();
        CoxeterMatrix::new(rank, bonds, None).expect("universal matrix is well formed")
    }

    /// Type A_n: m(i, i+1) = 3, distant pairs commute.
    pub fn type_a(rank: usize) -> Self {
        let mut bonds = vec![Bond::Finite(2); rank * rank];
        for i in 0..rank {
            bonds[i * rank + i] = Bond::Finite(1);
            if i + 1 < rank {
                bonds[i * rank + i + 1] = Bond::Finite(3);
                bonds[(i + 1) * rank + i] = Bond::Finite(3);
            }
        }
        CoxeterMatrix::new(rank, bonds, None).expect("type A matrix is well formed")
    }

    /// Affine A~1: two generators, infinite bond of weight -1.
    pub fn affine_a1() -> Self {
        CoxeterMatrix::new(
            2,
            vec![Bond::Finite(1), Bond::Infinite, Bond::Infinite, Bond::Finite(1)],
            None,
        )
        .expect("A~1 matrix is well formed")
    }

    /// Affine A~2: triangle with all bonds 3.
    pub fn affine_a2() -> Self {
        let mut bonds = vec![Bond::Finite(3); 9];
        for i in 0..3 {
            bonds[i * 3 + i] = Bond::Finite(1);
        }
        CoxeterMatrix::new(3, bonds, None).expect("A~2 matrix is well formed")
    }

    /// The parabolic submatrix on the given generator indices.
    pub fn parabolic(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        let mut bonds = Vec::with_capacity(k * k);
        let mut weights = Vec::with_capacity(k * k);
        for &i in indices {
            for &j in indices {
                bonds.push(self.bond(i, j));
                weights.push(self.weights[i * self.rank + j].clone());
            }
        }
        CoxeterMatrix::new(k, bonds, Some(weights)).expect("parabolic of a valid matrix is valid")
    }

    /// The Gram matrix of the standard bilinear form in the requested
    /// scalar mode. Fails with [`Error::ExactModeUnavailable`] when a
    /// finite bond label has an irrational cosine in exact mode.
    pub fn gram<S: Scalar>(&self) -> Result<GramMatrix<S>> {
        let n = self.rank;
        let mut vals = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = match self.bond(i, j) {
                    Bond::Finite(m) => S::neg_cos_pi_over(m)
                        .ok_or(Error::ExactModeUnavailable { bond: (i, j), label: m })?,
                    Bond::Infinite => match self.weight(i, j) {
                        Some(w) => S::from_big_ratio(w),
                        None => S::from_int(-1),
                    },
                };
                vals.push(v);
            }
        }
        Ok(GramMatrix { n, vals })
    }
}

/// Symmetric matrix of form values B(a_i, a_j); diagonal exactly 1.
#[derive(Debug, Clone)]
pub struct GramMatrix<S> {
    n: usize,
    vals: Vec<S>,
}

impl<S: Scalar> GramMatrix<S> {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.vals[i * self.n + j]
    }

    /// B(u, v) for coefficient vectors in the simple-root basis.
    pub fn bilinear(&self, u: &[S], v: &[S]) -> S {
        let mut acc = S::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                acc = acc.add(&ui.mul(vj).mul(self.entry(i, j)));
            }
        }
        acc
    }

    /// B(v, a_s) against a simple root; one row of the form.
    pub fn bilinear_simple(&self, v: &[S], s: usize) -> S {
        let mut acc = S::zero();
        for (i, vi) in v.iter().enumerate() {
            if !vi.is_zero() {
                acc = acc.add(&vi.mul(self.entry(i, s)));
            }
        }
        acc
    }
}
