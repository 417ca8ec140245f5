//! Positive-root slices: breadth-first closure of the simple roots under
//! simple reflections, truncated at a depth bound.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, GramMatrix};
use crate::scalar::{coeff_sum, Scalar, Sign};

/// Default cap on the number of stored roots.
pub const DEFAULT_ROOT_CAP: usize = 1_000_000;

/// Identifier of a root within a slice. Ids are assigned in
/// (depth, lexicographic coefficient) order, so they are stable across
/// runs and across depth refinements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct RootId(pub u32);

impl RootId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for RootId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A positive root: coordinates in the simple-root basis, the BFS level
/// at which it first appeared, and the link it was produced through.
#[derive(Debug, Clone)]
pub struct Root<S> {
    pub coeffs: Vec<S>,
    pub depth: u32,
    /// `(parent, s)` meaning this root equals `s(parent)`.
    pub parent: Option<(RootId, usize)>,
}

/// A word in the simple generators, letters as 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<usize>,
    pub reduced: bool,
}

impl Word {
    /// Applies the word to a coefficient vector, rightmost letter first.
    pub fn apply<S: Scalar>(&self, v: &[S], gram: &GramMatrix<S>) -> Vec<S> {
        let mut v = v.to_vec();
        for &s in self.letters.iter().rev() {
            v = reflect(&v, s, gram);
        }
        v
    }

    /// Inversion roots of the prefixes: the k-th entry is
    /// `s_{w1} ... s_{w_{k-1}} (a_{w_k})`. For a reduced word these are
    /// distinct positive roots.
    pub fn inversion_roots<S: Scalar>(&self, gram: &GramMatrix<S>) -> Vec<Vec<S>> {
        let n = gram.rank();
        let mut out = Vec::with_capacity(self.letters.len());
        for (k, &letter) in self.letters.iter().enumerate() {
            let mut v = vec![S::zero(); n];
            v[letter] = S::one();
            for &s in self.letters[..k].iter().rev() {
                v = reflect(&v, s, gram);
            }
            out.push(v);
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| format!("s{}", l + 1)).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// `s(v) = v - 2 B(v, a_s) a_s`; only coordinate `s` changes.
pub fn reflect<S: Scalar>(v: &[S], s: usize, gram: &GramMatrix<S>) -> Vec<S> {
    let b = gram.bilinear_simple(v, s);
    let mut out = v.to_vec();
    let two = S::from_int(2);
    out[s] = out[s].sub(&two.mul(&b));
    out
}

/// Lexicographic comparison of coefficient vectors.
pub fn cmp_coeff_vecs<S: Scalar>(a: &[S], b: &[S]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.compare(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Tolerance-free lexicographic comparison, safe as a sort key.
pub fn cmp_coeff_vecs_total<S: Scalar>(a: &[S], b: &[S]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.total_compare(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Depth of an arbitrary positive-root vector, computed by descent: each
/// simple reflection with positive form value against the root lowers
/// the depth by one. Returns None when the vector is not a positive root
/// of the system.
pub fn depth_of_vector<S: Scalar>(v: &[S], gram: &GramMatrix<S>) -> Option<u32> {
    let n = gram.rank();
    let mut v = v.to_vec();
    for depth in 0..10_000u32 {
        let mut simple = None;
        let mut nonzero = 0;
        for (i, c) in v.iter().enumerate() {
            match c.sign() {
                Sign::Zero => {}
                Sign::Positive => {
                    nonzero += 1;
                    if c.compare(&S::one()) == Ordering::Equal {
                        simple = Some(i);
                    }
                }
                Sign::Negative => return None,
            }
        }
        if nonzero == 1 {
            if simple.is_some() {
                return Some(depth);
            }
            return None;
        }
        let s = (0..n).find(|&s| gram.bilinear_simple(&v, s).is_positive())?;
        v = reflect(&v, s, gram);
    }
    None
}

fn coeff_key<S: Scalar>(coeffs: &[S]) -> Vec<S::Key> {
    coeffs.iter().map(|c| c.key()).collect()
}

/// Sign of a root vector: positive, negative, or zero/mixed (which the
/// root system never produces; mixed signals numeric breakdown).
fn vector_sign<S: Scalar>(v: &[S]) -> Option<Sign> {
    let mut pos = false;
    let mut neg = false;
    for c in v {
        match c.sign() {
            Sign::Positive => pos = true,
            Sign::Negative => neg = true,
            Sign::Zero => {}
        }
    }
    match (pos, neg) {
        (true, false) => Some(Sign::Positive),
        (false, true) => Some(Sign::Negative),
        (false, false) => Some(Sign::Zero),
        (true, true) => None,
    }
}

/// All positive roots of depth <= the bound, deduplicated, with parent
/// links. Immutable once generated.
#[derive(Debug)]
pub struct RootSlice<S: Scalar> {
    matrix: CoxeterMatrix,
    gram: GramMatrix<S>,
    depth_bound: u32,
    roots: Vec<Root<S>>,
    index: HashMap<Vec<S::Key>, RootId>,
    /// Depth at which the frontier emptied, when the system is finite.
    saturated_at: Option<u32>,
    cap: usize,
    max_sum: S,
}

impl<S: Scalar> RootSlice<S> {
    /// BFS from the simple roots. At each level every simple reflection is
    /// applied to the frontier; new positive roots are kept. Ids are
    /// assigned per level in lexicographic coefficient order.
    pub fn generate(matrix: &CoxeterMatrix, depth_bound: u32, cap: usize) -> Result<Self> {
        let n = matrix.rank();
        let gram = matrix.gram::<S>()?;
        let mut slice = RootSlice {
            matrix: matrix.clone(),
            gram,
            depth_bound,
            roots: Vec::new(),
            index: HashMap::new(),
            saturated_at: None,
            cap,
            max_sum: S::zero(),
        };

        let mut simples: Vec<Vec<S>> = (0..n)
            .map(|i| {
                let mut v = vec![S::zero(); n];
                v[i] = S::one();
                v
            })
            .collect();
        simples.sort_by(|a, b| cmp_coeff_vecs(a, b));
        for coeffs in simples {
            slice.push_root(Root { coeffs, depth: 0, parent: None }, cap)?;
        }

        let mut frontier: Vec<RootId> = (0..slice.roots.len() as u32).map(RootId).collect();
        for depth in 1..=depth_bound {
            let mut fresh: Vec<Root<S>> = Vec::new();
            let mut seen: HashMap<Vec<S::Key>, usize> = HashMap::new();
            for &id in &frontier {
                for s in 0..n {
                    let image = reflect(&slice.roots[id.idx()].coeffs, s, &slice.gram);
                    match vector_sign(&image) {
                        Some(Sign::Positive) => {}
                        Some(Sign::Negative) => continue,
                        _ => {
                            return Err(Error::Parse {
                                detail: format!(
                                    "reflection produced a mixed-sign vector at depth {depth}; \
                                     numeric breakdown"
                                ),
                            })
                        }
                    }
                    let key = coeff_key(&image);
                    if slice.index.contains_key(&key) || seen.contains_key(&key) {
                        continue;
                    }
                    seen.insert(key, fresh.len());
                    fresh.push(Root { coeffs: image, depth, parent: Some((id, s)) });
                }
            }
            if fresh.is_empty() {
                slice.saturated_at = Some(depth - 1);
                break;
            }
            fresh.sort_by(|a, b| cmp_coeff_vecs(&a.coeffs, &b.coeffs));
            let start = slice.roots.len() as u32;
            for root in fresh {
                slice.push_root(root, cap)?;
            }
            frontier = (start..slice.roots.len() as u32).map(RootId).collect();
        }
        Ok(slice)
    }

    /// Generates until the system saturates; errors with
    /// [`Error::NotFiniteType`] if the frontier is still alive at
    /// `max_depth`.
    pub fn generate_saturated(matrix: &CoxeterMatrix, max_depth: u32, cap: usize) -> Result<Self> {
        let slice = Self::generate(matrix, max_depth, cap)?;
        if slice.saturated_at.is_none() {
            return Err(Error::NotFiniteType { depth_tried: max_depth });
        }
        Ok(slice)
    }

    fn push_root(&mut self, root: Root<S>, cap: usize) -> Result<()> {
        if self.roots.len() + 1 > cap {
            return Err(Error::SliceTooLarge { count: self.roots.len() + 1, cap });
        }
        let id = RootId(self.roots.len() as u32);
        self.index.insert(coeff_key(&root.coeffs), id);
        let sum = coeff_sum(&root.coeffs);
        if sum.compare(&self.max_sum) == Ordering::Greater {
            self.max_sum = sum;
        }
        self.roots.push(root);
        Ok(())
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn gram(&self) -> &GramMatrix<S> {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn depth_bound(&self) -> u32 {
        self.depth_bound
    }

    pub fn saturated_at(&self) -> Option<u32> {
        self.saturated_at
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Largest coefficient sum among stored roots; a growth bound for
    /// ladder enumerations inside the slice.
    pub fn max_coeff_sum(&self) -> &S {
        &self.max_sum
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, id: RootId) -> &Root<S> {
        &self.roots[id.idx()]
    }

    pub fn coeffs(&self, id: RootId) -> &[S] {
        &self.roots[id.idx()].coeffs
    }

    pub fn ids(&self) -> impl Iterator<Item = RootId> + '_ {
        (0..self.roots.len() as u32).map(RootId)
    }

    /// Id of the root with the given coefficients, if stored.
    pub fn lookup(&self, coeffs: &[S]) -> Option<RootId> {
        self.index.get(&coeff_key(coeffs)).copied()
    }

    /// Id of the simple root `a_s`.
    pub fn simple_root(&self, s: usize) -> RootId {
        let mut v = vec![S::zero(); self.rank()];
        v[s] = S::one();
        self.lookup(&v).expect("simple roots are always stored")
    }

    /// If the root is simple, its generator index.
    pub fn as_simple(&self, id: RootId) -> Option<usize> {
        let coeffs = self.coeffs(id);
        let mut found = None;
        for (i, c) in coeffs.iter().enumerate() {
            match c.sign() {
                Sign::Zero => {}
                Sign::Positive if c.compare(&S::one()) == Ordering::Equal && found.is_none() => {
                    found = Some(i)
                }
                _ => return None,
            }
        }
        found
    }

    pub fn bilinear(&self, a: RootId, b: RootId) -> S {
        self.gram.bilinear(self.coeffs(a), self.coeffs(b))
    }

    /// The palindromic word for the reflection in this root, obtained by
    /// climbing parent links down to a simple root.
    pub fn root_to_reflection(&self, id: RootId) -> Word {
        let mut ups = Vec::new();
        let mut cur = id;
        while let Some((parent, s)) = self.roots[cur.idx()].parent {
            ups.push(s);
            cur = parent;
        }
        let seed = self
            .as_simple(cur)
            .expect("parent chains terminate at a simple root");
        let mut letters = ups.clone();
        letters.push(seed);
        letters.extend(ups.iter().rev());
        Word { letters, reduced: true }
    }

    /// Applies the reflection in root `r` to a coefficient vector:
    /// `v - 2 B(v, r) r` (the root has norm 1).
    pub fn reflect_by_root(&self, v: &[S], r: RootId) -> Vec<S> {
        let rv = self.coeffs(r);
        let b = self.gram.bilinear(v, rv);
        let two_b = S::from_int(2).mul(&b);
        v.iter()
            .zip(rv.iter())
            .map(|(vi, ri)| vi.sub(&two_b.mul(ri)))
            .collect()
    }
}
