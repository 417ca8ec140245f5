//! Scalar arithmetic for root coordinates and form values.
//!
//! Two modes are supported: exact arbitrary-precision rationals ([`Rat`])
//! and tolerance-aware doubles ([`Appx`]). A slice uses one mode
//! throughout; exact mode is only legal when every Gram entry is rational
//! (all finite bond labels in {1,2,3} plus rational weights on infinite
//! bonds), which covers the universal, simply-laced and small affine
//! systems this toolkit certifies.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Tolerance used by approximate mode for sign and equality decisions.
pub const APPROX_EPS: f64 = 1e-9;

/// Decimal digits kept when canonicalizing approximate values for dedup keys.
const KEY_SCALE: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Exact,
    Approx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Field operations plus the tolerance/canonicalization hooks the slice
/// generator and the certifiers need.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Canonical dedup key. Exact values key on themselves; approximate
    /// values key on a fixed-precision rounding.
    type Key: Hash + Eq + Ord + Clone + fmt::Debug + Send + Sync;

    const MODE: ScalarMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_big_ratio(r: &BigRational) -> Self;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Total comparison; approximate mode treats values within
    /// [`APPROX_EPS`] as equal.
    fn compare(&self, other: &Self) -> Ordering;

    /// Tolerance-free total order, used for sorting. Exact mode has no
    /// difference; approximate mode compares raw doubles so that sorts
    /// stay strict weak orders even below the tolerance.
    fn total_compare(&self, other: &Self) -> Ordering;

    fn sign(&self) -> Sign;

    fn key(&self) -> Self::Key;

    /// `-cos(pi/m)` when representable in this mode.
    fn neg_cos_pi_over(m: u32) -> Option<Self>;

    /// Square root when it stays in the scalar domain: perfect squares of
    /// rationals in exact mode, any nonnegative value in approximate mode.
    fn sqrt_in_domain(&self) -> Option<Self>;

    fn to_f64(&self) -> f64;

    fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }
    fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }
    fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }
}

/// Exact arbitrary-precision rational.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub BigRational);

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl Scalar for Rat {
    type Key = BigRational;
    const MODE: ScalarMode = ScalarMode::Exact;

    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rat::new(num, den)
    }
    fn from_big_ratio(r: &BigRational) -> Self {
        Rat(r.clone())
    }

    fn add(&self, other: &Self) -> Self {
        Rat(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rat(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rat(&self.0 * &other.0)
    }
    fn div(&self, other: &Self) -> Self {
        Rat(&self.0 / &other.0)
    }
    fn neg(&self) -> Self {
        Rat(-&self.0)
    }

    fn compare(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }

    fn total_compare(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }

    fn sign(&self) -> Sign {
        if self.0.is_zero() {
            Sign::Zero
        } else if self.0.is_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    fn key(&self) -> BigRational {
        self.0.clone()
    }

    fn neg_cos_pi_over(m: u32) -> Option<Self> {
        // Rational values of -cos(pi/m) exist only for m in {1, 2, 3}.
        match m {
            1 => Some(Rat::from_int(1)),
            2 => Some(Rat::zero()),
            3 => Some(Rat::new(-1, 2)),
            _ => None,
        }
    }

    fn sqrt_in_domain(&self) -> Option<Self> {
        if self.0.is_negative() {
            return None;
        }
        let num = self.0.numer();
        let den = self.0.denom();
        let rn = num.sqrt();
        let rd = den.sqrt();
        if &(&rn * &rn) == num && &(&rd * &rd) == den {
            Some(Rat(BigRational::new(rn, rd)))
        } else {
            None
        }
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

/// Double-precision value compared with a global tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Appx(pub f64);

impl fmt::Display for Appx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Scalar for Appx {
    type Key = i128;
    const MODE: ScalarMode = ScalarMode::Approx;

    fn zero() -> Self {
        Appx(0.0)
    }
    fn one() -> Self {
        Appx(1.0)
    }
    fn from_int(n: i64) -> Self {
        Appx(n as f64)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Appx(num as f64 / den as f64)
    }
    fn from_big_ratio(r: &BigRational) -> Self {
        Appx(r.to_f64().unwrap_or(f64::NAN))
    }

    fn add(&self, other: &Self) -> Self {
        Appx(self.0 + other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Appx(self.0 - other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Appx(self.0 * other.0)
    }
    fn div(&self, other: &Self) -> Self {
        Appx(self.0 / other.0)
    }
    fn neg(&self) -> Self {
        Appx(-self.0)
    }

    fn compare(&self, other: &Self) -> Ordering {
        let d = self.0 - other.0;
        if d.abs() < APPROX_EPS {
            Ordering::Equal
        } else if d < 0.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    fn total_compare(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }

    fn sign(&self) -> Sign {
        if self.0.abs() < APPROX_EPS {
            Sign::Zero
        } else if self.0 < 0.0 {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    fn key(&self) -> i128 {
        let scaled = self.0 * KEY_SCALE;
        debug_assert!(scaled.abs() < i128::MAX as f64);
        scaled.round() as i128
    }

    fn neg_cos_pi_over(m: u32) -> Option<Self> {
        Some(Appx(-(std::f64::consts::PI / m as f64).cos()))
    }

    fn sqrt_in_domain(&self) -> Option<Self> {
        if self.0 < -APPROX_EPS {
            None
        } else {
            Some(Appx(self.0.max(0.0).sqrt()))
        }
    }

    fn to_f64(&self) -> f64 {
        self.0
    }
}

/// Parses "p/q", integers, and plain decimals ("0.05" becomes 1/20).
pub fn parse_scalar<S: Scalar>(text: &str) -> Result<S> {
    let text = text.trim();
    let bad = |detail: String| Error::Parse { detail };
    if let Some((p, q)) = text.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad(format!("bad numerator in {text:?}")))?;
        let q: i64 = q.trim().parse().map_err(|_| bad(format!("bad denominator in {text:?}")))?;
        if q == 0 {
            return Err(bad(format!("zero denominator in {text:?}")));
        }
        return Ok(S::from_ratio(p, q));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| bad(format!("bad decimal in {text:?}")))?
        };
        let digits = frac.len() as u32;
        if digits > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad(format!("bad decimal in {text:?}")));
        }
        let frac: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad(format!("bad decimal in {text:?}")))?
        };
        let den = 10i64.pow(digits);
        let num = int.abs() * den + frac;
        let num = if negative { -num } else { num };
        return Ok(S::from_ratio(num, den));
    }
    let n: i64 = text.parse().map_err(|_| bad(format!("bad scalar {text:?}")))?;
    Ok(S::from_int(n))
}

/// Sum of a coefficient vector.
pub fn coeff_sum<S: Scalar>(coeffs: &[S]) -> S {
    coeffs.iter().fold(S::zero(), |acc, c| acc.add(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_display_is_p_over_q() {
        assert_eq!(Rat::new(2, 3).to_string(), "2/3");
        assert_eq!(Rat::new(4, 2).to_string(), "2");
        assert_eq!(Rat::new(-1, 2).to_string(), "-1/2");
    }

    #[test]
    fn exact_cos_values() {
        assert_eq!(Rat::neg_cos_pi_over(1), Some(Rat::from_int(1)));
        assert_eq!(Rat::neg_cos_pi_over(2), Some(Rat::zero()));
        assert_eq!(Rat::neg_cos_pi_over(3), Some(Rat::new(-1, 2)));
        assert_eq!(Rat::neg_cos_pi_over(4), None);
        let c4 = Appx::neg_cos_pi_over(4).unwrap();
        assert!((c4.0 + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn perfect_square_sqrt() {
        assert_eq!(Rat::new(4, 9).sqrt_in_domain(), Some(Rat::new(2, 3)));
        assert_eq!(Rat::new(2, 1).sqrt_in_domain(), None);
        assert_eq!(Rat::new(-4, 9).sqrt_in_domain(), None);
        assert_eq!(Rat::zero().sqrt_in_domain(), Some(Rat::zero()));
    }

    #[test]
    fn approx_tolerance_comparisons() {
        let a = Appx(1.0);
        let b = Appx(1.0 + 1e-12);
        assert_eq!(a.compare(&b), Ordering::Equal);
        assert_eq!(Appx(0.5).compare(&Appx(0.25)), Ordering::Greater);
        assert_eq!(Appx(1e-12).sign(), Sign::Zero);
    }

    #[test]
    fn parse_scalar_forms() {
        let r: Rat = parse_scalar("2/3").unwrap();
        assert_eq!(r, Rat::new(2, 3));
        let r: Rat = parse_scalar("-3").unwrap();
        assert_eq!(r, Rat::from_int(-3));
        let r: Rat = parse_scalar("0.05").unwrap();
        assert_eq!(r, Rat::new(1, 20));
        let r: Rat = parse_scalar("-1.5").unwrap();
        assert_eq!(r, Rat::new(-3, 2));
        assert!(parse_scalar::<Rat>("1/0").is_err());
    }
}
