//! Scalar fields for the kernel: exact rationals (default) and `f64` with a
//! global tolerance used in rank decisions.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Default tolerance for float-mode rank decisions.
pub const DEFAULT_EPSILON: f64 = 1e-9;

static EPSILON_BITS: AtomicU64 = AtomicU64::new(0);

/// Set the global float-mode tolerance. Exact-mode computations ignore it.
pub fn set_epsilon(eps: f64) {
    assert!(eps > 0.0, "tolerance must be positive");
    EPSILON_BITS.store(eps.to_bits(), Ordering::SeqCst);
}

/// Current float-mode tolerance.
pub fn epsilon() -> f64 {
    let bits = EPSILON_BITS.load(Ordering::SeqCst);
    if bits == 0 {
        DEFAULT_EPSILON
    } else {
        f64::from_bits(bits)
    }
}

/// Field scalar used throughout the kernel.
///
/// `EXACT` distinguishes the rational field (no tolerance anywhere) from the
/// float field, where `is_zero` consults the global tolerance. Only rank
/// decisions route through `is_zero`; plain arithmetic never does.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_fraction(num: i64, den: i64) -> Self;

    /// Zero test: exact equality for rationals, `|x| <= epsilon()` for floats.
    fn is_zero(&self) -> bool;

    /// Magnitude used for pivot selection and residual reporting.
    fn magnitude(&self) -> f64;

    fn inv(&self) -> Option<Self>;

    /// Parse from the serialized form (`"p"` or `"p/q"` for rationals,
    /// decimal notation for floats).
    fn parse(text: &str) -> Result<Self, Error>;
}

/// Exact rational scalar.
pub type Rat = BigRational;

/// Convenience constructor for rational literals in tests and examples.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as One>::one()
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(<BigRational as One>::one() / self.clone())
        }
    }

    fn parse(text: &str) -> Result<Self, Error> {
        BigRational::from_str(text.trim())
            .map_err(|e| Error::Parse(format!("bad fraction {text:?}: {e}")))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn is_zero(&self) -> bool {
        self.abs() <= epsilon()
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn inv(&self) -> Option<Self> {
        if self.abs() <= epsilon() {
            None
        } else {
            Some(1.0 / self)
        }
    }

    fn parse(text: &str) -> Result<Self, Error> {
        let t = text.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: f64 = p
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad float {text:?}: {e}")))?;
            let q: f64 = q
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad float {text:?}: {e}")))?;
            Ok(p / q)
        } else {
            t.parse()
                .map_err(|e| Error::Parse(format!("bad float {text:?}: {e}")))
        }
    }
}

/// Serialize a rational as the canonical `"p/q"` (or `"p"`) string.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Signed magnitude helper used in reports.
pub fn residual<S: Scalar>(x: &S) -> f64 {
    x.magnitude()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        let x = rat(-7, 3);
        let s = rat_to_string(&x);
        assert_eq!(s, "-7/3");
        assert_eq!(<Rat as Scalar>::parse(&s).unwrap(), x);
        assert_eq!(rat_to_string(&rat(4, 2)), "2");
    }

    #[test]
    fn float_zero_uses_tolerance() {
        assert!(Scalar::is_zero(&1e-12));
        assert!(!Scalar::is_zero(&1e-3));
    }
}
