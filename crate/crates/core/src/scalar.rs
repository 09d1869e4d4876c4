//! Scalar abstractions shared by the exact and floating-point code paths.
//!
//! Matrix builders and the exact algorithms are written against [`Scalar`],
//! a commutative ring with identity. The eigensolver only needs
//! [`num_traits::Float`], so it runs on both `f32` and `f64`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};
use serde::Serialize;

/// Coarse classification of a matrix entry type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Integer,
    Rational,
    Float,
}

/// Commutative ring element usable as a matrix entry.
pub trait Scalar: Num + Clone + Debug + PartialEq + Send + Sync {
    const KIND: ScalarKind;

    fn from_i64(v: i64) -> Self;

    /// Nearest binary64 value; used for numeric cross-checks.
    fn as_f64(&self) -> f64;

    /// Exact integer value, when the element is one.
    fn to_integer(&self) -> Option<BigInt>;
}

macro_rules! scalar_prim {
    ($kind:expr, $int:expr; $($t:ty),*) => {$(
        impl Scalar for $t {
            const KIND: ScalarKind = $kind;

            #[inline]
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            #[inline]
            fn as_f64(&self) -> f64 {
                *self as f64
            }

            #[inline]
            fn to_integer(&self) -> Option<BigInt> {
                $int(*self)
            }
        }
    )*};
}

scalar_prim!(ScalarKind::Integer, |v| Some(BigInt::from(v)); i64, i128);
scalar_prim!(ScalarKind::Float, |_| None; f32, f64);

impl Scalar for BigInt {
    const KIND: ScalarKind = ScalarKind::Integer;

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn as_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_integer(&self) -> Option<BigInt> {
        Some(self.clone())
    }
}

impl<T> Scalar for Ratio<T>
where
    T: num_integer::Integer + Clone + Debug + Signed + Send + Sync + From<i64> + num_traits::ToPrimitive + num_bigint::ToBigInt,
{
    const KIND: ScalarKind = ScalarKind::Rational;

    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from(v))
    }

    fn as_f64(&self) -> f64 {
        let (n, d) = (self.numer().to_f64(), self.denom().to_f64());
        match (n, d) {
            (Some(n), Some(d)) => n / d,
            _ => f64::NAN,
        }
    }

    fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer().to_bigint()).flatten()
    }
}

/// Exact field used by rational matrices.
pub type Rational = BigRational;
