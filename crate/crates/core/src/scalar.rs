//! Numeric traits shared by the exact and floating-point code paths.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::Neg;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Float, FloatConst, FromPrimitive, Num, One, ToPrimitive, Zero};

/// Coefficient field for elements of Q(Φ).
///
/// `BigRational` gives exact arithmetic; `f64` is accepted for fast
/// approximate sweeps where exactness is not needed.
pub trait FieldScalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> + FromPrimitive + ToPrimitive {}

impl<T> FieldScalar for T where T: Clone + PartialEq + Debug + Num + Neg<Output = Self> + FromPrimitive + ToPrimitive {}

/// Integer coefficient ring for cyclotomic lattice points.
///
/// Machine integers overflow-check every operation; `BigInt` never overflows.
pub trait RingScalar:
    Clone
    + Debug
    + Eq
    + Ord
    + Hash
    + Zero
    + One
    + Neg<Output = Self>
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
{
}

impl<T> RingScalar for T where
    T: Clone
        + Debug
        + Eq
        + Ord
        + Hash
        + Zero
        + One
        + Neg<Output = Self>
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
{
}

/// Real type that embeddings evaluate into (f32 or f64).
pub trait Real: Float + FloatConst + FromPrimitive + Debug {
    fn from_f64_lossy(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).unwrap_or_else(Self::nan)
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub(crate) fn to_real<T: ToPrimitive, F: Real>(x: &T) -> F {
    F::from_f64_lossy(x.to_f64().unwrap_or(f64::NAN))
}
