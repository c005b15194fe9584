//! The ring Z[ζ] for ζ = e^{iπ/14}, a primitive 28th root of unity.
//!
//! Elements are integer combinations of ζ⁰..ζ¹¹, reduced with
//! ζ¹² = ζ¹⁰ − ζ⁸ + ζ⁶ − ζ⁴ + ζ² − 1. Every tile vertex of every
//! generation is one of these, so geometry never drifts.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phi::PhiNum;
use crate::scalar::{to_real, Real, RingScalar};
use crate::tile::TileType;

pub const DEGREE: usize = 12;
pub const ORDER: u8 = 28;

/// Coefficients of ζᵏ for k = 0..27 in the reduced basis.
pub const ZETA_POWERS: [[i64; DEGREE]; ORDER as usize] = build_zeta_table();

const fn build_zeta_table() -> [[i64; DEGREE]; ORDER as usize] {
    let mut table = [[0i64; DEGREE]; ORDER as usize];
    table[0][0] = 1;
    let mut k = 1;
    while k < ORDER as usize {
        let prev = table[k - 1];
        let mut next = [0i64; DEGREE];
        let mut j = 0;
        while j + 1 < DEGREE {
            next[j + 1] = prev[j];
            j += 1;
        }
        let top = prev[DEGREE - 1];
        // top·ζ¹² folded back into lower degrees
        next[10] += top;
        next[8] -= top;
        next[6] += top;
        next[4] -= top;
        next[2] += top;
        next[0] -= top;
        table[k] = next;
        k += 1;
    }
    table
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclo<T> {
    c: [T; DEGREE],
}

impl<T: fmt::Debug> fmt::Debug for Cyclo<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo{:?}", self.c)
    }
}

impl<T: RingScalar> Cyclo<T> {
    pub fn from_coeffs(c: [T; DEGREE]) -> Self {
        Cyclo { c }
    }

    pub fn coeffs(&self) -> &[T; DEGREE] {
        &self.c
    }

    pub fn zero() -> Self {
        Cyclo { c: std::array::from_fn(|_| T::zero()) }
    }

    pub fn one() -> Self {
        Self::zeta_pow(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// ζᵏ for any integer k (taken mod 28).
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(ORDER as i64) as usize;
        Cyclo { c: std::array::from_fn(|i| T::from_i64(ZETA_POWERS[k][i]).expect("small constant")) }
    }

    pub fn from_i64(n: i64) -> Self {
        let mut z = Self::zero();
        z.c[0] = T::from_i64(n).expect("integer fits the coefficient ring");
        z
    }

    /// Γ = ζ + ζ⁻¹ = 2cos(π/14), the long diagonal of the A rhomb.
    pub fn gamma() -> Self {
        &Self::zeta_pow(1) + &Self::zeta_pow(-1)
    }

    /// Φ = ζ² + ζ⁻² = 2cos(π/7).
    pub fn phi() -> Self {
        &Self::zeta_pow(2) + &Self::zeta_pow(-2)
    }

    /// Image of an integral element of Z[Φ].
    pub fn from_phi_int(p: &T, q: &T, r: &T) -> Result<Self> {
        let phi = Self::phi();
        let phi2 = phi.checked_mul(&phi)?;
        Self::scalar(p).checked_add(&phi.checked_scale(q)?)?.checked_add(&phi2.checked_scale(r)?)
    }

    fn scalar(x: &T) -> Self {
        let mut z = Self::zero();
        z.c[0] = x.clone();
        z
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let mut out = self.c.clone();
        for (o, r) in out.iter_mut().zip(rhs.c.iter()) {
            *o = o.checked_add(r).ok_or(Error::Overflow)?;
        }
        Ok(Cyclo { c: out })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        let mut out = self.c.clone();
        for (o, r) in out.iter_mut().zip(rhs.c.iter()) {
            *o = o.checked_sub(r).ok_or(Error::Overflow)?;
        }
        Ok(Cyclo { c: out })
    }

    pub fn checked_scale(&self, k: &T) -> Result<Self> {
        let mut out = self.c.clone();
        for o in out.iter_mut() {
            *o = o.checked_mul(k).ok_or(Error::Overflow)?;
        }
        Ok(Cyclo { c: out })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let mut wide: Vec<T> = vec![T::zero(); 2 * DEGREE - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a.checked_mul(b).ok_or(Error::Overflow)?;
                wide[i + j] = wide[i + j].checked_add(&prod).ok_or(Error::Overflow)?;
            }
        }
        for k in (DEGREE..wide.len()).rev() {
            let top = std::mem::replace(&mut wide[k], T::zero());
            if top.is_zero() {
                continue;
            }
            for (offset, plus) in [(2, true), (4, false), (6, true), (8, false), (10, true), (12, false)] {
                let slot = &mut wide[k - offset];
                *slot = if plus { slot.checked_add(&top) } else { slot.checked_sub(&top) }.ok_or(Error::Overflow)?;
            }
        }
        wide.truncate(DEGREE);
        let c: [T; DEGREE] = wide.try_into().expect("length is DEGREE");
        Ok(Cyclo { c })
    }

    /// Multiplication by ζᵏ.
    pub fn mul_zeta_pow(&self, k: i64) -> Result<Self> {
        if k.rem_euclid(ORDER as i64) == 0 {
            return Ok(self.clone());
        }
        self.checked_mul(&Self::zeta_pow(k))
    }

    /// Complex conjugate: ζᵏ ↦ ζ⁻ᵏ.
    pub fn conj(&self) -> Result<Self> {
        let mut out = Self::zero();
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            out = out.checked_add(&Self::zeta_pow(-(k as i64)).checked_scale(a)?)?;
        }
        Ok(out)
    }

    /// Multiplication by Γ; scales lengths by 2cos(π/14) and keeps angles.
    pub fn inflate_point(&self) -> Result<Self> {
        self.checked_mul(&Self::gamma())
    }

    pub fn embed2d<F: Real>(&self) -> (F, F) {
        let step = F::PI() / F::from_f64_lossy(ORDER as f64 / 2.0);
        let mut x = F::zero();
        let mut y = F::zero();
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a: F = to_real(a);
            let ang = step * F::from_f64_lossy(k as f64);
            x = x + a * ang.cos();
            y = y + a * ang.sin();
        }
        (x, y)
    }

    pub fn to_big(&self) -> Cyclo<BigInt> {
        Cyclo { c: std::array::from_fn(|i| BigInt::from(self.c[i].to_i128().expect("machine integer"))) }
    }

    /// Narrows to i64 coefficients, failing if any coefficient does not fit.
    pub fn to_i64(&self) -> Result<Cyclo<i64>> {
        let mut c = [0i64; DEGREE];
        for (o, a) in c.iter_mut().zip(self.c.iter()) {
            *o = a.to_i64().ok_or(Error::Overflow)?;
        }
        Ok(Cyclo { c })
    }
}

impl Cyclo<i64> {
    pub fn as_array(&self) -> [i64; DEGREE] {
        self.c
    }
}

macro_rules! panicking_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<T: RingScalar> $tr for &Cyclo<T> {
            type Output = Cyclo<T>;
            fn $m(self, rhs: &Cyclo<T>) -> Cyclo<T> {
                self.$checked(rhs).expect("cyclotomic coefficient overflow")
            }
        }
        impl<T: RingScalar> $tr for Cyclo<T> {
            type Output = Cyclo<T>;
            fn $m(self, rhs: Cyclo<T>) -> Cyclo<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl<T: RingScalar> Neg for &Cyclo<T> {
    type Output = Cyclo<T>;
    fn neg(self) -> Cyclo<T> {
        Cyclo { c: std::array::from_fn(|i| -self.c[i].clone()) }
    }
}

impl<T: RingScalar + Serialize> Serialize for Cyclo<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.c.serialize(s)
    }
}

impl<'de, T: RingScalar + Deserialize<'de>> Deserialize<'de> for Cyclo<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<T> = Vec::deserialize(d)?;
        let len = v.len();
        let c: [T; DEGREE] = v.try_into().map_err(|_| serde::de::Error::invalid_length(len, &"12 coefficients"))?;
        Ok(Cyclo { c })
    }
}

/// Orientation-preserving or -reversing isometry z ↦ ζ^rot·(z or z̄) + shift.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct RigidMotion<T> {
    pub rot: u8,
    pub refl: bool,
    pub shift: Cyclo<T>,
}

impl<T: RingScalar> RigidMotion<T> {
    pub fn identity() -> Self {
        Self::new(0, false, Cyclo::zero())
    }

    pub fn new(rot: i64, refl: bool, shift: Cyclo<T>) -> Self {
        RigidMotion { rot: rot.rem_euclid(ORDER as i64) as u8, refl, shift }
    }

    pub fn translation(shift: Cyclo<T>) -> Self {
        Self::new(0, false, shift)
    }

    pub fn apply(&self, z: &Cyclo<T>) -> Result<Cyclo<T>> {
        let base = if self.refl { z.conj()? } else { z.clone() };
        base.mul_zeta_pow(self.rot as i64)?.checked_add(&self.shift)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let moved_shift = self.apply(&inner.shift)?;
        let rot = if self.refl { self.rot as i64 - inner.rot as i64 } else { self.rot as i64 + inner.rot as i64 };
        Ok(Self::new(rot, self.refl != inner.refl, moved_shift))
    }

    pub fn inverse(&self) -> Result<Self> {
        let r = self.rot as i64;
        if self.refl {
            let shift = -&self.shift.conj()?.mul_zeta_pow(r)?;
            Ok(Self::new(r, true, shift))
        } else {
            let shift = -&self.shift.mul_zeta_pow(-r)?;
            Ok(Self::new(-r, false, shift))
        }
    }

    /// Same motion with its translation scaled by `k` (used when a parent
    /// frame is inflated).
    pub fn with_scaled_shift(&self, k: &Cyclo<T>) -> Result<Self> {
        Ok(Self::new(self.rot as i64, self.refl, self.shift.checked_mul(k)?))
    }
}

/// Area of the unit rhomb of type `t`, with the A rhomb as the unit.
pub fn rhomb_area_in_a_units(t: TileType) -> PhiNum<BigRational> {
    match t {
        TileType::A => PhiNum::from_ints(1, 0, 0),
        TileType::B => PhiNum::from_ints(0, 1, 0),
        TileType::C => PhiNum::from_ints(-1, 0, 1),
    }
}

/// Twice the signed shoelace sum of a lattice polygon, times 2i:
/// Σ (conj(a)·b − a·conj(b)) = 4i·area.
pub fn shoelace_4i<T: RingScalar>(poly: &[Cyclo<T>]) -> Result<Cyclo<T>> {
    let mut acc = Cyclo::zero();
    for (i, a) in poly.iter().enumerate() {
        let b = &poly[(i + 1) % poly.len()];
        let t1 = a.conj()?.checked_mul(b)?;
        let t2 = a.checked_mul(&b.conj()?)?;
        acc = acc.checked_add(&t1.checked_sub(&t2)?)?;
    }
    Ok(acc)
}

/// 4i times the area of the unit A rhomb: 4i·sin(π/7) = 2(ζ² − ζ⁻²).
pub fn a_rhomb_area_4i<T: RingScalar>() -> Cyclo<T> {
    let d = &Cyclo::<T>::zeta_pow(2) - &Cyclo::<T>::zeta_pow(-2);
    &d + &d
}

/// Checks exactly that `area_4i` (as produced by [`shoelace_4i`]) equals
/// `expected` A-units of area.
pub fn area_4i_matches(area_4i: &Cyclo<BigInt>, expected: &PhiNum<BigRational>) -> bool {
    let denom = expected.coeffs().iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> =
        expected.coeffs().iter().map(|x| (x * BigRational::from_integer(denom.clone())).to_integer()).collect();
    let Ok(scaled) = Cyclo::<BigInt>::from_phi_int(&ints[0], &ints[1], &ints[2]) else {
        return false;
    };
    let Ok(lhs) = area_4i.checked_scale(&denom) else {
        return false;
    };
    let Ok(rhs) = scaled.checked_mul(&a_rhomb_area_4i()) else {
        return false;
    };
    lhs == rhs
}

pub type CycloInt = Cyclo<i64>;
pub type CycloBig = Cyclo<BigInt>;

#[cfg(test)]
mod tests {
    use super::*;

    fn embed(z: &CycloInt) -> (f64, f64) {
        z.embed2d::<f64>()
    }

    #[test]
    fn zeta_six_squared() {
        let z6 = CycloInt::zeta_pow(6);
        let mut want = [0i64; 12];
        want[10] = 1;
        want[8] = -1;
        want[6] = 1;
        want[4] = -1;
        want[2] = 1;
        want[0] = -1;
        assert_eq!((&z6 * &z6).as_array(), want);
    }

    #[test]
    fn table_wraps() {
        assert_eq!(CycloInt::zeta_pow(14), CycloInt::from_i64(-1));
        assert_eq!(CycloInt::zeta_pow(28), CycloInt::one());
        assert_eq!(&CycloInt::zeta_pow(13) * &CycloInt::zeta_pow(15), CycloInt::one());
    }

    #[test]
    fn gamma_embeds() {
        let (x, y) = embed(&CycloInt::gamma());
        assert!((x - 1.9499).abs() < 1e-4 && y.abs() < 1e-12);
        let g2 = &CycloInt::gamma() * &CycloInt::gamma();
        let phi_plus_2 = PhiNum::<BigRational>::from_ints(2, 1, 0).embed::<f64>();
        assert!((embed(&g2).0 - phi_plus_2).abs() < 1e-12);
        assert_eq!(g2, CycloInt::from_phi_int(&2, &1, &0).unwrap());
    }

    #[test]
    fn inflate_twice() {
        let z = CycloInt::one().inflate_point().unwrap().inflate_point().unwrap();
        let (x, y) = embed(&z);
        assert!(((x * x + y * y).sqrt() - 3.8019).abs() < 1e-4);
        assert_eq!(CycloInt::zero().inflate_point().unwrap(), CycloInt::zero());
    }

    #[test]
    fn motion_group() {
        let m = RigidMotion::new(5, true, CycloInt::zeta_pow(3));
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv).unwrap(), RigidMotion::identity());
        assert_eq!(inv.compose(&m).unwrap(), RigidMotion::identity());
        let full = RigidMotion::<i64>::new(28, false, CycloInt::zero());
        assert_eq!(full, RigidMotion::identity());
    }

    #[test]
    fn areas_by_shoelace() {
        for t in TileType::ALL {
            let corners = t.local_corners::<i64>();
            let s = shoelace_4i(&corners).unwrap().to_big();
            assert!(area_4i_matches(&s, &rhomb_area_in_a_units(t)), "{t:?}");
        }
    }

    #[test]
    fn serde_array_form() {
        let z = CycloInt::gamma();
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, "[0,2,0,-1,0,1,0,-1,0,1,0,-1]");
        assert_eq!(serde_json::from_str::<CycloInt>(&s).unwrap(), z);
        assert!(serde_json::from_str::<CycloInt>("[1,2]").is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = CycloInt::from_i64(i64::MAX);
        assert!(matches!(big.checked_add(&CycloInt::one()), Err(Error::Overflow)));
        assert_eq!(big.to_big().checked_add(&CycloBig::one()).unwrap().coeffs()[0], BigInt::from(i64::MAX) + 1);
    }
}
