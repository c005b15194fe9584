//! Arithmetic in the cubic field Q(Φ), Φ = 2cos(π/7).
//!
//! Elements are stored in the power basis `p + qΦ + rΦ²`. Products are
//! reduced with the minimal polynomial Φ³ − Φ² − 2Φ + 1 = 0, so the
//! representation is canonical and equality is coefficient-wise.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{to_real, FieldScalar, Real};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PhiNum<T> {
    c: [T; 3],
}

/// Real value of Φ in the chosen embedding, 2cos(π/7).
pub fn phi_real<F: Real>() -> F {
    let two = F::one() + F::one();
    let seven = F::from_f64_lossy(7.0);
    two * (F::PI() / seven).cos()
}

impl<T: FieldScalar> PhiNum<T> {
    pub fn new(p: T, q: T, r: T) -> Self {
        PhiNum { c: [p, q, r] }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero())
    }

    /// The generator Φ itself.
    pub fn phi() -> Self {
        Self::new(T::zero(), T::one(), T::zero())
    }

    pub fn from_ints(p: i64, q: i64, r: i64) -> Self {
        let f = |x: i64| T::from_i64(x).expect("integer fits the coefficient field");
        Self::new(f(p), f(q), f(r))
    }

    pub fn from_scalar(x: T) -> Self {
        Self::new(x, T::zero(), T::zero())
    }

    pub fn coeffs(&self) -> &[T; 3] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.c[0].clone() * k.clone(), self.c[1].clone() * k.clone(), self.c[2].clone() * k.clone())
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            n >>= 1;
        }
        acc
    }

    /// Exact multiplicative inverse.
    ///
    /// Solves `x · y = 1` through the multiplication matrix of `x`; the
    /// cubic is irreducible, so that matrix is singular only for `x = 0`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let [p, q, r] = self.c.clone();
        let two = T::one() + T::one();
        let three = two.clone() + T::one();
        // Columns: x·1, x·Φ, x·Φ² in the power basis.
        let m = [
            [p.clone(), -r.clone(), -(q.clone() + r.clone())],
            [q.clone(), p.clone() + two.clone() * r.clone(), two * q.clone() + r.clone()],
            [r.clone(), q.clone() + r.clone(), p.clone() + q.clone() + three * r.clone()],
        ];
        let det = det3(&m);
        if det.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Cramer's rule against e1 = (1, 0, 0).
        let mut out = Vec::with_capacity(3);
        for col in 0..3 {
            let mut mc = m.clone();
            for (row, e) in mc.iter_mut().zip([T::one(), T::zero(), T::zero()]) {
                row[col] = e;
            }
            out.push(det3(&mc) / det.clone());
        }
        let r = out.pop().unwrap();
        let q = out.pop().unwrap();
        let p = out.pop().unwrap();
        Ok(Self::new(p, q, r))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Real value at Φ = 2cos(π/7).
    pub fn embed<F: Real>(&self) -> F {
        let phi = phi_real::<F>();
        let [p, q, r] = &self.c;
        to_real::<T, F>(p) + phi * (to_real::<T, F>(q) + phi * to_real::<T, F>(r))
    }
}

fn det3<T: FieldScalar>(m: &[[T; 3]; 3]) -> T {
    let e = |i: usize, j: usize| m[i][j].clone();
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

impl<T: FieldScalar> Add for &PhiNum<T> {
    type Output = PhiNum<T>;
    fn add(self, rhs: &PhiNum<T>) -> PhiNum<T> {
        PhiNum::new(
            self.c[0].clone() + rhs.c[0].clone(),
            self.c[1].clone() + rhs.c[1].clone(),
            self.c[2].clone() + rhs.c[2].clone(),
        )
    }
}

impl<T: FieldScalar> Sub for &PhiNum<T> {
    type Output = PhiNum<T>;
    fn sub(self, rhs: &PhiNum<T>) -> PhiNum<T> {
        PhiNum::new(
            self.c[0].clone() - rhs.c[0].clone(),
            self.c[1].clone() - rhs.c[1].clone(),
            self.c[2].clone() - rhs.c[2].clone(),
        )
    }
}

impl<T: FieldScalar> Mul for &PhiNum<T> {
    type Output = PhiNum<T>;
    fn mul(self, rhs: &PhiNum<T>) -> PhiNum<T> {
        let a = &self.c;
        let b = &rhs.c;
        let m = |i: usize, j: usize| a[i].clone() * b[j].clone();
        let d0 = m(0, 0);
        let d1 = m(0, 1) + m(1, 0);
        let d2 = m(0, 2) + m(1, 1) + m(2, 0);
        let d3 = m(1, 2) + m(2, 1);
        let d4 = m(2, 2);
        // Φ³ = Φ² + 2Φ − 1,  Φ⁴ = 3Φ² + Φ − 1
        let two = T::one() + T::one();
        let three = two.clone() + T::one();
        PhiNum::new(d0 - d3.clone() - d4.clone(), d1 + two * d3.clone() + d4.clone(), d2 + d3 + three * d4)
    }
}

impl<T: FieldScalar> Neg for &PhiNum<T> {
    type Output = PhiNum<T>;
    fn neg(self) -> PhiNum<T> {
        PhiNum::new(-self.c[0].clone(), -self.c[1].clone(), -self.c[2].clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: FieldScalar> $tr for PhiNum<T> {
            type Output = PhiNum<T>;
            fn $m(self, rhs: PhiNum<T>) -> PhiNum<T> {
                (&self).$m(&rhs)
            }
        }
        impl<T: FieldScalar> $tr<&PhiNum<T>> for PhiNum<T> {
            type Output = PhiNum<T>;
            fn $m(self, rhs: &PhiNum<T>) -> PhiNum<T> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: FieldScalar> Neg for PhiNum<T> {
    type Output = PhiNum<T>;
    fn neg(self) -> PhiNum<T> {
        -(&self)
    }
}

impl PhiNum<BigRational> {
    pub fn int(p: i64, q: i64, r: i64) -> Self {
        Self::from_ints(p, q, r)
    }

    /// True when every coefficient is an integer (the element lies in Z[Φ]).
    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|x| x.is_integer())
    }

    pub fn integer_coeffs(&self) -> Option<[BigInt; 3]> {
        if !self.is_integral() {
            return None;
        }
        Some([self.c[0].to_integer(), self.c[1].to_integer(), self.c[2].to_integer()])
    }

    /// Exact sign at the real embedding Φ = 1.8019…
    ///
    /// Zero is decided from the canonical form. Otherwise Φ is bracketed by
    /// a rational interval that is bisected until the quadratic's range over
    /// it excludes zero.
    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let [p, q, r] = &self.c;
        let mut lo = BigRational::new(BigInt::from(9), BigInt::from(5));
        let mut hi = BigRational::new(BigInt::from(181), BigInt::from(100));
        let f = |x: &BigRational| p + q * x + r * x * x;
        let minpoly = |x: &BigRational| x * x * x - x * x - x * BigInt::from(2) + BigInt::one();
        let two = BigRational::from_integer(BigInt::from(2));
        loop {
            let (flo, fhi) = (f(&lo), f(&hi));
            let (mut min, mut max) = if flo < fhi { (flo.clone(), fhi) } else { (fhi, flo.clone()) };
            if !r.is_zero() {
                let vertex = -q / (&two * r);
                if vertex > lo && vertex < hi {
                    let fv = f(&vertex);
                    if fv < min {
                        min = fv.clone();
                    }
                    if fv > max {
                        max = fv;
                    }
                }
            }
            if min.is_positive() {
                return Ordering::Greater;
            }
            if max.is_negative() {
                return Ordering::Less;
            }
            let mid = (&lo + &hi) / &two;
            // The minimal polynomial is increasing on [1.8, 1.81].
            if minpoly(&mid).is_negative() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
}

impl PartialOrd for PhiNum<BigRational> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PhiNum<BigRational> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

/// The three real roots of x³ − x² − 2x + 1, sorted descending.
///
/// Found by bisection on sign-changing brackets and polished with Newton
/// steps; the largest root is Φ.
pub fn minimal_poly_roots<F: Real>() -> [F; 3] {
    let f = |x: F| ((x - F::one()) * x - F::from_f64_lossy(2.0)) * x + F::one();
    let df = |x: F| F::from_f64_lossy(3.0) * x * x - F::from_f64_lossy(2.0) * x - F::from_f64_lossy(2.0);
    let brackets = [(1.5, 2.0), (0.0, 1.0), (-1.5, -1.0)];
    let mut out = [F::zero(); 3];
    for (slot, &(a, b)) in out.iter_mut().zip(brackets.iter()) {
        let mut lo = F::from_f64_lossy(a);
        let mut hi = F::from_f64_lossy(b);
        let rising = f(hi) > f(lo);
        for _ in 0..60 {
            let mid = (lo + hi) / F::from_f64_lossy(2.0);
            if (f(mid) < F::zero()) == rising {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut x = (lo + hi) / F::from_f64_lossy(2.0);
        for _ in 0..3 {
            let d = df(x);
            if d != F::zero() {
                x = x - f(x) / d;
            }
        }
        *slot = x;
    }
    out
}

fn write_coeff<T: fmt::Display + Signed>(f: &mut fmt::Formatter<'_>, x: &T, first: bool) -> fmt::Result {
    if first {
        write!(f, "{x}")
    } else if x.is_negative() {
        write!(f, " - {}", x.abs())
    } else {
        write!(f, " + {x}")
    }
}

impl<T: FieldScalar + fmt::Display + Signed> fmt::Display for PhiNum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coeff(f, &self.c[0], true)?;
        write_coeff(f, &self.c[1], false)?;
        f.write_str("·PHI")?;
        write_coeff(f, &self.c[2], false)?;
        f.write_str("·PHI^2")
    }
}

impl FromStr for PhiNum<BigRational> {
    type Err = Error;

    /// Parses `p + q·PHI + r·PHI^2`; terms may appear in any order or be
    /// omitted, and `*` is accepted in place of `·`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadPhiNum(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let compact = compact.replace('·', "*");
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut coeffs = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
        for term in terms {
            let (body, neg) = match term.strip_prefix('-') {
                Some(rest) => (rest, true),
                None => (term.strip_prefix('+').unwrap_or(&term), false),
            };
            let (num, power) = if let Some(n) = body.strip_suffix("PHI^2") {
                (n, 2)
            } else if let Some(n) = body.strip_suffix("PHI") {
                (n, 1)
            } else {
                (body, 0)
            };
            let num = num.strip_suffix('*').unwrap_or(num);
            let value = if num.is_empty() {
                if power == 0 {
                    return Err(bad());
                }
                BigRational::one()
            } else {
                num.parse::<BigRational>().map_err(|_| bad())?
            };
            coeffs[power] += if neg { -value } else { value };
        }
        let [p, q, r] = coeffs;
        Ok(PhiNum::new(p, q, r))
    }
}
