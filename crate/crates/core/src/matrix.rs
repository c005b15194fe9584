//! Seed-generated substitution matrices, inflation factors and the
//! Coronacci recurrence.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::CycloInt;
use crate::error::{Error, Result};
use crate::phi::{minimal_poly_roots, PhiNum};
use crate::scalar::RingScalar;
use crate::tile::TileType;

type Phi = PhiNum<BigRational>;

/// Composition (a, b, c) of the inflated A tile.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Seed {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Seed {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a < 0 || b < 0 || c < 0 {
            return Err(Error::BadSeed(format!("{a},{b},{c}")));
        }
        Ok(Seed { a, b, c })
    }

    /// Accepts negative entries for algebraic exploration.
    pub fn new_unchecked(a: i64, b: i64, c: i64) -> Self {
        Seed { a, b, c }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0
    }

    /// Parses `a,b,c` or a summary-table group letter A–L.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.len() == 1 {
            if let Some(g) = group(t.chars().next().unwrap()) {
                return Ok(g.seed);
            }
        }
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::BadSeed(s.to_string()));
        }
        let mut v = [0i64; 3];
        for (o, p) in v.iter_mut().zip(parts) {
            *o = p.parse().map_err(|_| Error::BadSeed(s.to_string()))?;
        }
        Seed::new(v[0], v[1], v[2]).map_err(|_| Error::BadSeed(s.to_string()))
    }
}

impl FromStr for Seed {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Seed::parse(s)
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

/// Square integer matrix indexed by tile type; row T is the composition of
/// the inflated T tile.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubstMatrix<T = i64> {
    pub m: [[T; 3]; 3],
}

impl<T: RingScalar> SubstMatrix<T> {
    pub fn identity() -> Self {
        SubstMatrix { m: std::array::from_fn(|i| std::array::from_fn(|j| if i == j { T::one() } else { T::zero() })) }
    }

    pub fn from_rows(m: [[T; 3]; 3]) -> Self {
        SubstMatrix { m }
    }

    pub fn row(&self, t: TileType) -> &[T; 3] {
        &self.m[t.index()]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.m[i][j] == self.m[j][i]))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let mut out = Self::identity().m;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let mut acc = T::zero();
                for k in 0..3 {
                    let p = self.m[i][k].checked_mul(&rhs.m[k][j]).ok_or(Error::Overflow)?;
                    acc = acc.checked_add(&p).ok_or(Error::Overflow)?;
                }
                *slot = acc;
            }
        }
        Ok(SubstMatrix { m: out })
    }

    pub fn power(&self, n: u32) -> Result<Self> {
        let mut acc = Self::identity();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Sum of all entries: base tiles needed for one generation of all
    /// three inflated tiles.
    pub fn total(&self) -> Result<T> {
        let mut acc = T::zero();
        for x in self.m.iter().flatten() {
            acc = acc.checked_add(x).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    /// Coefficients `[1, c2, c1, c0]` of det(xI − M).
    pub fn characteristic_cubic(&self) -> Result<[T; 4]> {
        let e = |i: usize, j: usize| self.m[i][j].clone();
        let mul = |a: T, b: T| a.checked_mul(&b).ok_or(Error::Overflow);
        let add = |a: T, b: T| a.checked_add(&b).ok_or(Error::Overflow);
        let sub = |a: T, b: T| a.checked_sub(&b).ok_or(Error::Overflow);
        let trace = add(add(e(0, 0), e(1, 1))?, e(2, 2))?;
        let minor = |i: usize, j: usize| -> Result<T> { sub(mul(e(i, i), e(j, j))?, mul(e(i, j), e(j, i))?) };
        let minors = add(add(minor(0, 1)?, minor(0, 2)?)?, minor(1, 2)?)?;
        let det = {
            let t0 = mul(e(0, 0), sub(mul(e(1, 1), e(2, 2))?, mul(e(1, 2), e(2, 1))?)?)?;
            let t1 = mul(e(0, 1), sub(mul(e(1, 0), e(2, 2))?, mul(e(1, 2), e(2, 0))?)?)?;
            let t2 = mul(e(0, 2), sub(mul(e(1, 0), e(2, 1))?, mul(e(1, 1), e(2, 0))?)?)?;
            add(sub(t0, t1)?, t2)?
        };
        Ok([T::one(), -trace, minors, -det])
    }

    fn to_phi(&self) -> [[Phi; 3]; 3] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let v = BigInt::from(self.m[i][j].to_i128().expect("machine-size entry"));
                Phi::from_scalar(BigRational::from_integer(v))
            })
        })
    }

    /// det(M − λI) evaluated exactly in Q(Φ).
    pub fn shifted_det(&self, lambda: &Phi) -> Phi {
        let mut a = self.to_phi();
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = &row[i] - lambda;
        }
        let e = |i: usize, j: usize| &a[i][j];
        let t0 = e(0, 0) * &(e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1));
        let t1 = e(0, 1) * &(e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0));
        let t2 = e(0, 2) * &(e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
        t0 - t1 + t2
    }

    /// M·v for a vector over Q(Φ).
    pub fn apply_phi(&self, v: &[Phi; 3]) -> [Phi; 3] {
        let a = self.to_phi();
        std::array::from_fn(|i| (0..3).fold(Phi::zero(), |acc, k| &acc + &(&a[i][k] * &v[k])))
    }
}

impl<T: fmt::Display> fmt::Display for SubstMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.m.iter().flatten().map(|x| x.to_string()).collect();
        let w = cells.iter().map(String::len).max().unwrap_or(1);
        for row in cells.chunks(3) {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
            writeln!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}

/// Rows (a,b,c), (b,a+c,b+c), (c,b+c,a+b+c).
pub fn build_matrix(s: Seed) -> SubstMatrix<i64> {
    let Seed { a, b, c } = s;
    SubstMatrix::from_rows([[a, b, c], [b, a + c, b + c], [c, b + c, a + b + c]])
}

/// The three generators whose sum gives any seed's matrix.
pub fn generator_matrices() -> [SubstMatrix<i64>; 3] {
    [
        SubstMatrix::from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        SubstMatrix::from_rows([[0, 1, 0], [1, 0, 1], [0, 1, 1]]),
        SubstMatrix::from_rows([[0, 0, 1], [0, 1, 1], [1, 1, 1]]),
    ]
}

/// Exact area vector (1, Φ, Φ²−1) of the A, B, C rhombs in A units.
pub fn area_vector() -> [Phi; 3] {
    [Phi::int(1, 0, 0), Phi::int(0, 1, 0), Phi::int(-1, 0, 1)]
}

/// δ² = (a − c) + bΦ + cΦ².
pub fn inflation_factor_sq(s: Seed) -> Result<Phi> {
    if s.is_zero() {
        return Err(Error::ZeroSeed);
    }
    Ok(Phi::int(s.a - s.c, s.b, s.c))
}

/// δ as a real number.
pub fn inflation_factor(s: Seed) -> Result<f64> {
    Ok(inflation_factor_sq(s)?.embed::<f64>().sqrt())
}

pub fn tile_count(s: Seed) -> i64 {
    3 * s.a + 5 * s.b + 6 * s.c
}

/// Checks M·v = δ²·v and det(M − δ²I) = 0, both exactly.
pub fn perron_identity_holds(s: Seed) -> Result<bool> {
    let d2 = inflation_factor_sq(s)?;
    let m = build_matrix(s);
    let v = area_vector();
    let mv = m.apply_phi(&v);
    let eigen = mv.iter().zip(v.iter()).all(|(l, r)| *l == &d2 * r);
    Ok(eigen && m.shifted_det(&d2).is_zero())
}

/// Exact lattice element δ with δ² = inflation_factor_sq(s), if one exists
/// in Z[Φ] or Γ·Z[Φ].
pub fn inflation_multiplier(s: Seed) -> Option<CycloInt> {
    let d2 = inflation_factor_sq(s).ok()?;
    if let Some([u, v, w]) = integral_sqrt(&d2) {
        return CycloInt::from_phi_int(&u, &v, &w).ok();
    }
    let g2 = Phi::int(2, 1, 0);
    let rest = d2.checked_div(&g2).ok()?;
    let [u, v, w] = integral_sqrt(&rest)?;
    CycloInt::from_phi_int(&u, &v, &w).ok()?.checked_mul(&CycloInt::gamma()).ok()
}

/// Integer coordinates of a positive square root in Z[Φ], found from the
/// three real embeddings and confirmed exactly.
fn integral_sqrt(x: &Phi) -> Option<[i64; 3]> {
    let roots = minimal_poly_roots::<f64>();
    let [p, q, r] = x.coeffs().clone().map(|c| c.to_f64().unwrap_or(f64::NAN));
    let conj: Vec<f64> = roots.iter().map(|&s| p + q * s + r * s * s).collect();
    if conj.iter().any(|&v| v < 0.0) {
        return None;
    }
    let mags: Vec<f64> = conj.iter().map(|v| v.sqrt()).collect();
    for signs in [[1.0, 1.0, 1.0], [1.0, 1.0, -1.0], [1.0, -1.0, 1.0], [1.0, -1.0, -1.0]] {
        let y: Vec<f64> = mags.iter().zip(signs).map(|(m, s)| m * s).collect();
        let sol = solve_vandermonde(&roots, &y)?;
        let ints = sol.map(|c| c.round());
        if ints.iter().zip(sol.iter()).any(|(i, s)| (i - s).abs() > 1e-6 || i.abs() > 1e15) {
            continue;
        }
        let cand = [ints[0] as i64, ints[1] as i64, ints[2] as i64];
        let elem = Phi::int(cand[0], cand[1], cand[2]);
        if elem.square() == *x {
            return Some(cand);
        }
    }
    None
}

fn solve_vandermonde(s: &[f64; 3], y: &[f64]) -> Option<[f64; 3]> {
    // Rows (1, sᵢ, sᵢ²); Cramer's rule.
    let m = |i: usize| [1.0, s[i], s[i] * s[i]];
    let rows = [m(0), m(1), m(2)];
    let det = |r: &[[f64; 3]; 3]| {
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    };
    let d = det(&rows);
    if d.abs() < 1e-12 {
        return None;
    }
    let mut out = [0.0; 3];
    for (col, o) in out.iter_mut().enumerate() {
        let mut r = rows;
        for i in 0..3 {
            r[i][col] = y[i];
        }
        *o = det(&r) / d;
    }
    Some(out)
}

/// One state (aₙ, bₙ, cₙ) of the Coronacci recurrence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoronacciState {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub n: u64,
}

impl CoronacciState {
    pub fn from_seed(s: Seed) -> Result<Self> {
        if s.a < 0 || s.b < 0 || s.c < 0 {
            return Err(Error::BadSeed(s.to_string()));
        }
        if s.is_zero() {
            return Err(Error::ZeroSeed);
        }
        Ok(CoronacciState { a: s.a.into(), b: s.b.into(), c: s.c.into(), n: 0 })
    }

    /// aₙ = bₙ₋₁, bₙ = aₙ₋₁ + cₙ₋₁, cₙ = bₙ₋₁ + cₙ₋₁.
    pub fn step(&self) -> Self {
        CoronacciState { a: self.b.clone(), b: &self.a + &self.c, c: &self.b + &self.c, n: self.n + 1 }
    }

    pub fn ratio(&self) -> Option<f64> {
        if self.a.is_zero() {
            return None;
        }
        BigRational::new(self.b.clone(), self.a.clone()).to_f64()
    }
}

/// States 0..=n of the recurrence.
pub fn coronacci_trace(s: Seed, n: u64) -> Result<Vec<CoronacciState>> {
    let mut st = CoronacciState::from_seed(s)?;
    let mut out = vec![st.clone()];
    for _ in 0..n {
        st = st.step();
        out.push(st.clone());
    }
    Ok(out)
}

/// bₙ/aₙ; when aₙ = 0 the recurrence is advanced to the first index with
/// a positive aₙ. Returns the index actually used with the ratio.
pub fn coronacci_limit(s: Seed, n: u64) -> Result<(u64, f64)> {
    let mut st = CoronacciState::from_seed(s)?;
    while st.n < n || st.a.is_zero() {
        st = st.step();
    }
    Ok((st.n, st.ratio().expect("a is positive")))
}

/// One row of the summary table of known 7-fold substitutions.
#[derive(Clone, Copy, Debug)]
pub struct Group {
    pub letter: char,
    pub seed: Seed,
}

pub const GROUPS: [Group; 12] = [
    Group { letter: 'A', seed: Seed { a: 1, b: 0, c: 0 } },
    Group { letter: 'B', seed: Seed { a: 0, b: 1, c: 0 } },
    Group { letter: 'C', seed: Seed { a: 0, b: 0, c: 1 } },
    Group { letter: 'D', seed: Seed { a: 1, b: 0, c: 1 } },
    Group { letter: 'E', seed: Seed { a: 2, b: 1, c: 0 } },
    Group { letter: 'F', seed: Seed { a: 4, b: 0, c: 0 } },
    Group { letter: 'G', seed: Seed { a: 2, b: 2, c: 1 } },
    Group { letter: 'H', seed: Seed { a: 5, b: 4, c: 1 } },
    Group { letter: 'I', seed: Seed { a: 3, b: 5, c: 6 } },
    Group { letter: 'J', seed: Seed { a: 6, b: 9, c: 11 } },
    Group { letter: 'K', seed: Seed { a: 9, b: 16, c: 20 } },
    Group { letter: 'L', seed: Seed { a: 14, b: 25, c: 31 } },
];

pub fn group(letter: char) -> Option<Group> {
    let l = letter.to_ascii_uppercase();
    GROUPS.iter().copied().find(|g| g.letter == l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed(a: i64, b: i64, c: i64) -> Seed {
        Seed::new(a, b, c).unwrap()
    }

    #[test]
    fn minimal_matrix_and_square() {
        let m = build_matrix(seed(2, 1, 0));
        assert_eq!(m.m, [[2, 1, 0], [1, 2, 1], [0, 1, 3]]);
        assert_eq!(m.power(2).unwrap().m, [[5, 4, 1], [4, 6, 5], [1, 5, 10]]);
        assert_eq!(m.power(0).unwrap(), SubstMatrix::identity());
    }

    #[test]
    fn magic_square_root() {
        let root = build_matrix(seed(0, 1, 0));
        assert_eq!(root.m, [[0, 1, 0], [1, 0, 1], [0, 1, 1]]);
        assert_eq!(root.power(2).unwrap(), build_matrix(seed(1, 0, 1)));
        assert_eq!(build_matrix(seed(1, 0, 1)).m, [[1, 0, 1], [0, 2, 1], [1, 1, 2]]);
        assert_eq!(build_matrix(seed(1, 0, 0)), SubstMatrix::identity());
    }

    #[test]
    fn generators_sum() {
        let [ma, mb, mc] = generator_matrices();
        let s = seed(3, 5, 6);
        let m = build_matrix(s);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.m[i][j], s.a * ma.m[i][j] + s.b * mb.m[i][j] + s.c * mc.m[i][j]);
            }
        }
    }

    #[test]
    fn inflation_examples() {
        assert_eq!(inflation_factor_sq(seed(2, 1, 0)).unwrap(), Phi::int(2, 1, 0));
        let h = inflation_factor_sq(seed(5, 4, 1)).unwrap();
        assert_eq!(h, Phi::int(2, 1, 0).square());
        assert!((h.embed::<f64>().sqrt() - 3.802).abs() < 5e-4);
        assert_eq!(inflation_factor_sq(seed(1, 0, 0)).unwrap(), Phi::one());
        let k = inflation_factor_sq(seed(9, 16, 20)).unwrap();
        let closed = &Phi::phi().square() * &Phi::int(1, 1, 0);
        assert_eq!(k, closed.square());
        assert!(matches!(inflation_factor_sq(Seed::new_unchecked(0, 0, 0)), Err(Error::ZeroSeed)));
    }

    #[test]
    fn counts() {
        assert_eq!(tile_count(seed(2, 1, 0)), 11);
        assert_eq!(tile_count(seed(5, 4, 1)), 41);
        assert_eq!(tile_count(seed(6, 9, 11)), 129);
        assert_eq!(build_matrix(seed(6, 9, 11)).total().unwrap(), 129);
    }

    #[test]
    fn cubic_of_identity() {
        let c = build_matrix(seed(1, 0, 0)).characteristic_cubic().unwrap();
        assert_eq!(c, [1, -3, 3, -1]);
    }

    #[test]
    fn perron_for_groups() {
        for g in GROUPS {
            assert!(perron_identity_holds(g.seed).unwrap(), "{}", g.letter);
        }
    }

    #[test]
    fn multipliers() {
        assert_eq!(inflation_multiplier(seed(2, 1, 0)), Some(CycloInt::gamma()));
        assert_eq!(inflation_multiplier(seed(4, 0, 0)), Some(CycloInt::from_i64(2)));
        assert_eq!(inflation_multiplier(seed(1, 0, 1)), Some(CycloInt::phi()));
        assert_eq!(inflation_multiplier(seed(0, 1, 0)), None);
        let h = inflation_multiplier(seed(5, 4, 1)).unwrap();
        assert!((h.embed2d::<f64>().0 - 3.8019377).abs() < 1e-6);
    }

    #[test]
    fn coronacci_step() {
        let st = CoronacciState::from_seed(seed(5, 9, 11)).unwrap().step();
        assert_eq!((st.a, st.b, st.c), (9.into(), 16.into(), 20.into()));
    }

    #[test]
    fn coronacci_skips_zero_a() {
        let (n, r) = coronacci_limit(seed(0, 0, 1), 0).unwrap();
        // (0,0,1) -> (0,1,1) -> (1,1,2)
        assert_eq!(n, 2);
        assert_eq!(r, 1.0);
    }

    #[test]
    fn seed_parsing() {
        assert_eq!(Seed::parse("2, 1,0").unwrap(), seed(2, 1, 0));
        assert_eq!(Seed::parse("E").unwrap(), seed(2, 1, 0));
        assert!(Seed::parse("1,2").is_err());
        assert!(Seed::parse("-1,0,0").is_err());
        assert!(Seed::parse("Z").is_err());
    }
}
