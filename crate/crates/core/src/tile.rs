use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cyclo::{Cyclo, RigidMotion};
use crate::error::{Error, Result};
use crate::geometry::Pt;
use crate::scalar::RingScalar;

/// Unit rhomb with acute angle t·π/7 (A = 1, B = 2, C = 3).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum TileType {
    A,
    B,
    C,
}

impl TileType {
    pub const ALL: [TileType; 3] = [TileType::A, TileType::B, TileType::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// Acute angle in units of π/14.
    pub fn acute_steps(self) -> i64 {
        2 * (self.index() as i64 + 1)
    }

    /// Corners P0..P3 counter-clockwise: 0, 1, 1 + ζ^{2t}, ζ^{2t}.
    pub fn local_corners<T: RingScalar>(self) -> [Cyclo<T>; 4] {
        let side = Cyclo::zeta_pow(self.acute_steps());
        let one = Cyclo::one();
        [Cyclo::zero(), one.clone(), &one + &side, side]
    }

    /// Direction of rhomb edge `i` (from corner i to i+1) in units of π/14.
    pub fn edge_direction(self, i: usize) -> i64 {
        [0, self.acute_steps(), 14, 14 + self.acute_steps()][i % 4]
    }
}

impl fmt::Display for TileType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for TileType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(TileType::A),
            "B" | "b" => Ok(TileType::B),
            "C" | "c" => Ok(TileType::C),
            other => Err(Error::BadTileType(other.to_string())),
        }
    }
}

/// Which diagonal cuts the rhomb: long joins P0–P2, short joins P1–P3.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Long,
    Short,
}

impl Split {
    /// Rhomb corner indices of the triangle on `side`, counter-clockwise.
    pub fn triangle(self, side: u8) -> [usize; 3] {
        match (self, side) {
            (Split::Long, 0) => [0, 1, 2],
            (Split::Long, _) => [2, 3, 0],
            (Split::Short, 0) => [1, 2, 3],
            (Split::Short, _) => [3, 0, 1],
        }
    }

    /// Rhomb edge indices lying on the boundary of the half on `side`.
    pub fn edges(self, side: u8) -> [usize; 2] {
        let t = self.triangle(side);
        [t[0], t[1]]
    }
}

/// Edge index with its start and end corners.
pub type RhombEdge<T> = (usize, Cyclo<T>, Cyclo<T>);

/// A rhomb cut along one diagonal, placed by a rigid motion of its rhomb.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HalfTile<T> {
    pub tile: TileType,
    pub split: Split,
    pub side: u8,
    pub motion: RigidMotion<T>,
}

impl<T: RingScalar> HalfTile<T> {
    pub fn new(tile: TileType, split: Split, side: u8, motion: RigidMotion<T>) -> Self {
        HalfTile { tile, split, side: side & 1, motion }
    }

    /// Both halves of one whole rhomb, cut along the long diagonal.
    pub fn whole(tile: TileType, motion: RigidMotion<T>) -> [Self; 2] {
        [Self::new(tile, Split::Long, 0, motion.clone()), Self::new(tile, Split::Long, 1, motion)]
    }

    pub fn complement(&self) -> Self {
        Self::new(self.tile, self.split, 1 - self.side, self.motion.clone())
    }

    pub fn rhomb_corners(&self) -> Result<[Cyclo<T>; 4]> {
        let local = self.tile.local_corners::<T>();
        let mut out: [Cyclo<T>; 4] = std::array::from_fn(|_| Cyclo::zero());
        for (o, p) in out.iter_mut().zip(local.iter()) {
            *o = self.motion.apply(p)?;
        }
        Ok(out)
    }

    /// Triangle corners in the order given by [`Split::triangle`]. The
    /// orientation is reversed when the motion reflects.
    pub fn vertices(&self) -> Result<[Cyclo<T>; 3]> {
        let corners = self.rhomb_corners()?;
        let idx = self.split.triangle(self.side);
        Ok(idx.map(|i| corners[i].clone()))
    }

    /// Endpoints of the cutting diagonal.
    pub fn diagonal(&self) -> Result<(Cyclo<T>, Cyclo<T>)> {
        let v = self.vertices()?;
        Ok((v[2].clone(), v[0].clone()))
    }

    /// The two rhomb edges this half carries, as (edge index, start, end).
    pub fn rhomb_edges(&self) -> Result<[RhombEdge<T>; 2]> {
        let corners = self.rhomb_corners()?;
        let [e0, e1] = self.split.edges(self.side);
        Ok([
            (e0, corners[e0].clone(), corners[(e0 + 1) % 4].clone()),
            (e1, corners[e1].clone(), corners[(e1 + 1) % 4].clone()),
        ])
    }

    pub fn float_vertices(&self) -> Result<[Pt; 3]> {
        Ok(self.vertices()?.map(|v| Pt::from_cyclo(&v)))
    }

    /// Triangle with counter-clockwise float vertices.
    pub fn ccw_triangle(&self) -> Result<[Pt; 3]> {
        let mut t = self.float_vertices()?;
        if self.motion.refl {
            t.swap(1, 2);
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloInt;
    use crate::geometry::polygon_area;

    #[test]
    fn halves_make_the_rhomb() {
        for t in TileType::ALL {
            let whole = polygon_area(&t.local_corners::<i64>().map(|p| Pt::from_cyclo(&p)));
            for split in [Split::Long, Split::Short] {
                let mut sum = 0.0;
                for side in 0..2 {
                    let h = HalfTile::new(t, split, side, RigidMotion::<i64>::identity());
                    let tri = h.ccw_triangle().unwrap();
                    let a = polygon_area(&tri);
                    assert!(a > 0.0);
                    sum += a;
                }
                assert!((sum - whole).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reflected_halves_stay_ccw() {
        let m = RigidMotion::new(3, true, CycloInt::zeta_pow(5));
        let h = HalfTile::new(TileType::B, Split::Short, 1, m);
        assert!(polygon_area(&h.ccw_triangle().unwrap()) > 0.0);
    }

    #[test]
    fn acute_angles() {
        for t in TileType::ALL {
            let [p0, p1, _, p3] = t.local_corners::<i64>().map(|p| Pt::from_cyclo(&p));
            let a = (p1 - p0).angle_to(p3 - p0);
            assert!((a - (t.index() as f64 + 1.0) * std::f64::consts::PI / 7.0).abs() < 1e-12);
        }
    }

    #[test]
    fn parse_type() {
        assert_eq!("b".parse::<TileType>().unwrap(), TileType::B);
        assert!("D".parse::<TileType>().is_err());
    }
}
