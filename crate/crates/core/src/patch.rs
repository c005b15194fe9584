use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::{rhomb_area_in_a_units, shoelace_4i, Cyclo, CycloBig, CycloInt, RigidMotion};
use crate::error::{Error, Result};
use crate::geometry::{convex_overlap, BBox, Pt};
use crate::matrix::Seed;
use crate::phi::PhiNum;
use crate::scalar::RingScalar;
use crate::tile::{HalfTile, Split, TileType};

pub const PATCH_SCHEMA: &str = "heptile-patch/1";

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Patch<T = i64> {
    pub halves: Vec<HalfTile<T>>,
    pub generation: u32,
    pub seed: Seed,
}

/// Halves pair up when type, split and cutting diagonal agree.
type DiagonalKey<T> = (TileType, Split, Cyclo<T>, Cyclo<T>);

/// Whole rhombs and the halves left without a partner.
pub type Merged<T> = (Vec<Rhomb<T>>, Vec<HalfTile<T>>);

/// A rhomb reassembled from two co-placed halves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rhomb<T = i64> {
    pub tile: TileType,
    pub corners: [Cyclo<T>; 4],
}

impl<T: RingScalar> Patch<T> {
    pub fn new(halves: Vec<HalfTile<T>>, generation: u32, seed: Seed) -> Self {
        Patch { halves, generation, seed }
    }

    /// One whole prototile at the origin, generation 0.
    pub fn single(tile: TileType, seed: Seed) -> Self {
        Self::new(HalfTile::whole(tile, RigidMotion::identity()).to_vec(), 0, seed)
    }

    pub fn len(&self) -> usize {
        self.halves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halves.is_empty()
    }

    /// Number of halves of each type.
    pub fn half_counts(&self) -> [u64; 3] {
        let mut out = [0u64; 3];
        for h in &self.halves {
            out[h.tile.index()] += 1;
        }
        out
    }

    /// Whole-tile equivalents; every half weighs ½.
    pub fn counts(&self) -> [BigRational; 3] {
        self.half_counts().map(|n| BigRational::new(BigInt::from(n), BigInt::from(2)))
    }

    /// Exact area in A units.
    pub fn area(&self) -> PhiNum<BigRational> {
        let mut acc = PhiNum::zero();
        for (t, n) in TileType::ALL.iter().zip(self.counts()) {
            acc = &acc + &rhomb_area_in_a_units(*t).scale(&n);
        }
        acc
    }

    /// Exact 4i·area summed from every half's lattice vertices, with
    /// orientation corrected for reflected motions.
    pub fn lattice_area_4i(&self) -> Result<CycloBig> {
        let mut acc = CycloBig::zero();
        for h in &self.halves {
            let tri = h.vertices()?.map(|v| v.to_big());
            let s = shoelace_4i(&tri)?;
            acc = if h.motion.refl { acc.checked_sub(&s)? } else { acc.checked_add(&s)? };
        }
        Ok(acc)
    }

    /// Pairs complementary halves into whole rhombs. Halves are matched by
    /// type, split and the cutting diagonal, so halves produced by
    /// different parents still merge.
    pub fn merge_halves(&self) -> Result<Merged<T>> {
        let mut slots: HashMap<DiagonalKey<T>, Vec<usize>> = HashMap::new();
        let mut order: Vec<DiagonalKey<T>> = Vec::new();
        for (i, h) in self.halves.iter().enumerate() {
            let (a, b) = h.diagonal()?;
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let key = (h.tile, h.split, lo, hi);
            let entry = slots.entry(key.clone()).or_default();
            if entry.is_empty() {
                order.push(key);
            }
            entry.push(i);
        }
        let mut whole = Vec::new();
        let mut loose = Vec::new();
        for key in order {
            let idx = &slots[&key];
            let mut chunks = idx.chunks_exact(2);
            for pair in &mut chunks {
                let h = &self.halves[pair[0]];
                whole.push(Rhomb { tile: h.tile, corners: h.rhomb_corners()? });
            }
            loose.extend(chunks.remainder().iter().map(|&i| self.halves[i].clone()));
        }
        Ok((whole, loose))
    }

    pub fn float_triangles(&self) -> Result<Vec<[Pt; 3]>> {
        self.halves.iter().map(|h| h.ccw_triangle()).collect()
    }

    pub fn bbox(&self) -> Result<Option<BBox>> {
        Ok(BBox::of(self.float_triangles()?.into_iter().flatten()))
    }

    /// Index pairs of halves whose interiors overlap (tolerance 1e−9).
    pub fn overlapping_pairs(&self) -> Result<Vec<(usize, usize)>>
    where
        T: Send + Sync,
    {
        let tris = self.float_triangles()?;
        Ok(overlaps(&tris))
    }
}

/// Grid-bucketed pairwise overlap test over convex triangles.
pub fn overlaps(tris: &[[Pt; 3]]) -> Vec<(usize, usize)> {
    let cell = 1.0;
    let key = |p: Pt| ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let boxes: Vec<BBox> = tris.iter().map(|t| BBox::of(t.iter().copied()).unwrap()).collect();
    for (i, b) in boxes.iter().enumerate() {
        let (x0, y0) = key(b.min);
        let (x1, y1) = key(b.max);
        for x in x0..=x1 {
            for y in y0..=y1 {
                grid.entry((x, y)).or_default().push(i);
            }
        }
    }
    let mut out: Vec<(usize, usize)> = (0..tris.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let b = boxes[i];
            let (x0, y0) = key(b.min);
            let (x1, y1) = key(b.max);
            let mut cand: Vec<usize> = Vec::new();
            for x in x0..=x1 {
                for y in y0..=y1 {
                    if let Some(v) = grid.get(&(x, y)) {
                        cand.extend(v.iter().copied().filter(|&j| j > i));
                    }
                }
            }
            cand.sort_unstable();
            cand.dedup();
            cand.into_iter().filter(|&j| convex_overlap(&tris[i], &tris[j])).map(|j| (i, j)).collect::<Vec<_>>()
        })
        .collect();
    out.sort_unstable();
    out
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct HalfRecord {
    #[serde(rename = "type")]
    pub tile: TileType,
    pub split: Split,
    pub side: u8,
    pub rot: u8,
    pub refl: bool,
    pub anchor: CycloInt,
}

impl HalfRecord {
    pub fn from_half(h: &HalfTile<i64>) -> Self {
        HalfRecord {
            tile: h.tile,
            split: h.split,
            side: h.side,
            rot: h.motion.rot,
            refl: h.motion.refl,
            anchor: h.motion.shift.clone(),
        }
    }

    pub fn to_half(&self) -> Result<HalfTile<i64>> {
        if self.side > 1 || self.rot >= 28 {
            return Err(Error::Invalid(format!("bad half-tile record {self:?}")));
        }
        Ok(HalfTile::new(
            self.tile,
            self.split,
            self.side,
            RigidMotion::new(self.rot as i64, self.refl, self.anchor.clone()),
        ))
    }
}

/// A JSON array with one compact element per line.
pub(crate) fn json_list<S: Serialize>(items: &[S], indent: usize) -> Result<String> {
    if items.is_empty() {
        return Ok("[]".into());
    }
    let pad = " ".repeat(indent + 2);
    let lines: Vec<String> =
        items.iter().map(|x| Ok(format!("{pad}{}", serde_json::to_string(x)?))).collect::<Result<_>>()?;
    Ok(format!("[\n{}\n{}]", lines.join(",\n"), " ".repeat(indent)))
}

#[derive(Serialize, Deserialize, Debug)]
struct PatchFile {
    schema: String,
    seed: [i64; 3],
    generation: u32,
    halves: Vec<HalfRecord>,
}

impl Patch<i64> {
    /// JSON text with one half-tile record per line.
    pub fn to_json(&self) -> Result<String> {
        let records: Vec<HalfRecord> = self.halves.iter().map(HalfRecord::from_half).collect();
        let mut out = String::from("{\n");
        out += &format!("  \"schema\": {},\n", serde_json::to_string(PATCH_SCHEMA)?);
        out += &format!("  \"seed\": {},\n", serde_json::to_string(&[self.seed.a, self.seed.b, self.seed.c])?);
        out += &format!("  \"generation\": {},\n", self.generation);
        out += &format!("  \"halves\": {}\n}}\n", json_list(&records, 2)?);
        Ok(out)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: PatchFile = serde_json::from_str(s)?;
        if file.schema != PATCH_SCHEMA {
            return Err(Error::Schema { found: file.schema, expected: PATCH_SCHEMA.to_string() });
        }
        let [a, b, c] = file.seed;
        let halves = file.halves.iter().map(HalfRecord::to_half).collect::<Result<_>>()?;
        Ok(Patch::new(halves, file.generation, Seed::new(a, b, c)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed() -> Seed {
        Seed::new(2, 1, 0).unwrap()
    }

    #[test]
    fn whole_b_counts() {
        let p = Patch::<i64>::single(TileType::B, seed());
        let c = p.counts();
        assert_eq!(c[1], BigRational::from_integer(1.into()));
        assert_eq!(p.area(), PhiNum::from_ints(0, 1, 0));
    }

    #[test]
    fn merge_pairs_and_leftovers() {
        let p = Patch::<i64>::single(TileType::A, seed());
        let (w, l) = p.merge_halves().unwrap();
        assert_eq!((w.len(), l.len()), (1, 0));
        let half = Patch::new(vec![p.halves[0].clone()], 0, seed());
        let (w, l) = half.merge_halves().unwrap();
        assert_eq!((w.len(), l.len()), (0, 1));
    }

    #[test]
    fn lattice_area_of_single() {
        let p = Patch::<i64>::single(TileType::C, seed());
        let s = p.lattice_area_4i().unwrap();
        assert!(crate::cyclo::area_4i_matches(&s, &p.area()));
    }

    #[test]
    fn json_round_trip() {
        let p = Patch::<i64>::single(TileType::A, seed());
        let s = p.to_json().unwrap();
        assert!(s.contains("\"schema\": \"heptile-patch/1\""));
        assert_eq!(s.lines().count(), 9);
        assert_eq!(Patch::from_json(&s).unwrap(), p);
        let bad = s.replace("heptile-patch/1", "heptile-patch/9");
        assert!(matches!(Patch::from_json(&bad), Err(Error::Schema { .. })));
    }

    #[test]
    fn overlap_detection() {
        let a = Patch::<i64>::single(TileType::A, seed());
        assert!(a.overlapping_pairs().unwrap().is_empty());
        let mut doubled = a.clone();
        doubled.halves.push(a.halves[0].clone());
        assert_eq!(doubled.overlapping_pairs().unwrap(), vec![(0, 2)]);
    }
}
