//! Float predicates on embedded lattice points.
//!
//! Tolerances are absolute; exact area bookkeeping elsewhere is the real
//! correctness net.

use std::ops::{Add, Mul, Sub};

use crate::cyclo::Cyclo;
use crate::scalar::RingScalar;

pub const EPS: f64 = 1e-9;

#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct Pt {
    pub x: f64,
    pub y: f64,
}

impl Pt {
    pub fn new(x: f64, y: f64) -> Self {
        Pt { x, y }
    }

    pub fn from_cyclo<T: RingScalar>(z: &Cyclo<T>) -> Self {
        let (x, y) = z.embed2d::<f64>();
        Pt { x, y }
    }

    pub fn cross(self, o: Pt) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn dot(self, o: Pt) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Counter-clockwise angle from `self` to `o`, in [0, 2π).
    pub fn angle_to(self, o: Pt) -> f64 {
        let a = self.cross(o).atan2(self.dot(o));
        if a < 0.0 {
            a + std::f64::consts::TAU
        } else {
            a
        }
    }

    pub fn dist(self, o: Pt) -> f64 {
        (self - o).norm()
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        Pt::new(r * theta.cos(), r * theta.sin())
    }
}

impl Add for Pt {
    type Output = Pt;
    fn add(self, o: Pt) -> Pt {
        Pt::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Pt {
    type Output = Pt;
    fn sub(self, o: Pt) -> Pt {
        Pt::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Pt {
    type Output = Pt;
    fn mul(self, k: f64) -> Pt {
        Pt::new(self.x * k, self.y * k)
    }
}

pub fn centroid(poly: &[Pt]) -> Pt {
    let n = poly.len() as f64;
    let s = poly.iter().fold(Pt::default(), |a, &p| a + p);
    s * (1.0 / n)
}

/// Signed shoelace area (positive for counter-clockwise).
pub fn polygon_area(poly: &[Pt]) -> f64 {
    let n = poly.len();
    (0..n).map(|i| poly[i].cross(poly[(i + 1) % n])).sum::<f64>() / 2.0
}

pub fn on_segment(p: Pt, a: Pt, b: Pt) -> bool {
    let d = b - a;
    let len = d.norm();
    if len < EPS {
        return p.dist(a) < EPS;
    }
    (d.cross(p - a) / len).abs() < EPS && (p - a).dot(d) >= -EPS * len && (p - b).dot(a - b) >= -EPS * len
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Winding-number point location for a simple polygon.
pub fn locate(poly: &[Pt], p: Pt) -> Location {
    let n = poly.len();
    let mut wn = 0i32;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if on_segment(p, a, b) {
            return Location::Boundary;
        }
        let c = (b - a).cross(p - a);
        if a.y <= p.y {
            if b.y > p.y && c > 0.0 {
                wn += 1;
            }
        } else if b.y <= p.y && c < 0.0 {
            wn -= 1;
        }
    }
    if wn != 0 {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// True when the open segments ab and cd cross at a single interior point.
pub fn segments_cross(a: Pt, b: Pt, c: Pt, d: Pt) -> bool {
    let d1 = (b - a).cross(c - a);
    let d2 = (b - a).cross(d - a);
    let d3 = (d - c).cross(a - c);
    let d4 = (d - c).cross(b - c);
    ((d1 > EPS && d2 < -EPS) || (d1 < -EPS && d2 > EPS)) && ((d3 > EPS && d4 < -EPS) || (d3 < -EPS && d4 > EPS))
}

/// Separating-axis test for convex polygons; touching counts as disjoint.
pub fn convex_overlap(p: &[Pt], q: &[Pt]) -> bool {
    for poly in [p, q] {
        let n = poly.len();
        for i in 0..n {
            let a = poly[i];
            let e = poly[(i + 1) % n] - a;
            let len = e.norm();
            if len < EPS {
                continue;
            }
            let side = |x: Pt| e.cross(x - a) / len;
            let (pmin, pmax) = min_max(p.iter().map(|&x| side(x)));
            let (qmin, qmax) = min_max(q.iter().map(|&x| side(x)));
            if pmax <= qmin + EPS || qmax <= pmin + EPS {
                return false;
            }
        }
    }
    true
}

fn min_max(it: impl Iterator<Item = f64>) -> (f64, f64) {
    it.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

/// True when convex `piece` lies inside the simple polygon `region`.
pub fn convex_inside(piece: &[Pt], region: &[Pt]) -> bool {
    if piece.iter().any(|&p| locate(region, p) == Location::Outside) {
        return false;
    }
    if locate(region, centroid(piece)) != Location::Inside {
        return false;
    }
    let n = piece.len();
    let m = region.len();
    for i in 0..n {
        let (a, b) = (piece[i], piece[(i + 1) % n]);
        if locate(region, (a + b) * 0.5) == Location::Outside {
            return false;
        }
        for j in 0..m {
            if segments_cross(a, b, region[j], region[(j + 1) % m]) {
                return false;
            }
        }
    }
    // A reflex region vertex poking into the piece.
    region.iter().all(|&r| locate(piece, r) != Location::Inside)
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct BBox {
    pub min: Pt,
    pub max: Pt,
}

impl BBox {
    pub fn of(points: impl IntoIterator<Item = Pt>) -> Option<Self> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut b = BBox { min: first, max: first };
        for p in it {
            b.min = Pt::new(b.min.x.min(p.x), b.min.y.min(p.y));
            b.max = Pt::new(b.max.x.max(p.x), b.max.y.max(p.y));
        }
        Some(b)
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Pt> {
        vec![Pt::new(0., 0.), Pt::new(1., 0.), Pt::new(1., 1.), Pt::new(0., 1.)]
    }

    #[test]
    fn locate_points() {
        let s = square();
        assert_eq!(locate(&s, Pt::new(0.5, 0.5)), Location::Inside);
        assert_eq!(locate(&s, Pt::new(1.0, 0.5)), Location::Boundary);
        assert_eq!(locate(&s, Pt::new(1.5, 0.5)), Location::Outside);
    }

    #[test]
    fn touching_is_not_overlap() {
        let s = square();
        let t: Vec<Pt> = s.iter().map(|&p| p + Pt::new(1.0, 0.0)).collect();
        assert!(!convex_overlap(&s, &t));
        let u: Vec<Pt> = s.iter().map(|&p| p + Pt::new(0.5, 0.5)).collect();
        assert!(convex_overlap(&s, &u));
    }

    #[test]
    fn crossing_segments() {
        let o = Pt::new(0., 0.);
        assert!(segments_cross(o, Pt::new(1., 1.), Pt::new(0., 1.), Pt::new(1., 0.)));
        assert!(!segments_cross(o, Pt::new(1., 0.), Pt::new(1., 0.), Pt::new(2., 0.)));
    }

    #[test]
    fn inside_nonconvex() {
        // L-shaped region; a unit square in the notch is outside.
        let l =
            vec![Pt::new(0., 0.), Pt::new(2., 0.), Pt::new(2., 1.), Pt::new(1., 1.), Pt::new(1., 2.), Pt::new(0., 2.)];
        assert!(convex_inside(&square(), &l));
        let notch: Vec<Pt> = square().iter().map(|&p| p + Pt::new(1., 1.)).collect();
        assert!(!convex_inside(&notch, &l));
    }
}
