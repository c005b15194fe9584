//! Deterministic SVG 1.1 output for patches, rule sheets and rosettes.

use std::fmt::Write as _;

use crate::cyclo::{Cyclo, RigidMotion};
use crate::error::{Error, Result};
use crate::geometry::{polygon_area, BBox, Pt};
use crate::patch::Patch;
use crate::rules::{Labels, SubstRuleSet};
use crate::scalar::RingScalar;
use crate::tile::{HalfTile, TileType};

const MARGIN: f64 = 0.05;
const TICK: f64 = 0.12;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderStyle {
    pub fills: [String; 3],
    pub stroke: String,
    pub stroke_width: f64,
    /// Draw edge ticks for `edge_labels`.
    pub show_labels: bool,
    pub edge_labels: Option<[Labels; 3]>,
    /// Pixels per unit edge.
    pub scale: f64,
    pub merge_halves: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            fills: ["#e9b44c".into(), "#4d8fcc".into(), "#7bb662".into()],
            stroke: "#222222".into(),
            stroke_width: 1.0,
            show_labels: false,
            edge_labels: None,
            scale: 40.0,
            merge_halves: true,
        }
    }
}

impl RenderStyle {
    fn check(&self) -> Result<()> {
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::Invalid(format!("scale must be positive, got {}", self.scale)));
        }
        Ok(())
    }

    fn labels(&self) -> Option<&[Labels; 3]> {
        self.edge_labels.as_ref().filter(|_| self.show_labels)
    }
}

struct Shape {
    tile: TileType,
    pts: Vec<Pt>,
    ticks: Vec<(Pt, Pt)>,
}

/// A tick from the midpoint of `a→b`, outward for +1 and inward for −1.
fn tick(a: Pt, b: Pt, label: i8, ccw: bool) -> Option<(Pt, Pt)> {
    if label == 0 {
        return None;
    }
    let d = b - a;
    let len = d.norm();
    let mut n = Pt::new(d.y / len, -d.x / len);
    if !ccw {
        n = Pt::new(-n.x, -n.y);
    }
    let m = Pt::new((a.x + b.x) / 2.0, (a.y + b.y) / 2.0);
    let s = TICK * f64::from(label);
    Some((m, Pt::new(m.x + n.x * s, m.y + n.y * s)))
}

fn shapes<T: RingScalar>(halves: &[HalfTile<T>], style: &RenderStyle) -> Result<Vec<Shape>> {
    let labels = style.labels();
    let mut out = Vec::new();
    let emit_half = |h: &HalfTile<T>, out: &mut Vec<Shape>| -> Result<()> {
        let pts = h.float_vertices()?.to_vec();
        let mut ticks = Vec::new();
        if let Some(l) = labels {
            for (idx, a, b) in h.rhomb_edges()? {
                ticks.extend(tick(Pt::from_cyclo(&a), Pt::from_cyclo(&b), l[h.tile.index()][idx], !h.motion.refl));
            }
        }
        out.push(Shape { tile: h.tile, pts, ticks });
        Ok(())
    };
    if style.merge_halves {
        let patch = Patch::new(halves.to_vec(), 0, crate::matrix::Seed::new_unchecked(1, 0, 0));
        let (whole, loose) = patch.merge_halves()?;
        for r in whole {
            let pts: Vec<Pt> = r.corners.iter().map(Pt::from_cyclo).collect();
            let ccw = polygon_area(&pts) > 0.0;
            let mut ticks = Vec::new();
            if let Some(l) = labels {
                for i in 0..4 {
                    ticks.extend(tick(pts[i], pts[(i + 1) % 4], l[r.tile.index()][i], ccw));
                }
            }
            out.push(Shape { tile: r.tile, pts, ticks });
        }
        for h in &loose {
            emit_half(h, &mut out)?;
        }
    } else {
        for h in halves {
            emit_half(h, &mut out)?;
        }
    }
    Ok(out)
}

/// Shortest round-trip decimal, with −0 folded to 0.
fn num(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v}")
}

fn document(shapes: &[Shape], outline: Option<&[Pt]>, style: &RenderStyle) -> String {
    let s = style.scale;
    let map = |p: Pt| Pt::new(p.x * s, -p.y * s);
    let all = shapes.iter().flat_map(|sh| sh.pts.iter().copied()).chain(outline.into_iter().flatten().copied());
    let (x, y, w, h) = match BBox::of(all.map(map)) {
        Some(b) => {
            let pad = MARGIN * b.width().max(b.height()).max(1e-9);
            (b.min.x - pad, b.min.y - pad, b.width() + 2.0 * pad, b.height() + 2.0 * pad)
        }
        None => (0.0, 0.0, 1.0, 1.0),
    };
    let mut out = String::new();
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(w),
        num(h),
        num(x),
        num(y),
        num(w),
        num(h)
    );
    let _ = writeln!(
        out,
        "<g stroke=\"{}\" stroke-width=\"{}\" stroke-linejoin=\"round\">",
        style.stroke,
        num(style.stroke_width)
    );
    let pts_attr =
        |pts: &[Pt]| pts.iter().map(|&p| map(p)).map(|p| format!("{},{}", num(p.x), num(p.y))).collect::<Vec<_>>();
    for sh in shapes {
        let _ = writeln!(
            out,
            "<polygon class=\"{}\" fill=\"{}\" points=\"{}\"/>",
            sh.tile,
            style.fills[sh.tile.index()],
            pts_attr(&sh.pts).join(" ")
        );
    }
    if let Some(o) = outline {
        let _ = writeln!(out, "<polyline class=\"outline\" fill=\"none\" points=\"{}\"/>", {
            let mut v = pts_attr(o);
            v.extend(pts_attr(&o[..1]));
            v.join(" ")
        });
    }
    out += "</g>\n";
    let ticks: Vec<&(Pt, Pt)> = shapes.iter().flat_map(|sh| sh.ticks.iter()).collect();
    if !ticks.is_empty() {
        let _ =
            writeln!(out, "<g class=\"labels\" stroke=\"#b00000\" stroke-width=\"{}\">", num(style.stroke_width * 1.5));
        for (a, b) in ticks {
            let (a, b) = (map(*a), map(*b));
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                num(a.x),
                num(a.y),
                num(b.x),
                num(b.y)
            );
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    out
}

/// One polygon per merged rhomb or unpaired half.
pub fn render_patch<T: RingScalar>(p: &Patch<T>, style: &RenderStyle) -> Result<String> {
    style.check()?;
    Ok(document(&shapes(&p.halves, style)?, None, style))
}

/// Seven copies of the patch turned by k·2π/7 about the origin. Overlaps
/// are not checked.
pub fn render_mandala<T: RingScalar>(p: &Patch<T>, style: &RenderStyle) -> Result<String> {
    style.check()?;
    Ok(document(&shapes(&mandala_halves(p)?, style)?, None, style))
}

pub fn mandala_halves<T: RingScalar>(p: &Patch<T>) -> Result<Vec<HalfTile<T>>> {
    let mut out = Vec::with_capacity(7 * p.len());
    for k in 0..7 {
        let turn = RigidMotion::new(4 * k, false, Cyclo::zero());
        for h in &p.halves {
            out.push(HalfTile::new(h.tile, h.split, h.side, turn.compose(&h.motion)?));
        }
    }
    Ok(out)
}

/// The children of one parent drawn inside the parent's outline.
pub fn render_rule(rules: &SubstRuleSet, parent: TileType, style: &RenderStyle) -> Result<String> {
    style.check()?;
    let halves: Vec<HalfTile<i64>> = rules.children_of(parent).iter().map(|c| c.half.clone()).collect();
    let outline = rules.region(parent)?.float();
    Ok(document(&shapes(&halves, style)?, Some(&outline), style))
}

/// Polygon vertex lists read back from a document written here.
pub fn polygon_points(svg: &str) -> Vec<Vec<Pt>> {
    svg.lines()
        .filter(|l| l.starts_with("<polygon"))
        .filter_map(|l| {
            let start = l.find("points=\"")? + 8;
            let end = start + l[start..].find('"')?;
            l[start..end]
                .split(' ')
                .map(|xy| {
                    let (x, y) = xy.split_once(',')?;
                    Some(Pt::new(x.parse().ok()?, y.parse().ok()?))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Seed;

    fn seed() -> Seed {
        Seed::new(2, 1, 0).unwrap()
    }

    #[test]
    fn single_a_is_one_polygon() {
        let svg = render_patch(&Patch::<i64>::single(TileType::A, seed()), &RenderStyle::default()).unwrap();
        assert_eq!(polygon_points(&svg).len(), 1);
        assert!(svg.contains("version=\"1.1\""));
    }

    #[test]
    fn unmerged_halves_are_triangles() {
        let style = RenderStyle { merge_halves: false, ..RenderStyle::default() };
        let svg = render_patch(&Patch::<i64>::single(TileType::C, seed()), &style).unwrap();
        let polys = polygon_points(&svg);
        assert_eq!(polys.len(), 2);
        assert!(polys.iter().all(|p| p.len() == 3));
    }

    #[test]
    fn empty_patch_is_valid() {
        let p = Patch::<i64>::new(Vec::new(), 0, seed());
        let svg = render_patch(&p, &RenderStyle::default()).unwrap();
        assert!(svg.ends_with("</svg>\n"));
        assert!(polygon_points(&svg).is_empty());
        assert!(polygon_points(&render_mandala(&p, &RenderStyle::default()).unwrap()).is_empty());
    }

    #[test]
    fn bad_scale_rejected() {
        let style = RenderStyle { scale: 0.0, ..RenderStyle::default() };
        assert!(render_patch(&Patch::<i64>::single(TileType::A, seed()), &style).is_err());
    }

    #[test]
    fn ticks_only_with_labels() {
        let p = Patch::<i64>::single(TileType::B, seed());
        let mut style = RenderStyle { show_labels: true, ..RenderStyle::default() };
        assert!(!render_patch(&p, &style).unwrap().contains("<line"));
        style.edge_labels = Some(crate::search::GROUP_E_LABELS);
        assert_eq!(render_patch(&p, &style).unwrap().matches("<line").count(), 4);
    }

    #[test]
    fn rhomb_sides_have_scale_length() {
        let style = RenderStyle::default();
        let svg = render_mandala(&Patch::<i64>::single(TileType::B, seed()), &style).unwrap();
        for poly in polygon_points(&svg) {
            assert_eq!(poly.len(), 4);
            for i in 0..4 {
                assert!((poly[i].dist(poly[(i + 1) % 4]) - style.scale).abs() < 1e-9);
            }
        }
    }
}
