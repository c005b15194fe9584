//! Geometric substitution rules: supertile regions, verification and
//! half-tile substitution.
//!
//! A rule maps each prototile to child half-tiles placed in the frame of
//! the inflated parent. Edges of the inflated parent are either straight
//! or V-bent: a bent edge of length Γ is replaced by two unit segments
//! whose apex sits outside (bump, label +1) or inside (dent, label −1) the
//! straight edge.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::{area_4i_matches, rhomb_area_in_a_units, shoelace_4i, Cyclo, CycloBig, CycloInt, RigidMotion};
use crate::error::{Error, Result};
use crate::geometry::{centroid, convex_inside, on_segment, Pt};
use crate::matrix::{build_matrix, inflation_factor_sq, Seed};
use crate::patch::{json_list, overlaps, HalfRecord, Patch};
use crate::phi::PhiNum;
use crate::scalar::RingScalar;
use crate::tile::{HalfTile, Split, TileType};

pub const RULE_SCHEMA: &str = "heptile-rules/1";

/// Default cap on the number of half-tiles a substitution may produce.
pub const DEFAULT_HALF_CAP: usize = 2_000_000;

pub type Labels = [i8; 4];

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RuleChild {
    pub half: HalfTile<i64>,
    pub labels: Labels,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubstRuleSet {
    pub name: String,
    pub seed: Seed,
    /// Exact lattice scalar δ applied to parent anchors.
    pub inflation: CycloInt,
    /// Parent edges are V-bent according to `edge_labels`.
    pub bent: bool,
    pub edge_labels: [Labels; 3],
    /// Labels children present on the two segments of a bump, in
    /// counter-clockwise order. A dent presents the reversed negation.
    pub bend_signature: Option<[i8; 2]>,
    pub children: [Vec<RuleChild>; 3],
}

/// Which part of the parent outline a boundary segment came from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SegKind {
    Straight { edge: usize },
    Bent { edge: usize, part: u8 },
}

#[derive(Clone, Debug)]
pub struct Region {
    pub vertices: Vec<CycloInt>,
    /// Kind of the segment leaving each vertex.
    pub kinds: Vec<SegKind>,
}

impl Region {
    pub fn float(&self) -> Vec<Pt> {
        self.vertices.iter().map(Pt::from_cyclo).collect()
    }

    pub fn segments(&self) -> impl Iterator<Item = (SegKind, &CycloInt, &CycloInt)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.kinds[i], &self.vertices[i], &self.vertices[(i + 1) % n]))
    }
}

/// Outline of the inflated prototile `t` with straight or V-bent edges.
/// Zero-angle spikes produced by two adjacent dents are removed.
pub fn supertile_region(t: TileType, inflation: &CycloInt, bent_labels: Option<&Labels>) -> Result<Region> {
    let corners = t.local_corners::<i64>();
    let mut verts = Vec::new();
    let mut kinds = Vec::new();
    if bent_labels.is_some() && *inflation != CycloInt::gamma() {
        return Err(Error::Invalid("bent edges need inflation Γ".into()));
    }
    for i in 0..4 {
        let p = corners[i].checked_mul(inflation)?;
        verts.push(p.clone());
        match bent_labels.map(|l| l[i]) {
            None | Some(0) => kinds.push(SegKind::Straight { edge: i }),
            Some(l) => {
                let dir = t.edge_direction(i);
                let turn = if l > 0 { -1 } else { 1 };
                kinds.push(SegKind::Bent { edge: i, part: 0 });
                verts.push(p.checked_add(&CycloInt::zeta_pow(dir + turn))?);
                kinds.push(SegKind::Bent { edge: i, part: 1 });
            }
        }
    }
    loop {
        let n = verts.len();
        let spike = (0..n).find(|&k| verts[(k + n - 1) % n] == verts[(k + 1) % n]);
        let Some(k) = spike else { break };
        let prev = (k + n - 1) % n;
        let next = (k + 1) % n;
        kinds[prev] = kinds[next];
        let (hi, lo) = if k > next { (k, next) } else { (next, k) };
        verts.remove(hi);
        kinds.remove(hi);
        verts.remove(lo);
        kinds.remove(lo);
    }
    Ok(Region { vertices: verts, kinds })
}

impl SubstRuleSet {
    pub fn delta_sq(&self) -> Result<PhiNum<BigRational>> {
        inflation_factor_sq(self.seed)
    }

    pub fn region(&self, t: TileType) -> Result<Region> {
        let labels = self.bent.then_some(&self.edge_labels[t.index()]);
        supertile_region(t, &self.inflation, labels)
    }

    pub fn children_of(&self, t: TileType) -> &[RuleChild] {
        &self.children[t.index()]
    }

    /// Returns a copy with one child removed (used to exercise failures).
    pub fn without_child(&self, t: TileType, idx: usize) -> Self {
        let mut out = self.clone();
        out.children[t.index()].remove(idx);
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct ParentReport {
    pub tile: Option<TileType>,
    pub area_ok: bool,
    pub lattice_area_ok: bool,
    pub outside: Vec<usize>,
    pub overlaps: Vec<(usize, usize)>,
    pub shared: Vec<usize>,
    pub boundary_issues: Vec<String>,
    pub counts: [BigRational; 3],
    pub counts_ok: bool,
}

impl ParentReport {
    pub fn passed(&self) -> bool {
        self.area_ok
            && self.lattice_area_ok
            && self.outside.is_empty()
            && self.overlaps.is_empty()
            && self.boundary_issues.is_empty()
            && self.counts_ok
    }

    /// Area, containment, disjointness and counts, without boundary labels.
    pub fn geometry_passed(&self) -> bool {
        self.area_ok && self.lattice_area_ok && self.outside.is_empty() && self.overlaps.is_empty() && self.counts_ok
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub name: String,
    pub global_issues: Vec<String>,
    pub parents: Vec<ParentReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.global_issues.is_empty() && self.parents.iter().all(ParentReport::passed)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = self.global_issues.clone();
        for p in &self.parents {
            let t = p.tile.map(|t| t.to_string()).unwrap_or_default();
            if !p.area_ok {
                out.push(format!("{t}: child areas do not sum to δ²·area"));
            }
            if !p.lattice_area_ok {
                out.push(format!("{t}: lattice area of outline differs from children"));
            }
            for i in &p.outside {
                out.push(format!("{t}: child {i} leaves the inflated parent"));
            }
            for (i, j) in &p.overlaps {
                out.push(format!("{t}: children {i} and {j} overlap"));
            }
            for s in &p.boundary_issues {
                out.push(format!("{t}: {s}"));
            }
            if !p.counts_ok {
                out.push(format!("{t}: counts {} differ from the matrix row", fmt_counts(&p.counts)));
            }
        }
        out
    }
}

pub fn fmt_counts(c: &[BigRational; 3]) -> String {
    format!("({}, {}, {})", c[0], c[1], c[2])
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rule set {}", self.name)?;
        for p in &self.parents {
            let t = p.tile.map(|t| t.to_string()).unwrap_or_default();
            writeln!(
                f,
                "  {t}: area {} lattice {} inside {} disjoint {} boundary {} counts {} {}",
                ok(p.area_ok),
                ok(p.lattice_area_ok),
                ok(p.outside.is_empty()),
                ok(p.overlaps.is_empty()),
                ok(p.boundary_issues.is_empty()),
                fmt_counts(&p.counts),
                ok(p.counts_ok),
            )?;
        }
        for s in self.failures() {
            writeln!(f, "  FAIL {s}")?;
        }
        writeln!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

fn half_area(t: TileType) -> PhiNum<BigRational> {
    rhomb_area_in_a_units(t).scale(&BigRational::new(1.into(), 2.into()))
}

fn oriented_4i(h: &HalfTile<i64>) -> Result<CycloBig> {
    let tri = h.vertices()?.map(|v| v.to_big());
    let s = shoelace_4i(&tri)?;
    Ok(if h.motion.refl { -&s } else { s })
}

fn seg_key(a: &CycloInt, b: &CycloInt) -> (CycloInt, CycloInt) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Runs every check on every parent type.
pub fn verify_rule(rules: &SubstRuleSet) -> VerifyReport {
    let mut global = Vec::new();
    let d2 = match rules.delta_sq() {
        Ok(d) => d,
        Err(e) => {
            return VerifyReport { name: rules.name.clone(), global_issues: vec![e.to_string()], parents: vec![] };
        }
    };
    let ints = d2.integer_coeffs().expect("seed gives integral δ²");
    let as_i64 = ints.map(|x| i64::try_from(x).unwrap_or(i64::MAX));
    match CycloInt::from_phi_int(&as_i64[0], &as_i64[1], &as_i64[2]) {
        Ok(d2_lattice) if rules.inflation.checked_mul(&rules.inflation).ok().as_ref() == Some(&d2_lattice) => {}
        _ => global.push("inflation scalar squared is not δ²".into()),
    }
    if rules.bent {
        if rules.inflation != CycloInt::gamma() {
            global.push("bent edges need inflation Γ".into());
        }
        if rules.edge_labels.iter().flatten().any(|&l| l != 1 && l != -1) {
            global.push("bent edge labels must be ±1".into());
        }
        if rules.bend_signature.is_none() {
            global.push("bent rule set without a bend signature".into());
        }
    }
    if !global.is_empty() {
        return VerifyReport { name: rules.name.clone(), global_issues: global, parents: vec![] };
    }
    let parents: Vec<ParentReport> = TileType::ALL.par_iter().map(|&t| verify_parent(rules, t, &d2)).collect();
    let shared_sigs: Vec<_> =
        TileType::ALL.iter().filter_map(|&t| straight_edge_signatures(rules, t).ok()).flatten().collect();
    if shared_sigs.windows(2).any(|w| w[0] != w[1]) {
        global.push("shared halves differ between straight parent edges".into());
    }
    VerifyReport { name: rules.name.clone(), global_issues: global, parents }
}

fn verify_parent(rules: &SubstRuleSet, t: TileType, d2: &PhiNum<BigRational>) -> ParentReport {
    let mut rep = ParentReport { tile: Some(t), ..Default::default() };
    let kids = rules.children_of(t);
    let region = match rules.region(t) {
        Ok(r) => r,
        Err(e) => {
            rep.boundary_issues.push(e.to_string());
            return rep;
        }
    };
    let target = d2 * &rhomb_area_in_a_units(t);

    // (1) exact area: by type and by lattice shoelace
    let mut sum = PhiNum::zero();
    for k in kids {
        sum = &sum + &half_area(k.half.tile);
    }
    rep.area_ok = sum == target;
    rep.lattice_area_ok = (|| -> Result<bool> {
        let outline: Vec<CycloBig> = region.vertices.iter().map(|v| v.to_big()).collect();
        let outline_4i = shoelace_4i(&outline)?;
        let mut kids_4i = CycloBig::zero();
        for k in kids {
            kids_4i = kids_4i.checked_add(&oriented_4i(&k.half)?)?;
        }
        Ok(outline_4i == kids_4i && area_4i_matches(&outline_4i, &target))
    })()
    .unwrap_or(false);

    // (2) containment and disjointness
    let poly = region.float();
    let tris: Vec<[Pt; 3]> = match kids.iter().map(|k| k.half.ccw_triangle()).collect::<Result<_>>() {
        Ok(v) => v,
        Err(e) => {
            rep.boundary_issues.push(e.to_string());
            return rep;
        }
    };
    rep.outside = tris.iter().enumerate().filter(|(_, tri)| !convex_inside(&tri[..], &poly)).map(|(i, _)| i).collect();
    rep.overlaps = overlaps(&tris);

    // (3) boundary consistency
    boundary_checks(rules, t, &region, &mut rep);

    // (4) counts, halves at weight ½
    let mut halves = [0i64; 3];
    for k in kids {
        halves[k.half.tile.index()] += 1;
    }
    rep.counts = halves.map(|n| BigRational::new(BigInt::from(n), BigInt::from(2)));
    let row = build_matrix(rules.seed).m[t.index()];
    rep.counts_ok = halves.iter().zip(row).all(|(h, r)| *h == 2 * r);
    rep
}

fn boundary_checks(rules: &SubstRuleSet, t: TileType, region: &Region, rep: &mut ParentReport) {
    let kids = rules.children_of(t);
    let segs: Vec<(SegKind, Pt, Pt)> =
        region.segments().map(|(k, a, b)| (k, Pt::from_cyclo(a), Pt::from_cyclo(b))).collect();
    let on_straight = |a: Pt, b: Pt| -> Option<usize> {
        segs.iter().find_map(|&(k, p, q)| match k {
            SegKind::Straight { edge } if on_segment(a, p, q) && on_segment(b, p, q) => Some(edge),
            _ => None,
        })
    };
    let sigma = rules.bend_signature;
    if let Some([s0, s1]) = sigma {
        if s0 != s1 {
            for (i, k) in kids.iter().enumerate() {
                if k.half.motion.refl {
                    rep.boundary_issues.push(format!("child {i} is reflected but the bend signature is chiral"));
                }
            }
        }
    }
    let mut edges: HashMap<(CycloInt, CycloInt), Vec<(usize, i8)>> = HashMap::new();
    for (i, k) in kids.iter().enumerate() {
        if k.labels != rules.edge_labels[k.half.tile.index()] {
            rep.boundary_issues.push(format!("child {i} carries labels {:?} unlike its prototile", k.labels));
        }
        let Ok((d0, d1)) = k.half.diagonal() else { continue };
        if on_straight(Pt::from_cyclo(&d0), Pt::from_cyclo(&d1)).is_some() {
            rep.shared.push(i);
        }
        let Ok(es) = k.half.rhomb_edges() else { continue };
        for (e, a, b) in es {
            edges.entry(seg_key(&a, &b)).or_default().push((i, k.labels[e]));
        }
    }
    let mut keys: Vec<_> = edges.keys().cloned().collect();
    keys.sort();
    for key in keys {
        let uses = &edges[&key];
        let (a, b) = (Pt::from_cyclo(&key.0), Pt::from_cyclo(&key.1));
        let outline = segs.iter().find(|&&(_, p, q)| on_segment(a, p, q) && on_segment(b, p, q));
        match (uses.len(), outline) {
            (1, Some(&(SegKind::Bent { edge, part }, _, _))) => {
                let Some([s0, s1]) = sigma else { continue };
                let want = if rules.edge_labels[t.index()][edge] > 0 { [s0, s1] } else { [-s1, -s0] };
                if uses[0].1 != want[part as usize] {
                    rep.boundary_issues.push(format!(
                        "child {} has label {} on bent edge {edge} part {part}, expected {}",
                        uses[0].0, uses[0].1, want[part as usize]
                    ));
                }
            }
            (1, Some(_)) => {}
            (1, None) => rep.boundary_issues.push(format!("child {} has an unmatched interior edge", uses[0].0)),
            (2, None) => {
                if uses[0].1 + uses[1].1 != 0 {
                    rep.boundary_issues.push(format!(
                        "children {} and {} meet with incompatible labels {} and {}",
                        uses[0].0, uses[1].0, uses[0].1, uses[1].1
                    ));
                }
            }
            (n, _) => rep.boundary_issues.push(format!("{n} child edges share one segment")),
        }
    }
    // Shared halves on each straight edge must look the same from both ends.
    if let Ok(sigs) = straight_edge_signatures(rules, t) {
        for (edge, sig) in sigs.iter().enumerate() {
            if *sig != reversed_signature(sig) {
                rep.boundary_issues.push(format!("shared halves on edge {edge} are not mirror-compatible"));
            }
        }
    }
    if rules.bent {
        if let Some(i) = rep.shared.first() {
            rep.boundary_issues.push(format!("child {i} straddles a bent outline"));
        }
    }
}

type EdgeSignature = Vec<(TileType, Split, i64, i64)>;

/// Shared halves on each straight edge, as positions along the edge in
/// micro-units.
fn straight_edge_signatures(rules: &SubstRuleSet, t: TileType) -> Result<Vec<EdgeSignature>> {
    let region = rules.region(t)?;
    let mut out = Vec::new();
    for (kind, p, q) in region.segments() {
        let SegKind::Straight { .. } = kind else { continue };
        let (p, q) = (Pt::from_cyclo(p), Pt::from_cyclo(q));
        let len = p.dist(q);
        let pos = |x: Pt| ((x - p).dot(q - p) / len * 1e6).round() as i64;
        let total = (len * 1e6).round() as i64;
        let mut sig = Vec::new();
        for k in rules.children_of(t) {
            let (d0, d1) = k.half.diagonal()?;
            let (a, b) = (Pt::from_cyclo(&d0), Pt::from_cyclo(&d1));
            if on_segment(a, p, q) && on_segment(b, p, q) {
                let (s, e) = (pos(a).min(pos(b)), pos(a).max(pos(b)));
                sig.push((k.half.tile, k.half.split, s, e));
            }
        }
        sig.sort();
        sig.push((TileType::A, Split::Long, total, total));
        out.push(sig);
    }
    Ok(out)
}

fn reversed_signature(sig: &EdgeSignature) -> EdgeSignature {
    let total = sig.last().map(|s| s.3).unwrap_or(0);
    let mut out: EdgeSignature =
        sig[..sig.len().saturating_sub(1)].iter().map(|&(t, s, a, b)| (t, s, total - b, total - a)).collect();
    out.sort();
    if let Some(last) = sig.last() {
        out.push(*last);
    }
    out
}

/// A rule set that passed [`verify_rule`], with children pre-sorted onto
/// the parent half that owns them.
#[derive(Clone, Debug)]
pub struct VerifiedRules {
    rules: SubstRuleSet,
    /// `owner[type][split][side]` lists child indices.
    owner: [[[Vec<usize>; 2]; 2]; 3],
}

impl VerifiedRules {
    pub fn new(rules: SubstRuleSet) -> Result<Self> {
        let rep = verify_rule(&rules);
        if !rep.passed() {
            return Err(Error::UnverifiedRules { name: rules.name.clone(), summary: rep.failures().join("; ") });
        }
        let mut owner: [[[Vec<usize>; 2]; 2]; 3] = Default::default();
        for t in TileType::ALL {
            let corners: Vec<Pt> = t
                .local_corners::<i64>()
                .iter()
                .map(|c| c.checked_mul(&rules.inflation).map(|z| Pt::from_cyclo(&z)))
                .collect::<Result<_>>()?;
            for (si, split) in [Split::Long, Split::Short].into_iter().enumerate() {
                let [a, _, b] = split.triangle(0);
                let (p, q) = (corners[a], corners[b]);
                for (ci, k) in rules.children_of(t).iter().enumerate() {
                    let c = centroid(&k.half.ccw_triangle()?);
                    let s = (q - p).cross(c - p);
                    // Side 0 lies to the right of the diagonal P_a → P_b; a
                    // centroid on the diagonal itself goes to side 0.
                    owner[t.index()][si][usize::from(s > 1e-9)].push(ci);
                }
            }
        }
        Ok(VerifiedRules { rules, owner })
    }

    pub fn rules(&self) -> &SubstRuleSet {
        &self.rules
    }

    pub fn seed(&self) -> Seed {
        self.rules.seed
    }

    fn owned(&self, h: &HalfTile<impl RingScalar>) -> &[usize] {
        let si = match h.split {
            Split::Long => 0,
            Split::Short => 1,
        };
        &self.owner[h.tile.index()][si][h.side as usize]
    }

    /// Number of halves one step of substitution would produce.
    pub fn output_len<T: RingScalar>(&self, p: &Patch<T>) -> usize {
        p.halves.iter().map(|h| self.owned(h).len()).sum()
    }
}

fn convert<T: RingScalar>(z: &CycloInt) -> Cyclo<T> {
    Cyclo::from_coeffs(z.as_array().map(|c| T::from_i64(c).expect("coefficient fits")))
}

/// One inflate-and-subdivide step. Children come out grouped by parent, in
/// parent order, each group in rule order.
pub fn substitute<T>(p: &Patch<T>, rules: &VerifiedRules, cap: usize) -> Result<Patch<T>>
where
    T: RingScalar + Send + Sync,
{
    let n = rules.output_len(p);
    if n > cap {
        return Err(Error::PatchTooLarge { cap });
    }
    let delta: Cyclo<T> = convert(&rules.rules.inflation);
    let kids: Vec<Vec<RigidMotion<T>>> = (0..3)
        .map(|t| {
            rules.rules.children[t]
                .iter()
                .map(|k| {
                    let m = &k.half.motion;
                    RigidMotion::new(m.rot as i64, m.refl, convert(&m.shift))
                })
                .collect()
        })
        .collect();
    let groups: Vec<Vec<HalfTile<T>>> = p
        .halves
        .par_iter()
        .map(|h| -> Result<Vec<HalfTile<T>>> {
            let frame = h.motion.with_scaled_shift(&delta)?;
            rules
                .owned(h)
                .iter()
                .map(|&ci| {
                    let k = &rules.rules.children[h.tile.index()][ci].half;
                    let m = frame.compose(&kids[h.tile.index()][ci])?;
                    Ok(HalfTile::new(k.tile, k.split, k.side, m))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut halves = Vec::with_capacity(n);
    for g in groups {
        halves.extend(g);
    }
    Ok(Patch::new(halves, p.generation + 1, rules.seed()))
}

/// Generation-`n` patch grown from a single whole prototile.
pub fn generate<T>(rules: &VerifiedRules, tile: TileType, n: u32, cap: usize) -> Result<Patch<T>>
where
    T: RingScalar + Send + Sync,
{
    let mut p = Patch::single(tile, rules.seed());
    for _ in 0..n {
        p = substitute(&p, rules, cap)?;
    }
    Ok(p)
}

#[derive(Serialize, Deserialize, Debug)]
struct ChildRecord {
    #[serde(flatten)]
    half: HalfRecord,
    labels: Labels,
}

#[derive(Serialize, Deserialize, Debug)]
struct RuleFile {
    schema: String,
    name: String,
    seed: [i64; 3],
    inflation: CycloInt,
    bent: bool,
    edge_labels: BTreeMap<TileType, Labels>,
    bend_signature: Option<[i8; 2]>,
    children: BTreeMap<TileType, Vec<ChildRecord>>,
}

impl SubstRuleSet {
    /// JSON text with one child record per line.
    pub fn to_json(&self) -> Result<String> {
        let mut out = String::from("{\n");
        out += &format!("  \"schema\": {},\n", serde_json::to_string(RULE_SCHEMA)?);
        out += &format!("  \"name\": {},\n", serde_json::to_string(&self.name)?);
        out += &format!("  \"seed\": {},\n", serde_json::to_string(&[self.seed.a, self.seed.b, self.seed.c])?);
        out += &format!("  \"inflation\": {},\n", serde_json::to_string(&self.inflation)?);
        out += &format!("  \"bent\": {},\n", self.bent);
        let labels: Vec<String> = TileType::ALL
            .iter()
            .map(|t| Ok(format!("\"{t}\": {}", serde_json::to_string(&self.edge_labels[t.index()])?)))
            .collect::<Result<_>>()?;
        out += &format!("  \"edge_labels\": {{{}}},\n", labels.join(", "));
        out += &format!("  \"bend_signature\": {},\n", serde_json::to_string(&self.bend_signature)?);
        out += "  \"children\": {\n";
        let groups: Vec<String> = TileType::ALL
            .iter()
            .map(|t| {
                let recs: Vec<ChildRecord> = self.children[t.index()]
                    .iter()
                    .map(|k| ChildRecord { half: HalfRecord::from_half(&k.half), labels: k.labels })
                    .collect();
                Ok(format!("    \"{t}\": {}", json_list(&recs, 4)?))
            })
            .collect::<Result<_>>()?;
        out += &groups.join(",\n");
        out += "\n  }\n}\n";
        Ok(out)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: RuleFile = serde_json::from_str(s)?;
        if file.schema != RULE_SCHEMA {
            return Err(Error::Schema { found: file.schema, expected: RULE_SCHEMA.to_string() });
        }
        let [a, b, c] = file.seed;
        let mut edge_labels = [[0i8; 4]; 3];
        let mut children: [Vec<RuleChild>; 3] = Default::default();
        for t in TileType::ALL {
            edge_labels[t.index()] = file.edge_labels.get(&t).copied().unwrap_or_default();
            if let Some(recs) = file.children.get(&t) {
                for r in recs {
                    children[t.index()].push(RuleChild { half: r.half.to_half()?, labels: r.labels });
                }
            }
        }
        Ok(SubstRuleSet {
            name: file.name,
            seed: Seed::new(a, b, c)?,
            inflation: file.inflation,
            bent: file.bent,
            edge_labels,
            bend_signature: file.bend_signature,
            children,
        })
    }
}

const GROUP_E_JSON: &str = include_str!("../data/rules/group_e.json");
const GROUP_E_ALT_JSON: &str = include_str!("../data/rules/group_e_alt.json");
const GROUP_F_JSON: &str = include_str!("../data/rules/group_f.json");

/// Bundled rule set for a summary-table group, verified on load.
pub fn bundled(group: char) -> Result<VerifiedRules> {
    let src = match group.to_ascii_uppercase() {
        'E' => GROUP_E_JSON,
        'F' => GROUP_F_JSON,
        other => return Err(Error::Invalid(format!("no bundled geometric rules for group {other}"))),
    };
    VerifiedRules::new(SubstRuleSet::from_json(src)?)
}

/// The second valid group-E rule, which differs in the A parent.
pub fn group_e_alternate() -> Result<VerifiedRules> {
    VerifiedRules::new(SubstRuleSet::from_json(GROUP_E_ALT_JSON)?)
}

/// Each rhomb becomes four copies of itself at edge 2.
pub fn group_f_rules() -> SubstRuleSet {
    let mut children: [Vec<RuleChild>; 3] = Default::default();
    for t in TileType::ALL {
        let side = CycloInt::zeta_pow(t.acute_steps());
        let one = CycloInt::one();
        for shift in [CycloInt::zero(), one.clone(), side.clone(), &one + &side] {
            for h in HalfTile::whole(t, RigidMotion::translation(shift)) {
                children[t.index()].push(RuleChild { half: h, labels: [0; 4] });
            }
        }
    }
    SubstRuleSet {
        name: "group-F".into(),
        seed: Seed::new(4, 0, 0).expect("valid seed"),
        inflation: CycloInt::from_i64(2),
        bent: false,
        edge_labels: [[0; 4]; 3],
        bend_signature: None,
        children,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_rules_verify() {
        let rep = verify_rule(&group_f_rules());
        assert!(rep.passed(), "{rep}");
        for p in &rep.parents {
            let n: Vec<String> = p.counts.iter().map(|c| c.to_string()).collect();
            let mut want = vec!["0".to_string(); 3];
            want[p.tile.unwrap().index()] = "4".into();
            assert_eq!(n, want);
        }
    }

    #[test]
    fn removing_a_child_breaks_area() {
        let r = group_f_rules().without_child(TileType::B, 0);
        let rep = verify_rule(&r);
        assert!(!rep.passed());
        assert!(!rep.parents[1].area_ok);
    }

    #[test]
    fn pinched_outline_is_simplified() {
        let r = supertile_region(TileType::A, &CycloInt::gamma(), Some(&[1, -1, -1, 1])).unwrap();
        // Four corners plus four apexes, minus the spike at P2 and one apex.
        assert_eq!(r.vertices.len(), 6);
        let area = crate::geometry::polygon_area(&r.float());
        let want = PhiNum::<BigRational>::from_ints(2, 1, 0).embed::<f64>() * (std::f64::consts::PI / 7.0).sin();
        assert!((area - want).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let r = group_f_rules();
        let back = SubstRuleSet::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn unverified_rules_are_refused() {
        let r = group_f_rules().without_child(TileType::A, 3);
        assert!(matches!(VerifiedRules::new(r), Err(Error::UnverifiedRules { .. })));
    }
}
