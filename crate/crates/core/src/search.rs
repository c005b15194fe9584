//! Backtracking exact-cover search for substitution rules.
//!
//! The inflated parent outline is filled one piece at a time. Each step
//! picks the lexicographically smallest vertex that still has an uncovered
//! angular sector and tries every piece with a corner there, aligned with
//! the start of the gap. All directions are multiples of π/14, so 28
//! sectors per vertex decide coverage exactly.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::cyclo::{CycloInt, RigidMotion};
use crate::error::{Error, Result};
use crate::geometry::{convex_inside, convex_overlap, locate, on_segment, Location, Pt};
use crate::matrix::{build_matrix, inflation_factor, inflation_multiplier, Seed};
use crate::patch::Patch;
use crate::rules::{supertile_region, verify_rule, Labels, Region, RuleChild, SegKind, SubstRuleSet, VerifiedRules};
use crate::tile::{HalfTile, Split, TileType};

pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Plain inflated rhomb.
    Straight,
    /// V-bent edges given by the parent's prototile labels (needs δ = Γ).
    Labelled(Labels),
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub seed: Seed,
    pub parent: TileType,
    pub allow_boundary_straddlers: bool,
    pub max_nodes: u64,
    pub dedupe_symmetries: bool,
    pub boundary: Boundary,
    pub use_precheck: bool,
}

impl SearchConfig {
    pub fn new(seed: Seed, parent: TileType) -> Self {
        SearchConfig {
            seed,
            parent,
            allow_boundary_straddlers: true,
            max_nodes: DEFAULT_MAX_NODES,
            dedupe_symmetries: true,
            boundary: Boundary::Straight,
            use_precheck: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    Exhausted,
    BudgetExceeded,
}

impl std::fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchStatus::Found => "found",
            SearchStatus::Exhausted => "exhausted",
            SearchStatus::BudgetExceeded => "budget_exceeded",
        })
    }
}

/// One decomposition of a single parent, as child half-tiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragment {
    pub parent: TileType,
    pub halves: Vec<HalfTile<i64>>,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub fragments: Vec<Fragment>,
    pub nodes_explored: u64,
    pub precheck: Option<Precheck>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Precheck {
    Feasible(String),
    Infeasible(String),
}

impl Precheck {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Precheck::Feasible(_))
    }
}

/// Segment lengths that may make up a straight inflated edge.
fn boundary_lengths(straddlers: bool) -> Vec<(&'static str, f64)> {
    let s = |k: f64| 2.0 * (k * std::f64::consts::PI / 14.0).sin();
    let c = |k: f64| 2.0 * (k * std::f64::consts::PI / 14.0).cos();
    let mut v = vec![("1", 1.0)];
    if straddlers {
        v.extend([("γ", s(1.0)), ("Γ", c(1.0)), ("φ", s(2.0)), ("Φ", c(2.0)), ("ψ", s(3.0)), ("Ψ", c(3.0))]);
    }
    v
}

/// Necessary condition: δ must be a non-negative integer combination of
/// the available boundary segment lengths.
pub fn edge_precheck(seed: Seed, parent: TileType, straddlers: bool) -> Precheck {
    let _ = parent;
    let delta = match inflation_factor(seed) {
        Ok(d) => d,
        Err(e) => return Precheck::Infeasible(e.to_string()),
    };
    let lens = boundary_lengths(straddlers);
    fn rec(lens: &[(&str, f64)], i: usize, left: f64, used: &mut Vec<(usize, u32)>) -> bool {
        if left.abs() < 1e-9 {
            return true;
        }
        if i == lens.len() || left < 0.0 {
            return false;
        }
        let max = ((left + 1e-9) / lens[i].1).floor() as u32;
        for n in (0..=max).rev() {
            if n > 0 {
                used.push((i, n));
            }
            if rec(lens, i + 1, left - n as f64 * lens[i].1, used) {
                return true;
            }
            if n > 0 {
                used.pop();
            }
        }
        false
    }
    let mut used = Vec::new();
    if rec(&lens, 0, delta, &mut used) {
        let terms: Vec<String> = used.iter().map(|&(i, n)| format!("{n}·{}", lens[i].0)).collect();
        Precheck::Feasible(format!("δ = {delta:.6} = {}", terms.join(" + ")))
    } else {
        Precheck::Infeasible(format!("δ = {delta:.6} is no sum of available segment lengths"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Whole(TileType),
    Half(TileType, Split),
}

impl Kind {
    fn tile(self) -> TileType {
        match self {
            Kind::Whole(t) | Kind::Half(t, _) => t,
        }
    }

    fn cost(self) -> i64 {
        match self {
            Kind::Whole(_) => 2,
            Kind::Half(..) => 1,
        }
    }

    /// Counter-clockwise local outline.
    fn local(self) -> Vec<CycloInt> {
        match self {
            Kind::Whole(t) => t.local_corners::<i64>().to_vec(),
            Kind::Half(t, s) => {
                let c = t.local_corners::<i64>();
                s.triangle(0).iter().map(|&i| c[i].clone()).collect()
            }
        }
    }
}

#[derive(Clone, Debug)]
struct CornerOption {
    kind: Kind,
    local: CycloInt,
    dir_out: i64,
    angle: usize,
}

fn direction_steps(d: Pt) -> i64 {
    let a = d.y.atan2(d.x) / (std::f64::consts::PI / 14.0);
    (a.round() as i64).rem_euclid(28)
}

fn corner_options(kinds: &[Kind]) -> Vec<CornerOption> {
    let mut out = Vec::new();
    for &kind in kinds {
        let local = kind.local();
        let pts: Vec<Pt> = local.iter().map(Pt::from_cyclo).collect();
        let n = pts.len();
        for j in 0..n {
            let dir_out = direction_steps(pts[(j + 1) % n] - pts[j]);
            let dir_in = direction_steps(pts[(j + n - 1) % n] - pts[j]);
            let angle = (dir_in - dir_out).rem_euclid(28) as usize;
            out.push(CornerOption { kind, local: local[j].clone(), dir_out, angle });
        }
    }
    out
}

#[derive(Clone, Debug)]
struct Piece {
    kind: Kind,
    motion: RigidMotion<i64>,
    verts: Vec<CycloInt>,
    poly: Vec<Pt>,
}

impl Piece {
    fn place(kind: Kind, motion: RigidMotion<i64>) -> Result<Self> {
        let verts: Vec<CycloInt> = kind.local().iter().map(|p| motion.apply(p)).collect::<Result<_>>()?;
        let poly = verts.iter().map(Pt::from_cyclo).collect();
        Ok(Piece { kind, motion, verts, poly })
    }

    fn key(&self) -> PieceKey {
        let mut v: Vec<[i64; 12]> = self.verts.iter().map(|z| z.as_array()).collect();
        v.sort();
        (self.kind, v)
    }

    fn halves(&self) -> Vec<HalfTile<i64>> {
        match self.kind {
            Kind::Whole(t) => HalfTile::whole(t, self.motion.clone()).to_vec(),
            Kind::Half(t, s) => vec![HalfTile::new(t, s, 0, self.motion.clone())],
        }
    }
}

type PieceKey = (Kind, Vec<[i64; 12]>);

struct Searcher {
    region: Region,
    poly: Vec<Pt>,
    straight: Vec<(Pt, Pt)>,
    options: Vec<CornerOption>,
    nodes: AtomicU64,
    max_nodes: u64,
    aborted: AtomicBool,
}

const SAMPLE_RADIUS: f64 = 1e-6;

impl Searcher {
    fn covered(&self, v: Pt, placed: &[Piece]) -> [bool; 28] {
        let near: Vec<&Piece> = placed.iter().filter(|p| locate(&p.poly, v) != Location::Outside).collect();
        std::array::from_fn(|s| {
            let q = v + Pt::polar(SAMPLE_RADIUS, (s as f64 + 0.5) * std::f64::consts::PI / 14.0);
            locate(&self.poly, q) != Location::Inside || near.iter().any(|p| locate(&p.poly, q) == Location::Inside)
        })
    }

    /// Smallest vertex with an uncovered sector, and the gap there.
    fn frontier(&self, placed: &[Piece]) -> Option<(CycloInt, i64, usize)> {
        let grid = |p: &Pt| ((p.x * 1e7).round() as i64, (p.y * 1e7).round() as i64);
        let mut verts: Vec<(i64, i64, &CycloInt)> = Vec::new();
        let pairs = self.region.vertices.iter().zip(&self.poly);
        let placed_pairs = placed.iter().flat_map(|pc| pc.verts.iter().zip(&pc.poly));
        for (z, p) in pairs.chain(placed_pairs) {
            let (x, y) = grid(p);
            verts.push((x, y, z));
        }
        verts.sort_by_key(|a| (a.0, a.1));
        verts.dedup_by(|a, b| (a.0, a.1) == (b.0, b.1));
        for (_, _, z) in verts {
            let cov = self.covered(Pt::from_cyclo(z), placed);
            if cov.iter().all(|&c| c) {
                continue;
            }
            let s0 = (0..28).find(|&s| cov[(s + 27) % 28] && !cov[s]).unwrap_or(0);
            let len = (0..28).take_while(|&k| !cov[(s0 + k) % 28]).count();
            return Some((z.clone(), s0 as i64, len));
        }
        None
    }

    fn fits(&self, piece: &Piece, placed: &[Piece]) -> bool {
        if !convex_inside(&piece.poly, &self.poly) {
            return false;
        }
        if placed.iter().any(|p| convex_overlap(&p.poly, &piece.poly)) {
            return false;
        }
        if let Kind::Half(..) = piece.kind {
            // The cutting diagonal must lie on a straight outline edge.
            let (a, b) = (piece.poly[2], piece.poly[0]);
            return self.straight.iter().any(|&(p, q)| on_segment(a, p, q) && on_segment(b, p, q));
        }
        true
    }

    fn candidates(&self, placed: &[Piece], budget: &[i64; 3]) -> Result<Option<Vec<Piece>>> {
        let Some((v, s0, gap)) = self.frontier(placed) else { return Ok(None) };
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for opt in &self.options {
            if opt.angle > gap || budget[opt.kind.tile().index()] < opt.kind.cost() {
                continue;
            }
            let rot = s0 - opt.dir_out;
            let shift = v.checked_sub(&opt.local.mul_zeta_pow(rot)?)?;
            let piece = Piece::place(opt.kind, RigidMotion::new(rot, false, shift))?;
            let key = piece.key();
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            if self.fits(&piece, placed) {
                out.push(piece);
            }
        }
        Ok(Some(out))
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.max_nodes {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    fn rec(&self, placed: &mut Vec<Piece>, budget: &mut [i64; 3], sols: &mut Vec<Vec<Piece>>) -> Result<()> {
        if !self.tick() {
            return Ok(());
        }
        if budget.iter().all(|&b| b == 0) {
            if self.frontier(placed).is_none() {
                sols.push(placed.clone());
            }
            return Ok(());
        }
        let Some(cands) = self.candidates(placed, budget)? else { return Ok(()) };
        for piece in cands {
            let t = piece.kind.tile().index();
            let cost = piece.kind.cost();
            budget[t] -= cost;
            placed.push(piece);
            self.rec(placed, budget, sols)?;
            placed.pop();
            budget[t] += cost;
        }
        Ok(())
    }
}

/// Region symmetries (as motions) that map the outline onto itself.
fn region_symmetries(region: &Region, parent: TileType, delta: &CycloInt) -> Result<Vec<RigidMotion<i64>>> {
    let far = CycloInt::one().checked_add(&CycloInt::zeta_pow(parent.acute_steps()))?.checked_mul(delta)?;
    let acute = parent.acute_steps();
    let long_refl = RigidMotion::new(acute, true, CycloInt::zero());
    let half_turn = RigidMotion::new(14, false, far);
    let short_refl = half_turn.compose(&long_refl)?;
    let mut want: Vec<CycloInt> = region.vertices.clone();
    want.sort();
    let mut out = vec![RigidMotion::identity()];
    for m in [half_turn, long_refl, short_refl] {
        let mut img: Vec<CycloInt> = region.vertices.iter().map(|v| m.apply(v)).collect::<Result<_>>()?;
        img.sort();
        if img == want {
            out.push(m);
        }
    }
    Ok(out)
}

fn solution_key(pieces: &[Piece]) -> Vec<PieceKey> {
    let mut k: Vec<PieceKey> = pieces.iter().map(Piece::key).collect();
    k.sort();
    k
}

fn transform_solution(pieces: &[Piece], m: &RigidMotion<i64>) -> Result<Vec<Piece>> {
    pieces.iter().map(|p| Piece::place(p.kind, m.compose(&p.motion)?)).collect()
}

pub fn search_region(cfg: &SearchConfig) -> Result<(Region, CycloInt)> {
    let delta = match &cfg.boundary {
        Boundary::Labelled(_) => CycloInt::gamma(),
        Boundary::Straight => {
            inflation_multiplier(cfg.seed).ok_or_else(|| Error::NonLatticeInflation(cfg.seed.to_string()))?
        }
    };
    let labels = match &cfg.boundary {
        Boundary::Labelled(l) => {
            if cfg.seed != Seed::new_unchecked(2, 1, 0) {
                return Err(Error::Invalid("bent outlines exist only for inflation Γ".into()));
            }
            Some(l)
        }
        Boundary::Straight => None,
    };
    Ok((supertile_region(cfg.parent, &delta, labels)?, delta))
}

/// Tiles one inflated parent with whole rhombs and, when enabled, halves
/// straddling straight edges.
pub fn search_decomposition(cfg: &SearchConfig) -> Result<SearchOutcome> {
    if cfg.max_nodes == 0 {
        return Err(Error::Invalid("max_nodes must be positive".into()));
    }
    if inflation_factor(cfg.seed)? < 1.0 - 1e-12 {
        return Err(Error::Invalid("inflation factor below 1".into()));
    }
    let precheck = match (&cfg.boundary, cfg.use_precheck) {
        (_, false) => None,
        (Boundary::Labelled(_), true) => Some(Precheck::Feasible("bent outline made of unit segments".into())),
        (Boundary::Straight, true) => Some(edge_precheck(cfg.seed, cfg.parent, cfg.allow_boundary_straddlers)),
    };
    if let Some(p @ Precheck::Infeasible(_)) = &precheck {
        return Ok(SearchOutcome {
            status: SearchStatus::Exhausted,
            fragments: vec![],
            nodes_explored: 0,
            precheck: Some(p.clone()),
        });
    }
    let (region, delta) = search_region(cfg)?;
    let poly = region.float();
    let straight = region
        .segments()
        .filter(|(k, _, _)| matches!(k, SegKind::Straight { .. }))
        .map(|(_, a, b)| (Pt::from_cyclo(a), Pt::from_cyclo(b)))
        .collect();
    let mut kinds: Vec<Kind> = TileType::ALL.iter().map(|&t| Kind::Whole(t)).collect();
    if cfg.allow_boundary_straddlers {
        for t in TileType::ALL {
            kinds.push(Kind::Half(t, Split::Long));
            kinds.push(Kind::Half(t, Split::Short));
        }
    }
    let searcher = Searcher {
        region: region.clone(),
        poly,
        straight,
        options: corner_options(&kinds),
        nodes: AtomicU64::new(0),
        max_nodes: cfg.max_nodes,
        aborted: AtomicBool::new(false),
    };
    let row = build_matrix(cfg.seed).m[cfg.parent.index()];
    let budget0 = row.map(|x| 2 * x);

    // Root branches run in parallel; results are merged in canonical order.
    searcher.tick();
    let roots = searcher.candidates(&[], &budget0)?.unwrap_or_default();
    let branches: Vec<Vec<Vec<Piece>>> = roots
        .into_par_iter()
        .map(|piece| -> Result<Vec<Vec<Piece>>> {
            let mut budget = budget0;
            budget[piece.kind.tile().index()] -= piece.kind.cost();
            let mut placed = vec![piece];
            let mut sols = Vec::new();
            searcher.rec(&mut placed, &mut budget, &mut sols)?;
            Ok(sols)
        })
        .collect::<Result<_>>()?;
    let syms = if cfg.dedupe_symmetries {
        region_symmetries(&region, cfg.parent, &delta)?
    } else {
        vec![RigidMotion::identity()]
    };
    let mut unique: BTreeMap<Vec<PieceKey>, Vec<Piece>> = BTreeMap::new();
    for sol in branches.into_iter().flatten() {
        let mut rep = solution_key(&sol);
        for m in &syms[1..] {
            rep = rep.min(solution_key(&transform_solution(&sol, m)?));
        }
        unique.entry(rep).or_insert(sol);
    }
    let fragments: Vec<Fragment> = unique
        .into_values()
        .map(|sol| {
            let mut pieces = sol;
            pieces.sort_by_key(Piece::key);
            Fragment { parent: cfg.parent, halves: pieces.iter().flat_map(Piece::halves).collect() }
        })
        .collect();
    let aborted = searcher.aborted.load(Ordering::Relaxed);
    let status = if aborted {
        SearchStatus::BudgetExceeded
    } else if fragments.is_empty() {
        SearchStatus::Exhausted
    } else {
        SearchStatus::Found
    };
    Ok(SearchOutcome {
        status,
        fragments,
        nodes_explored: searcher.nodes.load(Ordering::Relaxed).min(cfg.max_nodes),
        precheck,
    })
}

/// Prototile edge labels of the minimal tiling (+1 bump, −1 dent).
pub const GROUP_E_LABELS: [Labels; 3] = [[1, -1, -1, 1], [1, 1, -1, -1], [1, -1, -1, 1]];
/// Bump signature of the minimal tiling.
pub const GROUP_E_SIGNATURE: [i8; 2] = [1, -1];

/// Label-consistent orientations of one geometric fragment. Whole pieces
/// may be turned by π; with `direct_only` no reflections are tried.
pub fn orient_fragment(
    frag: &Fragment,
    labels: &[Labels; 3],
    sigma: [i8; 2],
    direct_only: bool,
) -> Result<Vec<Vec<RuleChild>>> {
    let t = frag.parent;
    let region = supertile_region(t, &CycloInt::gamma(), Some(&labels[t.index()]))?;
    let mut want: HashMap<(CycloInt, CycloInt), i8> = HashMap::new();
    for (kind, a, b) in region.segments() {
        if let SegKind::Bent { edge, part } = kind {
            let [s0, s1] = sigma;
            let w = if labels[t.index()][edge] > 0 { [s0, s1] } else { [-s1, -s0] };
            want.insert(key(a, b), w[part as usize]);
        }
    }
    // Whole pieces only: halves come in co-placed pairs.
    let mut wholes: Vec<(TileType, RigidMotion<i64>)> = Vec::new();
    for pair in frag.halves.chunks(2) {
        if pair.len() != 2 || pair[0].complement() != pair[1] {
            return Err(Error::Invalid("orientation needs whole pieces".into()));
        }
        wholes.push((pair[0].tile, pair[0].motion.clone()));
    }
    let variants: Vec<Vec<RigidMotion<i64>>> = wholes
        .iter()
        .map(|(ct, m)| rhomb_symmetries(*ct, direct_only).iter().map(|s| m.compose(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    orient_rec(&wholes, &variants, labels, &want, 0, &mut HashMap::new(), &mut chosen, &mut out)?;
    Ok(out)
}

fn key(a: &CycloInt, b: &CycloInt) -> (CycloInt, CycloInt) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Motions of the unit rhomb onto itself.
fn rhomb_symmetries(t: TileType, direct_only: bool) -> Vec<RigidMotion<i64>> {
    let far = CycloInt::one() + CycloInt::zeta_pow(t.acute_steps());
    let half_turn = RigidMotion::new(14, false, far);
    let mut v = vec![RigidMotion::identity(), half_turn.clone()];
    if !direct_only {
        let long_refl = RigidMotion::new(t.acute_steps(), true, CycloInt::zero());
        let short_refl = half_turn.compose(&long_refl).expect("small coefficients");
        v.extend([long_refl, short_refl]);
    }
    v
}

#[allow(clippy::too_many_arguments)]
fn orient_rec(
    wholes: &[(TileType, RigidMotion<i64>)],
    variants: &[Vec<RigidMotion<i64>>],
    labels: &[Labels; 3],
    want: &HashMap<(CycloInt, CycloInt), i8>,
    j: usize,
    open: &mut HashMap<(CycloInt, CycloInt), i8>,
    chosen: &mut Vec<RigidMotion<i64>>,
    out: &mut Vec<Vec<RuleChild>>,
) -> Result<()> {
    if j == wholes.len() {
        let mut kids = Vec::new();
        for ((ct, _), m) in wholes.iter().zip(chosen.iter()) {
            for h in HalfTile::whole(*ct, m.clone()) {
                kids.push(RuleChild { half: h, labels: labels[ct.index()] });
            }
        }
        out.push(kids);
        return Ok(());
    }
    let ct = wholes[j].0;
    for m in &variants[j] {
        let corners = ct.local_corners::<i64>().iter().map(|p| m.apply(p)).collect::<Result<Vec<_>>>()?;
        let mut touched = Vec::new();
        let mut ok = true;
        for e in 0..4 {
            let k = key(&corners[e], &corners[(e + 1) % 4]);
            let v = labels[ct.index()][e];
            if let Some(&w) = want.get(&k) {
                if w != v {
                    ok = false;
                    break;
                }
            } else if let Some(&prev) = open.get(&k) {
                if prev + v != 0 {
                    ok = false;
                    break;
                }
                touched.push((k, Some(prev)));
                open.remove(&touched.last().unwrap().0);
            } else {
                open.insert(k.clone(), v);
                touched.push((k, None));
            }
        }
        if ok {
            chosen.push(m.clone());
            orient_rec(wholes, variants, labels, want, j + 1, open, chosen, out)?;
            chosen.pop();
        }
        for (k, prev) in touched.into_iter().rev() {
            match prev {
                Some(p) => {
                    open.insert(k, p);
                }
                None => {
                    open.remove(&k);
                }
            }
        }
    }
    Ok(())
}

/// True when generations 1..=`gens` from each prototile stay overlap-free.
pub fn survives_generations(rules: &VerifiedRules, gens: u32) -> Result<bool> {
    for t in TileType::ALL {
        let mut p: Patch<i64> = Patch::single(t, rules.seed());
        for _ in 0..gens {
            p = crate::rules::substitute(&p, rules, usize::MAX)?;
            if !p.overlapping_pairs()?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct Discovery {
    pub rule_sets: Vec<SubstRuleSet>,
    pub nodes_explored: u64,
    pub fragments_per_parent: [usize; 3],
}

/// Recovers the minimal tiling's rules: bent-outline search per parent,
/// label-consistent direct orientations, then a multi-generation overlap
/// check on every combination.
pub fn discover_group_e(max_nodes: u64, gens: u32) -> Result<Discovery> {
    let seed = Seed::new(2, 1, 0)?;
    let mut per_parent: Vec<Vec<Vec<RuleChild>>> = Vec::new();
    let mut nodes = 0;
    let mut frag_counts = [0usize; 3];
    for t in TileType::ALL {
        let mut cfg = SearchConfig::new(seed, t);
        cfg.boundary = Boundary::Labelled(GROUP_E_LABELS[t.index()]);
        cfg.max_nodes = max_nodes;
        cfg.dedupe_symmetries = false;
        let out = search_decomposition(&cfg)?;
        nodes += out.nodes_explored;
        frag_counts[t.index()] = out.fragments.len();
        if out.status != SearchStatus::Found {
            return Err(Error::Invalid(format!("no bent decomposition of {t}: {}", out.status)));
        }
        let mut opts = Vec::new();
        for f in &out.fragments {
            opts.extend(orient_fragment(f, &GROUP_E_LABELS, GROUP_E_SIGNATURE, true)?);
        }
        per_parent.push(opts);
    }
    let mut found = Vec::new();
    for a in &per_parent[0] {
        for b in &per_parent[1] {
            for c in &per_parent[2] {
                let rules = SubstRuleSet {
                    name: format!("group-E-{}", found.len()),
                    seed,
                    inflation: CycloInt::gamma(),
                    bent: true,
                    edge_labels: GROUP_E_LABELS,
                    bend_signature: Some(GROUP_E_SIGNATURE),
                    children: [a.clone(), b.clone(), c.clone()],
                };
                if !verify_rule(&rules).passed() {
                    continue;
                }
                let Ok(v) = VerifiedRules::new(rules.clone()) else { continue };
                if survives_generations(&v, gens)? {
                    found.push(rules);
                }
            }
        }
    }
    Ok(Discovery { rule_sets: found, nodes_explored: nodes, fragments_per_parent: frag_counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precheck_examples() {
        let e = Seed::new(2, 1, 0).unwrap();
        assert!(edge_precheck(e, TileType::A, true).is_feasible());
        assert!(!edge_precheck(e, TileType::A, false).is_feasible());
        let h = Seed::new(5, 4, 1).unwrap();
        assert!(edge_precheck(h, TileType::A, true).is_feasible());
        assert!(edge_precheck(Seed::new(1, 0, 0).unwrap(), TileType::A, false).is_feasible());
    }

    #[test]
    fn identity_group_is_trivial() {
        let cfg = SearchConfig::new(Seed::new(1, 0, 0).unwrap(), TileType::B);
        let out = search_decomposition(&cfg).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        assert_eq!(out.fragments.len(), 1);
        assert_eq!(out.fragments[0].halves.len(), 2);
    }

    #[test]
    fn corner_angles_sum() {
        for t in TileType::ALL {
            let opts = corner_options(&[Kind::Whole(t), Kind::Half(t, Split::Long), Kind::Half(t, Split::Short)]);
            let whole: usize = opts.iter().filter(|o| matches!(o.kind, Kind::Whole(_))).map(|o| o.angle).sum();
            assert_eq!(whole, 28);
            let tri: usize =
                opts.iter().filter(|o| matches!(o.kind, Kind::Half(_, Split::Long))).map(|o| o.angle).sum();
            assert_eq!(tri, 14);
        }
    }

    #[test]
    fn tiny_budget_is_reported() {
        let mut cfg = SearchConfig::new(Seed::new(2, 1, 0).unwrap(), TileType::C);
        cfg.boundary = Boundary::Labelled(GROUP_E_LABELS[2]);
        cfg.max_nodes = 3;
        let out = search_decomposition(&cfg).unwrap();
        assert_eq!(out.status, SearchStatus::BudgetExceeded);
    }
}
