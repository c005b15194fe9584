use heptile::patch::Patch;
use heptile::rules::{bundled, group_e_alternate, verify_rule, RuleChild, SubstRuleSet};
use heptile::search::{
    discover_group_e, edge_precheck, search_decomposition, Boundary, SearchConfig, SearchStatus, DEFAULT_MAX_NODES,
    GROUP_E_LABELS,
};
use heptile::{Seed, TileType};
use num_rational::BigRational;

fn seed(a: i64, b: i64, c: i64) -> Seed {
    Seed::new(a, b, c).unwrap()
}

fn counts(halves: &[heptile::HalfTile<i64>]) -> [BigRational; 3] {
    Patch::new(halves.to_vec(), 1, seed(1, 0, 0)).counts()
}

fn whole(n: [i64; 3]) -> [BigRational; 3] {
    n.map(|k| BigRational::from_integer(k.into()))
}

#[test]
fn group_e_parent_a_is_found() {
    let out = search_decomposition(&SearchConfig::new(seed(2, 1, 0), TileType::A)).unwrap();
    assert_eq!(out.status, SearchStatus::Found);
    assert!(!out.fragments.is_empty());
    for f in &out.fragments {
        assert_eq!(counts(&f.halves), whole([2, 1, 0]));
    }
}

#[test]
fn group_d_is_exhausted() {
    let out = search_decomposition(&SearchConfig::new(seed(1, 0, 1), TileType::A)).unwrap();
    assert_eq!(out.status, SearchStatus::Exhausted);
    assert!(out.fragments.is_empty());
}

#[test]
fn group_f_without_straddlers_is_four_a() {
    let mut cfg = SearchConfig::new(seed(4, 0, 0), TileType::A);
    cfg.allow_boundary_straddlers = false;
    let out = search_decomposition(&cfg).unwrap();
    assert_eq!(out.status, SearchStatus::Found);
    assert_eq!(out.fragments.len(), 1);
    let f = &out.fragments[0];
    assert_eq!(counts(&f.halves), whole([4, 0, 0]));
    assert!(f.halves.iter().all(|h| h.tile == TileType::A));
}

#[test]
fn fragments_pass_geometry_checks() {
    // A found fragment wrapped as a one-parent rule must pass area,
    // containment and counts for that parent.
    let out = search_decomposition(&SearchConfig::new(seed(4, 0, 0), TileType::B)).unwrap();
    assert_eq!(out.status, SearchStatus::Found);
    let mut rules = heptile::rules::group_f_rules();
    rules.children[TileType::B.index()] =
        out.fragments[0].halves.iter().map(|h| RuleChild { half: h.clone(), labels: [0; 4] }).collect();
    let report = verify_rule(&rules);
    assert!(report.parents[TileType::B.index()].geometry_passed(), "{:?}", report.failures());
}

#[test]
fn precheck_never_changes_status() {
    let cases = [
        (seed(1, 0, 0), 10_000),
        (seed(1, 0, 1), DEFAULT_MAX_NODES),
        (seed(2, 1, 0), DEFAULT_MAX_NODES),
        (seed(4, 0, 0), DEFAULT_MAX_NODES),
        (seed(5, 4, 1), 5_000),
    ];
    for (s, budget) in cases {
        for t in TileType::ALL {
            let mut cfg = SearchConfig::new(s, t);
            cfg.max_nodes = budget;
            let with = search_decomposition(&cfg).unwrap();
            cfg.use_precheck = false;
            let without = search_decomposition(&cfg).unwrap();
            assert_eq!(with.status, without.status, "{s} {t}");
            assert_eq!(with.fragments, without.fragments, "{s} {t}");
        }
    }
}

#[test]
fn precheck_rejects_irrational_edges() {
    assert!(!edge_precheck(seed(0, 1, 0), TileType::A, true).is_feasible());
    let out = search_decomposition(&SearchConfig::new(seed(0, 1, 0), TileType::A)).unwrap();
    assert_eq!((out.status, out.nodes_explored), (SearchStatus::Exhausted, 0));
}

#[test]
fn search_is_reproducible() {
    let cfg = SearchConfig::new(seed(5, 4, 1), TileType::A);
    let a = search_decomposition(&cfg).unwrap();
    let b = search_decomposition(&cfg).unwrap();
    assert_eq!(a.status, SearchStatus::Found);
    assert_eq!(a.fragments, b.fragments);
    assert_eq!(a.fragments.len(), 52);
}

#[test]
fn dedupe_only_removes_symmetric_copies() {
    let mut cfg = SearchConfig::new(seed(5, 4, 1), TileType::A);
    let kept = search_decomposition(&cfg).unwrap().fragments.len();
    cfg.dedupe_symmetries = false;
    let all = search_decomposition(&cfg).unwrap().fragments.len();
    assert!(all >= kept && all <= 4 * kept, "{kept} {all}");
}

#[test]
fn bent_parents_each_decompose() {
    for t in TileType::ALL {
        let mut cfg = SearchConfig::new(seed(2, 1, 0), t);
        cfg.boundary = Boundary::Labelled(GROUP_E_LABELS[t.index()]);
        let out = search_decomposition(&cfg).unwrap();
        assert_eq!(out.status, SearchStatus::Found, "{t}");
    }
}

#[test]
fn discovery_recovers_the_bundled_rules() {
    let d = discover_group_e(DEFAULT_MAX_NODES, 5).unwrap();
    assert_eq!(d.fragments_per_parent, [2, 1, 1]);
    assert_eq!(d.nodes_explored, 23);
    let strip = |r: &SubstRuleSet| r.children.clone();
    let found: Vec<_> = d.rule_sets.iter().map(strip).collect();
    assert_eq!(found.len(), 2);
    assert!(found.contains(&strip(bundled('E').unwrap().rules())));
    assert!(found.contains(&strip(group_e_alternate().unwrap().rules())));
}
