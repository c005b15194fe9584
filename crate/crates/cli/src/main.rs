use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use heptile::cyclo::area_4i_matches;
use heptile::matrix::{
    area_vector, build_matrix, coronacci_trace, inflation_factor, inflation_factor_sq, inflation_multiplier,
    perron_identity_holds,
};
use heptile::report::TablesReport;
use heptile::rules::{bundled, fmt_counts, generate, verify_rule, RuleChild, SubstRuleSet, DEFAULT_HALF_CAP};
use heptile::search::{search_decomposition, Boundary, SearchConfig, SearchStatus, DEFAULT_MAX_NODES, GROUP_E_LABELS};
use heptile::svg::{render_mandala, render_patch, render_rule, RenderStyle};
use heptile::{Patch, Phi, Seed, TileType, VerifiedRules};

#[derive(Parser, Debug)]
#[command(name = "heptile", version, about = "Exact 7-fold rhombic substitution tilings")]
struct Cli {
    /// Directory for output files written without an explicit path.
    #[arg(long, global = true, env = "HEPTILE_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Constant tables and the group summary, each checked.
    Tables {
        #[arg(long)]
        json: bool,
    },
    /// Substitution matrix, inflation factor and eigen checks for a seed.
    Matrix {
        /// `a,b,c` or a group letter A-L.
        #[arg(long)]
        seed: Seed,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long)]
        json: bool,
    },
    /// Ratio trace of the Coronacci recurrence.
    Coronacci {
        #[arg(long)]
        seed: Seed,
        #[arg(short = 'n', long, default_value_t = 40)]
        steps: u64,
    },
    /// Substitute a single prototile n times and write the patch.
    Generate {
        #[command(flatten)]
        rules: RuleSource,
        #[arg(long = "type")]
        tile: TileType,
        #[arg(long)]
        gen: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Maximum number of half-tiles.
        #[arg(long, default_value_t = DEFAULT_HALF_CAP)]
        cap: usize,
    },
    /// Verify a rule file, or the area and disjointness of a patch file.
    Verify {
        #[command(flatten)]
        rules: RuleSource,
        #[arg(long, conflicts_with_all = ["rules", "group"])]
        patch: Option<PathBuf>,
        /// Judge only this parent, as for a single-parent search fragment.
        #[arg(long, conflicts_with = "patch")]
        parent: Option<TileType>,
    },
    /// Search for geometric decompositions of one inflated prototile.
    Search {
        #[arg(long)]
        seed: Seed,
        #[arg(long = "type")]
        tile: TileType,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        budget: u64,
        #[arg(long)]
        no_straddlers: bool,
        #[arg(long)]
        no_dedupe: bool,
        #[arg(long)]
        no_precheck: bool,
        /// Use the V-bent labelled outline (seed 2,1,0 only).
        #[arg(long)]
        bent: bool,
        /// Fail unless the search ends with this status.
        #[arg(long)]
        expect: Option<Expect>,
        /// Skip writing fragment rule files.
        #[arg(long)]
        no_write: bool,
    },
    /// Render a patch, its rosette, or a rule sheet as SVG.
    Render {
        #[arg(long = "in", required_unless_present_any = ["rules", "group"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        rules: RuleSource,
        /// Parent tile for a rule sheet.
        #[arg(long = "type", default_value = "A")]
        tile: TileType,
        #[arg(long, conflicts_with_all = ["rules", "group"])]
        mandala: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
        #[arg(long)]
        no_merge: bool,
        /// Draw edge labels as ticks.
        #[arg(long)]
        labels: bool,
    },
}

#[derive(Args, Debug)]
struct RuleSource {
    /// Rule file.
    #[arg(long, conflicts_with = "group")]
    rules: Option<PathBuf>,
    /// Bundled rule set (E or F).
    #[arg(long)]
    group: Option<char>,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Expect {
    Found,
    Exhausted,
    BudgetExceeded,
}

impl RuleSource {
    fn is_set(&self) -> bool {
        self.rules.is_some() || self.group.is_some()
    }

    fn raw(&self) -> Result<SubstRuleSet> {
        match (&self.rules, self.group) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Ok(SubstRuleSet::from_json(&text)?)
            }
            (None, Some(g)) => Ok(bundled(g)?.rules().clone()),
            (None, None) => bail!("one of --rules or --group is required"),
        }
    }

    fn verified(&self) -> Result<VerifiedRules> {
        Ok(VerifiedRules::new(self.raw()?)?)
    }

    fn stem(&self) -> String {
        match (&self.rules, self.group) {
            (Some(p), _) => p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "rules".into()),
            (None, Some(g)) => format!("group-{}", g.to_ascii_uppercase()),
            (None, None) => "rules".into(),
        }
    }
}

fn out_path(out_dir: &Path, explicit: Option<PathBuf>, default_name: String) -> PathBuf {
    explicit.unwrap_or_else(|| out_dir.join(default_name))
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn matrix_json(rows: &[[i64; 3]; 3]) -> String {
    serde_json::to_string(rows).expect("integers serialize")
}

fn cubic_text(c: &[i64; 4]) -> String {
    let mut out = String::from("x^3");
    for (k, x) in [(2, c[1]), (1, c[2]), (0, c[3])] {
        if x == 0 {
            continue;
        }
        let sign = if x < 0 { '-' } else { '+' };
        let var = ["", "x", "x^2"][k];
        out += &format!(" {sign} {}{var}", x.abs());
    }
    out
}

fn cmd_tables(json: bool) -> Result<bool> {
    let report = TablesReport::build()?;
    if json {
        print!("{}", report.to_json()?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(report.passed)
}

fn cmd_matrix(seed: Seed, power: u32, json: bool) -> Result<bool> {
    let m = build_matrix(seed);
    let mp = m.power(power)?;
    let rows: [[i64; 3]; 3] = std::array::from_fn(|i| *mp.row(TileType::from_index(i).expect("index")));
    let d2 = inflation_factor_sq(seed)?;
    let delta = inflation_factor(seed)?;
    let eigen_ok = perron_identity_holds(seed)?;
    let tiles = mp.total()?;
    let cubic = m.characteristic_cubic()?;
    if json {
        let v = serde_json::json!({
            "seed": [seed.a, seed.b, seed.c],
            "power": power,
            "matrix": rows,
            "delta_sq": d2.to_string(),
            "delta": delta,
            "tiles": tiles,
            "characteristic": cubic,
            "eigen_ok": eigen_ok,
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!("seed ({seed})");
        println!("M^{power} = {}", matrix_json(&rows));
        print!("{mp}");
        println!("delta^2 = {d2}");
        println!("delta = {delta:.6}");
        println!("tiles (sum of entries) = {tiles}");
        println!("det(xI - M) = {}", cubic_text(&cubic));
        println!("eigen check (M v = delta^2 v, det(M - delta^2 I) = 0): {}", if eigen_ok { "ok" } else { "FAIL" });
    }
    Ok(eigen_ok)
}

fn cmd_coronacci(seed: Seed, steps: u64) -> Result<bool> {
    let phi = Phi::int(0, 1, 0).embed::<f64>();
    let trace = coronacci_trace(seed, steps)?;
    println!("{:>4} {:>24} {:>24} {:>24} {:>20}", "n", "a", "b", "c", "b/a");
    for st in &trace {
        let r = st.ratio().map(|r| format!("{r:.15}")).unwrap_or_else(|| "-".into());
        println!("{:>4} {:>24} {:>24} {:>24} {:>20}", st.n, st.a, st.b, st.c, r);
    }
    match trace.last().and_then(|s| s.ratio()) {
        Some(r) => println!("|b/a - PHI| = {:.3e}", (r - phi).abs()),
        None => println!("|b/a - PHI| undefined (a = 0)"),
    }
    Ok(true)
}

fn cmd_generate(
    out_dir: &Path,
    src: &RuleSource,
    tile: TileType,
    n: u32,
    out: Option<PathBuf>,
    cap: usize,
) -> Result<bool> {
    let rules = src.verified()?;
    let patch: Patch<i64> = generate(&rules, tile, n, cap)?;
    let path = out_path(out_dir, out, format!("{}-{tile}-gen{n}.json", src.stem()));
    write(&path, &patch.to_json()?)?;
    println!("wrote {} ({} halves)", path.display(), patch.len());
    println!("counts {}", fmt_counts(&patch.counts()));
    println!("area {}", patch.area());
    Ok(true)
}

fn cmd_verify_rules(src: &RuleSource, parent: Option<TileType>) -> Result<bool> {
    let rules = src.raw()?;
    let report = verify_rule(&rules);
    print!("{report}");
    Ok(match parent {
        Some(t) => {
            let ok = report.parents[t.index()].passed();
            println!("parent {t} alone: {}", if ok { "PASS" } else { "FAIL" });
            ok
        }
        None => report.passed(),
    })
}

fn cmd_verify_patch(path: &Path) -> Result<bool> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let patch = Patch::from_json(&text)?;
    let area = patch.area();
    let scale = inflation_factor_sq(patch.seed)?.pow(patch.generation);
    let base = area.checked_div(&scale)?;
    let root = TileType::ALL.iter().zip(area_vector()).find(|(_, a)| *a == base).map(|(t, _)| *t);
    let lattice_ok = area_4i_matches(&patch.lattice_area_4i()?, &area);
    let overlaps = patch.overlapping_pairs()?;
    println!("patch {} (seed {}, generation {}, {} halves)", path.display(), patch.seed, patch.generation, patch.len());
    println!("counts {}", fmt_counts(&patch.counts()));
    println!("area {area}");
    match root {
        Some(t) => println!("area = delta^{} * area({t}): ok", 2 * patch.generation),
        None => println!("area / delta^{} = {base} is no prototile area: FAIL", 2 * patch.generation),
    }
    println!("lattice area certificate: {}", if lattice_ok { "ok" } else { "FAIL" });
    println!("overlapping pairs: {}", overlaps.len());
    Ok(root.is_some() && lattice_ok && overlaps.is_empty())
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    out_dir: &Path,
    seed: Seed,
    tile: TileType,
    budget: u64,
    no_straddlers: bool,
    no_dedupe: bool,
    no_precheck: bool,
    bent: bool,
    expect: Option<Expect>,
    no_write: bool,
) -> Result<bool> {
    let mut cfg = SearchConfig::new(seed, tile);
    cfg.max_nodes = budget;
    cfg.allow_boundary_straddlers = !no_straddlers;
    cfg.dedupe_symmetries = !no_dedupe;
    cfg.use_precheck = !no_precheck;
    if bent {
        cfg.boundary = Boundary::Labelled(GROUP_E_LABELS[tile.index()]);
    }
    let out = search_decomposition(&cfg)?;
    println!("seed ({seed}) parent {tile}");
    if let Some(p) = &out.precheck {
        println!("precheck: {p:?}");
    }
    println!("status: {}", out.status);
    println!("nodes explored: {}", out.nodes_explored);
    println!("fragments: {}", out.fragments.len());
    if !no_write {
        for (k, f) in out.fragments.iter().enumerate() {
            let mut children: [Vec<RuleChild>; 3] = Default::default();
            let labels = if bent { GROUP_E_LABELS } else { [[0; 4]; 3] };
            children[tile.index()] =
                f.halves.iter().map(|h| RuleChild { half: h.clone(), labels: labels[h.tile.index()] }).collect();
            let rules = SubstRuleSet {
                name: format!("search-{}-{}-{}-{tile}-{k}", seed.a, seed.b, seed.c),
                seed,
                inflation: inflation_multiplier(seed).context("inflation is not a lattice element")?,
                bent,
                edge_labels: labels,
                bend_signature: bent.then_some(heptile::search::GROUP_E_SIGNATURE),
                children,
            };
            let path = out_dir.join(format!("{}.json", rules.name));
            write(&path, &rules.to_json()?)?;
            println!("wrote {}", path.display());
        }
    }
    let want = expect.map(|e| match e {
        Expect::Found => SearchStatus::Found,
        Expect::Exhausted => SearchStatus::Exhausted,
        Expect::BudgetExceeded => SearchStatus::BudgetExceeded,
    });
    Ok(want.is_none_or(|w| w == out.status))
}

#[allow(clippy::too_many_arguments)]
fn cmd_render(
    out_dir: &Path,
    input: Option<PathBuf>,
    src: &RuleSource,
    tile: TileType,
    mandala: bool,
    out: Option<PathBuf>,
    scale: f64,
    no_merge: bool,
    labels: bool,
) -> Result<bool> {
    let mut style = RenderStyle { scale, merge_halves: !no_merge, show_labels: labels, ..RenderStyle::default() };
    let (svg, name) = if src.is_set() {
        let rules = src.raw()?;
        style.edge_labels = Some(rules.edge_labels);
        (render_rule(&rules, tile, &style)?, format!("{}-{tile}.svg", src.stem()))
    } else {
        let path = input.expect("clap requires --in");
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let patch = Patch::from_json(&text)?;
        if patch.seed == Seed::new(2, 1, 0)? {
            style.edge_labels = Some(GROUP_E_LABELS);
        }
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "patch".into());
        if mandala {
            (render_mandala(&patch, &style)?, format!("{stem}-mandala.svg"))
        } else {
            (render_patch(&patch, &style)?, format!("{stem}.svg"))
        }
    };
    let path = out_path(out_dir, out, name);
    write(&path, &svg)?;
    println!("wrote {}", path.display());
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    let dir = cli.out_dir.as_path();
    match cli.cmd {
        Cmd::Tables { json } => cmd_tables(json),
        Cmd::Matrix { seed, power, json } => cmd_matrix(seed, power, json),
        Cmd::Coronacci { seed, steps } => cmd_coronacci(seed, steps),
        Cmd::Generate { rules, tile, gen, out, cap } => cmd_generate(dir, &rules, tile, gen, out, cap),
        Cmd::Verify { rules, patch, parent } => match patch {
            Some(p) => cmd_verify_patch(&p),
            None => cmd_verify_rules(&rules, parent),
        },
        Cmd::Search { seed, tile, budget, no_straddlers, no_dedupe, no_precheck, bent, expect, no_write } => {
            cmd_search(dir, seed, tile, budget, no_straddlers, no_dedupe, no_precheck, bent, expect, no_write)
        }
        Cmd::Render { input, rules, tile, mandala, out, scale, no_merge, labels } => {
            cmd_render(dir, input, &rules, tile, mandala, out, scale, no_merge, labels)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("heptile: checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("heptile: {e:#}");
            ExitCode::from(1)
        }
    }
}
