//! Rebuilds the bundled rule files under data/rules from the search.
//!
//! cargo run --release -p heptile-core --example regen_rules

use std::path::Path;

use heptile::rules::group_f_rules;
use heptile::search::discover_group_e;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/rules");
    let found = discover_group_e(10_000_000, 5)?;
    println!(
        "fragments per parent {:?}, nodes {}, rule sets {}",
        found.fragments_per_parent,
        found.nodes_explored,
        found.rule_sets.len()
    );
    let mut sets = found.rule_sets.into_iter();
    let mut main = sets.next().ok_or("no group-E rule survived")?;
    main.name = "group-E".into();
    std::fs::write(dir.join("group_e.json"), main.to_json()?)?;
    if let Some(mut alt) = sets.next() {
        alt.name = "group-E-alt".into();
        std::fs::write(dir.join("group_e_alt.json"), alt.to_json()?)?;
    }
    for extra in sets {
        println!("additional rule set {}", extra.name);
    }
    std::fs::write(dir.join("group_f.json"), group_f_rules().to_json()?)?;
    Ok(())
}
