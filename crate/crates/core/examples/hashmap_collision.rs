//! Revalidating a hash map's specification against an implementation that
//! mishandles bucket collisions, and against the correct one.

use moss::fixtures::load_fixture;
use moss::pipeline::{revalidate, Replacement, RunConfig};

fn main() -> moss::error::Result<()> {
    let spec = load_fixture("hashmap-mock")?;
    let map = spec.layer_of("HashMap")?;
    let cfg = RunConfig::default();
    for name in ["hashmap-collision-bug", "hashmap-mock"] {
        let result = revalidate(&spec, map, Replacement::System(load_fixture(name)?), &cfg)?;
        println!("== {name}");
        print!("{}", result.report());
    }
    Ok(())
}
