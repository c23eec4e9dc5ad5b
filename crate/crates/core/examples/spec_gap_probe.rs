//! A hash map built on an array list whose specification forgets `ensureCapacity`:
//! the probe names what the upper layer needs but cannot derive.

use moss::fixtures::load_fixture;
use moss::pipeline::{spec_gap_probe, RunConfig};

fn main() -> moss::error::Result<()> {
    let cfg = RunConfig::default();
    for name in ["arraylist-weak-ias", "hashmap2-over-arraylist"] {
        let sys = load_fixture(name)?;
        let witnesses = spec_gap_probe(&sys, sys.layer_of("HashMap")?, &cfg)?;
        println!("== {name}: {} witnesses", witnesses.len());
        for w in witnesses {
            println!("  {w}");
        }
    }
    Ok(())
}
