//! Mines the algebraic specification of list operations from their code and
//! cross-checks it against the brute-force strongest-sound-set oracle.

use moss::fixtures::load_fixture;
use moss::specsynth::{oracle_spec, property_table, synthesize_spec, SpecConfig};

fn main() -> moss::error::Result<()> {
    let sys = load_fixture("list")?;
    let cfg = SpecConfig::default();
    for pg in &sys.modules[0].grammars {
        let table = property_table(&sys, 0, pg, &cfg)?;
        let sound = table.ids().filter(|&p| table.is_sound(p)).count();
        println!("grammar {}: {} candidates, {sound} sound", table.grammar, table.ids().count());
    }
    let mined = synthesize_spec(&sys, 0, &cfg)?;
    println!("specification ({} properties, {} eval steps):", mined.ias.len(), mined.stats.steps);
    for eq in &mined.ias {
        println!("  {eq}");
    }
    println!("matches oracle: {}", mined.ias == oracle_spec(&sys, 0, &cfg)?);
    Ok(())
}
