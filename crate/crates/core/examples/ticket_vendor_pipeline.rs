//! The full layered pipeline on the ticket vendor: Stack, then a two-stack Queue,
//! then the vendor itself, each synthesized against the specification below it.

use moss::fixtures::load_fixture;
use moss::pipeline::{plan, run_pipeline, RunConfig};

fn main() -> moss::error::Result<()> {
    let sys = load_fixture("ticketvendor")?;
    let cfg = RunConfig::default();
    for (k, step) in plan(&sys, cfg.mode)?.iter().enumerate() {
        println!("step {}: {step}", k + 1);
    }
    let outcome = run_pipeline(sys, &cfg)?;
    print!("{}", outcome.report());
    for m in &outcome.system.modules {
        println!("-- {} (layer {})", m.name, m.layer);
        for (f, def) in &m.implementation {
            println!("  {f} = {}", def.body);
        }
        for eq in m.ias.iter().flatten() {
            println!("  ias: {eq}");
        }
    }
    Ok(())
}
