//! Work spent verifying Queue candidates when the Stack layer is represented by its
//! specification versus by its code.

use moss::fixtures::load_fixture;
use moss::ir::Mode;
use moss::pipeline::{run_pipeline, Action, RunConfig};

fn main() -> moss::error::Result<()> {
    let mut steps = Vec::new();
    for mode in [Mode::Modular, Mode::Monolithic] {
        let outcome = run_pipeline(load_fixture("ticketvendor")?, &RunConfig { mode, ..RunConfig::default() })?;
        let synth = outcome
            .steps
            .iter()
            .find(|s| &*s.step.module == "Queue" && s.step.action == Action::SynthImpl)
            .expect("Queue is synthesized");
        let n: u64 = synth.counts.iter().find(|(k, _)| *k == "eval-steps").map_or(0, |(_, v)| v.parse().unwrap());
        println!("{mode:?}: {n} evaluation steps verifying Queue candidates, status ok: {}", outcome.ok());
        steps.push(n);
    }
    println!("ratio: {:.2}", steps[1] as f64 / steps[0] as f64);
    Ok(())
}
