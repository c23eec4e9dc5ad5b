//! Swapping the two-stack Queue for a list-backed one: the vendor above it comes
//! out identical, and the Queue specification still holds for the new code.

use moss::fixtures::load_fixture;
use moss::manifest::render_impl;
use moss::pipeline::{revalidate, run_pipeline, Replacement, RunConfig};

fn main() -> moss::error::Result<()> {
    let cfg = RunConfig::default();
    let stacks = run_pipeline(load_fixture("ticketvendor")?, &cfg)?.system;
    let list = run_pipeline(load_fixture("queue-as-list")?, &cfg)?.system;
    let vendor = |s: &moss::ir::LayeredSystem| render_impl(&s.modules[s.layer_of("TicketVendor").unwrap()]);
    println!("{}", vendor(&stacks));
    println!("vendor unchanged by the swap: {}", vendor(&stacks) == vendor(&list));

    let q = stacks.layer_of("Queue")?;
    let started = std::time::Instant::now();
    let result = revalidate(&stacks, q, Replacement::System(list), &cfg)?;
    print!("{}", result.report());
    println!("time: {:.3}s", started.elapsed().as_secs_f64());
    Ok(())
}
