//! One term evaluated two ways: against the Stack layer's specification (modular)
//! and against the Stack layer's code (monolithic).

use moss::eval::{Binding, Evaluator};
use moss::fixtures::fixture;
use moss::ir::{Mode, VocabClass};
use moss::manifest::parse_term;
use moss::sexp;

fn main() -> moss::error::Result<()> {
    let sys = fixture("ticketvendor")?.completed()?;
    let q = sys.layer_of("Queue")?;
    let vocab = sys.vocabulary_of(q, VocabClass::Ias)?;
    println!("Queue interface: {}", vocab.funcs.keys().map(|k| k.to_string()).collect::<Vec<_>>().join(" "));

    let input = "(front (deq (enq (enq (enq (emptyQueue) 1) 2) 3)))";
    let term = parse_term(&sexp::parse(input)?[0], &Default::default())?;
    for mode in [Mode::Modular, Mode::Monolithic] {
        let sem = sys.semantics(q, mode)?;
        let mut ev = Evaluator::new(&sem);
        let value = ev.eval(&term, &Binding::new())?;
        println!("{mode:?}: {input} = {value} in {} steps ({} rules below)", ev.steps(), sem.lower.rules().len());
    }
    Ok(())
}
