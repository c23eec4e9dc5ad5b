//! Implementation synthesis for a one-field counter: plain enumeration against
//! counterexample-guided search, on the same sketches and assertions.

use moss::implsynth::{cegis, space_size, synthesize_impl, SynthConfig, SynthResult};
use moss::manifest::load_project;

const COUNTER: &str = r#"
(module Counter :layer 0
  (sort Counter (mkC (n int)))
  (export (zero () Counter) (inc (Counter) Counter) (dec (Counter) Counter) (value (Counter) int))
  (impl (define (zero) (mkC 0)))
  (iss
    (vars (x int :range 0 3))
    (assert (= (value (zero)) 0))
    (assert (= (value (inc (mkC x))) (+ x 1)))
    (assert (= (dec (inc (mkC x))) (mkC x)))
    (assert (= (value (dec (zero))) 0)))
  (search-space
    (sketch (inc c) (mkC (?? N)) (grammar (N int (n c) 0 1 (+ (n c) 1) (- (n c) 1))))
    (sketch (dec c) (mkC (?? D))
      (grammar (D int (n c) 0 (- (n c) 1) (ite (<= (n c) 0) 0 (- (n c) 1)))))
    (sketch (value c) (?? V) (grammar (V int 0 1 (n c)))))
  (bounds :int 0 3 :depth 3))
"#;

fn main() -> moss::error::Result<()> {
    let sys = load_project(COUNTER)?;
    println!("candidates: {}", space_size(&sys.modules[0].search_space)?);
    let cfg = SynthConfig::default();
    for (name, outcome) in [("plain", synthesize_impl(&sys, 0, &cfg)?), ("cegis", cegis(&sys, 0, &cfg)?)] {
        let s = &outcome.stats;
        println!("{name}: checks {} eval-steps {} counterexamples {}", s.checks, s.steps, s.counterexamples);
        match &outcome.result {
            SynthResult::Solved(c) => {
                for (f, def) in &c.definitions {
                    println!("  {f} = {}", def.body);
                }
            }
            other => println!("  {other:?}"),
        }
    }
    Ok(())
}
