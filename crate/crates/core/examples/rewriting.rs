//! Guarded term rewriting: an append/reverse system and a guarded `max`.

use moss::manifest::parse_term;
use moss::rewrite::{check_rule_system, normalize, RewriteRule, RewriteSystem};
use moss::sexp;
use moss::term::Term;

fn t(s: &str) -> Term {
    parse_term(&sexp::parse(s).expect("s-expression")[0], &Default::default()).expect("term")
}

fn main() -> moss::error::Result<()> {
    let rules = RewriteSystem::new(vec![
        RewriteRule::new(t("(app (nil) ys)"), t("ys")),
        RewriteRule::new(t("(app (cons x xs) ys)"), t("(cons x (app xs ys))")),
        RewriteRule::new(t("(rev (nil))"), t("(nil)")),
        RewriteRule::new(t("(rev (cons x xs))"), t("(app (rev xs) (cons x (nil)))")),
        // the first rule whose guard normalizes to true fires
        RewriteRule::guarded(t("(max a b)"), t("a"), t("(<= b a)")),
        RewriteRule::guarded(t("(max a b)"), t("b"), t("(< a b)")),
    ]);
    let report = check_rule_system(&rules);
    println!("rules: {} well-formed: {}", rules.rules().len(), report.is_ok());

    for input in [
        "(rev (cons 1 (cons 2 (cons 3 (nil)))))",
        "(app (rev (cons 1 (nil))) (cons 2 (nil)))",
        "(max (+ 1 2) 2)",
        "(max 4 (* 2 3))",
        // a variable blocks the guard, so this stays as it is
        "(max n 2)",
    ] {
        println!("{input}\n  => {}", normalize(&t(input), &rules, 10_000)?);
    }

    // fuel counts rewrites; running out is reported, not looped forever
    let looping = RewriteSystem::new(vec![RewriteRule::new(t("(f x)"), t("(f (+ x 1))"))]);
    match normalize(&t("(f 0)"), &looping, 100) {
        Ok(nf) => println!("(f 0) => {nf}"),
        Err(e) => println!("(f 0) => {e}"),
    }
    Ok(())
}
