//! Bottom-up orchestration: plan the steps a manifest needs, run them in order, and
//! re-check an existing specification against a replacement implementation.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::eval::{ImplEnv, DEFAULT_FUEL};
use crate::implsynth::{self, Candidate, Strategy, SynthConfig, SynthResult, Verdict};
use crate::ir::{
    check_ias_wellformed, check_impl_vocabulary, check_iss_wellformed, Bounds, GuardedEquation, LayeredSystem, Mode,
};
use crate::manifest;
use crate::report::WellFormedReport;
use crate::specsynth::{self, Soundness, SpecConfig};
use crate::term::{Symbol, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Action {
    SynthImpl,
    SynthSpec,
    Check,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::SynthImpl => "synth-impl",
            Action::SynthSpec => "synth-spec",
            Action::Check => "check",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub layer: usize,
    pub module: Symbol,
    pub action: Action,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.action, self.module)
    }
}

/// Steps in execution order: per layer, bottom-up, implementation before specification.
pub fn plan(sys: &LayeredSystem, mode: Mode) -> Result<Vec<Step>> {
    let mut steps = Vec::new();
    for (i, m) in sys.modules.iter().enumerate() {
        let step = |action| Step { layer: i, module: m.name.clone(), action };
        let needs_impl = !m.has_complete_impl();
        let needs_spec = m.ias.is_none() && !m.grammars.is_empty();
        if needs_impl {
            if m.iss.is_none() {
                return Err(Error::Plan(format!("`{}` needs an implementation but has no ISS", m.name)));
            }
            if i > 0 && mode == Mode::Modular {
                let lower = &sys.modules[i - 1];
                let scheduled = steps.iter().any(|s: &Step| s.layer == i - 1 && s.action == Action::SynthSpec);
                if lower.ias.is_none() && !scheduled {
                    return Err(Error::Plan(format!(
                        "`{}` needs an implementation but `{}` below it has no IAS and no property grammars",
                        m.name, lower.name
                    )));
                }
            }
            steps.push(step(Action::SynthImpl));
        }
        if needs_spec {
            steps.push(step(Action::SynthSpec));
        }
        if !needs_impl && !needs_spec {
            steps.push(step(Action::Check));
        }
    }
    Ok(steps)
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Overrides every module's own bounds.
    pub bounds: Option<Bounds>,
    pub fuel: u64,
    pub jobs: usize,
    pub mode: Mode,
    pub strategy: Strategy,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { bounds: None, fuel: DEFAULT_FUEL, jobs: 1, mode: Mode::Modular, strategy: Strategy::Cegis }
    }
}

impl RunConfig {
    pub fn bounds_for(&self, sys: &LayeredSystem, i: usize) -> Bounds {
        self.bounds.or(sys.modules[i].bounds).unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct StepReport {
    pub step: Step,
    pub status: Status,
    /// Counters in a fixed order.
    pub counts: Vec<(&'static str, String)>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub system: LayeredSystem,
    pub plan: Vec<Step>,
    pub steps: Vec<StepReport>,
    pub mode: Mode,
}

impl RunOutcome {
    pub fn ok(&self) -> bool {
        self.steps.len() == self.plan.len() && self.steps.iter().all(|s| s.status == Status::Ok)
    }

    /// Evaluation steps spent on one layer.
    pub fn eval_steps(&self, module: &str) -> u64 {
        self.steps
            .iter()
            .filter(|s| &*s.step.module == module)
            .flat_map(|s| s.counts.iter().filter(|(k, _)| *k == "eval-steps"))
            .map(|(_, v)| v.parse::<u64>().unwrap_or(0))
            .sum()
    }
}

/// Structured text: one `key: value` per line, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<(String, String)>,
}

impl Report {
    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.lines {
            // values stay on one line
            writeln!(f, "{k}: {}", v.replace('\n', " "))?;
        }
        Ok(())
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Modular => "modular",
        Mode::Monolithic => "monolithic",
    }
}

impl RunOutcome {
    pub fn report(&self) -> Report {
        let mut r = Report::default();
        r.push("mode", mode_name(self.mode));
        r.push("layers", self.system.layers());
        r.push("plan", self.plan.iter().map(|s| format!("{}:{}", s.action, s.module)).collect::<Vec<_>>().join(" "));
        for (k, s) in self.steps.iter().enumerate() {
            let p = format!("step.{}", k + 1);
            r.push(format!("{p}.action"), s.step.action);
            r.push(format!("{p}.module"), &s.step.module);
            r.push(format!("{p}.layer"), s.step.layer);
            match &s.status {
                Status::Ok => r.push(format!("{p}.status"), "ok"),
                Status::Failed(why) => {
                    r.push(format!("{p}.status"), "failed");
                    r.push(format!("{p}.reason"), why);
                }
            }
            for (key, v) in &s.counts {
                r.push(format!("{p}.{key}"), v);
            }
            r.push(format!("{p}.time"), format!("{:.3}s", s.elapsed.as_secs_f64()));
        }
        r.push("status", if self.ok() { "ok" } else { "failed" });
        r
    }
}

fn fail(report: &WellFormedReport) -> Option<String> {
    let v = report.violations.first()?;
    Some(format!("{}: {}", v.subject, v.message))
}

/// Runs the check action on layer `i`: vocabulary, well-formedness, ISS, IAS soundness.
pub fn check_layer(sys: &LayeredSystem, i: usize, cfg: &RunConfig) -> Result<(Status, Vec<(&'static str, String)>)> {
    let m = sys.module(i)?;
    let mut counts = Vec::new();
    let mut wf = check_impl_vocabulary(&m.implementation, sys, i)?;
    if let Some(iss) = &m.iss {
        wf.merge(check_iss_wellformed(iss, sys, i)?);
    }
    if let Some(ias) = &m.ias {
        wf.merge(check_ias_wellformed(ias, sys, i)?);
    }
    if let Some(why) = fail(&wf) {
        return Ok((Status::Failed(why), counts));
    }
    if !m.has_complete_impl() {
        let missing: Vec<String> = m.missing_functions().iter().map(|f| f.to_string()).collect();
        return Ok((Status::Failed(format!("no definition for {}", missing.join(", "))), counts));
    }
    if let Some(iss) = &m.iss {
        let sc = synth_config(sys, i, cfg);
        let verdict = implsynth::verify_candidate(&Candidate { choices: vec![], definitions: vec![] }, sys, i, &sc)?;
        counts.push(("assertions", iss.assertions.len().to_string()));
        match verdict {
            Verdict::Ok => {}
            Verdict::Refuted(cx) => return Ok((Status::Failed(format!("ISS {cx}")), counts)),
            Verdict::Inconclusive(n) => return Ok((Status::Failed(format!("ISS inconclusive: {n}")), counts)),
        }
    }
    if let Some(ias) = &m.ias {
        counts.push(("properties", ias.len().to_string()));
        if i == 0 || sys.modules[i - 1].ias.is_some() {
            for (eq, verdict) in revalidate_ias(ias, sys, i, cfg)? {
                match verdict {
                    Soundness::Holds => {}
                    Soundness::Violated { binding, detail } => {
                        let why = format!("IAS `{eq}` fails with {}: {detail}", show(&binding));
                        return Ok((Status::Failed(why), counts));
                    }
                    Soundness::Fuel { binding } => {
                        let why = format!("IAS `{eq}` ran out of fuel with {}", show(&binding));
                        return Ok((Status::Failed(why), counts));
                    }
                }
            }
        }
    }
    Ok((Status::Ok, counts))
}

pub fn show(b: &crate::eval::Binding) -> String {
    let parts: Vec<String> = b.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn synth_config(sys: &LayeredSystem, i: usize, cfg: &RunConfig) -> SynthConfig {
    SynthConfig {
        bounds: cfg.bounds_for(sys, i),
        fuel: cfg.fuel,
        jobs: cfg.jobs,
        mode: cfg.mode,
        strategy: cfg.strategy,
        ..SynthConfig::default()
    }
}

fn run_step(sys: &mut LayeredSystem, step: &Step, cfg: &RunConfig) -> Result<(Status, Vec<(&'static str, String)>)> {
    let i = step.layer;
    match step.action {
        Action::SynthImpl => {
            let iss = sys.modules[i].iss.clone().expect("planned with an ISS");
            if let Some(why) = fail(&check_iss_wellformed(&iss, sys, i)?) {
                return Ok((Status::Failed(why), vec![]));
            }
            let out = implsynth::synthesize_with(sys, i, &synth_config(sys, i, cfg))?;
            let counts = vec![
                ("candidates", out.stats.space.to_string()),
                ("checks", out.stats.checks.to_string()),
                ("counterexamples", out.stats.counterexamples.to_string()),
                ("eval-steps", out.stats.steps.to_string()),
            ];
            let blame = |what: &str| match &out.last_refutation {
                Some(cx) => format!("{what}; last refutation: {cx}"),
                None => what.to_string(),
            };
            match out.result {
                SynthResult::Solved(c) => {
                    if let Some(why) = fail(&implsynth::check_information_hiding(&c, sys, i)?) {
                        return Ok((Status::Failed(why), counts));
                    }
                    let m = &mut sys.modules[i];
                    m.implementation = c.env(&m.implementation);
                    Ok((Status::Ok, counts))
                }
                SynthResult::Unrealizable => Ok((Status::Failed(blame("unrealizable")), counts)),
                SynthResult::Timeout => Ok((Status::Failed(blame("timeout")), counts)),
            }
        }
        Action::SynthSpec => {
            let sc = SpecConfig { bounds: cfg.bounds, fuel: cfg.fuel };
            let out = specsynth::synthesize_spec(sys, i, &sc)?;
            let counts = vec![
                ("grammars", out.stats.grammars.to_string()),
                ("candidates", out.stats.candidates.to_string()),
                ("sound", out.stats.sound.to_string()),
                ("properties", out.ias.len().to_string()),
                ("eval-steps", out.stats.steps.to_string()),
            ];
            if let Some(why) = fail(&check_ias_wellformed(&out.ias, sys, i)?) {
                return Ok((Status::Failed(why), counts));
            }
            sys.modules[i].ias = Some(out.ias);
            Ok((Status::Ok, counts))
        }
        Action::Check => check_layer(sys, i, cfg),
    }
}

/// Executes the plan, threading results into the system; stops at the first failed step.
pub fn run_pipeline(sys: LayeredSystem, cfg: &RunConfig) -> Result<RunOutcome> {
    let plan = plan(&sys, cfg.mode)?;
    let mut system = sys;
    let mut steps = Vec::new();
    for step in &plan {
        let t = Instant::now();
        let (status, counts) = run_step(&mut system, step, cfg)?;
        let failed = status != Status::Ok;
        steps.push(StepReport { step: step.clone(), status, counts, elapsed: t.elapsed() });
        if failed {
            break;
        }
    }
    Ok(RunOutcome { system, plan, steps, mode: cfg.mode })
}

/// Paths written by [`write_outputs`].
#[derive(Clone, Debug)]
pub struct Artifacts {
    pub manifest: PathBuf,
    pub report: PathBuf,
}

/// Writes `<out>/<stem>.moss` and `<out>/<stem>.report`.
pub fn write_outputs(outcome: &RunOutcome, input: &Path, out: &Path, header: &Report) -> Result<Artifacts> {
    std::fs::create_dir_all(out)?;
    let stem = input.file_stem().and_then(|s| s.to_str()).unwrap_or("manifest");
    let manifest = out.join(format!("{stem}.moss"));
    let report = out.join(format!("{stem}.report"));
    std::fs::write(&manifest, manifest::save_project(&outcome.system))?;
    let mut r = header.clone();
    r.lines.extend(outcome.report().lines);
    r.push("manifest", manifest.display());
    std::fs::write(&report, r.to_string())?;
    Ok(Artifacts { manifest, report })
}

/// Soundness of each equation at layer `i` of `sys`.
pub fn revalidate_ias(
    ias: &[GuardedEquation],
    sys: &LayeredSystem,
    i: usize,
    cfg: &RunConfig,
) -> Result<Vec<(GuardedEquation, Soundness)>> {
    let bounds = cfg.bounds_for(sys, i);
    ias.iter().map(|eq| Ok((eq.clone(), specsynth::check_soundness(eq, sys, i, bounds, cfg.fuel)?))).collect()
}

/// Where the replacement implementation comes from.
pub enum Replacement {
    /// A whole system with a module of the same name, checked in its own context.
    System(LayeredSystem),
    /// Definitions swapped into the original system.
    Definitions(ImplEnv),
}

impl Replacement {
    /// A manifest if the text loads as one with a module named `module`, else a bare `(impl ...)`.
    pub fn parse(text: &str, module: &str) -> Result<Replacement> {
        match manifest::load_project(text) {
            Ok(sys) if sys.layer_of(module).is_ok() => Ok(Replacement::System(sys)),
            Ok(_) => Err(Error::Config(format!("the replacement manifest has no module `{module}`"))),
            Err(first) => manifest::parse_impl(text).map(Replacement::Definitions).map_err(|_| first),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Revalidation {
    pub module: Symbol,
    pub results: Vec<(GuardedEquation, Soundness)>,
}

impl Revalidation {
    pub fn ok(&self) -> bool {
        self.results.iter().all(|(_, s)| *s == Soundness::Holds)
    }

    pub fn report(&self) -> Report {
        let mut r = Report::default();
        r.push("module", &self.module);
        r.push("properties", self.results.len());
        let violated: Vec<_> = self.results.iter().filter(|(_, s)| matches!(s, Soundness::Violated { .. })).collect();
        let fuel: Vec<_> = self.results.iter().filter(|(_, s)| matches!(s, Soundness::Fuel { .. })).collect();
        r.push("violations", violated.len());
        for (k, (eq, s)) in violated.iter().enumerate() {
            if let Soundness::Violated { binding, detail } = s {
                r.push(format!("violation.{}", k + 1), format!("{eq} with {}: {detail}", show(binding)));
            }
        }
        r.push("fuel-exhausted", fuel.len());
        for (k, (eq, s)) in fuel.iter().enumerate() {
            if let Soundness::Fuel { binding } = s {
                r.push(format!("fuel.{}", k + 1), format!("{eq} with {}", show(binding)));
            }
        }
        r.push("status", if self.ok() { "ok" } else { "failed" });
        r
    }
}

/// Checks layer `i`'s IAS from `sys` against a replacement implementation of the same module.
pub fn revalidate(sys: &LayeredSystem, i: usize, replacement: Replacement, cfg: &RunConfig) -> Result<Revalidation> {
    let m = sys.module(i)?;
    let ias = m.ias.clone().ok_or_else(|| Error::Config(format!("`{}` has no IAS to revalidate", m.name)))?;
    let (target, j) = match replacement {
        Replacement::System(other) => {
            let j = other.layer_of(&m.name)?;
            (other, j)
        }
        Replacement::Definitions(env) => {
            let mut other = sys.clone();
            other.modules[i].implementation.extend(env);
            (other, i)
        }
    };
    let tm = &target.modules[j];
    if !tm.has_complete_impl() {
        let missing: Vec<String> = tm.missing_functions().iter().map(|f| f.to_string()).collect();
        return Err(Error::Config(format!("replacement `{}` lacks {}", tm.name, missing.join(", "))));
    }
    let results = revalidate_ias(&ias, &target, j, cfg)?;
    Ok(Revalidation { module: m.name.clone(), results })
}

/// A property or assertion that could not be established from the layer below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeWitness {
    pub subject: String,
    pub detail: String,
}

impl fmt::Display for ProbeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.detail)
    }
}

/// Checks layer `i`'s IAS, or its ISS when it has none, using only the rules of layer `i - 1`.
/// Every failure is reported; none is an error.
pub fn spec_gap_probe(sys: &LayeredSystem, i: usize, cfg: &RunConfig) -> Result<Vec<ProbeWitness>> {
    let m = sys.module(i)?;
    if i > 0 && sys.modules[i - 1].ias.is_none() || !m.has_complete_impl() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    if let Some(ias) = &m.ias {
        for (eq, s) in revalidate_ias(ias, sys, i, cfg)? {
            match s {
                Soundness::Holds => {}
                Soundness::Violated { binding, detail } => out.push(ProbeWitness {
                    subject: eq.to_string(),
                    detail: format!("with {}: {detail}", show(&binding)),
                }),
                Soundness::Fuel { binding } => out.push(ProbeWitness {
                    subject: eq.to_string(),
                    detail: format!("with {}: ran out of fuel", show(&binding)),
                }),
            }
        }
    } else if let Some(iss) = &m.iss {
        let sc = synth_config(sys, i, cfg);
        for (k, a) in iss.assertions.iter().enumerate() {
            let mut one = sys.clone();
            let spec = one.modules[i].iss.as_mut().expect("present");
            spec.assertions = vec![a.clone()];
            match implsynth::verify_candidate(&Candidate { choices: vec![], definitions: vec![] }, &one, i, &sc)? {
                Verdict::Ok => {}
                Verdict::Refuted(cx) => out.push(ProbeWitness {
                    subject: format!("assert #{} {a}", k + 1),
                    detail: format!("with {}: {}", show(&cx.binding), cx.detail),
                }),
                Verdict::Inconclusive(n) => {
                    out.push(ProbeWitness { subject: format!("assert #{} {a}", k + 1), detail: n })
                }
            }
        }
    }
    Ok(out)
}

/// Header lines shared by every command's report.
pub fn header(command: &str, file: &Path) -> Report {
    let mut r = Report::default();
    r.push("command", command);
    r.push("file", file.display());
    r
}

/// Terms mentioning function `f`, for filtering probe output.
pub fn mentions(t: &Term, f: &str) -> bool {
    t.symbols().iter().any(|s| &**s == f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fixture, load_fixture};
    use crate::manifest::{load_project, save_project};

    fn plan_of(name: &str) -> Vec<String> {
        plan(&load_fixture(name).unwrap(), Mode::Modular)
            .unwrap()
            .iter()
            .map(|s| format!("{}:{}", s.action, s.module))
            .collect()
    }

    #[test]
    fn plans_follow_what_each_layer_lacks() {
        assert_eq!(
            plan_of("ticketvendor"),
            ["synth-impl:Stack", "synth-spec:Stack", "synth-impl:Queue", "synth-spec:Queue", "synth-impl:TicketVendor"]
        );
        assert_eq!(plan_of("list"), ["synth-spec:ListOps"]);
        assert_eq!(plan_of("hashmap-mock"), ["check:HashMap"]);
        assert_eq!(plan_of("hashmap2-over-arraylist"), ["check:ArrayList", "synth-spec:HashMap"]);
    }

    #[test]
    fn plan_refuses_unsynthesizable_layers() {
        let no_iss = "(module A :layer 0 (export (a () int)))";
        assert!(matches!(plan(&load_project(no_iss).unwrap(), Mode::Modular), Err(Error::Plan(_))));
        let no_lower_spec = r#"
(module A :layer 0 (export (a () int)) (impl (define (a) 1)))
(module B :layer 1 (export (b () int)) (iss (assert (= (b) 1)))
  (search-space (sketch (b) (?? N) (grammar (N int (a) 0)))))"#;
        let sys = load_project(no_lower_spec).unwrap();
        assert!(matches!(plan(&sys, Mode::Modular), Err(Error::Plan(m)) if m.contains("`A`")));
        assert_eq!(plan(&sys, Mode::Monolithic).unwrap().len(), 2);
    }

    #[test]
    fn contradictory_iss_fails_naming_layer_and_assertion() {
        let src = fixture("queue-as-list").unwrap().source.replace(
            "    (assert (= (qsize (emptyQueue)) 0))",
            "    (assert (= (qsize (emptyQueue)) 0))\n    (assert (= 0 1))",
        );
        let out = run_pipeline(load_project(&src).unwrap(), &RunConfig::default()).unwrap();
        assert!(!out.ok());
        let r = out.report();
        assert_eq!(r.get("step.1.layer"), Some("0"));
        assert_eq!(r.get("step.1.module"), Some("Queue"));
        let reason = r.get("step.1.reason").unwrap();
        assert!(reason.starts_with("unrealizable; last refutation: assertion #2 "), "{reason}");
        assert_eq!(out.steps.len(), 1, "later steps are skipped");
        assert_eq!(r.get("status"), Some("failed"));
    }

    #[test]
    fn rerunning_a_completed_manifest_only_checks_and_changes_nothing() {
        let first = run_pipeline(load_fixture("queue-as-list").unwrap(), &RunConfig::default()).unwrap();
        assert!(first.ok());
        let saved = save_project(&first.system);
        let again = run_pipeline(load_project(&saved).unwrap(), &RunConfig::default()).unwrap();
        assert!(again.ok());
        assert!(again.plan.iter().all(|s| s.action == Action::Check));
        assert_eq!(save_project(&again.system), saved);
    }

    #[test]
    fn check_flags_a_wrong_specification() {
        let src = fixture("hashmap-mock")
            .unwrap()
            .source
            .replace("(hget (emptyMap) k) (err)", "(hget (emptyMap) k) (some k)");
        let sys = load_project(&src).unwrap();
        let (status, counts) = check_layer(&sys, 0, &RunConfig::default()).unwrap();
        let Status::Failed(why) = status else { panic!() };
        assert!(why.starts_with("IAS `(hget (emptyMap) k) = (some k)` fails with {k=0}"), "{why}");
        assert_eq!(counts, [("properties", "3".to_string())]);
    }

    #[test]
    fn revalidation_accepts_bare_definitions() {
        let sys = load_fixture("hashmap-mock").unwrap();
        let fixed = "(impl (define (hget m k) (elookup (bucket m (mod k 3)) k)))";
        let r = revalidate(&sys, 0, Replacement::parse(fixed, "HashMap").unwrap(), &RunConfig::default()).unwrap();
        assert!(r.ok());
        let broken = "(impl (define (hget m k) (err)))";
        let r = revalidate(&sys, 0, Replacement::parse(broken, "HashMap").unwrap(), &RunConfig::default()).unwrap();
        assert_eq!(r.report().get("violations"), Some("1"));
        assert!(Replacement::parse("(module X :layer 0)", "HashMap").is_err());
    }

    #[test]
    fn probe_is_silent_without_a_spec_below() {
        let sys = load_fixture("ticketvendor").unwrap();
        assert!(spec_gap_probe(&sys, 1, &RunConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn report_lines_are_key_value() {
        let mut r = Report::default();
        r.push("a", 1);
        r.push("b", "two\nlines");
        assert_eq!(r.to_string(), "a: 1\nb: two lines\n");
        assert_eq!(r.get("b"), Some("two\nlines"));
        assert!(mentions(&Term::app("f", vec![Term::app("g", vec![])]), "g"));
    }
}
