//! Run the execution oracle directly: enumerate executions, compare with the
//! summary, check capture of changed literals and library coherence.
//!
//!     cargo run --example oracle_verify

use plansumm::dsl::{parse_action_library, parse_belief_base, parse_plan_library, Domain, Step};
use plansumm::logic::{Atom, Substitution, Symbolic, Term};
use plansumm::oracle::{capture_failure, enumerate_executions, validate_coherence, ExecutionBounds};
use plansumm::summarize::analyze;

fn read(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn main() {
    let domain = Domain::new(
        parse_plan_library(&read("mars.plib")).unwrap(),
        parse_action_library(&read("mars.alib")).unwrap(),
    )
    .unwrap();
    let b = parse_belief_base(&read("mars.beliefs")).unwrap();
    let bounds = ExecutionBounds::default();
    let a = analyze(&domain).unwrap();

    let event = Atom::parse_args("transmitRes", &["s1"]);
    let program = [Step::Event(event.clone())];
    let outs = enumerate_executions(&domain, &b.base, &program, &b.universe, bounds).unwrap();
    let info = a.event("transmitRes", 1).unwrap();
    let must = info.must.apply(&Substitution::from_pairs([("y", Term::constant("s1"))]));
    println!("{event}: {} executions from {}", outs.len(), b.base);
    for o in &outs {
        let trace: Vec<String> = o.trace.iter().map(ToString::to_string).collect();
        let ok = must.iter().all(|l| o.final_beliefs.holds(l));
        println!("  {} -> must holds: {ok}", trace.join(" "));
    }

    let captured = capture_failure(&domain, &info.mentioned, &program, &b.universe, bounds, std::slice::from_ref(&b.base)).unwrap();
    println!("capture: {}", captured.map_or("every change is mentioned".to_string(), |f| format!("missed {}", f.literal)));

    let violations = validate_coherence(&domain, &b.universe, bounds).unwrap();
    println!("coherence violations: {}", violations.len());
}
