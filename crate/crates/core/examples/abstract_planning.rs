//! Plan for a Mars rover goal with abstract operators built from event
//! summaries, accepting only plans that the oracle confirms.
//!
//!     cargo run --example abstract_planning

use plansumm::abstraction::{plan_abstract_verified, PlanningOptions};
use plansumm::dsl::{parse_action_library, parse_belief_base, parse_formula, parse_plan_library, Domain};
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
    let table = analyze(&domain).unwrap().table;

    for (goal, abstract_only) in [("(and (rT s1) (not (hSS s1)))", true), ("(and (at s1) (cal))", false)] {
        let goal = parse_formula(goal).unwrap();
        let options = PlanningOptions {
            abstract_only,
            ..PlanningOptions::default()
        };
        match plan_abstract_verified(&b.base, &goal, &domain, &table, &b.universe, &options) {
            Ok(acc) => {
                println!("{goal}: {} (flagged: {}, rejected: {})", acc.plan, acc.flagged, acc.rejected.len());
                println!("  final beliefs {}", acc.witness.final_beliefs);
            }
            Err(e) => println!("{goal}: {e}"),
        }
    }
}
