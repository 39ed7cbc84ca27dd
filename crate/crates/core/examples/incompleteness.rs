//! Four small libraries where the summaries are sound but not tight.
//!
//!     cargo run --example incompleteness

use plansumm::abstraction::{build_abstract_operators, export_pddl_like};
use plansumm::dsl::{parse_action_library, parse_plan_library, Domain};
use plansumm::summarize::{analyze, Analysis};

fn read(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn load(plib: &str, alib: &str) -> Analysis {
    let d = Domain::new(
        parse_plan_library(&read(plib)).unwrap(),
        parse_action_library(&read(alib)).unwrap(),
    )
    .unwrap();
    analyze(&d).unwrap()
}

fn row(a: &Analysis, name: &str, arity: usize) {
    let info = a.event(name, arity).unwrap();
    let s = |set: &std::collections::BTreeSet<plansumm::logic::Literal>| {
        set.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    };
    println!("  {}: must [{}] mentioned [{}]", info.head().unwrap(), s(&info.must), s(&info.mentioned));
}

fn main() {
    println!("1. context-dependent effects are only mentioned");
    row(&load("gotowork.plib", "gotowork.alib"), "travelHome", 0);

    println!("2. a body-local variable leaks into the precondition");
    let a = load("mov.plib", "mov.alib");
    row(&a, "mov", 3);
    let export = export_pddl_like(&build_abstract_operators(&a.table));
    println!("{export}");

    println!("3. the same literal reached on both branches, but under different variables");
    row(&load("sendmail.plib", "empty.alib"), "sendMail", 2);
    println!("   after naming the recipient consistently:");
    row(&load("sendmail_edited.plib", "empty.alib"), "sendMail", 2);

    println!("4. the same move as a plan rule and as an action");
    row(&load("move_plan.plib", "empty.alib"), "move", 2);
    row(&load("move_action.plib", "move_action.alib"), "relocate", 2);
}
