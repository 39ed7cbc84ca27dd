//! Print primitive and abstract operators in a PDDL-like syntax.
//!
//!     cargo run --example export_operators

use plansumm::abstraction::{action_operators, build_abstract_operators, export_pddl_like};
use plansumm::dsl::{parse_action_library, parse_plan_library, Domain};
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
    let table = analyze(&domain).unwrap().table;
    let mut ops = action_operators(&domain.actions);
    ops.extend(build_abstract_operators(&table));
    print!("{}", export_pddl_like(&ops));
}
