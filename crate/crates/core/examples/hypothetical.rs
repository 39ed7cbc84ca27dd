//! A literal that one rule body must establish can still vanish from the
//! event summary when another rule for the same event never touches it.
//!
//!     cargo run --example hypothetical

use plansumm::dsl::{parse_action_library, parse_plan_library, Domain};
use plansumm::summarize::analyze;

fn read(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn main() {
    let domain = Domain::new(
        parse_plan_library(&read("hypothetical.plib")).unwrap(),
        parse_action_library(&read("hypothetical.alib")).unwrap(),
    )
    .unwrap();
    println!("{}", domain.plans);
    let a = analyze(&domain).unwrap();
    for (idx, body) in &a.bodies {
        println!("body R{idx}: must {:?}", body.must.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    let e1 = a.event("e1", 0).unwrap();
    println!("e1 must      {:?}", e1.must.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("e1 mentioned {:?}", e1.mentioned.iter().map(ToString::to_string).collect::<Vec<_>>());
}
