//! Summarise the Mars rover library and print one line per event.
//!
//!     cargo run --example summarize_mars

use plansumm::dsl::{parse_action_library, parse_plan_library, Domain};
use plansumm::summarize::analyze;

fn read(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn show(set: &std::collections::BTreeSet<plansumm::logic::Literal>) -> String {
    set.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn main() {
    let plans = parse_plan_library(&read("mars.plib")).unwrap();
    let actions = parse_action_library(&read("mars.alib")).unwrap();
    let domain = Domain::new(plans, actions).unwrap();
    let analysis = analyze(&domain).unwrap();

    for info in analysis.table.iter() {
        let rank = analysis
            .ranking
            .rank(&plansumm::dsl::EventType::of(&info.head().unwrap()))
            .unwrap();
        println!("{} (rank {rank})", info.head().unwrap());
        println!("  pre:       {}", info.precondition.as_ref().unwrap());
        println!("  must:      {}", show(&info.must));
        println!("  mentioned: {}", show(&info.mentioned));
    }
}
