//! Plan over abstract operators, flag the plan, then settle it with the
//! execution oracle.
//!
//!     cargo run --example check_and_resolve

use plansumm::abstraction::{build_abstract_operators, classify_plan, plan_classical, resolve, Verdict};
use plansumm::dsl::{parse_belief_base, parse_plan_library, ActionLibrary, Domain};
use plansumm::oracle::{replay, ExecutionBounds};
use plansumm::summarize::analyze;

fn read(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn run(plib: &str) {
    let domain = Domain::new(parse_plan_library(&read(plib)).unwrap(), ActionLibrary::default()).unwrap();
    let b = parse_belief_base(&read("undo.beliefs")).unwrap();
    let goal = plansumm::dsl::parse_formula("(r)").unwrap();
    let table = analyze(&domain).unwrap().table;
    let ops = build_abstract_operators(&table);
    let plan = match plan_classical(&b.base, &goal, &ops, &b.universe, &Default::default(), 10_000) {
        Ok(p) => p,
        Err(e) => return println!("{plib}: {e}"),
    };
    println!("{plib}: planner proposes {plan}");

    let verdict = classify_plan(&plan, &b.base, &goal, &domain, &table, &b.universe).unwrap();
    println!("  check: {}", verdict.label());
    if let Verdict::PotentiallyIncorrect(ws) = &verdict {
        for w in ws {
            println!("    {} needed by step {} may be undone by step {} ({})", w.literal, w.step, w.undone_by, w.undoing_literal);
        }
    }
    match resolve(&plan, &b.base, &goal, &domain, &b.universe, ExecutionBounds::default()).unwrap() {
        Verdict::Correct(Some(o)) => {
            let fin = replay(&domain, &b.base, &o.tree).unwrap();
            println!("  resolved: reaches {fin} via");
            println!("  {}", serde_json::to_string(&o.to_json()["tree"]).unwrap());
        }
        other => println!("  resolved: {}", other.label()),
    }
}

fn main() {
    run("undo.plib");
    run("undo_narrow.plib");
}
