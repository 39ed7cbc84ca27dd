//! Recursive libraries have no summaries; the cycle is reported instead.
//!
//!     cargo run --example recursion_guard

use plansumm::dsl::parse_plan_library;
use plansumm::summarize::{compute_ranking, SummaryError};

fn main() {
    for name in ["self_loop.plib", "cycle3.plib", "mars.plib"] {
        let text = std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap();
        match compute_ranking(&parse_plan_library(&text).unwrap()) {
            Ok(r) => println!("{name}: acyclic, max rank {:?}", r.max_rank()),
            Err(SummaryError::Recursion(path)) => {
                let path: Vec<String> = path.iter().map(ToString::to_string).collect();
                println!("{name}: cycle {}", path.join(" -> "));
            }
            Err(e) => println!("{name}: {e}"),
        }
    }
}
