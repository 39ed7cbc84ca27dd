//! Generate random acyclic libraries and spot-check summaries against the
//! oracle. Set PLANSUMM_SEED to vary the run.
//!
//!     cargo run --example random_domains

use plansumm::dsl::Step;
use plansumm::logic::{groundings, Symbolic};
use plansumm::oracle::{enumerate_executions, validate_coherence, ExecutionBounds};
use plansumm::summarize::analyze;
use plansumm::synth::{random_beliefs, random_domain, rng, seed_from_env, SynthConfig};

fn main() {
    let seed = seed_from_env(1);
    let mut r = rng(seed);
    let bounds = ExecutionBounds::default();
    let (mut coherent, mut runs, mut bad) = (0, 0, 0);
    for _ in 0..50 {
        let sd = random_domain(&mut r, &SynthConfig::default());
        if !validate_coherence(&sd.domain, &sd.universe, bounds).is_ok_and(|v| v.is_empty()) {
            continue;
        }
        coherent += 1;
        let a = analyze(&sd.domain).unwrap();
        let b = random_beliefs(&mut r, &sd.domain, &sd.universe);
        for info in a.table.iter() {
            for theta in groundings(&info.params, &sd.universe) {
                let program = [Step::Event(info.head().unwrap().apply(&theta))];
                let must = info.must.apply(&theta);
                for o in enumerate_executions(&sd.domain, &b, &program, &sd.universe, bounds).unwrap() {
                    runs += 1;
                    if !must.iter().all(|l| o.final_beliefs.holds(l)) {
                        bad += 1;
                    }
                }
            }
        }
    }
    println!("seed {seed}: {coherent} coherent libraries, {runs} executions, {bad} must violations");
}
