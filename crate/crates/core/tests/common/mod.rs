#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use plansumm::abstraction::{plan_abstract_verified, AbstractionError, PlanningOptions};
use plansumm::dsl::{parse_action_library, parse_belief_base, parse_literal, parse_plan_library, Beliefs, Domain};
use plansumm::logic::{
    groundings, is_consistent_ground, satisfying_groundings, BeliefBase, Formula, Literal, Substitution, Symbolic,
    Term,
};
use plansumm::oracle::{
    all_belief_bases, capture_failure, enumerate_executions, ground_atoms, replay, validate_coherence,
    ExecutionBounds, OracleError,
};
use plansumm::summarize::{analyze, canonical_literal, compute_mnt_event, mentioned_event_types};
use plansumm::synth::{random_beliefs, random_domain, rng, SynthConfig, SynthDomain};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn domain(plib: &str, alib: &str) -> Domain {
    let plans = parse_plan_library(&read_fixture(plib)).unwrap();
    let actions = parse_action_library(&read_fixture(alib)).unwrap();
    Domain::new(plans, actions).unwrap()
}

pub fn beliefs(name: &str) -> Beliefs {
    parse_belief_base(&read_fixture(name)).unwrap()
}

pub fn lit(s: &str) -> Literal {
    parse_literal(s).unwrap()
}

pub fn lits(xs: &[&str]) -> BTreeSet<Literal> {
    xs.iter().map(|s| lit(s)).collect()
}

fn permutations(items: &[String]) -> Vec<Vec<String>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head.clone());
            out.push(p);
        }
    }
    out
}

/// Set equality up to a consistent one-to-one renaming of variables.
pub fn same_modulo_renaming(a: &BTreeSet<Literal>, b: &BTreeSet<Literal>) -> bool {
    let va: Vec<String> = a.vars().into_iter().collect();
    let vb: Vec<String> = b.vars().into_iter().collect();
    if va.len() != vb.len() || a.len() != b.len() {
        return false;
    }
    permutations(&vb).into_iter().any(|perm| {
        let s = Substitution::from_pairs(va.iter().cloned().zip(perm.into_iter().map(Term::var)));
        a.apply(&s) == *b
    })
}

pub fn small_bounds() -> ExecutionBounds {
    ExecutionBounds {
        max_depth: 32,
        max_outcomes: 200_000,
    }
}

/// Every satisfiable ground instance of an event precondition comes with a
/// consistent ground must set.
pub fn must_consistency_check(sd: &SynthDomain) -> Result<usize, String> {
    let a = analyze(&sd.domain).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for info in a.table.iter() {
        let pre = info.precondition.clone().unwrap();
        let mut vars: Vec<String> = info.params.clone();
        for v in pre.vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        for theta in groundings(&vars, &sd.universe) {
            if !is_consistent_ground(&pre.apply(&theta)) {
                continue;
            }
            checked += 1;
            let must = info.must.apply(&theta);
            if let Some(l) = must.iter().find(|l| must.contains(&l.complement())) {
                return Err(format!(
                    "{} under {theta}: must set {:?} holds both {l} and its complement\n{}",
                    info.subject,
                    must.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    sd.domain.plans
                ));
            }
        }
    }
    Ok(checked)
}

/// Start belief bases for the oracle: every base when there are few atoms,
/// otherwise a sample that includes the empty and the full base.
pub fn start_bases(sd: &SynthDomain, rng: &mut impl Rng) -> Vec<BeliefBase> {
    let atoms = ground_atoms(&sd.domain.belief_predicates(), &sd.universe);
    if atoms.len() <= 6 {
        return all_belief_bases(&atoms, &BeliefBase::new(), 6).unwrap();
    }
    let mut out = vec![BeliefBase::new(), BeliefBase::from_atoms(atoms.iter().cloned()).unwrap()];
    for _ in 0..30 {
        out.push(random_beliefs(rng, &sd.domain, &sd.universe));
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, Default, Clone, Copy)]
pub struct SoundnessStats {
    pub coherent: bool,
    pub executions: usize,
    pub capture_checks: usize,
}

/// Checks one library against the oracle: must literals hold after every
/// execution, executions imply the precondition, changes are captured by
/// mentioned sets, one summary per event type, and mentioned literals are
/// reachable. Incoherent libraries are skipped.
pub fn oracle_soundness_check(sd: &SynthDomain, rng: &mut impl Rng) -> Result<SoundnessStats, String> {
    let d = &sd.domain;
    let u = &sd.universe;
    let bounds = small_bounds();
    let mut stats = SoundnessStats::default();
    match validate_coherence(d, u, bounds) {
        Ok(v) if v.is_empty() => stats.coherent = true,
        Ok(_) | Err(OracleError::BoundsExceeded(_)) => return Ok(stats),
        Err(e) => return Err(e.to_string()),
    }
    let a = analyze(d).map_err(|e| e.to_string())?;
    let starts = start_bases(sd, rng);
    let ctx = |what: &str| format!("{what}\n{}\n{}", d.plans, d.actions);

    // one summary per event type
    let types = mentioned_event_types(&d.plans);
    if a.table.len() != types.len() || !types.iter().all(|t| a.table.get(t).is_some()) {
        return Err(ctx("summary table does not have exactly one entry per event type"));
    }

    for info in a.table.iter() {
        let head = info.head().unwrap();
        let pre = info.precondition.clone().unwrap();
        for theta in groundings(&info.params, u) {
            let event = head.apply(&theta);
            let program = [plansumm::dsl::Step::Event(event.clone())];
            let must = info.must.apply(&theta);
            let pre_g = pre.apply(&theta);
            for b in &starts {
                let outs = enumerate_executions(d, b, &program, u, bounds).map_err(|e| e.to_string())?;
                stats.executions += outs.len();
                for o in &outs {
                    if let Some(l) = must.iter().find(|l| !o.final_beliefs.holds(l)) {
                        return Err(ctx(&format!(
                            "must literal {l} of {event} fails from {b}, final {}",
                            o.final_beliefs
                        )));
                    }
                }
                if !outs.is_empty() && satisfying_groundings(b, &pre_g, u).is_empty() {
                    return Err(ctx(&format!("{event} runs from {b} but {pre_g} is false")));
                }
            }
            let mentioned = info.mentioned.apply(&theta);
            stats.capture_checks += 1;
            if let Some(f) = capture_failure(d, &mentioned, &program, u, bounds, &starts).map_err(|e| e.to_string())? {
                return Err(ctx(&format!("{} not captured for {event} from {}", f.literal, f.start)));
            }
        }
        let keep: BTreeSet<String> = info.params.iter().cloned().collect();
        let e = plansumm::dsl::EventType::new(head.pred.clone(), head.arity());
        let mnt = compute_mnt_event(&e, &d.plans, &d.actions, 32).map_err(|e| e.to_string())?;
        for l in &info.mentioned {
            if !mnt.contains(&canonical_literal(l, &keep)) {
                return Err(ctx(&format!("mentioned literal {l} of {e} is not in mnt")));
            }
        }
    }
    // rule bodies
    for (idx, body) in &a.bodies {
        let steps = &d.plans.rules()[*idx].body;
        stats.capture_checks += 1;
        if let Some(f) = capture_failure(d, &body.mentioned, steps, u, bounds, &starts).map_err(|e| e.to_string())? {
            return Err(ctx(&format!("{} not captured by body of R{idx} from {}", f.literal, f.start)));
        }
    }
    Ok(stats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Episode {
    Accepted { flagged: bool, abstract_steps: usize },
    NoPlan,
    Skipped,
}

/// One random planning episode: a coherent random domain, a random start
/// and a goal some event must achieve. Errors are violations.
pub fn planning_episode(seed: u64) -> Result<Episode, String> {
    let mut r = rng(seed);
    let cfg = SynthConfig::default();
    let sd = (0..20)
        .map(|_| random_domain(&mut r, &cfg))
        .find(|sd| matches!(validate_coherence(&sd.domain, &sd.universe, small_bounds()), Ok(v) if v.is_empty()));
    let Some(sd) = sd else {
        return Ok(Episode::Skipped);
    };
    let d = &sd.domain;
    let b = random_beliefs(&mut r, d, &sd.universe);
    let a = analyze(d).map_err(|e| e.to_string())?;
    let mut goals: Vec<Literal> = Vec::new();
    for info in a.table.iter() {
        for theta in groundings(&info.params, &sd.universe) {
            goals.extend(info.must.apply(&theta).into_iter().filter(|l| !b.holds(l)));
        }
    }
    let Some(goal) = goals.choose(&mut r).cloned() else {
        return Ok(Episode::Skipped);
    };
    let goal = Formula::Lit(goal);
    let options = PlanningOptions {
        bounds: small_bounds(),
        ..PlanningOptions::default()
    };
    match plan_abstract_verified(&b, &goal, d, &a.table, &sd.universe, &options) {
        Ok(acc) => {
            let fin = replay(d, &b, &acc.witness.tree).map_err(|e| e.to_string())?;
            if fin != acc.witness.final_beliefs || !fin.holds(match &goal {
                Formula::Lit(l) => l,
                _ => unreachable!(),
            }) {
                return Err(format!("witness for {} does not replay to the goal", acc.plan));
            }
            Ok(Episode::Accepted {
                flagged: acc.flagged,
                abstract_steps: acc.plan.steps.iter().filter(|s| s.step.is_event()).count(),
            })
        }
        Err(AbstractionError::NoPlan) | Err(AbstractionError::BoundsExceeded(_)) => Ok(Episode::NoPlan),
        Err(AbstractionError::Oracle(OracleError::BoundsExceeded(_))) => Ok(Episode::NoPlan),
        Err(e) => Err(format!("{e}\n{}\n{}\nfrom {b} goal {goal}", d.plans, d.actions)),
    }
}
