mod common;

use common::{domain, read_fixture};
use plansumm::dsl::{
    check_action_coherence, emit_report, parse_action_library, parse_belief_base, parse_domain, parse_plan,
    parse_plan_library, parse_report, DslError, Step,
};
use plansumm::summarize::analyze;
use plansumm::synth::{random_domain, rng, SynthConfig};
use proptest::prelude::*;

#[test]
fn fixtures_parse() {
    let d = domain("mars.plib", "mars.alib");
    assert_eq!(d.plans.rules().len(), 8);
    assert_eq!(d.actions.rules().len(), 10);
    assert_eq!(d.plans.event_types().len(), 6);
    let b = parse_belief_base(&read_fixture("mars.beliefs")).unwrap();
    assert_eq!(b.universe.len(), 3);
    assert_eq!(b.base.len(), 2);
}

#[test]
fn combined_domain_file() {
    let text = format!("{}\n{}", read_fixture("undo.plib"), read_fixture("independent.alib"));
    let d = parse_domain(&text).unwrap();
    assert_eq!(d.plans.rules().len(), 3);
}

#[test]
fn syntax_errors_carry_position() {
    match parse_plan_library("(plan-rule (event e) (context true)\n  (body (add p)") {
        Err(DslError::Syntax { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
}

#[test]
fn validation_errors() {
    for bad in [
        // empty body
        "(plan-rule (event e) (context true) (body))",
        // repeated head variable
        "(plan-rule (event e ?x ?x) (context true) (body (add p)))",
        // constant in head
        "(plan-rule (event e a) (context true) (body (add p)))",
        // arity clash
        "(plan-rule (event e) (context (p a)) (body (add p)))",
        // undeclared event
        "(plan-rule (event e) (context true) (body (event f)))",
    ] {
        assert!(parse_plan_library(bad).is_err(), "{bad}");
    }
    assert!(matches!(
        parse_plan_library("(plan-rule (event e) (context true) (body (event f)))"),
        Err(DslError::Validation { .. })
    ));
    assert!(parse_action_library("(action (a) (pre true) (add (p)) (del))\n(action (a) (pre true) (add) (del))").is_err());
}

#[test]
fn plans_are_ground() {
    let steps = parse_plan(&read_fixture("undo.plan")).unwrap();
    assert_eq!(steps.len(), 2);
    assert!(steps.iter().all(Step::is_event));
    assert!(parse_plan("(event e ?x)").is_err());
}

#[test]
fn action_coherence_violations() {
    let ok = parse_action_library("(action (mv ?x ?y) (pre (!= ?x ?y)) (add (at ?y)) (del (at ?x)))").unwrap();
    assert!(check_action_coherence(&ok.rules()[0]).is_empty());
    let bad = parse_action_library(&read_fixture("mars.alib")).unwrap();
    let mv = bad.get("move", 2).unwrap();
    let v = check_action_coherence(mv);
    assert_eq!(v.len(), 1);
    assert!(v[0].to_string().contains("coincide"));
}

#[test]
fn report_round_trip_mars() {
    let a = analyze(&domain("mars.plib", "mars.alib")).unwrap();
    let text = emit_report(&a.table);
    assert!(text.ends_with('\n'));
    assert_eq!(parse_report(&text).unwrap(), a.table);
}

#[test]
fn report_rejects_garbage() {
    assert!(parse_report("[1, 2]").is_err());
    assert!(parse_report(r#"{"summaries": [{"subject": "e"}]}"#).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn report_round_trip_random(seed in any::<u64>()) {
        let sd = random_domain(&mut rng(seed), &SynthConfig::default());
        let a = analyze(&sd.domain).unwrap();
        let text = emit_report(&a.table);
        prop_assert_eq!(parse_report(&text).unwrap(), a.table);
    }

    #[test]
    fn printed_libraries_reparse(seed in any::<u64>()) {
        let sd = random_domain(&mut rng(seed), &SynthConfig::default());
        let plans = parse_plan_library(&sd.domain.plans.to_string()).unwrap();
        let actions = parse_action_library(&sd.domain.actions.to_string()).unwrap();
        prop_assert_eq!(&plans, &sd.domain.plans);
        prop_assert_eq!(&actions, &sd.domain.actions);
    }
}
