use std::collections::BTreeSet;

use plansumm::dsl::{parse_formula, parse_literal};
use plansumm::logic::{
    evaluate, groundings, mgu_literals, rename_apart, satisfying_groundings, Atom, BeliefBase, Formula, Literal,
    Substitution, Symbolic, Term,
};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = Term> {
    prop_oneof![
        prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
        prop::sample::select(vec!["a", "b"]).prop_map(Term::constant),
    ]
}

fn literal() -> impl Strategy<Value = Literal> {
    (prop::sample::select(vec!["p", "q"]), prop::collection::vec(term(), 2), any::<bool>()).prop_map(|(p, args, pos)| {
        let a = Atom::new(p, args);
        if pos {
            Literal::pos(a)
        } else {
            Literal::neg(a)
        }
    })
}

fn universe() -> BTreeSet<String> {
    ["a", "b"].iter().map(|s| s.to_string()).collect()
}

proptest! {
    #[test]
    fn mgu_unifies(l in literal(), r in literal()) {
        if let Some(s) = mgu_literals(&l, &r) {
            prop_assert_eq!(l.apply(&s), r.apply(&s));
        }
    }

    #[test]
    fn mgu_exists_for_every_common_ground_instance(l in literal(), r in literal()) {
        let vars: Vec<String> = l.vars().union(&r.vars()).cloned().collect();
        let common = groundings(&vars, &universe()).any(|g| l.apply(&g) == r.apply(&g));
        prop_assert_eq!(common, mgu_literals(&l, &r).is_some());
    }

    #[test]
    fn rename_apart_avoids(l in literal()) {
        let avoid = l.vars();
        let (renamed, s) = rename_apart(&l, &avoid);
        prop_assert!(renamed.vars().is_disjoint(&avoid));
        prop_assert_eq!(l.apply(&s), renamed);
    }

    #[test]
    fn complement_is_involutive(l in literal()) {
        prop_assert_eq!(l.complement().complement(), l.clone());
        prop_assert_ne!(l.complement(), l);
    }

    #[test]
    fn satisfying_groundings_agree_with_evaluate(l in literal(), facts in prop::collection::vec(literal(), 0..4)) {
        let b = BeliefBase::from_atoms(facts.into_iter().filter(|f| f.is_ground()).map(|f| f.atom)).unwrap();
        let f = Formula::Lit(l.clone());
        let vars: Vec<String> = l.vars().into_iter().collect();
        let sat = satisfying_groundings(&b, &f, &universe());
        let expected: Vec<Substitution> = groundings(&vars, &universe())
            .filter(|g| evaluate(&b, &f, g).unwrap())
            .collect();
        prop_assert_eq!(sat.len(), expected.len());
    }
}

#[test]
fn left_variable_binds_to_right() {
    let s = mgu_literals(&parse_literal("(p ?x)").unwrap(), &parse_literal("(p ?y)").unwrap()).unwrap();
    assert_eq!(s.get("x"), Some(&Term::var("y")));
}

#[test]
fn substitution_is_simultaneous() {
    let l = parse_literal("(p ?x ?y)").unwrap();
    let s = Substitution::from_pairs([("x", Term::var("y")), ("y", Term::var("x"))]);
    assert_eq!(l.apply(&s), parse_literal("(p ?y ?x)").unwrap());
}

#[test]
fn rename_uses_smallest_free_suffix() {
    let l = parse_literal("(p ?y1)").unwrap();
    let avoid: BTreeSet<String> = ["y1", "y2"].iter().map(|s| s.to_string()).collect();
    assert_eq!(rename_apart(&l, &avoid).0, parse_literal("(p ?y3)").unwrap());
}

#[test]
fn evaluate_connectives() {
    let b = BeliefBase::from_atoms([Atom::parse_args("p", &["a"])]).unwrap();
    let s = Substitution::new();
    for (text, want) in [
        ("(and (p a) (not (p b)))", true),
        ("(or (p b) (= a a))", true),
        ("(!= a a)", false),
        ("true", true),
        ("false", false),
    ] {
        assert_eq!(evaluate(&b, &parse_formula(text).unwrap(), &s).unwrap(), want, "{text}");
    }
}

#[test]
fn evaluate_needs_ground() {
    let b = BeliefBase::new();
    assert!(evaluate(&b, &parse_formula("(p ?x)").unwrap(), &Substitution::new()).is_err());
}

#[test]
fn belief_bases_hold_ground_atoms_only() {
    let mut b = BeliefBase::new();
    assert!(b.insert(Atom::parse_args("p", &["?x"])).is_err());
    assert!(b.insert(Atom::parse_args("p", &["a"])).unwrap());
    assert!(!b.insert(Atom::parse_args("p", &["a"])).unwrap());
    assert!(b.holds(&parse_literal("(p a)").unwrap()));
    assert!(b.holds(&parse_literal("(not (p b))").unwrap()));
    assert!(b.remove(&Atom::parse_args("p", &["a"])));
    assert!(b.is_empty());
}
