//! Precondition, must-literal and mentioned-literal summaries of event
//! goals, computed bottom-up over a ranking of the plan library.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::dsl::{ActionLibrary, Domain, EventType, PlanLibrary, Step};
use crate::logic::{
    fresh_name, mgu_literals, rename_apart, Atom, Formula, Literal, Substitution, Symbolic, Term,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SummaryError {
    #[error("plan library is recursive: {}", render_cycle(.0))]
    Recursion(Vec<EventType>),
    #[error("no action rule for {0}")]
    UnknownAction(String),
    #[error("no summary for {0}")]
    MissingSummary(String),
}

fn render_cycle(path: &[EventType]) -> String {
    path.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" -> ")
}

/// What a summary describes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subject {
    Event(EventType),
    /// Body of the plan rule with this index.
    Body(usize),
    Primitive(Step),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Event(e) => write!(f, "{e}"),
            Subject::Body(i) => write!(f, "P{i}"),
            Subject::Primitive(s) => write!(f, "{s}"),
        }
    }
}

/// `⟨P, φ, must, mentioned⟩`. `precondition` is `None` (ε) for anything
/// that is not an event type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummaryInfo {
    pub subject: Subject,
    /// Head variables of an event type, in order; empty otherwise.
    pub params: Vec<String>,
    pub precondition: Option<Formula>,
    pub must: BTreeSet<Literal>,
    pub mentioned: BTreeSet<Literal>,
}

impl SummaryInfo {
    pub fn head(&self) -> Option<Atom> {
        match &self.subject {
            Subject::Event(e) => Some(Atom::new(
                e.name.clone(),
                self.params.iter().map(|p| Term::var(p.clone())).collect(),
            )),
            _ => None,
        }
    }

    fn check_invariants(&self) {
        debug_assert!(self.must.is_subset(&self.mentioned), "must ⊄ mentioned for {}", self.subject);
        debug_assert_eq!(self.precondition.is_some(), matches!(self.subject, Subject::Event(_)));
        if matches!(self.subject, Subject::Event(_)) {
            let params: BTreeSet<String> = self.params.iter().cloned().collect();
            debug_assert!(self.must.vars().is_subset(&params));
        }
    }
}

/// Event-type summaries, one per type.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SummaryTable {
    entries: BTreeMap<EventType, SummaryInfo>,
}

impl SummaryTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts an event summary; a second entry for the same type replaces
    /// the first.
    pub fn insert(&mut self, info: SummaryInfo) {
        let Subject::Event(e) = &info.subject else {
            panic!("only event summaries belong in a SummaryTable");
        };
        self.entries.insert(e.clone(), info);
    }

    pub fn get(&self, e: &EventType) -> Option<&SummaryInfo> {
        self.entries.get(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &SummaryInfo> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Rank per event type; parents rank strictly above their children.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Ranking {
    pub ranks: BTreeMap<EventType, usize>,
}

impl Ranking {
    pub fn rank(&self, e: &EventType) -> Option<usize> {
        self.ranks.get(e).copied()
    }

    pub fn max_rank(&self) -> Option<usize> {
        self.ranks.values().max().copied()
    }
}

/// Event types mentioned in the bodies of the rules handling `e`.
pub fn children(e: &EventType, plans: &PlanLibrary) -> BTreeSet<EventType> {
    plans
        .rules_for(e)
        .flat_map(|(_, r)| r.body.iter())
        .filter_map(|s| match s {
            Step::Event(a) => Some(EventType::of(a)),
            _ => None,
        })
        .collect()
}

/// Event types mentioned anywhere in the library, as heads or as steps.
pub fn mentioned_event_types(plans: &PlanLibrary) -> BTreeSet<EventType> {
    let mut out = plans.event_types().clone();
    for r in plans.rules() {
        for s in &r.body {
            if let Step::Event(a) = s {
                out.insert(EventType::of(a));
            }
        }
    }
    out
}

/// Rank = 1 + the largest child rank, leaves at 0. Fails with the offending
/// cycle if the children relation is cyclic.
pub fn compute_ranking(plans: &PlanLibrary) -> Result<Ranking, SummaryError> {
    enum Mark {
        Active,
        Done(usize),
    }
    fn visit(
        e: &EventType,
        plans: &PlanLibrary,
        marks: &mut BTreeMap<EventType, Mark>,
        stack: &mut Vec<EventType>,
    ) -> Result<usize, SummaryError> {
        match marks.get(e) {
            Some(Mark::Done(r)) => return Ok(*r),
            Some(Mark::Active) => {
                let start = stack.iter().position(|s| s == e).unwrap();
                let mut cycle = stack[start..].to_vec();
                cycle.push(e.clone());
                return Err(SummaryError::Recursion(cycle));
            }
            None => {}
        }
        marks.insert(e.clone(), Mark::Active);
        stack.push(e.clone());
        let mut rank = 0;
        for c in children(e, plans) {
            rank = rank.max(visit(&c, plans, marks, stack)? + 1);
        }
        stack.pop();
        marks.insert(e.clone(), Mark::Done(rank));
        Ok(rank)
    }

    let mut marks = BTreeMap::new();
    let mut ranking = Ranking::default();
    for e in mentioned_event_types(plans) {
        let r = visit(&e, plans, &mut marks, &mut Vec::new())?;
        ranking.ranks.insert(e, r);
    }
    Ok(ranking)
}

/// `{head_i / args_i}` for a head of distinct variables.
pub(crate) fn bind_head(head: &Atom, args: &[Term]) -> Substitution {
    Substitution::from_pairs(
        head.args
            .iter()
            .zip(args)
            .map(|(h, t)| (h.name().to_string(), t.clone())),
    )
}

/// Postcondition of a primitive step.
pub fn post(step: &Step, actions: &ActionLibrary) -> Result<BTreeSet<Literal>, SummaryError> {
    match step {
        Step::Test(_) => Ok(BTreeSet::new()),
        Step::Add(b) => Ok([Literal::pos(b.clone())].into()),
        Step::Del(b) => Ok([Literal::neg(b.clone())].into()),
        Step::Act(a) => {
            let rule = actions
                .get(&a.pred, a.arity())
                .ok_or_else(|| SummaryError::UnknownAction(a.to_string()))?;
            let theta = bind_head(&rule.head, &a.args);
            Ok(rule
                .add
                .iter()
                .map(|b| Literal::pos(b.apply(&theta)))
                .chain(rule.del.iter().map(|b| Literal::neg(b.apply(&theta))))
                .collect())
        }
        Step::Event(a) => panic!("post() of event step {a}"),
    }
}

/// Must and mentioned literals of one atomic step, already instantiated to
/// the step's arguments.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StepSummary {
    pub must: BTreeSet<Literal>,
    pub mentioned: BTreeSet<Literal>,
}

/// Summaries available while summarising a body: primitive steps by syntax
/// and event types by type.
#[derive(Debug, Clone, Copy)]
pub struct Delta<'a> {
    pub primitives: &'a BTreeMap<Step, SummaryInfo>,
    pub events: &'a SummaryTable,
}

impl Delta<'_> {
    /// Summary of an event occurrence `e(t)`: the type summary with its
    /// non-head variables renamed away from `avoid`, then `{x/t}` applied.
    /// Fresh names are added to `avoid`.
    pub fn instantiate_event(
        &self,
        occurrence: &Atom,
        avoid: &mut BTreeSet<String>,
    ) -> Result<StepSummary, SummaryError> {
        let info = self
            .events
            .get(&EventType::of(occurrence))
            .ok_or_else(|| SummaryError::MissingSummary(EventType::of(occurrence).to_string()))?;
        let params: BTreeSet<String> = info.params.iter().cloned().collect();
        let mut taken: BTreeSet<String> = avoid.iter().cloned().collect();
        taken.extend(params.iter().cloned());
        let mut own = info.must.vars();
        info.mentioned.collect_vars(&mut own);
        taken.extend(own.iter().cloned());

        let mut theta = Substitution::new();
        for v in own.difference(&params) {
            if avoid.contains(v) {
                let fresh = fresh_name(v, &taken);
                taken.insert(fresh.clone());
                avoid.insert(fresh.clone());
                theta.bind(v.clone(), Term::var(fresh));
            } else {
                avoid.insert(v.clone());
            }
        }
        for (p, t) in info.params.iter().zip(&occurrence.args) {
            theta.bind(p.clone(), t.clone());
        }
        Ok(StepSummary {
            must: info.must.apply(&theta),
            mentioned: info.mentioned.apply(&theta),
        })
    }

    /// Step summaries of a sequence. `avoid` should hold every variable of
    /// the surrounding rule.
    pub fn instantiate_steps(
        &self,
        steps: &[Step],
        avoid: &BTreeSet<String>,
    ) -> Result<Vec<StepSummary>, SummaryError> {
        let mut avoid = avoid.clone();
        steps.iter().for_each(|s| s.collect_vars(&mut avoid));
        steps
            .iter()
            .map(|s| match s {
                Step::Event(a) => self.instantiate_event(a, &mut avoid),
                prim => {
                    let info = self
                        .primitives
                        .get(prim)
                        .ok_or_else(|| SummaryError::MissingSummary(prim.to_string()))?;
                    Ok(StepSummary {
                        must: info.must.clone(),
                        mentioned: info.mentioned.clone(),
                    })
                }
            })
            .collect()
    }
}

/// `l` is the exact complement of a must literal of some step in `rest`.
pub fn must_undone(l: &Literal, rest: &[StepSummary]) -> bool {
    let c = l.complement();
    rest.iter().any(|s| s.must.contains(&c))
}

/// Earliest step in `rest` with a must or mentioned literal `l'` (renamed
/// apart from `l`) such that `lθ = complement(l')θ`. Ties inside one step go
/// to the first literal in rendering order. Returns the step index within
/// `rest`, the renamed `l'`, and `θ`.
pub fn may_undone_witness(l: &Literal, rest: &[StepSummary]) -> Option<(usize, Literal, Substitution)> {
    let lvars = l.vars();
    for (k, s) in rest.iter().enumerate() {
        let mut candidates: Vec<&Literal> = s.must.union(&s.mentioned).collect();
        candidates.sort_by_cached_key(|c| c.to_string());
        for cand in candidates {
            if cand.atom.pred != l.atom.pred || cand.positive == l.positive {
                continue;
            }
            let (renamed, _) = rename_apart(cand, &lvars);
            if let Some(theta) = mgu_literals(l, &renamed.complement()) {
                return Some((k, renamed, theta));
            }
        }
    }
    None
}

pub fn may_undone(l: &Literal, rest: &[StepSummary]) -> bool {
    may_undone_witness(l, rest).is_some()
}

/// Must and mentioned literals of a sequence of step summaries.
pub fn combine_steps(steps: &[StepSummary]) -> StepSummary {
    let mut out = StepSummary::default();
    for (i, s) in steps.iter().enumerate() {
        let rest = &steps[i + 1..];
        for l in &s.must {
            if !may_undone(l, rest) {
                out.must.insert(l.clone());
            }
        }
        for l in s.must.iter().chain(&s.mentioned) {
            if !must_undone(l, rest) {
                out.mentioned.insert(l.clone());
            }
        }
    }
    out
}

/// Summary of the body of plan rule `index`.
pub fn summ_plan(index: usize, plans: &PlanLibrary, delta: Delta<'_>) -> Result<SummaryInfo, SummaryError> {
    let rule = &plans.rules()[index];
    let steps = delta.instantiate_steps(&rule.body, &rule.all_vars())?;
    let combined = combine_steps(&steps);
    let info = SummaryInfo {
        subject: Subject::Body(index),
        params: Vec::new(),
        precondition: None,
        must: combined.must,
        mentioned: combined.mentioned,
    };
    info.check_invariants();
    Ok(info)
}

/// Head variables used for an event type's summary: those of its first rule,
/// or `?x1..?xn` when it has none.
pub fn event_params(e: &EventType, plans: &PlanLibrary) -> Vec<String> {
    match plans.rules_for(e).next() {
        Some((_, r)) => r.head_vars(),
        None => (1..=e.arity).map(|i| format!("x{i}")).collect(),
    }
}

/// Summary of an event type from the summaries of its rule bodies
/// (`bodies[i]` belongs to rule `i`).
pub fn summ_event(
    e: &EventType,
    plans: &PlanLibrary,
    bodies: &BTreeMap<usize, SummaryInfo>,
) -> Result<SummaryInfo, SummaryError> {
    let params = event_params(e, plans);
    let param_set: BTreeSet<String> = params.iter().cloned().collect();
    let param_terms: Vec<Term> = params.iter().map(|p| Term::var(p.clone())).collect();

    let mut disjuncts = Vec::new();
    let mut musts: Vec<BTreeSet<Literal>> = Vec::new();
    let mut mentioned = BTreeSet::new();
    for (idx, rule) in plans.rules_for(e) {
        let body = bodies
            .get(&idx)
            .ok_or_else(|| SummaryError::MissingSummary(format!("body of rule R{idx}")))?;
        let head_vars: BTreeSet<String> = rule.head.vars();
        let mut locals = rule.context.vars();
        body.must.collect_vars(&mut locals);
        body.mentioned.collect_vars(&mut locals);
        let locals: BTreeSet<String> = locals.difference(&head_vars).cloned().collect();

        let mut theta = bind_head(&rule.head, &param_terms);
        let mut taken: BTreeSet<String> = param_set.union(&locals).cloned().collect();
        taken.extend(head_vars.iter().cloned());
        for v in &locals {
            if param_set.contains(v) {
                let fresh = fresh_name(v, &taken);
                taken.insert(fresh.clone());
                theta.bind(v.clone(), Term::var(fresh));
            }
        }
        disjuncts.push(rule.context.apply(&theta));
        musts.push(body.must.apply(&theta));
        mentioned.extend(body.mentioned.apply(&theta));
    }

    let precondition = Formula::or(disjuncts);
    let must = match musts.split_first() {
        None => BTreeSet::new(),
        Some((first, rest)) => first
            .iter()
            .filter(|l| rest.iter().all(|m| m.contains(*l)))
            .filter(|l| l.vars().is_subset(&param_set))
            .cloned()
            .collect(),
    };
    let info = SummaryInfo {
        subject: Subject::Event(e.clone()),
        params,
        precondition: Some(precondition),
        must,
        mentioned,
    };
    info.check_invariants();
    Ok(info)
}

/// Everything computed by a summarisation run, including the intermediate
/// primitive and body summaries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Analysis {
    pub ranking: Ranking,
    pub primitives: BTreeMap<Step, SummaryInfo>,
    pub bodies: BTreeMap<usize, SummaryInfo>,
    pub table: SummaryTable,
}

impl Analysis {
    pub fn delta(&self) -> Delta<'_> {
        Delta {
            primitives: &self.primitives,
            events: &self.table,
        }
    }

    pub fn event(&self, name: &str, arity: usize) -> Option<&SummaryInfo> {
        self.table.get(&EventType::new(name, arity))
    }
}

/// Full bottom-up run: primitive summaries first, then bodies and event
/// types in increasing rank.
pub fn analyze(domain: &Domain) -> Result<Analysis, SummaryError> {
    analyze_parts(&domain.plans, &domain.actions)
}

pub fn analyze_parts(plans: &PlanLibrary, actions: &ActionLibrary) -> Result<Analysis, SummaryError> {
    let ranking = compute_ranking(plans)?;

    let mut primitives = BTreeMap::new();
    for r in plans.rules() {
        for s in r.body.iter().filter(|s| !s.is_event()) {
            if !primitives.contains_key(s) {
                let p = post(s, actions)?;
                primitives.insert(
                    s.clone(),
                    SummaryInfo {
                        subject: Subject::Primitive(s.clone()),
                        params: Vec::new(),
                        precondition: None,
                        must: p.clone(),
                        mentioned: p,
                    },
                );
            }
        }
    }

    let mut by_rank: BTreeMap<usize, Vec<&EventType>> = BTreeMap::new();
    for (e, r) in &ranking.ranks {
        by_rank.entry(*r).or_default().push(e);
    }

    let mut table = SummaryTable::new();
    let mut bodies = BTreeMap::new();
    for events in by_rank.values() {
        for e in events {
            for (idx, _) in plans.rules_for(e) {
                let delta = Delta {
                    primitives: &primitives,
                    events: &table,
                };
                let info = summ_plan(idx, plans, delta)?;
                bodies.insert(idx, info);
            }
            let info = summ_event(e, plans, &bodies)?;
            table.insert(info);
        }
    }
    Ok(Analysis {
        ranking,
        primitives,
        bodies,
        table,
    })
}

/// Event-type summaries only.
pub fn summ(plans: &PlanLibrary, actions: &ActionLibrary) -> Result<SummaryTable, SummaryError> {
    Ok(analyze_parts(plans, actions)?.table)
}

// ---------------------------------------------------------------------------
// Mentioned-literal closure, computed directly from the definition.

/// Renames variables outside `keep` to `?_0, ?_1, …` in order of first
/// occurrence, giving one representative per renaming class.
pub fn canonical_literal(l: &Literal, keep: &BTreeSet<String>) -> Literal {
    let mut s = Substitution::new();
    let mut n = 0;
    for t in &l.atom.args {
        if let Term::Var(v) = t {
            if !keep.contains(v) && s.get(v).is_none() {
                s.bind(v.clone(), Term::var(format!("_{n}")));
                n += 1;
            }
        }
    }
    l.apply(&s)
}

struct MntWalker<'a> {
    plans: &'a PlanLibrary,
    actions: &'a ActionLibrary,
    counter: usize,
    depth_guard: usize,
}

impl MntWalker<'_> {
    fn steps(&mut self, steps: &[Step], depth: usize, out: &mut BTreeSet<Literal>) -> Result<(), SummaryError> {
        for s in steps {
            match s {
                Step::Event(a) => {
                    if depth >= self.depth_guard {
                        continue;
                    }
                    let rules: Vec<_> = self.plans.rules_for(&EventType::of(a)).map(|(_, r)| r.clone()).collect();
                    for r in rules {
                        // fresh copy of the rule per expansion
                        self.counter += 1;
                        let n = self.counter;
                        let renaming = Substitution::from_pairs(
                            r.all_vars()
                                .into_iter()
                                .map(|v| (v.clone(), Term::var(format!("{v}_{n}")))),
                        );
                        let head = r.head.apply(&renaming);
                        let theta = bind_head(&head, &a.args);
                        let body: Vec<Step> = r.body.apply(&renaming).apply(&theta);
                        self.steps(&body, depth + 1, out)?;
                    }
                }
                prim => out.extend(post(prim, self.actions)?),
            }
        }
        Ok(())
    }
}

/// `mnt(P)` for a step sequence. Literals are reported up to renaming of
/// variables that do not occur in `steps`.
pub fn compute_mnt(
    steps: &[Step],
    plans: &PlanLibrary,
    actions: &ActionLibrary,
    depth_guard: usize,
) -> Result<BTreeSet<Literal>, SummaryError> {
    let mut walker = MntWalker {
        plans,
        actions,
        counter: 0,
        depth_guard,
    };
    let mut raw = BTreeSet::new();
    walker.steps(steps, 0, &mut raw)?;
    let keep = steps.to_vec().vars();
    Ok(raw.iter().map(|l| canonical_literal(l, &keep)).collect())
}

/// `mnt(!e(x))` for an event type, over the same head variables the summary
/// table uses.
pub fn compute_mnt_event(
    e: &EventType,
    plans: &PlanLibrary,
    actions: &ActionLibrary,
    depth_guard: usize,
) -> Result<BTreeSet<Literal>, SummaryError> {
    let head = Atom::new(
        e.name.clone(),
        event_params(e, plans).into_iter().map(Term::var).collect(),
    );
    compute_mnt(&[Step::Event(head)], plans, actions, depth_guard)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_domain;

    fn lit(s: &str) -> Literal {
        crate::dsl::parse_literal(s).unwrap()
    }

    fn lits(xs: &[&str]) -> BTreeSet<Literal> {
        xs.iter().map(|s| lit(s)).collect()
    }

    const HYPOTHETICAL: &str = "
        (action (a0) (pre true) (add (p)) (del))
        (action (a1) (pre true) (add) (del (p)))
        (action (a2) (pre true) (add (p)) (del))
        (action (a3) (pre true) (add (q)) (del))
        (plan-rule (event e0) (context true) (body (act a0) (event e1)))
        (plan-rule (event e1) (context true) (body (act a1) (act a2)))
        (plan-rule (event e1) (context true) (body (act a3)))
    ";

    #[test]
    fn hypothetical_library() {
        let d = parse_domain(HYPOTHETICAL).unwrap();
        let a = analyze(&d).unwrap();
        assert_eq!(a.bodies[&1].must, lits(&["(p)"]));
        assert_eq!(a.bodies[&1].mentioned, lits(&["(p)"]));
        let e1 = a.event("e1", 0).unwrap();
        assert!(e1.must.is_empty());
        assert_eq!(e1.mentioned, lits(&["(p)", "(q)"]));
        assert!(a.bodies[&0].must.contains(&lit("(p)")));
    }

    #[test]
    fn ranking_is_one_above_highest_child() {
        let d = parse_domain(HYPOTHETICAL).unwrap();
        let r = compute_ranking(&d.plans).unwrap();
        assert_eq!(r.rank(&EventType::new("e0", 0)), Some(1));
        assert_eq!(r.rank(&EventType::new("e1", 0)), Some(0));
    }

    #[test]
    fn self_recursion_is_reported() {
        let d = parse_domain("(plan-rule (event e) (context true) (body (event e)))").unwrap();
        let err = compute_ranking(&d.plans).unwrap_err();
        assert_eq!(
            err,
            SummaryError::Recursion(vec![EventType::new("e", 0), EventType::new("e", 0)])
        );
    }

    #[test]
    fn action_only_body_ranks_zero() {
        let d = parse_domain("(action (go) (pre true) (add (p)) (del)) (plan-rule (event e) (context true) (body (act go)))")
            .unwrap();
        assert_eq!(compute_ranking(&d.plans).unwrap().rank(&EventType::new("e", 0)), Some(0));
    }

    #[test]
    fn post_of_primitives() {
        let d = parse_domain("(action (move ?x ?y) (pre true) (add (at ?y)) (del (at ?x)))").unwrap();
        let step = Step::Act(Atom::parse_args("move", &["?x", "?y"]));
        assert_eq!(post(&step, &d.actions).unwrap(), lits(&["(not (at ?x))", "(at ?y)"]));
        // arguments that reuse head variable names are substituted simultaneously
        let swapped = Step::Act(Atom::parse_args("move", &["?y", "?x"]));
        assert_eq!(post(&swapped, &d.actions).unwrap(), lits(&["(not (at ?y))", "(at ?x)"]));
        assert!(post(&Step::Test(Formula::True), &d.actions).unwrap().is_empty());
        assert_eq!(
            post(&Step::Add(Atom::parse_args("sent", &["?t"])), &d.actions).unwrap(),
            lits(&["(sent ?t)"])
        );
        assert!(matches!(
            post(&Step::Act(Atom::new("fly", vec![])), &d.actions),
            Err(SummaryError::UnknownAction(_))
        ));
    }

    #[test]
    fn undone_checks() {
        let drop = StepSummary {
            must: lits(&["(not (hSS ?y))"]),
            mentioned: lits(&["(not (hSS ?y))"]),
        };
        assert!(must_undone(&lit("(hSS ?y)"), std::slice::from_ref(&drop)));
        assert!(!must_undone(&lit("(hSS ?y)"), &[]));
        let mv = StepSummary {
            must: lits(&["(not (at ?x))", "(at ?y)"]),
            mentioned: lits(&["(not (at ?x))", "(at ?y)"]),
        };
        assert!(!must_undone(&lit("(cal)"), &[mv]));
        assert!(!may_undone(&lit("(rT ?y)"), &[]));

        let dse = StepSummary {
            must: BTreeSet::new(),
            mentioned: lits(&["(at ?l)", "(not (at ?y))"]),
        };
        let (k, l2, theta) = may_undone_witness(&lit("(not (at ?x))"), std::slice::from_ref(&dse)).unwrap();
        assert_eq!(k, 0);
        assert_eq!(l2, lit("(at ?l)"));
        assert_eq!(theta, Substitution::from_pairs([("x", Term::var("l"))]));
        // the mentioned literal is renamed apart before unifying
        let (_, l2, _) = may_undone_witness(&lit("(at ?y)"), &[dse]).unwrap();
        assert_eq!(l2, lit("(not (at ?y1))"));
    }

    #[test]
    fn event_without_rules_has_false_precondition() {
        let plans = PlanLibrary::with_event_types(vec![], [EventType::new("idle", 2)]).unwrap();
        let t = summ(&plans, &ActionLibrary::default()).unwrap();
        let info = t.get(&EventType::new("idle", 2)).unwrap();
        assert_eq!(info.precondition, Some(Formula::False));
        assert!(info.must.is_empty() && info.mentioned.is_empty());
        assert_eq!(info.params, vec!["x1", "x2"]);
    }

    #[test]
    fn empty_library_gives_empty_table() {
        assert!(summ(&PlanLibrary::default(), &ActionLibrary::default()).unwrap().is_empty());
    }

    #[test]
    fn sibling_occurrences_get_distinct_fresh_variables() {
        let d = parse_domain(
            "(plan-rule (event find) (context (seen ?z)) (body (add got ?z)))
             (plan-rule (event top) (context true) (body (event find) (event find)))",
        )
        .unwrap();
        let a = analyze(&d).unwrap();
        let top = &a.bodies[&1];
        assert_eq!(top.mentioned, lits(&["(got ?z)", "(got ?z1)"]));
        assert!(top.must.is_empty());
    }

    #[test]
    fn mnt_of_test_only_body_is_empty() {
        let d = parse_domain("(plan-rule (event e) (context true) (body (test (p))))").unwrap();
        let m = compute_mnt_event(&EventType::new("e", 0), &d.plans, &d.actions, 32).unwrap();
        assert!(m.is_empty());
    }
}
