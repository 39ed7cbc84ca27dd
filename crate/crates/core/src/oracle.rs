//! Ground execution semantics for plan libraries, used as a brute-force
//! reference for the summaries.
//!
//! An execution runs a program step by step: actions apply when their
//! precondition holds (delete, then add), belief updates always apply, a test
//! branches over each satisfying grounding of its free variables, and an
//! event branches over each rule for it and each grounding of the rule's
//! context that holds. Failure recovery is never used, so a branch that gets
//! stuck is simply dropped.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use serde_json::{json, Value};
use thiserror::Error;

use crate::dsl::{Domain, EventType, Step};
use crate::logic::{
    evaluate, groundings, match_literal, satisfying_groundings, Atom, BeliefBase, Formula, Literal,
    LogicError, Substitution, Symbolic, Term,
};
use crate::summarize::bind_head;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExecutionBounds {
    /// Deepest allowed nesting of event expansions.
    pub max_depth: usize,
    /// Most successful executions enumerated before giving up.
    pub max_outcomes: usize,
}

impl Default for ExecutionBounds {
    fn default() -> Self {
        ExecutionBounds {
            max_depth: 32,
            max_outcomes: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("execution bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("no successful execution found")]
    NoExecutionFound,
    #[error("no action rule for {0}")]
    UnknownAction(String),
    #[error("replay failed: {0}")]
    Replay(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// One node of a decomposition tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompNode {
    Act(Atom),
    Add(Atom),
    Del(Atom),
    /// A test that succeeded under `binding` (its free variables).
    Test { formula: Formula, binding: Substitution },
    /// `event` handled by plan rule `rule`, whose context held under
    /// `binding` (the rule's variables not fixed by the head).
    Event {
        event: Atom,
        rule: usize,
        binding: Substitution,
        children: Vec<DecompNode>,
    },
}

impl DecompNode {
    pub fn to_json(&self) -> Value {
        let binding_json = |s: &Substitution| -> Value {
            s.iter()
                .map(|(v, t)| (format!("?{v}"), Value::String(t.to_string())))
                .collect::<serde_json::Map<_, _>>()
                .into()
        };
        match self {
            DecompNode::Act(a) => json!({"kind": "act", "step": a.to_string()}),
            DecompNode::Add(a) => json!({"kind": "add", "step": a.to_string()}),
            DecompNode::Del(a) => json!({"kind": "del", "step": a.to_string()}),
            DecompNode::Test { formula, binding } => json!({
                "kind": "test",
                "step": formula.to_string(),
                "binding": binding_json(binding),
            }),
            DecompNode::Event {
                event,
                rule,
                binding,
                children,
            } => json!({
                "kind": "event",
                "step": event.to_string(),
                "rule": rule,
                "binding": binding_json(binding),
                "children": children.iter().map(DecompNode::to_json).collect::<Vec<_>>(),
            }),
        }
    }
}

/// A successful execution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecutionOutcome {
    pub final_beliefs: BeliefBase,
    /// Executed actions, in order.
    pub trace: Vec<Atom>,
    /// Decomposition of each top-level step.
    pub tree: Vec<DecompNode>,
}

impl ExecutionOutcome {
    pub fn to_json(&self) -> Value {
        json!({
            "trace": self.trace.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "final": self.final_beliefs.atoms().map(ToString::to_string).collect::<Vec<_>>(),
            "tree": self.tree.iter().map(DecompNode::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone)]
struct Frame {
    steps: Vec<Step>,
    pos: usize,
    children: Vec<DecompNode>,
    /// `None` for the top-level program.
    header: Option<(Atom, usize, Substitution)>,
}

#[derive(Clone)]
struct State {
    beliefs: BeliefBase,
    trace: Vec<Atom>,
    frames: Vec<Frame>,
}

impl State {
    fn top(&mut self) -> &mut Frame {
        self.frames.last_mut().expect("non-empty frame stack")
    }

    /// Applies `s` to the current step and everything after it in the
    /// innermost frame.
    fn bind_rest(&mut self, s: &Substitution) {
        let top = self.top();
        for step in &mut top.steps[top.pos..] {
            *step = step.apply(s);
        }
    }
}

struct Enumerator<'a, F> {
    domain: &'a Domain,
    universe: &'a BTreeSet<String>,
    bounds: ExecutionBounds,
    found: usize,
    visit: F,
}

impl<F: FnMut(ExecutionOutcome) -> ControlFlow<()>> Enumerator<'_, F> {
    fn search(&mut self, mut st: State) -> Result<ControlFlow<()>, OracleError> {
        loop {
            let top = st.top();
            if top.pos == top.steps.len() {
                let done = st.frames.pop().unwrap();
                match done.header {
                    None => {
                        self.found += 1;
                        if self.found > self.bounds.max_outcomes {
                            return Err(OracleError::BoundsExceeded(format!(
                                "more than {} successful executions",
                                self.bounds.max_outcomes
                            )));
                        }
                        return Ok((self.visit)(ExecutionOutcome {
                            final_beliefs: st.beliefs,
                            trace: st.trace,
                            tree: done.children,
                        }));
                    }
                    Some((event, rule, binding)) => {
                        st.top().children.push(DecompNode::Event {
                            event,
                            rule,
                            binding,
                            children: done.children,
                        });
                        continue;
                    }
                }
            }

            let step = top.steps[top.pos].clone();
            if let Step::Test(f) = &step {
                for s in satisfying_groundings(&st.beliefs, f, self.universe) {
                    let mut next = st.clone();
                    next.bind_rest(&s);
                    let top = next.top();
                    top.pos += 1;
                    top.children.push(DecompNode::Test {
                        formula: f.clone(),
                        binding: s,
                    });
                    if self.search(next)?.is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                }
                return Ok(ControlFlow::Continue(()));
            }

            let free: Vec<String> = step.vars().into_iter().collect();
            if !free.is_empty() {
                for s in groundings(&free, self.universe) {
                    let mut next = st.clone();
                    next.bind_rest(&s);
                    if self.search(next)?.is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                }
                return Ok(ControlFlow::Continue(()));
            }

            st.top().pos += 1;
            match step {
                Step::Act(a) => {
                    let rule = self
                        .domain
                        .actions
                        .get(&a.pred, a.arity())
                        .ok_or_else(|| OracleError::UnknownAction(a.to_string()))?;
                    let theta = bind_head(&rule.head, &a.args);
                    if !evaluate(&st.beliefs, &rule.pre, &theta)? {
                        return Ok(ControlFlow::Continue(()));
                    }
                    for d in &rule.del {
                        st.beliefs.remove(&d.apply(&theta));
                    }
                    for p in &rule.add {
                        st.beliefs.insert(p.apply(&theta))?;
                    }
                    st.trace.push(a.clone());
                    st.top().children.push(DecompNode::Act(a));
                }
                Step::Add(b) => {
                    st.beliefs.insert(b.clone())?;
                    st.top().children.push(DecompNode::Add(b));
                }
                Step::Del(b) => {
                    st.beliefs.remove(&b);
                    st.top().children.push(DecompNode::Del(b));
                }
                Step::Event(e) => {
                    if st.frames.len() > self.bounds.max_depth {
                        return Err(OracleError::BoundsExceeded(format!(
                            "event nesting deeper than {}",
                            self.bounds.max_depth
                        )));
                    }
                    for (idx, rule) in self.domain.plans.rules_for(&EventType::of(&e)) {
                        let theta = bind_head(&rule.head, &e.args);
                        let context = rule.context.apply(&theta);
                        for s in satisfying_groundings(&st.beliefs, &context, self.universe) {
                            let body: Vec<Step> = rule.body.apply(&theta).apply(&s);
                            let mut next = st.clone();
                            next.frames.push(Frame {
                                steps: body,
                                pos: 0,
                                children: Vec::new(),
                                header: Some((e.clone(), idx, s)),
                            });
                            if self.search(next)?.is_break() {
                                return Ok(ControlFlow::Break(()));
                            }
                        }
                    }
                    return Ok(ControlFlow::Continue(()));
                }
                Step::Test(_) => unreachable!(),
            }
        }
    }
}

/// Calls `visit` on each successful execution of `program` from `b`, in a
/// fixed order, until it returns `Break`.
pub fn for_each_execution<F>(
    domain: &Domain,
    b: &BeliefBase,
    program: &[Step],
    universe: &BTreeSet<String>,
    bounds: ExecutionBounds,
    visit: F,
) -> Result<(), OracleError>
where
    F: FnMut(ExecutionOutcome) -> ControlFlow<()>,
{
    let mut en = Enumerator {
        domain,
        universe,
        bounds,
        found: 0,
        visit,
    };
    let _ = en.search(State {
        beliefs: b.clone(),
        trace: Vec::new(),
        frames: vec![Frame {
            steps: program.to_vec(),
            pos: 0,
            children: Vec::new(),
            header: None,
        }],
    })?;
    Ok(())
}

pub fn enumerate_executions(
    domain: &Domain,
    b: &BeliefBase,
    program: &[Step],
    universe: &BTreeSet<String>,
    bounds: ExecutionBounds,
) -> Result<Vec<ExecutionOutcome>, OracleError> {
    let mut out = Vec::new();
    for_each_execution(domain, b, program, universe, bounds, |o| {
        out.push(o);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// First successful execution whose final beliefs satisfy `accept`.
pub fn find_execution(
    domain: &Domain,
    b: &BeliefBase,
    program: &[Step],
    universe: &BTreeSet<String>,
    bounds: ExecutionBounds,
    accept: impl Fn(&BeliefBase) -> bool,
) -> Result<Option<ExecutionOutcome>, OracleError> {
    let mut hit = None;
    for_each_execution(domain, b, program, universe, bounds, |o| {
        if accept(&o.final_beliefs) {
            hit = Some(o);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(hit)
}

pub fn has_successful_execution(
    domain: &Domain,
    b: &BeliefBase,
    program: &[Step],
    universe: &BTreeSet<String>,
    bounds: ExecutionBounds,
) -> Result<Option<ExecutionOutcome>, OracleError> {
    find_execution(domain, b, program, universe, bounds, |_| true)
}

/// Re-runs a decomposition tree from `b`, checking every condition along
/// the way, and returns the resulting beliefs.
pub fn replay(domain: &Domain, b: &BeliefBase, tree: &[DecompNode]) -> Result<BeliefBase, OracleError> {
    let mut beliefs = b.clone();
    replay_into(domain, &mut beliefs, tree)?;
    Ok(beliefs)
}

fn replay_into(domain: &Domain, b: &mut BeliefBase, tree: &[DecompNode]) -> Result<(), OracleError> {
    for node in tree {
        match node {
            DecompNode::Act(a) => {
                let rule = domain
                    .actions
                    .get(&a.pred, a.arity())
                    .ok_or_else(|| OracleError::UnknownAction(a.to_string()))?;
                let theta = bind_head(&rule.head, &a.args);
                if !evaluate(b, &rule.pre, &theta)? {
                    return Err(OracleError::Replay(format!("precondition of {a} is false")));
                }
                for d in &rule.del {
                    b.remove(&d.apply(&theta));
                }
                for p in &rule.add {
                    b.insert(p.apply(&theta))?;
                }
            }
            DecompNode::Add(a) => {
                b.insert(a.clone())?;
            }
            DecompNode::Del(a) => {
                b.remove(a);
            }
            DecompNode::Test { formula, binding } => {
                if !evaluate(b, formula, binding)? {
                    return Err(OracleError::Replay(format!("test {formula} fails")));
                }
            }
            DecompNode::Event {
                event,
                rule,
                binding,
                children,
            } => {
                let r = domain
                    .plans
                    .rules()
                    .get(*rule)
                    .filter(|r| r.event_type() == EventType::of(event))
                    .ok_or_else(|| OracleError::Replay(format!("rule R{rule} does not handle {event}")))?;
                let theta = bind_head(&r.head, &event.args);
                if !evaluate(b, &r.context.apply(&theta), binding)? {
                    return Err(OracleError::Replay(format!("context of R{rule} is false for {event}")));
                }
                replay_into(domain, b, children)?;
            }
        }
    }
    Ok(())
}

/// Every ground atom of the given predicates over `universe`.
pub fn ground_atoms(preds: &BTreeSet<(String, usize)>, universe: &BTreeSet<String>) -> Vec<Atom> {
    let mut out = Vec::new();
    for (p, arity) in preds {
        let vars: Vec<String> = (0..*arity).map(|i| format!("a{i}")).collect();
        let pattern = Atom::new(p.clone(), vars.iter().map(|v| Term::var(v.clone())).collect());
        for s in groundings(&vars, universe) {
            out.push(pattern.apply(&s));
        }
    }
    out
}

/// All subsets of `atoms` as belief bases, `base` added to each. Refuses
/// more than 2^`max_atoms` bases.
pub fn all_belief_bases(atoms: &[Atom], base: &BeliefBase, max_atoms: usize) -> Result<Vec<BeliefBase>, OracleError> {
    if atoms.len() > max_atoms {
        return Err(OracleError::BoundsExceeded(format!(
            "{} ground atoms to enumerate belief bases over (limit {max_atoms})",
            atoms.len()
        )));
    }
    let mut out = Vec::with_capacity(1 << atoms.len());
    for mask in 0u64..(1u64 << atoms.len()) {
        let mut b = base.clone();
        for (i, a) in atoms.iter().enumerate() {
            if mask & (1 << i) != 0 {
                b.insert(a.clone())?;
            }
        }
        out.push(b);
    }
    Ok(out)
}

/// Ground literals over the domain's belief predicates that hold at the end
/// of every successful execution of `!event` from every base in `starts`.
pub fn oracle_must_literals(
    domain: &Domain,
    event: &Atom,
    universe: &BTreeSet<String>,
    bounds: ExecutionBounds,
    starts: &[BeliefBase],
) -> Result<BTreeSet<Literal>, OracleError> {
    let atoms = ground_atoms(&domain.belief_predicates(), universe);
    let mut candidates: Option<BTreeSet<Literal>> = None;
    let program = [Step::Event(event.clone())];
    for b in starts {
        for_each_execution(domain, b, &program, universe, bounds, |o| {
            let holding = atoms.iter().map(|a| {
                if o.final_beliefs.contains(a) {
                    Literal::pos(a.clone())
                } else {
                    Literal::neg(a.clone())
                }
            });
            match &mut candidates {
                None => candidates = Some(holding.collect()),
                Some(c) => {
                    let now: BTreeSet<Literal> = holding.collect();
                    c.retain(|l| now.contains(l));
                }
            }
            ControlFlow::Continue(())
        })?;
    }
    candidates.ok_or(OracleError::NoExecutionFound)
}

/// A ground rule instance that is applicable in `beliefs` but whose body
/// has no successful execution there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceViolation {
    pub rule: usize,
    pub head: Atom,
    pub binding: Substitution,
    pub beliefs: BeliefBase,
}

impl fmt::Display for CoherenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rule R{} for {} with {} is applicable in {} but its body cannot succeed",
            self.rule, self.head, self.binding, self.beliefs
        )
    }
}

/// Most condition atoms `validate_coherence` enumerates belief bases over.
pub const COHERENCE_MAX_ATOMS: usize = 16;

/// Checks every rule instance over `universe` against every belief base
/// built from the atoms that conditions read. Other atoms cannot change
/// whether an execution succeeds, so this covers all belief bases.
pub fn validate_coherence(
    domain: &Domain,
    universe: &BTreeSet<String>,
    bounds: ExecutionBounds,
) -> Result<Vec<CoherenceViolation>, OracleError> {
    let atoms = ground_atoms(&domain.condition_predicates(), universe);
    let bases = all_belief_bases(&atoms, &BeliefBase::new(), COHERENCE_MAX_ATOMS)?;
    let mut out = Vec::new();
    for (idx, rule) in domain.plans.rules().iter().enumerate() {
        let head_vars = rule.head_vars();
        for theta in groundings(&head_vars, universe) {
            let head = rule.head.apply(&theta);
            let context = rule.context.apply(&theta);
            let body = rule.body.apply(&theta);
            for b in &bases {
                for s in satisfying_groundings(b, &context, universe) {
                    let program = body.apply(&s);
                    if has_successful_execution(domain, b, &program, universe, bounds)?.is_none() {
                        out.push(CoherenceViolation {
                            rule: idx,
                            head: head.clone(),
                            binding: s,
                            beliefs: b.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A literal newly established by some execution that `L` does not cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaptureFailure {
    pub program: Vec<Step>,
    pub start: BeliefBase,
    pub literal: Literal,
}

/// First execution, over every ground instance of `program` and every start
/// base, that makes some literal true which was false at the start and which
/// is not an instance of a member of `l`.
pub fn capture_failure(
    domain: &Domain,
    l: &BTreeSet<Literal>,
    program: &[Step],
    universe: &BTreeSet<String>,
    bounds: ExecutionBounds,
    starts: &[BeliefBase],
) -> Result<Option<CaptureFailure>, OracleError> {
    let vars: Vec<String> = program.to_vec().vars().into_iter().collect();
    let covered = |lit: &Literal| l.iter().any(|m| match_literal(m, lit).is_some());
    for theta in groundings(&vars, universe) {
        let ground: Vec<Step> = program.to_vec().apply(&theta);
        for b in starts {
            let mut failure = None;
            for_each_execution(domain, b, &ground, universe, bounds, |o| {
                let gained = o.final_beliefs.atoms().filter(|a| !b.contains(a)).map(|a| Literal::pos(a.clone()));
                let lost = b.atoms().filter(|a| !o.final_beliefs.contains(a)).map(|a| Literal::neg(a.clone()));
                for lit in gained.chain(lost) {
                    if !covered(&lit) {
                        failure = Some(lit);
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            })?;
            if let Some(literal) = failure {
                return Ok(Some(CaptureFailure {
                    program: ground,
                    start: b.clone(),
                    literal,
                }));
            }
        }
    }
    Ok(None)
}

pub fn oracle_captures(
    domain: &Domain,
    l: &BTreeSet<Literal>,
    program: &[Step],
    universe: &BTreeSet<String>,
    bounds: ExecutionBounds,
    starts: &[BeliefBase],
) -> Result<bool, OracleError> {
    Ok(capture_failure(domain, l, program, universe, bounds, starts)?.is_none())
}

/// Whether `!event` from `b` has a successful execution exactly when some
/// grounding of the remaining variables of `precondition` holds.
pub fn precondition_holds(b: &BeliefBase, precondition: &Formula, universe: &BTreeSet<String>) -> bool {
    !satisfying_groundings(b, precondition, universe).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_domain, parse_literal};

    fn universe(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn atom(p: &str, args: &[&str]) -> Atom {
        Atom::parse_args(p, args)
    }

    const UNDO: &str = "
        (plan-rule (event e1) (context true) (body (add p) (add q)))
        (plan-rule (event e1) (context true) (body (del p) (add q)))
        (plan-rule (event e2) (context (and (p) (q))) (body (add r)))
    ";

    #[test]
    fn empty_program_has_one_outcome() {
        let d = parse_domain("").unwrap();
        let b = BeliefBase::from_atoms([atom("p", &[])]).unwrap();
        let out = enumerate_executions(&d, &b, &[], &universe(&[]), ExecutionBounds::default()).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].final_beliefs, b);
    }

    #[test]
    fn unsatisfiable_test_has_no_outcome() {
        let d = parse_domain("").unwrap();
        let step = Step::Test(Formula::atom(atom("at", &["a"])));
        let out = enumerate_executions(&d, &BeliefBase::new(), &[step], &universe(&["a"]), ExecutionBounds::default())
            .unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn undo_program_enumerates_both_rules() {
        let d = parse_domain(UNDO).unwrap();
        let b = BeliefBase::from_atoms([atom("p", &[])]).unwrap();
        let prog = [Step::Event(atom("e1", &[])), Step::Event(atom("e2", &[]))];
        let out = enumerate_executions(&d, &b, &prog, &universe(&[]), ExecutionBounds::default()).unwrap();
        assert_eq!(out.len(), 1);
        let fin = &out[0].final_beliefs;
        for p in ["p", "q", "r"] {
            assert!(fin.contains(&atom(p, &[])));
        }
        let DecompNode::Event { rule, .. } = &out[0].tree[0] else {
            panic!("expected event node")
        };
        assert_eq!(*rule, 0);
        assert_eq!(replay(&d, &b, &out[0].tree).unwrap(), *fin);
    }

    #[test]
    fn tests_bind_later_steps() {
        let d = parse_domain("").unwrap();
        let b = BeliefBase::from_atoms([atom("at", &["a"]), atom("at", &["c"])]).unwrap();
        let prog = [
            Step::Test(Formula::atom(atom("at", &["?x"]))),
            Step::Add(atom("seen", &["?x"])),
        ];
        let out = enumerate_executions(&d, &b, &prog, &universe(&["a", "b", "c"]), ExecutionBounds::default()).unwrap();
        let seen: Vec<bool> = out.iter().map(|o| o.final_beliefs.contains(&atom("seen", &["a"]))).collect();
        assert_eq!(seen, vec![true, false]);
    }

    #[test]
    fn action_deletes_before_adding() {
        let d = parse_domain("(action (move ?x ?y) (pre true) (add (at ?y)) (del (at ?x)))").unwrap();
        let b = BeliefBase::from_atoms([atom("at", &["a"])]).unwrap();
        let prog = [Step::Act(atom("move", &["a", "a"]))];
        let out = enumerate_executions(&d, &b, &prog, &universe(&["a"]), ExecutionBounds::default()).unwrap();
        assert!(out[0].final_beliefs.contains(&atom("at", &["a"])));
        assert_eq!(out[0].trace, vec![atom("move", &["a", "a"])]);
    }

    #[test]
    fn depth_bound_is_reported() {
        let d = parse_domain(
            "(plan-rule (event a) (context true) (body (event b)))
             (plan-rule (event b) (context true) (body (add p)))",
        )
        .unwrap();
        let bounds = ExecutionBounds {
            max_depth: 1,
            max_outcomes: 10,
        };
        let err = enumerate_executions(&d, &BeliefBase::new(), &[Step::Event(atom("a", &[]))], &universe(&[]), bounds);
        assert!(matches!(err, Err(OracleError::BoundsExceeded(_))));
        let ok = enumerate_executions(
            &d,
            &BeliefBase::new(),
            &[Step::Event(atom("a", &[]))],
            &universe(&[]),
            ExecutionBounds::default(),
        );
        assert_eq!(ok.unwrap().len(), 1);
    }

    #[test]
    fn false_test_rule_is_incoherent() {
        let d = parse_domain("(plan-rule (event e) (context true) (body (test false)))").unwrap();
        let v = validate_coherence(&d, &universe(&["a"]), ExecutionBounds::default()).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, 0);
        assert!(validate_coherence(&parse_domain("").unwrap(), &universe(&["a"]), ExecutionBounds::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn single_add_is_a_must_literal() {
        let d = parse_domain("(plan-rule (event e) (context true) (body (add p)))").unwrap();
        let starts = [BeliefBase::new()];
        let m = oracle_must_literals(&d, &atom("e", &[]), &universe(&[]), ExecutionBounds::default(), &starts).unwrap();
        assert!(m.contains(&parse_literal("(p)").unwrap()));
    }

    #[test]
    fn capture_examples() {
        let d = parse_domain("").unwrap();
        let starts = [BeliefBase::new()];
        let u = universe(&[]);
        let bounds = ExecutionBounds::default();
        let add_p = [Step::Add(atom("p", &[]))];
        assert!(!oracle_captures(&d, &BTreeSet::new(), &add_p, &u, bounds, &starts).unwrap());
        let l: BTreeSet<Literal> = [parse_literal("(p)").unwrap()].into();
        assert!(oracle_captures(&d, &l, &[Step::Test(Formula::True)], &u, bounds, &starts).unwrap());
    }
}
