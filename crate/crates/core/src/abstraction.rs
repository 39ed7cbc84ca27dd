//! Abstract planning operators built from event summaries, a correctness
//! check for plans that use them, and a small breadth-first planner.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::dsl::{ActionLibrary, Domain, EventType, Step};
use crate::logic::{
    eval_ground, evaluate, groundings, mgu_literals, rename_apart, satisfying_groundings, Atom, BeliefBase, Formula,
    Literal, Substitution, Symbolic, Term,
};
use crate::oracle::{find_execution, ExecutionBounds, ExecutionOutcome, OracleError};
use crate::summarize::{bind_head, post, Delta, StepSummary, SummaryError, SummaryTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbstractionError {
    #[error("no plan reaches the goal")]
    NoPlan,
    #[error("plan search bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("goal must be ground, got {0}")]
    NonGroundGoal(String),
    #[error("plan is not flagged as potentially incorrect")]
    NotFlagged,
    #[error("plan {0} was classified correct but no execution reaches the goal")]
    NoWitness(String),
    #[error(transparent)]
    Summary(#[from] SummaryError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl From<crate::logic::LogicError> for AbstractionError {
    fn from(e: crate::logic::LogicError) -> Self {
        AbstractionError::Oracle(e.into())
    }
}

/// Where a planning operator comes from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Source {
    Action { name: String, arity: usize },
    Event(EventType),
}

/// A STRIPS-style operator with a possibly disjunctive precondition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operator {
    pub name: String,
    pub params: Vec<String>,
    pub pre: Formula,
    pub effects: BTreeSet<Literal>,
    pub source: Source,
}

impl Operator {
    pub fn is_abstract(&self) -> bool {
        matches!(self.source, Source::Event(_))
    }

    /// Number of leading parameters that are arguments of the underlying
    /// action or event.
    pub fn head_arity(&self) -> usize {
        match &self.source {
            Source::Action { arity, .. } => *arity,
            Source::Event(e) => e.arity,
        }
    }
}

fn ordered_vars(f: &Formula, out: &mut Vec<String>) {
    let mut push = |t: &Term| {
        if let Term::Var(v) = t {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
    };
    match f {
        Formula::Lit(l) => l.atom.args.iter().for_each(&mut push),
        Formula::Eq(a, b) | Formula::Neq(a, b) => {
            push(a);
            push(b);
        }
        Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|g| ordered_vars(g, out)),
        Formula::True | Formula::False => {}
    }
}

/// One operator per event type: `<name>_<arity>`, parameters are the head
/// variables followed by any other precondition variables in order of first
/// occurrence, effects are the must literals.
pub fn build_abstract_operators(table: &SummaryTable) -> Vec<Operator> {
    table
        .iter()
        .map(|info| {
            let crate::summarize::Subject::Event(e) = &info.subject else {
                unreachable!("summary tables hold event entries")
            };
            let pre = info.precondition.clone().unwrap_or(Formula::True);
            let mut params = info.params.clone();
            ordered_vars(&pre, &mut params);
            Operator {
                name: format!("{}_{}", e.name, e.arity),
                params,
                pre,
                effects: info.must.clone(),
                source: Source::Event(e.clone()),
            }
        })
        .collect()
}

pub fn action_operators(actions: &ActionLibrary) -> Vec<Operator> {
    actions
        .rules()
        .iter()
        .map(|r| Operator {
            name: r.head.pred.clone(),
            params: r.head.args.iter().map(|t| t.name().to_string()).collect(),
            pre: r.pre.clone(),
            effects: r
                .add
                .iter()
                .map(|a| Literal::pos(a.clone()))
                .chain(r.del.iter().map(|a| Literal::neg(a.clone())))
                .collect(),
            source: Source::Action {
                name: r.head.pred.clone(),
                arity: r.head.arity(),
            },
        })
        .collect()
}

/// A ground step of a plan: an operator and the constant for each of its
/// parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanStep {
    pub operator: String,
    pub source: Source,
    pub binding: Substitution,
    /// The executable step (`act` or `event`) with head arguments only.
    pub step: Step,
}

impl fmt::Display for PlanStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.step)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroundPlan {
    pub steps: Vec<PlanStep>,
}

impl GroundPlan {
    /// The plan as a program for the oracle.
    pub fn program(&self) -> Vec<Step> {
        self.steps.iter().map(|s| s.step.clone()).collect()
    }

    /// Exclusion key: the rendered ground steps.
    pub fn key(&self) -> Vec<String> {
        self.steps.iter().map(ToString::to_string).collect()
    }

    /// Wraps ground `act`/`event` steps, such as those read from a plan
    /// file. Extra precondition variables are left for `classify_plan` to
    /// ground.
    pub fn from_steps(steps: &[Step]) -> Self {
        GroundPlan {
            steps: steps
                .iter()
                .map(|s| {
                    let a = s.atom().expect("plan steps are actions or events");
                    let source = match s {
                        Step::Event(_) => Source::Event(EventType::of(a)),
                        _ => Source::Action {
                            name: a.pred.clone(),
                            arity: a.arity(),
                        },
                    };
                    let operator = match &source {
                        Source::Event(e) => format!("{}_{}", e.name, e.arity),
                        Source::Action { name, .. } => name.clone(),
                    };
                    PlanStep {
                        operator,
                        source,
                        binding: Substitution::new(),
                        step: s.clone(),
                    }
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.steps.iter().map(|s| Value::String(s.to_string())).collect())
    }
}

impl fmt::Display for GroundPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// Evidence that a later precondition (or goal) literal may be broken:
/// `literal`, needed by step `step`, may be undone by `undoing_literal` of
/// step `undone_by` under `unifier`. Steps count from 1; the goal is step
/// `n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub literal: Literal,
    pub step: usize,
    pub undone_by: usize,
    pub undoing_literal: Literal,
    pub unifier: Substitution,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        json!({
            "literal": self.literal.to_string(),
            "step": self.step,
            "undone_by": self.undone_by,
            "undoing_literal": self.undoing_literal.to_string(),
            "unifier": self.unifier.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No interference found, or a goal-reaching execution was found.
    Correct(Option<Box<ExecutionOutcome>>),
    PotentiallyIncorrect(Vec<Witness>),
    DefinitelyIncorrect,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Correct(_) => "correct",
            Verdict::PotentiallyIncorrect(_) => "potentially_incorrect",
            Verdict::DefinitelyIncorrect => "definitely_incorrect",
        }
    }

    pub fn to_json(&self) -> Value {
        let witnesses: Vec<Value> = match self {
            Verdict::PotentiallyIncorrect(ws) => ws.iter().map(Witness::to_json).collect(),
            _ => Vec::new(),
        };
        let mut v = json!({"verdict": self.label(), "witnesses": witnesses});
        if let Verdict::Correct(Some(o)) = self {
            v["execution"] = o.to_json();
        }
        v
    }
}

fn apply_effects(state: &mut BeliefBase, effects: &BTreeSet<Literal>) -> Result<(), AbstractionError> {
    for l in effects.iter().filter(|l| !l.positive) {
        state.remove(&l.atom);
    }
    for l in effects.iter().filter(|l| l.positive) {
        state.insert(l.atom.clone())?;
    }
    Ok(())
}

struct StepView {
    /// Precondition literals that need to survive until the step.
    needs: Vec<Literal>,
    pre: Formula,
    /// Planner state just before the step.
    before: BeliefBase,
    summary: StepSummary,
}

/// Index (1-based, 0 for the start) of the last step before `i` whose must
/// set settles `l` either way.
fn last_settling(views: &[StepView], i: usize, l: &Literal) -> usize {
    let c = l.complement();
    views[..i]
        .iter()
        .rposition(|v| v.summary.must.contains(l) || v.summary.must.contains(&c))
        .map_or(0, |j| j + 1)
}

fn may_establish(views: &[StepView], i: usize, l: &Literal) -> bool {
    let from = last_settling(views, i, l);
    views[from..i].iter().any(|v| {
        v.summary
            .must
            .union(&v.summary.mentioned)
            .any(|cand| mgu_literals(l, &rename_apart(cand, &l.vars()).0).is_some())
    })
}

/// True when no execution can satisfy the precondition of step `i`: every
/// grounding of every disjunct has a literal that is false in the planner
/// state and that no step since it was last settled could make true.
fn definitely_blocked(views: &[StepView], i: usize, universe: &BTreeSet<String>) -> bool {
    let v = &views[i];
    let vars: Vec<String> = v.pre.vars().into_iter().collect();
    let blocked = groundings(&vars, universe).all(|theta| {
        v.pre.apply(&theta).dnf().iter().all(|d| {
            d.iter().any(|f| match f {
                Formula::Lit(l) => !v.before.holds(l) && !may_establish(views, i, l),
                other => !eval_ground(&v.before, other),
            })
        })
    });
    blocked
}

/// Ground precondition of a plan step under the planner's binding (or, for
/// steps without one, the first grounding that holds in `state`).
fn step_precondition(
    step: &PlanStep,
    op: &Operator,
    state: &BeliefBase,
    universe: &BTreeSet<String>,
) -> Formula {
    let args = &step.step.atom().unwrap().args;
    let mut theta = Substitution::from_pairs(op.params.iter().zip(args).map(|(p, t)| (p.clone(), t.clone())));
    for (v, t) in step.binding.iter() {
        theta.bind(v.clone(), t.clone());
    }
    let pre = op.pre.apply(&theta);
    match satisfying_groundings(state, &pre, universe).into_iter().next() {
        Some(s) => pre.apply(&s),
        None => pre,
    }
}

/// Literals of the disjuncts of `pre` that hold in `state`; every literal
/// when none does (or when `pre` is not ground).
fn needed_literals(pre: &Formula, state: &BeliefBase) -> Vec<Literal> {
    let disjuncts = pre.dnf();
    let ground = pre.vars().is_empty();
    let holding: Vec<&Vec<Formula>> = disjuncts
        .iter()
        .filter(|d| ground && d.iter().all(|f| eval_ground(state, f)))
        .collect();
    let chosen: Vec<&Vec<Formula>> = if holding.is_empty() { disjuncts.iter().collect() } else { holding };
    let mut out: Vec<Literal> = Vec::new();
    for d in chosen {
        for f in d {
            if let Formula::Lit(l) = f {
                if !out.contains(l) {
                    out.push(l.clone());
                }
            }
        }
    }
    out
}

/// Flags plans where a literal needed by a later step, or by the goal, could
/// be undone by an intermediate step's mentioned literals.
///
/// For a needed literal `l` of step `i`, let `j` be the last earlier step
/// whose must set contains `l` or its complement. Any step strictly between
/// `j` and `i` with a literal that unifies with the complement of `l` is a
/// witness.
pub fn classify_plan(
    plan: &GroundPlan,
    b: &BeliefBase,
    goal: &Formula,
    domain: &Domain,
    table: &SummaryTable,
    universe: &BTreeSet<String>,
) -> Result<Verdict, AbstractionError> {
    let ops: BTreeMap<Source, Operator> = build_abstract_operators(table)
        .into_iter()
        .chain(action_operators(&domain.actions))
        .map(|o| (o.source.clone(), o))
        .collect();
    let no_primitives = BTreeMap::new();
    let delta = Delta {
        primitives: &no_primitives,
        events: table,
    };

    let mut avoid = BTreeSet::new();
    let mut state = b.clone();
    let mut views = Vec::new();
    for step in &plan.steps {
        let op = ops.get(&step.source).ok_or_else(|| SummaryError::MissingSummary(step.operator.clone()))?;
        let pre = step_precondition(step, op, &state, universe);
        let needs = needed_literals(&pre, &state);
        let before = state.clone();
        let summary = match &step.step {
            Step::Event(a) => delta.instantiate_event(a, &mut avoid)?,
            prim => {
                let p = post(prim, &domain.actions)?;
                StepSummary {
                    must: p.clone(),
                    mentioned: p,
                }
            }
        };
        apply_effects(&mut state, &summary.must)?;
        views.push(StepView {
            needs,
            pre,
            before,
            summary,
        });
    }
    views.push(StepView {
        needs: needed_literals(goal, &state),
        pre: goal.clone(),
        before: state,
        summary: StepSummary::default(),
    });

    let mut witnesses = Vec::new();
    for (i, view) in views.iter().enumerate() {
        if !satisfying_groundings(&view.before, &view.pre, universe).is_empty() {
            continue;
        }
        if definitely_blocked(&views, i, universe) {
            return Ok(Verdict::DefinitelyIncorrect);
        }
        // needed literal already false in the planner state
        for l in view.needs.iter().filter(|l| l.is_ground() && !view.before.holds(l)) {
            witnesses.push(Witness {
                literal: l.clone(),
                step: i + 1,
                undone_by: last_settling(&views, i, l),
                undoing_literal: l.complement(),
                unifier: Substitution::new(),
            });
        }
    }

    for (i, view) in views.iter().enumerate() {
        for l in &view.needs {
            let c = l.complement();
            let start = last_settling(&views, i, l);
            'steps: for (k, v) in views.iter().enumerate().take(i).skip(start) {
                let mut candidates: Vec<&Literal> = v.summary.must.union(&v.summary.mentioned).collect();
                candidates.sort_by_cached_key(|x| x.to_string());
                for cand in candidates {
                    let (renamed, _) = rename_apart(cand, &l.vars());
                    if let Some(theta) = mgu_literals(&c, &renamed) {
                        witnesses.push(Witness {
                            literal: l.clone(),
                            step: i + 1,
                            undone_by: k + 1,
                            undoing_literal: renamed,
                            unifier: theta,
                        });
                        break 'steps;
                    }
                }
            }
        }
    }
    Ok(if witnesses.is_empty() {
        Verdict::Correct(None)
    } else {
        Verdict::PotentiallyIncorrect(witnesses)
    })
}

/// Settles a flagged plan by looking for an execution that reaches the goal.
pub fn resolve(
    plan: &GroundPlan,
    b: &BeliefBase,
    goal: &Formula,
    domain: &Domain,
    universe: &BTreeSet<String>,
    bounds: ExecutionBounds,
) -> Result<Verdict, AbstractionError> {
    check_goal(goal)?;
    let hit = find_execution(domain, b, &plan.program(), universe, bounds, |fin| eval_ground(fin, goal))?;
    Ok(match hit {
        Some(o) => Verdict::Correct(Some(Box::new(o))),
        None => Verdict::DefinitelyIncorrect,
    })
}

/// `classify_plan`, then `resolve`; `NotFlagged` if the plan was not
/// flagged in the first place.
pub fn resolve_flagged(
    plan: &GroundPlan,
    b: &BeliefBase,
    goal: &Formula,
    domain: &Domain,
    table: &SummaryTable,
    universe: &BTreeSet<String>,
    bounds: ExecutionBounds,
) -> Result<Verdict, AbstractionError> {
    match classify_plan(plan, b, goal, domain, table, universe)? {
        Verdict::PotentiallyIncorrect(_) => resolve(plan, b, goal, domain, universe, bounds),
        _ => Err(AbstractionError::NotFlagged),
    }
}

fn check_goal(goal: &Formula) -> Result<(), AbstractionError> {
    if goal.vars().is_empty() {
        Ok(())
    } else {
        Err(AbstractionError::NonGroundGoal(goal.to_string()))
    }
}

struct GroundOp<'a> {
    op: &'a Operator,
    binding: Substitution,
    pre: Formula,
    effects: BTreeSet<Literal>,
}

impl GroundOp<'_> {
    fn plan_step(&self) -> PlanStep {
        let head_args: Vec<Term> = self.op.params[..self.op.head_arity()]
            .iter()
            .map(|p| self.binding.get(p).cloned().unwrap_or_else(|| Term::var(p.clone())))
            .collect();
        let step = match &self.op.source {
            Source::Action { name, .. } => Step::Act(Atom::new(name.clone(), head_args)),
            Source::Event(e) => Step::Event(Atom::new(e.name.clone(), head_args)),
        };
        let extra = Substitution::from_pairs(
            self.op.params[self.op.head_arity()..]
                .iter()
                .filter_map(|p| self.binding.get(p).map(|t| (p.clone(), t.clone()))),
        );
        PlanStep {
            operator: self.op.name.clone(),
            source: self.op.source.clone(),
            binding: extra,
            step,
        }
    }
}

/// Shortest plan by breadth-first search over ground states. Plans whose
/// key is in `exclude` are skipped. `max_nodes` bounds the states expanded.
pub fn plan_classical(
    b: &BeliefBase,
    goal: &Formula,
    operators: &[Operator],
    universe: &BTreeSet<String>,
    exclude: &BTreeSet<Vec<String>>,
    max_nodes: usize,
) -> Result<GroundPlan, AbstractionError> {
    check_goal(goal)?;
    let mut ops: Vec<&Operator> = operators.iter().collect();
    ops.sort_by(|a, b| a.name.cmp(&b.name));
    let mut ground = Vec::new();
    for op in ops {
        for s in groundings(&op.params, universe) {
            let pre = op.pre.apply(&s);
            if !pre.vars().is_empty() {
                continue;
            }
            ground.push(GroundOp {
                op,
                pre,
                effects: op.effects.apply(&s),
                binding: s,
            });
        }
    }

    // nodes: (state, parent, ground op index)
    let mut nodes: Vec<(BeliefBase, Option<(usize, usize)>)> = vec![(b.clone(), None)];
    let mut visited: BTreeSet<BeliefBase> = [b.clone()].into();
    let mut queue = VecDeque::from([0usize]);
    let path_of = |nodes: &Vec<(BeliefBase, Option<(usize, usize)>)>, mut n: usize| {
        let mut idx = Vec::new();
        while let Some((parent, op)) = nodes[n].1 {
            idx.push(op);
            n = parent;
        }
        idx.reverse();
        GroundPlan {
            steps: idx.iter().map(|&i| ground[i].plan_step()).collect(),
        }
    };

    if eval_ground(b, goal) && !exclude.contains(&Vec::new()) {
        return Ok(GroundPlan::default());
    }
    let mut expanded = 0;
    while let Some(n) = queue.pop_front() {
        expanded += 1;
        if expanded > max_nodes {
            return Err(AbstractionError::BoundsExceeded(format!("more than {max_nodes} states expanded")));
        }
        for (i, g) in ground.iter().enumerate() {
            let state = &nodes[n].0;
            if !eval_ground(state, &g.pre) {
                continue;
            }
            let mut next = state.clone();
            apply_effects(&mut next, &g.effects)?;
            if eval_ground(&next, goal) {
                nodes.push((next, Some((n, i))));
                let plan = path_of(&nodes, nodes.len() - 1);
                if !exclude.contains(&plan.key()) {
                    return Ok(plan);
                }
                continue;
            }
            if visited.insert(next.clone()) {
                nodes.push((next, Some((n, i))));
                queue.push_back(nodes.len() - 1);
            }
        }
    }
    Err(AbstractionError::NoPlan)
}

/// Knobs for `plan_abstract_verified`.
#[derive(Debug, Clone, Default)]
pub struct PlanningOptions {
    /// Only offer these operators (by name) to the planner; all when `None`.
    pub only: Option<BTreeSet<String>>,
    /// Leave primitive actions out of the planner's operators.
    pub abstract_only: bool,
    pub bounds: ExecutionBounds,
}

/// An accepted plan, the execution showing it reaches the goal, and the
/// plans rejected on the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptedPlan {
    pub plan: GroundPlan,
    /// Verdict of the correctness check before any resolution.
    pub flagged: bool,
    pub witness: ExecutionOutcome,
    pub rejected: Vec<GroundPlan>,
}

impl AcceptedPlan {
    pub fn to_json(&self) -> Value {
        json!({
            "plan": self.plan.to_json(),
            "flagged": self.flagged,
            "execution": self.witness.to_json(),
            "rejected": self.rejected.iter().map(GroundPlan::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Plans with primitive and abstract operators until a plan is classified
/// correct, or is flagged and then shown to reach the goal.
pub fn plan_abstract_verified(
    b: &BeliefBase,
    goal: &Formula,
    domain: &Domain,
    table: &SummaryTable,
    universe: &BTreeSet<String>,
    options: &PlanningOptions,
) -> Result<AcceptedPlan, AbstractionError> {
    let mut operators = build_abstract_operators(table);
    if !options.abstract_only {
        operators.extend(action_operators(&domain.actions));
    }
    if let Some(only) = &options.only {
        operators.retain(|o| only.contains(&o.name));
    }
    let bounds = options.bounds;
    let mut exclude = BTreeSet::new();
    let mut rejected = Vec::new();
    loop {
        let plan = plan_classical(b, goal, &operators, universe, &exclude, bounds.max_outcomes)?;
        let flagged = match classify_plan(&plan, b, goal, domain, table, universe)? {
            Verdict::Correct(_) => {
                let hit = find_execution(domain, b, &plan.program(), universe, bounds, |fin| eval_ground(fin, goal))?;
                let witness = hit.ok_or_else(|| AbstractionError::NoWitness(plan.to_string()))?;
                return Ok(AcceptedPlan {
                    plan,
                    flagged: false,
                    witness,
                    rejected,
                });
            }
            _ => true,
        };
        match resolve(&plan, b, goal, domain, universe, bounds)? {
            Verdict::Correct(Some(o)) => {
                return Ok(AcceptedPlan {
                    plan,
                    flagged,
                    witness: *o,
                    rejected,
                })
            }
            _ => {
                exclude.insert(plan.key());
                rejected.push(plan);
            }
        }
    }
}

/// Replays a plan at operator level (effects only, preconditions checked).
pub fn simulate_operators(
    plan: &GroundPlan,
    b: &BeliefBase,
    operators: &[Operator],
) -> Result<Option<BeliefBase>, AbstractionError> {
    let mut state = b.clone();
    for step in &plan.steps {
        let Some(op) = operators.iter().find(|o| o.source == step.source) else {
            return Ok(None);
        };
        let args = &step.step.atom().unwrap().args;
        let mut theta = bind_head(
            &Atom::new(op.name.clone(), op.params[..op.head_arity()].iter().map(|p| Term::var(p.clone())).collect()),
            args,
        );
        for (v, t) in step.binding.iter() {
            theta.bind(v.clone(), t.clone());
        }
        if !evaluate(&state, &op.pre, &theta)? {
            return Ok(None);
        }
        apply_effects(&mut state, &op.effects.apply(&theta))?;
    }
    Ok(Some(state))
}

// ---------------------------------------------------------------------------
// PDDL-style export

fn pddl_formula(f: &Formula) -> String {
    match f {
        Formula::True => "(and)".into(),
        Formula::False => "(or)".into(),
        Formula::Lit(l) => l.to_string(),
        Formula::Eq(a, b) => format!("(= {a} {b})"),
        Formula::Neq(a, b) => format!("(not (= {a} {b}))"),
        Formula::And(fs) | Formula::Or(fs) => {
            let head = if matches!(f, Formula::And(_)) { "and" } else { "or" };
            let parts: Vec<String> = fs.iter().map(pddl_formula).collect();
            format!("({head} {})", parts.join(" "))
        }
    }
}

/// Renders operators as a PDDL-like domain, primitive actions first.
pub fn export_pddl_like(operators: &[Operator]) -> String {
    let mut ops: Vec<&Operator> = operators.iter().collect();
    ops.sort_by(|a, b| (a.is_abstract(), &a.name).cmp(&(b.is_abstract(), &b.name)));
    let mut out = String::from("(define (domain plansumm)\n");
    for op in ops {
        if op.is_abstract() {
            out.push_str("  ;; abstract\n");
        }
        let params: Vec<String> = op.params.iter().map(|p| format!("?{p}")).collect();
        let effects: Vec<String> = op.effects.iter().map(ToString::to_string).collect();
        let effect = if effects.is_empty() {
            "(and)".to_string()
        } else {
            format!("(and {})", effects.join(" "))
        };
        out.push_str(&format!(
            "  (:action {}\n    :parameters ({})\n    :precondition {}\n    :effect {})\n",
            op.name,
            params.join(" "),
            pddl_formula(&op.pre),
            effect
        ));
    }
    out.push_str(")\n");
    out
}
