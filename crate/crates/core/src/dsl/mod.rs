//! The plan-library language: rule types, the s-expression surface syntax,
//! load-time validation and the analysis report format.

mod report;
mod sexp;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::logic::{mgu_atoms, Atom, BeliefBase, Formula, Literal, Substitution, Symbolic, Term};

pub use report::{emit_report, parse_report, ReportEntry};
use sexp::{read_all, syntax_error, Sexp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at {line}:{col}: expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("invalid {rule}: {message}")]
    Validation { rule: String, message: String },
    #[error("malformed report: {0}")]
    Report(String),
}

fn invalid(rule: impl Into<String>, message: impl Into<String>) -> DslError {
    DslError::Validation {
        rule: rule.into(),
        message: message.into(),
    }
}

/// An event-goal type: predicate symbol plus arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventType {
    pub name: String,
    pub arity: usize,
}

impl EventType {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        EventType {
            name: name.into(),
            arity,
        }
    }

    pub fn of(atom: &Atom) -> Self {
        EventType::new(atom.pred.clone(), atom.arity())
    }
}

impl fmt::Display for EventType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// One atomic program of a plan body.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Act(Atom),
    Event(Atom),
    Add(Atom),
    Del(Atom),
    Test(Formula),
}

impl Step {
    pub fn is_event(&self) -> bool {
        matches!(self, Step::Event(_))
    }

    pub fn atom(&self) -> Option<&Atom> {
        match self {
            Step::Act(a) | Step::Event(a) | Step::Add(a) | Step::Del(a) => Some(a),
            Step::Test(_) => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.vars().is_empty()
    }
}

impl Symbolic for Step {
    fn apply(&self, s: &Substitution) -> Self {
        match self {
            Step::Act(a) => Step::Act(a.apply(s)),
            Step::Event(a) => Step::Event(a.apply(s)),
            Step::Add(a) => Step::Add(a.apply(s)),
            Step::Del(a) => Step::Del(a.apply(s)),
            Step::Test(f) => Step::Test(f.apply(s)),
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Step::Act(a) | Step::Event(a) | Step::Add(a) | Step::Del(a) => a.collect_vars(out),
            Step::Test(f) => f.collect_vars(out),
        }
    }
}

fn write_tagged(f: &mut fmt::Formatter<'_>, tag: &str, a: &Atom) -> fmt::Result {
    write!(f, "({tag} {}", a.pred)?;
    for t in &a.args {
        write!(f, " {t}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Act(a) => write_tagged(f, "act", a),
            Step::Event(a) => write_tagged(f, "event", a),
            Step::Add(a) => write_tagged(f, "add", a),
            Step::Del(a) => write_tagged(f, "del", a),
            Step::Test(phi) => write!(f, "(test {phi})"),
        }
    }
}

/// `e(v):ψ ← P`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanRule {
    pub head: Atom,
    pub context: Formula,
    pub body: Vec<Step>,
}

impl PlanRule {
    pub fn event_type(&self) -> EventType {
        EventType::of(&self.head)
    }

    pub fn head_vars(&self) -> Vec<String> {
        self.head.args.iter().map(|t| t.name().to_string()).collect()
    }

    /// Every variable of the rule: head, context and body.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = self.head.vars();
        self.context.collect_vars(&mut out);
        self.body.collect_vars(&mut out);
        out
    }
}

impl fmt::Display for PlanRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(plan-rule ")?;
        write_tagged(f, "event", &self.head)?;
        write!(f, " (context {}) (body", self.context)?;
        for s in &self.body {
            write!(f, " {s}")?;
        }
        f.write_str("))")
    }
}

/// STRIPS-like primitive: `act:ψ ← Φ⁺;Φ⁻`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionRule {
    pub head: Atom,
    pub pre: Formula,
    pub add: Vec<Atom>,
    pub del: Vec<Atom>,
}

impl fmt::Display for ActionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(action {} (pre {}) (add", self.head, self.pre)?;
        for a in &self.add {
            write!(f, " {a}")?;
        }
        f.write_str(") (del")?;
        for a in &self.del {
            write!(f, " {a}")?;
        }
        f.write_str("))")
    }
}

/// Arity bookkeeping shared by the validators.
#[derive(Default)]
struct Arities {
    seen: BTreeMap<String, usize>,
}

impl Arities {
    fn check(&mut self, what: &str, atom: &Atom, rule: &str) -> Result<(), DslError> {
        match self.seen.get(&atom.pred) {
            Some(&n) if n != atom.arity() => Err(invalid(
                rule,
                format!(
                    "{what} `{}` used with arity {} but elsewhere with arity {n}",
                    atom.pred,
                    atom.arity()
                ),
            )),
            Some(_) => Ok(()),
            None => {
                self.seen.insert(atom.pred.clone(), atom.arity());
                Ok(())
            }
        }
    }

    fn formula(&mut self, f: &Formula, rule: &str) -> Result<(), DslError> {
        for l in f.literals() {
            self.check("belief predicate", &l.atom, rule)?;
        }
        Ok(())
    }
}

fn distinct_var_head(head: &Atom, rule: &str) -> Result<(), DslError> {
    let mut seen = BTreeSet::new();
    for t in &head.args {
        match t {
            Term::Var(v) => {
                if !seen.insert(v) {
                    return Err(invalid(rule, format!("duplicate head variable ?{v}")));
                }
            }
            Term::Const(c) => {
                return Err(invalid(rule, format!("head argument `{c}` is not a variable")));
            }
        }
    }
    Ok(())
}

/// The plan library Π.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlanLibrary {
    rules: Vec<PlanRule>,
    event_types: BTreeSet<EventType>,
}

impl PlanLibrary {
    /// Validates and builds a library whose event types are exactly the
    /// rule heads.
    pub fn new(rules: Vec<PlanRule>) -> Result<Self, DslError> {
        Self::with_event_types(rules, [])
    }

    /// Like [`PlanLibrary::new`] but also declares event types that may have
    /// no rules at all.
    pub fn with_event_types(
        rules: Vec<PlanRule>,
        extra: impl IntoIterator<Item = EventType>,
    ) -> Result<Self, DslError> {
        let mut event_types: BTreeSet<EventType> = rules.iter().map(PlanRule::event_type).collect();
        event_types.extend(extra);

        let mut beliefs = Arities::default();
        let mut events = Arities::default();
        let mut actions = Arities::default();
        for t in &event_types {
            events.check("event", &Atom::new(t.name.clone(), vec![Term::var("_"); t.arity]), "library")?;
        }
        for (i, r) in rules.iter().enumerate() {
            let id = format!("plan rule R{i}");
            distinct_var_head(&r.head, &id)?;
            if r.body.is_empty() {
                return Err(invalid(id, "body is empty"));
            }
            beliefs.formula(&r.context, &id)?;
            for s in &r.body {
                match s {
                    Step::Event(a) => {
                        events.check("event", a, &id)?;
                        if !event_types.contains(&EventType::of(a)) {
                            return Err(invalid(
                                id,
                                format!("undeclared event {}", EventType::of(a)),
                            ));
                        }
                    }
                    Step::Act(a) => actions.check("action", a, &id)?,
                    Step::Add(a) | Step::Del(a) => beliefs.check("belief predicate", a, &id)?,
                    Step::Test(f) => beliefs.formula(f, &id)?,
                }
            }
        }
        Ok(PlanLibrary { rules, event_types })
    }

    pub fn rules(&self) -> &[PlanRule] {
        &self.rules
    }

    pub fn event_types(&self) -> &BTreeSet<EventType> {
        &self.event_types
    }

    /// Rules (with their index) whose head has the given type.
    pub fn rules_for<'a>(&'a self, e: &'a EventType) -> impl Iterator<Item = (usize, &'a PlanRule)> + 'a {
        self.rules
            .iter()
            .enumerate()
            .filter(move |(_, r)| r.head.pred == e.name && r.head.arity() == e.arity)
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

impl fmt::Display for PlanLibrary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// The action library Λ: exactly one rule per action name and arity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ActionLibrary {
    rules: Vec<ActionRule>,
}

impl ActionLibrary {
    pub fn new(rules: Vec<ActionRule>) -> Result<Self, DslError> {
        let mut heads = BTreeSet::new();
        let mut beliefs = Arities::default();
        for r in &rules {
            let id = format!("action {}", EventType::of(&r.head));
            distinct_var_head(&r.head, &id)?;
            if !heads.insert((r.head.pred.clone(), r.head.arity())) {
                return Err(invalid(id, "more than one rule for this action"));
            }
            let head_vars = r.head.vars();
            let mut used = r.pre.vars();
            r.add.collect_vars(&mut used);
            r.del.collect_vars(&mut used);
            if let Some(v) = used.difference(&head_vars).next() {
                return Err(invalid(id, format!("variable ?{v} does not occur in the head")));
            }
            beliefs.formula(&r.pre, &id)?;
            for a in r.add.iter().chain(&r.del) {
                beliefs.check("belief predicate", a, &id)?;
            }
        }
        Ok(ActionLibrary { rules })
    }

    pub fn rules(&self) -> &[ActionRule] {
        &self.rules
    }

    pub fn get(&self, name: &str, arity: usize) -> Option<&ActionRule> {
        self.rules
            .iter()
            .find(|r| r.head.pred == name && r.head.arity() == arity)
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

impl fmt::Display for ActionLibrary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// A plan library together with the action library it refers to.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Domain {
    pub plans: PlanLibrary,
    pub actions: ActionLibrary,
}

impl Domain {
    /// Cross-checks that every `act` step names a declared action and that
    /// belief predicates have one arity across both libraries.
    pub fn new(plans: PlanLibrary, actions: ActionLibrary) -> Result<Self, DslError> {
        let mut beliefs = Arities::default();
        for r in actions.rules() {
            let id = format!("action {}", EventType::of(&r.head));
            beliefs.formula(&r.pre, &id)?;
            for a in r.add.iter().chain(&r.del) {
                beliefs.check("belief predicate", a, &id)?;
            }
        }
        for (i, r) in plans.rules().iter().enumerate() {
            let id = format!("plan rule R{i}");
            beliefs.formula(&r.context, &id)?;
            for s in &r.body {
                match s {
                    Step::Act(a) => {
                        if actions.get(&a.pred, a.arity()).is_none() {
                            return Err(invalid(
                                id,
                                format!("undeclared action {}", EventType::of(a)),
                            ));
                        }
                    }
                    Step::Add(a) | Step::Del(a) => beliefs.check("belief predicate", a, &id)?,
                    Step::Test(f) => beliefs.formula(f, &id)?,
                    Step::Event(_) => {}
                }
            }
        }
        Ok(Domain { plans, actions })
    }

    /// Belief predicates (name, arity) mentioned anywhere in the domain.
    pub fn belief_predicates(&self) -> BTreeSet<(String, usize)> {
        let mut out = BTreeSet::new();
        let add_formula = |f: &Formula, out: &mut BTreeSet<(String, usize)>| {
            for l in f.literals() {
                out.insert((l.atom.pred.clone(), l.atom.arity()));
            }
        };
        for r in self.actions.rules() {
            add_formula(&r.pre, &mut out);
            for a in r.add.iter().chain(&r.del) {
                out.insert((a.pred.clone(), a.arity()));
            }
        }
        for r in self.plans.rules() {
            add_formula(&r.context, &mut out);
            for s in &r.body {
                match s {
                    Step::Add(a) | Step::Del(a) => {
                        out.insert((a.pred.clone(), a.arity()));
                    }
                    Step::Test(f) => add_formula(f, &mut out),
                    _ => {}
                }
            }
        }
        out
    }

    /// Belief predicates that some condition (context, test or action
    /// precondition) reads.
    pub fn condition_predicates(&self) -> BTreeSet<(String, usize)> {
        let mut fs: Vec<&Formula> = self.actions.rules().iter().map(|r| &r.pre).collect();
        for r in self.plans.rules() {
            fs.push(&r.context);
            for s in &r.body {
                if let Step::Test(f) = s {
                    fs.push(f);
                }
            }
        }
        fs.into_iter()
            .flat_map(|f| f.literals())
            .map(|l| (l.atom.pred.clone(), l.atom.arity()))
            .collect()
    }

    /// Constants written anywhere in the domain.
    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut collect = |ts: &[Term]| {
            for t in ts {
                if let Term::Const(c) = t {
                    out.insert(c.clone());
                }
            }
        };
        let mut fs: Vec<&Formula> = Vec::new();
        for r in self.actions.rules() {
            fs.push(&r.pre);
            r.add.iter().chain(&r.del).for_each(|a| collect(&a.args));
        }
        for r in self.plans.rules() {
            fs.push(&r.context);
            for s in &r.body {
                match s {
                    Step::Test(f) => fs.push(f),
                    other => collect(&other.atom().unwrap().args),
                }
            }
        }
        for f in fs {
            collect_formula_consts(f, &mut collect);
        }
        out
    }
}

fn collect_formula_consts(f: &Formula, collect: &mut impl FnMut(&[Term])) {
    match f {
        Formula::Lit(l) => collect(&l.atom.args),
        Formula::Eq(a, b) | Formula::Neq(a, b) => collect(&[a.clone(), b.clone()]),
        Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|g| collect_formula_consts(g, collect)),
        Formula::True | Formula::False => {}
    }
}

/// Problem state loaded from a belief file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Beliefs {
    pub base: BeliefBase,
    pub universe: BTreeSet<String>,
}

// ---------------------------------------------------------------------------
// Parsing

const RESERVED: &[&str] = &["and", "or", "not", "=", "!=", "true", "false"];

fn parse_name(s: &Sexp, what: &str) -> Result<String, DslError> {
    match s.as_symbol() {
        Some(n) if !n.starts_with('?') && !n.is_empty() => Ok(n.to_string()),
        _ => Err(syntax_error(s.pos(), what)),
    }
}

fn parse_term(s: &Sexp) -> Result<Term, DslError> {
    match s.as_symbol() {
        Some(n) => match n.strip_prefix('?') {
            Some("") => Err(syntax_error(s.pos(), "variable name after '?'")),
            Some(v) => Ok(Term::var(v)),
            None => Ok(Term::constant(n)),
        },
        None => Err(syntax_error(s.pos(), "term (?NAME or NAME)")),
    }
}

fn parse_var(s: &Sexp) -> Result<Term, DslError> {
    match parse_term(s)? {
        t @ Term::Var(_) => Ok(t),
        Term::Const(_) => Err(syntax_error(s.pos(), "variable (?NAME)")),
    }
}

/// `(NAME term*)`
fn parse_atom(s: &Sexp) -> Result<Atom, DslError> {
    match s {
        Sexp::List(items, pos) if !items.is_empty() => {
            let pred = parse_name(&items[0], "predicate name")?;
            if RESERVED.contains(&pred.as_str()) {
                return Err(syntax_error(*pos, format!("atom, found reserved word `{pred}`")));
            }
            let args = items[1..].iter().map(parse_term).collect::<Result<_, _>>()?;
            Ok(Atom::new(pred, args))
        }
        _ => Err(syntax_error(s.pos(), "atom (NAME term*)")),
    }
}

/// `NAME term*` spread over a slice, as in `(act NAME term*)`.
fn parse_spread_atom(items: &[Sexp], at: &Sexp) -> Result<Atom, DslError> {
    let Some(first) = items.first() else {
        return Err(syntax_error(at.pos(), "NAME term*"));
    };
    let pred = parse_name(first, "name")?;
    let args = items[1..].iter().map(parse_term).collect::<Result<_, _>>()?;
    Ok(Atom::new(pred, args))
}

pub fn formula_from_sexp(s: &Sexp) -> Result<Formula, DslError> {
    match s {
        Sexp::Symbol(w, _) if w == "true" => Ok(Formula::True),
        Sexp::Symbol(w, _) if w == "false" => Ok(Formula::False),
        Sexp::List(items, pos) if !items.is_empty() => {
            let head = items[0].as_symbol().unwrap_or("");
            let rest = &items[1..];
            match head {
                "not" => match rest {
                    [a] => Ok(Formula::Lit(Literal::neg(parse_atom(a)?))),
                    _ => Err(syntax_error(*pos, "(not atom)")),
                },
                "=" | "!=" => match rest {
                    [a, b] => {
                        let (a, b) = (parse_term(a)?, parse_term(b)?);
                        Ok(if head == "=" {
                            Formula::Eq(a, b)
                        } else {
                            Formula::Neq(a, b)
                        })
                    }
                    _ => Err(syntax_error(*pos, format!("({head} term term)"))),
                },
                "and" | "or" => {
                    if rest.is_empty() {
                        return Err(syntax_error(*pos, format!("({head} formula+)")));
                    }
                    let fs = rest.iter().map(formula_from_sexp).collect::<Result<Vec<_>, _>>()?;
                    Ok(if head == "and" {
                        Formula::And(fs)
                    } else {
                        Formula::Or(fs)
                    })
                }
                _ => Ok(Formula::atom(parse_atom(s)?)),
            }
        }
        _ => Err(syntax_error(s.pos(), "formula")),
    }
}

fn parse_step(s: &Sexp) -> Result<Step, DslError> {
    let Sexp::List(items, pos) = s else {
        return Err(syntax_error(s.pos(), "step"));
    };
    let tag = items.first().and_then(Sexp::as_symbol).unwrap_or("");
    let rest = &items[1..];
    match tag {
        "act" => Ok(Step::Act(parse_spread_atom(rest, s)?)),
        "event" => Ok(Step::Event(parse_spread_atom(rest, s)?)),
        "add" => Ok(Step::Add(parse_spread_atom(rest, s)?)),
        "del" => Ok(Step::Del(parse_spread_atom(rest, s)?)),
        "test" => match rest {
            [f] => Ok(Step::Test(formula_from_sexp(f)?)),
            _ => Err(syntax_error(*pos, "(test formula)")),
        },
        _ => Err(syntax_error(*pos, "step (act|event|add|del|test ...)")),
    }
}

fn expect_tagged<'a>(s: Option<&'a Sexp>, tag: &str, at: &Sexp) -> Result<&'a [Sexp], DslError> {
    match s {
        Some(s) => s
            .tagged(tag)
            .ok_or_else(|| syntax_error(s.pos(), format!("({tag} ...)"))),
        None => Err(syntax_error(at.pos(), format!("({tag} ...)"))),
    }
}

fn parse_plan_rule(items: &[Sexp], at: &Sexp) -> Result<PlanRule, DslError> {
    if items.len() != 3 {
        return Err(syntax_error(
            at.pos(),
            "(plan-rule (event NAME var*) (context formula) (body step+))",
        ));
    }
    let head = expect_tagged(items.first(), "event", at)?;
    let head = {
        let atom = parse_spread_atom(head, &items[0])?;
        for (t, s) in atom.args.iter().zip(&head[1..]) {
            if !t.is_var() {
                parse_var(s)?;
            }
        }
        atom
    };
    let context = match expect_tagged(items.get(1), "context", at)? {
        [f] => formula_from_sexp(f)?,
        _ => return Err(syntax_error(items[1].pos(), "(context formula)")),
    };
    let body_items = expect_tagged(items.get(2), "body", at)?;
    if body_items.is_empty() {
        return Err(syntax_error(items[2].pos(), "(body step+)"));
    }
    let body = body_items.iter().map(parse_step).collect::<Result<_, _>>()?;
    Ok(PlanRule {
        head,
        context,
        body,
    })
}

fn parse_action_rule(items: &[Sexp], at: &Sexp) -> Result<ActionRule, DslError> {
    if items.len() != 4 {
        return Err(syntax_error(
            at.pos(),
            "(action (NAME var*) (pre formula) (add atom*) (del atom*))",
        ));
    }
    let head = parse_atom(&items[0])?;
    if let Sexp::List(hs, _) = &items[0] {
        for s in &hs[1..] {
            parse_var(s)?;
        }
    }
    let pre = match expect_tagged(items.get(1), "pre", at)? {
        [f] => formula_from_sexp(f)?,
        _ => return Err(syntax_error(items[1].pos(), "(pre formula)")),
    };
    let add = expect_tagged(items.get(2), "add", at)?
        .iter()
        .map(parse_atom)
        .collect::<Result<_, _>>()?;
    let del = expect_tagged(items.get(3), "del", at)?
        .iter()
        .map(parse_atom)
        .collect::<Result<_, _>>()?;
    Ok(ActionRule {
        head,
        pre,
        add,
        del,
    })
}

enum Item {
    Plan(PlanRule),
    Action(ActionRule),
}

fn parse_items(text: &str) -> Result<Vec<Item>, DslError> {
    read_all(text)?
        .iter()
        .map(|s| {
            if let Some(items) = s.tagged("plan-rule") {
                parse_plan_rule(items, s).map(Item::Plan)
            } else if let Some(items) = s.tagged("action") {
                parse_action_rule(items, s).map(Item::Action)
            } else {
                Err(syntax_error(s.pos(), "(plan-rule ...) or (action ...)"))
            }
        })
        .collect()
}

/// Parses a file that may mix plan rules and action rules, and validates
/// the result as a [`Domain`].
pub fn parse_domain(text: &str) -> Result<Domain, DslError> {
    let mut plans = Vec::new();
    let mut actions = Vec::new();
    for item in parse_items(text)? {
        match item {
            Item::Plan(p) => plans.push(p),
            Item::Action(a) => actions.push(a),
        }
    }
    Domain::new(PlanLibrary::new(plans)?, ActionLibrary::new(actions)?)
}

pub fn parse_plan_library(text: &str) -> Result<PlanLibrary, DslError> {
    let mut rules = Vec::new();
    for item in parse_items(text)? {
        match item {
            Item::Plan(p) => rules.push(p),
            Item::Action(a) => {
                return Err(invalid(
                    format!("action {}", EventType::of(&a.head)),
                    "action rule in a plan-library file",
                ))
            }
        }
    }
    PlanLibrary::new(rules)
}

pub fn parse_action_library(text: &str) -> Result<ActionLibrary, DslError> {
    let mut rules = Vec::new();
    for item in parse_items(text)? {
        match item {
            Item::Action(a) => rules.push(a),
            Item::Plan(p) => {
                return Err(invalid(
                    format!("plan rule for {}", p.event_type()),
                    "plan rule in an action-library file",
                ))
            }
        }
    }
    ActionLibrary::new(rules)
}

/// `(universe NAME*) (facts atom*)`
pub fn parse_belief_base(text: &str) -> Result<Beliefs, DslError> {
    let items = read_all(text)?;
    let (Some(u), Some(f)) = (items.first(), items.get(1)) else {
        return Err(syntax_error(
            items.first().map(Sexp::pos).unwrap_or(sexp::Pos { line: 1, col: 1 }),
            "(universe NAME*) (facts atom*)",
        ));
    };
    if let Some(extra) = items.get(2) {
        return Err(syntax_error(extra.pos(), "end of belief file"));
    }
    let names = u
        .tagged("universe")
        .ok_or_else(|| syntax_error(u.pos(), "(universe NAME*)"))?;
    let universe: BTreeSet<String> = names
        .iter()
        .map(|n| parse_name(n, "constant"))
        .collect::<Result<_, _>>()?;
    let facts = f
        .tagged("facts")
        .ok_or_else(|| syntax_error(f.pos(), "(facts atom*)"))?;
    let mut base = BeliefBase::new();
    for s in facts {
        let a = parse_atom(s)?;
        if !a.is_ground() {
            return Err(invalid("belief file", format!("fact {a} is not ground")));
        }
        if let Some(c) = a.args.iter().find(|t| !universe.contains(t.name())) {
            return Err(invalid(
                "belief file",
                format!("constant `{}` of fact {a} is not in the universe", c.name()),
            ));
        }
        base.insert(a).expect("checked ground");
    }
    Ok(Beliefs { base, universe })
}

/// A sequence of ground `act` / `event` steps.
pub fn parse_plan(text: &str) -> Result<Vec<Step>, DslError> {
    let steps = read_all(text)?
        .iter()
        .map(|s| {
            let step = parse_step(s)?;
            match &step {
                Step::Act(a) | Step::Event(a) if a.is_ground() => Ok(step),
                Step::Act(_) | Step::Event(_) => {
                    Err(invalid("plan", format!("step {step} is not ground")))
                }
                _ => Err(syntax_error(s.pos(), "(act ...) or (event ...) plan step")),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(steps)
}

/// A single formula, e.g. a goal.
pub fn parse_formula(text: &str) -> Result<Formula, DslError> {
    let items = read_all(text)?;
    match items.as_slice() {
        [one] => formula_from_sexp(one),
        [] => Err(syntax_error(sexp::Pos { line: 1, col: 1 }, "formula")),
        [_, extra, ..] => Err(syntax_error(extra.pos(), "a single formula")),
    }
}

/// A single atom `(NAME term*)`.
pub fn parse_atom_text(text: &str) -> Result<Atom, DslError> {
    let items = read_all(text)?;
    match items.as_slice() {
        [one] => parse_atom(one),
        _ => Err(syntax_error(sexp::Pos { line: 1, col: 1 }, "a single atom")),
    }
}

/// A single literal `atom` or `(not atom)`.
pub fn parse_literal(text: &str) -> Result<Literal, DslError> {
    match parse_formula(text)? {
        Formula::Lit(l) => Ok(l),
        other => Err(invalid("literal", format!("`{other}` is not a literal"))),
    }
}

// ---------------------------------------------------------------------------
// Action coherence

/// A pair of add/delete atoms that can coincide on some ground instance
/// whose precondition is not syntactically refuted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub action: Atom,
    pub add: Atom,
    pub del: Atom,
    pub unifier: Substitution,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "action {}: add {} and del {} coincide under {}",
            self.action, self.add, self.del, self.unifier
        )
    }
}

fn top_conjuncts(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::And(fs) => fs.iter().for_each(|g| top_conjuncts(g, out)),
        other => out.push(other.clone()),
    }
}

/// Conservative coherence check for one action rule. A unifiable add/del
/// pair is reported unless the precondition, instantiated by the unifier,
/// contains `false`, a refuted (dis)equality, or a complementary pair of
/// conjuncts.
pub fn check_action_coherence(r: &ActionRule) -> Vec<Violation> {
    let mut out = Vec::new();
    for add in &r.add {
        for del in &r.del {
            let Some(theta) = mgu_atoms(del, add) else {
                continue;
            };
            let mut conj = Vec::new();
            top_conjuncts(&r.pre.apply(&theta), &mut conj);
            let lits: BTreeSet<&Literal> = conj
                .iter()
                .filter_map(|c| match c {
                    Formula::Lit(l) => Some(l),
                    _ => None,
                })
                .collect();
            let refuted = conj.iter().any(|c| match c {
                Formula::False => true,
                Formula::Neq(a, b) => a == b,
                Formula::Eq(Term::Const(a), Term::Const(b)) => a != b,
                Formula::Lit(l) => lits.contains(&l.complement()),
                _ => false,
            });
            if !refuted {
                out.push(Violation {
                    action: r.head.clone(),
                    add: add.clone(),
                    del: del.clone(),
                    unifier: theta,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MOVE: &str = "(action (move ?x ?y) (pre (and (at ?x) (not (at ?y)))) (add (at ?y)) (del (at ?x)))";

    #[test]
    fn parses_move_action() {
        let lib = parse_action_library(MOVE).unwrap();
        assert_eq!(lib.rules().len(), 1);
        let r = &lib.rules()[0];
        assert_eq!(r.head, Atom::parse_args("move", &["?x", "?y"]));
        assert_eq!(r.add, vec![Atom::parse_args("at", &["?y"])]);
        assert_eq!(r.del, vec![Atom::parse_args("at", &["?x"])]);
        assert!(check_action_coherence(r).is_empty());
    }

    #[test]
    fn move_with_true_precondition_is_flagged() {
        let lib = parse_action_library("(action (move ?x ?y) (pre true) (add (at ?y)) (del (at ?x)))")
            .unwrap();
        let v = check_action_coherence(&lib.rules()[0]);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].unifier, Substitution::from_pairs([("x", Term::var("y"))]));
    }

    #[test]
    fn same_atom_in_add_and_del_is_flagged() {
        let lib = parse_action_library("(action (flip) (pre true) (add (p)) (del (p)))").unwrap();
        assert_eq!(check_action_coherence(&lib.rules()[0]).len(), 1);
        let lib = parse_action_library("(action (step ?x ?y) (pre (!= ?x ?y)) (add (at ?y)) (del (at ?x)))")
            .unwrap();
        assert!(check_action_coherence(&lib.rules()[0]).is_empty());
        let lib = parse_action_library("(action (mv ?x) (pre true) (add (on ?x)) (del (off ?x)))").unwrap();
        assert!(check_action_coherence(&lib.rules()[0]).is_empty());
    }

    #[test]
    fn empty_file_is_an_empty_library() {
        assert!(parse_plan_library("").unwrap().is_empty());
        assert!(parse_plan_library("; only a comment\n").unwrap().is_empty());
    }

    #[test]
    fn duplicate_head_variable_is_rejected() {
        let err = parse_plan_library("(plan-rule (event nav ?x ?x) (context true) (body (add p)))")
            .unwrap_err();
        assert!(matches!(err, DslError::Validation { ref message, .. } if message.contains("duplicate head variable")));
    }

    #[test]
    fn undeclared_event_is_rejected() {
        let err = parse_plan_library("(plan-rule (event a) (context true) (body (event b)))").unwrap_err();
        assert!(matches!(err, DslError::Validation { ref message, .. } if message.contains("undeclared event b/0")));
    }

    #[test]
    fn undeclared_action_is_rejected() {
        let err = parse_domain("(plan-rule (event a) (context true) (body (act go)))").unwrap_err();
        assert!(matches!(err, DslError::Validation { ref message, .. } if message.contains("undeclared action go/0")));
    }

    #[test]
    fn arity_clash_is_rejected() {
        let err = parse_plan_library(
            "(plan-rule (event a) (context (at x)) (body (add at x y)))",
        )
        .unwrap_err();
        assert!(matches!(err, DslError::Validation { .. }));
    }

    #[test]
    fn action_variables_must_occur_in_head() {
        let err = parse_action_library("(action (go ?x) (pre true) (add (at ?y)) (del))").unwrap_err();
        assert!(matches!(err, DslError::Validation { ref message, .. } if message.contains("?y")));
    }

    #[test]
    fn duplicate_action_is_rejected() {
        let err = parse_action_library("(action (go) (pre true) (add) (del)) (action (go) (pre true) (add) (del))")
            .unwrap_err();
        assert!(matches!(err, DslError::Validation { .. }));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_plan_library("(plan-rule (event a) (context true))").unwrap_err();
        assert!(matches!(err, DslError::Syntax { line: 1, col: 1, .. }));
        let err = parse_plan_library("(plan-rule (event a)\n (context true) (body (jump)))").unwrap_err();
        assert!(matches!(err, DslError::Syntax { line: 2, col: 23, .. }), "{err:?}");
        let err = parse_plan_library("(plan-rule (event a b) (context true) (body (add p)))").unwrap_err();
        assert!(matches!(err, DslError::Syntax { .. }));
    }

    #[test]
    fn plan_text_yields_event_steps() {
        let p = parse_plan("(event e1) (event e2)").unwrap();
        assert_eq!(
            p,
            vec![
                Step::Event(Atom::new("e1", vec![])),
                Step::Event(Atom::new("e2", vec![]))
            ]
        );
        assert!(parse_plan("(event nav ?x w)").is_err());
        assert!(parse_plan("(add p)").is_err());
    }

    #[test]
    fn belief_file_declares_universe() {
        let b = parse_belief_base("(universe w s1 lander) (facts (at w) (landerAt lander))").unwrap();
        assert_eq!(b.universe.len(), 3);
        assert!(b.base.contains(&Atom::parse_args("at", &["w"])));
        assert!(parse_belief_base("(universe a) (facts (at b))").is_err());
        assert!(parse_belief_base("(universe a) (facts (at ?x))").is_err());
        assert!(parse_belief_base("(facts)").is_err());
    }

    #[test]
    fn formulas_round_trip_through_text() {
        for src in [
            "true",
            "(and (at ?x) (not (at ?y)))",
            "(or (= ?f ?t) (!= ?f ?t) false)",
            "(cal)",
        ] {
            let f = parse_formula(src).unwrap();
            assert_eq!(f.to_string(), src);
        }
        assert!(parse_formula("(and)").is_err());
        assert!(parse_formula("(not (and (p)))").is_err());
    }

    #[test]
    fn library_prints_and_reparses() {
        let src = "(plan-rule (event transmitRes ?y) (context (landerAt ?l)) (body (event nav ?y ?l) (act uploadRes ?y)))\n\
                   (plan-rule (event nav ?x ?y) (context true) (body (test (at ?x)) (add at ?y) (del at ?x)))\n";
        let lib = parse_plan_library(src).unwrap();
        assert_eq!(lib.to_string(), src);
        assert_eq!(parse_plan_library(&lib.to_string()).unwrap(), lib);
    }
}
