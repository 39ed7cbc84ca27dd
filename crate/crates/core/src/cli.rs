//! `plansumm` command-line driver.
//!
//! Exit codes: 0 success, 1 parse or I/O error, 2 recursive plan library,
//! 3 plan definitely incorrect, 4 no plan, 5 execution bounds exceeded,
//! 6 an oracle check found a discrepancy.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::abstraction::{
    action_operators, build_abstract_operators, classify_plan, export_pddl_like, plan_abstract_verified, resolve,
    AbstractionError, GroundPlan, PlanningOptions, Verdict,
};
use crate::dsl::{
    emit_report, parse_action_library, parse_atom_text, parse_belief_base, parse_formula, parse_plan,
    parse_plan_library, Beliefs, Domain, EventType, Step,
};
use crate::logic::{satisfying_groundings, Atom, Literal, Substitution, Symbolic, Term};
use crate::oracle::{
    capture_failure, enumerate_executions, oracle_must_literals, validate_coherence, ExecutionBounds, OracleError,
};
use crate::summarize::{analyze, bind_head, Analysis, SummaryError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_RECURSION: i32 = 2;
pub const EXIT_INCORRECT: i32 = 3;
pub const EXIT_NO_PLAN: i32 = 4;
pub const EXIT_BOUNDS: i32 = 5;
pub const EXIT_MISMATCH: i32 = 6;

#[derive(Parser, Debug)]
#[command(name = "plansumm", version, about = "Summaries and abstract planning for hierarchical plan libraries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Libs {
    /// Plan-rule library
    plib: PathBuf,
    /// Action-rule library
    alib: PathBuf,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct BoundArgs {
    /// Deepest event nesting the oracle explores
    #[arg(long, default_value_t = 32)]
    max_depth: usize,
    /// Most executions (or planner states) explored before giving up
    #[arg(long, default_value_t = 1_000_000)]
    max_outcomes: usize,
}

impl BoundArgs {
    fn bounds(self) -> ExecutionBounds {
        ExecutionBounds {
            max_depth: self.max_depth,
            max_outcomes: self.max_outcomes,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Must,
    Precondition,
    Capture,
    Coherence,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the summary report as JSON
    Summarize {
        #[command(flatten)]
        libs: Libs,
    },
    /// Print actions and abstract operators as a PDDL-like domain
    Export {
        #[command(flatten)]
        libs: Libs,
    },
    /// Classify a plan, optionally resolving a flagged one
    Check {
        #[command(flatten)]
        libs: Libs,
        beliefs: PathBuf,
        plan: PathBuf,
        /// Ground conjunction of literals the plan should reach
        #[arg(long, default_value = "true")]
        goal: String,
        /// Look for a goal-reaching execution when the plan is flagged
        #[arg(long)]
        resolve: bool,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Find a plan for a goal and verify it against the plan library
    Plan {
        #[command(flatten)]
        libs: Libs,
        beliefs: PathBuf,
        #[arg(long)]
        goal: String,
        /// Comma-separated operator names the planner may use
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// Plan with abstract operators only
        #[arg(long)]
        abstract_only: bool,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Check computed summaries against brute-force execution
    Verify {
        #[command(flatten)]
        libs: Libs,
        beliefs: PathBuf,
        /// Ground event such as `transmitRes(s1)`, or `body:N` for the body of rule N
        target: Option<String>,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Also print every execution of the target as JSON lines
        #[arg(long)]
        traces: bool,
        #[command(flatten)]
        bounds: BoundArgs,
    },
}

/// What a command printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        CliOutput {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        CliOutput {
            code,
            stdout: String::new(),
            stderr: format!("plansumm: {message}\n"),
        }
    }
}

struct Failure(i32, String);

impl From<SummaryError> for Failure {
    fn from(e: SummaryError) -> Self {
        let code = match e {
            SummaryError::Recursion(_) => EXIT_RECURSION,
            _ => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::BoundsExceeded(_) => EXIT_BOUNDS,
            _ => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

impl From<AbstractionError> for Failure {
    fn from(e: AbstractionError) -> Self {
        match e {
            AbstractionError::NoPlan => Failure(EXIT_NO_PLAN, e.to_string()),
            AbstractionError::BoundsExceeded(_) => Failure(EXIT_BOUNDS, e.to_string()),
            AbstractionError::Summary(s) => s.into(),
            AbstractionError::Oracle(o) => o.into(),
            other => Failure(EXIT_INPUT, other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn parsed<T, E: std::fmt::Display>(path: &Path, r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_domain(libs: &Libs) -> Result<Domain, Failure> {
    let plans = parsed(&libs.plib, parse_plan_library(&read(&libs.plib)?))?;
    let actions = parsed(&libs.alib, parse_action_library(&read(&libs.alib)?))?;
    Domain::new(plans, actions).map_err(|e| Failure(EXIT_INPUT, e.to_string()))
}

fn load_beliefs(path: &Path) -> Result<Beliefs, Failure> {
    parsed(path, parse_belief_base(&read(path)?))
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json serialises");
    s.push('\n');
    s
}

fn json_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serialises");
    s.push('\n');
    s
}

/// Accepts `name(a,b)`, `name` or `(name a b)`.
pub fn parse_ground_event(text: &str) -> Result<Atom, String> {
    let text = text.trim();
    let atom = if text.starts_with('(') {
        parse_atom_text(text).map_err(|e| e.to_string())?
    } else {
        let (name, args) = match text.split_once('(') {
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| format!("unbalanced parentheses in {text:?}"))?;
                let args: Vec<Term> = inner
                    .split(',')
                    .map(str::trim)
                    .filter(|a| !a.is_empty())
                    .map(Term::constant)
                    .collect();
                (name.trim(), args)
            }
            None => (text, Vec::new()),
        };
        if name.is_empty() {
            return Err(format!("no event name in {text:?}"));
        }
        Atom::new(name, args)
    };
    if !atom.is_ground() {
        return Err(format!("{atom} is not ground"));
    }
    Ok(atom)
}

fn summarize_cmd(libs: &Libs) -> Result<String, Failure> {
    let domain = load_domain(libs)?;
    Ok(emit_report(&analyze(&domain)?.table))
}

fn export_cmd(libs: &Libs) -> Result<String, Failure> {
    let domain = load_domain(libs)?;
    let table = analyze(&domain)?.table;
    let mut ops = action_operators(&domain.actions);
    ops.extend(build_abstract_operators(&table));
    Ok(export_pddl_like(&ops))
}

fn goal_formula(text: &str) -> Result<crate::logic::Formula, Failure> {
    let goal = parse_formula(text).map_err(|e| Failure(EXIT_INPUT, format!("goal: {e}")))?;
    if !goal.vars().is_empty() {
        return Err(Failure(EXIT_INPUT, format!("goal {goal} is not ground")));
    }
    Ok(goal)
}

fn check_cmd(
    libs: &Libs,
    beliefs: &Path,
    plan: &Path,
    goal: &str,
    do_resolve: bool,
    bounds: ExecutionBounds,
) -> Result<CliOutput, Failure> {
    let domain = load_domain(libs)?;
    let b = load_beliefs(beliefs)?;
    let steps = parsed(plan, parse_plan(&read(plan)?))?;
    let goal = goal_formula(goal)?;
    let table = analyze(&domain)?.table;
    let plan = GroundPlan::from_steps(&steps);
    let mut verdict = classify_plan(&plan, &b.base, &goal, &domain, &table, &b.universe)?;
    let mut report = verdict.to_json();
    if do_resolve {
        if let Verdict::PotentiallyIncorrect(_) = &verdict {
            let witnesses = report["witnesses"].clone();
            verdict = resolve(&plan, &b.base, &goal, &domain, &b.universe, bounds)?;
            report = verdict.to_json();
            report["flagged"] = witnesses;
        }
    }
    let code = if verdict == Verdict::DefinitelyIncorrect {
        EXIT_INCORRECT
    } else {
        EXIT_OK
    };
    Ok(CliOutput {
        code,
        stdout: json_pretty(&report),
        stderr: String::new(),
    })
}

fn plan_cmd(
    libs: &Libs,
    beliefs: &Path,
    goal: &str,
    only: &Option<Vec<String>>,
    abstract_only: bool,
    bounds: ExecutionBounds,
) -> Result<String, Failure> {
    let domain = load_domain(libs)?;
    let b = load_beliefs(beliefs)?;
    let goal = goal_formula(goal)?;
    let table = analyze(&domain)?.table;
    let options = PlanningOptions {
        only: only.as_ref().map(|o| o.iter().cloned().collect()),
        abstract_only,
        bounds,
    };
    let accepted = plan_abstract_verified(&b.base, &goal, &domain, &table, &b.universe, &options)?;
    Ok(json_pretty(&accepted.to_json()))
}

enum Target {
    Event(Atom),
    Body(usize),
}

fn parse_target(text: &str, domain: &Domain) -> Result<Target, Failure> {
    if let Some(n) = text.strip_prefix("body:") {
        let idx: usize = n
            .trim()
            .trim_start_matches(['R', 'P'])
            .parse()
            .map_err(|_| Failure(EXIT_INPUT, format!("bad rule index in {text:?}")))?;
        if idx >= domain.plans.rules().len() {
            return Err(Failure(EXIT_INPUT, format!("no plan rule {idx}")));
        }
        return Ok(Target::Body(idx));
    }
    parse_ground_event(text)
        .map(Target::Event)
        .map_err(|e| Failure(EXIT_INPUT, e))
}

fn event_summary_instance(analysis: &Analysis, e: &Atom) -> Result<(Substitution, crate::summarize::SummaryInfo), Failure> {
    let info = analysis
        .table
        .get(&EventType::of(e))
        .ok_or_else(|| Failure(EXIT_INPUT, format!("no event type {}", EventType::of(e))))?;
    let head = info.head().expect("event summary");
    Ok((bind_head(&head, &e.args), info.clone()))
}

fn lit_strings<'a>(ls: impl IntoIterator<Item = &'a Literal>) -> Vec<String> {
    let mut v: Vec<String> = ls.into_iter().map(ToString::to_string).collect();
    v.sort();
    v
}

fn verify_cmd(
    libs: &Libs,
    beliefs: &Path,
    target: Option<&str>,
    mode: Mode,
    traces: bool,
    bounds: ExecutionBounds,
) -> Result<CliOutput, Failure> {
    let domain = load_domain(libs)?;
    let b = load_beliefs(beliefs)?;
    let analysis = analyze(&domain)?;
    let u = &b.universe;
    let starts = [b.base.clone()];

    let target = match (mode, target) {
        (Mode::Coherence, _) => None,
        (_, Some(t)) => Some(parse_target(t, &domain)?),
        (_, None) => return Err(Failure(EXIT_INPUT, "this mode needs a target".into())),
    };
    let program: Vec<Step> = match &target {
        Some(Target::Event(e)) => vec![Step::Event(e.clone())],
        Some(Target::Body(i)) => domain.plans.rules()[*i].body.clone(),
        None => Vec::new(),
    };

    let (ok, report) = match (mode, &target) {
        (Mode::Coherence, _) => {
            let violations = validate_coherence(&domain, u, bounds)?;
            let listed: Vec<Value> = violations
                .iter()
                .map(|v| {
                    json!({
                        "rule": v.rule,
                        "plan_rule": domain.plans.rules()[v.rule].to_string(),
                        "head": v.head.to_string(),
                        "binding": v.binding.to_string(),
                        "beliefs": v.beliefs.atoms().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                })
                .collect();
            (violations.is_empty(), json!({"mode": "coherence", "violations": listed}))
        }
        (Mode::Must, Some(Target::Event(e))) => {
            let (theta, info) = event_summary_instance(&analysis, e)?;
            let computed = info.must.apply(&theta);
            let oracle = oracle_must_literals(&domain, e, u, bounds, &starts)?;
            let missing: Vec<&Literal> = computed.iter().filter(|l| !oracle.contains(l)).collect();
            (
                missing.is_empty(),
                json!({
                    "mode": "must",
                    "target": e.to_string(),
                    "computed": lit_strings(&computed),
                    "oracle": lit_strings(&oracle),
                    "missing": lit_strings(missing),
                }),
            )
        }
        (Mode::Precondition, Some(Target::Event(e))) => {
            let (theta, info) = event_summary_instance(&analysis, e)?;
            let pre = info.precondition.clone().unwrap_or(crate::logic::Formula::True).apply(&theta);
            let holds = !satisfying_groundings(&b.base, &pre, u).is_empty();
            let executes = crate::oracle::has_successful_execution(&domain, &b.base, &program, u, bounds)?.is_some();
            (
                holds || !executes,
                json!({
                    "mode": "precondition",
                    "target": e.to_string(),
                    "precondition": pre.to_string(),
                    "holds": holds,
                    "executes": executes,
                }),
            )
        }
        (Mode::Capture, Some(t)) => {
            let (label, mentioned): (String, BTreeSet<Literal>) = match t {
                Target::Event(e) => {
                    let (theta, info) = event_summary_instance(&analysis, e)?;
                    (e.to_string(), info.mentioned.apply(&theta))
                }
                Target::Body(i) => (format!("body:{i}"), analysis.bodies[i].mentioned.clone()),
            };
            let failure = capture_failure(&domain, &mentioned, &program, u, bounds, &starts)?;
            let mut report = json!({
                "mode": "capture",
                "target": label,
                "mentioned": lit_strings(&mentioned),
                "captures": failure.is_none(),
            });
            if let Some(f) = &failure {
                report["uncaptured"] = json!({
                    "literal": f.literal.to_string(),
                    "program": f.program.iter().map(ToString::to_string).collect::<Vec<_>>(),
                });
            }
            (failure.is_none(), report)
        }
        (_, Some(Target::Body(_))) => {
            return Err(Failure(EXIT_INPUT, "only capture mode accepts a rule body".into()));
        }
        (_, None) => unreachable!(),
    };

    let mut stdout = String::new();
    if traces && !program.is_empty() && program.iter().all(Step::is_ground) {
        for o in enumerate_executions(&domain, &b.base, &program, u, bounds)? {
            stdout.push_str(&json_line(&o.to_json()));
        }
    }
    let mut report = report;
    report["ok"] = Value::Bool(ok);
    stdout.push_str(&json_line(&report));
    Ok(CliOutput {
        code: if ok { EXIT_OK } else { EXIT_MISMATCH },
        stdout,
        stderr: String::new(),
    })
}

fn dispatch(cli: &Cli) -> Result<CliOutput, Failure> {
    match &cli.command {
        Command::Summarize { libs } => summarize_cmd(libs).map(CliOutput::ok),
        Command::Export { libs } => export_cmd(libs).map(CliOutput::ok),
        Command::Check {
            libs,
            beliefs,
            plan,
            goal,
            resolve,
            bounds,
        } => check_cmd(libs, beliefs, plan, goal, *resolve, bounds.bounds()),
        Command::Plan {
            libs,
            beliefs,
            goal,
            only,
            abstract_only,
            bounds,
        } => plan_cmd(libs, beliefs, goal, only, *abstract_only, bounds.bounds()).map(CliOutput::ok),
        Command::Verify {
            libs,
            beliefs,
            target,
            mode,
            traces,
            bounds,
        } => verify_cmd(libs, beliefs, target.as_deref(), *mode, *traces, bounds.bounds()),
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput::ok(text)
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        Err(Failure(code, message)) => CliOutput::fail(code, message),
    }
}
