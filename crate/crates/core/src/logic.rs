//! Function-free first-order layer: terms, atoms, literals, formulas,
//! substitutions, unification and closed-world belief bases.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("formula is not ground: {0}")]
    NonGroundFormula(String),
    #[error("belief atom is not ground: {0}")]
    NonGroundAtom(String),
}

/// A flat term. Variables and constants live in disjoint namespaces; the
/// canonical rendering prefixes variables with `?`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }

    pub fn apply(&self, s: &Substitution) -> Term {
        match self {
            Term::Var(v) => s.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Const(_) => self.clone(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "?{v}"),
            Term::Const(c) => f.write_str(c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            pred: pred.into(),
            args,
        }
    }

    /// Shorthand used heavily in tests: `?x` becomes a variable, anything
    /// else a constant.
    pub fn parse_args(pred: &str, args: &[&str]) -> Self {
        Atom::new(
            pred,
            args.iter()
                .map(|a| match a.strip_prefix('?') {
                    Some(v) => Term::var(v),
                    None => Term::constant(*a),
                })
                .collect(),
        )
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_var())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.pred)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            positive: true,
            atom,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            positive: false,
            atom,
        }
    }

    pub fn complement(&self) -> Literal {
        Literal {
            positive: !self.positive,
            atom: self.atom.clone(),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "(not {})", self.atom)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Lit(Literal),
    Eq(Term, Term),
    Neq(Term, Term),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn atom(atom: Atom) -> Self {
        Formula::Lit(Literal::pos(atom))
    }

    /// Conjunction; an empty list collapses to `true`, a singleton to its
    /// only member.
    pub fn and(mut parts: Vec<Formula>) -> Self {
        match parts.len() {
            0 => Formula::True,
            1 => parts.pop().unwrap(),
            _ => Formula::And(parts),
        }
    }

    pub fn or(mut parts: Vec<Formula>) -> Self {
        match parts.len() {
            0 => Formula::False,
            1 => parts.pop().unwrap(),
            _ => Formula::Or(parts),
        }
    }

    /// Literals occurring anywhere in the formula, in syntactic order.
    pub fn literals(&self) -> Vec<&Literal> {
        let mut out = Vec::new();
        self.walk_literals(&mut out);
        out
    }

    fn walk_literals<'a>(&'a self, out: &mut Vec<&'a Literal>) {
        match self {
            Formula::Lit(l) => out.push(l),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.walk_literals(out)),
            _ => {}
        }
    }

    /// Disjunctive normal form as a list of conjunctions of non-connective
    /// formulas (literals, equalities, constants `true`/`false`).
    pub fn dnf(&self) -> Vec<Vec<Formula>> {
        match self {
            Formula::And(fs) => {
                let mut acc: Vec<Vec<Formula>> = vec![vec![]];
                for f in fs {
                    let sub = f.dnf();
                    let mut next = Vec::with_capacity(acc.len() * sub.len());
                    for a in &acc {
                        for b in &sub {
                            let mut c = a.clone();
                            c.extend(b.iter().cloned());
                            next.push(c);
                        }
                    }
                    acc = next;
                }
                acc
            }
            Formula::Or(fs) => fs.iter().flat_map(|f| f.dnf()).collect(),
            other => vec![vec![other.clone()]],
        }
    }

    pub fn apply(&self, s: &Substitution) -> Formula {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Lit(l) => Formula::Lit(l.apply(s)),
            Formula::Eq(a, b) => Formula::Eq(a.apply(s), b.apply(s)),
            Formula::Neq(a, b) => Formula::Neq(a.apply(s), b.apply(s)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.apply(s)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.apply(s)).collect()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Lit(l) => write!(f, "{l}"),
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::Neq(a, b) => write!(f, "(!= {a} {b})"),
            Formula::And(fs) | Formula::Or(fs) => {
                f.write_str(if matches!(self, Formula::And(_)) {
                    "(and"
                } else {
                    "(or"
                })?;
                for sub in fs {
                    write!(f, " {sub}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A finite mapping from variable names to terms. Trivial bindings `x/x`
/// are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    bindings: BTreeMap<String, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, Term)>,
        S: Into<String>,
    {
        let mut s = Substitution::new();
        for (v, t) in pairs {
            s.bind(v, t);
        }
        s
    }

    pub fn bind(&mut self, var: impl Into<String>, term: Term) {
        let var = var.into();
        if term == Term::Var(var.clone()) {
            self.bindings.remove(&var);
        } else {
            self.bindings.insert(var, term);
        }
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.bindings.iter()
    }

    /// `self` followed by `other`: applying the result equals applying
    /// `self` then `other`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in &self.bindings {
            out.bind(v.clone(), t.apply(other));
        }
        for (v, t) in &other.bindings {
            if !self.bindings.contains_key(v) {
                out.bind(v.clone(), t.clone());
            }
        }
        out
    }

    pub fn is_ground(&self) -> bool {
        self.bindings.values().all(|t| !t.is_var())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "?{v}/{t}")?;
        }
        f.write_str("}")
    }
}

/// Anything that carries variables and can be rewritten by a substitution.
pub trait Symbolic: Sized {
    fn apply(&self, s: &Substitution) -> Self;
    fn collect_vars(&self, out: &mut BTreeSet<String>);

    fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }
}

impl Symbolic for Term {
    fn apply(&self, s: &Substitution) -> Self {
        Term::apply(self, s)
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        if let Term::Var(v) = self {
            out.insert(v.clone());
        }
    }
}

impl Symbolic for Atom {
    fn apply(&self, s: &Substitution) -> Self {
        Atom {
            pred: self.pred.clone(),
            args: self.args.iter().map(|t| t.apply(s)).collect(),
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        self.args.iter().for_each(|t| t.collect_vars(out));
    }
}

impl Symbolic for Literal {
    fn apply(&self, s: &Substitution) -> Self {
        Literal {
            positive: self.positive,
            atom: self.atom.apply(s),
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        self.atom.collect_vars(out);
    }
}

impl Symbolic for Formula {
    fn apply(&self, s: &Substitution) -> Self {
        Formula::apply(self, s)
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Lit(l) => l.collect_vars(out),
            Formula::Eq(a, b) | Formula::Neq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_vars(out)),
        }
    }
}

impl<T: Symbolic> Symbolic for Vec<T> {
    fn apply(&self, s: &Substitution) -> Self {
        self.iter().map(|x| x.apply(s)).collect()
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        self.iter().for_each(|x| x.collect_vars(out));
    }
}

impl<T: Symbolic + Ord> Symbolic for BTreeSet<T> {
    fn apply(&self, s: &Substitution) -> Self {
        self.iter().map(|x| x.apply(s)).collect()
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        self.iter().for_each(|x| x.collect_vars(out));
    }
}

/// Triangular binding store used while unifying; resolved to an idempotent
/// [`Substitution`] at the end.
struct Unifier {
    map: BTreeMap<String, Term>,
}

impl Unifier {
    fn walk(&self, t: &Term) -> Term {
        let mut cur = t.clone();
        while let Term::Var(v) = &cur {
            match self.map.get(v) {
                Some(next) => cur = next.clone(),
                None => break,
            }
        }
        cur
    }

    fn unify(&mut self, a: &Term, b: &Term) -> bool {
        let (a, b) = (self.walk(a), self.walk(b));
        if a == b {
            return true;
        }
        match (&a, &b) {
            (Term::Var(v), _) => {
                self.map.insert(v.clone(), b);
                true
            }
            (_, Term::Var(v)) => {
                self.map.insert(v.clone(), a);
                true
            }
            _ => false,
        }
    }

    fn finish(self) -> Substitution {
        let mut out = Substitution::new();
        for v in self.map.keys() {
            out.bind(v.clone(), self.walk(&Term::Var(v.clone())));
        }
        out
    }
}

/// Most general unifier of two term sequences of equal length. When two
/// variables meet, the one from the left sequence is bound to the right.
pub fn mgu_terms(a: &[Term], b: &[Term]) -> Option<Substitution> {
    if a.len() != b.len() {
        return None;
    }
    let mut u = Unifier {
        map: BTreeMap::new(),
    };
    for (x, y) in a.iter().zip(b) {
        if !u.unify(x, y) {
            return None;
        }
    }
    Some(u.finish())
}

pub fn mgu_atoms(a: &Atom, b: &Atom) -> Option<Substitution> {
    if a.pred != b.pred {
        return None;
    }
    mgu_terms(&a.args, &b.args)
}

pub fn mgu_literals(a: &Literal, b: &Literal) -> Option<Substitution> {
    if a.positive != b.positive {
        return None;
    }
    mgu_atoms(&a.atom, &b.atom)
}

/// One-way matching: a substitution over `pattern`'s variables only with
/// `pattern·θ == instance`.
pub fn match_literal(pattern: &Literal, instance: &Literal) -> Option<Substitution> {
    if pattern.positive != instance.positive
        || pattern.atom.pred != instance.atom.pred
        || pattern.atom.args.len() != instance.atom.args.len()
    {
        return None;
    }
    let mut s = Substitution::new();
    for (p, i) in pattern.atom.args.iter().zip(&instance.atom.args) {
        match p {
            Term::Const(_) => {
                if p != i {
                    return None;
                }
            }
            Term::Var(v) => match s.get(v) {
                Some(bound) if bound != i => return None,
                Some(_) => {}
                None => {
                    // bind() drops x/x, so keep the identity visible here
                    s.bindings.insert(v.clone(), i.clone());
                }
            },
        }
    }
    s.bindings.retain(|v, t| *t != Term::Var(v.clone()));
    Some(s)
}

/// Renames every variable of `value` that occurs in `avoid` to a fresh name
/// `<name><n>` with the smallest `n >= 1` not in `avoid`, not already a
/// variable of `value`, and not chosen for another variable. Variables
/// outside `avoid` keep their names. The renaming is injective.
pub fn rename_apart<T: Symbolic>(value: &T, avoid: &BTreeSet<String>) -> (T, Substitution) {
    let own = value.vars();
    let mut taken: BTreeSet<String> = avoid.union(&own).cloned().collect();
    let mut s = Substitution::new();
    for v in own.iter().filter(|v| avoid.contains(*v)) {
        let fresh = fresh_name(v, &taken);
        taken.insert(fresh.clone());
        s.bind(v.clone(), Term::Var(fresh));
    }
    (value.apply(&s), s)
}

/// Smallest `<base><n>` (n >= 1) not in `taken`, where `base` is `name`
/// without any numeric suffix.
pub fn fresh_name(name: &str, taken: &BTreeSet<String>) -> String {
    let trimmed = name.trim_end_matches(|c: char| c.is_ascii_digit());
    let base = if trimmed.is_empty() { name } else { trimmed };
    (1..)
        .map(|n| format!("{base}{n}"))
        .find(|c| !taken.contains(c))
        .unwrap()
}

/// A closed-world belief base: a finite set of ground atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BeliefBase {
    facts: BTreeSet<Atom>,
}

impl BeliefBase {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_atoms<I: IntoIterator<Item = Atom>>(atoms: I) -> Result<Self, LogicError> {
        let mut b = BeliefBase::new();
        for a in atoms {
            b.insert(a)?;
        }
        Ok(b)
    }

    pub fn insert(&mut self, atom: Atom) -> Result<bool, LogicError> {
        if !atom.is_ground() {
            return Err(LogicError::NonGroundAtom(atom.to_string()));
        }
        Ok(self.facts.insert(atom))
    }

    pub fn remove(&mut self, atom: &Atom) -> bool {
        self.facts.remove(atom)
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.facts.contains(atom)
    }

    pub fn holds(&self, lit: &Literal) -> bool {
        self.contains(&lit.atom) == lit.positive
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.facts.iter()
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }
}

impl fmt::Display for BeliefBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.facts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// Closed-world evaluation of `f·s`. Fails if anything remains unbound.
pub fn evaluate(b: &BeliefBase, f: &Formula, s: &Substitution) -> Result<bool, LogicError> {
    let g = f.apply(s);
    if !g.vars().is_empty() {
        return Err(LogicError::NonGroundFormula(g.to_string()));
    }
    Ok(eval_ground(b, &g))
}

pub(crate) fn eval_ground(b: &BeliefBase, f: &Formula) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Lit(l) => b.holds(l),
        Formula::Eq(x, y) => x == y,
        Formula::Neq(x, y) => x != y,
        Formula::And(fs) => fs.iter().all(|g| eval_ground(b, g)),
        Formula::Or(fs) => fs.iter().any(|g| eval_ground(b, g)),
    }
}

/// Every assignment of `vars` to members of `universe`, in lexicographic
/// order of (variable, constant).
pub fn groundings<'a>(
    vars: &'a [String],
    universe: &'a BTreeSet<String>,
) -> impl Iterator<Item = Substitution> + 'a {
    let consts: Vec<&String> = universe.iter().collect();
    let total = if vars.is_empty() {
        1
    } else if consts.is_empty() {
        0
    } else {
        consts.len().checked_pow(vars.len() as u32).unwrap_or(usize::MAX)
    };
    (0..total).map(move |mut idx| {
        let mut digits = vec![0usize; vars.len()];
        for d in digits.iter_mut().rev() {
            *d = idx % consts.len();
            idx /= consts.len();
        }
        Substitution::from_pairs(
            vars.iter()
                .zip(digits)
                .map(|(v, d)| (v.clone(), Term::Const(consts[d].clone()))),
        )
    })
}

/// The ground substitutions over `universe` for the free variables of `f`
/// under which `f` holds in `b`.
pub fn satisfying_groundings(
    b: &BeliefBase,
    f: &Formula,
    universe: &BTreeSet<String>,
) -> Vec<Substitution> {
    let vars: Vec<String> = f.vars().into_iter().collect();
    groundings(&vars, universe)
        .filter(|s| eval_ground(b, &f.apply(s)))
        .collect()
}

/// Whether some truth assignment to the ground atoms of `f` satisfies it.
/// Brute force; only meant for small formulas.
pub fn is_consistent_ground(f: &Formula) -> bool {
    let atoms: Vec<Atom> = f
        .literals()
        .into_iter()
        .map(|l| l.atom.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(atoms.len() < 24, "formula too large for brute-force check");
    (0u32..(1 << atoms.len())).any(|mask| {
        let b = BeliefBase {
            facts: atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, a)| a.clone())
                .collect(),
        };
        eval_ground(&b, f)
    })
}
