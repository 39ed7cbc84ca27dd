//! Random and synthetic domains for property tests and benchmarks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsl::{ActionLibrary, ActionRule, Domain, PlanLibrary, PlanRule, Step};
use crate::logic::{Atom, BeliefBase, Formula, Literal, Term};

/// Seed from `PLANSUMM_SEED`, or `default` when unset or unparsable.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("PLANSUMM_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy)]
pub struct SynthConfig {
    pub max_ranks: usize,
    pub max_predicates: usize,
    pub max_constants: usize,
    pub max_rules_per_event: usize,
    pub max_body_len: usize,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            max_ranks: 3,
            max_predicates: 4,
            max_constants: 3,
            max_rules_per_event: 2,
            max_body_len: 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SynthDomain {
    pub domain: Domain,
    pub universe: BTreeSet<String>,
}

struct Vocab {
    preds: Vec<(String, usize)>,
    consts: Vec<String>,
}

impl Vocab {
    /// An argument drawn from `vars` or the constants.
    fn term(&self, rng: &mut impl Rng, vars: &[&str]) -> Term {
        if !vars.is_empty() && rng.gen_bool(0.7) {
            Term::var(*vars.choose(rng).unwrap())
        } else {
            Term::constant(self.consts.choose(rng).unwrap().clone())
        }
    }

    fn atom_of(&self, rng: &mut impl Rng, pred: &(String, usize), vars: &[&str]) -> Atom {
        Atom::new(pred.0.clone(), (0..pred.1).map(|_| self.term(rng, vars)).collect())
    }

    fn literal(&self, rng: &mut impl Rng, vars: &[&str]) -> Literal {
        let pred = self.preds.choose(rng).unwrap();
        let a = self.atom_of(rng, pred, vars);
        if rng.gen_bool(0.5) {
            Literal::pos(a)
        } else {
            Literal::neg(a)
        }
    }

    fn condition(&self, rng: &mut impl Rng, vars: &[&str], p_true: f64) -> Formula {
        if rng.gen_bool(p_true) {
            return Formula::True;
        }
        let n = rng.gen_range(1..=2);
        Formula::and((0..n).map(|_| Formula::Lit(self.literal(rng, vars))).collect())
    }
}

fn head(name: &str, arity: usize, var: &str) -> Atom {
    Atom::new(name, (0..arity).map(|_| Term::var(var)).collect())
}

/// A random acyclic domain. Actions never add and delete the same predicate,
/// so they cannot undo their own effects.
pub fn random_domain(rng: &mut impl Rng, cfg: &SynthConfig) -> SynthDomain {
    let n_consts = rng.gen_range(1..=cfg.max_constants);
    let n_preds = rng.gen_range(1..=cfg.max_predicates);
    let vocab = Vocab {
        preds: (0..n_preds).map(|i| (format!("p{i}"), rng.gen_range(0..=1))).collect(),
        consts: (0..n_consts).map(|i| format!("c{i}")).collect(),
    };

    let mut actions = Vec::new();
    for i in 0..rng.gen_range(1..=3) {
        let arity = rng.gen_range(0..=1);
        let vars: Vec<&str> = if arity == 1 { vec!["a"] } else { vec![] };
        let mut preds = vocab.preds.clone();
        preds.shuffle(rng);
        let (mut add, mut del) = (Vec::new(), Vec::new());
        for p in preds.iter().take(rng.gen_range(1..=2)) {
            let a = vocab.atom_of(rng, p, &vars);
            if rng.gen_bool(0.6) {
                add.push(a);
            } else {
                del.push(a);
            }
        }
        actions.push(ActionRule {
            head: head(&format!("act{i}"), arity, "a"),
            pre: vocab.condition(rng, &vars, 0.7),
            add,
            del,
        });
    }

    let n_ranks = rng.gen_range(1..=cfg.max_ranks);
    let mut events: Vec<Vec<(String, usize)>> = Vec::new();
    for r in 0..n_ranks {
        let n = rng.gen_range(1..=2);
        events.push((0..n).map(|i| (format!("e{r}_{i}"), rng.gen_range(0..=1))).collect());
    }

    let mut rules = Vec::new();
    for (r, level) in events.iter().enumerate() {
        for (name, arity) in level {
            let hv: Vec<&str> = if *arity == 1 { vec!["x"] } else { vec![] };
            let mut scope = hv.clone();
            scope.push("z");
            for _ in 0..rng.gen_range(1..=cfg.max_rules_per_event) {
                let context = vocab.condition(rng, &scope, 0.5);
                let len = rng.gen_range(1..=cfg.max_body_len);
                let mut body = Vec::new();
                for k in 0..len {
                    // the first step of a higher-rank rule calls down a level
                    let call_down = r > 0 && (k == 0 || rng.gen_bool(0.3));
                    let step = if call_down {
                        let lower = &events[rng.gen_range(0..r)];
                        let (ename, earity) = lower.choose(rng).unwrap();
                        Step::Event(Atom::new(
                            ename.clone(),
                            (0..*earity).map(|_| vocab.term(rng, &scope)).collect(),
                        ))
                    } else {
                        match rng.gen_range(0..10) {
                            0..=4 => {
                                let a = actions.choose(rng).unwrap();
                                Step::Act(Atom::new(
                                    a.head.pred.clone(),
                                    (0..a.head.arity()).map(|_| vocab.term(rng, &scope)).collect(),
                                ))
                            }
                            5..=6 => {
                                let p = vocab.preds.choose(rng).unwrap();
                                Step::Add(vocab.atom_of(rng, p, &scope))
                            }
                            7..=8 => {
                                let p = vocab.preds.choose(rng).unwrap();
                                Step::Del(vocab.atom_of(rng, p, &scope))
                            }
                            _ => Step::Test(Formula::Lit(vocab.literal(rng, &scope))),
                        }
                    };
                    body.push(step);
                }
                rules.push(PlanRule {
                    head: head(name, *arity, "x"),
                    context,
                    body,
                });
            }
        }
    }

    let domain = Domain::new(
        PlanLibrary::new(rules).expect("generated plan library is well formed"),
        ActionLibrary::new(actions).expect("generated action library is well formed"),
    )
    .expect("generated domain is well formed");
    SynthDomain {
        domain,
        universe: vocab.consts.into_iter().collect(),
    }
}

/// A random belief base over the domain's belief predicates.
pub fn random_beliefs(rng: &mut impl Rng, domain: &Domain, universe: &BTreeSet<String>) -> BeliefBase {
    let atoms = crate::oracle::ground_atoms(&domain.belief_predicates(), universe);
    BeliefBase::from_atoms(atoms.into_iter().filter(|_| rng.gen_bool(0.5))).expect("ground atoms")
}

/// `n` event types in a line: `e{i}(?x)` does `a{i}(?x)` and then calls
/// `e{i+1}(?x)`; each action sets its own predicate and clears the next.
pub fn chain_domain(n: usize) -> Domain {
    assert!(n > 0);
    let x = || vec![Term::var("x")];
    let actions = (0..n)
        .map(|i| ActionRule {
            head: Atom::new(format!("a{i}"), x()),
            pre: Formula::True,
            add: vec![Atom::new(format!("p{i}"), x())],
            del: vec![Atom::new(format!("p{}", i + 1), x())],
        })
        .collect();
    let rules = (0..n)
        .map(|i| {
            let mut body = vec![Step::Act(Atom::new(format!("a{i}"), x()))];
            if i + 1 < n {
                body.push(Step::Event(Atom::new(format!("e{}", i + 1), x())));
            }
            PlanRule {
                head: Atom::new(format!("e{i}"), x()),
                context: Formula::True,
                body,
            }
        })
        .collect();
    Domain::new(
        PlanLibrary::new(rules).expect("chain plans"),
        ActionLibrary::new(actions).expect("chain actions"),
    )
    .expect("chain domain")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summarize::compute_ranking;

    #[test]
    fn random_domains_are_acyclic_and_reproducible() {
        for seed in 0..50 {
            let a = random_domain(&mut rng(seed), &SynthConfig::default());
            let b = random_domain(&mut rng(seed), &SynthConfig::default());
            assert_eq!(a.domain, b.domain);
            let ranking = compute_ranking(&a.domain.plans).unwrap();
            assert!(ranking.max_rank().unwrap() < 3);
        }
    }

    #[test]
    fn chain_has_one_rule_per_event() {
        let d = chain_domain(5);
        assert_eq!(d.plans.rules().len(), 5);
        assert_eq!(compute_ranking(&d.plans).unwrap().max_rank(), Some(4));
    }
}
