//! Seeded random interface automata.
//!
//! Specifications `P` draw actions from `i*` (inputs), `o*` (outputs) and
//! `hp*` (hidden). Known components `Q` read `c*` and possibly `o0`, write
//! `d*`, and occasionally have a hidden `hq0`. Candidate unknowns `R'` read
//! the inputs of `P` and the outputs of `Q`, and write outputs of `P` or
//! inputs of `Q`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{compose, ia_quotient, refines, Actions, IaError, InterfaceAutomaton};

/// Generator parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusConfig {
    pub max_states: usize,
    pub max_actions: usize,
    /// Probability that a given state has a step on a given action.
    pub step_probability: f64,
    /// Probability of a second, nondeterministic step on the same action.
    pub branch_probability: f64,
    /// Probability that a known component gets a hidden action.
    pub hidden_probability: f64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            max_states: 4,
            max_actions: 3,
            step_probability: 0.4,
            branch_probability: 0.15,
            hidden_probability: 0.2,
        }
    }
}

fn pick(pool: &[&str], max: usize, rng: &mut ChaCha8Rng) -> Actions {
    let n = rng.gen_range(0..=max.min(pool.len()));
    pool.choose_multiple(rng, n).map(|s| s.to_string()).collect()
}

/// A random automaton over the given action sets, with initial state `s0`.
pub fn random_over(
    inputs: &Actions,
    outputs: &Actions,
    hidden: &Actions,
    cfg: &CorpusConfig,
    rng: &mut ChaCha8Rng,
) -> InterfaceAutomaton {
    let n = rng.gen_range(1..=cfg.max_states);
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut steps = Vec::new();
    for v in 0..n {
        for a in inputs.iter().chain(outputs).chain(hidden) {
            if rng.gen_bool(cfg.step_probability) {
                steps.push((v, a.clone(), rng.gen_range(0..n)));
                if rng.gen_bool(cfg.branch_probability) {
                    steps.push((v, a.clone(), rng.gen_range(0..n)));
                }
            }
        }
    }
    InterfaceAutomaton::from_parts(states, Some(0), inputs.clone(), outputs.clone(), hidden.clone(), steps)
        .expect("generated action sets are disjoint")
}

pub fn random_specification(cfg: &CorpusConfig, rng: &mut ChaCha8Rng) -> InterfaceAutomaton {
    let inputs = pick(&["i0", "i1", "i2"], cfg.max_actions, rng);
    let outputs = pick(&["o0", "o1", "o2"], cfg.max_actions, rng);
    let hidden = pick(&["hp0", "hp1", "hp2"], cfg.max_actions.min(1), rng);
    random_over(&inputs, &outputs, &hidden, cfg, rng)
}

pub fn random_component(cfg: &CorpusConfig, rng: &mut ChaCha8Rng) -> InterfaceAutomaton {
    let inputs = pick(&["c0", "c1", "o0"], cfg.max_actions, rng);
    let outputs = pick(&["d0", "d1", "d2"], cfg.max_actions, rng);
    let hidden = if rng.gen_bool(cfg.hidden_probability) { Actions::from(["hq0".to_string()]) } else { Actions::new() };
    random_over(&inputs, &outputs, &hidden, cfg, rng)
}

/// `count` pairs `(P, Q)` of a specification and a known component.
pub fn pairs(count: usize, seed: u64, cfg: &CorpusConfig) -> Vec<(InterfaceAutomaton, InterfaceAutomaton)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (random_specification(cfg, &mut rng), random_component(cfg, &mut rng))).collect()
}

/// A refinement of `p` by construction: some output steps are dropped and
/// input steps on fresh actions `x*` are added.
pub fn weaken(p: &InterfaceAutomaton, rng: &mut ChaCha8Rng) -> InterfaceAutomaton {
    let n = p.state_count();
    let mut steps: Vec<(usize, String, usize)> =
        p.steps().iter().filter(|(_, a, _)| !p.outputs().contains(a) || rng.gen_bool(0.7)).cloned().collect();
    let mut inputs = p.inputs().clone();
    let fresh = (0..).map(|i| format!("x{i}")).find(|a| !p.has_action(a)).expect("unbounded supply of names");
    inputs.insert(fresh.clone());
    for v in 0..n {
        if rng.gen_bool(0.5) {
            steps.push((v, fresh.clone(), rng.gen_range(0..n)));
        }
    }
    InterfaceAutomaton::from_parts(
        p.states().to_vec(),
        p.initial(),
        inputs,
        p.outputs().clone(),
        p.hidden().clone(),
        steps,
    )
    .expect("fresh action is new")
}

/// Random unknowns `R'` with `Q ∥ R' ⪯ P`, at most `want` of them out of
/// `tries` attempts.
pub fn candidates(
    p: &InterfaceAutomaton,
    q: &InterfaceAutomaton,
    want: usize,
    tries: usize,
    cfg: &CorpusConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<InterfaceAutomaton> {
    let inputs: Actions = p.inputs().union(q.outputs()).cloned().collect();
    let writable: Vec<String> = p.outputs().union(q.inputs()).filter(|a| !inputs.contains(*a)).cloned().collect();
    let mut found = Vec::new();
    let mut seen = BTreeSet::new();
    let dense = CorpusConfig { step_probability: 0.6, ..*cfg };
    for _ in 0..tries {
        if found.len() >= want {
            break;
        }
        let outputs: Actions = writable.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
        let r = random_over(&inputs, &outputs, &Actions::new(), &dense, rng);
        let ok = compose(q, &r).is_ok_and(|qr| refines(&qr, p));
        if ok && seen.insert(format!("{r:?}")) {
            found.push(r);
        }
    }
    found
}

/// Why `Q ∥ R ⪯ P` failed for a computed quotient `R`.
#[derive(Debug, Clone)]
pub enum RegularityFailure {
    /// `Q ∥ R` is undefined.
    Undefined(IaError),
    /// `Q ∥ R` exists but does not refine `P`.
    NotRefining(InterfaceAutomaton),
}

#[derive(Debug, Clone)]
pub struct QuotientWitness {
    pub p: InterfaceAutomaton,
    pub q: InterfaceAutomaton,
    pub r: InterfaceAutomaton,
}

/// Results of checking the closed-form quotient on a corpus.
#[derive(Debug, Clone, Default)]
pub struct QuotientAudit {
    pub pairs: usize,
    pub defined: usize,
    pub regularity_failures: Vec<(QuotientWitness, RegularityFailure)>,
    pub candidates: usize,
    /// A sampled `R'` with `Q ∥ R' ⪯ P` but not `R' ⪯ R`.
    pub maximality_failures: Vec<(QuotientWitness, InterfaceAutomaton)>,
}

impl QuotientAudit {
    pub fn holds(&self) -> bool {
        self.regularity_failures.is_empty() && self.maximality_failures.is_empty()
    }
}

/// Checks `Q ∥ R ⪯ P` for every pair whose quotient `R` is defined, then
/// samples up to `budget` candidates `R'`, at most one per pair, and checks
/// `R' ⪯ R` for each.
pub fn audit_quotients(
    pairs: &[(InterfaceAutomaton, InterfaceAutomaton)],
    budget: usize,
    cfg: &CorpusConfig,
    seed: u64,
) -> QuotientAudit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut audit = QuotientAudit { pairs: pairs.len(), ..QuotientAudit::default() };
    for (p, q) in pairs {
        let Ok(r) = ia_quotient(p, q) else { continue };
        audit.defined += 1;
        let witness = || QuotientWitness { p: p.clone(), q: q.clone(), r: r.clone() };
        match compose(q, &r) {
            Ok(qr) if refines(&qr, p) => {}
            Ok(qr) => audit.regularity_failures.push((witness(), RegularityFailure::NotRefining(qr))),
            Err(e) => audit.regularity_failures.push((witness(), RegularityFailure::Undefined(e))),
        }
        if audit.candidates < budget {
            for c in candidates(p, q, 1, 300, cfg, &mut rng) {
                audit.candidates += 1;
                if !refines(&c, &r) {
                    audit.maximality_failures.push((witness(), c));
                }
            }
        }
    }
    audit
}
