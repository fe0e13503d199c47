use std::collections::{BTreeSet, VecDeque};

use super::{Actions, IaError, InterfaceAutomaton, Role};

fn check_state(p: &InterfaceAutomaton, v: usize) -> Result<(), IaError> {
    if v < p.state_count() {
        Ok(())
    } else {
        Err(IaError::UnknownState(v.to_string()))
    }
}

/// `ε-closure(v)`: the states reachable from `v` by hidden steps.
pub fn eps_closure(p: &InterfaceAutomaton, v: usize) -> Result<BTreeSet<usize>, IaError> {
    check_state(p, v)?;
    let mut seen = BTreeSet::from([v]);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for (a, t) in p.steps_from(u) {
            if p.role(a) == Some(Role::Hidden) && seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
    Ok(seen)
}

/// Externally enabled actions at a state.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExtEnabled {
    pub inputs: Actions,
    pub outputs: Actions,
}

/// `exten^I(v)` and `exten^O(v)`: inputs and outputs enabled somewhere in
/// the ε-closure of `v`.
pub fn ext_enabled(p: &InterfaceAutomaton, v: usize) -> Result<ExtEnabled, IaError> {
    let mut out = ExtEnabled::default();
    for u in eps_closure(p, v)? {
        out.inputs.extend(p.enabled(u, Role::Input));
        out.outputs.extend(p.enabled(u, Role::Output));
    }
    Ok(out)
}

/// `extdest(v, a)`: targets of `a`-steps leaving the ε-closure of `v`.
pub fn ext_dest(p: &InterfaceAutomaton, v: usize, a: &str) -> Result<BTreeSet<usize>, IaError> {
    let closure = eps_closure(p, v)?;
    if !matches!(p.role(a), Some(Role::Input | Role::Output)) {
        return Err(IaError::UnknownAction(a.to_string()));
    }
    Ok(closure.iter().flat_map(|u| p.steps_from(*u)).filter(|(b, _)| *b == a).map(|(_, t)| t).collect())
}

/// A relation between the states of `Q` (left) and `P` (right).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimulationRelation {
    pairs: BTreeSet<(usize, usize)>,
}

impl SimulationRelation {
    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.pairs.contains(&(u, v))
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs written with state names.
    pub fn named(&self, q: &InterfaceAutomaton, p: &InterfaceAutomaton) -> Vec<(String, String)> {
        self.pairs.iter().map(|(u, v)| (q.states()[*u].clone(), p.states()[*v].clone())).collect()
    }
}

struct Local {
    ext: Vec<ExtEnabled>,
    /// `dest[state][action] = extdest(state, action)` for externally enabled actions.
    dest: Vec<std::collections::BTreeMap<String, BTreeSet<usize>>>,
}

fn local(p: &InterfaceAutomaton) -> Local {
    let mut ext = Vec::with_capacity(p.state_count());
    let mut dest = Vec::with_capacity(p.state_count());
    for v in 0..p.state_count() {
        let e = ext_enabled(p, v).expect("state in range");
        let d = e
            .inputs
            .iter()
            .chain(&e.outputs)
            .map(|a| (a.clone(), ext_dest(p, v, a).expect("externally enabled action")))
            .collect();
        ext.push(e);
        dest.push(d);
    }
    Local { ext, dest }
}

/// The greatest alternating simulation from `Q` to `P`: start from the pairs
/// satisfying condition (a), then repeatedly drop pairs violating (b).
pub fn alternating_simulation(q: &InterfaceAutomaton, p: &InterfaceAutomaton) -> SimulationRelation {
    let lq = local(q);
    let lp = local(p);
    let mut rel: BTreeSet<(usize, usize)> = BTreeSet::new();
    for u in 0..q.state_count() {
        for v in 0..p.state_count() {
            let (eq, ep) = (&lq.ext[u], &lp.ext[v]);
            if ep.inputs.is_subset(&eq.inputs) && eq.outputs.is_subset(&ep.outputs) {
                rel.insert((u, v));
            }
        }
    }
    let empty = BTreeSet::new();
    loop {
        let failing: Vec<(usize, usize)> = rel
            .iter()
            .copied()
            .filter(|&(u, v)| {
                let outputs_matched = lq.ext[u].outputs.iter().all(|a| {
                    let targets = lp.dest[v].get(a).unwrap_or(&empty);
                    lq.dest[u][a].iter().all(|u2| targets.iter().any(|v2| rel.contains(&(*u2, *v2))))
                });
                let inputs_matched = lp.ext[v].inputs.iter().all(|a| {
                    let sources = lq.dest[u].get(a).unwrap_or(&empty);
                    lp.dest[v][a].iter().all(|v2| sources.iter().any(|u2| rel.contains(&(*u2, *v2))))
                });
                !(outputs_matched && inputs_matched)
            })
            .collect();
        if failing.is_empty() {
            break;
        }
        for pair in failing {
            rel.remove(&pair);
        }
    }
    SimulationRelation { pairs: rel }
}

/// `Q ⪯ P`: `A_P^I ⊆ A_Q^I`, `A_P^O ⊇ A_Q^O`, and the initial states are
/// related by the greatest alternating simulation. False when either
/// automaton has no initial state.
pub fn refines(q: &InterfaceAutomaton, p: &InterfaceAutomaton) -> bool {
    if !p.inputs().is_subset(q.inputs()) || !q.outputs().is_subset(p.outputs()) {
        return false;
    }
    match (q.initial(), p.initial()) {
        (Some(u), Some(v)) => alternating_simulation(q, p).contains(u, v),
        _ => false,
    }
}

/// Whether `rel` satisfies conditions (a) and (b) of an alternating
/// simulation from `Q` to `P`.
pub fn is_alternating_simulation(rel: &SimulationRelation, q: &InterfaceAutomaton, p: &InterfaceAutomaton) -> bool {
    rel.pairs.iter().all(|&(u, v)| pair_ok(rel, q, p, u, v))
}

fn pair_ok(rel: &SimulationRelation, q: &InterfaceAutomaton, p: &InterfaceAutomaton, u: usize, v: usize) -> bool {
    let (Ok(eq), Ok(ep)) = (ext_enabled(q, u), ext_enabled(p, v)) else {
        return false;
    };
    if !ep.inputs.is_subset(&eq.inputs) || !eq.outputs.is_subset(&ep.outputs) {
        return false;
    }
    let dest = |m: &InterfaceAutomaton, s: usize, a: &str| ext_dest(m, s, a).unwrap_or_default();
    eq.outputs.iter().all(|a| {
        let targets = dest(p, v, a);
        dest(q, u, a).iter().all(|u2| targets.iter().any(|v2| rel.contains(*u2, *v2)))
    }) && ep.inputs.iter().all(|a| {
        let sources = dest(q, u, a);
        dest(p, v, a).iter().all(|v2| sources.iter().any(|u2| rel.contains(*u2, *v2)))
    })
}

/// Whether the pair `(u, v)` could be added to `rel` and keep it an
/// alternating simulation; the greatest one admits no such pair.
pub fn extends(rel: &SimulationRelation, q: &InterfaceAutomaton, p: &InterfaceAutomaton, u: usize, v: usize) -> bool {
    let mut bigger = rel.clone();
    bigger.pairs.insert((u, v));
    is_alternating_simulation(&bigger, q, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[&str]) -> Actions {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn ia(
        states: &[&str],
        inputs: &[&str],
        outputs: &[&str],
        hidden: &[&str],
        steps: &[(&str, &str, &str)],
    ) -> InterfaceAutomaton {
        InterfaceAutomaton::new(states, &states[..1], inputs, outputs, hidden, steps).unwrap()
    }

    #[test]
    fn closure_follows_hidden_steps_only() {
        let p =
            ia(&["v0", "v1", "v2"], &["i"], &["o"], &["h"], &[("v0", "h", "v1"), ("v1", "o", "v2"), ("v0", "i", "v2")]);
        assert_eq!(eps_closure(&p, 0).unwrap(), BTreeSet::from([0, 1]));
        assert_eq!(eps_closure(&p, 2).unwrap(), BTreeSet::from([2]));
        let e = ext_enabled(&p, 0).unwrap();
        assert_eq!(e.outputs, set(&["o"]));
        assert_eq!(e.inputs, set(&["i"]));
        assert!(eps_closure(&p, 7).is_err());
    }

    #[test]
    fn ext_dest_collects_from_the_whole_closure() {
        let p = ia(
            &["v0", "v1", "w0", "w1"],
            &[],
            &["o"],
            &["h"],
            &[("v0", "h", "v1"), ("v0", "o", "w0"), ("v1", "o", "w1")],
        );
        assert_eq!(ext_dest(&p, 0, "o").unwrap(), BTreeSet::from([2, 3]));
        assert_eq!(ext_dest(&p, 1, "o").unwrap(), BTreeSet::from([3]));
        assert!(ext_dest(&p, 0, "h").is_err());
    }

    #[test]
    fn identical_automata_contain_the_diagonal() {
        let p = ia(&["v0", "v1"], &["i"], &["o"], &["h"], &[("v0", "i", "v1"), ("v1", "h", "v0"), ("v1", "o", "v1")]);
        let rel = alternating_simulation(&p, &p);
        for v in 0..2 {
            assert!(rel.contains(v, v));
        }
        assert!(refines(&p, &p));
    }

    #[test]
    fn condition_a_in_both_directions() {
        let with_input = ia(&["u"], &["i"], &[], &[], &[("u", "i", "u")]);
        let without = ia(&["v"], &["i"], &[], &[], &[]);
        // More enabled inputs on the refining side is allowed, fewer is not.
        assert!(alternating_simulation(&with_input, &without).contains(0, 0));
        assert!(!alternating_simulation(&without, &with_input).contains(0, 0));

        let emits = ia(&["u"], &[], &["o"], &[], &[("u", "o", "u")]);
        let silent = ia(&["v"], &[], &["o"], &[], &[]);
        assert!(alternating_simulation(&silent, &emits).contains(0, 0));
        assert!(!alternating_simulation(&emits, &silent).contains(0, 0));
    }

    #[test]
    fn result_is_the_greatest_simulation() {
        let q =
            ia(&["u0", "u1", "u2"], &["i"], &["o"], &[], &[("u0", "i", "u1"), ("u0", "i", "u2"), ("u1", "o", "u0")]);
        let p = ia(&["v0", "v1"], &["i"], &["o"], &[], &[("v0", "i", "v1"), ("v1", "o", "v0")]);
        let rel = alternating_simulation(&q, &p);
        assert!(is_alternating_simulation(&rel, &q, &p));
        for u in 0..q.state_count() {
            for v in 0..p.state_count() {
                if !rel.contains(u, v) {
                    assert!(!extends(&rel, &q, &p, u, v), "({u},{v}) could be added");
                }
            }
        }
    }

    #[test]
    fn refinement_checks_action_sets_and_initial_states() {
        let p = ia(&["v"], &["i"], &["o"], &[], &[]);
        let extra_output = ia(&["v"], &["i"], &["o", "z"], &[], &[]);
        assert!(!refines(&extra_output, &p), "outputs of Q must be outputs of P");
        let extra_input = ia(&["v"], &["i", "z"], &["o"], &[], &[]);
        assert!(refines(&extra_input, &p));
        let empty = InterfaceAutomaton::empty(set(&["i"]), set(&["o"]), Actions::new()).unwrap();
        assert!(!refines(&empty, &p));
        assert!(!refines(&p, &empty));
    }
}
