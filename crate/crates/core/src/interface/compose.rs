use std::collections::BTreeSet;

use super::{Actions, IaError, InterfaceAutomaton, Role};

/// `shared(P, Q) = (A_P^I ∩ A_Q^O) ∪ (A_P^O ∩ A_Q^I)`.
pub fn shared_actions(p: &InterfaceAutomaton, q: &InterfaceAutomaton) -> Actions {
    p.inputs().intersection(q.outputs()).chain(p.outputs().intersection(q.inputs())).cloned().collect()
}

fn composability_failure(p: &InterfaceAutomaton, q: &InterfaceAutomaton) -> Option<String> {
    if let Some(a) = p.hidden().iter().find(|a| q.has_action(a)) {
        return Some(format!("hidden action {a} of the first operand is used by the second"));
    }
    if let Some(a) = q.hidden().iter().find(|a| p.has_action(a)) {
        return Some(format!("hidden action {a} of the second operand is used by the first"));
    }
    if let Some(a) = p.outputs().intersection(q.outputs()).next() {
        return Some(format!("both operands output {a}"));
    }
    None
}

/// `A_P^H ∩ A_Q = ∅`, `A_Q^H ∩ A_P = ∅` and `A_P^O ∩ A_Q^O = ∅`.
pub fn composable(p: &InterfaceAutomaton, q: &InterfaceAutomaton) -> bool {
    composability_failure(p, q).is_none()
}

fn require_composable(p: &InterfaceAutomaton, q: &InterfaceAutomaton) -> Result<(), IaError> {
    match composability_failure(p, q) {
        Some(reason) => Err(IaError::NotComposable(reason)),
        None => Ok(()),
    }
}

fn pair_name(p: &InterfaceAutomaton, q: &InterfaceAutomaton, v: usize, u: usize) -> String {
    format!("({},{})", p.states()[v], q.states()[u])
}

/// The product `P ⊗ Q`. State `(v, u)` has index `v * |V_Q| + u`.
pub fn product(p: &InterfaceAutomaton, q: &InterfaceAutomaton) -> Result<InterfaceAutomaton, IaError> {
    require_composable(p, q)?;
    let shared = shared_actions(p, q);
    let inputs: Actions = p.inputs().union(q.inputs()).filter(|a| !shared.contains(*a)).cloned().collect();
    let outputs: Actions = p.outputs().union(q.outputs()).filter(|a| !shared.contains(*a)).cloned().collect();
    let hidden: Actions = p
        .hidden()
        .iter()
        .chain(q.hidden())
        .chain(&shared)
        .filter(|a| !inputs.contains(*a) && !outputs.contains(*a))
        .cloned()
        .collect();

    let nq = q.state_count();
    let id = |v: usize, u: usize| v * nq + u;
    let mut states = Vec::with_capacity(p.state_count() * nq);
    for v in 0..p.state_count() {
        for u in 0..nq {
            states.push(pair_name(p, q, v, u));
        }
    }
    let mut steps = Vec::new();
    for (v, a, v2) in p.steps() {
        if !q.has_action(a) {
            for u in 0..nq {
                steps.push((id(*v, u), a.clone(), id(*v2, u)));
            }
        }
    }
    for (u, a, u2) in q.steps() {
        if !p.has_action(a) {
            for v in 0..p.state_count() {
                steps.push((id(v, *u), a.clone(), id(v, *u2)));
            }
        }
    }
    for (v, a, v2) in p.steps() {
        if q.has_action(a) {
            for (u, b, u2) in q.steps() {
                if a == b {
                    steps.push((id(*v, *u), a.clone(), id(*v2, *u2)));
                }
            }
        }
    }
    let initial = p.initial().zip(q.initial()).map(|(v, u)| id(v, u));
    InterfaceAutomaton::from_parts(states, initial, inputs, outputs, hidden, steps)
}

/// Product states where a shared action is an output on one side but not an
/// enabled input on the other, as `(v, u)` index pairs.
pub fn illegal_states(p: &InterfaceAutomaton, q: &InterfaceAutomaton) -> BTreeSet<(usize, usize)> {
    let shared = shared_actions(p, q);
    let mut out = BTreeSet::new();
    for v in 0..p.state_count() {
        let (pi, po) = (p.enabled(v, Role::Input), p.enabled(v, Role::Output));
        for u in 0..q.state_count() {
            let (qi, qo) = (q.enabled(u, Role::Input), q.enabled(u, Role::Output));
            let clash =
                shared.iter().any(|a| (po.contains(a) && !qi.contains(a)) || (qo.contains(a) && !pi.contains(a)));
            if clash {
                out.insert((v, u));
            }
        }
    }
    out
}

/// The least set containing the illegal states and every product state with
/// an output or hidden step into the set.
pub fn incompatible_states(
    p: &InterfaceAutomaton,
    q: &InterfaceAutomaton,
) -> Result<BTreeSet<(usize, usize)>, IaError> {
    let prod = product(p, q)?;
    let nq = q.state_count();
    let mut bad = vec![false; prod.state_count()];
    for (v, u) in illegal_states(p, q) {
        bad[v * nq + u] = true;
    }
    let controlled: Vec<(usize, usize)> = prod
        .steps()
        .iter()
        .filter(|(_, a, _)| matches!(prod.role(a), Some(Role::Output | Role::Hidden)))
        .map(|(f, _, t)| (*f, *t))
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for &(f, t) in &controlled {
            if bad[t] && !bad[f] {
                bad[f] = true;
                changed = true;
            }
        }
    }
    Ok((0..bad.len()).filter(|i| bad[*i]).map(|i| (i / nq, i % nq)).collect())
}

/// Whether the initial product state exists and is compatible.
pub fn compatible(p: &InterfaceAutomaton, q: &InterfaceAutomaton) -> Result<bool, IaError> {
    let bad = incompatible_states(p, q)?;
    Ok(p.initial().zip(q.initial()).is_some_and(|pair| !bad.contains(&pair)))
}

/// `P ∥ Q`: the product restricted to compatible states.
pub fn compose(p: &InterfaceAutomaton, q: &InterfaceAutomaton) -> Result<InterfaceAutomaton, IaError> {
    let prod = product(p, q)?;
    let nq = q.state_count();
    let bad = incompatible_states(p, q)?;
    let Some(init) = p.initial().zip(q.initial()) else {
        return Err(IaError::Incompatible("an operand has no initial state".into()));
    };
    if bad.contains(&init) {
        return Err(IaError::Incompatible(format!(
            "initial state {} can be driven into an illegal state",
            pair_name(p, q, init.0, init.1)
        )));
    }
    let keep: Vec<usize> = (0..prod.state_count()).filter(|i| !bad.contains(&(i / nq, i % nq))).collect();
    let mut renumber = vec![usize::MAX; prod.state_count()];
    for (new, old) in keep.iter().enumerate() {
        renumber[*old] = new;
    }
    let states = keep.iter().map(|i| prod.states()[*i].clone()).collect();
    let steps = prod
        .steps()
        .iter()
        .filter(|(f, _, t)| renumber[*f] != usize::MAX && renumber[*t] != usize::MAX)
        .map(|(f, a, t)| (renumber[*f], a.clone(), renumber[*t]))
        .collect();
    InterfaceAutomaton::from_parts(
        states,
        Some(renumber[init.0 * nq + init.1]),
        prod.inputs().clone(),
        prod.outputs().clone(),
        prod.hidden().clone(),
        steps,
    )
}
