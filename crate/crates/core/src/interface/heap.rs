use super::compose::{composable, compose};
use super::refine::refines;
use super::{IaError, InterfaceAutomaton};
use crate::heap::{HeapError, PreorderHeap};

/// Interface automata as a preorder heap: `≤` is refinement, `μ` is
/// composition and `γ` is the mirror. The carrier is infinite, so there is
/// no enumeration.
#[derive(Debug, Clone, Copy, Default)]
pub struct IaHeap;

impl PreorderHeap for IaHeap {
    type Elem = InterfaceAutomaton;

    fn le(&self, a: &InterfaceAutomaton, b: &InterfaceAutomaton) -> bool {
        refines(a, b)
    }

    fn mu(&self, a: &InterfaceAutomaton, b: &InterfaceAutomaton) -> Result<InterfaceAutomaton, HeapError> {
        Ok(compose(a, b)?)
    }

    fn gamma(&self, a: &InterfaceAutomaton) -> InterfaceAutomaton {
        a.mirror()
    }
}

/// The largest `R` with `Q ∥ R ⪯ P`: `(P^⊥ ∥ Q)^⊥`.
///
/// Undefined when `P^⊥` and `Q` cannot be composed, and also when the
/// result cannot be composed with `Q` (it hides every hidden action of `Q`
/// and every action shared between `P^⊥` and `Q`).
pub fn ia_quotient(p: &InterfaceAutomaton, q: &InterfaceAutomaton) -> Result<InterfaceAutomaton, IaError> {
    let r = compose(&p.mirror(), q)?.mirror();
    if !composable(q, &r) {
        return Err(IaError::NotComposable("the quotient hides actions of the known component".into()));
    }
    Ok(r)
}

/// Merging, the target multiplication: `(P^⊥ ∥ Q^⊥)^⊥`.
pub fn ia_merge(p: &InterfaceAutomaton, q: &InterfaceAutomaton) -> Result<InterfaceAutomaton, IaError> {
    Ok(compose(&p.mirror(), &q.mirror())?.mirror())
}

/// Separation `P ∥ Q^⊥`, the left adjoint of merging by `Q`.
pub fn ia_separation(p: &InterfaceAutomaton, q: &InterfaceAutomaton) -> Result<InterfaceAutomaton, IaError> {
    compose(p, &q.mirror())
}
