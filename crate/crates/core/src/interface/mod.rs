//! Interface automata with composition, mirror and alternating-simulation
//! refinement.
//!
//! Composition removes product states from which the automata can be driven
//! into an illegal state (a shared output not accepted by the other side)
//! without the environment's help. Refinement `Q ⪯ P` means `Q` accepts at
//! least the inputs of `P`, produces at most its outputs, and their initial
//! states are related by an alternating simulation.

mod compose;
pub mod corpus;
mod doc;
mod heap;
mod refine;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use compose::{compatible, composable, compose, illegal_states, incompatible_states, product, shared_actions};
pub use doc::IaDoc;
pub use heap::{ia_merge, ia_quotient, ia_separation, IaHeap};
pub use refine::{
    alternating_simulation, eps_closure, ext_dest, ext_enabled, extends, is_alternating_simulation, refines,
    ExtEnabled, SimulationRelation,
};

use crate::heap::HeapError;

pub type Actions = BTreeSet<String>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IaError {
    #[error("action {0} has more than one role")]
    OverlappingActions(String),
    #[error("step uses undeclared action {0}")]
    UnknownAction(String),
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("state {0} is declared twice")]
    DuplicateState(String),
    #[error("at most one initial state is allowed, found {0}")]
    TooManyInitial(usize),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("incompatible: {0}")]
    Incompatible(String),
}

impl From<IaError> for HeapError {
    fn from(e: IaError) -> Self {
        HeapError::undefined("ia", e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Input,
    Output,
    Hidden,
}

/// `⟨V, V^init, A^I, A^O, A^H, T⟩`. States are indices into `states`; steps
/// are kept sorted and free of duplicates.
#[derive(Clone, PartialEq, Eq)]
pub struct InterfaceAutomaton {
    states: Vec<String>,
    initial: Option<usize>,
    inputs: Actions,
    outputs: Actions,
    hidden: Actions,
    steps: Vec<(usize, String, usize)>,
}

fn actions<I, S>(items: I) -> Actions
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    items.into_iter().map(Into::into).collect()
}

impl InterfaceAutomaton {
    pub fn new<S: AsRef<str>>(
        states: &[S],
        initial: &[S],
        inputs: &[S],
        outputs: &[S],
        hidden: &[S],
        steps: &[(S, S, S)],
    ) -> Result<Self, IaError> {
        let names: Vec<String> = states.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(IaError::DuplicateState(n.clone()));
            }
        }
        let find = |s: &str| names.iter().position(|n| n == s).ok_or_else(|| IaError::UnknownState(s.to_string()));
        let initial: BTreeSet<usize> = initial.iter().map(|s| find(s.as_ref())).collect::<Result<_, _>>()?;
        if initial.len() > 1 {
            return Err(IaError::TooManyInitial(initial.len()));
        }
        let steps = steps
            .iter()
            .map(|(f, a, t)| Ok((find(f.as_ref())?, a.as_ref().to_string(), find(t.as_ref())?)))
            .collect::<Result<Vec<_>, IaError>>()?;
        Self::from_parts(
            names,
            initial.into_iter().next(),
            actions(inputs.iter().map(AsRef::as_ref)),
            actions(outputs.iter().map(AsRef::as_ref)),
            actions(hidden.iter().map(AsRef::as_ref)),
            steps,
        )
    }

    pub(crate) fn from_parts(
        states: Vec<String>,
        initial: Option<usize>,
        inputs: Actions,
        outputs: Actions,
        hidden: Actions,
        mut steps: Vec<(usize, String, usize)>,
    ) -> Result<Self, IaError> {
        if let Some(a) = inputs
            .intersection(&outputs)
            .chain(inputs.intersection(&hidden))
            .chain(outputs.intersection(&hidden))
            .next()
        {
            return Err(IaError::OverlappingActions(a.clone()));
        }
        let n = states.len();
        if let Some(i) = initial.filter(|i| *i >= n) {
            return Err(IaError::UnknownState(i.to_string()));
        }
        for (f, a, t) in &steps {
            if *f >= n || *t >= n {
                return Err(IaError::UnknownState(format!("{}", (*f).max(*t))));
            }
            if !inputs.contains(a) && !outputs.contains(a) && !hidden.contains(a) {
                return Err(IaError::UnknownAction(a.clone()));
            }
        }
        steps.sort();
        steps.dedup();
        Ok(InterfaceAutomaton { states, initial, inputs, outputs, hidden, steps })
    }

    /// The automaton with no states.
    pub fn empty(inputs: Actions, outputs: Actions, hidden: Actions) -> Result<Self, IaError> {
        Self::from_parts(Vec::new(), None, inputs, outputs, hidden, Vec::new())
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn initial(&self) -> Option<usize> {
        self.initial
    }

    /// Whether the automaton has an initial state.
    pub fn is_nonempty(&self) -> bool {
        self.initial.is_some()
    }

    pub fn inputs(&self) -> &Actions {
        &self.inputs
    }

    pub fn outputs(&self) -> &Actions {
        &self.outputs
    }

    pub fn hidden(&self) -> &Actions {
        &self.hidden
    }

    /// `A = A^I ∪ A^O ∪ A^H`.
    pub fn actions(&self) -> Actions {
        self.inputs.iter().chain(&self.outputs).chain(&self.hidden).cloned().collect()
    }

    pub fn has_action(&self, a: &str) -> bool {
        self.inputs.contains(a) || self.outputs.contains(a) || self.hidden.contains(a)
    }

    pub fn role(&self, a: &str) -> Option<Role> {
        if self.inputs.contains(a) {
            Some(Role::Input)
        } else if self.outputs.contains(a) {
            Some(Role::Output)
        } else if self.hidden.contains(a) {
            Some(Role::Hidden)
        } else {
            None
        }
    }

    pub fn steps(&self) -> &[(usize, String, usize)] {
        &self.steps
    }

    pub fn steps_from(&self, v: usize) -> impl Iterator<Item = (&str, usize)> {
        let start = self.steps.partition_point(|(f, _, _)| *f < v);
        self.steps[start..].iter().take_while(move |(f, _, _)| *f == v).map(|(_, a, t)| (a.as_str(), *t))
    }

    /// Actions of `role` enabled at `v`: `A^I(v)`, `A^O(v)` or `A^H(v)`.
    pub fn enabled(&self, v: usize, role: Role) -> Actions {
        self.steps_from(v).filter(|(a, _)| self.role(a) == Some(role)).map(|(a, _)| a.to_string()).collect()
    }

    /// Inputs and outputs swapped; states and steps unchanged.
    pub fn mirror(&self) -> InterfaceAutomaton {
        InterfaceAutomaton {
            states: self.states.clone(),
            initial: self.initial,
            inputs: self.outputs.clone(),
            outputs: self.inputs.clone(),
            hidden: self.hidden.clone(),
            steps: self.steps.clone(),
        }
    }

    pub fn to_doc(&self) -> IaDoc {
        IaDoc::from_automaton(self)
    }
}

impl fmt::Debug for InterfaceAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &Actions| s.iter().cloned().collect::<Vec<_>>().join(",");
        write!(
            f,
            "IA[states {:?}, init {:?}, I {{{}}}, O {{{}}}, H {{{}}}, steps [",
            self.states,
            self.initial.map(|i| &self.states[i]),
            list(&self.inputs),
            list(&self.outputs),
            list(&self.hidden),
        )?;
        for (i, (s, a, t)) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} -{}-> {}", self.states[*s], a, self.states[*t])?;
        }
        f.write_str("]]")
    }
}
