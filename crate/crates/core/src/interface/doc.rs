use serde::{Deserialize, Serialize};

use super::{IaError, InterfaceAutomaton};

/// An interface automaton as written to and read from files. States and
/// steps refer to states by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IaDoc {
    pub states: Vec<String>,
    pub initial: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub hidden: Vec<String>,
    pub steps: Vec<(String, String, String)>,
}

impl IaDoc {
    pub fn from_automaton(p: &InterfaceAutomaton) -> Self {
        let name = |i: usize| p.states()[i].clone();
        IaDoc {
            states: p.states().to_vec(),
            initial: p.initial().map(name).into_iter().collect(),
            inputs: p.inputs().iter().cloned().collect(),
            outputs: p.outputs().iter().cloned().collect(),
            hidden: p.hidden().iter().cloned().collect(),
            steps: p.steps().iter().map(|(f, a, t)| (name(*f), a.clone(), name(*t))).collect(),
        }
    }

    pub fn into_automaton(self) -> Result<InterfaceAutomaton, IaError> {
        let steps: Vec<(&str, &str, &str)> =
            self.steps.iter().map(|(f, a, t)| (f.as_str(), a.as_str(), t.as_str())).collect();
        InterfaceAutomaton::new(
            &refs(&self.states),
            &refs(&self.initial),
            &refs(&self.inputs),
            &refs(&self.outputs),
            &refs(&self.hidden),
            &steps,
        )
    }
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}
