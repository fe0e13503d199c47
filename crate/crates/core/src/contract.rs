//! Assume-guarantee contracts over a finite behavior universe.
//!
//! A contract `(A, G)` must cover the universe: `A ∪ G = B`. Refinement is
//! `G ⊆ G'` and `A ⊇ A'`, the involution swaps the pair, and composition is
//! `(A ∩ A' ∪ ¬(G ∩ G'), G ∩ G')`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::heap::{HeapError, PreorderHeap};
use crate::lattice::{FiniteSet, LatticeError, Universe};

/// Largest universe whose `3^n` contracts [`ContractHeap::elements`] enumerates.
pub const MAX_ENUMERATED_BEHAVIORS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractError {
    #[error("assumptions and guarantees do not cover the universe (missing {missing:?})")]
    NotCovering { missing: Vec<String> },
    #[error("contracts are over different universes")]
    UniverseMismatch,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Contract {
    universe: Arc<Universe>,
    assumptions: u64,
    guarantees: u64,
}

impl Contract {
    /// Rejects pairs with `A ∪ G ≠ B`; see [`Contract::saturate`] for the
    /// repairing constructor.
    pub fn new(assumptions: &FiniteSet, guarantees: &FiniteSet) -> Result<Self, ContractError> {
        if !assumptions.same_universe(guarantees) {
            return Err(ContractError::UniverseMismatch);
        }
        let universe = Arc::clone(assumptions.universe());
        let covered = assumptions.mask() | guarantees.mask();
        if covered != universe.full_mask() {
            let missing = FiniteSet::from_mask(&universe, !covered).members().into_iter().map(str::to_string).collect();
            return Err(ContractError::NotCovering { missing });
        }
        Ok(Contract { universe, assumptions: assumptions.mask(), guarantees: guarantees.mask() })
    }

    /// Builds `(A, G ∪ ¬A)`, which always covers the universe.
    pub fn saturate(assumptions: &FiniteSet, guarantees: &FiniteSet) -> Result<Self, ContractError> {
        let g = guarantees.union(&assumptions.complement()).map_err(|_| ContractError::UniverseMismatch)?;
        Contract::new(assumptions, &g)
    }

    /// The top-of-the-identity contract `(B, B)`.
    pub fn full(universe: &Arc<Universe>) -> Self {
        Contract { universe: Arc::clone(universe), assumptions: universe.full_mask(), guarantees: universe.full_mask() }
    }

    fn raw(universe: &Arc<Universe>, assumptions: u64, guarantees: u64) -> Self {
        debug_assert_eq!(assumptions | guarantees, universe.full_mask());
        Contract { universe: Arc::clone(universe), assumptions, guarantees }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn assumptions(&self) -> FiniteSet {
        FiniteSet::from_mask(&self.universe, self.assumptions)
    }

    pub fn guarantees(&self) -> FiniteSet {
        FiniteSet::from_mask(&self.universe, self.guarantees)
    }

    fn check(&self, other: &Contract) -> Result<(), ContractError> {
        if Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe {
            Ok(())
        } else {
            Err(ContractError::UniverseMismatch)
        }
    }

    fn full_mask(&self) -> u64 {
        self.universe.full_mask()
    }

    /// `self ≤ other`: `G ⊆ G'` and `A ⊇ A'`.
    pub fn refines(&self, other: &Contract) -> Result<bool, ContractError> {
        self.check(other)?;
        Ok(self.refines_unchecked(other))
    }

    fn refines_unchecked(&self, other: &Contract) -> bool {
        self.guarantees & !other.guarantees == 0 && other.assumptions & !self.assumptions == 0
    }

    pub fn reciprocal(&self) -> Contract {
        Contract::raw(&self.universe, self.guarantees, self.assumptions)
    }

    pub fn compose(&self, other: &Contract) -> Result<Contract, ContractError> {
        self.check(other)?;
        let g = self.guarantees & other.guarantees;
        let a = (self.assumptions & other.assumptions) | (!g & self.full_mask());
        Ok(Contract::raw(&self.universe, a, g))
    }

    /// Merging `(A ∩ A', G ∩ G' ∪ ¬(A ∩ A'))`, the target multiplication.
    pub fn merge(&self, other: &Contract) -> Result<Contract, ContractError> {
        self.check(other)?;
        let a = self.assumptions & other.assumptions;
        let g = (self.guarantees & other.guarantees) | (!a & self.full_mask());
        Ok(Contract::raw(&self.universe, a, g))
    }

    /// Largest `X` with `other ∥ X ≤ self`: `(A ∩ G', G ∩ A' ∪ ¬(A ∩ G'))`.
    pub fn quotient(&self, other: &Contract) -> Result<Contract, ContractError> {
        self.check(other)?;
        let a = self.assumptions & other.guarantees;
        let g = (self.guarantees & other.assumptions) | (!a & self.full_mask());
        Ok(Contract::raw(&self.universe, a, g))
    }

    /// Smallest `X` with `self ≤ merge(other, X)`:
    /// `(A ∩ G' ∪ ¬(G ∩ A'), G ∩ A')`.
    pub fn separation(&self, other: &Contract) -> Result<Contract, ContractError> {
        self.check(other)?;
        let g = self.guarantees & other.assumptions;
        let a = (self.assumptions & other.guarantees) | (!g & self.full_mask());
        Ok(Contract::raw(&self.universe, a, g))
    }

    pub fn to_doc(&self) -> ContractDoc {
        let names = |s: FiniteSet| s.members().into_iter().map(str::to_string).collect();
        ContractDoc {
            universe: self.universe.atoms().to_vec(),
            assumptions: names(self.assumptions()),
            guarantees: names(self.guarantees()),
        }
    }
}

impl fmt::Debug for Contract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.assumptions(), self.guarantees())
    }
}

/// Serialized form: `{"universe": [...], "assumptions": [...], "guarantees": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractDoc {
    pub universe: Vec<String>,
    pub assumptions: Vec<String>,
    pub guarantees: Vec<String>,
}

impl ContractDoc {
    pub fn into_contract(self) -> Result<Contract, ContractError> {
        let universe = Universe::new(self.universe)?;
        let a = FiniteSet::from_members(&universe, &self.assumptions)?;
        let g = FiniteSet::from_members(&universe, &self.guarantees)?;
        Contract::new(&a, &g)
    }

    /// Parses against an already-built universe, which must list the same atoms.
    pub fn into_contract_over(self, universe: &Arc<Universe>) -> Result<Contract, ContractError> {
        if universe.atoms() != self.universe.as_slice() {
            return Err(ContractError::UniverseMismatch);
        }
        let a = FiniteSet::from_members(universe, &self.assumptions)?;
        let g = FiniteSet::from_members(universe, &self.guarantees)?;
        Contract::new(&a, &g)
    }
}

/// AG contracts over one universe as a preorder heap.
#[derive(Debug, Clone)]
pub struct ContractHeap {
    universe: Arc<Universe>,
}

impl ContractHeap {
    pub fn new(universe: Arc<Universe>) -> Self {
        ContractHeap { universe }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// Convenience constructor from member lists.
    pub fn contract(&self, assumptions: &[&str], guarantees: &[&str]) -> Result<Contract, ContractError> {
        let a = FiniteSet::from_members(&self.universe, assumptions)?;
        let g = FiniteSet::from_members(&self.universe, guarantees)?;
        Contract::new(&a, &g)
    }
}

impl PreorderHeap for ContractHeap {
    type Elem = Contract;

    fn le(&self, a: &Contract, b: &Contract) -> bool {
        a.refines_unchecked(b)
    }

    fn mu(&self, a: &Contract, b: &Contract) -> Result<Contract, HeapError> {
        a.compose(b).map_err(|e| HeapError::undefined("agc", e))
    }

    fn gamma(&self, a: &Contract) -> Contract {
        a.reciprocal()
    }

    /// Every behavior is in `A` only, `G` only, or both: `3^|B|` contracts.
    fn elements(&self) -> Option<Vec<Contract>> {
        let n = self.universe.len();
        if n > MAX_ENUMERATED_BEHAVIORS {
            return None;
        }
        let mut out = Vec::with_capacity(3usize.pow(n as u32));
        for code in 0..3usize.pow(n as u32) {
            let (mut a, mut g, mut c) = (0u64, 0u64, code);
            for bit in 0..n {
                match c % 3 {
                    0 => a |= 1 << bit,
                    1 => g |= 1 << bit,
                    _ => {
                        a |= 1 << bit;
                        g |= 1 << bit;
                    }
                }
                c /= 3;
            }
            out.push(Contract::raw(&self.universe, a, g));
        }
        Some(out)
    }
}
