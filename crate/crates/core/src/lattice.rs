//! Finite powerset Boolean lattices: `≤` is inclusion, `μ` is intersection
//! and `γ` is complement relative to an ordered universe of atoms.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::heap::{HeapError, PreorderHeap};

/// Largest universe a [`FiniteSet`] mask can hold.
pub const MAX_ATOMS: usize = 64;

/// Largest universe whose powerset [`BooleanLattice::elements`] will enumerate.
pub const MAX_ENUMERATED_ATOMS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("universe must contain at least one atom")]
    EmptyUniverse,
    #[error("duplicate atom `{0}` in universe")]
    DuplicateAtom(String),
    #[error("universe has {0} atoms; at most {MAX_ATOMS} are supported")]
    TooManyAtoms(usize),
    #[error("`{0}` is not an atom of the universe")]
    UnknownAtom(String),
    #[error("sets are over different universes")]
    UniverseMismatch,
}

/// An ordered list of distinct atom names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    atoms: Vec<String>,
}

impl Universe {
    pub fn new<I, S>(atoms: I) -> Result<Arc<Self>, LatticeError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(LatticeError::EmptyUniverse);
        }
        if atoms.len() > MAX_ATOMS {
            return Err(LatticeError::TooManyAtoms(atoms.len()));
        }
        for (i, a) in atoms.iter().enumerate() {
            if atoms[..i].contains(a) {
                return Err(LatticeError::DuplicateAtom(a.clone()));
            }
        }
        Ok(Arc::new(Universe { atoms }))
    }

    /// A universe of the atoms `1..=n`, as used throughout the examples.
    pub fn numbered(n: usize) -> Result<Arc<Self>, LatticeError> {
        Universe::new((1..=n).map(|i| i.to_string()))
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn position(&self, atom: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == atom)
    }

    pub(crate) fn full_mask(&self) -> u64 {
        if self.atoms.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.atoms.len()) - 1
        }
    }
}

/// A subset of a [`Universe`], stored as a bit mask in universe order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    universe: Arc<Universe>,
    mask: u64,
}

impl FiniteSet {
    pub fn empty(universe: &Arc<Universe>) -> Self {
        FiniteSet { universe: Arc::clone(universe), mask: 0 }
    }

    pub fn full(universe: &Arc<Universe>) -> Self {
        FiniteSet { universe: Arc::clone(universe), mask: universe.full_mask() }
    }

    pub fn from_members<I, S>(universe: &Arc<Universe>, members: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut mask = 0;
        for m in members {
            let m = m.as_ref();
            let pos = universe.position(m).ok_or_else(|| LatticeError::UnknownAtom(m.to_string()))?;
            mask |= 1 << pos;
        }
        Ok(FiniteSet { universe: Arc::clone(universe), mask })
    }

    /// Bits beyond the universe width are dropped.
    pub fn from_mask(universe: &Arc<Universe>, mask: u64) -> Self {
        FiniteSet { universe: Arc::clone(universe), mask: mask & universe.full_mask() }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask == self.universe.full_mask()
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.universe.position(atom).is_some_and(|p| self.mask & (1 << p) != 0)
    }

    pub fn members(&self) -> Vec<&str> {
        self.universe
            .atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| self.mask & (1 << i) != 0)
            .map(|(_, a)| a.as_str())
            .collect()
    }

    pub fn same_universe(&self, other: &FiniteSet) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe
    }

    fn check(&self, other: &FiniteSet) -> Result<(), LatticeError> {
        if self.same_universe(other) {
            Ok(())
        } else {
            Err(LatticeError::UniverseMismatch)
        }
    }

    pub fn union(&self, other: &FiniteSet) -> Result<FiniteSet, LatticeError> {
        self.check(other)?;
        Ok(self.with_mask(self.mask | other.mask))
    }

    pub fn intersect(&self, other: &FiniteSet) -> Result<FiniteSet, LatticeError> {
        self.check(other)?;
        Ok(self.with_mask(self.mask & other.mask))
    }

    pub fn complement(&self) -> FiniteSet {
        self.with_mask(!self.mask & self.universe.full_mask())
    }

    pub fn is_subset(&self, other: &FiniteSet) -> Result<bool, LatticeError> {
        self.check(other)?;
        Ok(self.mask & !other.mask == 0)
    }

    pub(crate) fn with_mask(&self, mask: u64) -> FiniteSet {
        FiniteSet { universe: Arc::clone(&self.universe), mask }
    }

    pub fn to_doc(&self) -> FiniteSetDoc {
        FiniteSetDoc {
            universe: self.universe.atoms.clone(),
            members: self.members().into_iter().map(str::to_string).collect(),
        }
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members().join(","))
    }
}

/// Serialized form: `{"universe": [...], "members": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteSetDoc {
    pub universe: Vec<String>,
    pub members: Vec<String>,
}

impl FiniteSetDoc {
    pub fn into_set(self) -> Result<FiniteSet, LatticeError> {
        let universe = Universe::new(self.universe)?;
        for (i, m) in self.members.iter().enumerate() {
            if self.members[..i].contains(m) {
                return Err(LatticeError::DuplicateAtom(m.clone()));
            }
        }
        FiniteSet::from_members(&universe, &self.members)
    }
}

/// The powerset Boolean lattice of a universe as a preorder heap.
#[derive(Debug, Clone)]
pub struct BooleanLattice {
    universe: Arc<Universe>,
}

impl BooleanLattice {
    pub fn new(universe: Arc<Universe>) -> Self {
        BooleanLattice { universe }
    }

    /// Builds the heap over a list of atom names. Fails on duplicates.
    pub fn over<I, S>(atoms: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(BooleanLattice::new(Universe::new(atoms)?))
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn set<I, S>(&self, members: I) -> Result<FiniteSet, LatticeError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        FiniteSet::from_members(&self.universe, members)
    }

    pub fn join(&self, a: &FiniteSet, b: &FiniteSet) -> FiniteSet {
        a.with_mask(a.mask | b.mask)
    }
}

impl PreorderHeap for BooleanLattice {
    type Elem = FiniteSet;

    fn le(&self, a: &FiniteSet, b: &FiniteSet) -> bool {
        debug_assert!(a.same_universe(b));
        a.mask & !b.mask == 0
    }

    fn mu(&self, a: &FiniteSet, b: &FiniteSet) -> Result<FiniteSet, HeapError> {
        a.intersect(b).map_err(|e| HeapError::undefined("bool", e))
    }

    fn gamma(&self, a: &FiniteSet) -> FiniteSet {
        a.complement()
    }

    fn elements(&self) -> Option<Vec<FiniteSet>> {
        if self.universe.len() > MAX_ENUMERATED_ATOMS {
            return None;
        }
        Some((0..=self.universe.full_mask()).map(|m| FiniteSet::from_mask(&self.universe, m)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heap::{
        check_axioms, identity_probe, quotient_left, quotient_right, smallest_tau_solution, tau, CheckOptions, Law,
    };

    fn pq() -> BooleanLattice {
        BooleanLattice::over(["p", "q"]).unwrap()
    }

    #[test]
    fn duplicate_atoms_rejected() {
        assert_eq!(BooleanLattice::over(["p", "p"]).unwrap_err(), LatticeError::DuplicateAtom("p".into()));
        assert_eq!(BooleanLattice::over(Vec::<String>::new()).unwrap_err(), LatticeError::EmptyUniverse);
    }

    #[test]
    fn single_atom_carrier() {
        let h = BooleanLattice::over(["p"]).unwrap();
        let elems = h.elements().unwrap();
        assert_eq!(elems.len(), 2);
        assert_eq!(elems[0], h.set::<_, &str>([]).unwrap());
        assert_eq!(elems[1], h.set(["p"]).unwrap());
    }

    #[test]
    fn tau_is_union() {
        let h = pq();
        let p = h.set(["p"]).unwrap();
        let q = h.set(["q"]).unwrap();
        assert_eq!(tau(&h, &p, &q).unwrap(), h.set(["p", "q"]).unwrap());
        for a in h.elements().unwrap() {
            for b in h.elements().unwrap() {
                assert_eq!(tau(&h, &a, &b).unwrap(), h.join(&a, &b));
            }
        }
    }

    #[test]
    fn quotient_is_implication() {
        let h = pq();
        let p = h.set(["p"]).unwrap();
        let q = h.set(["q"]).unwrap();
        // oracle: of the four subsets x with {p} ∩ x ⊆ {q}, i.e. ∅ and {q},
        // the maximum is {q}
        assert_eq!(quotient_right(&h, &p, &q).unwrap(), q);
        for a in h.elements().unwrap() {
            for b in h.elements().unwrap() {
                let implication = h.join(&b, &a.complement());
                assert_eq!(quotient_right(&h, &a, &b).unwrap(), implication);
                assert_eq!(quotient_left(&h, &a, &b).unwrap(), implication);
            }
        }
    }

    #[test]
    fn quotient_left_single_atom() {
        let h = BooleanLattice::over(["p"]).unwrap();
        let p = h.set(["p"]).unwrap();
        let empty = FiniteSet::empty(h.universe());
        assert_eq!(quotient_left(&h, &p, &empty).unwrap(), empty);
    }

    #[test]
    fn smallest_tau_solution_example() {
        let h = pq();
        let p = h.set(["p"]).unwrap();
        let pq = h.set(["p", "q"]).unwrap();
        // x with {p,q} ⊆ {p} ∪ x: {q} and {p,q}; minimum {q}
        assert_eq!(smallest_tau_solution(&h, &p, &pq).unwrap(), h.set(["q"]).unwrap());
    }

    #[test]
    fn axioms_hold_up_to_four_atoms() {
        for n in 1..=4 {
            let h = BooleanLattice::new(Universe::numbered(n).unwrap());
            let r = check_axioms(&h, CheckOptions::default()).unwrap();
            assert!(r.is_empty(), "n={n}: {r}");
            assert_eq!(r.carrier_size, 1 << n);
        }
    }

    #[test]
    fn join_as_multiplication_breaks_left_regularity() {
        struct JoinHeap(BooleanLattice);
        impl PreorderHeap for JoinHeap {
            type Elem = FiniteSet;
            fn le(&self, a: &FiniteSet, b: &FiniteSet) -> bool {
                self.0.le(a, b)
            }
            fn mu(&self, a: &FiniteSet, b: &FiniteSet) -> Result<FiniteSet, HeapError> {
                Ok(self.0.join(a, b))
            }
            fn gamma(&self, a: &FiniteSet) -> FiniteSet {
                a.complement()
            }
            fn elements(&self) -> Option<Vec<FiniteSet>> {
                self.0.elements()
            }
        }
        let h = JoinHeap(BooleanLattice::over(["p"]).unwrap());
        let r = check_axioms(&h, CheckOptions::default()).unwrap();
        assert!(r.violated(Law::LeftRegularity));
        let p = h.0.set(["p"]).unwrap();
        let empty = FiniteSet::empty(h.0.universe());
        assert!(r
            .violations
            .iter()
            .any(|v| v.law == Law::LeftRegularity && v.witnesses == vec![p.clone(), empty.clone()]));
    }

    #[test]
    fn identity_is_top_and_bottom_for_tau() {
        let h = pq();
        let probe = identity_probe(&h, CheckOptions::default()).unwrap().unwrap();
        assert!(probe.identity.is_full());
        assert!(probe.tau_identity.is_empty());
        assert!(probe.report.is_empty());
    }

    #[test]
    fn doc_round_trip_and_validation() {
        let h = pq();
        let s = h.set(["q"]).unwrap();
        let doc = s.to_doc();
        assert_eq!(doc.members, vec!["q"]);
        assert_eq!(doc.clone().into_set().unwrap(), s);
        let bad = FiniteSetDoc { universe: vec!["p".into()], members: vec!["z".into()] };
        assert_eq!(bad.into_set().unwrap_err(), LatticeError::UnknownAtom("z".into()));
    }

    #[test]
    fn mismatched_universes_do_not_mix() {
        let a = FiniteSet::full(&Universe::new(["p"]).unwrap());
        let b = FiniteSet::full(&Universe::new(["q"]).unwrap());
        assert_eq!(a.union(&b).unwrap_err(), LatticeError::UniverseMismatch);
    }
}
