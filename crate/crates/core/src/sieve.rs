//! Sieved heaps: a family of heaps indexed by a finite set-union semilattice,
//! with concretization maps into larger indices, assembled into a single
//! preorder heap.
//!
//! An element of the composite lives at some index. Two elements meet at the
//! join of their indices: both are concretized there and the local heap does
//! the work.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::heap::{check_axioms_on, AxiomReport, CheckOptions, HeapError, Law, PreorderHeap};

/// A finite set of identifiers; the semilattice join is set union.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SieveIndex(BTreeSet<String>);

impl SieveIndex {
    pub fn new<I, S>(ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        SieveIndex(ids.into_iter().map(Into::into).collect())
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.0.contains(id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn join(&self, other: &SieveIndex) -> SieveIndex {
        SieveIndex(self.0.union(&other.0).cloned().collect())
    }

    /// `self ≤ other` in the semilattice order.
    pub fn is_below(&self, other: &SieveIndex) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn difference(&self, other: &SieveIndex) -> SieveIndex {
        SieveIndex(self.0.difference(&other.0).cloned().collect())
    }
}

impl fmt::Display for SieveIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.ids().collect::<Vec<_>>().join(","))
    }
}

/// A family of heaps `P_x` over a finite index semilattice together with
/// concretizations `ι : P_x → P_y` for `x ≤ y`.
pub trait Sieve {
    type Elem: Clone + fmt::Debug;

    /// Every index of the family. Must be closed under join.
    fn indices(&self) -> Vec<SieveIndex>;

    fn le_at(&self, index: &SieveIndex, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn mu_at(&self, index: &SieveIndex, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn gamma_at(&self, index: &SieveIndex, a: &Self::Elem) -> Self::Elem;

    /// Maps an element of `P_from` into `P_to`; `from` must be below `to`.
    fn concretize(&self, from: &SieveIndex, to: &SieveIndex, a: &Self::Elem) -> Result<Self::Elem, HeapError>;

    /// Whether `a` is a well-formed element of `P_index`.
    fn belongs(&self, index: &SieveIndex, a: &Self::Elem) -> bool;

    /// A finite sample of `P_index` used by the law checker.
    fn sample_at(&self, index: &SieveIndex) -> Option<Vec<Self::Elem>> {
        let _ = index;
        None
    }
}

/// An element of the composite heap: a value together with its index.
#[derive(Clone, PartialEq, Eq)]
pub struct Located<E> {
    index: SieveIndex,
    value: E,
}

impl<E> Located<E> {
    pub fn index(&self) -> &SieveIndex {
        &self.index
    }

    pub fn value(&self) -> &E {
        &self.value
    }

    pub fn into_value(self) -> E {
        self.value
    }
}

impl<E: fmt::Debug> fmt::Debug for Located<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{}", self.value, self.index)
    }
}

/// The composite preorder heap of a sieve.
#[derive(Debug, Clone)]
pub struct SievedHeap<S> {
    sieve: S,
    indices: BTreeSet<SieveIndex>,
}

impl<S: Sieve> SievedHeap<S> {
    pub fn new(sieve: S) -> Result<Self, HeapError> {
        let indices: BTreeSet<SieveIndex> = sieve.indices().into_iter().collect();
        for x in &indices {
            for y in &indices {
                let xy = x.join(y);
                if !indices.contains(&xy) {
                    return Err(HeapError::undefined(
                        "sieve",
                        format!("index set is not closed under join: {x} ∨ {y} = {xy} is missing"),
                    ));
                }
            }
        }
        Ok(SievedHeap { sieve, indices })
    }

    pub fn sieve(&self) -> &S {
        &self.sieve
    }

    pub fn indices(&self) -> impl Iterator<Item = &SieveIndex> {
        self.indices.iter()
    }

    /// Attaches an index to a value after checking both.
    pub fn locate(&self, index: SieveIndex, value: S::Elem) -> Result<Located<S::Elem>, HeapError> {
        if !self.indices.contains(&index) {
            return Err(HeapError::undefined("sieve", format!("unregistered index {index}")));
        }
        if !self.sieve.belongs(&index, &value) {
            return Err(HeapError::undefined("sieve", format!("value {value:?} does not belong to index {index}")));
        }
        Ok(Located { index, value })
    }

    /// Concretizes `a` to `target`, which must lie above its index.
    pub fn lift_to(&self, a: &Located<S::Elem>, target: &SieveIndex) -> Result<Located<S::Elem>, HeapError> {
        if !a.index.is_below(target) || !self.indices.contains(target) {
            return Err(HeapError::undefined("sieve", format!("cannot concretize from {} to {target}", a.index)));
        }
        let value = self.sieve.concretize(&a.index, target, &a.value)?;
        Ok(Located { index: target.clone(), value })
    }

    fn meet(&self, a: &Located<S::Elem>, b: &Located<S::Elem>) -> Result<(SieveIndex, S::Elem, S::Elem), HeapError> {
        let xy = a.index.join(&b.index);
        let ia = self.sieve.concretize(&a.index, &xy, &a.value)?;
        let ib = self.sieve.concretize(&b.index, &xy, &b.value)?;
        Ok((xy, ia, ib))
    }

    /// The composite order, decided at the join of the two indices.
    pub fn try_le(&self, a: &Located<S::Elem>, b: &Located<S::Elem>) -> Result<bool, HeapError> {
        let (xy, ia, ib) = self.meet(a, b)?;
        Ok(self.sieve.le_at(&xy, &ia, &ib))
    }

    pub fn try_tau(&self, a: &Located<S::Elem>, b: &Located<S::Elem>) -> Result<Located<S::Elem>, HeapError> {
        crate::heap::tau(self, a, b)
    }
}

impl<S: Sieve> PreorderHeap for SievedHeap<S> {
    type Elem = Located<S::Elem>;

    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.try_le(a, b).expect("located values carry registered indices, so concretization to their join succeeds")
    }

    fn mu(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, HeapError> {
        let (xy, ia, ib) = self.meet(a, b)?;
        let value = self.sieve.mu_at(&xy, &ia, &ib);
        Ok(Located { index: xy, value })
    }

    fn gamma(&self, a: &Self::Elem) -> Self::Elem {
        Located { index: a.index.clone(), value: self.sieve.gamma_at(&a.index, &a.value) }
    }

    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let mut out = Vec::new();
        for x in &self.indices {
            for value in self.sieve.sample_at(x)? {
                out.push(Located { index: x.clone(), value });
            }
        }
        Some(out)
    }
}

/// Checks the concretization laws (identity, triangle, homomorphism) on the
/// per-index samples, then the heap axioms on the composite carrier.
pub fn check_sieve<S: Sieve>(
    heap: &SievedHeap<S>,
    opts: CheckOptions,
) -> Result<AxiomReport<Located<S::Elem>>, HeapError> {
    let sieve = heap.sieve();
    let indices: Vec<SieveIndex> = heap.indices().cloned().collect();
    let mut samples = Vec::with_capacity(indices.len());
    for x in &indices {
        samples.push(sieve.sample_at(x).ok_or(HeapError::MissingEnumeration)?);
    }
    let at = |index: &SieveIndex, value: S::Elem| Located { index: index.clone(), value };
    let same = |index: &SieveIndex, a: &S::Elem, b: &S::Elem| sieve.le_at(index, a, b) && sieve.le_at(index, b, a);

    let mut report = AxiomReport::new(opts);
    for (xi, x) in indices.iter().enumerate() {
        for a in &samples[xi] {
            let ia = sieve.concretize(x, x, a)?;
            if !same(x, &ia, a) {
                report.record(Law::ConcretizeIdentity, vec![at(x, a.clone())]);
            }
        }
        for y in indices.iter().filter(|y| x.is_below(y) && *y != x) {
            for a in &samples[xi] {
                let ia = sieve.concretize(x, y, a)?;
                let ga = sieve.concretize(x, y, &sieve.gamma_at(x, a))?;
                if !same(y, &ga, &sieve.gamma_at(y, &ia)) {
                    report.record(Law::HomomorphismGamma, vec![at(x, a.clone()), at(y, ia.clone())]);
                }
                for b in &samples[xi] {
                    let ib = sieve.concretize(x, y, b)?;
                    if sieve.le_at(x, a, b) && !sieve.le_at(y, &ia, &ib) {
                        report.record(Law::HomomorphismOrder, vec![at(x, a.clone()), at(x, b.clone())]);
                    }
                    let m = sieve.concretize(x, y, &sieve.mu_at(x, a, b))?;
                    if !same(y, &m, &sieve.mu_at(y, &ia, &ib)) {
                        report.record(Law::HomomorphismMu, vec![at(x, a.clone()), at(x, b.clone())]);
                    }
                }
                for z in indices.iter().filter(|z| y.is_below(z) && *z != y) {
                    let direct = sieve.concretize(x, z, a)?;
                    let stepped = sieve.concretize(y, z, &ia)?;
                    if !same(z, &direct, &stepped) {
                        report
                            .record(Law::ConcretizeTriangle, vec![at(x, a.clone()), at(y, ia.clone()), at(z, direct)]);
                    }
                }
            }
        }
    }

    let carrier = heap.elements().ok_or(HeapError::MissingEnumeration)?;
    report.absorb(check_axioms_on(heap, &carrier, opts));
    Ok(report)
}

/// The degenerate sieve with a single index over one heap; concretization is
/// the identity.
#[derive(Debug, Clone)]
pub struct SingleIndex<H> {
    index: SieveIndex,
    heap: H,
}

impl<H: PreorderHeap> SingleIndex<H> {
    pub fn new(id: &str, heap: H) -> Self {
        SingleIndex { index: SieveIndex::new([id]), heap }
    }

    pub fn heap(&self) -> &H {
        &self.heap
    }
}

impl<H: PreorderHeap> Sieve for SingleIndex<H> {
    type Elem = H::Elem;

    fn indices(&self) -> Vec<SieveIndex> {
        vec![self.index.clone()]
    }

    fn le_at(&self, _: &SieveIndex, a: &H::Elem, b: &H::Elem) -> bool {
        self.heap.le(a, b)
    }

    fn mu_at(&self, _: &SieveIndex, a: &H::Elem, b: &H::Elem) -> H::Elem {
        self.heap.mu(a, b).expect("the wrapped heap has a total source multiplication")
    }

    fn gamma_at(&self, _: &SieveIndex, a: &H::Elem) -> H::Elem {
        self.heap.gamma(a)
    }

    fn concretize(&self, from: &SieveIndex, to: &SieveIndex, a: &H::Elem) -> Result<H::Elem, HeapError> {
        if from != &self.index || to != &self.index {
            return Err(HeapError::undefined("sieve", format!("unregistered index {from} or {to}")));
        }
        Ok(a.clone())
    }

    fn belongs(&self, index: &SieveIndex, _: &H::Elem) -> bool {
        index == &self.index
    }

    fn sample_at(&self, _: &SieveIndex) -> Option<Vec<H::Elem>> {
        self.heap.elements()
    }
}
