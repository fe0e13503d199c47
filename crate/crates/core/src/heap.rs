//! The abstract preorder heap: a preorder with a monotone source
//! multiplication `mu` and an antitone involution `gamma` satisfying the
//! regularity axioms.
//!
//! Everything else in the crate instantiates [`PreorderHeap`]. The closed-form
//! solvers in this module only ever call `le`, `mu` and `gamma`, so a theory
//! gets its quotients for free once it provides those three operations.
//!
//! All "equalities" between heap elements are up to `≃` (mutual `le`), since a
//! preorder need not be antisymmetric.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Default number of witnesses kept per violated law.
pub const DEFAULT_WITNESS_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeapError {
    #[error("carrier has no finite enumeration")]
    MissingEnumeration,
    /// An instance-level failure, e.g. composing incompatible interface automata.
    #[error("{theory}: {reason}")]
    Undefined { theory: &'static str, reason: String },
}

impl HeapError {
    pub fn undefined(theory: &'static str, reason: impl fmt::Display) -> Self {
        HeapError::Undefined { theory, reason: reason.to_string() }
    }
}

/// A preorder heap `(P, ≤, μ, γ)`.
///
/// `mu` is fallible because some theories (interface automata) only define
/// composition on compatible pairs. Total theories always return `Ok`.
pub trait PreorderHeap {
    type Elem: Clone + fmt::Debug;

    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn mu(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, HeapError>;

    fn gamma(&self, a: &Self::Elem) -> Self::Elem;

    /// The whole carrier, when it is finite and small enough to enumerate.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }
}

/// `a ≃ b`.
pub fn equiv<H: PreorderHeap + ?Sized>(h: &H, a: &H::Elem, b: &H::Elem) -> bool {
    h.le(a, b) && h.le(b, a)
}

/// Target multiplication `τ = γ ∘ μ ∘ (γ × γ)`.
pub fn tau<H: PreorderHeap + ?Sized>(h: &H, a: &H::Elem, b: &H::Elem) -> Result<H::Elem, HeapError> {
    Ok(h.gamma(&h.mu(&h.gamma(a), &h.gamma(b))?))
}

/// Largest `x` with `μ(a, x) ≤ b`, namely `τ(b, γa)` (right division `b / a`).
pub fn quotient_right<H: PreorderHeap + ?Sized>(h: &H, a: &H::Elem, b: &H::Elem) -> Result<H::Elem, HeapError> {
    tau(h, b, &h.gamma(a))
}

/// Largest `x` with `μ(x, a) ≤ b`, namely `τ(γa, b)` (left division `a \ b`).
pub fn quotient_left<H: PreorderHeap + ?Sized>(h: &H, a: &H::Elem, b: &H::Elem) -> Result<H::Elem, HeapError> {
    tau(h, &h.gamma(a), b)
}

/// Smallest `x` with `b ≤ τ(a, x)`, namely `μ(b, γa)`.
///
/// `μ^{γa}` is the left adjoint of `τ_a`. For commutative heaps this
/// coincides with [`smallest_tau_solution_left`].
pub fn smallest_tau_solution<H: PreorderHeap + ?Sized>(h: &H, a: &H::Elem, b: &H::Elem) -> Result<H::Elem, HeapError> {
    h.mu(b, &h.gamma(a))
}

/// Smallest `x` with `b ≤ τ(x, a)`, namely `μ(γa, b)`.
pub fn smallest_tau_solution_left<H: PreorderHeap + ?Sized>(
    h: &H,
    a: &H::Elem,
    b: &H::Elem,
) -> Result<H::Elem, HeapError> {
    h.mu(&h.gamma(a), b)
}

/// Evaluates `y ≤ a / x  ⇔  x ≤ y \ a` for one triple.
///
/// `a / x` is the largest solution of `μ(x, ·) ≤ a` and `y \ a` the largest
/// solution of `μ(·, y) ≤ a`; both sides are equivalent to `μ(x, y) ≤ a`.
pub fn isolate_unknown_check<H: PreorderHeap + ?Sized>(
    h: &H,
    a: &H::Elem,
    x: &H::Elem,
    y: &H::Elem,
) -> Result<bool, HeapError> {
    let over_x = quotient_right(h, x, a)?;
    let under_y = quotient_left(h, y, a)?;
    Ok(h.le(y, &over_x) == h.le(x, &under_y))
}

/// The laws an executable heap check can report on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    Reflexive,
    Transitive,
    /// A1: `γγ ≃ id`.
    Involution,
    Antitone,
    MonotoneLeft,
    MonotoneRight,
    /// A2a: `μ(a, γ μ(γb, a)) ≤ b`.
    LeftRegularity,
    /// A2b: `μ(γ μ(a, γb), a) ≤ b`.
    RightRegularity,
    /// Sieves: concretizing to the same index is the identity.
    ConcretizeIdentity,
    /// Sieves: `x → xy → xyz` agrees with `x → xyz`.
    ConcretizeTriangle,
    /// Sieves: concretizations preserve order.
    HomomorphismOrder,
    /// Sieves: concretizations commute with `μ`.
    HomomorphismMu,
    /// Sieves: concretizations commute with `γ`.
    HomomorphismGamma,
    /// Identity probe: a left identity for `μ` that is not a right identity.
    MuIdentity,
    /// Identity probe: `γe` is not a two-sided identity for `τ`.
    TauIdentity,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Reflexive => "reflexive",
            Law::Transitive => "transitive",
            Law::Involution => "A1",
            Law::Antitone => "antitone",
            Law::MonotoneLeft => "monotone-left",
            Law::MonotoneRight => "monotone-right",
            Law::LeftRegularity => "A2a",
            Law::RightRegularity => "A2b",
            Law::ConcretizeIdentity => "concretize-identity",
            Law::ConcretizeTriangle => "concretize-triangle",
            Law::HomomorphismOrder => "homomorphism-order",
            Law::HomomorphismMu => "homomorphism-mu",
            Law::HomomorphismGamma => "homomorphism-gamma",
            Law::MuIdentity => "mu-identity",
            Law::TauIdentity => "tau-identity",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failing instance of a law together with the elements witnessing it.
#[derive(Debug, Clone)]
pub struct Violation<E> {
    pub law: Law,
    pub witnesses: Vec<E>,
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    /// Violations kept per law; further ones are only counted.
    pub witness_cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { witness_cap: DEFAULT_WITNESS_CAP }
    }
}

/// Result of an axiom check. Empty iff every checked instance holds.
#[derive(Debug, Clone)]
pub struct AxiomReport<E> {
    pub violations: Vec<Violation<E>>,
    /// Total violation count per law, including those beyond the witness cap.
    pub counts: BTreeMap<Law, usize>,
    /// Number of carrier elements the check ran over.
    pub carrier_size: usize,
    /// Instances skipped because `mu` was undefined on them.
    pub undefined: usize,
    cap: usize,
}

impl<E> AxiomReport<E> {
    pub fn new(opts: CheckOptions) -> Self {
        AxiomReport {
            violations: Vec::new(),
            counts: BTreeMap::new(),
            carrier_size: 0,
            undefined: 0,
            cap: opts.witness_cap,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn record(&mut self, law: Law, witnesses: Vec<E>) {
        let count = self.counts.entry(law).or_insert(0);
        *count += 1;
        if *count <= self.cap {
            self.violations.push(Violation { law, witnesses });
        }
    }

    pub fn violated(&self, law: Law) -> bool {
        self.counts.contains_key(&law)
    }

    /// Folds another report into this one, keeping this report's cap.
    pub fn absorb(&mut self, other: AxiomReport<E>) {
        for v in other.violations {
            let kept = self.violations.iter().filter(|w| w.law == v.law).count();
            if kept < self.cap {
                self.violations.push(v);
            }
        }
        for (law, n) in other.counts {
            *self.counts.entry(law).or_insert(0) += n;
        }
        self.undefined += other.undefined;
        self.carrier_size = self.carrier_size.max(other.carrier_size);
    }

    pub fn map<F, T>(self, mut f: F) -> AxiomReport<T>
    where
        F: FnMut(E) -> T,
    {
        AxiomReport {
            violations: self
                .violations
                .into_iter()
                .map(|v| Violation { law: v.law, witnesses: v.witnesses.into_iter().map(&mut f).collect() })
                .collect(),
            counts: self.counts,
            carrier_size: self.carrier_size,
            undefined: self.undefined,
            cap: self.cap,
        }
    }
}

impl<E: fmt::Debug> fmt::Display for AxiomReport<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "all laws hold on {} elements", self.carrier_size);
        }
        for (law, n) in &self.counts {
            writeln!(f, "{law}: {n} violation(s)")?;
        }
        for v in &self.violations {
            writeln!(f, "  {} witness {:?}", v.law, v.witnesses)?;
        }
        Ok(())
    }
}

/// Exhaustive check over the heap's own enumeration.
pub fn check_axioms<H: PreorderHeap + ?Sized>(h: &H, opts: CheckOptions) -> Result<AxiomReport<H::Elem>, HeapError> {
    let elems = h.elements().ok_or(HeapError::MissingEnumeration)?;
    Ok(check_axioms_on(h, &elems, opts))
}

/// Sampled check: draws `samples` elements from `draw` with a seeded RNG and
/// checks every law on that finite sample.
pub fn check_axioms_sampled<H, F>(
    h: &H,
    mut draw: F,
    samples: usize,
    seed: u64,
    opts: CheckOptions,
) -> AxiomReport<H::Elem>
where
    H: PreorderHeap + ?Sized,
    F: FnMut(&mut ChaCha8Rng) -> H::Elem,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elems: Vec<_> = (0..samples).map(|_| draw(&mut rng)).collect();
    check_axioms_on(h, &elems, opts)
}

/// Checks the preorder, monotonicity, antitonicity, A1, A2a and A2b on every
/// pair or triple drawn from `elems`.
pub fn check_axioms_on<H: PreorderHeap + ?Sized>(h: &H, elems: &[H::Elem], opts: CheckOptions) -> AxiomReport<H::Elem> {
    let n = elems.len();
    let mut report = AxiomReport::new(opts);
    report.carrier_size = n;

    let le: Vec<Vec<bool>> = elems.iter().map(|a| elems.iter().map(|b| h.le(a, b)).collect()).collect();
    let gammas: Vec<H::Elem> = elems.iter().map(|a| h.gamma(a)).collect();

    for i in 0..n {
        if !le[i][i] {
            report.record(Law::Reflexive, vec![elems[i].clone()]);
        }
        if !equiv(h, &h.gamma(&gammas[i]), &elems[i]) {
            report.record(Law::Involution, vec![elems[i].clone()]);
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !le[i][j] {
                continue;
            }
            for k in 0..n {
                if le[j][k] && !le[i][k] {
                    report.record(Law::Transitive, vec![elems[i].clone(), elems[j].clone(), elems[k].clone()]);
                }
            }
            if !h.le(&gammas[j], &gammas[i]) {
                report.record(Law::Antitone, vec![elems[i].clone(), elems[j].clone()]);
            }
        }
    }

    // products[i][j] = mu(elems[i], elems[j])
    let products: Vec<Vec<Option<H::Elem>>> =
        elems.iter().map(|a| elems.iter().map(|b| h.mu(a, b).ok()).collect()).collect();

    for i in 0..n {
        for j in 0..n {
            if i == j || !le[i][j] {
                continue;
            }
            for k in 0..n {
                match (&products[i][k], &products[j][k]) {
                    (Some(lo), Some(hi)) => {
                        if !h.le(lo, hi) {
                            report
                                .record(Law::MonotoneLeft, vec![elems[i].clone(), elems[j].clone(), elems[k].clone()]);
                        }
                    }
                    _ => report.undefined += 1,
                }
                match (&products[k][i], &products[k][j]) {
                    (Some(lo), Some(hi)) => {
                        if !h.le(lo, hi) {
                            report
                                .record(Law::MonotoneRight, vec![elems[k].clone(), elems[i].clone(), elems[j].clone()]);
                        }
                    }
                    _ => report.undefined += 1,
                }
            }
        }
    }

    for a in elems {
        for (j, b) in elems.iter().enumerate() {
            match left_regular(h, a, b, &gammas[j]) {
                Ok(true) => {}
                Ok(false) => report.record(Law::LeftRegularity, vec![a.clone(), b.clone()]),
                Err(_) => report.undefined += 1,
            }
            match right_regular(h, a, b, &gammas[j]) {
                Ok(true) => {}
                Ok(false) => report.record(Law::RightRegularity, vec![a.clone(), b.clone()]),
                Err(_) => report.undefined += 1,
            }
        }
    }
    report
}

fn left_regular<H: PreorderHeap + ?Sized>(
    h: &H,
    a: &H::Elem,
    b: &H::Elem,
    gamma_b: &H::Elem,
) -> Result<bool, HeapError> {
    let inner = h.gamma(&h.mu(gamma_b, a)?);
    Ok(h.le(&h.mu(a, &inner)?, b))
}

fn right_regular<H: PreorderHeap + ?Sized>(
    h: &H,
    a: &H::Elem,
    b: &H::Elem,
    gamma_b: &H::Elem,
) -> Result<bool, HeapError> {
    let inner = h.gamma(&h.mu(a, gamma_b)?);
    Ok(h.le(&h.mu(&inner, a)?, b))
}

/// Outcome of [`identity_probe`]: the left identity found and any failures of
/// the two-sided identity corollary.
#[derive(Debug, Clone)]
pub struct IdentityProbe<E> {
    pub identity: E,
    pub tau_identity: E,
    pub report: AxiomReport<E>,
}

/// Looks for a left identity `e` of `μ` in the enumeration; if one exists,
/// checks that it is two-sided and that `γe` is a two-sided identity for `τ`.
pub fn identity_probe<H: PreorderHeap + ?Sized>(
    h: &H,
    opts: CheckOptions,
) -> Result<Option<IdentityProbe<H::Elem>>, HeapError> {
    let elems = h.elements().ok_or(HeapError::MissingEnumeration)?;
    let is_left_identity = |e: &H::Elem| elems.iter().all(|x| h.mu(e, x).map(|p| equiv(h, &p, x)).unwrap_or(false));
    let Some(e) = elems.iter().find(|e| is_left_identity(e)).cloned() else {
        return Ok(None);
    };
    let ge = h.gamma(&e);
    let mut report = AxiomReport::new(opts);
    report.carrier_size = elems.len();
    for x in &elems {
        match h.mu(x, &e) {
            Ok(p) if equiv(h, &p, x) => {}
            Ok(_) => report.record(Law::MuIdentity, vec![x.clone()]),
            Err(_) => report.undefined += 1,
        }
        for (left, right) in [(&ge, x), (x, &ge)] {
            match tau(h, left, right) {
                Ok(p) if equiv(h, &p, x) => {}
                Ok(_) => report.record(Law::TauIdentity, vec![x.clone()]),
                Err(_) => report.undefined += 1,
            }
        }
    }
    Ok(Some(IdentityProbe { identity: e, tau_identity: ge, report }))
}
