//! Preorder heaps and their closed-form quotients.
//!
//! A preorder heap is a preorder with a monotone binary "source
//! multiplication" `μ` and an antitone involution `γ` satisfying two
//! regularity axioms. In such a structure the largest `x` with `μ(a, x) ≤ b`
//! always exists and equals `τ(b, γa)`, where `τ = γ ∘ μ ∘ (γ × γ)`.
//!
//! The crate provides the abstract interface ([`heap`]), brute-force oracles
//! ([`oracle`]) and instances: finite Boolean lattices ([`lattice`]),
//! assume-guarantee contracts ([`contract`]), interface automata
//! ([`interface`]), regular languages over structured alphabets
//! ([`language`]) and semilattice-indexed families of heaps ([`sieve`]).

pub mod contract;
pub mod heap;
pub mod interface;
pub mod language;
pub mod lattice;
pub mod oracle;
pub mod sieve;

pub use heap::{
    check_axioms, check_axioms_on, check_axioms_sampled, equiv, identity_probe, isolate_unknown_check, quotient_left,
    quotient_right, smallest_tau_solution, smallest_tau_solution_left, tau, AxiomReport, CheckOptions, HeapError, Law,
    PreorderHeap,
};
