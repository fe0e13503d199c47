use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theory {
    /// Powerset Boolean lattices
    Bool,
    /// Assume-guarantee contracts
    Agc,
    /// Interface automata
    Ia,
    /// Regular languages, synchronous composition
    LangSync,
    /// Regular languages, asynchronous composition
    LangAsync,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Op {
    /// Largest X with A·X ≤ B
    SolveRight,
    /// Largest X with X·A ≤ B
    SolveLeft,
    Compose,
    Merge,
    /// Smallest X with A ≤ merge(B, X)
    Separate,
    /// Whether A ≤ B
    Refine,
    /// Check the heap axioms on the theory instance containing the operands
    Axioms,
    /// Solve right and check the result against the brute-force oracle
    OracleVerify,
}

/// Computes quotients and related operations in preorder heaps.
#[derive(Debug, Parser)]
#[command(name = "preheap", version)]
pub struct Args {
    #[arg(long, value_enum)]
    pub theory: Theory,
    #[arg(long, value_enum)]
    pub op: Op,
    /// First operand document
    #[arg(long)]
    pub a: PathBuf,
    /// Second operand document
    #[arg(long)]
    pub b: Option<PathBuf>,
    /// Word-length bound for language checks
    #[arg(long, default_value_t = 3)]
    pub bound: usize,
    /// Seed for sampled checks
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Witnesses kept per violated law or failed check
    #[arg(long, default_value_t = 10)]
    pub witness_cap: usize,
    /// Sieve description for languages; derived from the operands if absent
    #[arg(long)]
    pub sieve: Option<PathBuf>,
    /// Skip verification of solve results
    #[arg(long)]
    pub no_verify: bool,
    /// Where to write the result document; standard output if absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// The options echoed into the result document.
#[derive(Debug, Clone, Serialize)]
pub struct Options {
    pub bound: usize,
    pub seed: u64,
    pub witness_cap: usize,
    pub verify: bool,
}

impl Args {
    pub fn options(&self) -> Options {
        Options { bound: self.bound, seed: self.seed, witness_cap: self.witness_cap, verify: !self.no_verify }
    }
}
