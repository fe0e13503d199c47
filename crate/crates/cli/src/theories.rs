use std::fmt::Debug;
use std::path::Path;
use std::sync::Arc;

use preheap::contract::{ContractDoc, ContractHeap};
use preheap::heap::AxiomReport;
use preheap::interface::corpus::{candidates, CorpusConfig};
use preheap::interface::{
    composable, compose as ia_compose, ia_merge, ia_quotient, ia_separation, refines, IaDoc, IaHeap, InterfaceAutomaton,
};
use preheap::language::{
    ComponentDoc, Dfa, DfaDoc, LanguageDoc, LanguageSieve, Mode, Registry, SampleConfig, SieveDoc,
};
use preheap::lattice::{BooleanLattice, FiniteSetDoc, Universe};
use preheap::oracle::{enumerate_solutions, pointwise_maximality, Side};
use preheap::sieve::{check_sieve, Located, SievedHeap};
use preheap::{
    check_axioms, check_axioms_on, quotient_left, quotient_right, smallest_tau_solution, tau, CheckOptions,
    PreorderHeap,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::args::{Args, Op, Theory};
use crate::document::{CliError, Outcome, Verification};

/// Largest Boolean universe whose quotients are verified by default.
pub const BOOL_VERIFY_ATOMS: usize = 10;
/// Largest contract universe whose quotients are verified by default.
pub const AGC_VERIFY_BEHAVIORS: usize = 6;
/// Candidates sampled when checking an IA quotient for maximality.
pub const IA_CANDIDATES: usize = 20;

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Parse { path: path.display().to_string(), message: e.to_string() })
}

fn second<T: DeserializeOwned>(args: &Args) -> Result<Option<T>, CliError> {
    args.b.as_deref().map(read).transpose()
}

fn require<T>(b: Option<T>, op: Op) -> Result<T, CliError> {
    b.ok_or_else(|| CliError::Invalid {
        name: "MissingOperand".into(),
        message: format!("{op:?} needs a second operand (--b)"),
    })
}

pub fn run(args: &Args) -> Result<Outcome, CliError> {
    match args.theory {
        Theory::Bool => run_bool(args),
        Theory::Agc => run_agc(args),
        Theory::Ia => run_ia(args),
        Theory::LangSync => run_language(args, Mode::Sync),
        Theory::LangAsync => run_language(args, Mode::Async),
    }
}

fn run_bool(args: &Args) -> Result<Outcome, CliError> {
    let a_doc: FiniteSetDoc = read(&args.a)?;
    let b_doc: Option<FiniteSetDoc> = second(args)?;
    let universe = Universe::new(a_doc.universe.clone()).map_err(CliError::invalid)?;
    let a = a_doc.into_set().map_err(CliError::invalid)?;
    let b = b_doc
        .map(|d| {
            if d.universe != universe.atoms() {
                return Err(CliError::invalid(preheap::lattice::LatticeError::UniverseMismatch));
            }
            d.into_set().map_err(CliError::invalid)
        })
        .transpose()?;
    let h = BooleanLattice::new(universe.clone());
    let limit = (universe.len() > BOOL_VERIFY_ATOMS).then(|| {
        format!("universe of {} atoms exceeds the verification threshold of {BOOL_VERIFY_ATOMS}", universe.len())
    });
    finite(&h, args, a, b, limit, |x| serde_json::to_value(x.to_doc()).expect("serializable"))
}

fn run_agc(args: &Args) -> Result<Outcome, CliError> {
    let a_doc: ContractDoc = read(&args.a)?;
    let b_doc: Option<ContractDoc> = second(args)?;
    let universe: Arc<Universe> = Universe::new(a_doc.universe.clone()).map_err(CliError::invalid)?;
    let a = a_doc.into_contract_over(&universe).map_err(CliError::invalid)?;
    let b = b_doc.map(|d| d.into_contract_over(&universe).map_err(CliError::invalid)).transpose()?;
    let h = ContractHeap::new(universe.clone());
    let limit = (universe.len() > AGC_VERIFY_BEHAVIORS).then(|| {
        format!("universe of {} behaviors exceeds the verification threshold of {AGC_VERIFY_BEHAVIORS}", universe.len())
    });
    finite(&h, args, a, b, limit, |x| serde_json::to_value(x.to_doc()).expect("serializable"))
}

fn axiom_result<E: Debug>(report: &AxiomReport<E>, method: &str) -> Outcome {
    let violations: serde_json::Map<String, Value> =
        report.counts.iter().map(|(law, n)| (law.name().to_string(), json!(n))).collect();
    let witnesses: Vec<Value> = report
        .violations
        .iter()
        .map(|v| json!({"law": v.law.name(), "elements": v.witnesses.iter().map(|w| format!("{w:?}")).collect::<Vec<_>>()}))
        .collect();
    Outcome {
        result: json!({
            "carrier": report.carrier_size,
            "undefined": report.undefined,
            "violations": violations,
            "witnesses": witnesses,
        }),
        summary: report.to_string(),
        verification: Some(Verification::checked(report.is_empty(), json!({"method": method}))),
    }
}

/// Boolean lattices and contracts: finite carriers, generic operations and
/// exhaustive verification.
fn finite<H>(
    h: &H,
    args: &Args,
    a: H::Elem,
    b: Option<H::Elem>,
    limit: Option<String>,
    to_json: impl Fn(&H::Elem) -> Value,
) -> Result<Outcome, CliError>
where
    H: PreorderHeap,
    H::Elem: Debug,
{
    let opts = CheckOptions { witness_cap: args.witness_cap };
    if args.op == Op::Axioms {
        let report = check_axioms(h, opts).map_err(CliError::undefined)?;
        return Ok(axiom_result(&report, "exhaustive"));
    }
    let b = require(b, args.op)?;
    let element = |x: H::Elem, verification| Outcome { result: to_json(&x), summary: format!("{x:?}"), verification };
    let verify = |side: Side, q: &H::Elem, forced: bool| -> Result<Verification, CliError> {
        if let (Some(reason), false) = (&limit, forced) {
            return Ok(Verification::unverified(reason.clone()));
        }
        let set = enumerate_solutions(h, &a, &b, side).map_err(CliError::undefined)?;
        let product = match side {
            Side::Right => h.mu(&a, q),
            Side::Left => h.mu(q, &a),
        };
        let solution = product.map(|p| h.le(&p, &b)).unwrap_or(false);
        let dominates = set.solutions.iter().all(|x| h.le(x, q));
        let matches = set.maxima.iter().any(|m| h.le(m, q) && h.le(q, m));
        Ok(Verification::checked(
            solution && dominates && matches,
            json!({
                "method": "exhaustive",
                "solutions": set.solutions.len(),
                "solution": solution,
                "dominates_all_solutions": dominates,
                "matches_oracle_maximum": matches,
            }),
        ))
    };
    Ok(match args.op {
        Op::SolveRight | Op::OracleVerify => {
            let q = quotient_right(h, &a, &b).map_err(CliError::undefined)?;
            let v = (!args.no_verify || args.op == Op::OracleVerify)
                .then(|| verify(Side::Right, &q, args.op == Op::OracleVerify))
                .transpose()?;
            element(q, v)
        }
        Op::SolveLeft => {
            let q = quotient_left(h, &a, &b).map_err(CliError::undefined)?;
            let v = (!args.no_verify).then(|| verify(Side::Left, &q, false)).transpose()?;
            element(q, v)
        }
        Op::Compose => element(h.mu(&a, &b).map_err(CliError::undefined)?, None),
        Op::Merge => element(tau(h, &a, &b).map_err(CliError::undefined)?, None),
        Op::Separate => element(smallest_tau_solution(h, &b, &a).map_err(CliError::undefined)?, None),
        Op::Refine => boolean(h.le(&a, &b)),
        Op::Axioms => unreachable!("handled above"),
    })
}

fn boolean(holds: bool) -> Outcome {
    Outcome { result: json!({"holds": holds}), summary: holds.to_string(), verification: None }
}

fn run_ia(args: &Args) -> Result<Outcome, CliError> {
    let load = |d: IaDoc| d.into_automaton().map_err(CliError::invalid);
    let a = load(read(&args.a)?)?;
    let b = second::<IaDoc>(args)?.map(load).transpose()?;
    let element = |x: InterfaceAutomaton, verification| Outcome {
        result: serde_json::to_value(x.to_doc()).expect("serializable"),
        summary: format!("{x:?}"),
        verification,
    };
    if args.op == Op::Axioms {
        let mut sample = vec![a.clone(), a.mirror()];
        if let Some(b) = &b {
            sample.extend([b.clone(), b.mirror()]);
        }
        let report = check_axioms_on(&IaHeap, &sample, CheckOptions { witness_cap: args.witness_cap });
        return Ok(axiom_result(&report, "operands and their mirrors"));
    }
    let b = require(b, args.op)?;
    Ok(match args.op {
        Op::SolveRight | Op::SolveLeft | Op::OracleVerify => {
            let r = if args.op == Op::SolveLeft {
                let r = quotient_left(&IaHeap, &a, &b).map_err(CliError::undefined)?;
                if !composable(&r, &a) {
                    return Err(CliError::Undefined {
                        name: "NotComposable".into(),
                        message: "not composable: the quotient hides actions of the known component".into(),
                    });
                }
                r
            } else {
                ia_quotient(&b, &a).map_err(CliError::undefined)?
            };
            let v = (!args.no_verify || args.op == Op::OracleVerify).then(|| verify_ia(args, &a, &b, &r));
            element(r, v)
        }
        Op::Compose => element(ia_compose(&a, &b).map_err(CliError::undefined)?, None),
        Op::Merge => element(ia_merge(&a, &b).map_err(CliError::undefined)?, None),
        Op::Separate => element(ia_separation(&a, &b).map_err(CliError::undefined)?, None),
        Op::Refine => boolean(refines(&a, &b)),
        Op::Axioms => unreachable!("handled above"),
    })
}

/// `Q ∥ R ⪯ P` for the computed `R`, then `R' ⪯ R` for sampled `R'` with
/// `Q ∥ R' ⪯ P`.
fn verify_ia(args: &Args, q: &InterfaceAutomaton, p: &InterfaceAutomaton, r: &InterfaceAutomaton) -> Verification {
    let solution = match ia_compose(q, r) {
        Ok(qr) => json!({"holds": refines(&qr, p)}),
        Err(e) => json!({"holds": false, "reason": e.to_string()}),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let sampled = candidates(p, q, IA_CANDIDATES, 100 * IA_CANDIDATES, &CorpusConfig::default(), &mut rng);
    let failures: Vec<&InterfaceAutomaton> = sampled.iter().filter(|c| !refines(c, r)).collect();
    let holds = solution["holds"] == json!(true) && failures.is_empty();
    Verification::checked(
        holds,
        json!({
            "method": "sampled",
            "solution": solution,
            "candidates": sampled.len(),
            "maximality_failures": failures.len(),
            "witnesses": failures.iter().take(args.witness_cap).map(|c| c.to_doc()).collect::<Vec<_>>(),
        }),
    )
}

/// The registry given by `--sieve`, or one registering the operands'
/// component alphabets in order of first appearance.
fn registry(args: &Args, mode: Mode, docs: &[&LanguageDoc]) -> Result<Registry, CliError> {
    if let Some(path) = &args.sieve {
        let doc: SieveDoc = read(path)?;
        let (registry, sieve_mode) = doc.into_registry().map_err(CliError::invalid)?;
        if sieve_mode != mode {
            return Err(CliError::invalid(preheap::language::LanguageError::KindMismatch {
                expected: mode.kind(),
                found: sieve_mode.kind(),
            }));
        }
        return Ok(registry);
    }
    let mut seen: Vec<&ComponentDoc> = Vec::new();
    for c in docs.iter().flat_map(|d| &d.alphabet().components) {
        match seen.iter().find(|s| s.id == c.id) {
            Some(s) if s.symbols != c.symbols => {
                return Err(CliError::invalid(preheap::language::LanguageError::AlphabetMismatch {
                    left: format!("{}{:?}", s.id, s.symbols),
                    right: format!("{}{:?}", c.id, c.symbols),
                }))
            }
            Some(_) => {}
            None => seen.push(c),
        }
    }
    let mut registry = Registry::new();
    for c in seen {
        registry.register(&c.id, c.symbols.clone()).map_err(CliError::invalid)?;
    }
    Ok(registry)
}

fn word_summary(d: &Dfa, bound: usize) -> String {
    const SHOWN: usize = 12;
    let words = d.format_words(bound);
    let shown: Vec<String> =
        words.iter().take(SHOWN).map(|w| if w.is_empty() { "ε".to_string() } else { w.clone() }).collect();
    let more = if words.len() > SHOWN { format!(" and {} more", words.len() - SHOWN) } else { String::new() };
    format!("{} words of length ≤ {bound} over {}: {}{more}", words.len(), d.alphabet(), shown.join(", "))
}

fn run_language(args: &Args, mode: Mode) -> Result<Outcome, CliError> {
    let a_doc: LanguageDoc = read(&args.a)?;
    let b_doc: Option<LanguageDoc> = second(args)?;
    let docs: Vec<&LanguageDoc> = std::iter::once(&a_doc).chain(&b_doc).collect();
    let registry = registry(args, mode, &docs)?;
    let sieve = LanguageSieve::new(registry.clone(), mode).with_samples(SampleConfig {
        bound: args.bound,
        seed: args.seed,
        ..SampleConfig::default()
    });
    let load = |d: LanguageDoc| -> Result<Dfa, CliError> {
        let dfa = d.into_dfa(&registry).map_err(CliError::invalid)?;
        sieve.index_of(&dfa).map_err(CliError::invalid)?;
        Ok(dfa)
    };
    let a = load(a_doc)?;
    let b = b_doc.map(load).transpose()?;
    if args.op == Op::Axioms {
        let heap = SievedHeap::new(sieve).map_err(CliError::undefined)?;
        let report = check_sieve(&heap, CheckOptions { witness_cap: args.witness_cap }).map_err(CliError::undefined)?;
        let mut outcome = axiom_result(&report, "bounded samples");
        if let Some(v) = outcome.verification.as_mut() {
            v.details["bound"] = json!(args.bound);
        }
        return Ok(outcome);
    }
    let b = require(b, args.op)?;
    let bound = args.bound;
    let element = |x: Dfa, verification| Outcome {
        result: json!({"dfa": DfaDoc::from_dfa(&x), "words": x.format_words(bound)}),
        summary: word_summary(&x, bound),
        verification,
    };
    let verify = |z: &Dfa| -> Result<Verification, CliError> {
        let report = pointwise_maximality(&sieve, &a, &b, z, bound).map_err(CliError::undefined)?;
        let holds = report.holds();
        let mut details = serde_json::to_value(&report).expect("serializable");
        details["method"] = json!("pointwise");
        Ok(Verification::checked(holds, details))
    };
    Ok(match args.op {
        Op::SolveRight | Op::OracleVerify => {
            let z = sieve.quotient(&a, &b).map_err(CliError::undefined)?;
            let v = (!args.no_verify || args.op == Op::OracleVerify).then(|| verify(&z)).transpose()?;
            element(z, v)
        }
        Op::SolveLeft => {
            let heap = SievedHeap::new(sieve.clone()).map_err(CliError::undefined)?;
            let locate = |d: &Dfa| -> Result<Located<Dfa>, CliError> {
                let index = sieve.index_of(d).map_err(CliError::undefined)?;
                heap.locate(index, d.clone()).map_err(CliError::undefined)
            };
            let z = quotient_left(&heap, &locate(&a)?, &locate(&b)?).map_err(CliError::undefined)?.into_value();
            let v = (!args.no_verify).then(|| verify(&z)).transpose()?;
            element(z, v)
        }
        Op::Compose => element(sieve.compose(&a, &b).map_err(CliError::undefined)?, None),
        Op::Merge => element(sieve.merge(&a, &b).map_err(CliError::undefined)?, None),
        Op::Separate => element(sieve.separation(&a, &b).map_err(CliError::undefined)?, None),
        Op::Refine => boolean(sieve.le(&a, &b).map_err(CliError::undefined)?),
        Op::Axioms => unreachable!("handled above"),
    })
}
