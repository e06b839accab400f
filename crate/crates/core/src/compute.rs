//! Entry points that answer with a value no matter what: a closed form when
//! one applies, the Apéry oracle otherwise, with the path recorded.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::apery::{FreshTables, SemigroupOracle, TableSource};
use crate::closed_forms::{gp_fib, gp_lucas, np_fib, np_lucas, params, CaseTag, FormulaResult, TripleParams};
use crate::denumerant::GeneratorTuple;
use crate::error::{Error, Result};
use crate::sequences::SequenceKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    /// `g_p`
    Frobenius,
    /// `n_p`
    Sylvester,
}

impl Quantity {
    pub fn symbol(self) -> &'static str {
        match self {
            Quantity::Frobenius => "g",
            Quantity::Sylvester => "n",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "g" | "frobenius" => Ok(Quantity::Frobenius),
            "n" | "sylvester" => Ok(Quantity::Sylvester),
            other => Err(format!("unknown quantity `{other}` (expected g or n)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closed,
    Oracle,
    /// Closed form when it applies and is confirmed, oracle otherwise.
    Auto,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "closed" => Ok(Method::Closed),
            "oracle" => Ok(Method::Oracle),
            "auto" => Ok(Method::Auto),
            other => Err(format!("unknown method `{other}` (expected closed, oracle or auto)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    ClosedForm(CaseTag),
    Oracle(Fallback),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fallback {
    Requested,
    NotCovered,
    Unconfirmed(CaseTag),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::ClosedForm(tag) => write!(f, "closed form {tag}"),
            Source::Oracle(Fallback::Requested) => f.write_str("oracle"),
            Source::Oracle(Fallback::NotCovered) => f.write_str("oracle (no closed form applies)"),
            Source::Oracle(Fallback::Unconfirmed(tag)) => write!(f, "oracle (skipped {tag})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computed {
    pub quantity: Quantity,
    pub p: u32,
    pub value: BigInt,
    pub source: Source,
}

/// The closed-form evaluator for one family member.
pub fn closed_form(kind: SequenceKind, i: u32, k: u32, p: u32, quantity: Quantity) -> Result<FormulaResult> {
    match (kind, quantity) {
        (SequenceKind::Fibonacci, Quantity::Frobenius) => gp_fib(i, k, p),
        (SequenceKind::Lucas, Quantity::Frobenius) => gp_lucas(i, k, p),
        (SequenceKind::Fibonacci, Quantity::Sylvester) => np_fib(i, k, p),
        (SequenceKind::Lucas, Quantity::Sylvester) => np_lucas(i, k, p),
    }
}

/// The triple `(X_i, X_{i+2}, X_{i+k})` as a machine-word tuple.
pub fn family_tuple(p: &TripleParams) -> Result<GeneratorTuple> {
    GeneratorTuple::from_big(&p.generators())
}

pub fn oracle_value(oracle: &SemigroupOracle, p: u32, quantity: Quantity) -> Result<BigInt> {
    match quantity {
        Quantity::Frobenius => oracle.p_frobenius(p.into()),
        Quantity::Sylvester => oracle.p_sylvester(p.into()).map(BigInt::from),
    }
}

/// `g_p` or `n_p` of a family triple by the requested method.
pub fn compute_family(kind: SequenceKind, i: u32, k: u32, p: u32, quantity: Quantity, method: Method) -> Result<Computed> {
    compute_family_with(kind, i, k, p, quantity, method, &FreshTables)
}

pub fn compute_family_with(
    kind: SequenceKind,
    i: u32,
    k: u32,
    p: u32,
    quantity: Quantity,
    method: Method,
    tables: &dyn TableSource,
) -> Result<Computed> {
    let via_oracle = |fallback| -> Result<Computed> {
        let tuple = family_tuple(&params(kind, i, k, p)?)?;
        compute_tuple_with(&tuple, p, quantity, tables).map(|c| Computed { source: Source::Oracle(fallback), ..c })
    };
    if method == Method::Oracle {
        return via_oracle(Fallback::Requested);
    }
    let res = closed_form(kind, i, k, p, quantity)?;
    match (res.value, method) {
        (Some(v), Method::Closed) => Ok(Computed { quantity, p, value: v.into(), source: Source::ClosedForm(res.tag) }),
        (Some(v), _) if !res.tag.unconfirmed => Ok(Computed { quantity, p, value: v.into(), source: Source::ClosedForm(res.tag) }),
        (Some(_), _) => via_oracle(Fallback::Unconfirmed(res.tag)),
        (None, Method::Closed) => Err(Error::NotCovered(format!("{quantity}_{p} of {kind} i={i} k={k} ({})", res.tag.branch))),
        (None, _) => via_oracle(Fallback::NotCovered),
    }
}

/// `g_p` or `n_p` of an arbitrary tuple, always by the oracle.
pub fn compute_tuple(tuple: &GeneratorTuple, p: u32, quantity: Quantity) -> Result<Computed> {
    compute_tuple_with(tuple, p, quantity, &FreshTables)
}

pub fn compute_tuple_with(tuple: &GeneratorTuple, p: u32, quantity: Quantity, tables: &dyn TableSource) -> Result<Computed> {
    let oracle = SemigroupOracle::from_source(tuple, p.into(), tables)?;
    let value = oracle_value(&oracle, p, quantity)?;
    Ok(Computed { quantity, p, value, source: Source::Oracle(Fallback::Requested) })
}
