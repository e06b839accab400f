//! Fibonacci and Lucas numbers over arbitrary-precision integers.
//!
//! Both sequences satisfy `X_n = X_{n-1} + X_{n-2}`; Fibonacci starts from
//! `F_0 = 0, F_1 = 1` and Lucas from `L_0 = 2, L_1 = 1`. Values are produced
//! bottom-up, so there is no recursion depth to worry about.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Which of the two sequences a triple is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceKind {
    Fibonacci,
    Lucas,
}

impl SequenceKind {
    pub fn short_name(self) -> &'static str {
        match self {
            SequenceKind::Fibonacci => "fib",
            SequenceKind::Lucas => "lucas",
        }
    }

    fn seeds(self) -> (BigUint, BigUint) {
        match self {
            SequenceKind::Fibonacci => (BigUint::zero(), BigUint::one()),
            SequenceKind::Lucas => (BigUint::from(2u32), BigUint::one()),
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for SequenceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fib" | "fibonacci" | "f" => Ok(SequenceKind::Fibonacci),
            "lucas" | "luc" | "l" => Ok(SequenceKind::Lucas),
            other => Err(format!("unknown sequence kind `{other}` (expected fib or lucas)")),
        }
    }
}

fn nth(kind: SequenceKind, n: u32) -> BigUint {
    let (mut a, mut b) = kind.seeds();
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `F_n`.
pub fn fib(n: u32) -> BigUint {
    nth(SequenceKind::Fibonacci, n)
}

/// `L_n`.
pub fn lucas(n: u32) -> BigUint {
    nth(SequenceKind::Lucas, n)
}

pub fn seq(kind: SequenceKind, n: u32) -> BigUint {
    match kind {
        SequenceKind::Fibonacci => fib(n),
        SequenceKind::Lucas => lucas(n),
    }
}

/// A prefix table `X_0..=X_max` for callers that need many terms of one sequence.
///
/// Immutable once built, so it can be shared freely between threads.
#[derive(Debug, Clone)]
pub struct SeqTable {
    kind: SequenceKind,
    terms: Vec<BigUint>,
}

impl SeqTable {
    pub fn new(kind: SequenceKind, max: u32) -> Self {
        let (a, b) = kind.seeds();
        let mut terms = Vec::with_capacity(max as usize + 1);
        terms.push(a);
        if max >= 1 {
            terms.push(b);
        }
        for n in 2..=max as usize {
            let next = &terms[n - 1] + &terms[n - 2];
            terms.push(next);
        }
        SeqTable { kind, terms }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn max_index(&self) -> u32 {
        (self.terms.len() - 1) as u32
    }

    /// Term `n`; falls back to direct generation past the cached prefix.
    pub fn get(&self, n: u32) -> BigUint {
        match self.terms.get(n as usize) {
            Some(v) => v.clone(),
            None => seq(self.kind, n),
        }
    }

    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }
}
