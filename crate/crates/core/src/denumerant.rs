//! Representation counting: `d(n; A)` is the number of nonnegative solutions
//! of `a_1 x_1 + ... + a_l x_l = n`.
//!
//! Counts come from the unbounded-coin DP, one generator at a time with `n`
//! ascending, and are kept as `BigUint` because they grow polynomially in `n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest number of entries a table may hold. Past this the oracle is the
/// wrong tool and a residue-graph method would be needed.
pub const MAX_TABLE_LEN: usize = 1 << 25;

/// Sorted, duplicate-free, coprime generators `a_1 < a_2 < ... < a_l`, `l >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorTuple {
    gens: Vec<u64>,
}

impl GeneratorTuple {
    /// Validates and sorts `gens`. Entries equal to 1 are accepted here; the
    /// Apéry construction rejects them separately as degenerate.
    pub fn new(mut gens: Vec<u64>) -> Result<Self> {
        if gens.len() < 2 {
            return Err(Error::TooFewGenerators(gens.len()));
        }
        if gens.contains(&0) {
            return Err(Error::NonPositiveGenerator);
        }
        gens.sort_unstable();
        if let Some(w) = gens.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateGenerator(w[0]));
        }
        let g = gens.iter().fold(0u64, |acc, &a| acc.gcd(&a));
        if g != 1 {
            return Err(Error::NotCoprime(g));
        }
        Ok(GeneratorTuple { gens })
    }

    /// Builds a tuple from arbitrary-precision values, failing if any does not
    /// fit a machine word.
    pub fn from_big(values: &[BigUint]) -> Result<Self> {
        let gens = values
            .iter()
            .map(|v| v.to_u64().ok_or_else(|| Error::TooLarge(format!("generator {v}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(gens)
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    /// The smallest generator, the modulus of the Apéry set.
    pub fn a1(&self) -> u64 {
        self.gens[0]
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Same tuple with one more generator.
    pub fn with_generator(&self, extra: u64) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.push(extra);
        Self::new(gens)
    }
}

impl fmt::Display for GeneratorTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for GeneratorTuple {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let gens = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|e| format!("bad generator `{t}`: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        GeneratorTuple::new(gens).map_err(|e| e.to_string())
    }
}

/// `counts[n] = d(n; A)` for `0 <= n <= limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenumerantTable {
    tuple: GeneratorTuple,
    counts: Vec<BigUint>,
}

impl DenumerantTable {
    pub fn new(tuple: &GeneratorTuple, limit: usize) -> Result<Self> {
        if limit >= MAX_TABLE_LEN {
            return Err(Error::TooLarge(format!("table limit {limit}")));
        }
        let mut counts = vec![BigUint::zero(); limit + 1];
        counts[0] = BigUint::one();
        for &a in tuple.gens() {
            let a = a as usize;
            for n in a..=limit {
                let (lo, hi) = counts.split_at_mut(n);
                hi[0] += &lo[n - a];
            }
        }
        Ok(DenumerantTable { tuple: tuple.clone(), counts })
    }

    /// Rehydrates a table from stored counts (e.g. a disk cache). Only shape
    /// is checked; the caller is responsible for the provenance of `counts`.
    pub fn from_counts(tuple: &GeneratorTuple, counts: Vec<BigUint>) -> Result<Self> {
        if !matches!(counts.first(), Some(c) if c.is_one()) {
            return Err(Error::MalformedTable("counts[0] must be 1".into()));
        }
        if counts.len() > MAX_TABLE_LEN {
            return Err(Error::TooLarge(format!("table limit {}", counts.len() - 1)));
        }
        Ok(DenumerantTable { tuple: tuple.clone(), counts })
    }

    pub fn tuple(&self) -> &GeneratorTuple {
        &self.tuple
    }

    pub fn limit(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn get(&self, n: usize) -> Result<&BigUint> {
        self.counts.get(n).ok_or(Error::BeyondTable { cap: self.limit(), requested: n })
    }

    /// Whether `d(n) <= p`. Panics if `n` is past the table.
    pub(crate) fn at_most(&self, n: usize, p: u64) -> bool {
        match self.counts[n].to_u64() {
            Some(c) => c <= p,
            None => false,
        }
    }
}

/// `d(n; A)`, computed by the DP up to `n`.
pub fn denumerant(n: usize, tuple: &GeneratorTuple) -> Result<BigUint> {
    let table = DenumerantTable::new(tuple, n)?;
    Ok(table.counts[n].clone())
}

pub fn denumerant_table(limit: usize, tuple: &GeneratorTuple) -> Result<DenumerantTable> {
    DenumerantTable::new(tuple, limit)
}

/// Largest `n <= search_cap` with exactly `p` representations (`g*_p`).
///
/// The cap is the caller's obligation: every `n` above it must have more than
/// `p` representations, e.g. `p_frobenius(A, p) + a_1`.
pub fn largest_with_exactly_p(tuple: &GeneratorTuple, p: u64, search_cap: usize) -> Result<Option<u64>> {
    let table = DenumerantTable::new(tuple, search_cap)?;
    Ok(largest_with_exactly_p_in(&table, p))
}

pub fn largest_with_exactly_p_in(table: &DenumerantTable, p: u64) -> Option<u64> {
    let target = BigUint::from(p);
    table.counts.iter().rposition(|c| *c == target).map(|n| n as u64)
}
