//! Level-`p` Apéry sets and the p-Frobenius / p-Sylvester numbers they determine.
//!
//! `m_j^(p)` is the least `n ≡ j (mod a_1)` with at least `p + 1`
//! representations. From the set `{m_0^(p), ..., m_{a_1-1}^(p)}`:
//!
//! ```text
//! g_p(A) = max_j m_j^(p) - a_1
//! n_p(A) = (1/a_1) Σ_j m_j^(p) - (a_1 - 1)/2
//! ```
//!
//! These are the ground truth the closed forms are checked against. A second,
//! independent oracle ([`p_frobenius_scan`], [`p_sylvester_scan`]) reads the
//! definitions straight off a denumerant table.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::denumerant::{DenumerantTable, GeneratorTuple, MAX_TABLE_LEN};
use crate::error::{Error, Result};

/// A table bound past which every `n` has at least `p + 1` representations,
/// padded by `a_1` so every `m_j^(p)` lies inside it.
///
/// With `gcd(a_1, a_2) = 1` the two-generator count already forces `p + 1`
/// representations above `(p+1) a_1 a_2 - a_1 - a_2`. Otherwise Schur's bound
/// `g_0 <= (a_1 - 1)(a_l - 1) - 1` plus `p` copies of `a_1 a_l` is used.
pub fn level_cap(tuple: &GeneratorTuple, p: u64) -> Result<usize> {
    let gens = tuple.gens();
    let a1 = u128::from(gens[0]);
    let a2 = u128::from(gens[1]);
    let al = u128::from(gens[gens.len() - 1]);
    let levels = u128::from(p) + 1;
    let cap = if a1.gcd(&a2) == 1 {
        levels.checked_mul(a1).and_then(|v| v.checked_mul(a2))
    } else {
        u128::from(p)
            .checked_mul(a1 * al)
            .and_then(|v| v.checked_add((a1 - 1) * (al - 1) + a1))
    };
    match cap.and_then(|c| usize::try_from(c).ok()) {
        Some(c) if c < MAX_TABLE_LEN => Ok(c),
        _ => Err(Error::TooLarge(format!("level-{p} table for {tuple}"))),
    }
}

/// Where oracle tables come from. The default builds them fresh; a caching
/// implementation must return exactly what a fresh build would.
pub trait TableSource: Sync {
    fn table(&self, tuple: &GeneratorTuple, cap: usize) -> Result<DenumerantTable>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct FreshTables;

impl TableSource for FreshTables {
    fn table(&self, tuple: &GeneratorTuple, cap: usize) -> Result<DenumerantTable> {
        DenumerantTable::new(tuple, cap)
    }
}

/// `Ap(A; p)`, indexed by residue: `elements[j] = m_j^(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperySet {
    tuple: GeneratorTuple,
    level: u64,
    elements: Vec<u64>,
}

impl AperySet {
    pub fn tuple(&self) -> &GeneratorTuple {
        &self.tuple
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn sorted(&self) -> Vec<u64> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }

    pub fn max(&self) -> u64 {
        self.elements.iter().copied().max().unwrap_or(0)
    }

    pub fn sum(&self) -> BigUint {
        self.elements.iter().map(|&m| BigUint::from(m)).sum()
    }

    /// `max_j m_j - a_1`.
    pub fn frobenius(&self) -> BigInt {
        BigInt::from(self.max()) - BigInt::from(self.tuple.a1())
    }

    /// `(1/a_1) Σ m_j - (a_1 - 1)/2`. The division is exact for every genuine
    /// Apéry set; a remainder means the set is wrong and is a bug.
    pub fn sylvester(&self) -> BigUint {
        let a1 = BigUint::from(self.tuple.a1());
        let twice = self.sum() * 2u32;
        let offset = &a1 * (&a1 - 1u32);
        assert!(twice >= offset, "Apéry sum below the residue floor for {}", self.tuple);
        let (q, rem) = (twice - offset).div_rem(&(a1 * 2u32));
        assert!(rem.is_zero(), "inexact Sylvester division for {} at level {}", self.tuple, self.level);
        q
    }
}

/// A denumerant table sized for levels `0..=max_level`, serving Apéry sets at
/// any of those levels from one DP pass.
#[derive(Debug, Clone)]
pub struct SemigroupOracle {
    table: DenumerantTable,
    max_level: u64,
}

impl SemigroupOracle {
    pub fn new(tuple: &GeneratorTuple, max_level: u64) -> Result<Self> {
        if tuple.a1() == 1 {
            return Err(Error::DegenerateTuple);
        }
        let cap = level_cap(tuple, max_level)?;
        Self::with_table(DenumerantTable::new(tuple, cap)?, max_level)
    }

    /// Oracle over a table taken from `source`.
    pub fn from_source(tuple: &GeneratorTuple, max_level: u64, source: &dyn TableSource) -> Result<Self> {
        if tuple.a1() == 1 {
            return Err(Error::DegenerateTuple);
        }
        Self::with_table(source.table(tuple, level_cap(tuple, max_level)?)?, max_level)
    }

    /// Uses a prebuilt table, which must reach [`level_cap`] for `max_level`.
    pub fn with_table(table: DenumerantTable, max_level: u64) -> Result<Self> {
        if table.tuple().a1() == 1 {
            return Err(Error::DegenerateTuple);
        }
        let cap = level_cap(table.tuple(), max_level)?;
        if table.limit() < cap {
            return Err(Error::BeyondTable { cap: table.limit(), requested: cap });
        }
        Ok(SemigroupOracle { table, max_level })
    }

    pub fn tuple(&self) -> &GeneratorTuple {
        self.table.tuple()
    }

    pub fn max_level(&self) -> u64 {
        self.max_level
    }

    pub fn table(&self) -> &DenumerantTable {
        &self.table
    }

    pub fn apery_set(&self, p: u64) -> Result<AperySet> {
        if p > self.max_level {
            let cap = level_cap(self.tuple(), p)?;
            return Err(Error::BeyondTable { cap: self.table.limit(), requested: cap });
        }
        let a1 = self.tuple().a1() as usize;
        let elements = (0..a1)
            .map(|j| {
                let mut n = j;
                // level_cap guarantees termination inside the table
                while self.table.at_most(n, p) {
                    n += a1;
                }
                n as u64
            })
            .collect();
        Ok(AperySet { tuple: self.tuple().clone(), level: p, elements })
    }

    pub fn p_frobenius(&self, p: u64) -> Result<BigInt> {
        Ok(self.apery_set(p)?.frobenius())
    }

    pub fn p_sylvester(&self, p: u64) -> Result<BigUint> {
        Ok(self.apery_set(p)?.sylvester())
    }
}

pub fn apery_set(tuple: &GeneratorTuple, p: u64) -> Result<AperySet> {
    SemigroupOracle::new(tuple, p)?.apery_set(p)
}

pub fn p_frobenius(tuple: &GeneratorTuple, p: u64) -> Result<BigInt> {
    Ok(apery_set(tuple, p)?.frobenius())
}

pub fn p_sylvester(tuple: &GeneratorTuple, p: u64) -> Result<BigUint> {
    Ok(apery_set(tuple, p)?.sylvester())
}

/// Largest `n` with `d(n) <= p`, read directly off a table reaching
/// [`level_cap`]. Returns -1 when there is none (only possible when the
/// tuple contains 1 and `p = 0`).
pub fn p_frobenius_scan(tuple: &GeneratorTuple, p: u64) -> Result<BigInt> {
    let table = DenumerantTable::new(tuple, level_cap(tuple, p)?)?;
    Ok(scan_frobenius(&table, p).map_or_else(|| BigInt::from(-1), BigInt::from))
}

/// Number of `n >= 0` with `d(n) <= p`.
pub fn p_sylvester_scan(tuple: &GeneratorTuple, p: u64) -> Result<BigUint> {
    let table = DenumerantTable::new(tuple, level_cap(tuple, p)?)?;
    let count = match scan_frobenius(&table, p) {
        Some(g) => (0..=g as usize).filter(|&n| at_most(&table, n, p)).count(),
        None => 0,
    };
    Ok(BigUint::from(count))
}

fn at_most(table: &DenumerantTable, n: usize, p: u64) -> bool {
    table.counts()[n].to_u64().is_some_and(|c| c <= p)
}

fn scan_frobenius(table: &DenumerantTable, p: u64) -> Option<u64> {
    (0..=table.limit()).rev().find(|&n| at_most(table, n, p)).map(|n| n as u64)
}
