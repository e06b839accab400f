//! Grid sweeps comparing every closed form against the Apéry oracle.
//!
//! One oracle table is built per `(kind, i, k)` at the largest requested `p`
//! and shared by all `p` and both quantities. Grid points run on a rayon
//! pool; results are collected in grid order, so reports do not depend on
//! scheduling.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde_json::{json, Value};

pub use crate::apery::{FreshTables, TableSource};
use crate::apery::SemigroupOracle;
use crate::closed_forms::{gp_fib_two_gen, params, CaseTag, PROPOSITION_PAIRS};
use crate::compute::{closed_form, family_tuple, oracle_value, Quantity};
use crate::error::{Error, Result};
use crate::sequences::SequenceKind;

/// A `k` bound, either absolute or relative to `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KBound {
    Abs(u32),
    Rel(i64),
}

impl KBound {
    fn at(self, i: u32) -> i64 {
        match self {
            KBound::Abs(v) => i64::from(v),
            KBound::Rel(d) => i64::from(i) + d,
        }
    }
}

impl FromStr for KBound {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || format!("bad k bound `{s}` (expected N, i, i+N or i-N)");
        match s.strip_prefix('i') {
            None => s.parse().map(KBound::Abs).map_err(|_| bad()),
            Some("") => Ok(KBound::Rel(0)),
            Some(rest) => {
                let (sign, digits) = match rest.split_at(1) {
                    ("+", d) => (1, d),
                    ("-", d) => (-1, d),
                    _ => return Err(bad()),
                };
                digits.parse::<i64>().map(|d| KBound::Rel(sign * d)).map_err(|_| bad())
            }
        }
    }
}

/// Inclusive `lo..hi` range of `k`, clamped below at 3 once `i` is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KRange {
    pub lo: KBound,
    pub hi: KBound,
}

impl KRange {
    pub fn resolve(&self, i: u32) -> RangeInclusive<u32> {
        let lo = self.lo.at(i).max(3);
        let hi = self.hi.at(i);
        let hi = u32::try_from(hi.max(0)).unwrap_or(u32::MAX);
        (lo as u32)..=hi
    }
}

impl FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (lo, hi) = s.split_once("..").ok_or_else(|| format!("bad k range `{s}` (expected LO..HI)"))?;
        Ok(KRange { lo: lo.parse()?, hi: hi.trim_start_matches('=').parse()? })
    }
}

/// Parses an inclusive `LO..HI` (or a single value) range of integers.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<u32>, String> {
    let bad = |e: std::num::ParseIntError| format!("bad range `{s}`: {e}");
    match s.split_once("..") {
        Some((lo, hi)) => Ok(lo.trim().parse().map_err(bad)?..=hi.trim_start_matches('=').trim().parse().map_err(bad)?),
        None => {
            let v = s.trim().parse().map_err(bad)?;
            Ok(v..=v)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Frobenius,
    Sylvester,
    Both,
}

impl Mode {
    pub fn quantities(self) -> &'static [Quantity] {
        match self {
            Mode::Frobenius => &[Quantity::Frobenius],
            Mode::Sylvester => &[Quantity::Sylvester],
            Mode::Both => &[Quantity::Frobenius, Quantity::Sylvester],
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "g" | "frobenius" => Ok(Mode::Frobenius),
            "n" | "sylvester" => Ok(Mode::Sylvester),
            "both" => Ok(Mode::Both),
            other => Err(format!("unknown mode `{other}` (expected frobenius, sylvester or both)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub kinds: Vec<SequenceKind>,
    pub i: RangeInclusive<u32>,
    pub k: KRange,
    pub p: RangeInclusive<u32>,
    pub mode: Mode,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if *self.i.start() < 3 {
            return Err(Error::Domain { name: "i", value: *self.i.start() });
        }
        if self.kinds.is_empty() || self.i.is_empty() || self.p.is_empty() {
            return Err(Error::InvalidSweep("empty kind, i or p range".into()));
        }
        if self.points().is_empty() {
            return Err(Error::InvalidSweep("k range is empty for every i".into()));
        }
        Ok(())
    }

    /// `(kind, i, k)` in grid order.
    pub fn points(&self) -> Vec<(SequenceKind, u32, u32)> {
        let mut out = Vec::new();
        for &kind in &self.kinds {
            for i in self.i.clone() {
                for k in self.k.resolve(i) {
                    out.push((kind, i, k));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Match,
    Mismatch,
    OracleOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub kind: SequenceKind,
    pub i: u32,
    pub k: u32,
    pub p: u32,
    pub r: BigUint,
    pub ell: BigUint,
    pub quantity: Quantity,
    pub closed: Option<BigUint>,
    pub oracle: BigInt,
    pub tag: CaseTag,
}

impl SweepRow {
    pub fn outcome(&self) -> Outcome {
        match &self.closed {
            None => Outcome::OracleOnly,
            Some(v) if BigInt::from(v.clone()) == self.oracle => Outcome::Match,
            Some(_) => Outcome::Mismatch,
        }
    }

    fn match_field(&self) -> &'static str {
        match self.outcome() {
            Outcome::Match => "yes",
            Outcome::Mismatch => "no",
            Outcome::OracleOnly => "n/a",
        }
    }

    fn describe(&self) -> String {
        let closed = self.closed.as_ref().map_or("-".to_string(), ToString::to_string);
        format!(
            "{} i={} k={} p={} {} closed={} oracle={} {}",
            self.kind, self.i, self.k, self.p, self.quantity, closed, self.oracle, self.tag
        )
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub rows: Vec<SweepRow>,
    pub wall_time: Duration,
}

pub const CSV_HEADER: &str = "kind,i,k,p,r,ell,quantity,closed_value,oracle_value,case_tag,match";

fn number(v: impl ToString) -> Value {
    Value::Number(v.to_string().parse().expect("integer literal"))
}

impl VerifyReport {
    pub fn total(&self) -> usize {
        self.rows.len()
    }

    pub fn covered(&self) -> usize {
        self.rows.iter().filter(|r| r.closed.is_some()).count()
    }

    pub fn matches(&self) -> usize {
        self.count(Outcome::Match)
    }

    pub fn oracle_only(&self) -> usize {
        self.count(Outcome::OracleOnly)
    }

    fn count(&self, o: Outcome) -> usize {
        self.rows.iter().filter(|r| r.outcome() == o).count()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| r.outcome() == Outcome::Mismatch)
    }

    /// Mismatches in branches not already marked unconfirmed.
    pub fn confirmed_mismatches(&self) -> impl Iterator<Item = &SweepRow> {
        self.mismatches().filter(|r| !r.tag.unconfirmed)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let closed = r.closed.as_ref().map_or(String::new(), ToString::to_string);
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.kind,
                r.i,
                r.k,
                r.p,
                r.r,
                r.ell,
                r.quantity,
                closed,
                r.oracle,
                r.tag,
                r.match_field()
            );
        }
        out
    }

    /// Summary plus rows; wall time is left out so the document is reproducible.
    pub fn to_json(&self) -> Value {
        json!({
            "summary": self.summary_json(),
            "rows": self.rows.iter().map(|r| json!({
                "kind": r.kind.short_name(),
                "i": r.i,
                "k": r.k,
                "p": r.p,
                "r": number(&r.r),
                "ell": number(&r.ell),
                "quantity": r.quantity.symbol(),
                "closed_value": r.closed.as_ref().map(number),
                "oracle_value": number(&r.oracle),
                "case_tag": r.tag.to_string(),
                "match": r.match_field(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn summary_json(&self) -> Value {
        json!({
            "total": self.total(),
            "covered": self.covered(),
            "matches": self.matches(),
            "mismatches": self.mismatches().count(),
            "unconfirmed_mismatches": self.mismatches().count() - self.confirmed_mismatches().count(),
            "oracle_only": self.oracle_only(),
            "mismatch_rows": self.mismatches().map(SweepRow::describe).collect::<Vec<_>>(),
        })
    }

    pub fn summary(&self) -> String {
        let mism = self.mismatches().count();
        let mut out = format!(
            "points: {}  covered: {}  matches: {}  mismatches: {} ({} in unconfirmed branches)  oracle-only: {}\n",
            self.total(),
            self.covered(),
            self.matches(),
            mism,
            mism - self.confirmed_mismatches().count(),
            self.oracle_only()
        );
        for r in self.mismatches() {
            let _ = writeln!(out, "mismatch {}", r.describe());
        }
        out
    }
}

/// Evaluates every grid point of `spec` on `jobs` threads.
pub fn run_sweep(spec: &SweepSpec, jobs: usize, source: &dyn TableSource) -> Result<VerifyReport> {
    spec.validate()?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidSweep(format!("thread pool: {e}")))?;
    let points = spec.points();
    let chunks = pool.install(|| {
        points.par_iter().map(|&(kind, i, k)| sweep_point(spec, kind, i, k, source)).collect::<Result<Vec<_>>>()
    })?;
    Ok(VerifyReport { rows: chunks.into_iter().flatten().collect(), wall_time: start.elapsed() })
}

fn sweep_point(spec: &SweepSpec, kind: SequenceKind, i: u32, k: u32, source: &dyn TableSource) -> Result<Vec<SweepRow>> {
    let p_max = *spec.p.end();
    let base = params(kind, i, k, p_max)?;
    let tuple = family_tuple(&base)?;
    let oracle = SemigroupOracle::from_source(&tuple, p_max.into(), source)?;
    let mut rows = Vec::new();
    for p in spec.p.clone() {
        for &quantity in spec.mode.quantities() {
            let res = closed_form(kind, i, k, p, quantity)?;
            rows.push(SweepRow {
                kind,
                i,
                k,
                p,
                r: base.r.clone(),
                ell: base.ell.clone(),
                quantity,
                closed: res.value,
                oracle: oracle_value(&oracle, p, quantity)?,
                tag: res.tag,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropositionRow {
    pub p: u32,
    pub h: u32,
    pub i: u32,
    pub k: u32,
    pub oracle: BigInt,
    pub two_generator: BigUint,
}

impl PropositionRow {
    pub fn holds(&self) -> bool {
        self.oracle == BigInt::from(self.two_generator.clone())
    }
}

/// Checks the two-generator collapse at `k = i + h` and `k = i + h + 1` for
/// every listed `(p, h)` with `p <= p_max` and each `i`.
pub fn proposition_check(p_max: u32, i_range: RangeInclusive<u32>, source: &dyn TableSource) -> Result<Vec<PropositionRow>> {
    let mut out = Vec::new();
    for &(p, h) in PROPOSITION_PAIRS.iter().filter(|(p, _)| *p <= p_max) {
        for i in i_range.clone() {
            for k in [i + h, i + h + 1] {
                let tuple = family_tuple(&params(SequenceKind::Fibonacci, i, k, p)?)?;
                let oracle = SemigroupOracle::from_source(&tuple, p.into(), source)?;
                out.push(PropositionRow { p, h, i, k, oracle: oracle.p_frobenius(p.into())?, two_generator: gp_fib_two_gen(i, p) });
            }
        }
    }
    Ok(out)
}
