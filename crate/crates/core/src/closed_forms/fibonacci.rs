//! `g_p(F_i, F_{i+2}, F_{i+k})`.

use num_bigint::{BigInt, BigUint};

use super::two_generator::two_generator_candidate;
use super::{settle, CaseTag, Candidate, Ctx, FormulaFamily, FormulaResult};
use crate::error::Result;
use crate::sequences::SequenceKind;

use FormulaFamily::{FibG1, FibG2, FibG3, FibGp};

/// Closed-form `g_p` for the Fibonacci triple, or "not covered" when
/// `r < p` outside the tabulated branches (and for `r = p = 0`).
pub fn gp_fib(i: u32, k: u32, p: u32) -> Result<FormulaResult> {
    let ctx = Ctx::new(SequenceKind::Fibonacci, i, k, p)?;
    let mut candidates = Vec::new();
    candidates.extend(special(&ctx, p));
    candidates.extend(two_generator_candidate(&ctx, p));
    if ctx.r_at_least(p) && !(p == 0 && ctx.r_is(0)) {
        let family = match p {
            1 => FibG1,
            2 => FibG2,
            3 => FibG3,
            _ => FibGp,
        };
        candidates.push(ctx.general_g(p, CaseTag::new(family, "general")));
    }
    candidates.extend(refined(&ctx, p));
    Ok(settle(&ctx, candidates, "r<p"))
}

/// Sharper statements of the `r >= p` formula for `p = 1, 2` and `k` a few
/// steps below `i`, where the discriminant has been resolved in advance.
pub fn refined_g_fib(i: u32, k: u32, p: u32) -> Result<Option<(CaseTag, BigUint)>> {
    let ctx = Ctx::new(SequenceKind::Fibonacci, i, k, p)?;
    Ok(refined(&ctx, p).map(|c| {
        let value = super::to_unsigned(c.value, "refined value");
        (c.tag, value)
    }))
}

fn offset(ctx: &Ctx) -> i64 {
    i64::from(ctx.k) - i64::from(ctx.i)
}

fn special(ctx: &Ctx, p: u32) -> Option<Candidate> {
    let (i, d) = (ctx.i, offset(ctx));
    let f = |n: u32| ctx.f(n);
    let (fi, f2) = (&ctx.xi, &ctx.x2);
    let one = || BigInt::from(1);
    let c = |family, branch, v: BigInt| Some(Candidate::new(CaseTag::new(family, branch), v));
    match (p, d) {
        (1, d) if d >= 2 => c(FibG1, "k>=i+2", (fi * 2 - 1) * f2 - fi),
        (1, 1) => c(FibG1, "k=i+1", (f(i - 2) - 1) * f2 + f(2 * i + 1) - fi),
        (1, 0) => c(FibG1, "k=i", (fi - 1) * f2 + f(2 * i) - fi),

        (2, d) if d >= 3 => c(FibG2, "k>=i+3", (fi * 3 - 1) * f2 - fi),
        (2, 2) if i % 2 == 1 => c(FibG2, "k=i+2;i odd", (f(i - 2) - 1) * f2 + f(2 * i + 2) - fi),
        (2, 2) => c(FibG2, "k=i+2;i even", (f2 - one()) * f2 - fi),
        (2, 1) => c(FibG2, "k=i+1", (fi - 1) * f2 + f(2 * i + 1) - fi),
        (2, 0) => c(FibG2, "k=i", (fi * 2 - 1) * f2 - fi),
        (2, -1) if i >= 5 => c(FibG2, "k=i-1", (f(i - 4) - 1) * f2 + f(2 * i - 1) * 3 - fi),
        (2, -1) => c(FibG2, "k=i-1;i=4", f2 + f(2 * i - 1) * 2 - fi),

        (3, d) if d >= 3 => c(FibG3, "k>=i+3", (fi * 4 - 1) * f2 - fi),
        (3, 2) => c(FibG3, "k=i+2", (fi - 1) * f2 + f(2 * i + 2) - fi),
        (3, 1) => c(FibG3, "k=i+1", (fi + f(i - 2) - 1) * f2 + f(2 * i + 1) - fi),
        (3, 0) => c(FibG3, "k=i", (fi - 1) * f2 + f(2 * i) * 2 - fi),
        (3, -1) => c(FibG3, "k=i-1", (f(i - 2) - 1) * f2 + f(2 * i - 1) * 3 - fi),
        (3, -2) if i >= 6 => c(FibG3, "k=i-2", (f(i - 5) - 1) * f2 + f(2 * i - 2) * 5 - fi),
        (3, -2) => c(FibG3, "k=i-2;i=5", f2 + f(2 * i - 2) * 4 - fi),
        _ => None,
    }
}

fn refined(ctx: &Ctx, p: u32) -> Option<Candidate> {
    let (i, d) = (ctx.i, offset(ctx));
    let f = |n: u32| ctx.f(n);
    let (fi, f2) = (&ctx.xi, &ctx.x2);
    let c = |family, branch, v: BigInt| Some(Candidate::new(CaseTag::new(family, branch), v));
    match (p, d) {
        (1, -1) => c(FibG1, "k=i-1", (f(i - 2) - 1) * f2 + f(2 * i - 1) * 2 - fi),
        (1, -2) => c(FibG1, "k=i-2", (f(i - 3) - 1) * f2 + f(2 * i - 2) * 3 - fi),
        (1, -3) if i >= 7 => c(FibG1, "k=i-3", (f(i - 6) - 1) * f2 + f(2 * i - 3) * 5 - fi),
        (1, -3) => c(FibG1, "k=i-3,i=6", f2 + f(2 * i - 3) * 4 - fi),
        (1, -4) => c(FibG1, "k=i-4", (f(i - 5) + f(i - 7) - 1) * f2 + f(2 * i - 4) * 7 - fi),
        (1, -5) if i >= 10 => c(FibG1, "k=i-5", (f(i - 5) - 1) * f2 + f(2 * i - 5) * 11 - fi),
        (1, -5) if i == 9 => c(FibG1, "k=i-5,i=9", f(2 * i - 5) * 12 - fi),
        (1, -5) => c(FibG1, "k=i-5,i=8", f(2 * i - 5) * 11 - fi),
        (2, -2) => {
            assert!(ctx.r_is(2), "k=i-2 refinement expects r=2");
            c(FibG2, "k=i-2", (f(i - 3) - 1) * f2 + f(2 * i - 2) * 4 - fi)
        }
        (2, -3) if i >= 7 => {
            assert!(ctx.r_is(4), "k=i-3 refinement expects r=4");
            c(FibG2, "k=i-3", (f(i - 6) - 1) * f2 + f(2 * i - 3) * 6 - fi)
        }
        (2, -3) => c(FibG2, "k=i-3,i=6", f2 + f(2 * i - 3) * 5 - fi),
        _ => None,
    }
}
