//! `n_p` for Fibonacci triples. There are no Lucas formulas; [`np_lucas`]
//! always reports "not covered".

use num_bigint::BigInt;

use super::{half, settle, CaseTag, Candidate, Ctx, FormulaFamily, FormulaResult};
use crate::error::Result;
use crate::sequences::SequenceKind;

use FormulaFamily::{FibN1, FibN2, FibN3, FibNp};

pub fn np_fib(i: u32, k: u32, p: u32) -> Result<FormulaResult> {
    let ctx = Ctx::new(SequenceKind::Fibonacci, i, k, p)?;
    let mut candidates = Vec::new();
    candidates.extend(special(&ctx, p));
    if ctx.r_at_least(p) {
        if p == 1 {
            candidates.push(n1_general(&ctx));
        }
        let family = match p {
            2 => FibN2,
            3 => FibN3,
            _ => FibNp,
        };
        candidates.push(np_general(&ctx, p, CaseTag::new(family, "general")));
    }
    Ok(settle(&ctx, candidates, "r<p"))
}

pub fn np_lucas(i: u32, k: u32, p: u32) -> Result<FormulaResult> {
    Ctx::new(SequenceKind::Lucas, i, k, p)?;
    Ok(FormulaResult::uncovered("no Lucas n_p formula"))
}

/// `((F_i + 2p F_k - 1) F_{i+2} - F_i + 1)/2 - (2r F_i - (r+p+1)(r-p) F_k) F_{k-2}/2`.
fn np_general(ctx: &Ctx, p: u32, tag: CaseTag) -> Candidate {
    let (fi, f2, fk, fk2, r) = (&ctx.xi, &ctx.x2, &ctx.fk, &ctx.fk2, &ctx.r);
    let head = half((fi + fk * (2 * p) - 1) * f2 - fi + 1);
    let tail = half((r * fi * 2 - (r + p + 1) * (r - p) * fk) * fk2);
    Candidate::new(tag, head - tail)
}

/// The `p = 1`, `r >= 1` statement in its own arrangement.
fn n1_general(ctx: &Ctx) -> Candidate {
    let (fi, f2, fk, fk2, r) = (&ctx.xi, &ctx.x2, &ctx.fk, &ctx.fk2, &ctx.r);
    let head = half((fi + fk * 2 - 1) * f2 - fi + 1);
    let tail = (r * fi - half((r - 1) * (r + 2)) * fk) * fk2;
    Candidate::new(CaseTag::new(FibN1, "general"), head - tail)
}

fn special(ctx: &Ctx, p: u32) -> Option<Candidate> {
    let (i, d) = (ctx.i, i64::from(ctx.k) - i64::from(ctx.i));
    let f = |n: u32| ctx.f(n);
    let (fi, f2, fk, fk2) = (&ctx.xi, &ctx.x2, &ctx.fk, &ctx.fk2);
    let c = |family, branch, v: BigInt| Some(Candidate::new(CaseTag::new(family, branch), v));
    let tail = |coef: u32| half(fi * f2 * coef - fi - f2 + 1);
    match (p, d) {
        (1, d) if d >= 2 => c(FibN1, "k>=i+2", tail(3)),
        (1, 0 | 1) => c(FibN1, "k=i|i+1", tail(3) - (fi * 2 - fk) * fk2),

        (2, d) if d >= 3 => c(FibN2, "k>=i+3", tail(5)),
        (2, 2) => c(FibN2, "k=i+2", half((f2 * 7 - fi * 6 - 1) * fi - f2 + 1)),
        (2, 1) => c(FibN2, "k=i+1", half((f2 * 7 - fi * 8 - 1) * fi - f2 + 1)),
        (2, 0) => c(FibN2, "k=i", tail(3)),
        (2, -1) => c(FibN2, "k=i-1", half((fi * 170 - 1) * fi + (f2 * 24 - fi * 125 - 1) * f2 + 1)),

        (3, d) if d >= 3 => c(FibN3, "k>=i+3", tail(7)),
        (3, 2) => Some(Candidate::new(
            CaseTag::unconfirmed(FibN3, "k=i+2"),
            (fi - 1) * f2 + f(2 * i + 2) - fi,
        )),
        (3, 1) => Some(Candidate::new(
            CaseTag::unconfirmed(FibN3, "k=i+1"),
            (fi + f(i - 2) - 1) * f2 + f(2 * i + 1) - fi,
        )),
        (3, 0) => c(FibN3, "k=i", half((fi * 5 - 1) * f2 - fi + 1) - fi * f(i - 2) * 2),
        (3, -1) if i >= 4 => c(FibN3, "k=i-1", half((fi + f(i - 1) * 4 - 1) * f2 - fi + 1) - f(i - 1) * f(i - 3) * 2),
        (3, -2) if i >= 5 => c(FibN3, "k=i-2", half((fi * 3 - 1) * f2 - fi + 1) - (fi * 8 - f(i - 2) * 15) * f(i - 4)),
        _ => None,
    }
}
