//! `g_p(L_i, L_{i+2}, L_{i+k})`.

use num_bigint::BigInt;

use super::{settle, CaseTag, Candidate, Ctx, FormulaFamily, FormulaResult};
use crate::error::Result;
use crate::sequences::SequenceKind;

use FormulaFamily::{LucasG0, LucasG1, LucasG2, LucasG3, LucasGp};

/// Closed-form `g_p` for the Lucas triple. `p = 0` is covered for every `r`.
pub fn gp_lucas(i: u32, k: u32, p: u32) -> Result<FormulaResult> {
    let ctx = Ctx::new(SequenceKind::Lucas, i, k, p)?;
    let mut candidates = Vec::new();
    if p == 0 {
        candidates.push(g0(&ctx));
    }
    candidates.extend(special(&ctx, p));
    if ctx.r_at_least(p) && !(p == 0 && ctx.r_is(0)) {
        let family = match p {
            1 => LucasG1,
            2 => LucasG2,
            3 => LucasG3,
            _ => LucasGp,
        };
        candidates.push(ctx.general_g(p, CaseTag::new(family, "general")));
    }
    Ok(settle(&ctx, candidates, "r<p"))
}

/// Two-way formula with the strict discriminant.
fn g0(ctx: &Ctx) -> Candidate {
    let disc = ctx.discriminant(true);
    let (li, l2, r) = (&ctx.xi, &ctx.x2, &ctx.r);
    if ctx.r_is(0) || disc.first_case() {
        let v = (li - 1) * l2 - li * (r * &ctx.fk2 + 1);
        let branch = if ctx.r_is(0) { "r=0" } else { "first" };
        Candidate::new(CaseTag::new(LucasG0, branch), v).with_discriminant(disc)
    } else {
        let v = (r * &ctx.fk - 1) * l2 - li * ((r - 1) * &ctx.fk2 + 1);
        Candidate::new(CaseTag::new(LucasG0, "second"), v).with_discriminant(disc)
    }
}

fn special(ctx: &Ctx, p: u32) -> Option<Candidate> {
    let (i, d) = (ctx.i, i64::from(ctx.k) - i64::from(ctx.i));
    let f = |n: u32| ctx.f(n);
    let l = |n: u32| ctx.x(n);
    let (li, l2) = (&ctx.xi, &ctx.x2);
    let c = |family, branch, v: BigInt| Some(Candidate::new(CaseTag::new(family, branch), v));
    match (p, d) {
        (1, d) if d >= 4 => c(LucasG1, "k>=i+4", (li * 2 - 1) * l2 - li),
        (1, 3) => c(LucasG1, "k=i+3", (f(i + 3) - 1) * l2 - li),
        (1, 2) => c(LucasG1, "k=i+2", (f(i - 1) * 3 - 1) * l2 + l(2 * i + 2) - li),

        (2, d) if d >= 4 => c(LucasG2, "k>=i+4", (li * 3 - 1) * l2 - li),
        (2, 3) => c(LucasG2, "k=i+3", (li - 1) * l2 + l(2 * i + 3) - li),
        (2, 2) if i % 2 == 1 => c(LucasG2, "k=i+2;i odd", (li - 1) * l2 + l(2 * i + 2) - li),
        (2, 2) => c(LucasG2, "k=i+2;i even", (li * 2 - 1) * l2 - li),
        (2, 1) => c(LucasG2, "k=i+1", (f(i - 1) * 2 - 1) * l2 + l(2 * i + 1) * 2 - li),
        (2, 0) if i == 3 => c(LucasG2, "k=i;i=3", l2 + l(2 * i) * 3 - li),

        (3, d) if d >= 5 => c(LucasG3, "k>=i+5", (li * 4 - 1) * l2 - li),
        (3, 4) => c(LucasG3, "k=i+4", (f(i - 1) * 4 - f(i - 2) - 1) * l2 + l(2 * i + 4) - li),
        (3, 3) => c(LucasG3, "k=i+3", (f(i + 1) * 4 - 1) * l2 - li),
        (3, 2) => c(LucasG3, "k=i+2", (f(i) + f(i - 3) * 2 - 1) * l2 + l(2 * i + 2) * 2 - li),
        (3, 1) => c(LucasG3, "k=i+1", (f(i - 1) - 1) * l2 + l(2 * i + 1) * 3 - li),
        (3, 0) if i >= 4 => c(LucasG3, "k=i", (f(i - 3) * 2 - 1) * l2 + l(2 * i) * 4 - li),
        (3, 0) => c(LucasG3, "k=i;i=3", l2 * 3 + l(2 * i) * 2 - li),
        _ => None,
    }
}
