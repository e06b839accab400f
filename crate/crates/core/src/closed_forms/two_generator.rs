//! The regime where the third Fibonacci generator is too large to matter and
//! `g_p` collapses to the two-generator value.

use num_bigint::BigUint;

use super::{CaseTag, Candidate, Ctx, FormulaFamily};
use crate::sequences::fib;

/// `(p, h)`: `g_p(F_i, F_{i+2}, F_{i+k}) = g_p(F_i, F_{i+2})` for `k >= i + h`.
pub const PROPOSITION_PAIRS: &[(u32, u32)] = &[
    (3, 4),
    (4, 4),
    (5, 5),
    (6, 5),
    (7, 5),
    (8, 5),
    (9, 6),
    (10, 6),
    (11, 6),
    (12, 6),
    (13, 6),
    (14, 6),
    (15, 7),
    (16, 7),
    (17, 7),
    (18, 7),
    (19, 7),
    (20, 7),
    (21, 7),
    (22, 7),
    (23, 7),
    (24, 8),
];

pub fn proposition_h(p: u32) -> Option<u32> {
    PROPOSITION_PAIRS.iter().find(|&&(q, _)| q == p).map(|&(_, h)| h)
}

/// `(p + 1) F_i F_{i+2} - F_i - F_{i+2}`.
pub fn gp_fib_two_gen(i: u32, p: u32) -> BigUint {
    let (a, b) = (fib(i), fib(i + 2));
    (&a * &b) * (p + 1) - a - b
}

pub(super) fn two_generator_candidate(ctx: &Ctx, p: u32) -> Option<Candidate> {
    let h = proposition_h(p)?;
    if ctx.k < ctx.i + h {
        return None;
    }
    let value = (&ctx.xi * &ctx.x2) * (p + 1) - &ctx.xi - &ctx.x2;
    Some(Candidate::new(CaseTag::new(FormulaFamily::FibTwoGen, "k>=i+h"), value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use crate::apery::{p_frobenius, p_frobenius_scan};
    use crate::closed_forms::gp_fib;
    use crate::denumerant::GeneratorTuple;
    use num_traits::ToPrimitive;

    fn pair(i: u32) -> GeneratorTuple {
        GeneratorTuple::new(vec![fib(i).to_u64().unwrap(), fib(i + 2).to_u64().unwrap()]).unwrap()
    }

    #[test]
    fn two_generator_values() {
        assert_eq!(gp_fib_two_gen(3, 0), BigUint::from(3u32));
        assert_eq!(gp_fib_two_gen(4, 1), BigUint::from(37u32));
        assert_eq!(gp_fib_two_gen(6, 0), BigUint::from(139u32));
        for i in 3..=9 {
            for p in 0..=4 {
                assert_eq!(BigInt::from(gp_fib_two_gen(i, p)), p_frobenius_scan(&pair(i), p.into()).unwrap());
            }
        }
    }

    #[test]
    fn h_lookup() {
        assert_eq!(proposition_h(3), Some(4));
        assert_eq!(proposition_h(8), Some(5));
        assert_eq!(proposition_h(15), Some(7));
        assert_eq!(proposition_h(24), Some(8));
        assert_eq!(proposition_h(2), None);
        assert_eq!(proposition_h(100), None);
        assert!(PROPOSITION_PAIRS.windows(2).all(|w| w[0].0 + 1 == w[1].0 && w[0].1 <= w[1].1));
    }

    #[test]
    fn collapse_confirmed_by_oracle() {
        for &(p, h) in PROPOSITION_PAIRS.iter().filter(|(p, _)| *p <= 6) {
            for i in 3..=5 {
                for k in [i + h, i + h + 1] {
                    let t = GeneratorTuple::new(vec![
                        fib(i).to_u64().unwrap(),
                        fib(i + 2).to_u64().unwrap(),
                        fib(i + k).to_u64().unwrap(),
                    ])
                    .unwrap();
                    let expected = BigInt::from(gp_fib_two_gen(i, p));
                    assert_eq!(p_frobenius(&t, p.into()).unwrap(), expected, "p={p} i={i} k={k}");
                    assert_eq!(gp_fib(i, k, p).unwrap().value.map(BigInt::from), Some(expected));
                }
            }
        }
    }

    #[test]
    fn small_p_tail_starts_one_step_earlier() {
        // the p = 3 tail formula already holds from k = i + 3
        for i in 3..=9 {
            let t = GeneratorTuple::new(vec![
                fib(i).to_u64().unwrap(),
                fib(i + 2).to_u64().unwrap(),
                fib(2 * i + 3).to_u64().unwrap(),
            ])
            .unwrap();
            assert_eq!(p_frobenius(&t, 3).unwrap(), BigInt::from(gp_fib_two_gen(i, 3)), "i={i}");
        }
    }
}
