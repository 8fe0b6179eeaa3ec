use num_bigint::BigInt;
use num_traits::Zero;

use super::class::{square_class, SquareClass};
use super::context::PadicContext;
use crate::rational::{mod_u64, split_int, Q};
use crate::{Error, Result, Sign};

/// Hilbert symbol on square classes (closed form).
pub fn hilbert_class(a: SquareClass, b: SquareClass) -> Sign {
    assert_eq!(a.p(), b.p(), "square classes over different primes");
    let p = a.p();
    let (al, be) = (a.odd_valuation() as u64, b.odd_valuation() as u64);
    if p == 2 {
        let eps = |u: u8| ((u as u64 - 1) / 2) % 2;
        let omega = |u: u8| ((u as u64 * u as u64 - 1) / 8) % 2;
        let (u, v) = (a.unit_part(), b.unit_part());
        Sign::from_neg((eps(u) * eps(v) + al * omega(v) + be * omega(u)) % 2 == 1)
    } else {
        let sign = Sign::from_neg((al * be * ((p - 1) / 2)) % 2 == 1);
        let lu = Sign::from_neg(a.unit_part() == 1);
        let lv = Sign::from_neg(b.unit_part() == 1);
        sign * lu.pow(be) * lv.pow(al)
    }
}

/// `(a, b)_p` for nonzero rationals.
pub fn hilbert_symbol(a: &Q, b: &Q, ctx: &PadicContext) -> Result<Sign> {
    Ok(hilbert_class(square_class(a, ctx)?, square_class(b, ctx)?))
}

/// Decides `(a, b)_p` by brute force: `+1` iff `z^2 = a x^2 + b y^2` has a
/// primitive solution modulo `p^k`, `k = 2(v(a) + v(b)) + 3` after
/// stripping even powers of `p`.
pub fn hilbert_oracle(a: &Q, b: &Q, ctx: &PadicContext) -> Result<Sign> {
    let p = ctx.p();
    let (va, ia) = reduce(a, p)?;
    let (vb, ib) = reduce(b, p)?;
    let needed = 2 * (va + vb) + 3;
    if ctx.oracle_depth() < needed {
        return Err(Error::DepthTooSmall { needed, have: ctx.oracle_depth() });
    }
    let k = needed;
    let m = match p.checked_pow(k) {
        Some(m) if m <= 1 << 28 => m,
        _ => return Err(Error::OracleTooLarge { p, depth: k }),
    };
    let am = mod_u64(&ia, m);
    let bm = mod_u64(&ib, m);
    let squares = ctx.squares_mod(k);
    let is_sq = |t: u128| squares[(t % m as u128) as usize];
    // A primitive solution has x or y a unit, so one of them may be scaled to 1.
    let half = m / 2 + 1;
    for t in 0..half {
        let t2 = (t as u128 * t as u128) % m as u128;
        if is_sq(am as u128 + bm as u128 * t2) || is_sq(am as u128 * t2 + bm as u128) {
            return Ok(Sign::Plus);
        }
    }
    Ok(Sign::Minus)
}

/// An integer in the square class of `a` with `p`-valuation 0 or 1.
fn reduce(a: &Q, p: u64) -> Result<(u32, BigInt)> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let n = a.numer() * a.denom();
    let (v, u) = split_int(&n, p);
    let odd = (v % 2) as u32;
    let out = if odd == 1 { u * BigInt::from(p) } else { u };
    Ok((odd, out))
}

/// The quadratic character `b -> (a, b)_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Eta {
    a: SquareClass,
}

pub fn eta(a: SquareClass) -> Eta {
    Eta { a }
}

impl Eta {
    pub fn class(&self) -> SquareClass {
        self.a
    }

    pub fn eval(&self, b: &Q, ctx: &PadicContext) -> Result<Sign> {
        Ok(hilbert_class(self.a, square_class(b, ctx)?))
    }

    pub fn eval_class(&self, b: SquareClass) -> Sign {
        hilbert_class(self.a, b)
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_trivial()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn ctx(p: u64) -> PadicContext {
        PadicContext::new(p).unwrap()
    }

    #[test]
    fn examples() {
        let c = ctx(3);
        assert_eq!(hilbert_symbol(&q(2), &q(3), &c).unwrap(), Sign::Minus);
        assert_eq!(hilbert_oracle(&q(2), &q(3), &c).unwrap(), Sign::Minus);
        assert_eq!(hilbert_oracle(&q(1), &q(1), &c).unwrap(), Sign::Plus);
        assert_eq!(hilbert_symbol(&q(0), &q(3), &c), Err(Error::ZeroInput));
        assert_eq!(hilbert_oracle(&q(3), &q(0), &c), Err(Error::ZeroInput));
        for b in [1, 2, 3, 6, -7] {
            assert_eq!(hilbert_symbol(&q(1), &q(b), &c).unwrap(), Sign::Plus);
        }
    }

    #[test]
    fn textbook_values_at_two() {
        // (-1,-1)_2 = -1 (Hamilton quaternions ramify at 2), (2,5)_2 = -1, (2,-1)_2 = 1
        let c = ctx(2);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &c).unwrap(), Sign::Minus);
        assert_eq!(hilbert_symbol(&q(2), &q(5), &c).unwrap(), Sign::Minus);
        assert_eq!(hilbert_symbol(&q(2), &q(-1), &c).unwrap(), Sign::Plus);
        assert_eq!(hilbert_symbol(&q(3), &q(3), &c).unwrap(), Sign::Minus);
    }

    #[test]
    fn depth_checks() {
        let shallow = PadicContext::with_params(3, 4, 4).unwrap();
        assert_eq!(hilbert_oracle(&q(2), &q(5), &shallow).unwrap(), Sign::Plus);
        assert_eq!(
            hilbert_oracle(&q(3), &q(2), &shallow),
            Err(Error::DepthTooSmall { needed: 5, have: 4 })
        );
    }

    #[test]
    fn oracle_matches_closed_form_on_classes() {
        for p in [2, 3, 5, 7] {
            let c = ctx(p);
            for a in c.classes() {
                for b in c.classes() {
                    assert_eq!(
                        hilbert_oracle(&a.rep(), &b.rep(), &c).unwrap(),
                        hilbert_class(*a, *b),
                        "p={p} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn oracle_handles_fractions() {
        let c = ctx(5);
        let a = qf(2, 25);
        let b = qf(10, 3);
        assert_eq!(hilbert_oracle(&a, &b, &c).unwrap(), hilbert_symbol(&a, &b, &c).unwrap());
    }

    #[test]
    fn eta_is_class_function() {
        let c = ctx(3);
        let e = eta(c.class_of_i64(2).unwrap());
        assert_eq!(e.eval(&q(3), &c).unwrap(), Sign::Minus);
        let e2 = eta(c.class_of_i64(2 * 49).unwrap());
        assert_eq!(e, e2);
        assert!(eta(SquareClass::one(&c)).is_trivial());
    }
}
