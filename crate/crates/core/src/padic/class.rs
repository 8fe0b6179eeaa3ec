use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};

use super::context::PadicContext;
use crate::rational::{mod_u64, q, split, Q};
use crate::Result;

/// An element of `Q_p^* / Q_p^{*2}`.
///
/// For odd `p` the unit part is a bit (0 for squares, 1 for the non-residue
/// `u`); for `p = 2` it is the residue of the unit part mod 8.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquareClass {
    p: u64,
    nonres: u64,
    odd_val: bool,
    unit: u8,
}

const UNITS_2: [u8; 4] = [1, 7, 5, 3];

/// Canonical order: by prime, then by index.
impl Ord for SquareClass {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.p, self.index()).cmp(&(o.p, o.index()))
    }
}

impl PartialOrd for SquareClass {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl SquareClass {
    pub(crate) fn from_index_raw(p: u64, nonres: u64, i: usize) -> Self {
        if p == 2 {
            SquareClass { p, nonres, odd_val: i >= 4, unit: UNITS_2[i % 4] }
        } else {
            SquareClass { p, nonres, odd_val: i >= 2, unit: (i % 2) as u8 }
        }
    }

    pub fn one(ctx: &PadicContext) -> Self {
        ctx.classes()[0]
    }

    pub fn from_index(ctx: &PadicContext, i: usize) -> Self {
        ctx.classes()[i]
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Position in the canonical ordering `1, u, p, up` (resp. the eight
    /// reps `1, -1, 5, -5, 2, -2, 10, -10` for `p = 2`).
    pub fn index(&self) -> usize {
        let half = if self.p == 2 { 4 } else { 2 };
        let u = if self.p == 2 {
            UNITS_2.iter().position(|&x| x == self.unit).expect("odd residue")
        } else {
            self.unit as usize
        };
        self.odd_val as usize * half + u
    }

    pub fn odd_valuation(&self) -> bool {
        self.odd_val
    }

    /// Unit bit (`p` odd) or unit residue mod 8 (`p = 2`).
    pub fn unit_part(&self) -> u8 {
        self.unit
    }

    pub fn is_trivial(&self) -> bool {
        !self.odd_val && self.unit == if self.p == 2 { 1 } else { 0 }
    }

    pub fn rep_i64(&self) -> i64 {
        let u: i64 = if self.p == 2 {
            match self.unit {
                1 => 1,
                3 => -5,
                5 => 5,
                _ => -1,
            }
        } else if self.unit == 1 {
            self.nonres as i64
        } else {
            1
        };
        if self.odd_val {
            u * self.p as i64
        } else {
            u
        }
    }

    pub fn rep(&self) -> Q {
        q(self.rep_i64())
    }

    pub fn inverse(&self) -> Self {
        *self
    }
}

impl Mul for SquareClass {
    type Output = SquareClass;
    fn mul(self, o: SquareClass) -> SquareClass {
        assert_eq!(self.p, o.p, "square classes over different primes");
        let unit = if self.p == 2 { (self.unit * o.unit) % 8 } else { self.unit ^ o.unit };
        SquareClass { p: self.p, nonres: self.nonres, odd_val: self.odd_val ^ o.odd_val, unit }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep_i64())
    }
}

impl fmt::Debug for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.rep_i64(), self.p)
    }
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.rep_i64())
    }
}

/// Canonical representative of `a` modulo `Q_p^{*2}`.
pub fn square_class(a: &Q, ctx: &PadicContext) -> Result<SquareClass> {
    let p = ctx.p();
    let (v, un, ud) = split(a, p)?;
    // un/ud and un*ud differ by the square ud^2.
    let unit = if p == 2 {
        (mod_u64(&un, 8) * mod_u64(&ud, 8) % 8) as u8
    } else {
        let r = mod_u64(&un, p) * mod_u64(&ud, p) % p;
        (crate::rational::powmod(r, (p - 1) / 2, p) != 1) as u8
    };
    Ok(SquareClass { p, nonres: ctx.nonresidue(), odd_val: v.rem_euclid(2) == 1, unit })
}

impl PadicContext {
    pub fn class_of(&self, a: &Q) -> Result<SquareClass> {
        square_class(a, self)
    }

    pub fn class_of_i64(&self, a: i64) -> Result<SquareClass> {
        square_class(&q(a), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use crate::Error;

    #[test]
    fn examples() {
        let c3 = PadicContext::new(3).unwrap();
        assert!(square_class(&q(4), &c3).unwrap().is_trivial());
        assert_eq!(square_class(&q(18), &c3).unwrap().rep_i64(), 2);
        assert_eq!(square_class(&q(12), &c3).unwrap().rep_i64(), 3);
        assert_eq!(square_class(&q(0), &c3), Err(Error::ZeroInput));
        assert_eq!(square_class(&qf(1, 6), &c3).unwrap().rep_i64(), 6);
    }

    #[test]
    fn canonical_reps_idempotent() {
        for p in [2, 3, 5, 7, 11] {
            let c = PadicContext::new(p).unwrap();
            let reps: Vec<i64> = c.classes().iter().map(|x| x.rep_i64()).collect();
            for (i, cl) in c.classes().iter().enumerate() {
                assert_eq!(cl.index(), i);
                assert_eq!(square_class(&cl.rep(), &c).unwrap(), *cl);
            }
            let mut dedup = reps.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), reps.len());
        }
        let c2 = PadicContext::new(2).unwrap();
        let reps: Vec<i64> = c2.classes().iter().map(|x| x.rep_i64()).collect();
        assert_eq!(reps, vec![1, -1, 5, -5, 2, -2, 10, -10]);
    }

    #[test]
    fn multiplication_matches_rationals() {
        for p in [2, 3, 5, 7] {
            let c = PadicContext::new(p).unwrap();
            for a in c.classes() {
                for b in c.classes() {
                    let prod = square_class(&(a.rep() * b.rep()), &c).unwrap();
                    assert_eq!(*a * *b, prod);
                }
            }
        }
    }

    #[test]
    fn squares_have_trivial_class() {
        // odd squares are 1 mod 8, so 2-adic squares of odd integers land in class 1
        let c2 = PadicContext::new(2).unwrap();
        for x in [1i64, 3, 5, 7, 9, 11, 13, 6, 10] {
            assert!(square_class(&q(x * x), &c2).unwrap().is_trivial(), "{x}");
            assert!(square_class(&qf(1, x * x), &c2).unwrap().is_trivial());
        }
        assert!(!square_class(&q(17 * 3), &c2).unwrap().is_trivial());
        assert!(square_class(&q(17), &c2).unwrap().is_trivial());
    }
}
