//! Helpers around [`BigRational`]: parsing, printing and p-adic valuation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n/d`; panics if `d == 0`.
pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Q::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
    }
}

/// Prints integers without a denominator.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exponent of `p` in the integer `n != 0`, and `n / p^v`.
pub fn split_int(n: &BigInt, p: u64) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (d, r) = m.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        m = d;
        v += 1;
    }
    (v, m)
}

/// Writes `a = p^v * (un / ud)` with `un`, `ud` prime to `p`.
pub fn split(a: &Q, p: u64) -> Result<(i64, BigInt, BigInt)> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (vn, un) = split_int(a.numer(), p);
    let (vd, ud) = split_int(a.denom(), p);
    Ok((vn - vd, un, ud))
}

pub fn valuation(a: &Q, p: u64) -> Result<i64> {
    split(a, p).map(|s| s.0)
}

/// Residue of the integer `n` modulo `m`, in `[0, m)`.
pub fn mod_u64(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

/// Residue of a `p`-integral rational modulo `m` (a power of `p`).
pub fn mod_q(a: &Q, m: u64) -> u64 {
    let d = mod_u64(a.denom(), m);
    let n = mod_u64(a.numer(), m);
    let inv = inv_mod(d, m).expect("denominator prime to modulus");
    mulmod(n, inv, m)
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// `x^e` for integer `e`, `x != 0` when `e < 0`.
pub fn pow_q(x: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

pub fn is_square_int(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// True iff `x` is a square in `Q`.
pub fn is_rational_square(x: &Q) -> bool {
    is_square_int(x.numer()) && is_square_int(x.denom())
}

pub fn is_one(x: &Q) -> bool {
    x.is_one()
}
