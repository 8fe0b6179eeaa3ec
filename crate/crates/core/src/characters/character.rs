use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::padic::{hilbert_class, PadicContext, SquareClass};
use crate::rational::{mod_u64, parse_q, split, Q};
use crate::{Error, Result};

const TOL: f64 = 1e-12;

/// Value at the uniformizer: exact turns `exp(2 pi i t)` or a complex number.
#[derive(Clone, Copy, Debug)]
pub enum Zp {
    Turns(Ratio<i64>),
    Complex(Complex64),
}

impl Zp {
    pub fn one() -> Self {
        Zp::Turns(Ratio::zero())
    }

    pub fn turns(t: Ratio<i64>) -> Self {
        Zp::Turns(reduce_turns(t))
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Zp::Turns(t) => turns_to_complex(t),
            Zp::Complex(z) => z,
        }
    }

    fn mul(self, o: Zp) -> Zp {
        match (self, o) {
            (Zp::Turns(a), Zp::Turns(b)) => Zp::turns(a + b),
            _ => Zp::Complex(self.to_complex() * o.to_complex()),
        }
    }

    fn inv(self) -> Zp {
        match self {
            Zp::Turns(t) => Zp::turns(-t),
            Zp::Complex(z) => Zp::Complex(z.inv()),
        }
    }

    fn pow(self, k: i64) -> Zp {
        match self {
            Zp::Turns(t) => Zp::turns(t * k),
            Zp::Complex(z) => Zp::Complex(z.powi(k as i32)),
        }
    }
}

impl PartialEq for Zp {
    fn eq(&self, o: &Zp) -> bool {
        match (self, o) {
            (Zp::Turns(a), Zp::Turns(b)) => a == b,
            _ => (self.to_complex() - o.to_complex()).norm() < TOL,
        }
    }
}

fn reduce_turns(t: Ratio<i64>) -> Ratio<i64> {
    t - t.floor()
}

fn turns_to_complex(t: Ratio<i64>) -> Complex64 {
    // exact for the quarter turns that matter most
    let t = reduce_turns(t);
    let q4 = t * 4;
    if q4.is_integer() {
        return match q4.to_integer() {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let a = 2.0 * PI * (*t.numer() as f64) / (*t.denom() as f64);
    Complex64::new(a.cos(), a.sin())
}

/// A tamely ramified character of `Q_p^*`.
///
/// For odd `p` the unit part is `u -> exp(2 pi i e log_g(u) / (p - 1))` with `g`
/// the context's primitive root. For `p = 2`, bit 0 of `e` is set when
/// `chi(-1) = -1` and bit 1 when `chi(5) = -1`.
#[derive(Clone, Debug)]
pub struct Character {
    ctx: PadicContext,
    e: u64,
    zp: Zp,
}

impl PartialEq for Character {
    fn eq(&self, o: &Character) -> bool {
        self.ctx.same_prime(&o.ctx) && self.e == o.e && self.zp == o.zp
    }
}

impl Character {
    pub fn new(ctx: &PadicContext, e: u64, zp: Zp) -> Result<Self> {
        if zp.to_complex().norm() == 0.0 {
            return Err(Error::ZeroInput);
        }
        let m = unit_modulus(ctx);
        Ok(Character { ctx: ctx.clone(), e: e % m, zp })
    }

    pub fn trivial(ctx: &PadicContext) -> Self {
        Character { ctx: ctx.clone(), e: 0, zp: Zp::one() }
    }

    /// Unramified, `chi(p) = exp(2 pi i t)`.
    pub fn unramified_turns(ctx: &PadicContext, t: Ratio<i64>) -> Self {
        Character { ctx: ctx.clone(), e: 0, zp: Zp::turns(t) }
    }

    pub fn unramified(ctx: &PadicContext, z: Complex64) -> Result<Self> {
        Character::new(ctx, 0, Zp::Complex(z))
    }

    /// `|a|^s`, so `chi(p) = p^{-s}`.
    pub fn abs_pow(ctx: &PadicContext, s: f64) -> Self {
        if s == 0.0 {
            return Character::trivial(ctx);
        }
        let z = Complex64::new((ctx.p() as f64).powf(-s), 0.0);
        Character { ctx: ctx.clone(), e: 0, zp: Zp::Complex(z) }
    }

    /// `|a|^s` with complex `s`.
    pub fn abs_pow_complex(ctx: &PadicContext, s: Complex64) -> Self {
        let z = (-s * (ctx.p() as f64).ln()).exp();
        Character { ctx: ctx.clone(), e: 0, zp: Zp::Complex(z) }
    }

    /// `eta_a(b) = (a, b)`.
    pub fn eta(a: SquareClass, ctx: &PadicContext) -> Result<Self> {
        let cls = |x: i64| ctx.class_of_i64(x);
        let half = |s: crate::Sign| if s.is_minus() { Ratio::new(1, 2) } else { Ratio::zero() };
        let p = ctx.p();
        if a.p() != p {
            return Err(Error::PrimeMismatch(a.p(), p));
        }
        let zp = Zp::turns(half(hilbert_class(a, cls(p as i64)?)));
        let e = if p == 2 {
            let m1 = hilbert_class(a, cls(-1)?).is_minus() as u64;
            let m5 = hilbert_class(a, cls(5)?).is_minus() as u64;
            m1 | (m5 << 1)
        } else if hilbert_class(a, cls(ctx.primitive_root() as i64)?).is_minus() {
            (p - 1) / 2
        } else {
            0
        };
        Ok(Character { ctx: ctx.clone(), e, zp })
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn zp(&self) -> Zp {
        self.zp
    }

    /// Exact value at a unit residue as turns.
    fn unit_turns(&self, a: &Q) -> Result<Ratio<i64>> {
        let p = self.ctx.p();
        let (_, un, ud) = split(a, p)?;
        if p == 2 {
            let u = mod_u64(&un, 8) * mod_u64(&ud, 8) % 8;
            let minus = matches!(u, 3 | 7);
            let five = matches!(u, 3 | 5);
            let k = (minus && self.e & 1 == 1) as i64 + (five && self.e & 2 == 2) as i64;
            return Ok(reduce_turns(Ratio::new(k, 2)));
        }
        let n = mod_u64(&un, p);
        let d = mod_u64(&ud, p);
        let dl = &self.ctx.units().dlog;
        let l = (dl[n as usize] as i64 - dl[d as usize] as i64).rem_euclid(p as i64 - 1);
        Ok(reduce_turns(Ratio::new(self.e as i64 * l, p as i64 - 1)))
    }

    pub fn eval(&self, a: &Q) -> Result<Complex64> {
        let (v, _, _) = split(a, self.ctx.p())?;
        let u = turns_to_complex(self.unit_turns(a)?);
        Ok(u * self.zp.pow(v).to_complex())
    }

    /// Exact value as turns when `chi(p)` is a root of unity given exactly.
    pub fn eval_turns(&self, a: &Q) -> Result<Option<Ratio<i64>>> {
        let (v, _, _) = split(a, self.ctx.p())?;
        match self.zp {
            Zp::Turns(t) => Ok(Some(reduce_turns(self.unit_turns(a)? + t * v))),
            Zp::Complex(_) => Ok(None),
        }
    }

    fn check(&self, o: &Character) -> Result<()> {
        if self.ctx.same_prime(&o.ctx) {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.ctx.p(), o.ctx.p()))
        }
    }

    pub fn mul(&self, o: &Character) -> Result<Character> {
        self.check(o)?;
        let e = if self.ctx.p() == 2 { self.e ^ o.e } else { (self.e + o.e) % (self.ctx.p() - 1) };
        Ok(Character { ctx: self.ctx.clone(), e, zp: self.zp.mul(o.zp) })
    }

    pub fn inv(&self) -> Character {
        let m = unit_modulus(&self.ctx);
        let e = if self.ctx.p() == 2 { self.e } else { (m - self.e) % m };
        Character { ctx: self.ctx.clone(), e, zp: self.zp.inv() }
    }

    pub fn pow(&self, k: i64) -> Character {
        let m = unit_modulus(&self.ctx) as i64;
        let e = if self.ctx.p() == 2 {
            if k % 2 == 0 { 0 } else { self.e }
        } else {
            (self.e as i64 * k).rem_euclid(m) as u64
        };
        Character { ctx: self.ctx.clone(), e, zp: self.zp.pow(k) }
    }

    pub fn twist(&self, a: SquareClass) -> Result<Character> {
        self.mul(&Character::eta(a, &self.ctx)?)
    }

    pub fn is_trivial(&self) -> bool {
        self.e == 0 && self.zp == Zp::one()
    }

    pub fn is_unramified(&self) -> bool {
        self.e == 0
    }

    pub fn is_unitary(&self) -> bool {
        (self.zp.to_complex().norm() - 1.0).abs() < TOL
    }

    pub fn is_quadratic(&self) -> bool {
        self.pow(2).is_trivial()
    }

    /// Order, when finite and known exactly.
    pub fn order(&self) -> Option<u64> {
        let unit = if self.ctx.p() == 2 {
            if self.e == 0 { 1 } else { 2 }
        } else {
            let m = self.ctx.p() - 1;
            m / self.e.gcd(&m)
        };
        match self.zp {
            Zp::Turns(t) => Some(unit.lcm(&(*t.denom() as u64))),
            Zp::Complex(_) => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let z = self.zp.to_complex();
        json!({ "e": self.e, "zp_re": z.re, "zp_im": z.im, "p": self.ctx.p() })
    }

    pub fn from_json(v: &Value, ctx: &PadicContext) -> Result<Self> {
        if let Some(s) = v.as_str() {
            return Character::parse(s, ctx);
        }
        let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("character json missing `{k}`")));
        let p = get("p")?.as_u64().ok_or_else(|| Error::Parse("p".into()))?;
        if p != ctx.p() {
            return Err(Error::PrimeMismatch(p, ctx.p()));
        }
        let e = get("e")?.as_u64().ok_or_else(|| Error::Parse("e".into()))?;
        let re = get("zp_re")?.as_f64().ok_or_else(|| Error::Parse("zp_re".into()))?;
        let im = get("zp_im")?.as_f64().ok_or_else(|| Error::Parse("zp_im".into()))?;
        let z = Complex64::new(re, im);
        // recover exact quarter turns
        let zp = match crate::padic::FourthRoot::from_complex(z, 1e-12) {
            Some(r) => Zp::turns(Ratio::new(r.exponent() as i64, 4)),
            None => Zp::Complex(z),
        };
        Character::new(ctx, e, zp)
    }

    /// Parse a tag product such as `eta:2*abs:1/2*unr:1/4`.
    ///
    /// Tags: `triv`, `eta:A`, `abs:S` (`|.|^S`), `unr:T` (`chi(p) = exp(2 pi i T)`),
    /// `tame:E` (unit exponent `e`).
    pub fn parse(s: &str, ctx: &PadicContext) -> Result<Self> {
        let mut acc = Character::trivial(ctx);
        for tag in s.split('*').map(str::trim) {
            let (name, arg) = tag.split_once(':').unwrap_or((tag, ""));
            let c = match name {
                "triv" | "1" => Character::trivial(ctx),
                "eta" => Character::eta(ctx.class_of(&parse_q(arg)?)?, ctx)?,
                "abs" => {
                    let s = parse_q(arg)?;
                    Character::abs_pow(ctx, q_to_f64(&s))
                }
                "unr" => Character::unramified_turns(ctx, small_ratio(&parse_q(arg)?)?),
                "tame" => {
                    let e = u64::from_str(arg).map_err(|_| Error::Parse(format!("bad exponent `{arg}`")))?;
                    Character::new(ctx, e, Zp::one())?
                }
                _ => return Err(Error::Parse(format!("unknown character tag `{tag}`"))),
            };
            acc = acc.mul(&c)?;
        }
        Ok(acc)
    }
}

fn unit_modulus(ctx: &PadicContext) -> u64 {
    if ctx.p() == 2 {
        4
    } else {
        ctx.p() - 1
    }
}

fn q_to_f64(a: &Q) -> f64 {
    use num_traits::ToPrimitive;
    a.to_f64().unwrap_or(f64::NAN)
}

fn small_ratio(a: &Q) -> Result<Ratio<i64>> {
    use num_traits::ToPrimitive;
    match (a.numer().to_i64(), a.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Ratio::new(n, d)),
        _ => Err(Error::Parse("turns too large".into())),
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.zp {
            Zp::Turns(t) => write!(f, "chi(e={}, zp=exp(2pi i {}))", self.e, t),
            Zp::Complex(z) => {
                let sign = if z.im.is_negative() { '-' } else { '+' };
                write!(f, "chi(e={}, zp={}{}{}i)", self.e, z.re, sign, z.im.abs())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::hilbert_symbol;
    use crate::rational::{q, qf};

    #[test]
    fn eta_matches_hilbert() {
        for p in [2u64, 3, 5, 7] {
            let ctx = PadicContext::new(p).unwrap();
            for a in ctx.classes() {
                let chi = Character::eta(*a, &ctx).unwrap();
                assert!(chi.is_quadratic());
                for b in [-24i64, -7, -3, -2, -1, 1, 2, 3, 5, 6, 10, 12, 14, 21, 75, 98] {
                    let h = hilbert_symbol(&a.rep(), &q(b), &ctx).unwrap();
                    assert!((chi.eval(&q(b)).unwrap().re - h.to_f64()).abs() < 1e-12, "p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn examples() {
        let c3 = PadicContext::new(3).unwrap();
        let eu = Character::parse("eta:2", &c3).unwrap();
        assert_eq!(eu.eval(&q(3)).unwrap(), Complex64::new(-1.0, 0.0));
        let a = Character::parse("abs:1/2", &c3).unwrap();
        assert!((a.eval(&q(3)).unwrap().re - 3f64.powf(-0.5)).abs() < 1e-15);
        assert!(Character::trivial(&c3).eval(&qf(7, 9)).unwrap() == Complex64::new(1.0, 0.0));
        let chi = Character::parse("unr:1/4", &c3).unwrap();
        assert_eq!(chi.order(), Some(4));
        assert_eq!(chi.mul(&eu).unwrap(), chi.inv());
    }

    #[test]
    fn multiplicative_and_json() {
        let c7 = PadicContext::new(7).unwrap();
        let chi = Character::new(&c7, 2, Zp::turns(Ratio::new(1, 3))).unwrap();
        let xs = [q(3), q(-5), qf(14, 9), q(49), qf(1, 21)];
        for x in &xs {
            for y in &xs {
                let lhs = chi.eval(&(x * y)).unwrap();
                let rhs = chi.eval(x).unwrap() * chi.eval(y).unwrap();
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
        assert_eq!(chi.order(), Some(3));
        let back = Character::from_json(&chi.to_json(), &c7).unwrap();
        assert!((back.eval(&q(7)).unwrap() - chi.eval(&q(7)).unwrap()).norm() < 1e-12);
        assert_eq!(Character::from_json(&Character::parse("unr:1/4", &c7).unwrap().to_json(), &c7).unwrap().order(), Some(4));
    }
}
