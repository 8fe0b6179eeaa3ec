use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::class::{square_class, SquareClass};
use super::context::PadicContext;
use crate::rational::Q;
use crate::{Error, Result, Sign};

/// One of `1, i, -1, -i`, stored as the exponent of `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FourthRoot(u8);

impl FourthRoot {
    pub const ONE: FourthRoot = FourthRoot(0);
    pub const I: FourthRoot = FourthRoot(1);
    pub const MINUS_ONE: FourthRoot = FourthRoot(2);
    pub const MINUS_I: FourthRoot = FourthRoot(3);

    pub fn from_exponent(k: i64) -> Self {
        FourthRoot(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    /// Gaussian-integer pair `(re, im)`.
    pub fn gaussian(self) -> (i8, i8) {
        match self.0 {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        let (r, i) = self.gaussian();
        Complex64::new(r as f64, i as f64)
    }

    pub fn conj(self) -> Self {
        FourthRoot::from_exponent(-(self.0 as i64))
    }

    pub fn pow(self, e: i64) -> Self {
        FourthRoot::from_exponent(self.0 as i64 * e)
    }

    /// The nearest fourth root, if within `tol`.
    pub fn from_complex(z: Complex64, tol: f64) -> Option<Self> {
        (0..4).map(FourthRoot).find(|r| (r.to_complex() - z).norm() < tol)
    }

    pub fn as_sign(self) -> Option<Sign> {
        match self.0 {
            0 => Some(Sign::Plus),
            2 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl From<Sign> for FourthRoot {
    fn from(s: Sign) -> Self {
        if s.is_minus() {
            FourthRoot::MINUS_ONE
        } else {
            FourthRoot::ONE
        }
    }
}

impl Mul for FourthRoot {
    type Output = FourthRoot;
    fn mul(self, o: FourthRoot) -> FourthRoot {
        FourthRoot((self.0 + o.0) % 4)
    }
}

impl Mul<Sign> for FourthRoot {
    type Output = FourthRoot;
    fn mul(self, o: Sign) -> FourthRoot {
        self * FourthRoot::from(o)
    }
}

impl fmt::Display for FourthRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

impl Serialize for FourthRoot {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The additive character `psi_s(x) = psi(s x)`, with `psi` the standard
/// character of conductor `Z_p`, `psi(x) = exp(2 pi i {x}_p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PsiSpec {
    pub ctx: PadicContext,
    pub shift: SquareClass,
}

impl PsiSpec {
    pub fn new(ctx: &PadicContext, shift: SquareClass) -> Result<Self> {
        if shift.p() != ctx.p() {
            return Err(Error::PrimeMismatch(shift.p(), ctx.p()));
        }
        Ok(PsiSpec { ctx: ctx.clone(), shift })
    }

    pub fn standard(ctx: &PadicContext) -> Self {
        PsiSpec { ctx: ctx.clone(), shift: SquareClass::one(ctx) }
    }

    pub fn shifted(&self, b: SquareClass) -> Self {
        PsiSpec { ctx: self.ctx.clone(), shift: self.shift * b }
    }
}

/// `gamma_psi(p)` for the standard character, seeded once from the oracle.
fn gamma_p(ctx: &PadicContext) -> Result<FourthRoot> {
    if let Some(g) = ctx.gamma_p_cell().get() {
        return Ok(*g);
    }
    let psi = PsiSpec::standard(ctx);
    let z = weil_gauss_oracle(&psi, &Q::from_integer(ctx.p().into()))?;
    let g = FourthRoot::from_complex(z, 1e-9).ok_or(Error::NotStabilized { diff: f64::NAN })?;
    Ok(*ctx.gamma_p_cell().get_or_init(|| g))
}

/// `W(c) = gamma_psi(c)` for the standard character, `p` odd.
fn gamma_standard(c: SquareClass, ctx: &PadicContext) -> Result<FourthRoot> {
    if !c.odd_valuation() {
        return Ok(FourthRoot::ONE);
    }
    // gamma(p w) = gamma(p) gamma(w) (p, w), and gamma is trivial on units.
    let legendre = Sign::from_neg(c.unit_part() == 1);
    Ok(gamma_p(ctx)? * legendre)
}

/// Exact `gamma_psi(a)` for odd `p`.
pub fn weil_factor_class(psi: &PsiSpec, a: SquareClass) -> Result<FourthRoot> {
    let ctx = &psi.ctx;
    if ctx.p() == 2 {
        return Err(Error::UnsupportedPrime(2));
    }
    // gamma_{psi_s}(a) = gamma_psi(s a) / gamma_psi(s)
    Ok(gamma_standard(psi.shift * a, ctx)? * gamma_standard(psi.shift, ctx)?.conj())
}

/// Exact `gamma_psi(a)`; `p` must be odd.
pub fn weil_factor(psi: &PsiSpec, a: &Q) -> Result<FourthRoot> {
    let c = square_class(a, &psi.ctx)?;
    weil_factor_class(psi, c)
}

/// `gamma_psi(a)` for any `p`: the exact table for odd `p`, the rounded
/// oracle value for `p = 2`.
pub fn gamma(psi: &PsiSpec, a: SquareClass) -> Result<FourthRoot> {
    if psi.ctx.p() != 2 {
        return weil_factor_class(psi, a);
    }
    let z = weil_gauss_oracle(psi, &a.rep())?;
    FourthRoot::from_complex(z, 1e-9).ok_or(Error::NotStabilized { diff: f64::NAN })
}

/// Normalized quadratic Gauss sum for `gamma_psi(a)`.
///
/// Sums `psi(c y^2 / p^{2k})` over `y mod p^{2k}` for `c` the class
/// representative of `s a` and of `s`, and takes the phase of the ratio.
/// Even exponents are used since the phase of the sum over `p^m` depends on
/// the parity of `m`. Two consecutive depths `k = ceil(gauss_terms / 2)` and
/// `k + 1` must agree within `1e-9`.
pub fn weil_gauss_oracle(psi: &PsiSpec, a: &Q) -> Result<Complex64> {
    let ctx = &psi.ctx;
    let cls = square_class(a, ctx)?;
    let num = psi.shift * cls;
    let k = ctx.gauss_terms().div_ceil(2);
    let phase = |depth: u32| -> Result<Complex64> {
        let m = ctx
            .p()
            .checked_pow(2 * depth)
            .filter(|&m| m <= 1 << 26)
            .ok_or(Error::OracleTooLarge { p: ctx.p(), depth: 2 * depth })?;
        let top = gauss_sum(num.rep_i64(), m);
        let bottom = gauss_sum(psi.shift.rep_i64(), m);
        let r = top / bottom;
        Ok(r / r.norm())
    };
    let z1 = phase(k)?;
    let z2 = phase(k + 1)?;
    let diff = (z1 - z2).norm();
    if diff >= 1e-9 {
        return Err(Error::NotStabilized { diff });
    }
    if FourthRoot::from_complex(z1, 1e-9).is_none() {
        return Err(Error::NotStabilized { diff: (z1.norm() - 1.0).abs().max(diff) });
    }
    Ok(z1)
}

fn gauss_sum(c: i64, m: u64) -> Complex64 {
    let cm = c.rem_euclid(m as i64) as u128;
    let mut s = Complex64::new(0.0, 0.0);
    for y in 0..m {
        let r = (cm * ((y as u128 * y as u128) % m as u128)) % m as u128;
        let t = 2.0 * PI * (r as f64) / (m as f64);
        s += Complex64::new(t.cos(), t.sin());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::hilbert_class;
    use crate::rational::q;

    fn gamma_relation_holds(psi: &PsiSpec, a: SquareClass, b: SquareClass) -> Result<bool> {
        let lhs = gamma(psi, a * b)?;
        let rhs = gamma(psi, a)? * gamma(psi, b)? * hilbert_class(a, b);
        Ok(lhs == rhs)
    }

    fn psi(p: u64) -> PsiSpec {
        PsiSpec::standard(&PadicContext::new(p).unwrap())
    }

    #[test]
    fn gamma_p_matches_quadratic_gauss_sign() {
        // sum_{x mod p} e(x^2/p) = sqrt(p) for p = 1 mod 4, i sqrt(p) for p = 3 mod 4
        for (p, want) in [(3, FourthRoot::I), (5, FourthRoot::ONE), (7, FourthRoot::I), (13, FourthRoot::ONE)] {
            let s = psi(p);
            assert_eq!(weil_factor(&s, &q(p as i64)).unwrap(), want, "p={p}");
        }
    }

    #[test]
    fn examples() {
        let s5 = psi(5);
        assert_eq!(weil_factor(&s5, &q(2)).unwrap(), FourthRoot::ONE);
        assert_eq!(weil_factor(&s5, &q(9)).unwrap(), FourthRoot::ONE);
        let s7 = psi(7);
        let g = weil_factor(&s7, &q(7)).unwrap();
        assert_eq!(g * g, FourthRoot::MINUS_ONE);
        let z = weil_gauss_oracle(&s7, &q(3)).unwrap();
        assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        let z = weil_gauss_oracle(&s7, &q(1)).unwrap();
        assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        assert_eq!(weil_factor(&psi(2), &q(3)), Err(Error::UnsupportedPrime(2)));
    }

    #[test]
    fn exact_matches_oracle_all_shifts() {
        for p in [3, 5, 7] {
            let ctx = PadicContext::new(p).unwrap();
            for s in ctx.classes() {
                let ps = PsiSpec::new(&ctx, *s).unwrap();
                for a in ctx.classes() {
                    let exact = weil_factor_class(&ps, *a).unwrap().to_complex();
                    let z = weil_gauss_oracle(&ps, &a.rep()).unwrap();
                    assert!((exact - z).norm() < 1e-9, "p={p} s={s} a={a}");
                }
            }
        }
    }

    #[test]
    fn p2_oracle_relations() {
        let ctx = PadicContext::new(2).unwrap();
        let ps = PsiSpec::standard(&ctx);
        for a in ctx.classes() {
            for b in ctx.classes() {
                assert!(gamma_relation_holds(&ps, *a, *b).unwrap(), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn literal_single_depth_sums_alternate() {
        // the plain sum over x mod p^m flips phase with the parity of m for a = p
        let m3 = gauss_sum(3, 27);
        let m4 = gauss_sum(3, 81);
        let (a, b) = (m3 / m3.norm(), m4 / m4.norm());
        assert!((a - b).norm() > 0.5);
    }

    #[test]
    fn fourth_root_algebra() {
        assert_eq!(FourthRoot::I * FourthRoot::I, FourthRoot::MINUS_ONE);
        assert_eq!(FourthRoot::I.conj(), FourthRoot::MINUS_I);
        assert_eq!(FourthRoot::MINUS_I.pow(4), FourthRoot::ONE);
        assert_eq!(FourthRoot::from_complex(Complex64::new(0.0, -1.0), 1e-9), Some(FourthRoot::MINUS_I));
        assert_eq!(FourthRoot::I.to_string(), "i");
    }
}
