use std::fmt;

use serde_json::json;

use super::cocycle::{cocycle_gsp_with, d_sign, inverse_cocycle, CocycleLaw, CocyclePath};
use crate::padic::PadicContext;
use crate::symplectic::GSpElement;
use crate::{Error, Result, Sign};

/// `(g, eps)` in the double cover of `GSp(2n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoverElement {
    pub g: GSpElement,
    pub eps: Sign,
}

/// A product together with the rule used for its cocycle.
#[derive(Clone, Debug, PartialEq)]
pub struct Product {
    pub value: CoverElement,
    pub path: CocyclePath,
}

impl CoverElement {
    pub fn new(g: GSpElement, eps: Sign) -> Self {
        CoverElement { g, eps }
    }

    /// The trivial section `(g, 1)`.
    pub fn lift(g: GSpElement) -> Self {
        CoverElement { g, eps: Sign::Plus }
    }

    pub fn identity(n: usize) -> Self {
        CoverElement::lift(GSpElement::identity(n))
    }

    /// The nontrivial central element `(I, -1)`.
    pub fn minus_one(n: usize) -> Self {
        CoverElement { g: GSpElement::identity(n), eps: Sign::Minus }
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn is_identity(&self) -> bool {
        self.g.is_identity() && self.eps == Sign::Plus
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "matrix": self.g.matrix().to_json(), "eps": self.eps, "lambda": crate::rational::fmt_q(self.g.lambda()) })
    }
}

impl fmt::Debug for CoverElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.g, self.eps)
    }
}

pub fn cover_mul(s: &CoverElement, t: &CoverElement, ctx: &PadicContext) -> Result<Product> {
    cover_mul_with(s, t, ctx, CocycleLaw::Rules)
}

/// `(g, e)(h, e') = (gh, e e' c~(g, h))`.
pub fn cover_mul_with(s: &CoverElement, t: &CoverElement, ctx: &PadicContext, law: CocycleLaw) -> Result<Product> {
    let (c, path) = cocycle_gsp_with(&s.g, &t.g, ctx, law)?;
    Ok(Product { value: CoverElement { g: s.g.mul(&t.g), eps: s.eps * t.eps * c }, path })
}

/// `(g, e)^{-1} = (g^{-1}, e c~(g, g^{-1}))`.
pub fn cover_inverse(s: &CoverElement, ctx: &PadicContext) -> Result<CoverElement> {
    Ok(CoverElement { g: s.g.inverse(), eps: s.eps * inverse_cocycle(&s.g, ctx)? })
}

/// `(g, *)(h, e)(g, *)^{-1} = (g h g^{-1}, e d(g, h))` for `g_1` in the
/// Siegel parabolic.
pub fn conj_by(g: &GSpElement, t: &CoverElement, ctx: &PadicContext) -> Result<CoverElement> {
    if !g.g_one().in_siegel() {
        return Err(Error::ConjugatorNotOmegaZero);
    }
    Ok(CoverElement { g: g.conjugate(&t.g), eps: t.eps * d_sign(g, &t.g, ctx)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Mat;
    use crate::rational::q;
    use crate::symplectic::random_sp_seeded;

    #[test]
    fn identity_and_central() {
        let c = PadicContext::new(5).unwrap();
        let s = CoverElement::new(random_sp_seeded(2, 5), Sign::Minus);
        let e = CoverElement::identity(2);
        assert_eq!(cover_mul(&s, &e, &c).unwrap().value, s);
        assert_eq!(cover_mul(&e, &s, &c).unwrap().value, s);
        let m = CoverElement::minus_one(2);
        let sm = cover_mul(&s, &m, &c).unwrap().value;
        assert_eq!(sm, cover_mul(&m, &s, &c).unwrap().value);
        assert_eq!(sm.eps, Sign::Plus);
        assert!(cover_mul(&m, &m, &c).unwrap().value.is_identity());
    }

    #[test]
    fn inverse_roundtrip() {
        let c = PadicContext::new(3).unwrap();
        for seed in 0..50 {
            let g = GSpElement::i_lambda(2, &q(3)).mul(&random_sp_seeded(2, seed));
            let s = CoverElement::new(g, Sign::Minus);
            let inv = cover_inverse(&s, &c).unwrap();
            let p = cover_mul(&s, &inv, &c).unwrap();
            assert!(p.value.is_identity(), "seed {seed}");
        }
    }

    #[test]
    fn conj_requires_parabolic() {
        let c = PadicContext::new(3).unwrap();
        let t = CoverElement::identity(1);
        assert_eq!(conj_by(&GSpElement::j(1), &t, &c), Err(Error::ConjugatorNotOmegaZero));
        let g = GSpElement::levi_gl(&Mat::from_i64(&[&[2]])).unwrap();
        assert!(conj_by(&g, &t, &c).unwrap().is_identity());
    }
}
