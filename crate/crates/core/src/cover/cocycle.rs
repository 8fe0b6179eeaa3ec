use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::padic::{hilbert_class, hilbert_symbol, square_class, PadicContext, SquareClass};
use crate::rational::{pow_q, q, Q};
use crate::symplectic::{cell_rank, x_of, GSpElement};
use crate::{Error, Result, Sign};

/// Which closed formula produced a cocycle value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CocyclePath {
    OmegaZeroLeft,
    OmegaZeroRight,
    InversePair,
    KubotaN1,
    CentralFactor,
}

impl fmt::Display for CocyclePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// How the `Sp` cocycle is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CocycleLaw {
    /// Parabolic and inverse-pair rules, Kubota's formula as the last resort
    /// for `n = 1`.
    #[default]
    Rules,
    /// Kubota's closed form on every pair (`n = 1` only).
    Kubota,
}

/// Kubota's `x` on `SL_2`: the lower-left entry, or the lower-right one if
/// that vanishes.
pub fn kubota_x(g: &GSpElement) -> Q {
    let m = g.matrix();
    if m.get(1, 0).is_zero() {
        m.get(1, 1).clone()
    } else {
        m.get(1, 0).clone()
    }
}

/// `c(g, h) = (x(gh)/x(g), x(gh)/x(h))` for `g, h in SL_2`.
pub fn kubota_cocycle(g: &GSpElement, h: &GSpElement, ctx: &PadicContext) -> Result<Sign> {
    if g.n() != 1 || h.n() != 1 {
        return Err(Error::UnsupportedCocyclePath("Kubota's formula needs n = 1".into()));
    }
    let xgh = kubota_x(&g.mul(h));
    hilbert_symbol(&(&xgh / kubota_x(g)), &(&xgh / kubota_x(h)), ctx)
}

/// `c(g, g^{-1}) = (x(g), (-1)^j x(g)) (-1, -1)^{j(j-1)/2}`.
pub fn coc_inv_closed_form(g: &GSpElement, ctx: &PadicContext) -> Result<Sign> {
    let j = cell_rank(g);
    let x = x_of(g, ctx)?;
    let m1 = ctx.class_of_i64(-1)?;
    let sj = if j % 2 == 1 { m1 } else { SquareClass::one(ctx) };
    Ok(hilbert_class(x, sj * x) * hilbert_class(m1, m1).pow((j * (j.saturating_sub(1)) / 2) as u64))
}

fn require_sp(g: &GSpElement) -> Result<()> {
    if g.is_sp() {
        Ok(())
    } else {
        Err(Error::Precondition("expected an element of Sp".into()))
    }
}

pub fn cocycle_sp(g: &GSpElement, h: &GSpElement, ctx: &PadicContext) -> Result<(Sign, CocyclePath)> {
    cocycle_sp_with(g, h, ctx, CocycleLaw::Rules)
}

/// Rao's cocycle on `Sp(2n)` where a closed formula is available.
pub fn cocycle_sp_with(
    g: &GSpElement,
    h: &GSpElement,
    ctx: &PadicContext,
    law: CocycleLaw,
) -> Result<(Sign, CocyclePath)> {
    require_sp(g)?;
    require_sp(h)?;
    if g.n() != h.n() {
        return Err(Error::ShapeMismatch("cocycle of elements of different rank".into()));
    }
    if law == CocycleLaw::Kubota {
        return Ok((kubota_cocycle(g, h, ctx)?, CocyclePath::KubotaN1));
    }
    if g.is_identity() || h.is_identity() {
        return Ok((Sign::Plus, CocyclePath::CentralFactor));
    }
    if g.mul(h).is_identity() {
        return Ok((coc_inv_closed_form(g, ctx)?, CocyclePath::InversePair));
    }
    if g.in_siegel() {
        return Ok((hilbert_class(x_of(g, ctx)?, x_of(h, ctx)?), CocyclePath::OmegaZeroLeft));
    }
    if h.in_siegel() {
        return Ok((hilbert_class(x_of(g, ctx)?, x_of(h, ctx)?), CocyclePath::OmegaZeroRight));
    }
    if g.n() == 1 {
        return Ok((kubota_cocycle(g, h, ctx)?, CocyclePath::KubotaN1));
    }
    Err(Error::UnsupportedCocyclePath(format!(
        "n = {}, both factors outside the Siegel parabolic (cells {} and {})",
        g.n(),
        cell_rank(g),
        cell_rank(h)
    )))
}

/// `v_lambda(g) = (x(g), lambda^{j+1}) (lambda, lambda)^{j(j-1)/2}`.
pub fn v_lambda(g: &GSpElement, lambda: &Q, ctx: &PadicContext) -> Result<Sign> {
    require_sp(g)?;
    if lambda.is_zero() {
        return Err(Error::ZeroInput);
    }
    let j = cell_rank(g);
    let x = x_of(g, ctx)?;
    let l = square_class(lambda, ctx)?;
    let lj = square_class(&pow_q(lambda, j as i64 + 1), ctx)?;
    Ok(hilbert_class(x, lj) * hilbert_class(l, l).pow((j * j.saturating_sub(1) / 2) as u64))
}

pub fn cocycle_gsp(g: &GSpElement, h: &GSpElement, ctx: &PadicContext) -> Result<(Sign, CocyclePath)> {
    cocycle_gsp_with(g, h, ctx, CocycleLaw::Rules)
}

/// `c~(g, h) = v_{lambda(h)}(g_1) c(g_1^{i(lambda(h))}, h_1)`.
pub fn cocycle_gsp_with(
    g: &GSpElement,
    h: &GSpElement,
    ctx: &PadicContext,
    law: CocycleLaw,
) -> Result<(Sign, CocyclePath)> {
    let g1 = g.g_one();
    let h1 = h.g_one();
    let lh = h.lambda();
    let v = if lh.is_one() { Sign::Plus } else { v_lambda(&g1, lh, ctx)? };
    let (c, path) = cocycle_sp_with(&g1.conj_i(lh), &h1, ctx, law)?;
    Ok((v * c, path))
}

/// `c~(g, g^{-1}) = (-lambda, -1)^{j(j-1)/2} (x(g_1), (-lambda)^{j+1})`.
pub fn inverse_cocycle(g: &GSpElement, ctx: &PadicContext) -> Result<Sign> {
    let g1 = g.g_one();
    let j = cell_rank(&g1);
    let x = x_of(&g1, ctx)?;
    let ml = -g.lambda().clone();
    let a = hilbert_symbol(&ml, &q(-1), ctx)?.pow((j * j.saturating_sub(1) / 2) as u64);
    let b = hilbert_class(x, square_class(&pow_q(&ml, j as i64 + 1), ctx)?);
    Ok(a * b)
}

/// The conjugation sign `d(g, h) = (x(g_1), lambda(h)) (x(h_1), lambda^{j+1})
/// (lambda, lambda)^{j(j-1)/2}` with `lambda = lambda(g)`, `j` the cell of
/// `h_1`; requires `g_1` in the Siegel parabolic.
pub fn d_sign(g: &GSpElement, h: &GSpElement, ctx: &PadicContext) -> Result<Sign> {
    let g1 = g.g_one();
    if !g1.in_siegel() {
        return Err(Error::ConjugatorNotOmegaZero);
    }
    let h1 = h.g_one();
    let j = cell_rank(&h1);
    let l = g.lambda();
    let xg = x_of(&g1, ctx)?;
    let xh = x_of(&h1, ctx)?;
    let lc = square_class(l, ctx)?;
    let a = hilbert_class(xg, square_class(h.lambda(), ctx)?);
    let b = hilbert_class(xh, square_class(&pow_q(l, j as i64 + 1), ctx)?);
    Ok(a * b * hilbert_class(lc, lc).pow((j * j.saturating_sub(1) / 2) as u64))
}

impl CocycleLaw {
    pub fn for_rank(n: usize) -> Self {
        if n == 1 {
            CocycleLaw::Kubota
        } else {
            CocycleLaw::Rules
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Mat;
    use crate::rational::qf;
    use crate::symplectic::random_sp_seeded;

    fn ctx() -> PadicContext {
        PadicContext::new(3).unwrap()
    }

    #[test]
    fn unipotents_split() {
        let c = ctx();
        let u1 = GSpElement::upper_unipotent(&Mat::from_i64(&[&[1, 2], &[2, 3]]));
        let u2 = GSpElement::upper_unipotent(&Mat::from_i64(&[&[0, 5], &[5, -1]]));
        assert_eq!(cocycle_sp(&u1, &u2, &c).unwrap(), (Sign::Plus, CocyclePath::OmegaZeroLeft));
    }

    #[test]
    fn inverse_pair_in_parabolic() {
        let c = ctx();
        let g = GSpElement::levi_gl(&Mat::from_i64(&[&[2, 0], &[0, 1]])).unwrap();
        let (s, path) = cocycle_sp(&g, &g.inverse(), &c).unwrap();
        assert_eq!(path, CocyclePath::InversePair);
        // (2, 2)_3 = (2, -1)_3 = +1 since -1 is a 3-adic non-square unit and 2 a unit
        assert_eq!(s, hilbert_symbol(&q(2), &q(-1), &c).unwrap());
    }

    #[test]
    fn unsupported_pairs_fail_loudly() {
        let c = ctx();
        let j = GSpElement::j(2);
        let g = j.mul(&GSpElement::upper_unipotent(&Mat::from_i64(&[&[1, 0], &[0, 0]]))).mul(&j);
        assert!(matches!(cocycle_sp(&j, &g, &c), Err(Error::UnsupportedCocyclePath(_))));
        assert!(matches!(kubota_cocycle(&j, &j, &c), Err(Error::UnsupportedCocyclePath(_))));
    }

    #[test]
    fn v_lambda_examples() {
        let c = PadicContext::new(5).unwrap();
        for l in [q(2), q(5), qf(10, 3), q(4)] {
            assert_eq!(v_lambda(&GSpElement::j(1), &l, &c).unwrap(), Sign::Plus);
        }
        let g = GSpElement::levi_gl(&Mat::from_i64(&[&[2]])).unwrap();
        assert_eq!(v_lambda(&g, &q(5), &c).unwrap(), hilbert_symbol(&q(2), &q(5), &c).unwrap());
        assert_eq!(v_lambda(&g, &q(9), &c).unwrap(), Sign::Plus);
    }

    #[test]
    fn kubota_agrees_with_rules_on_parabolic_pairs() {
        let c = PadicContext::new(3).unwrap();
        for seed in 0..300 {
            let g = random_sp_seeded(1, seed);
            let h = random_sp_seeded(1, seed + 7919);
            let k = kubota_cocycle(&g, &h, &c).unwrap();
            let (r, _) = cocycle_sp(&g, &h, &c).unwrap();
            assert_eq!(k, r, "g={g:?} h={h:?}");
            let (ri, _) = cocycle_sp(&g, &g.inverse(), &c).unwrap();
            assert_eq!(kubota_cocycle(&g, &g.inverse(), &c).unwrap(), ri);
        }
    }

    #[test]
    fn gsp_cocycle_restricts() {
        let c = ctx();
        let g = random_sp_seeded(1, 1);
        let h = random_sp_seeded(1, 2);
        assert_eq!(cocycle_gsp(&g, &h, &c).unwrap().0, cocycle_sp(&g, &h, &c).unwrap().0);
        for y in [q(2), q(3), qf(7, 5)] {
            let iy = GSpElement::i_lambda(2, &y);
            let s = random_sp_seeded(2, 44);
            assert_eq!(cocycle_gsp(&iy, &s, &c).unwrap().0, Sign::Plus);
        }
    }
}
