use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::gsp::GSpElement;
use super::random::random_gl;
use crate::matrix::Mat;
use crate::padic::{square_class, PadicContext, SquareClass};
use crate::rational::{q, Q};
use crate::{Error, Result};

/// `g = p1 tau_j p2` with `p1, p2` in the Siegel parabolic of `Sp(2n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BruhatFactorization {
    pub p1: GSpElement,
    pub j: usize,
    pub p2: GSpElement,
    pub tau_j: GSpElement,
}

impl BruhatFactorization {
    pub fn product(&self) -> GSpElement {
        self.p1.mul(&self.tau_j).mul(&self.p2)
    }
}

/// How pivots are chosen while reducing the lower-left block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// First nonzero entry in row-major order.
    First,
    /// Random pivots plus a random element of the stabilizer of the
    /// normal form, so that distinct seeds give distinct factorizations.
    Seeded(u64),
}

/// `tau_j = [[E, F], [-F, E]]` with `E = diag(I_{n-j}, 0)`, `F = diag(0, I_j)`.
pub fn tau(n: usize, j: usize) -> GSpElement {
    assert!(j <= n);
    let mut m = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        if i < n - j {
            m.set(i, i, Q::one());
            m.set(n + i, n + i, Q::one());
        } else {
            m.set(i, n + i, Q::one());
            m.set(n + i, i, -Q::one());
        }
    }
    GSpElement::from_parts(n, m, Q::one())
}

/// Rank of the lower-left block of `g_1`.
pub fn cell_rank(g: &GSpElement) -> usize {
    g.c().rank()
}

pub fn bruhat_factor(g: &GSpElement) -> Result<BruhatFactorization> {
    bruhat_factor_with(g, PivotRule::First)
}

pub fn bruhat_factor_with(g: &GSpElement, rule: PivotRule) -> Result<BruhatFactorization> {
    if !g.is_sp() {
        return Err(Error::Precondition("Bruhat factorization needs an element of Sp".into()));
    }
    let n = g.n();
    let (m1, m2, j) = rank_normal_form(&g.c(), rule);
    let m1it = m1.inverse()?.transpose();
    let m2it = m2.inverse()?.transpose();
    let left = GSpElement::from_parts(n, Mat::block_diag(&[&m1it, &m1]), Q::one());
    let right = GSpElement::from_parts(n, Mat::block_diag(&[&m2, &m2it]), Q::one());
    let g1 = left.mul(g).mul(&right);

    // The lower-left block is now diag(0, -I_j). Symplecticity forces the
    // top-right (n-j) x j part of d to vanish and its lower-right j x j
    // part to be symmetric; a symmetric shear clears the remaining rows.
    let d = g1.d();
    let k = n - j;
    let mut s = Mat::zeros(n, n);
    for r in k..n {
        for c in 0..k {
            s.set(r, c, d.get(r, c).clone());
            s.set(c, r, d.get(r, c).clone());
        }
        for c in k..n {
            s.set(r, c, d.get(r, c).clone());
        }
    }
    let u = GSpElement::upper_unipotent(&s);
    let g2 = g1.mul(&u);
    let t = tau(n, j);
    let qpart = g2.mul(&t.inverse());
    if !qpart.in_siegel() {
        return Err(Error::Precondition("matrix is not symplectic".into()));
    }
    let p1 = left.inverse().mul(&qpart);
    let p2 = GSpElement::upper_unipotent(&s.neg()).mul(&right.inverse());
    Ok(BruhatFactorization { p1, j, p2, tau_j: t })
}

/// Invertible `m1, m2` with `m1 c m2 = diag(0_{n-j}, -I_j)`.
fn rank_normal_form(c: &Mat, rule: PivotRule) -> (Mat, Mat, usize) {
    let n = c.rows();
    let mut w = c.clone();
    let mut p = Mat::identity(n);
    let mut qm = Mat::identity(n);
    let mut rng = match rule {
        PivotRule::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        PivotRule::First => None,
    };
    let mut r = 0;
    loop {
        let cands: Vec<(usize, usize)> = (r..n)
            .flat_map(|i| (r..n).map(move |k| (i, k)))
            .filter(|&(i, k)| !w.get(i, k).is_zero())
            .collect();
        let Some(&(pi, pk)) = (match rng.as_mut() {
            Some(rng) => cands.choose(rng),
            None => cands.first(),
        }) else {
            break;
        };
        w.swap_rows(r, pi);
        p.swap_rows(r, pi);
        w.swap_cols(r, pk);
        qm.swap_cols(r, pk);
        let inv = w.get(r, r).recip();
        w.scale_row(r, &inv);
        p.scale_row(r, &inv);
        for i in 0..n {
            if i != r && !w.get(i, r).is_zero() {
                let f = -w.get(i, r).clone();
                w.add_row_multiple(i, r, &f);
                p.add_row_multiple(i, r, &f);
            }
        }
        for k in 0..n {
            if k != r && !w.get(r, k).is_zero() {
                let f = -w.get(r, k).clone();
                w.add_col_multiple(k, r, &f);
                qm.add_col_multiple(k, r, &f);
            }
        }
        r += 1;
    }
    let j = r;
    // Move the identity block to the last j coordinates and negate.
    let mut pi = Mat::zeros(n, n);
    for i in 0..n {
        let to = if i < j { n - j + i } else { i - j };
        pi.set(to, i, Q::one());
    }
    let mut m1 = (&pi * &p).neg();
    let mut m2 = &qm * &pi.transpose();
    if let Some(rng) = rng.as_mut() {
        let k = n - j;
        let g1 = random_gl(k, rng);
        let g2 = random_gl(j, rng);
        let h1 = random_gl(k, rng);
        let g2i = g2.inverse().expect("invertible");
        m1 = &Mat::block_diag(&[&g1, &g2]) * &m1;
        m2 = &m2 * &Mat::block_diag(&[&h1, &g2i]);
    }
    (m1, m2, j)
}

/// Rao's `x`-map on `Sp(2n)`: `det(a)` on the Siegel parabolic, extended by
/// `x(p1 tau_j p2) = x(p1) x(tau_j) x(p2)` with `x(tau_j) = (-1)^j`.
pub fn x_of(g: &GSpElement, ctx: &PadicContext) -> Result<SquareClass> {
    x_of_with(g, ctx, PivotRule::First)
}

/// [`x_of`] computed through a factorization with the given pivot rule.
pub fn x_of_with(g: &GSpElement, ctx: &PadicContext, rule: PivotRule) -> Result<SquareClass> {
    if !g.is_sp() {
        return Err(Error::Precondition("x is defined on Sp; use x_one for GSp".into()));
    }
    if g.in_siegel() {
        return square_class(&g.a().det(), ctx);
    }
    let f = bruhat_factor_with(g, rule)?;
    let sign = if f.j % 2 == 1 { q(-1) } else { q(1) };
    square_class(&(f.p1.a().det() * f.p2.a().det() * sign), ctx)
}

/// `x(g_1)`.
pub fn x_one(g: &GSpElement, ctx: &PadicContext) -> Result<SquareClass> {
    x_of(&g.g_one(), ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{embed_i_rn, random_sp_seeded};

    fn ctx() -> PadicContext {
        PadicContext::new(3).unwrap()
    }

    #[test]
    fn tau_is_symplectic_with_rank_j() {
        for n in 1..4 {
            for j in 0..=n {
                let t = tau(n, j);
                assert!(GSpElement::new(t.matrix().clone()).unwrap().is_sp());
                assert_eq!(cell_rank(&t), j);
            }
            assert_eq!(tau(n, n), GSpElement::j(n));
        }
    }

    #[test]
    fn cell_rank_examples() {
        let s = Mat::from_i64(&[&[1, 2], &[2, 0]]);
        assert_eq!(cell_rank(&GSpElement::upper_unipotent(&s)), 0);
        assert_eq!(cell_rank(&GSpElement::j(3)), 3);
        let corner = embed_i_rn(&GSpElement::j(1), 1, 2).unwrap();
        assert_eq!(cell_rank(&corner), 1);
    }

    #[test]
    fn factor_examples() {
        let s = Mat::from_i64(&[&[1, 2], &[2, 0]]);
        let u = GSpElement::upper_unipotent(&s);
        let f = bruhat_factor(&u).unwrap();
        assert_eq!(f.j, 0);
        assert_eq!(f.product(), u);
        let j = GSpElement::j(2);
        let f = bruhat_factor(&j).unwrap();
        assert_eq!((f.j, f.product()), (2, j));
        assert!(f.p1.in_siegel() && f.p2.in_siegel());
    }

    #[test]
    fn random_roundtrip_and_pivots() {
        let c = ctx();
        for seed in 0..40 {
            let g = random_sp_seeded(3, seed);
            let f = bruhat_factor(&g).unwrap();
            assert_eq!(f.product(), g);
            let f2 = bruhat_factor_with(&g, PivotRule::Seeded(seed + 1000)).unwrap();
            assert_eq!(f2.product(), g);
            assert!(f2.p1.in_siegel() && f2.p2.in_siegel());
            assert_eq!(x_of_with(&g, &c, PivotRule::First).unwrap(), x_of_with(&g, &c, PivotRule::Seeded(seed)).unwrap());
        }
    }

    #[test]
    fn x_examples() {
        let c = ctx();
        let a = Mat::from_i64(&[&[2, 0], &[0, 1]]);
        let g = GSpElement::levi_gl(&a).unwrap();
        assert_eq!(x_of(&g, &c).unwrap().rep_i64(), 2);
        assert!(x_of(&GSpElement::identity(2), &c).unwrap().is_trivial());
        assert_eq!(x_of(&GSpElement::j(1), &c).unwrap(), c.class_of_i64(-1).unwrap());
        assert!(x_of(&GSpElement::i_lambda(1, &q(2)), &c).is_err());
    }

    #[test]
    fn x_matches_kubota_for_n1() {
        let c = PadicContext::new(5).unwrap();
        for seed in 0..200 {
            let g = random_sp_seeded(1, seed);
            let m = g.matrix();
            let k = if m.get(1, 0).is_zero() { m.get(1, 1).clone() } else { m.get(1, 0).clone() };
            assert_eq!(x_of(&g, &c).unwrap(), square_class(&k, &c).unwrap());
        }
    }
}
