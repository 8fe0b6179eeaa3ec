use std::fmt;

use num_traits::{One, Zero};

use crate::matrix::Mat;
use crate::rational::{q, Q};
use crate::{Error, Result};

/// A `2n x 2n` rational matrix `g` with `g J g^t = lambda J`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GSpElement {
    n: usize,
    m: Mat,
    lambda: Q,
}

/// Similitude factor of `m`, if `m` is a symplectic similitude.
fn similitude(m: &Mat, n: usize) -> Option<Q> {
    if m.rows() != 2 * n || m.cols() != 2 * n || n == 0 {
        return None;
    }
    let j = GSpElement::j_mat(n);
    let t = &(m * &j) * &m.transpose();
    let lambda = t.get(0, n).clone();
    if lambda.is_zero() || t != j.scale(&lambda) {
        return None;
    }
    Some(lambda)
}

/// Verifies the similitude relation and caches `lambda`.
pub fn make_gsp(m: Mat, n: usize) -> Result<GSpElement> {
    if m.rows() != 2 * n || m.cols() != 2 * n {
        return Err(Error::ShapeMismatch(format!("expected {0}x{0}, got {1}x{2}", 2 * n, m.rows(), m.cols())));
    }
    let lambda = similitude(&m, n).ok_or(Error::NotSimilitude)?;
    Ok(GSpElement { n, m, lambda })
}

impl GSpElement {
    /// Infers `n` from the matrix size.
    pub fn new(m: Mat) -> Result<Self> {
        if !m.is_square() || m.rows() % 2 == 1 || m.rows() == 0 {
            return Err(Error::ShapeMismatch(format!("{}x{} is not 2n x 2n", m.rows(), m.cols())));
        }
        let n = m.rows() / 2;
        make_gsp(m, n)
    }

    /// Skips the similitude check; `lambda` must be correct.
    pub(crate) fn from_parts(n: usize, m: Mat, lambda: Q) -> Self {
        GSpElement { n, m, lambda }
    }

    pub fn j_mat(n: usize) -> Mat {
        let z = Mat::zeros(n, n);
        let i = Mat::identity(n);
        Mat::from_blocks(&z, &i, &i.neg(), &z)
    }

    pub fn identity(n: usize) -> Self {
        GSpElement { n, m: Mat::identity(2 * n), lambda: Q::one() }
    }

    pub fn j(n: usize) -> Self {
        GSpElement { n, m: Self::j_mat(n), lambda: Q::one() }
    }

    /// `i(lambda) = diag(I_n, lambda I_n)`.
    pub fn i_lambda(n: usize, lambda: &Q) -> Self {
        assert!(!lambda.is_zero());
        let mut d = vec![Q::one(); n];
        d.extend(vec![lambda.clone(); n]);
        GSpElement { n, m: Mat::diag(&d), lambda: lambda.clone() }
    }

    /// `diag(a, a^{-t})` for invertible `a`.
    pub fn levi_gl(a: &Mat) -> Result<Self> {
        let n = a.rows();
        let at = a.inverse()?.transpose();
        Ok(GSpElement { n, m: Mat::block_diag(&[a, &at]), lambda: Q::one() })
    }

    /// `[[I, s], [0, I]]` for symmetric `s`.
    pub fn upper_unipotent(s: &Mat) -> Self {
        assert!(s.is_symmetric());
        let n = s.rows();
        let i = Mat::identity(n);
        GSpElement { n, m: Mat::from_blocks(&i, s, &Mat::zeros(n, n), &i), lambda: Q::one() }
    }

    /// `[[I, 0], [s, I]]` for symmetric `s`.
    pub fn lower_unipotent(s: &Mat) -> Self {
        assert!(s.is_symmetric());
        let n = s.rows();
        let i = Mat::identity(n);
        GSpElement { n, m: Mat::from_blocks(&i, &Mat::zeros(n, n), s, &i), lambda: Q::one() }
    }

    /// Diagonal element `diag(t, lambda t^{-1})`.
    pub fn torus(t: &[Q], lambda: &Q) -> Self {
        let n = t.len();
        let mut d: Vec<Q> = t.to_vec();
        d.extend(t.iter().map(|x| lambda / x));
        GSpElement { n, m: Mat::diag(&d), lambda: lambda.clone() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn lambda(&self) -> &Q {
        &self.lambda
    }

    pub fn is_sp(&self) -> bool {
        self.lambda.is_one()
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    pub fn is_diagonal(&self) -> bool {
        self.m.is_diagonal()
    }

    pub fn a(&self) -> Mat {
        self.m.block(0, 0, self.n, self.n)
    }

    pub fn b(&self) -> Mat {
        self.m.block(0, self.n, self.n, self.n)
    }

    pub fn c(&self) -> Mat {
        self.m.block(self.n, 0, self.n, self.n)
    }

    pub fn d(&self) -> Mat {
        self.m.block(self.n, self.n, self.n, self.n)
    }

    /// Membership in the Siegel parabolic (of `GSp`).
    pub fn in_siegel(&self) -> bool {
        self.c().is_zero()
    }

    pub fn mul(&self, o: &GSpElement) -> GSpElement {
        assert_eq!(self.n, o.n, "rank mismatch");
        GSpElement { n: self.n, m: &self.m * &o.m, lambda: &self.lambda * &o.lambda }
    }

    /// `g^{-1} = lambda^{-1} [[d^t, -b^t], [-c^t, a^t]]`.
    pub fn inverse(&self) -> GSpElement {
        let n = self.n;
        let inv_l = self.lambda.recip();
        let m = Mat::from_blocks(
            &self.d().transpose(),
            &self.b().transpose().neg(),
            &self.c().transpose().neg(),
            &self.a().transpose(),
        )
        .scale(&inv_l);
        GSpElement { n, m, lambda: inv_l }
    }

    /// `g_1 = i(lambda(g)^{-1}) g`, the `Sp` component.
    pub fn g_one(&self) -> GSpElement {
        let mut m = self.m.clone();
        let inv = self.lambda.recip();
        for r in self.n..2 * self.n {
            m.scale_row(r, &inv);
        }
        GSpElement { n: self.n, m, lambda: Q::one() }
    }

    /// `g^{i(lambda)} = i(lambda)^{-1} g i(lambda)`.
    pub fn conj_i(&self, lambda: &Q) -> GSpElement {
        let n = self.n;
        let a = self.a();
        let b = self.b().scale(lambda);
        let c = self.c().scale(&lambda.recip());
        let d = self.d();
        GSpElement { n, m: Mat::from_blocks(&a, &b, &c, &d), lambda: self.lambda.clone() }
    }

    /// `g h g^{-1}`.
    pub fn conjugate(&self, h: &GSpElement) -> GSpElement {
        self.mul(h).mul(&self.inverse())
    }

    pub fn commutes_with(&self, h: &GSpElement) -> bool {
        self.mul(h) == h.mul(self)
    }

    pub fn pow(&self, e: u32) -> GSpElement {
        let mut r = GSpElement::identity(self.n);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn scalar(n: usize, a: &Q) -> GSpElement {
        GSpElement { n, m: Mat::scalar(2 * n, a.clone()), lambda: a * a }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        GSpElement::new(Mat::from_i64(rows))
    }

    pub fn minus_identity(n: usize) -> Self {
        GSpElement::scalar(n, &q(-1))
    }
}

impl fmt::Debug for GSpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSp(n={}, lambda={}, {:?})", self.n, self.lambda, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn basic_elements() {
        for n in 1..4 {
            let j = make_gsp(GSpElement::j_mat(n), n).unwrap();
            assert!(j.is_sp());
            assert!(make_gsp(Mat::identity(2 * n), n).unwrap().is_sp());
            let il = make_gsp(GSpElement::i_lambda(n, &q(5)).matrix().clone(), n).unwrap();
            assert_eq!(il.lambda(), &q(5));
            assert!(il.g_one().is_identity());
        }
        assert_eq!(make_gsp(Mat::from_i64(&[&[1, 1], &[0, 2]]), 1).unwrap().lambda(), &q(2));
        assert_eq!(make_gsp(Mat::from_i64(&[&[1, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]), 2), Err(Error::NotSimilitude));
        assert!(matches!(make_gsp(Mat::identity(3), 1), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn inverse_and_conjugation() {
        let g = make_gsp(Mat::from_i64(&[&[2, 3], &[1, 5]]), 1).unwrap();
        assert_eq!(g.lambda(), &q(7));
        assert!(g.mul(&g.inverse()).is_identity());
        let l = qf(3, 2);
        let il = GSpElement::i_lambda(1, &l);
        assert_eq!(g.conj_i(&l), il.inverse().mul(&g).mul(&il));
        let s = GSpElement::j(2);
        let g4 = GSpElement::i_lambda(2, &q(4)).mul(&s);
        assert_eq!(g4.g_one(), s);
    }
}
