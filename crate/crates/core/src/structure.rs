//! Centers of covered Levi subgroups.

use num_traits::One;
use rand::Rng;

use crate::cover::{conj_by, cover_mul, CoverElement};
use crate::matrix::Mat;
use crate::padic::{hilbert_class, square_class, PadicContext, SquareClass};
use crate::rational::{q, Q};
use crate::symplectic::{levi_element, random_gl, random_sp, small_q, x_one, GSpElement, LeviShape};
use crate::{Error, Result, Sign};

pub use crate::symplectic::LeviType;

/// `(diag(a_1 I, ..., a_r I, b I, b^2/a_1 I, ..., b^2/a_r I, b I), eps)`,
/// an element of the covered center of `M_t^+`.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralElement {
    pub shape: LeviShape,
    pub a: Vec<Q>,
    pub b: Q,
    pub eps: Sign,
}

impl CentralElement {
    pub fn new(shape: &LeviShape, a: Vec<Q>, b: Q, eps: Sign) -> Result<Self> {
        if a.len() != shape.parts.len() {
            return Err(Error::ShapeMismatch(format!("{} parameters for {} GL blocks", a.len(), shape.parts.len())));
        }
        if a.iter().chain(std::iter::once(&b)).any(num_traits::Zero::is_zero) {
            return Err(Error::ZeroInput);
        }
        Ok(CentralElement { shape: shape.clone(), a, b, eps })
    }

    pub fn identity(shape: &LeviShape) -> Self {
        CentralElement { shape: shape.clone(), a: vec![Q::one(); shape.parts.len()], b: Q::one(), eps: Sign::Plus }
    }

    pub fn matrix(&self) -> GSpElement {
        let n = self.shape.n();
        let b2 = &self.b * &self.b;
        let mut d = vec![Q::one(); 2 * n];
        for ((k, off), a) in self.shape.parts.iter().zip(self.shape.offsets()).zip(&self.a) {
            for i in off..off + k {
                d[i] = a.clone();
                d[n + i] = &b2 / a;
            }
        }
        let s = n - self.shape.tail;
        for i in s..n {
            d[i] = self.b.clone();
            d[n + i] = self.b.clone();
        }
        GSpElement::new(Mat::diag(&d)).expect("central elements are similitudes")
    }

    pub fn lambda(&self) -> Q {
        &self.b * &self.b
    }

    pub fn to_cover(&self) -> CoverElement {
        CoverElement::new(self.matrix(), self.eps)
    }
}

pub fn levi_type(t: &LeviShape) -> LeviType {
    t.levi_type()
}

/// `x(g_1) = b^{n_{r+1}} prod_{n_k odd} a_k`.
pub fn x_on_center(c: &CentralElement, ctx: &PadicContext) -> Result<SquareClass> {
    let mut v = if c.shape.tail % 2 == 1 { c.b.clone() } else { Q::one() };
    for (k, a) in c.shape.parts.iter().zip(&c.a) {
        if k % 2 == 1 {
            v *= a;
        }
    }
    square_class(&v, ctx)
}

/// Every parameter tuple with entries in class representatives.
pub fn central_params(t: &LeviShape, ctx: &PadicContext) -> Vec<CentralElement> {
    let reps: Vec<Q> = ctx.classes().iter().map(|c| c.rep()).collect();
    let slots = t.parts.len() + 1;
    let total = reps.len().pow(slots as u32);
    (0..total)
        .map(|mut idx| {
            let mut vals = Vec::with_capacity(slots);
            for _ in 0..slots {
                vals.push(reps[idx % reps.len()].clone());
                idx /= reps.len();
            }
            let b = vals.pop().expect("tail slot");
            CentralElement { shape: t.clone(), a: vals, b, eps: Sign::Plus }
        })
        .collect()
}

/// Image of `x` on the covered center of `M_t^+`, in canonical class order.
pub fn center_image(t: &LeviShape, ctx: &PadicContext) -> Result<Vec<SquareClass>> {
    let mut seen = vec![false; ctx.class_count()];
    for c in central_params(t, ctx) {
        seen[x_on_center(&c, ctx)?.index()] = true;
    }
    Ok(ctx.classes().iter().filter(|c| seen[c.index()]).copied().collect())
}

/// Representatives of `Z_t`: one central element per class of `x(g_1)`
/// (a single trivial coset for shapes of even type).
pub fn z_t_reps(t: &LeviShape, ctx: &PadicContext) -> Vec<CentralElement> {
    let id = CentralElement::identity(t);
    if !t.is_odd() {
        return vec![id];
    }
    ctx.classes()
        .iter()
        .map(|c| {
            let mut e = id.clone();
            if t.tail % 2 == 1 {
                e.b = c.rep();
            } else {
                let k = t.parts.iter().position(|k| k % 2 == 1).expect("odd type");
                e.a[k] = c.rep();
            }
            e
        })
        .collect()
}

/// `(g, e)(g', e') = (g g', e e' (x(g_1), x(g'_1)))`.
pub fn center_mul(c1: &CentralElement, c2: &CentralElement, ctx: &PadicContext) -> Result<CentralElement> {
    if c1.shape != c2.shape {
        return Err(Error::ShapeMismatch("central elements of different shapes".into()));
    }
    let s = hilbert_class(x_on_center(c1, ctx)?, x_on_center(c2, ctx)?);
    Ok(CentralElement {
        shape: c1.shape.clone(),
        a: c1.a.iter().zip(&c2.a).map(|(x, y)| x * y).collect(),
        b: &c1.b * &c2.b,
        eps: c1.eps * c2.eps * s,
    })
}

/// A random element of `M_t` with similitude `lambda`.
pub fn random_levi<R: Rng + ?Sized>(t: &LeviShape, lambda: &Q, rng: &mut R) -> GSpElement {
    let gl: Vec<Mat> = t.parts.iter().map(|&k| random_gl(k, rng)).collect();
    let h = (t.tail > 0).then(|| GSpElement::i_lambda(t.tail, lambda).mul(&random_sp(t.tail, rng)));
    levi_element(t, &gl, h.as_ref(), lambda).expect("blocks match shape")
}

/// A random element of `M_t^+` (square similitude).
pub fn random_levi_plus<R: Rng + ?Sized>(t: &LeviShape, rng: &mut R) -> GSpElement {
    let m = small_q(rng);
    random_levi(t, &(&m * &m), rng)
}

/// True iff `(g, 1)` and `(h, 1)` commute in the cover, by direct products.
pub fn cover_commute(g: &GSpElement, h: &GSpElement, ctx: &PadicContext) -> Result<bool> {
    let s = CoverElement::lift(g.clone());
    let t = CoverElement::lift(h.clone());
    Ok(cover_mul(&s, &t, ctx)?.value == cover_mul(&t, &s, ctx)?.value)
}

/// A torus element `i(mu)`, `mu` a class representative, that fails to
/// commute with `z` in the cover; `None` when `x(z_1)` is a square.
pub fn noncommuting_witness(z: &CentralElement, ctx: &PadicContext) -> Result<Option<GSpElement>> {
    let g = z.matrix();
    for mu in ctx.classes() {
        let t = GSpElement::i_lambda(z.shape.n(), &mu.rep());
        if !cover_commute(&g, &t, ctx)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Sign acquired by `(h, e)` under conjugation by `g`, via [`conj_by`].
pub fn conj_sign(g: &GSpElement, h: &GSpElement, ctx: &PadicContext) -> Result<Sign> {
    Ok(conj_by(g, &CoverElement::lift(h.clone()), ctx)?.eps)
}

/// Independent path for [`x_on_center`]: Rao's `x` of `g_1` of the matrix.
pub fn x_on_center_matrix(c: &CentralElement, ctx: &PadicContext) -> Result<SquareClass> {
    x_one(&c.matrix(), ctx)
}

/// Helper for the central element `b I_{2n}`.
pub fn scalar_central(n: usize, b: &Q) -> CentralElement {
    CentralElement { shape: LeviShape { parts: vec![], tail: n }, a: vec![], b: b.clone(), eps: Sign::Plus }
}

pub fn minus_one_class(ctx: &PadicContext) -> SquareClass {
    ctx.class_of(&q(-1)).expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn shape(s: &str) -> LeviShape {
        s.parse().unwrap()
    }

    #[test]
    fn x_examples() {
        let c5 = PadicContext::new(5).unwrap();
        let z = CentralElement::new(&shape("1;1"), vec![q(2)], q(3), Sign::Plus).unwrap();
        assert_eq!(x_on_center(&z, &c5).unwrap(), c5.class_of_i64(6).unwrap());
        assert_eq!(x_on_center_matrix(&z, &c5).unwrap(), c5.class_of_i64(6).unwrap());
        let e = CentralElement::new(&shape("2;0"), vec![q(7)], q(3), Sign::Plus).unwrap();
        assert!(x_on_center(&e, &c5).unwrap().is_trivial());
    }

    #[test]
    fn images() {
        let c3 = PadicContext::new(3).unwrap();
        let im: Vec<i64> = center_image(&shape("1;0"), &c3).unwrap().iter().map(|c| c.rep_i64()).collect();
        assert_eq!(im, vec![1, 2, 3, 6]);
        assert_eq!(center_image(&shape("2;0"), &c3).unwrap().len(), 1);
        let c5 = PadicContext::new(5).unwrap();
        assert_eq!(center_image(&shape("2;1"), &c5).unwrap().len(), 4);
    }

    #[test]
    fn reps() {
        let c3 = PadicContext::new(3).unwrap();
        assert_eq!(z_t_reps(&shape("2;2"), &c3).len(), 1);
        let r = z_t_reps(&shape("1,2;0"), &c3);
        assert_eq!(r.len(), 4);
        let xs: Vec<SquareClass> = r.iter().map(|z| x_on_center(z, &c3).unwrap()).collect();
        assert_eq!(xs, c3.classes().to_vec());
        let c2 = PadicContext::new(2).unwrap();
        assert_eq!(z_t_reps(&shape(";3"), &c2).len(), 8);
    }

    #[test]
    fn center_mul_sign() {
        let c3 = PadicContext::new(3).unwrap();
        let t = shape(";1");
        let u = scalar_central(1, &q(2));
        let p = scalar_central(1, &q(3));
        assert_eq!(center_mul(&u, &p, &c3).unwrap().eps, Sign::Minus);
        let id = CentralElement::identity(&t);
        assert_eq!(center_mul(&u, &id, &c3).unwrap(), u);
        let via_cover = cover_mul(&u.to_cover(), &p.to_cover(), &c3).unwrap().value;
        assert_eq!(via_cover, center_mul(&u, &p, &c3).unwrap().to_cover());
    }

    #[test]
    fn central_elements_commute_with_levi_plus() {
        let c = PadicContext::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = shape("1;1");
        for z in z_t_reps(&t, &c) {
            for _ in 0..10 {
                let h = random_levi_plus(&t, &mut rng);
                assert!(cover_commute(&z.matrix(), &h, &c).unwrap());
                assert_eq!(conj_sign(&z.matrix(), &h, &c).unwrap(), Sign::Plus);
            }
            let w = noncommuting_witness(&z, &c).unwrap();
            assert_eq!(w.is_some(), !x_on_center(&z, &c).unwrap().is_trivial());
        }
    }
}
