//! Genuine representations of the covered torus of `GSp(2n)`, induced from
//! the covered torus with square similitude.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::One;
use rand::Rng;

use crate::characters::{Character, GenuineCentralCharacter};
use crate::cover::{cover_inverse, cover_mul, CoverElement};
use crate::padic::{gamma, hilbert_class, PadicContext, PsiSpec, SquareClass};
use crate::rational::{q, Q};
use crate::structure::{z_t_reps, CentralElement};
use crate::symplectic::{small_q, GSpElement, LeviShape};
use crate::{Error, Result, Sign};

pub type CMat = DMatrix<Complex64>;

pub const TOL: f64 = 1e-10;

/// `(t, e) -> e xi(t) gamma_psi(x(t_1))` on the covered torus with square
/// similitude, where `xi(t) = xi_0(lambda) prod xi_i(t_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenuineTorusChar {
    pub xi: Vec<Character>,
    pub xi0: Character,
    pub psi: PsiSpec,
}

fn torus_entries(g: &GSpElement) -> Result<Vec<Q>> {
    if !g.is_diagonal() {
        return Err(Error::Precondition("not a torus element".into()));
    }
    Ok((0..g.n()).map(|i| g.matrix().get(i, i).clone()).collect())
}

impl GenuineTorusChar {
    pub fn new(xi: Vec<Character>, xi0: Character, psi: &PsiSpec) -> Result<Self> {
        if xi.is_empty() {
            return Err(Error::ShapeMismatch("torus of rank 0".into()));
        }
        for c in xi.iter().chain(std::iter::once(&xi0)) {
            if !c.ctx().same_prime(&psi.ctx) {
                return Err(Error::PrimeMismatch(c.ctx().p(), psi.ctx.p()));
            }
        }
        Ok(GenuineTorusChar { xi, xi0, psi: psi.clone() })
    }

    pub fn trivial(n: usize, psi: &PsiSpec) -> Self {
        let t = Character::trivial(&psi.ctx);
        GenuineTorusChar { xi: vec![t.clone(); n], xi0: t, psi: psi.clone() }
    }

    pub fn n(&self) -> usize {
        self.xi.len()
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.psi.ctx
    }

    /// Value on `(t, e)`; `lambda(t)` must be a square.
    pub fn eval(&self, s: &CoverElement) -> Result<Complex64> {
        let ctx = self.ctx();
        if s.n() != self.n() {
            return Err(Error::ShapeMismatch(format!("rank {} vs {}", s.n(), self.n())));
        }
        if !ctx.class_of(s.g.lambda())?.is_trivial() {
            return Err(Error::Precondition("similitude is not a square".into()));
        }
        let t = torus_entries(&s.g)?;
        let x: Q = t.iter().product();
        let mut v = s.eps.to_f64() * gamma(&self.psi, ctx.class_of(&x)?)?.to_complex();
        for (c, a) in self.xi.iter().zip(&t) {
            v *= c.eval(a)?;
        }
        Ok(v * self.xi0.eval(s.g.lambda())?)
    }

    /// The same data as a character of the covered center of `M_t^+` for
    /// `t = (1, ..., 1; 0)`, which is the torus with square similitude.
    pub fn as_central(&self) -> Result<GenuineCentralCharacter> {
        let shape = LeviShape::new(vec![1; self.n()], 0)?;
        let mut eta = self.xi.clone();
        eta.push(self.xi0.pow(2));
        GenuineCentralCharacter::new(&shape, eta, &self.psi, SquareClass::one(self.ctx()))
    }

    /// Random characters: each coordinate a tame unit part times an
    /// unramified part, unitary unless `unitary` is false.
    pub fn random<R: Rng + ?Sized>(n: usize, psi: &PsiSpec, unitary: bool, rng: &mut R) -> Result<Self> {
        let ctx = &psi.ctx;
        let pick = |rng: &mut R| -> Result<Character> {
            let m = if ctx.p() == 2 { 4 } else { ctx.p() - 1 };
            let e = rng.gen_range(0..m);
            let z = if unitary {
                let t: f64 = rng.gen_range(0.0..1.0);
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t)
            } else {
                Complex64::new(rng.gen_range(0.25..4.0), rng.gen_range(-1.0..1.0))
            };
            Character::new(ctx, e, crate::characters::Zp::Complex(z))
        };
        let xi = (0..n).map(|_| pick(rng)).collect::<Result<Vec<_>>>()?;
        let xi0 = pick(rng)?;
        GenuineTorusChar::new(xi, xi0, psi)
    }
}

/// `(t, e)` in the covered torus: `t = diag(t_1, ..., t_n, lambda/t_1, ...)`.
pub fn torus_cover(t: &[Q], lambda: &Q, eps: Sign) -> CoverElement {
    CoverElement::new(GSpElement::torus(t, lambda), eps)
}

/// A random covered torus element with small entries and any similitude.
pub fn random_torus<R: Rng + ?Sized>(n: usize, ctx: &PadicContext, rng: &mut R) -> CoverElement {
    let p = ctx.p() as i64;
    let entry = |rng: &mut R| {
        let k = rng.gen_range(-1..=1i64);
        small_q(rng) * crate::rational::pow_q(&q(p), k)
    };
    let t: Vec<Q> = (0..n).map(|_| entry(rng)).collect();
    let l = entry(rng);
    let eps = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    torus_cover(&t, &l, eps)
}

/// The representation of the covered torus induced from a genuine
/// character of the square-similitude part, on functions over the cosets
/// `(i(a), 1)`, `a` running over square classes in canonical order.
#[derive(Clone, Debug)]
pub struct TorusRep {
    pub chi: GenuineTorusChar,
    pub labels: Vec<SquareClass>,
    reps: Vec<CoverElement>,
    reps_inv: Vec<CoverElement>,
}

pub fn induce(chi: &GenuineTorusChar) -> Result<TorusRep> {
    let ctx = chi.ctx();
    let n = chi.n();
    let labels = ctx.classes().to_vec();
    let reps: Vec<CoverElement> = labels.iter().map(|a| CoverElement::lift(GSpElement::i_lambda(n, &a.rep()))).collect();
    let reps_inv = reps.iter().map(|r| cover_inverse(r, ctx)).collect::<Result<Vec<_>>>()?;
    Ok(TorusRep { chi: chi.clone(), labels, reps, reps_inv })
}

impl TorusRep {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn n(&self) -> usize {
        self.chi.n()
    }

    pub fn ctx(&self) -> &PadicContext {
        self.chi.ctx()
    }

    /// `rho(s)[a][b] = chi((i(a), 1) s (i(b), 1)^{-1})` with `b` the class of
    /// `a lambda(s)`, all products taken in the cover.
    pub fn eval(&self, s: &CoverElement) -> Result<CMat> {
        let ctx = self.ctx();
        torus_entries(&s.g)?;
        let l = ctx.class_of(s.g.lambda())?;
        let d = self.dim();
        let mut m = CMat::zeros(d, d);
        for (i, a) in self.labels.iter().enumerate() {
            let b = (*a * l).index();
            let h = cover_mul(&cover_mul(&self.reps[i], s, ctx)?.value, &self.reps_inv[b], ctx)?.value;
            m[(i, b)] = self.chi.eval(&h)?;
        }
        Ok(m)
    }

    /// The coset representative `(i(a), 1)`.
    pub fn coset_rep(&self, a: SquareClass) -> &CoverElement {
        &self.reps[a.index()]
    }

    pub fn base_central(&self) -> Result<GenuineCentralCharacter> {
        self.chi.as_central()
    }

    fn zt(&self) -> Result<Vec<CentralElement>> {
        Ok(z_t_reps(&LeviShape::new(vec![1; self.n()], 0)?, self.ctx()))
    }

    /// `phi_w = d^{-1} sum_c w(z_c)^{-1} rho(z_c)` over the `Z_t` representatives.
    pub fn eigen_project(&self, w: &GenuineCentralCharacter) -> Result<CMat> {
        let d = self.dim();
        let mut acc = CMat::zeros(d, d);
        for z in self.zt()? {
            acc += self.eval(&z.to_cover())? * w.eval(&z)?.inv();
        }
        Ok(acc / Complex64::new(d as f64, 0.0))
    }

    /// Each element of the extension set paired with the dimension of its
    /// eigenspace (the trace of its projector).
    pub fn restrict_decompose(&self) -> Result<Vec<(GenuineCentralCharacter, usize)>> {
        crate::characters::omega_set(&self.base_central()?)
            .into_iter()
            .map(|w| {
                let t = self.eigen_project(&w)?.trace();
                Ok((w, t.re.round().max(0.0) as usize))
            })
            .collect()
    }

    /// Checks that `v -> f(v) -> v(f(v))` and `f -> v(f) -> f(v(f))` are the
    /// identity, with `f(v)(g) = phi_w(rho(g) v)` and
    /// `v(f) = sum_a rho(i(a)) f(i(a)^{-1})`; induced functions are compared
    /// at the coset representatives and at each element of `probes`.
    pub fn induction_roundtrip(&self, w: &GenuineCentralCharacter, probes: &[CoverElement]) -> Result<bool> {
        let ctx = self.ctx();
        let d = self.dim();
        let phi = self.eigen_project(w)?;
        let rho_r: Vec<CMat> = self.reps.iter().map(|r| self.eval(r)).collect::<Result<_>>()?;
        let rho_ri: Vec<CMat> = self.reps_inv.iter().map(|r| self.eval(r)).collect::<Result<_>>()?;

        let mut back = CMat::zeros(d, d);
        for (r, ri) in rho_r.iter().zip(&rho_ri) {
            back += r * &phi * ri;
        }
        if !close(&back, &CMat::identity(d, d)) {
            return Ok(false);
        }

        // spanning vector of the image of phi_w
        let col = (0..d)
            .max_by(|&i, &j| phi.column(i).norm().total_cmp(&phi.column(j).norm()))
            .expect("nonempty");
        let wv = phi.column(col).into_owned();
        if wv.norm() < 0.5 {
            return Ok(false);
        }
        for y in 0..d {
            // f is supported on the coset of (i(y), 1)^{-1} with value wv there
            let v = &rho_r[y] * &wv;
            let mut checks: Vec<(CoverElement, Option<CoverElement>)> = Vec::new();
            for (z, s) in self.reps_inv.iter().enumerate() {
                checks.push((s.clone(), (z == y).then(|| CoverElement::identity(self.n()))));
            }
            for g in probes {
                // g = h (i(c), 1)^{-1} with c the class of lambda(g)^{-1}
                let c = ctx.class_of(g.g.lambda())?.inverse();
                let h = (c.index() == y).then(|| cover_mul(g, &self.reps[c.index()], ctx)).transpose()?;
                checks.push((g.clone(), h.map(|p| p.value)));
            }
            for (g, h) in checks {
                let got = &phi * (self.eval(&g)? * &v);
                let want = match h {
                    Some(h) => self.eval(&h)? * &wv,
                    None => nalgebra::DVector::zeros(d),
                };
                if (got - want).norm() > TOL {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Sign of the commutator `s t s^{-1} t^{-1}` in the cover.
pub fn commutator_sign(s: &CoverElement, t: &CoverElement, ctx: &PadicContext) -> Result<Sign> {
    let st = cover_mul(s, t, ctx)?.value;
    let si = cover_inverse(s, ctx)?;
    let ti = cover_inverse(t, ctx)?;
    let c = cover_mul(&cover_mul(&st, &si, ctx)?.value, &ti, ctx)?.value;
    if !c.g.is_identity() {
        return Err(Error::Precondition("elements do not commute in GSp".into()));
    }
    Ok(c.eps)
}

/// `(x(s_1), lambda(t)) (x(t_1), lambda(s))` for torus elements.
pub fn heisenberg_pairing(s: &GSpElement, t: &GSpElement, ctx: &PadicContext) -> Result<Sign> {
    let x = |g: &GSpElement| -> Result<SquareClass> { ctx.class_of(&torus_entries(g)?.iter().product::<Q>()) };
    let l = |g: &GSpElement| ctx.class_of(g.lambda());
    Ok(hilbert_class(x(s)?, l(t)?) * hilbert_class(x(t)?, l(s)?))
}

pub fn close(a: &CMat, b: &CMat) -> bool {
    a.shape() == b.shape() && a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() < TOL)
}

/// `Q::one()` as a covered torus element of rank `n`.
pub fn torus_identity(n: usize) -> CoverElement {
    torus_cover(&vec![Q::one(); n], &Q::one(), Sign::Plus)
}
