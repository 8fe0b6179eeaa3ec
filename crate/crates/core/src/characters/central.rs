use num_complex::Complex64;
use num_traits::One;

use super::Character;
use crate::cover::conj_by;
use crate::padic::{gamma, hilbert_class, PadicContext, PsiSpec, SquareClass};
use crate::rational::Q;
use crate::structure::{scalar_central, x_on_center, CentralElement};
use crate::symplectic::{GSpElement, LeviShape};
use crate::{Error, Result};

const TOL: f64 = 1e-12;

/// `(g, e) -> e eta_a(x(g_1)) gamma_psi(x(g_1)) eta'(g)` on the covered center
/// of `M_t^+`.
///
/// `eta_prime` holds one character per GL block followed by one for the
/// tail parameter `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenuineCentralCharacter {
    pub shape: LeviShape,
    pub eta_prime: Vec<Character>,
    pub psi: PsiSpec,
    pub twist: SquareClass,
}

impl GenuineCentralCharacter {
    pub fn new(shape: &LeviShape, eta_prime: Vec<Character>, psi: &PsiSpec, twist: SquareClass) -> Result<Self> {
        if eta_prime.len() != shape.parts.len() + 1 {
            return Err(Error::ShapeMismatch(format!(
                "{} characters for {} central parameters",
                eta_prime.len(),
                shape.parts.len() + 1
            )));
        }
        for c in &eta_prime {
            if !c.ctx().same_prime(&psi.ctx) {
                return Err(Error::PrimeMismatch(c.ctx().p(), psi.ctx.p()));
            }
        }
        let mut w = GenuineCentralCharacter { shape: shape.clone(), eta_prime, psi: psi.clone(), twist };
        if !shape.is_odd() {
            w.twist = SquareClass::one(&psi.ctx);
        }
        Ok(w)
    }

    /// The same character `eta'` on every central parameter.
    pub fn uniform(shape: &LeviShape, eta_prime: &Character, psi: &PsiSpec) -> Result<Self> {
        let v = vec![eta_prime.clone(); shape.parts.len() + 1];
        GenuineCentralCharacter::new(shape, v, psi, SquareClass::one(&psi.ctx))
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.psi.ctx
    }

    /// `eta'` on the parameters, without the genuine part.
    pub fn eta_prime_value(&self, z: &CentralElement) -> Result<Complex64> {
        let mut v = Complex64::one();
        for (c, a) in self.eta_prime.iter().zip(&z.a) {
            v *= c.eval(a)?;
        }
        Ok(v * self.eta_prime.last().expect("tail character").eval(&z.b)?)
    }

    pub fn eval(&self, z: &CentralElement) -> Result<Complex64> {
        if z.shape != self.shape {
            return Err(Error::ShapeMismatch(format!("{} vs {}", z.shape, self.shape)));
        }
        let x = x_on_center(z, self.ctx())?;
        let g = gamma(&self.psi, x)?.to_complex();
        let eta = hilbert_class(self.twist, x).to_f64();
        Ok(z.eps.to_f64() * eta * g * self.eta_prime_value(z)?)
    }

    /// True iff both characters agree (to `1e-12`) on every element given.
    pub fn agrees_on(&self, other: &Self, elems: &[CentralElement]) -> Result<bool> {
        for z in elems {
            if (self.eval(z)? - other.eval(z)?).norm() > TOL {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The genuine character `(aI, e) -> e eta'(a) gamma_psi(a^n)` of the covered
/// center of `GSp^+(2n)`.
pub fn genuine_center_char(eta_prime: &Character, psi: &PsiSpec, n: usize) -> Result<GenuineCentralCharacter> {
    let shape = LeviShape::new(vec![], n)?;
    GenuineCentralCharacter::new(&shape, vec![eta_prime.clone()], psi, SquareClass::one(&psi.ctx))
}

/// All genuine characters of the covered center of `M_t^+` extending the
/// restriction of `base` to the center of `M_t'`.
pub fn omega_set(base: &GenuineCentralCharacter) -> Vec<GenuineCentralCharacter> {
    if !base.shape.is_odd() {
        return vec![base.clone()];
    }
    base.ctx()
        .classes()
        .iter()
        .map(|a| GenuineCentralCharacter { twist: *a, ..base.clone() })
        .collect()
}

/// `chi^g(z, e) = eta_{lambda(g)}(x(z_1)) chi(z, e)`.
pub fn conj_char(w: &GenuineCentralCharacter, g: &GSpElement) -> Result<GenuineCentralCharacter> {
    let l = w.ctx().class_of(g.lambda())?;
    if !w.shape.is_odd() {
        return Ok(w.clone());
    }
    Ok(GenuineCentralCharacter { twist: w.twist * l, ..w.clone() })
}

/// Action of the `Z_t` representative `z`: conjugation by `i(x(z_1))`.
pub fn zt_act(w: &GenuineCentralCharacter, z: &CentralElement) -> Result<GenuineCentralCharacter> {
    let x = x_on_center(z, w.ctx())?;
    conj_char(w, &GSpElement::i_lambda(w.shape.n(), &x.rep()))
}

/// Checks that twisting the genuine central character `tau` by
/// `eta'^{-1} o lambda` and conjugating by `sigma = i(-1)` gives `tau^{-1}`
/// on every `(aI, e)`, `a` running over class representatives and `extra`.
///
/// The conjugate is computed with the cover group law, not the twist formula.
pub fn dual_central_identity(eta_prime: &Character, psi: &PsiSpec, n: usize, extra: &[Q]) -> Result<bool> {
    let ctx = &psi.ctx;
    let tau = genuine_center_char(eta_prime, psi, n)?;
    let sigma = GSpElement::i_lambda(n, &-Q::one());
    let inv = eta_prime.inv();
    let mut args: Vec<Q> = ctx.classes().iter().map(|c| c.rep()).collect();
    args.extend(extra.iter().cloned());
    for a in &args {
        for eps in [crate::Sign::Plus, crate::Sign::Minus] {
            let z = CentralElement { eps, ..scalar_central(n, a) };
            let c = conj_by(&sigma, &z.to_cover(), ctx)?;
            if c.g != z.matrix() {
                return Ok(false);
            }
            let zc = CentralElement { eps: c.eps, ..z.clone() };
            let lhs = inv.eval(&(a * a))? * tau.eval(&zc)?;
            let rhs = tau.eval(&z)?.inv();
            if (lhs - rhs).norm() > TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
