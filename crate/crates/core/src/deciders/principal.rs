use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::Character;
use crate::cover::conj_by;
use crate::padic::{hilbert_class, weil_factor_class, PadicContext, PsiSpec, SquareClass};
use crate::rational::{q, Q};
use crate::structure::central_params;
use crate::symplectic::{GSpElement, LeviShape};
use crate::{Error, Result};

/// Genuine principal series data `chi_1 x ... x chi_n x gamma_psi`, with an
/// optional character `xi` of the similitude.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalSeriesDatum {
    pub n: usize,
    pub chis: Vec<Character>,
    pub psi: PsiSpec,
    pub xi: Option<Character>,
}

impl PrincipalSeriesDatum {
    pub fn new(chis: Vec<Character>, psi: &PsiSpec, xi: Option<Character>) -> Result<Self> {
        if chis.is_empty() {
            return Err(Error::ShapeMismatch("no characters".into()));
        }
        for c in chis.iter().chain(xi.iter()) {
            if !c.ctx().same_prime(&psi.ctx) {
                return Err(Error::PrimeMismatch(c.ctx().p(), psi.ctx.p()));
            }
        }
        Ok(PrincipalSeriesDatum { n: chis.len(), chis, psi: psi.clone(), xi })
    }

    pub fn gsp4(chi1: Character, chi2: Character, psi: &PsiSpec) -> Result<Self> {
        PrincipalSeriesDatum::new(vec![chi1, chi2], psi, None)
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.psi.ctx
    }

    pub fn is_unitary(&self) -> bool {
        self.chis.iter().all(Character::is_unitary)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Irreducible,
    Reducible,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    I,
    II,
    III,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::I => "I",
            Condition::II => "II",
            Condition::III => "III",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// `I`, `II`, `III` or a rule name.
    pub tag: String,
    /// The orbit element exhibiting the condition, when there is one.
    pub element: Option<(Character, Character)>,
    /// For condition I, the non-square `a`.
    pub twist: Option<SquareClass>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub orbit: Vec<(Character, Character)>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn condition(&self) -> Option<&str> {
        self.witness.as_ref().map(|w| w.tag.as_str())
    }

    pub fn to_json(&self) -> Value {
        let pair = |(a, b): &(Character, Character)| json!([a.to_json(), b.to_json()]);
        let witness = self.witness.as_ref().map(|w| {
            json!({
                "tag": w.tag,
                "element": w.element.as_ref().map(pair),
                "twist": w.twist.map(|a| a.rep_i64()),
            })
        });
        let mut v = json!({
            "status": self.status,
            "witness": witness,
            "orbit": self.orbit.iter().map(pair).collect::<Vec<_>>(),
        });
        if let Some(n) = &self.note {
            v["note"] = json!(n);
        }
        v
    }
}

/// Orbit of `(chi_1, chi_2)` under the group of order 8 generated by the swap
/// and `(chi_1, chi_2) -> (chi_1, chi_2^{-1})`. The `gamma_psi` factor is
/// carried along unchanged.
pub fn weyl_orbit(chi1: &Character, chi2: &Character) -> Vec<(Character, Character)> {
    let mut orbit = vec![(chi1.clone(), chi2.clone())];
    let mut i = 0;
    while i < orbit.len() {
        let (a, b) = orbit[i].clone();
        for next in [(b.clone(), a.clone()), (a, b.inv())] {
            if !orbit.contains(&next) {
                orbit.push(next);
            }
        }
        i += 1;
    }
    orbit
}

fn abs(ctx: &PadicContext) -> Character {
    Character::abs_pow(ctx, 1.0)
}

/// Which condition, if any, a single orbit element satisfies.
///
/// Condition II asks for `xi |.|^{s+1/2} x xi |.|^{s-1/2}` with `xi` unitary
/// and `s` real; any character is `xi |.|^{s+1/2}` for a unique such pair,
/// so this is exactly `chi_1 chi_2^{-1} = |.|`. Condition III asks for
/// `chi_2 = eta_b |.|^{1/2}`, and since every quadratic character is some
/// `eta_b` this is `chi_2^2 = |.|`.
fn test_element(
    chi1: &Character,
    chi2: &Character,
    c1: &Character,
    c2: &Character,
) -> Result<Option<(Condition, Option<SquareClass>)>> {
    let ctx = chi1.ctx();
    for a in ctx.classes().iter().filter(|a| !a.is_trivial()) {
        if *c1 == chi1.twist(*a)? && *c2 == chi2.twist(*a)? {
            return Ok(Some((Condition::I, Some(*a))));
        }
    }
    if c1.mul(&c2.inv())? == abs(ctx) {
        return Ok(Some((Condition::II, None)));
    }
    if c2.pow(2) == abs(ctx) {
        return Ok(Some((Condition::III, None)));
    }
    Ok(None)
}

/// Reducibility of the genuine principal series of the cover of `GSp(4)`,
/// `p` odd, by scanning the Weyl orbit for conditions I, II and III.
pub fn gsp4_reducibility(d: &PrincipalSeriesDatum) -> Result<Verdict> {
    let p = d.ctx().p();
    if p == 2 {
        return Err(Error::UnsupportedPrime(2));
    }
    if d.n != 2 {
        return Err(Error::Precondition(format!("rank {} datum given to the GSp(4) decider", d.n)));
    }
    let (chi1, chi2) = (&d.chis[0], &d.chis[1]);
    let orbit = weyl_orbit(chi1, chi2);
    let mut best: Option<(Condition, Witness)> = None;
    for (c1, c2) in &orbit {
        if let Some((cond, twist)) = test_element(chi1, chi2, c1, c2)? {
            let w = Witness { tag: cond.to_string(), element: Some((c1.clone(), c2.clone())), twist };
            if best.as_ref().is_none_or(|(b, _)| cond < *b) {
                best = Some((cond, w));
            }
        }
    }
    Ok(match best {
        Some((_, w)) => Verdict { status: Status::Reducible, witness: Some(w), orbit, note: None },
        None => Verdict { status: Status::Irreducible, witness: None, orbit, note: None },
    })
}

impl PartialOrd for Condition {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Condition {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (*self as u8).cmp(&(*o as u8))
    }
}

/// Unitary data: irreducible for odd `n`, the GSp(4) decider for `n = 2`,
/// unknown otherwise.
pub fn odd_unitary_rule(d: &PrincipalSeriesDatum) -> Result<Verdict> {
    if !d.is_unitary() {
        return Err(Error::Precondition("characters are not unitary".into()));
    }
    if d.n % 2 == 1 {
        return Ok(Verdict {
            status: Status::Irreducible,
            witness: Some(Witness { tag: "odd-unitary".into(), element: None, twist: None }),
            orbit: vec![],
            note: None,
        });
    }
    if d.n == 2 {
        return gsp4_reducibility(d);
    }
    Ok(Verdict {
        status: Status::Unknown,
        witness: None,
        orbit: vec![],
        note: Some("even rank above 2: reducible unitary cases exist, no complete rule".into()),
    })
}

/// Checked facts behind the order-4 construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofLog {
    pub facts: Vec<(String, bool)>,
}

impl ProofLog {
    pub fn passed(&self) -> bool {
        self.facts.iter().all(|f| f.1)
    }

    fn push(&mut self, s: &str, ok: bool) {
        self.facts.push((s.to_string(), ok));
    }
}

/// The unramified character of order 4 (`chi(p) = i`) with `b` the
/// non-residue unit, repeated `n` times (`n` even), together with the facts
/// making `I(chi_psi)` reducible.
pub fn counterexample_build(ctx: &PadicContext, n: usize) -> Result<(PrincipalSeriesDatum, ProofLog)> {
    if ctx.p() == 2 {
        return Err(Error::UnsupportedPrime(2));
    }
    if n == 0 || n % 2 == 1 {
        return Err(Error::Precondition("rank must be even".into()));
    }
    let psi = PsiSpec::standard(ctx);
    let chi = Character::unramified_turns(ctx, num_rational::Ratio::new(1, 4));
    let b = ctx.class_of_i64(ctx.nonresidue() as i64)?;
    let eta_b = Character::eta(b, ctx)?;
    let mut log = ProofLog { facts: vec![] };

    log.push("chi has order 4", chi.order() == Some(4));
    log.push("eta_b is unramified, quadratic and nontrivial", eta_b.is_unramified() && eta_b.is_quadratic() && !eta_b.is_trivial());
    log.push("chi eta_b = chi^{-1}", chi.mul(&eta_b)? == chi.inv());

    let twisted = PsiSpec::standard(ctx).shifted(b);
    let mut ok = true;
    for a in ctx.classes() {
        ok &= weil_factor_class(&twisted, *a)? == weil_factor_class(&psi, *a)? * hilbert_class(b, *a);
    }
    log.push("gamma_{psi_b} = eta_b gamma_psi", ok);

    // conjugating chi_psi by i(b) in the cover twists it by eta_b(x(t_1)),
    // which equals eta_b on the product of the torus entries
    let shape = LeviShape::new(vec![1; n], 0)?;
    let ib = GSpElement::i_lambda(n, &b.rep());
    let mut ok = true;
    for z in central_params(&shape, ctx) {
        let c = conj_by(&ib, &z.to_cover(), ctx)?;
        let prod: Q = z.a.iter().product();
        ok &= c.g == z.matrix() && (c.eps * z.eps).is_minus() == (eta_b.eval(&prod)?.re < 0.0);
    }
    log.push("conjugation by i(b) twists chi_psi into (chi eta_b)_psi", ok);

    let xi = Character::trivial(ctx);
    let chin = chi.pow(n as i64);
    log.push("xi(-1) = chi^n(-1)", (xi.eval(&q(-1))? - chin.eval(&q(-1))?).norm() < 1e-12);

    let datum = PrincipalSeriesDatum::new(vec![chi; n], &psi, Some(xi))?;
    if n == 2 {
        let v = gsp4_reducibility(&datum)?;
        log.push("GSp(4) decider returns Reducible(I)", v.status == Status::Reducible && v.condition() == Some("I"));
    }
    Ok((datum, log))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> (PadicContext, PsiSpec) {
        let c = PadicContext::new(p).unwrap();
        let psi = PsiSpec::standard(&c);
        (c, psi)
    }

    fn ch(s: &str, c: &PadicContext) -> Character {
        Character::parse(s, c).unwrap()
    }

    #[test]
    fn orbits() {
        let (c, _) = ctx(3);
        assert_eq!(weyl_orbit(&ch("triv", &c), &ch("triv", &c)).len(), 1);
        assert_eq!(weyl_orbit(&ch("abs:1", &c), &ch("triv", &c)).len(), 4);
        assert_eq!(weyl_orbit(&ch("abs:1", &c), &ch("unr:1/3", &c)).len(), 8);
    }

    #[test]
    fn conditions() {
        let (c, psi) = ctx(5);
        let d = PrincipalSeriesDatum::gsp4(ch("abs:3/4*tame:1", &c), ch("abs:-1/4*tame:1", &c), &psi).unwrap();
        assert_eq!(gsp4_reducibility(&d).unwrap().condition(), Some("II"));
        let d = PrincipalSeriesDatum::gsp4(ch("unr:1/3", &c), ch("eta:2*abs:1/2", &c), &psi).unwrap();
        assert_eq!(gsp4_reducibility(&d).unwrap().condition(), Some("III"));
        let d = PrincipalSeriesDatum::gsp4(ch("unr:1/4", &c), ch("unr:1/4", &c), &psi).unwrap();
        let v = gsp4_reducibility(&d).unwrap();
        assert_eq!(v.condition(), Some("I"));
        let z = |t: f64| Character::unramified(&c, num_complex::Complex64::from_polar(1.0, t)).unwrap();
        let d = PrincipalSeriesDatum::gsp4(z(1.0), z(2.0), &psi).unwrap();
        assert_eq!(gsp4_reducibility(&d).unwrap().status, Status::Irreducible);
        let (c2, psi2) = ctx(2);
        let d = PrincipalSeriesDatum::gsp4(ch("triv", &c2), ch("triv", &c2), &psi2).unwrap();
        assert_eq!(gsp4_reducibility(&d), Err(Error::UnsupportedPrime(2)));
    }

    #[test]
    fn counterexamples() {
        for p in [3u64, 5, 7] {
            let (c, _) = ctx(p);
            let (d, log) = counterexample_build(&c, 2).unwrap();
            assert!(log.passed(), "{:?}", log);
            assert_eq!(d.n, 2);
            let (d4, log4) = counterexample_build(&c, 4).unwrap();
            assert!(log4.passed());
            assert_eq!(odd_unitary_rule(&d4).unwrap().status, Status::Unknown);
        }
    }

    #[test]
    fn odd_rule() {
        let (c, psi) = ctx(7);
        let d = PrincipalSeriesDatum::new(vec![ch("unr:1/5", &c), ch("tame:2", &c), ch("eta:7", &c)], &psi, None).unwrap();
        assert_eq!(odd_unitary_rule(&d).unwrap().status, Status::Irreducible);
    }
}
