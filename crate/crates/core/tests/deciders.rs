use metaplectic_core::characters::Character;
use metaplectic_core::deciders::{
    counterexample_build, gsp4_reducibility, odd_unitary_rule, weyl_orbit, whittaker_orbit_count, PrincipalSeriesDatum,
    Status, TorusGroup,
};
use metaplectic_core::padic::{PadicContext, PsiSpec};
use metaplectic_core::rational::q;
use metaplectic_core::symplectic::LeviShape;
use metaplectic_core::Error;
use num_complex::Complex64;

fn ctx(p: u64) -> PadicContext {
    PadicContext::new(p).unwrap()
}

fn verdict(c1: Character, c2: Character) -> (Status, Option<String>) {
    let psi = PsiSpec::standard(c1.ctx());
    let v = gsp4_reducibility(&PrincipalSeriesDatum::gsp4(c1, c2, &psi).unwrap()).unwrap();
    (v.status, v.condition().map(String::from))
}

#[test]
fn orbit_sizes() {
    let c = ctx(5);
    let t = Character::trivial(&c);
    assert_eq!(weyl_orbit(&t, &t).len(), 1);
    assert_eq!(weyl_orbit(&Character::abs_pow(&c, 1.0), &t).len(), 4);
}

#[test]
fn the_three_conditions() {
    for p in [3, 5, 7] {
        let c = ctx(p);
        let xi = Character::unramified(&c, Complex64::from_polar(1.0, 0.3)).unwrap();
        let s = 0.25;
        let c1 = xi.mul(&Character::abs_pow(&c, s + 0.5)).unwrap();
        let c2 = xi.mul(&Character::abs_pow(&c, s - 0.5)).unwrap();
        assert_eq!(verdict(c1, c2), (Status::Reducible, Some("II".into())), "p={p}");

        let u = c.class_of_i64(c.nonresidue() as i64).unwrap();
        let c2 = Character::eta(u, &c).unwrap().mul(&Character::abs_pow(&c, 0.5)).unwrap();
        let c1 = Character::unramified(&c, Complex64::from_polar(1.0, 1.0)).unwrap();
        assert_eq!(verdict(c1, c2), (Status::Reducible, Some("III".into())), "p={p}");

        let chi = Character::parse("unr:1/4", &c).unwrap();
        assert_eq!(verdict(chi.clone(), chi), (Status::Reducible, Some("I".into())), "p={p}");

        let c1 = Character::unramified(&c, Complex64::from_polar(1.0, 1.0)).unwrap();
        let c2 = Character::unramified(&c, Complex64::from_polar(1.0, 2.0)).unwrap();
        assert_eq!(verdict(c1, c2), (Status::Irreducible, None), "p={p}");
    }
}

#[test]
fn p_two_is_rejected() {
    let c = ctx(2);
    let t = Character::trivial(&c);
    let d = PrincipalSeriesDatum::gsp4(t.clone(), t, &PsiSpec::standard(&c)).unwrap();
    assert!(matches!(gsp4_reducibility(&d), Err(Error::UnsupportedPrime(2))));
}

#[test]
fn counterexample_facts() {
    for p in [3, 5, 7, 11] {
        let c = ctx(p);
        let (d, log) = counterexample_build(&c, 2).unwrap();
        assert!(log.passed(), "p={p}: {:?}", log.facts);
        let chi = &d.chis[0];
        assert_eq!(chi.order(), Some(4));
        // chi(p) = i, and chi eta_b (p) = -i with b the non-residue
        let eta = Character::eta(c.class_of_i64(c.nonresidue() as i64).unwrap(), &c).unwrap();
        let v = chi.mul(&eta).unwrap().eval(&q(p as i64)).unwrap();
        assert!((v - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert_eq!(gsp4_reducibility(&d).unwrap().status, Status::Reducible);
    }
}

#[test]
fn odd_rank_rule() {
    let c = ctx(5);
    let psi = PsiSpec::standard(&c);
    let chis = [0.2, 1.1, 2.5].map(|t| Character::unramified(&c, Complex64::from_polar(1.0, t)).unwrap()).to_vec();
    let d = PrincipalSeriesDatum::new(chis, &psi, None).unwrap();
    assert_eq!(odd_unitary_rule(&d).unwrap().status, Status::Irreducible);
    let (d4, _) = counterexample_build(&c, 4).unwrap();
    let v = odd_unitary_rule(&d4).unwrap();
    assert_eq!(v.status, Status::Unknown);
    assert!(v.note.is_some());
}

#[test]
fn whittaker_counts() {
    let c = ctx(3);
    let o = whittaker_orbit_count(&"1;1".parse::<LeviShape>().unwrap(), TorusGroup::T, &c).unwrap();
    assert_eq!(o.count, 4);
    assert_eq!(o.reps.len(), 4);
    for t in LeviShape::all_up_to(3) {
        assert_eq!(whittaker_orbit_count(&t, TorusGroup::TPrime, &c).unwrap().count, 1, "t={t}");
    }
    let even = "2;0".parse::<LeviShape>().unwrap();
    assert_eq!(whittaker_orbit_count(&even, TorusGroup::T, &c).unwrap().count, 1);
    assert_eq!(whittaker_orbit_count(&even, TorusGroup::TPlus, &ctx(5)).unwrap().count, 1);
}
