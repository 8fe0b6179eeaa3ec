use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::Checker;
use crate::characters::{
    conj_char, dual_central_identity, genuine_center_char, omega_set, zt_act, Character, GenuineCentralCharacter, Zp,
};
use crate::cover::{
    coc_inv_closed_form, cocycle_gsp_with, cocycle_sp_with, conj_by, cover_inverse, cover_mul,
    cover_mul_with, d_sign, inverse_cocycle, kubota_cocycle, kubota_x, CocycleLaw, CoverElement,
};
use crate::deciders::{
    counterexample_build, expected_orbit_count, gsp4_reducibility, odd_unitary_rule, weyl_orbit,
    whittaker_orbit_count, PrincipalSeriesDatum, Status, TorusGroup,
};
use crate::padic::{
    gamma, hilbert_class, hilbert_oracle, hilbert_symbol, square_class, weil_factor, weil_factor_class,
    weil_gauss_oracle, FourthRoot, PadicContext, PsiSpec, SquareClass,
};
use crate::rational::{pow_q, q, Q};
use crate::structure::{
    center_image, center_mul, central_params, conj_sign, cover_commute, noncommuting_witness, random_levi_plus,
    x_on_center, x_on_center_matrix, z_t_reps, CentralElement,
};
use crate::symplectic::{
    bruhat_factor, bruhat_factor_with, cell_rank, levi_element, random_gl, random_gsp, random_omega0, random_sp,
    random_symmetric, random_unit_q, small_q, x_of, GSpElement, LeviShape, PivotRule,
};
use crate::symplectic::x_of_with as x_with;
use crate::torus::{
    close, commutator_sign, heisenberg_pairing, induce, random_torus, torus_cover, CMat, GenuineTorusChar,
};
use crate::{Error, Result, Sign};

type Suite = fn(&PadicContext, &mut ChaCha8Rng, usize, &mut Checker) -> Result<()>;

pub(super) fn lookup(name: &str) -> Option<Suite> {
    Some(match name {
        "hilbert" => hilbert,
        "weil" => weil,
        "xmap" => xmap,
        "cocycle" => cocycle,
        "structure" => structure,
        "characters" => characters,
        "torusreps" => torusreps,
        "deciders" => deciders,
        "whittaker" => whittaker,
        _ => return None,
    })
}

/// Random rational with `p`-valuation in `-2..=2` on top of a small fraction.
fn rq(rng: &mut ChaCha8Rng, p: u64) -> Q {
    let k = rng.gen_range(-2..=2i64);
    random_unit_q(rng, 40) * pow_q(&q(p as i64), k)
}

fn minus_one(ctx: &PadicContext) -> SquareClass {
    ctx.class_of_i64(-1).expect("nonzero")
}

fn hilbert(ctx: &PadicContext, rng: &mut ChaCha8Rng, samples: usize, c: &mut Checker) -> Result<()> {
    let p = ctx.p();
    for _ in 0..samples {
        let (a, b) = (rq(rng, p), rq(rng, p));
        c.eq_r("oracle", || format!("a={a} b={b}"), hilbert_oracle(&a, &b, ctx), hilbert_symbol(&a, &b, ctx));
    }
    let cls = ctx.classes();
    let m1 = minus_one(ctx);
    for &a in cls {
        for &b in cls {
            let ab = || format!("a={a} b={b}");
            c.eq("symmetry", ab, hilbert_class(a, b), hilbert_class(b, a));
            c.eq("(a,b)=(a,-ab)", ab, hilbert_class(a, b), hilbert_class(a, m1 * a * b));
            c.eq_r("oracle on classes", ab, hilbert_oracle(&a.rep(), &b.rep(), ctx), Ok(hilbert_class(a, b)));
            for &d in cls {
                c.eq(
                    "bilinearity",
                    || format!("a={a} b={b} c={d}"),
                    hilbert_class(a * b, d),
                    hilbert_class(a, d) * hilbert_class(b, d),
                );
            }
        }
        let nondeg = a.is_trivial() || cls.iter().any(|&b| hilbert_class(a, b).is_minus());
        c.eq("non-degeneracy", || format!("a={a}"), true, nondeg);
    }
    // square invariance on random representatives
    for _ in 0..samples / 4 {
        let (a, b, s) = (rq(rng, p), rq(rng, p), small_q(rng));
        c.eq_r("square invariance", || format!("a={a} b={b} s={s}"), hilbert_symbol(&a, &b, ctx), hilbert_symbol(&(&a * &s * &s), &b, ctx));
    }
    Ok(())
}

fn weil(ctx: &PadicContext, rng: &mut ChaCha8Rng, samples: usize, c: &mut Checker) -> Result<()> {
    let psi = PsiSpec::standard(ctx);
    let cls = ctx.classes();
    let m1 = minus_one(ctx);
    for &a in cls {
        for &b in cls {
            let ab = || format!("a={a} b={b}");
            let lhs = gamma(&psi, a * b);
            let rhs = gamma(&psi, a).and_then(|x| Ok(x * gamma(&psi, b)? * hilbert_class(a, b)));
            c.eq_r("gamma(ab) = gamma(a) gamma(b) (a,b)", ab, lhs, rhs);
            let twisted = gamma(&psi.shifted(b), a);
            let rhs = gamma(&psi, a).map(|g| g * hilbert_class(b, a));
            c.eq_r("gamma_{psi_b} = eta_b gamma_psi", ab, twisted, rhs);
        }
        c.eq_r("gamma(a)^2 = (a,-1)", || format!("a={a}"), gamma(&psi, a).map(|g| g.pow(2)), Ok(FourthRoot::from(hilbert_class(a, m1))));
    }
    c.eq_r("gamma on squares", || "a=1".into(), gamma(&psi, SquareClass::one(ctx)), Ok(FourthRoot::ONE));
    if ctx.p() == 2 {
        return Ok(());
    }
    for &s in cls {
        let ps = psi.shifted(s);
        for &a in cls {
            let exact = weil_factor_class(&ps, a);
            let oracle = weil_gauss_oracle(&ps, &a.rep());
            let ok = match (&exact, &oracle) {
                (Ok(e), Ok(o)) => (e.to_complex() - o).norm() < 1e-9,
                _ => false,
            };
            c.eq("table vs Gauss sum", || format!("shift={s} a={a} exact={exact:?} oracle={oracle:?}"), true, ok);
        }
    }
    for _ in 0..samples {
        let a = rq(rng, ctx.p());
        let s = small_q(rng);
        c.eq_r("square invariance", || format!("a={a} s={s}"), weil_factor(&psi, &a), weil_factor(&psi, &(&a * &s * &s)));
    }
    Ok(())
}

fn xmap(ctx: &PadicContext, rng: &mut ChaCha8Rng, samples: usize, c: &mut Checker) -> Result<()> {
    let m1 = minus_one(ctx);
    for n in [2usize, 3] {
        for _ in 0..samples / 2 {
            let g = random_sp(n, rng);
            let j = cell_rank(&g);
            let gs = || format!("n={n} g={g:?}");
            let x = x_of(&g, ctx);
            let f = bruhat_factor(&g);
            c.holds("bruhat product", gs, f.as_ref().map(|f| f.product() == g && f.j == j).map_err(Clone::clone));
            c.eq_r("pivot independence", gs, x.clone(), x_with(&g, ctx, PivotRule::Seeded(rng.gen())));

            let (p1, p2) = (random_omega0(n, rng), random_omega0(n, rng));
            let lhs = x_of(&p1.mul(&g).mul(&p2), ctx);
            let rhs = x.clone().and_then(|x| Ok(x * x_of(&p1, ctx)? * x_of(&p2, ctx)?));
            c.eq_r("x(p1 g p2) = x(p1) x(g) x(p2)", || format!("{} p1={p1:?} p2={p2:?}", gs()), lhs, rhs);

            let sj = if j % 2 == 1 { m1 } else { SquareClass::one(ctx) };
            c.eq_r("x(g^-1) = (-1)^j x(g)", gs, x_of(&g.inverse(), ctx), x.clone().map(|x| sj * x));

            let l = small_q(rng);
            let lj = ctx.class_of(&pow_q(&l, j as i64))?;
            c.eq_r("x(g^i(l)) = l^j x(g)", || format!("{} l={l}", gs()), x_of(&g.conj_i(&l), ctx), x.map(|x| lj * x));

            let p = random_omega0(n, rng);
            let via = bruhat_factor_with(&p, PivotRule::Seeded(rng.gen()))
                .and_then(|f| square_class(&(f.p1.a().det() * f.p2.a().det()), ctx));
            c.eq_r("x on the Siegel parabolic is det(a)", || format!("p={p:?}"), square_class(&p.a().det(), ctx), via);
        }
    }
    for _ in 0..samples / 2 {
        let g = random_sp(1, rng);
        c.eq_r("Kubota x for n = 1", || format!("g={g:?}"), x_of(&g, ctx), square_class(&kubota_x(&g), ctx));
    }
    Ok(())
}

fn cocycle_identity(
    g: &GSpElement,
    h: &GSpElement,
    k: &GSpElement,
    ctx: &PadicContext,
    law: CocycleLaw,
) -> Result<bool> {
    let cc = |a: &GSpElement, b: &GSpElement| cocycle_gsp_with(a, b, ctx, law).map(|r| r.0);
    Ok(cc(g, h)? * cc(&g.mul(h), k)? == cc(h, k)? * cc(g, &h.mul(k))?)
}

/// Triples on which every cocycle value in the 2-cocycle identity is given
/// by a closed rule.
fn rule_covered_triple(n: usize, kind: usize, rng: &mut ChaCha8Rng) -> (GSpElement, GSpElement, GSpElement) {
    let g = random_sp(n, rng);
    let p = random_omega0(n, rng);
    let p2 = random_omega0(n, rng);
    match kind % 6 {
        0 => (p, g, p2),
        1 => {
            let gp = g.mul(&p).inverse();
            (g, p, gp)
        }
        2 => (g, p, p2),
        3 => (p, p2, g),
        4 => {
            let gi = g.inverse();
            (g.clone(), gi, g)
        }
        _ => {
            // similitudes on the parabolic factors
            let l1 = small_q(rng);
            let l2 = small_q(rng);
            let pl = GSpElement::i_lambda(n, &l1).mul(&p);
            let pl2 = GSpElement::i_lambda(n, &l2).mul(&p2);
            (pl, random_gsp(n, rng), pl2)
        }
    }
}

fn cocycle(ctx: &PadicContext, rng: &mut ChaCha8Rng, samples: usize, c: &mut Checker) -> Result<()> {
    let kub = CocycleLaw::Kubota;
    for _ in 0..samples {
        let (g, h, k) = (random_sp(1, rng), random_sp(1, rng), random_sp(1, rng));
        c.holds("2-cocycle, n = 1", || format!("g={g:?} h={h:?} k={k:?}"), cocycle_identity(&g, &h, &k, ctx, kub));
    }
    for _ in 0..samples / 2 {
        let (g, h) = (random_sp(1, rng), random_sp(1, rng));
        let rules = cocycle_sp_with(&g, &h, ctx, CocycleLaw::Rules).map(|r| r.0);
        c.eq_r("rules agree with Kubota, n = 1", || format!("g={g:?} h={h:?}"), kubota_cocycle(&g, &h, ctx), rules);
    }
    for i in 0..1000 {
        let n = if i % 5 == 4 { 3 } else { 2 };
        let (g, h, k) = rule_covered_triple(n, i, rng);
        c.holds(
            "2-cocycle on rule-covered triples",
            || format!("g={g:?} h={h:?} k={k:?}"),
            cocycle_identity(&g, &h, &k, ctx, CocycleLaw::Rules),
        );
    }
    for i in 0..500 {
        let n = 1 + i % 3;
        let g = random_sp(n, rng);
        c.eq_r("inverse cocycle at similitude 1", || format!("g={g:?}"), coc_inv_closed_form(&g, ctx), inverse_cocycle(&g, ctx));
        let gl = random_gsp(1, rng);
        let brute = cocycle_gsp_with(&gl, &gl.inverse(), ctx, kub).map(|r| r.0);
        c.eq_r("inverse cocycle vs Kubota, GSp(2)", || format!("g={gl:?}"), brute, inverse_cocycle(&gl, ctx));
    }
    for i in 0..500 {
        let n = 1 + i % 2;
        let y = small_q(rng);
        let s = random_gsp(n, rng);
        let law = CocycleLaw::for_rank(n);
        let v = cocycle_gsp_with(&GSpElement::i_lambda(n, &y), &s, ctx, law).map(|r| r.0);
        c.eq_r("c~(i(y), s) = 1", || format!("y={y} s={s:?}"), Ok(Sign::Plus), v);
    }
    for i in 0..1000 {
        // rank 1 with the full Kubota law, rank 2 through the rules
        let n = if i % 4 == 3 { 2 } else { 1 };
        let law = CocycleLaw::for_rank(n);
        let g = GSpElement::i_lambda(n, &small_q(rng)).mul(&random_omega0(n, rng));
        let h = random_gsp(n, rng);
        let brute = (|| -> Result<CoverElement> {
            let gi = CoverElement::new(g.inverse(), cocycle_gsp_with(&g, &g.inverse(), ctx, law)?.0);
            let gh = cover_mul_with(&CoverElement::lift(g.clone()), &CoverElement::lift(h.clone()), ctx, law)?.value;
            Ok(cover_mul_with(&gh, &gi, ctx, law)?.value)
        })();
        let want = d_sign(&g, &h, ctx).map(|d| CoverElement::new(g.conjugate(&h), d));
        c.eq_r("conjugation sign d(g, h)", || format!("g={g:?} h={h:?}"), brute, want);
    }
    Ok(())
}

fn structure(ctx: &PadicContext, rng: &mut ChaCha8Rng, samples: usize, c: &mut Checker) -> Result<()> {
    let all = ctx.classes().to_vec();
    for t in LeviShape::all_up_to(4) {
        let im = center_image(&t, ctx);
        let want = if t.is_odd() { all.clone() } else { vec![SquareClass::one(ctx)] };
        c.eq_r("center image", || format!("t={t}"), Ok(want), im);
        let reps = z_t_reps(&t, ctx);
        let xs: Result<Vec<SquareClass>> = reps.iter().map(|z| x_on_center(z, ctx)).collect();
        let want = if t.is_odd() { all.clone() } else { vec![SquareClass::one(ctx)] };
        c.eq_r("Z_t representatives biject onto classes", || format!("t={t}"), Ok(want), xs);
    }
    for t in &LeviShape::all_up_to(4) {
        // all parameter pairs for small shapes; otherwise pairs of elements with
        // one non-trivial parameter, which generate since the law is bilinear
        let params = if t.parts.len() <= 1 && t.n() <= 3 { central_params(t, ctx) } else { central_generators(t, ctx) };
        for z in &params {
            c.eq_r("x on center vs Bruhat x", || format!("z={z:?}"), x_on_center(z, ctx), x_on_center_matrix(z, ctx));
        }
        for z1 in &params {
            for z2 in &params {
                let want = center_mul(z1, z2, ctx).map(|z| z.to_cover());
                let got = cover_mul(&z1.to_cover(), &z2.to_cover(), ctx).map(|r| r.value);
                c.eq_r("center multiplication vs cover law", || format!("z1={z1:?} z2={z2:?}"), want, got);
            }
        }
        let reps = z_t_reps(t, ctx);
        for z in &reps {
            let x = x_on_center(z, ctx)?;
            let w = noncommuting_witness(z, ctx).map(|w| w.is_some());
            c.eq_r("non-commutation witness iff x non-square", || format!("z={z:?}"), Ok(!x.is_trivial()), w);
            for z2 in &reps {
                let prod = center_mul(z, z2, ctx).and_then(|m| x_on_center(&m, ctx));
                c.eq_r("Z_t multiplication is the class group", || format!("z={z:?} z2={z2:?}"), Ok(x * x_on_center(z2, ctx)?), prod);
            }
        }
    }
    let shapes = LeviShape::all_up_to(3);
    for _ in 0..samples / 10 {
        let t = shapes.choose(rng).expect("shapes").clone();
        let reps = z_t_reps(&t, ctx);
        let z = reps.choose(rng).expect("reps");
        let h = random_levi_plus(&t, rng);
        let zs = || format!("z={z:?} h={h:?}");
        c.holds("center commutes with M+ in the cover", zs, cover_commute(&z.matrix(), &h, ctx));
        c.eq_r("conjugation by the center is trivial", zs, Ok(Sign::Plus), conj_sign(&z.matrix(), &h, ctx));
        // the unipotent radical splits: conjugates of (u, 1) stay (u', 1)
        let n = t.n();
        let u = GSpElement::upper_unipotent(&random_symmetric(n, rng));
        let g = z.matrix().mul(&GSpElement::i_lambda(n, &small_q(rng)));
        let brute = (|| -> Result<Sign> {
            let gc = CoverElement::lift(g.clone());
            let gu = cover_mul(&gc, &CoverElement::lift(u.clone()), ctx)?.value;
            Ok(cover_mul(&gu, &cover_inverse(&gc, ctx)?, ctx)?.value.eps)
        })();
        c.eq_r("unipotent radical splits under conjugation", || format!("g={g:?} u={u:?}"), Ok(Sign::Plus), brute);
    }
    Ok(())
}

/// Central elements with at most one parameter off 1.
fn central_generators(t: &LeviShape, ctx: &PadicContext) -> Vec<CentralElement> {
    let one = SquareClass::one(ctx).rep();
    let slots = t.parts.len() + 1;
    let mut out = vec![CentralElement::identity(t)];
    for k in 0..slots {
        for c in ctx.classes().iter().filter(|c| !c.is_trivial()) {
            let mut vals = vec![one.clone(); slots];
            vals[k] = c.rep();
            let b = vals.pop().expect("tail slot");
            out.push(CentralElement::new(t, vals, b, Sign::Plus).expect("class reps are nonzero"));
        }
    }
    out
}

fn random_character(ctx: &PadicContext, rng: &mut ChaCha8Rng) -> Character {
    let m = if ctx.p() == 2 { 4 } else { ctx.p() - 1 };
    let e = rng.gen_range(0..m);
    let zp = match rng.gen_range(0..3) {
        0 => Zp::turns(num_rational::Ratio::new(rng.gen_range(0..12), 12)),
        1 => Zp::Complex(Complex64::from_polar(1.0, rng.gen_range(0.0..6.3))),
        _ => Zp::Complex(Complex64::new(rng.gen_range(0.2..3.0), rng.gen_range(-1.0..1.0))),
    };
    Character::new(ctx, e, zp).expect("nonzero value at p")
}

/// A Levi element of `M_t` (any similitude) whose symplectic block lies in
/// the Siegel parabolic, so the cover conjugation has a closed form.
fn levi_in_siegel(t: &LeviShape, rng: &mut ChaCha8Rng) -> GSpElement {
    let l = small_q(rng);
    let gl: Vec<_> = t.parts.iter().map(|&k| random_gl(k, rng)).collect();
    let h = (t.tail > 0).then(|| GSpElement::i_lambda(t.tail, &l).mul(&random_omega0(t.tail, rng)));
    levi_element(t, &gl, h.as_ref(), &l).expect("blocks match the shape")
}

fn characters(ctx: &PadicContext, rng: &mut ChaCha8Rng, samples: usize, c: &mut Checker) -> Result<()> {
    let psi = PsiSpec::standard(ctx);
    let k = ctx.class_count();
    for t in LeviShape::all_up_to(4) {
        let eta = random_character(ctx, rng);
        let base = GenuineCentralCharacter::uniform(&t, &eta, &psi)?;
        let om = omega_set(&base);
        let want = if t.is_odd() { k } else { 1 };
        c.eq("extension count", || format!("t={t}"), want, om.len());
        let minus = CentralElement { eps: Sign::Minus, ..CentralElement::identity(&t) };
        for w in &om {
            let v = w.eval(&minus).map(|v| (v + 1.0).norm() < 1e-12);
            c.holds("genuine", || format!("t={t} twist={}", w.twist), v);
        }
        if t.parts.len() > 2 {
            continue;
        }
        let params = central_params(&t, ctx);
        let prime: Vec<CentralElement> =
            params.iter().filter(|z| x_on_center(z, ctx).map(|x| x.is_trivial()).unwrap_or(false)).cloned().collect();
        let reps = z_t_reps(&t, ctx);
        for (i, w) in om.iter().enumerate() {
            c.holds("extensions agree on the genuine center", || format!("t={t} twist={}", w.twist), w.agrees_on(&om[0], &prime));
            for v in &om[i + 1..] {
                let d = w.agrees_on(v, &reps).map(|a| !a);
                c.holds("extensions pairwise distinct", || format!("t={t} {} {}", w.twist, v.twist), d);
            }
            if t.is_odd() {
                for v in &om {
                    let hits = reps.iter().filter(|z| zt_act(w, z).map(|x| x == *v).unwrap_or(false)).count();
                    c.eq("Z_t acts simply transitively", || format!("t={t} {} -> {}", w.twist, v.twist), 1, hits);
                }
            }
        }
        // a genuine character of the genuine center is e times a character of the projection
        if t.parts.len() <= 1 {
            for z1 in prime.iter().take(8) {
                for z2 in prime.iter().take(8) {
                    let ok = (|| -> Result<bool> {
                        let m = center_mul(z1, z2, ctx)?;
                        let strip = |z: &CentralElement| -> Result<Complex64> { Ok(om[0].eval(z)? * z.eps.to_f64()) };
                        Ok(m.eps == z1.eps * z2.eps && (strip(&m)? - strip(z1)? * strip(z2)?).norm() < 1e-12)
                    })();
                    c.holds("genuine center splits", || format!("z1={z1:?} z2={z2:?}"), ok);
                }
            }
        }
    }
    // conjugation action against the cover law
    let t: LeviShape = "1;1".parse().expect("shape");
    let w = GenuineCentralCharacter::uniform(&t, &random_character(ctx, rng), &psi)?;
    let params = central_params(&t, ctx);
    for _ in 0..samples / 10 {
        let g = levi_in_siegel(&t, rng);
        let z = params.choose(rng).expect("params");
        let ok = (|| -> Result<bool> {
            let wg = conj_char(&w, &g)?;
            let cz = conj_by(&g, &z.to_cover(), ctx)?;
            if cz.g != z.matrix() {
                return Ok(false);
            }
            let zc = CentralElement { eps: cz.eps, ..z.clone() };
            let fixed = ctx.class_of(g.lambda())?.is_trivial();
            Ok((w.eval(&zc)? - wg.eval(z)?).norm() < 1e-12 && (wg == w) == fixed)
        })();
        c.holds("conjugate character vs cover conjugation", || format!("g={g:?} z={z:?}"), ok);
    }
    // the central identity behind the contragredient
    for n in 1..=3 {
        for _ in 0..4 {
            let eta = random_character(ctx, rng);
            let extra: Vec<Q> = (0..4).map(|_| rq(rng, ctx.p())).collect();
            c.holds("dual central identity", || format!("n={n} eta={eta} extra={extra:?}"), dual_central_identity(&eta, &psi, n, &extra));
        }
        let eta = random_character(ctx, rng);
        let tau = genuine_center_char(&eta, &psi, n)?;
        let a = rq(rng, ctx.p());
        let z = crate::structure::scalar_central(n, &a);
        let want = if n % 2 == 0 {
            eta.eval(&a)
        } else {
            eta.eval(&a).and_then(|v| Ok(v * gamma(&psi, ctx.class_of(&a)?)?.to_complex()))
        };
        let ok = tau.eval(&z).and_then(|v| Ok((v - want?).norm() < 1e-12));
        c.holds("central character of the cover of GSp+", || format!("n={n} a={a}"), ok);
    }
    for _ in 0..samples {
        let a = ctx.classes()[rng.gen_range(0..k)];
        let (x, s) = (rq(rng, ctx.p()), small_q(rng));
        let ok = Character::eta(a, ctx).and_then(|e| {
            let v = e.eval(&x)?;
            let h = hilbert_symbol(&(a.rep() * &s * &s), &x, ctx)?;
            Ok((v.re - h.to_f64()).abs() < 1e-12 && v.im.abs() < 1e-12)
        });
        c.holds("eta_a = eta_{ab^2} = (a, .)", || format!("a={a} s={s} x={x}"), ok);
        let chi = random_character(ctx, rng);
        let y = rq(rng, ctx.p());
        let ok = (|| -> Result<bool> { Ok((chi.eval(&(&x * &y))? - chi.eval(&x)? * chi.eval(&y)?).norm() < 1e-9) })();
        c.holds("characters are multiplicative", || format!("chi={chi} x={x} y={y}"), ok);
    }
    Ok(())
}

fn torusreps(ctx: &PadicContext, rng: &mut ChaCha8Rng, samples: usize, c: &mut Checker) -> Result<()> {
    let psi = PsiSpec::standard(ctx);
    let n = 2;
    let d = ctx.class_count();
    let chis: Vec<GenuineTorusChar> =
        (0..4).map(|i| GenuineTorusChar::random(n, &psi, i % 2 == 0, rng)).collect::<Result<_>>()?;
    let reps = chis.iter().map(induce).collect::<Result<Vec<_>>>()?;
    let id = CMat::identity(d, d);
    for rho in &reps {
        c.eq("dimension", String::new, d, rho.dim());
        let m = rho.eval(&CoverElement::minus_one(n));
        c.holds("genuine", || format!("chi={:?}", rho.chi), m.map(|m| close(&m, &(-id.clone()))));
        let e = rho.eval(&CoverElement::identity(n));
        c.holds("identity", String::new, e.map(|m| close(&m, &id)));
    }
    for i in 0..samples {
        let rho = &reps[i % reps.len()];
        let (s, t) = (random_torus(n, ctx, rng), random_torus(n, ctx, rng));
        let ok = (|| -> Result<bool> {
            let st = cover_mul(&s, &t, ctx)?.value;
            Ok(close(&rho.eval(&st)?, &(rho.eval(&s)? * rho.eval(&t)?)))
        })();
        c.holds("homomorphism", || format!("s={s:?} t={t:?}"), ok);
    }
    for rho in &reps {
        let dec = rho.restrict_decompose()?;
        c.eq("extension count", String::new, d, dec.len());
        for (w, k) in &dec {
            c.eq("multiplicity one", || format!("twist={}", w.twist), 1, *k);
        }
        let ps: Vec<CMat> = dec.iter().map(|(w, _)| rho.eigen_project(w)).collect::<Result<_>>()?;
        let mut sum = CMat::zeros(d, d);
        for (i, a) in ps.iter().enumerate() {
            sum += a;
            c.eq("idempotent", || format!("i={i}"), true, close(&(a * a), a));
            for (j, b) in ps.iter().enumerate() {
                if i != j {
                    c.eq("orthogonal", || format!("i={i} j={j}"), true, close(&(a * b), &CMat::zeros(d, d)));
                }
            }
        }
        c.eq("projectors sum to identity", String::new, true, close(&sum, &id));
        // T+ acts on the image of phi_w through w
        for _ in 0..5 {
            let tt: Vec<Q> = (0..n).map(|_| small_q(rng)).collect();
            let mu = small_q(rng);
            let eps = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            let z = CentralElement::new(&LeviShape::new(vec![1; n], 0)?, tt.clone(), mu.clone(), eps)?;
            let h = torus_cover(&tt, &(&mu * &mu), eps);
            for ((w, _), phi) in dec.iter().zip(&ps) {
                let ok = (|| -> Result<bool> {
                    let rh = rho.eval(&h)?;
                    let wz = w.eval(&z)?;
                    Ok(close(&(&rh * phi), &(phi * &rh)) && close(&(&rh * phi), &(phi * wz)))
                })();
                c.holds("eigenspace character", || format!("h={h:?} twist={}", w.twist), ok);
            }
        }
        // conjugating by i(a) moves eigencharacters as the twist formula says
        for &a in ctx.classes() {
            let g = GSpElement::i_lambda(n, &a.rep());
            for ((w, _), phi) in dec.iter().zip(&ps) {
                let ok = (|| -> Result<bool> {
                    let wg = conj_char(w, &g)?;
                    for z in z_t_reps(&LeviShape::new(vec![1; n], 0)?, ctx) {
                        let r = rho.eval(&conj_by(&g, &z.to_cover(), ctx)?)?;
                        if !close(&(&r * phi), &(phi * wg.eval(&z)?)) {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                })();
                c.holds("conjugation covariance", || format!("a={a} twist={}", w.twist), ok);
            }
        }
    }
    for i in 0..20 {
        let chi = GenuineTorusChar::random(n, &psi, i % 2 == 0, rng)?;
        let rho = induce(&chi)?;
        let probes: Vec<CoverElement> = (0..3).map(|_| random_torus(n, ctx, rng)).collect();
        for (w, _) in rho.restrict_decompose()? {
            c.holds("induction roundtrip", || format!("chi={chi:?} twist={}", w.twist), rho.induction_roundtrip(&w, &probes));
        }
    }
    for i in 0..samples / 4 {
        let rho = &reps[i % reps.len()];
        let (s, t) = (random_torus(n, ctx, rng), random_torus(n, ctx, rng));
        let ok = (|| -> Result<bool> {
            let sign = commutator_sign(&s, &t, ctx)?;
            let (rs, rt) = (rho.eval(&s)?, rho.eval(&t)?);
            let inv = |m: &CMat| m.clone().try_inverse().ok_or(Error::Singular);
            let comm = &rs * &rt * inv(&rs)? * inv(&rt)?;
            Ok(sign == heisenberg_pairing(&s.g, &t.g, ctx)? && close(&comm, &(&id * Complex64::new(sign.to_f64(), 0.0))))
        })();
        c.holds("commutator pairing", || format!("s={s:?} t={t:?}"), ok);
    }
    Ok(())
}

fn unitary_pair(ctx: &PadicContext, rng: &mut ChaCha8Rng) -> Result<(Character, Character)> {
    let mut one = || -> Result<Character> {
        let m = ctx.p() - 1;
        Character::new(ctx, rng.gen_range(0..m), Zp::Complex(Complex64::from_polar(1.0, rng.gen_range(0.1..6.2))))
    };
    Ok((one()?, one()?))
}

fn deciders(ctx: &PadicContext, rng: &mut ChaCha8Rng, samples: usize, c: &mut Checker) -> Result<()> {
    let psi = PsiSpec::standard(ctx);
    if ctx.p() == 2 {
        let t = Character::trivial(ctx);
        let d = PrincipalSeriesDatum::gsp4(t.clone(), t, &psi)?;
        c.eq("p = 2 is out of scope", String::new, Err(Error::UnsupportedPrime(2)), gsp4_reducibility(&d).map(|v| v.status));
        return Ok(());
    }
    let mut data: Vec<(PrincipalSeriesDatum, Status, Option<&str>)> = Vec::new();
    for _ in 0..20 {
        let s = rng.gen_range(-20..=20) as f64 / 8.0;
        let xi = unitary_pair(ctx, rng)?.0;
        let c1 = xi.mul(&Character::abs_pow(ctx, s + 0.5))?;
        let c2 = xi.mul(&Character::abs_pow(ctx, s - 0.5))?;
        data.push((PrincipalSeriesDatum::gsp4(c1, c2, &psi)?, Status::Reducible, Some("II")));
    }
    for &b in ctx.classes() {
        for _ in 0..4 {
            let c1 = unitary_pair(ctx, rng)?.0;
            let c2 = Character::eta(b, ctx)?.mul(&Character::abs_pow(ctx, 0.5))?;
            data.push((PrincipalSeriesDatum::gsp4(c1, c2, &psi)?, Status::Reducible, Some("III")));
        }
    }
    let (cx, log) = counterexample_build(ctx, 2)?;
    for (fact, ok) in &log.facts {
        c.eq("counterexample proof log", || fact.clone(), true, *ok);
    }
    data.push((cx, Status::Reducible, Some("I")));
    for _ in 0..100 {
        let (c1, c2) = unitary_pair(ctx, rng)?;
        data.push((PrincipalSeriesDatum::gsp4(c1, c2, &psi)?, Status::Irreducible, None));
    }
    for (d, status, tag) in &data {
        let ds = || format!("chi1={} chi2={}", d.chis[0], d.chis[1]);
        let v = gsp4_reducibility(d);
        c.eq_r("GSp(4) verdict", ds, Ok((*status, tag.map(String::from))), v.map(|v| (v.status, v.condition().map(String::from))));
        let orbit = weyl_orbit(&d.chis[0], &d.chis[1]);
        c.eq("orbit size divides 8", ds, 0, 8 % orbit.len());
        let closed = orbit.iter().all(|(a, b)| orbit.contains(&(b.clone(), a.clone())) && orbit.contains(&(a.clone(), b.inv())));
        c.eq("orbit closed under generators", ds, true, closed);
        for (a, b) in &orbit {
            let sub = PrincipalSeriesDatum::gsp4(a.clone(), b.clone(), &psi)?;
            let v = gsp4_reducibility(&sub).map(|v| (v.status, v.condition().map(String::from)));
            c.eq_r("invariant under Weyl substitution", || format!("{} -> ({a}, {b})", ds()), Ok((*status, tag.map(String::from))), v);
        }
        for &a in ctx.classes() {
            let tw = (|| -> Result<_> {
                let sub = PrincipalSeriesDatum::gsp4(d.chis[0].twist(a)?, d.chis[1].twist(a)?, &psi)?;
                let v = gsp4_reducibility(&sub)?;
                Ok((v.status, v.condition().map(String::from)))
            })();
            c.eq_r("invariant under a common quadratic twist", || format!("{} a={a}", ds()), Ok((*status, tag.map(String::from))), tw);
        }
    }
    for _ in 0..samples / 50 {
        let chis: Vec<Character> = (0..3).map(|_| unitary_pair(ctx, rng).map(|p| p.0)).collect::<Result<_>>()?;
        let d = PrincipalSeriesDatum::new(chis, &psi, None)?;
        c.eq_r("odd rank unitary rule", String::new, Ok(Status::Irreducible), odd_unitary_rule(&d).map(|v| v.status));
    }
    let (d4, log4) = counterexample_build(ctx, 4)?;
    c.eq("rank 4 construction facts", String::new, true, log4.passed());
    c.eq_r("rank 4 is outside the rule", String::new, Ok(Status::Unknown), odd_unitary_rule(&d4).map(|v| v.status));
    Ok(())
}

fn whittaker(ctx: &PadicContext, _rng: &mut ChaCha8Rng, _samples: usize, c: &mut Checker) -> Result<()> {
    for t in LeviShape::all_up_to(4) {
        for g in [TorusGroup::T, TorusGroup::TPlus, TorusGroup::TPrime] {
            let o = whittaker_orbit_count(&t, g, ctx)?;
            c.eq("orbit count", || format!("t={t} group={g}"), expected_orbit_count(&t, g, ctx), o.count);
            let m = o.reps.first().map_or(0, |r| r.coeffs.len());
            let total = ctx.class_count().pow(m as u32);
            c.eq("orbits have equal size", || format!("t={t} group={g}"), total, o.count * o.orbit_size);
            if g == TorusGroup::T && t.tail > 0 {
                // psi^{i(a)}: every simple root coefficient 1 except the long root, a^{-1}
                let mut want: Vec<Vec<SquareClass>> = ctx
                    .classes()
                    .iter()
                    .map(|a| {
                        let mut v = vec![SquareClass::one(ctx); m];
                        v[m - 1] = a.inverse();
                        v
                    })
                    .collect();
                want.sort();
                let mut got: Vec<Vec<SquareClass>> = o.reps.iter().map(|r| r.coeffs.clone()).collect();
                got.sort();
                c.eq("representatives are the i(a)-twists", || format!("t={t}"), want, got);
            }
        }
    }
    Ok(())
}
