//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the criteria execute one after the
//! other and the wall-clock limits measure a single criterion at a time.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use metaplectic_core::characters::{omega_set, Character, GenuineCentralCharacter};
use metaplectic_core::deciders::{
    counterexample_build, gsp4_reducibility, whittaker_orbit_count, PrincipalSeriesDatum, Status, TorusGroup,
};
use metaplectic_core::padic::{hilbert_oracle, hilbert_symbol, PadicContext, PsiSpec};
use metaplectic_core::rational::Q;
use metaplectic_core::symplectic::LeviShape;
use metaplectic_core::verify::{run_suite, DEFAULT_SEED};

type Outcome = Result<(), Vec<String>>;

/// Name, check, wall-clock limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

struct Problems(Vec<String>);

impl Problems {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }

    fn done(self) -> Outcome {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(self.0)
        }
    }
}

fn ctx(p: u64) -> PadicContext {
    PadicContext::new(p).expect("prime")
}

/// Runs `suite` at each prime and requires zero failures plus at least
/// `min` runs of every listed check.
fn suite(out: &mut Problems, name: &str, primes: &[u64], samples: usize, required: &[(&str, u64)]) {
    for &p in primes {
        let r = match run_suite(name, p, DEFAULT_SEED, samples) {
            Ok(r) => r,
            Err(e) => {
                out.0.push(format!("{name} p={p}: {e}"));
                continue;
            }
        };
        out.check(r.failure_count == 0, || {
            let first = r.failures.first().map(|f| format!(" first: {} {}", f.check, f.inputs)).unwrap_or_default();
            format!("{name} p={p}: {} failures{first}", r.failure_count)
        });
        for &(check, min) in required {
            let runs = r.per_check.get(check).map_or(0, |t| t.runs);
            out.check(runs >= min, || format!("{name} p={p}: `{check}` ran {runs} times, need {min}"));
        }
    }
}

fn hilbert() -> Outcome {
    let mut out = Problems(Vec::new());
    suite(
        &mut out,
        "hilbert",
        &[2, 3, 5, 7],
        1000,
        &[
            ("oracle", 1000),
            ("oracle on classes", 16),
            ("symmetry", 16),
            ("bilinearity", 64),
            ("non-degeneracy", 4),
            ("(a,b)=(a,-ab)", 16),
        ],
    );
    // a few values worked by hand
    let q = |n: i64| Q::from_integer(n.into());
    for (a, b, p, want) in [(2, 3, 3, -1), (-1, -1, 2, -1), (2, 5, 5, -1), (3, 5, 7, 1), (-1, 3, 3, -1), (5, 5, 2, 1)] {
        let c = ctx(p);
        let got = hilbert_symbol(&q(a), &q(b), &c).map(|s| s.to_f64() as i64);
        let oracle = hilbert_oracle(&q(a), &q(b), &c).map(|s| s.to_f64() as i64);
        out.check(got == Ok(want) && oracle == Ok(want), || {
            format!("({a},{b})_{p}: closed form {got:?}, oracle {oracle:?}, want {want}")
        });
    }
    out.done()
}

fn weil() -> Outcome {
    let mut out = Problems(Vec::new());
    suite(
        &mut out,
        "weil",
        &[3, 5, 7],
        1000,
        &[
            ("gamma(ab) = gamma(a) gamma(b) (a,b)", 16),
            ("gamma(a)^2 = (a,-1)", 4),
            ("gamma on squares", 1),
            ("gamma_{psi_b} = eta_b gamma_psi", 16),
            ("table vs Gauss sum", 16),
        ],
    );
    out.done()
}

fn xmap() -> Outcome {
    let mut out = Problems(Vec::new());
    suite(
        &mut out,
        "xmap",
        &[3, 5, 7],
        1000,
        &[
            ("x(p1 g p2) = x(p1) x(g) x(p2)", 1000),
            ("x(g^-1) = (-1)^j x(g)", 1000),
            ("x(g^i(l)) = l^j x(g)", 1000),
            ("x on the Siegel parabolic is det(a)", 1000),
            ("Kubota x for n = 1", 500),
        ],
    );
    out.done()
}

fn cocycle() -> Outcome {
    let mut out = Problems(Vec::new());
    suite(
        &mut out,
        "cocycle",
        &[3],
        10_000,
        &[
            ("2-cocycle, n = 1", 10_000),
            ("2-cocycle on rule-covered triples", 1000),
            ("inverse cocycle at similitude 1", 500),
            ("c~(i(y), s) = 1", 500),
            ("conjugation sign d(g, h)", 1000),
        ],
    );
    out.done()
}

fn structure() -> Outcome {
    let mut out = Problems(Vec::new());
    suite(
        &mut out,
        "structure",
        &[2, 3, 5, 7],
        1000,
        &[
            ("center image", 30),
            ("non-commutation witness iff x non-square", 30),
            ("center multiplication vs cover law", 1),
            ("Z_t representatives biject onto classes", 30),
        ],
    );
    out.done()
}

fn characters() -> Outcome {
    let mut out = Problems(Vec::new());
    suite(
        &mut out,
        "characters",
        &[2, 3, 5, 7],
        1000,
        &[("extension count", 30), ("Z_t acts simply transitively", 1), ("dual central identity", 3)],
    );
    for p in [2, 3, 5, 7] {
        let c = ctx(p);
        let psi = PsiSpec::standard(&c);
        for t in LeviShape::all_up_to(3) {
            let want = if t.is_odd() { c.class_count() } else { 1 };
            let got = GenuineCentralCharacter::uniform(&t, &Character::trivial(&c), &psi).map(|b| omega_set(&b).len());
            out.check(got.as_ref() == Ok(&want), || format!("|Omega| for {t} at p={p}: {got:?}, want {want}"));
        }
    }
    out.done()
}

fn torusreps() -> Outcome {
    let mut out = Problems(Vec::new());
    for p in [3, 5] {
        out.check(ctx(p).class_count() == 4, || format!("p={p}: expected 4 square classes"));
    }
    suite(
        &mut out,
        "torusreps",
        &[3, 5],
        1000,
        &[
            ("dimension", 4),
            ("homomorphism", 1000),
            ("multiplicity one", 16),
            ("idempotent", 16),
            ("orthogonal", 48),
            ("induction roundtrip", 20),
        ],
    );
    out.done()
}

fn deciders() -> Outcome {
    let mut out = Problems(Vec::new());
    suite(
        &mut out,
        "deciders",
        &[3, 5, 7],
        1000,
        &[("GSp(4) verdict", 137), ("invariant under Weyl substitution", 137), ("counterexample proof log", 1)],
    );
    for p in [3, 5, 7] {
        let c = ctx(p);
        match counterexample_build(&c, 2) {
            Ok((d, log)) => {
                out.check(log.passed(), || format!("p={p}: proof log {:?}", log.facts));
                let v = gsp4_reducibility(&d).map(|v| (v.status, v.condition().map(String::from)));
                out.check(v == Ok((Status::Reducible, Some("I".into()))), || format!("p={p}: verdict {v:?}"));
            }
            Err(e) => out.0.push(format!("p={p}: {e}")),
        }
        // |.|^{1/2} x |.|^{-1/2} and eta_b |.|^{1/2} against trivial
        let psi = PsiSpec::standard(&c);
        let cases = [
            (Character::abs_pow(&c, 0.5), Character::abs_pow(&c, -0.5), "II"),
            (Character::trivial(&c), Character::eta(c.classes()[1], &c).unwrap().mul(&Character::abs_pow(&c, 0.5)).unwrap(), "III"),
        ];
        for (c1, c2, tag) in cases {
            let v = PrincipalSeriesDatum::gsp4(c1.clone(), c2.clone(), &psi)
                .and_then(|d| gsp4_reducibility(&d))
                .map(|v| (v.status, v.condition().map(String::from)));
            out.check(v == Ok((Status::Reducible, Some(tag.into()))), || format!("p={p} ({c1}, {c2}): {v:?}, want {tag}"));
        }
    }
    out.done()
}

fn whittaker() -> Outcome {
    let mut out = Problems(Vec::new());
    suite(&mut out, "whittaker", &[3, 5], 1000, &[("orbit count", 90)]);
    for p in [3, 5] {
        let c = ctx(p);
        for t in LeviShape::all_up_to(4) {
            for g in [TorusGroup::T, TorusGroup::TPlus, TorusGroup::TPrime] {
                let want = if g != TorusGroup::TPrime && t.tail > 0 { 4 } else { 1 };
                let got = whittaker_orbit_count(&t, g, &c).map(|o| o.count);
                out.check(got.as_ref() == Ok(&want), || format!("p={p} t={t} group={g}: {got:?}, want {want}"));
            }
        }
    }
    out.done()
}

fn end_to_end() -> Outcome {
    let mut out = Problems(Vec::new());
    let dir = std::env::temp_dir().join(format!("metaplectic-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| vec![e.to_string()])?;
    let mut reports = Vec::new();
    for k in 0..2 {
        let path = dir.join(format!("run{k}.json"));
        let start = Instant::now();
        let status = Command::new(env!("CARGO_BIN_EXE_metaplectic"))
            .args(["verify", "--p", "3", "--p", "5", "--p", "7", "--json"])
            .arg(&path)
            .output();
        let took = start.elapsed();
        match status {
            Ok(o) => out.check(o.status.success(), || {
                format!("run {k}: exit {:?}\n{}", o.status.code(), String::from_utf8_lossy(&o.stdout))
            }),
            Err(e) => out.0.push(format!("run {k}: {e}")),
        }
        out.check(took < Duration::from_secs(300), || format!("run {k} took {took:.1?}"));
        reports.push(std::fs::read(&path).unwrap_or_default());
    }
    out.check(!reports[0].is_empty() && reports[0] == reports[1], || "reports differ between runs".into());
    let _ = std::fs::remove_dir_all(&dir);
    out.done()
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("hilbert symbol vs solvability oracle", hilbert, 10),
        ("weil factor relations and Gauss sums", weil, 30),
        ("x-map identities", xmap, 60),
        ("cocycle identities", cocycle, 60),
        ("structure of the covered center", structure, 30),
        ("genuine central characters", characters, 10),
        ("covered torus representations", torusreps, 60),
        ("reducibility decider", deciders, 10),
        ("whittaker orbit counts", whittaker, 10),
        ("end-to-end verify", end_to_end, 300),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut res = run();
        let took = start.elapsed();
        if took > Duration::from_secs(limit) {
            res = Err(res.err().unwrap_or_default().into_iter().chain([format!("over {limit}s")]).collect());
        }
        match res {
            Ok(()) => println!("PASS {:>2} {name} ({took:.2?}, limit {limit}s)", k + 1),
            Err(problems) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({took:.2?}, limit {limit}s)", k + 1);
                for p in problems.iter().take(10) {
                    println!("     {p}");
                }
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
