//! `metaplectic`: command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use metaplectic_core::characters::{omega_set, Character, GenuineCentralCharacter};
use metaplectic_core::cover::{
    cocycle_gsp_with, conj_by, cover_inverse, cover_mul_with, CocycleLaw, CoverElement,
};
use metaplectic_core::deciders::{
    counterexample_build, gsp4_reducibility, whittaker_orbit_count, PrincipalSeriesDatum, TorusGroup,
};
use metaplectic_core::matrix::Mat;
use metaplectic_core::padic::{gamma, hilbert_symbol, PadicContext, PsiSpec};
use metaplectic_core::rational::{fmt_q, parse_q, Q};
use metaplectic_core::structure::{center_image, center_mul, x_on_center, z_t_reps, CentralElement};
use metaplectic_core::symplectic::{bruhat_factor, cell_rank, x_one, GSpElement, LeviShape};
use metaplectic_core::verify::{self, AggregateReport, SuiteReport};
use metaplectic_core::Sign;

#[derive(Parser)]
#[command(name = "metaplectic", version, about = "Exact arithmetic in metaplectic covers of Sp(2n) and GSp(2n) over Q_p")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hilbert symbol (a, b)_p.
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        p: u64,
    },
    /// Weil factor gamma_psi(a) for psi shifted by S.
    Weil {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        shift: String,
    },
    /// Canonical representative of the square class of a.
    Squareclass {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        p: u64,
    },
    /// Rao's x of g_1 (x of g itself when g is in Sp).
    Xmap {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        p: u64,
    },
    /// Rank of the lower-left block.
    Cellrank {
        #[arg(long)]
        matrix: String,
    },
    /// Factor g = p1 tau_j p2 with p1, p2 in the Siegel parabolic.
    Bruhat {
        #[arg(long)]
        matrix: String,
    },
    /// Cocycle value c~(g, h).
    Cocycle {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        p: u64,
        /// Use Kubota's formula throughout (n = 1 only).
        #[arg(long)]
        kubota: bool,
    },
    /// Product (g, eg)(h, eh) in the cover.
    Covermul {
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        eg: String,
        #[arg(long)]
        h: String,
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        eh: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        kubota: bool,
    },
    /// Inverse of (g, eps) in the cover.
    Inverse {
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        eps: String,
        #[arg(long)]
        p: u64,
    },
    /// (g, *)(h, eps)(g, *)^{-1}; needs g_1 in the Siegel parabolic.
    Conj {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        eps: String,
        #[arg(long)]
        p: u64,
    },
    /// Image of x on the covered center of M_t^+.
    CenterImage {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        p: u64,
    },
    /// Representatives of Z_t.
    ZtReps {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        p: u64,
    },
    /// Product of two central elements, each given as `a_1,...,a_r;b`.
    CenterMul {
        #[arg(long)]
        shape: String,
        #[arg(long, allow_hyphen_values = true)]
        z1: String,
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        e1: String,
        #[arg(long, allow_hyphen_values = true)]
        z2: String,
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        e2: String,
        #[arg(long)]
        p: u64,
    },
    /// Extensions of a genuine central character, with values on Z_t.
    OmegaSet {
        #[arg(long)]
        shape: String,
        /// Character tag or JSON, used on every central parameter.
        #[arg(long, default_value = "triv")]
        eta: String,
        #[arg(long)]
        p: u64,
    },
    /// Covered-torus representations.
    TorusRep {
        #[command(subcommand)]
        cmd: TorusCmd,
    },
    /// Reducibility of a genuine principal series of the cover of GSp(4).
    DecideGsp4 {
        #[arg(long, allow_hyphen_values = true)]
        chi1: String,
        #[arg(long, allow_hyphen_values = true)]
        chi2: String,
        #[arg(long)]
        p: u64,
    },
    /// The order-4 reducible unitary example and its proof log.
    Counterexample {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Torus orbits of non-degenerate characters of N_t.
    WhittakerOrbits {
        #[arg(long)]
        shape: String,
        #[arg(long, default_value = "T")]
        group: String,
        #[arg(long)]
        p: u64,
    },
    /// Run the property suites.
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long = "p")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = verify::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TorusCmd {
    /// Check the induced representations, one line per property.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = verify::DEFAULT_SAMPLES)]
        samples: usize,
    },
}

fn ctx(p: u64) -> Result<PadicContext> {
    Ok(PadicContext::new(p)?)
}

fn q(s: &str) -> Result<Q> {
    Ok(parse_q(s)?)
}

fn sign(s: &str) -> Result<Sign> {
    match s.trim() {
        "+1" | "1" | "+" => Ok(Sign::Plus),
        "-1" | "-" => Ok(Sign::Minus),
        _ => bail!("sign must be +1 or -1, got `{s}`"),
    }
}

/// A matrix given inline as JSON or as `@path`.
fn gsp(arg: &str) -> Result<GSpElement> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
        None => arg.to_string(),
    };
    Ok(GSpElement::new(Mat::from_json(&text)?)?)
}

fn shape(s: &str) -> Result<LeviShape> {
    Ok(s.parse::<LeviShape>()?)
}

fn central(t: &LeviShape, text: &str, eps: Sign) -> Result<CentralElement> {
    let (a, b) = text.split_once(';').context("central element must look like `a_1,...,a_r;b`")?;
    let a = a.split(',').filter(|s| !s.trim().is_empty()).map(q).collect::<Result<Vec<_>>>()?;
    Ok(CentralElement::new(t, a, q(b)?, eps)?)
}

fn central_json(z: &CentralElement, c: &PadicContext) -> Result<Value> {
    Ok(json!({
        "a": z.a.iter().map(fmt_q).collect::<Vec<_>>(),
        "b": fmt_q(&z.b),
        "eps": z.eps,
        "x": x_on_center(z, c)?.rep_i64(),
    }))
}

fn law(kubota: bool) -> CocycleLaw {
    if kubota {
        CocycleLaw::Kubota
    } else {
        CocycleLaw::Rules
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json")
}

fn print_report(r: &SuiteReport) {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    println!("{status} {} p={} checks={} failures={} ({:.2?})", r.suite, r.p, r.checks, r.failure_count, r.elapsed);
    for f in &r.failures {
        println!("  {}: {} expected {} got {}", f.check, f.inputs, f.expected, f.actual);
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Hilbert { a, b, p } => println!("{}", hilbert_symbol(&q(&a)?, &q(&b)?, &ctx(p)?)?),
        Cmd::Weil { a, p, shift } => {
            let c = ctx(p)?;
            let psi = PsiSpec::new(&c, c.class_of(&q(&shift)?)?)?;
            println!("{}", gamma(&psi, c.class_of(&q(&a)?)?)?);
        }
        Cmd::Squareclass { a, p } => println!("{}", ctx(p)?.class_of(&q(&a)?)?),
        Cmd::Xmap { matrix, p } => println!("{}", x_one(&gsp(&matrix)?, &ctx(p)?)?),
        Cmd::Cellrank { matrix } => println!("{}", cell_rank(&gsp(&matrix)?.g_one())),
        Cmd::Bruhat { matrix } => {
            let g = gsp(&matrix)?;
            if !g.is_sp() {
                bail!("bruhat expects an element of Sp (similitude 1)");
            }
            let f = bruhat_factor(&g)?;
            let v = json!({
                "p1": f.p1.matrix().to_json(),
                "j": f.j,
                "tau_j": f.tau_j.matrix().to_json(),
                "p2": f.p2.matrix().to_json(),
            });
            println!("{}", pretty(&v));
        }
        Cmd::Cocycle { g, h, p, kubota } => {
            let (s, path) = cocycle_gsp_with(&gsp(&g)?, &gsp(&h)?, &ctx(p)?, law(kubota))?;
            println!("{s}");
            eprintln!("rule: {path}");
        }
        Cmd::Covermul { g, eg, h, eh, p, kubota } => {
            let s = CoverElement::new(gsp(&g)?, sign(&eg)?);
            let t = CoverElement::new(gsp(&h)?, sign(&eh)?);
            let r = cover_mul_with(&s, &t, &ctx(p)?, law(kubota))?;
            let mut v = r.value.to_json();
            v["rule"] = json!(r.path);
            println!("{}", pretty(&v));
        }
        Cmd::Inverse { g, eps, p } => {
            let s = CoverElement::new(gsp(&g)?, sign(&eps)?);
            println!("{}", pretty(&cover_inverse(&s, &ctx(p)?)?.to_json()));
        }
        Cmd::Conj { g, h, eps, p } => {
            let t = CoverElement::new(gsp(&h)?, sign(&eps)?);
            println!("{}", pretty(&conj_by(&gsp(&g)?, &t, &ctx(p)?)?.to_json()));
        }
        Cmd::CenterImage { shape: s, p } => {
            for c in center_image(&shape(&s)?, &ctx(p)?)? {
                println!("{c}");
            }
        }
        Cmd::ZtReps { shape: s, p } => {
            let c = ctx(p)?;
            for z in z_t_reps(&shape(&s)?, &c) {
                println!("{}", central_json(&z, &c)?);
            }
        }
        Cmd::CenterMul { shape: s, z1, e1, z2, e2, p } => {
            let c = ctx(p)?;
            let t = shape(&s)?;
            let z = center_mul(&central(&t, &z1, sign(&e1)?)?, &central(&t, &z2, sign(&e2)?)?, &c)?;
            println!("{}", pretty(&central_json(&z, &c)?));
        }
        Cmd::OmegaSet { shape: s, eta, p } => {
            let c = ctx(p)?;
            let t = shape(&s)?;
            let eta = parse_character(&eta, &c)?;
            let base = GenuineCentralCharacter::uniform(&t, &eta, &PsiSpec::standard(&c))?;
            let reps = z_t_reps(&t, &c);
            let mut out = Vec::new();
            for w in omega_set(&base) {
                let vals = reps
                    .iter()
                    .map(|z| {
                        let v = w.eval(z)?;
                        Ok(json!({ "x": x_on_center(z, &c)?.rep_i64(), "re": v.re, "im": v.im }))
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.push(json!({ "twist": w.twist.rep_i64(), "values": vals }));
            }
            println!("{}", pretty(&json!(out)));
        }
        Cmd::TorusRep { cmd: TorusCmd::Verify { p, seed, samples } } => {
            let r = verify::run_suite("torusreps", p, seed, samples)?;
            for (name, t) in &r.per_check {
                let status = if t.failures == 0 { "PASS" } else { "FAIL" };
                println!("{status} {name} ({} checks, {} failures)", t.runs, t.failures);
            }
            return Ok(r.passed());
        }
        Cmd::DecideGsp4 { chi1, chi2, p } => {
            let c = ctx(p)?;
            let d = PrincipalSeriesDatum::gsp4(parse_character(&chi1, &c)?, parse_character(&chi2, &c)?, &PsiSpec::standard(&c))?;
            println!("{}", pretty(&gsp4_reducibility(&d)?.to_json()));
        }
        Cmd::Counterexample { p, n } => {
            let c = ctx(p)?;
            let (d, log) = counterexample_build(&c, n)?;
            let v = json!({
                "n": d.n,
                "chi": d.chis[0].to_json(),
                "b": c.nonresidue(),
                "xi": d.xi.as_ref().map(Character::to_json),
                "facts": log.facts.iter().map(|(f, ok)| json!({ "fact": f, "ok": ok })).collect::<Vec<_>>(),
                "passed": log.passed(),
            });
            println!("{}", pretty(&v));
            return Ok(log.passed());
        }
        Cmd::WhittakerOrbits { shape: s, group, p } => {
            let g: TorusGroup = group.parse()?;
            println!("{}", pretty(&whittaker_orbit_count(&shape(&s)?, g, &ctx(p)?)?.to_json()));
        }
        Cmd::Verify { suite, primes, samples, seed, json } => {
            let primes = if primes.is_empty() { verify::DEFAULT_PRIMES.to_vec() } else { primes };
            let agg: AggregateReport = match suite {
                Some(name) => {
                    let jobs: Vec<(&str, u64)> = primes.iter().map(|&p| (name.as_str(), p)).collect();
                    verify::run_jobs(&jobs, seed, samples)?
                }
                None => verify::run_all(&primes, seed, samples)?,
            };
            for r in &agg.reports {
                print_report(r);
            }
            let status = if agg.passed() { "PASS" } else { "FAIL" };
            println!("{status} total checks={} failures={}", agg.total_checks, agg.total_failures);
            if let Some(path) = json {
                std::fs::write(&path, agg.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            return Ok(agg.passed());
        }
    }
    Ok(true)
}

/// A character tag product or a JSON object `{e, zp_re, zp_im, p}`.
fn parse_character(s: &str, c: &PadicContext) -> Result<Character> {
    if s.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(s)?;
        return Ok(Character::from_json(&v, c)?);
    }
    Ok(Character::parse(s, c)?)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
