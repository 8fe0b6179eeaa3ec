use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::padic::{PadicContext, SquareClass};
use crate::symplectic::LeviShape;
use crate::{Error, Result};

/// Which torus acts: similitude 1, square similitude, or any similitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusGroup {
    T,
    TPlus,
    TPrime,
}

impl FromStr for TorusGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" => Ok(TorusGroup::T),
            "T+" | "Tplus" => Ok(TorusGroup::TPlus),
            "T'" | "Tprime" => Ok(TorusGroup::TPrime),
            _ => Err(Error::Parse(format!("unknown torus `{s}`"))),
        }
    }
}

impl fmt::Display for TorusGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TorusGroup::T => "T",
            TorusGroup::TPlus => "T+",
            TorusGroup::TPrime => "T'",
        })
    }
}

/// Simple root of `N_t`, acting on the torus `diag(t, lambda / t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Root {
    /// `t_i / t_{i+1}`
    Short(usize),
    /// `t_i^2 / lambda`
    Long(usize),
}

fn simple_roots(t: &LeviShape) -> Vec<Root> {
    let mut out = Vec::new();
    for (k, off) in t.parts.iter().zip(t.offsets()) {
        out.extend((off..off + k - 1).map(Root::Short));
    }
    let n = t.n();
    if t.tail > 0 {
        out.extend((n - t.tail..n - 1).map(Root::Short));
        out.push(Root::Long(n - 1));
    }
    out
}

/// A non-degenerate character of `N_t` up to squares: one class per simple root.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NondegChar {
    pub shape: LeviShape,
    pub coeffs: Vec<SquareClass>,
}

impl NondegChar {
    pub fn to_json(&self) -> Value {
        json!(self.coeffs.iter().map(|c| c.rep_i64()).collect::<Vec<_>>())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WhittakerOrbits {
    pub count: usize,
    /// Size of every orbit: the image of the torus in the coefficient space.
    pub orbit_size: usize,
    pub reps: Vec<NondegChar>,
}

impl WhittakerOrbits {
    pub fn to_json(&self) -> Value {
        json!({ "count": self.count, "orbit_size": self.orbit_size, "reps": self.reps.iter().map(NondegChar::to_json).collect::<Vec<_>>() })
    }
}

fn index_tuple(idx: usize, base: usize, m: usize) -> Vec<usize> {
    let mut v = Vec::with_capacity(m);
    let mut r = idx;
    for _ in 0..m {
        v.push(r % base);
        r /= base;
    }
    v
}

/// Orbits of non-degenerate characters of `N_t` under the chosen torus,
/// enumerated on the class coefficient space.
///
/// The torus acts through the classes of its entries, so the image of every
/// torus element with class-representative entries is generated and the
/// orbits are its cosets. Each representative is the first tuple of its orbit
/// met when counting in base `[F* : F*^2]`, first root fastest.
pub fn whittaker_orbit_count(shape: &LeviShape, group: TorusGroup, ctx: &PadicContext) -> Result<WhittakerOrbits> {
    let roots = simple_roots(shape);
    let m = roots.len();
    let classes = ctx.classes();
    let k = classes.len();
    let n = shape.n();
    let lambdas: Vec<SquareClass> = match group {
        // a square similitude acts like similitude 1 on classes
        TorusGroup::T | TorusGroup::TPlus => vec![SquareClass::one(ctx)],
        TorusGroup::TPrime => classes.to_vec(),
    };
    let mut image: BTreeSet<Vec<usize>> = BTreeSet::new();
    for ti in 0..k.pow(n as u32) {
        let t: Vec<SquareClass> = index_tuple(ti, k, n).into_iter().map(|i| classes[i]).collect();
        for l in &lambdas {
            let v: Vec<usize> = roots
                .iter()
                .map(|r| match *r {
                    Root::Short(i) => (t[i] * t[i + 1].inverse()).index(),
                    Root::Long(i) => (t[i] * t[i] * l.inverse()).index(),
                })
                .collect();
            image.insert(v);
        }
    }
    let total = k.pow(m as u32);
    let mut label = vec![usize::MAX; total];
    let mut reps = Vec::new();
    let encode = |v: &[usize]| v.iter().rev().fold(0usize, |acc, &d| acc * k + d);
    for idx in 0..total {
        if label[idx] != usize::MAX {
            continue;
        }
        let c = index_tuple(idx, k, m);
        for h in &image {
            let moved: Vec<usize> = c.iter().zip(h).map(|(&a, &b)| (classes[a] * classes[b]).index()).collect();
            label[encode(&moved)] = reps.len();
        }
        reps.push(NondegChar { shape: shape.clone(), coeffs: c.into_iter().map(|i| classes[i]).collect() });
    }
    Ok(WhittakerOrbits { count: reps.len(), orbit_size: image.len(), reps })
}

/// One orbit under the full torus; `[F* : F*^2]` under the other two when
/// the symplectic block is nonempty, else one.
pub fn expected_orbit_count(shape: &LeviShape, group: TorusGroup, ctx: &PadicContext) -> usize {
    match group {
        TorusGroup::TPrime => 1,
        _ if shape.tail > 0 => ctx.class_count(),
        _ => 1,
    }
}
