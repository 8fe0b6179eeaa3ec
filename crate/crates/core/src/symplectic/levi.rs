use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::Serialize;

use super::gsp::GSpElement;
use crate::matrix::Mat;
use crate::rational::Q;
use crate::{Error, Result};

/// `t = (n_1, ..., n_r; n_{r+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LeviShape {
    pub parts: Vec<usize>,
    pub tail: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LeviType {
    Odd,
    Even,
}

impl LeviShape {
    pub fn new(parts: Vec<usize>, tail: usize) -> Result<Self> {
        let s = LeviShape { parts, tail };
        if s.n() == 0 {
            return Err(Error::ShapeMismatch("shape of total size 0".into()));
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum::<usize>() + self.tail
    }

    pub fn levi_type(&self) -> LeviType {
        if self.parts.iter().chain(std::iter::once(&self.tail)).any(|x| x % 2 == 1) {
            LeviType::Odd
        } else {
            LeviType::Even
        }
    }

    pub fn is_odd(&self) -> bool {
        self.levi_type() == LeviType::Odd
    }

    /// Offsets of the GL blocks among the first `n` coordinates.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parts.len());
        let mut o = 0;
        for &k in &self.parts {
            out.push(o);
            o += k;
        }
        out
    }

    /// All shapes with `1 <= n <= max_n` (parts may be zero-free only).
    pub fn all_up_to(max_n: usize) -> Vec<LeviShape> {
        let mut out = Vec::new();
        for n in 1..=max_n {
            for tail in 0..=n {
                for parts in compositions(n - tail) {
                    out.push(LeviShape { parts, tail });
                }
            }
        }
        out
    }
}

/// Ordered compositions of `m` into positive parts.
fn compositions(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=m {
        for mut rest in compositions(m - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl fmt::Display for LeviShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({};{})", parts.join(","), self.tail)
    }
}

impl FromStr for LeviShape {
    type Err = Error;

    /// Accepts `"1,2;1"`, `"(1,2;1)"`, `";2"` and `"2"` (no tail).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || Error::Parse(format!("bad shape `{s}`"));
        let (parts, tail) = match s.split_once(';') {
            Some((p, t)) => (p, t.trim()),
            None => (s, "0"),
        };
        let tail: usize = if tail.is_empty() { 0 } else { tail.parse().map_err(|_| bad())? };
        let parts = parts
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        LeviShape::new(parts, tail)
    }
}

/// `i_{r,n}`: places `h in GSp(2r)` on the last `r` coordinates, with
/// `lambda(h) I_{n-r}` in the lower diagonal.
pub fn embed_i_rn(h: &GSpElement, r: usize, n: usize) -> Result<GSpElement> {
    if h.n() != r || r > n || r == 0 {
        return Err(Error::ShapeMismatch(format!("cannot embed GSp({}) as r = {r} into n = {n}", 2 * h.n())));
    }
    let k = n - r;
    let l = h.lambda().clone();
    let mut m = Mat::zeros(2 * n, 2 * n);
    for i in 0..k {
        m.set(i, i, Q::one());
        m.set(n + i, n + i, l.clone());
    }
    m.set_block(k, k, &h.a());
    m.set_block(k, n + k, &h.b());
    m.set_block(n + k, k, &h.c());
    m.set_block(n + k, n + k, &h.d());
    Ok(GSpElement::from_parts(n, m, l))
}

/// `[g_1, ..., g_r; h]` in the standard Levi of shape `t`. `h` is `None`
/// when the tail is 0, in which case `lambda` gives the similitude.
pub fn levi_element(shape: &LeviShape, gl: &[Mat], h: Option<&GSpElement>, lambda: &Q) -> Result<GSpElement> {
    if gl.len() != shape.parts.len() || gl.iter().zip(&shape.parts).any(|(g, &k)| g.rows() != k || g.cols() != k) {
        return Err(Error::ShapeMismatch("GL blocks do not match the shape".into()));
    }
    let n = shape.n();
    let k = shape.tail;
    let l = match h {
        Some(h) if h.n() == k => h.lambda().clone(),
        None if k == 0 => lambda.clone(),
        _ => return Err(Error::ShapeMismatch("GSp block does not match the tail".into())),
    };
    let mut m = Mat::zeros(2 * n, 2 * n);
    for (g, off) in gl.iter().zip(shape.offsets()) {
        m.set_block(off, off, g);
        m.set_block(n + off, n + off, &g.inverse()?.transpose());
    }
    let s = n - k;
    for i in 0..k {
        m.set(s + i, s + i, Q::one());
        m.set(n + s + i, n + s + i, Q::one());
    }
    // The similitude enters once, through i_{k,n}(h) (or i(lambda) when k = 0).
    m = match h {
        Some(h) => &m * embed_i_rn(h, k, n)?.matrix(),
        None => &m * GSpElement::i_lambda(n, &l).matrix(),
    };
    Ok(GSpElement::from_parts(n, m, l))
}
