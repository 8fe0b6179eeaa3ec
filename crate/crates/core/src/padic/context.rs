use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::class::SquareClass;
use super::weil::FourthRoot;
use crate::rational::powmod;
use crate::{Error, Result};

pub const DEFAULT_ORACLE_DEPTH: u32 = 7;
pub const DEFAULT_GAUSS_TERMS: u32 = 4;

/// Largest prime accepted; keeps residue tables and `u64` products small.
pub const MAX_PRIME: u64 = 1 << 20;

/// Shared, immutable description of `Q_p` plus write-once caches.
#[derive(Clone)]
pub struct PadicContext {
    inner: Arc<Inner>,
}

struct Inner {
    p: u64,
    oracle_depth: u32,
    gauss_terms: u32,
    nonresidue: u64,
    classes: Vec<SquareClass>,
    units: OnceLock<UnitGroup>,
    gamma_p: OnceLock<FourthRoot>,
    squares: Mutex<HashMap<u32, Arc<Vec<bool>>>>,
}

/// Discrete logarithm data for `(Z/p)^*`, `p` odd.
pub(crate) struct UnitGroup {
    pub(crate) generator: u64,
    pub(crate) dlog: Vec<u32>,
}

impl PadicContext {
    pub fn new(p: u64) -> Result<Self> {
        Self::with_params(p, DEFAULT_ORACLE_DEPTH, DEFAULT_GAUSS_TERMS)
    }

    pub fn with_params(p: u64, oracle_depth: u32, gauss_terms: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(Error::InvalidContext(format!("p = {p} exceeds {MAX_PRIME}")));
        }
        if oracle_depth < 3 {
            return Err(Error::InvalidContext("oracle_depth must be at least 3".into()));
        }
        if gauss_terms < 4 {
            return Err(Error::InvalidContext("gauss_terms must be at least 4".into()));
        }
        let nonresidue = if p == 2 {
            5
        } else {
            (2..p).find(|&u| powmod(u, (p - 1) / 2, p) == p - 1).expect("odd prime has a non-residue")
        };
        let count = if p == 2 { 8 } else { 4 };
        let classes = (0..count).map(|i| SquareClass::from_index_raw(p, nonresidue, i)).collect();
        Ok(PadicContext {
            inner: Arc::new(Inner {
                p,
                oracle_depth,
                gauss_terms,
                nonresidue,
                classes,
                units: OnceLock::new(),
                gamma_p: OnceLock::new(),
                squares: Mutex::new(HashMap::new()),
            }),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn oracle_depth(&self) -> u32 {
        self.inner.oracle_depth
    }

    pub fn gauss_terms(&self) -> u32 {
        self.inner.gauss_terms
    }

    /// Least positive non-residue mod `p` (`5` when `p = 2`).
    pub fn nonresidue(&self) -> u64 {
        self.inner.nonresidue
    }

    /// Canonical class representatives in canonical order.
    pub fn classes(&self) -> &[SquareClass] {
        &self.inner.classes
    }

    /// `[Q_p^* : Q_p^{*2}]`.
    pub fn class_count(&self) -> usize {
        self.inner.classes.len()
    }

    pub fn same_prime(&self, other: &PadicContext) -> bool {
        self.p() == other.p()
    }

    pub(crate) fn units(&self) -> &UnitGroup {
        self.inner.units.get_or_init(|| {
            let p = self.p();
            if p == 2 {
                return UnitGroup { generator: 1, dlog: vec![0, 0] };
            }
            let g = primitive_root(p);
            let mut dlog = vec![0u32; p as usize];
            let mut x = 1u64;
            for e in 0..p - 1 {
                dlog[x as usize] = e as u32;
                x = x * g % p;
            }
            UnitGroup { generator: g, dlog }
        })
    }

    /// A fixed primitive root mod `p` (`p` odd).
    pub fn primitive_root(&self) -> u64 {
        self.units().generator
    }

    pub(crate) fn gamma_p_cell(&self) -> &OnceLock<FourthRoot> {
        &self.inner.gamma_p
    }

    /// Membership table for squares modulo `p^k`.
    pub(crate) fn squares_mod(&self, k: u32) -> Arc<Vec<bool>> {
        let mut map = self.inner.squares.lock().expect("square table lock");
        map.entry(k)
            .or_insert_with(|| {
                let m = self.p().pow(k);
                let mut t = vec![false; m as usize];
                for y in 0..m {
                    t[((y as u128 * y as u128) % m as u128) as usize] = true;
                }
                Arc::new(t)
            })
            .clone()
    }
}

impl fmt::Debug for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PadicContext")
            .field("p", &self.p())
            .field("oracle_depth", &self.oracle_depth())
            .field("gauss_terms", &self.gauss_terms())
            .finish()
    }
}

impl PartialEq for PadicContext {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p()
            && self.oracle_depth() == other.oracle_depth()
            && self.gauss_terms() == other.gauss_terms()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&f| powmod(g, (p - 1) / f, p) != 1))
        .unwrap_or(1)
}
