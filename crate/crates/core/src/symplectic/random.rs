//! Seeded random elements built as short words in simple generators.

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::bruhat::tau;
use super::gsp::GSpElement;
use crate::matrix::Mat;
use crate::rational::{qf, Q};

pub const MAX_WORD: usize = 12;
pub const MAX_PARAM: i64 = 9;

/// Nonzero `a/b` with `|a|, |b| <= 9`.
pub fn small_q<R: Rng + ?Sized>(rng: &mut R) -> Q {
    let mut pick = || loop {
        let v = rng.gen_range(-MAX_PARAM..=MAX_PARAM);
        if v != 0 {
            return v;
        }
    };
    let (a, b) = (pick(), pick());
    qf(a, b)
}

/// Nonzero rational with a wider numerator range, for oracle inputs.
pub fn random_unit_q<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Q {
    loop {
        let a = rng.gen_range(-bound..=bound);
        let b = rng.gen_range(1..=bound);
        if a != 0 {
            return qf(a, b);
        }
    }
}

/// Invertible `k x k` matrix: a diagonal times a few elementary operations.
pub fn random_gl<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Mat {
    let d: Vec<Q> = (0..k).map(|_| small_q(rng)).collect();
    let mut m = Mat::diag(&d);
    if k > 1 {
        for _ in 0..rng.gen_range(0..=2 * k) {
            let i = rng.gen_range(0..k);
            let mut j = rng.gen_range(0..k - 1);
            if j >= i {
                j += 1;
            }
            let f = small_q(rng);
            m.add_row_multiple(i, j, &f);
        }
    }
    m
}

/// Sparse symmetric matrix with small entries.
pub fn random_symmetric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Mat {
    let mut s = Mat::zeros(n, n);
    for _ in 0..rng.gen_range(1..=n + 1) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let v = small_q(rng);
        s.set(i, j, v.clone());
        s.set(j, i, v);
    }
    s
}

fn generator<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GSpElement {
    match rng.gen_range(0..5) {
        0 => {
            let t: Vec<Q> = (0..n).map(|_| small_q(rng)).collect();
            GSpElement::torus(&t, &Q::one())
        }
        1 => GSpElement::upper_unipotent(&random_symmetric(n, rng)),
        2 => GSpElement::lower_unipotent(&random_symmetric(n, rng)),
        3 => {
            // J_2 acting on coordinate k only
            let k = rng.gen_range(0..n);
            let mut m = Mat::identity(2 * n);
            m.set(k, k, Q::zero());
            m.set(n + k, n + k, Q::zero());
            m.set(k, n + k, Q::one());
            m.set(n + k, k, -Q::one());
            GSpElement::from_parts(n, m, Q::one())
        }
        _ => {
            let mut w = Mat::identity(n);
            if n > 1 {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                w.swap_rows(i, j);
            }
            GSpElement::from_parts(n, Mat::block_diag(&[&w, &w]), Q::one())
        }
    }
}

/// Random element of `Sp(2n)`: a word of length `1..=12` in torus, upper and
/// lower symmetric shears, single-coordinate Weyl and permutation generators.
pub fn random_sp<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GSpElement {
    let len = rng.gen_range(1..=MAX_WORD);
    let mut g = generator(n, rng);
    for _ in 1..len {
        g = g.mul(&generator(n, rng));
    }
    g
}

pub fn random_sp_seeded(n: usize, seed: u64) -> GSpElement {
    random_sp(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Random element of the Siegel parabolic `diag(a, a^{-t}) u(s)`.
pub fn random_omega0<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GSpElement {
    let a = random_gl(n, rng);
    let l = GSpElement::levi_gl(&a).expect("invertible");
    if rng.gen_bool(0.2) {
        l
    } else {
        l.mul(&GSpElement::upper_unipotent(&random_symmetric(n, rng)))
    }
}

/// `i(lambda) g` with `g` random in `Sp(2n)` and `lambda` small.
pub fn random_gsp<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GSpElement {
    let l = small_q(rng);
    GSpElement::i_lambda(n, &l).mul(&random_sp(n, rng))
}

/// `p1 tau_j p2` with random parabolic factors.
pub fn random_in_cell<R: Rng + ?Sized>(n: usize, j: usize, rng: &mut R) -> GSpElement {
    random_omega0(n, rng).mul(&tau(n, j)).mul(&random_omega0(n, rng))
}
