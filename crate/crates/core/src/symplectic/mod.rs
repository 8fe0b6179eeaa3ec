//! `GSp(2n, Q)` matrices, Levi shapes and the Siegel Bruhat decomposition.

mod bruhat;
mod gsp;
mod levi;
mod random;

pub use bruhat::{bruhat_factor, bruhat_factor_with, cell_rank, tau, x_of, x_of_with, x_one, BruhatFactorization, PivotRule};
pub use gsp::{make_gsp, GSpElement};
pub use levi::{embed_i_rn, levi_element, LeviShape, LeviType};
pub use random::{
    random_gl, random_gsp, random_in_cell, random_omega0, random_sp, random_sp_seeded, random_symmetric,
    random_unit_q, small_q,
};
