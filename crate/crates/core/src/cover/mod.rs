//! The double cover of `GSp(2n)`: cocycles and the group law.

mod cocycle;
mod group;

pub use cocycle::{
    coc_inv_closed_form, cocycle_gsp, cocycle_gsp_with, cocycle_sp, cocycle_sp_with, d_sign, inverse_cocycle,
    kubota_cocycle, kubota_x, v_lambda, CocycleLaw, CocyclePath,
};
pub use group::{conj_by, cover_inverse, cover_mul, cover_mul_with, CoverElement, Product};
