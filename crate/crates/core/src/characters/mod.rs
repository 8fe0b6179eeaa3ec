//! Characters of `Q_p^*` and genuine characters of covered centers.

mod central;
mod character;

pub use central::{
    conj_char, dual_central_identity, genuine_center_char, omega_set, zt_act, GenuineCentralCharacter,
};
pub use character::{Character, Zp};
