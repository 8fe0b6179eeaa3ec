//! Reducibility verdicts for genuine principal series and Whittaker orbit counts.

mod principal;
mod whittaker;

pub use principal::{
    counterexample_build, gsp4_reducibility, odd_unitary_rule, weyl_orbit, Condition, PrincipalSeriesDatum,
    ProofLog, Status, Verdict, Witness,
};
pub use whittaker::{expected_orbit_count, whittaker_orbit_count, NondegChar, TorusGroup, WhittakerOrbits};
