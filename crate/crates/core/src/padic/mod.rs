//! Square classes of `Q_p^*`, Hilbert symbols and the Weil factor.

mod class;
mod context;
mod hilbert;
mod weil;

pub use class::{square_class, SquareClass};
pub use context::PadicContext;
pub use hilbert::{eta, hilbert_class, hilbert_oracle, hilbert_symbol, Eta};
pub use weil::{gamma, weil_factor, weil_factor_class, weil_gauss_oracle, FourthRoot, PsiSpec};
