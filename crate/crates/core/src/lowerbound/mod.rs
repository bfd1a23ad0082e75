//! The module `M`, the cocycle and section apparatus, generating-function
//! identities, period-polynomial dimension counts, and the lower-bound
//! module with its action, bracket, purity and Hilbert series.

pub mod genfun;
pub mod maps;
pub mod mmin;
pub mod period;
pub mod section;

pub use maps::{cocycle, delta, lambda0, lambda_k, lambda_v, tau};
pub use mmin::LowerBound;
