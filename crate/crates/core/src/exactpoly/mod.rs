//! Exact arithmetic kernels: rationals, sparse polynomials, truncated
//! series and sparse linear algebra over Q.

pub mod linalg;
pub mod poly;
pub mod rat;
pub mod series;

pub use linalg::{GradedSubspace, MonoIndex, Solver, SparseVec, Subspace};
pub use poly::{Ambient, Mono, PeriodVar, Poly, SigmaPiP, VarSet, X2356, X26};
pub use rat::{rat, rat_i, Rat};
pub use series::{Ring, Series1, Series2};
