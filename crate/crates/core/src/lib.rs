//! Exact-arithmetic computational algebra for the graded pieces of the
//! Grothendieck-Teichmüller Lie algebra.
//!
//! Everything is computed over the rationals, with no floating point
//! anywhere: a passing check is a proof of the verified identity at the
//! given truncation weight.
//!
//! The crate is organized around five subsystems:
//!
//! * [`exactpoly`] — arbitrary-precision rationals, sparse multivariate
//!   polynomials over fixed typed variable sets, truncated formal series,
//!   and exact sparse linear algebra (row echelon, solvers, graded
//!   subspaces).
//! * [`freelie`] — the free Lie algebra on `x, y` in the Lyndon basis,
//!   the Ihara bracket, Lazard elimination onto the alphabet
//!   `g_{ab} = (ad x)^a (ad y)^b([x,y])`, and the induced graded bracket
//!   on the free Lie algebra over `V = AB·Q[A,B]`.
//! * [`invariants`] — the invariant ring `A = Q[A,B,A',B']^{S3 wr S2}`,
//!   its Molien series, presentation, and the ideal generated by the
//!   odd power sums.
//! * [`lowerbound`] — the module `M`, the cocycle and section apparatus,
//!   the generating-function identities, period-polynomial dimension
//!   counts, and the lower-bound module `M^min` with its action, bracket
//!   and Hilbert series.
//! * [`depthgraded`] — depth 1..3 pieces of the depth-graded Lie algebra
//!   generated by `xi[a] = (ad x)^a(y)` for even `a > 0`, explicit
//!   polynomial models, and the homology of the associated complex.

pub mod depthgraded;
pub mod exactpoly;
pub mod freelie;
pub mod invariants;
pub mod lowerbound;
pub mod oracle;
pub mod report;

pub use exactpoly::rat::{rat, rat_i, Rat};
