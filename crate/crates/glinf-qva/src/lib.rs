//! Exact symbolic kernel for the doubly-infinite matrix Lie algebra, its
//! exponential companion algebra, their induced highest-weight modules, and
//! the generating-function identities connecting them.
//!
//! Everything is computed over arbitrary-precision rationals; every identity
//! check in [`verify`] is an exact coefficient comparison, never a float
//! tolerance.

pub mod exppoly;
pub mod glinf;
pub mod glinf_e;
pub mod pbw;
pub mod rational;
pub mod series;

pub use exppoly::ExpPoly;
pub use glinf::{f_fn, psi, GlDegree, GlInfElem};
pub use glinf_e::{FiltDegree, GlInfEElem};
pub use pbw::{Gen, InducedModule, ModuleParams, PbwMonomial, PbwVector};
pub use rational::Rat;
pub use series::{check_identity, exp_diff, mul_series, substitute_phi, TruncSeries, Var};
