//! Verification of integral representations of the Riemann zeta function.
//! Closed-form Laurent expansions of the integrands are checked exactly, and
//! the summation rules obtained by multiplying those expansions are swept
//! over wide parameter ranges.

pub mod error;
pub mod exactnum;
pub mod pigraded;
pub mod powlog;
pub mod precision;
pub mod quadrature;
pub mod specfun;
pub mod symbolic;
pub mod laurent;
pub mod mellin;
pub mod identities;
pub mod errata;

pub use error::{Error, Result};
pub use pigraded::PiGraded;
pub use precision::PrecisionContext;
