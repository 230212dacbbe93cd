//! h10ff: an exact symbolic toolkit for Diophantine definability over
//! rational function fields F_q(t).
//!
//! The crate generates defining equation systems as data, constructs and
//! verifies exact witnesses, compiles existential formulas over
//! (Z_+, +, |_p) into polynomial systems over F_q(t), and provides the
//! bounded-height solver used for desk-scale converse checks. All arithmetic
//! is exact; there are no tolerances anywhere.

pub mod error;
pub mod ff_core;

pub use error::{Error, Result};
pub use ff_core::{Divisor, Fq, FqElement, Place, Poly, RatFunc};
