//! Exact arithmetic in F_{p^k} and F_q(t): places, divisors, orders, heights,
//! derivations, and genus-0 Riemann-Roch spaces.

pub mod divisor;
pub mod fq;
pub mod parser;
pub mod poly;
pub mod ratfunc;
pub mod rr;

pub use divisor::{
    divisor_of, is_pth_power_divisor, is_squarefree_away_from, local_derivation_order, ord_at,
    Divisor, Place,
};
pub use fq::{Fq, FqElement};
pub use parser::parse_ratfunc;
pub use poly::{enumerate_irreducibles, enumerate_monic_polys, enumerate_polys_below_degree, Poly};
pub use ratfunc::RatFunc;
pub use rr::{construct_separating_element, riemann_roch_basis};
