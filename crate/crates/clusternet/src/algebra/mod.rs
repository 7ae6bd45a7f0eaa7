//! Exact exponent-vector arithmetic, term orders, Buchberger's algorithm on
//! pure-difference binomials, normal forms and colon ideals.

mod binomial;
mod cache;
mod colon;
mod exponent;
mod groebner;
mod order;

pub use binomial::Binomial;
pub use cache::BasisCache;
pub use colon::{colon_by_monomial, colon_by_variable};
pub use exponent::{negative_part, positive_part, Exponent, State};
pub use groebner::{buchberger, is_groebner_basis, GroebnerBasis};
pub use order::TermOrder;
