//! Exact integer/rational building blocks: polynomials, integer matrices
//! (determinant, Smith normal form), LLL reduction and factorization of
//! polynomials over prime fields.

pub mod intmat;
pub mod lll;
pub mod modp;
pub mod poly;
pub mod primes;
