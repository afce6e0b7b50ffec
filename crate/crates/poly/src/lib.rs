//! Sparse multivariate polynomial arithmetic over exact rationals.
//!
//! Everything downstream (formula handling, SOS compilation, the soundness
//! analysis) manipulates values of [`Polynomial`]: terms are kept in a
//! canonical graded-lex order over a shared [`VarSpace`], coefficients are
//! arbitrary-precision rationals, and the zero polynomial is the empty term
//! map. Decimal literals in input text parse exactly (`3.8025 = 38025/10000`),
//! so no rounding happens before the numeric solver is involved.
//!
//! All values are immutable after construction and safe to share across
//! threads.

pub mod basis;
pub mod bound;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ratio;
pub mod space;

pub use basis::MonomialBasis;
pub use bound::{interval_bound, VarBox};
pub use monomial::Monomial;
pub use parse::{parse_polynomial, parse_polynomial_at, ParseError};
pub use poly::Polynomial;
pub use ratio::Rat;
pub use space::{VarId, VarSpace};
