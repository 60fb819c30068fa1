//! Exact solutions of the sixth-order rational recurrence
//!
//! ```text
//! x_{n+1} = x_{n-5} x_{n-3} / (x_{n-1} (a_n + b_n x_{n-5} x_{n-3}))
//! ```
//!
//! * [`oracle`] iterates the recurrence directly in exact rationals.
//! * [`closedform`] evaluates any term through the invariant
//!   `V_n = 1/(x_{n-5} x_{n-3})`, which satisfies the affine recurrence
//!   `V_{n+4} = a_n V_n + b_n`, and decides well-definedness.
//! * [`specialcases`] holds the expanded formulas for constant, 2-periodic
//!   and 4-periodic coefficients.
//! * [`symmetry`] verifies the two scaling symmetries and their canonical
//!   coordinates.
//!
//! ```
//! use sixfold::{closedform, oracle, seeds::InitialConditions, sequence::CoefficientSequence};
//! use sixfold::number::Rational;
//!
//! let ic = InitialConditions::from_pairs([(1, 2), (3, 1), (-2, 1), (5, 4), (1, 1), (7, 3)]).unwrap();
//! let coeffs = CoefficientSequence::constant(Rational::from(2), Rational::new(1, 3).unwrap());
//! let orbit = oracle::iterate(&ic, &coeffs, 20).unwrap();
//! for m in -5..=20 {
//!     assert_eq!(&closedform::term(m, &ic, &coeffs).unwrap(), orbit.x(m).unwrap());
//! }
//! ```

pub mod closedform;
pub mod error;
pub mod number;
pub mod oracle;
pub mod sampling;
pub mod seeds;
pub mod sequence;
pub mod specialcases;
pub mod symmetry;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/numbers.md")]
    mod numbers {}
    #[doc = include_str!("../../../book/src/iteration.md")]
    mod iteration {}
    #[doc = include_str!("../../../book/src/closed-form.md")]
    mod closed_form {}
    #[doc = include_str!("../../../book/src/well-definedness.md")]
    mod well_definedness {}
    #[doc = include_str!("../../../book/src/special-cases.md")]
    mod special_cases {}
    #[doc = include_str!("../../../book/src/symmetry.md")]
    mod symmetry {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
