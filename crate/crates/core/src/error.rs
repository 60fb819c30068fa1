use thiserror::Error;

/// Everything that can go wrong while building or evaluating a problem instance.
///
/// Singular orbits are *not* errors: [`crate::oracle::iterate`] records them in
/// the returned [`crate::oracle::Orbit`]. The closed-form evaluators, which have
/// no orbit to attach the information to, report them as
/// [`Error::SingularClosedForm`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("initial value x_{{{0}}} is zero")]
    ZeroInitialValue(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient index {0} is past the end of the explicit list")]
    OutOfHorizon(u64),
    #[error("term index {0} is below the seed range (m >= -5)")]
    IndexBelowSeed(i64),
    #[error("sequence too short: need at least {needed} values, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("index {0} is outside the stored orbit")]
    OutOfRange(i64),
    #[error(
        "closed form is singular: invariant factor V_{{{v_index}}} vanishes (class j={j}, s={s})"
    )]
    SingularClosedForm { j: u8, s: u64, v_index: u64 },
    #[error("wrong special case: {0}")]
    WrongCase(&'static str),
    #[error("degenerate symmetry sample: {0}")]
    DegenerateSample(&'static str),
    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
