//! Coefficient sequences `(a_n, b_n)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::number::Rational;

/// Selects one of the two coefficient sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coeff {
    A,
    B,
}

type CoeffFn = dyn Fn(u64) -> (Rational, Rational) + Send + Sync;

/// The pair of sequences `(a_n)`, `(b_n)` driving the recurrence, indexed from `n = 0`.
#[derive(Clone)]
pub enum CoefficientSequence {
    Constant {
        a: Rational,
        b: Rational,
    },
    /// `a_n = a[n mod p]`, `b_n = b[n mod p]` with `p = a.len() = b.len() >= 1`.
    Periodic {
        a: Vec<Rational>,
        b: Vec<Rational>,
    },
    /// Defined only for `n < a.len()`.
    List {
        a: Vec<Rational>,
        b: Vec<Rational>,
    },
    Formula(Arc<CoeffFn>),
}

/// Discriminant of [`CoefficientSequence`], used by the special-case dispatcher.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    Constant,
    Periodic(usize),
    List(usize),
    Formula,
}

impl CoefficientSequence {
    pub fn constant(a: Rational, b: Rational) -> Self {
        CoefficientSequence::Constant { a, b }
    }

    pub fn periodic(a: Vec<Rational>, b: Vec<Rational>) -> Result<Self> {
        if a.is_empty() || a.len() != b.len() {
            return Err(Error::InvalidCoefficients(format!(
                "periodic sequences need equal nonzero lengths, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        Ok(CoefficientSequence::Periodic { a, b })
    }

    pub fn list(a: Vec<Rational>, b: Vec<Rational>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidCoefficients(format!(
                "explicit lists need equal lengths, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        Ok(CoefficientSequence::List { a, b })
    }

    pub fn formula(f: impl Fn(u64) -> (Rational, Rational) + Send + Sync + 'static) -> Self {
        CoefficientSequence::Formula(Arc::new(f))
    }

    pub fn kind(&self) -> SequenceKind {
        match self {
            CoefficientSequence::Constant { .. } => SequenceKind::Constant,
            CoefficientSequence::Periodic { a, .. } => SequenceKind::Periodic(a.len()),
            CoefficientSequence::List { a, .. } => SequenceKind::List(a.len()),
            CoefficientSequence::Formula(_) => SequenceKind::Formula,
        }
    }

    /// `a_n` or `b_n`.
    pub fn coeff_at(&self, n: u64, which: Coeff) -> Result<Rational> {
        let pick = |a: &Rational, b: &Rational| match which {
            Coeff::A => a.clone(),
            Coeff::B => b.clone(),
        };
        match self {
            CoefficientSequence::Constant { a, b } => Ok(pick(a, b)),
            CoefficientSequence::Periodic { a, b } => {
                let i = (n % a.len() as u64) as usize;
                Ok(pick(&a[i], &b[i]))
            }
            CoefficientSequence::List { a, b } => {
                let i = usize::try_from(n).map_err(|_| Error::OutOfHorizon(n))?;
                match (a.get(i), b.get(i)) {
                    (Some(x), Some(y)) => Ok(pick(x, y)),
                    _ => Err(Error::OutOfHorizon(n)),
                }
            }
            CoefficientSequence::Formula(f) => {
                let (a, b) = f(n);
                Ok(pick(&a, &b))
            }
        }
    }

    pub fn a(&self, n: u64) -> Result<Rational> {
        self.coeff_at(n, Coeff::A)
    }

    pub fn b(&self, n: u64) -> Result<Rational> {
        self.coeff_at(n, Coeff::B)
    }

    /// Both coefficients at `n`, evaluating a formula only once.
    pub fn pair(&self, n: u64) -> Result<(Rational, Rational)> {
        match self {
            CoefficientSequence::Formula(f) => Ok(f(n)),
            _ => Ok((self.a(n)?, self.b(n)?)),
        }
    }
}

impl fmt::Debug for CoefficientSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientSequence::Constant { a, b } => f
                .debug_struct("Constant")
                .field("a", a)
                .field("b", b)
                .finish(),
            CoefficientSequence::Periodic { a, b } => f
                .debug_struct("Periodic")
                .field("a", a)
                .field("b", b)
                .finish(),
            CoefficientSequence::List { a, b } => {
                f.debug_struct("List").field("a", a).field("b", b).finish()
            }
            CoefficientSequence::Formula(_) => f.write_str("Formula(..)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn constant() {
        let s = CoefficientSequence::constant(r(3), r(-1));
        assert_eq!(s.coeff_at(17, Coeff::A).unwrap(), r(3));
        assert_eq!(s.coeff_at(17, Coeff::B).unwrap(), r(-1));
    }

    #[test]
    fn periodic_wraps() {
        let s = CoefficientSequence::periodic(vec![r(5), r(7)], vec![r(0), r(1)]).unwrap();
        assert_eq!(s.coeff_at(3, Coeff::A).unwrap(), r(7));
        assert_eq!(s.coeff_at(4, Coeff::B).unwrap(), r(0));
        assert_eq!(s.kind(), SequenceKind::Periodic(2));
    }

    #[test]
    fn list_horizon() {
        let s = CoefficientSequence::list(vec![r(1); 4], vec![r(0); 4]).unwrap();
        assert_eq!(s.a(3).unwrap(), r(1));
        assert_eq!(s.a(9), Err(Error::OutOfHorizon(9)));
        assert_eq!(s.b(4), Err(Error::OutOfHorizon(4)));
    }

    #[test]
    fn malformed() {
        assert!(CoefficientSequence::periodic(vec![], vec![]).is_err());
        assert!(CoefficientSequence::periodic(vec![r(1)], vec![r(1), r(2)]).is_err());
        assert!(CoefficientSequence::list(vec![r(1)], vec![]).is_err());
    }

    #[test]
    fn formula() {
        let s = CoefficientSequence::formula(|n| (Rational::from(n as i64 + 1), Rational::zero()));
        assert_eq!(s.pair(9).unwrap(), (r(10), r(0)));
        assert_eq!(s.kind(), SequenceKind::Formula);
    }
}
