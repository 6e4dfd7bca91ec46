//! Exact arithmetic: integer/rational polynomials, Sturm sequences, real
//! algebraic numbers and the number field `Q(β)` they generate.

mod algebraic;
mod field;
mod interval;
mod parse;
mod poly;
mod sturm;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub use algebraic::{isolate_roots, AlgebraicReal};
pub use field::{Field, FieldElement};
pub use interval::RationalInterval;
pub use parse::{parse_field_element, parse_int_poly, parse_interval, parse_rat_poly, parse_rational, ParseError};
pub use poly::{IntPoly, RatPoly};
pub use sturm::SturmSequence;


/// Errors from field arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different algebraic numbers")]
    ContextMismatch,
    #[error("interval ({lo}, {hi}) does not isolate a single root of {poly}")]
    NotIsolating { poly: String, lo: String, hi: String },
    #[error("defining polynomial must have degree at least 1")]
    ConstantPolynomial,
}

/// Exact sign of a real quantity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: &BigInt) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn of_rational(x: &BigRational) -> Sign {
        Sign::of(x.numer())
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn to_ordering(self) -> Ordering {
        self.to_i8().cmp(&0)
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}
