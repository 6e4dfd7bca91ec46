use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Closed rational interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    /// Panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RationalInterval { lo, hi }
    }

    pub fn from_ints(lo: i64, hi: i64) -> Self {
        Self::new(BigInt::from(lo).into(), BigInt::from(hi).into())
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// The two halves around the midpoint.
    pub fn bisect(&self) -> (RationalInterval, RationalInterval) {
        let m = self.midpoint();
        (
            RationalInterval::new(self.lo.clone(), m.clone()),
            RationalInterval::new(m, self.hi.clone()),
        )
    }

    pub fn intersect(&self, other: &RationalInterval) -> Option<RationalInterval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then(|| RationalInterval::new(lo, hi))
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.lo, self.hi)
    }
}
