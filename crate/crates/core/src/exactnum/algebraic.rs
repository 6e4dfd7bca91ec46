use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::rational_to_f64;
use super::{ExactError, IntPoly, RationalInterval, Sign, SturmSequence};

/// A real algebraic number: a squarefree integer polynomial together with an
/// open rational interval containing exactly one of its roots. Interval
/// endpoints are never roots.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    defining: IntPoly,
    lo: BigRational,
    hi: BigRational,
    sturm: Arc<SturmSequence>,
}

impl AlgebraicReal {
    /// Builds the root of `poly` inside the open interval `(lo, hi)`.
    pub fn new(poly: &IntPoly, lo: BigRational, hi: BigRational) -> Result<Self, ExactError> {
        if poly.degree().unwrap_or(0) == 0 {
            return Err(ExactError::ConstantPolynomial);
        }
        let defining = poly.squarefree_part();
        let sturm = Arc::new(SturmSequence::new(&defining));
        if lo >= hi || sturm.count_open(&lo, &hi) != 1 {
            return Err(ExactError::NotIsolating {
                poly: poly.to_string(),
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Self::normalized(defining, sturm, lo, hi))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        let defining = IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
        let sturm = Arc::new(SturmSequence::new(&defining));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        AlgebraicReal {
            defining,
            lo: q - &half,
            hi: q + &half,
            sturm,
        }
    }

    /// Moves root endpoints inward; the open interval must hold one root.
    fn normalized(defining: IntPoly, sturm: Arc<SturmSequence>, mut lo: BigRational, mut hi: BigRational) -> Self {
        if defining.sign_at(&lo) == Sign::Zero {
            let mut step = (&hi - &lo) / BigInt::from(2);
            loop {
                let cand = &lo + &step;
                if defining.sign_at(&cand) != Sign::Zero && sturm.count_open(&cand, &hi) == 1 {
                    lo = cand;
                    break;
                }
                step /= BigInt::from(2);
            }
        }
        if defining.sign_at(&hi) == Sign::Zero {
            let mut step = (&hi - &lo) / BigInt::from(2);
            loop {
                let cand = &hi - &step;
                if defining.sign_at(&cand) != Sign::Zero && sturm.count_open(&lo, &cand) == 1 {
                    hi = cand;
                    break;
                }
                step /= BigInt::from(2);
            }
        }
        AlgebraicReal { defining, lo, hi, sturm }
    }

    pub fn defining(&self) -> &IntPoly {
        &self.defining
    }

    pub fn sturm(&self) -> &SturmSequence {
        &self.sturm
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn interval(&self) -> RationalInterval {
        RationalInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn degree(&self) -> usize {
        self.defining.degree().unwrap_or(0)
    }

    /// The exact value if the number is rational (degree-one defining polynomial).
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.degree() == 1).then(|| {
            let c = self.defining.coeffs();
            BigRational::new(-c[0].clone(), c[1].clone())
        })
    }

    /// Roots of the defining polynomial in the isolating interval (always 1).
    pub fn root_count(&self) -> usize {
        self.sturm.count_open(&self.lo, &self.hi)
    }

    /// Halves the isolating interval.
    pub fn refine(&self) -> Self {
        let mid = (&self.lo + &self.hi) / BigInt::from(2);
        let mut out = self.clone();
        match self.defining.sign_at(&mid) {
            Sign::Zero => {
                let quarter = (&self.hi - &self.lo) / BigInt::from(4);
                out.lo = &mid - &quarter;
                out.hi = &mid + quarter;
            }
            s if s == self.defining.sign_at(&self.lo) => out.lo = mid,
            _ => out.hi = mid,
        }
        out
    }

    /// Refines until the interval is narrower than `width`.
    pub fn refine_to(&self, width: &BigRational) -> Self {
        let mut out = self.clone();
        while &(&out.hi - &out.lo) >= width {
            out = out.refine();
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        let scale = self.lo.abs().max(self.hi.abs()) + BigRational::one();
        let r = self.refine_to(&(scale / BigRational::from(BigInt::one() << 60)));
        rational_to_f64(&((&r.lo + &r.hi) / BigInt::from(2)))
    }

    /// Certified comparison of two algebraic reals.
    pub fn compare(&self, other: &AlgebraicReal) -> Ordering {
        let common = self.defining.to_rat().gcd(&other.defining.to_rat());
        let common_sturm = (common.degree().unwrap_or(0) >= 1)
            .then(|| SturmSequence::new(&common.to_primitive_int()));
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            if let Some(s) = &common_sturm {
                let lo = (&a.lo).max(&b.lo);
                let hi = (&a.hi).min(&b.hi);
                if s.count_open(lo, hi) > 0 {
                    return Ordering::Equal;
                }
            }
            a = a.refine();
            b = b.refine();
        }
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in ({}, {})", self.defining, self.lo, self.hi)
    }
}

/// All distinct real roots of `p` in the open interval `(range.lo, range.hi)`,
/// in increasing order.
pub fn isolate_roots(p: &IntPoly, range: &RationalInterval) -> Vec<AlgebraicReal> {
    assert!(!p.is_zero(), "isolate_roots of the zero polynomial");
    let sp = p.squarefree_part();
    if sp.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sturm = Arc::new(SturmSequence::new(&sp));
    let mut out = Vec::new();
    let (lo, hi) = (range.lo().clone(), range.hi().clone());
    let n = sturm.count_open(&lo, &hi);
    isolate_rec(&sp, &sturm, lo, hi, n, &mut out);
    out
}

fn isolate_rec(
    p: &IntPoly,
    sturm: &Arc<SturmSequence>,
    lo: BigRational,
    hi: BigRational,
    count: usize,
    out: &mut Vec<AlgebraicReal>,
) {
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push(AlgebraicReal::normalized(p.clone(), sturm.clone(), lo, hi));
        return;
    }
    let mid = (&lo + &hi) / BigInt::from(2);
    if p.sign_at(&mid) == Sign::Zero {
        // Shrink a window around the rational root until it isolates it.
        let mut d = (&hi - &lo) / BigInt::from(4);
        loop {
            let (a, b) = (&mid - &d, &mid + &d);
            if p.sign_at(&a) != Sign::Zero && p.sign_at(&b) != Sign::Zero && sturm.count_open(&a, &b) == 1 {
                let left = sturm.count_open(&lo, &a);
                isolate_rec(p, sturm, lo, a.clone(), left, out);
                out.push(AlgebraicReal {
                    defining: p.clone(),
                    lo: a,
                    hi: b.clone(),
                    sturm: sturm.clone(),
                });
                let right = sturm.count_open(&b, &hi);
                isolate_rec(p, sturm, b, hi, right, out);
                return;
            }
            d /= BigInt::from(2);
            if d.is_zero() {
                unreachable!("positive width cannot reach zero by halving");
            }
        }
    }
    let left = sturm.count_open(&lo, &mid);
    isolate_rec(p, sturm, lo, mid.clone(), left, out);
    isolate_rec(p, sturm, mid, hi, count - left, out);
}
