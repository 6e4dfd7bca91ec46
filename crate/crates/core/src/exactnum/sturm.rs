use num_rational::BigRational;

use super::{IntPoly, Sign};

/// Sturm sequence of a polynomial; counts distinct real roots in intervals.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &IntPoly) -> Self {
        let mut seq = vec![p.clone()];
        if p.degree().unwrap_or(0) == 0 {
            return SturmSequence { seq };
        }
        seq.push(p.derivative());
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].to_rat().div_rem(&seq[n - 1].to_rat());
            if r.is_zero() {
                break;
            }
            // to_primitive_int scales by a positive factor, so signs survive.
            let next = r.neg().to_primitive_int();
            seq.push(next);
        }
        SturmSequence { seq }
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.seq[0]
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Sign changes of the sequence at `x`, zeros dropped.
    pub fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = Sign::Zero;
        for p in &self.seq {
            let s = p.sign_at(x);
            if s == Sign::Zero {
                continue;
            }
            if last != Sign::Zero && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Distinct roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &BigRational, b: &BigRational) -> usize {
        let c = self.count_half_open(a, b);
        if c > 0 && self.seq[0].sign_at(b) == Sign::Zero {
            c - 1
        } else {
            c
        }
    }

    /// Distinct roots in the closed interval `[a, b]`.
    pub fn count_closed(&self, a: &BigRational, b: &BigRational) -> usize {
        let extra = usize::from(self.seq[0].sign_at(a) == Sign::Zero);
        if a == b {
            return extra;
        }
        self.count_half_open(a, b) + extra
    }
}
