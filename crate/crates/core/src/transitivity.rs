//! The Palmer–Glendinning regions `D_{k,n}` of non-transitive parameters.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::dynamics::Params;
use crate::exactnum::{FieldElement, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransitivityError {
    #[error("region D_{{{k},{n}}} needs 1 ≤ k < n and gcd(k, n) = 1")]
    InvalidRegion { k: u32, n: u32 },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegionId {
    k: u32,
    n: u32,
}

impl RegionId {
    pub fn new(k: u32, n: u32) -> Result<Self, TransitivityError> {
        if k == 0 || k >= n || k.gcd(&n) != 1 {
            return Err(TransitivityError::InvalidRegion { k, n });
        }
        Ok(RegionId { k, n })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D_{{{},{}}}", self.k, self.n)
    }
}

/// How a transitivity verdict was reached.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// The parameter lies in a region; non-transitivity follows directly.
    RegionMembership,
    /// No region contains the parameter; transitivity relies on the regions
    /// being a complete description of the non-transitive parameters.
    CompleteClassification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityVerdict {
    pub transitive: bool,
    pub witness: Option<RegionId>,
    pub basis: Basis,
}

fn pow(beta: &FieldElement, e: u32) -> FieldElement {
    beta.pow(e as i64).expect("non-negative power")
}

/// `Σ_j W_j` (equal to 1 when `k = 1`).
fn w_sum(beta: &FieldElement, k: u32, n: u32) -> FieldElement {
    let field = beta.field();
    if k == 1 {
        return field.one();
    }
    let (m, s) = n.div_rem(&k);
    let v: Vec<u32> = (0..=s).map(|j| j * k / s).collect();
    let mut total = field.zero();
    for j in 1..=s {
        let h = v[j as usize] - v[j as usize - 1];
        for i in 1..=h {
            let e = (v[s as usize] - v[j as usize - 1] - i) * m + s - j;
            total = total + pow(beta, e);
        }
    }
    total
}

/// The α-interval `[lower, upper]` of `D_{k,n}` at this β.
pub fn region_bounds(params: &Params, region: RegionId) -> (FieldElement, FieldElement) {
    let beta = params.beta();
    let field = beta.field();
    let n = region.n;
    let s_sum = (0..n).fold(field.zero(), |acc, i| acc + pow(beta, i));
    let denom = beta * &s_sum;
    let w = w_sum(beta, region.k, n);
    let one = field.one();
    let lower = (&one + beta * &(&w - &one)) / &denom;
    let upper = (beta * &w - pow(beta, n + 1) + pow(beta, n) + beta - &one) / &denom;
    (lower, upper)
}

/// Floating-point version of [`region_bounds`], used to skip regions that
/// are clearly far from a sample point before deciding exactly.
pub(crate) fn region_bounds_f64(beta: f64, region: RegionId) -> (f64, f64) {
    let (k, n) = (region.k, region.n);
    let w = if k == 1 {
        1.0
    } else {
        let (m, s) = n.div_rem(&k);
        let v: Vec<u32> = (0..=s).map(|j| j * k / s).collect();
        let mut total = 0.0;
        for j in 1..=s {
            for i in 1..=v[j as usize] - v[j as usize - 1] {
                total += beta.powi(((v[s as usize] - v[j as usize - 1] - i) * m + s - j) as i32);
            }
        }
        total
    };
    let denom = beta * (0..n).map(|i| beta.powi(i as i32)).sum::<f64>();
    let bn = beta.powi(n as i32);
    ((1.0 + beta * (w - 1.0)) / denom, (beta * w - bn * beta + bn + beta - 1.0) / denom)
}

fn power_in_range(params: &Params, n: u32) -> bool {
    let bn = pow(params.beta(), n);
    let field = bn.field();
    (&bn - field.one()).sign() == Sign::Positive && (field.from_int(2) - &bn).sign() != Sign::Negative
}

/// Exact membership `(β, α) ∈ D_{k,n}`.
pub fn in_region(params: &Params, region: RegionId) -> bool {
    if !power_in_range(params, region.n) {
        return false;
    }
    let (lower, upper) = region_bounds(params, region);
    let alpha = params.alpha();
    (alpha - &lower).sign() != Sign::Negative && (&upper - alpha).sign() != Sign::Negative
}

/// All regions whose constraint `1 < βⁿ ≤ 2` holds, ordered by `n` then `k`.
pub fn candidate_regions(params: &Params) -> Vec<RegionId> {
    let mut out = Vec::new();
    let mut n = 2;
    while power_in_range(params, n) {
        out.extend((1..n).filter_map(|k| RegionId::new(k, n).ok()));
        n += 1;
    }
    out
}

pub fn transitivity_verdict(params: &Params) -> TransitivityVerdict {
    match candidate_regions(params).into_iter().find(|r| in_region(params, *r)) {
        Some(r) => TransitivityVerdict { transitive: false, witness: Some(r), basis: Basis::RegionMembership },
        None => TransitivityVerdict { transitive: true, witness: None, basis: Basis::CompleteClassification },
    }
}
