//! The family `(β_{n,k}, α_{n,k})` with `β_{n,k}^{2^k} = γ_n` and
//! `α_{n,k} = 1 − β_{n,k}/2`, its kneading words `ξ^±_{n,k}`, and the checks
//! that make the family's shifts of finite type.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::dynamics::{project, Params, Variant};
use crate::exactnum::{isolate_roots, AlgebraicReal, Field, FieldElement, IntPoly, RationalInterval, Sign, SturmSequence};
use crate::words::{EPWord, FiniteWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("family index needs n ≥ 2 (got n = {0})")]
    InvalidIndex(u32),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyIndex {
    n: u32,
    k: u32,
}

impl FamilyIndex {
    pub fn new(n: u32, k: u32) -> Result<Self, ConstructionError> {
        if n < 2 {
            return Err(ConstructionError::InvalidIndex(n));
        }
        Ok(FamilyIndex { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `(n + 1)·2^k`, the period of `ξ^±_{n,k}`.
    pub fn period(&self) -> usize {
        (self.n as usize + 1) << self.k
    }
}

/// `P_{n,k}(x) = x^{2^k n} − x^{2^k(n−1)} − ⋯ − x^{2^k} − 1`.
pub fn family_polynomial(idx: FamilyIndex) -> IntPoly {
    let mut c = vec![-1i64; idx.n as usize + 1];
    c[idx.n as usize] = 1;
    IntPoly::from_i64s(&c).compose_power(1 << idx.k)
}

fn root_in_one_two(p: &IntPoly) -> AlgebraicReal {
    let roots = isolate_roots(p, &RationalInterval::from_ints(1, 2));
    assert_eq!(roots.len(), 1, "{p} should have exactly one root in (1, 2)");
    roots.into_iter().next().expect("one root")
}

/// The multinacci number `γ_n`, the root of `xⁿ − xⁿ⁻¹ − ⋯ − 1` in `(1, 2)`.
pub fn multinacci(n: u32) -> Result<AlgebraicReal, ConstructionError> {
    Ok(root_in_one_two(&family_polynomial(FamilyIndex::new(n, 0)?)))
}

/// `β_{n,k}` as the root of `P_{n,k}` in `(1, 2)`.
pub fn family_beta(idx: FamilyIndex) -> AlgebraicReal {
    root_in_one_two(&family_polynomial(idx))
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

pub fn family_params(idx: FamilyIndex) -> Params {
    let field = Field::new(family_beta(idx));
    let alpha = field.one() - field.beta().scale(&half());
    Params::new(&field, alpha).expect("family parameters lie in Δ")
}

fn xi_minus_block(n: u32, k: u32) -> Vec<u8> {
    if k == 0 {
        let mut b = vec![1u8; n as usize + 1];
        b[0] = 0;
        return b;
    }
    let a = FiniteWord::new(xi_minus_block(n, k - 1)).prefix(1 << (k - 1));
    let sa = a.star();
    let mut out = a.concat(&sa);
    for _ in 0..n {
        out = out.concat(&sa).concat(&a);
    }
    out.into_bits()
}

/// `ξ⁻_{n,k}` built by the block recursion; `ξ⁺_{n,k} = *(ξ⁻_{n,k})`.
pub fn xi_word(idx: FamilyIndex, variant: Variant) -> EPWord {
    let minus = EPWord::periodic(xi_minus_block(idx.n, idx.k));
    match variant {
        Variant::Minus => minus,
        Variant::Plus => minus.star(),
    }
}

/// Cross-checks the block recursion against the substitution `0 ↦ 01`,
/// `1 ↦ 10` and the four-block prefix identity.
pub fn verify_substitution(idx: FamilyIndex) -> bool {
    let k = idx.k as usize;
    let minus = xi_word(idx, Variant::Minus);
    let plus = xi_word(idx, Variant::Plus);
    if k >= 1 {
        let prev = FamilyIndex { n: idx.n, k: idx.k - 1 };
        for (here, v) in [(&minus, Variant::Minus), (&plus, Variant::Plus)] {
            if xi_word(prev, v).prefix(1 << (k - 1)).kappa_subst() != here.prefix(1 << k) {
                return false;
            }
        }
    }
    for l in 2..=k {
        let a = xi_word(FamilyIndex { n: idx.n, k: (k - l) as u32 }, Variant::Minus).prefix(1 << (k - l));
        let sa = a.star();
        let want_minus = a.concat(&sa).concat(&sa).concat(&a);
        let want_plus = sa.concat(&a).concat(&a).concat(&sa);
        if minus.prefix(1 << (k - l + 2)) != want_minus || plus.prefix(1 << (k - l + 2)) != want_plus {
            return false;
        }
    }
    true
}

/// For every `m ≥ 1`: `σᵐξ⁻ ⪯ ξ⁻` or `σᵐξ⁻ ≻ ξ⁺`, and `σᵐξ⁺ ≺ ξ⁻` or `σᵐξ⁺ ⪰ ξ⁺`.
pub fn self_admissible(minus: &EPWord, plus: &EPWord) -> bool {
    let shifts = |w: &EPWord| (1..=w.preperiod().len() + w.period().len()).map(|m| w.shift(m)).collect::<Vec<_>>();
    shifts(minus).iter().all(|s| s <= minus || s > plus) && shifts(plus).iter().all(|s| s < minus || s >= plus)
}

pub fn verify_self_admissible(idx: FamilyIndex) -> bool {
    self_admissible(&xi_word(idx, Variant::Minus), &xi_word(idx, Variant::Plus))
}

fn weighted_difference(beta: &FieldElement, u: &[u8], v: &[u8]) -> FieldElement {
    let binv = beta.inverse().expect("β ≠ 0");
    let mut scale = beta.field().one();
    let mut acc = beta.field().zero();
    for (a, b) in u.iter().zip(v) {
        scale = &scale * &binv;
        match a.cmp(b) {
            std::cmp::Ordering::Greater => acc = &acc + &scale,
            std::cmp::Ordering::Less => acc = &acc - &scale,
            std::cmp::Ordering::Equal => {}
        }
    }
    acc
}

/// `β_{n,k}` vanishes the one-period difference series, is the largest real
/// root of `P_{n,k}` below 2, and the half-block difference series is negative
/// on a rational sample of `(1, 2)`.
pub fn verify_maximal_root(idx: FamilyIndex) -> bool {
    let params = family_params(idx);
    let l = idx.period();
    let minus = xi_word(idx, Variant::Minus).prefix(l);
    let plus = xi_word(idx, Variant::Plus).prefix(l);
    let vanishes = weighted_difference(params.beta(), minus.bits(), plus.bits()).is_zero();

    let beta = params.field().root();
    let p = family_polynomial(idx);
    // β is the only root of P_{n,k} between its isolating lower endpoint and 2.
    let none_above = SturmSequence::new(&p).count_half_open(beta.lo(), &BigRational::from_integer(2.into())) == 1;

    let half = 1usize << idx.k;
    let a = minus.prefix(half);
    let sa = a.star();
    let negative = (1..16).all(|j| {
        let x = BigRational::new(BigInt::from(16 + j), BigInt::from(16));
        let xinv = x.recip();
        let mut scale = BigRational::from_integer(1.into());
        let mut acc = BigRational::from_integer(0.into());
        for (u, v) in a.bits().iter().zip(sa.bits()) {
            scale = &scale * &xinv;
            acc += &scale * BigRational::from_integer(BigInt::from(*u as i64 - *v as i64));
        }
        Sign::of_rational(&acc) == Sign::Negative
    });
    vanishes && none_above && negative
}

/// `π(ξ⁻) = π(ξ⁺) = 1/2` at `(β_{n,k}, α_{n,k})`.
pub fn verify_projection_half(idx: FamilyIndex) -> bool {
    let params = family_params(idx);
    let h = params.field().from_rational_value(half());
    project(&params, &xi_word(idx, Variant::Minus)) == h && project(&params, &xi_word(idx, Variant::Plus)) == h
}

/// The verification battery for one family member.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub self_admissible: bool,
    pub maximal_root: bool,
    pub projection_half: bool,
    pub substitution: bool,
}

impl FamilyReport {
    pub fn all(&self) -> bool {
        self.self_admissible && self.maximal_root && self.projection_half && self.substitution
    }
}

pub fn verify_family(idx: FamilyIndex) -> FamilyReport {
    FamilyReport {
        self_admissible: verify_self_admissible(idx),
        maximal_root: verify_maximal_root(idx),
        projection_half: verify_projection_half(idx),
        substitution: verify_substitution(idx),
    }
}
