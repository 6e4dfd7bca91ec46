use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::rational_to_f64;
use super::{AlgebraicReal, ExactError, IntPoly, RatPoly, Sign, SturmSequence};

/// The number field `Q(β)` for a fixed real algebraic `β`, shared by every
/// element computed over it.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

struct FieldInner {
    root: AlgebraicReal,
    modulus: RatPoly,
    /// Enclosure of `|β|` by rationals with a sign change of the defining
    /// polynomial (or a point when the root was hit exactly).
    enclosure: RwLock<Enclosure>,
    negative: bool,
}

#[derive(Clone)]
struct Enclosure {
    lo: BigRational,
    hi: BigRational,
    steps: usize,
}

/// An element of `Q(β)`: a rational polynomial in `β` of degree below the
/// degree of the defining polynomial.
#[derive(Clone)]
pub struct FieldElement {
    rep: RatPoly,
    field: Field,
}

impl Field {
    pub fn new(root: AlgebraicReal) -> Field {
        let zero = BigRational::zero();
        let mut root = root;
        if root.lo() < &zero && &zero < root.hi() {
            if root.defining().sign_at(&zero) == Sign::Zero {
                root = AlgebraicReal::from_rational(&zero);
            } else {
                while root.lo() < &zero && &zero < root.hi() {
                    root = root.refine();
                }
            }
        }
        let negative = root.hi() <= &zero;
        let modulus = root.defining().to_rat().monic();
        let (lo, hi) = if negative {
            (-root.hi().clone(), -root.lo().clone())
        } else {
            (root.lo().clone(), root.hi().clone())
        };
        let inner = FieldInner {
            root,
            modulus,
            enclosure: RwLock::new(Enclosure { lo, hi, steps: 0 }),
            negative,
        };
        let f = Field(Arc::new(inner));
        if f.degree() > 1 {
            f.refine_enclosure(0, 64);
        }
        f
    }

    /// `Q` itself, presented as the field generated by a rational number.
    pub fn from_rational(q: &BigRational) -> Field {
        Field::new(AlgebraicReal::from_rational(q))
    }

    pub fn root(&self) -> &AlgebraicReal {
        &self.0.root
    }

    pub fn defining(&self) -> &IntPoly {
        self.0.root.defining()
    }

    pub fn degree(&self) -> usize {
        self.0.modulus.degree().unwrap_or(0)
    }

    /// True when both handles describe the same real number with the same
    /// defining polynomial, so their elements can be mixed.
    pub fn same_as(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.defining() == other.defining() && self.root().compare(other.root()) == Ordering::Equal)
    }

    pub fn element(&self, rep: RatPoly) -> FieldElement {
        let rep = if rep.degree().is_some_and(|d| d >= self.degree()) {
            rep.rem_monic(&self.0.modulus)
        } else {
            rep
        };
        FieldElement { rep, field: self.clone() }
    }

    pub fn from_rational_value(&self, q: BigRational) -> FieldElement {
        self.element(RatPoly::constant(q))
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational_value(BigRational::from_integer(n.into()))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { rep: RatPoly::zero(), field: self.clone() }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The generator `β`.
    pub fn beta(&self) -> FieldElement {
        self.element(RatPoly::x())
    }

    fn modulus(&self) -> &RatPoly {
        &self.0.modulus
    }

    /// Bisects the enclosure of `|β|` until at least `min_steps` halvings
    /// happened, doubling the precision beyond what the caller saw.
    fn refine_enclosure(&self, seen_steps: usize, min_steps: usize) {
        let mut enc = self.0.enclosure.write().expect("enclosure lock poisoned");
        if enc.steps > seen_steps {
            return;
        }
        let p = self.abs_defining();
        let lo_sign = p.sign_at(&enc.lo);
        let target = enc.steps + min_steps.max(enc.steps).max(16);
        while enc.steps < target && enc.lo != enc.hi {
            let mid = (&enc.lo + &enc.hi) / BigInt::from(2);
            let s = p.sign_at(&mid);
            if s == Sign::Zero {
                enc.lo = mid.clone();
                enc.hi = mid;
            } else if s == lo_sign {
                enc.lo = mid;
            } else {
                enc.hi = mid;
            }
            enc.steps += 1;
        }
        enc.steps = enc.steps.max(target);
    }

    /// Defining polynomial in the variable `|β|`.
    fn abs_defining(&self) -> IntPoly {
        if self.0.negative {
            self.defining().reflect()
        } else {
            self.defining().clone()
        }
    }

    /// True iff `β` is a root of `p` (gcd with the defining polynomial, then
    /// a Sturm count on the isolating interval).
    fn is_root_of(&self, p: &RatPoly) -> bool {
        let g = p.gcd(self.modulus());
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let s = SturmSequence::new(&g.to_primitive_int());
        s.count_open(self.root().lo(), self.root().hi()) > 0
    }

    /// Certified sign of `rep(β)`.
    fn sign_of(&self, rep: &RatPoly) -> Sign {
        if let Some(c) = rep.as_constant() {
            return Sign::of_rational(&c);
        }
        let mut p = rep.to_primitive_int();
        if self.0.negative {
            p = p.reflect();
        }
        let (pos, neg) = split_signs(&p);
        let mut gcd_checked = false;
        loop {
            let seen = {
                let enc = self.0.enclosure.read().expect("enclosure lock poisoned");
                if let Some(s) = bound_sign(&pos, &neg, &enc.lo, &enc.hi) {
                    return s;
                }
                enc.steps
            };
            if !gcd_checked {
                gcd_checked = true;
                if self.is_root_of(rep) {
                    return Sign::Zero;
                }
            }
            self.refine_enclosure(seen, 0);
        }
    }

    /// Rational enclosure of `rep(β)` at the current precision.
    fn bounds_of(&self, rep: &RatPoly) -> (BigRational, BigRational) {
        let mut p = rep.clone();
        if self.0.negative {
            p = p.reflect();
        }
        let enc = self.0.enclosure.read().expect("enclosure lock poisoned");
        let (mut lo, mut hi) = (BigRational::zero(), BigRational::zero());
        for (i, c) in p.coeffs().iter().enumerate() {
            let a = c * num_traits::pow(enc.lo.clone(), i);
            let b = c * num_traits::pow(enc.hi.clone(), i);
            if a <= b {
                lo += a;
                hi += b;
            } else {
                lo += b;
                hi += a;
            }
        }
        (lo, hi)
    }
}

fn split_signs(p: &IntPoly) -> (Vec<BigInt>, Vec<BigInt>) {
    let pos = p.coeffs().iter().map(|c| if c.is_positive() { c.clone() } else { BigInt::zero() }).collect();
    let neg = p.coeffs().iter().map(|c| if c.is_negative() { c.clone() } else { BigInt::zero() }).collect();
    (pos, neg)
}

/// `Σ c_i u^i v^(d-i)` for `x = u/v`.
fn homogeneous_eval(c: &[BigInt], x: &BigRational) -> BigInt {
    let d = c.len() - 1;
    let (u, v) = (x.numer(), x.denom());
    let mut acc = c[d].clone();
    let mut vpow = BigInt::one();
    for ci in c[..d].iter().rev() {
        vpow *= v;
        acc *= u;
        if !ci.is_zero() {
            acc += ci * &vpow;
        }
    }
    acc
}

/// Sign of `p` over `[lo, hi] ⊂ [0, ∞)` when constant there. Positive and
/// negative coefficient parts are each monotone on the nonnegative axis.
fn bound_sign(pos: &[BigInt], neg: &[BigInt], lo: &BigRational, hi: &BigRational) -> Option<Sign> {
    let d = pos.len() - 1;
    let vlo_d = num_traits::pow(lo.denom().clone(), d);
    let vhi_d = num_traits::pow(hi.denom().clone(), d);
    let pos_lo = homogeneous_eval(pos, lo);
    let neg_hi = homogeneous_eval(neg, hi);
    let lower = &pos_lo * &vhi_d + &neg_hi * &vlo_d;
    if lower.is_positive() {
        return Some(Sign::Positive);
    }
    let pos_hi = homogeneous_eval(pos, hi);
    let neg_lo = homogeneous_eval(neg, lo);
    let upper = &pos_hi * &vlo_d + &neg_lo * &vhi_d;
    if upper.is_negative() {
        return Some(Sign::Negative);
    }
    (lo == hi).then_some(Sign::Zero)
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Canonical remainder representation.
    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    pub fn sign(&self) -> Sign {
        self.field.sign_of(&self.rep)
    }

    /// Exact zero test.
    pub fn is_zero(&self) -> bool {
        self.rep.is_zero() || self.sign() == Sign::Zero
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.rep.as_constant()
    }

    fn check(&self, other: &FieldElement) -> Result<(), ExactError> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(ExactError::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement, ExactError> {
        self.check(other)?;
        Ok(FieldElement { rep: self.rep.add(&other.rep), field: self.field.clone() })
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement, ExactError> {
        self.check(other)?;
        Ok(FieldElement { rep: self.rep.sub(&other.rep), field: self.field.clone() })
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement, ExactError> {
        self.check(other)?;
        Ok(self.field.element(self.rep.mul(&other.rep)))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement, ExactError> {
        self.check(other)?;
        self.try_mul(&other.inverse()?)
    }

    pub fn compare(&self, other: &FieldElement) -> Result<Ordering, ExactError> {
        self.check(other)?;
        if self.rep == other.rep {
            return Ok(Ordering::Equal);
        }
        Ok(self.field.sign_of(&self.rep.sub(&other.rep)).to_ordering())
    }

    /// Multiplicative inverse. When the defining polynomial is reducible and
    /// shares a factor with the representative, the inverse is taken modulo
    /// the cofactor that `β` actually annihilates.
    pub fn inverse(&self) -> Result<FieldElement, ExactError> {
        if let Some(c) = self.rep.as_constant() {
            if c.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            return Ok(self.field.from_rational_value(c.recip()));
        }
        let modulus = self.field.modulus();
        let (g, s) = self.rep.ext_gcd(modulus);
        if g.degree() == Some(0) {
            return Ok(self.field.element(s));
        }
        if self.field.is_root_of(&g) {
            return Err(ExactError::DivisionByZero);
        }
        let (h, _) = modulus.div_rem(&g);
        let (g2, s2) = self.rep.ext_gcd(&h.monic());
        debug_assert_eq!(g2.degree(), Some(0));
        Ok(self.field.element(s2))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement, ExactError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut b = base;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// `β · self`, cheaper than a general product.
    pub fn mul_beta(&self) -> FieldElement {
        self.field.element(self.rep.shift_up())
    }

    pub fn scale(&self, k: &BigRational) -> FieldElement {
        FieldElement { rep: self.rep.scale(k), field: self.field.clone() }
    }

    pub fn add_rational(&self, k: &BigRational) -> FieldElement {
        FieldElement { rep: self.rep.add(&RatPoly::constant(k.clone())), field: self.field.clone() }
    }

    /// Rational interval containing the value, narrower than `width`.
    pub fn enclose(&self, width: &BigRational) -> (BigRational, BigRational) {
        if let Some(c) = self.rep.as_constant() {
            return (c.clone(), c);
        }
        loop {
            let (lo, hi) = self.field.bounds_of(&self.rep);
            if &(&hi - &lo) < width {
                return (lo, hi);
            }
            let seen = self.field.0.enclosure.read().expect("enclosure lock poisoned").steps;
            self.field.refine_enclosure(seen, 0);
        }
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(c) = self.rep.as_constant() {
            return rational_to_f64(&c);
        }
        if self.sign() == Sign::Zero {
            return 0.0;
        }
        let mut width = BigRational::new(BigInt::one(), BigInt::from(1u64 << 20));
        loop {
            let (lo, hi) = self.enclose(&width);
            let (a, b) = (rational_to_f64(&lo), rational_to_f64(&hi));
            if a == b || (b - a).abs() <= 1e-15 * a.abs().max(b.abs()) {
                return rational_to_f64(&((lo + hi) / BigInt::from(2)));
            }
            width = &width * BigRational::new(BigInt::one(), BigInt::one() << 64);
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ok(Ordering::Equal)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.display_in("b").fmt(f)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({} over {})", self, self.field.defining())
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.0.root)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { rep: self.rep.neg(), field: self.field.clone() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
