//! Dense univariate polynomials over Z and Q, constant term first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Sign;

/// Integer-coefficient polynomial. Coefficients are stored constant term
/// first and trailing zeros are always trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Rational-coefficient polynomial, same layout as [`IntPoly`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(x^k)`.
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        let Some(d) = self.degree() else {
            return Self::zero();
        };
        let mut coeffs = vec![BigInt::zero(); d * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Content-free version with a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let Some(lead) = self.leading() else {
            return Self::zero();
        };
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if lead.is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// `p / gcd(p, p')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part();
        }
        let g = self.to_rat().gcd(&self.derivative().to_rat());
        if g.degree() == Some(0) {
            return self.primitive_part();
        }
        let (q, r) = self.to_rat().div_rem(&g);
        debug_assert!(r.is_zero());
        q.to_primitive_int()
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Exact sign of `p(x)` using only integer arithmetic:
    /// with `x = u/v`, `v > 0`, the sign of `p(x)` equals the sign of
    /// `sum c_i u^i v^(d-i)`.
    pub fn sign_at(&self, x: &BigRational) -> Sign {
        let Some(d) = self.degree() else {
            return Sign::Zero;
        };
        let u = x.numer();
        let v = x.denom();
        let mut acc = self.coeffs[d].clone();
        let mut vpow = BigInt::one();
        for i in (0..d).rev() {
            vpow *= v;
            acc = acc * u + &self.coeffs[i] * &vpow;
        }
        Sign::of(&acc)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + bigint_to_f64(c))
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Cauchy bound: every complex root has modulus strictly below this.
    pub fn cauchy_bound(&self) -> BigRational {
        let Some(lead) = self.leading() else {
            return BigRational::one();
        };
        let lead = lead.abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigRational::one() + BigRational::new(max, lead)
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(if c.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(f) = q.to_f64() {
        if f.is_finite() {
            return f;
        }
    }
    // Scale down huge numerators/denominators before dividing.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 60).max(0) as usize;
    let shift_d = (db - 60).max(0) as usize;
    let n = bigint_to_f64(&(q.numer() >> shift_n));
    let d = bigint_to_f64(&(q.denom() >> shift_d));
    n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Returns the constant if the polynomial has degree at most zero.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> RatPoly {
        if k.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        RatPoly::new(out)
    }

    /// Multiplication by `x`.
    pub fn shift_up(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        RatPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> RatPoly {
        let mut base = self.clone();
        let mut acc = RatPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return (RatPoly::zero(), self.clone());
        };
        let mut quot = vec![BigRational::zero(); sd - dd + 1];
        for i in (dd..=sd).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let t = &rem[i] * &lead_inv;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    rem[i - dd + j] -= &t * c;
                }
            }
            quot[i - dd] = t;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, modulus: &RatPoly) -> RatPoly {
        let dd = modulus.degree().expect("zero modulus");
        debug_assert!(modulus.coeffs[dd].is_one());
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return self.clone();
        };
        let mut rem = self.coeffs.clone();
        for i in (dd..=sd).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let t = rem[i].clone();
            for (j, c) in modulus.coeffs[..dd].iter().enumerate() {
                if !c.is_zero() {
                    rem[i - dd + j] -= &t * c;
                }
            }
        }
        rem.truncate(dd);
        RatPoly::new(rem)
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.to_primitive_int().to_rat();
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s)` with `g` monic and
    /// `s * self ≡ g (mod other)`.
    pub fn ext_gcd(&self, other: &RatPoly) -> (RatPoly, RatPoly) {
        let (mut r0, mut r1) = (other.clone(), self.clone());
        let (mut s0, mut s1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let Some(l) = r0.leading().cloned() else {
            return (RatPoly::zero(), RatPoly::zero());
        };
        let inv = l.recip();
        (r0.scale(&inv), s0.scale(&inv))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    /// Positive rational multiple with coprime integer coefficients.
    /// The sign of every value is preserved.
    pub fn to_primitive_int(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        IntPoly::new(ints.into_iter().map(|c| c / &g).collect())
    }

    /// Integer polynomial if every coefficient is integral.
    pub fn to_int_exact(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }

    pub fn reflect(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }
}

/// Formats a polynomial in the given variable, e.g. `x^4-x^2-1` or `1-1/2*b`.
pub(crate) fn format_poly<C, F>(coeffs: &[C], var: &str, f: &mut fmt::Formatter<'_>, split: F) -> fmt::Result
where
    F: Fn(&C) -> (bool, String, bool),
{
    // split returns (negative, |c| rendered, |c| == 1)
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        let (neg, abs, unit) = split(c);
        if abs == "0" {
            continue;
        }
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { "-" } else { "+" })?;
        }
        first = false;
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        match (i, unit) {
            (0, _) => write!(f, "{abs}")?,
            (_, true) => write!(f, "{mono}")?,
            (_, false) => write!(f, "{abs}*{mono}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_poly(&self.coeffs, "x", f, |c| {
            (c.is_negative(), c.abs().to_string(), c.abs().is_one())
        })
    }
}

impl RatPoly {
    /// Renders with an explicit variable name.
    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        struct D<'a>(&'a RatPoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                format_poly(&self.0.coeffs, self.1, f, |c| {
                    (c.is_negative(), c.abs().to_string(), c.abs().is_one())
                })
            }
        }
        D(self, var)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in("x").fmt(f)
    }
}
