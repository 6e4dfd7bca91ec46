//! The maps `T±_{β,α}`, their extended model, τ-expansions, kneading
//! invariants and the projection `π_{β,α}`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{ExactError, Field, FieldElement, RatPoly, Sign};
use crate::words::{EPWord, FiniteWord};

pub const DEFAULT_MAX_ITER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("β must satisfy 1 < β < 2")]
    BetaOutOfRange,
    #[error("α must satisfy 0 ≤ α ≤ 2 − β")]
    AlphaOutOfRange,
    #[error("point lies outside the domain of the map")]
    OutOfDomain,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Which branch owns the discontinuity `p`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `T⁺`: symbol 0 iff `x < p`, and `T⁺(p) = 0`.
    Plus,
    /// `T⁻`: symbol 0 iff `x ≤ p`, and `T⁻(p) = 1`.
    Minus,
}

/// Position of `α` in `[0, 2 − β]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// `α = 0`: the greedy map.
    Greedy,
    /// `α = 2 − β`: the lazy map.
    Lazy,
    Interior,
}

/// A validated parameter pair `(β, α)` with `p = (1 − α)/β`.
#[derive(Clone, Debug)]
pub struct Params {
    beta: FieldElement,
    alpha: FieldElement,
    p: FieldElement,
    boundary: Boundary,
}

impl Params {
    pub fn new(field: &Field, alpha: FieldElement) -> Result<Params, DynamicsError> {
        let beta = field.beta();
        let one = field.one();
        if (&beta - &one).sign() != Sign::Positive || (field.from_int(2) - &beta).sign() != Sign::Positive {
            return Err(DynamicsError::BetaOutOfRange);
        }
        let upper = (field.from_int(2) - &beta).try_sub(&alpha)?;
        let (lo, hi) = (alpha.sign(), upper.sign());
        if lo == Sign::Negative || hi == Sign::Negative {
            return Err(DynamicsError::AlphaOutOfRange);
        }
        let boundary = match (lo, hi) {
            (Sign::Zero, _) => Boundary::Greedy,
            (_, Sign::Zero) => Boundary::Lazy,
            _ => Boundary::Interior,
        };
        let p = (&one - &alpha).try_div(&beta)?;
        Ok(Params { beta, alpha, p, boundary })
    }

    /// Rational `β` and `α`.
    pub fn from_rationals(beta: &BigRational, alpha: &BigRational) -> Result<Params, DynamicsError> {
        let field = Field::from_rational(beta);
        let a = field.from_rational_value(alpha.clone());
        Params::new(&field, a)
    }

    pub fn greedy(field: &Field) -> Result<Params, DynamicsError> {
        Params::new(field, field.zero())
    }

    pub fn lazy(field: &Field) -> Result<Params, DynamicsError> {
        Params::new(field, field.from_int(2) - field.beta())
    }

    /// The conjugate parameter `(β, 2 − β − α)`.
    pub fn mirror(&self) -> Params {
        let f = self.field();
        Params::new(f, f.from_int(2) - &self.beta - &self.alpha).expect("mirror of a valid parameter is valid")
    }

    pub fn field(&self) -> &Field {
        self.beta.field()
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn p(&self) -> &FieldElement {
        &self.p
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Endpoints of the extended domain: `−α/(β−1)` and `(1−α)/(β−1)`.
    pub fn extended_domain(&self) -> (FieldElement, FieldElement) {
        let one = self.field().one();
        let bm1 = &self.beta - &one;
        (-&self.alpha / &bm1, (&one - &self.alpha) / &bm1)
    }

    fn symbol(&self, x: &FieldElement, variant: Variant) -> (u8, bool) {
        let c = x.compare(&self.p).expect("orbit point over foreign field");
        let at_p = c.is_eq();
        let s = match (variant, c) {
            (_, std::cmp::Ordering::Less) => 0,
            (_, std::cmp::Ordering::Greater) => 1,
            (Variant::Minus, _) => 0,
            (Variant::Plus, _) => 1,
        };
        (s, at_p)
    }

    fn image(&self, x: &FieldElement, s: u8) -> FieldElement {
        let y = x.mul_beta() + &self.alpha;
        if s == 1 {
            y.add_rational(&-BigRational::from_integer(1.into()))
        } else {
            y
        }
    }

    fn in_unit(&self, x: &FieldElement) -> bool {
        x.sign() != Sign::Negative && (self.field().one() - x).sign() != Sign::Negative
    }

    fn in_extended(&self, x: &FieldElement) -> bool {
        let (a, b) = self.extended_domain();
        (x - &a).sign() != Sign::Negative && (&b - x).sign() != Sign::Negative
    }
}

/// One application of `T±_{β,α}`: the emitted symbol and the image.
pub fn step(params: &Params, x: &FieldElement, variant: Variant) -> Result<(u8, FieldElement), DynamicsError> {
    x.try_sub(params.p())?;
    if !params.in_unit(x) {
        return Err(DynamicsError::OutOfDomain);
    }
    let (s, _) = params.symbol(x, variant);
    Ok((s, params.image(x, s)))
}

/// An expansion: exact when the orbit was certified eventually periodic,
/// otherwise the computed prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expansion {
    Eventual(EPWord),
    Prefix(FiniteWord),
}

impl Expansion {
    pub fn as_word(&self) -> Option<&EPWord> {
        match self {
            Expansion::Eventual(w) => Some(w),
            Expansion::Prefix(_) => None,
        }
    }

    /// The first `n` symbols (shorter if only a shorter prefix is known).
    pub fn prefix(&self, n: usize) -> FiniteWord {
        match self {
            Expansion::Eventual(w) => w.prefix(n),
            Expansion::Prefix(f) => f.prefix(n),
        }
    }

    pub fn symbol(&self, i: usize) -> Option<u8> {
        match self {
            Expansion::Eventual(w) => Some(w.symbol(i)),
            Expansion::Prefix(f) => f.bits().get(i).copied(),
        }
    }

    pub fn star(&self) -> Expansion {
        match self {
            Expansion::Eventual(w) => Expansion::Eventual(w.star()),
            Expansion::Prefix(f) => Expansion::Prefix(f.star()),
        }
    }

    /// `σ(self)`.
    pub fn shift(&self) -> Expansion {
        match self {
            Expansion::Eventual(w) => Expansion::Eventual(w.shift(1)),
            Expansion::Prefix(f) => Expansion::Prefix(FiniteWord::new(f.bits().get(1..).unwrap_or_default().to_vec())),
        }
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expansion::Eventual(w) => w.fmt(f),
            Expansion::Prefix(p) => write!(f, "{p}..."),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Periodic,
    EventuallyPeriodic,
    /// No repetition among the first `N` orbit points.
    UnknownAtDepth(usize),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Periodic => write!(f, "Periodic"),
            Status::EventuallyPeriodic => write!(f, "EventuallyPeriodic"),
            Status::UnknownAtDepth(n) => write!(f, "UnknownAtDepth({n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KneadingResult {
    pub expansion: Expansion,
    pub status: Status,
    /// Number of distinct orbit points visited.
    pub orbit_len: usize,
    /// Length of the terminal cycle (0 when unknown).
    pub cycle_len: usize,
}

impl KneadingResult {
    pub fn word(&self) -> Option<&EPWord> {
        self.expansion.as_word()
    }

    pub fn is_periodic(&self) -> bool {
        self.status == Status::Periodic
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self.status, Status::UnknownAtDepth(_))
    }
}

fn iterate(
    params: &Params,
    x: &FieldElement,
    variant: Variant,
    max_iter: usize,
) -> KneadingResult {
    // Orbit points are keyed by their canonical representative; a point equal
    // to p is replaced by p's own representative so that cycles through the
    // discontinuity are found even over reducible defining polynomials.
    let mut seen: HashMap<RatPoly, usize> = HashMap::new();
    let mut symbols = Vec::new();
    let mut x = x.clone();
    let escape = Escape::new(params);
    for i in 0..=max_iter {
        let (s, at_p) = params.symbol(&x, variant);
        if at_p {
            x = params.p().clone();
        }
        if let Some(&j) = seen.get(x.rep()) {
            let word = EPWord::new(symbols[..j].to_vec(), symbols[j..].to_vec());
            let status = if word.is_periodic() { Status::Periodic } else { Status::EventuallyPeriodic };
            return KneadingResult { expansion: Expansion::Eventual(word), status, orbit_len: i, cycle_len: i - j };
        }
        if i == max_iter {
            break;
        }
        seen.insert(x.rep().clone(), i);
        symbols.push(s);
        x = params.image(&x, s);
        if let Some(escape) = &escape {
            if escape.certifies(&x) {
                escape.finish(&x, variant, max_iter - i - 1, &mut symbols);
                break;
            }
        }
    }
    KneadingResult {
        expansion: Expansion::Prefix(FiniteWord::new(symbols)),
        status: Status::UnknownAtDepth(max_iter),
        orbit_len: max_iter,
        cycle_len: 0,
    }
}

/// Non-periodicity certificate for rational `β = a/b` with `b > 1`: pick a
/// prime `q | b`. Once `v_q(x) − v_q(b) < min(v_q(α), v_q(α − 1))` the
/// valuation drops by `v_q(b)` at every later step, so no orbit point can
/// recur. From there on the orbit is followed with integer arithmetic only.
struct Escape {
    q: BigInt,
    drop: i64,
    floor: i64,
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

fn valuation(q: &BigInt, x: &BigRational) -> Option<i64> {
    fn v(q: &BigInt, n: &BigInt) -> i64 {
        let mut n = n.clone();
        let mut k = 0;
        while !n.is_zero() && (&n % q).is_zero() {
            n /= q;
            k += 1;
        }
        k
    }
    (!x.is_zero()).then(|| v(q, x.numer()) - v(q, x.denom()))
}

impl Escape {
    fn new(params: &Params) -> Option<Escape> {
        let beta = params.beta().as_rational()?;
        let alpha = params.alpha().as_rational()?;
        let b = beta.denom().clone();
        // Small prime factor only; a β with a huge prime denominator just
        // takes the generic path.
        let q = (2u32..1000).map(BigInt::from).find(|q| (&b % q).is_zero())?;
        let drop = valuation(&q, &BigRational::from_integer(b.clone()))?;
        let one = BigRational::one();
        let floor = [valuation(&q, &alpha), valuation(&q, &(&alpha - &one))].into_iter().flatten().min()?;
        Some(Escape {
            q,
            drop,
            floor,
            a: beta.numer().clone(),
            b,
            c: alpha.numer().clone(),
            d: alpha.denom().clone(),
        })
    }

    fn certifies(&self, x: &FieldElement) -> bool {
        let x = x.as_rational().expect("rational field");
        valuation(&self.q, &x).is_some_and(|v| v - self.drop < self.floor)
    }

    /// Appends `steps` further symbols of the orbit of `x`. With `x = N/(K·d)`
    /// and `α = c/d`, one step is `N ↦ aN + (c − s·d)·bK`, `K ↦ bK`, and
    /// `x ⋚ p` iff `aN ⋚ bK(d − c)`.
    fn finish(&self, x: &FieldElement, variant: Variant, steps: usize, symbols: &mut Vec<u8>) {
        let x = x.as_rational().expect("rational field");
        let mut n = x.numer() * &self.d;
        let mut k = x.denom().clone();
        let gap = &self.d - &self.c;
        for _ in 0..steps {
            let s = match (&self.a * &n).cmp(&(&self.b * &k * &gap)) {
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Equal => u8::from(variant == Variant::Plus),
            };
            symbols.push(s);
            let bk = &self.b * &k;
            n = &self.a * &n + (&self.c - BigInt::from(s) * &self.d) * &bk;
            k = bk;
        }
    }
}

/// The `T±`-expansion `τ±_{β,α}(x)` of `x ∈ [0, 1]`.
pub fn tau_expansion(
    params: &Params,
    x: &FieldElement,
    variant: Variant,
    max_iter: usize,
) -> Result<KneadingResult, DynamicsError> {
    x.try_sub(params.p())?;
    if !params.in_unit(x) {
        return Err(DynamicsError::OutOfDomain);
    }
    Ok(iterate(params, x, variant, max_iter))
}

/// The expansion under the extended model on `[−α/(β−1), (1−α)/(β−1)]`.
/// Both branches are affine with no reduction mod 1, so the formula is the
/// same as for `T±`; only the admissible domain differs.
pub fn tau_tilde_expansion(
    params: &Params,
    x: &FieldElement,
    variant: Variant,
    max_iter: usize,
) -> Result<KneadingResult, DynamicsError> {
    x.try_sub(params.p())?;
    if !params.in_extended(x) {
        return Err(DynamicsError::OutOfDomain);
    }
    Ok(iterate(params, x, variant, max_iter))
}

/// `(τ⁻(p), τ⁺(p))`.
pub fn kneading_pair(params: &Params, max_iter: usize) -> (KneadingResult, KneadingResult) {
    (
        iterate(params, params.p(), Variant::Minus, max_iter),
        iterate(params, params.p(), Variant::Plus, max_iter),
    )
}

/// `π_{β,α}(ω) = α/(1−β) + Σ ω_k β^{−k}`, summed in closed form.
pub fn project(params: &Params, w: &EPWord) -> FieldElement {
    let f = params.field();
    let one = f.one();
    let beta = params.beta();
    let binv = beta.inverse().expect("β is nonzero");
    let mut acc = params.alpha() / (&one - beta);
    let mut scale = one.clone();
    for &b in w.preperiod() {
        scale = &scale * &binv;
        if b == 1 {
            acc = &acc + &scale;
        }
    }
    // Σ_j per_j β^{L−j} / (β^L − 1), times β^{−|pre|}.
    let l = w.period().len();
    let mut num = f.zero();
    for &b in w.period() {
        num = num.mul_beta();
        if b == 1 {
            num = &num + &one;
        }
    }
    let bl = beta.pow(l as i64).expect("nonnegative power");
    let tail = &num / &(&bl - &one);
    &acc + &(&tail * &scale)
}

/// Checks `π(σ(ω)) = T(π(ω))` with the branch chosen by `ω₁`.
pub fn check_commutation(params: &Params, w: &EPWord) -> bool {
    let x = project(params, w);
    let s = w.symbol(0);
    let tx = params.image(&x, s);
    project(params, &w.shift(1)) == tx
}
