//! Independent oracles shared by the integration tests. Nothing here uses the
//! lexicographic machinery of the library: languages come straight from the
//! maps, by pushing intervals of starting points forward.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeSet;

use ibeta::exactnum::{FieldElement, Sign};
use ibeta::{FiniteWord, Params, Variant};
use num_rational::BigRational;

/// An interval of `Q(β)` with open or closed ends.
#[derive(Clone, Debug)]
struct Iv {
    lo: FieldElement,
    lo_open: bool,
    hi: FieldElement,
    hi_open: bool,
}

impl Iv {
    fn is_empty(&self) -> bool {
        match self.lo.compare(&self.hi).unwrap() {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_open || self.hi_open,
            Ordering::Less => false,
        }
    }

    /// Intersection with `{x ≤ p}` / `{x < p}` (below) or `{x ≥ p}` / `{x > p}`.
    fn cut(&self, p: &FieldElement, below: bool, strict: bool) -> Iv {
        let mut out = self.clone();
        if below {
            match self.hi.compare(p).unwrap() {
                Ordering::Greater => {
                    out.hi = p.clone();
                    out.hi_open = strict;
                }
                Ordering::Equal => out.hi_open |= strict,
                Ordering::Less => {}
            }
        } else {
            match self.lo.compare(p).unwrap() {
                Ordering::Less => {
                    out.lo = p.clone();
                    out.lo_open = strict;
                }
                Ordering::Equal => out.lo_open |= strict,
                Ordering::Greater => {}
            }
        }
        out
    }

    fn map(&self, params: &Params, s: u8) -> Iv {
        let f = |x: &FieldElement| x * params.beta() + params.alpha() - params.field().from_int(s as i64);
        Iv { lo: f(&self.lo), lo_open: self.lo_open, hi: f(&self.hi), hi_open: self.hi_open }
    }
}

/// Whether some `x` has a `T^±` itinerary starting with `w`, with `x` ranging
/// over `[0, 1)` for `T⁺` and `(0, 1]` for `T⁻`.
///
/// The lexicographic description of `Ω^±` misses the itinerary of the far
/// endpoint whenever its orbit hits `p` (at `α = 0`, `τ⁺(1) = 11(0)`), so
/// that endpoint is left out here; [`dynamic_admissible_closed`] keeps it.
pub fn dynamic_admissible(params: &Params, w: &[u8], variant: Variant) -> bool {
    admissible_from(params, w, variant, variant == Variant::Minus, variant == Variant::Plus)
}

/// As [`dynamic_admissible`] but over all of `[0, 1]`.
pub fn dynamic_admissible_closed(params: &Params, w: &[u8], variant: Variant) -> bool {
    admissible_from(params, w, variant, false, false)
}

fn admissible_from(params: &Params, w: &[u8], variant: Variant, lo_open: bool, hi_open: bool) -> bool {
    let f = params.field();
    let mut iv = Iv { lo: f.zero(), lo_open, hi: f.one(), hi_open };
    for &c in w {
        // Minus: 0 iff x ≤ p.  Plus: 0 iff x < p.
        let strict_zero = variant == Variant::Plus;
        let piece = if c == 0 { iv.cut(params.p(), true, strict_zero) } else { iv.cut(params.p(), false, !strict_zero) };
        if piece.is_empty() {
            return false;
        }
        iv = piece.map(params, c);
    }
    true
}

/// `Ω|_m` by brute force over all `2^m` words.
pub fn brute_language(params: &Params, m: usize) -> BTreeSet<FiniteWord> {
    (0u32..1 << m)
        .map(|bits| (0..m).map(|i| ((bits >> (m - 1 - i)) & 1) as u8).collect::<Vec<u8>>())
        .filter(|w| dynamic_admissible(params, w, Variant::Plus) || dynamic_admissible(params, w, Variant::Minus))
        .map(FiniteWord::new)
        .collect()
}

/// Ω restricted to one map.
pub fn brute_language_of(params: &Params, m: usize, variant: Variant) -> BTreeSet<FiniteWord> {
    (0u32..1 << m)
        .map(|bits| (0..m).map(|i| ((bits >> (m - 1 - i)) & 1) as u8).collect::<Vec<u8>>())
        .filter(|w| dynamic_admissible(params, w, variant))
        .map(FiniteWord::new)
        .collect()
}

/// Brute-force SFT language: words of length `m` avoiding `forbidden` that
/// extend to length `m + slack` still avoiding it.
pub fn sft_language(forbidden: &BTreeSet<FiniteWord>, m: usize, slack: usize) -> BTreeSet<FiniteWord> {
    let bad = |w: &[u8]| forbidden.iter().any(|f| w.windows(f.len()).any(|x| x == f.bits()));
    let total = m + slack;
    let mut out = BTreeSet::new();
    for bits in 0u64..1 << total {
        let w: Vec<u8> = (0..total).map(|i| ((bits >> (total - 1 - i)) & 1) as u8).collect();
        if !bad(&w) {
            out.insert(FiniteWord::new(w[..m].to_vec()));
        }
    }
    out
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn sign(x: &FieldElement) -> Sign {
    x.sign()
}

pub fn strs(set: &BTreeSet<FiniteWord>) -> Vec<String> {
    set.iter().map(|w| w.to_string()).collect()
}
