//! Intermediate β-shifts described by their kneading invariants: admissibility,
//! finite languages, finite-type classification and fullness counts.

mod automaton;
mod forbidden;
mod fullness;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::dynamics::{kneading_pair, Boundary, Expansion, KneadingResult, Params};
use crate::words::{EPWord, FiniteWord};

pub use automaton::{sft_automaton, Dfa};
pub use forbidden::{forbidden_words, ForbiddenSet};
pub use fullness::{fullness_count, Fullness, FullnessCount};

use automaton::{follower, Bound};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error("kneading invariants must start with 0 (lower) and 1 (upper)")]
    InvalidSpec,
    #[error("kneading invariant is only known as a finite prefix")]
    NotEventuallyPeriodic,
    #[error("kneading invariants are not periodic")]
    NotPeriodic,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

/// The pair of kneading invariants `(τ⁻(p), τ⁺(p))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KneadingSpec {
    tau_minus: Expansion,
    tau_plus: Expansion,
}

impl KneadingSpec {
    pub fn new(tau_minus: EPWord, tau_plus: EPWord) -> Result<Self, ShiftError> {
        Self::from_expansions(Expansion::Eventual(tau_minus), Expansion::Eventual(tau_plus))
    }

    /// Accepts prefixes for invariants that were not certified periodic.
    pub fn from_expansions(tau_minus: Expansion, tau_plus: Expansion) -> Result<Self, ShiftError> {
        if tau_minus.symbol(0) != Some(0) || tau_plus.symbol(0) != Some(1) {
            return Err(ShiftError::InvalidSpec);
        }
        Ok(KneadingSpec { tau_minus, tau_plus })
    }

    pub fn from_results(minus: &KneadingResult, plus: &KneadingResult) -> Result<Self, ShiftError> {
        Self::from_expansions(minus.expansion.clone(), plus.expansion.clone())
    }

    pub fn from_params(params: &Params, max_iter: usize) -> Result<Self, ShiftError> {
        let (m, p) = kneading_pair(params, max_iter);
        Self::from_results(&m, &p)
    }

    pub fn tau_minus(&self) -> &Expansion {
        &self.tau_minus
    }

    pub fn tau_plus(&self) -> &Expansion {
        &self.tau_plus
    }

    /// Both invariants as eventually periodic words.
    pub fn words(&self) -> Result<(&EPWord, &EPWord), ShiftError> {
        match (self.tau_minus.as_word(), self.tau_plus.as_word()) {
            (Some(m), Some(p)) => Ok((m, p)),
            _ => Err(ShiftError::NotEventuallyPeriodic),
        }
    }

    /// `τ⁺(0) = σ(τ⁺(p))`.
    pub fn lower_outer(&self) -> Expansion {
        self.tau_plus.shift()
    }

    /// `τ⁻(1) = σ(τ⁻(p))`.
    pub fn upper_outer(&self) -> Expansion {
        self.tau_minus.shift()
    }

    /// The invariants are those of the greedy map: `τ⁺(p) = 1(0)`.
    pub fn is_greedy(&self) -> bool {
        self.tau_plus.as_word() == Some(&EPWord::new(vec![1], vec![0]))
    }

    /// The invariants are those of the lazy map: `τ⁻(p) = 0(1)`.
    pub fn is_lazy(&self) -> bool {
        self.tau_minus.as_word() == Some(&EPWord::new(vec![0], vec![1]))
    }

    /// The mirror pair `(*τ⁺, *τ⁻)` belonging to `(β, 2 − β − α)`.
    pub fn star(&self) -> KneadingSpec {
        KneadingSpec { tau_minus: self.tau_plus.star(), tau_plus: self.tau_minus.star() }
    }

    fn bounds(&self, space: Space) -> Result<Vec<Bound>, ShiftError> {
        let (tm, tp) = self.words()?;
        let plus = matches!(space, Space::Plus | Space::TildePlus);
        let mut out = vec![
            Bound { word: tm.clone(), first: 0, lower: false, strict: plus },
            Bound { word: tp.clone(), first: 1, lower: true, strict: !plus },
        ];
        if matches!(space, Space::Plus | Space::Minus) {
            out.push(Bound { word: tp.shift(1), first: 0, lower: true, strict: false });
            out.push(Bound { word: tm.shift(1), first: 1, lower: false, strict: false });
        }
        Ok(out)
    }

    /// The follower automaton of one of the four spaces.
    pub fn automaton(&self, space: Space) -> Result<Dfa, ShiftError> {
        Ok(follower(&self.bounds(space)?))
    }

    /// Automaton for `Ω = Ω⁺ ∪ Ω⁻` or `Ω̃ = Ω̃⁺ ∪ Ω̃⁻`.
    pub fn shift_automaton(&self, shift: Shift) -> Result<Dfa, ShiftError> {
        let (p, m) = match shift {
            Shift::Omega => (Space::Plus, Space::Minus),
            Shift::OmegaTilde => (Space::TildePlus, Space::TildeMinus),
        };
        Ok(self.automaton(p)?.union(&self.automaton(m)?))
    }
}

/// The four spaces `Ω±`, `Ω̃±`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    Plus,
    Minus,
    TildePlus,
    TildeMinus,
}

/// The two subshifts `Ω` and `Ω̃`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shift {
    Omega,
    OmegaTilde,
}

fn le(o: Ordering, strict: bool) -> bool {
    if strict {
        o == Ordering::Less
    } else {
        o != Ordering::Greater
    }
}

/// Whether every shift of `w` satisfies the lexicographic two-interval
/// condition of `space`.
pub fn admissible_ep(spec: &KneadingSpec, w: &EPWord, space: Space) -> Result<bool, ShiftError> {
    let (tm, tp) = spec.words()?;
    let tilde = matches!(space, Space::TildePlus | Space::TildeMinus);
    let plus = matches!(space, Space::Plus | Space::TildePlus);
    let lower = if tilde { EPWord::constant(0) } else { tp.shift(1) };
    let upper = if tilde { EPWord::constant(1) } else { tm.shift(1) };
    Ok(w.orbit().all(|s| {
        let first = le(lower.cmp(&s), false) && le(s.cmp(tm), plus);
        let second = le(tp.cmp(&s), !plus) && le(s.cmp(&upper), false);
        first || second
    }))
}

/// Admissibility in `Ω = Ω⁺ ∪ Ω⁻` or `Ω̃ = Ω̃⁺ ∪ Ω̃⁻`.
pub fn admissible_in(spec: &KneadingSpec, w: &EPWord, shift: Shift) -> Result<bool, ShiftError> {
    let (p, m) = match shift {
        Shift::Omega => (Space::Plus, Space::Minus),
        Shift::OmegaTilde => (Space::TildePlus, Space::TildeMinus),
    };
    Ok(admissible_ep(spec, w, p)? || admissible_ep(spec, w, m)?)
}

/// `Ω|_m`: the admissible words of length `m`.
pub fn language(spec: &KneadingSpec, m: usize) -> Result<BTreeSet<FiniteWord>, ShiftError> {
    language_of(spec, m, Shift::Omega)
}

/// `Ω|_m` or `Ω̃|_m`.
pub fn language_of(spec: &KneadingSpec, m: usize, shift: Shift) -> Result<BTreeSet<FiniteWord>, ShiftError> {
    Ok(spec.shift_automaton(shift)?.words(m))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Sft,
    NotSft,
    UnknownAtDepth(usize),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Sft => write!(f, "SFT"),
            Verdict::NotSft => write!(f, "NotSFT"),
            Verdict::UnknownAtDepth(n) => write!(f, "UnknownAtDepth({n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub forbidden: Option<BTreeSet<FiniteWord>>,
    pub memory: Option<usize>,
}

impl Classification {
    fn without_words(verdict: Verdict) -> Self {
        Classification { verdict, forbidden: None, memory: None }
    }

    fn sft(set: ForbiddenSet) -> Self {
        Classification { verdict: Verdict::Sft, forbidden: Some(set.words), memory: Some(set.memory) }
    }
}

/// Finite-type verdict for `Ω_{β,α}` from the kneading invariants. Interior
/// parameters need both invariants periodic; the greedy map only `τ⁻(p)`,
/// the lazy map only `τ⁺(p)`.
pub fn classify(params: &Params, max_iter: usize) -> Result<Classification, ShiftError> {
    let (minus, plus) = kneading_pair(params, max_iter);
    classify_results(&minus, &plus, params.boundary(), max_iter, Shift::Omega)
}

/// Classification of `Ω` from an already computed pair of invariants.
pub fn classify_spec(spec: &KneadingSpec, boundary: Boundary) -> Result<Classification, ShiftError> {
    let periodic = |e: &Expansion| e.as_word().is_some_and(EPWord::is_periodic);
    if let Expansion::Prefix(p) = spec.tau_minus() {
        return Ok(Classification::without_words(Verdict::UnknownAtDepth(p.len())));
    }
    if let Expansion::Prefix(p) = spec.tau_plus() {
        return Ok(Classification::without_words(Verdict::UnknownAtDepth(p.len())));
    }
    let sft = match boundary {
        Boundary::Interior => periodic(spec.tau_minus()) && periodic(spec.tau_plus()),
        Boundary::Greedy => periodic(spec.tau_minus()),
        Boundary::Lazy => periodic(spec.tau_plus()),
    };
    if sft {
        Ok(Classification::sft(forbidden_words(spec)?))
    } else {
        Ok(Classification::without_words(Verdict::NotSft))
    }
}

fn classify_results(
    minus: &KneadingResult,
    plus: &KneadingResult,
    boundary: Boundary,
    max_iter: usize,
    shift: Shift,
) -> Result<Classification, ShiftError> {
    if minus.is_unknown() || plus.is_unknown() {
        return Ok(Classification::without_words(Verdict::UnknownAtDepth(max_iter)));
    }
    let spec = KneadingSpec::from_results(minus, plus)?;
    match shift {
        Shift::Omega => classify_spec(&spec, boundary),
        Shift::OmegaTilde => {
            // Clauses for the extended model, applied as stated: interior
            // needs both invariants periodic, α = 2 − β needs τ⁻(p) periodic
            // and α = 0 needs τ⁺(p) periodic.
            let sft = match boundary {
                Boundary::Interior => minus.is_periodic() && plus.is_periodic(),
                Boundary::Lazy => minus.is_periodic(),
                Boundary::Greedy => plus.is_periodic(),
            };
            if !sft {
                return Ok(Classification::without_words(Verdict::NotSft));
            }
            Ok(Classification::sft(forbidden::forbidden_words_of(&spec, Shift::OmegaTilde)?))
        }
    }
}

/// Finite-type verdict for the extended shift `Ω̃_{β,α}`. For interior
/// parameters it must agree with [`classify`]; a disagreement is reported as
/// [`ShiftError::Inconsistent`].
pub fn classify_extended(params: &Params, max_iter: usize) -> Result<Classification, ShiftError> {
    let (minus, plus) = kneading_pair(params, max_iter);
    let ext = classify_results(&minus, &plus, params.boundary(), max_iter, Shift::OmegaTilde)?;
    if params.boundary() == Boundary::Interior {
        let base = classify_results(&minus, &plus, params.boundary(), max_iter, Shift::Omega)?;
        if base.verdict != ext.verdict {
            return Err(ShiftError::Inconsistent(format!(
                "Ω is {} but Ω̃ is {} at an interior parameter",
                base.verdict, ext.verdict
            )));
        }
    }
    Ok(ext)
}
