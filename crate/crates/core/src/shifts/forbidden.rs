use std::collections::BTreeSet;

use num_integer::Integer;

use super::{KneadingSpec, Shift, ShiftError};
use crate::shifts::automaton::sft_automaton;
use crate::words::{EPWord, FiniteWord};

/// A minimal forbidden set together with the memory `ℓ − 1` of the shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenSet {
    pub words: BTreeSet<FiniteWord>,
    pub memory: usize,
}

/// Minimal forbidden words of `Ω` for a spec whose relevant invariants are
/// periodic (both in the interior; `τ⁻(p)` for the greedy pair, `τ⁺(p)` for
/// the lazy pair).
pub fn forbidden_words(spec: &KneadingSpec) -> Result<ForbiddenSet, ShiftError> {
    forbidden_words_of(spec, Shift::Omega)
}

pub(crate) fn forbidden_words_of(spec: &KneadingSpec, shift: Shift) -> Result<ForbiddenSet, ShiftError> {
    let (tm, tp) = spec.words()?;
    let ok = match shift {
        Shift::Omega if spec.is_greedy() => tm.is_periodic(),
        Shift::Omega if spec.is_lazy() => tp.is_periodic(),
        _ => tm.is_periodic() && tp.is_periodic(),
    };
    if !ok {
        return Err(ShiftError::NotPeriodic);
    }
    let span = |w: &EPWord| (w.preperiod().len(), w.period().len());
    let ((pm, qm), (pp, qp)) = (span(tm), span(tp));
    let bound = pm.max(pp) + qm.lcm(&qp);

    let lang = spec.shift_automaton(shift)?;
    let mut words = BTreeSet::new();
    for c in 0..2u8 {
        if !lang.accepts(&[c]) {
            words.insert(FiniteWord::new(vec![c]));
        }
    }
    for len in 2..=bound + 1 {
        for u in lang.words(len - 1) {
            for c in 0..2u8 {
                let mut w = u.bits().to_vec();
                w.push(c);
                if !lang.accepts(&w) && lang.accepts(&w[1..]) {
                    words.insert(FiniteWord::new(w));
                }
            }
        }
    }

    let sft = sft_automaton(&words);
    let horizon = (lang.num_states() + 1) * (sft.num_states() + 1);
    if let Some(w) = lang.first_difference(&sft, horizon) {
        return Err(ShiftError::Inconsistent(format!(
            "forbidden words up to length {} do not describe the shift (differs on {w})",
            bound + 1
        )));
    }
    let memory = words.iter().map(FiniteWord::len).max().unwrap_or(1).saturating_sub(1);
    Ok(ForbiddenSet { words, memory })
}
