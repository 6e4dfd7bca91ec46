use super::{KneadingSpec, Space};
use crate::dynamics::Expansion;

/// Which switch counter to evaluate.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Fullness {
    /// `N₀`: positions `k` with `ω_k = 0` where `ω₁…ω_{k−1}1` is admissible in `Ω̃⁻`.
    Zero,
    /// `N₁`: positions `k` with `ω_k = 1` where `ω₁…ω_{k−1}0` is admissible in `Ω̃⁺`.
    One,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FullnessCount {
    pub count: usize,
    /// Set when admissibility was only tested against finite prefixes of the
    /// invariants, or when `w` was shorter than `depth`.
    pub approximate: bool,
}

/// Counts the switch positions `k ∈ (2, depth]` of `w`.
pub fn fullness_count(spec: &KneadingSpec, w: &Expansion, depth: usize, which: Fullness) -> FullnessCount {
    let (target, switched, space) = match which {
        Fullness::Zero => (0u8, 1u8, Space::TildeMinus),
        Fullness::One => (1u8, 0u8, Space::TildePlus),
    };
    let available = match w {
        Expansion::Eventual(_) => depth,
        Expansion::Prefix(p) => p.len().min(depth),
    };
    let mut approximate = available < depth;
    let mut count = 0;

    if let Ok(dfa) = spec.automaton(space) {
        let Some(mut q) = dfa.start() else {
            return FullnessCount { count: 0, approximate };
        };
        for k in 1..=available {
            let wk = w.symbol(k - 1).expect("within available length");
            if k > 2 && wk == target && dfa.next(q, switched).is_some() {
                count += 1;
            }
            match dfa.next(q, wk) {
                Some(t) => q = t,
                None => break,
            }
        }
    } else {
        approximate = true;
        let mut tracker = PrefixTracker::new(spec);
        for k in 1..=available {
            let wk = w.symbol(k - 1).expect("within available length");
            if k > 2 && wk == target && tracker.clone().push(switched) {
                count += 1;
            }
            if !tracker.push(wk) {
                break;
            }
        }
    }
    FullnessCount { count, approximate }
}

/// Necessary-condition admissibility test against finite prefixes of the
/// invariants: every suffix must not leave the band the prefixes allow.
/// Positions are not collapsed, so the state grows with the input.
#[derive(Clone)]
struct PrefixTracker<'a> {
    lower: &'a Expansion,
    upper: &'a Expansion,
    /// `(upper?, matched length)` for every suffix still tight against its bound.
    tight: Vec<(bool, usize)>,
}

impl<'a> PrefixTracker<'a> {
    fn new(spec: &'a KneadingSpec) -> Self {
        // In both extended spaces 0-suffixes are bounded above by τ⁻(p) and
        // 1-suffixes below by τ⁺(p); strictness is invisible at finite length.
        PrefixTracker { lower: spec.tau_plus(), upper: spec.tau_minus(), tight: Vec::new() }
    }

    fn push(&mut self, c: u8) -> bool {
        self.tight.push((c == 0, 0));
        let (lower, upper) = (self.lower, self.upper);
        let mut ok = true;
        self.tight.retain_mut(|(is_upper, pos)| {
            let bound = if *is_upper { upper } else { lower };
            let Some(b) = bound.symbol(*pos) else {
                return false;
            };
            if c == b {
                *pos += 1;
                return true;
            }
            if (c < b) != *is_upper {
                ok = false;
            }
            false
        });
        ok
    }
}
