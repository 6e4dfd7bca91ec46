//! Deterministic automata over `{0, 1}` recognising one-sided shift languages.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::words::{EPWord, FiniteWord};

/// A trimmed DFA: every state lies on a path to an infinite run, so a finite
/// word belongs to the language iff it labels a path from `start`.
#[derive(Clone, Debug)]
pub struct Dfa {
    trans: Vec<[Option<usize>; 2]>,
    start: Option<usize>,
}

impl Dfa {
    /// Keeps only `live` states and renumbers them.
    fn trimmed(trans: &[[Option<usize>; 2]], live: &[bool], start: usize) -> Dfa {
        let mut index = vec![usize::MAX; trans.len()];
        let mut order = Vec::new();
        if live[start] {
            let mut queue = VecDeque::from([start]);
            index[start] = 0;
            order.push(start);
            while let Some(q) = queue.pop_front() {
                for t in trans[q].iter().flatten() {
                    if live[*t] && index[*t] == usize::MAX {
                        index[*t] = order.len();
                        order.push(*t);
                        queue.push_back(*t);
                    }
                }
            }
        }
        let new_trans = order
            .iter()
            .map(|&q| trans[q].map(|t| t.filter(|&t| live[t]).map(|t| index[t])))
            .collect();
        Dfa { trans: new_trans, start: live[start].then_some(0) }
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn start(&self) -> Option<usize> {
        self.start
    }

    pub fn next(&self, q: usize, c: u8) -> Option<usize> {
        self.trans[q][c as usize]
    }

    pub fn run(&self, w: &[u8]) -> Option<usize> {
        w.iter().try_fold(self.start?, |q, &c| self.next(q, c))
    }

    pub fn accepts(&self, w: &[u8]) -> bool {
        self.run(w).is_some()
    }

    /// All accepted words of length `m`.
    pub fn words(&self, m: usize) -> BTreeSet<FiniteWord> {
        let mut out = BTreeSet::new();
        if let Some(s) = self.start {
            let mut buf = Vec::with_capacity(m);
            self.collect(s, m, &mut buf, &mut out);
        }
        out
    }

    fn collect(&self, q: usize, m: usize, buf: &mut Vec<u8>, out: &mut BTreeSet<FiniteWord>) {
        if buf.len() == m {
            out.insert(FiniteWord::new(buf.clone()));
            return;
        }
        for c in 0..2u8 {
            if let Some(t) = self.next(q, c) {
                buf.push(c);
                self.collect(t, m, buf, out);
                buf.pop();
            }
        }
    }

    /// Number of accepted words of each length `0..=m`.
    pub fn counts(&self, m: usize) -> Vec<u128> {
        let mut out = Vec::with_capacity(m + 1);
        let mut cur = vec![0u128; self.trans.len()];
        if let Some(s) = self.start {
            cur[s] = 1;
        }
        for _ in 0..=m {
            out.push(cur.iter().sum());
            let mut next = vec![0u128; self.trans.len()];
            for (q, &n) in cur.iter().enumerate() {
                if n > 0 {
                    for t in self.trans[q].iter().flatten() {
                        next[*t] += n;
                    }
                }
            }
            cur = next;
        }
        out
    }

    /// Automaton for the union of two languages.
    pub fn union(&self, other: &Dfa) -> Dfa {
        type Pair = (Option<usize>, Option<usize>);
        let start: Pair = (self.start, other.start);
        if start == (None, None) {
            return Dfa { trans: Vec::new(), start: None };
        }
        let mut index: HashMap<Pair, usize> = HashMap::from([(start, 0)]);
        let mut pairs = vec![start];
        let mut trans = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            let mut row = [None, None];
            for c in 0..2u8 {
                let t: Pair = (a.and_then(|a| self.next(a, c)), b.and_then(|b| other.next(b, c)));
                if t == (None, None) {
                    continue;
                }
                let n = pairs.len();
                let id = *index.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    n
                });
                row[c as usize] = Some(id);
            }
            trans.push(row);
            i += 1;
        }
        Dfa { trans, start: Some(0) }
    }

    /// A shortest word of length at most `max_len` accepted by exactly one
    /// of the two automata. Breadth-first over reachable state pairs, so each
    /// pair is visited once.
    pub fn first_difference(&self, other: &Dfa, max_len: usize) -> Option<FiniteWord> {
        type Pair = (Option<usize>, Option<usize>);
        let start: Pair = (self.start, other.start);
        let mut parent: HashMap<Pair, (Pair, u8)> = HashMap::new();
        let mut seen: HashSet<Pair> = HashSet::from([start]);
        let mut queue = VecDeque::from([(start, 0usize)]);
        while let Some((pair, depth)) = queue.pop_front() {
            if pair.0.is_some() != pair.1.is_some() {
                let mut bits = Vec::with_capacity(depth);
                let mut cur = pair;
                while let Some(&(prev, c)) = parent.get(&cur) {
                    bits.push(c);
                    cur = prev;
                }
                bits.reverse();
                return Some(FiniteWord::new(bits));
            }
            if depth == max_len {
                continue;
            }
            let (a, b) = pair;
            for c in 0..2u8 {
                let t: Pair = (a.and_then(|a| self.next(a, c)), b.and_then(|b| other.next(b, c)));
                if t != (None, None) && seen.insert(t) {
                    parent.insert(t, (pair, c));
                    queue.push_back((t, depth + 1));
                }
            }
        }
        None
    }
}

/// One lexicographic constraint `σⁿ(ω) ⋚ B` imposed on suffixes that start
/// with `first`.
#[derive(Clone, Debug)]
pub(crate) struct Bound {
    pub word: EPWord,
    pub first: u8,
    /// `true` for `B ⪯ s` / `B ≺ s`, `false` for `s ⪯ B` / `s ≺ B`.
    pub lower: bool,
    pub strict: bool,
}

/// A tight constraint: the current suffix has matched `bounds[idx]` on its
/// first `pos` symbols (positions past the preperiod are taken mod period).
type Tight = (u8, u32);

pub(crate) fn collapse(word: &EPWord, pos: usize) -> usize {
    let (pre, per) = (word.preperiod().len(), word.period().len());
    if pos >= pre + per {
        pre + (pos - pre) % per
    } else {
        pos
    }
}

/// Applies symbol `c` to a tight constraint: `Ok(Some(_))` still tight,
/// `Ok(None)` decided in favour, `Err(())` violated.
pub(crate) fn advance(bound: &Bound, pos: usize, c: u8) -> Result<Option<usize>, ()> {
    let b = bound.word.symbol(pos);
    if c == b {
        Ok(Some(collapse(&bound.word, pos + 1)))
    } else if (c > b) == bound.lower {
        Ok(None)
    } else {
        Err(())
    }
}

/// Builds the follower automaton for the shift space cut out by `bounds`.
pub(crate) fn follower(bounds: &[Bound]) -> Dfa {
    let mut index: HashMap<Vec<Tight>, usize> = HashMap::new();
    let mut states: Vec<Vec<Tight>> = vec![Vec::new()];
    index.insert(Vec::new(), 0);
    let mut trans: Vec<[Option<usize>; 2]> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = [None, None];
        for c in 0..2u8 {
            if let Some(next) = step_state(bounds, &states[i], c) {
                let n = states.len();
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    states.push(next);
                    n
                });
                row[c as usize] = Some(id);
            }
        }
        trans.push(row);
        i += 1;
    }
    let live = live_states(bounds, &states, &trans);
    Dfa::trimmed(&trans, &live, 0)
}

fn step_state(bounds: &[Bound], state: &[Tight], c: u8) -> Option<Vec<Tight>> {
    let fresh = bounds.iter().enumerate().filter(|(_, b)| b.first == c).map(|(i, _)| (i as u8, 0u32));
    let mut out = Vec::new();
    for (idx, pos) in state.iter().copied().chain(fresh) {
        match advance(&bounds[idx as usize], pos as usize, c) {
            Ok(Some(p)) => out.push((idx, p as u32)),
            Ok(None) => {}
            Err(()) => return None,
        }
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

/// States from which some infinite run never violates a constraint. An
/// infinite run settles in a strongly connected component; a component with
/// two distinct cycles carries aperiodic runs, which cannot keep any
/// constraint tight forever. A single-cycle component is acceptable unless
/// its one periodic run equals a strictly bounding word.
fn live_states(bounds: &[Bound], states: &[Vec<Tight>], trans: &[[Option<usize>; 2]]) -> Vec<bool> {
    let mut g: DiGraph<(), u8> = DiGraph::with_capacity(states.len(), 2 * states.len());
    for _ in 0..states.len() {
        g.add_node(());
    }
    for (q, row) in trans.iter().enumerate() {
        for (c, t) in row.iter().enumerate() {
            if let Some(t) = t {
                g.add_edge(NodeIndex::new(q), NodeIndex::new(*t), c as u8);
            }
        }
    }
    let mut good = vec![false; states.len()];
    for scc in tarjan_scc(&g) {
        let members: HashSet<usize> = scc.iter().map(|n| n.index()).collect();
        let internal: Vec<(usize, u8, usize)> = members
            .iter()
            .flat_map(|&q| {
                trans[q]
                    .iter()
                    .enumerate()
                    .filter_map(move |(c, t)| t.map(|t| (q, c as u8, t)))
            })
            .filter(|(_, _, t)| members.contains(t))
            .collect();
        if internal.is_empty() {
            continue;
        }
        let ok = if internal.len() > members.len() {
            true
        } else {
            simple_cycle_ok(bounds, states, trans, &members)
        };
        if ok {
            for &q in &members {
                good[q] = true;
            }
        }
    }
    // Reverse reachability from good components.
    let mut live = good.clone();
    let mut queue: VecDeque<usize> = (0..states.len()).filter(|&q| good[q]).collect();
    let mut preds = vec![Vec::new(); states.len()];
    for (q, row) in trans.iter().enumerate() {
        for t in row.iter().flatten() {
            preds[*t].push(q);
        }
    }
    while let Some(q) = queue.pop_front() {
        for &r in &preds[q] {
            if !live[r] {
                live[r] = true;
                queue.push_back(r);
            }
        }
    }
    live
}

fn simple_cycle_ok(
    bounds: &[Bound],
    states: &[Vec<Tight>],
    trans: &[[Option<usize>; 2]],
    members: &HashSet<usize>,
) -> bool {
    let q0 = *members.iter().min().expect("nonempty component");
    // Walk the unique cycle, recording labels.
    let mut cycle = vec![q0];
    let mut labels = Vec::new();
    let mut q = q0;
    loop {
        let (c, t) = (0..2u8)
            .find_map(|c| trans[q][c as usize].filter(|t| members.contains(t)).map(|t| (c, t)))
            .expect("cycle continues");
        labels.push(c);
        if t == q0 {
            break;
        }
        cycle.push(t);
        q = t;
    }
    for (i, &q) in cycle.iter().enumerate() {
        let mut rotated = labels.clone();
        rotated.rotate_left(i);
        let run = EPWord::periodic(rotated);
        for &(idx, pos) in &states[q] {
            let b = &bounds[idx as usize];
            if b.strict && b.word.shift(pos as usize) == run {
                return false;
            }
        }
    }
    true
}

/// Automaton for the one-sided shift avoiding `forbidden`: states remember
/// the last `ℓ − 1` symbols, where `ℓ` is the longest forbidden length.
pub fn sft_automaton(forbidden: &BTreeSet<FiniteWord>) -> Dfa {
    let ell = forbidden.iter().map(FiniteWord::len).max().unwrap_or(1).max(1);
    let window = ell - 1;
    let bad: HashSet<&[u8]> = forbidden.iter().map(|w| w.bits()).collect();
    let mut index: HashMap<Vec<u8>, usize> = HashMap::from([(Vec::new(), 0)]);
    let mut states: Vec<Vec<u8>> = vec![Vec::new()];
    let mut trans = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = [None, None];
        for c in 0..2u8 {
            let mut w = states[i].clone();
            w.push(c);
            if (0..w.len()).any(|s| bad.contains(&w[s..])) {
                continue;
            }
            if w.len() > window {
                w.drain(..w.len() - window);
            }
            let n = states.len();
            let id = *index.entry(w.clone()).or_insert_with(|| {
                states.push(w);
                n
            });
            row[c as usize] = Some(id);
        }
        trans.push(row);
        i += 1;
    }
    // Live = greatest set in which every state keeps a successor.
    let mut live = vec![true; states.len()];
    loop {
        let mut changed = false;
        for q in 0..states.len() {
            if live[q] && !trans[q].iter().flatten().any(|&t| live[t]) {
                live[q] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Dfa::trimmed(&trans, &live, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> EPWord {
        s.parse().unwrap()
    }

    fn strs(set: &BTreeSet<FiniteWord>) -> Vec<String> {
        set.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn golden_mean_shift() {
        // s ⪯ (10) on suffixes starting with 1.
        let bounds = [Bound { word: w("(10)"), first: 1, lower: false, strict: false }];
        let dfa = follower(&bounds);
        assert_eq!(strs(&dfa.words(2)), ["00", "01", "10"]);
        assert_eq!(dfa.counts(6), vec![1, 2, 3, 5, 8, 13, 21]);
        let sft = sft_automaton(&BTreeSet::from(["11".parse().unwrap()]));
        assert_eq!(dfa.first_difference(&sft, 20), None);
    }

    #[test]
    fn strict_bound_on_a_single_cycle_kills_it() {
        // s ≺ (01) for 0-suffixes and s ⪯ (10) for 1-suffixes: the run (01)
        // itself is excluded, but every finite word still extends.
        let bounds = [
            Bound { word: w("(01)"), first: 0, lower: false, strict: true },
            Bound { word: w("(10)"), first: 1, lower: false, strict: false },
        ];
        let dfa = follower(&bounds);
        assert_eq!(dfa.counts(6), vec![1, 2, 3, 5, 8, 13, 21]);
        // With only the constant word allowed under a strict bound, nothing survives.
        let only = [
            Bound { word: w("(0)"), first: 0, lower: false, strict: true },
            Bound { word: w("(0)"), first: 1, lower: false, strict: false },
        ];
        assert_eq!(follower(&only).start(), None);
    }

    #[test]
    fn union_of_languages() {
        let zeros = follower(&[Bound { word: w("(0)"), first: 1, lower: false, strict: false }]);
        let ones = follower(&[Bound { word: w("(1)"), first: 0, lower: true, strict: false }]);
        let u = zeros.union(&ones);
        assert_eq!(strs(&u.words(2)), ["00", "11"]);
        assert!(u.first_difference(&zeros, 3).is_some());
    }
}
