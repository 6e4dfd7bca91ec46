//! Finite and eventually periodic binary words.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid symbol {0:?}; words are over {{0,1}}")]
    BadSymbol(char),
    #[error("malformed word {0:?}; expected pre(period)")]
    Malformed(String),
    #[error("period must be nonempty")]
    EmptyPeriod,
}

/// A finite word over `{0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FiniteWord(Vec<u8>);

impl FiniteWord {
    /// Panics on symbols other than 0 and 1.
    pub fn new(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "binary words only");
        FiniteWord(bits)
    }

    pub fn empty() -> Self {
        FiniteWord(Vec::new())
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, b: u8) {
        assert!(b <= 1);
        self.0.push(b);
    }

    pub fn star(&self) -> FiniteWord {
        FiniteWord(self.0.iter().map(|b| 1 - b).collect())
    }

    /// Substitution 0 ↦ 01, 1 ↦ 10.
    pub fn kappa_subst(&self) -> FiniteWord {
        FiniteWord(self.0.iter().flat_map(|&b| [b, 1 - b]).collect())
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FiniteWord(v)
    }

    pub fn repeat(&self, n: usize) -> FiniteWord {
        FiniteWord(self.0.repeat(n))
    }

    pub fn prefix(&self, n: usize) -> FiniteWord {
        FiniteWord(self.0[..n.min(self.0.len())].to_vec())
    }

    /// Lexicographic comparison of words of possibly different length on
    /// their common prefix only.
    pub fn cmp_common(&self, other: &[u8]) -> Ordering {
        self.0.iter().zip(other).map(|(a, b)| a.cmp(b)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
    }
}

impl From<Vec<u8>> for FiniteWord {
    fn from(v: Vec<u8>) -> Self {
        FiniteWord::new(v)
    }
}

impl From<&[u8]> for FiniteWord {
    fn from(v: &[u8]) -> Self {
        FiniteWord::new(v.to_vec())
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteWord({self})")
    }
}

fn parse_bits(s: &str) -> Result<Vec<u8>, WordError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            c => Err(WordError::BadSymbol(c)),
        })
        .collect()
}

impl FromStr for FiniteWord {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, WordError> {
        Ok(FiniteWord(parse_bits(s.trim())?))
    }
}

/// An eventually periodic infinite word `pre · per per per …`, always kept in
/// canonical form: the period is primitive and the preperiod is as short as
/// possible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EPWord {
    pre: Vec<u8>,
    per: Vec<u8>,
}

impl EPWord {
    /// Panics if `per` is empty or a symbol is not binary.
    pub fn new(pre: impl Into<Vec<u8>>, per: impl Into<Vec<u8>>) -> Self {
        Self::try_new(pre.into(), per.into()).expect("invalid eventually periodic word")
    }

    pub fn try_new(pre: Vec<u8>, per: Vec<u8>) -> Result<Self, WordError> {
        if per.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        if let Some(&b) = pre.iter().chain(&per).find(|&&b| b > 1) {
            return Err(WordError::BadSymbol(char::from(b'0' + b.min(9))));
        }
        let mut w = EPWord { pre, per };
        w.canonicalize();
        Ok(w)
    }

    pub fn periodic(per: impl Into<Vec<u8>>) -> Self {
        Self::new(Vec::new(), per)
    }

    /// The constant word `(b b b …)`.
    pub fn constant(b: u8) -> Self {
        Self::periodic(vec![b])
    }

    fn canonicalize(&mut self) {
        let n = self.per.len();
        if let Some(d) = (1..n).find(|&d| n.is_multiple_of(d) && (d..n).all(|i| self.per[i] == self.per[i - d])) {
            self.per.truncate(d);
        }
        while let Some(&last) = self.pre.last() {
            if last != *self.per.last().expect("nonempty period") {
                break;
            }
            self.pre.pop();
            self.per.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.per
    }

    pub fn is_periodic(&self) -> bool {
        self.pre.is_empty()
    }

    /// `ω_{i+1}` (zero-based index).
    pub fn symbol(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> FiniteWord {
        FiniteWord((0..n).map(|i| self.symbol(i)).collect())
    }

    /// Infinite symbol iterator.
    pub fn symbols(&self) -> impl Iterator<Item = u8> + '_ {
        self.pre.iter().copied().chain(self.per.iter().copied().cycle())
    }

    /// `σ^m(self)`.
    pub fn shift(&self, m: usize) -> EPWord {
        if m < self.pre.len() {
            EPWord { pre: self.pre[m..].to_vec(), per: self.per.clone() }
        } else {
            let mut per = self.per.clone();
            let r = (m - self.pre.len()) % per.len();
            per.rotate_left(r);
            EPWord { pre: Vec::new(), per }
        }
    }

    /// The distinct shifts `σ^0, …, σ^{|pre|+|per|-1}`.
    pub fn orbit(&self) -> impl Iterator<Item = EPWord> + '_ {
        (0..self.pre.len() + self.per.len()).map(move |m| self.shift(m))
    }

    pub fn star(&self) -> EPWord {
        EPWord {
            pre: self.pre.iter().map(|b| 1 - b).collect(),
            per: self.per.iter().map(|b| 1 - b).collect(),
        }
    }

    /// `u · self`.
    pub fn prepend(&self, u: &[u8]) -> EPWord {
        let mut pre = u.to_vec();
        pre.extend_from_slice(&self.pre);
        EPWord::new(pre, self.per.clone())
    }

    /// Number of symbols after which both words are jointly periodic, plus one.
    pub fn scan_bound(&self, other: &EPWord) -> usize {
        self.pre.len() + other.pre.len() + self.per.len().lcm(&other.per.len()) + 1
    }

    /// Compares `σ^i(self)` with `σ^j(other)` without materializing shifts.
    pub fn cmp_shifted(&self, i: usize, other: &EPWord, j: usize) -> Ordering {
        for k in 0..self.scan_bound(other) {
            match self.symbol(i + k).cmp(&other.symbol(j + k)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl Ord for EPWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_shifted(0, other, 0)
    }
}

impl PartialOrd for EPWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.pre {
            write!(f, "{b}")?;
        }
        write!(f, "(")?;
        for b in &self.per {
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for EPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EPWord({self})")
    }
}

impl FromStr for EPWord {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, WordError> {
        let s = s.trim();
        let malformed = || WordError::Malformed(s.to_string());
        let (pre, rest) = s.split_once('(').ok_or_else(malformed)?;
        let per = rest.strip_suffix(')').ok_or_else(malformed)?;
        if per.contains(['(', ')']) {
            return Err(malformed());
        }
        EPWord::try_new(parse_bits(pre)?, parse_bits(per)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> EPWord {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(w("0(10)"), w("(01)"));
        assert!(w("0(10)").is_periodic());
        assert_eq!(w("(0101)").to_string(), "(01)");
        assert_eq!(w("100(10)").to_string(), "10(01)");
        assert!(!w("100(10)").is_periodic());
        assert_eq!(w("1(0)").to_string(), "1(0)");
        assert!("()".parse::<EPWord>().is_err());
        assert!("10".parse::<EPWord>().is_err());
        assert!("1(2)".parse::<EPWord>().is_err());
    }

    #[test]
    fn shifts() {
        assert_eq!(w("100(10)").shift(1), w("00(10)"));
        assert_eq!(w("(0110)").shift(4), w("(0110)"));
        assert_eq!(w("100(10)").shift(3), w("(10)"));
        assert_eq!(w("100(10)").shift(4), w("(01)"));
    }

    #[test]
    fn lex_order() {
        assert_eq!(w("(01)").cmp(&w("(0110)")), Ordering::Less);
        assert_eq!(w("(0110)").cmp(&w("(0110)")), Ordering::Equal);
        assert_eq!(w("(10)").cmp(&w("100(10)")), Ordering::Greater);
    }

    #[test]
    fn star_and_kappa() {
        assert_eq!(w("(011)").star(), w("(100)"));
        assert_eq!("0110".parse::<FiniteWord>().unwrap().star().to_string(), "1001");
        let k = |s: &str| s.parse::<FiniteWord>().unwrap().kappa_subst().to_string();
        assert_eq!(k("01"), "0110");
        assert_eq!(k(""), "");
        assert_eq!(k("1"), "10");
    }

    fn arb_word() -> impl Strategy<Value = EPWord> {
        (prop::collection::vec(0u8..2, 0..6), prop::collection::vec(0u8..2, 1..6))
            .prop_map(|(pre, per)| EPWord::new(pre, per))
    }

    proptest! {
        #[test]
        fn canonicalization_idempotent(u in arb_word()) {
            let again = EPWord::new(u.preperiod().to_vec(), u.period().to_vec());
            prop_assert_eq!(&again, &u);
            prop_assert_eq!(u.to_string().parse::<EPWord>().unwrap(), u);
        }

        #[test]
        fn canonical_equality_is_sequence_equality(u in arb_word(), v in arb_word()) {
            let n = 4 * (u.preperiod().len() + v.preperiod().len() + u.period().len() * v.period().len());
            prop_assert_eq!(u == v, u.prefix(n) == v.prefix(n));
        }

        #[test]
        fn lex_matches_long_expansion(u in arb_word(), v in arb_word()) {
            let n = 4 * (u.preperiod().len() + v.preperiod().len() + u.period().len().lcm(&v.period().len()));
            prop_assert_eq!(u.cmp(&v), u.prefix(n).bits().cmp(v.prefix(n).bits()));
        }

        #[test]
        fn star_reverses_order(u in arb_word(), v in arb_word()) {
            prop_assert_eq!(u.cmp(&v), v.star().cmp(&u.star()));
            prop_assert_eq!(u.star().star(), u);
        }

        #[test]
        fn shift_composes(u in arb_word(), a in 0usize..12, b in 0usize..12) {
            prop_assert_eq!(u.shift(a + b), u.shift(a).shift(b));
        }

        #[test]
        fn kappa_commutes_with_star(bits in prop::collection::vec(0u8..2, 0..20)) {
            let f = FiniteWord::new(bits);
            prop_assert_eq!(f.star().kappa_subst(), f.kappa_subst().star());
        }
    }
}
