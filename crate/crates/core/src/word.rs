//! Words over the ordered alphabet `X < Y`, Lyndon words and bidegrees.
//!
//! A word is packed into a `u64`: the leftmost letter is the most significant
//! of the `len` low bits, `X = 0`, `Y = 1`. Two words of equal length then
//! compare lexicographically exactly as their integers compare.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Longest word the packed representation holds.
pub const MAX_WORD_LEN: usize = 63;

/// A pair of integer coordinates `(m1, m2)`; total degree is `m1 + m2`.
///
/// The derived order is lexicographic in `(m1, m2)`. Callers that want the
/// total-degree-first order use [`MultiDegree::total_then_first`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree {
    pub m1: i64,
    pub m2: i64,
}

impl MultiDegree {
    pub const ZERO: MultiDegree = MultiDegree { m1: 0, m2: 0 };
    pub const X: MultiDegree = MultiDegree { m1: 1, m2: 0 };
    pub const Y: MultiDegree = MultiDegree { m1: 0, m2: 1 };
    pub const XY: MultiDegree = MultiDegree { m1: 1, m2: 1 };

    pub const fn new(m1: i64, m2: i64) -> Self {
        MultiDegree { m1, m2 }
    }

    pub fn total(self) -> i64 {
        self.m1 + self.m2
    }

    pub fn is_nonnegative(self) -> bool {
        self.m1 >= 0 && self.m2 >= 0
    }

    /// Both coordinates strictly positive.
    pub fn is_positive(self) -> bool {
        self.m1 > 0 && self.m2 > 0
    }

    /// Sort key `(|m|, m1)`.
    pub fn total_then_first(self) -> (i64, i64) {
        (self.total(), self.m1)
    }

    /// Nonnegative and not `(0, 0)`: the bidegrees of nonzero components of
    /// the free Lie algebra on `x`, `y`.
    pub(crate) fn check_lie_degree(self) -> Result<()> {
        if !self.is_nonnegative() || self == MultiDegree::ZERO {
            return Err(Error::domain(format!(
                "bidegree {self} must have nonnegative coordinates, not both zero"
            )));
        }
        Ok(())
    }

    /// All nonnegative bidegrees of total degree `n`, ordered by `m1`.
    pub fn with_total(n: i64) -> impl Iterator<Item = MultiDegree> {
        (0..=n.max(-1)).map(move |a| MultiDegree::new(a, n - a))
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m1, self.m2)
    }
}

impl FromStr for MultiDegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = trimmed.split(',').map(str::trim);
        let parse = |p: Option<&str>| -> Result<i64> {
            p.ok_or_else(|| Error::domain(format!("expected `m1,m2`, got `{s}`")))?
                .parse::<i64>()
                .map_err(|e| Error::domain(format!("bad coordinate in `{s}`: {e}")))
        };
        let m1 = parse(parts.next())?;
        let m2 = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::domain(format!("expected two coordinates, got `{s}`")));
        }
        Ok(MultiDegree::new(m1, m2))
    }
}

impl Add for MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: Self) -> Self {
        MultiDegree::new(self.m1 + rhs.m1, self.m2 + rhs.m2)
    }
}

impl Sub for MultiDegree {
    type Output = MultiDegree;
    fn sub(self, rhs: Self) -> Self {
        MultiDegree::new(self.m1 - rhs.m1, self.m2 - rhs.m2)
    }
}

impl Neg for MultiDegree {
    type Output = MultiDegree;
    fn neg(self) -> Self {
        MultiDegree::new(-self.m1, -self.m2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

/// A nonempty word over `{X, Y}` of length at most [`MAX_WORD_LEN`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    bits: u64,
    len: u8,
}

fn low_mask(len: usize) -> u64 {
    if len == 0 {
        0
    } else {
        u64::MAX >> (64 - len)
    }
}

impl Word {
    pub fn letter(l: Letter) -> Self {
        Word {
            bits: matches!(l, Letter::Y) as u64,
            len: 1,
        }
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Self> {
        if letters.is_empty() || letters.len() > MAX_WORD_LEN {
            return Err(Error::domain(format!(
                "word length {} outside 1..={MAX_WORD_LEN}",
                letters.len()
            )));
        }
        let bits = letters
            .iter()
            .fold(0u64, |acc, l| (acc << 1) | matches!(l, Letter::Y) as u64);
        Ok(Word {
            bits,
            len: letters.len() as u8,
        })
    }

    pub(crate) fn from_raw(bits: u64, len: usize) -> Self {
        debug_assert!((1..=MAX_WORD_LEN).contains(&len));
        debug_assert_eq!(bits & !low_mask(len), 0);
        Word {
            bits,
            len: len as u8,
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letter_at(&self, i: usize) -> Letter {
        if (self.bits >> (self.len() - 1 - i)) & 1 == 0 {
            Letter::X
        } else {
            Letter::Y
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(|i| self.letter_at(i))
    }

    /// `(#X, #Y)`.
    pub fn bidegree(&self) -> MultiDegree {
        let ys = self.bits.count_ones() as i64;
        MultiDegree::new(self.len as i64 - ys, ys)
    }

    /// Concatenation; `None` when the result would exceed [`MAX_WORD_LEN`].
    pub fn concat(&self, other: &Word) -> Option<Word> {
        let len = self.len() + other.len();
        (len <= MAX_WORD_LEN).then(|| Word::from_raw((self.bits << other.len) | other.bits, len))
    }

    /// The first `n` letters, `1 <= n <= len`.
    pub fn prefix(&self, n: usize) -> Word {
        Word::from_raw(self.bits >> (self.len() - n), n)
    }

    /// The word with its first `n` letters removed, `n < len`.
    pub fn suffix_from(&self, n: usize) -> Word {
        let len = self.len() - n;
        Word::from_raw(self.bits & low_mask(len), len)
    }

    /// Cyclic rotation moving the first `n` letters to the end.
    pub fn rotate(&self, n: usize) -> Word {
        let n = n % self.len();
        if n == 0 {
            return *self;
        }
        let len = self.len();
        let bits = ((self.bits << n) | (self.bits >> (len - n))) & low_mask(len);
        Word::from_raw(bits, len)
    }

    /// Strictly smaller than every proper rotation.
    pub fn is_lyndon(&self) -> bool {
        (1..self.len()).all(|i| self.rotate(i).bits > self.bits)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len.min(other.len);
        let a = self.bits >> (self.len - common);
        let b = other.bits >> (other.len - common);
        a.cmp(&b).then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            f.write_str(match l {
                Letter::X => "X",
                Letter::Y => "Y",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| match c {
                'X' | 'x' => Ok(Letter::X),
                'Y' | 'y' => Ok(Letter::Y),
                other => Err(Error::domain(format!("letter `{other}` not in {{X, Y}}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Word::from_letters(&letters)
    }
}

/// A Lyndon word; labels one element of the Lyndon basis of the free Lie
/// algebra through its standard bracketing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonWord(Word);

impl LyndonWord {
    pub const fn x() -> Self {
        LyndonWord(Word { bits: 0, len: 1 })
    }

    pub const fn y() -> Self {
        LyndonWord(Word { bits: 1, len: 1 })
    }

    pub fn new(word: Word) -> Result<Self> {
        if word.is_lyndon() {
            Ok(LyndonWord(word))
        } else {
            Err(Error::domain(format!("`{word}` is not a Lyndon word")))
        }
    }

    pub(crate) fn new_unchecked(word: Word) -> Self {
        debug_assert!(word.is_lyndon(), "{word} is not Lyndon");
        LyndonWord(word)
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_letter(&self) -> bool {
        self.0.len() == 1
    }

    pub fn bidegree(&self) -> MultiDegree {
        self.0.bidegree()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.len() as i64
    }

    /// `(u, v)` with `v` the longest proper Lyndon suffix; both parts are
    /// Lyndon and `u < v`. `None` for single letters.
    pub fn standard_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        (1..self.len()).find_map(|i| {
            let v = self.0.suffix_from(i);
            v.is_lyndon()
                .then(|| (LyndonWord(self.0.prefix(i)), LyndonWord(v)))
        })
    }
}

impl LyndonWord {
    /// The standard bracketing, e.g. `[x,[x,y]]` for `XXY`.
    pub fn bracketing(&self) -> String {
        match self.standard_factorization() {
            None if *self == LyndonWord::x() => "x".to_string(),
            None => "y".to_string(),
            Some((u, v)) => format!("[{},{}]", u.bracketing(), v.bracketing()),
        }
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for LyndonWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LyndonWord::new(s.parse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn lexicographic_order_with_prefixes() {
        assert!(w("X") < w("XY"));
        assert!(w("XY") < w("Y"));
        assert!(w("XXY") < w("XY"));
        assert!(w("XYY") > w("XY"));
        assert_eq!(w("XYX").cmp(&w("XYX")), Ordering::Equal);
    }

    #[test]
    fn lyndon_membership() {
        for s in ["X", "Y", "XY", "XXY", "XYY", "XXYY", "XXYXY"] {
            assert!(w(s).is_lyndon(), "{s}");
        }
        for s in ["YX", "XYXY", "XX", "YXY", "XYX"] {
            assert!(!w(s).is_lyndon(), "{s}");
        }
    }

    #[test]
    fn standard_factorizations() {
        let f = |s: &str| {
            let (u, v) = s.parse::<LyndonWord>().unwrap().standard_factorization().unwrap();
            (u.to_string(), v.to_string())
        };
        assert_eq!(f("XY"), ("X".into(), "Y".into()));
        assert_eq!(f("XXY"), ("X".into(), "XY".into()));
        assert_eq!(f("XYY"), ("XY".into(), "Y".into()));
        assert_eq!(f("XXYY"), ("X".into(), "XYY".into()));
        assert_eq!(f("XXYXY"), ("XXY".into(), "XY".into()));
        assert!(LyndonWord::x().standard_factorization().is_none());
    }

    #[test]
    fn bracketings() {
        let b = |s: &str| s.parse::<LyndonWord>().unwrap().bracketing();
        assert_eq!(b("Y"), "y");
        assert_eq!(b("XXY"), "[x,[x,y]]");
        assert_eq!(b("XXYXY"), "[[x,[x,y]],[x,y]]");
    }

    #[test]
    fn bidegree_counts_letters() {
        assert_eq!(w("XXYXY").bidegree(), MultiDegree::new(3, 2));
        assert_eq!(w("YYY").bidegree(), MultiDegree::new(0, 3));
    }

    #[test]
    fn rotation_and_slicing() {
        let word = w("XXYXY");
        assert_eq!(word.rotate(2).to_string(), "YXYXX");
        assert_eq!(word.prefix(3).to_string(), "XXY");
        assert_eq!(word.suffix_from(3).to_string(), "XY");
        assert_eq!(word.concat(&w("Y")).unwrap().to_string(), "XXYXYY");
    }

    #[test]
    fn parsing_rejects_bad_input() {
        assert!("XZ".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
        assert!("YX".parse::<LyndonWord>().is_err());
        assert_eq!("(3, -1)".parse::<MultiDegree>().unwrap(), MultiDegree::new(3, -1));
        assert!("1,2,3".parse::<MultiDegree>().is_err());
    }
}
