//! Elements of the free Lie algebra on `x`, `y` in the Lyndon basis, and the
//! truncated algebra `p / L^{N+1} p` with a memoized bracket table.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::word::{LyndonWord, MultiDegree, MAX_WORD_LEN};

pub type Scalar = BigRational;

pub const DEFAULT_TRUNCATION: u32 = 14;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn fmt_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// A finite rational combination of Lyndon basis elements.
///
/// Zero coefficients are never stored. The optional degree tag, when set,
/// is the common bidegree of every stored word.
#[derive(Clone, Default)]
pub struct LieElement {
    terms: BTreeMap<LyndonWord, Scalar>,
    degree: Option<MultiDegree>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    /// The zero element, tagged homogeneous of `degree`.
    pub fn zero_of(degree: MultiDegree) -> Self {
        LieElement {
            terms: BTreeMap::new(),
            degree: Some(degree),
        }
    }

    /// The standard bracketing of a Lyndon word.
    pub fn basis(word: LyndonWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(word, Scalar::one());
        LieElement {
            terms,
            degree: Some(word.bidegree()),
        }
    }

    pub fn x() -> Self {
        LieElement::basis(LyndonWord::x())
    }

    pub fn y() -> Self {
        LieElement::basis(LyndonWord::y())
    }

    /// Builds an element from `(word, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (LyndonWord, Scalar)>,
    {
        let mut out = LieElement::zero();
        let mut tag: Option<Option<MultiDegree>> = None;
        for (w, c) in terms {
            let d = w.bidegree();
            tag = Some(match tag {
                None => Some(d),
                Some(Some(t)) if t == d => Some(t),
                Some(_) => None,
            });
            out.add_term_raw(w, c);
        }
        out.degree = tag.flatten();
        out.retag();
        out
    }

    /// Linear combination of the listed basis words.
    pub fn combination(words: &[LyndonWord], coefficients: &[Scalar]) -> Self {
        assert_eq!(words.len(), coefficients.len());
        LieElement::from_terms(words.iter().copied().zip(coefficients.iter().cloned()))
    }

    fn add_term_raw(&mut self, w: LyndonWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Drops the degree tag if some stored word contradicts it.
    fn retag(&mut self) {
        if let Some(d) = self.degree {
            if self.terms.keys().any(|w| w.bidegree() != d) {
                self.degree = None;
            }
        }
    }

    pub fn add_term(&mut self, w: LyndonWord, c: Scalar) {
        if let Some(d) = self.degree {
            if w.bidegree() != d && !c.is_zero() {
                self.degree = None;
            }
        }
        self.add_term_raw(w, c);
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &LieElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        if self.degree != other.degree {
            self.degree = match (self.degree, other.degree) {
                (None, d) if self.terms.is_empty() => d,
                (d, _) if other.terms.is_empty() => d,
                _ => None,
            };
        }
        for (w, v) in &other.terms {
            self.add_term_raw(*w, v * c);
        }
        self.retag();
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return LieElement {
                terms: BTreeMap::new(),
                degree: self.degree,
            };
        }
        LieElement {
            terms: self.terms.iter().map(|(w, v)| (*w, v * c)).collect(),
            degree: self.degree,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &LyndonWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LyndonWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The homogeneity tag.
    pub fn degree(&self) -> Option<MultiDegree> {
        self.degree
    }

    /// The bidegree shared by all stored words, if there is exactly one.
    pub fn homogeneous_degree(&self) -> Option<MultiDegree> {
        let mut it = self.terms.keys().map(LyndonWord::bidegree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn max_total_degree(&self) -> Option<i64> {
        self.terms.keys().map(LyndonWord::total_degree).max()
    }

    /// Coefficients against an ordered list of basis words. Words not in
    /// `basis` must not occur.
    pub fn coordinates(&self, basis: &[LyndonWord]) -> Result<Vec<Scalar>> {
        let index: HashMap<LyndonWord, usize> =
            basis.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let mut out = vec![Scalar::zero(); basis.len()];
        for (w, c) in &self.terms {
            let i = index.get(w).ok_or_else(|| {
                Error::InternalConsistency(format!("word {w} outside the expected basis"))
            })?;
            out[*i] = c.clone();
        }
        Ok(out)
    }

    /// Drops every term of total degree above `n`.
    pub fn truncated(&self, n: i64) -> Self {
        LieElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.total_degree() <= n)
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
            degree: self.degree,
        }
    }
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for LieElement {}

impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scaled(&-Scalar::one())
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mag = fmt_scalar(&c.abs());
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{mag}*{w}")?,
                (0, true) => write!(f, "-{mag}*{w}")?,
                (_, false) => write!(f, " + {mag}*{w}")?,
                (_, true) => write!(f, " - {mag}*{w}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Deliberate bracket corruption used as a negative control by the
/// verification suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketFault {
    /// Flips the sign of `[x, w]` whenever `w` has length at least two.
    FlipXWithLong,
}

/// The truncated free Lie algebra `p / L^{N+1} p` on `x`, `y`.
///
/// Brackets of basis words are normalized by recursion on the standard
/// factorization and cached. The cache is shared between threads; a
/// concurrent fill of the same entry stores identical values.
pub struct FreeLie {
    truncation: u32,
    table: RwLock<HashMap<(LyndonWord, LyndonWord), Arc<LieElement>>>,
    fault: Option<BracketFault>,
}

impl fmt::Debug for FreeLie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeLie")
            .field("truncation", &self.truncation)
            .field("cached", &self.table.read().len())
            .field("fault", &self.fault)
            .finish()
    }
}

impl Default for FreeLie {
    fn default() -> Self {
        FreeLie::new(DEFAULT_TRUNCATION).expect("default truncation is valid")
    }
}

impl FreeLie {
    pub fn new(truncation: u32) -> Result<Self> {
        if truncation == 0 || truncation as usize > MAX_WORD_LEN {
            return Err(Error::domain(format!(
                "truncation {truncation} outside 1..={MAX_WORD_LEN}"
            )));
        }
        Ok(FreeLie {
            truncation,
            table: RwLock::new(HashMap::new()),
            fault: None,
        })
    }

    /// A copy of the algebra whose bracket is deliberately wrong.
    pub fn with_fault(truncation: u32, fault: BracketFault) -> Result<Self> {
        let mut lie = FreeLie::new(truncation)?;
        lie.fault = Some(fault);
        Ok(lie)
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Fails unless total degree `needed` survives the truncation.
    pub fn check_degree(&self, needed: i64) -> Result<()> {
        if needed > self.truncation as i64 {
            Err(Error::Truncation {
                needed,
                truncation: self.truncation,
            })
        } else {
            Ok(())
        }
    }

    pub fn cached_brackets(&self) -> usize {
        self.table.read().len()
    }

    /// `[x, y]`.
    pub fn z(&self) -> LieElement {
        self.bracket(&LieElement::x(), &LieElement::y())
    }

    /// `ad(z)(e) = [z, e]`.
    pub fn ad_z(&self, e: &LieElement) -> LieElement {
        self.bracket(&self.z(), e)
    }

    /// The Lie bracket in the truncated algebra; terms above the truncation
    /// vanish.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let mut out = match (a.degree, b.degree) {
            (Some(da), Some(db)) => LieElement::zero_of(da + db),
            _ => LieElement::zero(),
        };
        for (u, cu) in &a.terms {
            for (v, cv) in &b.terms {
                let mut c = cu * cv;
                if self.fault == Some(BracketFault::FlipXWithLong) {
                    let flip = |p: &LyndonWord, q: &LyndonWord| *p == LyndonWord::x() && q.len() >= 2;
                    if flip(u, v) || flip(v, u) {
                        c = -c;
                    }
                }
                let uv = self.bracket_words(*u, *v);
                for (w, cw) in &uv.terms {
                    out.add_term_raw(*w, cw * &c);
                }
            }
        }
        out
    }

    /// `[P(u), P(v)]` in the Lyndon basis.
    pub fn bracket_words(&self, u: LyndonWord, v: LyndonWord) -> Arc<LieElement> {
        let degree = u.bidegree() + v.bidegree();
        if u == v || degree.total() > self.truncation as i64 {
            return Arc::new(LieElement::zero_of(degree));
        }
        if u > v {
            return Arc::new(-&*self.bracket_words(v, u));
        }
        if let Some(hit) = self.table.read().get(&(u, v)) {
            return Arc::clone(hit);
        }
        let result = Arc::new(self.rewrite(u, v, degree));
        self.table
            .write()
            .entry((u, v))
            .or_insert_with(|| Arc::clone(&result));
        result
    }

    /// Normal form of `[P(u), P(v)]` for Lyndon `u < v`. When `u` is a letter
    /// or the right factor `u2` of `u = (u1, u2)` satisfies `u2 >= v`, the
    /// pair is the standard factorization of the Lyndon word `uv`. Otherwise
    /// Jacobi gives `[[u1, u2], v] = [u1, [u2, v]] - [u2, [u1, v]]`.
    fn rewrite(&self, u: LyndonWord, v: LyndonWord, degree: MultiDegree) -> LieElement {
        let direct = match u.standard_factorization() {
            None => true,
            Some((_, u2)) => u2 >= v,
        };
        if direct {
            let uv = u
                .word()
                .concat(v.word())
                .expect("truncation keeps words within the packed length");
            return LieElement::basis(LyndonWord::new_unchecked(uv));
        }
        let (u1, u2) = u.standard_factorization().expect("checked above");
        let mut out = LieElement::zero_of(degree);
        let left = self.bracket_basis_with(u1, &self.bracket_words(u2, v));
        let right = self.bracket_basis_with(u2, &self.bracket_words(u1, v));
        out.add_scaled(&left, &Scalar::one());
        out.add_scaled(&right, &-Scalar::one());
        out
    }

    fn bracket_basis_with(&self, u: LyndonWord, e: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (w, c) in &e.terms {
            out.add_scaled(&self.bracket_words(u, *w), c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lw(s: &str) -> LyndonWord {
        s.parse().unwrap()
    }

    fn b(s: &str) -> LieElement {
        LieElement::basis(lw(s))
    }

    #[test]
    fn elementary_brackets() {
        let lie = FreeLie::default();
        assert!(lie.bracket(&LieElement::x(), &LieElement::x()).is_zero());
        assert_eq!(lie.bracket(&LieElement::x(), &LieElement::y()), b("XY"));
        assert_eq!(lie.bracket(&b("XY"), &LieElement::x()), -&b("XXY"));
        assert_eq!(lie.bracket(&LieElement::x(), &b("XYY")), b("XXYY"));
        assert_eq!(lie.bracket(&b("XXY"), &LieElement::y()), b("XXYY"));
    }

    #[test]
    fn bracket_tags_add() {
        let lie = FreeLie::default();
        let e = lie.bracket(&b("XXY"), &b("XY"));
        assert_eq!(e.degree(), Some(MultiDegree::new(3, 2)));
        assert_eq!(e.homogeneous_degree(), Some(MultiDegree::new(3, 2)));
    }

    #[test]
    fn truncation_kills_high_degrees() {
        let lie = FreeLie::new(3).unwrap();
        assert!(lie.bracket(&b("XY"), &b("XY")).is_zero());
        assert!(lie.bracket(&b("XY"), &b("XXY")).is_zero());
        assert!(!lie.bracket(&b("XY"), &LieElement::y()).is_zero());
        assert!(matches!(lie.check_degree(4), Err(Error::Truncation { .. })));
        assert!(FreeLie::new(0).is_err());
    }

    #[test]
    fn tags_follow_content() {
        let mut e = b("XY");
        e.add_term(lw("XXY"), scalar(2));
        assert_eq!(e.degree(), None);
        let f = LieElement::from_terms([(lw("XXY"), scalar(1)), (lw("XXY"), scalar(-1))]);
        assert!(f.is_zero());
        let g = &b("XXY") + &b("XXY");
        assert_eq!(g.degree(), Some(MultiDegree::new(2, 1)));
        assert_eq!(g.to_string(), "2*XXY");
        assert_eq!((&b("XXY") - &b("XYY").scaled(&scalar(3))).to_string(), "1*XXY - 3*XYY");
    }

    #[test]
    fn display_fractions() {
        let e = LieElement::from_terms([(lw("XY"), Scalar::new(BigInt::from(-1), BigInt::from(2)))]);
        assert_eq!(e.to_string(), "-1/2*XY");
        assert_eq!(LieElement::zero().to_string(), "0");
    }
}
