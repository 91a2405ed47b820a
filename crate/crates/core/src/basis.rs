//! Lyndon bases and graded dimensions of the free Lie algebra on `x`, `y`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::word::{LyndonWord, MultiDegree, Word, MAX_WORD_LEN};

/// Möbius function.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius is defined on positive integers");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub(crate) fn divisors(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

fn to_u64(v: BigInt, what: &str) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::domain(format!("{what} does not fit in 64 bits")))
}

/// Dimension of the bidegree-`(p, q)` component: the number of Lyndon words
/// with `p` letters `X` and `q` letters `Y`, via Möbius inversion.
pub fn witt_dim(bidegree: MultiDegree) -> Result<u64> {
    bidegree.check_lie_degree()?;
    let (p, q) = (bidegree.m1 as u64, bidegree.m2 as u64);
    let n = p + q;
    let g = p.gcd(&q);
    let sum: BigInt = divisors(g)
        .map(|d| mobius(d) * binomial(n / d, p / d))
        .sum();
    let (quot, rem) = sum.div_rem(&BigInt::from(n));
    if !rem.is_zero() {
        return Err(Error::InternalConsistency(format!(
            "Witt sum at {bidegree} not divisible by {n}"
        )));
    }
    to_u64(quot, "witt_dim")
}

/// The classical single-graded Witt number `(1/m) Σ_{d|m} μ(d) 2^{m/d}`.
pub fn classical_witt(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::domain("classical Witt number needs m >= 1"));
    }
    let sum: BigInt = divisors(m)
        .map(|d| mobius(d) * (BigInt::from(1) << (m / d)))
        .sum();
    to_u64(sum / BigInt::from(m), "classical_witt")
}

/// `dim L^m / L^{m+1}` for the lower central series: the sum of the
/// bidegree components of total degree `m`.
pub fn lcs_dim(m: i64) -> Result<u64> {
    if m <= 0 {
        return Err(Error::domain(format!("lower central series index {m} must be >= 1")));
    }
    MultiDegree::with_total(m).map(witt_dim).sum()
}

/// All Lyndon words with letter content `bidegree`, in lexicographic order.
pub fn lyndon_basis(bidegree: MultiDegree) -> Result<Vec<LyndonWord>> {
    bidegree.check_lie_degree()?;
    let total = bidegree.total() as usize;
    if total > MAX_WORD_LEN {
        return Err(Error::domain(format!(
            "total degree {total} exceeds the word length limit {MAX_WORD_LEN}"
        )));
    }
    let mut out = Vec::new();
    let mut search = LyndonSearch {
        xs: bidegree.m1 as usize,
        ys: bidegree.m2 as usize,
        out: &mut out,
    };
    search.extend(0, 0, 1, 0, 0);
    out.sort();
    Ok(out)
}

/// Prenecklace tree walk (Fredricksen–Kessler–Maiorana) restricted to a
/// fixed letter content.
struct LyndonSearch<'a> {
    xs: usize,
    ys: usize,
    out: &'a mut Vec<LyndonWord>,
}

impl LyndonSearch<'_> {
    fn extend(&mut self, bits: u64, len: usize, period: usize, xs: usize, ys: usize) {
        if xs == self.xs && ys == self.ys {
            if period == len {
                self.out
                    .push(LyndonWord::new_unchecked(Word::from_raw(bits, len)));
            }
            return;
        }
        let floor = if len == 0 {
            0
        } else {
            (bits >> (period - 1)) & 1
        };
        for letter in floor..=1 {
            let (nx, ny) = if letter == 0 { (xs + 1, ys) } else { (xs, ys + 1) };
            if nx > self.xs || ny > self.ys {
                continue;
            }
            let next_period = if len == 0 || letter == floor { period } else { len + 1 };
            self.extend((bits << 1) | letter, len + 1, next_period, nx, ny);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[LyndonWord]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn small_bases() {
        assert_eq!(names(&lyndon_basis(MultiDegree::new(1, 1)).unwrap()), ["XY"]);
        assert_eq!(names(&lyndon_basis(MultiDegree::new(2, 2)).unwrap()), ["XXYY"]);
        assert_eq!(names(&lyndon_basis(MultiDegree::new(2, 1)).unwrap()), ["XXY"]);
        assert_eq!(names(&lyndon_basis(MultiDegree::new(1, 0)).unwrap()), ["X"]);
        assert_eq!(
            names(&lyndon_basis(MultiDegree::new(3, 2)).unwrap()),
            ["XXXYY", "XXYXY"]
        );
        assert!(lyndon_basis(MultiDegree::new(3, 0)).unwrap().is_empty());
    }

    #[test]
    fn witt_values() {
        assert_eq!(witt_dim(MultiDegree::new(1, 0)).unwrap(), 1);
        assert_eq!(witt_dim(MultiDegree::new(3, 3)).unwrap(), 3);
        assert_eq!(witt_dim(MultiDegree::new(2, 4)).unwrap(), 2);
        assert_eq!(witt_dim(MultiDegree::new(5, 0)).unwrap(), 0);
        assert_eq!(witt_dim(MultiDegree::new(7, 7)).unwrap(), 245);
    }

    #[test]
    fn invalid_bidegrees() {
        for bad in [MultiDegree::ZERO, MultiDegree::new(-1, 3), MultiDegree::new(2, -2)] {
            assert!(matches!(witt_dim(bad), Err(Error::Domain(_))));
            assert!(matches!(lyndon_basis(bad), Err(Error::Domain(_))));
        }
        assert!(lcs_dim(0).is_err());
        assert!(lcs_dim(-3).is_err());
    }

    #[test]
    fn lower_central_layers() {
        assert_eq!(lcs_dim(1).unwrap(), 2);
        assert_eq!(lcs_dim(2).unwrap(), 1);
        assert_eq!(lcs_dim(5).unwrap(), 6);
    }

    #[test]
    fn mobius_values() {
        let got: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(got, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }
}
