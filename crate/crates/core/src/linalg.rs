//! Fraction-free (Bareiss) elimination over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Scales each row by the lcm of its denominators; rank and kernel are
    /// unchanged.
    pub fn from_rational_rows(rows: &[Vec<BigRational>]) -> Self {
        let data = rows
            .iter()
            .map(|row| {
                let l = row
                    .iter()
                    .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter()
                    .map(|q| q.numer() * (&l / q.denom()))
                    .collect()
            })
            .collect();
        IntMatrix::from_rows_with_cols(data, rows.first().map_or(0, Vec::len))
    }

    fn from_rows_with_cols(data: Vec<Vec<BigInt>>, cols: usize) -> Self {
        IntMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r][c] = v;
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Row echelon form produced by Bareiss elimination. Row `i` has its
/// leading nonzero entry in column `pivots[i]`.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub cols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<BigInt>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A kernel basis, one primitive integer vector per non-pivot column,
    /// with that column's entry positive and every other non-pivot entry
    /// zero. Ordered by the free column.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| self.kernel_vector(free))
            .collect()
    }

    fn kernel_vector(&self, free: usize) -> Vec<BigInt> {
        let mut x = vec![BigRational::zero(); self.cols];
        x[free] = BigRational::one();
        for (row, &p) in self.rows.iter().zip(&self.pivots).rev() {
            let s: BigRational = ((p + 1)..self.cols)
                .filter(|&j| !row[j].is_zero() && !x[j].is_zero())
                .map(|j| &x[j] * BigRational::from_integer(row[j].clone()))
                .sum();
            x[p] = -s / BigRational::from_integer(row[p].clone());
        }
        primitive(&x)
    }
}

/// Clears denominators and divides out the content; signs are kept.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|a| a / &g).collect()
}

/// Bareiss elimination with column skipping. Every intermediate entry is a
/// minor of the input, so each division is exact.
pub fn echelon(m: &IntMatrix) -> Echelon {
    let mut a = m.data.clone();
    let (nrows, ncols) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // Smallest nonzero candidate keeps intermediate entries short.
        let Some(p) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in (c + 1)..ncols {
                let mut v = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                if !prev.is_one() && !v.is_zero() {
                    v = exact_div(&v, &prev);
                }
                row[j] = v;
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon {
        cols: ncols,
        pivots,
        rows: a,
    }
}

fn exact_div(v: &BigInt, d: &BigInt) -> BigInt {
    let (q, rem) = v.div_rem(d);
    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
    q
}

pub fn rank(m: &IntMatrix) -> usize {
    echelon(m).rank()
}

/// Rank over `Z/pZ` for a prime `p < 2^31`. Never exceeds the rational
/// rank; equal to it for all but finitely many primes.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .data
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    let r = v.mod_floor(&pb);
                    r.iter_u64_digits().next().unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let (nrows, ncols) = (m.rows, m.cols);
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = mod_pow(a[r][c], p - 2, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = row[c] * inv % p;
            for j in c..ncols {
                row[j] = (row[j] + p - f * pivot_row[j] % p) % p;
            }
        }
        r += 1;
    }
    r
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// True when `v` is in the row space spanned by `rows` over the rationals.
pub fn in_span(rows: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let base = rank(&IntMatrix::from_rows_with_cols(rows.to_vec(), v.len()));
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank(&IntMatrix::from_rows_with_cols(ext, v.len())) == base
}

/// Dimension of the sum of the row spaces of `a` and `b`.
pub fn joint_rank(a: &[Vec<BigInt>], b: &[Vec<BigInt>], cols: usize) -> usize {
    let rows: Vec<Vec<BigInt>> = a.iter().chain(b).cloned().collect();
    rank(&IntMatrix::from_rows_with_cols(rows, cols))
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_and_kernel_of_small_matrix() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let e = echelon(&m);
        assert_eq!(e.rank(), 2);
        let k = e.kernel();
        assert_eq!(k, vec![ints(&[-1, -1, 1])]);
        assert!(is_zero_vec(&m.mul_vec(&k[0])));
    }

    #[test]
    fn column_skipping() {
        let m = mat(&[&[0, 2, 4, 1], &[0, 1, 2, 0], &[0, 3, 6, 1]]);
        let e = echelon(&m);
        assert_eq!(e.pivots, vec![1, 3]);
        for v in e.kernel() {
            assert!(is_zero_vec(&m.mul_vec(&v)));
        }
        assert_eq!(e.kernel().len(), 2);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let m = mat(&[&[2, 1], &[1, 3]]);
        assert_eq!(rank(&m), 2);
        assert!(echelon(&m).kernel().is_empty());
        assert_eq!(rank_mod_p(&m, 5), 1);
        assert_eq!(rank_mod_p(&m, 1_000_003), 2);
    }

    #[test]
    fn empty_shapes() {
        assert_eq!(rank(&IntMatrix::zeros(0, 3)), 0);
        assert_eq!(echelon(&IntMatrix::zeros(0, 3)).kernel().len(), 3);
        assert_eq!(rank(&IntMatrix::zeros(2, 0)), 0);
    }

    #[test]
    fn span_membership() {
        let rows = vec![ints(&[1, 1, 0]), ints(&[0, 1, 1])];
        assert!(in_span(&rows, &ints(&[1, 2, 1])));
        assert!(!in_span(&rows, &ints(&[1, 0, 0])));
        assert_eq!(joint_rank(&rows, &[ints(&[1, 0, -1])], 3), 2);
    }

    #[test]
    fn rational_rows_are_cleared() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let m = IntMatrix::from_rational_rows(&[vec![half.clone(), BigRational::one()]]);
        assert_eq!(m, mat(&[&[1, 2]]));
    }
}
