//! Bigraded Hilbert series of free Lie algebras with prescribed generators.
//!
//! For generators with generating series `g(s, t)` the enveloping algebra is
//! free associative, so the component dimensions `d_m` of the free Lie
//! algebra are pinned by
//!
//! ```text
//!     ∏_m (1 - s^{m1} t^{m2})^{-d_m} = 1 / (1 - g(s, t)).
//! ```
//!
//! The factor for `m` contributes `d_m s^{m1} t^{m2}` plus terms of higher
//! total degree, so the `d_m` can be read off one total degree at a time.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::basis::binomial;
use crate::error::{Error, Result};
use crate::word::MultiDegree;

/// Generator multiplicities by bidegree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    multiplicities: BTreeMap<MultiDegree, u64>,
}

impl GeneratorSpec {
    pub fn new() -> Self {
        GeneratorSpec::default()
    }

    /// `x` and `y`.
    pub fn two_letters() -> Self {
        GeneratorSpec::from_pairs([(MultiDegree::X, 1), (MultiDegree::Y, 1)])
            .expect("valid generators")
    }

    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiDegree, u64)>,
    {
        let mut spec = GeneratorSpec::new();
        for (m, k) in pairs {
            spec.add(m, k)?;
        }
        Ok(spec)
    }

    /// Adds `count` generators of bidegree `m`. Zero counts are ignored.
    pub fn add(&mut self, m: MultiDegree, count: u64) -> Result<()> {
        if !m.is_nonnegative() || m == MultiDegree::ZERO {
            return Err(Error::domain(format!(
                "generator bidegree {m} must be nonnegative and nonzero"
            )));
        }
        if count > 0 {
            *self.multiplicities.entry(m).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn multiplicity(&self, m: MultiDegree) -> u64 {
        self.multiplicities.get(&m).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (MultiDegree, u64)> + '_ {
        self.multiplicities.iter().map(|(m, k)| (*m, *k))
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    /// Only the generators of total degree at most `t`.
    pub fn restricted(&self, t: u32) -> Self {
        GeneratorSpec {
            multiplicities: self
                .multiplicities
                .iter()
                .filter(|(m, _)| m.total() <= t as i64)
                .map(|(m, k)| (*m, *k))
                .collect(),
        }
    }

    /// One letter per generator of total degree at most `t`.
    pub fn letters(&self, t: u32) -> Vec<MultiDegree> {
        self.restricted(t)
            .iter()
            .flat_map(|(m, k)| std::iter::repeat_n(m, k as usize))
            .collect()
    }

    /// The generating series `g(s, t)`.
    pub fn as_series(&self, t: u32) -> BivariateSeries {
        let mut s = BivariateSeries::new(t);
        for (m, k) in self.restricted(t).iter() {
            s.coefficients.insert(m, k as i64);
        }
        s
    }
}

/// Integer coefficients on bidegrees `m` with nonnegative coordinates and
/// `|m| <= truncation`. Zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivariateSeries {
    truncation: u32,
    coefficients: BTreeMap<MultiDegree, i64>,
}

impl BivariateSeries {
    pub fn new(truncation: u32) -> Self {
        BivariateSeries {
            truncation,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn get(&self, m: MultiDegree) -> i64 {
        self.coefficients.get(&m).copied().unwrap_or(0)
    }

    pub fn set(&mut self, m: MultiDegree, c: i64) -> Result<()> {
        if !m.is_nonnegative() || m.total() > self.truncation as i64 {
            return Err(Error::domain(format!(
                "bidegree {m} outside series truncated at total degree {}",
                self.truncation
            )));
        }
        if c == 0 {
            self.coefficients.remove(&m);
        } else {
            self.coefficients.insert(m, c);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (MultiDegree, i64)> + '_ {
        self.coefficients.iter().map(|(m, c)| (*m, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// The same coefficients cut to a smaller truncation.
    pub fn truncated(&self, t: u32) -> Self {
        BivariateSeries {
            truncation: t.min(self.truncation),
            coefficients: self
                .coefficients
                .iter()
                .filter(|(m, _)| m.total() <= t as i64)
                .map(|(m, c)| (*m, *c))
                .collect(),
        }
    }
}

impl fmt::Display for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(m, c)| format!("{m}:{c}")).collect();
        write!(f, "{{{}}} (|m| <= {})", parts.join(", "), self.truncation)
    }
}

/// Dense coefficients on `{(a, b) : a + b <= t}`.
#[derive(Clone)]
struct Grid {
    t: usize,
    data: Vec<BigInt>,
}

impl Grid {
    fn zero(t: u32) -> Self {
        let t = t as usize;
        Grid {
            t,
            data: vec![BigInt::zero(); (t + 1) * (t + 1)],
        }
    }

    fn one(t: u32) -> Self {
        let mut g = Grid::zero(t);
        g.data[0] = BigInt::one();
        g
    }

    fn idx(&self, a: usize, b: usize) -> usize {
        a * (self.t + 1) + b
    }

    fn at(&self, m: MultiDegree) -> &BigInt {
        &self.data[self.idx(m.m1 as usize, m.m2 as usize)]
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize)> {
        let t = self.t;
        (0..=t).flat_map(move |n| (0..=n).map(move |a| (a, n - a)))
    }

    /// `1 / (1 - g)`.
    fn geometric(gens: &GeneratorSpec, t: u32) -> Self {
        let gens = gens.restricted(t);
        let mut u = Grid::one(t);
        let cells: Vec<_> = u.cells().skip(1).collect();
        for (a, b) in cells {
            let mut acc = BigInt::zero();
            for (m, k) in gens.iter() {
                let (ma, mb) = (m.m1 as usize, m.m2 as usize);
                if ma <= a && mb <= b {
                    acc += &u.data[u.idx(a - ma, b - mb)] * BigInt::from(k);
                }
            }
            let i = u.idx(a, b);
            u.data[i] = acc;
        }
        u
    }

    /// Multiplies by `(1 - s^{m1} t^{m2})^{-d}`, whose coefficients are
    /// `C(d + j - 1, j)` at `j m`.
    fn mul_power_factor(&self, m: MultiDegree, d: u64) -> Self {
        let (ma, mb) = (m.m1 as usize, m.m2 as usize);
        let step = ma + mb;
        let mut out = Grid::zero(self.t as u32);
        let weights: Vec<BigInt> = (0..=self.t / step)
            .map(|j| binomial(d + j as u64 - 1, j as u64))
            .collect();
        for (a, b) in self.cells() {
            let mut acc = BigInt::zero();
            for (j, w) in weights.iter().enumerate() {
                let (da, db) = (j * ma, j * mb);
                if da > a || db > b {
                    break;
                }
                let src = &self.data[self.idx(a - da, b - db)];
                if !src.is_zero() {
                    acc += src * w;
                }
            }
            let i = out.idx(a, b);
            out.data[i] = acc;
        }
        out
    }
}

fn to_i64(v: &BigInt, m: MultiDegree) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::InternalConsistency(format!("coefficient at {m} exceeds 64 bits")))
}

/// Dimensions of the free Lie algebra on `gens`, for every bidegree up to
/// total degree `t`.
pub fn free_lie_dims(gens: &GeneratorSpec, t: u32) -> Result<BivariateSeries> {
    if t == 0 {
        return Err(Error::domain("series truncation must be >= 1"));
    }
    let target = Grid::geometric(gens, t);
    let mut product = Grid::one(t);
    let mut dims = BivariateSeries::new(t);
    for n in 1..=t as i64 {
        let mut layer = Vec::new();
        for m in MultiDegree::with_total(n) {
            let d = target.at(m) - product.at(m);
            if d.is_negative() {
                return Err(Error::InternalConsistency(format!(
                    "negative free Lie dimension {d} at {m}"
                )));
            }
            let d = to_i64(&d, m)?;
            if (d as u64) < gens.multiplicity(m) {
                return Err(Error::InternalConsistency(format!(
                    "dimension {d} at {m} below generator count {}",
                    gens.multiplicity(m)
                )));
            }
            layer.push((m, d));
        }
        for (m, d) in layer {
            if d > 0 {
                dims.coefficients.insert(m, d);
                product = product.mul_power_factor(m, d as u64);
            }
        }
    }
    Ok(dims)
}

/// Checks `∏ (1 - s^{m1} t^{m2})^{-d_m} = 1 / (1 - g)` coefficient-wise up
/// to the truncation of `dims`.
pub fn pbw_identity_holds(gens: &GeneratorSpec, dims: &BivariateSeries) -> bool {
    let t = dims.truncation();
    let mut product = Grid::one(t);
    for (m, d) in dims.iter() {
        if d < 0 {
            return false;
        }
        product = product.mul_power_factor(m, d as u64);
    }
    let target = Grid::geometric(gens, t);
    product.data == target.data
}

/// Sums coefficients by total degree; index `n` holds `Σ_{|m| = n} c_m` for
/// `n` in `0..=truncation`.
pub fn total_collapse(series: &BivariateSeries) -> Vec<i64> {
    let mut out = vec![0; series.truncation as usize + 1];
    for (m, c) in series.iter() {
        out[m.total() as usize] += c;
    }
    out
}

/// Recovers generator multiplicities from the dimensions of a free bigraded
/// Lie algebra, one total degree at a time. A negative defect means `dims`
/// cannot be the dimension series of a free algebra.
pub fn generator_count_from_dims(dims: &BivariateSeries) -> Result<GeneratorSpec> {
    let mut gens = GeneratorSpec::new();
    for n in 1..=dims.truncation() {
        let from_lower = free_lie_dims(&gens, n)?;
        for m in MultiDegree::with_total(n as i64) {
            let defect = dims.get(m) - from_lower.get(m);
            if defect < 0 {
                return Err(Error::NotFree { at: m, defect });
            }
            gens.add(m, defect as u64)?;
        }
    }
    Ok(gens)
}

/// Counts Lyndon words over an alphabet with one letter per generator,
/// weighting each word by the sum of its letters' bidegrees. Independent of
/// [`free_lie_dims`]; the two agree for every generator spec.
pub fn lyndon_count_over_graded_alphabet(gens: &GeneratorSpec, t: u32) -> BivariateSeries {
    let letters = gens.letters(t);
    let mut counts: BTreeMap<MultiDegree, i64> = BTreeMap::new();
    let mut word = Vec::new();
    lyndon_walk(&letters, t as i64, &mut word, 1, MultiDegree::ZERO, &mut counts);
    BivariateSeries {
        truncation: t,
        coefficients: counts,
    }
}

/// Prenecklace extension: the next letter is at least `word[len - period]`;
/// a prenecklace is Lyndon exactly when its period equals its length.
fn lyndon_walk(
    letters: &[MultiDegree],
    t: i64,
    word: &mut Vec<usize>,
    period: usize,
    weight: MultiDegree,
    counts: &mut BTreeMap<MultiDegree, i64>,
) {
    if !word.is_empty() && period == word.len() {
        *counts.entry(weight).or_insert(0) += 1;
    }
    let floor = if word.is_empty() { 0 } else { word[word.len() - period] };
    for (i, m) in letters.iter().enumerate().skip(floor) {
        let next = weight + *m;
        if next.total() > t {
            continue;
        }
        let next_period = if word.is_empty() || i == floor { period } else { word.len() + 1 };
        word.push(i);
        lyndon_walk(letters, t, word, next_period, next, counts);
        word.pop();
    }
}
