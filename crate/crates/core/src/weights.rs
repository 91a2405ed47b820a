//! Index sets `I_K`, characters of `G_m^2 / μ_K`, and weight filtrations on
//! finitely supported `Z^S`-graded dimension data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{BivariateSeries, GeneratorSpec};
use crate::word::MultiDegree;

/// Number of roots of unity in an imaginary quadratic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootsOfUnity(u8);

impl RootsOfUnity {
    pub fn new(w: i64) -> Result<Self> {
        match w {
            2 | 4 | 6 => Ok(RootsOfUnity(w as u8)),
            _ => Err(Error::domain(format!("w_K = {w} is not one of 2, 4, 6"))),
        }
    }

    pub fn get(self) -> i64 {
        self.0 as i64
    }

    fn half(self) -> i64 {
        self.0 as i64 / 2
    }
}

/// A bidegree `m` with `m1 ≡ m2 (mod w_K)`: a character of `G_m^2` that
/// factors through `G_m^2 / μ_K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharacterIndex {
    w: RootsOfUnity,
    m: MultiDegree,
}

impl CharacterIndex {
    pub fn new(w: RootsOfUnity, m: MultiDegree) -> Result<Self> {
        if (m.m1 - m.m2).rem_euclid(w.get()) != 0 {
            return Err(Error::domain(format!(
                "congruence m1 ≡ m2 (mod {}) fails for {m}",
                w.get()
            )));
        }
        Ok(CharacterIndex { w, m })
    }

    pub fn bidegree(&self) -> MultiDegree {
        self.m
    }

    pub fn roots_of_unity(&self) -> RootsOfUnity {
        self.w
    }

    /// Product of characters.
    pub fn mul(&self, other: &CharacterIndex) -> Result<CharacterIndex> {
        if self.w != other.w {
            return Err(Error::domain("characters of different quotients"));
        }
        CharacterIndex::new(self.w, self.m + other.m)
    }
}

/// Members of `I_K = {m ∈ Z²_{>0} : m1 ≡ m2 (mod w_K)} \ {(1,1)}` with
/// `|m| <= bound`, ordered by `(|m|, m1)`.
pub fn index_set(w: i64, bound: i64) -> Result<Vec<MultiDegree>> {
    let w = RootsOfUnity::new(w)?;
    if bound < 2 {
        return Err(Error::domain(format!("index set bound {bound} must be >= 2")));
    }
    let mut out: Vec<MultiDegree> = (2..=bound)
        .flat_map(|n| (1..n).map(move |a| MultiDegree::new(a, n - a)))
        .filter(|m| *m != MultiDegree::XY && (m.m1 - m.m2).rem_euclid(w.get()) == 0)
        .collect();
    out.sort_by_key(|m| m.total_then_first());
    Ok(out)
}

/// One generator at each member of `I_K` up to total degree `bound`.
pub fn index_set_generators(w: i64, bound: i64) -> Result<GeneratorSpec> {
    GeneratorSpec::from_pairs(index_set(w, bound)?.into_iter().map(|m| (m, 1)))
}

/// Coordinates of `χ^m` through `G_m^2 / μ_K ≅ G_m^2`,
/// `(x, y) ↦ (xy, (x y^{-1})^{w_K/2})`: `m = a·(1,1) + b·(w_K/2, -w_K/2)`.
pub fn descend_character(m: MultiDegree, w: i64) -> Result<(i64, i64)> {
    let c = CharacterIndex::new(RootsOfUnity::new(w)?, m)?;
    let half = c.w.half();
    let a = (m.m1 + m.m2) / 2;
    let b = (m.m1 - m.m2) / (2 * half);
    Ok((a, b))
}

/// Inverse of [`descend_character`].
pub fn ascend_character(a: i64, b: i64, w: i64) -> Result<MultiDegree> {
    let half = RootsOfUnity::new(w)?.half();
    Ok(MultiDegree::new(a + b * half, a - b * half))
}

/// Dimensions of a finitely supported `Z^S`-graded vector space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedModule {
    rank: usize,
    components: BTreeMap<Vec<i64>, u64>,
}

impl GradedModule {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::domain("grading group Z^S needs |S| >= 1"));
        }
        Ok(GradedModule {
            rank,
            components: BTreeMap::new(),
        })
    }

    pub fn from_pairs<I>(rank: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, u64)>,
    {
        let mut v = GradedModule::new(rank)?;
        for (idx, d) in pairs {
            v.add(idx, d)?;
        }
        Ok(v)
    }

    /// Rank-two module with `dims_m` at `-m`.
    pub fn negated_series(series: &BivariateSeries) -> Self {
        let mut v = GradedModule::new(2).expect("rank 2");
        for (m, c) in series.iter() {
            if c > 0 {
                v.components.insert(vec![-m.m1, -m.m2], c as u64);
            }
        }
        v
    }

    /// Rank-two module with one copy per generator at `-m`.
    pub fn negated_generators(gens: &GeneratorSpec) -> Self {
        let mut v = GradedModule::new(2).expect("rank 2");
        for (m, k) in gens.iter() {
            v.components.insert(vec![-m.m1, -m.m2], k);
        }
        v
    }

    pub fn add(&mut self, index: Vec<i64>, dim: u64) -> Result<()> {
        if index.len() != self.rank {
            return Err(Error::domain(format!(
                "index of length {} in a module graded by Z^{}",
                index.len(),
                self.rank
            )));
        }
        if dim > 0 {
            *self.components.entry(index).or_insert(0) += dim;
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim_at(&self, index: &[i64]) -> u64 {
        self.components.get(index).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> u64 {
        self.components.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64], u64)> {
        self.components.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    /// `(min, max)` of `|m|` over the support.
    pub fn weight_range(&self) -> Option<(i64, i64)> {
        let totals = self.components.keys().map(|k| k.iter().sum::<i64>());
        totals.fold(None, |acc, n| match acc {
            None => Some((n, n)),
            Some((lo, hi)) => Some((lo.min(n), hi.max(n))),
        })
    }

    fn filtered(&self, keep: impl Fn(i64) -> bool) -> Self {
        GradedModule {
            rank: self.rank,
            components: self
                .components
                .iter()
                .filter(|(k, _)| keep(k.iter().sum()))
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        }
    }
}

/// `W_n V = ⊕_{|m| <= n} V_m`.
pub fn weight_filtration(v: &GradedModule, n: i64) -> GradedModule {
    v.filtered(|w| w <= n)
}

/// `Gr^W_n V = W_n V / W_{n-1} V`, the slice with `|m| = n`.
pub fn graded_quotient(v: &GradedModule, n: i64) -> GradedModule {
    v.filtered(|w| w == n)
}

/// Result of [`check_negatively_weighted`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightCheck {
    pub negative: bool,
    /// Lexicographically first index with a nonnegative coordinate.
    pub first_violation: Option<Vec<i64>>,
}

/// Whether the support lies in `Z^S_{<0}`.
pub fn check_negatively_weighted(h1: &GradedModule) -> WeightCheck {
    let first_violation = h1
        .components
        .keys()
        .find(|k| k.iter().any(|&c| c >= 0))
        .cloned();
    WeightCheck {
        negative: first_violation.is_none(),
        first_violation,
    }
}
