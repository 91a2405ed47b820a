//! Derivations of the truncated free Lie algebra and the special derivations:
//! those killing `z = [x, y]` and trivial on the abelianization.
//!
//! A derivation of bidegree `-m` sends `x` into `p_{m+(1,0)}` and `y` into
//! `p_{m+(0,1)}`; it is special exactly when `[d(x), y] + [x, d(y)] = 0`,
//! so the special derivations of a fixed bidegree are the kernel of the
//! bracket map `p_{m+(1,0)} ⊕ p_{m+(0,1)} → p_{m+(1,1)}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{lyndon_basis, witt_dim};
use crate::error::{Error, Result};
use crate::lie::{FreeLie, LieElement, Scalar};
use crate::linalg::{self, IntMatrix};
use crate::word::{LyndonWord, MultiDegree};

/// A derivation, determined by the images of the two generators.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    image_x: LieElement,
    image_y: LieElement,
    truncation: u32,
    /// `m` when the derivation is homogeneous of bidegree `-m`.
    shift: Option<MultiDegree>,
}

impl Derivation {
    /// A derivation with the given generator images. The bidegree tag is set
    /// when both images are homogeneous of compatible bidegrees.
    pub fn new(image_x: LieElement, image_y: LieElement, truncation: u32) -> Result<Self> {
        let shift = match (image_x.homogeneous_degree(), image_y.homogeneous_degree()) {
            (Some(a), Some(b)) if a - MultiDegree::X == b - MultiDegree::Y => Some(a - MultiDegree::X),
            (Some(a), None) if image_y.is_zero() => Some(a - MultiDegree::X),
            (None, Some(b)) if image_x.is_zero() => Some(b - MultiDegree::Y),
            _ => None,
        };
        let d = Derivation {
            image_x,
            image_y,
            truncation,
            shift,
        };
        d.check_images()?;
        Ok(d)
    }

    /// A derivation of bidegree `-shift`; the images must match.
    pub fn homogeneous(
        shift: MultiDegree,
        image_x: LieElement,
        image_y: LieElement,
        truncation: u32,
    ) -> Result<Self> {
        for (img, target) in [(&image_x, shift + MultiDegree::X), (&image_y, shift + MultiDegree::Y)] {
            if let Some(w) = img.terms().map(|(w, _)| w).find(|w| w.bidegree() != target) {
                return Err(Error::domain(format!(
                    "image term {w} is not of bidegree {target} required by shift {shift}"
                )));
            }
        }
        let d = Derivation {
            image_x,
            image_y,
            truncation,
            shift: Some(shift),
        };
        d.check_images()?;
        Ok(d)
    }

    pub fn zero(truncation: u32) -> Self {
        Derivation {
            image_x: LieElement::zero(),
            image_y: LieElement::zero(),
            truncation,
            shift: None,
        }
    }

    /// The inner derivation `ad(u) = [u, -]`.
    pub fn inner(lie: &FreeLie, u: &LieElement) -> Result<Self> {
        let image_x = lie.bracket(u, &LieElement::x());
        let image_y = lie.bracket(u, &LieElement::y());
        match u.homogeneous_degree() {
            Some(m) => Derivation::homogeneous(m, image_x, image_y, lie.truncation()),
            None => Derivation::new(image_x, image_y, lie.truncation()),
        }
    }

    /// `ad([x, y])`.
    pub fn ad_z(lie: &FreeLie) -> Result<Self> {
        Derivation::inner(lie, &lie.z())
    }

    fn check_images(&self) -> Result<()> {
        for img in [&self.image_x, &self.image_y] {
            if let Some(n) = img.max_total_degree() {
                if n > self.truncation as i64 {
                    return Err(Error::Truncation {
                        needed: n,
                        truncation: self.truncation,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn image_x(&self) -> &LieElement {
        &self.image_x
    }

    pub fn image_y(&self) -> &LieElement {
        &self.image_y
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn shift(&self) -> Option<MultiDegree> {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.image_x.is_zero() && self.image_y.is_zero()
    }

    /// Largest increase of total degree, `None` for the zero derivation.
    pub fn max_raise(&self) -> Option<i64> {
        if let Some(m) = self.shift {
            return (!self.is_zero()).then_some(m.total());
        }
        [&self.image_x, &self.image_y]
            .iter()
            .filter_map(|e| e.max_total_degree())
            .max()
            .map(|n| n - 1)
    }

    /// Coordinates of `(d(x), d(y))` against the concatenated bases.
    pub fn coordinates(&self, basis_x: &[LyndonWord], basis_y: &[LyndonWord]) -> Result<Vec<Scalar>> {
        let mut v = self.image_x.coordinates(basis_x)?;
        v.extend(self.image_y.coordinates(basis_y)?);
        Ok(v)
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        Derivation {
            image_x: self.image_x.scaled(c),
            image_y: self.image_y.scaled(c),
            truncation: self.truncation,
            shift: self.shift,
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> {}; y -> {}", self.image_x, self.image_y)
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Leibniz extension of `d` applied to `e`.
///
/// Fails with a truncation error when the result could reach past the
/// truncation of either `d` or `lie`.
pub fn apply(lie: &FreeLie, d: &Derivation, e: &LieElement) -> Result<LieElement> {
    let (Some(raise), Some(top)) = (d.max_raise(), e.max_total_degree()) else {
        return Ok(LieElement::zero());
    };
    let needed = top + raise;
    let limit = d.truncation.min(lie.truncation());
    if needed > limit as i64 {
        return Err(Error::Truncation {
            needed,
            truncation: limit,
        });
    }
    let mut memo = HashMap::new();
    let mut out = LieElement::zero();
    for (w, c) in e.terms() {
        out.add_scaled(&apply_word(lie, d, *w, &mut memo), c);
    }
    Ok(out)
}

fn apply_word(
    lie: &FreeLie,
    d: &Derivation,
    w: LyndonWord,
    memo: &mut HashMap<LyndonWord, LieElement>,
) -> LieElement {
    if w == LyndonWord::x() {
        return d.image_x.clone();
    }
    if w == LyndonWord::y() {
        return d.image_y.clone();
    }
    if let Some(hit) = memo.get(&w) {
        return hit.clone();
    }
    let (u, v) = w.standard_factorization().expect("words of length >= 2 factor");
    let du = apply_word(lie, d, u, memo);
    let dv = apply_word(lie, d, v, memo);
    let mut out = lie.bracket(&du, &LieElement::basis(v));
    out.add_scaled(&lie.bracket(&LieElement::basis(u), &dv), &Scalar::one());
    memo.insert(w, out.clone());
    out
}

/// `[d1, d2] = d1 ∘ d2 - d2 ∘ d1`, evaluated on the generators.
pub fn derivation_bracket(lie: &FreeLie, d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    let truncation = d1.truncation.min(d2.truncation);
    let side = |g: &LieElement, first: &Derivation, second: &Derivation| -> Result<LieElement> {
        let inner = apply(lie, second, g)?;
        apply(lie, first, &inner)
    };
    let x = LieElement::x();
    let y = LieElement::y();
    let image_x = &side(&x, d1, d2)? - &side(&x, d2, d1)?;
    let image_y = &side(&y, d1, d2)? - &side(&y, d2, d1)?;
    match (d1.shift, d2.shift) {
        (Some(a), Some(b)) => Derivation::homogeneous(a + b, image_x, image_y, truncation),
        _ => Derivation::new(image_x, image_y, truncation),
    }
}

/// The matrix of `(a, b) ↦ [a, y] + [x, b]` on `p_{m+(1,0)} ⊕ p_{m+(0,1)}`.
///
/// Columns are the Lyndon basis of `p_{m+(1,0)}` followed by that of
/// `p_{m+(0,1)}`; rows are the Lyndon basis of `p_{m+(1,1)}`.
#[derive(Debug, Clone)]
pub struct BracketMap {
    pub bidegree: MultiDegree,
    pub basis_x: Vec<LyndonWord>,
    pub basis_y: Vec<LyndonWord>,
    pub target: Vec<LyndonWord>,
    pub matrix: IntMatrix,
}

impl BracketMap {
    pub fn build(lie: &FreeLie, m: MultiDegree) -> Result<Self> {
        check_shift(lie, m)?;
        let basis_x = lyndon_basis(m + MultiDegree::X)?;
        let basis_y = lyndon_basis(m + MultiDegree::Y)?;
        let target = lyndon_basis(m + MultiDegree::XY)?;
        let row_of: HashMap<LyndonWord, usize> =
            target.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let cols = basis_x.len() + basis_y.len();
        let mut matrix = IntMatrix::zeros(target.len(), cols);
        let columns = basis_x
            .iter()
            .map(|a| lie.bracket_words(*a, LyndonWord::y()))
            .chain(basis_y.iter().map(|b| lie.bracket_words(LyndonWord::x(), *b)));
        for (j, image) in columns.enumerate() {
            for (w, c) in image.terms() {
                let i = row_of.get(w).ok_or_else(|| {
                    Error::InternalConsistency(format!("bracket produced {w} outside {}", m + MultiDegree::XY))
                })?;
                if !c.is_integer() {
                    return Err(Error::InternalConsistency(format!(
                        "non-integral bracket coefficient for {w}"
                    )));
                }
                matrix.set(*i, j, c.to_integer());
            }
        }
        Ok(BracketMap {
            bidegree: m,
            basis_x,
            basis_y,
            target,
            matrix,
        })
    }

    pub fn source_dim(&self) -> usize {
        self.basis_x.len() + self.basis_y.len()
    }

    fn derivation_from(&self, v: &[BigInt], truncation: u32) -> Result<Derivation> {
        let (vx, vy) = v.split_at(self.basis_x.len());
        let as_scalars = |s: &[BigInt]| s.iter().map(|c| Scalar::from_integer(c.clone())).collect::<Vec<_>>();
        Derivation::homogeneous(
            self.bidegree,
            LieElement::combination(&self.basis_x, &as_scalars(vx)),
            LieElement::combination(&self.basis_y, &as_scalars(vy)),
            truncation,
        )
    }
}

fn check_shift(lie: &FreeLie, m: MultiDegree) -> Result<()> {
    if !m.is_nonnegative() {
        return Err(Error::domain(format!(
            "derivation bidegree -{m} needs nonnegative coordinates"
        )));
    }
    lie.check_degree(m.total() + 2)
}

/// Linearly independent special derivations of one bidegree.
#[derive(Debug, Clone)]
pub struct SpecialBasis {
    pub bidegree: MultiDegree,
    pub vectors: Vec<Derivation>,
}

impl SpecialBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// A basis of the special derivations of bidegree `-m`, from an exact
/// kernel solve. Each vector is primitive over the integers.
pub fn special_kernel_basis(lie: &FreeLie, m: MultiDegree) -> Result<SpecialBasis> {
    if m == MultiDegree::ZERO {
        return Ok(SpecialBasis {
            bidegree: m,
            vectors: Vec::new(),
        });
    }
    let map = BracketMap::build(lie, m)?;
    let kernel = linalg::echelon(&map.matrix).kernel();
    let vectors = kernel
        .iter()
        .map(|v| map.derivation_from(v, lie.truncation()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpecialBasis { bidegree: m, vectors })
}

/// Kernel dimension of the bracket map together with its rank data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpecialDim {
    pub bidegree: MultiDegree,
    pub dim: usize,
    pub rank: usize,
    pub target_dim: usize,
    pub surjective: bool,
}

impl SpecialDim {
    /// `dim p_{m+(1,0)} + dim p_{m+(0,1)} - dim p_{m+(1,1)}`, reported only
    /// when the bracket map was found to be surjective.
    pub fn closed_form(&self) -> Option<i64> {
        if !self.surjective {
            return None;
        }
        let w = |d| witt_dim(d).map(|n| n as i64).unwrap_or(0);
        let m = self.bidegree;
        Some(w(m + MultiDegree::X) + w(m + MultiDegree::Y) - w(m + MultiDegree::XY))
    }
}

pub fn special_dim(lie: &FreeLie, m: MultiDegree) -> Result<SpecialDim> {
    if m == MultiDegree::ZERO {
        return Ok(SpecialDim {
            bidegree: m,
            dim: 0,
            rank: 0,
            target_dim: 1,
            surjective: false,
        });
    }
    let map = BracketMap::build(lie, m)?;
    let rank = linalg::rank(&map.matrix);
    Ok(SpecialDim {
        bidegree: m,
        dim: map.source_dim() - rank,
        rank,
        target_dim: map.target.len(),
        surjective: rank == map.target.len(),
    })
}

/// `Some(c)` when `d = c · ad(z)`, `None` for any other special derivation.
pub fn is_inner_special(lie: &FreeLie, d: &Derivation) -> Result<Option<Scalar>> {
    let dz = apply(lie, d, &lie.z())?;
    if !dz.is_zero() {
        return Err(Error::ContractViolation(format!(
            "derivation does not annihilate [x,y]: d(z) = {dz}"
        )));
    }
    if d.is_zero() {
        return Ok(Some(Scalar::zero()));
    }
    let ad = Derivation::ad_z(lie)?;
    let (w, c) = ad.image_x.terms().next().expect("ad(z)(x) is nonzero");
    let ratio = d.image_x.coefficient(w) / c;
    let matches = d.image_x == ad.image_x.scaled(&ratio) && d.image_y == ad.image_y.scaled(&ratio);
    Ok(matches.then_some(ratio))
}

/// `dim (special ∩ inner)` in bidegree `-m`, where the inner derivations of
/// that bidegree are `ad(u)` for `u ∈ p_m`.
pub fn inner_intersection_dim(lie: &FreeLie, m: MultiDegree) -> Result<usize> {
    m.check_lie_degree()?;
    let map = BracketMap::build(lie, m)?;
    let special: Vec<Vec<BigInt>> = linalg::echelon(&map.matrix).kernel();
    let inner: Vec<Vec<BigInt>> = lyndon_basis(m)?
        .into_iter()
        .map(|u| {
            let d = Derivation::inner(lie, &LieElement::basis(u))?;
            let coords = d.coordinates(&map.basis_x, &map.basis_y)?;
            Ok(coords.iter().map(|c| c.to_integer()).collect())
        })
        .collect::<Result<_>>()?;
    let cols = map.source_dim();
    let inner_rank = linalg::joint_rank(&inner, &[], cols);
    let joint = linalg::joint_rank(&special, &inner, cols);
    Ok(special.len() + inner_rank - joint)
}

/// One bidegree of the outer special derivation table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OuterEntry {
    pub bidegree: MultiDegree,
    pub special_dim: usize,
    pub inner_correction: usize,
    pub outer_dim: usize,
    pub surjective: bool,
}

/// Outer special derivation dimensions for all `m` with both coordinates
/// positive and `|m| <= max_total_degree`, plus sums per total degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterSpecialTable {
    pub max_total_degree: i64,
    pub entries: BTreeMap<MultiDegree, OuterEntry>,
}

impl OuterSpecialTable {
    /// `(n, Σ_{|m| = n} outer_dim)` for `n` in `2..=max_total_degree`.
    pub fn totals(&self) -> Vec<(i64, u64)> {
        (2..=self.max_total_degree)
            .map(|n| {
                let s = self
                    .entries
                    .values()
                    .filter(|e| e.bidegree.total() == n)
                    .map(|e| e.outer_dim as u64)
                    .sum();
                (n, s)
            })
            .collect()
    }

    pub fn total_at(&self, n: i64) -> u64 {
        self.totals()
            .into_iter()
            .find(|(k, _)| *k == n)
            .map_or(0, |(_, v)| v)
    }

    pub fn all_surjective(&self) -> bool {
        self.entries.values().all(|e| e.surjective)
    }

    /// Only the bidegrees whose derivations commute with `μ_K`, which acts
    /// on `p_m` through `ζ^{m1 - m2}`: those with `m1 ≡ m2 (mod w_K)`.
    pub fn centralizing(&self, w: i64) -> OuterSpecialTable {
        OuterSpecialTable {
            max_total_degree: self.max_total_degree,
            entries: self
                .entries
                .iter()
                .filter(|(m, _)| (m.m1 - m.m2).rem_euclid(w) == 0)
                .map(|(m, e)| (*m, *e))
                .collect(),
        }
    }
}

/// Positive bidegrees `m` with `2 <= |m| <= max_total_degree`, ordered by
/// total degree, then `m1`.
pub fn positive_bidegrees(max_total_degree: i64) -> Vec<MultiDegree> {
    (2..=max_total_degree)
        .flat_map(|n| (1..n).map(move |a| MultiDegree::new(a, n - a)))
        .collect()
}

/// The inner special derivations are the multiples of `ad(z)`, which lives
/// in bidegree `-(1,1)`; the outer dimension subtracts that line there.
pub fn outer_special_dims(lie: &FreeLie, max_total_degree: i64) -> Result<OuterSpecialTable> {
    lie.check_degree(max_total_degree + 2)?;
    let degrees = positive_bidegrees(max_total_degree);
    let dims = degrees
        .par_iter()
        .map(|m| special_dim(lie, *m))
        .collect::<Result<Vec<_>>>()?;
    let entries = dims
        .into_iter()
        .map(|sd| {
            let inner_correction = usize::from(sd.bidegree == MultiDegree::XY);
            let outer_dim = sd.dim.checked_sub(inner_correction).ok_or_else(|| {
                Error::InternalConsistency(format!("no special derivation at {}", sd.bidegree))
            })?;
            Ok((
                sd.bidegree,
                OuterEntry {
                    bidegree: sd.bidegree,
                    special_dim: sd.dim,
                    inner_correction,
                    outer_dim,
                    surjective: sd.surjective,
                },
            ))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(OuterSpecialTable {
        max_total_degree,
        entries,
    })
}
