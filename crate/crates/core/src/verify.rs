//! The invariant suite behind `cmlie verify`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{classical_witt, lyndon_basis, witt_dim};
use crate::derivation::{
    apply, inner_intersection_dim, is_inner_special, outer_special_dims, positive_bidegrees,
    special_kernel_basis, Derivation,
};
use crate::error::{Error, Result};
use crate::lie::{scalar, BracketFault, FreeLie, LieElement, Scalar, DEFAULT_TRUNCATION};
use crate::series::{
    free_lie_dims, generator_count_from_dims, lyndon_count_over_graded_alphabet,
    pbw_identity_holds, total_collapse, GeneratorSpec,
};
use crate::weights::{ascend_character, descend_character, index_set_generators};
use crate::word::{LyndonWord, MultiDegree};

/// Total-degree dimensions of the free Lie algebra on one generator per
/// member of `I_K` (`w_K = 2`), at degrees 2, 4, ..., 12.
pub const UPPER_BOUND_TABLE: [(i64, i64); 6] = [(2, 0), (4, 3), (6, 5), (8, 10), (10, 24), (12, 50)];

/// Total-degree dimensions of the outer special derivation algebra at
/// degrees 2, 4, ..., 12.
pub const OUTER_SPECIAL_TABLE: [(i64, i64); 6] = [(2, 0), (4, 3), (6, 6), (8, 10), (10, 25), (12, 50)];

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_degree: i64,
    pub truncation: u32,
    pub seed: u64,
    pub leibniz_samples: usize,
    pub fault: Option<BracketFault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_degree: 12,
            truncation: DEFAULT_TRUNCATION,
            seed: 0x5eed,
            leibniz_samples: 1000,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type CheckFn = fn(&FreeLie, &VerifyOptions) -> Result<(bool, String)>;

/// Runs every check and returns one result per check, in a fixed order.
pub fn run_all(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    if opts.max_degree < 1 {
        return Err(Error::domain("verify needs max degree >= 1"));
    }
    let lie = match opts.fault {
        Some(f) => FreeLie::with_fault(opts.truncation, f)?,
        None => FreeLie::new(opts.truncation)?,
    };
    let checks: [(&str, CheckFn); 11] = [
        ("witt-lyndon", check_witt_lyndon),
        ("antisymmetry", check_antisymmetry),
        ("jacobi", check_jacobi),
        ("leibniz", check_leibniz),
        ("free-lie-oracles", check_free_lie_oracles),
        ("generator-round-trip", check_round_trip),
        ("character-round-trip", check_characters),
        ("special-negativity", check_negativity),
        ("inner-intersection", check_inner_intersection),
        ("upper-bound-table", check_upper_bound_table),
        ("outer-special-table", check_outer_special_table),
    ];
    checks
        .iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let (passed, detail) = match f(&lie, opts) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            Ok(CheckResult {
                name: (*name).to_string(),
                passed,
                detail,
                millis: start.elapsed().as_millis(),
            })
        })
        .collect()
}

fn words_up_to(n: i64) -> Result<Vec<LyndonWord>> {
    let mut out = Vec::new();
    for k in 1..=n {
        for m in MultiDegree::with_total(k) {
            out.extend(lyndon_basis(m)?);
        }
    }
    Ok(out)
}

/// Lyndon test by comparison with every rotation, independent of the
/// enumeration used by `lyndon_basis`.
fn brute_force_lyndon_count(m: MultiDegree) -> u64 {
    let n = m.total() as u32;
    (0u64..1 << n)
        .filter(|bits| bits.count_ones() as i64 == m.m2)
        .filter(|&bits| {
            let mask = (1u64 << n) - 1;
            (1..n).all(|r| (((bits << r) | (bits >> (n - r))) & mask) > bits)
        })
        .count() as u64
}

fn check_witt_lyndon(lie: &FreeLie, opts: &VerifyOptions) -> Result<(bool, String)> {
    let top = (opts.max_degree + 2).min(lie.truncation() as i64);
    for n in 1..=top {
        let mut layer = 0;
        for m in MultiDegree::with_total(n) {
            let w = witt_dim(m)?;
            let listed = lyndon_basis(m)?.len() as u64;
            let brute = brute_force_lyndon_count(m);
            if w != listed || w != brute {
                return Ok((false, format!("at {m}: witt {w}, basis {listed}, brute force {brute}")));
            }
            layer += w;
        }
        let classical = classical_witt(n as u64)?;
        if layer != classical {
            return Ok((false, format!("total degree {n}: {layer} vs classical {classical}")));
        }
    }
    Ok((true, format!("all bidegrees with total degree <= {top}")))
}

fn check_antisymmetry(lie: &FreeLie, opts: &VerifyOptions) -> Result<(bool, String)> {
    let top = opts.max_degree.min(8);
    let words = words_up_to(top)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut count = 0;
    for n in 1..=top {
        for m in MultiDegree::with_total(n) {
            let basis = lyndon_basis(m)?;
            if basis.is_empty() {
                continue;
            }
            let a = random_combination(&mut rng, &basis);
            if !lie.bracket(&a, &a).is_zero() {
                return Ok((false, format!("[a,a] != 0 for a = {a}")));
            }
            count += 1;
        }
    }
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            if u.total_degree() + v.total_degree() > top {
                continue;
            }
            let (a, b) = (LieElement::basis(*u), LieElement::basis(*v));
            if lie.bracket(&a, &b) != -&lie.bracket(&b, &a) {
                return Ok((false, format!("[{u},{v}] != -[{v},{u}]")));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} cases up to total degree {top}")))
}

/// Jacobi on unordered triples of basis words; the cyclic sum is invariant
/// up to sign under permutations.
fn check_jacobi(lie: &FreeLie, opts: &VerifyOptions) -> Result<(bool, String)> {
    let top = opts.max_degree.min(10).min(lie.truncation() as i64);
    let words = words_up_to(top - 2)?;
    let n = words.len();
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (i..n).flat_map(move |j| (j..n).map(move |k| (i, j, k))))
        .filter(|&(i, j, k)| {
            words[i].total_degree() + words[j].total_degree() + words[k].total_degree() <= top
        })
        .collect();
    let failure = triples.par_iter().find_map_any(|&(i, j, k)| {
        let (u, v, w) = (
            LieElement::basis(words[i]),
            LieElement::basis(words[j]),
            LieElement::basis(words[k]),
        );
        let mut sum = lie.bracket(&u, &lie.bracket(&v, &w));
        sum.add_scaled(&lie.bracket(&v, &lie.bracket(&w, &u)), &scalar(1));
        sum.add_scaled(&lie.bracket(&w, &lie.bracket(&u, &v)), &scalar(1));
        (!sum.is_zero()).then(|| format!("({}, {}, {}) gives {sum}", words[i], words[j], words[k]))
    });
    Ok(match failure {
        Some(f) => (false, f),
        None => (true, format!("{} triples up to total degree {top}", triples.len())),
    })
}

fn random_combination(rng: &mut impl Rng, basis: &[LyndonWord]) -> LieElement {
    loop {
        let coeffs: Vec<Scalar> = basis.iter().map(|_| scalar(rng.gen_range(-3..=3))).collect();
        let e = LieElement::combination(basis, &coeffs);
        if !e.is_zero() {
            return e;
        }
    }
}

/// A random nonzero homogeneous element of total degree in `1..=max`.
fn random_homogeneous(rng: &mut impl Rng, max: i64) -> Result<LieElement> {
    loop {
        let n = rng.gen_range(1..=max);
        let m = MultiDegree::new(rng.gen_range(0..=n), 0);
        let m = MultiDegree::new(m.m1, n - m.m1);
        let basis = lyndon_basis(m)?;
        if !basis.is_empty() {
            return Ok(random_combination(rng, &basis));
        }
    }
}

fn random_derivation(rng: &mut impl Rng, shift_total: i64, truncation: u32) -> Result<Derivation> {
    let a = rng.gen_range(0..=shift_total);
    let shift = MultiDegree::new(a, shift_total - a);
    let image = |rng: &mut ChaCha8Rng, m: MultiDegree| -> Result<LieElement> {
        let basis = lyndon_basis(m)?;
        Ok(if basis.is_empty() {
            LieElement::zero_of(m)
        } else {
            random_combination(rng, &basis)
        })
    };
    let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
    let ix = image(&mut local, shift + MultiDegree::X)?;
    let iy = image(&mut local, shift + MultiDegree::Y)?;
    Derivation::homogeneous(shift, ix, iy, truncation)
}

/// `n` random Leibniz cases `d([a,b]) = [d(a),b] + [a,d(b)]` with
/// `|a| + |b| + |shift| <= bound`, drawn from `seed`.
pub fn leibniz_samples(lie: &FreeLie, seed: u64, n: usize, bound: i64) -> Result<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..n {
        let shift_total = rng.gen_range(0..=(bound - 2).max(0));
        let room = (bound - shift_total).max(2);
        let a = random_homogeneous(&mut rng, room - 1)?;
        let a_deg = a.max_total_degree().unwrap_or(1);
        let b = random_homogeneous(&mut rng, (room - a_deg).max(1))?;
        let d = random_derivation(&mut rng, shift_total, lie.truncation())?;
        let lhs = apply(lie, &d, &lie.bracket(&a, &b))?;
        let mut rhs = lie.bracket(&apply(lie, &d, &a)?, &b);
        rhs.add_scaled(&lie.bracket(&a, &apply(lie, &d, &b)?), &scalar(1));
        if lhs != rhs {
            failures.push(format!("d = {d}, a = {a}, b = {b}"));
        }
    }
    Ok(failures)
}

fn check_leibniz(lie: &FreeLie, opts: &VerifyOptions) -> Result<(bool, String)> {
    let bound = opts.max_degree.min(10).min(lie.truncation() as i64).max(2);
    let failures = leibniz_samples(lie, opts.seed, opts.leibniz_samples, bound)?;
    Ok(match failures.first() {
        Some(f) => (false, format!("{} failures, first: {f}", failures.len())),
        None => (true, format!("{} random cases up to total degree {bound}", opts.leibniz_samples)),
    })
}

fn oracle_specs(t: i64) -> Result<Vec<GeneratorSpec>> {
    let md = MultiDegree::new;
    Ok(vec![
        GeneratorSpec::two_letters(),
        index_set_generators(2, t.max(2))?,
        index_set_generators(4, t.max(2))?,
        index_set_generators(6, t.max(2))?,
        GeneratorSpec::from_pairs([(md(2, 2), 3)])?,
        GeneratorSpec::from_pairs([(md(1, 0), 2), (md(0, 1), 1)])?,
        GeneratorSpec::from_pairs([(md(1, 1), 2), (md(1, 2), 1), (md(3, 0), 1)])?,
    ])
}

fn check_free_lie_oracles(_: &FreeLie, opts: &VerifyOptions) -> Result<(bool, String)> {
    let t = opts.max_degree.clamp(1, 12) as u32;
    let specs = oracle_specs(t as i64)?;
    for gens in &specs {
        let pbw = free_lie_dims(gens, t)?;
        let counted = lyndon_count_over_graded_alphabet(gens, t);
        if pbw != counted {
            return Ok((false, format!("PBW {pbw} vs Lyndon count {counted}")));
        }
        if !pbw_identity_holds(gens, &pbw) {
            return Ok((false, format!("PBW identity fails for {pbw}")));
        }
    }
    Ok((true, format!("{} generator specs up to total degree {t}", specs.len())))
}

/// A random generator spec with total degrees at most `t`.
pub fn random_generator_spec(rng: &mut impl Rng, t: i64) -> GeneratorSpec {
    let mut gens = GeneratorSpec::new();
    let count = rng.gen_range(1..=4);
    for _ in 0..count {
        let n = rng.gen_range(1..=t.min(4));
        let a = rng.gen_range(0..=n);
        gens.add(MultiDegree::new(a, n - a), rng.gen_range(1..=2))
            .expect("nonzero bidegree");
    }
    gens
}

fn check_round_trip(_: &FreeLie, opts: &VerifyOptions) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xa11ce);
    let t_max = opts.max_degree.clamp(1, 10);
    for _ in 0..20 {
        let t = rng.gen_range(1..=t_max) as u32;
        let gens = random_generator_spec(&mut rng, t_max).restricted(t);
        let dims = free_lie_dims(&gens, t)?;
        let back = generator_count_from_dims(&dims)?;
        if back != gens {
            return Ok((false, format!("{gens:?} came back as {back:?} at T = {t}")));
        }
    }
    Ok((true, format!("20 random specs with T <= {t_max}")))
}

fn check_characters(_: &FreeLie, _: &VerifyOptions) -> Result<(bool, String)> {
    let mut count = 0;
    for w in [2, 4, 6] {
        for m1 in -20..=20i64 {
            for m2 in -20..=20i64 {
                if (m1 - m2).rem_euclid(w) != 0 {
                    continue;
                }
                let m = MultiDegree::new(m1, m2);
                let (a, b) = descend_character(m, w)?;
                if ascend_character(a, b, w)? != m || descend_character(ascend_character(a, b, w)?, w)? != (a, b) {
                    return Ok((false, format!("round trip fails at {m}, w_K = {w}")));
                }
                count += 1;
            }
        }
    }
    Ok((true, format!("{count} characters")))
}

fn check_negativity(lie: &FreeLie, opts: &VerifyOptions) -> Result<(bool, String)> {
    let top = opts.max_degree.min(lie.truncation() as i64 - 2);
    let degrees: Vec<MultiDegree> = (2..=top)
        .flat_map(|n| [MultiDegree::new(n, 0), MultiDegree::new(0, n)])
        .collect();
    let bad = degrees
        .par_iter()
        .map(|m| special_kernel_basis(lie, *m).map(|b| (*m, b.dim())))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .find(|(_, d)| *d != 0);
    Ok(match bad {
        Some((m, d)) => (false, format!("special dimension {d} at {m}")),
        None => (true, format!("{} bidegrees with m1·m2 = 0", degrees.len())),
    })
}

/// Kernel bases at all positive bidegrees up to `max_total`, with the
/// inner-detection result of every basis vector and the inner intersection
/// dimension.
pub fn inner_survey(lie: &FreeLie, max_total: i64) -> Result<Vec<(MultiDegree, usize, Vec<bool>)>> {
    positive_bidegrees(max_total)
        .par_iter()
        .map(|m| {
            let basis = special_kernel_basis(lie, *m)?;
            let flags = basis
                .vectors
                .iter()
                .map(|d| is_inner_special(lie, d).map(|c| c.is_some()))
                .collect::<Result<Vec<_>>>()?;
            Ok((*m, inner_intersection_dim(lie, *m)?, flags))
        })
        .collect()
}

fn check_inner_intersection(lie: &FreeLie, opts: &VerifyOptions) -> Result<(bool, String)> {
    let top = opts.max_degree.min(lie.truncation() as i64 - 2);
    let survey = inner_survey(lie, top)?;
    let ad_z = Derivation::ad_z(lie)?;
    for (m, inter, flags) in &survey {
        let expected = usize::from(*m == MultiDegree::XY);
        let detected = flags.iter().filter(|f| **f).count();
        if *inter != expected || detected != expected {
            return Ok((false, format!("at {m}: intersection {inter}, detected {detected}")));
        }
    }
    let at_xy = special_kernel_basis(lie, MultiDegree::XY)?;
    if at_xy.vectors != [ad_z] {
        return Ok((false, "special basis at (1,1) is not ad([x,y])".into()));
    }
    Ok((true, format!("{} bidegrees, inner only at (1,1)", survey.len())))
}

fn table_prefix(table: &[(i64, i64)], max: i64) -> Vec<(i64, i64)> {
    table.iter().copied().filter(|(n, _)| *n <= max).collect()
}

fn check_upper_bound_table(_: &FreeLie, opts: &VerifyOptions) -> Result<(bool, String)> {
    let top = opts.max_degree.min(12);
    if top < 2 {
        return Ok((true, "no table degrees in range".into()));
    }
    let gens = index_set_generators(2, top)?;
    let pbw = free_lie_dims(&gens, top as u32)?;
    let counted = lyndon_count_over_graded_alphabet(&gens, top as u32);
    let collapse = total_collapse(&pbw);
    let got: Vec<(i64, i64)> = (2..=top).step_by(2).map(|n| (n, collapse[n as usize])).collect();
    let want = table_prefix(&UPPER_BOUND_TABLE, top);
    Ok((got == want && pbw == counted, format!("{got:?}")))
}

fn check_outer_special_table(lie: &FreeLie, opts: &VerifyOptions) -> Result<(bool, String)> {
    let top = opts.max_degree.min(12).min(lie.truncation() as i64 - 2);
    if top < 2 {
        return Ok((true, "no table degrees in range".into()));
    }
    let table = outer_special_dims(lie, top)?;
    let got: Vec<(i64, i64)> = (2..=top)
        .step_by(2)
        .map(|n| (n, table.total_at(n) as i64))
        .collect();
    let want = table_prefix(&OUTER_SPECIAL_TABLE, top);
    let surjective = table.all_surjective();
    Ok((
        got == want && surjective,
        format!("{got:?}, bracket map surjective everywhere: {surjective}"),
    ))
}
