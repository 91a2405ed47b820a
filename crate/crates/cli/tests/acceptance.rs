//! Acceptance criteria, one test per criterion. Each prints a single
//! `PASS`/`FAIL` line before asserting, so `cargo test --test acceptance --
//! --nocapture` doubles as a report.
//!
//! Tolerances: every comparison is exact integer or exact rational
//! equality. Runtime budgets are upper bounds in wall-clock seconds.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cmlie::lie::scalar;
use cmlie::weights::{ascend_character, index_set_generators};
use cmlie::{
    apply, descend_character, free_lie_dims, generator_count_from_dims, inner_intersection_dim,
    is_inner_special, lyndon_basis, lyndon_count_over_graded_alphabet, outer_special_dims,
    special_kernel_basis, total_collapse, witt_dim, Derivation, FreeLie, GeneratorSpec, LieElement,
    LyndonWord, MultiDegree,
};

const UPPER_BOUND: [i64; 6] = [0, 3, 5, 10, 24, 50];
const OUTER_SPECIAL: [i64; 6] = [0, 3, 6, 10, 25, 50];
const EVEN_DEGREES: [i64; 6] = [2, 4, 6, 8, 10, 12];

fn report(id: u32, name: &str, ok: bool, started: Instant, budget_secs: u64, detail: String) {
    let elapsed = started.elapsed();
    let in_budget = elapsed <= Duration::from_secs(budget_secs);
    let mark = if ok && in_budget { "PASS" } else { "FAIL" };
    println!(
        "{mark} criterion {id} ({name}): {detail} [{:.2}s of {budget_secs}s]",
        elapsed.as_secs_f64()
    );
    assert!(ok, "criterion {id} failed: {detail}");
    assert!(in_budget, "criterion {id} over budget: {elapsed:?}");
}

fn md(a: i64, b: i64) -> MultiDegree {
    MultiDegree::new(a, b)
}

#[test]
fn criterion_1_upper_bound_table() {
    let t0 = Instant::now();
    let gens = index_set_generators(2, 12).unwrap();
    let pbw = free_lie_dims(&gens, 12).unwrap();
    let counted = lyndon_count_over_graded_alphabet(&gens, 12);
    let collapse = total_collapse(&pbw);
    let got: Vec<i64> = EVEN_DEGREES.iter().map(|&n| collapse[n as usize]).collect();
    let agree = pbw == counted;
    report(
        1,
        "free upper bound",
        got == UPPER_BOUND && agree,
        t0,
        10,
        format!("totals {got:?}, expected {UPPER_BOUND:?}, PBW and Lyndon agree: {agree}"),
    );
}

#[test]
fn criterion_2_outer_special_table() {
    let t0 = Instant::now();
    let lie = FreeLie::new(14).unwrap();
    let table = outer_special_dims(&lie, 12).unwrap();
    let got: Vec<i64> = EVEN_DEGREES.iter().map(|&n| table.total_at(n) as i64).collect();
    let surjective = table.all_surjective();
    let corrections: Vec<MultiDegree> = table
        .entries
        .values()
        .filter(|e| e.inner_correction != 0)
        .map(|e| e.bidegree)
        .collect();
    let correction_ok = corrections == vec![MultiDegree::XY];
    report(
        2,
        "outer special derivations",
        got == OUTER_SPECIAL && surjective && correction_ok,
        t0,
        60,
        format!(
            "totals {got:?}, expected {OUTER_SPECIAL:?}, surjective everywhere: {surjective}, \
             inner correction at {corrections:?}"
        ),
    );
}

#[test]
fn criterion_3_vanishing_on_axes() {
    let t0 = Instant::now();
    let lie = FreeLie::new(14).unwrap();
    let mut nonzero = Vec::new();
    let mut checked = 0;
    for n in 2..=12 {
        for m in [md(n, 0), md(0, n)] {
            let dim = special_kernel_basis(&lie, m).unwrap().dim();
            checked += 1;
            if dim != 0 {
                nonzero.push((m, dim));
            }
        }
    }
    report(
        3,
        "special derivations vanish when m1*m2 = 0",
        nonzero.is_empty(),
        t0,
        30,
        format!("{checked} bidegrees solved, nonzero kernels: {nonzero:?}"),
    );
}

#[test]
fn criterion_4_single_inner_direction() {
    let t0 = Instant::now();
    let lie = FreeLie::new(14).unwrap();
    let ad_z = Derivation::ad_z(&lie).unwrap();
    let mut inner = Vec::new();
    let mut vectors = 0;
    let mut intersections = Vec::new();
    for n in 1..=12 {
        for m in MultiDegree::with_total(n) {
            for d in special_kernel_basis(&lie, m).unwrap().vectors {
                vectors += 1;
                if let Some(c) = is_inner_special(&lie, &d).unwrap() {
                    inner.push((m, ad_z.scaled(&c) == d));
                }
            }
            let k = inner_intersection_dim(&lie, m).unwrap();
            if k != 0 {
                intersections.push((m, k));
            }
        }
    }
    let ok = inner == vec![(MultiDegree::XY, true)] && intersections == vec![(MultiDegree::XY, 1)];
    report(
        4,
        "inner intersection",
        ok,
        t0,
        30,
        format!("{vectors} basis vectors, inner: {inner:?}, nonzero intersections: {intersections:?}"),
    );
}

fn is_lyndon_by_rotation(bits: u32, n: u32) -> bool {
    let mask = (1u32 << n) - 1;
    (1..n).all(|r| (((bits << r) | (bits >> (n - r))) & mask) > bits)
}

fn mobius(n: u64) -> i64 {
    let (mut n, mut mu, mut p) = (n, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        -mu
    } else {
        mu
    }
}

#[test]
fn criterion_5_witt_matches_lyndon_enumeration() {
    let t0 = Instant::now();
    let mut mismatches = Vec::new();
    for n in 1..=14u32 {
        let mut layer = 0i64;
        for m in MultiDegree::with_total(n as i64) {
            let brute = (0u32..1 << n)
                .filter(|b| b.count_ones() as i64 == m.m2 && is_lyndon_by_rotation(*b, n))
                .count() as i64;
            let w = witt_dim(m).unwrap() as i64;
            if w != brute || lyndon_basis(m).unwrap().len() as i64 != brute {
                mismatches.push(m);
            }
            layer += w;
        }
        let classical: i64 = (1..=n as u64)
            .filter(|d| (n as u64).is_multiple_of(*d))
            .map(|d| mobius(d) * (1i64 << (n as u64 / d)))
            .sum::<i64>()
            / n as i64;
        if layer != classical {
            mismatches.push(md(n as i64, -1));
        }
    }
    report(
        5,
        "Witt formula against Lyndon enumeration",
        mismatches.is_empty(),
        t0,
        5,
        format!("total degrees 1..=14, mismatches: {mismatches:?}"),
    );
}

fn words_up_to(n: i64) -> Vec<LyndonWord> {
    (1..=n)
        .flat_map(MultiDegree::with_total)
        .flat_map(|m| lyndon_basis(m).unwrap())
        .collect()
}

fn random_homogeneous(rng: &mut ChaCha8Rng, m: MultiDegree) -> LieElement {
    let basis = lyndon_basis(m).unwrap();
    let cs: Vec<_> = basis.iter().map(|_| scalar(rng.gen_range(-4..=4))).collect();
    LieElement::combination(&basis, &cs)
}

fn random_bidegree(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> MultiDegree {
    let n = rng.gen_range(lo..=hi);
    let a = rng.gen_range(0..=n);
    md(a, n - a)
}

#[test]
fn criterion_6_property_suites() {
    let t0 = Instant::now();
    let mut failures = Vec::new();

    // Jacobi on every triple of basis words with total degree <= 10.
    let lie = FreeLie::new(10).unwrap();
    let words = words_up_to(8);
    let mut triples = 0;
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate().skip(i) {
            for w in words.iter().skip(j) {
                if u.len() + v.len() + w.len() > 10 {
                    continue;
                }
                triples += 1;
                let (a, b, c) = (LieElement::basis(*u), LieElement::basis(*v), LieElement::basis(*w));
                let s = &(&lie.bracket(&a, &lie.bracket(&b, &c)) + &lie.bracket(&b, &lie.bracket(&c, &a)))
                    + &lie.bracket(&c, &lie.bracket(&a, &b));
                if !s.is_zero() {
                    failures.push(format!("jacobi ({u}, {v}, {w})"));
                }
            }
        }
    }

    // Leibniz on 1000 random homogeneous derivation/pair samples.
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let lie = FreeLie::new(12).unwrap();
    for _ in 0..1000 {
        let shift = random_bidegree(&mut rng, 0, 3);
        let d = Derivation::homogeneous(
            shift,
            random_homogeneous(&mut rng, shift + MultiDegree::X),
            random_homogeneous(&mut rng, shift + MultiDegree::Y),
            12,
        )
        .unwrap();
        let (ma, mb) = (random_bidegree(&mut rng, 1, 4), random_bidegree(&mut rng, 1, 4));
        let a = random_homogeneous(&mut rng, ma);
        let b = random_homogeneous(&mut rng, mb);
        let lhs = apply(&lie, &d, &lie.bracket(&a, &b)).unwrap();
        let rhs = &lie.bracket(&apply(&lie, &d, &a).unwrap(), &b)
            + &lie.bracket(&a, &apply(&lie, &d, &b).unwrap());
        if lhs != rhs {
            failures.push(format!("leibniz d = {d}, a = {a}, b = {b}"));
        }
    }

    // Dimension series round trip on 20 random generator specs.
    for k in 0..20 {
        let t = rng.gen_range(1..=10u32);
        let mut gens = GeneratorSpec::new();
        for _ in 0..rng.gen_range(1..=5) {
            let m = random_bidegree(&mut rng, 1, t as i64);
            gens.add(m, rng.gen_range(1..=3)).unwrap();
        }
        let dims = free_lie_dims(&gens, t).unwrap();
        if generator_count_from_dims(&dims).unwrap() != gens.restricted(t) {
            failures.push(format!("round trip #{k} at T = {t}"));
        }
    }

    // Character round trip.
    let mut characters = 0;
    for w in [2, 4, 6] {
        for m1 in -20..=20 {
            for m2 in -20..=20 {
                let m = md(m1, m2);
                match descend_character(m, w) {
                    Ok((a, b)) => {
                        characters += 1;
                        if ascend_character(a, b, w).unwrap() != m {
                            failures.push(format!("character {m} for w = {w}"));
                        }
                    }
                    Err(_) if (m1 - m2).rem_euclid(w) != 0 => {}
                    Err(e) => failures.push(format!("character {m} for w = {w}: {e}")),
                }
            }
        }
    }

    report(
        6,
        "property suites",
        failures.is_empty(),
        t0,
        60,
        format!(
            "{triples} Jacobi triples, 1000 Leibniz samples, 20 round trips, \
             {characters} characters; failures: {:?}",
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_7_fault_injection_breaks_jacobi() {
    let t0 = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_cmlie"))
        .args(["verify", "--max-degree", "8", "--inject-fault", "flip-x-bracket", "--format", "json"])
        .env_remove("CMLIE_CONFIG")
        .output()
        .expect("spawn cmlie");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("JSON output");
    let jacobi = v["provenance"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "jacobi")
        .expect("jacobi check present");
    let code = out.status.code();
    let ok = jacobi["passed"] == false && code.is_some_and(|c| c != 0);
    report(
        7,
        "negative control",
        ok,
        t0,
        60,
        format!("jacobi passed = {}, exit status {code:?}", jacobi["passed"]),
    );
}
