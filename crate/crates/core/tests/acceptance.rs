//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any failed or ran over its time budget.

// `ensure!(x < tol)` must fail on NaN, so the negation is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qss_core::classical::{monotone_share, shamir_evaluate, shamir_share};
use qss_core::code::{catalog, load, DEFAULT_DISTANCE_CAP};
use qss_core::dense::{max_abs_diff, DenseOperator, DenseVector, DEFAULT_AMPLITUDE_CAP};
use qss_core::infogroup::{classify, info_group, SchemeTriplet, DEFAULT_CLASSIFY_MAX_N};
use qss_core::oracle::{basis_state, random_state, Oracle, IDENTITY_TOL, STATE_TOL};
use qss_core::simulate::{simulate, CheckSelection, SimulateOptions};
use qss_core::subset::all_subsets;
use qss_core::twirl::twirl_plan;
use qss_core::{Error, PauliProduct, Prime, StabilizerCode, Subset};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !($cond) {
            return Err(format!($($fmt)+));
        }
    };
}

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn code(name: &str, n: Option<usize>) -> StabilizerCode {
    catalog(name, n).unwrap()
}

fn classified(c: &StabilizerCode) -> SchemeTriplet {
    classify(c, DEFAULT_CLASSIFY_MAX_N).unwrap()
}

fn set(players: &[usize], n: usize) -> Subset {
    Subset::from_players(players, n).unwrap()
}

fn subsets_where(n: usize, pred: impl Fn(Subset) -> bool) -> Vec<Subset> {
    all_subsets(n).into_iter().filter(|&s| pred(s)).collect()
}

fn sorted(mut v: Vec<Subset>) -> Vec<Subset> {
    v.sort();
    v
}

fn check_partition(t: &SchemeTriplet, a: Vec<Subset>, f: Vec<Subset>, i: Vec<Subset>) -> Result<(), String> {
    ensure!(sorted(t.authorized()) == sorted(a), "A differs: {:?}", t.authorized());
    ensure!(sorted(t.forbidden()) == sorted(f), "F differs: {:?}", t.forbidden());
    ensure!(sorted(t.intermediate()) == sorted(i), "I differs: {:?}", t.intermediate());
    Ok(())
}

/// `Z` on one input qudit, as a symplectic vector.
const Z1: [u32; 2] = [0, 1];
const X1: [u32; 2] = [1, 0];

fn random_secrets(dim: usize, count: usize, seed: u64) -> Vec<DenseVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_state(dim, &mut rng)).collect()
}

fn five_qubit_threshold() -> Outcome {
    let t = classified(&code("five_qubit", None));
    check_partition(
        &t,
        subsets_where(5, |s| s.len() >= 3),
        subsets_where(5, |s| s.len() <= 2),
        vec![],
    )?;
    Ok(format!("|A| = {}, |F| = {}, I empty", t.authorized().len(), t.forbidden().len()))
}

fn four_two_two_ramp() -> Outcome {
    let c = code("four_two_two", None);
    let t = classified(&c);
    check_partition(
        &t,
        subsets_where(4, |s| s.len() >= 3),
        subsets_where(4, |s| s.len() <= 1),
        subsets_where(4, |s| s.len() == 2),
    )?;
    let plan = twirl_plan(&c, &t).unwrap();
    ensure!(plan.r() + plan.s() == 2, "r + s = {} + {}", plan.r(), plan.s());
    Ok(format!("I = six 2-subsets, G(I) has r = {}, s = {}", plan.r(), plan.s()))
}

fn steane_no_intermediate() -> Outcome {
    let t = classified(&code("steane", None));
    for r in &t.records {
        if r.subset.len() >= 5 {
            ensure!(t.class_of(r.subset) == qss_core::SubsetClass::A, "{} not authorized", r.subset);
        }
        if r.subset.len() <= 2 {
            ensure!(t.class_of(r.subset) == qss_core::SubsetClass::F, "{} not forbidden", r.subset);
        }
    }
    ensure!(t.intermediate().is_empty(), "I = {:?}", t.intermediate());
    Ok(format!("|A| = {}, |F| = {}, I empty", t.authorized().len(), t.forbidden().len()))
}

fn cnot_example() -> Outcome {
    let c = code("cnot_2_1", None);
    for s in [set(&[1], 2), set(&[2], 2)] {
        let g = info_group(&c, s).unwrap();
        ensure!(g.generators() == [Z1.to_vec()], "G({s}) = {:?}", g.generators());
    }
    let t = classified(&c);
    check_partition(&t, vec![set(&[1, 2], 2)], vec![Subset::EMPTY], vec![set(&[1], 2), set(&[2], 2)])?;
    let plan = twirl_plan(&c, &t).unwrap();
    ensure!(plan.key_length() == 1, "l = {}", plan.key_length());
    ensure!(plan.twirl_generators[0].symplectic() == X1, "twirl = {}", plan.twirl_generators[0]);

    let oracle = Oracle::new(&c, DEFAULT_AMPLITUDE_CAP).unwrap();
    let secrets = random_secrets(2, 6, 35);
    let mut worst: f64 = 0.0;
    for s in t.intermediate() {
        worst = worst.max(oracle.verify_concealment(&plan, &secrets, s).unwrap());
    }
    ensure!(worst < STATE_TOL, "concealment distance {worst:e}");

    let report = simulate(&c, &SimulateOptions::new(7, CheckSelection::All, DEFAULT_AMPLITUDE_CAP)).unwrap();
    ensure!(report.passed, "simulate failed:\n{}", report.to_text());
    let keyed = report.verdicts.iter().find(|v| v.check == "keyed_channel").ok_or("no keyed Choi verdict")?;
    ensure!(keyed.worst_subset == Some(set(&[1, 2], 2)), "key held by {:?}", keyed.worst_subset);
    Ok(format!("concealment {worst:.1e} over 6 secrets; keyed Choi defect {:.1e}", keyed.measured))
}

fn ghz_family() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 3..=6 {
        let c = code("ghz_n", Some(n));
        let full = Subset::full(n);
        for s in all_subsets(n) {
            if s.is_empty() || s == full {
                continue;
            }
            let g = info_group(&c, s).unwrap();
            ensure!(g.generators() == [Z1.to_vec()], "n = {n}: G({s}) = {:?}", g.generators());
        }
        let t = classified(&c);
        let proper = subsets_where(n, |s| !s.is_empty() && s != full);
        check_partition(&t, vec![full], vec![Subset::EMPTY], proper)?;
        let plan = twirl_plan(&c, &t).unwrap();
        ensure!(plan.key_length() == 1, "n = {n}: l = {}", plan.key_length());
        let oracle = Oracle::new(&c, DEFAULT_AMPLITUDE_CAP).unwrap();
        let mut secrets = random_secrets(2, 5, n as u64);
        secrets.extend([basis_state(2, 0), basis_state(2, 1)]);
        for s in t.intermediate() {
            worst = worst.max(oracle.verify_concealment(&plan, &secrets, s).unwrap());
        }
    }
    ensure!(worst < STATE_TOL, "concealment distance {worst:e}");
    Ok(format!("n = 3..6, worst concealment distance {worst:.1e}"))
}

/// Catalog codes (plus the shipped qutrit code) with at most 128 amplitudes.
fn small_codes() -> Vec<StabilizerCode> {
    let mut out = vec![code("cnot_2_1", None), code("five_qubit", None), code("four_two_two", None), code("steane", None)];
    out.extend((2..=7).map(|n| code("ghz_n", Some(n))));
    out.push(load(concat!(env!("CARGO_MANIFEST_DIR"), "/codes/qutrit_3_1_2.json")).unwrap());
    out
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for c in small_codes() {
        let oracle = Oracle::new(&c, 128).unwrap();
        for s in all_subsets(c.num_carriers()) {
            let symbolic = info_group(&c, s).unwrap();
            let dense = oracle.info_group_bruteforce(s).unwrap();
            ensure!(
                symbolic.same_group(&dense),
                "{} on {s}: symbolic {:?} vs dense {:?}",
                c.name(),
                symbolic.generators(),
                dense.generators()
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} subsets across {} codes, zero discrepancies", small_codes().len()))
}

fn duality_and_monotonicity() -> Outcome {
    let mut codes = small_codes();
    codes.extend((8..=12).map(|n| code("ghz_n", Some(n))));
    let mut checked = 0;
    for c in &codes {
        let n = c.num_carriers();
        let t = classified(c);
        let full_of = |s: Subset| t.class_of(s) == qss_core::SubsetClass::A;
        let none_of = |s: Subset| t.class_of(s) == qss_core::SubsetClass::F;
        for s in all_subsets(n) {
            ensure!(full_of(s) == none_of(s.complement(n)), "{}: duality fails at {s}", c.name());
            for extra in 0..n {
                let bigger = s.with(extra);
                ensure!(!full_of(s) || full_of(bigger), "{}: A not monotone at {s} -> {bigger}", c.name());
                ensure!(!none_of(bigger) || none_of(s), "{}: F not monotone at {s} -> {bigger}", c.name());
            }
            checked += 1;
        }
        ensure!(t.duality_violations().is_empty() && t.monotonicity_violations().is_empty(), "{}", c.name());
    }
    Ok(format!("{checked} subsets across {} codes", codes.len()))
}

fn distances() -> Outcome {
    let cases = [("five_qubit", None, 3), ("four_two_two", None, 2), ("steane", None, 3), ("cnot_2_1", None, 1)];
    for (name, n, want) in cases {
        let d = code(name, n).distance(DEFAULT_DISTANCE_CAP).unwrap();
        ensure!(d == want, "{name}: distance {d}, expected {want}");
    }
    for n in 2..=8 {
        let d = code("ghz_n", Some(n)).distance(DEFAULT_DISTANCE_CAP).unwrap();
        ensure!(d == 1, "ghz_{n}: distance {d}");
    }
    let five = code("five_qubit", None).ramp_parameters(DEFAULT_DISTANCE_CAP).unwrap();
    ensure!((five.q, five.l) == (3, 1), "five_qubit ramp ({}, {})", five.q, five.l);
    let ftt = code("four_two_two", None).ramp_parameters(DEFAULT_DISTANCE_CAP).unwrap();
    ensure!((ftt.q, ftt.l) == (3, 2), "four_two_two ramp ({}, {})", ftt.q, ftt.l);
    Ok("3, 2, 3, 1, 1 (ghz n = 2..8); ramps (3,1) and (3,2)".into())
}

fn twirl_necessity() -> Outcome {
    let mut lines = Vec::new();
    let targets = [("cnot_2_1", None), ("ghz_n", Some(3)), ("ghz_n", Some(4)), ("ghz_n", Some(5))];
    for (name, n) in targets {
        let c = code(name, n);
        let t = classified(&c);
        let plan = twirl_plan(&c, &t).unwrap();
        let oracle = Oracle::new(&c, DEFAULT_AMPLITUDE_CAP).unwrap();
        let mut secrets = random_secrets(2, 5, 9);
        secrets.extend([basis_state(2, 0), basis_state(2, 1)]);
        for idx in 0..plan.key_length() {
            let weaker = plan.without_generator(idx);
            let best = t
                .intermediate()
                .into_iter()
                .map(|s| oracle.verify_concealment(&weaker, &secrets, s).unwrap())
                .fold(0.0, f64::max);
            ensure!(best >= 0.5, "{}: dropping generator {idx} leaves distance {best}", c.name());
            lines.push(format!("{} -{idx}: {best:.3}", c.name()));
        }
    }
    Ok(lines.join(", "))
}

/// Lagrange interpolation at zero, written out independently of the library.
fn interpolate_at_zero(points: &[(u64, u64)], p: u64) -> u64 {
    let pow = |mut b: u64, mut e: u64| {
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
    };
    let mut total = 0;
    for (i, &(xi, yi)) in points.iter().enumerate() {
        let (mut num, mut den) = (1, 1);
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i != j {
                num = num * (p - xj % p) % p;
                den = den * ((xi + p - xj % p) % p) % p;
            }
        }
        total = (total + yi * num % p * pow(den, p - 2)) % p;
    }
    total
}

fn classical_layer() -> Outcome {
    let mut reconstructions = 0usize;
    let mut refusals = 0usize;
    for p_val in [5u64, 7] {
        let p = Prime::new(p_val).unwrap();
        for n in 1..=5 {
            for q in 1..=n {
                if p_val <= n as u64 {
                    // only P − 1 nonzero evaluation points exist
                    let refused = shamir_share(&[0], q, n, p, 0);
                    ensure!(matches!(refused, Err(Error::Input(_))), "P={p_val} ({q},{n}) accepted: {refused:?}");
                    refusals += 1;
                    continue;
                }
                for secret in 0..p_val as u32 {
                    let shares = shamir_share(&[secret], q, n, p, 1000 * q as u64 + secret as u64).unwrap();
                    for s in all_subsets(n) {
                        let got = shares.reconstruct(s);
                        if s.len() >= q {
                            ensure!(got.as_deref() == Ok(&[secret][..]), "P={p_val} ({q},{n}) {s}: {got:?}");
                            let points: Vec<(u64, u64)> =
                                s.players().iter().map(|&pl| (pl as u64, shares.shares[&pl][0] as u64)).collect();
                            ensure!(interpolate_at_zero(&points, p_val) == secret as u64, "oracle disagrees");
                            reconstructions += 1;
                        } else {
                            ensure!(got.is_err(), "P={p_val} ({q},{n}) {s} reconstructed from too few shares");
                        }
                    }
                }
                // Every unauthorized set sees the same multiset of share
                // tuples whatever the key, over all polynomial coefficients.
                let coeff_count = (p_val as usize).pow((q - 1) as u32);
                for s in subsets_where(n, |s| s.len() < q) {
                    let mut reference: Option<BTreeMap<Vec<u32>, usize>> = None;
                    for secret in 0..p_val as u32 {
                        let mut counts = BTreeMap::new();
                        for idx in 0..coeff_count {
                            let mut rem = idx;
                            let coeffs: Vec<u32> = (1..q)
                                .map(|_| {
                                    let c = (rem % p_val as usize) as u32;
                                    rem /= p_val as usize;
                                    c
                                })
                                .collect();
                            let tuple: Vec<u32> =
                                s.players().iter().map(|&x| shamir_evaluate(secret, &coeffs, x as u32, p)).collect();
                            *counts.entry(tuple).or_insert(0) += 1;
                        }
                        match &reference {
                            None => reference = Some(counts),
                            Some(r) => ensure!(r == &counts, "P={p_val} ({q},{n}) {s}: shares depend on the key"),
                        }
                    }
                }
            }
        }
    }

    let structures: Vec<(usize, Vec<Vec<usize>>)> = vec![
        (4, vec![vec![1, 2], vec![3, 4]]),
        (4, vec![vec![1, 2], vec![2, 3], vec![3, 4]]),
        (5, vec![vec![1], vec![2, 3, 4], vec![4, 5]]),
    ];
    let d = Prime::new(3).unwrap();
    for (n, sets) in structures {
        let minimal: Vec<Subset> = sets.iter().map(|m| set(m, n)).collect();
        let key = vec![2, 0, 1];
        let shares = monotone_share(&key, &minimal, n, d, 17).unwrap();
        for s in all_subsets(n) {
            let authorized = minimal.iter().any(|m| m.is_subset_of(s));
            match shares.reconstruct(s) {
                Ok(k) => ensure!(authorized && k == key, "monotone {sets:?}: {s} gave {k:?}"),
                Err(_) => ensure!(!authorized, "monotone {sets:?}: {s} refused"),
            }
        }
    }
    Ok(format!(
        "{reconstructions} Shamir reconstructions, secrecy exhaustive, {refusals} P <= n refusals, 3 monotone structures"
    ))
}

/// `X = Σ|j⟩⟨j+1|`, `Z = diag(ω^j)`, site 0 most significant.
fn independent_pauli(d: usize, x: &[u32], z: &[u32]) -> DenseOperator {
    let omega = |k: usize| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k % d) as f64 / d as f64);
    let mut acc = DenseOperator::identity(1, 1);
    for (&a, &b) in x.iter().zip(z) {
        let site = DenseOperator::from_fn(d, d, |r, c| {
            // (X^a Z^b)|c⟩ = ω^{bc}|c − a⟩
            if (r + a as usize) % d == c {
                omega(b as usize * c)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        acc = acc.kronecker(&site);
    }
    acc
}

fn numerical_identities() -> Outcome {
    // Pauli basis orthonormality: Tr[P† Q] = D^m δ_PQ.
    let mut pairs = 0;
    for (d, m) in [(2usize, 1usize), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let prime = Prime::new(d as u64).unwrap();
        let count = d.pow(2 * m as u32);
        let ops: Vec<DenseOperator> = (0..count)
            .map(|idx| {
                let v: Vec<u32> = qss_core::dense::digits(idx, d, 2 * m).into_iter().map(|t| t as u32).collect();
                let p = PauliProduct::from_symplectic(prime, &v).unwrap();
                let dense = p.dense_matrix(DEFAULT_AMPLITUDE_CAP).unwrap();
                let reference = independent_pauli(d, &v[..m], &v[m..]);
                assert!(max_abs_diff(&dense, &reference) < IDENTITY_TOL, "dense matrix of {p}");
                dense
            })
            .collect();
        let dim = d.pow(m as u32) as f64;
        for (i, a) in ops.iter().enumerate() {
            for (j, b) in ops.iter().enumerate() {
                let ip = (a.adjoint() * b).trace();
                let want = if i == j { dim } else { 0.0 };
                ensure!((ip - Complex64::new(want, 0.0)).norm() < IDENTITY_TOL, "D={d} m={m} pair ({i},{j}): {ip}");
                pairs += 1;
            }
        }
    }

    // Reduced states rebuilt from the Pauli expansion of the secret.
    let mut worst: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for c in small_codes() {
        let oracle = Oracle::new(&c, DEFAULT_AMPLITUDE_CAP).unwrap();
        let dim = oracle.codewords().len();
        for _ in 0..2 {
            let psi = random_state(dim, &mut rng);
            let encoded = oracle.encode(&psi).unwrap();
            for s in all_subsets(c.num_carriers()) {
                if rng.gen_bool(0.5) && !s.is_empty() {
                    continue;
                }
                let direct = oracle.reduced_state(&encoded, s);
                let expanded = oracle.fourier_reduced_state(&psi, s).unwrap();
                worst = worst.max(max_abs_diff(&direct, &expanded));
            }
        }
    }
    ensure!(worst < STATE_TOL, "expansion mismatch {worst:e}");
    Ok(format!("{pairs} basis pairs orthonormal; expansion mismatch {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "five-qubit threshold (3,5)", budget: Duration::from_secs(5), run: five_qubit_threshold },
        Criterion { id: 2, name: "[[4,2,2]] ramp and G(I) rank", budget: Duration::from_secs(5), run: four_two_two_ramp },
        Criterion { id: 3, name: "Steane has no intermediate sets", budget: Duration::from_secs(30), run: steane_no_intermediate },
        Criterion { id: 4, name: "CNOT example end to end", budget: Duration::from_secs(60), run: cnot_example },
        Criterion { id: 5, name: "GHZ family n = 3..6", budget: Duration::from_secs(60), run: ghz_family },
        Criterion { id: 6, name: "symbolic vs brute-force information groups", budget: Duration::from_secs(300), run: oracle_equivalence },
        Criterion { id: 7, name: "duality and monotonicity", budget: Duration::from_secs(60), run: duality_and_monotonicity },
        Criterion { id: 8, name: "code distances and ramp parameters", budget: Duration::from_secs(60), run: distances },
        Criterion { id: 9, name: "twirl generators are all necessary", budget: Duration::from_secs(60), run: twirl_necessity },
        Criterion { id: 10, name: "classical key sharing", budget: Duration::from_secs(60), run: classical_layer },
        Criterion { id: 11, name: "expansion and orthonormality identities", budget: Duration::from_secs(120), run: numerical_identities },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(detail) if elapsed <= c.budget => format!("PASS [{}] {} ({:.2}s): {detail}", c.id, c.name, elapsed.as_secs_f64()),
            Ok(detail) => format!(
                "FAIL [{}] {} ({:.2}s, budget {}s): {detail}",
                c.id,
                c.name,
                elapsed.as_secs_f64(),
                c.budget.as_secs()
            ),
            Err(msg) => format!("FAIL [{}] {} ({:.2}s): {msg}", c.id, c.name, elapsed.as_secs_f64()),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("{verdict}");
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
