//! End-to-end numerical verification of a code's sharing scheme.
//!
//! The pipeline classifies the code symbolically, then checks the result
//! against the state-vector oracle: information groups by brute force,
//! absence on forbidden sets, twirl concealment on intermediate sets, and
//! recovery by an authorized set that holds the reconstructed twirl key.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classical::key_transport;
use crate::code::StabilizerCode;
use crate::dense::DenseVector;
use crate::error::{Error, Result};
use crate::infogroup::{classify, info_group, SchemeTriplet, SubsetClass, DEFAULT_CLASSIFY_MAX_N};
use crate::oracle::{basis_state, random_state, Oracle, STATE_TOL};
use crate::subset::Subset;
use crate::twirl::{twirl_plan, TwirlPlan};

/// Number of random secrets tried per subset.
pub const DEFAULT_RANDOM_SECRETS: usize = 5;

/// Basis states are added to the secrets when there are at most this many.
const BASIS_SECRET_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckSelection {
    All,
    Concealment,
    Choi,
    Infogroup,
    Duality,
}

impl CheckSelection {
    fn includes(self, other: CheckSelection) -> bool {
        self == CheckSelection::All || self == other
    }
}

impl FromStr for CheckSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(CheckSelection::All),
            "concealment" => Ok(CheckSelection::Concealment),
            "choi" => Ok(CheckSelection::Choi),
            "infogroup" => Ok(CheckSelection::Infogroup),
            "duality" => Ok(CheckSelection::Duality),
            other => Err(Error::input(format!(
                "unknown check {other:?}; expected all, concealment, choi, infogroup or duality"
            ))),
        }
    }
}

impl fmt::Display for CheckSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckSelection::All => "all",
            CheckSelection::Concealment => "concealment",
            CheckSelection::Choi => "choi",
            CheckSelection::Infogroup => "infogroup",
            CheckSelection::Duality => "duality",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct SimulateOptions {
    pub seed: u64,
    pub checks: CheckSelection,
    /// Restrict subset-dependent checks to this subset.
    pub subset: Option<Subset>,
    /// Amplitude cap for dense objects.
    pub cap: usize,
    pub random_secrets: usize,
    /// Largest trace distance or defect counted as zero.
    pub tolerance: f64,
}

impl SimulateOptions {
    pub fn new(seed: u64, checks: CheckSelection, cap: usize) -> Self {
        SimulateOptions { seed, checks, subset: None, cap, random_secrets: DEFAULT_RANDOM_SECRETS, tolerance: STATE_TOL }
    }
}

/// Outcome of one check, aggregated over the subsets it ran on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    /// Worst value observed; compared against `tolerance` unless it is a count.
    pub measured: f64,
    pub tolerance: f64,
    pub subsets_checked: usize,
    pub worst_subset: Option<Subset>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub code: String,
    pub seed: u64,
    pub checks: CheckSelection,
    pub subset: Option<Subset>,
    pub passed: bool,
    pub verdicts: Vec<Verdict>,
}

impl SimulationReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("{} (seed {}, checks {})\n", self.code, self.seed, self.checks);
        for v in &self.verdicts {
            let worst = v.worst_subset.map(|s| format!(" worst on {s}")).unwrap_or_default();
            out.push_str(&format!(
                "{} {:<18} measured {:.3e} (tolerance {:.0e}) over {} subsets{worst}; {}\n",
                if v.passed { "PASS" } else { "FAIL" },
                v.check,
                v.measured,
                v.tolerance,
                v.subsets_checked,
                v.detail
            ));
        }
        out.push_str(if self.passed { "all checks passed\n" } else { "some checks failed\n" });
        out
    }
}

/// Running maximum of a per-subset measurement.
struct Worst {
    value: f64,
    subset: Option<Subset>,
    count: usize,
}

impl Worst {
    fn new() -> Self {
        Worst { value: 0.0, subset: None, count: 0 }
    }

    fn record(&mut self, subset: Subset, value: f64) {
        self.count += 1;
        if self.subset.is_none() || value > self.value {
            self.value = value;
            self.subset = Some(subset);
        }
    }

    fn verdict(self, check: &str, tolerance: f64, detail: String) -> Verdict {
        Verdict {
            check: check.to_string(),
            passed: self.value < tolerance,
            measured: self.value,
            tolerance,
            subsets_checked: self.count,
            worst_subset: self.subset,
            detail,
        }
    }
}

fn count_verdict(check: &str, failures: usize, checked: usize, first: Option<Subset>, detail: String) -> Verdict {
    Verdict {
        check: check.to_string(),
        passed: failures == 0,
        measured: failures as f64,
        tolerance: 1.0,
        subsets_checked: checked,
        worst_subset: first,
        detail,
    }
}

fn secrets(dim: usize, count: usize, seed: u64) -> Vec<DenseVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<DenseVector> = (0..count).map(|_| random_state(dim, &mut rng)).collect();
    if dim <= BASIS_SECRET_LIMIT {
        out.extend((0..dim).map(|j| basis_state(dim, j)));
    }
    out
}

/// Runs the selected checks. Only resource and invariant failures are
/// errors; failed checks are reported in the verdicts.
pub fn simulate(code: &StabilizerCode, options: &SimulateOptions) -> Result<SimulationReport> {
    let n = code.num_carriers();
    if let Some(s) = options.subset {
        if !s.is_subset_of(Subset::full(n)) {
            return Err(Error::input(format!("subset {s} names players beyond n = {n}")));
        }
    }
    let triplet = classify(code, DEFAULT_CLASSIFY_MAX_N)?;
    let selected: Vec<Subset> = match options.subset {
        Some(s) => vec![s],
        None => triplet.records.iter().map(|r| r.subset).collect(),
    };
    let checks = options.checks;
    let mut verdicts = Vec::new();

    if checks.includes(CheckSelection::Duality) {
        verdicts.extend(duality_verdicts(&triplet));
    }
    let needs_oracle = [CheckSelection::Infogroup, CheckSelection::Concealment, CheckSelection::Choi]
        .into_iter()
        .any(|c| checks.includes(c));
    if needs_oracle {
        let oracle = Oracle::new(code, options.cap)?;
        let plan = twirl_plan(code, &triplet)?;
        let dim = oracle.codewords().len();
        let secrets = secrets(dim, options.random_secrets, options.seed);
        if checks.includes(CheckSelection::Infogroup) {
            verdicts.push(infogroup_verdict(code, &oracle, &selected)?);
        }
        if checks.includes(CheckSelection::Concealment) {
            verdicts.extend(concealment_verdicts(&oracle, &triplet, &plan, &selected, &secrets, options.tolerance)?);
        }
        if checks.includes(CheckSelection::Choi) {
            verdicts.extend(choi_verdicts(&oracle, &triplet, &plan, &selected, &secrets, options.seed, options.tolerance)?);
        }
    }

    Ok(SimulationReport {
        code: code.name().to_string(),
        seed: options.seed,
        checks,
        subset: options.subset,
        passed: verdicts.iter().all(|v| v.passed),
        verdicts,
    })
}

fn duality_verdicts(triplet: &SchemeTriplet) -> Vec<Verdict> {
    let total = triplet.records.len();
    let dual = triplet.duality_violations();
    let mono = triplet.monotonicity_violations();
    vec![
        count_verdict("duality", dual.len(), total, dual.first().copied(), "S in A iff complement in F".into()),
        count_verdict(
            "monotonicity",
            mono.len(),
            total,
            mono.first().map(|p| p.0),
            "A closed upward, F closed downward".into(),
        ),
    ]
}

fn infogroup_verdict(code: &StabilizerCode, oracle: &Oracle, subsets: &[Subset]) -> Result<Verdict> {
    let mut mismatched = Vec::new();
    for &s in subsets {
        let symbolic = info_group(code, s)?;
        let dense = oracle.info_group_bruteforce(s)?;
        if !symbolic.same_group(&dense) {
            mismatched.push(s);
        }
    }
    let detail = if mismatched.is_empty() {
        "symbolic and brute-force groups agree".to_string()
    } else {
        format!("{} subsets disagree", mismatched.len())
    };
    Ok(count_verdict("infogroup", mismatched.len(), subsets.len(), mismatched.first().copied(), detail))
}

fn concealment_verdicts(
    oracle: &Oracle,
    triplet: &SchemeTriplet,
    plan: &TwirlPlan,
    subsets: &[Subset],
    secrets: &[DenseVector],
    tol: f64,
) -> Result<Vec<Verdict>> {
    let mut absence = Worst::new();
    let mut concealment = Worst::new();
    let mut leak = Worst::new();
    for &s in subsets {
        match triplet.class_of(s) {
            SubsetClass::F => absence.record(s, oracle.verify_absence(s, secrets)?),
            SubsetClass::I => {
                concealment.record(s, oracle.verify_concealment(plan, secrets, s)?);
                leak.record(s, oracle.verify_absence(s, secrets)?);
            }
            SubsetClass::A => {}
        }
    }
    let mut out = vec![absence.verdict(
        "absence",
        tol,
        format!("forbidden sets see a secret-independent state ({} secrets)", secrets.len()),
    )];
    if concealment.count > 0 {
        let leaked = leak.value;
        out.push(concealment.verdict(
            "concealment",
            tol,
            format!("after averaging over {} twirl keys; untwirled distance {leaked:.3e}", plan.all_keys().len()),
        ));
    }
    Ok(out)
}

fn choi_verdicts(
    oracle: &Oracle,
    triplet: &SchemeTriplet,
    plan: &TwirlPlan,
    subsets: &[Subset],
    secrets: &[DenseVector],
    seed: u64,
    tol: f64,
) -> Result<Vec<Verdict>> {
    let mut authorized = Worst::new();
    let mut forbidden = Worst::new();
    for &s in subsets {
        match triplet.class_of(s) {
            SubsetClass::A => {
                let r = oracle.choi_check(s)?;
                authorized.record(s, r.entanglement_defect.max(r.complement_defect));
            }
            SubsetClass::F => forbidden.record(s, oracle.choi_check(s)?.decoupling_defect),
            SubsetClass::I => {}
        }
    }
    let mut out = vec![
        authorized.verdict("choi_authorized", tol, "reference decouples from the complement".into()),
        forbidden.verdict("choi_forbidden", tol, "reference decouples from the subset".into()),
    ];
    if !plan.is_empty() {
        out.extend(keyed_recovery_verdicts(oracle, triplet, plan, subsets, secrets, seed, tol)?);
    }
    Ok(out)
}

/// Shares a fresh key, reconstructs it from an authorized set, and checks
/// that the set can still undo the keyed encoding.
fn keyed_recovery_verdicts(
    oracle: &Oracle,
    triplet: &SchemeTriplet,
    plan: &TwirlPlan,
    subsets: &[Subset],
    secrets: &[DenseVector],
    seed: u64,
    tol: f64,
) -> Result<Vec<Verdict>> {
    let holders: Vec<Subset> = match subsets {
        [s] if triplet.class_of(*s) == SubsetClass::A => vec![*s],
        _ => triplet.minimal_authorized(),
    };
    let transport = key_transport(plan, triplet, seed)?;
    let code = oracle.code();
    let mut key_errors = Vec::new();
    let mut channel = Worst::new();
    let mut decoding = Worst::new();
    for &holder in &holders {
        let key = transport.shares.reconstruct(holder)?;
        if key != transport.key {
            key_errors.push(holder);
            continue;
        }
        let twirl = plan.twirl_operator(&key)?;
        let report = oracle.choi_check_with(holder, Some(&twirl))?;
        channel.record(holder, report.entanglement_defect.max(report.complement_defect));

        // The keyed encoding differs from the plain one by the encoded twirl,
        // which the holders can undo up to a global phase.
        let u = twirl.dense_matrix(oracle.cap())?;
        let undo = code.encoded_operator(&twirl.symplectic()).dense_matrix(oracle.cap())?.adjoint();
        let mut worst: f64 = 0.0;
        for psi in secrets {
            let keyed = oracle.encode(&(&u * psi))?;
            let plain = oracle.encode(psi)?;
            let overlap: Complex64 = (plain.adjoint() * (&undo * keyed))[(0, 0)];
            worst = worst.max(1.0 - overlap.norm());
        }
        decoding.record(holder, worst);
    }
    Ok(vec![
        count_verdict(
            "key_reconstruction",
            key_errors.len(),
            holders.len(),
            key_errors.first().copied(),
            format!("key of {} digits shared with {}", transport.key.len(), transport.shares.kind),
        ),
        channel.verdict("keyed_channel", tol, "Choi check of the keyed encoding".into()),
        decoding.verdict("keyed_decoding", tol, "1 - fidelity after undoing the encoded twirl".into()),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::catalog;
    use crate::dense::DEFAULT_AMPLITUDE_CAP;
    use crate::report::{from_structured, to_structured};

    fn run(name: &str, n: Option<usize>, checks: CheckSelection, seed: u64) -> SimulationReport {
        let code = catalog(name, n).unwrap();
        simulate(&code, &SimulateOptions::new(seed, checks, DEFAULT_AMPLITUDE_CAP)).unwrap()
    }

    #[test]
    fn cnot_all_checks_pass() {
        let r = run("cnot_2_1", None, CheckSelection::All, 7);
        assert!(r.passed, "{}", r.to_text());
        let names: Vec<&str> = r.verdicts.iter().map(|v| v.check.as_str()).collect();
        for want in ["duality", "infogroup", "absence", "concealment", "choi_authorized", "keyed_channel", "keyed_decoding"] {
            assert!(names.contains(&want), "{names:?}");
        }
    }

    #[test]
    fn four_two_two_concealment() {
        let r = run("four_two_two", None, CheckSelection::Concealment, 1);
        assert!(r.passed, "{}", r.to_text());
        let c = r.verdicts.iter().find(|v| v.check == "concealment").unwrap();
        assert!(c.measured < STATE_TOL);
        assert_eq!(c.subsets_checked, 6);
    }

    #[test]
    fn single_subset() {
        let code = catalog("ghz_n", Some(4)).unwrap();
        let mut opts = SimulateOptions::new(3, CheckSelection::All, DEFAULT_AMPLITUDE_CAP);
        opts.subset = Some(Subset::from_players(&[1, 3], 4).unwrap());
        let r = simulate(&code, &opts).unwrap();
        assert!(r.passed, "{}", r.to_text());
        let c = r.verdicts.iter().find(|v| v.check == "concealment").unwrap();
        assert_eq!(c.subsets_checked, 1);
    }

    #[test]
    fn oversized_code() {
        let code = catalog("ghz_n", Some(13)).unwrap();
        let opts = SimulateOptions::new(0, CheckSelection::Concealment, DEFAULT_AMPLITUDE_CAP);
        assert!(matches!(simulate(&code, &opts), Err(Error::Resource { .. })));
        // symbolic checks need no amplitudes
        let opts = SimulateOptions::new(0, CheckSelection::Duality, DEFAULT_AMPLITUDE_CAP);
        assert!(simulate(&code, &opts).unwrap().passed);
    }

    #[test]
    fn deterministic_and_round_trips() {
        let a = to_structured(&run("cnot_2_1", None, CheckSelection::All, 11));
        let b = to_structured(&run("cnot_2_1", None, CheckSelection::All, 11));
        assert_eq!(a, b);
        let parsed: SimulationReport = from_structured(&a).unwrap();
        assert_eq!(to_structured(&parsed), a);
    }

    #[test]
    fn check_names_parse() {
        for c in ["all", "concealment", "choi", "infogroup", "duality"] {
            assert_eq!(c.parse::<CheckSelection>().unwrap().to_string(), c);
        }
        assert!("everything".parse::<CheckSelection>().is_err());
    }
}
