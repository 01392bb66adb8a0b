//! Twirl plans that hide everything intermediate subsets can learn.
//!
//! In the canonical frame of `G(I) = ⟨X_1, Z_1, …, X_r, Z_r, Z_{r+1}, …, Z_{r+s}⟩`
//! the twirl group is `⟨X_1, Z_1, …, X_r, Z_r, X_{r+1}, …, X_{r+s}⟩`. Its
//! generators are mapped back to ordinary Pauli products on the inputs, so
//! the key has `l = 2r + s` digits.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::code::StabilizerCode;
use crate::dense::root_of_unity;
use crate::error::{Error, Result};
use crate::infogroup::{InfoGroup, SchemeTriplet};
use crate::pauli::{symplectic_pairing, PauliProduct};
use crate::subset::Subset;
use crate::symplectic::CanonicalForm;

/// Access structure the classical key must be shared with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalPrescription {
    pub authorized: Vec<Subset>,
    /// `F ∪ I`
    pub forbidden: Vec<Subset>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwirlPlan {
    pub intermediate_group: InfoGroup,
    pub canonical: CanonicalForm,
    /// Original-frame generators, in the order `X_1, Z_1, …, X_r, Z_r, X_{r+1}, …, X_{r+s}`
    /// of the canonical frame.
    pub twirl_generators: Vec<PauliProduct>,
    pub classical: ClassicalPrescription,
}

impl TwirlPlan {
    pub fn key_length(&self) -> usize {
        self.twirl_generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twirl_generators.is_empty()
    }

    pub fn r(&self) -> usize {
        self.canonical.r
    }

    pub fn s(&self) -> usize {
        self.canonical.s
    }

    pub fn num_inputs(&self) -> usize {
        self.intermediate_group.num_qudits()
    }

    /// Same plan with generator `index` dropped. Used to probe whether a
    /// shorter key could still conceal.
    pub fn without_generator(&self, index: usize) -> TwirlPlan {
        let mut plan = self.clone();
        plan.twirl_generators.remove(index);
        plan
    }

    /// `Π_i T_i^{key_i}` in generator order.
    pub fn twirl_operator(&self, key: &[u32]) -> Result<PauliProduct> {
        if key.len() != self.key_length() {
            return Err(Error::input(format!("key has {} digits, plan needs {}", key.len(), self.key_length())));
        }
        let d = self.intermediate_group.modulus();
        let mut acc = PauliProduct::identity(d, self.num_inputs());
        for (g, &e) in self.twirl_generators.iter().zip(key) {
            acc = acc.multiply(&g.pow(e % d.get()))?;
        }
        Ok(acc)
    }

    /// All `D^l` keys, first digit most significant.
    pub fn all_keys(&self) -> Vec<Vec<u32>> {
        let p = self.intermediate_group.modulus().get() as usize;
        let l = self.key_length();
        (0..p.pow(l as u32))
            .map(|i| crate::dense::digits(i, p, l).into_iter().map(|v| v as u32).collect())
            .collect()
    }

    /// Structural invariants; an empty list means the plan is consistent.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let k = self.num_inputs();
        let (r, s) = (self.r(), self.s());
        let l = 2 * r + s;
        if self.key_length() != l {
            out.push(format!("key length {} differs from 2r+s = {l}", self.key_length()));
        }
        if self.intermediate_group.is_trivial() {
            return out;
        }
        if r + s != k {
            out.push(format!("r + s = {} but k = {k}", r + s));
        }
        if !(k..=2 * k).contains(&l) {
            out.push(format!("key length {l} outside [{k}, {}]", 2 * k));
        }
        // Transported forward, the generators must be exactly the canonical
        // X_1, Z_1, …, X_r, Z_r, X_{r+1}, …, X_{r+s}.
        for (idx, g) in self.twirl_generators.iter().enumerate() {
            let canon = self.canonical.to_canonical(&g.symplectic());
            let mut want = vec![0u32; 2 * k];
            if idx < 2 * r {
                let q = idx / 2;
                want[if idx % 2 == 0 { q } else { k + q }] = 1;
            } else {
                want[r + (idx - 2 * r)] = 1;
            }
            if canon != want {
                out.push(format!("twirl generator {idx} ({g}) is not the expected canonical operator"));
            }
        }
        out
    }
}

/// Group generated by `G(S)` over the given subsets (all of `I` for the plan).
pub fn intermediate_group(code: &StabilizerCode, triplet: &SchemeTriplet) -> Result<InfoGroup> {
    InfoGroup::join(code.modulus(), code.num_inputs(), &triplet.intermediate_groups)
}

/// Group generated by `G(S)` for an arbitrary collection of subsets.
pub fn group_of_subsets(code: &StabilizerCode, subsets: &[Subset]) -> Result<InfoGroup> {
    let groups = subsets.iter().map(|&s| crate::infogroup::info_group(code, s)).collect::<Result<Vec<_>>>()?;
    InfoGroup::join(code.modulus(), code.num_inputs(), &groups)
}

/// Twirl plan hiding `group`, with the classical key shared per `triplet`.
pub fn plan_for_group(group: InfoGroup, triplet: &SchemeTriplet) -> TwirlPlan {
    let canonical = group.canonical_form();
    let d = group.modulus();
    let mut gens = Vec::with_capacity(2 * canonical.r + canonical.s);
    for i in 0..canonical.r {
        gens.push(canonical.image_of_x(i));
        gens.push(canonical.image_of_z(i));
    }
    for j in 0..canonical.s {
        gens.push(canonical.image_of_x(canonical.r + j));
    }
    let twirl_generators =
        gens.iter().map(|v| PauliProduct::from_symplectic(d, v).expect("even length")).collect();
    let mut forbidden = triplet.forbidden();
    forbidden.extend(triplet.intermediate());
    forbidden.sort_by_key(|s| s.report_key());
    let classical = ClassicalPrescription { authorized: triplet.authorized(), forbidden };
    TwirlPlan { intermediate_group: group, canonical, twirl_generators, classical }
}

/// Plan for the whole intermediate structure. Empty `I` gives an empty plan (`l = 0`).
pub fn twirl_plan(code: &StabilizerCode, triplet: &SchemeTriplet) -> Result<TwirlPlan> {
    let group = intermediate_group(code, triplet)?;
    let plan = plan_for_group(group, triplet);
    let bad = plan.invariant_violations();
    if !bad.is_empty() {
        return Err(Error::Invariant(bad.join("; ")));
    }
    Ok(plan)
}

/// Uniform key from `Z_D^l` and the corresponding twirl operator.
pub fn sample_twirl(plan: &TwirlPlan, seed: u64) -> Result<(Vec<u32>, PauliProduct)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = plan.intermediate_group.modulus().get();
    let key: Vec<u32> = (0..plan.key_length()).map(|_| rng.gen_range(0..p)).collect();
    let op = plan.twirl_operator(&key)?;
    Ok((key, op))
}

fn check_twirl_target(plan: &TwirlPlan, g: &[u32]) -> Result<()> {
    if g.iter().all(|&v| v == 0) {
        return Err(Error::input("the identity is not a valid twirl target"));
    }
    if !plan.intermediate_group.contains(g) {
        return Err(Error::input("operator is not in the intermediate information group"));
    }
    Ok(())
}

/// Whether averaging `U g U†` over the twirl group vanishes, i.e. whether
/// some twirl generator fails to commute with `g`.
pub fn twirl_average_is_zero(plan: &TwirlPlan, g: &[u32]) -> Result<bool> {
    check_twirl_target(plan, g)?;
    let d = plan.intermediate_group.modulus();
    Ok(plan.twirl_generators.iter().any(|t| symplectic_pairing(d, &t.symplectic(), g) != 0))
}

/// `(1/D^l) Σ_key ω^{⟨U_key, g⟩}`, the scalar with `avg(U g U†) = c · g`.
pub fn twirl_character_average(plan: &TwirlPlan, g: &[u32]) -> Result<Complex64> {
    check_twirl_target(plan, g)?;
    let d = plan.intermediate_group.modulus();
    let keys = plan.all_keys();
    let mut acc = Complex64::new(0.0, 0.0);
    for key in &keys {
        let u = plan.twirl_operator(key)?;
        acc += root_of_unity(d.get(), symplectic_pairing(d, &u.symplectic(), g) as u64);
    }
    Ok(acc / keys.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::catalog;
    use crate::infogroup::{classify, DEFAULT_CLASSIFY_MAX_N};

    fn plan_for(name: &str, n: Option<usize>) -> (StabilizerCode, SchemeTriplet, TwirlPlan) {
        let code = catalog(name, n).unwrap();
        let t = classify(&code, DEFAULT_CLASSIFY_MAX_N).unwrap();
        let plan = twirl_plan(&code, &t).unwrap();
        (code, t, plan)
    }

    #[test]
    fn cnot_plan_is_x() {
        let (code, t, plan) = plan_for("cnot_2_1", None);
        assert_eq!(intermediate_group(&code, &t).unwrap().generators(), &[vec![0, 1]]);
        assert_eq!(plan.key_length(), 1);
        assert_eq!(plan.twirl_generators[0].to_string(), "X");
        assert_eq!((plan.r(), plan.s()), (0, 1));
        let (_, op) = sample_twirl(&plan, 0).unwrap();
        assert!(op.to_string() == "X" || op.to_string() == "I");
        assert_eq!(plan.twirl_operator(&[1]).unwrap().to_string(), "X");
        assert_eq!(plan.twirl_operator(&[0]).unwrap().to_string(), "I");
        assert_eq!(plan.classical.authorized, t.authorized());
        assert_eq!(plan.classical.forbidden.len(), 3);
    }

    #[test]
    fn ghz_plan_is_x() {
        for n in 3..=6 {
            let (_, _, plan) = plan_for("ghz_n", Some(n));
            assert_eq!(plan.key_length(), 1);
            assert_eq!(plan.twirl_generators[0].to_string(), "X");
        }
    }

    #[test]
    fn five_qubit_plan_is_empty() {
        let (code, t, plan) = plan_for("five_qubit", None);
        assert!(intermediate_group(&code, &t).unwrap().is_trivial());
        assert!(plan.is_empty());
        assert_eq!(plan.key_length(), 0);
    }

    #[test]
    fn four_two_two_plan() {
        let (_, _, plan) = plan_for("four_two_two", None);
        assert_eq!(plan.r() + plan.s(), 2);
        assert_eq!(plan.key_length(), 2 * plan.r() + plan.s());
        assert!(plan.invariant_violations().is_empty());
        for g in plan.intermediate_group.elements().into_iter().skip(1) {
            assert!(twirl_average_is_zero(&plan, &g).unwrap());
            assert!(twirl_character_average(&plan, &g).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn twirl_target_errors() {
        let (_, _, plan) = plan_for("cnot_2_1", None);
        assert!(twirl_average_is_zero(&plan, &[0, 1]).unwrap());
        assert!(matches!(twirl_average_is_zero(&plan, &[0, 0]), Err(Error::Input(_))));
        assert!(matches!(twirl_average_is_zero(&plan, &[1, 0]), Err(Error::Input(_))));
    }

    #[test]
    fn dropping_the_generator_breaks_concealment_symbolically() {
        let (_, _, plan) = plan_for("cnot_2_1", None);
        let weaker = plan.without_generator(0);
        assert!(!twirl_average_is_zero(&weaker, &[0, 1]).unwrap());
    }

    #[test]
    fn sampling_is_seeded() {
        let (_, _, plan) = plan_for("four_two_two", None);
        assert_eq!(sample_twirl(&plan, 5).unwrap(), sample_twirl(&plan, 5).unwrap());
        let p = crate::primefield::Prime::new(3).unwrap();
        // key space counting for a synthetic l = 3, D = 3 plan
        let g = InfoGroup::from_span(p, 3, None, &[vec![0, 0, 0, 1, 0, 0], vec![0, 0, 0, 0, 1, 0], vec![0, 0, 0, 0, 0, 1]]).unwrap();
        let synthetic = plan_for_group(g, &classify(&catalog("cnot_2_1", None).unwrap(), 20).unwrap());
        assert_eq!(synthetic.key_length(), 3);
        assert_eq!(synthetic.all_keys().len(), 27);
    }
}
