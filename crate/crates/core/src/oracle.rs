//! Exact state-vector checks of the symbolic results.
//!
//! Everything here works with explicit `D^n`-dimensional amplitudes, so it is
//! only usable for small codes. It shares no code path with the symbolic
//! information-group computation beyond the code description itself.

use std::collections::HashSet;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::code::StabilizerCode;
use crate::dense::{
    checked_dim, digits, frobenius_norm, hs_inner, kron, purity, reduce_outer, reduce_pure, root_of_unity,
    trace_distance, DenseOperator, DenseVector,
};
use crate::error::{Error, Result};
use crate::infogroup::InfoGroup;
use crate::pauli::PauliProduct;
use crate::primefield::Prime;
use crate::subset::Subset;
use crate::twirl::TwirlPlan;

/// Partial traces with Frobenius norm above this count as nonvanishing.
pub const DETECTION_TOL: f64 = 1e-9;
/// Equality of states.
pub const STATE_TOL: f64 = 1e-10;
/// Algebraic identities.
pub const IDENTITY_TOL: f64 = 1e-12;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Dense matrix of `p` rescaled so that its `D`-th power is exactly the identity.
fn phase_normalized(p: &PauliProduct, cap: usize) -> Result<DenseOperator> {
    let m = p.dense_matrix(cap)?;
    let d = p.modulus().get();
    let mut power = DenseOperator::identity(m.nrows(), m.ncols());
    for _ in 0..d {
        power = &power * &m;
    }
    // Pauli powers are scalar: p^D = ω^t·I for D odd, ±I for D = 2.
    let scalar = power[(0, 0)];
    let root = Complex64::from_polar(1.0, -scalar.arg() / d as f64);
    Ok(m * root)
}

/// Projectors onto the eigenspaces of a phase-normalized Pauli, indexed by
/// the eigenvalue exponent `t` (eigenvalue `ω^t`).
fn eigenprojectors(unitary: &DenseOperator, d: u32) -> Vec<DenseOperator> {
    let dim = unitary.nrows();
    let mut powers = Vec::with_capacity(d as usize);
    let mut acc = DenseOperator::identity(dim, dim);
    for _ in 0..d {
        powers.push(acc.clone());
        acc = &acc * unitary;
    }
    (0..d)
        .map(|t| {
            let mut proj = DenseOperator::zeros(dim, dim);
            for (j, pw) in powers.iter().enumerate() {
                proj += pw * root_of_unity(d, (d as u64 - t as u64) * j as u64 % d as u64);
            }
            proj / c(d as f64)
        })
        .collect()
}

/// Dense model of a code: codewords and the encoding isometry `V`.
#[derive(Debug, Clone)]
pub struct Oracle {
    code: StabilizerCode,
    cap: usize,
    /// `D^n × D^k`; column `j` is `|c_j⟩`.
    encoder: DenseOperator,
}

/// Purity-based channel diagnostics for one subset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChoiReport {
    /// `Tr[ρ_RS²]`.
    pub purity: f64,
    /// Trace distance of `ρ_R` from the maximally mixed state.
    pub entanglement_defect: f64,
    /// Trace distance of `ρ_RS` from `ρ_R ⊗ ρ_S`.
    pub decoupling_defect: f64,
    /// Trace distance of `ρ_RS̄` from `ρ_R ⊗ ρ_S̄`; zero exactly when the
    /// channel to `S` can be inverted.
    pub complement_defect: f64,
}

impl ChoiReport {
    /// Perfect channel to `S`. `ρ_RS` is only pure when `S` holds every
    /// carrier, so recoverability is judged on the complement.
    pub fn is_perfect(&self) -> bool {
        self.entanglement_defect < STATE_TOL && self.complement_defect < STATE_TOL
    }

    /// `S` is fully decoupled from the reference.
    pub fn is_decoupled(&self) -> bool {
        self.decoupling_defect < STATE_TOL
    }
}

impl Oracle {
    /// Builds the codewords. Fails when `D^n` (or the later `D^{n+k}` Choi
    /// state) would exceed `cap` amplitudes.
    pub fn new(code: &StabilizerCode, cap: usize) -> Result<Self> {
        let d = code.modulus().get();
        let n = code.num_carriers();
        let k = code.num_inputs();
        let dim = checked_dim(d, n, cap)?;
        let kdim = checked_dim(d, k, cap)?;

        // Joint +1 eigenspace of the stabilizer generators and logical Z's.
        let mut proj = DenseOperator::identity(dim, dim);
        for g in code.stabilizers().iter().chain(code.logical_z()) {
            let u = phase_normalized(g, cap)?;
            proj = &proj * &eigenprojectors(&u, d)[0];
        }
        let start = (0..dim)
            .map(|i| proj.column(i).into_owned())
            .find(|v| v.norm() > 1e-6)
            .ok_or_else(|| Error::Validation(vec!["code projector is zero".into()]))?;
        let c0 = &start / c(start.norm());

        let lx: Vec<DenseOperator> =
            code.logical_x().iter().map(|p| p.dense_matrix(cap)).collect::<Result<_>>()?;
        let mut encoder = DenseOperator::zeros(dim, kdim);
        for j in 0..kdim {
            let mut v = c0.clone();
            for (t, digit) in digits(j, d as usize, k).into_iter().enumerate() {
                for _ in 0..digit {
                    v = &lx[t] * v;
                }
            }
            encoder.set_column(j, &v);
        }
        Ok(Oracle { code: code.clone(), cap, encoder })
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    /// Amplitude cap this oracle was built with.
    pub fn cap(&self) -> usize {
        self.cap
    }

    fn d(&self) -> u32 {
        self.code.modulus().get()
    }

    fn n(&self) -> usize {
        self.code.num_carriers()
    }

    fn k(&self) -> usize {
        self.code.num_inputs()
    }

    fn input_dim(&self) -> usize {
        self.encoder.ncols()
    }

    /// `|c_0⟩, …, |c_{D^k − 1}⟩`.
    pub fn codewords(&self) -> Vec<DenseVector> {
        (0..self.input_dim()).map(|j| self.encoder.column(j).into_owned()).collect()
    }

    pub fn encoder(&self) -> &DenseOperator {
        &self.encoder
    }

    /// `V|ψ⟩`.
    pub fn encode(&self, secret: &DenseVector) -> Result<DenseVector> {
        if secret.len() != self.input_dim() {
            return Err(Error::input(format!(
                "secret has dimension {}, the code encodes dimension {}",
                secret.len(),
                self.input_dim()
            )));
        }
        Ok(&self.encoder * secret)
    }

    /// `Tr_{S̄}[|ψ⟩⟨ψ|]` for a carrier state.
    pub fn reduced_state(&self, state: &DenseVector, subset: Subset) -> DenseOperator {
        reduce_pure(state, self.d() as usize, self.n(), &subset.indices())
    }

    /// `Tr_{S̄}[V A V†]` for an operator `A` on the inputs.
    pub fn reduced_encoded_operator(&self, op: &DenseOperator, subset: Subset) -> DenseOperator {
        let left = &self.encoder * op;
        reduce_outer(&left, &self.encoder, self.d() as usize, self.n(), &subset.indices())
    }

    /// `(1/D^k) Tr_{S̄}[V V†]`, the state seen by `S` when it learns nothing.
    pub fn secret_independent_state(&self, subset: Subset) -> DenseOperator {
        let id = DenseOperator::identity(self.input_dim(), self.input_dim());
        self.reduced_encoded_operator(&id, subset) / c(self.input_dim() as f64)
    }

    /// Every `(x | z)` whose encoded operator survives the partial trace onto
    /// `S`, closed-checked and returned as a span.
    pub fn info_group_bruteforce(&self, subset: Subset) -> Result<InfoGroup> {
        let d = self.code.modulus();
        let k = self.k();
        let p = d.get() as usize;
        let total = p.pow(2 * k as u32);
        checked_dim(d.get(), 2 * k, self.cap)?;
        let mut hits: HashSet<Vec<u32>> = HashSet::new();
        for idx in 0..total {
            let v: Vec<u32> = digits(idx, p, 2 * k).into_iter().map(|x| x as u32).collect();
            let op = PauliProduct::from_symplectic(d, &v)?.dense_matrix(self.cap)?;
            let reduced = self.reduced_encoded_operator(&op, subset);
            if frobenius_norm(&reduced) > DETECTION_TOL {
                hits.insert(v);
            }
        }
        for a in &hits {
            for b in &hits {
                let sum: Vec<u32> = a.iter().zip(b).map(|(&x, &y)| d.add(x, y)).collect();
                if !hits.contains(&sum) {
                    return Err(Error::Invariant(format!(
                        "nonvanishing operators on {subset} are not closed under multiplication"
                    )));
                }
            }
        }
        let mut hits: Vec<Vec<u32>> = hits.into_iter().collect();
        hits.sort();
        InfoGroup::from_span(d, k, Some(subset), &hits)
    }

    /// Whether the eigenspaces of `p` stay mutually orthogonal after encoding
    /// and reducing to `S`. Mixtures over each eigenspace are compared, which
    /// is equivalent to comparing every pair of eigenvectors from distinct
    /// eigenspaces since the states involved are positive.
    pub fn verify_perfect_presence(&self, subset: Subset, p: &PauliProduct) -> Result<bool> {
        if p.num_qudits() != self.k() || p.modulus() != self.code.modulus() {
            return Err(Error::input("operator does not act on the code's inputs"));
        }
        let u = phase_normalized(p, self.cap)?;
        let reduced: Vec<DenseOperator> = eigenprojectors(&u, self.d())
            .into_iter()
            .filter(|proj| proj.trace().re > 0.5)
            .map(|proj| self.reduced_encoded_operator(&proj, subset))
            .collect();
        for i in 0..reduced.len() {
            for j in i + 1..reduced.len() {
                if hs_inner(&reduced[i], &reduced[j]).norm() >= DETECTION_TOL {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Largest trace distance among the reduced states of `secrets` and the
    /// secret-independent state.
    pub fn verify_absence(&self, subset: Subset, secrets: &[DenseVector]) -> Result<f64> {
        let mut states = vec![self.secret_independent_state(subset)];
        for s in secrets {
            states.push(self.reduced_state(&self.encode(s)?, subset));
        }
        Ok(max_pairwise_distance(&states))
    }

    /// Choi-state diagnostics for `S`.
    pub fn choi_check(&self, subset: Subset) -> Result<ChoiReport> {
        self.choi_check_with(subset, None)
    }

    /// Choi-state diagnostics of `ψ ↦ Tr_{S̄}[V U ψ U† V†]` where `U` is an
    /// optional Pauli applied before encoding (a known twirl).
    pub fn choi_check_with(&self, subset: Subset, pre: Option<&PauliProduct>) -> Result<ChoiReport> {
        let d = self.d();
        let (n, k) = (self.n(), self.k());
        checked_dim(d, n + k, self.cap)?;
        let kdim = self.input_dim();
        let channel = match pre {
            Some(p) => &self.encoder * p.dense_matrix(self.cap)?,
            None => self.encoder.clone(),
        };
        // Ω = D^{-k/2} Σ_j |j⟩_R ⊗ V U |j⟩, reference first.
        let mut omega = DenseVector::zeros(kdim * channel.nrows());
        let norm = c((kdim as f64).sqrt());
        for j in 0..kdim {
            let col = channel.column(j);
            for (i, amp) in col.iter().enumerate() {
                omega[j * channel.nrows() + i] = amp / norm;
            }
        }
        let mut keep: Vec<usize> = (0..k).collect();
        keep.extend(subset.indices().into_iter().map(|i| i + k));
        let rho_rs = reduce_pure(&omega, d as usize, n + k, &keep);
        let rho_r = reduce_pure(&omega, d as usize, n + k, &(0..k).collect::<Vec<_>>());
        let rho_s = reduce_pure(&omega, d as usize, n + k, &keep[k..]);
        let mut keep_bar: Vec<usize> = (0..k).collect();
        keep_bar.extend(subset.complement(n).indices().into_iter().map(|i| i + k));
        let rho_r_bar = reduce_pure(&omega, d as usize, n + k, &keep_bar);
        let rho_bar = reduce_pure(&omega, d as usize, n + k, &keep_bar[k..]);
        let mixed = DenseOperator::identity(kdim, kdim) / c(kdim as f64);
        Ok(ChoiReport {
            purity: purity(&rho_rs),
            entanglement_defect: trace_distance(&rho_r, &mixed),
            decoupling_defect: trace_distance(&rho_rs, &kron(&rho_r, &rho_s)),
            complement_defect: trace_distance(&rho_r_bar, &kron(&rho_r, &rho_bar)),
        })
    }

    /// Twirled reduced state: `(1/D^l) Σ_key Tr_{S̄}[V U_key ψ ψ† U_key† V†]`.
    pub fn twirled_reduced_state(&self, plan: &TwirlPlan, secret: &DenseVector, subset: Subset) -> Result<DenseOperator> {
        let keys = plan.all_keys();
        let mut acc: Option<DenseOperator> = None;
        for key in &keys {
            let u = plan.twirl_operator(key)?.dense_matrix(self.cap)?;
            let rho = self.reduced_state(&self.encode(&(u * secret))?, subset);
            acc = Some(match acc {
                Some(a) => a + rho,
                None => rho,
            });
        }
        Ok(acc.expect("at least the empty key") / c(keys.len() as f64))
    }

    /// Max pairwise trace distance of twirled reduced states across `secrets`.
    pub fn verify_concealment(&self, plan: &TwirlPlan, secrets: &[DenseVector], subset: Subset) -> Result<f64> {
        let states = secrets
            .iter()
            .map(|s| self.twirled_reduced_state(plan, s, subset))
            .collect::<Result<Vec<_>>>()?;
        Ok(max_pairwise_distance(&states))
    }

    /// `ρ_S` rebuilt from the Pauli expansion of the secret:
    /// `(1/D^k) Σ_{x,z} c(x,z) Tr_{S̄}[V X^x Z^z V†]`, `c(x,z) = ⟨ψ|(X^x Z^z)†|ψ⟩`.
    pub fn fourier_reduced_state(&self, secret: &DenseVector, subset: Subset) -> Result<DenseOperator> {
        let d = self.code.modulus();
        let k = self.k();
        let p = d.get() as usize;
        let dk = p.pow(subset.len() as u32);
        let mut acc = DenseOperator::zeros(dk, dk);
        for idx in 0..p.pow(2 * k as u32) {
            let v: Vec<u32> = digits(idx, p, 2 * k).into_iter().map(|x| x as u32).collect();
            let op = PauliProduct::from_symplectic(d, &v)?.dense_matrix(self.cap)?;
            let coeff = (secret.adjoint() * op.adjoint() * secret)[(0, 0)];
            acc += self.reduced_encoded_operator(&op, subset) * coeff;
        }
        Ok(acc / c(self.input_dim() as f64))
    }
}

fn max_pairwise_distance(states: &[DenseOperator]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            worst = worst.max(trace_distance(&states[i], &states[j]));
        }
    }
    worst
}

/// Codewords of `code` (convenience wrapper over [`Oracle::new`]).
pub fn codewords(code: &StabilizerCode, cap: usize) -> Result<Vec<DenseVector>> {
    Ok(Oracle::new(code, cap)?.codewords())
}

/// Computational basis state `|j⟩` of dimension `dim`.
pub fn basis_state(dim: usize, j: usize) -> DenseVector {
    let mut v = DenseVector::zeros(dim);
    v[j] = c(1.0);
    v
}

/// Normalized state with independent uniform real and imaginary parts.
pub fn random_state<R: Rng>(dim: usize, rng: &mut R) -> DenseVector {
    let v = DenseVector::from_fn(dim, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let norm = v.norm();
    v / c(norm)
}

/// Every element of the stabilizer group as a phase-normalized dense matrix.
pub fn stabilizer_group_dense(code: &StabilizerCode, cap: usize) -> Result<Vec<DenseOperator>> {
    let d: Prime = code.modulus();
    let p = d.get() as usize;
    let gens: Vec<DenseOperator> =
        code.stabilizers().iter().map(|g| phase_normalized(g, cap)).collect::<Result<_>>()?;
    let dim = checked_dim(d.get(), code.num_carriers(), cap)?;
    let count = p.pow(gens.len() as u32);
    let mut out = Vec::with_capacity(count);
    for idx in 0..count {
        let mut acc = DenseOperator::identity(dim, dim);
        for (g, e) in gens.iter().zip(digits(idx, p, gens.len())) {
            for _ in 0..e {
                acc = &acc * g;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::catalog;
    use crate::dense::{max_abs_diff, DEFAULT_AMPLITUDE_CAP as CAP};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn oracle(name: &str, n: Option<usize>) -> Oracle {
        Oracle::new(&catalog(name, n).unwrap(), CAP).unwrap()
    }

    fn sub(players: &[usize], n: usize) -> Subset {
        Subset::from_players(players, n).unwrap()
    }

    fn ket(bits: &[usize], d: usize) -> DenseVector {
        let idx = bits.iter().fold(0, |acc, &b| acc * d + b);
        basis_state(d.pow(bits.len() as u32), idx)
    }

    #[test]
    fn cnot_codewords() {
        let o = oracle("cnot_2_1", None);
        let cw = o.codewords();
        assert!((&cw[0] - ket(&[0, 0], 2)).norm() < IDENTITY_TOL);
        assert!((&cw[1] - ket(&[1, 1], 2)).norm() < IDENTITY_TOL);
    }

    #[test]
    fn ghz_codewords() {
        let o = oracle("ghz_n", Some(3));
        let cw = o.codewords();
        assert!((&cw[0] - ket(&[0, 0, 0], 2)).norm() < IDENTITY_TOL);
        assert!((&cw[1] - ket(&[1, 1, 1], 2)).norm() < IDENTITY_TOL);
        let s = 0.6;
        let t = 0.8;
        let secret = DenseVector::from_vec(vec![c(s), Complex64::new(0.0, t)]);
        let enc = o.encode(&secret).unwrap();
        let want = ket(&[0, 0, 0], 2) * c(s) + ket(&[1, 1, 1], 2) * Complex64::new(0.0, t);
        assert!((enc - want).norm() < IDENTITY_TOL);
    }

    #[test]
    fn codewords_are_stabilized_and_orthonormal() {
        for name in crate::code::CATALOG_NAMES {
            let code = catalog(name, Some(4)).unwrap();
            let o = Oracle::new(&code, CAP).unwrap();
            let cw = o.codewords();
            assert_eq!(cw.len(), 2usize.pow(code.num_inputs() as u32));
            for s in stabilizer_group_dense(&code, CAP).unwrap() {
                for v in &cw {
                    assert!((&s * v - v).norm() < IDENTITY_TOL, "{name}");
                }
            }
            for (i, a) in cw.iter().enumerate() {
                for (j, b) in cw.iter().enumerate() {
                    let ip = (a.adjoint() * b)[(0, 0)];
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - c(want)).norm() < IDENTITY_TOL, "{name}");
                }
            }
        }
    }

    #[test]
    fn encode_dimension_mismatch() {
        let o = oracle("cnot_2_1", None);
        assert!(matches!(o.encode(&basis_state(4, 0)), Err(Error::Input(_))));
    }

    #[test]
    fn cnot_plus_is_a_bell_pair_locally_mixed() {
        let o = oracle("cnot_2_1", None);
        let plus = DenseVector::from_vec(vec![c(0.5f64.sqrt()), c(0.5f64.sqrt())]);
        let enc = o.encode(&plus).unwrap();
        let bell = (ket(&[0, 0], 2) + ket(&[1, 1], 2)) / c(2f64.sqrt());
        assert!((&enc - bell).norm() < IDENTITY_TOL);
        let rho = o.reduced_state(&enc, sub(&[1], 2));
        assert!(max_abs_diff(&rho, &(DenseOperator::identity(2, 2) * c(0.5))) < IDENTITY_TOL);
    }

    #[test]
    fn cnot_bruteforce_group() {
        let o = oracle("cnot_2_1", None);
        let g = o.info_group_bruteforce(sub(&[1], 2)).unwrap();
        assert_eq!(g.generators(), &[vec![0, 1]]);
        assert!(o.info_group_bruteforce(Subset::EMPTY).unwrap().is_trivial());
    }

    #[test]
    fn perfect_presence() {
        let o = oracle("cnot_2_1", None);
        let d = Prime::new(2).unwrap();
        let z = PauliProduct::z_on(d, 1, 0, 1);
        let x = PauliProduct::x_on(d, 1, 0, 1);
        assert!(o.verify_perfect_presence(sub(&[1], 2), &z).unwrap());
        assert!(!o.verify_perfect_presence(sub(&[1], 2), &x).unwrap());
        assert!(o.verify_perfect_presence(Subset::full(2), &x).unwrap());
        assert!(o.verify_perfect_presence(Subset::full(2), &x.multiply(&z).unwrap()).unwrap());
    }

    #[test]
    fn absence() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let o = oracle("five_qubit", None);
        let secrets: Vec<DenseVector> = (0..5).map(|_| random_state(2, &mut rng)).collect();
        assert!(o.verify_absence(sub(&[2, 4], 5), &secrets).unwrap() < STATE_TOL);
        assert!(o.verify_absence(Subset::EMPTY, &secrets).unwrap() < STATE_TOL);

        let o = oracle("cnot_2_1", None);
        let d = o.verify_absence(sub(&[1], 2), &[basis_state(2, 0), basis_state(2, 1)]).unwrap();
        assert!((d - 1.0).abs() < STATE_TOL);
    }

    #[test]
    fn choi_examples() {
        let o = oracle("five_qubit", None);
        let full = o.choi_check(sub(&[1, 2, 3], 5)).unwrap();
        assert!(full.is_perfect());
        // Ω is pure, so Tr ρ_RS² = Tr ρ_S̄², and two carriers of the
        // five-qubit code are maximally mixed.
        assert!((full.purity - 0.25).abs() < STATE_TOL);
        let everyone = o.choi_check(Subset::full(5)).unwrap();
        assert!((everyone.purity - 1.0).abs() < STATE_TOL && everyone.is_perfect());
        let none = o.choi_check(sub(&[1, 2], 5)).unwrap();
        assert!(none.is_decoupled() && !none.is_perfect());
        // ρ_R ⊗ ρ_S with both factors maximally mixed
        assert!((none.purity - 1.0 / 8.0).abs() < STATE_TOL);
        assert!((none.purity - 1.0).abs() > 0.1);

        let o = oracle("four_two_two", None);
        let partial = o.choi_check(sub(&[1, 2], 4)).unwrap();
        assert!(partial.purity > 1.0 / 16.0 + 1e-6 && partial.purity < 1.0 - 1e-6);
        // the complementary pair is maximally mixed, Tr ρ_S̄² = 1/4
        assert!((partial.purity - 0.25).abs() < STATE_TOL);
        assert!(!partial.is_decoupled());
    }

    #[test]
    fn encoding_is_an_isometry() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for name in crate::code::CATALOG_NAMES {
            let o = oracle(name, Some(5));
            let dim = o.codewords().len();
            for _ in 0..4 {
                let a = random_state(dim, &mut rng);
                let b = random_state(dim, &mut rng);
                let before = (a.adjoint() * &b)[(0, 0)];
                let after = (o.encode(&a).unwrap().adjoint() * o.encode(&b).unwrap())[(0, 0)];
                assert!((before - after).norm() < IDENTITY_TOL, "{name}");
            }
        }
    }

    #[test]
    fn concealment_averages_over_every_key() {
        let code = catalog("four_two_two", None).unwrap();
        let t = crate::infogroup::classify(&code, 20).unwrap();
        let plan = crate::twirl::twirl_plan(&code, &t).unwrap();
        let keys = plan.all_keys();
        assert_eq!(keys.len(), 2usize.pow((2 * plan.r() + plan.s()) as u32));
        let distinct: HashSet<Vec<u32>> = keys.into_iter().collect();
        assert_eq!(distinct.len(), 16);
    }

    #[test]
    fn eigenprojectors_resolve_identity() {
        let d = Prime::new(3).unwrap();
        let p = PauliProduct::new(d, vec![1, 2], vec![2, 0], 0).unwrap();
        let u = phase_normalized(&p, CAP).unwrap();
        let projs = eigenprojectors(&u, 3);
        let sum = projs.iter().fold(DenseOperator::zeros(9, 9), |a, b| a + b);
        assert!(max_abs_diff(&sum, &DenseOperator::identity(9, 9)) < IDENTITY_TOL);
        for q in &projs {
            assert!(max_abs_diff(&(q * q), q) < 1e-10);
        }
        // D = 2: XZ squares to -I and still gets proper projectors
        let d2 = Prime::new(2).unwrap();
        let y = PauliProduct::new(d2, vec![1], vec![1], 0).unwrap();
        let projs = eigenprojectors(&phase_normalized(&y, CAP).unwrap(), 2);
        for q in &projs {
            assert!((q.trace() - c(1.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn oversized_code_is_a_resource_error() {
        let code = catalog("ghz_n", Some(13)).unwrap();
        assert!(matches!(Oracle::new(&code, CAP), Err(Error::Resource { .. })));
    }
}
