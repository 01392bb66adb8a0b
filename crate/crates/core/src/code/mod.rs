//! Stabilizer codes `[[n, k, δ]]_D` at the symplectic level.

mod catalog;
mod file;

pub use catalog::{catalog, CATALOG_NAMES};
pub use file::{load, save, CodeFile};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pauli::{symplectic_pairing, PauliProduct};
use crate::primefield::{in_span, rank_of, FieldMatrix, Prime};

/// Cap on the number of Pauli products enumerated by [`StabilizerCode::distance`].
pub const DEFAULT_DISTANCE_CAP: u128 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    name: String,
    d: Prime,
    n: usize,
    k: usize,
    stabilizers: Vec<PauliProduct>,
    logical_x: Vec<PauliProduct>,
    logical_z: Vec<PauliProduct>,
}

/// Outcome of [`StabilizerCode::validate`]. Empty `violations` means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl StabilizerCode {
    /// Assembles a code without checking the stabilizer axioms; call
    /// [`validated`](Self::validated) or [`validate`](Self::validate) for that.
    /// Phases are dropped: everything downstream treats generators projectively.
    pub fn new(
        name: impl Into<String>,
        d: Prime,
        n: usize,
        k: usize,
        stabilizers: Vec<PauliProduct>,
        logical_x: Vec<PauliProduct>,
        logical_z: Vec<PauliProduct>,
    ) -> Result<Self> {
        let strip = |v: Vec<PauliProduct>| -> Vec<PauliProduct> { v.into_iter().map(|p| p.with_phase(0)).collect() };
        let code = StabilizerCode {
            name: name.into(),
            d,
            n,
            k,
            stabilizers: strip(stabilizers),
            logical_x: strip(logical_x),
            logical_z: strip(logical_z),
        };
        let shapes = code.shape_violations();
        if shapes.is_empty() {
            Ok(code)
        } else {
            Err(Error::Validation(shapes))
        }
    }

    /// Like [`new`](Self::new), then rejects codes that fail validation.
    pub fn validated(
        name: impl Into<String>,
        d: Prime,
        n: usize,
        k: usize,
        stabilizers: Vec<PauliProduct>,
        logical_x: Vec<PauliProduct>,
        logical_z: Vec<PauliProduct>,
    ) -> Result<Self> {
        let code = Self::new(name, d, n, k, stabilizers, logical_x, logical_z)?;
        let report = code.validate();
        if report.is_valid() {
            Ok(code)
        } else {
            Err(Error::Validation(report.violations))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn modulus(&self) -> Prime {
        self.d
    }

    pub fn num_carriers(&self) -> usize {
        self.n
    }

    pub fn num_inputs(&self) -> usize {
        self.k
    }

    pub fn stabilizers(&self) -> &[PauliProduct] {
        &self.stabilizers
    }

    pub fn logical_x(&self) -> &[PauliProduct] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliProduct] {
        &self.logical_z
    }

    /// Replaces the logical representatives (shape-checked only).
    pub fn with_logicals(&self, logical_x: Vec<PauliProduct>, logical_z: Vec<PauliProduct>) -> Result<Self> {
        Self::new(self.name.clone(), self.d, self.n, self.k, self.stabilizers.clone(), logical_x, logical_z)
    }

    pub fn stabilizer_vectors(&self) -> Vec<Vec<u32>> {
        self.stabilizers.iter().map(PauliProduct::symplectic).collect()
    }

    /// Rows `X̄_1..X̄_k, Z̄_1..Z̄_k` as symplectic vectors on `n` qudits.
    pub fn logical_vectors(&self) -> Vec<Vec<u32>> {
        self.logical_x.iter().chain(&self.logical_z).map(PauliProduct::symplectic).collect()
    }

    /// Bare encoded representative of the input Pauli `(x | z) ∈ Z_D^{2k}`,
    /// as a symplectic vector on the carriers.
    pub fn encoded_vector(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), 2 * self.k);
        let mut out = vec![0; 2 * self.n];
        for (coef, row) in v.iter().zip(self.logical_vectors()) {
            self.d.axpy(&mut out, *coef, &row);
        }
        out
    }

    /// Carrier-level Pauli product `X̄^x Z̄^z` built by multiplying the
    /// representatives (phases tracked, X̄ factors first).
    pub fn encoded_operator(&self, v: &[u32]) -> PauliProduct {
        assert_eq!(v.len(), 2 * self.k);
        let mut acc = PauliProduct::identity(self.d, self.n);
        for (i, lx) in self.logical_x.iter().enumerate() {
            acc = acc.multiply(&lx.pow(v[i])).expect("shape checked");
        }
        for (i, lz) in self.logical_z.iter().enumerate() {
            acc = acc.multiply(&lz.pow(v[self.k + i])).expect("shape checked");
        }
        acc
    }

    /// `[[n,k,δ]]_D` label; computes the distance.
    pub fn label(&self) -> Result<String> {
        Ok(format!("[[{},{},{}]]_{}", self.n, self.k, self.distance(DEFAULT_DISTANCE_CAP)?, self.d))
    }

    fn shape_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.k == 0 {
            out.push("k must be at least 1".to_string());
        }
        if self.k > self.n {
            out.push(format!("k = {} exceeds n = {}", self.k, self.n));
        }
        if self.n >= crate::subset::MAX_CARRIERS {
            out.push(format!("n = {} exceeds the supported maximum of {}", self.n, crate::subset::MAX_CARRIERS - 1));
        }
        let expect = self.n.saturating_sub(self.k);
        if self.stabilizers.len() != expect {
            out.push(format!("expected n - k = {expect} stabilizer generators, got {}", self.stabilizers.len()));
        }
        if self.logical_x.len() != self.k {
            out.push(format!("expected k = {} logical X operators, got {}", self.k, self.logical_x.len()));
        }
        if self.logical_z.len() != self.k {
            out.push(format!("expected k = {} logical Z operators, got {}", self.k, self.logical_z.len()));
        }
        let groups = [("stabilizer", &self.stabilizers), ("logical_x", &self.logical_x), ("logical_z", &self.logical_z)];
        for (label, ops) in groups {
            for (i, p) in ops.iter().enumerate() {
                if p.modulus() != self.d {
                    out.push(format!("{label}[{i}] has modulus {} but D = {}", p.modulus(), self.d));
                }
                if p.num_qudits() != self.n {
                    out.push(format!("{label}[{i}] acts on {} qudits but n = {}", p.num_qudits(), self.n));
                }
            }
        }
        out
    }

    /// Checks every stabilizer-code invariant and reports the violations.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport { violations: self.shape_violations(), notes: Vec::new() };
        if !report.violations.is_empty() {
            return report;
        }
        let d = self.d;
        let pair = |a: &PauliProduct, b: &PauliProduct| symplectic_pairing(d, &a.symplectic(), &b.symplectic());
        let v = &mut report.violations;

        for i in 0..self.stabilizers.len() {
            for j in i + 1..self.stabilizers.len() {
                let lam = pair(&self.stabilizers[i], &self.stabilizers[j]);
                if lam != 0 {
                    v.push(format!(
                        "stabilizer[{i}] ({}) and stabilizer[{j}] ({}) do not commute (exponent {lam})",
                        self.stabilizers[i], self.stabilizers[j]
                    ));
                }
            }
        }
        let stab = self.stabilizer_vectors();
        let r = rank_of(d, 2 * self.n, &stab);
        if r != stab.len() {
            v.push(format!("stabilizer generators are dependent (rank {r} < {})", stab.len()));
        }
        for (label, ops) in [("logical_x", &self.logical_x), ("logical_z", &self.logical_z)] {
            for (i, l) in ops.iter().enumerate() {
                for (j, s) in self.stabilizers.iter().enumerate() {
                    let lam = pair(l, s);
                    if lam != 0 {
                        v.push(format!("{label}[{i}] does not commute with stabilizer[{j}] (exponent {lam})"));
                    }
                }
            }
        }
        for i in 0..self.k {
            for j in 0..self.k {
                let want = u32::from(i == j);
                let lam = pair(&self.logical_x[i], &self.logical_z[j]);
                if lam != want {
                    v.push(format!("commutation exponent of logical_x[{i}] with logical_z[{j}] is {lam}, expected {want}"));
                }
                if i < j {
                    if pair(&self.logical_x[i], &self.logical_x[j]) != 0 {
                        v.push(format!("logical_x[{i}] and logical_x[{j}] do not commute"));
                    }
                    if pair(&self.logical_z[i], &self.logical_z[j]) != 0 {
                        v.push(format!("logical_z[{i}] and logical_z[{j}] do not commute"));
                    }
                }
            }
        }
        let mut all = stab.clone();
        all.extend(self.logical_vectors());
        let full = rank_of(d, 2 * self.n, &all);
        if full != stab.len() + 2 * self.k {
            v.push(format!(
                "logical operators are not independent modulo the stabilizer (rank {full}, expected {})",
                stab.len() + 2 * self.k
            ));
        }
        if report.violations.is_empty() {
            report.notes.push(format!(
                "{} independent commuting generators over prime D = {} fix a {}^{}-dimensional code space; maximality holds by construction",
                self.stabilizers.len(),
                d,
                d,
                self.k
            ));
        }
        report
    }

    /// Whether a carrier Pauli (symplectic vector) commutes with every stabilizer generator.
    pub fn commutes_with_stabilizer(&self, v: &[u32]) -> bool {
        self.stabilizers.iter().all(|s| symplectic_pairing(self.d, &s.symplectic(), v) == 0)
    }

    /// Whether a carrier Pauli lies in the stabilizer group (projectively).
    pub fn in_stabilizer(&self, v: &[u32]) -> bool {
        in_span(self.d, &self.stabilizer_vectors(), v)
    }

    /// Minimum weight of a Pauli that commutes with the stabilizer without
    /// belonging to it, by exhaustive enumeration of all `D^{2n}` products.
    pub fn distance(&self, cap: u128) -> Result<usize> {
        let d = self.d.get() as u128;
        let total = d.checked_pow(2 * self.n as u32).unwrap_or(u128::MAX);
        if total > cap {
            return Err(Error::resource(format!("distance enumeration over {}^{}", d, 2 * self.n), total, cap));
        }
        let stab = self.stabilizer_vectors();
        let ech = FieldMatrix::from_vectors(self.d, 2 * self.n, &stab)?.row_reduce();
        let stab_basis: Vec<Vec<u32>> = (0..ech.rank).map(|r| ech.reduced.row(r).to_vec()).collect();
        let mut best = usize::MAX;
        let mut v = vec![0u32; 2 * self.n];
        for idx in 1..total {
            let mut rem = idx;
            for slot in v.iter_mut().rev() {
                *slot = (rem % d) as u32;
                rem /= d;
            }
            let w = (0..self.n).filter(|&i| v[i] != 0 || v[self.n + i] != 0).count();
            if w >= best || !self.commutes_with_stabilizer(&v) {
                continue;
            }
            if !in_span(self.d, &stab_basis, &v) {
                best = w;
            }
        }
        Ok(best)
    }

    /// `(q, L) = (n − δ + 1, n − 2δ + 2)`.
    pub fn ramp_parameters(&self, cap: u128) -> Result<RampParameters> {
        let delta = self.distance(cap)?;
        Ok(RampParameters::from_distance(self.n, delta))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RampParameters {
    pub distance: usize,
    pub q: usize,
    pub l: usize,
}

impl RampParameters {
    pub fn from_distance(n: usize, delta: usize) -> Self {
        RampParameters { distance: delta, q: (n + 1).saturating_sub(delta), l: (n + 2).saturating_sub(2 * delta) }
    }
}
