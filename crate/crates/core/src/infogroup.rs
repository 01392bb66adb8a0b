//! Subset information groups and the induced `(A, F, I)` classification.
//!
//! An input Pauli `v ∈ Z_D^{2k}` survives the partial trace onto `S` exactly
//! when some representative `X̄^x Z̄^z · s` (with `s` in the stabilizer) acts as
//! the identity on the complement of `S`. That is a linear condition on the
//! pair `(v, a)` where `a` picks the stabilizer word, so `G(S)` is the
//! projection of a kernel onto its `v` coordinates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::pauli::PauliProduct;
use crate::primefield::{in_span, span_basis, FieldMatrix, Prime};
use crate::subset::{all_subsets, Subset};
use crate::symplectic::{canonical_form, CanonicalForm};

/// Default cap on `n` for full classification (2^n subsets).
pub const DEFAULT_CLASSIFY_MAX_N: usize = 20;

/// Full per-subset listings are kept in reports up to this many carriers.
pub const FULL_LISTING_MAX_N: usize = 12;

/// A subgroup of the projective Pauli group on `k` qudits, as a span in `Z_D^{2k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfoGroup {
    /// The subset this group belongs to; `None` for groups assembled from
    /// several subsets.
    pub subset: Option<Subset>,
    d: Prime,
    k: usize,
    /// Reduced row-echelon basis; unique for a given span.
    generators: Vec<Vec<u32>>,
}

impl InfoGroup {
    /// Span of arbitrary vectors, stored in canonical (RREF) form.
    pub fn from_span(d: Prime, k: usize, subset: Option<Subset>, vectors: &[Vec<u32>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != 2 * k) {
            return Err(Error::input(format!("vector of length {} in a group on {k} qudits", v.len())));
        }
        Ok(InfoGroup { subset, d, k, generators: span_basis(d, 2 * k, vectors) })
    }

    pub fn trivial(d: Prime, k: usize, subset: Option<Subset>) -> Self {
        InfoGroup { subset, d, k, generators: Vec::new() }
    }

    pub fn modulus(&self) -> Prime {
        self.d
    }

    pub fn num_qudits(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn generator_paulis(&self) -> Vec<PauliProduct> {
        self.generators.iter().map(|v| PauliProduct::from_symplectic(self.d, v).expect("even length")).collect()
    }

    /// `log_D` of the group order.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == 2 * self.k
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == 2 * self.k && in_span(self.d, &self.generators, v)
    }

    /// Same subgroup, ignoring the subset label.
    pub fn same_group(&self, other: &InfoGroup) -> bool {
        self.d == other.d && self.k == other.k && self.generators == other.generators
    }

    /// Group generated by the union of several groups.
    pub fn join<'a>(d: Prime, k: usize, groups: impl IntoIterator<Item = &'a InfoGroup>) -> Result<Self> {
        let mut all = Vec::new();
        for g in groups {
            if g.d != d || g.k != k {
                return Err(Error::input("cannot join information groups of different shapes"));
            }
            all.extend(g.generators.iter().cloned());
        }
        Self::from_span(d, k, None, &all)
    }

    /// Every element of the group (`D^rank` vectors). Intended for small groups.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let p = self.d.get() as usize;
        let count = p.pow(self.rank() as u32);
        (0..count)
            .map(|idx| {
                let coeffs = crate::dense::digits(idx, p, self.rank());
                let mut v = vec![0u32; 2 * self.k];
                for (c, g) in coeffs.iter().zip(&self.generators) {
                    self.d.axpy(&mut v, *c as u32, g);
                }
                v
            })
            .collect()
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(self.d, self.k, &self.generators)
    }
}

/// `G(S)` for the code and subset.
pub fn info_group(code: &StabilizerCode, subset: Subset) -> Result<InfoGroup> {
    let n = code.num_carriers();
    let k = code.num_inputs();
    let d = code.modulus();
    if !subset.is_subset_of(Subset::full(n)) {
        return Err(Error::input(format!("subset {subset} is not contained in 1..{n}")));
    }
    let outside = subset.complement(n).indices();
    let logical = code.logical_vectors();
    let stab = code.stabilizer_vectors();
    let unknowns = 2 * k + stab.len();

    // One equation per (site in S̄, x or z coordinate).
    let mut rows = Vec::with_capacity(2 * outside.len());
    for &site in &outside {
        for coord in [site, n + site] {
            let row: Vec<u32> = logical.iter().chain(&stab).map(|g| g[coord]).collect();
            rows.push(row);
        }
    }
    let m = FieldMatrix::from_vectors(d, unknowns, &rows)?;
    let projected: Vec<Vec<u32>> = m.nullspace().into_iter().map(|v| v[..2 * k].to_vec()).collect();
    InfoGroup::from_span(d, k, Some(subset), &projected)
}

/// `G(S) = P_k`.
pub fn is_full(group: &InfoGroup) -> bool {
    group.is_full()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubsetClass {
    A,
    F,
    I,
}

/// One row of a classification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetRecord {
    pub subset: Subset,
    pub class: SubsetClass,
    pub r: usize,
    pub s: usize,
}

/// The `(A, F, I)` partition of all carrier subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeTriplet {
    pub n: usize,
    /// Every subset in report order.
    pub records: Vec<SubsetRecord>,
    /// `G(S)` for every subset in `I`, same order as the records.
    pub intermediate_groups: Vec<InfoGroup>,
}

impl SchemeTriplet {
    fn members(&self, class: SubsetClass) -> Vec<Subset> {
        self.records.iter().filter(|r| r.class == class).map(|r| r.subset).collect()
    }

    pub fn authorized(&self) -> Vec<Subset> {
        self.members(SubsetClass::A)
    }

    pub fn forbidden(&self) -> Vec<Subset> {
        self.members(SubsetClass::F)
    }

    pub fn intermediate(&self) -> Vec<Subset> {
        self.members(SubsetClass::I)
    }

    pub fn class_of(&self, s: Subset) -> SubsetClass {
        self.records.iter().find(|r| r.subset == s).expect("every subset is classified").class
    }

    /// Authorized sets none of whose proper subsets are authorized.
    pub fn minimal_authorized(&self) -> Vec<Subset> {
        let a = self.authorized();
        a.iter().copied().filter(|s| !a.iter().any(|t| t != s && t.is_subset_of(*s))).collect()
    }

    /// Forbidden sets not strictly contained in another forbidden set.
    pub fn maximal_forbidden(&self) -> Vec<Subset> {
        let f = self.forbidden();
        f.iter().copied().filter(|s| !f.iter().any(|t| t != s && s.is_subset_of(*t))).collect()
    }

    /// `Some(q)` when `A = {S : |S| ≥ q}`.
    pub fn threshold(&self) -> Option<usize> {
        let q = self.authorized().iter().map(|s| s.len()).min()?;
        self.records.iter().all(|r| (r.class == SubsetClass::A) == (r.subset.len() >= q)).then_some(q)
    }

    /// Violations of `S ∈ A ⇔ S̄ ∈ F`.
    pub fn duality_violations(&self) -> Vec<Subset> {
        self.records
            .iter()
            .filter(|r| {
                let comp = self.class_of(r.subset.complement(self.n));
                (r.class == SubsetClass::A) != (comp == SubsetClass::F)
            })
            .map(|r| r.subset)
            .collect()
    }

    /// Pairs `(S, T)` with `S ⊆ T` breaking monotonicity of `A` or of `F`.
    pub fn monotonicity_violations(&self) -> Vec<(Subset, Subset)> {
        let mut out = Vec::new();
        for a in &self.records {
            for b in &self.records {
                if a.subset != b.subset && a.subset.is_subset_of(b.subset) {
                    let up = a.class == SubsetClass::A && b.class != SubsetClass::A;
                    let down = b.class == SubsetClass::F && a.class != SubsetClass::F;
                    if up || down {
                        out.push((a.subset, b.subset));
                    }
                }
            }
        }
        out
    }
}

/// Classifies every subset of carriers. Fails if `n > max_n` or if the
/// result breaks `A`/`F` duality.
pub fn classify(code: &StabilizerCode, max_n: usize) -> Result<SchemeTriplet> {
    let n = code.num_carriers();
    if n > max_n {
        return Err(Error::resource("subset classification (2^n subsets)", 1u128 << n.min(127), 1u128 << max_n.min(127)));
    }
    let subsets = all_subsets(n);
    let evaluated: Vec<(SubsetRecord, Option<InfoGroup>)> = subsets
        .par_iter()
        .map(|&s| -> Result<_> {
            let g = info_group(code, s)?;
            let cf = g.canonical_form();
            let class = if g.is_full() {
                SubsetClass::A
            } else if g.is_trivial() {
                SubsetClass::F
            } else {
                SubsetClass::I
            };
            let rec = SubsetRecord { subset: s, class, r: cf.r, s: cf.s };
            Ok((rec, (class == SubsetClass::I).then_some(g)))
        })
        .collect::<Result<Vec<_>>>()?;
    // par_iter + collect preserves input order.
    let mut records = Vec::with_capacity(evaluated.len());
    let mut intermediate_groups = Vec::new();
    for (rec, g) in evaluated {
        records.push(rec);
        intermediate_groups.extend(g);
    }
    let triplet = SchemeTriplet { n, records, intermediate_groups };
    let bad = triplet.duality_violations();
    if !bad.is_empty() {
        let shown: Vec<String> = bad.iter().map(Subset::to_string).collect();
        return Err(Error::Invariant(format!("A/F duality fails for {}", shown.join(" "))));
    }
    Ok(triplet)
}
