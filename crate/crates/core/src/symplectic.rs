//! Canonical form of a subgroup of `Z_D^{2k}` under the symplectic pairing.
//!
//! Any subspace splits into `r` hyperbolic pairs `(a_i, b_i)` with
//! `⟨a_i, b_i⟩ = 1` plus `s` isotropic vectors `c_j` orthogonal to everything
//! in the span. Identifying `a_i ↦ X_i`, `b_i ↦ Z_i`, `c_j ↦ Z_{r+j}` gives a
//! symplectic change of frame, which is all a Clifford unitary does to Pauli
//! labels.

use serde::Serialize;

use crate::pauli::{pairing_matrix, symplectic_pairing};
use crate::primefield::{FieldMatrix, Prime};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    d: Prime,
    k: usize,
    /// Number of hyperbolic pairs.
    pub r: usize,
    /// Number of isotropic generators.
    pub s: usize,
    /// `a_1, b_1, …, a_r, b_r, c_1, …, c_s`.
    pub basis: Vec<Vec<u32>>,
    /// Rows `0..k` are the images of `X_1..X_k`, rows `k..2k` those of
    /// `Z_1..Z_k`: canonical coordinates `c` map to `c · transform`.
    pub transform: FieldMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CanonicalCounts {
    pub r: usize,
    pub s: usize,
}

impl CanonicalForm {
    pub fn counts(&self) -> CanonicalCounts {
        CanonicalCounts { r: self.r, s: self.s }
    }

    pub fn modulus(&self) -> Prime {
        self.d
    }

    pub fn num_qudits(&self) -> usize {
        self.k
    }

    pub fn hyperbolic_pairs(&self) -> impl Iterator<Item = (&[u32], &[u32])> {
        (0..self.r).map(|i| (self.basis[2 * i].as_slice(), self.basis[2 * i + 1].as_slice()))
    }

    pub fn isotropic(&self) -> &[Vec<u32>] {
        &self.basis[2 * self.r..]
    }

    /// Image of canonical `X_i` (0-based `i`) in the original frame.
    pub fn image_of_x(&self, i: usize) -> Vec<u32> {
        self.transform.row(i).to_vec()
    }

    /// Image of canonical `Z_i` (0-based `i`) in the original frame.
    pub fn image_of_z(&self, i: usize) -> Vec<u32> {
        self.transform.row(self.k + i).to_vec()
    }

    /// Canonical coordinates of an original-frame vector.
    pub fn to_canonical(&self, v: &[u32]) -> Vec<u32> {
        let inv = self.transform.inverse().expect("transform is invertible");
        let row = FieldMatrix::from_vectors(self.d, 2 * self.k, &[v.to_vec()]).expect("length 2k");
        row.mul_mat(&inv).expect("shapes agree").row(0).to_vec()
    }
}

/// Linear functional rows for `u ↦ ⟨u, f⟩`, i.e. `(z_f | −x_f)`.
fn pairing_rows(d: Prime, fs: &[Vec<u32>]) -> Vec<Vec<u32>> {
    fs.iter()
        .map(|f| {
            let m = f.len() / 2;
            let mut row = f[m..].to_vec();
            row.extend(f[..m].iter().map(|&x| d.neg(x)));
            row
        })
        .collect()
}

/// `(x, z)` with symplectic pairing 1.
pub type HyperbolicPair = (Vec<u32>, Vec<u32>);

/// Symplectic Gram–Schmidt. Always takes the lowest-index remaining vector,
/// pairs it with the first later vector of nonzero pairing (scaled so the
/// pairing is 1), and clears that pair's components from the rest.
/// Returns `(pairs, isotropic)`. Input vectors must be independent.
pub fn symplectic_gram_schmidt(d: Prime, vectors: &[Vec<u32>]) -> (Vec<HyperbolicPair>, Vec<Vec<u32>>) {
    let mut rest: Vec<Vec<u32>> = vectors.to_vec();
    let mut pairs = Vec::new();
    let mut iso = Vec::new();
    while !rest.is_empty() {
        let a = rest.remove(0);
        let partner = rest.iter().position(|w| symplectic_pairing(d, &a, w) != 0);
        let Some(pi) = partner else {
            iso.push(a);
            continue;
        };
        let mut b = rest.remove(pi);
        let lam = symplectic_pairing(d, &a, &b);
        d.scale(&mut b, d.inv(lam));
        for v in rest.iter_mut() {
            // v − ⟨v,b⟩ a + ⟨v,a⟩ b
            let vb = symplectic_pairing(d, v, &b);
            let va = symplectic_pairing(d, v, &a);
            d.axpy(v, d.neg(vb), &a);
            d.axpy(v, va, &b);
        }
        pairs.push((a, b));
    }
    (pairs, iso)
}

/// Canonical form of the span of `generators` inside `Z_D^{2k}`.
pub fn canonical_form(d: Prime, k: usize, generators: &[Vec<u32>]) -> CanonicalForm {
    let (pairs, iso) = symplectic_gram_schmidt(d, generators);
    let r = pairs.len();
    let s = iso.len();
    assert!(r + s <= k, "isotropic part cannot exceed k");

    let mut basis = Vec::with_capacity(2 * r + s);
    for (a, b) in &pairs {
        basis.push(a.clone());
        basis.push(b.clone());
    }
    basis.extend(iso.iter().cloned());

    let mut x_rows: Vec<Vec<u32>> = pairs.iter().map(|(a, _)| a.clone()).collect();
    let mut z_rows: Vec<Vec<u32>> = pairs.iter().map(|(_, b)| b.clone()).collect();

    // Partners d_j with ⟨d_j, c_j⟩ = 1, orthogonal to everything else found so far.
    let mut found: Vec<Vec<u32>> = basis.clone();
    let mut partners: Vec<Vec<u32>> = Vec::new();
    for j in 0..s {
        let rows = pairing_rows(d, &found);
        let m = FieldMatrix::from_vectors(d, 2 * k, &rows).expect("length 2k");
        let mut target = vec![0u32; found.len()];
        target[2 * r + j] = 1;
        let dj = m.solve(&target).expect("shapes agree").expect("nondegenerate pairing");
        partners.push(dj.clone());
        found.push(dj);
    }
    x_rows.extend(partners);
    z_rows.extend(iso.iter().cloned());

    // The symplectic complement of everything found is nondegenerate; split it
    // into hyperbolic pairs for the remaining qudits.
    if r + s < k {
        let rows = pairing_rows(d, &found);
        let m = FieldMatrix::from_vectors(d, 2 * k, &rows).expect("length 2k");
        let complement = m.nullspace();
        let (extra, leftover) = symplectic_gram_schmidt(d, &complement);
        assert!(leftover.is_empty(), "complement of a symplectic frame is nondegenerate");
        for (a, b) in extra {
            x_rows.push(a);
            z_rows.push(b);
        }
    }
    debug_assert_eq!(x_rows.len(), k);
    let mut all = x_rows;
    all.extend(z_rows);
    let transform = FieldMatrix::from_vectors(d, 2 * k, &all).expect("length 2k");
    CanonicalForm { d, k, r, s, basis, transform }
}

/// Whether `t` maps the standard symplectic frame to a symplectic frame.
pub fn is_symplectic(d: Prime, k: usize, t: &FieldMatrix) -> bool {
    let rows = t.row_vectors();
    let got = pairing_matrix(d, &rows);
    (0..2 * k).all(|i| {
        (0..2 * k).all(|j| {
            let want = if i < k && j == i + k {
                1
            } else if i >= k && j + k == i {
                d.neg(1)
            } else {
                0
            };
            got[i][j] == want
        })
    })
}
