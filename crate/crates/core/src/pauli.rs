//! Qudit Pauli products `ω^λ X^x Z^z` and their symplectic representation.
//!
//! Products are stored in X-before-Z normal form. Multiplication follows
//! `(X^a Z^b)(X^c Z^d) = ω^{-b·c} X^{a+c} Z^{b+d}`, which is what `XZ = ω ZX`
//! gives for the clock and shift matrices built by [`PauliProduct::dense_matrix`].

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::dense::{checked_dim, kron, root_of_unity, DenseOperator};
use crate::error::{Error, Result};
use crate::primefield::{in_span, rank_of, Prime};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliProduct {
    d: Prime,
    x: Vec<u32>,
    z: Vec<u32>,
    phase: u32,
}

impl PauliProduct {
    pub fn new(d: Prime, x: Vec<u32>, z: Vec<u32>, phase: u32) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::input(format!("x has {} sites but z has {}", x.len(), z.len())));
        }
        let p = d.get();
        Ok(PauliProduct {
            d,
            x: x.into_iter().map(|v| v % p).collect(),
            z: z.into_iter().map(|v| v % p).collect(),
            phase: phase % p,
        })
    }

    pub fn identity(d: Prime, m: usize) -> Self {
        PauliProduct { d, x: vec![0; m], z: vec![0; m], phase: 0 }
    }

    /// `X^power` on `site`.
    pub fn x_on(d: Prime, m: usize, site: usize, power: u32) -> Self {
        let mut p = Self::identity(d, m);
        p.x[site] = power % d.get();
        p
    }

    /// `Z^power` on `site`.
    pub fn z_on(d: Prime, m: usize, site: usize, power: u32) -> Self {
        let mut p = Self::identity(d, m);
        p.z[site] = power % d.get();
        p
    }

    /// Phase-free product from a symplectic vector `(x | z)` of length `2m`.
    pub fn from_symplectic(d: Prime, v: &[u32]) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::input("symplectic vector must have even length"));
        }
        let m = v.len() / 2;
        Self::new(d, v[..m].to_vec(), v[m..].to_vec(), 0)
    }

    pub fn modulus(&self) -> Prime {
        self.d
    }

    pub fn num_qudits(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[u32] {
        &self.x
    }

    pub fn z(&self) -> &[u32] {
        &self.z
    }

    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u32) -> Self {
        self.phase = phase % self.d.get();
        self
    }

    /// `(x | z)`, discarding the phase.
    pub fn symplectic(&self) -> Vec<u32> {
        let mut v = self.x.clone();
        v.extend_from_slice(&self.z);
        v
    }

    /// Identity up to phase.
    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&v| v == 0)
    }

    /// Number of sites carrying a non-identity factor.
    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).filter(|(&a, &b)| a != 0 || b != 0).count()
    }

    fn check_compatible(&self, other: &PauliProduct) -> Result<()> {
        if self.d != other.d {
            return Err(Error::ModulusMismatch { left: self.d.get(), right: other.d.get() });
        }
        if self.num_qudits() != other.num_qudits() {
            return Err(Error::input(format!(
                "Pauli products act on {} and {} qudits",
                self.num_qudits(),
                other.num_qudits()
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &PauliProduct) -> Result<PauliProduct> {
        self.check_compatible(other)?;
        let p = self.d;
        // Moving Z^{b} of self past X^{c} of other costs ω^{-b·c}.
        let swap = p.dot(&self.z, &other.x);
        let phase = p.sub(p.add(self.phase, other.phase), swap);
        let x = self.x.iter().zip(&other.x).map(|(&a, &c)| p.add(a, c)).collect();
        let z = self.z.iter().zip(&other.z).map(|(&b, &d)| p.add(b, d)).collect();
        Ok(PauliProduct { d: p, x, z, phase })
    }

    pub fn pow(&self, e: u32) -> PauliProduct {
        let mut acc = PauliProduct::identity(self.d, self.num_qudits());
        for _ in 0..e {
            acc = acc.multiply(self).expect("same shape");
        }
        acc
    }

    /// `λ` with `p q = ω^λ q p`.
    pub fn commutation_exponent(&self, other: &PauliProduct) -> Result<u32> {
        self.check_compatible(other)?;
        Ok(symplectic_pairing(self.d, &self.symplectic(), &other.symplectic()))
    }

    pub fn commutes_with(&self, other: &PauliProduct) -> Result<bool> {
        Ok(self.commutation_exponent(other)? == 0)
    }

    /// Exact `D^m × D^m` matrix, site 0 being the most significant tensor factor.
    pub fn dense_matrix(&self, cap: usize) -> Result<DenseOperator> {
        let d = self.d.get();
        let dim = checked_dim(d, self.num_qudits(), cap)?;
        let mut out = DenseOperator::from_element(1, 1, root_of_unity(d, self.phase as u64));
        for (&a, &b) in self.x.iter().zip(&self.z) {
            out = kron(&out, &single_site(d, a, b));
        }
        debug_assert_eq!(out.nrows(), dim);
        Ok(out)
    }

    /// Restriction to the given sites (phase kept).
    pub fn restrict(&self, sites: &[usize]) -> PauliProduct {
        PauliProduct {
            d: self.d,
            x: sites.iter().map(|&s| self.x[s]).collect(),
            z: sites.iter().map(|&s| self.z[s]).collect(),
            phase: self.phase,
        }
    }

    /// Parses either compact `IXYZ` strings (D = 2) or whitespace-separated
    /// `x<a>z<b>` site tokens, optionally prefixed with `w<λ>*`.
    pub fn parse(s: &str, d: Prime) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = match s.strip_prefix('w') {
            Some(rest) => {
                let (num, body) = rest
                    .split_once('*')
                    .ok_or_else(|| Error::input(format!("phase prefix in {s:?} must look like w<k>*")))?;
                let v: u32 = num.parse().map_err(|_| Error::input(format!("bad phase exponent {num:?}")))?;
                (v, body)
            }
            None => (0, s),
        };
        let body = body.trim();
        let mut x = Vec::new();
        let mut z = Vec::new();
        if body.starts_with('x') {
            for tok in body.split_whitespace() {
                let (a, b) = parse_token(tok)?;
                x.push(a);
                z.push(b);
            }
        } else {
            if d.get() != 2 && !body.is_empty() {
                return Err(Error::input(format!("letter strings need D = 2; use x<a>z<b> tokens for D = {d}")));
            }
            for ch in body.chars() {
                let (a, b) = match ch {
                    'I' => (0, 0),
                    'X' => (1, 0),
                    'Y' => (1, 1),
                    'Z' => (0, 1),
                    other => return Err(Error::input(format!("unexpected character {other:?} in Pauli string"))),
                };
                x.push(a);
                z.push(b);
            }
        }
        for (&a, &b) in x.iter().zip(&z) {
            if a >= d.get() || b >= d.get() {
                return Err(Error::input(format!("exponent out of range for D = {d}")));
            }
        }
        if phase >= d.get() {
            return Err(Error::input(format!("phase exponent {phase} out of range for D = {d}")));
        }
        Self::new(d, x, z, phase)
    }
}

fn parse_token(tok: &str) -> Result<(u32, u32)> {
    let bad = || Error::input(format!("bad site token {tok:?}, expected x<a>z<b>"));
    let rest = tok.strip_prefix('x').ok_or_else(bad)?;
    let (a, b) = rest.split_once('z').ok_or_else(bad)?;
    Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
}

impl fmt::Display for PauliProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase != 0 {
            write!(f, "w{}*", self.phase)?;
        }
        if self.d.get() == 2 {
            for (&a, &b) in self.x.iter().zip(&self.z) {
                let ch = match (a, b) {
                    (0, 0) => 'I',
                    (1, 0) => 'X',
                    (1, 1) => 'Y',
                    _ => 'Z',
                };
                write!(f, "{ch}")?;
            }
            Ok(())
        } else {
            let toks: Vec<String> = self.x.iter().zip(&self.z).map(|(a, b)| format!("x{a}z{b}")).collect();
            write!(f, "{}", toks.join(" "))
        }
    }
}

/// Parsing only works for D = 2 strings; use [`PauliProduct::parse`] otherwise.
impl FromStr for PauliProduct {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, Prime::new(2).expect("2 is prime"))
    }
}

/// Single-qudit `X^a Z^b` with `X = Σ|j⟩⟨j+1|`, `Z = Σ ω^j |j⟩⟨j|`.
fn single_site(d: u32, a: u32, b: u32) -> DenseOperator {
    let n = d as usize;
    let mut m = DenseOperator::zeros(n, n);
    // X^a |j+a⟩ = |j⟩ and Z^b |j+a⟩ = ω^{b(j+a)} |j+a⟩.
    for j in 0..n {
        let col = (j + a as usize) % n;
        m[(j, col)] = root_of_unity(d, (b as u64) * (col as u64));
    }
    m
}

/// `⟨u, v⟩ = x_u·z_v − z_u·x_v` on vectors `(x | z)`.
pub fn symplectic_pairing(d: Prime, u: &[u32], v: &[u32]) -> u32 {
    debug_assert_eq!(u.len(), v.len());
    let m = u.len() / 2;
    d.sub(d.dot(&u[..m], &v[m..]), d.dot(&u[m..], &v[..m]))
}

/// Matrix of pairwise symplectic pairings.
pub fn pairing_matrix(d: Prime, vs: &[Vec<u32>]) -> Vec<Vec<u32>> {
    vs.iter().map(|u| vs.iter().map(|v| symplectic_pairing(d, u, v)).collect()).collect()
}

/// A subgroup of the Pauli group on `m` qudits, taken modulo phases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliSubgroup {
    d: Prime,
    m: usize,
    generators: Vec<PauliProduct>,
}

impl PauliSubgroup {
    /// Fails if the generators are not projectively independent.
    pub fn new(d: Prime, m: usize, generators: Vec<PauliProduct>) -> Result<Self> {
        for g in &generators {
            if g.modulus() != d || g.num_qudits() != m {
                return Err(Error::input(format!("generator {g} does not act on {m} qudits of dimension {d}")));
            }
        }
        let vs: Vec<Vec<u32>> = generators.iter().map(PauliProduct::symplectic).collect();
        if rank_of(d, 2 * m, &vs) != vs.len() {
            return Err(Error::input("subgroup generators are not independent"));
        }
        Ok(PauliSubgroup { d, m, generators })
    }

    pub fn generators(&self) -> &[PauliProduct] {
        &self.generators
    }

    pub fn num_qudits(&self) -> usize {
        self.m
    }

    /// Projective membership.
    pub fn contains(&self, candidate: &PauliProduct) -> bool {
        if candidate.modulus() != self.d || candidate.num_qudits() != self.m {
            return false;
        }
        let vs: Vec<Vec<u32>> = self.generators.iter().map(PauliProduct::symplectic).collect();
        in_span(self.d, &vs, &candidate.symplectic())
    }

    /// `log_D` of the order of the projective group.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

/// Dense product helper used by tests: `ω^λ` as a complex number.
pub fn phase_factor(d: Prime, lambda: u32) -> Complex64 {
    root_of_unity(d.get(), lambda as u64)
}
