//! Dense complex vectors and operators used by the brute-force oracle.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type DenseOperator = DMatrix<Complex64>;
pub type DenseVector = DVector<Complex64>;

/// Default cap on `D^m` (number of amplitudes) for any dense object.
pub const DEFAULT_AMPLITUDE_CAP: usize = 4096;

/// `D^m`, or a resource error when it exceeds `cap`.
pub fn checked_dim(d: u32, m: usize, cap: usize) -> Result<usize> {
    let mut dim: u128 = 1;
    for _ in 0..m {
        dim *= d as u128;
        if dim > cap as u128 {
            let full = (d as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
            return Err(Error::resource(format!("dense dimension {d}^{m}"), full, cap as u128));
        }
    }
    Ok(dim as usize)
}

/// `e^{2πi k / d}`
pub fn root_of_unity(d: u32, k: u64) -> Complex64 {
    let theta = 2.0 * std::f64::consts::PI * ((k % d as u64) as f64) / d as f64;
    Complex64::from_polar(1.0, theta)
}

pub fn kron(a: &DenseOperator, b: &DenseOperator) -> DenseOperator {
    a.kronecker(b)
}

/// Base-`d` digits of `index` over `m` sites, site 0 most significant.
pub fn digits(mut index: usize, d: usize, m: usize) -> Vec<usize> {
    let mut out = vec![0; m];
    for slot in out.iter_mut().rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

/// Partial trace of an operator on `m` qudits of dimension `d`, keeping the
/// sites listed in `keep` (in increasing order).
pub fn partial_trace(op: &DenseOperator, d: usize, m: usize, keep: &[usize]) -> DenseOperator {
    let traced: Vec<usize> = (0..m).filter(|i| !keep.contains(i)).collect();
    let dk = d.pow(keep.len() as u32);
    let dt = d.pow(traced.len() as u32);
    let mut strides = vec![0usize; m];
    let mut s = 1;
    for i in (0..m).rev() {
        strides[i] = s;
        s *= d;
    }
    let offset = |sites: &[usize], idx: usize| -> usize {
        digits(idx, d, sites.len()).iter().zip(sites).map(|(&dig, &site)| dig * strides[site]).sum()
    };
    let keep_off: Vec<usize> = (0..dk).map(|i| offset(keep, i)).collect();
    let trace_off: Vec<usize> = (0..dt).map(|i| offset(&traced, i)).collect();
    DenseOperator::from_fn(dk, dk, |r, c| {
        trace_off.iter().map(|&t| op[(keep_off[r] + t, keep_off[c] + t)]).sum()
    })
}

/// Reshapes a state on `m` qudits into a `D^{|keep|} × D^{m−|keep|}` matrix,
/// rows indexed by the kept sites.
pub fn split_sites(state: &DenseVector, d: usize, m: usize, keep: &[usize]) -> DenseOperator {
    let traced: Vec<usize> = (0..m).filter(|i| !keep.contains(i)).collect();
    let dk = d.pow(keep.len() as u32);
    let dt = d.pow(traced.len() as u32);
    let mut strides = vec![0usize; m];
    let mut s = 1;
    for i in (0..m).rev() {
        strides[i] = s;
        s *= d;
    }
    let offset = |sites: &[usize], idx: usize| -> usize {
        digits(idx, d, sites.len()).iter().zip(sites).map(|(&dig, &site)| dig * strides[site]).sum()
    };
    let keep_off: Vec<usize> = (0..dk).map(|i| offset(keep, i)).collect();
    let trace_off: Vec<usize> = (0..dt).map(|i| offset(&traced, i)).collect();
    DenseOperator::from_fn(dk, dt, |r, c| state[keep_off[r] + trace_off[c]])
}

/// Reduced density matrix of a pure state on the sites in `keep`.
pub fn reduce_pure(state: &DenseVector, d: usize, m: usize, keep: &[usize]) -> DenseOperator {
    let psi = split_sites(state, d, m, keep);
    &psi * psi.adjoint()
}

/// `Tr_{S̄}[Σ_j |a_j⟩⟨b_j|]` for paired columns of `a` and `b`.
pub fn reduce_outer(a: &DenseOperator, b: &DenseOperator, d: usize, m: usize, keep: &[usize]) -> DenseOperator {
    assert_eq!(a.ncols(), b.ncols());
    let dk = d.pow(keep.len() as u32);
    let mut acc = DenseOperator::zeros(dk, dk);
    for j in 0..a.ncols() {
        let aj = split_sites(&a.column(j).into_owned(), d, m, keep);
        let bj = split_sites(&b.column(j).into_owned(), d, m, keep);
        acc += aj * bj.adjoint();
    }
    acc
}

/// Hilbert–Schmidt inner product `Tr[A† B]`.
pub fn hs_inner(a: &DenseOperator, b: &DenseOperator) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn frobenius_norm(a: &DenseOperator) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `½ ‖ρ − σ‖₁` for Hermitian `ρ`, `σ`.
pub fn trace_distance(rho: &DenseOperator, sigma: &DenseOperator) -> f64 {
    let diff = rho - sigma;
    let herm = (&diff + diff.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigenvalues();
    0.5 * eig.iter().map(|v| v.abs()).sum::<f64>()
}

pub fn max_abs_diff(a: &DenseOperator, b: &DenseOperator) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn purity(rho: &DenseOperator) -> f64 {
    hs_inner(rho, rho).re
}
