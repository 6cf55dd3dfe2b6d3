//! Small dense numeric kernels: complex and real matrices, eigenphases of
//! unitaries, nullity via singular values, and matrix exponentials.

mod eigen;
mod matrix;
mod svd;

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
// Unused once std is in the build graph (its inherent float methods win).
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

pub use eigen::{hermitian_eigen, wrap_phase};
pub use matrix::{ComplexMatrix, RealMatrix};
pub use svd::svd_right;

/// Absolute floor under the relative singular-value threshold.
const RANK_FLOOR: f64 = 1e-12;

/// Numeric tolerances shared by every computation in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolerancePolicy {
    /// Allowed `max |U^dag U - I|` for a matrix to count as unitary.
    pub eps_unitary: f64,
    /// Singular values at or below `eps_rank * sigma_max` count as zero.
    pub eps_rank: f64,
    /// Width, in radians, within which eigenphases are considered equal.
    pub eps_eig: f64,
    /// Tolerance for comparing invariants and coordinates.
    pub eps_match: f64,
}

impl TolerancePolicy {
    pub const DEFAULT: Self =
        Self { eps_unitary: 1e-9, eps_rank: 1e-7, eps_eig: 1e-7, eps_match: 1e-8 };

    /// Same policy with `eps_match` replaced.
    pub fn with_match(self, eps_match: f64) -> Self {
        Self { eps_match, ..self }
    }

    pub fn is_valid(&self) -> bool {
        let all = [self.eps_unitary, self.eps_rank, self.eps_eig, self.eps_match];
        all.iter().all(|&e| e > 0.0 && e.is_finite()) && self.eps_rank > self.eps_unitary
    }
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self::DEFAULT
    }
}

fn check_unitary(u: &ComplexMatrix, tol: &TolerancePolicy) -> Result<()> {
    let deviation = u.unitarity_deviation();
    if deviation <= tol.eps_unitary {
        Ok(())
    } else {
        Err(Error::NotUnitary { deviation })
    }
}

/// Divides out `det(U)^{1/dim}` (principal root) and returns the removed phase.
pub fn special_unitarize(u: &ComplexMatrix, tol: &TolerancePolicy) -> Result<(ComplexMatrix, f64)> {
    check_unitary(u, tol)?;
    let det = u.det();
    let mut arg = det.im.atan2(det.re);
    if arg <= -PI {
        arg += 2.0 * PI;
    }
    let phase = arg / u.dim() as f64;
    Ok((u.scale(Complex64::from_polar(1.0, -phase)), phase))
}

/// Eigenphases of a unitary matrix in `(-pi, pi]`, ascending, with multiplicity.
pub fn eigenphases_unitary(m: &ComplexMatrix, tol: &TolerancePolicy) -> Result<Vec<f64>> {
    check_unitary(m, tol)?;
    let mut phases = eigen::unitary_eigenphases(m);
    phases.sort_by(f64::total_cmp);
    Ok(phases)
}

/// A run of eigenphases that are equal within tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseCluster {
    pub size: usize,
    /// Circular mean of the members.
    pub mean: f64,
}

/// Single-linkage clustering of sorted phases on the circle.
///
/// Neighbouring phases at most `eps` apart share a cluster; the gap between
/// the last phase and the first (across `+-pi`) is treated like any other.
pub fn phase_clusters(phases: &[f64], eps: f64) -> Vec<PhaseCluster> {
    let n = phases.len();
    if n == 0 {
        return Vec::new();
    }
    let gap = |i: usize| {
        let next = (i + 1) % n;
        let d = phases[next] - phases[i];
        if next == 0 {
            d + 2.0 * PI
        } else {
            d
        }
    };
    // Start right after a gap wider than eps; if there is none, everything
    // is one cluster.
    let Some(cut) = (0..n).find(|&i| gap(i) > eps) else {
        return alloc::vec![PhaseCluster { size: n, mean: circular_mean(phases) }];
    };
    let mut clusters = Vec::new();
    let mut members = Vec::new();
    for step in 1..=n {
        let i = (cut + step) % n;
        members.push(phases[i]);
        if gap(i) > eps {
            clusters.push(PhaseCluster { size: members.len(), mean: circular_mean(&members) });
            members.clear();
        }
    }
    clusters
}

/// Cluster sizes of [`phase_clusters`].
pub fn cluster_phases(phases: &[f64], eps: f64) -> Vec<usize> {
    phase_clusters(phases, eps).into_iter().map(|c| c.size).collect()
}

fn circular_mean(phases: &[f64]) -> f64 {
    let (s, c) = phases.iter().fold((0.0, 0.0), |(s, c), p| (s + p.sin(), c + p.cos()));
    let mut m = s.atan2(c);
    if m <= -PI {
        m += 2.0 * PI;
    }
    m
}

fn rank_threshold(sigma: &[f64], eps_rank: f64) -> f64 {
    let smax = sigma.iter().fold(0.0f64, |a, &b| a.max(b));
    (eps_rank * smax).max(RANK_FLOOR)
}

/// Column count minus the number of singular values above `eps_rank * sigma_max`.
pub fn nullity(m: &RealMatrix, eps_rank: f64) -> usize {
    let (sigma, _) = svd_right(m);
    let thr = rank_threshold(&sigma, eps_rank);
    m.cols() - sigma.iter().filter(|&&s| s > thr).count()
}

/// Orthonormal basis of `ker M`, one column per kernel direction.
pub fn kernel_basis(m: &RealMatrix, eps_rank: f64) -> RealMatrix {
    let (sigma, v) = svd_right(m);
    let thr = rank_threshold(&sigma, eps_rank);
    let columns: Vec<Vec<f64>> =
        sigma.iter().enumerate().filter(|(_, &s)| s <= thr).map(|(j, _)| v.column(j)).collect();
    RealMatrix::from_columns(m.cols(), &columns)
}

/// `exp(H)` for antihermitian `H`, through the eigendecomposition of `iH`.
pub fn expm_antihermitian(h: &ComplexMatrix, tol: &TolerancePolicy) -> Result<ComplexMatrix> {
    let deviation = h.antihermiticity_deviation();
    if deviation > tol.eps_unitary {
        return Err(Error::BadGenerator { deviation });
    }
    // H = -i G with G = iH hermitian, so exp(H) = V exp(-i g) V^dag.
    let g = h.scale(Complex64::new(0.0, 1.0));
    let (values, v) = hermitian_eigen(&g);
    let phases: Vec<Complex64> = values.iter().map(|&x| Complex64::from_polar(1.0, -x)).collect();
    Ok(&(&v * &ComplexMatrix::diagonal(&phases)) * &v.adjoint())
}
