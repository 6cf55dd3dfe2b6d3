use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Euclid;
// Unused once std is in the build graph (its inherent float methods win).
#[allow(unused_imports)]
use num_traits::Float;

use super::ComplexMatrix;

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Returns the eigenvalues and a unitary matrix whose columns are the
/// corresponding eigenvectors. Only the Hermitian part of `a` is used.
pub fn hermitian_eigen(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = a.dim();
    let mut a = a.clone();
    // Symmetrize so rounding in the input cannot stall the sweeps.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let m = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = m;
            a[(j, i)] = m.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off == 0.0 || off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let values = (0..n).map(|i| a[(i, i)].re).collect();
    (values, v)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Zeroes `a[p][q]` with the unitary `G = diag(1, e^{-i phi}) R(theta)` on the
/// `(p, q)` plane, where `phi = arg a[p][q]`: `a <- G^dag a G`, `v <- v G`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.dim();
    let b = a[(p, q)];
    let mag = b.norm();
    if mag < f64::MIN_POSITIVE {
        return;
    }
    let phase = b / mag;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = if theta >= 0.0 { 1.0 } else { -1.0 } / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    for k in 0..n {
        let (x, y) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = x * g_pp + y * g_qp;
        a[(k, q)] = x * g_pq + y * g_qq;
    }
    for k in 0..n {
        let (x, y) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = g_pp.conj() * x + g_qp.conj() * y;
        a[(q, k)] = g_pq.conj() * x + g_qq.conj() * y;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let (x, y) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = x * g_pp + y * g_qp;
        v[(k, q)] = x * g_pq + y * g_qq;
    }
}

/// Maps an angle into `(-pi, pi]`.
pub fn wrap_phase(x: f64) -> f64 {
    let mut y = Euclid::rem_euclid(&x, &(2.0 * PI));
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// Eigenphases of a unitary matrix, unsorted.
///
/// The Hermitian and anti-Hermitian parts of a normal matrix commute, so the
/// eigenvectors of the Hermitian part are refined inside each degenerate
/// cluster by diagonalizing the anti-Hermitian part there. Each phase is
/// read from the Rayleigh quotient `v^dag M v`.
pub(crate) fn unitary_eigenphases(m: &ComplexMatrix) -> Vec<f64> {
    const CLUSTER: f64 = 1e-6;
    let n = m.dim();
    let md = m.adjoint();
    let herm = (m + &md).scale(Complex64::new(0.5, 0.0));
    let anti = (m - &md).scale(Complex64::new(0.0, -0.5));

    let (values, vecs) = hermitian_eigen(&herm);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));

    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] - values[order[end - 1]] <= CLUSTER {
            end += 1;
        }
        let group: Vec<Vec<Complex64>> =
            order[start..end].iter().map(|&j| column(&vecs, j)).collect();
        if group.len() == 1 {
            columns.extend(group);
        } else {
            columns.extend(refine_cluster(&anti, &group));
        }
        start = end;
    }

    columns
        .iter()
        .map(|v| {
            let mv = apply(m, v);
            let rq: Complex64 = v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum();
            let mut phase = rq.im.atan2(rq.re);
            if phase <= -PI {
                phase += 2.0 * PI;
            }
            phase
        })
        .collect()
}

fn refine_cluster(op: &ComplexMatrix, basis: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let k = basis.len();
    let images: Vec<Vec<Complex64>> = basis.iter().map(|b| apply(op, b)).collect();
    let mut sub = ComplexMatrix::zeros(k);
    for i in 0..k {
        for j in 0..k {
            sub[(i, j)] = basis[i].iter().zip(&images[j]).map(|(a, b)| a.conj() * b).sum();
        }
    }
    let (_, w) = hermitian_eigen(&sub);
    (0..k)
        .map(|col| {
            let mut out = alloc::vec![Complex64::new(0.0, 0.0); basis[0].len()];
            for (i, b) in basis.iter().enumerate() {
                let coef = w[(i, col)];
                for (o, x) in out.iter_mut().zip(b) {
                    *o += coef * x;
                }
            }
            out
        })
        .collect()
}

fn column(m: &ComplexMatrix, j: usize) -> Vec<Complex64> {
    (0..m.dim()).map(|i| m[(i, j)]).collect()
}

fn apply(m: &ComplexMatrix, v: &[Complex64]) -> Vec<Complex64> {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| m[(i, j)] * v[j]).sum()).collect()
}
