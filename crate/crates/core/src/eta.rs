//! The number of local degrees of freedom a gate binds (`eta`).
//!
//! A gate `U` leaks a local degree of freedom when some one-parameter local
//! family commutes through it: `U exp(a·X) U^dag = exp(b·X)` with both sides
//! local. Expanding `Ad(U)` of the local generators in an orthonormal basis
//! of `su(2^n)` gives the real matrix `W = [W_L; W_N]`; the leaked directions
//! are the kernel of the nonlocal block, so
//!
//! ```text
//! eta(U) = 3n - dim ker W_N + dim(ker W_L ∩ ker W_N)
//! ```
//!
//! For two qubits `eta` is also available in closed form from the canonical
//! parameters, from the eigenvalue multiplicities of `M(U)`, and from the
//! Weyl-chamber stratum. All four routes are implemented here so they can be
//! checked against each other.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
// Unused once std is in the build graph (its inherent float methods win).
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::gates::{pauli, GateMatrix};
use crate::invariants::{m_matrix, weyl_reduce, CanonicalParams, WeylRegion};
use crate::numkernel::{
    cluster_phases, eigenphases_unitary, kernel_basis, nullity, wrap_phase, ComplexMatrix,
    RealMatrix, TolerancePolicy,
};

/// Orthonormal basis of `su(2^n)` split into local and nonlocal generators.
///
/// Every element is `i P / sqrt(2^n)` for a Pauli string `P`, so
/// `tr(X^dag X) = 1`. Locals are ordered qubit-major, `[X1, Y1, Z1, X2, ...]`,
/// which pairs local index `i` with `i + 3` for two qubits. Nonlocals are the
/// strings of weight two or more in lexicographic order over `I < X < Y < Z`
/// with qubit 1 most significant.
#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    n: usize,
    locals: Vec<ComplexMatrix>,
    nonlocals: Vec<ComplexMatrix>,
    local_labels: Vec<String>,
    nonlocal_labels: Vec<String>,
}

impl GeneratorBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn locals(&self) -> &[ComplexMatrix] {
        &self.locals
    }

    pub fn nonlocals(&self) -> &[ComplexMatrix] {
        &self.nonlocals
    }

    /// Pauli-string labels such as `"XI"`, in the same order as [`Self::locals`].
    pub fn local_labels(&self) -> &[String] {
        &self.local_labels
    }

    pub fn nonlocal_labels(&self) -> &[String] {
        &self.nonlocal_labels
    }

    pub fn all(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.locals.iter().chain(&self.nonlocals)
    }

    pub fn nonlocal_index(&self, label: &str) -> Option<usize> {
        self.nonlocal_labels.iter().position(|l| l == label)
    }
}

const PAULI_NAMES: [char; 4] = ['I', 'X', 'Y', 'Z'];

fn pauli_string(digits: &[usize]) -> (ComplexMatrix, String) {
    let scale = Complex64::new(0.0, 1.0 / ((1usize << digits.len()) as f64).sqrt());
    let m = digits[1..].iter().fold(pauli(digits[0]), |acc, &d| acc.kron(&pauli(d))).scale(scale);
    (m, digits.iter().map(|&d| PAULI_NAMES[d]).collect())
}

pub fn generator_basis(n: usize) -> Result<GeneratorBasis> {
    if !(1..=3).contains(&n) {
        return Err(Error::BadDim { expected: 2, found: n });
    }
    let mut basis = GeneratorBasis {
        n,
        locals: Vec::new(),
        nonlocals: Vec::new(),
        local_labels: Vec::new(),
        nonlocal_labels: Vec::new(),
    };
    for q in 0..n {
        for a in 1..=3 {
            let mut digits = alloc::vec![0; n];
            digits[q] = a;
            let (m, l) = pauli_string(&digits);
            basis.locals.push(m);
            basis.local_labels.push(l);
        }
    }
    for code in 0..(1usize << (2 * n)) {
        let digits: Vec<usize> = (0..n).rev().map(|q| (code >> (2 * q)) & 3).collect();
        if digits.iter().filter(|&&d| d != 0).count() >= 2 {
            let (m, l) = pauli_string(&digits);
            basis.nonlocals.push(m);
            basis.nonlocal_labels.push(l);
        }
    }
    Ok(basis)
}

/// `Ad(U)` restricted to the local generators, split into local and
/// nonlocal rows.
#[derive(Debug, Clone, PartialEq)]
pub struct WMatrix {
    pub local: RealMatrix,
    pub nonlocal: RealMatrix,
}

impl WMatrix {
    /// `[W_L; W_N]`, `(4^n - 1) x 3n`.
    pub fn stacked(&self) -> RealMatrix {
        self.local.vstack(&self.nonlocal)
    }
}

/// `W_ij = tr(U X_j^dag U^dag X_i)` for local `X_j` and every `X_i`.
pub fn w_matrix(u: &GateMatrix, basis: &GeneratorBasis) -> Result<WMatrix> {
    if u.n() != basis.n {
        return Err(Error::BadDim { expected: 1 << basis.n, found: u.matrix().dim() });
    }
    let m = u.matrix();
    let md = m.adjoint();
    let cols = basis.locals.len();
    let mut local = RealMatrix::zeros(cols, cols);
    let mut nonlocal = RealMatrix::zeros(basis.nonlocals.len(), cols);
    let mut worst: f64 = 0.0;
    for (j, xj) in basis.locals.iter().enumerate() {
        let image = &(m * &xj.adjoint()) * &md;
        for (i, xi) in basis.all().enumerate() {
            let w = image.trace_of_product(xi);
            worst = worst.max(w.im.abs());
            if i < cols {
                local[(i, j)] = w.re;
            } else {
                nonlocal[(i - cols, j)] = w.re;
            }
        }
    }
    if worst > 1e-6 {
        return Err(Error::ImaginaryW { residue: worst });
    }
    Ok(WMatrix { local, nonlocal })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EtaMethod {
    Numeric,
    Analytic,
    Spectral,
    Table,
}

impl EtaMethod {
    pub fn name(&self) -> &'static str {
        match self {
            EtaMethod::Numeric => "numeric",
            EtaMethod::Analytic => "analytic",
            EtaMethod::Spectral => "spectral",
            EtaMethod::Table => "table",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EtaReport {
    pub eta: usize,
    pub dim_ker_wn: usize,
    pub dim_intersection: usize,
    pub method: EtaMethod,
    /// Nullity of each `N^i` block (analytic route only).
    pub block_breakdown: Option<[usize; 3]>,
}

/// `eta` by rank-nullity on the `W` matrix. Works for one to three qubits.
pub fn eta_numeric(u: &GateMatrix, tol: &TolerancePolicy) -> Result<EtaReport> {
    let basis = generator_basis(u.n())?;
    eta_numeric_with_basis(u, &basis, tol)
}

/// [`eta_numeric`] with a prebuilt basis, for repeated evaluation.
pub fn eta_numeric_with_basis(
    u: &GateMatrix,
    basis: &GeneratorBasis,
    tol: &TolerancePolicy,
) -> Result<EtaReport> {
    let w = w_matrix(u, basis)?;
    let locals = basis.locals.len();
    let dim_ker_wn = nullity(&w.nonlocal, tol.eps_rank);
    let kernel = kernel_basis(&w.nonlocal, tol.eps_rank);
    let dim_intersection =
        if kernel.cols() == 0 { 0 } else { nullity(&(&w.local * &kernel), tol.eps_rank) };
    Ok(EtaReport {
        eta: locals - dim_ker_wn + dim_intersection,
        dim_ker_wn,
        dim_intersection,
        method: EtaMethod::Numeric,
        block_breakdown: None,
    })
}

/// The closed-form `L^i` block of `W_L` for the canonical gate at `p`
/// (`i` in `0..3`), coupling local generators `i` and `i + 3`.
pub fn l_block(p: CanonicalParams, i: usize) -> [[f64; 2]; 2] {
    let (a, b) = other_two(p, i);
    let diag = a.cos() * b.cos();
    let off = a.sin() * b.sin();
    [[diag, off], [off, diag]]
}

/// The closed-form `N^i` block of `W_N` for the canonical gate at `p`.
pub fn n_block(p: CanonicalParams, i: usize) -> [[f64; 2]; 2] {
    let (a, b) = other_two(p, i);
    let sign = if i == 1 { -1.0 } else { 1.0 };
    let diag = sign * a.sin() * b.cos();
    let off = -sign * a.cos() * b.sin();
    [[diag, off], [off, diag]]
}

fn other_two(p: CanonicalParams, i: usize) -> (f64, f64) {
    match i {
        0 => (p.c2, p.c3),
        1 => (p.c1, p.c3),
        2 => (p.c1, p.c2),
        _ => panic!("block index {i} out of range"),
    }
}

fn block_nullity(block: [[f64; 2]; 2], eps: f64) -> usize {
    let [[a, b], [c, d]] = block;
    if [a, b, c, d].iter().all(|x| x.abs() <= eps) {
        2
    } else if (a * d - b * c).abs() <= eps {
        1
    } else {
        0
    }
}

/// `eta` of a two-qubit class from the nullities of the closed-form `N^i`
/// blocks at the reduced canonical point.
pub fn eta_analytic(p: CanonicalParams, tol: &TolerancePolicy) -> Result<EtaReport> {
    let r = weyl_reduce(p, tol)?;
    let blocks: [usize; 3] = core::array::from_fn(|i| block_nullity(n_block(r, i), tol.eps_match));
    let dim_ker_wn: usize = blocks.iter().sum();
    Ok(EtaReport {
        eta: 6 - dim_ker_wn,
        dim_ker_wn,
        dim_intersection: 0,
        method: EtaMethod::Analytic,
        block_breakdown: Some(blocks),
    })
}

fn spectral_report(sorted_phases: &[f64], eps: f64) -> EtaReport {
    let leaked: usize = cluster_phases(sorted_phases, eps).iter().map(|m| m * (m - 1) / 2).sum();
    EtaReport {
        eta: 6 - leaked,
        dim_ker_wn: leaked,
        dim_intersection: 0,
        method: EtaMethod::Spectral,
        block_breakdown: None,
    }
}

/// `eta = 6 - sum m(m-1)/2` over the eigenvalue multiplicities `m` of `M(U)`.
pub fn eta_spectral(u: &GateMatrix, tol: &TolerancePolicy) -> Result<EtaReport> {
    let phases = eigenphases_unitary(&m_matrix(u)?, tol)?;
    Ok(spectral_report(&phases, tol.eps_eig))
}

/// [`eta_spectral`] using the eigenphases predicted by canonical parameters.
pub fn eta_spectral_canonical(p: CanonicalParams, tol: &TolerancePolicy) -> EtaReport {
    let mut phases = p.m_phases().map(wrap_phase);
    phases.sort_by(f64::total_cmp);
    spectral_report(&phases, tol.eps_eig)
}

pub fn eta_table(region: WeylRegion) -> usize {
    match region {
        WeylRegion::VertexIdentity | WeylRegion::VertexSwap => 0,
        WeylRegion::EdgeOA3 | WeylRegion::EdgeA1A3 => 3,
        WeylRegion::EdgeOA1 | WeylRegion::EdgeA2A3 => 4,
        WeylRegion::FaceOA1A3 | WeylRegion::FaceOA2A3 | WeylRegion::FaceA1A2A3 => 5,
        WeylRegion::Generic => 6,
    }
}

/// `ceil((4^n - 3n - 1) / eta)`: applications of a fixed two-qubit gate
/// below which almost no `n`-qubit gate can be built.
pub fn gate_count_lower_bound(n: usize, eta: usize) -> Result<u64> {
    if !(2..=31).contains(&n) {
        return Err(Error::BadDim { expected: 2, found: n });
    }
    if eta == 0 {
        return Err(Error::UnboundedGate);
    }
    if eta > 6 {
        return Err(Error::BadEta { n, eta });
    }
    let free = 4u64.pow(n as u32) - 3 * n as u64 - 1;
    Ok(free.div_ceil(eta as u64))
}

impl core::fmt::Display for EtaReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "eta = {} ({})", self.eta, self.method.name())?;
        if let Some(b) = self.block_breakdown {
            write!(f, " blocks {b:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{build_named, canonical_gate, GateSpec};
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    const TOL: TolerancePolicy = TolerancePolicy::DEFAULT;

    fn gram_is_identity(basis: &GeneratorBasis) -> bool {
        let all: Vec<&ComplexMatrix> = basis.all().collect();
        all.iter().enumerate().all(|(i, x)| {
            all.iter().enumerate().all(|(j, y)| {
                let ip = x.adjoint().trace_of_product(y);
                let expect = if i == j { 1.0 } else { 0.0 };
                (ip - Complex64::new(expect, 0.0)).norm() <= 1e-12
            })
        })
    }

    #[test]
    fn basis_sizes_and_orthonormality() {
        for (n, locals, nonlocals) in [(1, 3, 0), (2, 6, 9), (3, 9, 54)] {
            let b = generator_basis(n).unwrap();
            assert_eq!(b.locals().len(), locals);
            assert_eq!(b.nonlocals().len(), nonlocals);
            assert!(gram_is_identity(&b), "n = {n}");
            for x in b.all() {
                assert!(x.antihermiticity_deviation() < 1e-15);
            }
        }
        let b = generator_basis(2).unwrap();
        assert_eq!(b.local_labels(), ["XI", "YI", "ZI", "IX", "IY", "IZ"]);
        assert_eq!(b.nonlocal_labels()[..3], ["XX", "XY", "XZ"]);
        assert!(matches!(generator_basis(4), Err(Error::BadDim { .. })));
    }

    #[test]
    fn w_of_identity_and_swap() {
        let basis = generator_basis(2).unwrap();
        let w = w_matrix(&build_named(GateSpec::Identity).unwrap(), &basis).unwrap();
        assert!(w.local.max_abs_diff(&RealMatrix::identity(6)) < 1e-15);
        assert!(w.nonlocal.max_abs() < 1e-15);

        let w = w_matrix(&build_named(GateSpec::Swap).unwrap(), &basis).unwrap();
        let mut swap_blocks = RealMatrix::zeros(6, 6);
        for i in 0..3 {
            swap_blocks[(i, i + 3)] = 1.0;
            swap_blocks[(i + 3, i)] = 1.0;
        }
        assert!(w.local.max_abs_diff(&swap_blocks) < 1e-15);
        assert_eq!(nullity(&w.nonlocal, TOL.eps_rank), 6);
    }

    #[test]
    fn eta_numeric_examples() {
        let eta = |s| eta_numeric(&build_named(s).unwrap(), &TOL).unwrap().eta;
        assert_eq!(eta(GateSpec::Cnot), 4);
        assert_eq!(eta(GateSpec::Identity), 0);
        assert_eq!(eta(GateSpec::B), 6);
        assert_eq!(eta(GateSpec::Dcnot), 4);
        assert_eq!(eta(GateSpec::Swap), 0);
    }

    #[test]
    fn eta_analytic_examples() {
        let eta = |a, b, c| eta_analytic(CanonicalParams::new(a, b, c), &TOL).unwrap();
        let r = eta(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4);
        assert_eq!(r.eta, 3);
        assert_eq!(r.dim_intersection, 0);
        assert_eq!(eta(FRAC_PI_2, FRAC_PI_2, 0.0).eta, 4);
        let g = eta(0.9, 0.4, 0.2);
        assert_eq!(g.eta, 6);
        assert_eq!(g.block_breakdown, Some([0, 0, 0]));
    }

    #[test]
    fn eta_spectral_examples() {
        let id = eta_spectral(&build_named(GateSpec::Identity).unwrap(), &TOL).unwrap();
        assert_eq!((id.dim_ker_wn, id.eta), (6, 0));
        let cnot = eta_spectral(&build_named(GateSpec::Cnot).unwrap(), &TOL).unwrap();
        assert_eq!((cnot.dim_ker_wn, cnot.eta), (2, 4));
        let s = eta_spectral_canonical(CanonicalParams::new(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4), &TOL);
        assert_eq!((s.dim_ker_wn, s.eta), (3, 3));
        let s = eta_spectral(&build_named(GateSpec::SqrtSwap).unwrap(), &TOL).unwrap();
        assert_eq!(s.eta, 3);
    }

    #[test]
    fn table_lookup() {
        assert_eq!(eta_table(WeylRegion::EdgeOA1), 4);
        assert_eq!(eta_table(WeylRegion::FaceOA2A3), 5);
        assert_eq!(eta_table(WeylRegion::Generic), 6);
        assert_eq!(eta_table(WeylRegion::VertexSwap), 0);
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(gate_count_lower_bound(2, 4), Ok(3));
        assert_eq!(gate_count_lower_bound(2, 6), Ok(2));
        assert_eq!(gate_count_lower_bound(3, 6), Ok(9));
        assert_eq!(gate_count_lower_bound(2, 0), Err(Error::UnboundedGate));
        assert!(gate_count_lower_bound(1, 3).is_err());
        assert!(gate_count_lower_bound(2, 7).is_err());
    }

    #[test]
    fn single_qubit_gates_bind_nothing() {
        let g = crate::gates::random_su_seeded(2, 4);
        let r = eta_numeric(&g, &TOL).unwrap();
        assert_eq!((r.eta, r.dim_ker_wn), (0, 3));
    }

    #[test]
    fn three_qubit_eta_is_bounded() {
        let g = crate::gates::random_su_seeded(8, 1);
        let r = eta_numeric(&g, &TOL).unwrap();
        assert_eq!(r.eta, 9);
        let id = GateMatrix::new(ComplexMatrix::identity(8), &TOL).unwrap();
        assert_eq!(eta_numeric(&id, &TOL).unwrap().eta, 0);
    }

    #[test]
    fn w_blocks_match_closed_form_at_a_point() {
        let p = CanonicalParams::new(1.1, 0.7, 0.3);
        let basis = generator_basis(2).unwrap();
        let w = w_matrix(&canonical_gate(p), &basis).unwrap();
        // Rows of N^i as (first, second) nonlocal generators.
        let n_rows = [("ZY", "YZ"), ("ZX", "XZ"), ("YX", "XY")];
        for (i, (r1, r2)) in n_rows.into_iter().enumerate() {
            let l = l_block(p, i);
            let n = n_block(p, i);
            let (r1, r2) = (basis.nonlocal_index(r1).unwrap(), basis.nonlocal_index(r2).unwrap());
            for (a, col) in [i, i + 3].into_iter().enumerate() {
                assert!((w.local[(i, col)] - l[0][a]).abs() < 1e-12);
                assert!((w.local[(i + 3, col)] - l[1][a]).abs() < 1e-12);
                assert!((w.nonlocal[(r1, col)] - n[0][a]).abs() < 1e-12, "N{i} row 1");
                assert!((w.nonlocal[(r2, col)] - n[1][a]).abs() < 1e-12, "N{i} row 2");
            }
        }
    }
}
