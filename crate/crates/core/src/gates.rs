//! Gate catalog, canonical-form gates, local gates and Haar sampling.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
// Unused once std is in the build graph (its inherent float methods win).
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::invariants::CanonicalParams;
use crate::numkernel::{expm_antihermitian, ComplexMatrix, TolerancePolicy};

/// A unitary on `n` qubits. Qubit 1 is the most significant bit of the
/// basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct GateMatrix {
    n: usize,
    matrix: ComplexMatrix,
    label: Option<String>,
}

impl GateMatrix {
    /// Wraps a matrix after checking its size (2, 4 or 8) and unitarity.
    pub fn new(matrix: ComplexMatrix, tol: &TolerancePolicy) -> Result<Self> {
        let n = qubits_for_dim(matrix.dim())?;
        let deviation = matrix.unitarity_deviation();
        if deviation > tol.eps_unitary {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { n, matrix, label: None })
    }

    fn trusted(matrix: ComplexMatrix, label: &str) -> Self {
        let n = matrix.dim().trailing_zeros() as usize;
        Self { n, matrix, label: Some(label.into()) }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Equality up to a global phase.
    pub fn equal_up_to_phase(&self, other: &Self, eps: f64) -> bool {
        self.n == other.n && self.matrix.phase_distance(&other.matrix) <= eps
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn then_after(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "qubit count mismatch");
        Self { n: self.n, matrix: &self.matrix * &rhs.matrix, label: None }
    }

    pub fn adjoint(&self) -> Self {
        Self { n: self.n, matrix: self.matrix.adjoint(), label: None }
    }
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    match dim {
        2 => Ok(1),
        4 => Ok(2),
        8 => Ok(3),
        found => Err(Error::BadDim { expected: 4, found }),
    }
}

/// Named gates; parametric entries carry their canonical parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateSpec {
    Identity,
    Swap,
    Cnot,
    Dcnot,
    SqrtSwap,
    InvSqrtSwap,
    B,
    /// Controlled-U family with canonical point `[alpha, 0, 0]`.
    ControlledU {
        alpha: f64,
    },
    /// Special perfect entangler family `[pi/2, alpha, 0]`.
    Spe {
        alpha: f64,
    },
    Canonical(CanonicalParams),
}

impl GateSpec {
    pub fn name(&self) -> &'static str {
        match self {
            GateSpec::Identity => "identity",
            GateSpec::Swap => "swap",
            GateSpec::Cnot => "cnot",
            GateSpec::Dcnot => "dcnot",
            GateSpec::SqrtSwap => "sqrtswap",
            GateSpec::InvSqrtSwap => "invsqrtswap",
            GateSpec::B => "b",
            GateSpec::ControlledU { .. } => "cu",
            GateSpec::Spe { .. } => "spe",
            GateSpec::Canonical(_) => "canonical",
        }
    }
}

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Pauli matrix by index: 0 = I, 1 = X, 2 = Y, 3 = Z.
pub fn pauli(index: usize) -> ComplexMatrix {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match index {
        0 => ComplexMatrix::identity(2),
        1 => ComplexMatrix::from_rows([[o, l], [l, o]]),
        2 => ComplexMatrix::from_rows([[o, -i], [i, o]]),
        3 => ComplexMatrix::from_rows([[l, o], [o, -l]]),
        _ => panic!("pauli index {index} out of range"),
    }
}

fn swap_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

fn cnot_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ])
}

fn reversed_cnot_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
    ])
}

/// Square root of SWAP with eigenvalue `-i` on the singlet, the root that
/// sits at `[pi/4, pi/4, pi/4]`. Its adjoint is the principal root.
fn sqrt_swap_matrix() -> ComplexMatrix {
    let p = c(0.5, -0.5);
    let m = c(0.5, 0.5);
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    ComplexMatrix::from_rows([[l, o, o, o], [o, p, m, o], [o, m, p, o], [o, o, o, l]])
}

pub fn build_named(spec: GateSpec) -> Result<GateMatrix> {
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};
    let canonical = |c1: f64, c2: f64, c3: f64| {
        let p = CanonicalParams::new(c1, c2, c3);
        if p.is_finite() {
            Ok(canonical_gate(p))
        } else {
            Err(Error::BadSpec("canonical parameters must be finite"))
        }
    };
    let gate = match spec {
        GateSpec::Identity => GateMatrix::trusted(ComplexMatrix::identity(4), "identity"),
        GateSpec::Swap => GateMatrix::trusted(swap_matrix(), "swap"),
        GateSpec::Cnot => GateMatrix::trusted(cnot_matrix(), "cnot"),
        GateSpec::Dcnot => GateMatrix::trusted(&reversed_cnot_matrix() * &cnot_matrix(), "dcnot"),
        GateSpec::SqrtSwap => GateMatrix::trusted(sqrt_swap_matrix(), "sqrtswap"),
        GateSpec::InvSqrtSwap => GateMatrix::trusted(sqrt_swap_matrix().adjoint(), "invsqrtswap"),
        GateSpec::B => canonical(FRAC_PI_2, FRAC_PI_4, 0.0)?,
        GateSpec::ControlledU { alpha } => canonical(alpha, 0.0, 0.0)?,
        GateSpec::Spe { alpha } => canonical(FRAC_PI_2, alpha, 0.0)?,
        GateSpec::Canonical(p) => canonical(p.c1, p.c2, p.c3)?,
    };
    Ok(match gate.label {
        Some(_) => gate,
        None => gate.with_label(spec.name()),
    })
}

/// `exp(i/2 (c1 XX + c2 YY + c3 ZZ))`.
pub fn canonical_gate(p: CanonicalParams) -> GateMatrix {
    let mut h = ComplexMatrix::zeros(4);
    for (axis, coef) in [(1, p.c1), (2, p.c2), (3, p.c3)] {
        let term = pauli(axis).kron(&pauli(axis)).scale(c(0.0, coef / 2.0));
        h = &h + &term;
    }
    // The generator is antihermitian by construction, so the check cannot fail
    // for finite input; a relaxed policy keeps NaN input from erroring here.
    let tol = TolerancePolicy { eps_unitary: f64::INFINITY, ..TolerancePolicy::DEFAULT };
    let matrix = expm_antihermitian(&h, &tol).unwrap_or_else(|_| ComplexMatrix::identity(4));
    GateMatrix { n: 2, matrix, label: None }
}

/// Tensor product of single-qubit special unitaries, qubit 1 first.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalGate {
    factors: Vec<ComplexMatrix>,
}

impl LocalGate {
    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[ComplexMatrix] {
        &self.factors
    }

    pub fn gate(&self) -> GateMatrix {
        let matrix =
            self.factors.iter().skip(1).fold(self.factors[0].clone(), |acc, f| acc.kron(f));
        GateMatrix { n: self.factors.len(), matrix, label: Some("local".into()) }
    }
}

pub fn tensor_local(factors: Vec<ComplexMatrix>, tol: &TolerancePolicy) -> Result<LocalGate> {
    if factors.is_empty() || factors.len() > 3 {
        return Err(Error::BadDim { expected: 2, found: factors.len() });
    }
    for (index, f) in factors.iter().enumerate() {
        let special = f.dim() == 2
            && f.unitarity_deviation() <= tol.eps_unitary
            && (f.det() - c(1.0, 0.0)).norm() <= tol.eps_unitary;
        if !special {
            return Err(Error::BadFactor { index });
        }
    }
    Ok(LocalGate { factors })
}

/// Haar-random element of `SU(dim)`.
///
/// Gram-Schmidt on a complex Ginibre matrix yields `R` with positive real
/// diagonal, which is exactly the phase-corrected QR that gives Haar
/// measure on `U(dim)`; the determinant phase is then divided out.
pub fn random_su<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> GateMatrix {
    let gauss = |rng: &mut R| c(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let mut cols: Vec<Vec<Complex64>> =
        (0..dim).map(|_| (0..dim).map(|_| gauss(rng)).collect()).collect();
    for j in 0..dim {
        // Two passes of modified Gram-Schmidt keep orthogonality at rounding level.
        for _ in 0..2 {
            for k in 0..j {
                let proj: Complex64 = cols[k].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
                let (done, rest) = cols.split_at_mut(j);
                for (x, q) in rest[0].iter_mut().zip(&done[k]) {
                    *x -= proj * q;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    let mut m = ComplexMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            m[(i, j)] = z;
        }
    }
    let det = m.det();
    let phase = det.im.atan2(det.re) / dim as f64;
    let n = dim.trailing_zeros() as usize;
    GateMatrix {
        n,
        matrix: m.scale(Complex64::from_polar(1.0, -phase)),
        label: Some("haar".into()),
    }
}

/// [`random_su`] driven by a ChaCha8 generator seeded with `seed`.
pub fn random_su_seeded(dim: usize, seed: u64) -> GateMatrix {
    random_su(dim, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Haar-random element of `SU(2)`: a uniformly random unit quaternion.
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let mut x: [f64; 4] = core::array::from_fn(|_| rng.sample(StandardNormal));
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
    let a = c(x[0], x[1]);
    let b = c(x[2], x[3]);
    ComplexMatrix::from_rows([[a, -b.conj()], [b, a.conj()]])
}

/// `n` independent Haar `SU(2)` factors.
pub fn random_local<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LocalGate {
    LocalGate { factors: (0..n).map(|_| random_su2(rng)).collect() }
}

pub fn random_local_seeded(n: usize, seed: u64) -> LocalGate {
    random_local(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::makhlin_from_gate;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    const TOL: TolerancePolicy = TolerancePolicy::DEFAULT;

    fn basis_index(a: usize, b: usize) -> usize {
        2 * a + b
    }

    #[test]
    fn cnot_swaps_10_and_11() {
        let g = build_named(GateSpec::Cnot).unwrap();
        let m = g.matrix();
        assert_eq!(m[(3, 2)], c(1.0, 0.0));
        assert_eq!(m[(2, 3)], c(1.0, 0.0));
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        assert_eq!(m[(1, 1)], c(1.0, 0.0));
    }

    #[test]
    fn dcnot_maps_ab_to_b_axorb() {
        let m = build_named(GateSpec::Dcnot).unwrap().into_matrix();
        for a in 0..2 {
            for b in 0..2 {
                let src = basis_index(a, b);
                let dst = basis_index(b, a ^ b);
                assert_eq!(m[(dst, src)], c(1.0, 0.0), "|{a}{b}>");
            }
        }
    }

    #[test]
    fn b_gate_is_its_canonical_point() {
        let b = build_named(GateSpec::B).unwrap();
        let direct = canonical_gate(CanonicalParams::new(FRAC_PI_2, FRAC_PI_4, 0.0));
        assert!(b.equal_up_to_phase(&direct, 1e-15));
    }

    #[test]
    fn catalog_is_unitary() {
        let specs = [
            GateSpec::Identity,
            GateSpec::Swap,
            GateSpec::Cnot,
            GateSpec::Dcnot,
            GateSpec::SqrtSwap,
            GateSpec::InvSqrtSwap,
            GateSpec::B,
            GateSpec::ControlledU { alpha: 0.4 },
            GateSpec::Spe { alpha: 1.2 },
            GateSpec::Canonical(CanonicalParams::new(1.1, 0.7, 0.3)),
        ];
        for s in specs {
            let g = build_named(s).unwrap();
            assert!(g.matrix().unitarity_deviation() <= TOL.eps_unitary, "{s:?}");
            assert_eq!(g.n(), 2);
        }
        assert_eq!(
            build_named(GateSpec::ControlledU { alpha: f64::NAN }),
            Err(Error::BadSpec("canonical parameters must be finite"))
        );
    }

    #[test]
    fn sqrt_swap_squares_to_swap() {
        let s = build_named(GateSpec::SqrtSwap).unwrap();
        let sq = s.then_after(&s);
        assert!(sq.matrix().max_abs_diff(&swap_matrix()) < 1e-15);
        let inv = build_named(GateSpec::InvSqrtSwap).unwrap();
        assert!(s.then_after(&inv).matrix().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn canonical_gate_examples() {
        let id = canonical_gate(CanonicalParams::new(0.0, 0.0, 0.0));
        assert!(id.matrix().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);

        let s = canonical_gate(CanonicalParams::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2));
        let expected = swap_matrix().scale(Complex64::from_polar(1.0, FRAC_PI_4));
        assert!(s.matrix().max_abs_diff(&expected) < 1e-14);
        assert!((s.matrix().det() - c(1.0, 0.0)).norm() < TOL.eps_match);

        let g =
            makhlin_from_gate(&canonical_gate(CanonicalParams::new(FRAC_PI_2, 0.0, 0.0))).unwrap();
        assert!(g.max_abs_diff(&crate::MakhlinInvariants { g1: 0.0, g2: 0.0, g3: 1.0 }) < 1e-14);
    }

    /// Oracle: the canonical gate is diagonal in the Bell basis with
    /// eigenvalue exp(i/2 (s_x c1 + s_y c2 + s_z c3)) on each Bell state,
    /// where s_a is the state's XX/YY/ZZ eigenvalue.
    #[test]
    fn canonical_gate_matches_bell_diagonal_form() {
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let bell: [([f64; 4], [f64; 3]); 4] = [
            ([r, 0.0, 0.0, r], [1.0, -1.0, 1.0]),
            ([r, 0.0, 0.0, -r], [-1.0, 1.0, 1.0]),
            ([0.0, r, r, 0.0], [1.0, 1.0, -1.0]),
            ([0.0, r, -r, 0.0], [-1.0, -1.0, -1.0]),
        ];
        let p = CanonicalParams::new(1.3, -0.4, 2.2);
        let mut oracle = ComplexMatrix::zeros(4);
        for (v, s) in bell {
            let e = Complex64::from_polar(1.0, 0.5 * (s[0] * p.c1 + s[1] * p.c2 + s[2] * p.c3));
            for i in 0..4 {
                for j in 0..4 {
                    oracle[(i, j)] += e * v[i] * v[j];
                }
            }
        }
        assert!(canonical_gate(p).matrix().max_abs_diff(&oracle) < 1e-14);
    }

    #[test]
    fn tensor_local_examples() {
        let l = tensor_local(alloc::vec![pauli(0), pauli(0)], &TOL).unwrap();
        assert!(l.gate().matrix().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);

        let ix = pauli(1).scale(c(0.0, 1.0));
        let l = tensor_local(alloc::vec![ix, pauli(0)], &TOL).unwrap();
        let m = l.gate().into_matrix();
        for b in 0..2 {
            assert_eq!(m[(basis_index(1, b), basis_index(0, b))], c(0.0, 1.0));
            assert_eq!(m[(basis_index(0, b), basis_index(1, b))], c(0.0, 1.0));
        }

        let err = tensor_local(alloc::vec![pauli(0), pauli(3)], &TOL).unwrap_err();
        assert_eq!(err, Error::BadFactor { index: 1 });
    }

    #[test]
    fn random_gates_are_deterministic_and_special_unitary() {
        let a = random_su_seeded(4, 17);
        let b = random_su_seeded(4, 17);
        assert_eq!(a, b);
        assert!(a.matrix().unitarity_deviation() < 1e-10);
        assert!((a.matrix().det() - c(1.0, 0.0)).norm() < 1e-12);
        assert_ne!(a, random_su_seeded(4, 18));

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let k = random_local(2, &mut rng);
            assert!((k.gate().matrix().det() - c(1.0, 0.0)).norm() < TOL.eps_match);
            assert!(tensor_local(k.factors().to_vec(), &TOL).is_ok());
        }
        assert_eq!(random_local_seeded(3, 9), random_local_seeded(3, 9));
    }

    #[test]
    fn gate_matrix_rejects_bad_input() {
        assert!(matches!(
            GateMatrix::new(ComplexMatrix::identity(3), &TOL),
            Err(Error::BadDim { found: 3, .. })
        ));
        assert!(matches!(
            GateMatrix::new(ComplexMatrix::zeros(4), &TOL),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn cartan_subgroup_is_abelian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let mut draw = || {
                CanonicalParams::new(
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                )
            };
            let (p, q) = (draw(), draw());
            let (a, b) = (canonical_gate(p), canonical_gate(q));
            let ab = a.then_after(&b);
            let ba = b.then_after(&a);
            assert!(ab.matrix().max_abs_diff(ba.matrix()) <= 1e-9);
            let inv = canonical_gate(CanonicalParams::new(-p.c1, -p.c2, -p.c3));
            let id = a.then_after(&inv);
            assert!(id.matrix().max_abs_diff(&ComplexMatrix::identity(4)) <= 1e-9);
        }
    }
}
