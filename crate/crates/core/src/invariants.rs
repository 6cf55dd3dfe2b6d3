//! Magic-basis machinery and the classical local invariants of two-qubit
//! gates: the spectrum of `M(U)`, Makhlin invariants, canonical parameters,
//! Weyl-chamber reduction and region classification.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use core::fmt;

use num_traits::Euclid;
// Unused once std is in the build graph (its inherent float methods win).
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::gates::{c, pauli, GateMatrix};
use crate::numkernel::{eigenphases_unitary, special_unitarize, ComplexMatrix, TolerancePolicy};

/// Cartan coordinates `[c1, c2, c3]` in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl CanonicalParams {
    pub const fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|x| x.is_finite())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array().iter().zip(other.as_array()).fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }

    /// The four eigenphases of `M(U)` for a gate with these coordinates.
    pub fn m_phases(&self) -> [f64; 4] {
        let Self { c1, c2, c3 } = *self;
        [c1 + c2 - c3, c1 - c2 + c3, -c1 + c2 + c3, -(c1 + c2 + c3)]
    }

    /// Chamber membership: `pi >= c1 >= c2 >= c3 >= 0`, `pi - c1 >= c2`, and
    /// on the base `c3 = 0` only the half `c1 <= pi/2`.
    pub fn is_reduced(&self, eps: f64) -> bool {
        let Self { c1, c2, c3 } = *self;
        c1 <= PI + eps
            && c2 <= c1 + eps
            && c3 <= c2 + eps
            && c3 >= -eps
            && c2 <= PI - c1 + eps
            && (c3 > eps || c1 <= FRAC_PI_2 + eps)
    }
}

/// `(g1, g2, g3) = (Re G1, Im G1, G2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MakhlinInvariants {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
}

impl MakhlinInvariants {
    pub fn as_array(&self) -> [f64; 3] {
        [self.g1, self.g2, self.g3]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array().iter().zip(other.as_array()).fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }
}

/// Stratum of the Weyl chamber a reduced point lies on.
///
/// Vertices: `O = [0,0,0]` (identified with `A1 = [pi,0,0]`),
/// `A2 = [pi/2,pi/2,0]`, `A3 = [pi/2,pi/2,pi/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeylRegion {
    /// `O` / `A1`: the identity class.
    VertexIdentity,
    /// `A3`: the SWAP class.
    VertexSwap,
    /// `[x, x, x]`.
    EdgeOA3,
    /// `[pi - x, x, x]`.
    EdgeA1A3,
    /// `[x, 0, 0]`; contains CNOT at `x = pi/2`.
    EdgeOA1,
    /// `[pi/2, pi/2, x]`; contains DCNOT at `x = 0`.
    EdgeA2A3,
    /// Plane `c2 = c3`.
    FaceOA1A3,
    /// Plane `c1 = c2`.
    FaceOA2A3,
    /// Plane `c1 + c2 = pi`.
    FaceA1A2A3,
    Generic,
}

impl WeylRegion {
    pub const ALL: [WeylRegion; 10] = [
        WeylRegion::VertexIdentity,
        WeylRegion::VertexSwap,
        WeylRegion::EdgeOA3,
        WeylRegion::EdgeA1A3,
        WeylRegion::EdgeOA1,
        WeylRegion::EdgeA2A3,
        WeylRegion::FaceOA1A3,
        WeylRegion::FaceOA2A3,
        WeylRegion::FaceA1A2A3,
        WeylRegion::Generic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            WeylRegion::VertexIdentity => "VertexIdentity",
            WeylRegion::VertexSwap => "VertexSwap",
            WeylRegion::EdgeOA3 => "EdgeOA3",
            WeylRegion::EdgeA1A3 => "EdgeA1A3",
            WeylRegion::EdgeOA1 => "EdgeOA1",
            WeylRegion::EdgeA2A3 => "EdgeA2A3",
            WeylRegion::FaceOA1A3 => "FaceOA1A3",
            WeylRegion::FaceOA2A3 => "FaceOA2A3",
            WeylRegion::FaceA1A2A3 => "FaceA1A2A3",
            WeylRegion::Generic => "Generic",
        }
    }
}

impl fmt::Display for WeylRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One grid point of the chamber boundary in Makhlin coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample {
    pub s: f64,
    pub t: f64,
    pub g: MakhlinInvariants,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `Q U Q^dag`
    Forward,
    /// `Q^dag U Q`
    Inverse,
}

/// The magic-basis change `Q`.
pub fn magic_matrix() -> ComplexMatrix {
    let r = FRAC_1_SQRT_2;
    let (o, l, i) = (c(0.0, 0.0), c(r, 0.0), c(0.0, r));
    ComplexMatrix::from_rows([[l, o, o, l], [o, -i, -i, o], [o, l, -l, o], [-i, o, o, i]])
}

fn require_two_qubits(u: &GateMatrix) -> Result<()> {
    if u.n() == 2 {
        Ok(())
    } else {
        Err(Error::BadDim { expected: 4, found: u.matrix().dim() })
    }
}

pub fn magic_transform(u: &GateMatrix, direction: Direction) -> Result<ComplexMatrix> {
    require_two_qubits(u)?;
    let q = magic_matrix();
    Ok(match direction {
        Direction::Forward => &(&q * u.matrix()) * &q.adjoint(),
        Direction::Inverse => &(&q.adjoint() * u.matrix()) * &q,
    })
}

/// `M(U) = U_B^T U_B`.
pub fn m_matrix(u: &GateMatrix) -> Result<ComplexMatrix> {
    let ub = magic_transform(u, Direction::Forward)?;
    Ok(&ub.transpose() * &ub)
}

/// Eigenphases of `U (Y⊗Y) U^T (Y⊗Y)`, ascending.
pub fn gamma2_spectrum(u: &GateMatrix, tol: &TolerancePolicy) -> Result<Vec<f64>> {
    require_two_qubits(u)?;
    let yy = pauli(2).kron(&pauli(2));
    let m = u.matrix();
    let gamma = &(&(m * &yy) * &m.transpose()) * &yy;
    eigenphases_unitary(&gamma, tol)
}

/// `G1 = tr^2 M / (16 det U)`, `G2 = (tr^2 M - tr M^2) / (4 det U)`.
pub fn makhlin_from_gate(u: &GateMatrix) -> Result<MakhlinInvariants> {
    let m = m_matrix(u)?;
    let det = u.matrix().det();
    let tr = m.trace();
    let tr2 = tr * tr;
    let g1 = tr2 / (det * 16.0);
    let g2 = (tr2 - m.trace_of_product(&m)) / (det * 4.0);
    if g2.im.abs() > 1e-6 {
        return Err(Error::ImaginaryG2 { im: g2.im });
    }
    Ok(MakhlinInvariants { g1: g1.re, g2: g1.im, g3: g2.re })
}

pub fn makhlin_from_canonical(p: CanonicalParams) -> MakhlinInvariants {
    let CanonicalParams { c1, c2, c3 } = p;
    let (cc, ss) =
        ((c1.cos() * c2.cos() * c3.cos()).powi(2), (c1.sin() * c2.sin() * c3.sin()).powi(2));
    MakhlinInvariants {
        g1: cc - ss,
        g2: 0.25 * (2.0 * c1).sin() * (2.0 * c2).sin() * (2.0 * c3).sin(),
        g3: 4.0 * cc - 4.0 * ss - (2.0 * c1).cos() * (2.0 * c2).cos() * (2.0 * c3).cos(),
    }
}

/// Reduced canonical parameters of a two-qubit gate.
///
/// Candidate triples are read off every assignment of the eigenphases of
/// `M(U)` to the slots `c1+c2-c3, c1-c2+c3, -c1+c2+c3`, with and without
/// the `pi` shift that a different fourth root of `det U` would cause. Each
/// is Weyl-reduced, and the one whose Makhlin invariants best match those
/// computed from the gate directly is returned.
pub fn canonical_from_gate(u: &GateMatrix, tol: &TolerancePolicy) -> Result<CanonicalParams> {
    require_two_qubits(u)?;
    let target = makhlin_from_gate(u)?;
    let (su, _) = special_unitarize(u.matrix(), tol)?;
    let su = GateMatrix::new(su, &TolerancePolicy { eps_unitary: f64::INFINITY, ..*tol })?;
    let phases = eigenphases_unitary(&m_matrix(&su)?, tol)?;

    let mut best: Option<(f64, CanonicalParams)> = None;
    for shift in [0.0, PI] {
        let th: Vec<f64> = phases.iter().map(|p| p + shift).collect();
        for a in 0..4 {
            for b in (0..4).filter(|&b| b != a) {
                for cc in (0..4).filter(|&x| x != a && x != b) {
                    let cand = CanonicalParams::new(
                        (th[a] + th[b]) / 2.0,
                        (th[a] + th[cc]) / 2.0,
                        (th[b] + th[cc]) / 2.0,
                    );
                    let Ok(reduced) = weyl_reduce(cand, tol) else {
                        continue;
                    };
                    let residual = makhlin_from_canonical(reduced).max_abs_diff(&target);
                    if best.is_none_or(|(r, _)| residual < r) {
                        best = Some((residual, reduced));
                    }
                }
            }
        }
    }
    match best {
        Some((r, p)) if r <= tol.eps_match => Ok(p),
        Some((residual, _)) => Err(Error::NoConsistentAssignment { residual }),
        None => Err(Error::NoConsistentAssignment { residual: f64::INFINITY }),
    }
}

const MAX_REDUCTION_STEPS: usize = 16;

/// Maps any triple into the Weyl chamber using only moves that preserve the
/// local class: `pi` shifts of a single coordinate, permutations, and the
/// paired flip `(c1, c2) -> (pi - c1, pi - c2)`. On the base `c3 = 0` the
/// half `c1 > pi/2` is reflected by `c1 -> pi - c1`.
pub fn weyl_reduce(p: CanonicalParams, tol: &TolerancePolicy) -> Result<CanonicalParams> {
    if !p.is_finite() {
        return Err(Error::ReductionDiverged);
    }
    let eps = tol.eps_match;
    let mut v = p.as_array();
    let sort_desc = |v: &mut [f64; 3]| v.sort_by(|a, b| b.total_cmp(a));

    let mut settled = false;
    for _ in 0..MAX_REDUCTION_STEPS {
        for x in v.iter_mut() {
            *x = Euclid::rem_euclid(x, &PI);
        }
        sort_desc(&mut v);
        if v[0] + v[1] > PI + eps {
            v[0] = PI - v[0];
            v[1] = PI - v[1];
            sort_desc(&mut v);
        } else {
            settled = true;
            break;
        }
    }
    if !settled {
        return Err(Error::ReductionDiverged);
    }
    if v[2] <= eps && v[0] > FRAC_PI_2 + eps {
        v[0] = PI - v[0];
        sort_desc(&mut v);
    }
    Ok(CanonicalParams::new(v[0], v[1], v[2]))
}

pub fn classify_region(p: CanonicalParams, tol: &TolerancePolicy) -> Result<WeylRegion> {
    let eps = tol.eps_match;
    if !p.is_reduced(eps) {
        return Err(Error::NotReduced);
    }
    let eq = |a: f64, b: f64| (a - b).abs() <= eps;
    let CanonicalParams { c1: x, c2: y, c3: z } = p;
    let h = FRAC_PI_2;

    let region = if eq(x, 0.0) && eq(y, 0.0) && eq(z, 0.0) {
        WeylRegion::VertexIdentity
    } else if eq(x, h) && eq(y, h) && eq(z, h) {
        WeylRegion::VertexSwap
    } else if eq(x, y) && eq(y, z) {
        WeylRegion::EdgeOA3
    } else if eq(x + y, PI) && eq(y, z) {
        WeylRegion::EdgeA1A3
    } else if eq(y, 0.0) && eq(z, 0.0) {
        WeylRegion::EdgeOA1
    } else if eq(x, h) && eq(y, h) {
        WeylRegion::EdgeA2A3
    } else if eq(y, z) {
        WeylRegion::FaceOA1A3
    } else if eq(x, y) {
        WeylRegion::FaceOA2A3
    } else if eq(x + y, PI) {
        WeylRegion::FaceA1A2A3
    } else {
        WeylRegion::Generic
    };
    Ok(region)
}

/// Outcome of a local-equivalence test, with the invariants that decided it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub makhlin: (MakhlinInvariants, MakhlinInvariants),
    pub canonical: (CanonicalParams, CanonicalParams),
}

/// `U ~ V` iff their Makhlin triples agree within `eps`.
pub fn locally_equivalent(
    u: &GateMatrix,
    v: &GateMatrix,
    eps: f64,
    tol: &TolerancePolicy,
) -> Result<Equivalence> {
    let (gu, gv) = (makhlin_from_gate(u)?, makhlin_from_gate(v)?);
    let (cu, cv) = (canonical_from_gate(u, tol)?, canonical_from_gate(v, tol)?);
    Ok(Equivalence {
        equivalent: gu.max_abs_diff(&gv) <= eps,
        makhlin: (gu, gv),
        canonical: (cu, cv),
    })
}

/// The chamber boundary in Makhlin coordinates on a uniform `(s, t)` grid,
/// `s` in `[0, pi]`, `t` in `[0, pi/2]`, ordered by `t` first, then `s`.
pub fn weyl_surface_samples(ns: usize, nt: usize) -> Result<Vec<SurfaceSample>> {
    if ns < 2 || nt < 2 {
        return Err(Error::BadGrid);
    }
    let mut out = Vec::with_capacity(ns * nt);
    for j in 0..nt {
        let t = FRAC_PI_2 * j as f64 / (nt - 1) as f64;
        for i in 0..ns {
            let s = PI * i as f64 / (ns - 1) as f64;
            out.push(SurfaceSample { s, t, g: surface_point(s, t) });
        }
    }
    Ok(out)
}

fn surface_point(s: f64, t: f64) -> MakhlinInvariants {
    let (cs, ss) = (s.cos(), s.sin());
    let (ct, st) = (t.cos(), t.sin());
    let g1 = cs * cs * ct.powi(4) - ss * ss * st.powi(4);
    let g2 = 0.25 * (2.0 * s).sin() * (2.0 * t).sin().powi(2);
    let g3 = 4.0 * g1 - (2.0 * s).cos() * (2.0 * t).cos().powi(2);
    MakhlinInvariants { g1, g2, g3 }
}
