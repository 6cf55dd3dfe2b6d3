//! Local-equivalence invariants of two-qubit gates.
//!
//! The crate computes, for a gate `U`, its Weyl-chamber canonical
//! parameters, the Makhlin invariants, the Weyl-chamber stratum it lies on,
//! and `eta`, the number of local degrees of freedom the gate binds. `eta`
//! is available by three independent routes (rank of the adjoint matrix,
//! closed-form kernel blocks, eigenvalue multiplicities of `M(U)`) plus a
//! region lookup, and gives a lower bound on the number of applications of
//! a fixed two-qubit gate needed to build a generic `n`-qubit gate.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod eta;
pub mod gates;
pub mod invariants;
pub mod numkernel;

pub use error::{Error, Result};
pub use eta::{
    eta_analytic, eta_numeric, eta_numeric_with_basis, eta_spectral, eta_spectral_canonical,
    eta_table, gate_count_lower_bound, generator_basis, w_matrix, EtaMethod, EtaReport,
    GeneratorBasis, WMatrix,
};
pub use gates::{
    build_named, canonical_gate, pauli, random_local, random_local_seeded, random_su,
    random_su_seeded, tensor_local, GateMatrix, GateSpec, LocalGate,
};
pub use invariants::{
    canonical_from_gate, classify_region, gamma2_spectrum, locally_equivalent, m_matrix,
    magic_matrix, magic_transform, makhlin_from_canonical, makhlin_from_gate, weyl_reduce,
    weyl_surface_samples, CanonicalParams, Direction, Equivalence, MakhlinInvariants,
    SurfaceSample, WeylRegion,
};
pub use numkernel::{ComplexMatrix, RealMatrix, TolerancePolicy};
