//! Bulk 8-band k·p model: Bloch basis, Luttinger-Kohn + Pikus-Bir
//! Hamiltonian, dense Hermitian eigensolver and band dispersion.

mod basis;
mod dispersion;
mod eigen;
mod hamiltonian;

pub use basis::{orbital_expansion, orbital_index, BlochState, Orbital, Spin, BASIS_LEN};
pub use dispersion::{dispersion, line_path, DispersionTable};
pub use eigen::{eigensolve, hermiticity_residual, Eigenpairs};
pub use hamiltonian::{
    build_h8, build_h8_shifted, h4_topmost, solve_bulk, BulkSpectrum, DiagonalShifts,
    Hamiltonian8, SpinorState, Wavevector,
};

pub(crate) use hamiltonian::{Term, VALENCE_LAYOUT};

/// 8×8 complex matrix over the Bloch basis.
pub type CMatrix8 = nalgebra::SMatrix<crate::C64, 8, 8>;
/// Coefficient vector over the Bloch basis.
pub type CVector8 = nalgebra::SVector<crate::C64, 8>;
