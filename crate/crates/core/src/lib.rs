//! Multiband k·p model of strained GaAs/AlGaAs valence bands.
//!
//! The crate covers the full chain from an applied stress configuration to
//! optical observables:
//!
//! * [`materials`]: band, deformation-potential and stiffness parameters,
//!   loaded from a TOML table and interpolated for AlGaAs alloys.
//! * [`elasticity`]: cubic Hooke's law, uniaxial/biaxial stress states and
//!   the geometric amplification of a two-finger piezo actuator.
//! * [`kp`]: the 8×8 Luttinger-Kohn + Pikus-Bir Hamiltonian at arbitrary
//!   wavevector and strain, plus the dense Hermitian eigensolver.
//! * [`axis`]: angular-momentum operators, rotated HH/LH/SO bases and the
//!   projection of the hole ground state onto an arbitrary quantization axis.
//! * [`qw`]: finite-difference hole states of a GaAs/AlGaAs quantum well.
//! * [`optics`]: Bloch-function angular densities, polarization-resolved
//!   dipole strengths, radiative rates and linear-polarization observables.
//!
//! Units: energies in eV, stresses in GPa, strains dimensionless, lengths in
//! nm and wavevectors in 1/nm unless a name says otherwise.

pub mod axis;
pub mod elasticity;
pub mod error;
pub mod kp;
pub mod materials;
pub mod optics;
pub mod qw;

pub use error::{Error, Result};

/// ħ²/2m₀ in eV·nm².
pub const HBAR2_OVER_2M0: f64 = 0.0380998;

/// Complex scalar used for all state vectors and Hamiltonians.
pub type C64 = num_complex::Complex64;
