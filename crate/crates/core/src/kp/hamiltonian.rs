//! Luttinger-Kohn + Pikus-Bir Hamiltonian in the 8-state Bloch basis.
//!
//! The valence block is stored in the electron-energy picture:
//!
//! ```text
//! H_vb = E_v·1 - M(P, Q, R, S, Δ)
//! ```
//!
//! where `M` is the 6×6 hole-picture matrix laid out in [`VALENCE_LAYOUT`]
//! and `E_v` is the unstrained HH/LH edge. The conduction doublet is
//! decoupled and sits at `E_v + E_g + ħ²k²/2m* + a_c·Tr ε`. The topmost
//! valence state is therefore the largest valence eigenvalue.

use nalgebra::{Matrix4, SMatrix};
use num_complex::Complex64;

use super::basis::BlochState;
use super::eigen::eigensolve;
use super::{orbital_expansion, CMatrix8, CVector8};
use crate::elasticity::StrainState;
use crate::materials::MaterialParams;
use crate::{Result, HBAR2_OVER_2M0};

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;
const SQRT_3_2: f64 = 1.224_744_871_391_589;
const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Wavevector in 1/nm.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Wavevector {
    pub kx: f64,
    pub ky: f64,
    pub kz: f64,
}

impl Wavevector {
    pub fn new(kx: f64, ky: f64, kz: f64) -> Self {
        Self { kx, ky, kz }
    }

    pub fn gamma() -> Self {
        Self::default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.kx * self.kx + self.ky * self.ky + self.kz * self.kz
    }
}

/// Rigid diagonal offsets used to emulate confinement in the bulk model.
///
/// `cb` raises the conduction band; `hh` and `lh` lower the electron energy
/// of the HH and LH diagonal entries.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DiagonalShifts {
    pub cb: f64,
    pub hh: f64,
    pub lh: f64,
}

/// Entries of the hole-picture valence matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Term {
    PPlusQ,
    PMinusQ,
    PPlusDelta,
    Q,
    R,
    S,
    RDag,
    SDag,
}

/// Upper triangle `(row, col, term, coefficient)` of the valence matrix `M`,
/// bands ordered HH+, LH+, LH-, HH-, SO+, SO-. The lower triangle is the
/// adjoint.
pub(crate) const VALENCE_LAYOUT: [(usize, usize, Term, f64); 18] = [
    (0, 0, Term::PPlusQ, 1.0),
    (0, 1, Term::S, -1.0),
    (0, 2, Term::R, 1.0),
    (0, 4, Term::S, -FRAC_1_SQRT_2),
    (0, 5, Term::R, SQRT_2),
    (1, 1, Term::PMinusQ, 1.0),
    (1, 3, Term::R, 1.0),
    (1, 4, Term::Q, -SQRT_2),
    (1, 5, Term::S, SQRT_3_2),
    (2, 2, Term::PMinusQ, 1.0),
    (2, 3, Term::S, 1.0),
    (2, 4, Term::SDag, SQRT_3_2),
    (2, 5, Term::Q, SQRT_2),
    (3, 3, Term::PPlusQ, 1.0),
    (3, 4, Term::RDag, -SQRT_2),
    (3, 5, Term::SDag, -FRAC_1_SQRT_2),
    (4, 4, Term::PPlusDelta, 1.0),
    (5, 5, Term::PPlusDelta, 1.0),
];

/// Scalar P, Q, R, S at one (k, ε).
struct Invariants {
    p: f64,
    q: f64,
    r: Complex64,
    s: Complex64,
}

impl Invariants {
    fn new(k: &Wavevector, e: &StrainState, m: &MaterialParams) -> Self {
        let c = HBAR2_OVER_2M0;
        let (kx, ky, kz) = (k.kx, k.ky, k.kz);
        let k2 = k.norm_sqr();
        let p = c * m.gamma1 * k2 - m.av * e.trace();
        let q = c * m.gamma2 * (k2 - 3.0 * kz * kz) - 0.5 * m.b * (e.xx() + e.yy() - 2.0 * e.zz());
        let r = c * SQRT_3 * Complex64::new(-m.gamma2 * (kx * kx - ky * ky), 2.0 * m.gamma3 * kx * ky)
            + Complex64::new(0.5 * SQRT_3 * m.b * (e.xx() - e.yy()), -m.d * e.xy());
        let s = c * 2.0 * SQRT_3 * m.gamma3 * Complex64::new(kx * kz, -ky * kz)
            - m.d * Complex64::new(e.xz(), -e.yz());
        Self { p, q, r, s }
    }

    fn term(&self, t: Term, delta: f64) -> Complex64 {
        match t {
            Term::PPlusQ => (self.p + self.q).into(),
            Term::PMinusQ => (self.p - self.q).into(),
            Term::PPlusDelta => (self.p + delta).into(),
            Term::Q => self.q.into(),
            Term::R => self.r,
            Term::S => self.s,
            Term::RDag => self.r.conj(),
            Term::SDag => self.s.conj(),
        }
    }
}

/// The 8×8 Hamiltonian at one wavevector and strain, in eV.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian8 {
    matrix: CMatrix8,
}

impl Hamiltonian8 {
    pub fn matrix(&self) -> &CMatrix8 {
        &self.matrix
    }

    /// max |H - H†|.
    pub fn hermiticity_residual(&self) -> f64 {
        (self.matrix - self.matrix.adjoint()).iter().fold(0.0f64, |m, z| m.max(z.norm()))
    }

    /// The 6×6 valence block (HH+, LH+, LH-, HH-, SO+, SO-).
    pub fn valence_block(&self) -> SMatrix<Complex64, 6, 6> {
        self.matrix.fixed_view::<6, 6>(2, 2).into_owned()
    }

    /// All eigenpairs, energies descending.
    pub fn eigenstates(&self) -> Result<Vec<SpinorState>> {
        let dense = nalgebra::DMatrix::from_fn(8, 8, |i, j| self.matrix[(i, j)]);
        let pairs = eigensolve(&dense)?;
        Ok(pairs
            .values
            .iter()
            .enumerate()
            .map(|(n, &energy)| SpinorState {
                coefficients: CVector8::from_fn(|i, _| pairs.vectors[(i, n)]),
                energy,
            })
            .collect())
    }
}

/// Builds the 8×8 Hamiltonian.
pub fn build_h8(k: &Wavevector, strain: &StrainState, params: &MaterialParams) -> Hamiltonian8 {
    build_h8_shifted(k, strain, params, &DiagonalShifts::default())
}

/// As [`build_h8`], with rigid confinement-emulating offsets on the diagonal.
pub fn build_h8_shifted(
    k: &Wavevector,
    strain: &StrainState,
    params: &MaterialParams,
    shifts: &DiagonalShifts,
) -> Hamiltonian8 {
    let inv = Invariants::new(k, strain, params);
    let ev = params.vb_top();
    let mut h = CMatrix8::zeros();

    let cb = ev
        + params.band_gap
        + HBAR2_OVER_2M0 * k.norm_sqr() / params.electron_mass
        + params.ac * strain.trace()
        + shifts.cb;
    h[(0, 0)] = cb.into();
    h[(1, 1)] = cb.into();

    for &(a, b, term, coef) in &VALENCE_LAYOUT {
        let m = inv.term(term, params.spin_orbit) * coef;
        h[(2 + a, 2 + b)] = -m;
        if a != b {
            h[(2 + b, 2 + a)] = -m.conj();
        }
    }
    for i in 2..8 {
        h[(i, i)] += ev;
    }
    for state in [BlochState::HhUp, BlochState::HhDown] {
        h[(state.index(), state.index())] -= shifts.hh;
    }
    for state in [BlochState::LhUp, BlochState::LhDown] {
        h[(state.index(), state.index())] -= shifts.lh;
    }
    Hamiltonian8 { matrix: h }
}

/// HH/LH block (HH+, LH+, LH-, HH-) of the full Hamiltonian.
pub fn h4_topmost(k: &Wavevector, strain: &StrainState, params: &MaterialParams) -> Matrix4<Complex64> {
    build_h8(k, strain, params).matrix.fixed_view::<4, 4>(2, 2).into_owned()
}

/// Eigenstate of the 8×8 Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorState {
    pub coefficients: CVector8,
    pub energy: f64,
}

impl SpinorState {
    /// A Bloch basis state with the given energy.
    pub fn basis(state: BlochState, energy: f64) -> Self {
        let mut coefficients = CVector8::zeros();
        coefficients[state.index()] = Complex64::new(1.0, 0.0);
        Self { coefficients, energy }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.norm_squared()
    }

    /// Weight on the two conduction-band basis states.
    pub fn cb_weight(&self) -> f64 {
        self.coefficients[0].norm_sqr() + self.coefficients[1].norm_sqr()
    }

    /// Coefficients in the orbital ⊗ spin product basis.
    pub fn orbital_spin(&self) -> CVector8 {
        orbital_expansion() * self.coefficients
    }
}

/// Eigenstates of the 8×8 Hamiltonian split into conduction and valence parts.
#[derive(Debug, Clone)]
pub struct BulkSpectrum {
    /// Conduction doublet, energies descending.
    pub conduction: [SpinorState; 2],
    /// Valence states, energies descending.
    pub valence: [SpinorState; 6],
}

impl BulkSpectrum {
    /// The topmost valence doublet (hole ground state).
    pub fn hgs_doublet(&self) -> [&SpinorState; 2] {
        [&self.valence[0], &self.valence[1]]
    }

    pub fn hgs_energy(&self) -> f64 {
        self.valence[0].energy
    }

    /// Lowest conduction energy minus the topmost valence energy.
    pub fn gap(&self) -> f64 {
        self.conduction[1].energy - self.valence[0].energy
    }
}

impl TryFrom<&Hamiltonian8> for BulkSpectrum {
    type Error = crate::Error;

    fn try_from(h: &Hamiltonian8) -> Result<Self> {
        let states = h.eigenstates()?;
        let (conduction, valence): (Vec<_>, Vec<_>) =
            states.into_iter().partition(|s| s.cb_weight() > 0.5);
        let conduction: [SpinorState; 2] = conduction.try_into().map_err(|v: Vec<_>| {
            crate::Error::Eigensolver(format!("expected 2 conduction states, found {}", v.len()))
        })?;
        let valence: [SpinorState; 6] = valence.try_into().map_err(|v: Vec<_>| {
            crate::Error::Eigensolver(format!("expected 6 valence states, found {}", v.len()))
        })?;
        Ok(Self { conduction, valence })
    }
}

/// Diagonalizes the bulk Hamiltonian at (k, ε).
pub fn solve_bulk(k: &Wavevector, strain: &StrainState, params: &MaterialParams) -> Result<BulkSpectrum> {
    BulkSpectrum::try_from(&build_h8(k, strain, params))
}
