use rayon::prelude::*;

use super::{solve_qw, QwGeometry, QwMaterials};
use crate::elasticity::{superpose, uniaxial_strain, StrainState};
use crate::kp::{build_h8_shifted, BulkSpectrum, DiagonalShifts, Wavevector};
use crate::materials::MaterialParams;
use crate::Result;

/// Rigid offsets that mimic quantum-well confinement in the bulk model.
///
/// `cb_shift` raises the conduction band; `hh_shift` and `lh_shift` push the
/// HH and LH diagonal entries away from the gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmulationOffsets {
    pub cb_shift: f64,
    pub hh_shift: f64,
    pub lh_shift: f64,
}

impl Default for EmulationOffsets {
    /// Electron confinement of an 8 nm well and the matching hole offsets.
    fn default() -> Self {
        Self {
            cb_shift: 0.0528,
            hh_shift: 0.0091,
            lh_shift: 0.010,
        }
    }
}

impl From<EmulationOffsets> for DiagonalShifts {
    fn from(o: EmulationOffsets) -> Self {
        DiagonalShifts {
            cb: o.cb_shift,
            hh: o.hh_shift,
            lh: o.lh_shift,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransitionModel {
    /// Bulk Hamiltonian with rigid diagonal offsets.
    Emulated(EmulationOffsets),
    /// Finite-difference quantum well; the conduction edge is the strained
    /// bulk edge of the well material.
    QuantumWell(QwGeometry),
}

fn emulated(strain: &StrainState, well: &MaterialParams, offsets: &EmulationOffsets) -> Result<f64> {
    let h = build_h8_shifted(&Wavevector::gamma(), strain, well, &(*offsets).into());
    Ok(BulkSpectrum::try_from(&h)?.gap())
}

/// Conduction energy minus hole ground-state energy, in eV. No excitonic
/// correction.
pub fn transition_energy(model: &TransitionModel, strain: &StrainState, materials: &QwMaterials) -> Result<f64> {
    match model {
        TransitionModel::Emulated(o) => emulated(strain, &materials.well, o),
        TransitionModel::QuantumWell(g) => {
            let w = &materials.well;
            let cb = w.vb_top() + w.band_gap + w.ac * strain.trace();
            Ok(cb - solve_qw(g, strain, materials, 2)?.hgs_energy())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionRow {
    pub stress_gpa: f64,
    pub strain_xx: f64,
    pub energy: f64,
}

/// [`transition_energy`] for each uniaxial stress superposed on `prestress`.
pub fn transition_sweep(
    model: &TransitionModel,
    stresses_gpa: &[f64],
    prestress: &StrainState,
    materials: &QwMaterials,
) -> Result<Vec<TransitionRow>> {
    stresses_gpa
        .par_iter()
        .map(|&s| {
            let strain = superpose(prestress, &uniaxial_strain(s, &materials.well.elastic())?)?;
            Ok(TransitionRow {
                stress_gpa: s,
                strain_xx: strain.xx(),
                energy: transition_energy(model, &strain, materials)?,
            })
        })
        .collect()
}
