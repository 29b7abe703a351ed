//! Hole states of a GaAs/AlGaAs quantum well by finite differences.
//!
//! The growth axis is z. The 6-band valence Hamiltonian is discretized on a
//! uniform grid with `k_z → -i d/dz`, using symmetrized stencils so that the
//! position-dependent Luttinger parameters keep the matrix Hermitian:
//!
//! ```text
//! k_z A k_z  →  -(A_{i+1/2}(ψ_{i+1} - ψ_i) - A_{i-1/2}(ψ_i - ψ_{i-1})) / h²
//! (A k_z + k_z A)/2  →  -i((A_i + A_{i+1}) ψ_{i+1} - (A_i + A_{i-1}) ψ_{i-1}) / 4h
//! ```
//!
//! with `A_{i±1/2}` the arithmetic mean of neighbouring nodes. The wave
//! function vanishes one spacing beyond the outermost nodes. Strain is
//! uniform through the stack.

mod geometry;
mod hamiltonian;
mod transition;

pub use geometry::{QwGeometry, MIN_GRID_POINTS};
pub use hamiltonian::{build_qw_hamiltonian, build_qw_hamiltonian_at, QwMaterials, QwProfile};
pub use transition::{
    transition_energy, transition_sweep, EmulationOffsets, TransitionModel, TransitionRow,
};

use nalgebra::DVector;
use rayon::prelude::*;

use crate::axis::{project_vectors, ProjectionResult, QuantizationAxis};
use crate::elasticity::{superpose, uniaxial_strain, StrainState};
use crate::kp::{eigensolve, CVector8};
use crate::{Error, Result, C64};

/// Valence bands per grid node.
pub const BANDS: usize = 6;

/// Largest HGS energy change under grid refinement that counts as converged, in eV.
pub const CONVERGENCE_TOL: f64 = 1e-4;

/// Largest splitting accepted within a Kramers doublet, in eV.
pub const KRAMERS_TOL: f64 = 1e-8;

/// One quantum-well eigenstate. Coefficient `6i + b` is band `b` (ordered
/// HH+, LH+, LH-, HH-, SO+, SO-) at node `i`; the vector has unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeState {
    pub energy: f64,
    pub coefficients: DVector<C64>,
}

impl EnvelopeState {
    pub fn grid_points(&self) -> usize {
        self.coefficients.len() / BANDS
    }

    /// Bloch-basis content at node `i` (conduction entries zero).
    pub fn bloch_vector(&self, i: usize) -> CVector8 {
        let mut v = CVector8::zeros();
        for b in 0..BANDS {
            v[2 + b] = self.coefficients[BANDS * i + b];
        }
        v
    }

    /// Summed |coefficient|² per band.
    pub fn band_weights(&self) -> [f64; BANDS] {
        let mut w = [0.0; BANDS];
        for (k, c) in self.coefficients.iter().enumerate() {
            w[k % BANDS] += c.norm_sqr();
        }
        w
    }

    /// Probability at each node, summed over bands.
    pub fn density(&self) -> Vec<f64> {
        self.coefficients
            .as_slice()
            .chunks(BANDS)
            .map(|c| c.iter().map(|z| z.norm_sqr()).sum())
            .collect()
    }
}

/// The topmost states of one quantum-well solve.
#[derive(Debug, Clone)]
pub struct QwSolution {
    pub geometry: QwGeometry,
    /// Energies descending.
    pub states: Vec<EnvelopeState>,
}

impl QwSolution {
    pub fn hgs_doublet(&self) -> [&EnvelopeState; 2] {
        [&self.states[0], &self.states[1]]
    }

    pub fn hgs_energy(&self) -> f64 {
        self.states[0].energy
    }

    /// Splitting within the hole ground-state doublet.
    pub fn kramers_splitting(&self) -> f64 {
        (self.states[0].energy - self.states[1].energy).abs()
    }

    /// Doublet-averaged HH/LH/SO content along `axis`: the Bloch part at each
    /// node is projected coherently, nodes and the two states add up.
    pub fn hgs_projection(&self, axis: &QuantizationAxis) -> ProjectionResult {
        let vectors: Vec<CVector8> = self
            .hgs_doublet()
            .iter()
            .flat_map(|s| (0..s.grid_points()).map(|i| s.bloch_vector(i)))
            .collect();
        project_vectors(&vectors, axis)
    }

    /// Fraction of the HGS density within `margin_nm` of the well.
    pub fn hgs_localization(&self, margin_nm: f64) -> f64 {
        let density = self.states[0].density();
        let inside: f64 = density
            .iter()
            .enumerate()
            .filter(|(i, _)| self.geometry.near_well(*i, margin_nm))
            .map(|(_, d)| d)
            .sum();
        inside / density.iter().sum::<f64>()
    }
}

/// The `n_states` highest hole states at k∥ = 0.
pub fn solve_qw(geometry: &QwGeometry, strain: &StrainState, materials: &QwMaterials, n_states: usize) -> Result<QwSolution> {
    let h = build_qw_hamiltonian(geometry, strain, materials)?;
    let pairs = eigensolve(&h)?;
    let keep = n_states.max(2).min(pairs.len());
    let states = (0..keep)
        .map(|k| EnvelopeState {
            energy: pairs.values[k],
            coefficients: pairs.vectors.column(k).into_owned(),
        })
        .collect();
    Ok(QwSolution {
        geometry: *geometry,
        states,
    })
}

/// |E_HGS(N) - E_HGS(2N + 1)|.
pub fn hgs_refinement_change(geometry: &QwGeometry, strain: &StrainState, materials: &QwMaterials) -> Result<f64> {
    let coarse = solve_qw(geometry, strain, materials, 2)?.hgs_energy();
    let fine = solve_qw(&geometry.refined(), strain, materials, 2)?.hgs_energy();
    Ok((coarse - fine).abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct QwMixingRow {
    pub stress_gpa: f64,
    pub strain_xx: f64,
    pub hgs_energy: f64,
    /// One projection per requested axis, in the order given.
    pub projections: Vec<ProjectionResult>,
    /// The thickness passed the grid-refinement check and this row's
    /// doublet is degenerate within [`KRAMERS_TOL`].
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QwMixingCurve {
    pub well_nm: f64,
    /// Largest refinement change seen at the sweep endpoints.
    pub refinement_change: f64,
    pub rows: Vec<QwMixingRow>,
}

/// HGS mixing along each of `axes` for every well thickness and uniaxial stress.
///
/// `template` supplies barrier width, composition and grid; its well width
/// is replaced by each entry of `thicknesses_nm`. Grid convergence is checked
/// by refinement at the two ends of the sweep for every thickness.
pub fn qw_mixing_vs_strain(
    thicknesses_nm: &[f64],
    template: &QwGeometry,
    stresses_gpa: &[f64],
    prestress: &StrainState,
    axes: &[QuantizationAxis],
    materials: &QwMaterials,
) -> Result<Vec<QwMixingCurve>> {
    if stresses_gpa.is_empty() {
        return Err(Error::InvalidInput("empty stress sweep".into()));
    }
    let elastic = materials.well.elastic();
    let strain_at = |s: f64| -> Result<StrainState> { superpose(prestress, &uniaxial_strain(s, &elastic)?) };
    thicknesses_nm
        .iter()
        .map(|&well| {
            let g = QwGeometry::new(well, template.barrier_nm(), template.al_fraction(), template.grid_points())?;
            let ends = [stresses_gpa[0], stresses_gpa[stresses_gpa.len() - 1]];
            let refinement_change = ends
                .par_iter()
                .map(|&s| hgs_refinement_change(&g, &strain_at(s)?, materials))
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            let grid_ok = refinement_change < CONVERGENCE_TOL;
            let rows = stresses_gpa
                .par_iter()
                .map(|&s| {
                    let strain = strain_at(s)?;
                    let sol = solve_qw(&g, &strain, materials, 2)?;
                    Ok(QwMixingRow {
                        stress_gpa: s,
                        strain_xx: strain.xx(),
                        hgs_energy: sol.hgs_energy(),
                        projections: axes.iter().map(|a| sol.hgs_projection(a)).collect(),
                        converged: grid_ok && sol.kramers_splitting() < KRAMERS_TOL,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(QwMixingCurve {
                well_nm: well,
                refinement_change,
                rows,
            })
        })
        .collect()
}
