//! Mixing curves and θ-resolved mixing maps along a uniaxial stress sweep.

use rayon::prelude::*;

use super::{check_doublet, project_with_basis, rotated_basis, ProjectionResult, QuantizationAxis, DEGENERACY_TOL};
use crate::elasticity::{superpose, uniaxial_strain, StrainState};
use crate::kp::{solve_bulk, BulkSpectrum, Wavevector};
use crate::materials::MaterialParams;
use crate::Result;

/// Which xx-strain a sweep row reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Abscissa {
    /// Prestress plus uniaxial contribution.
    #[default]
    Total,
    /// Uniaxial contribution only.
    UniaxialOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingRow {
    pub stress_gpa: f64,
    pub strain_xx: f64,
    pub projection: ProjectionResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixingCurve {
    pub axis: QuantizationAxis,
    pub rows: Vec<MixingRow>,
}

/// `p_hh` on a (strain × θ) grid at fixed azimuth.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingMap {
    pub phi: f64,
    pub thetas: Vec<f64>,
    pub stresses_gpa: Vec<f64>,
    pub strains_xx: Vec<f64>,
    /// `p_hh[s][t]` for stress `s` and polar angle `t`.
    pub p_hh: Vec<Vec<f64>>,
}

impl MixingMap {
    /// `p_hh` along the sweep at polar angle index `t`.
    pub fn column(&self, t: usize) -> Vec<f64> {
        self.p_hh.iter().map(|row| row[t]).collect()
    }

    /// Per stress, the maximizing θ and the maximum `p_hh`. Ties resolve to
    /// the smallest θ.
    pub fn ridge(&self) -> Vec<(f64, f64)> {
        self.p_hh
            .iter()
            .map(|row| {
                let mut best = (self.thetas[0], row[0]);
                for (&theta, &v) in self.thetas.iter().zip(row).skip(1) {
                    if v > best.1 {
                        best = (theta, v);
                    }
                }
                best
            })
            .collect()
    }
}

/// `n` polar angles from 0 to π/2 inclusive.
pub fn theta_grid(n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n)
        .map(|i| {
            if i == n - 1 {
                std::f64::consts::FRAC_PI_2
            } else {
                std::f64::consts::FRAC_PI_2 * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

struct SweepPoint {
    stress: f64,
    strain_xx: f64,
    spectrum: BulkSpectrum,
}

fn solve_point(stress: f64, prestress: &StrainState, params: &MaterialParams, abscissa: Abscissa) -> Result<SweepPoint> {
    let uni = uniaxial_strain(stress, &params.elastic())?;
    let total = superpose(prestress, &uni)?;
    let spectrum = solve_bulk(&Wavevector::gamma(), &total, params)?;
    check_doublet(spectrum.hgs_doublet(), DEGENERACY_TOL)?;
    let strain_xx = match abscissa {
        Abscissa::Total => total.xx(),
        Abscissa::UniaxialOnly => uni.xx(),
    };
    Ok(SweepPoint {
        stress,
        strain_xx,
        spectrum,
    })
}

fn doublet_vectors(s: &BulkSpectrum) -> [&crate::kp::CVector8; 2] {
    let [a, b] = s.hgs_doublet();
    [&a.coefficients, &b.coefficients]
}

/// Projection of the bulk hole ground state onto `axis` for each uniaxial
/// stress σxx (GPa) superposed on `prestress`. Rows follow the input order.
pub fn mixing_curve(
    stresses_gpa: &[f64],
    prestress: &StrainState,
    axis: &QuantizationAxis,
    params: &MaterialParams,
    abscissa: Abscissa,
) -> Result<MixingCurve> {
    let basis = rotated_basis(axis);
    let rows = stresses_gpa
        .par_iter()
        .map(|&stress| {
            let pt = solve_point(stress, prestress, params, abscissa)?;
            Ok(MixingRow {
                stress_gpa: pt.stress,
                strain_xx: pt.strain_xx,
                projection: project_with_basis(doublet_vectors(&pt.spectrum), &basis),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MixingCurve { axis: *axis, rows })
}

/// HH projection over polar angles `thetas` at azimuth `phi` for every stress.
pub fn mixing_map(
    thetas: &[f64],
    phi: f64,
    stresses_gpa: &[f64],
    prestress: &StrainState,
    params: &MaterialParams,
    abscissa: Abscissa,
) -> Result<MixingMap> {
    if thetas.is_empty() || stresses_gpa.is_empty() {
        return Err(crate::Error::InvalidInput("mixing map needs nonempty grids".into()));
    }
    let bases: Vec<_> = thetas
        .iter()
        .map(|&t| rotated_basis(&QuantizationAxis::new(t, phi)))
        .collect();
    let rows = stresses_gpa
        .par_iter()
        .map(|&stress| {
            let pt = solve_point(stress, prestress, params, abscissa)?;
            let p: Vec<f64> = bases
                .iter()
                .map(|b| project_with_basis(doublet_vectors(&pt.spectrum), b).p_hh)
                .collect();
            Ok((pt.strain_xx, p))
        })
        .collect::<Result<Vec<_>>>()?;
    let (strains_xx, p_hh) = rows.into_iter().unzip();
    Ok(MixingMap {
        phi,
        thetas: thetas.to_vec(),
        stresses_gpa: stresses_gpa.to_vec(),
        strains_xx,
        p_hh,
    })
}
