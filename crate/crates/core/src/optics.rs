//! Bloch-function angular densities, dipole strengths, rates and in-plane
//! polarization.
//!
//! The conduction band is s-like, so the strength of a hole-to-electron
//! transition polarized along α is the α-orbital weight of the hole state
//! (summed over spin). Common momentum-matrix prefactors drop out and are
//! absorbed into [`RateCalibration`].

use std::f64::consts::PI;

use nalgebra::Vector3;
use rayon::prelude::*;

use crate::axis::{check_doublet, DEGENERACY_TOL};
use crate::elasticity::{superpose, uniaxial_strain, StrainState};
use crate::kp::{orbital_index, solve_bulk, Orbital, SpinorState, Spin, Wavevector};
use crate::materials::MaterialParams;
use crate::{Error, Result, C64};

/// Equiangular midpoint grid on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereGrid {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl Default for SphereGrid {
    fn default() -> Self {
        Self { n_theta: 90, n_phi: 180 }
    }
}

impl SphereGrid {
    pub fn theta(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * PI / self.n_theta as f64
    }

    pub fn phi(&self, j: usize) -> f64 {
        (j as f64 + 0.5) * 2.0 * PI / self.n_phi as f64
    }

    /// Solid angle of cell (i, j).
    pub fn weight(&self, i: usize) -> f64 {
        self.theta(i).sin() * (PI / self.n_theta as f64) * (2.0 * PI / self.n_phi as f64)
    }

    pub fn len(&self) -> usize {
        self.n_theta * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Probability density over the sphere, stored θ-major.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularDensity {
    pub grid: SphereGrid,
    pub values: Vec<f64>,
}

impl AngularDensity {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.n_phi + j]
    }

    /// Quadrature of the density over the sphere.
    pub fn integral(&self) -> f64 {
        (0..self.grid.n_theta)
            .map(|i| {
                let row: f64 = self.values[i * self.grid.n_phi..(i + 1) * self.grid.n_phi].iter().sum();
                row * self.grid.weight(i)
            })
            .sum()
    }

    /// Rescaled so that the grid quadrature gives exactly 1.
    pub fn normalized(&self) -> Self {
        let total = self.integral();
        let scale = if total > 0.0 { 1.0 / total } else { 0.0 };
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * scale).collect(),
        }
    }

    /// `(θ, φ, density)` for every grid cell.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let g = self.grid;
        (0..g.n_theta).flat_map(move |i| (0..g.n_phi).map(move |j| (g.theta(i), g.phi(j), self.at(i, j))))
    }
}

/// Orbital and spin components (s, x, y, z) × (↑, ↓) of a Bloch state.
fn orbital_components(state: &SpinorState) -> [[C64; 4]; 2] {
    let v = state.orbital_spin();
    let mut out = [[C64::new(0.0, 0.0); 4]; 2];
    for (s, spin) in [Spin::Up, Spin::Down].into_iter().enumerate() {
        for (o, orb) in [Orbital::S, Orbital::X, Orbital::Y, Orbital::Z].into_iter().enumerate() {
            out[s][o] = v[orbital_index(orb, spin)];
        }
    }
    out
}

/// `Σ_spin |Σ_orbital c·Y_orbital(θ, φ)|²` with unit-normalized real
/// orbitals `Y_s = 1/√4π` and `Y_x = √(3/4π)·sin θ cos φ` etc.
pub fn density_at(state: &SpinorState, theta: f64, phi: f64) -> f64 {
    density_from_components(&orbital_components(state), theta, phi)
}

fn density_from_components(c: &[[C64; 4]; 2], theta: f64, phi: f64) -> f64 {
    let ys = (0.25 / PI).sqrt();
    let yp = (0.75 / PI).sqrt();
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let y = [ys, yp * st * cp, yp * st * sp, yp * ct];
    c.iter()
        .map(|spin| spin.iter().zip(y).map(|(a, b)| a * b).sum::<C64>().norm_sqr())
        .sum()
}

/// Angular density of one state on `grid`.
pub fn angular_density(state: &SpinorState, grid: &SphereGrid) -> AngularDensity {
    let c = orbital_components(state);
    let values = (0..grid.n_theta)
        .flat_map(|i| (0..grid.n_phi).map(move |j| (i, j)))
        .map(|(i, j)| density_from_components(&c, grid.theta(i), grid.phi(j)))
        .collect();
    AngularDensity { grid: *grid, values }
}

/// Average density of a Kramers doublet, independent of how the pair is mixed.
pub fn doublet_density(doublet: [&SpinorState; 2], grid: &SphereGrid) -> AngularDensity {
    let a = angular_density(doublet[0], grid);
    let b = angular_density(doublet[1], grid);
    AngularDensity {
        grid: *grid,
        values: a.values.iter().zip(&b.values).map(|(x, y)| 0.5 * (x + y)).collect(),
    }
}

/// Radiative rates in GHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rates {
    pub r_x: f64,
    pub r_y: f64,
    pub r_z: f64,
}

/// Relative transition strengths for light polarized along x, y and z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleStrengths {
    pub s_x: f64,
    pub s_y: f64,
    pub s_z: f64,
    pub rates: Option<Rates>,
}

impl DipoleStrengths {
    pub fn new(s_x: f64, s_y: f64, s_z: f64) -> Self {
        Self { s_x, s_y, s_z, rates: None }
    }

    pub fn total(&self) -> f64 {
        self.s_x + self.s_y + self.s_z
    }
}

/// Doublet-averaged strength along a unit direction `n`:
/// `½ Σ_doublet Σ_spin |n·c_spin|²`, with `c_spin` the (x, y, z) orbital
/// coefficients of one spin component.
pub fn dipole_strength_along(doublet: [&SpinorState; 2], n: &Vector3<f64>) -> Result<f64> {
    check_doublet(doublet, DEGENERACY_TOL)?;
    let n = n.normalize();
    Ok(0.5
        * doublet
            .iter()
            .flat_map(|s| orbital_components(s))
            .map(|c| (c[1] * n.x + c[2] * n.y + c[3] * n.z).norm_sqr())
            .sum::<f64>())
}

/// Strengths along the cubic axes.
pub fn dipole_strengths(doublet: [&SpinorState; 2]) -> Result<DipoleStrengths> {
    check_doublet(doublet, DEGENERACY_TOL)?;
    let mut s = [0.0; 3];
    for state in doublet {
        for spin in orbital_components(state) {
            for (a, c) in s.iter_mut().zip(&spin[1..]) {
                *a += 0.5 * c.norm_sqr();
            }
        }
    }
    Ok(DipoleStrengths::new(s[0], s[1], s[2]))
}

/// Lifetime of one bright dipole of the unstrained heavy-hole doublet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateCalibration {
    reference_lifetime_ps: f64,
}

impl Default for RateCalibration {
    fn default() -> Self {
        Self {
            reference_lifetime_ps: 250.0,
        }
    }
}

impl RateCalibration {
    /// Strength of the reference dipole (one in-plane HH_z component).
    pub const REFERENCE_STRENGTH: f64 = 0.5;

    pub fn new(reference_lifetime_ps: f64) -> Result<Self> {
        if !(reference_lifetime_ps > 0.0 && reference_lifetime_ps.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "reference lifetime {reference_lifetime_ps} ps must be positive"
            )));
        }
        Ok(Self { reference_lifetime_ps })
    }

    pub fn reference_lifetime_ps(&self) -> f64 {
        self.reference_lifetime_ps
    }

    /// Rate in GHz of a dipole with strength `s`.
    pub fn rate_ghz(&self, s: f64) -> f64 {
        s / (Self::REFERENCE_STRENGTH * self.reference_lifetime_ps * 1e-3)
    }
}

/// Fills in the rates of `s`.
pub fn rates(s: &DipoleStrengths, cal: &RateCalibration) -> DipoleStrengths {
    DipoleStrengths {
        rates: Some(Rates {
            r_x: cal.rate_ghz(s.s_x),
            r_y: cal.rate_ghz(s.s_y),
            r_z: cal.rate_ghz(s.s_z),
        }),
        ..*s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleRow {
    pub stress_gpa: f64,
    pub strain_xx: f64,
    pub strengths: DipoleStrengths,
}

/// Strengths and rates of the bulk hole ground state for each uniaxial
/// stress superposed on `prestress`.
pub fn dipole_sweep(
    stresses_gpa: &[f64],
    prestress: &StrainState,
    params: &MaterialParams,
    cal: &RateCalibration,
) -> Result<Vec<DipoleRow>> {
    stresses_gpa
        .par_iter()
        .map(|&s| {
            let strain = superpose(prestress, &uniaxial_strain(s, &params.elastic())?)?;
            let spectrum = solve_bulk(&Wavevector::gamma(), &strain, params)?;
            Ok(DipoleRow {
                stress_gpa: s,
                strain_xx: strain.xx(),
                strengths: rates(&dipole_strengths(spectrum.hgs_doublet())?, cal),
            })
        })
        .collect()
}

/// Which dipoles reach the detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Collection {
    /// Emission collected from the top: z dipoles are lost.
    #[default]
    TopOnly,
    /// z dipoles are collected as well and show up in the y channel.
    Ideal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polarization {
    /// Degree of linear polarization, in [0, 1].
    pub degree: f64,
    /// In-plane angle of maximum intensity from x, in degrees.
    pub angle_deg: f64,
    /// The two in-plane intensities are equal and `angle_deg` is the 0° convention.
    pub tie: bool,
}

/// In-plane polarization of `I(φ) = I_x cos²φ + I_y sin²φ`.
pub fn dlp_and_angle(s: &DipoleStrengths, collection: Collection) -> Polarization {
    let ix = s.s_x;
    let iy = match collection {
        Collection::TopOnly => s.s_y,
        Collection::Ideal => s.s_y + s.s_z,
    };
    let sum = ix + iy;
    let tie = (ix - iy).abs() <= 1e-12 * sum.max(f64::MIN_POSITIVE);
    let degree = if sum > 0.0 { ((ix - iy).abs() / sum).min(1.0) } else { 0.0 };
    let angle_deg = if tie || ix > iy { 0.0 } else { 90.0 };
    Polarization { degree, angle_deg, tie }
}
