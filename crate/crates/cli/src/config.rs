//! Run configuration. Every key carries its unit in the name; every key is
//! optional and falls back to the defaults below.
//!
//! ```toml
//! [material]
//! name = "GaAs"
//! # parameter_file = "my_table.toml"
//!
//! [prestress]
//! biaxial_mpa = -120.0
//!
//! [sweep]
//! stress_min_gpa = -2.0
//! stress_max_gpa = 2.0
//! steps = 201
//! abscissa = "total"        # or "uniaxial"
//!
//! [map]
//! theta_steps = 61
//! phi_deg = 0.0
//!
//! [qw]
//! thicknesses_nm = [4.0, 6.0, 8.0, 10.0, 12.0]
//! barrier_nm = 20.0
//! al_fraction = 0.4
//! grid_points = 201
//! prestress_biaxial_mpa = 0.0
//!
//! [emulation]
//! cb_shift_mev = 52.8
//! hh_shift_mev = 9.1
//! lh_shift_mev = 10.0
//! prestress_biaxial_mpa = 0.0
//!
//! [optics]
//! reference_lifetime_ps = 250.0
//! collection = "top"        # or "ideal"
//! density_stress_gpa = []
//! density_theta_steps = 90
//! density_phi_steps = 180
//!
//! [output]
//! dir = "out"
//! format = "csv"            # or "json"
//! ```

use std::path::{Path, PathBuf};

use kpstrain::axis::Abscissa;
use kpstrain::elasticity::{biaxial_strain, StrainState, StressSweep};
use kpstrain::materials::{MaterialParams, MaterialTable};
use kpstrain::optics::{Collection, RateCalibration, SphereGrid};
use kpstrain::qw::{EmulationOffsets, QwGeometry, QwMaterials};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum AbscissaKey {
    #[default]
    Total,
    Uniaxial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CollectionKey {
    #[default]
    Top,
    Ideal,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MaterialSection {
    pub name: String,
    pub parameter_file: Option<PathBuf>,
}

impl Default for MaterialSection {
    fn default() -> Self {
        Self {
            name: "GaAs".into(),
            parameter_file: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PrestressSection {
    pub biaxial_mpa: f64,
}

impl Default for PrestressSection {
    fn default() -> Self {
        Self { biaxial_mpa: -120.0 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub stress_min_gpa: f64,
    pub stress_max_gpa: f64,
    pub steps: usize,
    pub abscissa: AbscissaKey,
}

impl Default for SweepSection {
    fn default() -> Self {
        let s = StressSweep::default();
        Self {
            stress_min_gpa: s.min_gpa,
            stress_max_gpa: s.max_gpa,
            steps: s.steps,
            abscissa: AbscissaKey::Total,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MapSection {
    pub theta_steps: usize,
    pub phi_deg: f64,
}

impl Default for MapSection {
    fn default() -> Self {
        Self {
            theta_steps: 61,
            phi_deg: 0.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QwSection {
    pub thicknesses_nm: Vec<f64>,
    pub barrier_nm: f64,
    pub al_fraction: f64,
    pub grid_points: usize,
    pub prestress_biaxial_mpa: f64,
}

impl Default for QwSection {
    fn default() -> Self {
        Self {
            thicknesses_nm: vec![4.0, 6.0, 8.0, 10.0, 12.0],
            barrier_nm: 20.0,
            al_fraction: 0.4,
            grid_points: 201,
            prestress_biaxial_mpa: 0.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EmulationSection {
    pub cb_shift_mev: f64,
    pub hh_shift_mev: f64,
    pub lh_shift_mev: f64,
    pub prestress_biaxial_mpa: f64,
}

impl Default for EmulationSection {
    fn default() -> Self {
        let o = EmulationOffsets::default();
        Self {
            cb_shift_mev: o.cb_shift * 1e3,
            hh_shift_mev: o.hh_shift * 1e3,
            lh_shift_mev: o.lh_shift * 1e3,
            prestress_biaxial_mpa: 0.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OpticsSection {
    pub reference_lifetime_ps: f64,
    pub collection: CollectionKey,
    pub density_stress_gpa: Vec<f64>,
    pub density_theta_steps: usize,
    pub density_phi_steps: usize,
}

impl Default for OpticsSection {
    fn default() -> Self {
        let g = SphereGrid::default();
        Self {
            reference_lifetime_ps: RateCalibration::default().reference_lifetime_ps(),
            collection: CollectionKey::Top,
            density_stress_gpa: Vec::new(),
            density_theta_steps: g.n_theta,
            density_phi_steps: g.n_phi,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
    pub format: Format,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            format: Format::Csv,
        }
    }
}

/// The configuration file as written.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub material: MaterialSection,
    pub prestress: PrestressSection,
    pub sweep: SweepSection,
    pub map: MapSection,
    pub qw: QwSection,
    pub emulation: EmulationSection,
    pub optics: OpticsSection,
    pub output: OutputSection,
}

impl RunConfig {
    pub fn from_path(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Checks every section and resolves physical inputs. Nothing is written
    /// before this succeeds.
    pub fn resolve(&self) -> CliResult<Resolved> {
        let cfg = |e: kpstrain::Error| CliError::Config(e.to_string());
        let table = match &self.material.parameter_file {
            Some(p) => MaterialTable::from_path(p).map_err(cfg)?,
            None => MaterialTable::builtin(),
        };
        let params = *table.get(&self.material.name).map_err(cfg)?;
        let sweep = StressSweep::new(self.sweep.stress_min_gpa, self.sweep.stress_max_gpa, self.sweep.steps).map_err(cfg)?;
        let biaxial = |mpa: f64, what: &str| -> CliResult<StrainState> {
            if !mpa.is_finite() {
                return Err(CliError::Config(format!("{what} must be finite")));
            }
            biaxial_strain(mpa * 1e-3, &params.elastic()).map_err(cfg)
        };
        let prestress = biaxial(self.prestress.biaxial_mpa, "prestress.biaxial_mpa")?;
        // the sweep endpoints must stay inside the strain bound
        for s in [sweep.min_gpa, sweep.max_gpa] {
            let uni = kpstrain::elasticity::uniaxial_strain(s, &params.elastic()).map_err(cfg)?;
            kpstrain::elasticity::superpose(&prestress, &uni).map_err(cfg)?;
        }
        if self.map.theta_steps < 2 {
            return Err(CliError::Config("map.theta_steps must be at least 2".into()));
        }
        if !self.map.phi_deg.is_finite() {
            return Err(CliError::Config("map.phi_deg must be finite".into()));
        }

        if self.qw.thicknesses_nm.is_empty() {
            return Err(CliError::Config("qw.thicknesses_nm must not be empty".into()));
        }
        let mut seen = Vec::new();
        for &w in &self.qw.thicknesses_nm {
            QwGeometry::new(w, self.qw.barrier_nm, self.qw.al_fraction, self.qw.grid_points).map_err(cfg)?;
            let name = thickness_label(w);
            if seen.contains(&name) {
                return Err(CliError::Config(format!("qw.thicknesses_nm lists {w} nm twice")));
            }
            seen.push(name);
        }
        let qw_template = QwGeometry::new(
            self.qw.thicknesses_nm[0],
            self.qw.barrier_nm,
            self.qw.al_fraction,
            self.qw.grid_points,
        )
        .map_err(cfg)?;
        let qw_materials = QwMaterials {
            well: params,
            barrier: table.algaas(self.qw.al_fraction).map_err(cfg)?,
        };
        let qw_prestress = biaxial(self.qw.prestress_biaxial_mpa, "qw.prestress_biaxial_mpa")?;

        let e = &self.emulation;
        if ![e.cb_shift_mev, e.hh_shift_mev, e.lh_shift_mev].iter().all(|v| v.is_finite()) {
            return Err(CliError::Config("emulation shifts must be finite".into()));
        }
        let emulation = EmulationOffsets {
            cb_shift: e.cb_shift_mev * 1e-3,
            hh_shift: e.hh_shift_mev * 1e-3,
            lh_shift: e.lh_shift_mev * 1e-3,
        };
        let emulation_prestress = biaxial(e.prestress_biaxial_mpa, "emulation.prestress_biaxial_mpa")?;

        let o = &self.optics;
        let calibration = RateCalibration::new(o.reference_lifetime_ps).map_err(cfg)?;
        if o.density_theta_steps == 0 || o.density_phi_steps == 0 {
            return Err(CliError::Config("density grid must have at least one cell per angle".into()));
        }
        for &s in &o.density_stress_gpa {
            let uni = kpstrain::elasticity::uniaxial_strain(s, &params.elastic()).map_err(cfg)?;
            kpstrain::elasticity::superpose(&prestress, &uni).map_err(cfg)?;
        }

        Ok(Resolved {
            material: self.material.name.clone(),
            params,
            prestress,
            sweep,
            abscissa: match self.sweep.abscissa {
                AbscissaKey::Total => Abscissa::Total,
                AbscissaKey::Uniaxial => Abscissa::UniaxialOnly,
            },
            theta_steps: self.map.theta_steps,
            phi: self.map.phi_deg.to_radians(),
            qw_thicknesses_nm: self.qw.thicknesses_nm.clone(),
            qw_template,
            qw_materials,
            qw_prestress,
            emulation,
            emulation_prestress,
            calibration,
            collection: match o.collection {
                CollectionKey::Top => Collection::TopOnly,
                CollectionKey::Ideal => Collection::Ideal,
            },
            density_stress_gpa: o.density_stress_gpa.clone(),
            density_grid: SphereGrid {
                n_theta: o.density_theta_steps,
                n_phi: o.density_phi_steps,
            },
            out_dir: self.output.dir.clone(),
            format: self.output.format,
        })
    }
}

/// File-name fragment for a well thickness, e.g. `12nm` or `4.5nm`.
pub fn thickness_label(w: f64) -> String {
    format!("{w}nm")
}

/// A validated configuration in model units.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub material: String,
    pub params: MaterialParams,
    pub prestress: StrainState,
    pub sweep: StressSweep,
    pub abscissa: Abscissa,
    pub theta_steps: usize,
    pub phi: f64,
    pub qw_thicknesses_nm: Vec<f64>,
    pub qw_template: QwGeometry,
    pub qw_materials: QwMaterials,
    pub qw_prestress: StrainState,
    pub emulation: EmulationOffsets,
    pub emulation_prestress: StrainState,
    pub calibration: RateCalibration,
    pub collection: Collection,
    pub density_stress_gpa: Vec<f64>,
    pub density_grid: SphereGrid,
    pub out_dir: PathBuf,
    pub format: Format,
}
