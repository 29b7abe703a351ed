//! Material parameters and alloy interpolation.
//!
//! Parameter sets are read from a TOML document with one table per material
//! (see `data/materials.toml`). The physics code never hard-codes material
//! values; everything flows through [`MaterialParams`].

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::elasticity::ElasticConstants;
use crate::{Error, Result};

/// The parameter table shipped with the crate.
pub const BUILTIN_TABLE: &str = include_str!("../data/materials.toml");

/// Materials every table must provide.
pub const REQUIRED_MATERIALS: [&str; 2] = ["GaAs", "AlAs"];

/// Band, deformation-potential and elastic parameters of a zincblende crystal.
///
/// Energies in eV, stiffness constants in GPa, masses in units of m₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialParams {
    /// Fundamental Γ gap.
    pub band_gap: f64,
    /// Average valence-band energy (model-solid reference).
    pub ev_avg: f64,
    /// Spin-orbit splitting Δ.
    pub spin_orbit: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    /// Conduction-band effective mass.
    pub electron_mass: f64,
    /// Conduction-band hydrostatic deformation potential.
    pub ac: f64,
    /// Valence-band hydrostatic deformation potential.
    pub av: f64,
    /// Tetragonal shear deformation potential.
    pub b: f64,
    /// Rhombohedral shear deformation potential.
    pub d: f64,
    pub c11: f64,
    pub c12: f64,
    pub c44: f64,
}

macro_rules! zip_fields {
    ($a:expr, $b:expr, $f:expr, [$($field:ident),*]) => {
        MaterialParams { $($field: $f($a.$field, $b.$field)),* }
    };
}

impl MaterialParams {
    /// Energy of the HH/LH edge at Γ without strain.
    pub fn vb_top(&self) -> f64 {
        self.ev_avg + self.spin_orbit / 3.0
    }

    pub fn elastic(&self) -> ElasticConstants {
        ElasticConstants {
            c11: self.c11,
            c12: self.c12,
            c44: self.c44,
        }
    }

    /// Poisson ratio for uniaxial stress along [100], C12 / (C11 + C12).
    pub fn poisson_100(&self) -> f64 {
        self.elastic().poisson_100()
    }

    /// Checks the physical invariants of a parameter set.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let values = [
            self.band_gap,
            self.ev_avg,
            self.spin_orbit,
            self.gamma1,
            self.gamma2,
            self.gamma3,
            self.electron_mass,
            self.ac,
            self.av,
            self.b,
            self.d,
            self.c11,
            self.c12,
            self.c44,
        ];
        if values.iter().any(|v| !v.is_finite()) {
            return Err("non-finite parameter".into());
        }
        if self.band_gap <= 0.0 {
            return Err(format!("band gap {} must be positive", self.band_gap));
        }
        if self.spin_orbit <= 0.0 {
            return Err(format!("spin-orbit splitting {} must be positive", self.spin_orbit));
        }
        if self.gamma2 < 0.0 || self.gamma3 < 0.0 || self.gamma1 <= 2.0 * self.gamma2 {
            return Err(format!(
                "Luttinger parameters need gamma1 > 2 gamma2 >= 0 and gamma3 >= 0 (got {}, {}, {})",
                self.gamma1, self.gamma2, self.gamma3
            ));
        }
        if self.electron_mass <= 0.0 {
            return Err(format!("electron mass {} must be positive", self.electron_mass));
        }
        self.elastic().validate().map_err(|e| e.to_string())
    }

    /// Fieldwise `(1 - t)·self + t·other`. No validation.
    pub(crate) fn lerp(&self, other: &Self, t: f64) -> Self {
        zip_fields!(
            self,
            other,
            |a: f64, b: f64| (1.0 - t) * a + t * b,
            [
                band_gap,
                ev_avg,
                spin_orbit,
                gamma1,
                gamma2,
                gamma3,
                electron_mass,
                ac,
                av,
                b,
                d,
                c11,
                c12,
                c44
            ]
        )
    }
}

/// Al fraction `x` of Al(x)Ga(1-x)As.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlloyComposition(f64);

impl AlloyComposition {
    pub fn new(al_fraction: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&al_fraction) {
            return Err(Error::Composition(al_fraction));
        }
        Ok(Self(al_fraction))
    }

    pub fn al_fraction(self) -> f64 {
        self.0
    }
}

/// Linear interpolation (Vegard's law) between two end-point materials,
/// without bowing: every field is `(1 - x)·a + x·b`.
pub fn vegard(x: AlloyComposition, a: &MaterialParams, b: &MaterialParams) -> Result<MaterialParams> {
    let mixed = a.lerp(b, x.al_fraction());
    mixed.validate().map_err(|reason| Error::InvalidMaterial {
        name: format!("alloy x = {}", x.al_fraction()),
        reason,
    })?;
    Ok(mixed)
}

/// Named parameter sets, ordered by name.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialTable {
    entries: BTreeMap<String, MaterialParams>,
}

impl MaterialTable {
    /// The table embedded in the crate.
    pub fn builtin() -> Self {
        load_parameter_table(BUILTIN_TABLE).expect("embedded parameter table is valid")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ParameterTable(format!("{}: {e}", path.display())))?;
        load_parameter_table(&text)
    }

    pub fn get(&self, name: &str) -> Result<&MaterialParams> {
        self.entries
            .get(name)
            .ok_or_else(|| Error::MissingMaterial(name.to_owned()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Al(x)Ga(1-x)As from the GaAs and AlAs entries.
    pub fn algaas(&self, al_fraction: f64) -> Result<MaterialParams> {
        let x = AlloyComposition::new(al_fraction)?;
        vegard(x, self.get("GaAs")?, self.get("AlAs")?)
    }

    /// Serializes back to the TOML layout accepted by [`load_parameter_table`].
    pub fn to_toml_string(&self) -> String {
        toml::to_string(&self.entries).expect("parameter tables serialize")
    }
}

/// Parses a TOML parameter document into a validated table.
///
/// Fails without returning a partial table if the document does not parse,
/// lacks GaAs or AlAs, or contains a parameter set violating the invariants.
pub fn load_parameter_table(source: &str) -> Result<MaterialTable> {
    let entries: BTreeMap<String, MaterialParams> =
        toml::from_str(source).map_err(|e| Error::ParameterTable(e.to_string()))?;
    for required in REQUIRED_MATERIALS {
        if !entries.contains_key(required) {
            return Err(Error::MissingMaterial(required.to_owned()));
        }
    }
    for (name, params) in &entries {
        params.validate().map_err(|reason| Error::InvalidMaterial {
            name: name.clone(),
            reason,
        })?;
    }
    Ok(MaterialTable { entries })
}
