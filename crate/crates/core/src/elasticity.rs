//! Linear elasticity of cubic crystals.
//!
//! Voigt ordering is `xx, yy, zz, yz, xz, xy` everywhere. Engineering shears
//! (2ε_ij) appear only inside the stiffness map; [`StrainState`] stores
//! tensor shears, which is what the deformation-potential terms consume.

use nalgebra::{Matrix6, Vector6};

use crate::{Error, Result};

/// Largest strain magnitude accepted anywhere.
pub const STRAIN_BOUND: f64 = 0.1;

/// Cubic stiffness constants in GPa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticConstants {
    pub c11: f64,
    pub c12: f64,
    pub c44: f64,
}

impl ElasticConstants {
    pub fn new(c11: f64, c12: f64, c44: f64) -> Result<Self> {
        let c = Self { c11, c12, c44 };
        c.validate()?;
        Ok(c)
    }

    /// Mechanical stability: C11 > C12 > 0 and C44 > 0.
    pub fn validate(&self) -> Result<()> {
        let ok = self.c11.is_finite()
            && self.c12.is_finite()
            && self.c44.is_finite()
            && self.c11 > self.c12
            && self.c12 > 0.0
            && self.c44 > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Stiffness(format!(
                "need C11 > C12 > 0 and C44 > 0, got C11 = {}, C12 = {}, C44 = {}",
                self.c11, self.c12, self.c44
            )))
        }
    }

    /// 6×6 stiffness acting on engineering strains.
    pub fn stiffness(&self) -> Matrix6<f64> {
        let mut m = Matrix6::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] = if i == j { self.c11 } else { self.c12 };
            }
            m[(i + 3, i + 3)] = self.c44;
        }
        m
    }

    /// ν_[100] = C12 / (C11 + C12).
    pub fn poisson_100(&self) -> f64 {
        self.c12 / (self.c11 + self.c12)
    }

    /// Compliances (S11, S12, S44) with S44 acting on engineering shear.
    fn compliance(&self) -> (f64, f64, f64) {
        let det = (self.c11 - self.c12) * (self.c11 + 2.0 * self.c12);
        (
            (self.c11 + self.c12) / det,
            -self.c12 / det,
            1.0 / self.c44,
        )
    }
}

/// Stress tensor in Voigt form, GPa.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StressTensor {
    pub voigt: [f64; 6],
}

impl StressTensor {
    pub fn new(voigt: [f64; 6]) -> Self {
        Self { voigt }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn uniaxial_x(sigma: f64) -> Self {
        Self::new([sigma, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    pub fn biaxial_xy(sigma: f64) -> Self {
        Self::new([sigma, sigma, 0.0, 0.0, 0.0, 0.0])
    }

    pub fn is_finite(&self) -> bool {
        self.voigt.iter().all(|v| v.is_finite())
    }
}

impl std::ops::Add for StressTensor {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut voigt = self.voigt;
        for (a, b) in voigt.iter_mut().zip(rhs.voigt) {
            *a += b;
        }
        Self { voigt }
    }
}

/// Symmetric strain tensor, Voigt ordering with tensor (not engineering) shears.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrainState {
    components: [f64; 6],
    source: Option<StressTensor>,
}

impl StrainState {
    pub fn zero() -> Self {
        Self {
            components: [0.0; 6],
            source: Some(StressTensor::zero()),
        }
    }

    /// Strain given directly, without a stress it was derived from.
    pub fn from_components(components: [f64; 6]) -> Result<Self> {
        Self::checked(components, None)
    }

    fn checked(components: [f64; 6], source: Option<StressTensor>) -> Result<Self> {
        for (index, &value) in components.iter().enumerate() {
            if !value.is_finite() || value.abs() >= STRAIN_BOUND {
                return Err(Error::StrainBound { index, value });
            }
        }
        Ok(Self { components, source })
    }

    pub fn components(&self) -> [f64; 6] {
        self.components
    }

    /// The stress this strain was computed from, if known.
    pub fn source(&self) -> Option<&StressTensor> {
        self.source.as_ref()
    }

    pub fn xx(&self) -> f64 {
        self.components[0]
    }
    pub fn yy(&self) -> f64 {
        self.components[1]
    }
    pub fn zz(&self) -> f64 {
        self.components[2]
    }
    pub fn yz(&self) -> f64 {
        self.components[3]
    }
    pub fn xz(&self) -> f64 {
        self.components[4]
    }
    pub fn xy(&self) -> f64 {
        self.components[5]
    }

    pub fn trace(&self) -> f64 {
        self.xx() + self.yy() + self.zz()
    }

    /// Voigt vector with engineering shears 2ε_ij.
    pub fn engineering(&self) -> Vector6<f64> {
        let c = self.components;
        Vector6::new(c[0], c[1], c[2], 2.0 * c[3], 2.0 * c[4], 2.0 * c[5])
    }

    /// The same strain with x and y exchanged.
    pub fn swap_xy(&self) -> Self {
        let c = self.components;
        Self {
            components: [c[1], c[0], c[2], c[4], c[3], c[5]],
            source: self.source.map(|s| {
                let v = s.voigt;
                StressTensor::new([v[1], v[0], v[2], v[4], v[3], v[5]])
            }),
        }
    }
}

/// Forward cubic Hooke's law σ = C·ε.
pub fn stress_from_strain(strain: &StrainState, c: &ElasticConstants) -> StressTensor {
    let sigma = c.stiffness() * strain.engineering();
    StressTensor::new(sigma.into())
}

/// Inverts the cubic Hooke's law.
pub fn strain_from_stress(stress: &StressTensor, c: &ElasticConstants) -> Result<StrainState> {
    c.validate()?;
    if !stress.is_finite() {
        return Err(Error::InvalidInput("non-finite stress".into()));
    }
    let (s11, s12, s44) = c.compliance();
    let v = stress.voigt;
    let normal = |i: usize| s11 * v[i] + s12 * (v[(i + 1) % 3] + v[(i + 2) % 3]);
    let components = [
        normal(0),
        normal(1),
        normal(2),
        0.5 * s44 * v[3],
        0.5 * s44 * v[4],
        0.5 * s44 * v[5],
    ];
    StrainState::checked(components, Some(*stress))
}

/// Strain of a uniaxial stress σxx along [100]: ε_yy = ε_zz = -ν ε_xx.
pub fn uniaxial_strain(sigma_xx: f64, c: &ElasticConstants) -> Result<StrainState> {
    strain_from_stress(&StressTensor::uniaxial_x(sigma_xx), c)
}

/// Strain of an in-plane biaxial stress σxx = σyy: ε_zz = -(2 C12 / C11) ε_xx.
pub fn biaxial_strain(sigma: f64, c: &ElasticConstants) -> Result<StrainState> {
    c.validate()?;
    let exx = sigma * c.c11 / (c.c11 * (c.c11 + c.c12) - 2.0 * c.c12 * c.c12);
    let ezz = -2.0 * c.c12 / c.c11 * exx;
    StrainState::checked(
        [exx, exx, ezz, 0.0, 0.0, 0.0],
        Some(StressTensor::biaxial_xy(sigma)),
    )
}

/// Linear superposition of two strain states.
pub fn superpose(a: &StrainState, b: &StrainState) -> Result<StrainState> {
    let mut components = a.components;
    for (x, y) in components.iter_mut().zip(b.components) {
        *x += y;
    }
    let source = match (a.source, b.source) {
        (Some(sa), Some(sb)) => Some(sa + sb),
        _ => None,
    };
    StrainState::checked(components, source)
}

/// Equally spaced uniaxial stresses from `min_gpa` to `max_gpa`, both included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressSweep {
    pub min_gpa: f64,
    pub max_gpa: f64,
    pub steps: usize,
}

impl Default for StressSweep {
    fn default() -> Self {
        Self {
            min_gpa: -2.0,
            max_gpa: 2.0,
            steps: 201,
        }
    }
}

impl StressSweep {
    pub fn new(min_gpa: f64, max_gpa: f64, steps: usize) -> Result<Self> {
        let s = Self { min_gpa, max_gpa, steps };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.min_gpa.is_finite() && self.max_gpa.is_finite()) || self.min_gpa >= self.max_gpa {
            return Err(Error::InvalidInput(format!(
                "stress sweep needs min < max (got {} to {} GPa)",
                self.min_gpa, self.max_gpa
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidInput(format!("stress sweep needs at least 2 steps, got {}", self.steps)));
        }
        Ok(())
    }

    /// The sampled stresses. Endpoints are exact; a sample that lands within
    /// rounding of zero is snapped to zero.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps.max(2);
        let span = self.max_gpa - self.min_gpa;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.max_gpa;
                }
                let v = self.min_gpa + span * i as f64 / (n - 1) as f64;
                if v.abs() < 1e-12 * span { 0.0 } else { v }
            })
            .collect()
    }
}

/// Two piezo fingers of length `l` separated by a gap `d` bridged by the membrane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActuatorGeometry {
    finger_length_mm: f64,
    gap_width_um: f64,
}

impl ActuatorGeometry {
    pub fn new(finger_length_mm: f64, gap_width_um: f64) -> Result<Self> {
        let g = Self {
            finger_length_mm,
            gap_width_um,
        };
        if !(finger_length_mm > 0.0 && gap_width_um > 0.0) || !finger_length_mm.is_finite() {
            return Err(Error::Geometry(format!(
                "finger length ({finger_length_mm} mm) and gap ({gap_width_um} µm) must be positive"
            )));
        }
        if g.amplification() <= 1.0 {
            return Err(Error::Geometry(format!(
                "amplification 2l/d = {} must exceed 1",
                g.amplification()
            )));
        }
        Ok(g)
    }

    pub fn finger_length_mm(&self) -> f64 {
        self.finger_length_mm
    }

    pub fn gap_width_um(&self) -> f64 {
        self.gap_width_um
    }

    /// 2l/d with both lengths in the same unit.
    pub fn amplification(&self) -> f64 {
        2.0 * self.finger_length_mm * 1000.0 / self.gap_width_um
    }
}

/// Membrane strain produced by a piezo strain across the gap.
pub fn actuator_strain(geometry: &ActuatorGeometry, piezo_strain: f64) -> f64 {
    geometry.amplification() * piezo_strain
}
