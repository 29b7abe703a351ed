//! Angular-momentum operators, rotated bases and quantization-axis projections.
//!
//! The HH/LH/SO states quantized along a unit vector `n` are obtained by
//! rotating the orbital triplet (X, Y, Z) and the spinor (↑, ↓) so that the
//! new z axis points along `n`. Projecting the hole ground-state doublet onto
//! the rotated pairs measures how well `n` serves as a quantization axis.

mod sweep;

pub use sweep::{mixing_curve, mixing_map, theta_grid, Abscissa, MixingCurve, MixingMap, MixingRow};

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3};
use num_complex::Complex64;

use crate::kp::{orbital_expansion, BlochState, CMatrix8, CVector8, SpinorState};
use crate::{Error, Result};

/// Default splitting below which two levels count as one Kramers doublet, in eV.
pub const DEGENERACY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    X,
    Y,
    Z,
}

/// Total angular momentum (units of ħ) in the HH+, LH+, LH-, HH- block.
pub fn j_operator(component: Component) -> Matrix4<Complex64> {
    let h = 0.5 * 3f64.sqrt();
    match component {
        Component::Z => Matrix4::from_diagonal(&nalgebra::Vector4::new(1.5, 0.5, -0.5, -1.5).map(Complex64::from)),
        Component::X => Matrix4::new(
            0.0, h, 0.0, 0.0, //
            h, 0.0, 1.0, 0.0, //
            0.0, 1.0, 0.0, h, //
            0.0, 0.0, h, 0.0,
        )
        .map(Complex64::from),
        Component::Y => {
            // [J_z, J_x] = i J_y
            let (jz, jx) = (j_operator(Component::Z), j_operator(Component::X));
            (jz * jx - jx * jz) * Complex64::new(0.0, -1.0)
        }
    }
}

/// Total angular momentum L + S in the full 8-state Bloch basis.
pub fn j_operator_full(component: Component) -> CMatrix8 {
    let i = Complex64::i();
    let zero = Complex64::new(0.0, 0.0);
    let k = component as usize;
    // (L_k)_ab = -i ε_kab on the p triplet; s-like orbital carries none
    let mut l = nalgebra::Matrix4::<Complex64>::zeros();
    for a in 0..3 {
        for b in 0..3 {
            l[(a + 1, b + 1)] = -i * levi_civita(k, a, b);
        }
    }
    let half = Complex64::new(0.5, 0.0);
    let s: Matrix2<Complex64> = match component {
        Component::X => Matrix2::new(zero, half, half, zero),
        Component::Y => Matrix2::new(zero, -i * half, i * half, zero),
        Component::Z => Matrix2::new(half, zero, zero, -half),
    };
    let j = l.kronecker(&Matrix2::identity()) + Matrix4::<Complex64>::identity().kronecker(&s);
    let j = CMatrix8::from_fn(|r, c| j[(r, c)]);
    let u = orbital_expansion();
    u.adjoint() * j * u
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Frobenius norm of `JH - HJ`.
pub fn commutator_norm(j: &Matrix4<Complex64>, h: &Matrix4<Complex64>) -> f64 {
    (j * h - h * j).norm()
}

/// Unit vector `n = (cos φ sin θ, sin φ sin θ, cos θ)`, θ polar from z and φ
/// azimuthal from x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizationAxis {
    pub theta: f64,
    pub phi: f64,
}

impl QuantizationAxis {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    pub fn z() -> Self {
        Self::new(0.0, 0.0)
    }

    pub fn x() -> Self {
        Self::new(std::f64::consts::FRAC_PI_2, 0.0)
    }

    pub fn y() -> Self {
        Self::new(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)
    }

    /// Axis through an arbitrary nonzero vector.
    pub fn from_vector(v: Vector3<f64>) -> Result<Self> {
        let n = v.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidInput(format!("cannot build an axis from {v:?}")));
        }
        let theta = (v.z / n).clamp(-1.0, 1.0).acos();
        let phi = v.y.atan2(v.x);
        Ok(Self::new(theta, phi))
    }

    /// The antiparallel axis -n.
    pub fn flipped(&self) -> Self {
        Self::new(std::f64::consts::PI - self.theta, self.phi + std::f64::consts::PI)
    }

    pub fn unit_vector(&self) -> Vector3<f64> {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Vector3::new(cp * st, sp * st, ct)
    }

    /// Orbital rotation taking (x, y, z) to (X', Y', Z' = n); columns are the
    /// rotated orbitals in the original frame.
    pub fn orbital_rotation(&self) -> Matrix3<f64> {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Matrix3::new(
            ct * cp, -sp, st * cp, //
            ct * sp, cp, st * sp, //
            -st, 0.0, ct,
        )
    }

    /// Spinor rotation matching [`Self::orbital_rotation`]; columns are ↑' and ↓'.
    pub fn spin_rotation(&self) -> Matrix2<Complex64> {
        let (sh, ch) = (0.5 * self.theta).sin_cos();
        let minus = Complex64::from_polar(1.0, -0.5 * self.phi);
        let plus = Complex64::from_polar(1.0, 0.5 * self.phi);
        Matrix2::new(minus * ch, -minus * sh, plus * sh, plus * ch)
    }
}

/// Bloch basis quantized along `axis`, as a unitary whose column `m` holds
/// rotated state `m` (same ordering as [`BlochState::ALL`]) in canonical
/// Bloch coordinates. At θ = φ = 0 this is the identity.
pub fn rotated_basis(axis: &QuantizationAxis) -> CMatrix8 {
    let r = axis.orbital_rotation();
    let mut orbital = Matrix4::<Complex64>::identity();
    for a in 0..3 {
        for b in 0..3 {
            orbital[(a + 1, b + 1)] = r[(a, b)].into();
        }
    }
    let w = orbital.kronecker(&axis.spin_rotation());
    let w = CMatrix8::from_fn(|i, j| w[(i, j)]);
    if w == CMatrix8::identity() {
        // skip U†U, which is the identity only up to rounding
        return w;
    }
    let u = orbital_expansion();
    u.adjoint() * w * u
}

/// Weights of a state (or doublet) on the HH, LH and SO pairs of an axis.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProjectionResult {
    pub p_hh: f64,
    pub p_lh: f64,
    pub p_so: f64,
}

impl ProjectionResult {
    pub fn total(&self) -> f64 {
        self.p_hh + self.p_lh + self.p_so
    }
}

const HH_PAIR: [BlochState; 2] = [BlochState::HhUp, BlochState::HhDown];
const LH_PAIR: [BlochState; 2] = [BlochState::LhUp, BlochState::LhDown];
const SO_PAIR: [BlochState; 2] = [BlochState::SoUp, BlochState::SoDown];

/// Projects a set of Bloch-coordinate vectors onto the rotated pairs.
///
/// Weights are summed incoherently over `vectors` and divided by their
/// total squared norm. A Kramers doublet passes its two states; a
/// quantum-well envelope passes one vector per grid point (and state).
pub fn project_vectors<'a>(vectors: impl IntoIterator<Item = &'a CVector8>, axis: &QuantizationAxis) -> ProjectionResult {
    let basis = rotated_basis(axis);
    project_with_basis(vectors, &basis)
}

pub(crate) fn project_with_basis<'a>(vectors: impl IntoIterator<Item = &'a CVector8>, basis: &CMatrix8) -> ProjectionResult {
    let mut out = ProjectionResult::default();
    let mut norm = 0.0;
    let weight = |v: &CVector8, pair: &[BlochState; 2]| -> f64 {
        pair.iter().map(|s| basis.column(s.index()).dotc(v).norm_sqr()).sum()
    };
    for v in vectors {
        norm += v.norm_squared();
        out.p_hh += weight(v, &HH_PAIR);
        out.p_lh += weight(v, &LH_PAIR);
        out.p_so += weight(v, &SO_PAIR);
    }
    if norm > 0.0 {
        out.p_hh /= norm;
        out.p_lh /= norm;
        out.p_so /= norm;
    }
    out
}

/// Checks that two states form a degenerate pair within `tol` eV.
pub fn check_doublet(doublet: [&SpinorState; 2], tol: f64) -> Result<()> {
    let split = (doublet[0].energy - doublet[1].energy).abs();
    if split > tol || !split.is_finite() {
        return Err(Error::NotDegenerate(split));
    }
    Ok(())
}

/// Doublet-averaged projection of the hole ground state onto `axis`:
/// `p_X = ½ Σ_doublet Σ_pair |⟨X_n|ψ⟩|²`.
pub fn project_hgs(doublet: [&SpinorState; 2], axis: &QuantizationAxis) -> Result<ProjectionResult> {
    project_hgs_with_tol(doublet, axis, DEGENERACY_TOL)
}

pub fn project_hgs_with_tol(doublet: [&SpinorState; 2], axis: &QuantizationAxis, tol: f64) -> Result<ProjectionResult> {
    check_doublet(doublet, tol)?;
    Ok(project_vectors(doublet.iter().map(|s| &s.coefficients), axis))
}
