//! The Bloch basis at Γ and its expansion in orbital ⊗ spin product states.

use num_complex::Complex64;

use super::CMatrix8;

pub const BASIS_LEN: usize = 8;

/// Zone-center Bloch states, in the fixed artifact-wide order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlochState {
    CbUp,
    CbDown,
    HhUp,
    LhUp,
    LhDown,
    HhDown,
    SoUp,
    SoDown,
}

impl BlochState {
    pub const ALL: [BlochState; BASIS_LEN] = [
        BlochState::CbUp,
        BlochState::CbDown,
        BlochState::HhUp,
        BlochState::LhUp,
        BlochState::LhDown,
        BlochState::HhDown,
        BlochState::SoUp,
        BlochState::SoDown,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            BlochState::CbUp => "CB(+1/2)",
            BlochState::CbDown => "CB(-1/2)",
            BlochState::HhUp => "HH(+3/2)",
            BlochState::LhUp => "LH(+1/2)",
            BlochState::LhDown => "LH(-1/2)",
            BlochState::HhDown => "HH(-3/2)",
            BlochState::SoUp => "SO(+1/2)",
            BlochState::SoDown => "SO(-1/2)",
        }
    }

    pub fn is_valence(self) -> bool {
        !matches!(self, BlochState::CbUp | BlochState::CbDown)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orbital {
    S,
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

/// Index into the product space `S↑ S↓ X↑ X↓ Y↑ Y↓ Z↑ Z↓`.
pub fn orbital_index(orbital: Orbital, spin: Spin) -> usize {
    2 * orbital as usize + spin as usize
}

/// Unitary whose column `m` holds Bloch state `m` in the orbital ⊗ spin basis.
///
/// ```text
/// CB↑  =  iS↑                     CB↓  =  iS↓
/// HH+  = -(X + iY)↑ / √2          HH-  =  (X - iY)↓ / √2
/// LH+  = -[(X + iY)↓ - 2Z↑] / √6  LH-  =  [(X - iY)↑ + 2Z↓] / √6
/// SO+  =  [(X + iY)↓ + Z↑] / √3   SO-  =  [(X - iY)↑ - Z↓] / √3
/// ```
pub fn orbital_expansion() -> CMatrix8 {
    use Orbital::*;
    use Spin::*;
    let c = Complex64::new;
    let s2 = std::f64::consts::SQRT_2;
    let s3 = 3f64.sqrt();
    let s6 = 6f64.sqrt();
    let mut u = CMatrix8::zeros();
    let mut put = |state: BlochState, terms: &[(Orbital, Spin, Complex64)]| {
        for &(o, s, v) in terms {
            u[(orbital_index(o, s), state.index())] = v;
        }
    };
    put(BlochState::CbUp, &[(S, Up, c(0.0, 1.0))]);
    put(BlochState::CbDown, &[(S, Down, c(0.0, 1.0))]);
    put(
        BlochState::HhUp,
        &[(X, Up, c(-1.0 / s2, 0.0)), (Y, Up, c(0.0, -1.0 / s2))],
    );
    put(
        BlochState::LhUp,
        &[
            (X, Down, c(-1.0 / s6, 0.0)),
            (Y, Down, c(0.0, -1.0 / s6)),
            (Z, Up, c(2.0 / s6, 0.0)),
        ],
    );
    put(
        BlochState::LhDown,
        &[
            (X, Up, c(1.0 / s6, 0.0)),
            (Y, Up, c(0.0, -1.0 / s6)),
            (Z, Down, c(2.0 / s6, 0.0)),
        ],
    );
    put(
        BlochState::HhDown,
        &[(X, Down, c(1.0 / s2, 0.0)), (Y, Down, c(0.0, -1.0 / s2))],
    );
    put(
        BlochState::SoUp,
        &[
            (X, Down, c(1.0 / s3, 0.0)),
            (Y, Down, c(0.0, 1.0 / s3)),
            (Z, Up, c(1.0 / s3, 0.0)),
        ],
    );
    put(
        BlochState::SoDown,
        &[
            (X, Up, c(1.0 / s3, 0.0)),
            (Y, Up, c(0.0, -1.0 / s3)),
            (Z, Down, c(-1.0 / s3, 0.0)),
        ],
    );
    u
}
