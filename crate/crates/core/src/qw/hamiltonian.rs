use nalgebra::DMatrix;

use super::{QwGeometry, BANDS};
use crate::elasticity::StrainState;
use crate::kp::{Term, VALENCE_LAYOUT};
use crate::materials::{MaterialParams, MaterialTable};
use crate::{Result, C64, HBAR2_OVER_2M0};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Well and barrier parameter sets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QwMaterials {
    pub well: MaterialParams,
    pub barrier: MaterialParams,
}

impl QwMaterials {
    /// GaAs well in Al(x)Ga(1-x)As.
    pub fn from_table(table: &MaterialTable, al_fraction: f64) -> Result<Self> {
        Ok(Self {
            well: *table.get("GaAs")?,
            barrier: table.algaas(al_fraction)?,
        })
    }
}

/// Parameters at every grid node, blended by the well fraction of each cell.
#[derive(Debug, Clone)]
pub struct QwProfile {
    pub nodes: Vec<MaterialParams>,
}

impl QwProfile {
    pub fn new(g: &QwGeometry, m: &QwMaterials) -> Self {
        let nodes = (0..g.grid_points())
            .map(|i| m.barrier.lerp(&m.well, g.well_fraction(i)))
            .collect();
        Self { nodes }
    }

    /// Unstrained HH/LH edge at each node.
    pub fn valence_edge(&self) -> Vec<f64> {
        self.nodes.iter().map(MaterialParams::vb_top).collect()
    }
}

/// N×N tridiagonal block; `upper[i]` is entry (i, i+1), `lower[i]` is (i+1, i).
#[derive(Clone)]
struct Tri {
    diag: Vec<C64>,
    upper: Vec<C64>,
    lower: Vec<C64>,
}

impl Tri {
    fn zeros(n: usize) -> Self {
        Self {
            diag: vec![C64::new(0.0, 0.0); n],
            upper: vec![C64::new(0.0, 0.0); n - 1],
            lower: vec![C64::new(0.0, 0.0); n - 1],
        }
    }

    fn adjoint(&self) -> Self {
        Self {
            diag: self.diag.iter().map(|z| z.conj()).collect(),
            upper: self.lower.iter().map(|z| z.conj()).collect(),
            lower: self.upper.iter().map(|z| z.conj()).collect(),
        }
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        let zip = |a: &[C64], b: &[C64]| a.iter().zip(b).map(|(x, y)| x + y * sign).collect();
        Self {
            diag: zip(&self.diag, &other.diag),
            upper: zip(&self.upper, &other.upper),
            lower: zip(&self.lower, &other.lower),
        }
    }

    fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        let d = self.diag.iter().enumerate().map(|(i, &v)| (i, i, v));
        let u = self.upper.iter().enumerate().map(|(i, &v)| (i, i + 1, v));
        let l = self.lower.iter().enumerate().map(|(i, &v)| (i + 1, i, v));
        d.chain(u).chain(l)
    }
}

/// Discretized `k_z A k_z` for node values `a`.
fn second_derivative(a: &[f64], h: f64) -> Tri {
    let n = a.len();
    let mut t = Tri::zeros(n);
    // ghost nodes repeat the edge values
    let mid = |i: isize| -> f64 {
        let at = |j: isize| a[j.clamp(0, n as isize - 1) as usize];
        0.5 * (at(i) + at(i + 1))
    };
    let h2 = h * h;
    for i in 0..n {
        t.diag[i] = ((mid(i as isize - 1) + mid(i as isize)) / h2).into();
    }
    for i in 0..n - 1 {
        let v = C64::from(-mid(i as isize) / h2);
        t.upper[i] = v;
        t.lower[i] = v;
    }
    t
}

/// Discretized symmetric `(A k_z + k_z A)/2` for node values `a`.
fn first_derivative(a: &[f64], h: f64) -> Tri {
    let n = a.len();
    let mut t = Tri::zeros(n);
    for i in 0..n - 1 {
        let v = (a[i] + a[i + 1]) / (4.0 * h);
        t.upper[i] = C64::new(0.0, -v);
        t.lower[i] = C64::new(0.0, v);
    }
    t
}

/// The 6N×6N valence Hamiltonian at k∥ = 0.
pub fn build_qw_hamiltonian(g: &QwGeometry, strain: &StrainState, m: &QwMaterials) -> Result<DMatrix<C64>> {
    build_qw_hamiltonian_at(g, strain, m, 0.0, 0.0)
}

/// The 6N×6N valence Hamiltonian at in-plane wavevector (kx, ky) in 1/nm.
/// Index `6i + b` is band `b` at node `i`.
pub fn build_qw_hamiltonian_at(g: &QwGeometry, e: &StrainState, m: &QwMaterials, kx: f64, ky: f64) -> Result<DMatrix<C64>> {
    let profile = QwProfile::new(g, m);
    let nodes = &profile.nodes;
    let n = nodes.len();
    let h = g.spacing();
    let c = HBAR2_OVER_2M0;
    let kpar2 = kx * kx + ky * ky;
    let tetra = e.xx() + e.yy() - 2.0 * e.zz();

    let gamma = |f: fn(&MaterialParams) -> f64| nodes.iter().map(f).collect::<Vec<f64>>();
    let (g1, g2, g3) = (gamma(|p| p.gamma1), gamma(|p| p.gamma2), gamma(|p| p.gamma3));

    let mut p = second_derivative(&g1, h);
    let mut q = second_derivative(&g2, h);
    p.diag.iter_mut().chain(p.upper.iter_mut()).chain(p.lower.iter_mut()).for_each(|z| *z *= c);
    q.diag.iter_mut().chain(q.upper.iter_mut()).chain(q.lower.iter_mut()).for_each(|z| *z *= -2.0 * c);
    let mut r = Tri::zeros(n);
    let mut s = first_derivative(&g3, h);
    let s_pref = C64::new(kx, -ky) * (c * 2.0 * SQRT_3);
    s.upper.iter_mut().chain(s.lower.iter_mut()).for_each(|z| *z *= s_pref);
    let mut delta = Tri::zeros(n);
    for (i, node) in nodes.iter().enumerate() {
        p.diag[i] += c * node.gamma1 * kpar2 - node.av * e.trace();
        q.diag[i] += c * node.gamma2 * kpar2 - 0.5 * node.b * tetra;
        r.diag[i] = c * SQRT_3 * C64::new(-node.gamma2 * (kx * kx - ky * ky), 2.0 * node.gamma3 * kx * ky)
            + C64::new(0.5 * SQRT_3 * node.b * (e.xx() - e.yy()), -node.d * e.xy());
        s.diag[i] = -node.d * C64::new(e.xz(), -e.yz());
        delta.diag[i] = node.spin_orbit.into();
    }

    let blocks = |t: Term| -> Tri {
        match t {
            Term::PPlusQ => p.combine(&q, 1.0),
            Term::PMinusQ => p.combine(&q, -1.0),
            Term::PPlusDelta => p.combine(&delta, 1.0),
            Term::Q => q.clone(),
            Term::R => r.clone(),
            Term::S => s.clone(),
            Term::RDag => r.adjoint(),
            Term::SDag => s.adjoint(),
        }
    };

    let dim = BANDS * n;
    let mut out = DMatrix::<C64>::zeros(dim, dim);
    for &(a, b, term, coef) in &VALENCE_LAYOUT {
        for (i, j, v) in blocks(term).entries() {
            let v = v * coef;
            if v == C64::new(0.0, 0.0) {
                continue;
            }
            out[(BANDS * i + a, BANDS * j + b)] -= v;
            if a != b {
                out[(BANDS * j + b, BANDS * i + a)] -= v.conj();
            }
        }
    }
    for (i, ev) in profile.valence_edge().into_iter().enumerate() {
        for b in 0..BANDS {
            out[(BANDS * i + b, BANDS * i + b)] += ev;
        }
    }
    Ok(out)
}
