//! Reference implementations that share no code with the library solver.
//!
//! The valence Hamiltonian is assembled in the (X, Y, Z) ⊗ (↑, ↓) product
//! space from orbital angular-momentum matrices, diagonalized by a Jacobi
//! sweep on the real 2n×2n embedding, and HH/LH/SO content is measured with
//! projectors written as polynomials in J² and (J·n)².

#![allow(dead_code)]

use nalgebra::{DMatrix, Vector3};
use num_complex::Complex64 as C;

pub type Mat6 = DMatrix<C>;

pub struct Material {
    pub ev: f64,
    pub delta: f64,
    pub gamma: [f64; 3],
    pub av: f64,
    pub b: f64,
    pub d: f64,
}

impl From<&kpstrain::materials::MaterialParams> for Material {
    fn from(p: &kpstrain::materials::MaterialParams) -> Self {
        Self {
            ev: p.ev_avg + p.spin_orbit / 3.0,
            delta: p.spin_orbit,
            gamma: [p.gamma1, p.gamma2, p.gamma3],
            av: p.av,
            b: p.b,
            d: p.d,
        }
    }
}

const C0: f64 = 0.0380998;

fn eye(n: usize) -> Mat6 {
    DMatrix::identity(n, n)
}

/// (L_k)_ab = -i ε_kab on (X, Y, Z).
fn l_orbital(k: usize) -> DMatrix<C> {
    let mut m = DMatrix::zeros(3, 3);
    for a in 0..3 {
        for b in 0..3 {
            let eps = match (k, a, b) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                _ => 0.0,
            };
            m[(a, b)] = C::new(0.0, -eps);
        }
    }
    m
}

fn s_spin(k: usize) -> DMatrix<C> {
    let (o, h) = (C::new(0.0, 0.0), C::new(0.5, 0.0));
    let i = C::new(0.0, 0.5);
    match k {
        0 => DMatrix::from_row_slice(2, 2, &[o, h, h, o]),
        1 => DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
        _ => DMatrix::from_row_slice(2, 2, &[h, o, o, -h]),
    }
}

/// L_k ⊗ 1, index 2·orbital + spin.
pub fn l_full(k: usize) -> Mat6 {
    l_orbital(k).kronecker(&eye(2))
}

pub fn s_full(k: usize) -> Mat6 {
    eye(3).kronecker(&s_spin(k))
}

pub fn j_full(k: usize) -> Mat6 {
    l_full(k) + s_full(k)
}

fn anti(a: &Mat6, b: &Mat6) -> Mat6 {
    (a * b + b * a) * C::new(0.5, 0.0)
}

/// Electron-picture valence Hamiltonian in orbital ⊗ spin space.
///
/// `eps` is the symmetric strain tensor and `k` the wavevector (1/nm).
/// Wavevector terms enter through the same tensor structure as strain with
/// `a_v → -cγ1`, `b → -2cγ2`, `d → -2√3 cγ3`.
pub fn hamiltonian(m: &Material, eps: [[f64; 3]; 3], k: [f64; 3]) -> Mat6 {
    let [g1, g2, g3] = m.gamma;
    let tr = eps[0][0] + eps[1][1] + eps[2][2];
    let k2 = k.iter().map(|x| x * x).sum::<f64>();
    let sqrt3 = 3f64.sqrt();
    let mut h = eye(6) * C::from(m.ev + m.av * tr - C0 * g1 * k2);
    let ls = (0..3).map(|i| l_full(i) * s_full(i)).fold(DMatrix::zeros(6, 6), |a, b| a + b);
    h += (ls - eye(6) * C::from(0.5)) * C::from(2.0 * m.delta / 3.0);
    for i in 0..3 {
        let li2 = l_full(i) * l_full(i) - eye(6) * C::from(2.0 / 3.0);
        h -= li2 * C::from(3.0 * (m.b * eps[i][i] - 2.0 * C0 * g2 * k[i] * k[i]));
        for j in (i + 1)..3 {
            let t = m.d * eps[i][j] - 2.0 * sqrt3 * C0 * g3 * k[i] * k[j];
            h -= anti(&l_full(i), &l_full(j)) * C::from(6.0 / sqrt3 * t);
        }
    }
    h
}

/// Eigenvalues (descending) and eigenvectors of a Hermitian matrix by cyclic
/// Jacobi rotations on the real symmetric embedding [[A, -B], [B, A]].
/// Every eigenvalue appears twice; each pair of real vectors (u, v) and
/// (-v, u) represents one complex vector u + iv.
pub fn jacobi_embedded(h: &Mat6) -> (Vec<f64>, Vec<DMatrix<C>>) {
    let n = h.nrows();
    let m = 2 * n;
    let mut a = DMatrix::<f64>::zeros(m, m);
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            a[(i, j)] = z.re;
            a[(i + n, j + n)] = z.re;
            a[(i, j + n)] = -z.im;
            a[(i + n, j)] = z.im;
        }
    }
    let mut v = DMatrix::<f64>::identity(m, m);
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                if a[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..m {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&x, &y| a[(y, y)].total_cmp(&a[(x, x)]));
    let values = order.iter().map(|&k| a[(k, k)]).collect();
    let vectors = order
        .iter()
        .map(|&k| DMatrix::from_fn(n, 1, |i, _| C::new(v[(i, k)], v[(i + n, k)])))
        .collect();
    (values, vectors)
}

/// Distinct eigenvalues (each embedded value taken once), descending.
pub fn eigenvalues(h: &Mat6) -> Vec<f64> {
    let (vals, _) = jacobi_embedded(h);
    vals.chunks(2).map(|c| 0.5 * (c[0] + c[1])).collect()
}

/// Weights of the topmost doublet in the HH, LH and SO sectors along `n`,
/// averaged over the doublet; also the averaged (x, y, z) orbital content.
pub struct DoubletContent {
    pub hh: f64,
    pub lh: f64,
    pub so: f64,
    pub orbital: [f64; 3],
}

pub fn hgs_content(h: &Mat6, n: Vector3<f64>) -> DoubletContent {
    let (_, vecs) = jacobi_embedded(h);
    // the four largest embedded eigenvalues span the complex doublet twice
    let top = &vecs[..4];
    let jn = (0..3).fold(DMatrix::zeros(6, 6), |acc, i| acc + j_full(i) * C::from(n[i]));
    let j2 = (0..3).fold(DMatrix::zeros(6, 6), |acc, i| acc + j_full(i) * j_full(i));
    let p_so = (eye(6) * C::from(15.0 / 4.0) - j2) * C::from(1.0 / 3.0);
    let p_hh = (&jn * &jn - eye(6) * C::from(0.25)) * C::from(0.5);
    let p_lh = eye(6) - &p_so - &p_hh;
    let expect = |p: &Mat6| -> f64 { 0.25 * top.iter().map(|v| (v.adjoint() * p * v)[(0, 0)].re).sum::<f64>() };
    let mut orbital = [0.0; 3];
    for v in top {
        for (o, w) in orbital.iter_mut().enumerate() {
            *w += 0.25 * (v[(2 * o, 0)].norm_sqr() + v[(2 * o + 1, 0)].norm_sqr());
        }
    }
    DoubletContent {
        hh: expect(&p_hh),
        lh: expect(&p_lh),
        so: expect(&p_so),
        orbital,
    }
}

/// Strain tensor of uniaxial σxx on top of biaxial σ (GPa) from cubic
/// compliances computed here by direct inversion of the 3×3 normal block.
pub fn strain_tensor(c11: f64, c12: f64, sigma_xx: f64, sigma_biax: f64) -> [[f64; 3]; 3] {
    let c = nalgebra::Matrix3::new(c11, c12, c12, c12, c11, c12, c12, c12, c11);
    let e = c.try_inverse().unwrap() * nalgebra::Vector3::new(sigma_xx + sigma_biax, sigma_biax, 0.0);
    [[e.x, 0.0, 0.0], [0.0, e.y, 0.0], [0.0, 0.0, e.z]]
}
