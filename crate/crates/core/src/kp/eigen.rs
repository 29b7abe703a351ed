//! Dense Hermitian eigensolver.
//!
//! Backed by faer's self-adjoint decomposition. Real-valued inputs take the
//! real symmetric path, which is several times faster for the quantum-well
//! matrices. Output ordering is deterministic: energies descending, and each
//! eigenvector's phase is fixed so that its first non-negligible coefficient
//! is real and positive.
//!
//! Matrices that split into independent blocks (for example the conduction
//! doublet at any k, or the two Kramers blocks of a quantum well at k∥ = 0)
//! are diagonalized block by block.

use faer::{Mat, Side};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

/// Relative tolerance on max |H - H†| accepted by [`eigensolve`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues (descending) and the matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

impl Eigenpairs {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// max |H - H†| over all entries.
pub fn hermiticity_residual(h: &DMatrix<Complex64>) -> f64 {
    let n = h.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for i in j..n {
            worst = worst.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Diagonalizes a Hermitian matrix.
pub fn eigensolve(h: &DMatrix<Complex64>) -> Result<Eigenpairs> {
    let n = h.nrows();
    if h.ncols() != n {
        return Err(Error::InvalidInput(format!("matrix is {}×{}", n, h.ncols())));
    }
    if n == 0 {
        return Ok(Eigenpairs {
            values: Vec::new(),
            vectors: DMatrix::zeros(0, 0),
        });
    }
    if h.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidInput("non-finite matrix entry".into()));
    }
    let scale = h.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let residual = hermiticity_residual(h);
    if residual > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian(residual));
    }

    let blocks = connected_blocks(h);
    let (values, mut vectors) = if blocks.len() == 1 {
        solve_dense(h)?
    } else {
        let mut parts = Vec::with_capacity(blocks.len());
        for idx in &blocks {
            let sub = DMatrix::from_fn(idx.len(), idx.len(), |i, j| h[(idx[i], idx[j])]);
            parts.push(solve_dense(&sub)?);
        }
        // merge descending; ties keep block order so the result is deterministic
        let mut order: Vec<(f64, usize, usize)> = parts
            .iter()
            .enumerate()
            .flat_map(|(b, (vals, _))| vals.iter().enumerate().map(move |(k, &v)| (v, b, k)))
            .collect();
        order.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
        let mut vectors = DMatrix::zeros(n, n);
        let values = order.iter().map(|o| o.0).collect();
        for (col, &(_, b, k)) in order.iter().enumerate() {
            for (local, &global) in blocks[b].iter().enumerate() {
                vectors[(global, col)] = parts[b].1[(local, k)];
            }
        }
        (values, vectors)
    };

    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Eigensolver("non-finite eigenvalue".into()));
    }
    for mut col in vectors.column_iter_mut() {
        let largest = col.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        if let Some(pivot) = col.iter().find(|z| z.norm() > 1e-8 * largest).copied() {
            let phase = pivot.conj() / pivot.norm();
            col.iter_mut().for_each(|z| *z *= phase);
        }
    }
    Ok(Eigenpairs { values, vectors })
}

/// Full decomposition of one Hermitian block, values descending.
fn solve_dense(h: &DMatrix<Complex64>) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    let n = h.nrows();
    let is_real = h.iter().all(|z| z.im == 0.0);
    let (values, vectors) = if is_real {
        let a = Mat::<f64>::from_fn(n, n, |i, j| 0.5 * (h[(i, j)].re + h[(j, i)].re));
        let evd = a
            .self_adjoint_eigen(Side::Lower)
            .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
        let s = evd.S().column_vector();
        let u = evd.U();
        let values: Vec<f64> = (0..n).rev().map(|k| s[k]).collect();
        let vectors = DMatrix::from_fn(n, n, |i, k| Complex64::new(u[(i, n - 1 - k)], 0.0));
        (values, vectors)
    } else {
        let a = Mat::<Complex64>::from_fn(n, n, |i, j| 0.5 * (h[(i, j)] + h[(j, i)].conj()));
        let evd = a
            .self_adjoint_eigen(Side::Lower)
            .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
        let s = evd.S().column_vector();
        let u = evd.U();
        let values: Vec<f64> = (0..n).rev().map(|k| s[k].re).collect();
        let vectors = DMatrix::from_fn(n, n, |i, k| u[(i, n - 1 - k)]);
        (values, vectors)
    };
    Ok((values, vectors))
}

/// Index sets of the connected components of the nonzero pattern, each
/// sorted ascending and ordered by their smallest index.
fn connected_blocks(h: &DMatrix<Complex64>) -> Vec<Vec<usize>> {
    let n = h.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for j in 0..n {
        for i in (j + 1)..n {
            if h[(i, j)] != Complex64::new(0.0, 0.0) || h[(j, i)] != Complex64::new(0.0, 0.0) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[root]].push(i);
    }
    blocks
}
