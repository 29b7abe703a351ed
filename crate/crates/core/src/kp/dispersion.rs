//! Band energies along a wavevector path with overlap-based band tracking.

use super::{build_h8, CVector8, SpinorState, Wavevector};
use crate::elasticity::StrainState;
use crate::materials::MaterialParams;
use crate::Result;

/// One row of energies per wavevector; column `b` follows the same band
/// along the path.
#[derive(Debug, Clone)]
pub struct DispersionTable {
    pub kpoints: Vec<Wavevector>,
    pub energies: Vec<[f64; 8]>,
}

impl DispersionTable {
    /// Energies of one tracked band along the path.
    pub fn band(&self, b: usize) -> Vec<f64> {
        self.energies.iter().map(|row| row[b]).collect()
    }
}

/// `n` equally spaced points from `from` to `to`, both included.
pub fn line_path(from: Wavevector, to: Wavevector, n: usize) -> Vec<Wavevector> {
    let denom = (n.max(2) - 1) as f64;
    (0..n)
        .map(|i| {
            let t = i as f64 / denom;
            Wavevector::new(
                from.kx + t * (to.kx - from.kx),
                from.ky + t * (to.ky - from.ky),
                from.kz + t * (to.kz - from.kz),
            )
        })
        .collect()
}

/// Solves the 8×8 Hamiltonian along `path`.
///
/// Bands are ordered by energy at the first point; afterwards each band is
/// continued by the eigenvector with the largest overlap with its previous
/// state (greedy assignment).
pub fn dispersion(path: &[Wavevector], strain: &StrainState, params: &MaterialParams) -> Result<DispersionTable> {
    let mut energies = Vec::with_capacity(path.len());
    let mut previous: Option<Vec<CVector8>> = None;
    for k in path {
        let states = build_h8(k, strain, params).eigenstates()?;
        let order = match &previous {
            None => (0..8).collect::<Vec<_>>(),
            Some(prev) => assign_by_overlap(prev, &states),
        };
        let mut row = [0.0; 8];
        let mut tracked = Vec::with_capacity(8);
        for (b, &src) in order.iter().enumerate() {
            row[b] = states[src].energy;
            tracked.push(states[src].coefficients);
        }
        energies.push(row);
        previous = Some(tracked);
    }
    Ok(DispersionTable {
        kpoints: path.to_vec(),
        energies,
    })
}

/// `order[b]` = index into `new` continuing band `b`.
fn assign_by_overlap(prev: &[CVector8], new: &[SpinorState]) -> Vec<usize> {
    let n = prev.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for (b, p) in prev.iter().enumerate() {
        for (j, s) in new.iter().enumerate() {
            pairs.push((p.dotc(&s.coefficients).norm_sqr(), b, j));
        }
    }
    // stable on ties: larger overlap first, then lower indices
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut order = vec![usize::MAX; n];
    let mut taken = vec![false; new.len()];
    for (_, b, j) in pairs {
        if order[b] == usize::MAX && !taken[j] {
            order[b] = j;
            taken[j] = true;
        }
    }
    order
}
