use crate::{Error, Result};

/// Smallest admissible number of interior grid nodes.
pub const MIN_GRID_POINTS: usize = 51;

/// A GaAs well of width `well_nm` between two AlGaAs barriers of width
/// `barrier_nm`, sampled on `grid_points` interior nodes with hard walls at
/// both outer edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QwGeometry {
    well_nm: f64,
    barrier_nm: f64,
    al_fraction: f64,
    grid_points: usize,
}

impl QwGeometry {
    pub fn new(well_nm: f64, barrier_nm: f64, al_fraction: f64, grid_points: usize) -> Result<Self> {
        if !(well_nm > 0.0 && well_nm.is_finite()) {
            return Err(Error::Geometry(format!("well thickness {well_nm} nm must be positive")));
        }
        if !(barrier_nm >= 0.0 && barrier_nm.is_finite()) {
            return Err(Error::Geometry(format!("barrier thickness {barrier_nm} nm must be nonnegative")));
        }
        if !(0.0..=1.0).contains(&al_fraction) {
            return Err(Error::Composition(al_fraction));
        }
        if grid_points < MIN_GRID_POINTS || grid_points.is_multiple_of(2) {
            return Err(Error::Geometry(format!(
                "grid needs an odd number of at least {MIN_GRID_POINTS} points, got {grid_points}"
            )));
        }
        Ok(Self {
            well_nm,
            barrier_nm,
            al_fraction,
            grid_points,
        })
    }

    /// 20 nm Al(0.4)Ga(0.6)As barriers on 201 nodes.
    pub fn with_defaults(well_nm: f64) -> Result<Self> {
        Self::new(well_nm, 20.0, 0.4, 201)
    }

    pub fn well_nm(&self) -> f64 {
        self.well_nm
    }

    pub fn barrier_nm(&self) -> f64 {
        self.barrier_nm
    }

    pub fn al_fraction(&self) -> f64 {
        self.al_fraction
    }

    pub fn grid_points(&self) -> usize {
        self.grid_points
    }

    pub fn total_length(&self) -> f64 {
        self.well_nm + 2.0 * self.barrier_nm
    }

    /// Node spacing; the walls sit one spacing outside the first and last node.
    pub fn spacing(&self) -> f64 {
        self.total_length() / (self.grid_points + 1) as f64
    }

    /// Position of node `i`, measured from the left wall.
    pub fn node(&self, i: usize) -> f64 {
        (i + 1) as f64 * self.spacing()
    }

    /// The same stack on the nested grid with every spacing halved.
    pub fn refined(&self) -> Self {
        Self {
            grid_points: 2 * self.grid_points + 1,
            ..*self
        }
    }

    /// Fraction of the cell around node `i` that lies inside the well.
    pub fn well_fraction(&self, i: usize) -> f64 {
        let h = self.spacing();
        let (lo, hi) = (self.node(i) - 0.5 * h, self.node(i) + 0.5 * h);
        let (wl, wr) = (self.barrier_nm, self.barrier_nm + self.well_nm);
        if lo >= wl && hi <= wr {
            1.0
        } else if hi <= wl || lo >= wr {
            0.0
        } else {
            ((hi.min(wr) - lo.max(wl)) / h).clamp(0.0, 1.0)
        }
    }

    /// Whether node `i` lies within `margin_nm` of the well.
    pub fn near_well(&self, i: usize, margin_nm: f64) -> bool {
        let z = self.node(i);
        z >= self.barrier_nm - margin_nm && z <= self.barrier_nm + self.well_nm + margin_nm
    }
}
