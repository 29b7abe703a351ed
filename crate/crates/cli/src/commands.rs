//! One function per subcommand. Each returns its tables in memory; writing
//! happens afterwards so a numerical failure never leaves partial output.

use kpstrain::axis::{mixing_curve, mixing_map, theta_grid, QuantizationAxis};
use kpstrain::elasticity::{actuator_strain, superpose, uniaxial_strain, ActuatorGeometry, StrainState};
use kpstrain::kp::{solve_bulk, Wavevector};
use kpstrain::optics::{dipole_sweep, dlp_and_angle, doublet_density};
use kpstrain::qw::{qw_mixing_vs_strain, transition_energy, transition_sweep, TransitionModel};

use crate::config::{thickness_label, Resolved};
use crate::error::{CliError, CliResult};
use crate::output::{format_number, Table};

fn uniaxial_on(prestress: &StrainState, stress_gpa: f64, r: &Resolved) -> CliResult<StrainState> {
    Ok(superpose(prestress, &uniaxial_strain(stress_gpa, &r.params.elastic())?)?)
}

/// Bulk HGS projections onto the z and x axes.
pub fn cmd_mixing_curve(r: &Resolved) -> CliResult<Vec<Table>> {
    let stresses = r.sweep.values();
    [("mixing_z", QuantizationAxis::z()), ("mixing_x", QuantizationAxis::x())]
        .into_iter()
        .map(|(name, axis)| {
            let curve = mixing_curve(&stresses, &r.prestress, &axis, &r.params, r.abscissa)?;
            let mut t = Table::new(name, &["strain_xx", "p_hh", "p_lh", "p_so"]);
            for row in curve.rows {
                let p = row.projection;
                t.push(vec![row.strain_xx.into(), p.p_hh.into(), p.p_lh.into(), p.p_so.into()]);
            }
            Ok(t)
        })
        .collect()
}

/// HH projection over polar angle and stress, one row per grid point.
pub fn cmd_mixing_map(r: &Resolved) -> CliResult<Vec<Table>> {
    let thetas = theta_grid(r.theta_steps);
    let map = mixing_map(&thetas, r.phi, &r.sweep.values(), &r.prestress, &r.params, r.abscissa)?;
    let mut t = Table::new("mixing_map", &["stress_gpa", "strain_xx", "theta_deg", "p_hh"]);
    for (s, row) in map.p_hh.iter().enumerate() {
        for (&theta, &p) in thetas.iter().zip(row) {
            t.push(vec![
                map.stresses_gpa[s].into(),
                map.strains_xx[s].into(),
                theta.to_degrees().into(),
                p.into(),
            ]);
        }
    }
    Ok(vec![t])
}

/// Quantum-well mixing per thickness plus the emulated transition curve.
pub fn cmd_qw(r: &Resolved) -> CliResult<Vec<Table>> {
    let stresses = r.sweep.values();
    let axes = [QuantizationAxis::z(), QuantizationAxis::x()];
    let curves = qw_mixing_vs_strain(
        &r.qw_thicknesses_nm,
        &r.qw_template,
        &stresses,
        &r.qw_prestress,
        &axes,
        &r.qw_materials,
    )?;
    let well = &r.qw_materials.well;
    let mut tables = Vec::with_capacity(curves.len() + 1);
    for curve in curves {
        let mut t = Table::new(
            format!("qw_mixing_{}", thickness_label(curve.well_nm)),
            &[
                "stress_gpa",
                "strain_xx",
                "hgs_energy_ev",
                "transition_energy_ev",
                "p_hh_z",
                "p_lh_z",
                "p_so_z",
                "p_hh_x",
                "p_lh_x",
                "p_so_x",
                "converged",
            ],
        );
        for row in curve.rows {
            let strain = uniaxial_on(&r.qw_prestress, row.stress_gpa, r)?;
            let cb = well.vb_top() + well.band_gap + well.ac * strain.trace();
            let (z, x) = (row.projections[0], row.projections[1]);
            t.push(vec![
                row.stress_gpa.into(),
                row.strain_xx.into(),
                row.hgs_energy.into(),
                (cb - row.hgs_energy).into(),
                z.p_hh.into(),
                z.p_lh.into(),
                z.p_so.into(),
                x.p_hh.into(),
                x.p_lh.into(),
                x.p_so.into(),
                row.converged.into(),
            ]);
        }
        tables.push(t);
    }

    let model = TransitionModel::Emulated(r.emulation);
    let reference = transition_energy(&model, &r.emulation_prestress, &r.qw_materials)?;
    let rows = transition_sweep(&model, &stresses, &r.emulation_prestress, &r.qw_materials)?;
    let mut t = Table::new("transition_emulated", &["stress_gpa", "strain_xx", "energy_ev", "shift_mev"]);
    for row in rows {
        t.push(vec![
            row.stress_gpa.into(),
            row.strain_xx.into(),
            row.energy.into(),
            ((row.energy - reference) * 1e3).into(),
        ]);
    }
    tables.push(t);
    Ok(tables)
}

/// Transition strengths, rates, in-plane polarization and optional angular
/// densities of the bulk hole ground state.
pub fn cmd_dipoles(r: &Resolved) -> CliResult<Vec<Table>> {
    let rows = dipole_sweep(&r.sweep.values(), &r.prestress, &r.params, &r.calibration)?;
    let mut dip = Table::new(
        "dipoles",
        &["strain_xx", "s_x", "s_y", "s_z", "r_x_ghz", "r_y_ghz", "r_z_ghz"],
    );
    let mut pol = Table::new("polarization", &["strain_xx", "dlp", "angle_deg", "tie"]);
    for row in &rows {
        let s = row.strengths;
        let rates = s.rates.expect("dipole_sweep fills rates");
        dip.push(vec![
            row.strain_xx.into(),
            s.s_x.into(),
            s.s_y.into(),
            s.s_z.into(),
            rates.r_x.into(),
            rates.r_y.into(),
            rates.r_z.into(),
        ]);
        let p = dlp_and_angle(&s, r.collection);
        pol.push(vec![row.strain_xx.into(), p.degree.into(), p.angle_deg.into(), p.tie.into()]);
    }
    let mut tables = vec![dip, pol];
    for &stress in &r.density_stress_gpa {
        let strain = uniaxial_on(&r.prestress, stress, r)?;
        let spectrum = solve_bulk(&Wavevector::gamma(), &strain, &r.params)?;
        let density = doublet_density(spectrum.hgs_doublet(), &r.density_grid).normalized();
        let mut t = Table::new(density_name(stress), &["theta_rad", "phi_rad", "density"]);
        for (theta, phi, v) in density.samples() {
            t.push(vec![theta.into(), phi.into(), v.into()]);
        }
        tables.push(t);
    }
    Ok(tables)
}

/// File stem of an angular-density snapshot, e.g. `density_-2gpa`.
pub fn density_name(stress_gpa: f64) -> String {
    let s = if stress_gpa == 0.0 { 0.0 } else { stress_gpa };
    format!("density_{s}gpa")
}

/// Membrane strain for the given actuator, formatted like the tables.
pub fn cmd_amplify(length_mm: f64, gap_um: f64, piezo_strain: f64) -> CliResult<String> {
    if !piezo_strain.is_finite() {
        return Err(CliError::Config("piezo strain must be finite".into()));
    }
    let g = ActuatorGeometry::new(length_mm, gap_um).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(format_number(actuator_strain(&g, piezo_strain)))
}
