//! The computations behind each subcommand.

use std::fmt;

use anyhow::{Context, Result};
use zerorange_core::angular::efimov_constant;
use zerorange_core::potential::trace_potential;
use zerorange_core::radial::{solve_bound_states, thomas_spectrum};
use zerorange_core::{AngularProblem, EffectivePotential, NuBranch, RadialSolution, UnitSystem};

use crate::config::RunConfig;
use crate::output::{Provenance, SolveReport, StateRecord, Table};

/// A computation that ran but could not deliver the requested result.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverFailure(pub String);

impl fmt::Display for SolverFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SolverFailure {}

fn provenance(command: &'static str, cfg: &RunConfig) -> Provenance {
    Provenance::new(command, Some(cfg.sha256.clone()))
}

/// Angular branch over the configured grid and the potential built from it.
pub fn adiabatic_potential(cfg: &RunConfig) -> Result<(AngularProblem, NuBranch, EffectivePotential)> {
    let problem = AngularProblem::new(cfg.system, cfg.solver.regularized);
    let (branch, potential) = trace_potential(&problem, &cfg.grid.nodes(), cfg.solver.q_convention)
        .context("tracing the lowest angular eigenvalue")?;
    Ok((problem, branch, potential))
}

pub fn bound_states(cfg: &RunConfig) -> Result<(EffectivePotential, Vec<RadialSolution>)> {
    let (_, _, potential) = adiabatic_potential(cfg)?;
    let states = solve_bound_states(&potential, &cfg.radial_grid(), cfg.solver.max_states)
        .context("solving the hyper-radial equation")?;
    Ok((potential, states))
}

/// `rho_au, nu2, lambda, W_au` at every grid node.
pub fn eigenvalue(cfg: &RunConfig) -> Result<Table> {
    let (_, branch, potential) = adiabatic_potential(cfg)?;
    let mut table = Table::new(provenance("eigenvalue", cfg), vec!["rho_au", "nu2", "lambda", "W_au"]);
    for (k, (rho, u)) in branch.rho().iter().zip(branch.u()).enumerate() {
        table.push(vec![Some(*rho), Some(*u), Some(u - 4.0), Some(potential.w()[k])]);
    }
    Ok(table)
}

pub fn solve(cfg: &RunConfig) -> Result<SolveReport> {
    let (potential, states) = bound_states(cfg)?;
    let units = cfg.system.units();
    let to_mk = |eps: f64| units.hartree_to_mk(units.energy_from_reduced(eps));
    Ok(SolveReport {
        provenance: provenance("solve", cfg),
        system: cfg.name.clone(),
        q_convention: cfg.solver.q_convention.as_str(),
        states: states
            .iter()
            .map(|s| StateRecord {
                e_mk: s.energy_mk,
                e_hartree: s.energy,
                nodes: s.node_count,
                match_residual: s.match_residual,
            })
            .collect(),
        threshold_mk: (potential.threshold() < 0.0).then(|| to_mk(potential.threshold())),
        continuum_threshold_mk: to_mk(potential.model_threshold()),
    })
}

/// Shape parameters `p_min, p_min + p_step, ...` up to `p_max` inclusive.
pub fn p_values(p_min: f64, p_max: f64, p_step: f64) -> Result<Vec<f64>> {
    if !(p_min.is_finite() && p_max.is_finite() && p_max >= p_min) {
        anyhow::bail!("need finite p_min <= p_max");
    }
    if p_max == p_min {
        return Ok(vec![p_min]);
    }
    if !(p_step > 0.0) {
        anyhow::bail!("p_step must be positive");
    }
    let count = ((p_max - p_min) / p_step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| p_min + k as f64 * p_step).collect())
}

/// `P, E0_mK, E1_mK` with the same shape parameter on every pair.
pub fn scan_p(cfg: &RunConfig, p_min: f64, p_max: f64, p_step: f64) -> Result<Table> {
    let values = p_values(p_min, p_max, p_step)?;
    let mut table = Table::new(provenance("scan-p", cfg), vec!["P", "E0_mK", "E1_mK"]);
    for p in values {
        let mut point = cfg.clone();
        point.system = cfg
            .system
            .with_shape(p)
            .with_context(|| format!("shape parameter {p}"))?;
        let (_, states) = bound_states(&point).with_context(|| format!("P = {p}"))?;
        let energy = |n: usize| states.get(n).map(|s| s.energy_mk);
        table.push(vec![Some(p), energy(0), energy(1)]);
    }
    Ok(table)
}

/// `n, E_mK, E_hartree, ratio` for the bare unitary spectrum between hard walls.
pub fn thomas_demo(g: Option<f64>, cutoff: f64, outer: f64, units: &UnitSystem, sha256: Option<String>) -> Result<Table> {
    let g = g.unwrap_or_else(efimov_constant);
    let spectrum = thomas_spectrum(g, cutoff, outer, units).context("Thomas spectrum")?;
    let mut table = Table::new(
        Provenance::new("thomas-demo", sha256),
        vec!["n", "E_mK", "E_hartree", "ratio"],
    );
    for (n, e) in spectrum.energies.iter().enumerate() {
        table.push(vec![
            Some(n as f64),
            Some(units.hartree_to_mk(*e)),
            Some(*e),
            spectrum.ratios.get(n).copied(),
        ]);
    }
    Ok(table)
}

/// `rho_au, f` for bound state `state`, with `max |f| = 1`.
pub fn wavefunction(cfg: &RunConfig, state: usize) -> Result<Table> {
    let (_, states) = bound_states(cfg)?;
    let s = states.get(state).ok_or_else(|| {
        SolverFailure(format!(
            "state {state} requested but only {} bound states were found",
            states.len()
        ))
    })?;
    let mut table = Table::new(provenance("wavefunction", cfg), vec!["rho_au", "f"]);
    for (r, f) in s.rho.iter().zip(&s.f) {
        table.push(vec![Some(*r), Some(*f)]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_grid() {
        let v = p_values(0.10, 0.16, 0.005).unwrap();
        assert_eq!(v.len(), 13);
        assert!((v[12] - 0.16).abs() < 1e-12);
        assert_eq!(p_values(0.13, 0.13, 0.0).unwrap(), vec![0.13]);
        assert!(p_values(0.2, 0.1, 0.01).is_err());
        assert!(p_values(0.1, 0.2, 0.0).is_err());
    }

    #[test]
    fn single_point_scan_has_one_row() {
        let cfg = RunConfig::load("he4_trimer").unwrap();
        let t = scan_p(&cfg, 0.13, 0.13, 0.005).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0][0], Some(0.13));
    }

    #[test]
    fn eigenvalue_rows_match_grid() {
        let cfg = RunConfig::load("he4_trimer").unwrap();
        let t = eigenvalue(&cfg).unwrap();
        assert_eq!(t.rows.len(), cfg.grid.n);
        assert!((t.rows[0][2].unwrap() + 4.0).abs() < 0.05);
    }

    #[test]
    fn missing_state_is_a_solver_failure() {
        let cfg = RunConfig::load("he4he4he3").unwrap();
        let err = wavefunction(&cfg, 3).unwrap_err();
        assert!(err.downcast_ref::<SolverFailure>().is_some());
    }
}
