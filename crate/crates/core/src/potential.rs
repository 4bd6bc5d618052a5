//! Effective hyper-radial potential built from the lowest angular eigenvalue.
//!
//! The hyper-radial equation reads `-f'' + W(rho) f = 2 m E f` with
//! `W = (lambda + 15/4) / rho^2 - Q(rho)`. Only the leading term
//! `Q ~ -1/(4 rho^2)` of the diagonal coupling is kept, which gives
//! `W = u / rho^2`; dropping `Q` altogether gives `W = (u - 1/4) / rho^2`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::angular::{AngularProblem, NuBranch};
use crate::error::{Error, Result};
use crate::interp::Pchip;
use crate::system::{dimer_pole_momentum, PairParams};
use crate::units::UnitSystem;

/// `16 sqrt(3) / pi`.
const YUKAWA_STRENGTH: f64 = 8.821_262_326_748_673;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QConvention {
    /// `Q(rho) = -1/(4 rho^2)`: `W = u / rho^2`.
    #[default]
    LeadingTerm,
    /// `Q(rho) = 0`: `W = (u - 1/4) / rho^2`.
    None,
}

impl QConvention {
    fn shift(self) -> f64 {
        match self {
            QConvention::LeadingTerm => 0.0,
            QConvention::None => 0.25,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            QConvention::LeadingTerm => "leading_term",
            QConvention::None => "none",
        }
    }
}

/// Deepest bound pair of the problem as `(pair, mu)`, judged by `1/(mu a^2)`.
fn deepest_dimer(problem: &AngularProblem) -> Option<(PairParams, f64)> {
    let mu = problem.kinematics().mu;
    problem
        .pairs()
        .iter()
        .zip(mu)
        .filter(|(p, _)| p.has_bound_dimer())
        .map(|(p, m)| (*p, m))
        .max_by(|(p1, m1), (p2, m2)| {
            let b1 = 1.0 / (m1 * p1.scattering_length * p1.scattering_length);
            let b2 = 1.0 / (m2 * p2.scattering_length * p2.scattering_length);
            b1.total_cmp(&b2)
        })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectivePotential {
    rho: Vec<f64>,
    w: Vec<f64>,
    threshold: f64,
    model_threshold: f64,
    dimer: Option<(PairParams, f64)>,
    q_convention: QConvention,
    units: UnitSystem,
    reduced: Pchip,
}

impl EffectivePotential {
    /// Hyper-radial grid in Bohr radii.
    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    /// Potential samples in inverse squared Bohr radii.
    pub fn w(&self) -> &[f64] {
        &self.w
    }

    /// `-2 m B` with `B = 1/(2 mu m a^2)` of the deepest bound pair, or zero.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Large-`rho` limit of `W`: `-kappa^2 / mu` at the dimer pole of the full
    /// boundary condition. Equal to [`Self::threshold`] for bare interactions.
    pub fn model_threshold(&self) -> f64 {
        self.model_threshold
    }

    /// Range `b = 3 sqrt(mu) |a| / pi` of the Yukawa tail, when a dimer exists.
    pub fn yukawa_range(&self) -> Option<f64> {
        self.dimer
            .map(|(p, mu)| 3.0 * libm::sqrt(mu) * libm::fabs(p.scattering_length) / PI)
    }

    pub fn q_convention(&self) -> QConvention {
        self.q_convention
    }

    pub fn units(&self) -> UnitSystem {
        self.units
    }

    pub fn min_value(&self) -> f64 {
        self.w.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `W(rho)` anywhere on `(0, inf)`.
    ///
    /// Between nodes `rho^2 W` is interpolated as a monotone cubic in `ln rho`.
    /// Below the first node `W` follows the power law through the first two
    /// nodes (never steeper than `rho^-2`); beyond the last node it follows the
    /// Yukawa tail shifted to match the last node, or `rho^-2` without a dimer.
    pub fn value_at(&self, rho: f64) -> f64 {
        let n = self.rho.len();
        let (first, last) = (self.rho[0], self.rho[n - 1]);
        if rho < first {
            let w0 = self.w[0];
            if n >= 2 && first > 0.0 && w0 != 0.0 && self.w[1] != 0.0 && w0.signum() == self.w[1].signum() {
                let p = libm::log(self.w[1] / w0) / libm::log(self.rho[1] / first);
                return w0 * libm::pow(rho / first, p.max(-2.0));
            }
            return w0 * (first / rho) * (first / rho);
        }
        if rho > last {
            let w_last = self.w[n - 1];
            return match self.dimer {
                Some((pair, mu)) => {
                    let shift = self.q_convention.shift();
                    let tail = |r: f64| {
                        yukawa_tail(r, &pair, mu).unwrap_or(0.0) + (0.25 - shift) / (r * r)
                    };
                    tail(rho) + (w_last - tail(last))
                }
                None => w_last * (last / rho) * (last / rho),
            };
        }
        if n == 1 {
            return self.w[0];
        }
        self.reduced.eval(libm::log(rho)) / (rho * rho) - self.q_convention.shift() / (rho * rho)
    }
}

/// Builds `W` from a traced branch.
pub fn effective_potential(
    branch: &NuBranch,
    problem: &AngularProblem,
    q_convention: QConvention,
) -> Result<EffectivePotential> {
    if branch.is_empty() {
        return Err(Error::InvalidParameter {
            name: "branch",
            reason: "branch must not be empty",
        });
    }
    if branch.rho()[0] <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "branch",
            reason: "the effective potential needs rho > 0 at every node",
        });
    }
    let shift = q_convention.shift();
    let rho = branch.rho().to_vec();
    let w: Vec<f64> = rho
        .iter()
        .zip(branch.u())
        .map(|(r, u)| (u - shift) / (r * r))
        .collect();

    let dimer = deepest_dimer(problem);
    let threshold = dimer
        .map(|(p, mu)| -1.0 / (mu * p.scattering_length * p.scattering_length))
        .unwrap_or(0.0);
    let model_threshold = problem
        .pairs()
        .iter()
        .zip(problem.kinematics().mu)
        .filter_map(|(p, mu)| dimer_pole_momentum(p).map(|k| -k * k / mu))
        .fold(0.0, f64::min);

    let reduced = Pchip::new(
        rho.iter().map(|r| libm::log(*r)).collect(),
        branch.u().to_vec(),
    );
    Ok(EffectivePotential {
        rho,
        w,
        threshold,
        model_threshold,
        dimer,
        q_convention,
        units: problem.system().units(),
        reduced,
    })
}

/// Traces the lowest branch over `nodes` and builds `W` from it.
pub fn trace_potential(
    problem: &AngularProblem,
    nodes: &[f64],
    q_convention: QConvention,
) -> Result<(NuBranch, EffectivePotential)> {
    let branch = problem.trace_branch(nodes)?;
    let potential = effective_potential(&branch, problem, q_convention)?;
    Ok((branch, potential))
}

/// Large-`rho` form `(lambda + 15/4)/rho^2` for an atom and a bound dimer:
/// `-1/(mu a^2) - 1/(4 rho^2) - (16 sqrt 3/pi) exp(-rho/b) / (b rho)`.
pub fn yukawa_tail(rho: f64, pair: &PairParams, mu: f64) -> Result<f64> {
    if !pair.has_bound_dimer() {
        return Err(Error::NoBoundDimer);
    }
    let a = pair.scattering_length;
    let b = 3.0 * libm::sqrt(mu) * libm::fabs(a) / PI;
    Ok(-1.0 / (mu * a * a) - 0.25 / (rho * rho) - YUKAWA_STRENGTH * libm::exp(-rho / b) / (b * rho))
}
