//! Hyperangular eigenvalue condition for zero-range interactions and the
//! continuation of its lowest root `u = nu^2` over the hyper-radius.
//!
//! Every row of the boundary-condition matrix is divided by `sin(nu pi / 2)`, so
//! all quantities depend on `nu` only through `u`. For `u < 0` we write
//! `nu = i kappa` and use the hyperbolic forms directly; no complex arithmetic is
//! needed. The normalization introduces poles at `u = (2n)^2`, which are kept out
//! of every bracket by a guard band.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use crate::error::{Error, Result};
use crate::roots::brent;
use crate::system::{reduced_masses, KinematicConstants, PairParams, ParticleSystem};

/// Half-width of the excluded band around each pole `u = (2n)^2`, `n >= 1`.
pub const POLE_GUARD: f64 = 1e-6;

/// Residual tolerance, relative to the magnitude of the terms in the condition.
pub const TOL_RESIDUAL: f64 = 1e-10;

const MAX_HALVINGS: u32 = 12;

/// `8 / sqrt(3)`.
const EIGHT_OVER_SQRT3: f64 = 4.618_802_153_517_007;

fn check_pole(u: f64) -> Result<()> {
    if u > 0.0 {
        let n = libm::round(0.5 * libm::sqrt(u));
        if n >= 1.0 && libm::fabs(u - 4.0 * n * n) <= POLE_GUARD {
            return Err(Error::PoleProximity { u });
        }
    }
    Ok(())
}

/// `sinh(kappa x) / sinh(kappa y)` for `0 <= x <= y`, `kappa > 0`, without
/// overflow at large `kappa`.
fn sinh_ratio(kappa: f64, x: f64, y: f64) -> f64 {
    libm::exp(-kappa * (y - x)) * libm::expm1(-2.0 * kappa * x) / libm::expm1(-2.0 * kappa * y)
}

/// `C(u) = nu cos(nu pi/2) / sin(nu pi/2)`.
pub fn nu_cot_half_pi(u: f64) -> Result<f64> {
    check_pole(u)?;
    if u > 0.0 {
        let nu = libm::sqrt(u);
        Ok(nu / libm::tan(nu * FRAC_PI_2))
    } else if u < 0.0 {
        let kappa = libm::sqrt(-u);
        Ok(kappa / libm::tanh(kappa * FRAC_PI_2))
    } else {
        Ok(2.0 / PI)
    }
}

/// `S(u, phi) = sin(nu (phi - pi/2)) / sin(nu pi/2)` for `0 < phi < pi/2`.
pub fn sin_ratio(u: f64, phi: f64) -> Result<f64> {
    check_pole(u)?;
    if u > 0.0 {
        let nu = libm::sqrt(u);
        Ok(libm::sin(nu * (phi - FRAC_PI_2)) / libm::sin(nu * FRAC_PI_2))
    } else if u < 0.0 {
        let kappa = libm::sqrt(-u);
        Ok(-sinh_ratio(kappa, FRAC_PI_2 - phi, FRAC_PI_2))
    } else {
        Ok((phi - FRAC_PI_2) / FRAC_PI_2)
    }
}

/// Left-hand side of the identical-boson condition,
/// `-C(u) + (8/sqrt 3) sin(nu pi/6) / sin(nu pi/2)`.
pub fn boson_kernel(u: f64) -> Result<f64> {
    // sin(nu pi/6) = -sin(nu (pi/3 - pi/2))
    Ok(-nu_cot_half_pi(u)? - EIGHT_OVER_SQRT3 * sin_ratio(u, FRAC_PI_3)?)
}

/// `(rho / sqrt(mu)) [1/a + R k^2/2 + P R^3 k^4]` with `k^2 = mu u / rho^2`.
fn boundary_term(u: f64, rho: f64, pair: &PairParams, mu: f64) -> Result<f64> {
    if rho == 0.0 {
        if !pair.is_regularized() {
            return Ok(0.0);
        }
        return Err(Error::InvalidParameter {
            name: "rho",
            reason: "rho = 0 with a regularized interaction is only defined at u = 0",
        });
    }
    let s = libm::sqrt(mu);
    let r = pair.effective_range;
    Ok(rho * pair.inverse_scattering_length() / s
        + 0.5 * r * s * u / rho
        + pair.shape * r * r * r * s * s * s * u * u / (rho * rho * rho))
}

/// Residual of the identical-boson condition; zero exactly at an eigenvalue.
pub fn boson_residual(u: f64, rho: f64, pair: &PairParams, mu: f64) -> Result<f64> {
    if rho < 0.0 {
        return Err(Error::InvalidParameter {
            name: "rho",
            reason: "hyper-radius must be non-negative",
        });
    }
    if rho == 0.0 && pair.is_regularized() && u == 0.0 {
        // The extended condition has the root nu(0) = 0.
        return Ok(0.0);
    }
    Ok(boson_kernel(u)? - boundary_term(u, rho, pair, mu)?)
}

pub type Matrix3 = [[f64; 3]; 3];

pub fn det3(m: &Matrix3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Where the lowest branch at the first grid node was taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchSeed {
    /// Regularized interactions: the branch starts from `u = 0` at the origin.
    ZeroAtOrigin,
    /// Bare unitary interactions: the scale-free root `u = -g^2`.
    EfimovRoot,
    /// Most negative root found by scanning the search window.
    Scanned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticBranch {
    /// `nu -> 2`, no bound dimer.
    Free,
    /// `nu ~ i rho`, atom plus bound dimer.
    Bound,
}

/// The hyperangular eigenvalue problem for a fixed particle system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularProblem {
    system: ParticleSystem,
    kinematics: KinematicConstants,
    regularized: bool,
    pairs: [PairParams; 3],
}

impl AngularProblem {
    /// With `regularized = false` the effective range and shape terms are dropped.
    pub fn new(system: ParticleSystem, regularized: bool) -> Self {
        let pairs = if regularized {
            system.pairs()
        } else {
            system.pairs().map(|p| p.bare())
        };
        AngularProblem {
            system,
            kinematics: reduced_masses(&system),
            regularized,
            pairs,
        }
    }

    pub fn system(&self) -> &ParticleSystem {
        &self.system
    }

    pub fn kinematics(&self) -> &KinematicConstants {
        &self.kinematics
    }

    pub fn is_regularized(&self) -> bool {
        self.regularized && self.pairs.iter().any(PairParams::is_regularized)
    }

    /// Pair parameters as they enter the condition.
    pub fn pairs(&self) -> &[PairParams; 3] {
        &self.pairs
    }

    pub fn is_identical_bosons(&self) -> bool {
        self.system.is_identical_bosons()
    }

    fn is_unitary(&self) -> bool {
        self.pairs
            .iter()
            .all(|p| p.inverse_scattering_length() == 0.0 && !p.is_regularized())
    }

    /// Boundary-condition matrix with every row divided by `sin(nu pi/2)`.
    pub fn build_matrix(&self, u: f64, rho: f64) -> Result<Matrix3> {
        let c = nu_cot_half_pi(u)?;
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            m[i][i] = c + boundary_term(u, rho, &self.pairs[i], self.kinematics.mu[i])?;
            for j in 0..3 {
                if i != j {
                    let phi = self.kinematics.phi[i][j];
                    m[i][j] = 2.0 * sin_ratio(u, phi)? / libm::sin(2.0 * phi);
                }
            }
        }
        Ok(m)
    }

    /// Residual whose zeros are the eigenvalues: the symmetric boson condition
    /// for identical bosons, otherwise the determinant.
    pub fn residual(&self, u: f64, rho: f64) -> Result<f64> {
        if self.is_identical_bosons() {
            boson_residual(u, rho, &self.pairs[0], self.kinematics.mu[0])
        } else {
            if rho == 0.0 && self.is_regularized() && u == 0.0 {
                return Ok(0.0);
            }
            Ok(det3(&self.build_matrix(u, rho)?))
        }
    }

    /// Magnitude of the terms entering [`Self::residual`] at `(u, rho)`, used to
    /// judge a residual as converged.
    pub fn residual_scale(&self, u: f64, rho: f64) -> Result<f64> {
        if rho == 0.0 && self.is_regularized() {
            return Ok(1.0);
        }
        if self.is_identical_bosons() {
            let pair = &self.pairs[0];
            let mu = self.kinematics.mu[0];
            let s = libm::sqrt(mu);
            let r = pair.effective_range;
            let terms = libm::fabs(nu_cot_half_pi(u)?)
                + EIGHT_OVER_SQRT3 * libm::fabs(sin_ratio(u, FRAC_PI_3)?)
                + libm::fabs(rho * pair.inverse_scattering_length() / s)
                + libm::fabs(0.5 * r * s * u / rho)
                + libm::fabs(pair.shape * r * r * r * s * s * s * u * u / (rho * rho * rho));
            Ok(terms.max(1.0))
        } else {
            // Hadamard bound on the determinant.
            let m = self.build_matrix(u, rho)?;
            let bound: f64 = m
                .iter()
                .map(|row| libm::sqrt(row.iter().map(|x| x * x).sum::<f64>()))
                .product();
            Ok(bound.max(1.0))
        }
    }

    /// Lower end of the window searched for the lowest root at `rho`.
    pub fn search_floor(&self, rho: f64) -> f64 {
        let inv = (0..3)
            .filter(|&i| self.pairs[i].has_bound_dimer())
            .map(|i| {
                libm::fabs(self.pairs[i].inverse_scattering_length())
                    / libm::sqrt(self.kinematics.mu[i])
            })
            .fold(0.0, f64::max);
        let edge = rho * inv + 20.0;
        -edge * edge
    }

    fn upper_cap() -> f64 {
        4.0 - 2.0 * POLE_GUARD
    }

    fn converge(&self, rho: f64, lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<f64> {
        let u = brent(
            |u| self.residual(u, rho),
            lo,
            hi,
            f_lo,
            f_hi,
            f64::MIN_POSITIVE,
        )
        .map_err(|e| match e {
            Error::NoSignChange { lower, upper, .. } => Error::NoSignChange { rho, lower, upper },
            other => other,
        })?;
        let res = self.residual(u, rho)?;
        let scale = self.residual_scale(u, rho)?;
        if libm::fabs(res) > TOL_RESIDUAL * scale {
            return Err(Error::NotConverged {
                what: "angular eigenvalue",
                iterations: 0,
            });
        }
        Ok(u)
    }

    /// Root nearest to `guess`, found by expanding a bracket around it starting
    /// from half-width `step`. When both sides change sign at the same width the
    /// lower root wins.
    fn solve_near(&self, rho: f64, guess: f64, step: f64) -> Result<f64> {
        let floor = self.search_floor(rho).min(guess);
        let cap = Self::upper_cap();
        let guess = guess.clamp(floor, cap);
        let f0 = self.residual(guess, rho)?;
        if f0 == 0.0 {
            return Ok(guess);
        }
        let mut step = step.max(1e-300);
        loop {
            let lo = (guess - step).max(floor);
            let hi = (guess + step).min(cap);
            let f_lo = self.residual(lo, rho)?;
            if f_lo.signum() != f0.signum() {
                return self.converge(rho, lo, guess, f_lo, f0);
            }
            if hi > guess {
                let f_hi = self.residual(hi, rho)?;
                if f_hi.signum() != f0.signum() {
                    return self.converge(rho, guess, hi, f0, f_hi);
                }
            }
            if lo <= floor && hi >= cap {
                return Err(Error::NoSignChange {
                    rho,
                    lower: floor,
                    upper: cap,
                });
            }
            step *= 2.0;
        }
    }

    /// Solves the eigenvalue condition at `rho` for the root closest to `guess`.
    pub fn solve_at_rho(&self, rho: f64, guess: f64) -> Result<f64> {
        let step = 1e-3 * libm::fabs(guess).max(1e-9);
        self.solve_near(rho, guess, step)
    }

    /// Most negative root in `[search_floor(rho), 4)`, located by a geometric
    /// scan toward `u = 0` and a linear scan of `(0, 4)`.
    pub fn lowest_root(&self, rho: f64) -> Result<f64> {
        let floor = self.search_floor(rho);
        let cap = Self::upper_cap();
        let mut nodes: Vec<f64> = Vec::with_capacity(1200);
        let decades = libm::log10(-floor) + 14.0;
        let n_neg = (decades * 48.0) as usize;
        for k in 0..=n_neg {
            nodes.push(floor * libm::pow(10.0, -(k as f64) * decades / n_neg as f64));
        }
        nodes.push(0.0);
        for k in 0..=40 {
            nodes.push(1e-14 * libm::pow(10.0, k as f64 * 13.0 / 40.0));
        }
        let n_pos = 200;
        for k in 1..=n_pos {
            nodes.push(0.1 + (cap - 0.1) * k as f64 / n_pos as f64);
        }

        let mut prev: Option<(f64, f64)> = None;
        for &u in &nodes {
            let f = match self.residual(u, rho) {
                Ok(f) => f,
                Err(Error::PoleProximity { .. }) => {
                    prev = None;
                    continue;
                }
                Err(e) => return Err(e),
            };
            if f == 0.0 {
                return Ok(u);
            }
            if let Some((u_prev, f_prev)) = prev {
                if f.signum() != f_prev.signum() {
                    return self.converge(rho, u_prev, u, f_prev, f);
                }
            }
            prev = Some((u, f));
        }
        Err(Error::NoSignChange {
            rho,
            lower: floor,
            upper: cap,
        })
    }

    fn seed_kind(&self) -> BranchSeed {
        if self.is_regularized() {
            BranchSeed::ZeroAtOrigin
        } else if self.is_unitary() {
            BranchSeed::EfimovRoot
        } else {
            BranchSeed::Scanned
        }
    }

    /// Root at the first node of a trace.
    fn first_root(&self, rho: f64) -> Result<(f64, BranchSeed)> {
        let seed = self.seed_kind();
        let u = match seed {
            BranchSeed::EfimovRoot => {
                let g = efimov_constant();
                self.solve_near(rho, -g * g, 1e-6)?
            }
            BranchSeed::ZeroAtOrigin if rho == 0.0 => 0.0,
            _ => self.lowest_root(rho)?,
        };
        Ok((u, seed))
    }

    /// Solves at `rho_b` starting from the root `u_a` at `rho_a`, halving the
    /// step when the root moves further than the extrapolation allows.
    fn advance(&self, rho_a: f64, u_a: f64, slope: Option<f64>, rho_b: f64, depth: u32) -> Result<f64> {
        let predicted = match slope {
            Some(s) => u_a + s * (rho_b - rho_a),
            None => u_a,
        };
        let guess = if predicted < Self::upper_cap() {
            predicted
        } else {
            u_a
        };
        let change = libm::fabs(guess - u_a);
        let step = (0.1 * change).max(1e-4 * libm::fabs(u_a)).max(1e-14);
        let bound = (0.5 * change).max(1e-3 * libm::fabs(u_a)).max(1e-10);
        match self.solve_near(rho_b, guess, step) {
            Ok(u) if libm::fabs(u - guess) <= bound => return Ok(u),
            Ok(_) | Err(Error::NoSignChange { .. }) | Err(Error::NotConverged { .. }) => {}
            Err(e) => return Err(e),
        }
        if depth >= MAX_HALVINGS {
            return Err(Error::ContinuationFailed { rho: rho_b });
        }
        let rho_m = 0.5 * (rho_a + rho_b);
        let u_m = self.advance(rho_a, u_a, slope, rho_m, depth + 1)?;
        let slope_m = (u_m - u_a) / (rho_m - rho_a);
        self.advance(rho_m, u_m, Some(slope_m), rho_b, depth + 1)
    }

    /// Traces the lowest branch over a strictly increasing grid.
    pub fn trace_branch(&self, grid: &[f64]) -> Result<NuBranch> {
        if grid.is_empty() {
            return Err(Error::InvalidParameter {
                name: "grid",
                reason: "grid must not be empty",
            });
        }
        if grid[0] < 0.0 || grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter {
                name: "grid",
                reason: "grid must be non-negative and strictly increasing",
            });
        }
        let (u0, seed) = self.first_root(grid[0])?;
        let mut u = Vec::with_capacity(grid.len());
        u.push(u0);
        let mut slope = None;
        for w in grid.windows(2) {
            let (rho_a, rho_b) = (w[0], w[1]);
            let u_a = *u.last().unwrap();
            let u_b = self.advance(rho_a, u_a, slope, rho_b, 0)?;
            slope = Some((u_b - u_a) / (rho_b - rho_a));
            u.push(u_b);
        }
        Ok(NuBranch {
            rho: grid.to_vec(),
            u,
            seed,
        })
    }
}

/// Lowest angular eigenvalue `u = nu^2` sampled on a hyper-radial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct NuBranch {
    rho: Vec<f64>,
    u: Vec<f64>,
    seed: BranchSeed,
}

impl NuBranch {
    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    /// `lambda = u - 4` at each node.
    pub fn lambda(&self) -> Vec<f64> {
        self.u.iter().map(|u| u - 4.0).collect()
    }

    pub fn seed(&self) -> BranchSeed {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    /// Largest node-to-node change of `u`.
    pub fn max_jump(&self) -> f64 {
        self.u
            .windows(2)
            .map(|w| libm::fabs(w[1] - w[0]))
            .fold(0.0, f64::max)
    }
}

/// `g cosh(g pi/2) - (8/sqrt 3) sinh(g pi/6)`; zero at the Efimov constant.
pub fn efimov_residual(g: f64) -> f64 {
    g * libm::cosh(g * FRAC_PI_2) - EIGHT_OVER_SQRT3 * libm::sinh(g * PI / 6.0)
}

/// Positive root `g` of the bare unitary condition, `nu_0 = i g`.
pub fn efimov_constant() -> f64 {
    let f = |g: f64| Ok(efimov_residual(g));
    brent(f, 0.5, 1.5, efimov_residual(0.5), efimov_residual(1.5), 1e-16)
        .expect("the Efimov root is bracketed by [0.5, 1.5]")
}

/// Large-`rho` expansion of the lowest root for a bare interaction.
pub fn nu2_asymptotic(rho: f64, pair: &PairParams, mu: f64, branch: AsymptoticBranch) -> f64 {
    let s = libm::sqrt(mu);
    let a = pair.scattering_length;
    match branch {
        AsymptoticBranch::Free => {
            let nu = 2.0 - (12.0 / PI) * s * a / rho;
            nu * nu
        }
        AsymptoticBranch::Bound => {
            let x = rho / (s * libm::fabs(a));
            let lambda = -x * x - x * 2.0 * EIGHT_OVER_SQRT3 * libm::exp(-x * PI / 3.0) - 4.0;
            lambda + 4.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::UnitSystem;

    const HE4: f64 = 4.002_603;

    fn he4_pair() -> PairParams {
        PairParams::new(-189.054, 13.843, 0.13).unwrap()
    }

    fn he4_problem(regularized: bool) -> AngularProblem {
        let sys = ParticleSystem::identical(HE4, he4_pair(), UnitSystem::default()).unwrap();
        AngularProblem::new(sys, regularized)
    }

    #[test]
    fn kernel_special_values() {
        assert!(nu_cot_half_pi(1.0).unwrap().abs() < 1e-15);
        assert!((nu_cot_half_pi(0.0).unwrap() - 2.0 / PI).abs() < 1e-15);
        let expect = 1.0 / (PI / 2.0).tanh();
        assert!((nu_cot_half_pi(-1.0).unwrap() - expect).abs() < 1e-14);
        assert!((nu_cot_half_pi(-1.0).unwrap() - 1.0903).abs() < 1e-4);
        // Continuity through u = 0 from both sides.
        assert!((nu_cot_half_pi(1e-12).unwrap() - 2.0 / PI).abs() < 1e-10);
        assert!((nu_cot_half_pi(-1e-12).unwrap() - 2.0 / PI).abs() < 1e-10);
    }

    #[test]
    fn sin_ratio_special_values() {
        assert!((sin_ratio(0.0, FRAC_PI_3).unwrap() + 1.0 / 3.0).abs() < 1e-15);
        assert!(matches!(
            sin_ratio(4.0, FRAC_PI_3),
            Err(Error::PoleProximity { .. })
        ));
        let expect = -(2.0 * PI / 6.0).sinh() / PI.sinh();
        assert!((sin_ratio(-4.0, FRAC_PI_3).unwrap() - expect).abs() < 1e-15);
        assert!((sin_ratio(-4.0, FRAC_PI_3).unwrap() + 0.1081).abs() < 1e-4);
        // No overflow deep in the hyperbolic region.
        let deep = sin_ratio(-1e8, FRAC_PI_3).unwrap();
        assert!(deep.is_finite() && deep <= 0.0);
    }

    #[test]
    fn pole_guard_band() {
        assert!(nu_cot_half_pi(4.0 + 0.5 * POLE_GUARD).is_err());
        assert!(nu_cot_half_pi(16.0 - 0.5 * POLE_GUARD).is_err());
        assert!(nu_cot_half_pi(4.0 + 2.0 * POLE_GUARD).is_ok());
    }

    #[test]
    fn boson_kernel_at_zero() {
        let lhs = boson_kernel(0.0).unwrap();
        let expect = -2.0 / PI + EIGHT_OVER_SQRT3 / 3.0;
        assert!((lhs - expect).abs() < 1e-15);
        assert!((lhs - 0.90298).abs() < 1e-5);
    }

    #[test]
    fn efimov_constant_value() {
        let g = efimov_constant();
        assert!((g - 1.006).abs() < 1e-3, "{g}");
        assert!(efimov_residual(g).abs() < 1e-10);
        assert!((-(g * g + 0.25) + 1.262).abs() < 1e-3);
        // Same root from the kernel at u = -g^2.
        assert!(boson_kernel(-g * g).unwrap().abs() < 1e-12);
    }

    #[test]
    fn unregularized_small_rho_gives_thomas_root() {
        let p = he4_problem(false);
        let g = efimov_constant();
        let u = p.lowest_root(1e-6).unwrap();
        assert!((u + g * g).abs() < 1e-6, "{u}");
    }

    #[test]
    fn regularized_root_vanishes_at_origin() {
        let p = he4_problem(true);
        let u = p.lowest_root(0.01).unwrap();
        assert!(u < 0.0 && (u - 4.0 + 4.0).abs() < 0.05, "{u}");
        assert_eq!(p.residual(0.0, 0.0).unwrap(), 0.0);
        assert!(boson_residual(0.1, 0.0, &he4_pair(), 2.0).is_err());
    }

    #[test]
    fn determinant_factorizes_for_identical_bosons() {
        let p = he4_problem(true);
        for &(u, rho) in &[(-3.0, 10.0), (-0.5, 100.0), (1.5, 3.0), (-50.0, 700.0)] {
            let m = p.build_matrix(u, rho).unwrap();
            let d = m[0][0];
            let o = m[0][1];
            let det = det3(&m);
            let fact = (d - o) * (d - o) * (d + 2.0 * o);
            assert!((det - fact).abs() <= 1e-12 * det.abs().max(1.0));
            // The symmetric factor is minus the boson residual.
            let r = boson_residual(u, rho, &he4_pair(), p.kinematics().mu[0]).unwrap();
            assert!((d + 2.0 * o + r).abs() < 1e-12 * r.abs().max(1.0));
        }
    }

    #[test]
    fn unitary_bare_matrix_at_origin_is_finite() {
        let pair = PairParams::zero_range(f64::INFINITY).unwrap();
        let sys = ParticleSystem::identical(HE4, pair, UnitSystem::default()).unwrap();
        let p = AngularProblem::new(sys, false);
        let m = p.build_matrix(0.0, 0.0).unwrap();
        assert!((m[0][0] - 2.0 / PI).abs() < 1e-15);
        let o = 2.0 * (-1.0 / 3.0) / (2.0 * FRAC_PI_3).sin();
        assert!((m[0][1] - o).abs() < 1e-15);
        let det = det3(&m);
        assert!(det.is_finite() && det.abs() > 1e-3);
    }

    #[test]
    fn single_node_trace() {
        let b = he4_problem(true).trace_branch(&[5.0]).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.lambda()[0], b.u()[0] - 4.0);
        assert_eq!(b.seed(), BranchSeed::ZeroAtOrigin);
    }

    #[test]
    fn rejects_bad_grids() {
        let p = he4_problem(true);
        assert!(p.trace_branch(&[]).is_err());
        assert!(p.trace_branch(&[1.0, 1.0]).is_err());
        assert!(p.trace_branch(&[2.0, 1.0]).is_err());
    }

    #[test]
    fn asymptotic_limits() {
        let free = PairParams::zero_range(33.0).unwrap();
        assert!((nu2_asymptotic(1e9, &free, 1.7, AsymptoticBranch::Free) - 4.0).abs() < 1e-6);
        let bound = PairParams::zero_range(-189.054).unwrap();
        let mu = HE4 / 2.0;
        let rho = 1e6;
        let u = nu2_asymptotic(rho, &bound, mu, AsymptoticBranch::Bound);
        let target = -1.0 / (mu * 189.054 * 189.054);
        assert!((u / (rho * rho) - target).abs() < 1e-12 * target.abs());
    }

    #[test]
    fn solve_at_rho_follows_guess() {
        let p = he4_problem(true);
        let u = p.lowest_root(20.0).unwrap();
        let again = p.solve_at_rho(20.0, u * 1.01).unwrap();
        assert!((again - u).abs() < 1e-12 * u.abs());
    }
}
