//! Particles, pair interactions and the kinematic constants of the
//! hyperspherical frame.

use core::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::roots::brent;
use crate::units::UnitSystem;

/// Low-energy parameters of one two-body subsystem.
///
/// Sign convention: `k cot(delta) = 1/a + R k^2 / 2 + P R^3 k^4`, so a negative
/// scattering length means a bound dimer with `kappa = 1/|a|`. An infinite
/// scattering length is the unitary limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairParams {
    pub scattering_length: f64,
    pub effective_range: f64,
    pub shape: f64,
}

impl PairParams {
    pub fn new(scattering_length: f64, effective_range: f64, shape: f64) -> Result<Self> {
        if scattering_length == 0.0 || scattering_length.is_nan() {
            return Err(Error::InvalidParameter {
                name: "a",
                reason: "scattering length must be nonzero",
            });
        }
        if !(effective_range >= 0.0 && effective_range.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "R",
                reason: "effective range must be finite and non-negative",
            });
        }
        if !shape.is_finite() {
            return Err(Error::InvalidParameter {
                name: "P",
                reason: "shape parameter must be finite",
            });
        }
        if effective_range == 0.0 && shape != 0.0 {
            return Err(Error::InvalidParameter {
                name: "P",
                reason: "shape parameter requires a nonzero effective range",
            });
        }
        Ok(PairParams {
            scattering_length,
            effective_range,
            shape,
        })
    }

    /// Bare zero-range interaction (`R = P = 0`).
    pub fn zero_range(scattering_length: f64) -> Result<Self> {
        PairParams::new(scattering_length, 0.0, 0.0)
    }

    /// The same scattering length with the regularizing terms dropped.
    pub fn bare(&self) -> Self {
        PairParams {
            effective_range: 0.0,
            shape: 0.0,
            ..*self
        }
    }

    pub fn inverse_scattering_length(&self) -> f64 {
        1.0 / self.scattering_length
    }

    pub fn has_bound_dimer(&self) -> bool {
        self.scattering_length < 0.0 && self.scattering_length.is_finite()
    }

    pub fn is_regularized(&self) -> bool {
        self.effective_range != 0.0
    }

    /// Right-hand side of the extended boundary condition at imaginary or real
    /// momentum, as a function of `k^2`.
    pub fn k_cot_delta(&self, k2: f64) -> f64 {
        let r = self.effective_range;
        self.inverse_scattering_length() + 0.5 * r * k2 + self.shape * r * r * r * k2 * k2
    }
}

/// Three particles with masses in units of the mass scale and the pair
/// interactions `pairs[i]` between the two particles other than `i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleSystem {
    masses: [f64; 3],
    pairs: [PairParams; 3],
    units: UnitSystem,
}

impl ParticleSystem {
    pub fn new(masses: [f64; 3], pairs: [PairParams; 3], units: UnitSystem) -> Result<Self> {
        if masses.iter().any(|m| !(*m > 0.0 && m.is_finite())) {
            return Err(Error::InvalidParameter {
                name: "masses",
                reason: "all masses must be positive and finite",
            });
        }
        Ok(ParticleSystem {
            masses,
            pairs,
            units,
        })
    }

    /// Three identical particles of mass `mass` interacting through `pair`.
    pub fn identical(mass: f64, pair: PairParams, units: UnitSystem) -> Result<Self> {
        ParticleSystem::new([mass; 3], [pair; 3], units)
    }

    pub fn masses(&self) -> [f64; 3] {
        self.masses
    }

    pub fn pairs(&self) -> [PairParams; 3] {
        self.pairs
    }

    pub fn pair(&self, spectator: usize) -> PairParams {
        self.pairs[spectator]
    }

    pub fn units(&self) -> UnitSystem {
        self.units
    }

    /// Identity is exact equality of all masses and all pair parameters.
    pub fn is_identical_bosons(&self) -> bool {
        self.masses[0] == self.masses[1]
            && self.masses[1] == self.masses[2]
            && self.pairs[0] == self.pairs[1]
            && self.pairs[1] == self.pairs[2]
    }

    pub fn is_regularized(&self) -> bool {
        self.pairs.iter().any(PairParams::is_regularized)
    }

    pub fn with_pairs(&self, pairs: [PairParams; 3]) -> Self {
        ParticleSystem { pairs, ..*self }
    }

    /// Replaces the shape parameter of every regularized pair.
    pub fn with_shape(&self, shape: f64) -> Result<Self> {
        let mut pairs = self.pairs;
        for p in pairs.iter_mut() {
            if p.is_regularized() {
                *p = PairParams::new(p.scattering_length, p.effective_range, shape)?;
            }
        }
        Ok(self.with_pairs(pairs))
    }

    pub fn bare(&self) -> Self {
        self.with_pairs(self.pairs.map(|p| p.bare()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicConstants {
    /// Reduced mass of the pair facing particle `i`.
    pub mu: [f64; 3],
    /// Reduced mass of particle `i` relative to the centre of mass of the pair.
    pub mu_spectator: [f64; 3],
    /// Rotation angles between Jacobi systems; the diagonal is unused and zero.
    pub phi: [[f64; 3]; 3],
}

const fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

pub fn reduced_masses(system: &ParticleSystem) -> KinematicConstants {
    let m = system.masses;
    let total = m[0] + m[1] + m[2];
    let mut mu = [0.0; 3];
    let mut mu_spectator = [0.0; 3];
    for i in 0..3 {
        let (j, k) = others(i);
        mu[i] = m[j] * m[k] / (m[j] + m[k]);
        mu_spectator[i] = m[i] * (m[j] + m[k]) / total;
    }
    let mut phi = [[0.0; 3]; 3];
    for j in 0..3 {
        for k in 0..3 {
            if j != k {
                let i = 3 - j - k;
                phi[j][k] = libm::atan(libm::sqrt(m[i] * total / (m[j] * m[k])));
            }
        }
    }
    debug_assert!(phi
        .iter()
        .flatten()
        .all(|&p| (0.0..FRAC_PI_2).contains(&p)));
    KinematicConstants {
        mu,
        mu_spectator,
        phi,
    }
}

/// Binding energy `B = 1 / (2 mu m a^2)` in hartree of the zero-range dimer, or
/// `None` when the scattering length is positive.
pub fn dimer_binding_energy(pair: &PairParams, mu: f64, units: &UnitSystem) -> Option<f64> {
    if !pair.has_bound_dimer() {
        return None;
    }
    let a = pair.scattering_length;
    Some(1.0 / (2.0 * mu * units.mass_scale() * a * a))
}

/// Binding momentum of the dimer implied by the full boundary condition
/// `-kappa = 1/a - R kappa^2 / 2 + P R^3 kappa^4`.
///
/// Equals `1/|a|` for a bare interaction. This is the threshold the hyper-radial
/// potential actually approaches when `R` and `P` are nonzero.
pub fn dimer_pole_momentum(pair: &PairParams) -> Option<f64> {
    if !pair.has_bound_dimer() {
        return None;
    }
    let inv_a = pair.inverse_scattering_length();
    if !pair.is_regularized() {
        return Some(-inv_a);
    }
    let h = |kappa: f64| kappa + pair.k_cot_delta(-kappa * kappa);
    // h(0) = 1/a < 0; walk outward until the first sign change.
    let step = 0.05 * libm::fabs(inv_a);
    let (mut lo, mut h_lo) = (0.0, h(0.0));
    for n in 1..=400 {
        let hi = step * n as f64;
        let h_hi = h(hi);
        if h_hi >= 0.0 {
            return brent(|k| Ok(h(k)), lo, hi, h_lo, h_hi, 1e-15 * hi).ok();
        }
        lo = hi;
        h_lo = h_hi;
    }
    None
}

/// Binding energy in hartree at the dimer pole of the full boundary condition.
pub fn dimer_pole_binding_energy(pair: &PairParams, mu: f64, units: &UnitSystem) -> Option<f64> {
    dimer_pole_momentum(pair).map(|kappa| kappa * kappa / (2.0 * mu * units.mass_scale()))
}
