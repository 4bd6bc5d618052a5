//! Atomic units and the energy conversions used at the I/O boundary.

use core::str::FromStr;

use alloc::string::ToString;

use crate::error::{Error, Result};

/// Hartree energy in kelvin (CODATA 2018).
pub const HARTREE_IN_KELVIN: f64 = 3.157_750_248_040_7e5;

/// Mass scale of the hyperspherical coordinates in electron masses.
pub const DEFAULT_MASS_SCALE: f64 = 1822.887;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyUnit {
    Hartree,
    Kelvin,
    MilliKelvin,
}

impl FromStr for EnergyUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hartree" | "Eh" | "au" => Ok(EnergyUnit::Hartree),
            "K" | "kelvin" => Ok(EnergyUnit::Kelvin),
            "mK" | "millikelvin" => Ok(EnergyUnit::MilliKelvin),
            other => Err(Error::UnknownUnit(other.to_string())),
        }
    }
}

/// Unit system: `hbar = 1`, lengths in Bohr radii, masses in units of `mass_scale`
/// electron masses. Kelvin only appears through [`UnitSystem::convert_energy`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    hartree_per_mk: f64,
    mass_scale: f64,
}

impl Default for UnitSystem {
    fn default() -> Self {
        UnitSystem {
            hartree_per_mk: 1.0 / (HARTREE_IN_KELVIN * 1e3),
            mass_scale: DEFAULT_MASS_SCALE,
        }
    }
}

impl UnitSystem {
    pub fn new(hartree_per_mk: f64, mass_scale: f64) -> Result<Self> {
        if !(hartree_per_mk > 0.0 && hartree_per_mk.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "hartree_per_mK",
                reason: "must be positive and finite",
            });
        }
        if !(mass_scale > 0.0 && mass_scale.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "mass_scale",
                reason: "must be positive and finite",
            });
        }
        Ok(UnitSystem {
            hartree_per_mk,
            mass_scale,
        })
    }

    pub fn with_mass_scale(self, mass_scale: f64) -> Result<Self> {
        UnitSystem::new(self.hartree_per_mk, mass_scale)
    }

    pub fn hartree_per_mk(&self) -> f64 {
        self.hartree_per_mk
    }

    pub fn mass_scale(&self) -> f64 {
        self.mass_scale
    }

    /// Lengths are always Bohr radii.
    pub fn length_unit(&self) -> &'static str {
        "bohr"
    }

    fn hartree_per(&self, unit: EnergyUnit) -> f64 {
        match unit {
            EnergyUnit::Hartree => 1.0,
            EnergyUnit::Kelvin => self.hartree_per_mk * 1e3,
            EnergyUnit::MilliKelvin => self.hartree_per_mk,
        }
    }

    pub fn convert_energy(&self, value: f64, from: EnergyUnit, to: EnergyUnit) -> f64 {
        if from == to {
            return value;
        }
        value * self.hartree_per(from) / self.hartree_per(to)
    }

    pub fn hartree_to_mk(&self, e: f64) -> f64 {
        e / self.hartree_per_mk
    }

    pub fn mk_to_hartree(&self, e: f64) -> f64 {
        e * self.hartree_per_mk
    }

    /// `2 m E` for an energy in hartree: the energy as it enters the
    /// hyper-radial equation.
    pub fn reduced_energy(&self, e_hartree: f64) -> f64 {
        2.0 * self.mass_scale * e_hartree
    }

    pub fn energy_from_reduced(&self, reduced: f64) -> f64 {
        reduced / (2.0 * self.mass_scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hartree_in_kelvin_matches_codata() {
        let units = UnitSystem::default();
        let k = units.convert_energy(1.0, EnergyUnit::Hartree, EnergyUnit::Kelvin);
        assert!((k - 3.157_746_4e5).abs() / 3.157_746_4e5 < 2e-6, "{k}");
        assert!((k - HARTREE_IN_KELVIN).abs() < 1e-9);
    }

    #[test]
    fn zero_maps_to_zero() {
        let units = UnitSystem::default();
        for from in [EnergyUnit::Hartree, EnergyUnit::Kelvin, EnergyUnit::MilliKelvin] {
            for to in [EnergyUnit::Hartree, EnergyUnit::Kelvin, EnergyUnit::MilliKelvin] {
                assert_eq!(units.convert_energy(0.0, from, to), 0.0);
            }
        }
    }

    #[test]
    fn mk_round_trip() {
        let units = UnitSystem::default();
        for x in [-143.7, -2.21, 1e-6, 12345.678] {
            let back = units.hartree_to_mk(units.mk_to_hartree(x));
            assert!((back - x).abs() <= 1e-12 * x.abs());
            let via = units.convert_energy(
                units.convert_energy(x, EnergyUnit::MilliKelvin, EnergyUnit::Hartree),
                EnergyUnit::Hartree,
                EnergyUnit::MilliKelvin,
            );
            assert!((via - x).abs() <= 1e-12 * x.abs());
        }
    }

    #[test]
    fn unit_tags() {
        assert_eq!("mK".parse::<EnergyUnit>(), Ok(EnergyUnit::MilliKelvin));
        assert_eq!("K".parse::<EnergyUnit>(), Ok(EnergyUnit::Kelvin));
        assert_eq!("hartree".parse::<EnergyUnit>(), Ok(EnergyUnit::Hartree));
        assert!(matches!("eV".parse::<EnergyUnit>(), Err(Error::UnknownUnit(_))));
    }

    #[test]
    fn rejects_bad_constants() {
        assert!(UnitSystem::new(0.0, 1.0).is_err());
        assert!(UnitSystem::new(1.0, -1.0).is_err());
        assert!(UnitSystem::new(f64::NAN, 1.0).is_err());
    }
}
