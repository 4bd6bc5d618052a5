//! Bound states of three particles with regularized zero-range interactions,
//! computed in the hyperspherical adiabatic approximation.
//!
//! The pipeline is:
//!
//! 1. [`system`] turns masses and pair parameters into the kinematic constants
//!    of the hyperspherical frame.
//! 2. [`angular`] solves the transcendental hyperangular eigenvalue condition for
//!    `u = nu^2` and traces the lowest branch over a hyper-radial grid.
//! 3. [`potential`] turns the branch into the effective hyper-radial potential.
//! 4. [`radial`] finds bound states of the hyper-radial equation by Numerov
//!    shooting.
//!
//! All internal quantities are in atomic units with `hbar = 1` and masses in
//! units of the configurable mass scale `m`. Energies inside the radial solver
//! are carried as `2 m E` (inverse squared Bohr radii).
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod angular;
pub mod error;
pub mod interp;
pub mod potential;
pub mod radial;
pub mod roots;
pub mod system;
pub mod units;

pub use angular::{AngularProblem, BranchSeed, NuBranch};
pub use error::{Error, Result};
pub use potential::{EffectivePotential, QConvention};
pub use radial::{LogGrid, RadialSolution, ThomasSpectrum};
pub use system::{KinematicConstants, PairParams, ParticleSystem};
pub use units::{EnergyUnit, UnitSystem};
