#![allow(dead_code)]

use zerorange_core::{PairParams, ParticleSystem, UnitSystem};

pub const HE4: f64 = 4.002_603;
pub const HE3: f64 = 3.016_026;

pub fn he4_pair() -> PairParams {
    PairParams::new(-189.054, 13.843, 0.13).unwrap()
}

pub fn he4_he3_pair() -> PairParams {
    PairParams::new(33.261, 18.564, 0.13).unwrap()
}

pub fn he4_trimer() -> ParticleSystem {
    ParticleSystem::identical(HE4, he4_pair(), UnitSystem::default()).unwrap()
}

/// Particles (4He, 4He, 3He); pairs are indexed by the spectator.
pub fn he4he4he3() -> ParticleSystem {
    let mixed = he4_he3_pair();
    ParticleSystem::new([HE4, HE4, HE3], [mixed, mixed, he4_pair()], UnitSystem::default()).unwrap()
}

pub fn log_nodes(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64))
        .collect()
}
