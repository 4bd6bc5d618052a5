//! Hyper-radial bound states by Numerov shooting on a logarithmic grid.
//!
//! With `rho = e^t` and `f = rho^(1/2) g` the radial equation
//! `-f'' + W f = eps f` (`eps = 2 m E`) becomes `g'' = k(t) g` with
//! `k = rho^2 (W - eps) + 1/4`, which Numerov integrates on a uniform `t` grid.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::potential::EffectivePotential;
use crate::roots::brent;
use crate::units::UnitSystem;

const RENORM_LIMIT: f64 = 1e100;
const MAX_BISECTIONS: usize = 200;

/// Logarithmically spaced hyper-radial grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGrid {
    rho_min: f64,
    rho_max: f64,
    points: usize,
}

impl LogGrid {
    pub fn new(rho_min: f64, rho_max: f64, points: usize) -> Result<Self> {
        if !(rho_min > 0.0 && rho_max > rho_min && rho_max.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "grid",
                reason: "need 0 < rho_min < rho_max",
            });
        }
        if points < 16 {
            return Err(Error::GridTooCoarse {
                reason: "a radial grid needs at least 16 points",
            });
        }
        Ok(LogGrid {
            rho_min,
            rho_max,
            points,
        })
    }

    /// `rho_min = 0.05`, `rho_max = max(4000, 20 |a|)`, 8000 points.
    pub fn default_for(max_scattering_length: f64) -> Self {
        let a = libm::fabs(max_scattering_length);
        let rho_max = if a.is_finite() { (20.0 * a).max(4000.0) } else { 4000.0 };
        LogGrid {
            rho_min: 0.05,
            rho_max,
            points: 8000,
        }
    }

    pub fn rho_min(&self) -> f64 {
        self.rho_min
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Uniform step in `ln rho`.
    pub fn step(&self) -> f64 {
        libm::log(self.rho_max / self.rho_min) / (self.points - 1) as f64
    }

    pub fn rho(&self) -> Vec<f64> {
        let t0 = libm::log(self.rho_min);
        let h = self.step();
        let mut rho: Vec<f64> = (0..self.points)
            .map(|i| libm::exp(t0 + h * i as f64))
            .collect();
        rho[self.points - 1] = self.rho_max;
        rho
    }

    /// Same range with `factor` times as many intervals.
    pub fn refined(&self, factor: usize) -> Self {
        LogGrid {
            points: (self.points - 1) * factor + 1,
            ..*self
        }
    }

    pub fn with_range(&self, rho_min: f64, rho_max: f64) -> Result<Self> {
        LogGrid::new(rho_min, rho_max, self.points)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// From `rho_min` with the regular free form `f = rho`.
    Outward,
    /// From `rho_max` with the decaying form `f = exp(-kappa rho)`.
    Inward,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Integration {
    pub rho: Vec<f64>,
    /// `f` at every grid node, with an arbitrary (possibly renormalized) scale.
    pub f: Vec<f64>,
    /// `f'/f` at the far end of the integration (last node outward, first
    /// node inward).
    pub log_derivative: f64,
}

/// Numerov recurrence for `g'' = k g` starting from `g[0], g[1]`, with
/// rescaling of everything computed so far whenever `|g|` grows too large.
fn numerov(k: &[f64], h: f64, g0: f64, g1: f64) -> Vec<f64> {
    let n = k.len();
    let c = h * h / 12.0;
    let mut g = Vec::with_capacity(n);
    g.push(g0);
    if n > 1 {
        g.push(g1);
    }
    for i in 1..n.saturating_sub(1) {
        let next = (2.0 * (1.0 + 5.0 * c * k[i]) * g[i] - (1.0 - c * k[i - 1]) * g[i - 1])
            / (1.0 - c * k[i + 1]);
        g.push(next);
        if libm::fabs(next) > RENORM_LIMIT {
            for v in g.iter_mut() {
                *v /= RENORM_LIMIT;
            }
        }
    }
    g
}

/// Sign changes of the Numerov recurrence without storing the solution.
///
/// Once every remaining `k` is positive and `|g|` grows, `g` is convex away
/// from zero and cannot cross it again, so the sweep stops there. This also
/// keeps deeply forbidden regions, where the recurrence loses stability, out
/// of the count.
fn numerov_sign_changes(k: &[f64], h: f64, g0: f64, g1: f64) -> usize {
    let c = h * h / 12.0;
    let last_allowed = k.iter().rposition(|&v| v <= 0.0);
    let (mut prev, mut cur) = (g0, g1);
    let mut last_sign = if g1 != 0.0 { g1.signum() } else { g0.signum() };
    let mut count = 0;
    for i in 1..k.len().saturating_sub(1) {
        let forbidden = last_allowed.is_none_or(|j| i > j);
        if forbidden && cur != 0.0 && cur.signum() == prev.signum() && libm::fabs(cur) >= libm::fabs(prev) {
            break;
        }
        let mut next =
            (2.0 * (1.0 + 5.0 * c * k[i]) * cur - (1.0 - c * k[i - 1]) * prev) / (1.0 - c * k[i + 1]);
        if libm::fabs(next) > RENORM_LIMIT {
            next /= RENORM_LIMIT;
            cur /= RENORM_LIMIT;
        }
        if next != 0.0 {
            if last_sign != 0.0 && next.signum() != last_sign {
                count += 1;
            }
            last_sign = next.signum();
        }
        prev = cur;
        cur = next;
    }
    count
}

/// Fourth-order one-sided derivative at `g[0]` of samples spaced by `h`
/// (pass the samples in reverse to differentiate at the other end).
fn end_derivative(g: [f64; 5], h: f64) -> f64 {
    (-25.0 * g[0] + 48.0 * g[1] - 36.0 * g[2] + 16.0 * g[3] - 3.0 * g[4]) / (12.0 * h)
}

/// Number of strict sign changes, skipping exact zeros.
pub fn count_nodes(f: &[f64]) -> usize {
    let mut last = 0.0;
    let mut count = 0;
    for &v in f {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && v.signum() != last {
            count += 1;
        }
        last = v.signum();
    }
    count
}

/// Potential, energy scale and grid bundled for shooting.
struct Shooter {
    rho: Vec<f64>,
    w: Vec<f64>,
    h: f64,
    threshold: f64,
}

impl Shooter {
    fn new<W: Fn(f64) -> f64>(w: W, threshold: f64, grid: &LogGrid) -> Self {
        let rho = grid.rho();
        let w = rho.iter().map(|&r| w(r)).collect();
        Shooter {
            rho,
            w,
            h: grid.step(),
            threshold,
        }
    }

    fn k(&self, eps: f64, range: core::ops::Range<usize>) -> Vec<f64> {
        range
            .map(|i| self.rho[i] * self.rho[i] * (self.w[i] - eps) + 0.25)
            .collect()
    }

    fn kappa(&self, eps: f64) -> Result<f64> {
        if !(eps < self.threshold) {
            return Err(Error::EnergyAboveThreshold {
                energy: eps,
                threshold: self.threshold,
            });
        }
        Ok(libm::sqrt(self.threshold - eps))
    }

    fn outward_start(&self) -> (f64, f64) {
        (libm::sqrt(self.rho[0]), libm::sqrt(self.rho[1]))
    }

    /// Outward `g` on nodes `0..=last`.
    fn outward(&self, eps: f64, last: usize) -> Vec<f64> {
        let (g0, g1) = self.outward_start();
        numerov(&self.k(eps, 0..last + 1), self.h, g0, g1)
    }

    /// Inward `g` on nodes `first..n`, returned in grid order.
    fn inward(&self, eps: f64, first: usize) -> Result<Vec<f64>> {
        let n = self.rho.len();
        let kappa = self.kappa(eps)?;
        let mut k = self.k(eps, first..n);
        k.reverse();
        let (r1, r2) = (self.rho[n - 1], self.rho[n - 2]);
        let g1 = libm::exp(kappa * (r1 - r2)) * libm::sqrt(r1 / r2);
        let mut g = numerov(&k, self.h, 1.0, g1);
        g.reverse();
        Ok(g)
    }

    /// Nodes of the outward solution over the whole grid: the number of states
    /// below `eps` with a hard wall at `rho_max`.
    fn states_below(&self, eps: f64) -> usize {
        let (g0, g1) = self.outward_start();
        numerov_sign_changes(&self.k(eps, 0..self.rho.len()), self.h, g0, g1)
    }

    /// Outermost node inside the classically allowed region at `eps`.
    fn match_index(&self, eps: f64) -> usize {
        let n = self.rho.len();
        let idx = (0..n).rev().find(|&i| self.w[i] < eps).unwrap_or_else(|| {
            self.w
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, _)| i)
                .unwrap_or(0)
        });
        idx.clamp(4, n - 6)
    }

    /// Normalized discrete Wronskian of the outward and inward solutions at
    /// nodes `m, m+1`; zero at an eigenvalue and continuous in `eps`.
    fn mismatch(&self, eps: f64, m: usize) -> Result<f64> {
        let out = self.outward(eps, m + 1);
        let inw = self.inward(eps, m)?;
        let (a0, a1) = (out[m], out[m + 1]);
        let (b0, b1) = (inw[0], inw[1]);
        let norm = libm::sqrt(a0 * a0 + a1 * a1) * libm::sqrt(b0 * b0 + b1 * b1);
        Ok((a0 * b1 - a1 * b0) / norm)
    }

    /// Matched solution `f` on the full grid, normalized to `max |f| = 1`.
    fn wavefunction(&self, eps: f64, m: usize) -> Result<Vec<f64>> {
        let out = self.outward(eps, m);
        let inw = self.inward(eps, m)?;
        let scale = if inw[0] != 0.0 { out[m] / inw[0] } else { 1.0 };
        let mut f: Vec<f64> = out[..m]
            .iter()
            .chain(inw.iter().map(|v| v * scale).collect::<Vec<_>>().iter())
            .zip(&self.rho)
            .map(|(g, r)| g * libm::sqrt(*r))
            .collect();
        let peak = f.iter().fold(0.0f64, |acc, v| acc.max(libm::fabs(*v)));
        if peak > 0.0 {
            // Sign convention: positive near the origin.
            let sign = f.iter().find(|v| **v != 0.0).map_or(1.0, |v| v.signum());
            for v in f.iter_mut() {
                *v *= sign / peak;
            }
        }
        Ok(f)
    }
}

/// Integrates `-f'' + W f = eps f` across `grid` for a potential given as a
/// function. `threshold` (in the same units as `eps`) sets the decay constant
/// of the inward start.
pub fn integrate_with<W: Fn(f64) -> f64>(
    w: W,
    eps: f64,
    threshold: f64,
    direction: Direction,
    grid: &LogGrid,
) -> Result<Integration> {
    let shooter = Shooter::new(w, threshold, grid);
    let n = shooter.rho.len();
    let h = shooter.h;
    let (g, log_derivative) = match direction {
        Direction::Outward => {
            shooter.kappa(eps)?;
            let g = shooter.outward(eps, n - 1);
            let tail = [g[n - 1], g[n - 2], g[n - 3], g[n - 4], g[n - 5]];
            let dg = -end_derivative(tail, h);
            let rho = shooter.rho[n - 1];
            (g.clone(), (0.5 + dg / g[n - 1]) / rho)
        }
        Direction::Inward => {
            let g = shooter.inward(eps, 0)?;
            let head = [g[0], g[1], g[2], g[3], g[4]];
            let dg = end_derivative(head, h);
            (g.clone(), (0.5 + dg / g[0]) / shooter.rho[0])
        }
    };
    let f = g
        .iter()
        .zip(&shooter.rho)
        .map(|(g, r)| g * libm::sqrt(*r))
        .collect();
    Ok(Integration {
        rho: shooter.rho,
        f,
        log_derivative,
    })
}

/// Integrates the hyper-radial equation at energy `energy` (hartree).
pub fn integrate(
    potential: &EffectivePotential,
    energy: f64,
    direction: Direction,
    grid: &LogGrid,
) -> Result<Integration> {
    let eps = potential.units().reduced_energy(energy);
    integrate_with(
        |r| potential.value_at(r),
        eps,
        potential.model_threshold(),
        direction,
        grid,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    /// Energy in hartree.
    pub energy: f64,
    pub energy_mk: f64,
    pub node_count: usize,
    pub rho: Vec<f64>,
    /// Radial function with `max |f| = 1`.
    pub f: Vec<f64>,
    /// Normalized Wronskian mismatch at the matching point.
    pub match_residual: f64,
}

/// Bound states with `W` sampled from `w`, energies (as `eps = 2 m E`) between
/// `min W` and `threshold`.
pub fn solve_bound_states_with<W: Fn(f64) -> f64>(
    w: W,
    threshold: f64,
    units: &UnitSystem,
    grid: &LogGrid,
    max_states: usize,
) -> Result<Vec<RadialSolution>> {
    let shooter = Shooter::new(w, threshold, grid);
    let floor = shooter.w.iter().copied().fold(f64::INFINITY, f64::min);
    if !(floor < threshold) || max_states == 0 {
        return Ok(Vec::new());
    }
    let top = threshold - 1e-12 * libm::fabs(threshold).max(1e-300);
    let available = shooter.states_below(top).min(max_states);

    let mut solutions = Vec::with_capacity(available);
    let mut lower = floor;
    for n in 0..available {
        // Isolate the n-th state by node counting.
        let (mut lo, mut hi) = (lower, top);
        for _ in 0..MAX_BISECTIONS {
            if hi - lo <= 1e-7 * libm::fabs(hi) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if shooter.states_below(mid) > n {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let m = shooter.match_index(0.5 * (lo + hi));
        let eps = refine(&shooter, m, lo, hi, floor, top)?;
        let f = shooter.wavefunction(eps, m)?;
        let nodes = count_nodes(&f);
        let residual = libm::fabs(shooter.mismatch(eps, m)?);
        if nodes != n || residual > 1e-8 {
            return Err(Error::NotConverged {
                what: "bound-state matching",
                iterations: MAX_BISECTIONS,
            });
        }
        let energy = units.energy_from_reduced(eps);
        solutions.push(RadialSolution {
            energy,
            energy_mk: units.hartree_to_mk(energy),
            node_count: nodes,
            rho: shooter.rho.clone(),
            f,
            match_residual: residual,
        });
        lower = hi;
    }
    Ok(solutions)
}

/// Secant-type refinement of the matching condition inside a node bracket,
/// widening the bracket when the decaying-boundary eigenvalue sits just
/// outside the hard-wall one.
fn refine(shooter: &Shooter, m: usize, lo: f64, hi: f64, floor: f64, top: f64) -> Result<f64> {
    let width = hi - lo;
    for grow in [0.0, 1.0, 10.0, 100.0] {
        let a = (lo - grow * width).max(floor);
        let b = (hi + grow * width).min(top);
        let (fa, fb) = (shooter.mismatch(a, m)?, shooter.mismatch(b, m)?);
        if fa.signum() != fb.signum() {
            return brent(
                |e| shooter.mismatch(e, m),
                a,
                b,
                fa,
                fb,
                1e-13 * libm::fabs(b),
            );
        }
    }
    Err(Error::NotConverged {
        what: "matching-condition refinement",
        iterations: 4,
    })
}

/// All bound states of `potential` on `grid`, ordered by node count.
pub fn solve_bound_states(
    potential: &EffectivePotential,
    grid: &LogGrid,
    max_states: usize,
) -> Result<Vec<RadialSolution>> {
    solve_bound_states_with(
        |r| potential.value_at(r),
        potential.model_threshold(),
        &potential.units(),
        grid,
        max_states,
    )
}

/// Spectrum of `-(g^2 + 1/4)/rho^2` between hard walls.
#[derive(Debug, Clone, PartialEq)]
pub struct ThomasSpectrum {
    pub cutoff_rho0: f64,
    /// Energies in hartree, deepest first.
    pub energies: Vec<f64>,
    /// `E_n / E_{n+1}`.
    pub ratios: Vec<f64>,
}

/// Decay depth `kappa rho` beyond which the outward solution is cut off.
const THOMAS_DECAY_DEPTH: f64 = 40.0;
const THOMAS_STEP: f64 = 0.005;

/// Nodes of the zero-at-cutoff solution of `g'' = (kappa^2 rho^2 - g^2) g`.
fn thomas_nodes(g: f64, kappa: f64, t0: f64, t_outer: f64) -> usize {
    let t_end = t_outer.min(libm::log(THOMAS_DECAY_DEPTH / kappa));
    if t_end <= t0 {
        return 0;
    }
    let n = libm::ceil((t_end - t0) / THOMAS_STEP) as usize + 1;
    let h = (t_end - t0) / (n - 1) as f64;
    let k: Vec<f64> = (0..n)
        .map(|i| {
            let rho = libm::exp(t0 + h * i as f64);
            kappa * kappa * rho * rho - g * g
        })
        .collect();
    numerov_sign_changes(&k, h, 0.0, h)
}

/// Bound states of the scale-free potential `-(g^2 + 1/4)/rho^2` with hard
/// walls at `cutoff_rho0` and `outer_rho`, found by node-count bisection in
/// `ln kappa`.
pub fn thomas_spectrum(g: f64, cutoff_rho0: f64, outer_rho: f64, units: &UnitSystem) -> Result<ThomasSpectrum> {
    if !(g > 0.0 && g.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "g",
            reason: "must be positive",
        });
    }
    if !(cutoff_rho0 > 0.0 && outer_rho > cutoff_rho0) {
        return Err(Error::InvalidParameter {
            name: "cutoff_rho0",
            reason: "need 0 < cutoff_rho0 < outer_rho",
        });
    }
    if libm::log(outer_rho / cutoff_rho0) < 2.0 * PI / g {
        return Err(Error::GridTooCoarse {
            reason: "the box is too narrow to hold a single log-period",
        });
    }
    let (t0, t_outer) = (libm::log(cutoff_rho0), libm::log(outer_rho));
    let ln_kappa_max = libm::log(THOMAS_DECAY_DEPTH / cutoff_rho0) + 1.0;
    let ln_kappa_min = libm::log(1e-3 / outer_rho);
    let total = thomas_nodes(g, libm::exp(ln_kappa_min), t0, t_outer);

    let mut energies = Vec::with_capacity(total);
    for n in 0..total {
        // nodes(kappa) decreases with kappa; find where it drops from n+1 to n.
        let (mut lo, mut hi) = (ln_kappa_min, ln_kappa_max);
        for _ in 0..MAX_BISECTIONS {
            if hi - lo < 1e-13 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if thomas_nodes(g, libm::exp(mid), t0, t_outer) > n {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let kappa = libm::exp(0.5 * (lo + hi));
        energies.push(units.energy_from_reduced(-kappa * kappa));
    }
    let ratios = energies.windows(2).map(|w| w[0] / w[1]).collect();
    Ok(ThomasSpectrum {
        cutoff_rho0,
        energies,
        ratios,
    })
}
