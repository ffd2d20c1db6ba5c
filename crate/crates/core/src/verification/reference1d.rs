//! One-dimensional cell-centered Lagrangian reference solver (planar or
//! cylindrical) with an acoustic Godunov nodal solver and SSP-RK2 stepping.
//!
//! Two thermodynamic closures are offered. `Conservative` evolves total
//! energy in flux form, which conserves it to rounding and captures shocks.
//! `EntropyHybrid` evolves the entropy function `K = p τ^γ`, held constant in
//! expanding cells and driven by the energy balance in compressing ones; it
//! is free of the spurious heating that the conservative form produces in
//! strong rarefactions.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry1d {
    Planar,
    /// Per radian: face area `r`, cell volume `(r₊² − r₋²)/2`.
    Cylindrical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyMode {
    Conservative,
    EntropyHybrid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum End1d {
    Wall,
    Pressure(f64),
}

/// Initial cell data `(ρ, u, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell1d {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

#[derive(Debug, Clone)]
pub struct Reference1d {
    pub geometry: Geometry1d,
    pub mode: EnergyMode,
    pub gamma: f64,
    pub left: End1d,
    pub right: End1d,
    pub cfl: f64,
    pub t: f64,
    /// Node positions, `n + 1` entries.
    pub r: Vec<f64>,
    pub mass: Vec<f64>,
    pub u: Vec<f64>,
    /// Specific total energy (conservative mode) or `K = p τ^γ` (hybrid).
    pub w: Vec<f64>,
    steps: usize,
}

#[derive(Debug, Clone)]
struct Stage {
    r: Vec<f64>,
    u: Vec<f64>,
    w: Vec<f64>,
}

impl Reference1d {
    /// Uniform grid on `[a, b]` with `n` cells initialized from `init`
    /// evaluated at cell centers.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        geometry: Geometry1d,
        mode: EnergyMode,
        gamma: f64,
        (a, b): (f64, f64),
        n: usize,
        left: End1d,
        right: End1d,
        init: impl Fn(f64) -> Cell1d,
    ) -> Result<Self> {
        if n == 0 || !(b > a) {
            return Err(Error::InvalidParameter(format!("1D grid [{a}, {b}] with {n} cells")));
        }
        if geometry == Geometry1d::Cylindrical && a < 0.0 {
            return Err(Error::InvalidParameter("cylindrical grid must have r ≥ 0".into()));
        }
        let r: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
        let mut s = Reference1d {
            geometry,
            mode,
            gamma,
            left,
            right,
            cfl: 0.4,
            t: 0.0,
            mass: vec![0.0; n],
            u: vec![0.0; n],
            w: vec![0.0; n],
            r,
            steps: 0,
        };
        for i in 0..n {
            let c = init(0.5 * (s.r[i] + s.r[i + 1]));
            if !(c.rho > 0.0) || !(c.p >= 0.0) {
                return Err(Error::Domain(format!("1D cell {i}: rho = {}, p = {}", c.rho, c.p)));
            }
            let v = s.volume(&s.r, i);
            s.mass[i] = c.rho * v;
            s.u[i] = c.u;
            let tau = 1.0 / c.rho;
            s.w[i] = match mode {
                EnergyMode::Conservative => c.p * tau / (gamma - 1.0) + 0.5 * c.u * c.u,
                EnergyMode::EntropyHybrid => c.p * tau.powf(gamma),
            };
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    fn area(&self, r: f64) -> f64 {
        match self.geometry {
            Geometry1d::Planar => 1.0,
            Geometry1d::Cylindrical => r,
        }
    }

    fn volume(&self, r: &[f64], i: usize) -> f64 {
        match self.geometry {
            Geometry1d::Planar => r[i + 1] - r[i],
            Geometry1d::Cylindrical => 0.5 * (r[i + 1] * r[i + 1] - r[i] * r[i]),
        }
    }

    /// Cell center.
    pub fn center(&self, i: usize) -> f64 {
        0.5 * (self.r[i] + self.r[i + 1])
    }

    /// `(τ, ε, p)` of cell `i` for stage data.
    fn thermo(&self, r: &[f64], u: &[f64], w: &[f64], i: usize) -> (f64, f64, f64) {
        let tau = self.volume(r, i) / self.mass[i];
        let g = self.gamma;
        let eps = match self.mode {
            EnergyMode::Conservative => (w[i] - 0.5 * u[i] * u[i]).max(0.0),
            EnergyMode::EntropyHybrid => w[i].max(0.0) * tau.powf(1.0 - g) / (g - 1.0),
        };
        (tau, eps, (g - 1.0) * eps / tau)
    }

    pub fn density(&self, i: usize) -> f64 {
        self.mass[i] / self.volume(&self.r, i)
    }

    pub fn pressure(&self, i: usize) -> f64 {
        self.thermo(&self.r, &self.u, &self.w, i).2
    }

    pub fn internal_energy(&self, i: usize) -> f64 {
        self.thermo(&self.r, &self.u, &self.w, i).1
    }

    /// `Σ m (ε + u²/2)`.
    pub fn total_energy(&self) -> f64 {
        (0..self.len())
            .map(|i| self.mass[i] * (self.internal_energy(i) + 0.5 * self.u[i] * self.u[i]))
            .sum()
    }

    /// Node velocities and pressures from the acoustic solver.
    fn node_fluxes(&self, s: &Stage) -> (Vec<f64>, Vec<f64>) {
        let n = self.len();
        let th: Vec<(f64, f64, f64)> = (0..n).map(|i| self.thermo(&s.r, &s.u, &s.w, i)).collect();
        let z: Vec<f64> = th.iter().map(|&(tau, _, p)| (self.gamma * p / tau).sqrt()).collect();
        let mut us = vec![0.0; n + 1];
        let mut ps = vec![0.0; n + 1];
        for j in 1..n {
            let (l, r) = (j - 1, j);
            let (zl, zr) = (z[l], z[r]);
            let (pl, pr) = (th[l].2, th[r].2);
            let zs = zl + zr;
            if zs > 0.0 {
                us[j] = (zl * s.u[l] + zr * s.u[r] - (pr - pl)) / zs;
                ps[j] = (zr * pl + zl * pr - zl * zr * (s.u[r] - s.u[l])) / zs;
            } else {
                us[j] = 0.5 * (s.u[l] + s.u[r]);
                ps[j] = 0.0;
            }
        }
        match self.left {
            End1d::Wall => {
                us[0] = 0.0;
                ps[0] = th[0].2 - z[0] * s.u[0];
            }
            End1d::Pressure(pb) => {
                ps[0] = pb;
                us[0] = if z[0] > 0.0 {
                    s.u[0] + (pb - th[0].2) / z[0]
                } else {
                    s.u[0]
                };
            }
        }
        match self.right {
            End1d::Wall => {
                us[n] = 0.0;
                ps[n] = th[n - 1].2 + z[n - 1] * s.u[n - 1];
            }
            End1d::Pressure(pb) => {
                ps[n] = pb;
                us[n] = if z[n - 1] > 0.0 {
                    s.u[n - 1] + (th[n - 1].2 - pb) / z[n - 1]
                } else {
                    s.u[n - 1]
                };
            }
        }
        (us, ps)
    }

    /// Time derivatives `(dr, du, dw)` at a stage.
    fn rates(&self, s: &Stage) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let n = self.len();
        let (us, ps) = self.node_fluxes(s);
        let g = self.gamma;
        let mut du = vec![0.0; n];
        let mut dw = vec![0.0; n];
        for i in 0..n {
            let (al, ar) = (self.area(s.r[i]), self.area(s.r[i + 1]));
            let m = self.mass[i];
            let abar = 0.5 * (al + ar);
            du[i] = -abar * (ps[i + 1] - ps[i]) / m;
            let de = -(ar * ps[i + 1] * us[i + 1] - al * ps[i] * us[i]) / m;
            match self.mode {
                EnergyMode::Conservative => dw[i] = de,
                EnergyMode::EntropyHybrid => {
                    let dtau = (ar * us[i + 1] - al * us[i]) / m;
                    if dtau < 0.0 {
                        let (tau, _, p) = self.thermo(&s.r, &s.u, &s.w, i);
                        let deps = de - s.u[i] * du[i];
                        dw[i] = (g - 1.0) * tau.powf(g - 1.0) * (deps + p * dtau);
                    }
                }
            }
        }
        (us, du, dw)
    }

    /// Acoustic CFL limit, further capped so that no cell changes its
    /// width by more than a fifth in one step.
    fn stable_dt(&self) -> Result<f64> {
        let (us, _) = self.node_fluxes(&Stage {
            r: self.r.clone(),
            u: self.u.clone(),
            w: self.w.clone(),
        });
        let mut best = f64::INFINITY;
        for i in 0..self.len() {
            let (tau, _, p) = self.thermo(&self.r, &self.u, &self.w, i);
            let a = (self.gamma * p * tau).sqrt();
            let dr = self.r[i + 1] - self.r[i];
            if a > 0.0 {
                best = best.min(dr / a);
            }
            let du = (us[i + 1] - us[i]).abs();
            if du > 0.0 {
                best = best.min(0.5 * dr / du);
            }
        }
        if best.is_finite() {
            Ok(self.cfl * best)
        } else {
            Err(Error::GlobalVacuum)
        }
    }

    fn axpy(&self, base: &Stage, k: &(Vec<f64>, Vec<f64>, Vec<f64>), dt: f64) -> Stage {
        Stage {
            r: base.r.iter().zip(&k.0).map(|(a, b)| a + dt * b).collect(),
            u: base.u.iter().zip(&k.1).map(|(a, b)| a + dt * b).collect(),
            w: base.w.iter().zip(&k.2).map(|(a, b)| a + dt * b).collect(),
        }
    }

    /// Advances to `t_end`.
    pub fn run(&mut self, t_end: f64) -> Result<()> {
        while self.t < t_end {
            let mut dt = self.stable_dt()?;
            if self.t + dt > t_end {
                dt = t_end - self.t;
            }
            let s0 = Stage {
                r: self.r.clone(),
                u: self.u.clone(),
                w: self.w.clone(),
            };
            let k0 = self.rates(&s0);
            let s1 = self.axpy(&s0, &k0, dt);
            let k1 = self.rates(&s1);
            let s2 = self.axpy(&s1, &k1, dt);
            for (i, r) in self.r.iter_mut().enumerate() {
                *r = 0.5 * (s0.r[i] + s2.r[i]);
            }
            for i in 0..self.u.len() {
                self.u[i] = 0.5 * (s0.u[i] + s2.u[i]);
                self.w[i] = 0.5 * (s0.w[i] + s2.w[i]);
            }
            if self.r.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(Error::StepFailed {
                    t: self.t,
                    reason: "1D reference grid tangled".into(),
                });
            }
            self.t += dt;
            self.steps += 1;
        }
        Ok(())
    }

    /// Mass-weighted mean of `ε` over cells whose centers lie in `[a, b]`.
    pub fn mean_internal_energy(&self, a: f64, b: f64) -> Option<f64> {
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..self.len() {
            let c = self.center(i);
            if c >= a && c <= b {
                num += self.mass[i] * self.internal_energy(i);
                den += self.mass[i];
            }
        }
        (den > 0.0).then(|| num / den)
    }

    /// Position of the steepest density drop scanning outward, i.e. the
    /// shock front of a diverging blast.
    pub fn steepest_density_drop(&self) -> f64 {
        let mut best = (0.0, self.r[0]);
        for i in 0..self.len().saturating_sub(1) {
            let drop = (self.density(i) - self.density(i + 1)) / (self.center(i + 1) - self.center(i));
            if drop > best.0 {
                best = (drop, self.r[i + 1]);
            }
        }
        best.1
    }
}

/// Sedov blast reference in cylindrical symmetry: energy `e0` over a
/// quarter plane deposited in the innermost cell.
pub fn sedov_reference(gamma: f64, n: usize, r_max: f64, rho0: f64, p0: f64, e0: f64) -> Result<Reference1d> {
    let dr = r_max / n as f64;
    let v0 = 0.5 * dr * dr;
    // energy per radian of the quarter plane
    let e_rad = e0 / std::f64::consts::FRAC_PI_2;
    let p_in = (gamma - 1.0) * e_rad / v0;
    Reference1d::new(
        Geometry1d::Cylindrical,
        EnergyMode::Conservative,
        gamma,
        (0.0, r_max),
        n,
        End1d::Wall,
        End1d::Wall,
        |r| Cell1d {
            rho: rho0,
            u: 0.0,
            p: if r < dr { p_in.max(p0) } else { p0 },
        },
    )
}
