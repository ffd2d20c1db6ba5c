//! Exact solution of the one-dimensional Riemann problem for a polytropic gas.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannState {
    pub rho: f64,
    /// Velocity normal to the initial discontinuity.
    pub u: f64,
    pub p: f64,
}

impl RiemannState {
    pub fn new(rho: f64, u: f64, p: f64) -> Self {
        RiemannState { rho, u, p }
    }

    fn sound_speed(&self, gamma: f64) -> f64 {
        (gamma * self.p / self.rho).sqrt()
    }
}

/// Wave family connecting an outer state to the star region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wave {
    Shock,
    Rarefaction,
}

/// Star-region solution of a Riemann problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarState {
    pub p: f64,
    pub u: f64,
    pub rho_left: f64,
    pub rho_right: f64,
    pub left_wave: Wave,
    pub right_wave: Wave,
}

/// Solution of a Riemann problem: star values or a vacuum fan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RiemannSolution {
    Star(StarState),
    /// The rarefactions separate and leave vacuum between the fronts
    /// `x/t = u_L + 2a_L/(γ−1)` and `u_R − 2a_R/(γ−1)`.
    Vacuum,
}

/// Exact Riemann solver with Newton iteration on the pressure function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactRiemann {
    pub left: RiemannState,
    pub right: RiemannState,
    pub gamma: f64,
    pub solution: RiemannSolution,
}

const REL_TOL: f64 = 1e-12;
const MAX_ITER: usize = 200;

/// `f_K(p)` and its derivative for the side with state `s`.
fn pressure_function(p: f64, s: &RiemannState, gamma: f64) -> (f64, f64) {
    let a = s.sound_speed(gamma);
    if p > s.p {
        let ak = 2.0 / ((gamma + 1.0) * s.rho);
        let bk = (gamma - 1.0) / (gamma + 1.0) * s.p;
        let q = (ak / (p + bk)).sqrt();
        let f = (p - s.p) * q;
        let df = q * (1.0 - 0.5 * (p - s.p) / (p + bk));
        (f, df)
    } else {
        let e = (gamma - 1.0) / (2.0 * gamma);
        let ratio = p / s.p;
        let f = 2.0 * a / (gamma - 1.0) * (ratio.powf(e) - 1.0);
        let df = if p > 0.0 {
            ratio.powf(-(gamma + 1.0) / (2.0 * gamma)) / (s.rho * a)
        } else {
            f64::INFINITY
        };
        (f, df)
    }
}

fn star_density(p: f64, s: &RiemannState, gamma: f64) -> (f64, Wave) {
    if p > s.p {
        let r = p / s.p;
        let g = (gamma - 1.0) / (gamma + 1.0);
        (s.rho * (r + g) / (g * r + 1.0), Wave::Shock)
    } else {
        (s.rho * (p / s.p).powf(1.0 / gamma), Wave::Rarefaction)
    }
}

impl ExactRiemann {
    pub fn solve(left: RiemannState, right: RiemannState, gamma: f64) -> Result<Self> {
        for s in [&left, &right] {
            if !(s.rho > 0.0) || !(s.p >= 0.0) || !s.u.is_finite() {
                return Err(Error::InvalidParameter(format!("invalid Riemann state {s:?}")));
            }
        }
        if !(gamma > 1.0) {
            return Err(Error::InvalidParameter(format!("gamma = {gamma}")));
        }
        let (al, ar) = (left.sound_speed(gamma), right.sound_speed(gamma));
        let du = right.u - left.u;
        // pressure-positivity condition: two rarefactions to zero pressure
        if 2.0 * (al + ar) / (gamma - 1.0) <= du {
            return Ok(ExactRiemann {
                left,
                right,
                gamma,
                solution: RiemannSolution::Vacuum,
            });
        }
        // two-rarefaction initial guess
        let e = (gamma - 1.0) / (2.0 * gamma);
        let num = al + ar - 0.5 * (gamma - 1.0) * du;
        let den = al / left.p.powf(e) + ar / right.p.powf(e);
        let mut p = (num / den).powf(1.0 / e).max(1e-14 * (left.p + right.p));
        let mut converged = false;
        for _ in 0..MAX_ITER {
            let (fl, dfl) = pressure_function(p, &left, gamma);
            let (fr, dfr) = pressure_function(p, &right, gamma);
            let g = fl + fr + du;
            let mut next = p - g / (dfl + dfr);
            if !(next > 0.0) {
                next = 0.5 * p;
            }
            let change = 2.0 * (next - p).abs() / (next + p);
            p = next;
            if change < REL_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::InvalidParameter(
                "exact Riemann iteration did not converge".into(),
            ));
        }
        let (fl, _) = pressure_function(p, &left, gamma);
        let (fr, _) = pressure_function(p, &right, gamma);
        let u = 0.5 * (left.u + right.u) + 0.5 * (fr - fl);
        let (rho_left, left_wave) = star_density(p, &left, gamma);
        let (rho_right, right_wave) = star_density(p, &right, gamma);
        Ok(ExactRiemann {
            left,
            right,
            gamma,
            solution: RiemannSolution::Star(StarState {
                p,
                u,
                rho_left,
                rho_right,
                left_wave,
                right_wave,
            }),
        })
    }

    pub fn star(&self) -> Option<StarState> {
        match self.solution {
            RiemannSolution::Star(s) => Some(s),
            RiemannSolution::Vacuum => None,
        }
    }

    /// Samples the self-similar solution at `ξ = x/t`.
    pub fn sample(&self, xi: f64) -> RiemannState {
        let g = self.gamma;
        let (l, r) = (self.left, self.right);
        let (al, ar) = (l.sound_speed(g), r.sound_speed(g));
        let fan_left = |xi: f64| {
            let c = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * al) * (l.u - xi);
            let rho = l.rho * c.powf(2.0 / (g - 1.0));
            let u = 2.0 / (g + 1.0) * (al + 0.5 * (g - 1.0) * l.u + xi);
            RiemannState::new(rho, u, l.p * c.powf(2.0 * g / (g - 1.0)))
        };
        let fan_right = |xi: f64| {
            let c = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * ar) * (r.u - xi);
            let rho = r.rho * c.powf(2.0 / (g - 1.0));
            let u = 2.0 / (g + 1.0) * (-ar + 0.5 * (g - 1.0) * r.u + xi);
            RiemannState::new(rho, u, r.p * c.powf(2.0 * g / (g - 1.0)))
        };
        let s = match self.solution {
            RiemannSolution::Vacuum => {
                let head_l = l.u - al;
                let tail_l = l.u + 2.0 * al / (g - 1.0);
                let head_r = r.u + ar;
                let tail_r = r.u - 2.0 * ar / (g - 1.0);
                return if xi <= head_l {
                    l
                } else if xi < tail_l {
                    fan_left(xi)
                } else if xi <= tail_r {
                    RiemannState::new(0.0, 0.5 * (tail_l + tail_r), 0.0)
                } else if xi < head_r {
                    fan_right(xi)
                } else {
                    r
                };
            }
            RiemannSolution::Star(s) => s,
        };
        if xi <= s.u {
            match s.left_wave {
                Wave::Shock => {
                    let pr = s.p / l.p;
                    let speed = l.u - al * ((g + 1.0) / (2.0 * g) * pr + (g - 1.0) / (2.0 * g)).sqrt();
                    if xi <= speed {
                        l
                    } else {
                        RiemannState::new(s.rho_left, s.u, s.p)
                    }
                }
                Wave::Rarefaction => {
                    let a_star = al * (s.p / l.p).powf((g - 1.0) / (2.0 * g));
                    if xi <= l.u - al {
                        l
                    } else if xi >= s.u - a_star {
                        RiemannState::new(s.rho_left, s.u, s.p)
                    } else {
                        fan_left(xi)
                    }
                }
            }
        } else {
            match s.right_wave {
                Wave::Shock => {
                    let pr = s.p / r.p;
                    let speed = r.u + ar * ((g + 1.0) / (2.0 * g) * pr + (g - 1.0) / (2.0 * g)).sqrt();
                    if xi >= speed {
                        r
                    } else {
                        RiemannState::new(s.rho_right, s.u, s.p)
                    }
                }
                Wave::Rarefaction => {
                    let a_star = ar * (s.p / r.p).powf((g - 1.0) / (2.0 * g));
                    if xi >= r.u + ar {
                        r
                    } else if xi <= s.u + a_star {
                        RiemannState::new(s.rho_right, s.u, s.p)
                    } else {
                        fan_right(xi)
                    }
                }
            }
        }
    }

    /// Position at time `t` of the left-going, contact and right-going
    /// wave fronts for a discontinuity at `x_d`. Rarefactions report their
    /// head and tail.
    pub fn wave_positions(&self, x_d: f64, t: f64) -> Vec<f64> {
        let g = self.gamma;
        let (l, r) = (self.left, self.right);
        let (al, ar) = (l.sound_speed(g), r.sound_speed(g));
        let mut out = Vec::new();
        match self.solution {
            RiemannSolution::Vacuum => {
                out.extend([
                    l.u - al,
                    l.u + 2.0 * al / (g - 1.0),
                    r.u - 2.0 * ar / (g - 1.0),
                    r.u + ar,
                ]);
            }
            RiemannSolution::Star(s) => {
                match s.left_wave {
                    Wave::Shock => {
                        out.push(l.u - al * ((g + 1.0) / (2.0 * g) * s.p / l.p + (g - 1.0) / (2.0 * g)).sqrt())
                    }
                    Wave::Rarefaction => {
                        out.push(l.u - al);
                        out.push(s.u - al * (s.p / l.p).powf((g - 1.0) / (2.0 * g)));
                    }
                }
                out.push(s.u);
                match s.right_wave {
                    Wave::Shock => {
                        out.push(r.u + ar * ((g + 1.0) / (2.0 * g) * s.p / r.p + (g - 1.0) / (2.0 * g)).sqrt())
                    }
                    Wave::Rarefaction => {
                        out.push(s.u + ar * (s.p / r.p).powf((g - 1.0) / (2.0 * g)));
                        out.push(r.u + ar);
                    }
                }
            }
        }
        out.into_iter().map(|xi| x_d + xi * t).collect()
    }
}

/// Relative Rankine–Hugoniot residual across a shock of speed `s`
/// separating `a` and `b`: the largest of the mass, momentum and energy
/// flux mismatches `|[F] − s[U]|`, scaled by the flux magnitude.
pub fn rankine_hugoniot_residual(a: &RiemannState, b: &RiemannState, s: f64, gamma: f64) -> f64 {
    let cons = |q: &RiemannState| {
        let e = q.p / (gamma - 1.0) + 0.5 * q.rho * q.u * q.u;
        [q.rho, q.rho * q.u, e]
    };
    let flux = |q: &RiemannState| {
        let e = q.p / (gamma - 1.0) + 0.5 * q.rho * q.u * q.u;
        [q.rho * q.u, q.rho * q.u * q.u + q.p, q.u * (e + q.p)]
    };
    let (ua, ub, fa, fb) = (cons(a), cons(b), flux(a), flux(b));
    (0..3)
        .map(|k| {
            let r = (fb[k] - fa[k]) - s * (ub[k] - ua[k]);
            let scale = fa[k].abs() + fb[k].abs() + (s * ua[k]).abs() + (s * ub[k]).abs();
            r.abs() / scale.max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max)
}

/// The three Toro test problems used in the shock-tube experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiemannProblem {
    Rp1,
    Rp2,
    Rp3,
}

impl RiemannProblem {
    pub fn states(self) -> (RiemannState, RiemannState) {
        match self {
            RiemannProblem::Rp1 => (RiemannState::new(1.0, 0.0, 1.0), RiemannState::new(0.125, 0.0, 0.1)),
            RiemannProblem::Rp2 => (
                RiemannState::new(0.445, 0.698, 3.528),
                RiemannState::new(0.5, 0.0, 0.571),
            ),
            RiemannProblem::Rp3 => (RiemannState::new(1.0, -2.0, 0.4), RiemannState::new(1.0, 2.0, 0.4)),
        }
    }

    pub fn final_time(self) -> f64 {
        match self {
            RiemannProblem::Rp1 => 0.2,
            RiemannProblem::Rp2 => 0.14,
            RiemannProblem::Rp3 => 0.15,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RiemannProblem::Rp1 => "rp1",
            RiemannProblem::Rp2 => "rp2",
            RiemannProblem::Rp3 => "rp3",
        }
    }

    pub fn exact(self, gamma: f64) -> Result<ExactRiemann> {
        let (l, r) = self.states();
        ExactRiemann::solve(l, r, gamma)
    }
}

impl std::str::FromStr for RiemannProblem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rp1" | "sod" => Ok(RiemannProblem::Rp1),
            "rp2" | "lax" => Ok(RiemannProblem::Rp2),
            "rp3" => Ok(RiemannProblem::Rp3),
            other => Err(Error::Parse(format!("unknown Riemann problem '{other}'"))),
        }
    }
}
