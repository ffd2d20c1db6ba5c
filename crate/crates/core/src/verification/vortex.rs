//! Isentropic vortex advected by a uniform background flow on `[0,10]²`.

use crate::state::Primitive;
use crate::vec2::Vec2;
use std::f64::consts::PI;

/// Vortex parameters; the default is the standard strength-5 vortex centred
/// in the periodic box with background `(ρ, v, p) = (1, (1,1), 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vortex {
    pub gamma: f64,
    pub strength: f64,
    pub center: Vec2,
    pub background_velocity: Vec2,
    /// Side length of the periodic box `[0, L]²`.
    pub period: f64,
}

impl Default for Vortex {
    fn default() -> Self {
        Vortex {
            gamma: 1.4,
            strength: 5.0,
            center: Vec2::new(5.0, 5.0),
            background_velocity: Vec2::new(1.0, 1.0),
            period: 10.0,
        }
    }
}

impl Vortex {
    /// Initial field at `x`.
    pub fn initial(&self, x: Vec2) -> Primitive {
        let g = self.gamma;
        let b = self.strength;
        let d = x - self.center;
        let r2 = d.norm_sq();
        let dtemp = -(g - 1.0) * b * b / (8.0 * g * PI * PI) * (1.0 - r2).exp();
        let amp = b / (2.0 * PI) * (0.5 * (1.0 - r2)).exp();
        let temp = 1.0 + dtemp;
        Primitive {
            rho: temp.powf(1.0 / (g - 1.0)),
            vel: self.background_velocity + Vec2::new(-amp * d.y, amp * d.x),
            p: temp.powf(g / (g - 1.0)),
        }
    }

    /// Exact field at time `t`: the initial field translated by the
    /// background velocity, wrapped into the periodic box.
    pub fn exact(&self, x: Vec2, t: f64) -> Primitive {
        let y = x - self.background_velocity * t;
        let wrap = |a: f64| a.rem_euclid(self.period);
        // nearest periodic image of the vortex center
        let mut q = Vec2::new(wrap(y.x), wrap(y.y));
        let half = 0.5 * self.period;
        let c = self.center;
        if q.x - c.x > half {
            q.x -= self.period;
        } else if c.x - q.x > half {
            q.x += self.period;
        }
        if q.y - c.y > half {
            q.y -= self.period;
        } else if c.y - q.y > half {
            q.y += self.period;
        }
        self.initial(q)
    }
}
