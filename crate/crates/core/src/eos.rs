//! Ideal-gas complete equation of state `ε(τ, S)`.

use crate::error::{Error, Result};
use crate::vec2::Vec2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EosParams {
    pub gamma: f64,
    pub cv: f64,
}

impl Default for EosParams {
    fn default() -> Self {
        EosParams { gamma: 1.4, cv: 1.0 }
    }
}

/// All thermodynamic quantities at one `(τ, S)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    pub tau: f64,
    pub entropy: f64,
    pub rho: f64,
    pub eps: f64,
    pub p: f64,
    pub theta: f64,
    pub a: f64,
}

impl EosParams {
    pub fn new(gamma: f64, cv: f64) -> Result<Self> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!("gamma = {gamma} must exceed 1")));
        }
        if !(cv > 0.0) || !cv.is_finite() {
            return Err(Error::InvalidParameter(format!("c_v = {cv} must be positive")));
        }
        Ok(EosParams { gamma, cv })
    }

    pub fn cp(&self) -> f64 {
        self.gamma * self.cv
    }

    fn check_tau(tau: f64) -> Result<()> {
        if tau > 0.0 && tau.is_finite() {
            Ok(())
        } else {
            Err(Error::Domain(format!("specific volume τ = {tau} must be positive")))
        }
    }

    /// `ε = exp(S/c_v) / (τ^{γ-1} (γ-1))` without domain checks.
    #[inline]
    pub fn eps_unchecked(&self, tau: f64, s: f64) -> f64 {
        (s / self.cv).exp() / (tau.powf(self.gamma - 1.0) * (self.gamma - 1.0))
    }

    /// Full thermodynamic state without domain checks; the hot paths call
    /// this on states already known to be admissible.
    #[inline]
    pub fn point_unchecked(&self, tau: f64, s: f64) -> ThermoPoint {
        let eps = self.eps_unchecked(tau, s);
        let p = (self.gamma - 1.0) * eps / tau;
        ThermoPoint {
            tau,
            entropy: s,
            rho: 1.0 / tau,
            eps,
            p,
            theta: eps / self.cv,
            a: (self.gamma * p * tau).sqrt(),
        }
    }

    pub fn point(&self, tau: f64, s: f64) -> Result<ThermoPoint> {
        Self::check_tau(tau)?;
        let pt = self.point_unchecked(tau, s);
        if !pt.eps.is_finite() {
            return Err(Error::Domain(format!("ε(τ = {tau}, S = {s}) is not finite")));
        }
        Ok(pt)
    }

    pub fn internal_energy(&self, tau: f64, s: f64) -> Result<f64> {
        Ok(self.point(tau, s)?.eps)
    }

    /// `(p, θ) = (-∂ε/∂τ, ∂ε/∂S)`.
    pub fn pressure_temperature(&self, tau: f64, s: f64) -> Result<(f64, f64)> {
        let pt = self.point(tau, s)?;
        Ok((pt.p, pt.theta))
    }

    pub fn sound_speed(&self, tau: f64, s: f64) -> Result<f64> {
        Ok(self.point(tau, s)?.a)
    }

    /// `a = √(γ p τ)`; zero in the vacuum limit.
    pub fn sound_speed_from_pressure(&self, tau: f64, p: f64) -> Result<f64> {
        Self::check_tau(tau)?;
        if !(p >= 0.0) {
            return Err(Error::Domain(format!("pressure {p} is negative")));
        }
        Ok((self.gamma * p * tau).sqrt())
    }

    /// `S = c_v ln(p τ^γ)`, the inverse of
    /// [`pressure_temperature`](Self::pressure_temperature) in `S`.
    pub fn entropy_from_primitive(&self, rho: f64, p: f64) -> Result<f64> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::Domain(format!("density {rho} must be positive")));
        }
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::Domain(format!("pressure {p} must be positive")));
        }
        let tau = 1.0 / rho;
        Ok(self.cv * (p.ln() + self.gamma * tau.ln()))
    }

    /// Specific total energy `E = ε + ½|v|²`.
    pub fn total_energy(&self, tau: f64, v: Vec2, s: f64) -> Result<f64> {
        Ok(self.internal_energy(tau, s)? + 0.5 * v.norm_sq())
    }

    /// `w = ∂E/∂q = (-p, v, θ)` for `q = (τ, v, S)` and
    /// `w* = ∂S/∂q = (p, -v, 1)/θ` for `q = (τ, v, E)`.
    pub fn dual_variables(&self, tau: f64, v: Vec2, s: f64) -> Result<([f64; 4], [f64; 4])> {
        let pt = self.point(tau, s)?;
        if !(pt.theta > 0.0) {
            return Err(Error::Domain(format!("temperature {} must be positive", pt.theta)));
        }
        let w = [-pt.p, v.x, v.y, pt.theta];
        let ws = [pt.p / pt.theta, -v.x / pt.theta, -v.y / pt.theta, 1.0 / pt.theta];
        Ok((w, ws))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EOS: EosParams = EosParams { gamma: 1.4, cv: 1.0 };

    #[test]
    fn reference_point() {
        assert!((EOS.internal_energy(1.0, 0.0).unwrap() - 2.5).abs() < 1e-15);
        let (p, th) = EOS.pressure_temperature(1.0, 0.0).unwrap();
        assert!((p - 1.0).abs() < 1e-15 && (th - 2.5).abs() < 1e-15);
        assert!((EOS.sound_speed(1.0, 0.0).unwrap() - 1.4f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn expanded_state() {
        let e = EOS.internal_energy(2.0, 0.0).unwrap();
        assert!((e - 1.894_646).abs() < 1e-6, "{e}");
    }

    #[test]
    fn entropy_shift_doubles_energy() {
        let e0 = EOS.internal_energy(0.7, 0.3).unwrap();
        let e1 = EOS.internal_energy(0.7, 0.3 + 2f64.ln()).unwrap();
        assert!((e1 / e0 - 2.0).abs() < 1e-14);
    }

    #[test]
    fn nonpositive_volume_is_a_domain_error() {
        assert!(EOS.internal_energy(0.0, 0.0).is_err());
        assert!(EOS.pressure_temperature(-1.0, 0.0).is_err());
    }

    #[test]
    fn pressure_matches_finite_difference() {
        let h = 1e-4;
        let (p, th) = EOS.pressure_temperature(1.0, 0.0).unwrap();
        let dtau =
            (EOS.internal_energy(1.0 + h, 0.0).unwrap() - EOS.internal_energy(1.0 - h, 0.0).unwrap()) / (2.0 * h);
        let ds = (EOS.internal_energy(1.0, h).unwrap() - EOS.internal_energy(1.0, -h).unwrap()) / (2.0 * h);
        assert!((p + dtau).abs() < 1e-7);
        assert!((th - ds).abs() < 1e-7);
    }

    #[test]
    fn sound_speed_matches_isentrope_slope() {
        let (tau, s, h) = (0.8, 0.2, 1e-4);
        let a = EOS.sound_speed(tau, s).unwrap();
        let dp = (EOS.pressure_temperature(tau + h, s).unwrap().0 - EOS.pressure_temperature(tau - h, s).unwrap().0)
            / (2.0 * h);
        assert!((a * a + tau * tau * dp).abs() < 1e-6);
        assert_eq!(EOS.sound_speed_from_pressure(1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn entropy_from_primitive_values() {
        assert_eq!(EOS.entropy_from_primitive(1.0, 1.0).unwrap(), 0.0);
        let s = EOS.entropy_from_primitive(0.125, 0.1).unwrap();
        let expected = (0.1 * 8f64.powf(1.4)).ln();
        assert!((s - expected).abs() < 1e-14);
        assert!((s - 0.608).abs() < 1e-3);
        let (p, _) = EOS.pressure_temperature(8.0, s).unwrap();
        assert!((p - 0.1).abs() / 0.1 < 1e-12);
        assert!(EOS.entropy_from_primitive(1.0, 0.0).is_err());
        assert!(EOS.entropy_from_primitive(0.0, 1.0).is_err());
    }

    #[test]
    fn dual_variables_at_reference() {
        let (w, ws) = EOS.dual_variables(1.0, Vec2::ZERO, 0.0).unwrap();
        let close = |a: [f64; 4], b: [f64; 4]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-15);
        assert!(close(w, [-1.0, 0.0, 0.0, 2.5]));
        assert!(close(ws, [0.4, 0.0, 0.0, 0.4]));
        let e = EOS.total_energy(1.0, Vec2::new(1.0, 1.0), 0.0).unwrap();
        assert!((e - 3.5).abs() < 1e-15);
    }

    #[test]
    fn gibbs_relation_by_finite_differences() {
        let (tau, v, s) = (0.9, Vec2::new(0.3, -0.4), 0.1);
        let dq = [0.2, -0.5, 0.7, 0.3];
        let h = 1e-5;
        let energy = |t: f64| {
            EOS.total_energy(tau + t * dq[0], v + Vec2::new(dq[1], dq[2]) * t, s + t * dq[3])
                .unwrap()
        };
        let fd = (energy(h) - energy(-h)) / (2.0 * h);
        let (w, _) = EOS.dual_variables(tau, v, s).unwrap();
        let exact: f64 = w.iter().zip(dq).map(|(a, b)| a * b).sum();
        assert!((fd - exact).abs() < 1e-8);

        // w* against S(τ, v, E)
        let e0 = EOS.total_energy(tau, v, s).unwrap();
        let dqe = [0.1, 0.2, -0.3, 0.4];
        let entropy = |t: f64| {
            let tt = tau + t * dqe[0];
            let vv = v + Vec2::new(dqe[1], dqe[2]) * t;
            let eps = e0 + t * dqe[3] - 0.5 * vv.norm_sq();
            let p = (EOS.gamma - 1.0) * eps / tt;
            EOS.entropy_from_primitive(1.0 / tt, p).unwrap()
        };
        let fd = (entropy(h) - entropy(-h)) / (2.0 * h);
        let (_, ws) = EOS.dual_variables(tau, v, s).unwrap();
        let exact: f64 = ws.iter().zip(dqe).map(|(a, b)| a * b).sum();
        assert!((fd - exact).abs() < 1e-8);
    }

    #[test]
    fn ideal_gas_identity() {
        for &(tau, s) in &[(0.05, -2.0), (1.0, 0.0), (10.0, 2.0)] {
            let pt = EOS.point(tau, s).unwrap();
            assert!((pt.p * pt.tau - 0.4 * pt.eps).abs() <= 1e-14 * pt.eps);
        }
    }
}
