//! Entropy-conservative Lagrangian scheme.
//!
//! Nodal fluxes are `|l_pc n_pc|`-weighted averages of the surrounding cell
//! values. The scalar `α_p` corrects the momentum flux so that contracting
//! the fluctuations with the dual variables reproduces the energy flux
//! exactly, which makes the scheme conserve total energy while producing no
//! entropy.

use crate::boundary::{project, NodeBoundary};
use crate::state::CornerTerms;
use crate::vec2::Vec2;

/// Default threshold below which the `α_p` denominator counts as zero.
pub const ALPHA_GUARD: f64 = 1e-20;

/// Geometry and cell data seen from one corner `(p, c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerSample {
    /// Corner vector `l_pc n_pc`.
    pub l: Vec2,
    pub v: Vec2,
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EclNodeData {
    pub v: Vec2,
    pub p: f64,
    pub alpha: f64,
}

/// `|l|`-weighted averages `(v̄_p, p̄_p)`; `None` when the total weight
/// vanishes.
pub fn nodal_averages(samples: &[CornerSample]) -> Option<(Vec2, f64)> {
    let mut w = 0.0;
    let mut v = Vec2::ZERO;
    let mut p = 0.0;
    for s in samples {
        let ln = s.l.norm();
        w += ln;
        v += s.v * ln;
        p += s.p * ln;
    }
    (w > 0.0).then(|| (v / w, p / w))
}

/// Correction factor for given nodal velocity and pressure.
///
/// `f_ext` is the external pressure force on the node's boundary half-edges.
/// The numerator is accumulated in jump form, which is algebraically
/// `Σ l·(p_c v_c − p_c v_p − p_p v_c) + f_ext·v_p` but keeps cancellation
/// small for nearly uniform states.
pub fn correction_factor(samples: &[CornerSample], v_p: Vec2, p_p: f64, f_ext: Vec2, guard: f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    let mut sum_l = Vec2::ZERO;
    for s in samples {
        let dv = s.v - v_p;
        num += (s.p - p_p) * s.l.dot(dv);
        den += s.l.norm() * dv.norm_sq();
        sum_l += s.l;
    }
    num += v_p.dot(f_ext - sum_l * p_p);
    if den < guard {
        0.0
    } else {
        num / den
    }
}

/// ECL nodal solution with boundary closure.
///
/// Interior and pressure nodes keep the averaged velocity; wall nodes use
/// its tangential part and pinned nodes are at rest. The nodal pressure is
/// the prescribed `p_b` on pressure nodes and the weighted average
/// otherwise.
pub fn node_data(samples: &[CornerSample], bc: &NodeBoundary, guard: f64) -> Option<EclNodeData> {
    let (v_avg, p_avg) = nodal_averages(samples)?;
    let v = project(bc.constraint, v_avg);
    let p = bc.pressure.unwrap_or(p_avg);
    let alpha = correction_factor(samples, v, p, bc.f_ext, guard);
    Some(EclNodeData { v, p, alpha })
}

/// Corner contribution `(l·(v_p − v_c), l(p_p − p_c) + |l| α (v_c − v_p), 0)`.
#[inline]
pub fn corner_terms(s: &CornerSample, d: &EclNodeData) -> CornerTerms {
    let dv = s.v - d.v;
    CornerTerms {
        volume: -s.l.dot(dv),
        force: s.l * (d.p - s.p) + dv * (s.l.norm() * d.alpha),
        entropy: 0.0,
    }
}

/// Nodal energy balance residual: the contraction of the corner terms with
/// `(−p_c, v_c, θ_c)` must equal `Σ l·p_c v_c − f_ext·v_p`. The first sum
/// cancels over all nodes by cell closure, the second is the work of the
/// external pressure. Returns the residual relative to the magnitude of the
/// summed terms.
pub fn compatibility_residual(samples: &[CornerSample], d: &EclNodeData, f_ext: Vec2) -> f64 {
    let mut lhs = 0.0;
    let mut rhs = -f_ext.dot(d.v);
    let mut scale = (f_ext.norm() * d.v.norm()).abs();
    for s in samples {
        let t = corner_terms(s, d);
        lhs += -s.p * t.volume - s.v.dot(t.force);
        rhs += s.p * s.l.dot(s.v);
        scale += s.l.norm() * (s.p.abs() * (s.v.norm() + d.v.norm()) + d.p.abs() * s.v.norm());
    }
    if scale == 0.0 {
        (lhs - rhs).abs()
    } else {
        (lhs - rhs).abs() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Constraint;

    fn sample(l: Vec2, v: Vec2, p: f64) -> CornerSample {
        CornerSample { l, v, p }
    }

    /// Corner vectors of a node surrounded by a regular fan: they sum to 0.
    fn fan(n: usize, radius: f64) -> Vec<Vec2> {
        (0..n)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / n as f64;
                Vec2::new(a.cos(), a.sin()) * radius
            })
            .collect()
    }

    #[test]
    fn averages_of_identical_cells() {
        let s: Vec<_> = fan(4, 0.3)
            .into_iter()
            .map(|l| sample(l, Vec2::new(1.0, 2.0), 3.0))
            .collect();
        let (v, p) = nodal_averages(&s).unwrap();
        assert!((v - Vec2::new(1.0, 2.0)).norm() < 1e-15);
        assert!((p - 3.0).abs() < 1e-15);
    }

    #[test]
    fn averages_with_two_and_three_cells() {
        let s = [
            sample(Vec2::new(1.0, 0.0), Vec2::ZERO, 0.0),
            sample(Vec2::new(-1.0, 0.0), Vec2::new(2.0, 0.0), 0.0),
        ];
        assert_eq!(nodal_averages(&s).unwrap().0, Vec2::new(1.0, 0.0));
        let s = [
            sample(Vec2::new(1.0, 0.0), Vec2::ZERO, 1.0),
            sample(Vec2::new(0.0, 2.0), Vec2::ZERO, 2.0),
            sample(Vec2::new(-3.0, 0.0), Vec2::ZERO, 3.0),
        ];
        assert!((nodal_averages(&s).unwrap().1 - 7.0 / 3.0).abs() < 1e-15);
        assert!(nodal_averages(&[sample(Vec2::ZERO, Vec2::ZERO, 1.0)]).is_none());
    }

    #[test]
    fn alpha_vanishes_for_uniform_velocity() {
        let s: Vec<_> = fan(5, 0.2)
            .into_iter()
            .enumerate()
            .map(|(k, l)| sample(l, Vec2::new(0.5, -0.5), 1.0 + k as f64))
            .collect();
        let d = node_data(&s, &NodeBoundary::INTERIOR, ALPHA_GUARD).unwrap();
        assert_eq!(d.alpha, 0.0);
    }

    #[test]
    fn alpha_vanishes_for_uniform_pressure() {
        let s: Vec<_> = fan(6, 0.2)
            .into_iter()
            .enumerate()
            .map(|(k, l)| sample(l, Vec2::new(k as f64, 1.0 - k as f64), 2.0))
            .collect();
        let d = node_data(&s, &NodeBoundary::INTERIOR, ALPHA_GUARD).unwrap();
        assert!(d.alpha.abs() < 1e-15);
    }

    #[test]
    fn compatibility_holds_on_an_irregular_node() {
        let ls = [
            Vec2::new(0.3, 0.1),
            Vec2::new(-0.1, 0.4),
            Vec2::new(-0.35, -0.05),
            Vec2::new(-0.05, -0.3),
        ];
        let mut s: Vec<_> = ls
            .iter()
            .enumerate()
            .map(|(k, &l)| sample(l, Vec2::new(0.1 * k as f64, -0.3 + k as f64), 1.0 + 0.5 * k as f64))
            .collect();
        let closing = -ls.iter().fold(Vec2::ZERO, |a, &b| a + b);
        s.push(sample(closing, Vec2::new(-0.4, 0.2), 0.7));
        let d = node_data(&s, &NodeBoundary::INTERIOR, ALPHA_GUARD).unwrap();
        assert!(d.alpha != 0.0);
        assert!(compatibility_residual(&s, &d, Vec2::ZERO) < 1e-14);
    }

    #[test]
    fn wall_node_velocity_is_tangential() {
        let bc = NodeBoundary {
            constraint: Constraint::Line {
                normal: Vec2::new(0.0, -1.0),
                origin: Vec2::ZERO,
            },
            pressure: None,
            f_ext: Vec2::ZERO,
            l_pb: Vec2::new(0.0, -1.0),
        };
        let s = [
            sample(Vec2::new(-0.5, -0.5), Vec2::new(0.0, 1.0), 1.0),
            sample(Vec2::new(0.5, -0.5), Vec2::new(0.0, 2.0), 2.0),
        ];
        let d = node_data(&s, &bc, ALPHA_GUARD).unwrap();
        assert_eq!(d.v, Vec2::ZERO);
        let s = [
            sample(Vec2::new(-0.5, -0.5), Vec2::new(0.4, 0.0), 1.0),
            sample(Vec2::new(0.5, -0.5), Vec2::new(0.4, 0.0), 2.0),
        ];
        let d = node_data(&s, &bc, ALPHA_GUARD).unwrap();
        assert!((d.v - Vec2::new(0.4, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn pressure_node_uses_prescribed_pressure() {
        let l_pb = Vec2::new(0.0, -1.0);
        let bc = NodeBoundary {
            constraint: Constraint::Free,
            pressure: Some(0.0),
            f_ext: Vec2::ZERO,
            l_pb,
        };
        let s = [
            sample(Vec2::new(-0.5, -0.5), Vec2::new(0.1, 0.3), 1.0),
            sample(Vec2::new(0.5, -0.5), Vec2::new(-0.2, 0.1), 2.0),
        ];
        let d = node_data(&s, &bc, ALPHA_GUARD).unwrap();
        assert_eq!(d.p, 0.0);
        assert!(compatibility_residual(&s, &d, bc.f_ext) < 1e-14);
    }
}
