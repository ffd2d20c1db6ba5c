//! Pressure and slip-wall closures of the nodal solvers.
//!
//! Periodicity needs no treatment here: periodic sides are glued into a
//! single set of nodes when the mesh is built.

use crate::geometry::{Constraint, Mesh};
use crate::vec2::{Sym2, Vec2};

/// Boundary data of one node at the current node positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeBoundary {
    pub constraint: Constraint,
    /// Prescribed nodal pressure, if the node touches a pressure edge.
    pub pressure: Option<f64>,
    /// `Σ p_b l_e n_e` over the pressure half-edges at the node.
    pub f_ext: Vec2,
    /// Boundary corner vector `l_pb n_pb`.
    pub l_pb: Vec2,
}

impl NodeBoundary {
    pub const INTERIOR: NodeBoundary = NodeBoundary {
        constraint: Constraint::Free,
        pressure: None,
        f_ext: Vec2::ZERO,
        l_pb: Vec2::ZERO,
    };

    pub fn resolve(mesh: &Mesh, x: &[Vec2], p: usize) -> NodeBoundary {
        let bc = mesh.node_bc(p);
        if !bc.is_boundary() {
            return Self::INTERIOR;
        }
        NodeBoundary {
            constraint: bc.constraint,
            pressure: bc.pressure,
            f_ext: mesh.external_pressure_force(x, p),
            l_pb: mesh.boundary_corner_vector(x, p),
        }
    }

    /// Unit outward normal `n_b = l_pb n_pb / |l_pb n_pb|`.
    pub fn normal(&self) -> Option<Vec2> {
        let n = self.l_pb.norm();
        (n > 0.0).then(|| self.l_pb / n)
    }
}

/// Removes the velocity components forbidden by `constraint`.
#[inline]
pub fn project(constraint: Constraint, v: Vec2) -> Vec2 {
    match constraint {
        Constraint::Free => v,
        Constraint::Line { normal, .. } => v - normal * v.dot(normal),
        Constraint::Pinned => Vec2::ZERO,
    }
}

/// Solves `M v = rhs` subject to the node constraint: the full 2×2 system
/// for free nodes, its tangential reduction `tᵀM t v_t = tᵀ rhs` on a wall
/// line, and `v = 0` for pinned nodes. Returns `None` when the relevant
/// matrix is numerically singular.
pub fn solve_constrained(m: Sym2, rhs: Vec2, constraint: Constraint, rel_tol: f64) -> Option<Vec2> {
    match constraint {
        Constraint::Free => m.solve(rhs, rel_tol),
        Constraint::Line { normal, .. } => {
            let t = normal.perp_ccw();
            let mt = m.quad(t);
            let tr = m.trace();
            if !(mt > rel_tol * tr) || !(mt > 0.0) {
                return None;
            }
            Some(t * (t.dot(rhs) / mt))
        }
        Constraint::Pinned => Some(Vec2::ZERO),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wall_x() -> Constraint {
        Constraint::Line {
            normal: Vec2::new(0.0, -1.0),
            origin: Vec2::ZERO,
        }
    }

    #[test]
    fn projection_kills_normal_component() {
        let v = project(wall_x(), Vec2::new(0.3, 2.0));
        assert_eq!(v, Vec2::new(0.3, 0.0));
        assert_eq!(project(Constraint::Pinned, Vec2::new(1.0, 1.0)), Vec2::ZERO);
    }

    #[test]
    fn tangential_solve_reproduces_uniform_tangential_state() {
        let m = Sym2 {
            xx: 2.0,
            xy: 0.3,
            yy: 1.0,
        };
        let v = Vec2::new(0.7, 0.0);
        let got = solve_constrained(m, m.apply(v), wall_x(), 1e-14).unwrap();
        assert!((got - v).norm() < 1e-15);
        assert_eq!(got.y, 0.0);
    }

    #[test]
    fn zero_matrix_is_singular_for_free_and_line() {
        assert!(solve_constrained(Sym2::ZERO, Vec2::new(1.0, 0.0), Constraint::Free, 1e-14).is_none());
        assert!(solve_constrained(Sym2::ZERO, Vec2::new(1.0, 0.0), wall_x(), 1e-14).is_none());
    }
}
