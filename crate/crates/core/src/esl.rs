//! Entropy-stable Lagrangian scheme (EUCCLHYD in fluctuation form).
//!
//! Each corner carries a symmetric positive semi-definite viscosity matrix
//! `M_pc`. The nodal velocity `v*_p` balances the sub-cell forces around the
//! node, and the viscous work of every corner is returned to the cell as the
//! entropy production `Π_pc ≥ 0`.

use crate::boundary::{solve_constrained, NodeBoundary};
use crate::ecl::CornerSample;
use crate::geometry::Corner;
use crate::state::CornerTerms;
use crate::vec2::{Sym2, Vec2};

/// Relative determinant guard of the nodal 2×2 solve.
pub const DET_TOL: f64 = 1e-14;

/// `M_pc = ρ_c a_c (l⁻ n⁻⊗n⁻ + l⁺ n⁺⊗n⁺)`, with `ρ_c a_c = a_c / τ_c`.
#[inline]
pub fn corner_matrix(corner: &Corner, impedance: f64) -> Sym2 {
    (Sym2::outer(corner.n_minus) * corner.l_minus + Sym2::outer(corner.n_plus) * corner.l_plus) * impedance
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EslNodeData {
    pub v_star: Vec2,
    /// Assembled nodal matrix `M_p = Σ_c M_pc`.
    pub m: Sym2,
}

/// Solves `M_p v* = Σ_c (l_pc n_pc p_c + M_pc v_c) − f_ext` under the node
/// constraint. `None` signals a singular system (vacuum or degenerate
/// corners).
pub fn nodal_solver(samples: &[CornerSample], matrices: &[Sym2], bc: &NodeBoundary, tol: f64) -> Option<EslNodeData> {
    let mut m = Sym2::ZERO;
    let mut rhs = -bc.f_ext;
    for (s, mpc) in samples.iter().zip(matrices) {
        m += *mpc;
        rhs += s.l * s.p + mpc.apply(s.v);
    }
    let v_star = solve_constrained(m, rhs, bc.constraint, tol)?;
    Some(EslNodeData { v_star, m })
}

/// Sub-cell force `l_pc n_pc p*_pc = l_pc n_pc p_c − M_pc (v* − v_c)`.
#[inline]
pub fn subcell_force(l: Vec2, p_c: f64, m: &Sym2, v_star: Vec2, v_c: Vec2) -> Vec2 {
    l * p_c - m.apply(v_star - v_c)
}

/// `Π_pc = (v_c − v*)ᵀ M_pc (v_c − v*) / θ_c`.
#[inline]
pub fn entropy_production(m: &Sym2, v_c: Vec2, v_star: Vec2, theta: f64) -> f64 {
    m.quad(v_c - v_star) / theta
}

/// Corner contribution `(l·(v* − v_c), M (v_c − v*), Π_pc)`.
#[inline]
pub fn corner_terms(s: &CornerSample, m: &Sym2, theta: f64, v_star: Vec2) -> CornerTerms {
    let d = s.v - v_star;
    let md = m.apply(d);
    CornerTerms {
        volume: -s.l.dot(d),
        force: md,
        entropy: d.dot(md) / theta,
    }
}

/// `|Σ_c (l p*_pc − l p_c) − (Σ l p* target)|` relative to `Σ |l| p_c`, where
/// the target is zero at interior nodes and the external force at pressure
/// nodes.
pub fn force_balance_residual(samples: &[CornerSample], matrices: &[Sym2], d: &EslNodeData, f_ext: Vec2) -> f64 {
    let mut sum = Vec2::ZERO;
    let mut scale = 0.0;
    for (s, m) in samples.iter().zip(matrices) {
        sum += subcell_force(s.l, s.p, m, d.v_star, s.v);
        scale += s.l.norm() * s.p.abs() + m.apply(d.v_star - s.v).norm();
    }
    let r = (sum - f_ext).norm();
    if scale > 0.0 {
        r / scale
    } else {
        r
    }
}
