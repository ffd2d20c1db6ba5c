//! Error norms, convergence orders and scatter profiles.

use crate::eos::EosParams;
use crate::geometry::{CornerGeometry, Mesh};
use crate::state::{CellState, Primitive};
use crate::vec2::Vec2;

/// `√(Σ_c |ω_c| (φ_c − φ_exact,c)²)`.
pub fn l2_norm(area: &[f64], values: &[f64], exact: &[f64]) -> f64 {
    area.iter()
        .zip(values.iter().zip(exact))
        .map(|(w, (a, b))| w * (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Errors in density, horizontal velocity and total energy density `ρE`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldErrors {
    pub rho: f64,
    pub vel: f64,
    pub energy: f64,
}

/// L2 errors against an exact field sampled at cell barycenters.
pub fn l2_errors(
    mesh: &Mesh,
    x: &[Vec2],
    st: &CellState,
    eos: &EosParams,
    exact: impl Fn(Vec2) -> Primitive,
) -> FieldErrors {
    let geom = CornerGeometry::compute(mesh, x);
    let mut acc = [0.0f64; 3];
    for c in 0..mesh.num_cells() {
        let w = geom.area[c];
        let ex = exact(geom.barycenter[c]);
        let rho = st.density(c);
        let p = eos.point_unchecked(st.tau[c], st.entropy[c]).p;
        let energy = p / (eos.gamma - 1.0) + 0.5 * rho * st.vel[c].norm_sq();
        let energy_ex = ex.p / (eos.gamma - 1.0) + 0.5 * ex.rho * ex.vel.norm_sq();
        acc[0] += w * (rho - ex.rho).powi(2);
        acc[1] += w * (st.vel[c].x - ex.vel.x).powi(2);
        acc[2] += w * (energy - energy_ex).powi(2);
    }
    FieldErrors {
        rho: acc[0].sqrt(),
        vel: acc[1].sqrt(),
        energy: acc[2].sqrt(),
    }
}

/// Observed order `ln(e_coarse/e_fine) / ln(h_coarse/h_fine)`.
pub fn observed_order(h_coarse: f64, e_coarse: f64, h_fine: f64, e_fine: f64) -> f64 {
    (e_coarse / e_fine).ln() / (h_coarse / h_fine).ln()
}

/// One row of a scatter profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub coord: f64,
    pub rho: f64,
    /// Velocity along the profile direction (x or radial).
    pub u: f64,
    pub p: f64,
    pub entropy: f64,
    pub eps: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Radial,
}

/// Per-cell values against the barycenter coordinate, sorted by coordinate.
pub fn scatter_profile(mesh: &Mesh, x: &[Vec2], st: &CellState, eos: &EosParams, axis: Axis) -> Vec<ProfilePoint> {
    let geom = CornerGeometry::compute(mesh, x);
    let mut out: Vec<ProfilePoint> = (0..mesh.num_cells())
        .map(|c| {
            let b = geom.barycenter[c];
            let pt = eos.point_unchecked(st.tau[c], st.entropy[c]);
            let (coord, u) = match axis {
                Axis::X => (b.x, st.vel[c].x),
                Axis::Radial => {
                    let r = b.norm();
                    let u = if r > 0.0 { st.vel[c].dot(b) / r } else { 0.0 };
                    (r, u)
                }
            };
            ProfilePoint {
                coord,
                rho: pt.rho,
                u,
                p: pt.p,
                entropy: st.entropy[c],
                eps: pt.eps,
            }
        })
        .collect();
    out.sort_by(|a, b| a.coord.total_cmp(&b.coord));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::generate::{rect_tri, RectSides, Side};
    use crate::state::{init_from_primitive, sample_at_barycenters};

    #[test]
    fn exact_field_has_zero_error() {
        let m = rect_tri((0.0, 1.0), (0.0, 1.0), 3, 3, RectSides::all(Side::Wall)).unwrap();
        let eos = EosParams::default();
        let f = |x: Vec2| Primitive {
            rho: 1.0 + x.x,
            vel: Vec2::new(x.y, 0.0),
            p: 2.0,
        };
        let prim = sample_at_barycenters(&m, m.nodes(), f);
        let (st, _) = init_from_primitive(&m, m.nodes(), &prim, &eos).unwrap();
        let e = l2_errors(&m, m.nodes(), &st, &eos, f);
        assert!(e.rho < 1e-14 && e.vel < 1e-14 && e.energy < 1e-13);
    }

    #[test]
    fn constant_offset_on_unit_area() {
        let area = [0.25; 4];
        assert!((l2_norm(&area, &[1.5; 4], &[1.0; 4]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn order_of_halving() {
        assert!((observed_order(0.2, 0.04, 0.1, 0.01) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn uniform_field_gives_flat_scatter() {
        let m = rect_tri((0.0, 2.0), (0.0, 1.0), 4, 2, RectSides::all(Side::Wall)).unwrap();
        let eos = EosParams::default();
        let prim = sample_at_barycenters(&m, m.nodes(), |_| Primitive {
            rho: 2.0,
            vel: Vec2::ZERO,
            p: 3.0,
        });
        let (st, _) = init_from_primitive(&m, m.nodes(), &prim, &eos).unwrap();
        let prof = scatter_profile(&m, m.nodes(), &st, &eos, Axis::X);
        assert_eq!(prof.len(), 16);
        assert!(prof.windows(2).all(|w| w[0].coord <= w[1].coord));
        assert!(prof
            .iter()
            .all(|q| (q.rho - 2.0).abs() < 1e-14 && (q.p - 3.0).abs() < 1e-13));
    }
}
