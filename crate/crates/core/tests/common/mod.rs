//! Meshes and states shared by the integration tests.
#![allow(dead_code)]

use htclag::geometry::generate::{rect_tri, RectSides, Side};
use htclag::state::init_from_primitive;
use htclag::{CellState, EosParams, MassField, Mesh, Primitive, Vec2};

pub fn eos() -> EosParams {
    EosParams::new(1.4, 1.0).unwrap()
}

pub fn periodic_square(n: usize) -> Mesh {
    rect_tri((0.0, 1.0), (0.0, 1.0), n, n, RectSides::all(Side::Periodic)).unwrap()
}

pub fn walled_square(n: usize) -> Mesh {
    rect_tri((0.0, 1.0), (0.0, 1.0), n, n, RectSides::all(Side::Wall)).unwrap()
}

/// Pressure inflow on the left and outflow on the right, walls elsewhere.
pub fn pressure_channel(n: usize, p_left: f64, p_right: f64) -> Mesh {
    rect_tri(
        (0.0, 1.0),
        (0.0, 1.0),
        n,
        n,
        RectSides {
            left: Side::Pressure(p_left),
            right: Side::Pressure(p_right),
            bottom: Side::Wall,
            top: Side::Wall,
        },
    )
    .unwrap()
}

/// Node positions displaced by `shift[2p], shift[2p+1]` times `amp`,
/// projected back onto the boundary constraints.
pub fn displaced(mesh: &Mesh, shift: &[f64], amp: f64) -> Vec<Vec2> {
    let mut x: Vec<Vec2> = mesh
        .nodes()
        .iter()
        .enumerate()
        .map(|(p, v)| *v + Vec2::new(shift[2 * p], shift[2 * p + 1]) * amp)
        .collect();
    mesh.enforce_constraints(&mut x);
    x
}

/// Cell states from unit-interval samples: `ρ ∈ [0.2, 5]`, `p ∈ [0.1, 10]`,
/// velocity components in `[−v_max, v_max]`.
pub fn sampled_state(mesh: &Mesh, x: &[Vec2], u: &[f64], v_max: f64) -> (CellState, MassField) {
    let prim: Vec<Primitive> = (0..mesh.num_cells())
        .map(|c| {
            let s = &u[4 * c..4 * c + 4];
            Primitive {
                rho: 0.2 * 25f64.powf(s[0]),
                vel: Vec2::new(v_max * (2.0 * s[1] - 1.0), v_max * (2.0 * s[2] - 1.0)),
                p: 0.1 * 100f64.powf(s[3]),
            }
        })
        .collect();
    init_from_primitive(mesh, x, &prim, &eos()).unwrap()
}

pub fn uniform_state(mesh: &Mesh, rho: f64, vel: Vec2, p: f64) -> (CellState, MassField) {
    let prim = vec![Primitive { rho, vel, p }; mesh.num_cells()];
    init_from_primitive(mesh, mesh.nodes(), &prim, &eos()).unwrap()
}

pub fn barycenter(mesh: &Mesh, x: &[Vec2], c: usize) -> Vec2 {
    (mesh.vertex(x, c, 0) + mesh.vertex(x, c, 1) + mesh.vertex(x, c, 2)) / 3.0
}
