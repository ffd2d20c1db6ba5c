//! Structured triangulations of rectangles and annular sectors.

use crate::error::{Error, Result};
use crate::geometry::{BoundaryTag, EdgeKind, Mesh};
use crate::vec2::Vec2;

/// Treatment of one side of a generated domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Side {
    Wall,
    Pressure(f64),
    /// Glued to the opposite side.
    Periodic,
}

impl Side {
    fn edge_kind(self) -> Option<EdgeKind> {
        match self {
            Side::Wall => Some(EdgeKind::Wall),
            Side::Pressure(p) => Some(EdgeKind::Pressure(p)),
            Side::Periodic => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectSides {
    pub left: Side,
    pub right: Side,
    pub bottom: Side,
    pub top: Side,
}

impl RectSides {
    pub fn all(side: Side) -> Self {
        RectSides {
            left: side,
            right: side,
            bottom: side,
            top: side,
        }
    }
}

/// Number of quads along a side of length `len` so that the largest
/// triangle satisfies `√|ω| ≤ h` (each quad is split into two triangles of
/// area `dx²/2`).
pub fn cells_for_h(len: f64, h: f64) -> Result<usize> {
    if !(h > 0.0) || !(len > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "mesh size {h} and extent {len} must be positive"
        )));
    }
    if h > len {
        return Err(Error::InvalidParameter(format!(
            "mesh size {h} exceeds the domain extent {len}"
        )));
    }
    Ok(((len / (h * std::f64::consts::SQRT_2)) - 1e-9).ceil().max(1.0) as usize)
}

/// How each quad of a structured rectangle is cut into triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiagonalPattern {
    /// Two triangles per quad, diagonals flipped in a checkerboard.
    #[default]
    Alternating,
    /// Two triangles per quad, every diagonal running lower-left to upper-right.
    Uniform,
    /// Four triangles per quad around an added center node.
    Crossed,
}

impl DiagonalPattern {
    /// Triangles produced per quad.
    pub fn triangles_per_quad(self) -> usize {
        match self {
            DiagonalPattern::Crossed => 4,
            _ => 2,
        }
    }
}

/// `[x0,x1] × [y0,y1]` split into `nx × ny` quads, each cut into two
/// triangles with diagonals alternating in a checkerboard pattern.
pub fn rect_tri(x: (f64, f64), y: (f64, f64), nx: usize, ny: usize, sides: RectSides) -> Result<Mesh> {
    rect_tri_with(x, y, nx, ny, sides, DiagonalPattern::Alternating)
}

/// [`rect_tri`] with an explicit quad splitting pattern.
pub fn rect_tri_with(
    x: (f64, f64),
    y: (f64, f64),
    nx: usize,
    ny: usize,
    sides: RectSides,
    pattern: DiagonalPattern,
) -> Result<Mesh> {
    if !(x.1 > x.0) || !(y.1 > y.0) {
        return Err(Error::InvalidParameter(format!(
            "degenerate rectangle [{}, {}] x [{}, {}]",
            x.0, x.1, y.0, y.1
        )));
    }
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidParameter("zero cells along a side".into()));
    }
    let px = periodic_pair(sides.left, sides.right, "left/right")?;
    let py = periodic_pair(sides.bottom, sides.top, "bottom/top")?;
    let (lx, ly) = (x.1 - x.0, y.1 - y.0);
    let dx = lx / nx as f64;
    let dy = ly / ny as f64;
    let ncx = if px { nx } else { nx + 1 };
    let ncy = if py { ny } else { ny + 1 };

    let mut nodes = Vec::with_capacity(ncx * ncy);
    for j in 0..ncy {
        for i in 0..ncx {
            let xi = if i == nx { x.1 } else { x.0 + i as f64 * dx };
            let yj = if j == ny { y.1 } else { y.0 + j as f64 * dy };
            nodes.push(Vec2::new(xi, yj));
        }
    }
    // (node, image offset) for lattice index (i, j)
    let at = |i: usize, j: usize| {
        let mut off = Vec2::ZERO;
        let (mut ii, mut jj) = (i, j);
        if px && i == nx {
            ii = 0;
            off.x = lx;
        }
        if py && j == ny {
            jj = 0;
            off.y = ly;
        }
        (jj * ncx + ii, off)
    };

    let ntri = pattern.triangles_per_quad() * nx * ny;
    let mut cells = Vec::with_capacity(ntri);
    let mut offsets = Vec::with_capacity(ntri);
    for j in 0..ny {
        for i in 0..nx {
            let q00 = at(i, j);
            let q10 = at(i + 1, j);
            let q11 = at(i + 1, j + 1);
            let q01 = at(i, j + 1);
            let tris = match pattern {
                DiagonalPattern::Alternating if (i + j) % 2 == 1 => {
                    vec![[q00, q10, q01], [q10, q11, q01]]
                }
                DiagonalPattern::Alternating | DiagonalPattern::Uniform => {
                    vec![[q00, q10, q11], [q00, q11, q01]]
                }
                DiagonalPattern::Crossed => {
                    let center = Vec2::new(x.0 + (i as f64 + 0.5) * dx, y.0 + (j as f64 + 0.5) * dy);
                    let qc = (nodes.len(), Vec2::ZERO);
                    nodes.push(center);
                    vec![[q00, q10, qc], [q10, q11, qc], [q11, q01, qc], [q01, q00, qc]]
                }
            };
            for t in tris {
                cells.push([t[0].0, t[1].0, t[2].0]);
                offsets.push([t[0].1, t[1].1, t[2].1]);
            }
        }
    }

    let mut tags = Vec::new();
    let mut side_tags = |side: Side, edges: Vec<(usize, usize)>| {
        if let Some(kind) = side.edge_kind() {
            tags.extend(edges.into_iter().map(|(a, b)| BoundaryTag { a, b, kind }));
        }
    };
    side_tags(sides.bottom, (0..nx).map(|i| (at(i, 0).0, at(i + 1, 0).0)).collect());
    side_tags(sides.top, (0..nx).map(|i| (at(i, ny).0, at(i + 1, ny).0)).collect());
    side_tags(sides.left, (0..ny).map(|j| (at(0, j).0, at(0, j + 1).0)).collect());
    side_tags(sides.right, (0..ny).map(|j| (at(nx, j).0, at(nx, j + 1).0)).collect());

    let offsets = if px || py { Some(offsets) } else { None };
    Mesh::build(nodes, cells, offsets, &tags)
}

/// [`rect_tri`] with the resolution chosen from a target size `h`.
pub fn rect_tri_h(x: (f64, f64), y: (f64, f64), h: f64, sides: RectSides) -> Result<Mesh> {
    let nx = cells_for_h(x.1 - x.0, h)?;
    let ny = cells_for_h(y.1 - y.0, h)?;
    rect_tri(x, y, nx, ny, sides)
}

fn periodic_pair(a: Side, b: Side, what: &str) -> Result<bool> {
    match (a == Side::Periodic, b == Side::Periodic) {
        (true, true) => Ok(true),
        (false, false) => Ok(false),
        _ => Err(Error::InvalidParameter(format!(
            "{what} sides must both be periodic or neither"
        ))),
    }
}

/// Boundary treatment of an annular sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellSides {
    pub inner: Side,
    pub outer: Side,
    pub phi_min: Side,
    pub phi_max: Side,
}

/// Polar tensor grid on `r ∈ [r0, r1]`, `φ ∈ [φ0, φ1]` with `nr × nphi`
/// quads, each split into two triangles.
pub fn shell_tri(r: (f64, f64), phi: (f64, f64), nr: usize, nphi: usize, sides: ShellSides) -> Result<Mesh> {
    if !(r.0 > 0.0) || !(r.1 > r.0) {
        return Err(Error::InvalidParameter(format!(
            "shell radii must satisfy 0 < r_in < r_out, got [{}, {}]",
            r.0, r.1
        )));
    }
    let span = phi.1 - phi.0;
    if !(span > 0.0) || span > 2.0 * std::f64::consts::PI + 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "angular range must lie in (0, 2π], got {span}"
        )));
    }
    if nr == 0 || nphi == 0 {
        return Err(Error::InvalidParameter("zero cells along a side".into()));
    }
    if [sides.inner, sides.outer, sides.phi_min, sides.phi_max].contains(&Side::Periodic) {
        return Err(Error::InvalidParameter(
            "periodic sides are not supported on shell meshes".into(),
        ));
    }
    let id = |i: usize, j: usize| j * (nr + 1) + i;
    let mut nodes = Vec::with_capacity((nr + 1) * (nphi + 1));
    for j in 0..=nphi {
        let f = phi.0 + span * j as f64 / nphi as f64;
        for i in 0..=nr {
            let rr = r.0 + (r.1 - r.0) * i as f64 / nr as f64;
            nodes.push(Vec2::new(rr * f.cos(), rr * f.sin()));
        }
    }
    let mut cells = Vec::with_capacity(2 * nr * nphi);
    for j in 0..nphi {
        for i in 0..nr {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            if (i + j) % 2 == 0 {
                cells.push([a, b, c]);
                cells.push([a, c, d]);
            } else {
                cells.push([a, b, d]);
                cells.push([b, c, d]);
            }
        }
    }
    let mut tags = Vec::new();
    let mut push = |side: Side, a: usize, b: usize| {
        if let Some(kind) = side.edge_kind() {
            tags.push(BoundaryTag { a, b, kind });
        }
    };
    for j in 0..nphi {
        push(sides.inner, id(0, j), id(0, j + 1));
        push(sides.outer, id(nr, j), id(nr, j + 1));
    }
    for i in 0..nr {
        push(sides.phi_min, id(i, 0), id(i + 1, 0));
        push(sides.phi_max, id(i, nphi), id(i + 1, nphi));
    }
    Mesh::build(nodes, cells, None, &tags)
}

/// `max_c √|ω_c|` for positions `x`.
pub fn characteristic_size(mesh: &Mesh, x: &[Vec2]) -> f64 {
    (0..mesh.num_cells())
        .map(|c| crate::geometry::signed_area(mesh.vertex(x, c, 0), mesh.vertex(x, c, 1), mesh.vertex(x, c, 2)).sqrt())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Constraint, CornerGeometry};

    #[test]
    fn unit_square_at_half() {
        let m = rect_tri_h((0.0, 1.0), (0.0, 1.0), 0.5, RectSides::all(Side::Wall)).unwrap();
        assert_eq!(m.num_cells(), 8);
        let total: f64 = m.geometric_volumes(m.nodes()).unwrap().iter().sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn table_one_coarsest_size() {
        let h = 0.3254;
        let m = rect_tri_h((0.0, 10.0), (0.0, 10.0), h, RectSides::all(Side::Periodic)).unwrap();
        let got = characteristic_size(&m, m.nodes());
        assert!((got - h).abs() / h < 0.05, "h = {got}");
    }

    #[test]
    fn degenerate_range_is_rejected() {
        assert!(rect_tri((1.0, 1.0), (0.0, 1.0), 2, 2, RectSides::all(Side::Wall)).is_err());
        assert!(rect_tri_h((0.0, 1.0), (0.0, 1.0), 2.0, RectSides::all(Side::Wall)).is_err());
    }

    #[test]
    fn fully_periodic_square_has_no_boundary() {
        let m = rect_tri((0.0, 1.0), (0.0, 1.0), 4, 3, RectSides::all(Side::Periodic)).unwrap();
        assert_eq!(m.num_nodes(), 12);
        assert!(m.boundary_edges().is_empty());
        let g = CornerGeometry::compute(&m, m.nodes());
        for p in 0..m.num_nodes() {
            let s = m
                .corners_of_node(p)
                .iter()
                .fold(Vec2::ZERO, |acc, &k| acc + g.corners[k].lpc);
            assert!(s.norm() < 1e-14);
        }
    }

    #[test]
    fn crossed_pattern_adds_a_center_node_per_quad() {
        let sides = RectSides {
            left: Side::Periodic,
            right: Side::Periodic,
            bottom: Side::Wall,
            top: Side::Wall,
        };
        let m = rect_tri_with((0.0, 2.0), (0.0, 1.0), 4, 2, sides, DiagonalPattern::Crossed).unwrap();
        assert_eq!(m.num_cells(), 32);
        assert_eq!(m.num_nodes(), 4 * 3 + 8);
        let vol = m.geometric_volumes(m.nodes()).unwrap();
        assert!((vol.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        assert!(vol.iter().all(|&v| (v - 1.0 / 16.0).abs() < 1e-14));
    }

    #[test]
    fn uniform_pattern_cuts_every_quad_the_same_way() {
        let m = rect_tri_with(
            (0.0, 1.0),
            (0.0, 1.0),
            2,
            2,
            RectSides::all(Side::Wall),
            DiagonalPattern::Uniform,
        )
        .unwrap();
        // every quad's first triangle holds its lower-left and upper-right corners
        for (k, cell) in m.cells().iter().step_by(2).enumerate() {
            let (i, j) = (k % 2, k / 2);
            assert!(cell.contains(&(j * 3 + i)));
            assert!(cell.contains(&((j + 1) * 3 + i + 1)));
        }
    }

    #[test]
    fn one_cell_wide_periodic_strip_is_manifold() {
        let sides = RectSides {
            left: Side::Wall,
            right: Side::Wall,
            bottom: Side::Periodic,
            top: Side::Periodic,
        };
        let m = rect_tri((0.0, 3.0), (0.0, 1.0), 3, 1, sides).unwrap();
        assert_eq!(m.num_cells(), 6);
        assert_eq!(m.boundary_edges().len(), 2);
    }

    #[test]
    fn shell_counts_and_area() {
        let sides = ShellSides {
            inner: Side::Pressure(0.0),
            outer: Side::Pressure(0.0),
            phi_min: Side::Wall,
            phi_max: Side::Wall,
        };
        let half_pi = std::f64::consts::FRAC_PI_2;
        let m = shell_tri((0.1, 1.0), (0.0, half_pi), 90, 15, sides).unwrap();
        assert_eq!(m.num_cells(), 90 * 15 * 2);
        let total: f64 = m.geometric_volumes(m.nodes()).unwrap().iter().sum();
        let exact = std::f64::consts::FRAC_PI_4 * (1.0 - 0.01);
        assert!((total - exact).abs() / exact < 5e-3);
        // a node in the middle of the φ = 0 wall slides along the x axis
        match m.node_bc(5).constraint {
            Constraint::Line { normal, .. } => assert!((normal - Vec2::new(0.0, -1.0)).norm() < 1e-12),
            other => panic!("{other:?}"),
        }
        // the inner wall corner is on a wall and a pressure edge
        assert_eq!(m.node_bc(0).pressure, Some(0.0));
        assert!(matches!(m.node_bc(0).constraint, Constraint::Line { .. }));
    }

    #[test]
    fn shell_rejects_zero_inner_radius() {
        let sides = ShellSides {
            inner: Side::Wall,
            outer: Side::Wall,
            phi_min: Side::Wall,
            phi_max: Side::Wall,
        };
        assert!(shell_tri((0.0, 1.0), (0.0, 1.0), 4, 4, sides).is_err());
    }
}
