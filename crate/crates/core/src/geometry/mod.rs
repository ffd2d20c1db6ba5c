//! Unstructured triangular meshes with moving nodes.
//!
//! Topology (cells, adjacency, boundary tags) is fixed at construction. Node
//! positions are passed separately to every geometric routine so the same
//! [`Mesh`] can be shared across Runge-Kutta stages.
//!
//! Periodic domains are glued topologically: a cell vertex refers to a single
//! node index plus a fixed image offset, so a node on a periodic seam is one
//! node with one velocity.

pub mod generate;
pub mod meshfile;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::vec2::Vec2;

/// Boundary condition carried by a boundary edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeKind {
    /// Impermeable slip wall.
    Wall,
    /// Prescribed pressure `p_b`.
    Pressure(f64),
}

/// Boundary tag on the edge joining nodes `a` and `b` (0-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryTag {
    pub a: usize,
    pub b: usize,
    pub kind: EdgeKind,
}

/// Kinematic constraint on a node velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Constraint {
    Free,
    /// The node slides on a fixed straight wall with unit normal `normal`
    /// passing through `origin`.
    Line {
        normal: Vec2,
        origin: Vec2,
    },
    /// Node at the junction of two non-parallel walls.
    Pinned,
}

/// Per-node boundary data.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeBc {
    pub constraint: Constraint,
    /// Prescribed nodal pressure when the node touches a pressure edge.
    pub pressure: Option<f64>,
    /// Indices into [`Mesh::boundary_edges`] of the edges touching this node.
    pub edges: Vec<usize>,
}

impl NodeBc {
    fn interior() -> Self {
        NodeBc {
            constraint: Constraint::Free,
            pressure: None,
            edges: Vec::new(),
        }
    }

    pub fn is_boundary(&self) -> bool {
        !self.edges.is_empty()
    }
}

/// A boundary edge: local edge `local` of `cell` runs from vertex `local` to
/// vertex `(local + 1) % 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryEdge {
    pub cell: usize,
    pub local: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone)]
pub struct Mesh {
    nodes: Vec<Vec2>,
    cells: Vec<[usize; 3]>,
    offsets: Vec<[Vec2; 3]>,
    periodic: bool,
    corner_start: Vec<usize>,
    corner_list: Vec<usize>,
    neighbor_start: Vec<usize>,
    neighbor_list: Vec<usize>,
    boundary_edges: Vec<BoundaryEdge>,
    node_bc: Vec<NodeBc>,
}

/// Signed area of the triangle `(a, b, c)`.
#[inline]
pub fn signed_area(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    0.5 * (b - a).cross(c - a)
}

impl Mesh {
    /// Builds a mesh from node coordinates and triangles.
    ///
    /// `offsets`, when given, holds for every cell vertex the translation to
    /// apply to the node position (periodic images). Cells are reoriented
    /// counterclockwise. Boundary edges without a tag become walls.
    pub fn build(
        nodes: Vec<Vec2>,
        cells: Vec<[usize; 3]>,
        offsets: Option<Vec<[Vec2; 3]>>,
        tags: &[BoundaryTag],
    ) -> Result<Mesh> {
        if cells.is_empty() {
            return Err(Error::Mesh("mesh has no cells".into()));
        }
        let periodic = offsets.is_some();
        let mut offsets = offsets.unwrap_or_else(|| vec![[Vec2::ZERO; 3]; cells.len()]);
        if offsets.len() != cells.len() {
            return Err(Error::Mesh(format!(
                "{} offset records for {} cells",
                offsets.len(),
                cells.len()
            )));
        }
        let mut cells = cells;
        let n = nodes.len();
        for (c, cell) in cells.iter_mut().enumerate() {
            for &v in cell.iter() {
                if v >= n {
                    return Err(Error::Mesh(format!(
                        "cell {c} references node {v} but there are {n} nodes"
                    )));
                }
            }
            let off = &mut offsets[c];
            let x = |i: usize| nodes[cell[i]] + off[i];
            let area = signed_area(x(0), x(1), x(2));
            let scale = (x(1) - x(0)).norm_sq().max((x(2) - x(0)).norm_sq());
            if cell[0] == cell[1] && off[0] == off[1]
                || cell[1] == cell[2] && off[1] == off[2]
                || cell[0] == cell[2] && off[0] == off[2]
                || area.abs() <= 1e-14 * scale
                || !area.is_finite()
            {
                return Err(Error::DegenerateCell { cell: c, area });
            }
            if area < 0.0 {
                cell.swap(1, 2);
                off.swap(1, 2);
            }
        }

        // node -> corners (corner id = 3 * cell + local vertex)
        let mut counts = vec![0usize; n + 1];
        for cell in &cells {
            for &v in cell {
                counts[v + 1] += 1;
            }
        }
        for p in 0..n {
            if counts[p + 1] == 0 {
                return Err(Error::DanglingNode(p));
            }
            counts[p + 1] += counts[p];
        }
        let corner_start = counts;
        let mut fill = corner_start.clone();
        let mut corner_list = vec![0usize; 3 * cells.len()];
        for (c, cell) in cells.iter().enumerate() {
            for (i, &v) in cell.iter().enumerate() {
                corner_list[fill[v]] = 3 * c + i;
                fill[v] += 1;
            }
        }

        // Edges keyed by node pair and the relative image offset, so a
        // periodic strip one cell wide still distinguishes its two edges.
        let key = |a: usize, oa: Vec2, b: usize, ob: Vec2| {
            let d = ob - oa;
            let (dx, dy) = (quantize(d.x), quantize(d.y));
            if a < b || (a == b && (dx, dy) >= (0, 0)) {
                (a, b, dx, dy)
            } else {
                (b, a, -dx, -dy)
            }
        };
        type EdgeKey = (usize, usize, i64, i64);
        let mut edge_cells: HashMap<EdgeKey, Vec<(usize, usize)>> = HashMap::new();
        for (c, cell) in cells.iter().enumerate() {
            for i in 0..3 {
                let j = (i + 1) % 3;
                let k = key(cell[i], offsets[c][i], cell[j], offsets[c][j]);
                edge_cells.entry(k).or_default().push((c, i));
            }
        }
        let mut tag_map: HashMap<(usize, usize), EdgeKind> = HashMap::new();
        for t in tags {
            tag_map.insert((t.a.min(t.b), t.a.max(t.b)), t.kind);
        }
        let mut boundary_edges = Vec::new();
        let mut sorted: Vec<_> = edge_cells.into_iter().collect();
        sorted.sort_by_key(|(k, _)| *k);
        for ((a, b, _, _), owners) in sorted {
            match owners.len() {
                1 => {
                    let (cell, local) = owners[0];
                    let kind = tag_map.get(&(a.min(b), a.max(b))).copied().unwrap_or(EdgeKind::Wall);
                    boundary_edges.push(BoundaryEdge { cell, local, kind });
                }
                2 => {}
                _ => return Err(Error::NonManifoldEdge { a, b }),
            }
        }
        boundary_edges.sort_by_key(|e| (e.cell, e.local));

        let mut node_bc = vec![NodeBc::interior(); n];
        for (e, edge) in boundary_edges.iter().enumerate() {
            let cell = cells[edge.cell];
            for v in [cell[edge.local], cell[(edge.local + 1) % 3]] {
                node_bc[v].edges.push(e);
            }
        }
        for (p, bc) in node_bc.iter_mut().enumerate() {
            if bc.edges.is_empty() {
                continue;
            }
            let mut wall_normals = Vec::new();
            let mut pressures = Vec::new();
            for &e in &bc.edges {
                let edge = boundary_edges[e];
                match edge.kind {
                    EdgeKind::Wall => {
                        let c = edge.cell;
                        let i = edge.local;
                        let j = (i + 1) % 3;
                        let xi = nodes[cells[c][i]] + offsets[c][i];
                        let xj = nodes[cells[c][j]] + offsets[c][j];
                        let nrm = (xj - xi).perp_cw();
                        wall_normals.push(nrm / nrm.norm());
                    }
                    EdgeKind::Pressure(pb) => pressures.push(pb),
                }
            }
            if !pressures.is_empty() {
                bc.pressure = Some(pressures.iter().sum::<f64>() / pressures.len() as f64);
            }
            bc.constraint = match wall_normals.first() {
                None => Constraint::Free,
                Some(&n0) => {
                    if wall_normals.iter().all(|n| n.cross(n0).abs() < 1e-9) {
                        Constraint::Line {
                            normal: n0,
                            origin: nodes[p],
                        }
                    } else {
                        Constraint::Pinned
                    }
                }
            };
        }

        // cell -> cells sharing at least one node
        let mut neighbor_start = vec![0usize; cells.len() + 1];
        let mut neighbor_list = Vec::new();
        let mut scratch = Vec::new();
        for (c, cell) in cells.iter().enumerate() {
            scratch.clear();
            for &v in cell {
                for &k in &corner_list[corner_start[v]..corner_start[v + 1]] {
                    let other = k / 3;
                    if other != c {
                        scratch.push(other);
                    }
                }
            }
            scratch.sort_unstable();
            scratch.dedup();
            neighbor_list.extend_from_slice(&scratch);
            neighbor_start[c + 1] = neighbor_list.len();
        }

        Ok(Mesh {
            nodes,
            cells,
            offsets,
            periodic,
            corner_start,
            corner_list,
            neighbor_start,
            neighbor_list,
            boundary_edges,
            node_bc,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// Initial (reference) node positions.
    pub fn nodes(&self) -> &[Vec2] {
        &self.nodes
    }

    pub fn cells(&self) -> &[[usize; 3]] {
        &self.cells
    }

    pub fn offsets(&self) -> &[[Vec2; 3]] {
        &self.offsets
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    /// Corner ids `3 * c + i` of the cells around node `p`, ordered by cell.
    #[inline]
    pub fn corners_of_node(&self, p: usize) -> &[usize] {
        &self.corner_list[self.corner_start[p]..self.corner_start[p + 1]]
    }

    /// Cells sharing at least one node with `c` (excluding `c`).
    #[inline]
    pub fn neighbors(&self, c: usize) -> &[usize] {
        &self.neighbor_list[self.neighbor_start[c]..self.neighbor_start[c + 1]]
    }

    pub fn boundary_edges(&self) -> &[BoundaryEdge] {
        &self.boundary_edges
    }

    #[inline]
    pub fn node_bc(&self, p: usize) -> &NodeBc {
        &self.node_bc[p]
    }

    pub fn boundary_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_nodes()).filter(|&p| self.node_bc[p].is_boundary())
    }

    /// Position of vertex `i` of cell `c` for node positions `x`.
    #[inline]
    pub fn vertex(&self, x: &[Vec2], c: usize, i: usize) -> Vec2 {
        x[self.cells[c][i]] + self.offsets[c][i]
    }

    /// Outward normal of boundary edge `e` scaled by half its length: the
    /// contribution of that edge to the boundary corner vector of each of
    /// its two end nodes.
    #[inline]
    pub fn boundary_half_normal(&self, x: &[Vec2], e: usize) -> Vec2 {
        let edge = self.boundary_edges[e];
        let j = (edge.local + 1) % 3;
        let xi = self.vertex(x, edge.cell, edge.local);
        let xj = self.vertex(x, edge.cell, j);
        (xj - xi).perp_cw() * 0.5
    }

    /// Boundary corner vector `l_pb n_pb` of node `p` (zero for interior nodes).
    pub fn boundary_corner_vector(&self, x: &[Vec2], p: usize) -> Vec2 {
        self.node_bc[p]
            .edges
            .iter()
            .fold(Vec2::ZERO, |acc, &e| acc + self.boundary_half_normal(x, e))
    }

    /// `Σ p_b l_e n_e` over the pressure half-edges of node `p`.
    pub fn external_pressure_force(&self, x: &[Vec2], p: usize) -> Vec2 {
        let mut f = Vec2::ZERO;
        for &e in &self.node_bc[p].edges {
            if let EdgeKind::Pressure(pb) = self.boundary_edges[e].kind {
                f += self.boundary_half_normal(x, e) * pb;
            }
        }
        f
    }

    /// Projects constrained nodes back onto their wall lines and resets
    /// pinned nodes to their reference position.
    pub fn enforce_constraints(&self, x: &mut [Vec2]) {
        for p in 0..self.num_nodes() {
            match self.node_bc[p].constraint {
                Constraint::Free => {}
                Constraint::Line { normal, origin } => {
                    let d = (x[p] - origin).dot(normal);
                    if d != 0.0 {
                        x[p] -= normal * d;
                    }
                }
                Constraint::Pinned => x[p] = self.nodes[p],
            }
        }
    }

    /// Geometric cell areas for positions `x`; a non-positive area is a
    /// tangled mesh.
    pub fn geometric_volumes(&self, x: &[Vec2]) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.num_cells());
        for c in 0..self.num_cells() {
            let a = signed_area(self.vertex(x, c, 0), self.vertex(x, c, 1), self.vertex(x, c, 2));
            if !(a > 0.0) {
                return Err(Error::TangledMesh { cell: c, area: a });
            }
            out.push(a);
        }
        Ok(out)
    }
}

fn quantize(v: f64) -> i64 {
    (v * 1e6).round() as i64
}

/// Per-corner geometric quantities of one cell vertex.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Corner {
    /// Corner vector `l_pc n_pc = l⁺ n⁺ + l⁻ n⁻`.
    pub lpc: Vec2,
    pub l_plus: f64,
    pub n_plus: Vec2,
    pub l_minus: f64,
    pub n_minus: Vec2,
}

/// Corner vectors, areas and related per-cell geometry at one instant.
#[derive(Debug, Clone, Default)]
pub struct CornerGeometry {
    /// Indexed by corner id `3 * c + i`.
    pub corners: Vec<Corner>,
    pub area: Vec<f64>,
    pub perimeter: Vec<f64>,
    pub barycenter: Vec<Vec2>,
}

impl CornerGeometry {
    pub fn compute(mesh: &Mesh, x: &[Vec2]) -> CornerGeometry {
        let mut g = CornerGeometry::default();
        g.update(mesh, x);
        g
    }

    /// Recomputes in place, reusing allocations.
    pub fn update(&mut self, mesh: &Mesh, x: &[Vec2]) {
        let nc = mesh.num_cells();
        self.corners.resize(3 * nc, Corner::default());
        self.area.resize(nc, 0.0);
        self.perimeter.resize(nc, 0.0);
        self.barycenter.resize(nc, Vec2::ZERO);
        for c in 0..nc {
            let v = [mesh.vertex(x, c, 0), mesh.vertex(x, c, 1), mesh.vertex(x, c, 2)];
            // edge k runs from vertex k to vertex k+1
            let mut len = [0.0; 3];
            let mut nrm = [Vec2::ZERO; 3];
            for k in 0..3 {
                let e = v[(k + 1) % 3] - v[k];
                len[k] = e.norm();
                nrm[k] = e.perp_cw() / len[k];
            }
            for i in 0..3 {
                let prev = (i + 2) % 3;
                let l_plus = 0.5 * len[i];
                let l_minus = 0.5 * len[prev];
                // Same value as l⁺n⁺ + l⁻n⁻, formed from the raw edge vectors
                // so that per-cell closure holds to rounding.
                let lpc = (v[(i + 1) % 3] - v[prev]).perp_cw() * 0.5;
                self.corners[3 * c + i] = Corner {
                    lpc,
                    l_plus,
                    n_plus: nrm[i],
                    l_minus,
                    n_minus: nrm[prev],
                };
            }
            self.area[c] = signed_area(v[0], v[1], v[2]);
            self.perimeter[c] = len[0] + len[1] + len[2];
            self.barycenter[c] = (v[0] + v[1] + v[2]) / 3.0;
        }
    }

    #[inline]
    pub fn corner(&self, c: usize, i: usize) -> &Corner {
        &self.corners[3 * c + i]
    }

    /// Incircle diameter `4 |ω_c| / P_c`.
    #[inline]
    pub fn incircle_diameter(&self, c: usize) -> f64 {
        4.0 * self.area[c] / self.perimeter[c]
    }
}

/// Area of the sub-cell of cell `c` attached to its local vertex `i`: the
/// quadrilateral (vertex, midpoint of the outgoing edge, barycenter,
/// midpoint of the incoming edge).
pub fn subcell_volume(mesh: &Mesh, x: &[Vec2], c: usize, i: usize) -> f64 {
    let xp = mesh.vertex(x, c, i);
    let xn = mesh.vertex(x, c, (i + 1) % 3);
    let xv = mesh.vertex(x, c, (i + 2) % 3);
    let bc = (xp + xn + xv) / 3.0;
    let quad = [xp, (xp + xn) * 0.5, bc, (xp + xv) * 0.5];
    let mut twice = 0.0;
    for k in 0..4 {
        twice += quad[k].cross(quad[(k + 1) % 4]);
    }
    0.5 * twice
}

/// Dual-cell volume `|ω_p| = Σ_{c∈C(p)} |ω_pc|`.
pub fn dual_cell_volume(mesh: &Mesh, x: &[Vec2], p: usize) -> f64 {
    mesh.corners_of_node(p)
        .iter()
        .map(|&k| subcell_volume(mesh, x, k / 3, k % 3))
        .sum()
}

/// All dual-cell volumes.
pub fn dual_cell_volumes(mesh: &Mesh, x: &[Vec2]) -> Vec<f64> {
    (0..mesh.num_nodes()).map(|p| dual_cell_volume(mesh, x, p)).collect()
}
