//! Legacy ASCII VTK unstructured-grid writer.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::eos::EosParams;
use crate::error::Result;
use crate::geometry::Mesh;
use crate::state::CellState;
use crate::vec2::Vec2;

/// Writes the triangles at positions `x` with cell fields `rho, p, S, eps,
/// beta` and the point field `velocity`.
///
/// Periodic cells are written with their own copies of wrapped vertices so
/// the picture stays contiguous. The per-cell `beta` marker is the largest
/// nodal blending factor of the cell. Node velocities are the `|l|`-free
/// arithmetic means of the adjacent cell velocities.
pub fn write_vtk(
    w: &mut impl Write,
    mesh: &Mesh,
    x: &[Vec2],
    st: &CellState,
    eos: &EosParams,
    beta: &[f64],
    title: &str,
) -> Result<()> {
    let nc = mesh.num_cells();
    let periodic = mesh.is_periodic();
    let npts = if periodic { 3 * nc } else { mesh.num_nodes() };

    let mut node_vel = vec![Vec2::ZERO; mesh.num_nodes()];
    for (p, v) in node_vel.iter_mut().enumerate() {
        let ks = mesh.corners_of_node(p);
        for &k in ks {
            *v += st.vel[k / 3];
        }
        *v = *v / ks.len() as f64;
    }

    writeln!(w, "# vtk DataFile Version 3.0")?;
    writeln!(w, "{}", title.lines().next().unwrap_or("htclag"))?;
    writeln!(w, "ASCII\nDATASET UNSTRUCTURED_GRID")?;
    writeln!(w, "POINTS {npts} double")?;
    if periodic {
        for c in 0..nc {
            for i in 0..3 {
                let v = mesh.vertex(x, c, i);
                writeln!(w, "{:e} {:e} 0", v.x, v.y)?;
            }
        }
    } else {
        for v in x {
            writeln!(w, "{:e} {:e} 0", v.x, v.y)?;
        }
    }
    writeln!(w, "CELLS {nc} {}", 4 * nc)?;
    for (c, cell) in mesh.cells().iter().enumerate() {
        if periodic {
            writeln!(w, "3 {} {} {}", 3 * c, 3 * c + 1, 3 * c + 2)?;
        } else {
            writeln!(w, "3 {} {} {}", cell[0], cell[1], cell[2])?;
        }
    }
    writeln!(w, "CELL_TYPES {nc}")?;
    for _ in 0..nc {
        writeln!(w, "5")?;
    }

    writeln!(w, "CELL_DATA {nc}")?;
    let pts: Vec<_> = (0..nc).map(|c| eos.point_unchecked(st.tau[c], st.entropy[c])).collect();
    let scalar = |w: &mut dyn Write, name: &str, f: &dyn Fn(usize) -> f64| -> std::io::Result<()> {
        writeln!(w, "SCALARS {name} double 1\nLOOKUP_TABLE default")?;
        for c in 0..nc {
            writeln!(w, "{:e}", f(c))?;
        }
        Ok(())
    };
    scalar(w, "rho", &|c| pts[c].rho)?;
    scalar(w, "p", &|c| pts[c].p)?;
    scalar(w, "S", &|c| st.entropy[c])?;
    scalar(w, "eps", &|c| pts[c].eps)?;
    scalar(w, "beta", &|c| {
        mesh.cells()[c]
            .iter()
            .map(|&p| beta.get(p).copied().unwrap_or(0.0))
            .fold(0.0, f64::max)
    })?;

    writeln!(w, "POINT_DATA {npts}\nVECTORS velocity double")?;
    if periodic {
        for cell in mesh.cells() {
            for &p in cell {
                writeln!(w, "{:e} {:e} 0", node_vel[p].x, node_vel[p].y)?;
            }
        }
    } else {
        for v in &node_vel {
            writeln!(w, "{:e} {:e} 0", v.x, v.y)?;
        }
    }
    Ok(())
}

pub fn write_vtk_file(
    path: &Path,
    mesh: &Mesh,
    x: &[Vec2],
    st: &CellState,
    eos: &EosParams,
    beta: &[f64],
    title: &str,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_vtk(&mut w, mesh, x, st, eos, beta, title)?;
    w.flush()?;
    Ok(())
}
