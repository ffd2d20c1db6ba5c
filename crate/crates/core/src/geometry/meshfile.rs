//! Plain-text mesh exchange format.
//!
//! ```text
//! # comment
//! nodes 3
//! 0.0 0.0
//! 1.0 0.0
//! 0.0 1.0
//! cells 1
//! 1 2 3
//! boundary 1
//! 1 2 pressure 0.5
//! ```
//!
//! Indices are 1-based. A cell line may carry six extra numbers giving the
//! periodic image offset `(dx, dy)` of each of its three vertices. Boundary
//! records are `a b wall` or `a b pressure p_b`; boundary edges without a
//! record are walls.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{BoundaryTag, EdgeKind, Mesh};
use crate::vec2::Vec2;

pub fn parse_mesh(text: &str) -> Result<Mesh> {
    let mut lines = Lines {
        rest: text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect(),
        pos: 0,
    };
    let num = |ln: usize, s: &str| -> Result<f64> {
        s.parse::<f64>()
            .map_err(|_| Error::Parse(format!("line {ln}: `{s}` is not a number")))
    };
    let index = |ln: usize, s: &str, n: usize| -> Result<usize> {
        match s.parse::<usize>() {
            Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
            _ => Err(Error::Parse(format!("line {ln}: node index `{s}` outside 1..={n}"))),
        }
    };
    let count = |ln: usize, t: &[&str], name: &str| -> Result<usize> {
        if t.len() != 2 || t[0] != name {
            return Err(Error::Parse(format!("line {ln}: expected `{name} <count>`")));
        }
        t[1].parse().map_err(|_| Error::Parse(format!("line {ln}: bad count")))
    };

    let (ln, t) = lines.take("nodes header")?;
    let n = count(ln, &t, "nodes")?;
    let mut nodes = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, t) = lines.take("nodes")?;
        if t.len() != 2 {
            return Err(Error::Parse(format!("line {ln}: expected `x y`")));
        }
        nodes.push(Vec2::new(num(ln, t[0])?, num(ln, t[1])?));
    }

    let (ln, t) = lines.take("cells header")?;
    let m = count(ln, &t, "cells")?;
    let mut cells = Vec::with_capacity(m);
    let mut offsets = Vec::with_capacity(m);
    let mut any_offset = false;
    for _ in 0..m {
        let (ln, t) = lines.take("cells")?;
        if t.len() != 3 && t.len() != 9 {
            return Err(Error::Parse(format!(
                "line {ln}: expected three indices and optionally six offsets"
            )));
        }
        cells.push([index(ln, t[0], n)?, index(ln, t[1], n)?, index(ln, t[2], n)?]);
        let mut off = [Vec2::ZERO; 3];
        if t.len() == 9 {
            for (k, o) in off.iter_mut().enumerate() {
                *o = Vec2::new(num(ln, t[3 + 2 * k])?, num(ln, t[4 + 2 * k])?);
            }
            any_offset |= off.iter().any(|o| *o != Vec2::ZERO);
        }
        offsets.push(off);
    }

    let mut tags = Vec::new();
    if lines.peek().is_some() {
        let (ln, t) = lines.take("boundary header")?;
        let k = count(ln, &t, "boundary")?;
        for _ in 0..k {
            let (ln, t) = lines.take("boundary")?;
            let kind = match (t.get(2).copied(), t.len()) {
                (Some("wall"), 3) => EdgeKind::Wall,
                (Some("pressure"), 4) => EdgeKind::Pressure(num(ln, t[3])?),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {ln}: expected `a b wall` or `a b pressure p_b`"
                    )))
                }
            };
            tags.push(BoundaryTag {
                a: index(ln, t[0], n)?,
                b: index(ln, t[1], n)?,
                kind,
            });
        }
    }
    if let Some((ln, _)) = lines.peek() {
        return Err(Error::Parse(format!("line {ln}: trailing content")));
    }

    Mesh::build(nodes, cells, any_offset.then_some(offsets), &tags)
}

struct Lines<'a> {
    rest: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn take(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let (ln, l) = self
            .peek()
            .ok_or_else(|| Error::Parse(format!("unexpected end of file reading {what}")))?;
        self.pos += 1;
        Ok((ln, l.split_whitespace().collect()))
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.rest.get(self.pos).copied()
    }
}

/// Serializes the mesh topology with node positions `x`.
pub fn format_mesh(mesh: &Mesh, x: &[Vec2]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "nodes {}", mesh.num_nodes());
    for p in x {
        let _ = writeln!(s, "{:e} {:e}", p.x, p.y);
    }
    let _ = writeln!(s, "cells {}", mesh.num_cells());
    for (c, cell) in mesh.cells().iter().enumerate() {
        let _ = write!(s, "{} {} {}", cell[0] + 1, cell[1] + 1, cell[2] + 1);
        if mesh.is_periodic() {
            for o in &mesh.offsets()[c] {
                let _ = write!(s, " {:e} {:e}", o.x, o.y);
            }
        }
        s.push('\n');
    }
    let _ = writeln!(s, "boundary {}", mesh.boundary_edges().len());
    for e in mesh.boundary_edges() {
        let cell = mesh.cells()[e.cell];
        let a = cell[e.local] + 1;
        let b = cell[(e.local + 1) % 3] + 1;
        match e.kind {
            EdgeKind::Wall => {
                let _ = writeln!(s, "{a} {b} wall");
            }
            EdgeKind::Pressure(p) => {
                let _ = writeln!(s, "{a} {b} pressure {p:e}");
            }
        }
    }
    s
}

pub fn read_mesh(path: &std::path::Path) -> Result<Mesh> {
    parse_mesh(&std::fs::read_to_string(path)?)
}

pub fn write_mesh(path: &std::path::Path, mesh: &Mesh) -> Result<()> {
    std::fs::write(path, format_mesh(mesh, mesh.nodes()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::generate::{rect_tri, RectSides, Side};

    #[test]
    fn parses_the_documented_example() {
        let m = parse_mesh("# one triangle\nnodes 3\n0 0\n1 0\n0 1\ncells 1\n1 2 3\nboundary 1\n1 2 pressure 0.5\n")
            .unwrap();
        assert_eq!(m.num_cells(), 1);
        let kinds: Vec<_> = m.boundary_edges().iter().map(|e| e.kind).collect();
        assert!(kinds.contains(&EdgeKind::Pressure(0.5)));
        assert_eq!(kinds.iter().filter(|k| **k == EdgeKind::Wall).count(), 2);
    }

    #[test]
    fn out_of_range_index_is_an_error() {
        assert!(parse_mesh("nodes 3\n0 0\n1 0\n0 1\ncells 1\n1 2 4\n").is_err());
        assert!(parse_mesh("nodes 3\n0 0\n1 0\n0 1\ncells 1\n0 1 2\n").is_err());
    }

    #[test]
    fn round_trip_preserves_topology_and_tags() {
        let sides = RectSides {
            left: Side::Wall,
            right: Side::Pressure(0.25),
            bottom: Side::Periodic,
            top: Side::Periodic,
        };
        let m = rect_tri((0.0, 2.0), (0.0, 1.0), 4, 3, sides).unwrap();
        let back = parse_mesh(&format_mesh(&m, m.nodes())).unwrap();
        assert_eq!(back.cells(), m.cells());
        assert_eq!(back.offsets(), m.offsets());
        assert_eq!(back.boundary_edges(), m.boundary_edges());
        assert_eq!(back.nodes(), m.nodes());
    }
}
