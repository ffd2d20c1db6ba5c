//! Evolved cell quantities `q = (τ, v, S)`, masses, and conserved diagnostics.

use crate::eos::EosParams;
use crate::error::{Error, Result};
use crate::geometry::Mesh;
use crate::vec2::Vec2;

/// Structure-of-arrays cell state.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CellState {
    pub tau: Vec<f64>,
    pub vel: Vec<Vec2>,
    pub entropy: Vec<f64>,
}

impl CellState {
    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn density(&self, c: usize) -> f64 {
        1.0 / self.tau[c]
    }
}

/// Cell masses, fixed at initialization.
#[derive(Debug, Clone, PartialEq)]
pub struct MassField(pub Vec<f64>);

impl MassField {
    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl std::ops::Index<usize> for MassField {
    type Output = f64;
    fn index(&self, c: usize) -> &f64 {
        &self.0[c]
    }
}

/// Time derivatives of `(τ, v, S)` per cell plus the node velocity that moves
/// the mesh.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Rates {
    pub dtau: Vec<f64>,
    pub dvel: Vec<Vec2>,
    pub dentropy: Vec<f64>,
    pub node_vel: Vec<Vec2>,
}

/// Contribution of one corner `(p, c)` to the mass-weighted rates of cell
/// `c`: `m dτ += volume`, `m dv -= force`, `m dS += entropy`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CornerTerms {
    pub volume: f64,
    pub force: Vec2,
    pub entropy: f64,
}

impl CornerTerms {
    pub fn lerp(self, other: CornerTerms, beta: f64) -> CornerTerms {
        let a = 1.0 - beta;
        CornerTerms {
            volume: a * self.volume + beta * other.volume,
            force: self.force * a + other.force * beta,
            entropy: a * self.entropy + beta * other.entropy,
        }
    }
}

/// Sampled primitive data `(ρ, v, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitive {
    pub rho: f64,
    pub vel: Vec2,
    pub p: f64,
}

/// Builds `(τ, v, S)` and masses `m_c = |ω_c| ρ_c` from per-cell primitives.
pub fn init_from_primitive(
    mesh: &Mesh,
    x: &[Vec2],
    prim: &[Primitive],
    eos: &EosParams,
) -> Result<(CellState, MassField)> {
    if prim.len() != mesh.num_cells() {
        return Err(Error::InvalidParameter(format!(
            "{} primitive records for {} cells",
            prim.len(),
            mesh.num_cells()
        )));
    }
    let vol = mesh.geometric_volumes(x)?;
    let mut st = CellState {
        tau: Vec::with_capacity(prim.len()),
        vel: Vec::with_capacity(prim.len()),
        entropy: Vec::with_capacity(prim.len()),
    };
    let mut mass = Vec::with_capacity(prim.len());
    for (c, q) in prim.iter().enumerate() {
        let s = eos
            .entropy_from_primitive(q.rho, q.p)
            .map_err(|e| Error::Domain(format!("cell {c}: {e}")))?;
        if !q.vel.is_finite() {
            return Err(Error::Domain(format!("cell {c}: non-finite velocity")));
        }
        st.tau.push(1.0 / q.rho);
        st.vel.push(q.vel);
        st.entropy.push(s);
        mass.push(vol[c] * q.rho);
    }
    Ok((st, MassField(mass)))
}

/// Samples `f` at the barycenter of every cell.
pub fn sample_at_barycenters(mesh: &Mesh, x: &[Vec2], f: impl Fn(Vec2) -> Primitive) -> Vec<Primitive> {
    (0..mesh.num_cells())
        .map(|c| {
            let b = (mesh.vertex(x, c, 0) + mesh.vertex(x, c, 1) + mesh.vertex(x, c, 2)) / 3.0;
            f(b)
        })
        .collect()
}

/// Compensated (Neumaier) summation in iteration order.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub total_energy: f64,
    pub total_momentum: Vec2,
    pub total_entropy: f64,
    pub min_density: f64,
    pub min_pressure: f64,
}

pub fn total_energy(st: &CellState, mass: &MassField, eos: &EosParams) -> f64 {
    compensated_sum(
        (0..st.len()).map(|c| mass[c] * (eos.eps_unchecked(st.tau[c], st.entropy[c]) + 0.5 * st.vel[c].norm_sq())),
    )
}

pub fn diagnostics(st: &CellState, mass: &MassField, eos: &EosParams) -> Diagnostics {
    let n = st.len();
    let mx = compensated_sum((0..n).map(|c| mass[c] * st.vel[c].x));
    let my = compensated_sum((0..n).map(|c| mass[c] * st.vel[c].y));
    let mut min_density = f64::INFINITY;
    let mut min_pressure = f64::INFINITY;
    for c in 0..n {
        let pt = eos.point_unchecked(st.tau[c], st.entropy[c]);
        min_density = min_density.min(pt.rho);
        min_pressure = min_pressure.min(pt.p);
    }
    Diagnostics {
        total_energy: total_energy(st, mass, eos),
        total_momentum: Vec2::new(mx, my),
        total_entropy: compensated_sum((0..n).map(|c| mass[c] * st.entropy[c])),
        min_density,
        min_pressure,
    }
}

/// `Σ_c m_c w_c · dq_c/dt`, the semi-discrete total energy rate, together
/// with the scale `Σ_c m_c |E_c|` used to make it relative.
pub fn energy_rate(st: &CellState, mass: &MassField, rates: &Rates, eos: &EosParams) -> (f64, f64) {
    let n = st.len();
    let rate = compensated_sum((0..n).map(|c| {
        let pt = eos.point_unchecked(st.tau[c], st.entropy[c]);
        mass[c] * (-pt.p * rates.dtau[c] + st.vel[c].dot(rates.dvel[c]) + pt.theta * rates.dentropy[c])
    }));
    let scale = compensated_sum(
        (0..n).map(|c| mass[c] * (eos.eps_unchecked(st.tau[c], st.entropy[c]) + 0.5 * st.vel[c].norm_sq()).abs()),
    );
    (rate, scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::generate::{rect_tri, RectSides, Side};

    fn one_cell(v: Vec2) -> (CellState, MassField) {
        (
            CellState {
                tau: vec![1.0],
                vel: vec![v],
                entropy: vec![0.0],
            },
            MassField(vec![1.0]),
        )
    }

    #[test]
    fn energy_of_single_cell() {
        let eos = EosParams::default();
        let (s, m) = one_cell(Vec2::ZERO);
        assert!((total_energy(&s, &m, &eos) - 2.5).abs() < 1e-15);
        let (s, m) = one_cell(Vec2::new(3.0, 4.0));
        assert!((total_energy(&s, &m, &eos) - 15.0).abs() < 1e-14);
        let two = CellState {
            tau: vec![1.0; 2],
            vel: vec![Vec2::new(3.0, 4.0); 2],
            entropy: vec![0.0; 2],
        };
        assert!((total_energy(&two, &MassField(vec![1.0, 1.0]), &eos) - 30.0).abs() < 1e-13);
    }

    #[test]
    fn uniform_unit_square_mass() {
        let eos = EosParams::default();
        let mesh = rect_tri((0.0, 1.0), (0.0, 1.0), 3, 3, RectSides::all(Side::Wall)).unwrap();
        let prim = sample_at_barycenters(&mesh, mesh.nodes(), |_| Primitive {
            rho: 1.0,
            vel: Vec2::ZERO,
            p: 1.0,
        });
        let (_, m) = init_from_primitive(&mesh, mesh.nodes(), &prim, &eos).unwrap();
        assert!((m.total() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sod_states_volumes() {
        let eos = EosParams::default();
        let mesh = rect_tri((-0.5, 0.5), (0.0, 0.1), 10, 1, RectSides::all(Side::Wall)).unwrap();
        let prim = sample_at_barycenters(&mesh, mesh.nodes(), |b| {
            if b.x < 0.0 {
                Primitive {
                    rho: 1.0,
                    vel: Vec2::ZERO,
                    p: 1.0,
                }
            } else {
                Primitive {
                    rho: 0.125,
                    vel: Vec2::ZERO,
                    p: 0.1,
                }
            }
        });
        let (s, _) = init_from_primitive(&mesh, mesh.nodes(), &prim, &eos).unwrap();
        assert!(s.tau.contains(&1.0));
        assert!(s.tau.contains(&8.0));
    }

    #[test]
    fn zero_density_is_rejected() {
        let eos = EosParams::default();
        let mesh = rect_tri((0.0, 1.0), (0.0, 1.0), 1, 1, RectSides::all(Side::Wall)).unwrap();
        let prim = vec![
            Primitive {
                rho: 0.0,
                vel: Vec2::ZERO,
                p: 1.0,
            },
            Primitive {
                rho: 1.0,
                vel: Vec2::ZERO,
                p: 1.0,
            },
        ];
        assert!(init_from_primitive(&mesh, mesh.nodes(), &prim, &eos).is_err());
    }

    #[test]
    fn galilean_shift_of_energy() {
        let eos = EosParams::default();
        let st = CellState {
            tau: vec![1.0, 0.5, 2.0],
            vel: vec![Vec2::new(0.1, 0.2), Vec2::new(-1.0, 0.0), Vec2::new(0.3, 0.3)],
            entropy: vec![0.0, 0.1, -0.2],
        };
        let m = MassField(vec![1.0, 2.0, 0.5]);
        let u0 = Vec2::new(0.7, -0.4);
        let mut shifted = st.clone();
        for v in &mut shifted.vel {
            *v += u0;
        }
        let expected: f64 = (0..3).map(|c| m[c] * (st.vel[c].dot(u0) + 0.5 * u0.norm_sq())).sum();
        let got = total_energy(&shifted, &m, &eos) - total_energy(&st, &m, &eos);
        assert!((got - expected).abs() < 1e-13);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let v = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(v), 2.0);
    }
}
