//! Built-in test problems: vortex, shock tubes, Sedov blast and the
//! cylindrical expansion into vacuum.

use crate::eos::EosParams;
use crate::error::{Error, Result};
use crate::geometry::generate::{cells_for_h, rect_tri, shell_tri, RectSides, ShellSides, Side};
use crate::geometry::Mesh;
use crate::state::{init_from_primitive, sample_at_barycenters, CellState, MassField, Primitive};
use crate::timeloop::BlendPolicy;
use crate::vec2::Vec2;
use crate::verification::norms::Axis;
use crate::verification::riemann::RiemannProblem;
use crate::verification::vortex::Vortex;
use std::f64::consts::FRAC_PI_2;

/// Energy released at the origin of the Sedov problem (quarter plane).
pub const SEDOV_ENERGY: f64 = 0.244816;
/// Background pressure of the Sedov problem.
pub const SEDOV_BACKGROUND_PRESSURE: f64 = 1e-6;
pub const SEDOV_EXTENT: f64 = 1.2;

/// Default MOOD relaxation.
pub const MOOD_DELTA: f64 = 0.05;

/// Default a-priori compression threshold.
pub const APRIORI_KAPPA: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseName {
    Vortex,
    Riemann(RiemannProblem),
    Sedov,
    VacuumExpansion,
}

impl CaseName {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseName::Vortex => "vortex",
            CaseName::Riemann(rp) => rp.name(),
            CaseName::Sedov => "sedov",
            CaseName::VacuumExpansion => "vacuum",
        }
    }
}

impl std::str::FromStr for CaseName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "vortex" => Ok(CaseName::Vortex),
            "sedov" => Ok(CaseName::Sedov),
            "vacuum" | "vacuum_expansion" => Ok(CaseName::VacuumExpansion),
            other => other
                .parse::<RiemannProblem>()
                .map(CaseName::Riemann)
                .map_err(|_| Error::Parse(format!("unknown test case '{s}'"))),
        }
    }
}

/// Definition of one built-in experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestCaseSpec {
    pub name: CaseName,
    /// Characteristic mesh size. For the shell mesh this is the radial size.
    pub h: f64,
    pub t_final: f64,
    pub gamma: f64,
    pub policy: BlendPolicy,
}

impl TestCaseSpec {
    /// Standard setup of each problem.
    pub fn standard(name: CaseName) -> Self {
        let (h, t_final, policy) = match name {
            CaseName::Vortex => (0.3254, 1.0, BlendPolicy::Fixed(0.0)),
            CaseName::Riemann(RiemannProblem::Rp3) => (
                1.0 / 200.0,
                RiemannProblem::Rp3.final_time(),
                BlendPolicy::APriori { kappa: APRIORI_KAPPA },
            ),
            CaseName::Riemann(rp) => (1.0 / 200.0, rp.final_time(), BlendPolicy::Mood { delta: MOOD_DELTA }),
            CaseName::Sedov => (0.03, 1.0, BlendPolicy::APriori { kappa: APRIORI_KAPPA }),
            CaseName::VacuumExpansion => (0.01, 0.3, BlendPolicy::Fixed(0.0)),
        };
        TestCaseSpec {
            name,
            h,
            t_final,
            gamma: 1.4,
            policy,
        }
    }

    pub fn profile_axis(&self) -> Axis {
        match self.name {
            CaseName::Riemann(_) => Axis::X,
            _ => Axis::Radial,
        }
    }

    pub fn eos(&self) -> Result<EosParams> {
        EosParams::new(self.gamma, 1.0)
    }

    pub fn build(&self) -> Result<CaseSetup> {
        let eos = self.eos()?;
        let (mesh, prim) = match self.name {
            CaseName::Vortex => {
                let mesh = vortex_mesh(self.h)?;
                let v = Vortex {
                    gamma: self.gamma,
                    ..Vortex::default()
                };
                let prim = sample_at_barycenters(&mesh, mesh.nodes(), |x| v.initial(x));
                (mesh, prim)
            }
            CaseName::Riemann(rp) => {
                let mesh = shock_tube_mesh(self.h)?;
                let (l, r) = rp.states();
                let prim = sample_at_barycenters(&mesh, mesh.nodes(), |x| {
                    let q = if x.x < 0.0 { l } else { r };
                    Primitive {
                        rho: q.rho,
                        vel: Vec2::new(q.u, 0.0),
                        p: q.p,
                    }
                });
                (mesh, prim)
            }
            CaseName::Sedov => {
                let mesh = sedov_mesh(self.h)?;
                let prim = sedov_primitives(&mesh, self.gamma);
                (mesh, prim)
            }
            CaseName::VacuumExpansion => {
                let mesh = vacuum_mesh(self.h)?;
                let prim = sample_at_barycenters(&mesh, mesh.nodes(), vacuum_initial);
                (mesh, prim)
            }
        };
        let (state, mass) = init_from_primitive(&mesh, mesh.nodes(), &prim, &eos)?;
        Ok(CaseSetup {
            spec: *self,
            mesh,
            eos,
            state,
            mass,
        })
    }
}

/// Mesh and initial data ready to be handed to a simulation.
#[derive(Debug, Clone)]
pub struct CaseSetup {
    pub spec: TestCaseSpec,
    pub mesh: Mesh,
    pub eos: EosParams,
    pub state: CellState,
    pub mass: MassField,
}

/// Periodic `[0,10]²` with `√|ω| ≤ h`.
pub fn vortex_mesh(h: f64) -> Result<Mesh> {
    let n = cells_for_h(10.0, h)?;
    rect_tri((0.0, 10.0), (0.0, 10.0), n, n, RectSides::all(Side::Periodic))
}

/// `[−0.5, 0.5] × [−0.05, 0.05]`, walls in x and periodic in y.
pub fn shock_tube_mesh(h: f64) -> Result<Mesh> {
    let nx = cells_for_h(1.0, h)?;
    let ny = cells_for_h(0.1, h)?;
    rect_tri(
        (-0.5, 0.5),
        (-0.05, 0.05),
        nx,
        ny,
        RectSides {
            left: Side::Wall,
            right: Side::Wall,
            bottom: Side::Periodic,
            top: Side::Periodic,
        },
    )
}

/// `[0, 1.2]²` with quad edge `h`: symmetry walls on the axes and the
/// background pressure imposed on the far sides.
pub fn sedov_mesh(h: f64) -> Result<Mesh> {
    if !(h > 0.0) || h > SEDOV_EXTENT {
        return Err(Error::InvalidParameter(format!("Sedov mesh size {h}")));
    }
    let n = (SEDOV_EXTENT / h).round().max(1.0) as usize;
    let far = Side::Pressure(SEDOV_BACKGROUND_PRESSURE);
    rect_tri(
        (0.0, SEDOV_EXTENT),
        (0.0, SEDOV_EXTENT),
        n,
        n,
        RectSides {
            left: Side::Wall,
            right: far,
            bottom: Side::Wall,
            top: far,
        },
    )
}

/// Cells with a vertex at the origin.
pub fn origin_cells(mesh: &Mesh) -> Vec<usize> {
    let x = mesh.nodes();
    (0..mesh.num_cells())
        .filter(|&c| (0..3).any(|i| mesh.vertex(x, c, i).norm() < 1e-12))
        .collect()
}

/// Background `(1, 0, 10⁻⁶)` with `p_or = (γ−1)ρ⁰ε⁰/|ω|_or` in the cells
/// touching the origin.
pub fn sedov_primitives(mesh: &Mesh, gamma: f64) -> Vec<Primitive> {
    let origin = origin_cells(mesh);
    let x = mesh.nodes();
    let area =
        |c: usize| crate::geometry::signed_area(mesh.vertex(x, c, 0), mesh.vertex(x, c, 1), mesh.vertex(x, c, 2));
    let total: f64 = origin.iter().map(|&c| area(c)).sum();
    let p_or = (gamma - 1.0) * SEDOV_ENERGY / total;
    (0..mesh.num_cells())
        .map(|c| Primitive {
            rho: 1.0,
            vel: Vec2::ZERO,
            p: if origin.contains(&c) {
                p_or
            } else {
                SEDOV_BACKGROUND_PRESSURE
            },
        })
        .collect()
}

/// Quarter shell `r ∈ [0.1, 1]`, `φ ∈ [0, π/2]` with radial size `h_r` and
/// 15 angular intervals; walls at the φ-extremes and zero pressure on the
/// circular sides.
pub fn vacuum_mesh(h_r: f64) -> Result<Mesh> {
    if !(h_r > 0.0) || h_r > 0.9 {
        return Err(Error::InvalidParameter(format!("radial size {h_r}")));
    }
    let nr = (0.9 / h_r).round().max(1.0) as usize;
    // scale the angular resolution with the radial one (15 at h_r = 1/100)
    let nphi = ((15.0 * 0.01 / h_r).round() as usize).max(2);
    shell_tri(
        (0.1, 1.0),
        (0.0, FRAC_PI_2),
        nr,
        nphi,
        ShellSides {
            inner: Side::Pressure(0.0),
            outer: Side::Pressure(0.0),
            phi_min: Side::Wall,
            phi_max: Side::Wall,
        },
    )
}

/// Initial data of the expansion: uniform gas at `ρ = 1`, `p = 0.01` in
/// homologous radial motion `v = 5x`.
pub fn vacuum_initial(x: Vec2) -> Primitive {
    Primitive {
        rho: 1.0,
        vel: x * 5.0,
        p: 0.01,
    }
}
