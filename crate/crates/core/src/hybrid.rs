//! Convex blending of the ECL and ESL fluctuations and troubled-cell
//! detection.
//!
//! Every stage evaluation runs in two parallel phases: a gather over nodes
//! that builds the nodal solutions of both schemes, then a scatter over
//! cells that sums the blended corner contributions. Each phase writes only
//! its own output slot, so results do not depend on the thread count.

use rayon::prelude::*;

use crate::boundary::NodeBoundary;
use crate::ecl::{self, CornerSample, EclNodeData};
use crate::eos::EosParams;
use crate::error::{Error, Result};
use crate::esl::{self, EslNodeData};
use crate::geometry::{dual_cell_volumes, CornerGeometry, Mesh};
use crate::state::{CellState, CornerTerms, MassField, Rates};
use crate::vec2::{Sym2, Vec2};

/// Numerical thresholds of the nodal solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeOptions {
    pub alpha_guard: f64,
    pub det_tol: f64,
}

impl Default for NodeOptions {
    fn default() -> Self {
        NodeOptions {
            alpha_guard: ecl::ALPHA_GUARD,
            det_tol: esl::DET_TOL,
        }
    }
}

/// Thermodynamic data of one cell needed by the nodal solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellThermo {
    pub p: f64,
    pub theta: f64,
    pub a: f64,
    /// Acoustic impedance `ρ a = a / τ`.
    pub impedance: f64,
}

/// Evaluates the EOS in every cell, rejecting non-physical states.
pub fn cell_thermo(eos: &EosParams, st: &CellState) -> Result<Vec<CellThermo>> {
    let out: Vec<CellThermo> = (0..st.len())
        .into_par_iter()
        .map(|c| {
            let pt = eos.point_unchecked(st.tau[c], st.entropy[c]);
            CellThermo {
                p: pt.p,
                theta: pt.theta,
                a: pt.a,
                impedance: pt.a / st.tau[c],
            }
        })
        .collect();
    let bad: Vec<usize> = (0..st.len())
        .filter(|&c| {
            let t = &out[c];
            !(st.tau[c] > 0.0)
                || !st.tau[c].is_finite()
                || !st.vel[c].is_finite()
                || !t.p.is_finite()
                || t.p < 0.0
                || !(t.theta > 0.0 || t.p == 0.0)
        })
        .collect();
    if !bad.is_empty() {
        return Err(Error::Inadmissible {
            cells: bad,
            reason: "non-positive volume, negative pressure or non-finite value".into(),
        });
    }
    Ok(out)
}

/// Solutions of both nodal solvers at one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeSolution {
    pub ecl: EclNodeData,
    /// `None` when the node is pure ECL or the ESL system is singular.
    pub esl: Option<EslNodeData>,
    /// Effective blending factor (zero where the ESL solve fell back).
    pub beta: f64,
}

impl NodeSolution {
    /// Mesh velocity `(1 − β) v_p + β v*_p`, also used in the volume flux.
    #[inline]
    pub fn velocity(&self) -> Vec2 {
        match self.esl {
            None => self.ecl.v,
            Some(e) if self.beta == 1.0 => e.v_star,
            Some(_) if self.beta == 0.0 => self.ecl.v,
            Some(e) => self.ecl.v * (1.0 - self.beta) + e.v_star * self.beta,
        }
    }
}

/// Nodal solutions and the resulting rates of one stage.
#[derive(Debug, Clone, Default)]
pub struct Evaluation {
    pub nodes: Vec<NodeSolution>,
    pub rates: Rates,
    /// Number of nodes whose ESL solve fell back to ECL.
    pub fallbacks: usize,
}

#[inline]
fn corner_sample(geom: &CornerGeometry, st: &CellState, thermo: &[CellThermo], k: usize) -> CornerSample {
    let c = k / 3;
    CornerSample {
        l: geom.corners[k].lpc,
        v: st.vel[c],
        p: thermo[c].p,
    }
}

/// Blended contribution of corner `k` given its node solution.
#[inline]
pub fn blend_corner(
    geom: &CornerGeometry,
    st: &CellState,
    thermo: &[CellThermo],
    k: usize,
    sol: &NodeSolution,
) -> CornerTerms {
    let s = corner_sample(geom, st, thermo, k);
    let ecl_terms = || ecl::corner_terms(&s, &sol.ecl);
    let esl_terms = |e: &EslNodeData| {
        let c = k / 3;
        let m = esl::corner_matrix(&geom.corners[k], thermo[c].impedance);
        esl::corner_terms(&s, &m, thermo[c].theta, e.v_star)
    };
    match sol.esl {
        None => ecl_terms(),
        Some(_) if sol.beta == 0.0 => ecl_terms(),
        Some(ref e) if sol.beta == 1.0 => esl_terms(e),
        Some(ref e) => ecl_terms().lerp(esl_terms(e), sol.beta),
    }
}

/// Nodal gather for all nodes.
pub fn solve_nodes(
    mesh: &Mesh,
    x: &[Vec2],
    geom: &CornerGeometry,
    st: &CellState,
    thermo: &[CellThermo],
    beta: &[f64],
    opts: &NodeOptions,
) -> Result<(Vec<NodeSolution>, usize)> {
    if beta.len() != mesh.num_nodes() {
        return Err(Error::InvalidParameter(format!(
            "{} blending factors for {} nodes",
            beta.len(),
            mesh.num_nodes()
        )));
    }
    if let Some(p) = beta.iter().position(|b| !(0.0..=1.0).contains(b)) {
        return Err(Error::InvalidParameter(format!(
            "blending factor {} at node {p} outside [0, 1]",
            beta[p]
        )));
    }
    let sols: Vec<Result<(NodeSolution, bool)>> = (0..mesh.num_nodes())
        .into_par_iter()
        .map_init(
            || (Vec::<CornerSample>::new(), Vec::<Sym2>::new()),
            |(samples, mats), p| {
                samples.clear();
                mats.clear();
                for &k in mesh.corners_of_node(p) {
                    samples.push(corner_sample(geom, st, thermo, k));
                }
                let bc = NodeBoundary::resolve(mesh, x, p);
                let ecl = ecl::node_data(samples, &bc, opts.alpha_guard).ok_or(Error::ZeroWeight(p))?;
                let mut sol = NodeSolution {
                    ecl,
                    esl: None,
                    beta: 0.0,
                };
                let mut fell_back = false;
                if beta[p] > 0.0 {
                    for &k in mesh.corners_of_node(p) {
                        mats.push(esl::corner_matrix(&geom.corners[k], thermo[k / 3].impedance));
                    }
                    match esl::nodal_solver(samples, mats, &bc, opts.det_tol) {
                        Some(e) if e.v_star.is_finite() => {
                            sol.esl = Some(e);
                            sol.beta = beta[p];
                        }
                        _ => fell_back = true,
                    }
                }
                Ok((sol, fell_back))
            },
        )
        .collect();
    let mut nodes = Vec::with_capacity(sols.len());
    let mut fallbacks = 0;
    for r in sols {
        let (s, f) = r?;
        fallbacks += f as usize;
        nodes.push(s);
    }
    if fallbacks > 0 {
        log::warn!("{fallbacks} node(s) with singular ESL system fell back to ECL fluxes");
    }
    Ok((nodes, fallbacks))
}

/// Cell scatter: per-cell rates from the node solutions.
pub fn assemble(
    mesh: &Mesh,
    geom: &CornerGeometry,
    st: &CellState,
    mass: &MassField,
    thermo: &[CellThermo],
    nodes: &[NodeSolution],
) -> Rates {
    let per_cell: Vec<(f64, Vec2, f64)> = (0..mesh.num_cells())
        .into_par_iter()
        .map(|c| {
            let mut acc = CornerTerms::default();
            for (i, &p) in mesh.cells()[c].iter().enumerate() {
                let t = blend_corner(geom, st, thermo, 3 * c + i, &nodes[p]);
                acc.volume += t.volume;
                acc.force += t.force;
                acc.entropy += t.entropy;
            }
            let m = mass[c];
            (acc.volume / m, -acc.force / m, acc.entropy / m)
        })
        .collect();
    let mut rates = Rates {
        dtau: Vec::with_capacity(per_cell.len()),
        dvel: Vec::with_capacity(per_cell.len()),
        dentropy: Vec::with_capacity(per_cell.len()),
        node_vel: nodes.par_iter().map(NodeSolution::velocity).collect(),
    };
    for (a, b, s) in per_cell {
        rates.dtau.push(a);
        rates.dvel.push(b);
        rates.dentropy.push(s);
    }
    rates
}

/// Full stage evaluation for node positions `x` and blending field `beta`.
#[allow(clippy::too_many_arguments)]
pub fn evaluate(
    mesh: &Mesh,
    eos: &EosParams,
    x: &[Vec2],
    geom: &CornerGeometry,
    st: &CellState,
    mass: &MassField,
    beta: &[f64],
    opts: &NodeOptions,
) -> Result<Evaluation> {
    if let Some(c) = geom.area.iter().position(|a| !(*a > 0.0)) {
        let cells: Vec<usize> = (c..geom.area.len()).filter(|&k| !(geom.area[k] > 0.0)).collect();
        return Err(Error::Inadmissible {
            cells,
            reason: format!("tangled mesh (cell {c} has area {:e})", geom.area[c]),
        });
    }
    let thermo = cell_thermo(eos, st)?;
    let (nodes, fallbacks) = solve_nodes(mesh, x, geom, st, &thermo, beta, opts)?;
    let rates = assemble(mesh, geom, st, mass, &thermo, &nodes);
    Ok(Evaluation {
        nodes,
        rates,
        fallbacks,
    })
}

/// Pure ECL rates (`β ≡ 0`).
pub fn ecl_fluctuations(
    mesh: &Mesh,
    eos: &EosParams,
    x: &[Vec2],
    st: &CellState,
    mass: &MassField,
) -> Result<Evaluation> {
    let geom = CornerGeometry::compute(mesh, x);
    let beta = vec![0.0; mesh.num_nodes()];
    evaluate(mesh, eos, x, &geom, st, mass, &beta, &NodeOptions::default())
}

/// Pure ESL rates (`β ≡ 1`).
pub fn esl_fluctuations(
    mesh: &Mesh,
    eos: &EosParams,
    x: &[Vec2],
    st: &CellState,
    mass: &MassField,
) -> Result<Evaluation> {
    let geom = CornerGeometry::compute(mesh, x);
    let beta = vec![1.0; mesh.num_nodes()];
    evaluate(mesh, eos, x, &geom, st, mass, &beta, &NodeOptions::default())
}

/// Nodal velocity divergence on the dual cell,
/// `div_p = −(1/|ω_p|) Σ_c l_pc n_pc · (v_c − v̄_p)`.
///
/// The dual-cell boundary inside cell `c` has integrated outward normal
/// `−l_pc n_pc`, hence the sign. Subtracting the nodal average removes the
/// contribution of a uniform flow at boundary nodes.
pub fn nodal_divergence(mesh: &Mesh, x: &[Vec2], geom: &CornerGeometry, st: &CellState) -> Vec<f64> {
    let dual = dual_cell_volumes(mesh, x);
    (0..mesh.num_nodes())
        .into_par_iter()
        .map(|p| {
            let ks = mesh.corners_of_node(p);
            let mut w = 0.0;
            let mut vbar = Vec2::ZERO;
            for &k in ks {
                let ln = geom.corners[k].lpc.norm();
                w += ln;
                vbar += st.vel[k / 3] * ln;
            }
            if w > 0.0 {
                vbar = vbar / w;
            }
            let flux: f64 = ks.iter().map(|&k| geom.corners[k].lpc.dot(st.vel[k / 3] - vbar)).sum();
            -flux / dual[p]
        })
        .collect()
}

/// A-priori compression detector: `β_p = 1` where
/// `div_p √|ω_p| < −κ min_{c∈C(p)} a_c`.
pub fn a_priori_detect(
    mesh: &Mesh,
    x: &[Vec2],
    geom: &CornerGeometry,
    st: &CellState,
    thermo: &[CellThermo],
    kappa: f64,
) -> Vec<f64> {
    let div = nodal_divergence(mesh, x, geom, st);
    let dual = dual_cell_volumes(mesh, x);
    (0..mesh.num_nodes())
        .map(|p| {
            let amin = mesh
                .corners_of_node(p)
                .iter()
                .map(|&k| thermo[k / 3].a)
                .fold(f64::INFINITY, f64::min);
            if div[p] * dual[p].sqrt() < -kappa * amin {
                1.0
            } else {
                0.0
            }
        })
        .collect()
}

/// Absolute slack added to the relaxed discrete maximum principle.
pub const MOOD_FLOOR: f64 = 1e-12;

/// A-posteriori admissibility check of a candidate state against the
/// previous one. Returns the sorted list of troubled cells.
///
/// A cell is troubled if its candidate state is non-physical (`τ ≤ 0`,
/// `p < 0`, non-finite), if the candidate mesh tangles it, or if its density
/// leaves the range of the previous densities over the cells sharing a node
/// with it by more than `δ·range + 1e-12`.
pub fn mood_detect(
    mesh: &Mesh,
    eos: &EosParams,
    candidate: &CellState,
    candidate_area: Option<&[f64]>,
    previous: &CellState,
    delta: f64,
) -> Vec<usize> {
    (0..mesh.num_cells())
        .into_par_iter()
        .filter(|&c| {
            let tau = candidate.tau[c];
            let s = candidate.entropy[c];
            if !(tau > 0.0) || !tau.is_finite() || !s.is_finite() || !candidate.vel[c].is_finite() {
                return true;
            }
            if let Some(area) = candidate_area {
                if !(area[c] > 0.0) {
                    return true;
                }
            }
            let pt = eos.point_unchecked(tau, s);
            if !pt.p.is_finite() || pt.p < 0.0 {
                return true;
            }
            let mut lo = previous.density(c);
            let mut hi = lo;
            for &n in mesh.neighbors(c) {
                let r = previous.density(n);
                lo = lo.min(r);
                hi = hi.max(r);
            }
            let slack = delta * (hi - lo) + MOOD_FLOOR;
            pt.rho < lo - slack || pt.rho > hi + slack
        })
        .collect()
}

/// Node factors from troubled cells: `β_p = 1` at every node of a flagged
/// cell.
pub fn beta_from_flags(mesh: &Mesh, flagged: &[usize], beta: &mut [f64]) {
    for &c in flagged {
        for &p in &mesh.cells()[c] {
            beta[p] = 1.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::generate::{rect_tri, RectSides, Side};

    fn periodic_mesh(n: usize) -> Mesh {
        rect_tri((0.0, 1.0), (0.0, 1.0), n, n, RectSides::all(Side::Periodic)).unwrap()
    }

    fn state(mesh: &Mesh, f: impl Fn(Vec2) -> (f64, Vec2, f64)) -> (CellState, MassField) {
        let geom = CornerGeometry::compute(mesh, mesh.nodes());
        let mut st = CellState::default();
        let mut m = Vec::new();
        for c in 0..mesh.num_cells() {
            let (tau, v, s) = f(geom.barycenter[c]);
            st.tau.push(tau);
            st.vel.push(v);
            st.entropy.push(s);
            m.push(geom.area[c] / tau);
        }
        (st, MassField(m))
    }

    #[test]
    fn uniform_state_has_zero_rates() {
        let mesh = periodic_mesh(4);
        let eos = EosParams::default();
        let (st, m) = state(&mesh, |_| (1.0, Vec2::new(0.3, -0.2), 0.1));
        for ev in [
            ecl_fluctuations(&mesh, &eos, mesh.nodes(), &st, &m).unwrap(),
            esl_fluctuations(&mesh, &eos, mesh.nodes(), &st, &m).unwrap(),
        ] {
            for c in 0..mesh.num_cells() {
                assert!(ev.rates.dtau[c].abs() < 1e-14);
                assert!(ev.rates.dvel[c].norm() < 1e-13);
                assert!(ev.rates.dentropy[c].abs() < 1e-14);
            }
        }
    }

    #[test]
    fn uniform_flow_has_no_troubled_nodes() {
        let mesh = periodic_mesh(5);
        let eos = EosParams::default();
        let (st, _) = state(&mesh, |_| (1.0, Vec2::new(1.0, 1.0), 0.0));
        let geom = CornerGeometry::compute(&mesh, mesh.nodes());
        let th = cell_thermo(&eos, &st).unwrap();
        let beta = a_priori_detect(&mesh, mesh.nodes(), &geom, &st, &th, 0.1);
        assert!(beta.iter().all(|&b| b == 0.0));
    }

    #[test]
    fn converging_flow_flags_the_convergence_line() {
        let mesh = rect_tri((-1.0, 1.0), (0.0, 0.2), 20, 2, RectSides::all(Side::Wall)).unwrap();
        let eos = EosParams::default();
        let s = eos.entropy_from_primitive(1.0, 0.01).unwrap();
        let (st, _) = state(&mesh, |b| (1.0, Vec2::new(-b.x.signum(), 0.0), s));
        let geom = CornerGeometry::compute(&mesh, mesh.nodes());
        let th = cell_thermo(&eos, &st).unwrap();
        let beta = a_priori_detect(&mesh, mesh.nodes(), &geom, &st, &th, 0.1);
        for p in 0..mesh.num_nodes() {
            let x = mesh.nodes()[p].x;
            if x.abs() < 1e-12 {
                assert_eq!(beta[p], 1.0, "node at x = 0");
            }
            if x.abs() > 0.15 {
                assert_eq!(beta[p], 0.0, "node at x = {x}");
            }
        }
    }

    #[test]
    fn mood_flags_only_the_nan_cell() {
        let mesh = periodic_mesh(4);
        let eos = EosParams::default();
        let (st, _) = state(&mesh, |b| (1.0 + 0.1 * b.x, Vec2::ZERO, 0.0));
        assert!(mood_detect(&mesh, &eos, &st, None, &st, 0.05).is_empty());
        let mut cand = st.clone();
        cand.entropy[7] = f64::NAN;
        assert_eq!(mood_detect(&mesh, &eos, &cand, None, &st, 0.05), vec![7]);
    }

    #[test]
    fn out_of_range_beta_is_rejected() {
        let mesh = periodic_mesh(2);
        let eos = EosParams::default();
        let (st, m) = state(&mesh, |_| (1.0, Vec2::ZERO, 0.0));
        let geom = CornerGeometry::compute(&mesh, mesh.nodes());
        let beta = vec![1.5; mesh.num_nodes()];
        assert!(evaluate(
            &mesh,
            &eos,
            mesh.nodes(),
            &geom,
            &st,
            &m,
            &beta,
            &NodeOptions::default()
        )
        .is_err());
    }
}
