//! Case construction, the run loop with output, and the post-run audit.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use htclag::geometry::meshfile::read_mesh;
use htclag::io::config::{CaseChoice, OutputFormat, RunConfig};
use htclag::io::csv::{write_history_file, write_profile_file};
use htclag::io::vtk::write_vtk_file;
use htclag::state::{init_from_primitive, sample_at_barycenters};
use htclag::timeloop::{Simulation, SolverConfig, StepRecord};
use htclag::verification::{scatter_profile, Axis, TestCaseSpec};
use htclag::{EosParams, Primitive, Vec2};

/// Largest relative GCL defect tolerated by the end-of-run audit.
pub const AUDIT_GCL: f64 = 1e-3;

/// A simulation ready to run, with the name used for its output files.
pub struct Prepared {
    pub name: String,
    pub sim: Simulation,
    pub t_final: f64,
    pub axis: Axis,
}

pub fn prepare(cfg: &RunConfig) -> Result<Prepared> {
    let solver = SolverConfig {
        cfl: cfg.cfl,
        cfl_length: cfg.cfl_length,
        policy: cfg.policy(),
        ..Default::default()
    };
    match cfg.case {
        CaseChoice::Builtin(name) => {
            let mut spec = TestCaseSpec::standard(name);
            spec.gamma = cfg.gamma;
            spec.policy = solver.policy;
            spec.t_final = cfg.t_final;
            if let Some(h) = cfg.mesh_h {
                spec.h = h;
            }
            let mut s = spec.build()?;
            if cfg.cv != s.eos.cv {
                // same (ρ, p), so S/cv is unchanged
                let k = cfg.cv / s.eos.cv;
                s.state.entropy.iter_mut().for_each(|x| *x *= k);
                s.eos = EosParams::new(cfg.gamma, cfg.cv)?;
            }
            Ok(Prepared {
                name: name.as_str().to_string(),
                axis: spec.profile_axis(),
                sim: Simulation::new(s.mesh, s.eos, s.state, s.mass, solver),
                t_final: cfg.t_final,
            })
        }
        CaseChoice::Custom => {
            let path = cfg.mesh_file.as_deref().context("custom case needs mesh.file")?;
            let mesh = read_mesh(path).with_context(|| format!("reading {}", path.display()))?;
            let eos = EosParams::new(cfg.gamma, cfg.cv)?;
            let [rho, u, v, p] = cfg.init;
            let prim = sample_at_barycenters(&mesh, mesh.nodes(), |_| Primitive {
                rho,
                vel: Vec2::new(u, v),
                p,
            });
            let (state, mass) = init_from_primitive(&mesh, mesh.nodes(), &prim, &eos)?;
            let name = path
                .file_stem()
                .map_or_else(|| "custom".to_string(), |s| s.to_string_lossy().into_owned());
            Ok(Prepared {
                name,
                sim: Simulation::new(mesh, eos, state, mass, solver),
                t_final: cfg.t_final,
                axis: Axis::X,
            })
        }
    }
}

/// Runs `prep` to its final time, writing VTK frames at every output time
/// and history/profile CSVs at the end, then audits the run.
pub fn execute(
    mut prep: Prepared,
    out_dir: &Path,
    output_times: &[f64],
    formats: &[OutputFormat],
) -> Result<Simulation> {
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let vtk = formats.contains(&OutputFormat::Vtk);
    let mut frame = 0usize;
    let name = prep.name.clone();
    let result = prep.sim.run(prep.t_final, output_times, |s| {
        if vtk {
            let path = out_dir.join(format!("{name}_{frame:04}.vtk"));
            write_vtk_file(
                &path,
                &s.mesh,
                &s.x,
                &s.state,
                &s.eos,
                &s.beta,
                &format!("{name} t = {}", s.t),
            )?;
        }
        log::info!("{name}: t = {:.6}, {} steps", s.t, s.steps());
        frame += 1;
        Ok(())
    });
    let sim = prep.sim;
    if formats.contains(&OutputFormat::Csv) {
        write_history_file(&out_dir.join(format!("{name}_history.csv")), &sim.history)?;
        let profile = scatter_profile(&sim.mesh, &sim.x, &sim.state, &sim.eos, prep.axis);
        write_profile_file(&out_dir.join(format!("{name}_profile.csv")), &profile)?;
    }
    result.with_context(|| format!("{name} stopped at t = {}", sim.t))?;
    audit(&sim)?;
    Ok(sim)
}

/// End-of-run checks: positivity and finiteness of every recorded step and
/// the GCL defect.
pub fn audit(sim: &Simulation) -> Result<()> {
    let bad = |r: &StepRecord| !(r.min_density > 0.0) || !(r.min_pressure >= 0.0) || !r.total_energy.is_finite();
    if let Some(r) = sim.history.iter().find(|r| bad(r)) {
        bail!(
            "audit failed at t = {}: min density {:e}, min pressure {:e}, energy {:e}",
            r.t,
            r.min_density,
            r.min_pressure,
            r.total_energy
        );
    }
    let gcl = sim.history.iter().map(|r| r.gcl).fold(0.0, f64::max);
    if !(gcl <= AUDIT_GCL) {
        bail!("audit failed: GCL defect {gcl:e} exceeds {AUDIT_GCL:e}");
    }
    Ok(())
}

pub fn summary(name: &str, sim: &Simulation) -> String {
    let first = sim.history.first();
    let last = sim.history.last();
    let drift = match (first, last) {
        (Some(a), Some(b)) => (b.total_energy - a.total_energy) / a.total_energy.abs().max(f64::MIN_POSITIVE),
        _ => 0.0,
    };
    let gcl = sim.history.iter().map(|r| r.gcl).fold(0.0, f64::max);
    format!(
        "{name}: t = {:.6} after {} steps, relative energy drift {drift:.3e}, max GCL defect {gcl:.3e}",
        sim.t,
        sim.steps()
    )
}
