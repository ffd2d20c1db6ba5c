//! Fixtures shared by the solver benchmarks.

use htclag::timeloop::{BlendPolicy, Simulation, SolverConfig};
use htclag::verification::cases::{CaseName, TestCaseSpec};

/// Isentropic vortex at mesh size `h`, ready to step with `policy`.
pub fn vortex(h: f64, policy: BlendPolicy) -> Simulation {
    let mut spec = TestCaseSpec::standard(CaseName::Vortex);
    spec.h = h;
    let s = spec.build().expect("vortex setup");
    let cfg = SolverConfig {
        policy,
        ..Default::default()
    };
    Simulation::new(s.mesh, s.eos, s.state, s.mass, cfg)
}
