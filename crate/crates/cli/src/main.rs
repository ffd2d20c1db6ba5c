//! Command-line driver for the Lagrangian solver.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod driver;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use htclag::geometry::generate::characteristic_size;
use htclag::io::config::{DetectorMode, RunConfig, Scheme};
use htclag::verification::cases::CaseName;
use htclag::verification::{l2_errors, observed_order, RiemannProblem, Vortex};

use driver::{execute, prepare, summary};

/// Mesh sizes of the published vortex convergence table.
const VORTEX_LEVELS: [f64; 4] = [0.3254, 0.249, 0.1654, 0.1283];

#[derive(Parser)]
#[command(
    name = "htclag",
    version,
    about = "Cell-centered Lagrangian hydrodynamics on triangular meshes"
)]
#[command(arg_required_else_help = true)]
struct Cli {
    /// Scheme: entropy conservative, entropy stable, or the adaptive blend.
    #[arg(long, global = true, value_enum)]
    scheme: Option<SchemeArg>,
    /// Troubled-node detector used by the hybrid scheme.
    #[arg(long, global = true, value_enum)]
    detector: Option<DetectorArg>,
    /// Worker threads for the solver (0 = all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, env = "HTCLAG_OUT_DIR")]
    out: Option<PathBuf>,
    /// Mesh size override for the built-in cases.
    #[arg(long = "mesh-h", global = true)]
    mesh_h: Option<f64>,
    /// CFL number.
    #[arg(long, global = true)]
    cfl: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the simulation described by a configuration file.
    Run { config: PathBuf },
    /// Mesh convergence study.
    Convergence {
        #[arg(value_enum)]
        case: ConvergenceCase,
        /// Number of meshes in the sequence.
        #[arg(long, default_value_t = 4)]
        levels: usize,
    },
    /// Shock tube with exact solution overlay.
    Riemann {
        #[arg(value_enum)]
        problem: ProblemArg,
    },
    /// Sedov blast wave.
    Sedov,
    /// Expansion into a near-vacuum.
    Vacuum,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Ecl,
    Esl,
    Hybrid,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum DetectorArg {
    Apriori,
    Mood,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvergenceCase {
    Vortex,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Rp1,
    Rp2,
    Rp3,
}

impl From<ProblemArg> for RiemannProblem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Rp1 => RiemannProblem::Rp1,
            ProblemArg::Rp2 => RiemannProblem::Rp2,
            ProblemArg::Rp3 => RiemannProblem::Rp3,
        }
    }
}

impl Cli {
    /// Applies the command-line overrides to `cfg`.
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(s) = self.scheme {
            cfg.scheme = match s {
                SchemeArg::Ecl => Scheme::Ecl,
                SchemeArg::Esl => Scheme::Esl,
                SchemeArg::Hybrid => Scheme::Hybrid,
            };
        }
        if let Some(d) = self.detector {
            cfg.detector = match d {
                DetectorArg::Apriori => DetectorMode::APriori,
                DetectorArg::Mood => DetectorMode::Mood,
                DetectorArg::Off => DetectorMode::Off,
            };
            // a detector only makes sense on top of the blend
            if self.scheme.is_none() && d != DetectorArg::Off {
                cfg.scheme = Scheme::Hybrid;
            }
        }
        if let Some(h) = self.mesh_h {
            cfg.mesh_h = Some(h);
        }
        if let Some(c) = self.cfl {
            cfg.cfl = c;
        }
        if let Some(n) = self.threads {
            cfg.threads = n;
        }
        if let Some(o) = &self.out {
            cfg.output_dir = o.clone();
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn init_threads(n: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring the thread pool")
}

fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Run { config } => {
            let text = std::fs::read_to_string(config).with_context(|| format!("reading {}", config.display()))?;
            let mut cfg = RunConfig::parse(&text)?;
            cli.apply(&mut cfg);
            cfg.validate()?;
            simulate(&cfg)
        }
        Command::Riemann { problem } => {
            let rp = RiemannProblem::from(*problem);
            let cfg = builtin(cli, CaseName::Riemann(rp))?;
            simulate(&cfg)?;
            write_exact(&cfg, rp)
        }
        Command::Sedov => simulate(&builtin(cli, CaseName::Sedov)?),
        Command::Vacuum => simulate(&builtin(cli, CaseName::VacuumExpansion)?),
        Command::Convergence {
            case: ConvergenceCase::Vortex,
            levels,
        } => {
            let cfg = builtin(cli, CaseName::Vortex)?;
            convergence(&cfg, *levels)
        }
    }
}

fn builtin(cli: &Cli, name: CaseName) -> Result<RunConfig> {
    let mut cfg = RunConfig::for_case(name);
    cli.apply(&mut cfg);
    cfg.validate()?;
    Ok(cfg)
}

fn simulate(cfg: &RunConfig) -> Result<()> {
    init_threads(cfg.threads)?;
    let prep = prepare(cfg)?;
    let name = prep.name.clone();
    let sim = execute(prep, &cfg.output_dir, &cfg.output_times, &cfg.formats)?;
    println!("{}", summary(&name, &sim));
    println!("output written to {}", cfg.output_dir.display());
    Ok(())
}

/// Writes the exact solution of `rp` on a fine uniform sampling of the tube.
fn write_exact(cfg: &RunConfig, rp: RiemannProblem) -> Result<()> {
    use std::io::Write;
    let exact = rp.exact(cfg.gamma)?;
    let path = cfg.output_dir.join(format!("{}_exact.csv", rp.name()));
    let mut w = std::io::BufWriter::new(std::fs::File::create(&path)?);
    writeln!(w, "x,rho,u,p")?;
    let n = 2000;
    for k in 0..=n {
        let x = -0.5 + k as f64 / n as f64;
        let q = exact.sample(x / cfg.t_final);
        writeln!(w, "{x:e},{:e},{:e},{:e}", q.rho, q.u, q.p)?;
    }
    w.flush()?;
    Ok(())
}

/// Mesh sizes for `levels` meshes: the published sequence, continued with
/// its overall refinement rate when more levels are requested.
fn vortex_sizes(levels: usize) -> Vec<f64> {
    let rate = (VORTEX_LEVELS[3] / VORTEX_LEVELS[0]).powf(1.0 / 3.0);
    (0..levels)
        .map(|k| {
            VORTEX_LEVELS
                .get(k)
                .copied()
                .unwrap_or(VORTEX_LEVELS[3] * rate.powi(k as i32 - 3))
        })
        .collect()
}

fn convergence(cfg: &RunConfig, levels: usize) -> Result<()> {
    use std::io::Write;
    if levels < 2 {
        bail!("a convergence study needs at least 2 levels, got {levels}");
    }
    init_threads(cfg.threads)?;
    let vortex = Vortex {
        gamma: cfg.gamma,
        ..Vortex::default()
    };
    let mut rows: Vec<[f64; 4]> = Vec::new();
    for h in vortex_sizes(levels) {
        let mut c = cfg.clone();
        c.mesh_h = Some(h);
        c.formats.clear();
        let prep = prepare(&c)?;
        let size = characteristic_size(&prep.sim.mesh, &prep.sim.x);
        let sim = execute(prep, &c.output_dir, &[], &[])?;
        let e = l2_errors(&sim.mesh, &sim.x, &sim.state, &sim.eos, |x| vortex.exact(x, sim.t));
        rows.push([size, e.rho, e.vel, e.energy]);
        log::info!("level h = {size:.4} done after {} steps", sim.steps());
    }
    std::fs::create_dir_all(&cfg.output_dir)?;
    let path = cfg.output_dir.join("vortex_convergence.csv");
    let mut w = std::io::BufWriter::new(std::fs::File::create(&path)?);
    writeln!(w, "h,l2_rho,order_rho,l2_u,order_u,l2_E,order_E")?;
    println!(
        "{:>8} {:>10} {:>6} {:>10} {:>6} {:>10} {:>6}",
        "h", "L2(rho)", "order", "L2(u)", "order", "L2(E)", "order"
    );
    for (k, r) in rows.iter().enumerate() {
        let order = |j: usize| (k > 0).then(|| observed_order(rows[k - 1][0], rows[k - 1][j], r[0], r[j]));
        let cell = |o: Option<f64>| o.map_or("-".to_string(), |v| format!("{v:.2}"));
        println!(
            "{:>8.4} {:>10.4e} {:>6} {:>10.4e} {:>6} {:>10.4e} {:>6}",
            r[0],
            r[1],
            cell(order(1)),
            r[2],
            cell(order(2)),
            r[3],
            cell(order(3))
        );
        let csv = |o: Option<f64>| o.map_or(String::new(), |v| format!("{v:e}"));
        writeln!(
            w,
            "{:e},{:e},{},{:e},{},{:e},{}",
            r[0],
            r[1],
            csv(order(1)),
            r[2],
            csv(order(2)),
            r[3],
            csv(order(3))
        )?;
    }
    w.flush()?;
    println!("table written to {}", path.display());
    Ok(())
}
