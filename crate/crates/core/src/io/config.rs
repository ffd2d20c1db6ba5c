//! Flat `key = value` run configuration.
//!
//! Grammar: one `key = value` pair per line; blank lines and text after
//! `#` are ignored; keys are case-sensitive; lists are comma-separated.
//!
//! ```text
//! case = rp1              # vortex | rp1 | rp2 | rp3 | sedov | vacuum | custom
//! scheme = hybrid         # ecl | esl | hybrid
//! detector.mode = mood    # apriori | mood | off
//! detector.kappa = 0.1
//! detector.delta = 0.05
//! cfl = 0.4
//! cfl.length = inradius   # area | incircle | inradius
//! t_final = 0.2
//! gamma = 1.4
//! cv = 1
//! mesh.h = 0.005
//! mesh.file = grid.mesh   # custom case only
//! init.rho = 1            # custom case only, with init.u, init.v, init.p
//! output.dir = out
//! output.times = 0.05, 0.1
//! output.formats = vtk, csv
//! threads = 0             # 0 = all cores
//! ```

use std::fmt;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::timeloop::{BlendPolicy, CflLength};
use crate::verification::cases::{CaseName, TestCaseSpec, APRIORI_KAPPA, MOOD_DELTA};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Ecl,
    Esl,
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectorMode {
    APriori,
    Mood,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Vtk,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CaseChoice {
    Builtin(CaseName),
    /// Mesh file with uniform initial data `(ρ, u, v, p)`.
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub case: CaseChoice,
    pub scheme: Scheme,
    pub detector: DetectorMode,
    pub kappa: f64,
    pub delta: f64,
    pub cfl: f64,
    pub cfl_length: CflLength,
    pub t_final: f64,
    pub gamma: f64,
    pub cv: f64,
    pub mesh_h: Option<f64>,
    pub mesh_file: Option<PathBuf>,
    pub init: [f64; 4],
    pub output_dir: PathBuf,
    pub output_times: Vec<f64>,
    pub formats: Vec<OutputFormat>,
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            case: CaseChoice::Builtin(CaseName::Vortex),
            scheme: Scheme::Hybrid,
            detector: DetectorMode::Mood,
            kappa: APRIORI_KAPPA,
            delta: MOOD_DELTA,
            cfl: 0.4,
            cfl_length: CflLength::default(),
            t_final: 1.0,
            gamma: 1.4,
            cv: 1.0,
            mesh_h: None,
            mesh_file: None,
            init: [1.0, 0.0, 0.0, 1.0],
            output_dir: PathBuf::from("out"),
            output_times: Vec::new(),
            formats: vec![OutputFormat::Vtk, OutputFormat::Csv],
            threads: 0,
        }
    }
}

impl RunConfig {
    /// Defaults of a built-in case: its final time and blending policy.
    pub fn for_case(name: CaseName) -> Self {
        let spec = TestCaseSpec::standard(name);
        let (scheme, detector) = match spec.policy {
            BlendPolicy::Fixed(0.0) => (Scheme::Ecl, DetectorMode::Off),
            BlendPolicy::Fixed(_) => (Scheme::Esl, DetectorMode::Off),
            BlendPolicy::APriori { .. } => (Scheme::Hybrid, DetectorMode::APriori),
            BlendPolicy::Mood { .. } => (Scheme::Hybrid, DetectorMode::Mood),
        };
        RunConfig {
            case: CaseChoice::Builtin(name),
            scheme,
            detector,
            t_final: spec.t_final,
            gamma: spec.gamma,
            ..RunConfig::default()
        }
    }

    pub fn policy(&self) -> BlendPolicy {
        match (self.scheme, self.detector) {
            (Scheme::Ecl, _) | (Scheme::Hybrid, DetectorMode::Off) => BlendPolicy::Fixed(0.0),
            (Scheme::Esl, _) => BlendPolicy::Fixed(1.0),
            (Scheme::Hybrid, DetectorMode::APriori) => BlendPolicy::APriori { kappa: self.kappa },
            (Scheme::Hybrid, DetectorMode::Mood) => BlendPolicy::Mood { delta: self.delta },
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut seen_case = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
                line: line_no,
                msg: format!("expected `key = value`, got `{line}`"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let err = |msg: String| Error::Config { line: line_no, msg };
            let num = |v: &str| -> Result<f64> {
                v.parse::<f64>()
                    .map_err(|_| err(format!("`{key}` expects a number, got `{v}`")))
            };
            match key {
                "case" => {
                    cfg.case = if value == "custom" {
                        CaseChoice::Custom
                    } else {
                        CaseChoice::Builtin(value.parse().map_err(|e: Error| err(e.to_string()))?)
                    };
                    seen_case = true;
                }
                "scheme" => cfg.scheme = value.parse().map_err(|e: Error| err(e.to_string()))?,
                "detector.mode" => cfg.detector = value.parse().map_err(|e: Error| err(e.to_string()))?,
                "detector.kappa" => cfg.kappa = num(value)?,
                "detector.delta" => cfg.delta = num(value)?,
                "cfl" => cfg.cfl = num(value)?,
                "cfl.length" => cfg.cfl_length = value.parse().map_err(|e: Error| err(e.to_string()))?,
                "t_final" => cfg.t_final = num(value)?,
                "gamma" => cfg.gamma = num(value)?,
                "cv" => cfg.cv = num(value)?,
                "mesh.h" => cfg.mesh_h = Some(num(value)?),
                "mesh.file" => cfg.mesh_file = Some(PathBuf::from(value)),
                "init.rho" => cfg.init[0] = num(value)?,
                "init.u" => cfg.init[1] = num(value)?,
                "init.v" => cfg.init[2] = num(value)?,
                "init.p" => cfg.init[3] = num(value)?,
                "output.dir" => cfg.output_dir = PathBuf::from(value),
                "output.times" => {
                    cfg.output_times = split_list(value).map(num).collect::<Result<_>>()?;
                }
                "output.formats" => {
                    cfg.formats = split_list(value)
                        .map(|v| v.parse().map_err(|e: Error| err(e.to_string())))
                        .collect::<Result<_>>()?;
                }
                "threads" => {
                    cfg.threads = value
                        .parse()
                        .map_err(|_| err(format!("`threads` expects an integer, got `{value}`")))?;
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        if !seen_case {
            return Err(Error::Config {
                line: 0,
                msg: "missing `case`".into(),
            });
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config { line: 0, msg });
        if !(self.cfl > 0.0) {
            return bad(format!("cfl must be positive, got {}", self.cfl));
        }
        if !(self.t_final >= 0.0) {
            return bad(format!("t_final must be non-negative, got {}", self.t_final));
        }
        if !(self.gamma > 1.0) || !(self.cv > 0.0) {
            return bad(format!(
                "invalid EOS parameters gamma = {}, cv = {}",
                self.gamma, self.cv
            ));
        }
        if !(self.kappa >= 0.0) || !(self.delta >= 0.0) {
            return bad("detector parameters must be non-negative".into());
        }
        if let Some(h) = self.mesh_h {
            if !(h > 0.0) {
                return bad(format!("mesh.h must be positive, got {h}"));
            }
        }
        if self.case == CaseChoice::Custom {
            if self.mesh_file.is_none() {
                return bad("custom case needs mesh.file".into());
            }
            if !(self.init[0] > 0.0) || !(self.init[3] > 0.0) {
                return bad("custom case needs init.rho > 0 and init.p > 0".into());
            }
        }
        if self.output_times.iter().any(|t| !t.is_finite()) {
            return bad("non-finite output time".into());
        }
        Ok(())
    }
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.case {
            CaseChoice::Builtin(n) => writeln!(f, "case = {}", n.as_str())?,
            CaseChoice::Custom => writeln!(f, "case = custom")?,
        }
        writeln!(f, "scheme = {}", self.scheme)?;
        writeln!(f, "detector.mode = {}", self.detector)?;
        writeln!(f, "detector.kappa = {:?}", self.kappa)?;
        writeln!(f, "detector.delta = {:?}", self.delta)?;
        writeln!(f, "cfl = {:?}", self.cfl)?;
        writeln!(f, "cfl.length = {}", cfl_length_name(self.cfl_length))?;
        writeln!(f, "t_final = {:?}", self.t_final)?;
        writeln!(f, "gamma = {:?}", self.gamma)?;
        writeln!(f, "cv = {:?}", self.cv)?;
        if let Some(h) = self.mesh_h {
            writeln!(f, "mesh.h = {h:?}")?;
        }
        if let Some(p) = &self.mesh_file {
            writeln!(f, "mesh.file = {}", p.display())?;
        }
        if self.case == CaseChoice::Custom {
            let [r, u, v, p] = self.init;
            writeln!(f, "init.rho = {r:?}\ninit.u = {u:?}\ninit.v = {v:?}\ninit.p = {p:?}")?;
        }
        writeln!(f, "output.dir = {}", self.output_dir.display())?;
        let times: Vec<String> = self.output_times.iter().map(|t| format!("{t:?}")).collect();
        writeln!(f, "output.times = {}", times.join(", "))?;
        writeln!(f, "output.formats = {}", join(&self.formats))?;
        writeln!(f, "threads = {}", self.threads)
    }
}

fn cfl_length_name(l: CflLength) -> &'static str {
    match l {
        CflLength::Area => "area",
        CflLength::Incircle => "incircle",
        CflLength::Inradius => "inradius",
    }
}

macro_rules! keyword_enum {
    ($ty:ty, $what:literal, $($name:literal => $val:expr),+ $(,)?) => {
        impl std::str::FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_lowercase().as_str() {
                    $($name => Ok($val),)+
                    other => Err(Error::Parse(format!(concat!("unknown ", $what, " `{}`"), other))),
                }
            }
        }
    };
}

keyword_enum!(Scheme, "scheme", "ecl" => Scheme::Ecl, "esl" => Scheme::Esl, "hybrid" => Scheme::Hybrid);
keyword_enum!(DetectorMode, "detector", "apriori" => DetectorMode::APriori, "mood" => DetectorMode::Mood, "off" => DetectorMode::Off);
keyword_enum!(OutputFormat, "output format", "vtk" => OutputFormat::Vtk, "csv" => OutputFormat::Csv);
keyword_enum!(CflLength, "CFL length", "area" => CflLength::Area, "incircle" => CflLength::Incircle, "inradius" => CflLength::Inradius);

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Ecl => "ecl",
            Scheme::Esl => "esl",
            Scheme::Hybrid => "hybrid",
        })
    }
}

impl fmt::Display for DetectorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetectorMode::APriori => "apriori",
            DetectorMode::Mood => "mood",
            DetectorMode::Off => "off",
        })
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Vtk => "vtk",
            OutputFormat::Csv => "csv",
        })
    }
}
